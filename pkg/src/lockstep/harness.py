"""Independent oracles, a problem generator, and the fuzz campaign.

The brute-force routines here never look at the calculi; they enumerate
assignments directly, so they can arbitrate when the two engines are
suspected of agreeing on a wrong answer.
"""

from __future__ import annotations

import dataclasses
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import (
    Atom,
    Clause,
    ClauseSet,
    GroundTerm,
    Literal,
    OrderingConfig,
    Problem,
    eval_herbrand,
    print_problem,
)
from .ordering import ProblemOrder
from .simulation import lockstep_verify
from .superposition import SATISFIABLE, UNSATISFIABLE

MAX_ORACLE_ATOMS = 20


def _universe(clauses: Iterable[Clause],
              extra: Iterable[Clause] = ()) -> List[Atom]:
    atoms = set()
    for c in itertools.chain(clauses, extra):
        for l in c.literals:
            atoms.add(l.atom)
    return sorted(atoms, key=lambda a: a.text)


def _masks(clauses: Sequence[Clause], index) -> List[Tuple[int, int]]:
    out = []
    for c in clauses:
        pos = neg = 0
        for l in c.literals:
            bit = 1 << index[l.atom]
            if l.positive:
                pos |= bit
            else:
                neg |= bit
        out.append((pos, neg))
    return out


def brute_force_sat(clauses: Iterable[Clause],
                    atoms: Optional[Sequence[Atom]] = None) -> Optional[frozenset]:
    """First satisfying model in bitmask counting order, None if there is
    none. Atoms are bit-indexed in text order, so smaller assignments (fewer
    and textually earlier true atoms) are tried first."""
    clauses = list(clauses)
    atoms = list(atoms) if atoms is not None else _universe(clauses)
    if len(atoms) > MAX_ORACLE_ATOMS:
        raise ValueError(
            f"{len(atoms)} atoms exceed the brute-force cap of {MAX_ORACLE_ATOMS}"
        )
    index = {a: i for i, a in enumerate(atoms)}
    sig = _masks(clauses, index)
    full = (1 << len(atoms)) - 1
    for mask in range(1 << len(atoms)):
        if all(mask & pos or neg & ~mask & full for pos, neg in sig):
            return frozenset(a for a in atoms if mask >> index[a] & 1)
    return None


def entails(premises: Iterable[Clause], conclusion: Clause) -> bool:
    """True when every total assignment satisfying the premises satisfies
    the conclusion as well."""
    premises = list(premises)
    atoms = _universe(premises, [conclusion])
    if len(atoms) > MAX_ORACLE_ATOMS:
        raise ValueError(
            f"{len(atoms)} atoms exceed the brute-force cap of {MAX_ORACLE_ATOMS}"
        )
    index = {a: i for i, a in enumerate(atoms)}
    premise_sig = _masks(premises, index)
    pos, neg = _masks([conclusion], index)[0]
    full = (1 << len(atoms)) - 1
    for mask in range(1 << len(atoms)):
        if not all(mask & p or n & ~mask & full for p, n in premise_sig):
            continue
        if not (mask & pos or neg & ~mask & full):
            return False
    return True


def is_redundant(clauses: Iterable[Clause], clause: Clause,
                 order: ProblemOrder) -> bool:
    """Whether the strictly smaller clauses of the set already entail the
    clause. Conclusions of either engine must never be redundant with
    respect to the clauses present when they were derived."""
    smaller = [d for d in clauses if order.clause_lt(d, clause)]
    return entails(smaller, clause)


# ---------------------------------------------------------------------------
# Problem generator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenParams:
    """Knobs for the random problem generator. One seed, one problem."""

    preds: Tuple[str, ...] = ("P", "Q", "R")
    consts: Tuple[str, ...] = ("a", "b")
    max_arity: int = 1
    clause_count: int = 6
    max_len: int = 4
    seed: int = 0
    allow_tautologies: bool = False


def random_problem(params: GenParams) -> Problem:
    """Deterministically generate a ground problem from the seed.

    Clauses are multisets over a small constant-only atom pool; duplicate
    literals are allowed on purpose since they are what exercises factoring.
    The ordering declaration is drawn from all three kinds.
    """
    rng = random.Random(params.seed)

    pool: List[Atom] = []
    for pred in params.preds:
        arity = rng.randint(0, params.max_arity)
        if arity == 0:
            pool.append(Atom(pred))
        else:
            for combo in itertools.product(params.consts, repeat=arity):
                pool.append(Atom(pred, tuple(GroundTerm(c) for c in combo)))
    if len(pool) > MAX_ORACLE_ATOMS:
        raise ValueError(f"atom pool of {len(pool)} is past the oracle cap")

    clauses: List[Clause] = []
    for _ in range(rng.randint(1, params.clause_count)):
        length = rng.randint(1, params.max_len)
        lits: List[Literal] = []
        for _ in range(length):
            while True:
                lit = Literal(rng.choice(pool), rng.random() < 0.5)
                if params.allow_tautologies or lit.complement() not in lits:
                    break
            lits.append(lit)
        clauses.append(Clause(lits))
    clause_set = ClauseSet(clauses)

    arities = {}
    for c in clause_set:
        for l in c.literals:
            arities[l.atom.name] = len(l.atom.args)
            for t in l.atom.args:
                arities[t.name] = 0

    kind = rng.choice(OrderingConfig.ORDER_KINDS)
    if kind == "listed":
        occurring = _universe(clause_set)
        rng.shuffle(occurring)
        cfg = OrderingConfig(kind="listed", listed_atoms=tuple(occurring))
    else:
        symbols = sorted(arities)
        rng.shuffle(symbols)
        cfg = OrderingConfig(kind=kind, precedence=tuple(symbols))

    return Problem(clauses=clause_set, ordering=cfg, symbol_arities=arities)


# ---------------------------------------------------------------------------
# Trace emission and fuzzing
# ---------------------------------------------------------------------------


def emit_trace(problem: Problem, order: Optional[ProblemOrder] = None,
               max_sequences: int = 10000) -> dict:
    """Run the lockstep verifier and serialize everything that happened as
    one JSON-ready dictionary."""
    result = lockstep_verify(problem, order, max_sequences=max_sequences)
    sup, sim = result.sup, result.sim

    def s(x) -> Optional[str]:
        return None if x is None else str(x)

    sup_events = [
        {
            "kind": step.kind,
            "main": str(step.main),
            "side": s(step.side),
            "pivot": s(step.pivot),
            "conclusion": str(step.conclusion),
        }
        for step in sup.steps
    ]
    scl_events = [
        {"rule": app.rule, "literal": s(app.literal), "clause": s(app.clause)}
        for app in sim.apps
    ]
    rounds = [
        {
            "kind": seq.kind,
            "attention": s(seq.attention),
            "pair_index": seq.annotation.index,
            "apps": list(seq.app_range),
        }
        for seq in sim.seqs
    ]
    verify_events = [
        {
            "event": "boundary",
            "boundary": b.boundary,
            "pair_index": b.index,
            "ok": b.ok,
            "failures": [f"{r.name}: {r.detail}" for r in b.reports if not r.ok],
        }
        for b in result.boundaries
    ]
    verify_events.append({
        "event": "progress",
        "ok": not result.progress_failures,
        "failures": list(result.progress_failures),
    })
    verify_events.append({
        "event": "regularity",
        "ok": not result.regularity_failures,
        "failures": list(result.regularity_failures),
    })
    verify_events.append({
        "event": "final",
        "ok": not result.final_failures,
        "failures": list(result.final_failures),
    })

    return {
        "problem": print_problem(problem),
        "ordering": {
            "kind": problem.ordering.kind,
            "atoms_ascending": [a.text for a in result.order.atoms_ascending],
        },
        "outcome": sim.outcome,
        "agreed": sup.outcome == sim.outcome,
        "model": sorted(a.text for a in sim.model) if sim.model is not None else None,
        "learned": [str(c) for c in sim.learned],
        "rounds": rounds,
        "sup_events": sup_events,
        "scl_events": scl_events,
        "verify_events": verify_events,
        "ok": result.ok,
        "failures": result.failures(),
    }


@dataclass
class FuzzReport:
    total: int
    failures: List[Tuple[int, List[str]]]

    @property
    def ok(self) -> bool:
        return not self.failures


def fuzz_campaign(count: int, base_seed: int = 0,
                  params: Optional[GenParams] = None,
                  max_sequences: int = 10000) -> FuzzReport:
    """Generate ``count`` problems, verify each in lockstep, and arbitrate
    every verdict against the brute-force oracle."""
    params = params or GenParams()
    failures: List[Tuple[int, List[str]]] = []
    for i in range(count):
        seed = base_seed + i
        problem = random_problem(dataclasses.replace(params, seed=seed))
        msgs: List[str] = []
        try:
            result = lockstep_verify(problem, max_sequences=max_sequences)
        except Exception as e:   # a crash is a finding, not an abort
            failures.append((seed, [f"crash: {e!r}"]))
            continue
        msgs.extend(result.failures())
        oracle_model = brute_force_sat(problem.clauses.clauses())
        verdict = SATISFIABLE if oracle_model is not None else UNSATISFIABLE
        if result.sim.outcome != verdict:
            msgs.append(f"trail verdict {result.sim.outcome}, oracle says {verdict}")
        if result.sup.outcome != verdict:
            msgs.append(f"saturation verdict {result.sup.outcome}, oracle says {verdict}")
        if result.sim.model is not None:
            for c in problem.clauses:
                if not eval_herbrand(result.sim.model, c):
                    msgs.append(f"claimed model does not satisfy {c}")
        if msgs:
            failures.append((seed, msgs))
    return FuzzReport(count, failures)
