"""Ground saturation driven by a partial-model construction.

The strategy never enumerates inferences blindly. Each round builds a
candidate interpretation bottom-up along the clause order: a clause whose
maximal literal is positive, strictly maximal, and still false gets to make
that atom true ("produce" it); everything else keeps the interpretation as
is. The smallest clause this construction leaves false, when one exists,
pinpoints the one inference to perform next:

* maximal literal negative: resolve that occurrence against the producer of
  its atom (superposition into the false clause),
* maximal literal positive but duplicated: factor out one copy.

A clause whose maximal literal is positive and strictly maximal cannot be
the smallest false clause (it would have produced), so the split is total.
The derived clause is always smaller than the clause it repairs and is never
already present; both facts are asserted at runtime rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .core import Atom, Clause, EMPTY_CLAUSE, Literal, Problem, eval_herbrand
from .ordering import ProblemOrder

SATISFIABLE = "satisfiable"
UNSATISFIABLE = "unsatisfiable"
CAP_EXCEEDED = "cap_exceeded"

FACTORING = "factoring"
SUPERPOSITION_LEFT = "superposition_left"


def sfac(clause: Clause, order: ProblemOrder) -> Clause:
    """Exhaustive factoring: drop copies of the maximal literal while it is
    positive and duplicated. Only the maximum is ever touched; duplicates of
    smaller literals survive."""
    c = clause
    while not c.is_empty:
        m = order.max_literal(c)
        if m.positive and order.max_multiplicity(c) >= 2:
            c = c.without_one(m)
        else:
            break
    return c


def factoring_step(clause: Clause, order: ProblemOrder) -> Optional[Clause]:
    """One factoring application on the maximal literal, or None if the
    maximum is negative, unique, or the clause is empty."""
    if clause.is_empty:
        return None
    m = order.max_literal(clause)
    if m.positive and order.max_multiplicity(clause) >= 2:
        return clause.without_one(m)
    return None


def superposition_left(false_clause: Clause, producer: Clause, order: ProblemOrder) -> Clause:
    """Resolve the maximal negative literal of ``false_clause`` against the
    strictly maximal positive occurrence of the same atom in ``producer``.

    Exactly one occurrence is removed on each side; remaining duplicates are
    kept. Misuse (wrong polarity, wrong atom, non-maximal occurrences) is
    rejected rather than silently repaired.
    """
    if false_clause.is_empty:
        raise ValueError("cannot superpose into the empty clause")
    m = order.max_literal(false_clause)
    if m.positive:
        raise ValueError(f"maximal literal {m} of {false_clause} is not negative")
    b = Literal(m.atom)
    if not producer.contains(b):
        raise ValueError(f"producer {producer} has no positive occurrence of {m.atom}")
    if not order.is_strictly_maximal_in(b, producer):
        raise ValueError(f"{b} is not strictly maximal in producer {producer}")
    return false_clause.without_one(m).extended(producer.without_one(b).literals)


@dataclass(frozen=True)
class ModelEntry:
    """One clause's row in the bottom-up construction."""

    clause: Clause
    prefix: FrozenSet[Atom]        # atoms produced by strictly smaller clauses
    produced: Optional[Atom]       # the atom this clause makes true, if any
    satisfied: bool                # true under prefix plus own production


@dataclass
class ModelConstruction:
    """The full bottom-up pass over one clause set.

    entries are in ascending clause order; ``model`` is the union of all
    produced atoms; ``minimal_false`` is the smallest clause not satisfied by
    its own row (None when the construction satisfies everything).
    prefix_below and delta_of answer the same questions for arbitrary
    clauses, members of the set or not.
    """

    order: ProblemOrder
    entries: List[ModelEntry]
    producer: Dict[Atom, Clause]
    model: FrozenSet[Atom]
    minimal_false: Optional[Clause]

    def prefix_below(self, clause: Clause) -> FrozenSet[Atom]:
        """Atoms produced by set members strictly smaller than ``clause``."""
        key = self.order.clause_key(clause)
        out = set()
        for e in self.entries:
            if self.order.clause_key(e.clause) >= key:
                break
            if e.produced is not None:
                out.add(e.produced)
        return frozenset(out)

    def delta_of(self, clause: Clause) -> Optional[Atom]:
        """The atom ``clause`` would produce over this set, or None.

        For set members this coincides with the recorded entry; for outside
        clauses it applies the same production condition relative to the
        atoms produced below them.
        """
        prefix = self.prefix_below(clause)
        if clause.is_empty or eval_herbrand(set(prefix), clause):
            return None
        m = self.order.max_literal(clause)
        if m.positive and self.order.is_strictly_maximal_in(m, clause):
            return m.atom
        return None


def construct_model(clauses: Iterable[Clause], order: ProblemOrder) -> ModelConstruction:
    ordered = order.sorted_clauses(set(clauses))
    current: set = set()
    entries: List[ModelEntry] = []
    producer: Dict[Atom, Clause] = {}
    minimal_false: Optional[Clause] = None
    for c in ordered:
        prefix = frozenset(current)
        produced: Optional[Atom] = None
        satisfied = eval_herbrand(current, c)
        if not satisfied and not c.is_empty:
            m = order.max_literal(c)
            if m.positive and order.is_strictly_maximal_in(m, c):
                produced = m.atom
                current.add(produced)
                producer[produced] = c
                satisfied = True
        entries.append(ModelEntry(c, prefix, produced, satisfied))
        if not satisfied and minimal_false is None:
            minimal_false = c
    return ModelConstruction(
        order=order,
        entries=entries,
        producer=producer,
        model=frozenset(current),
        minimal_false=minimal_false,
    )


@dataclass(frozen=True)
class SupStep:
    """One recorded inference: what was false, what repaired it, the result."""

    kind: str                      # FACTORING or SUPERPOSITION_LEFT
    main: Clause                   # the smallest false clause
    side: Optional[Clause]         # producing clause (superposition only)
    pivot: Optional[Atom]          # atom resolved on / factored
    conclusion: Clause


def next_inference(construction: ModelConstruction, order: ProblemOrder) -> SupStep:
    """The unique inference the construction prescribes.

    Requires a nonempty minimal false clause; the caller handles the
    satisfiable (no false clause) and refuted (empty clause) ends.
    """
    c = construction.minimal_false
    if c is None:
        raise ValueError("construction satisfies the set; no inference to draw")
    if c.is_empty:
        raise ValueError("the empty clause is already present")
    m = order.max_literal(c)
    if not m.positive:
        d = construction.producer.get(m.atom)
        if d is None:
            raise RuntimeError(
                f"false clause {c} has maximal literal {m} but {m.atom} has no producer"
            )
        return SupStep(
            kind=SUPERPOSITION_LEFT,
            main=c,
            side=d,
            pivot=m.atom,
            conclusion=superposition_left(c, d, order),
        )
    reduced = factoring_step(c, order)
    if reduced is None:
        raise RuntimeError(
            f"false clause {c} has a strictly maximal positive literal; "
            "it should have produced"
        )
    return SupStep(kind=FACTORING, main=c, side=None, pivot=m.atom, conclusion=reduced)


@dataclass(frozen=True)
class SupSnapshot:
    """Clause set plus its construction at one point of the run."""

    clauses: Tuple[Clause, ...]    # ascending under the order
    construction: ModelConstruction


@dataclass
class SupRun:
    problem: Problem
    order: ProblemOrder
    snapshots: List[SupSnapshot] = field(default_factory=list)
    steps: List[SupStep] = field(default_factory=list)
    derived: Tuple[Clause, ...] = ()
    outcome: str = CAP_EXCEEDED
    model: Optional[FrozenSet[Atom]] = None

    def clause_set_at(self, index: int) -> Tuple[Clause, ...]:
        """Clause set before step ``index`` (0 = the input set)."""
        return self.snapshots[index].clauses


def run_sup_mo(problem: Problem, order: Optional[ProblemOrder] = None,
               max_steps: int = 10000) -> SupRun:
    """Run the model-driven strategy to a verdict or the step cap.

    Termination is by verdict on every ground input; the cap only guards
    against defects. Every snapshot (including the final one) carries its
    construction, so downstream checks can replay any point of the run.
    """
    order = order or ProblemOrder(problem)
    run = SupRun(problem=problem, order=order)
    current: List[Clause] = list(problem.clauses)
    present = set(current)
    derived: List[Clause] = []

    while True:
        construction = construct_model(current, order)
        ordered = tuple(order.sorted_clauses(present))
        run.snapshots.append(SupSnapshot(clauses=ordered, construction=construction))
        if construction.minimal_false is None:
            run.outcome = SATISFIABLE
            run.model = construction.model
            break
        if construction.minimal_false.is_empty:
            run.outcome = UNSATISFIABLE
            break
        if len(run.steps) >= max_steps:
            run.outcome = CAP_EXCEEDED
            break
        step = next_inference(construction, order)
        if step.conclusion in present:
            raise RuntimeError(
                f"derived clause {step.conclusion} is already present; "
                "the strategy must always produce a new clause"
            )
        run.steps.append(step)
        derived.append(step.conclusion)
        current.append(step.conclusion)
        present.add(step.conclusion)

    run.derived = tuple(derived)
    return run
