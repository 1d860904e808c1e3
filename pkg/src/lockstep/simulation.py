"""Lockstep driver: the trail calculus shadowing the saturation strategy.

run_scl_sup plays the trail calculus under a fixed strategy whose rounds
mirror the model-driven saturation loop one for one. Every round boundary
carries an annotation: a pair index (how many saturation steps the shadowed
run has taken by now), the clause currently holding attention, and a map
sending clauses to their factored images.

check_invariants confronts one annotated trail state with the saturation
snapshot its pair index claims to match. lockstep_verify runs both sides
independently and checks all round boundaries, strict progress of the
annotations, regularity of the rule log, and agreement of the final
verdicts, models, and learned clauses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .core import (
    Clause,
    ClauseStatus,
    EMPTY_CLAUSE,
    Literal,
    Problem,
    status_under_assignment,
)
from .ordering import GammaMap, ProblemOrder
from .scl import (
    RuleApp,
    SclState,
    audit_regular,
    backtrack,
    conflict,
    decide,
    initial_state,
    is_defined,
    propagate,
    resolve,
    skip,
)
from .superposition import (
    CAP_EXCEEDED,
    SATISFIABLE,
    UNSATISFIABLE,
    SupRun,
    SupSnapshot,
    run_sup_mo,
    sfac,
)


class SimulationError(Exception):
    """The strategy reached a state shape none of its cases can handle.

    This never fires on a sound run; it means an earlier round already broke
    the pairing, so failing loudly beats guessing a continuation.
    """


@dataclass(frozen=True)
class Annotation:
    """Bookkeeping carried across round boundaries.

    ``index`` counts the saturation steps the shadowed run has taken so far.
    ``aid`` is the clause currently holding attention; the empty clause
    stands in before the first round and after a refutation. ``gamma`` maps
    clauses to their factored images and defaults to the identity.
    """

    index: int
    aid: Clause
    gamma: GammaMap


@dataclass(frozen=True)
class SimSeq:
    """One strategy round: its kind, the clause it acted on, the annotation
    it produced, and the half-open slice of the rule log it occupies."""

    kind: str
    attention: Optional[Clause]
    annotation: Annotation
    app_range: Tuple[int, int]


@dataclass
class SimRun:
    problem: Problem
    order: ProblemOrder
    seqs: List[SimSeq] = field(default_factory=list)
    annotations: List[Annotation] = field(default_factory=list)
    boundary_states: List[SclState] = field(default_factory=list)
    states: List[SclState] = field(default_factory=list)   # before each app
    apps: List[RuleApp] = field(default_factory=list)
    outcome: str = CAP_EXCEEDED
    learned: Tuple[Clause, ...] = ()
    model: Optional[frozenset] = None

    @property
    def final_state(self) -> SclState:
        return self.boundary_states[-1]


def initial_gamma(problem: Problem, order: ProblemOrder) -> GammaMap:
    """Map each input clause to its factored image when the input set already
    contains that image; every other clause stands for itself."""
    gamma = GammaMap()
    members = set(problem.clauses)
    for c in problem.clauses:
        image = sfac(c, order)
        if image != c and image in members:
            gamma = gamma.with_entry(c, image)
    return gamma


def next_attention(order: ProblemOrder, state: SclState,
                   ann: Annotation) -> Optional[Clause]:
    """The smallest clause, in the factored-image order, strictly past the
    clause currently holding attention. None once the walk is exhausted."""
    floor = order.gamma_key(ann.aid, ann.gamma)
    best: Optional[Clause] = None
    best_key = None
    for c in state.all_clauses():
        key = order.gamma_key(c, ann.gamma)
        if key <= floor:
            continue
        if best is None or key < best_key:
            best, best_key = c, key
    return best


def filler_decisions(order: ProblemOrder, state: SclState,
                     bound: Literal) -> List[Literal]:
    """Negative decisions covering every undefined atom whose positive
    literal sits below ``bound``, in ascending atom order."""
    cut = order.literal_rank(bound)
    out: List[Literal] = []
    for a in order.atoms_ascending:
        if order.literal_rank(Literal(a)) >= cut:
            break                      # positives ascend with the atoms
        if not is_defined(state, a):
            out.append(Literal(a, False))
    return out


def _false_clauses(order: ProblemOrder, state: SclState,
                   assuming: Optional[Literal] = None) -> List[Clause]:
    """Clauses falsified by the trail, optionally extended by one literal,
    smallest first."""
    assignment = state.assignment()
    if assuming is not None:
        assignment[assuming.atom] = assuming.positive
    out = [
        c for c in state.all_clauses()
        if status_under_assignment(assignment, c) == ClauseStatus.FALSE
    ]
    out.sort(key=order.clause_key)
    return out


class _Log:
    """Applies rules while recording every state and every application, so
    the whole run can be audited afterwards."""

    def __init__(self, order: ProblemOrder, state: SclState):
        self.order = order
        self.states: List[SclState] = [state]
        self.apps: List[RuleApp] = []

    @property
    def state(self) -> SclState:
        return self.states[-1]

    def _push(self, app: RuleApp, state: SclState) -> None:
        self.apps.append(app)
        self.states.append(state)

    def decide(self, literal: Literal) -> None:
        self._push(RuleApp("decide", literal=literal),
                   decide(self.order, self.state, literal))

    def propagate(self, clause: Clause, literal: Literal) -> None:
        self._push(RuleApp("propagate", literal=literal, clause=clause),
                   propagate(self.order, self.state, clause, literal))

    def conflict(self, clause: Clause) -> None:
        self._push(RuleApp("conflict", clause=clause),
                   conflict(self.order, self.state, clause))

    def skip(self) -> None:
        top = self.state.trail[-1]
        self._push(RuleApp("skip", literal=top.literal),
                   skip(self.order, self.state))

    def resolve(self) -> None:
        top = self.state.trail[-1]
        self._push(RuleApp("resolve", literal=top.literal),
                   resolve(self.order, self.state))

    def backtrack(self) -> None:
        self._push(RuleApp("backtrack", clause=self.state.conflict),
                   backtrack(self.order, self.state))


def _round_no_conflict(log: _Log, ann: Annotation,
                       d: Clause) -> Tuple[str, Annotation]:
    """Process the next attention clause.

    Kinds: "pass" when the clause is already satisfied (possibly thanks to
    the fresh filler decisions), "decide" when guessing its maximal atom is
    safe, "clash" when that atom must be propagated because it falsifies
    some clause, which immediately enters conflict mode.
    """
    order = log.order
    gamma = ann.gamma
    j = ann.index
    g = gamma.resolve(d)
    top_lit = order.max_literal(g)

    for f in filler_decisions(order, log.state, top_lit):
        log.decide(f)

    if status_under_assignment(log.state.assignment(), g) == ClauseStatus.TRUE:
        return "pass", Annotation(j, d, gamma)

    # the clause acts: pair the duplicate copies of a positive maximal
    # literal with the factoring steps the shadowed run takes here
    mult = order.max_multiplicity(g)
    if top_lit.positive and mult >= 2:
        gamma = gamma.with_entry(d, sfac(g, order))
        j += mult - 1
        g = gamma.resolve(d)

    if not top_lit.positive:
        raise SimulationError(
            f"attention clause {d} is unsatisfied although its maximal "
            f"literal {top_lit} is negative"
        )
    if is_defined(log.state, top_lit.atom):
        raise SimulationError(f"attention clause {d} is false at its own turn")

    false_after = _false_clauses(order, log.state, assuming=top_lit)
    if false_after:
        log.propagate(d, top_lit)
        log.conflict(false_after[0])
        return "clash", Annotation(j, d, gamma)
    log.decide(top_lit)
    return "decide", Annotation(j, d, gamma)


def _producing_clause(order: ProblemOrder, state: SclState, gamma: GammaMap,
                      literal: Literal) -> Clause:
    """The attention-order smallest clause whose image forces ``literal``.

    Forcing needs more than the literal being strictly maximal in the image:
    the rest of the image must be false on the current trail, otherwise the
    clause is satisfied without the literal and produces nothing. Skipping
    that test can select a clause whose leftover part is true, or never
    false at all because it carries both polarities of some atom.
    """
    assignment = state.assignment()
    best: Optional[Clause] = None
    best_key = None
    for c in state.all_clauses():
        img = gamma.resolve(c)
        if img.is_empty or order.max_literal(img) != literal:
            continue
        if not order.is_strictly_maximal_in(literal, img):
            continue
        rest = Clause([l for l in img.literals if l != literal])
        if status_under_assignment(assignment, rest) != ClauseStatus.FALSE:
            continue
        key = order.gamma_key(c, gamma)
        if best is None or key < best_key:
            best, best_key = c, key
    if best is None:
        raise SimulationError(f"no clause can force {literal}")
    return best


def _round_conflict(log: _Log, ann: Annotation) -> Tuple[str, Annotation]:
    """Process the pending conflict.

    The conflict is resolved against the top propagation once per occurrence
    of the complemented literal; each resolution pairs with one saturation
    step. An empty resolvent ends the run ("refute"). Otherwise the trail is
    unwound to the blocking decision and the resolvent is learned; what
    happens next depends on its maximal literal. A negative maximum means
    its atom must be forced again from the clause that produces it, which
    re-exposes a conflict ("learn_negative"). A positive maximum is guessed
    when that is safe ("learn_decide") and propagated from the learned
    clause itself when it is not ("learn_propagate").
    """
    order = log.order
    top = log.state.trail[-1] if log.state.trail else None
    if top is None or top.is_decision:
        raise SimulationError("conflict mode without a top propagation")
    comp = top.literal.complement()

    steps = 0
    while log.state.conflict.contains(comp):
        log.resolve()
        steps += 1
    if steps == 0:
        raise SimulationError(
            f"conflict {log.state.conflict} does not mention the propagated "
            f"{top.literal}"
        )
    j = ann.index + steps
    learned = log.state.conflict

    if learned.is_empty:
        while log.state.trail:
            log.skip()
        return "refute", Annotation(j, EMPTY_CLAUSE, ann.gamma)

    while log.state.trail and not learned.contains(
            log.state.trail[-1].literal.complement()):
        log.skip()
    if not log.state.trail:
        raise SimulationError(f"nowhere to backtrack for the resolvent {learned}")
    if not log.state.trail[-1].is_decision:
        raise SimulationError(
            f"resolvent {learned} blocks on the propagation "
            f"{log.state.trail[-1].literal} instead of a decision"
        )
    log.backtrack()

    lmax = order.max_literal(learned)
    if not lmax.positive:
        forced = lmax.complement()
        source = _producing_clause(order, log.state, ann.gamma, forced)
        log.propagate(source, forced)
        false_now = _false_clauses(order, log.state)
        if not false_now:
            raise SimulationError(
                f"forcing {forced} from {source} exposed no conflict"
            )
        log.conflict(false_now[0])
        return "learn_negative", Annotation(j, source, ann.gamma)

    # positive maximum: duplicate copies pair with factoring steps again
    gamma = ann.gamma.with_entry(learned, sfac(learned, order))
    j += order.max_multiplicity(learned) - 1
    false_after = _false_clauses(order, log.state, assuming=lmax)
    if false_after:
        log.propagate(learned, lmax)
        log.conflict(false_after[0])
        return "learn_propagate", Annotation(j, learned, gamma)
    log.decide(lmax)
    return "learn_decide", Annotation(j, learned, gamma)


def run_scl_sup(problem: Problem, order: Optional[ProblemOrder] = None,
                max_sequences: int = 10000) -> SimRun:
    """Run the trail calculus under the lockstep strategy to a verdict.

    The cap bounds the number of rounds and only guards against defects;
    on sound inputs the strategy terminates with a verdict by itself.
    """
    order = order or ProblemOrder(problem)
    log = _Log(order, initial_state(problem, order))
    ann = Annotation(0, EMPTY_CLAUSE, initial_gamma(problem, order))

    run = SimRun(problem=problem, order=order)
    run.annotations.append(ann)
    run.boundary_states.append(log.state)

    if any(c.is_empty for c in log.state.n):
        # the input is already refuted; a single conflict round records that
        start = len(log.apps)
        log.conflict(EMPTY_CLAUSE)
        run.seqs.append(SimSeq("refute", None, ann, (start, len(log.apps))))
        run.annotations.append(ann)
        run.boundary_states.append(log.state)
        run.outcome = UNSATISFIABLE
    else:
        while len(run.seqs) < max_sequences:
            start = len(log.apps)
            if log.state.conflict is not None:
                kind, ann = _round_conflict(log, ann)
                attention = None
            else:
                d = next_attention(order, log.state, ann)
                if d is None:
                    run.outcome = SATISFIABLE
                    break
                kind, ann = _round_no_conflict(log, ann, d)
                attention = d
            run.seqs.append(SimSeq(kind, attention, ann, (start, len(log.apps))))
            run.annotations.append(ann)
            run.boundary_states.append(log.state)
            if kind == "refute":
                run.outcome = UNSATISFIABLE
                break

    run.states = log.states
    run.apps = log.apps
    final = log.state
    run.learned = final.u + ((EMPTY_CLAUSE,) if run.outcome == UNSATISFIABLE else ())
    if run.outcome == SATISFIABLE:
        run.model = frozenset(
            e.literal.atom for e in final.trail if e.literal.positive
        )
    return run


# ---------------------------------------------------------------------------
# Invariant checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    name: str
    ok: bool
    detail: str = ""


INVARIANT_NAMES = (
    "atoms-in-scope",
    "trail-below-bound",
    "membership",
    "factored-map-shape",
    "positives-match-production",
    "negatives-cover-gap",
    "trail-ascends",
    "producers-exist",
    "producer-preimages",
    "conflict-top-propagation",
    "conflict-is-minimal-false",
    "prefix-satisfied",
    "no-missed-conflict",
    "refutation-sync",
)


def check_invariants(order: ProblemOrder, state: SclState, ann: Annotation,
                     snapshot: SupSnapshot) -> List[InvariantReport]:
    """Confront one annotated trail state with one saturation snapshot.

    Returns one report per invariant, in the INVARIANT_NAMES order. The
    checks are defensive: a state too broken to even rank its clauses fails
    the affected invariant instead of raising.
    """
    reports: List[InvariantReport] = []

    def add(name: str, ok: bool, detail: str = "") -> None:
        reports.append(InvariantReport(name, bool(ok), "" if ok else detail))

    def guarded(name: str, fn: Callable[[], Tuple[bool, str]]) -> None:
        try:
            ok, detail = fn()
        except ValueError as e:
            ok, detail = False, f"could not evaluate: {e}"
        add(name, ok, detail)

    universe = set(order.atoms_ascending)
    sup_set = set(snapshot.clauses)
    con = snapshot.construction
    assignment = state.assignment()
    positives = {e.literal.atom for e in state.trail if e.literal.positive}
    negatives = {e.literal.atom for e in state.trail if not e.literal.positive}
    image = ann.gamma.resolve(ann.aid)

    # (i) every atom the state mentions comes from the input signature
    mentioned = {l.atom for c in state.all_clauses() for l in c.literals}
    mentioned |= {e.literal.atom for e in state.trail}
    if state.conflict is not None:
        mentioned |= {l.atom for l in state.conflict.literals}
    foreign = sorted(a.text for a in mentioned - universe)
    add("atoms-in-scope", not foreign, f"foreign atoms {foreign}")

    # (ii) the trail never reaches the bound
    beyond = [
        e.literal.atom for e in state.trail
        if e.literal.atom not in universe or not order.below_beta(e.literal.atom)
    ]
    add("trail-below-bound", not beyond, f"atoms at or above the bound: {beyond}")

    # (iii) the attention clause and all learned clauses exist on the paired side
    missing = [c for c in state.u if c not in sup_set]
    if not ann.aid.is_empty and ann.aid not in sup_set:
        missing.append(ann.aid)
    add("membership", not missing,
        f"absent from the paired clause set: {[str(c) for c in missing]}")

    # (iv) the map stores exactly factored images that the paired set contains
    def map_shape() -> Tuple[bool, str]:
        problems = []
        own = set(state.all_clauses())
        for c, img in ann.gamma.proper_entries().items():
            if img != sfac(c, order):
                problems.append(f"{c} maps to {img}, not its factored image")
            elif img not in sup_set:
                problems.append(f"image {img} is not in the paired set")
            elif c not in own:
                problems.append(f"{c} is neither input nor learned")
        return not problems, "; ".join(problems)
    guarded("factored-map-shape", map_shape)

    # (v) positive trail atoms = atoms produced below the attention image,
    #     plus that image's own production
    def positives_match() -> Tuple[bool, str]:
        expected = set(con.prefix_below(image))
        delta = con.delta_of(image)
        if delta is not None:
            expected.add(delta)
        return positives == expected, (
            f"trail makes {sorted(a.text for a in positives)} true, "
            f"construction expects {sorted(a.text for a in expected)}"
        )
    guarded("positives-match-production", positives_match)

    # (vi) negative trail atoms = atoms below the image's maximal literal
    #      that are not produced below it
    def negatives_match() -> Tuple[bool, str]:
        if image.is_empty:
            expected = set()
        else:
            cut = order.literal_rank(order.max_literal(image))
            prefix = con.prefix_below(image)
            expected = {
                a for a in universe
                if order.literal_rank(Literal(a)) < cut and a not in prefix
            }
        return negatives == expected, (
            f"trail makes {sorted(a.text for a in negatives)} false, "
            f"expected {sorted(a.text for a in expected)}"
        )
    guarded("negatives-cover-gap", negatives_match)

    # (vii) trail atoms strictly ascend
    def ascends() -> Tuple[bool, str]:
        ranks = [order.atom_rank(e.literal.atom) for e in state.trail]
        ok = all(a < b for a, b in zip(ranks, ranks[1:]))
        return ok, f"trail atom ranks {ranks} are not strictly ascending"
    guarded("trail-ascends", ascends)

    # (viii) every positive trail atom is produced on the paired side
    unproduced = [a.text for a in positives if a not in con.producer]
    add("producers-exist", not unproduced, f"no producer for {sorted(unproduced)}")

    # (ix) each producer has a preimage under the map, and propagations
    #      record exactly the producing clause as their justification
    problems9: List[str] = []
    for e in state.trail:
        if not e.literal.positive:
            continue
        producer = con.producer.get(e.literal.atom)
        if producer is None:
            problems9.append(f"{e.literal.atom} has no producer")
            continue
        if not any(ann.gamma.resolve(c) == producer for c in state.all_clauses()):
            problems9.append(f"no clause maps onto the producer {producer}")
        if not e.is_decision and e.reason != producer:
            problems9.append(
                f"justification {e.reason} of {e.literal} differs from the "
                f"producer {producer}"
            )
    add("producer-preimages", not problems9, "; ".join(problems9))

    # (x) a live conflict always sits on top of a propagation
    if state.conflict is None or state.conflict.is_empty:
        add("conflict-top-propagation", True)
    else:
        ok10 = bool(state.trail) and not state.trail[-1].is_decision
        add("conflict-top-propagation", ok10,
            "conflict without a top propagation")

    # (xi) the conflict clause is the smallest false clause of the paired
    #      construction and the top justification is the attention image
    def conflict_shape() -> Tuple[bool, str]:
        if state.conflict is None:
            return True, ""
        problems = []
        if con.minimal_false != state.conflict:
            problems.append(
                f"conflict is {state.conflict}, construction says "
                f"{con.minimal_false}"
            )
        if not state.conflict.is_empty:
            if status_under_assignment(assignment, state.conflict) != ClauseStatus.FALSE:
                problems.append("conflict clause is not falsified by the trail")
            top = state.trail[-1] if state.trail else None
            if top is None or top.is_decision:
                problems.append("no top propagation to resolve against")
            elif image.is_empty:
                problems.append("attention is the empty clause during a conflict")
            else:
                if top.reason != image:
                    problems.append(
                        f"top justification {top.reason} is not the attention "
                        f"image {image}"
                    )
                if top.literal != order.max_literal(image) or not top.literal.positive:
                    problems.append(
                        f"top literal {top.literal} is not the image's "
                        "positive maximum"
                    )
        return not problems, "; ".join(problems)
    guarded("conflict-is-minimal-false", conflict_shape)

    # (xii) everything up to the attention clause is satisfied
    def prefix_satisfied() -> Tuple[bool, str]:
        aid_key = order.gamma_key(ann.aid, ann.gamma)
        unsat = [
            c for c in state.all_clauses()
            if order.gamma_key(c, ann.gamma) <= aid_key
            and status_under_assignment(assignment, c) != ClauseStatus.TRUE
        ]
        return not unsat, f"not satisfied yet: {[str(c) for c in unsat]}"
    guarded("prefix-satisfied", prefix_satisfied)

    # (xiii) outside conflict mode no clause is false
    if state.conflict is None:
        overlooked = [
            c for c in state.all_clauses()
            if status_under_assignment(assignment, c) == ClauseStatus.FALSE
        ]
        add("no-missed-conflict", not overlooked,
            f"falsified but unclaimed: {[str(c) for c in overlooked]}")
    else:
        add("no-missed-conflict", True)

    # (xiv) the two sides refute together
    here = state.conflict == EMPTY_CLAUSE
    there = EMPTY_CLAUSE in sup_set
    add("refutation-sync", here == there,
        f"trail side refuted: {here}, saturation side refuted: {there}")

    return reports


def check_progress(order: ProblemOrder, before: Annotation,
                   after: Annotation) -> Optional[str]:
    """None if the second annotation strictly advances past the first:
    either the pair index grows, or it stands still while the map is
    unchanged and the attention clause strictly climbs."""
    if after.index > before.index:
        return None
    if after.index < before.index:
        return f"pair index went from {before.index} back to {after.index}"
    if after.gamma != before.gamma:
        return "factored-image map changed while the pair index stood still"
    if order.gamma_key(after.aid, after.gamma) <= order.gamma_key(before.aid, before.gamma):
        return "attention clause did not advance"
    return None


# ---------------------------------------------------------------------------
# The lockstep verifier
# ---------------------------------------------------------------------------


@dataclass
class BoundaryReport:
    boundary: int                  # position in the annotation list
    index: int                     # paired saturation snapshot
    reports: List[InvariantReport]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)


@dataclass
class VerifyResult:
    problem: Problem
    order: ProblemOrder
    sup: SupRun
    sim: SimRun
    boundaries: List[BoundaryReport] = field(default_factory=list)
    progress_failures: List[str] = field(default_factory=list)
    regularity_failures: List[str] = field(default_factory=list)
    final_failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            all(b.ok for b in self.boundaries)
            and not self.progress_failures
            and not self.regularity_failures
            and not self.final_failures
        )

    def failures(self) -> List[str]:
        out = []
        for b in self.boundaries:
            for r in b.reports:
                if not r.ok:
                    out.append(
                        f"boundary {b.boundary} (pair index {b.index}): "
                        f"{r.name}: {r.detail}"
                    )
        out.extend(f"progress: {m}" for m in self.progress_failures)
        out.extend(f"regularity: {m}" for m in self.regularity_failures)
        out.extend(f"final: {m}" for m in self.final_failures)
        return out


def lockstep_verify(problem: Problem, order: Optional[ProblemOrder] = None,
                    max_sequences: int = 10000) -> VerifyResult:
    """Run both calculi independently and check them against each other.

    Every round boundary of the trail run is confronted with the saturation
    snapshot its pair index names; on top of that the verifier demands
    strictly advancing annotations, a regular rule log, matching verdicts
    and models, equal step counts, and learned clauses whose factored images
    all occur among the derived ones.
    """
    order = order or ProblemOrder(problem)
    sup = run_sup_mo(problem, order)
    sim = run_scl_sup(problem, order, max_sequences=max_sequences)
    result = VerifyResult(problem=problem, order=order, sup=sup, sim=sim)

    for b, ann in enumerate(sim.annotations):
        if ann.index >= len(sup.snapshots):
            result.boundaries.append(BoundaryReport(b, ann.index, [
                InvariantReport(
                    "pair-index-in-range", False,
                    f"index {ann.index} but only {len(sup.snapshots)} snapshots",
                )
            ]))
            continue
        reports = check_invariants(
            order, sim.boundary_states[b], ann, sup.snapshots[ann.index]
        )
        result.boundaries.append(BoundaryReport(b, ann.index, reports))

    for idx, seq in enumerate(sim.seqs):
        before, after = sim.annotations[idx], sim.annotations[idx + 1]
        if before == after and seq.kind == "refute":
            continue                   # the input itself held the empty clause
        msg = check_progress(order, before, after)
        if msg is not None:
            result.progress_failures.append(f"round {idx} ({seq.kind}): {msg}")

    result.regularity_failures = audit_regular(sim.states, sim.apps)

    ff = result.final_failures
    if sim.outcome == CAP_EXCEEDED:
        ff.append("the trail run hit its round cap")
    if sup.outcome == CAP_EXCEEDED:
        ff.append("the saturation run hit its step cap")
    if not ff:
        if sim.outcome != sup.outcome:
            ff.append(
                f"verdicts disagree: trail side {sim.outcome}, "
                f"saturation side {sup.outcome}"
            )
        final_index = sim.annotations[-1].index
        if final_index != len(sup.steps):
            ff.append(
                f"final pair index {final_index} does not match the "
                f"{len(sup.steps)} saturation steps"
            )
        images = {sfac(c, order) for c in sup.snapshots[-1].clauses}
        for c in sim.learned:
            if sfac(c, order) not in images:
                ff.append(
                    f"learned clause {c} has no factored twin among the "
                    "derived clauses"
                )
        here = EMPTY_CLAUSE in sim.learned
        there = EMPTY_CLAUSE in sup.snapshots[-1].clauses
        if here != there:
            ff.append("only one side of the pair refuted")
        if sim.outcome == SATISFIABLE and sim.model != sup.model:
            ff.append(f"models disagree: {sim.model} vs {sup.model}")
        if sim.outcome == UNSATISFIABLE:
            fs = sim.final_state
            if fs.trail or fs.k != 0 or fs.conflict != EMPTY_CLAUSE:
                ff.append("refuted trail state is not the closed final shape")
    return result
