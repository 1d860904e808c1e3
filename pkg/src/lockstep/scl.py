"""Conflict-driven trail calculus over ground clauses.

A state is a trail of annotated literals plus the input clauses, the learned
clauses, an atom bound, the decision-level counter, and the current conflict
(None meaning no conflict, the empty clause meaning refuted). Seven rules
move between states: propagate, decide, and conflict operate outside
conflict mode; skip, factorize, resolve, and backtrack operate inside it.

Every rule is a pure function taking the ambient order (for the atom bound)
and a state, returning the successor state. A violated side condition raises
RuleError with a stable guard name instead of silently doing nothing, which
keeps drivers honest: a driver that calls a rule out of turn crashes loudly.

Levels count decisions: a decision is pushed with level k+1 and bumps k, a
propagation is pushed with the current k. Backtracking pops exactly the
topmost decision (which must sit on top of the trail), learns the conflict,
and returns to level k-1; copies of the complement of that decision inside
the conflict are exempt from the usual lower-level requirement on the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .core import (
    Atom,
    Clause,
    ClauseStatus,
    EMPTY_CLAUSE,
    Literal,
    Problem,
    status_under_assignment,
)
from .ordering import ProblemOrder


class RuleError(Exception):
    """A rule was applied in a state that fails one of its side conditions."""

    def __init__(self, rule: str, guard: str, message: str):
        super().__init__(f"{rule}: {message} [{guard}]")
        self.rule = rule
        self.guard = guard


@dataclass(frozen=True)
class TrailEntry:
    literal: Literal
    level: int
    reason: Optional[Clause]       # None for decisions, justification otherwise

    @property
    def is_decision(self) -> bool:
        return self.reason is None

    def render(self) -> str:
        tag = str(self.level) if self.is_decision else str(self.reason)
        return f"{self.literal}^{tag}"


@dataclass(frozen=True)
class SclState:
    trail: Tuple[TrailEntry, ...]
    n: Tuple[Clause, ...]          # input clauses
    u: Tuple[Clause, ...]          # learned clauses, in learning order
    beta: Atom
    k: int
    conflict: Optional[Clause]     # None = no conflict, EMPTY_CLAUSE = refuted

    def all_clauses(self) -> Tuple[Clause, ...]:
        return self.n + self.u

    def assignment(self) -> Dict[Atom, bool]:
        return {e.literal.atom: e.literal.positive for e in self.trail}

    def render(self) -> str:
        trail = ", ".join(e.render() for e in self.trail)
        conflict = "top" if self.conflict is None else str(self.conflict)
        learned = "{" + ", ".join(str(c) for c in self.u) + "}"
        return f"([{trail}]; U={learned}; k={self.k}; {conflict})"


def initial_state(problem: Problem, order: ProblemOrder) -> SclState:
    return SclState(
        trail=(),
        n=problem.clauses.clauses(),
        u=(),
        beta=order.beta,
        k=0,
        conflict=None,
    )


# ---------------------------------------------------------------------------
# Trail queries
# ---------------------------------------------------------------------------


def trail_value(state: SclState, literal: Literal) -> Optional[bool]:
    """True/False if the trail defines the literal, None if undefined."""
    for e in state.trail:
        if e.literal.atom == literal.atom:
            return e.literal.positive == literal.positive
    return None


def is_defined(state: SclState, atom: Atom) -> bool:
    return any(e.literal.atom == atom for e in state.trail)


def literal_level(state: SclState, literal: Literal) -> int:
    for e in state.trail:
        if e.literal.atom == literal.atom:
            return e.level
    raise ValueError(f"literal {literal} is undefined on the trail")


def conflict_candidates(state: SclState) -> List[Clause]:
    """Clauses (input or learned) that the trail currently falsifies."""
    assignment = state.assignment()
    return [
        c for c in state.all_clauses()
        if status_under_assignment(assignment, c) == ClauseStatus.FALSE
    ]


def occurring_atoms(state: SclState) -> set:
    return {l.atom for c in state.all_clauses() for l in c.literals}


# ---------------------------------------------------------------------------
# Rules outside conflict mode
# ---------------------------------------------------------------------------


def _need_no_conflict(rule: str, state: SclState) -> None:
    if state.conflict is not None:
        raise RuleError(rule, "conflict-active", "a conflict is being processed")


def _check_bound(rule: str, order: ProblemOrder, atom: Atom) -> None:
    try:
        ok = order.below_beta(atom)
    except ValueError:
        ok = False
    if not ok:
        raise RuleError(rule, "atom-beyond-bound", f"atom {atom} is not below the bound")


def propagate(order: ProblemOrder, state: SclState, clause: Clause, literal: Literal) -> SclState:
    """Push ``literal`` as forced by ``clause``: every other literal of the
    clause is false on the trail. The recorded justification drops duplicate
    copies of the propagated literal."""
    _need_no_conflict("propagate", state)
    if clause not in state.all_clauses():
        raise RuleError("propagate", "unknown-clause", f"{clause} is not an input or learned clause")
    if not clause.contains(literal):
        raise RuleError("propagate", "literal-not-in-clause", f"{literal} does not occur in {clause}")
    if is_defined(state, literal.atom):
        raise RuleError("propagate", "literal-defined", f"{literal.atom} is already on the trail")
    for l in clause.literals:
        _check_bound("propagate", order, l.atom)
    remainder = Clause([l for l in clause.literals if l != literal])
    if status_under_assignment(state.assignment(), remainder) != ClauseStatus.FALSE:
        raise RuleError(
            "propagate", "remainder-not-false",
            f"{remainder} is not falsified by the trail",
        )
    justification = remainder.extended([literal])
    entry = TrailEntry(literal=literal, level=state.k, reason=justification)
    return SclState(
        trail=state.trail + (entry,),
        n=state.n, u=state.u, beta=state.beta, k=state.k, conflict=None,
    )


def decide(order: ProblemOrder, state: SclState, literal: Literal) -> SclState:
    """Guess ``literal`` and open level k+1. The atom must occur in the
    clauses and lie below the bound."""
    _need_no_conflict("decide", state)
    if literal.atom not in occurring_atoms(state):
        raise RuleError("decide", "unknown-atom", f"{literal.atom} occurs in no clause")
    if is_defined(state, literal.atom):
        raise RuleError("decide", "literal-defined", f"{literal.atom} is already on the trail")
    _check_bound("decide", order, literal.atom)
    entry = TrailEntry(literal=literal, level=state.k + 1, reason=None)
    return SclState(
        trail=state.trail + (entry,),
        n=state.n, u=state.u, beta=state.beta, k=state.k + 1, conflict=None,
    )


def conflict(order: ProblemOrder, state: SclState, clause: Clause) -> SclState:
    """Enter conflict mode on a clause the trail falsifies."""
    _need_no_conflict("conflict", state)
    if clause not in state.all_clauses():
        raise RuleError("conflict", "unknown-clause", f"{clause} is not an input or learned clause")
    if status_under_assignment(state.assignment(), clause) != ClauseStatus.FALSE:
        raise RuleError("conflict", "clause-not-false", f"{clause} is not falsified by the trail")
    return SclState(
        trail=state.trail, n=state.n, u=state.u, beta=state.beta, k=state.k,
        conflict=clause,
    )


# ---------------------------------------------------------------------------
# Rules inside conflict mode
# ---------------------------------------------------------------------------


def _need_conflict(rule: str, state: SclState) -> Clause:
    if state.conflict is None:
        raise RuleError(rule, "no-conflict", "no conflict is being processed")
    return state.conflict


def _need_top(rule: str, state: SclState) -> TrailEntry:
    if not state.trail:
        raise RuleError(rule, "empty-trail", "the trail is empty")
    return state.trail[-1]


def skip(order: ProblemOrder, state: SclState) -> SclState:
    """Pop the top trail entry; allowed only when its complement does not
    occur in the conflict. Popping a decision closes its level."""
    d = _need_conflict("skip", state)
    top = _need_top("skip", state)
    if d.contains(top.literal.complement()):
        raise RuleError(
            "skip", "complement-in-conflict",
            f"{top.literal.complement()} occurs in the conflict {d}",
        )
    new_k = state.k - 1 if top.is_decision else state.k
    return SclState(
        trail=state.trail[:-1], n=state.n, u=state.u, beta=state.beta,
        k=new_k, conflict=d,
    )


def factorize(order: ProblemOrder, state: SclState, literal: Optional[Literal] = None) -> SclState:
    """Merge two copies of a duplicated conflict literal into one.

    Without an explicit literal the first duplicated one (in the clause's
    stored literal order) is taken, which makes the rule deterministic.
    """
    d = _need_conflict("factorize", state)
    if literal is None:
        for l in d.literals:
            if d.count(l) >= 2:
                literal = l
                break
        else:
            raise RuleError("factorize", "no-duplicate", f"{d} has no duplicated literal")
    elif d.count(literal) < 2:
        raise RuleError(
            "factorize", "literal-not-duplicated",
            f"{literal} does not occur twice in {d}",
        )
    return SclState(
        trail=state.trail, n=state.n, u=state.u, beta=state.beta, k=state.k,
        conflict=d.without_one(literal),
    )


def resolve(order: ProblemOrder, state: SclState) -> SclState:
    """Resolve the conflict with the justification of the top propagation.

    One occurrence of the complement of the propagated literal leaves the
    conflict; the propagation's side literals move in. The trail is kept,
    since further copies may still need resolving against the same entry.
    """
    d = _need_conflict("resolve", state)
    top = _need_top("resolve", state)
    if top.is_decision:
        raise RuleError("resolve", "top-not-propagation", f"{top.literal} is a decision")
    comp = top.literal.complement()
    if not d.contains(comp):
        raise RuleError(
            "resolve", "complement-not-in-conflict",
            f"{comp} does not occur in the conflict {d}",
        )
    assert top.reason is not None
    resolvent = d.without_one(comp).extended(
        top.reason.without_one(top.literal).literals
    )
    return SclState(
        trail=state.trail, n=state.n, u=state.u, beta=state.beta, k=state.k,
        conflict=resolvent,
    )


def backtrack(order: ProblemOrder, state: SclState) -> SclState:
    """Learn the conflict and pop the topmost decision.

    The top of the trail must be the decision of the current level and its
    complement must occur in the conflict; every conflict literal other than
    copies of that complement must sit strictly below the current level.
    The learned clause joins U, the conflict is discharged, k drops by one.
    """
    d = _need_conflict("backtrack", state)
    top = _need_top("backtrack", state)
    if not top.is_decision:
        raise RuleError("backtrack", "top-not-decision", f"{top.literal} is a propagation")
    learned_lit = top.literal.complement()
    if not d.contains(learned_lit):
        raise RuleError(
            "backtrack", "decision-not-complemented",
            f"{learned_lit} does not occur in the conflict {d}",
        )
    for l in d.literals:
        if l == learned_lit:
            continue
        if literal_level(state, l) >= state.k:
            raise RuleError(
                "backtrack", "residue-level",
                f"{l} sits at level {literal_level(state, l)}, not below {state.k}",
            )
    new_u = state.u if d in state.u else state.u + (d,)
    return SclState(
        trail=state.trail[:-1], n=state.n, u=new_u, beta=state.beta,
        k=state.k - 1, conflict=None,
    )


# ---------------------------------------------------------------------------
# Run records and the regularity audit
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RuleApp:
    """One applied rule with its payload, for logs and audits."""

    rule: str
    literal: Optional[Literal] = None
    clause: Optional[Clause] = None

    def render(self) -> str:
        parts = [self.rule]
        if self.literal is not None:
            parts.append(str(self.literal))
        if self.clause is not None:
            parts.append(f"[{self.clause}]")
        return " ".join(parts)


def audit_regular(states: Sequence[SclState], apps: Sequence[RuleApp]) -> List[str]:
    """Check a rule log for regularity.

    Two disciplines are enforced: whenever some clause is false outside
    conflict mode, the next rule must be conflict (conflict precedence); and
    a decision must never falsify a clause on the spot. states[i] is the
    state apps[i] was applied in; a final state beyond the last app is
    allowed but not required.
    """
    out: List[str] = []
    for i, app in enumerate(apps):
        before = states[i]
        if before.conflict is None and app.rule != "conflict":
            false_now = conflict_candidates(before)
            if false_now:
                out.append(
                    f"step {i}: {app.rule} applied while {false_now[0]} was false"
                )
        if app.rule == "decide" and i + 1 < len(states):
            after = states[i + 1]
            enabled = conflict_candidates(after)
            if enabled:
                out.append(
                    f"step {i}: decide {app.literal} made {enabled[0]} false"
                )
    return out
