"""Lockstep strategy: frozen end-to-end traces and invariant checking.

Every annotation (pair index, attention clause, factored-image map), trail,
learned clause, and sequence kind asserted below was derived by hand before
the strategy code existed. The mutation tests then confirm the invariant
checker actually rejects broken states rather than waving everything through.
"""

import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from lockstep.core import (
    Atom,
    Clause,
    ClauseSet,
    EMPTY_CLAUSE,
    GroundTerm,
    Literal,
    OrderingConfig,
    Problem,
    parse_problem,
)
from lockstep.ordering import GammaMap, ProblemOrder
from lockstep.superposition import run_sup_mo, sfac
from lockstep.simulation import (
    Annotation,
    SimulationError,
    check_invariants,
    check_progress,
    lockstep_verify,
    next_attention,
    run_scl_sup,
)


def T(name, *args):
    return GroundTerm(name, tuple(args))


def lit(text):
    positive = not text.startswith("-")
    return Literal(Atom(text.lstrip("-")), positive)


PA = Literal(T("P", T("a")))
PB = Literal(T("P", T("b")))
QA = Literal(T("Q", T("a")))
QB = Literal(T("Q", T("b")))

KBO_TEXT = """\
order: kbo
prec: a < b < P < Q
clause: P(a) | P(a)
clause: -P(a) | Q(b)
clause: -Q(b)
"""

LPO_TEXT = """\
order: lpo
prec: a < b < P < Q
clause: P(a)
clause: -P(b) | Q(a)
clause: -P(a) | Q(a) | Q(a)
clause: P(a) | -Q(a)
clause: -P(a) | -Q(a)
"""

THIRD_TEXT = """\
order: lpo
prec: a < b < P < Q
clause: P(a)
clause: -P(b)
clause: -P(a) | Q(a)
clause: P(b) | -Q(a)
"""

SAT_TEXT = THIRD_TEXT.replace("clause: -P(b)\n", "")


def annotations_of(run):
    return [(a.index, a.aid) for a in run.annotations]


def test_kbo_refutation_simulation_trace():
    p = parse_problem(KBO_TEXT)
    run = run_scl_sup(p)
    c1, c2, c3 = p.clauses.clauses()
    not_pa = Clause([PA.complement()])

    assert run.outcome == "unsatisfiable"
    assert [s.kind for s in run.seqs] == ["decide", "clash", "learn_negative", "refute"]
    assert annotations_of(run) == [
        (0, EMPTY_CLAUSE), (1, c1), (1, c2), (2, c1), (3, EMPTY_CLAUSE),
    ]
    assert run.annotations[0].gamma.proper_entries() == {}
    assert run.annotations[1].gamma.proper_entries() == {c1: Clause([PA])}
    assert run.learned == (not_pa, EMPTY_CLAUSE)
    assert run.final_state.u == (not_pa,)
    assert run.final_state.trail == () and run.final_state.k == 0
    assert run.final_state.conflict == EMPTY_CLAUSE
    assert run.model is None

    mid = run.boundary_states[2]         # after the propagate-then-conflict round
    assert [e.literal for e in mid.trail] == [PA, QB]
    assert mid.trail[0].is_decision and mid.trail[0].level == 1
    assert mid.trail[1].reason == c2
    assert mid.conflict == c3


def test_lpo_refutation_simulation_trace():
    p = parse_problem(LPO_TEXT)
    run = run_scl_sup(p)
    c1, c2, c3, c4, c5 = p.clauses.clauses()
    c6 = Clause([PA.complement(), QA])
    c7 = Clause([PA.complement(), PA.complement()])

    assert run.outcome == "unsatisfiable"
    assert [s.kind for s in run.seqs] == [
        "decide", "pass", "clash", "learn_negative", "refute",
    ]
    assert annotations_of(run) == [
        (0, EMPTY_CLAUSE), (0, c1), (0, c2), (1, c3), (2, c1), (4, EMPTY_CLAUSE),
    ]
    # the two copies of the duplicated top literal get resolved one per step,
    # which is why the pair index jumps by two at the end
    assert run.annotations[4].index == 2 and run.annotations[5].index == 4
    assert run.annotations[2].gamma.proper_entries() == {}
    assert run.annotations[3].gamma.proper_entries() == {c3: c6}
    assert run.learned == (c7, EMPTY_CLAUSE)
    assert run.final_state.u == (c7,)

    after_pass = run.boundary_states[2]
    assert [e.literal for e in after_pass.trail] == [PA, PB.complement()]
    assert after_pass.trail[1].is_decision and after_pass.trail[1].level == 2

    after_clash = run.boundary_states[3]
    assert [e.literal for e in after_clash.trail] == [PA, PB.complement(), QA]
    assert after_clash.trail[2].reason == c6
    assert after_clash.conflict == c5


def test_third_example_refutation_simulation_trace():
    p = parse_problem(THIRD_TEXT)
    run = run_scl_sup(p)
    c1, c2, c3, c4 = p.clauses.clauses()
    e2 = Clause([PA.complement(), PB])
    not_pa = Clause([PA.complement()])

    assert run.outcome == "unsatisfiable"
    assert [s.kind for s in run.seqs] == [
        "decide", "pass", "clash", "learn_propagate", "learn_negative", "refute",
    ]
    assert annotations_of(run) == [
        (0, EMPTY_CLAUSE), (0, c1), (0, c2), (0, c3), (1, e2), (2, c1),
        (3, EMPTY_CLAUSE),
    ]
    assert run.learned == (e2, not_pa, EMPTY_CLAUSE)

    relearned = run.boundary_states[4]   # after learning and re-propagating
    assert [e.literal for e in relearned.trail] == [PA, PB]
    assert relearned.trail[1].reason == e2     # justification is the learned clause
    assert relearned.conflict == c2
    assert relearned.u == (e2,)
    assert relearned.k == 1
    # the learned clause maps to itself, so the factored-image map stays empty
    assert run.annotations[4].gamma.proper_entries() == {}


def test_third_example_satisfiable_variant_trace():
    p = parse_problem(SAT_TEXT)
    run = run_scl_sup(p)
    c1, c3, c4 = p.clauses.clauses()
    e2 = Clause([PA.complement(), PB])

    assert run.outcome == "satisfiable"
    assert [s.kind for s in run.seqs] == [
        "decide", "clash", "learn_decide", "decide", "pass",
    ]
    assert annotations_of(run) == [
        (0, EMPTY_CLAUSE), (0, c1), (0, c3), (1, e2), (1, c3), (1, c4),
    ]
    assert run.learned == (e2,)
    assert run.model == frozenset({PA.atom, PB.atom, QA.atom})
    final = run.final_state
    assert [e.literal for e in final.trail] == [PA, PB, QA]
    assert [e.is_decision for e in final.trail] == [True, True, True]
    assert final.k == 3
    assert final.conflict is None


def test_contradictory_units_refute_in_two_sequences():
    p = parse_problem("order: kbo\nprec: a < P\nclause: P(a)\nclause: -P(a)\n")
    run = run_scl_sup(p)
    assert run.outcome == "unsatisfiable"
    assert [s.kind for s in run.seqs] == ["clash", "refute"]
    assert run.learned == (EMPTY_CLAUSE,)
    assert run.final_state.u == ()       # refutation is reached without backtracking
    assert annotations_of(run)[-1] == (1, EMPTY_CLAUSE)


def test_attention_skips_satisfied_clauses():
    p = parse_problem("order: kbo\nprec: a < P < Q\nclause: P(a)\nclause: P(a) | Q(a)\n")
    run = run_scl_sup(p)
    assert run.outcome == "satisfiable"
    assert [s.kind for s in run.seqs] == ["decide", "pass"]
    assert run.model == frozenset({PA.atom})


def test_filler_decisions_cover_a_negative_maximum():
    p = parse_problem("order: kbo\nprec: a < P\nclause: -P(a)\n")
    run = run_scl_sup(p)
    assert run.outcome == "satisfiable"
    assert [s.kind for s in run.seqs] == ["pass"]
    final = run.final_state
    assert [e.literal for e in final.trail] == [PA.complement()]
    assert final.trail[0].is_decision
    assert run.model == frozenset()


def test_next_attention_walks_the_image_order():
    p = parse_problem(KBO_TEXT)
    po = ProblemOrder(p)
    c1, c2, c3 = p.clauses.clauses()
    run = run_scl_sup(p)
    s0 = run.boundary_states[0]
    gamma = run.annotations[0].gamma
    assert next_attention(po, s0, Annotation(0, EMPTY_CLAUSE, gamma)) == c1
    assert next_attention(po, s0, Annotation(0, c1, gamma)) == c2
    assert next_attention(po, s0, Annotation(0, c3, gamma)) is None


# ---------------------------------------------------------------------------
# Invariant checking on honest and tampered states
# ---------------------------------------------------------------------------

INVARIANT_NAMES = [
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
]


def _verdicts(reports):
    return {r.name: r.ok for r in reports}


def _golden_boundary():
    """Golden run plus its paired saturation run, at the first conflict."""
    p = parse_problem(LPO_TEXT)
    po = ProblemOrder(p)
    sim = run_scl_sup(p, po)
    sup = run_sup_mo(p, po)
    b = 3                                 # boundary after the clash sequence
    ann = sim.annotations[b]
    state = sim.boundary_states[b]
    snapshot = sup.snapshots[ann.index]
    return p, po, state, ann, snapshot


def test_all_invariants_hold_on_the_golden_boundary():
    p, po, state, ann, snapshot = _golden_boundary()
    reports = check_invariants(po, state, ann, snapshot)
    assert [r.name for r in reports] == INVARIANT_NAMES
    assert all(r.ok for r in reports), [r for r in reports if not r.ok]


def test_every_boundary_of_every_golden_run_checks_out():
    for text in (KBO_TEXT, LPO_TEXT, THIRD_TEXT):
        p = parse_problem(text)
        po = ProblemOrder(p)
        sim = run_scl_sup(p, po)
        sup = run_sup_mo(p, po)
        for b, ann in enumerate(sim.annotations):
            reports = check_invariants(po, sim.boundary_states[b], ann,
                                        sup.snapshots[ann.index])
            assert all(r.ok for r in reports), (text, b, [r for r in reports if not r.ok])


def test_reversed_trail_is_caught():
    p, po, state, ann, snapshot = _golden_boundary()
    bad = dataclasses.replace(state, trail=tuple(reversed(state.trail)))
    v = _verdicts(check_invariants(po, bad, ann, snapshot))
    assert not v["trail-ascends"]


def test_missing_propagation_is_caught():
    p, po, state, ann, snapshot = _golden_boundary()
    bad = dataclasses.replace(state, trail=state.trail[:-1])
    v = _verdicts(check_invariants(po, bad, ann, snapshot))
    assert not v["positives-match-production"]
    assert not v["conflict-top-propagation"]


def test_missing_filler_decision_is_caught():
    p, po, state, ann, snapshot = _golden_boundary()
    bad = dataclasses.replace(state, trail=(state.trail[0],) + state.trail[2:])
    v = _verdicts(check_invariants(po, bad, ann, snapshot))
    assert not v["negatives-cover-gap"]


def test_wrong_conflict_clause_is_caught():
    p, po, state, ann, snapshot = _golden_boundary()
    c4 = p.clauses.by_id(3)
    bad = dataclasses.replace(state, conflict=c4)
    v = _verdicts(check_invariants(po, bad, ann, snapshot))
    assert not v["conflict-is-minimal-false"]


def test_foreign_learned_clause_is_caught():
    p, po, state, ann, snapshot = _golden_boundary()
    bad = dataclasses.replace(state, u=(Clause([PB.complement()]),))
    v = _verdicts(check_invariants(po, bad, ann, snapshot))
    assert not v["membership"]


def test_stale_pair_index_is_caught():
    p = parse_problem(LPO_TEXT)
    po = ProblemOrder(p)
    sim = run_scl_sup(p, po)
    sup = run_sup_mo(p, po)
    ann = sim.annotations[3]
    state = sim.boundary_states[3]
    # pairing with the *initial* saturation state instead of the advanced one
    v = _verdicts(check_invariants(po, state, ann, sup.snapshots[0]))
    assert not v["factored-map-shape"]


def test_out_of_scope_atom_is_caught():
    p, po, state, ann, snapshot = _golden_boundary()
    rogue = Clause([Literal(Atom("Zz"), False)])
    bad = dataclasses.replace(state, u=(rogue,))
    v = _verdicts(check_invariants(po, bad, ann, snapshot))
    assert not v["atoms-in-scope"]


def test_progress_check():
    p = parse_problem(KBO_TEXT)
    po = ProblemOrder(p)
    c1, c2, _ = p.clauses.clauses()
    g = GammaMap()
    assert check_progress(po, Annotation(0, c1, g), Annotation(1, c2, g)) is None
    assert check_progress(po, Annotation(0, c1, g), Annotation(0, c2, g)) is None
    backwards = check_progress(po, Annotation(1, c2, g), Annotation(1, c1, g))
    assert backwards is not None and "attention" in backwards
    regressed = check_progress(po, Annotation(2, c1, g), Annotation(1, c2, g))
    assert regressed is not None
    changed = check_progress(po, Annotation(1, c1, g), Annotation(1, c2, g.with_entry(c1, Clause([PA]))))
    assert changed is not None and "map" in changed


# ---------------------------------------------------------------------------
# Full lockstep verification
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("text", [KBO_TEXT, LPO_TEXT, THIRD_TEXT])
def test_lockstep_verifier_passes_the_golden_refutations(text):
    result = lockstep_verify(parse_problem(text))
    assert result.ok, result.failures()
    assert result.sup.outcome == "unsatisfiable"
    assert result.sim.outcome == "unsatisfiable"
    assert result.regularity_failures == []
    assert result.progress_failures == []
    assert all(b.ok for b in result.boundaries)


def test_lockstep_verifier_passes_the_satisfiable_variant():
    result = lockstep_verify(parse_problem(SAT_TEXT))
    assert result.ok, result.failures()
    assert result.sup.outcome == "satisfiable"
    assert result.sim.model == result.sup.model


def test_verifier_checks_learned_clauses_against_derived_ones():
    result = lockstep_verify(parse_problem(LPO_TEXT))
    derived = set(result.sup.snapshots[-1].clauses)
    po = result.order
    for learned in result.sim.learned:
        assert sfac(learned, po) in {sfac(c, po) for c in derived}


_atoms = [Atom("P"), Atom("Q"), Atom("R")]
_lits = st.builds(Literal, st.sampled_from(_atoms), st.booleans())
_problems = st.lists(
    st.lists(_lits, min_size=1, max_size=4).map(Clause),
    min_size=1, max_size=6,
)


@settings(max_examples=150, deadline=None)
@given(_problems)
def test_random_problems_verify_cleanly(cls):
    occurring = {l.atom.name for c in cls for l in c.literals}
    kept = tuple(a for a in _atoms if a.name in occurring)
    p = Problem(
        clauses=ClauseSet(cls),
        ordering=OrderingConfig(kind="listed", listed_atoms=kept),
        symbol_arities={a.name: 0 for a in kept},
    )
    result = lockstep_verify(p)
    assert result.ok, result.failures()
    assert result.sim.outcome == result.sup.outcome
