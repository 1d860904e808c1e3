"""Term, atom, literal and clause orderings.

Three ordering kinds are supported. KBO and LPO are the usual ground
simplification orderings driven by a total symbol precedence (KBO also by
weights); 'listed' skips terms entirely and totally orders the occurring
atoms by an explicit list. Atoms are compared as terms with the predicate as
root symbol. Literals compare by atom first, and on the same atom the
negative literal is the larger one. Clauses compare by the multiset
extension of the literal order.

For a total literal order the multiset extension boils down to comparing the
descending-sorted literal sequences lexicographically, with a strict prefix
counting as smaller. ``ProblemOrder`` precomputes integer ranks over a
problem's atom universe so the strategy loops never re-run the structural
comparison; it also materializes the trail bound as a fresh sentinel atom
that compares above every problem atom (precedence alone cannot express that
under KBO, where a light nullary symbol would sink below heavier atoms).
"""

from __future__ import annotations

from functools import cmp_to_key
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import (
    Atom,
    Clause,
    GroundTerm,
    Literal,
    OrderingConfig,
    Problem,
)

LESS = -1
EQUAL = 0
GREATER = 1


# ---------------------------------------------------------------------------
# Structural term comparison (kbo / lpo)
# ---------------------------------------------------------------------------


def _prec_table(config: OrderingConfig) -> Dict[str, int]:
    return {name: i for i, name in enumerate(config.precedence)}


def _sym_weight(name: str, config: OrderingConfig) -> int:
    return config.weights.get(name, config.default_weight)


def _term_weight(term: GroundTerm, config: OrderingConfig) -> int:
    total = _sym_weight(term.name, config)
    for a in term.args:
        total += _term_weight(a, config)
    return total


def _prec_of(name: str, prec: Dict[str, int]) -> int:
    try:
        return prec[name]
    except KeyError:
        raise ValueError(f"symbol '{name}' missing from precedence") from None


def _kbo_cmp(s: GroundTerm, t: GroundTerm, config: OrderingConfig, prec: Dict[str, int]) -> int:
    if s == t:
        return EQUAL
    ws = _term_weight(s, config)
    wt = _term_weight(t, config)
    if ws != wt:
        return LESS if ws < wt else GREATER
    if s.name != t.name:
        return LESS if _prec_of(s.name, prec) < _prec_of(t.name, prec) else GREATER
    for si, ti in zip(s.args, t.args):
        r = _kbo_cmp(si, ti, config, prec)
        if r != EQUAL:
            return r
    return EQUAL


def _lpo_gt(s: GroundTerm, t: GroundTerm, prec: Dict[str, int]) -> bool:
    if s == t:
        return False
    for si in s.args:
        if si == t or _lpo_gt(si, t, prec):
            return True
    ps = _prec_of(s.name, prec)
    pt = _prec_of(t.name, prec)
    if ps > pt:
        return all(_lpo_gt(s, tj, prec) for tj in t.args)
    if ps == pt:
        # same symbol, hence same arity: lexicographic on arguments
        for i, (si, ti) in enumerate(zip(s.args, t.args)):
            if si != ti:
                if not _lpo_gt(si, ti, prec):
                    return False
                return all(_lpo_gt(s, tj, prec) for tj in t.args[i + 1:])
        return False
    return False


def compare_terms(t1: GroundTerm, t2: GroundTerm, config: OrderingConfig) -> int:
    """Compare two ground terms under a kbo or lpo config (LESS/EQUAL/GREATER)."""
    if config.kind == "kbo":
        return _kbo_cmp(t1, t2, config, _prec_table(config))
    if config.kind == "lpo":
        prec = _prec_table(config)
        if t1 == t2:
            return EQUAL
        return GREATER if _lpo_gt(t1, t2, prec) else LESS
    raise ValueError("the 'listed' ordering defines no term comparison")


def compare_atoms(a1: Atom, a2: Atom, config: OrderingConfig) -> int:
    """Compare two atoms. kbo/lpo treat them as terms; listed uses positions."""
    if config.kind == "listed":
        if a1 == a2:
            return EQUAL
        try:
            i1 = config.listed_atoms.index(a1)
            i2 = config.listed_atoms.index(a2)
        except ValueError:
            missing = a1 if a1 not in config.listed_atoms else a2
            raise ValueError(f"atom {missing} not covered by the listed order") from None
        return LESS if i1 < i2 else GREATER
    return compare_terms(a1, a2, config)


def compare_literals(l1: Literal, l2: Literal, config: OrderingConfig) -> int:
    """Literal order: by atom, then positive below negative on the same atom."""
    r = compare_atoms(l1.atom, l2.atom, config)
    if r != EQUAL:
        return r
    if l1.positive == l2.positive:
        return EQUAL
    return LESS if l1.positive else GREATER


def _desc_literals(clause: Clause, config: OrderingConfig) -> List[Literal]:
    return sorted(clause.literals, key=cmp_to_key(lambda a, b: compare_literals(a, b, config)),
                  reverse=True)


def compare_clauses(c1: Clause, c2: Clause, config: OrderingConfig) -> int:
    """Multiset extension of the literal order.

    With a total literal order this is the lexicographic comparison of the
    descending literal sequences, a strict prefix being smaller. The empty
    clause is the minimum.
    """
    d1 = _desc_literals(c1, config)
    d2 = _desc_literals(c2, config)
    for l1, l2 in zip(d1, d2):
        r = compare_literals(l1, l2, config)
        if r != EQUAL:
            return r
    if len(d1) == len(d2):
        return EQUAL
    return LESS if len(d1) < len(d2) else GREATER


class GammaMap:
    """Partial clause-to-clause map with identity default.

    The simulation only ever stores a clause's factored normal form under the
    clause itself; resolve() falls back to the identity for everything else.
    Updates return a new map, the old one stays usable.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Optional[Dict[Clause, Clause]] = None):
        self._entries: Dict[Clause, Clause] = dict(entries or {})

    def resolve(self, clause: Clause) -> Clause:
        return self._entries.get(clause, clause)

    def with_entry(self, clause: Clause, image: Clause) -> "GammaMap":
        new = dict(self._entries)
        new[clause] = image
        return GammaMap(new)

    def proper_entries(self) -> Dict[Clause, Clause]:
        """Entries whose image differs from the key (the informative ones)."""
        return {c: img for c, img in self._entries.items() if img != c}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GammaMap) and self.proper_entries() == other.proper_entries()

    def __hash__(self) -> int:  # pragma: no cover - maps are not dict keys in practice
        return hash(frozenset(self.proper_entries().items()))

    def __repr__(self) -> str:
        inside = ", ".join(f"{c} -> {img}" for c, img in sorted(
            self.proper_entries().items(), key=lambda kv: kv[0].text))
        return "{" + inside + "}"


def compare_clauses_gamma(c1: Clause, c2: Clause, gamma: GammaMap, config: OrderingConfig) -> int:
    """Compare two clauses through their gamma images (may tie for distinct clauses)."""
    return compare_clauses(gamma.resolve(c1), gamma.resolve(c2), config)


def validate_ordering(problem: Problem) -> List[str]:
    """Check that the declared ordering is usable for this problem.

    Returns a list of human-readable issues; empty means the induced atom
    order is strict and total over the atom universe and all weights are
    positive. The parser already rejects most of these, but configs can be
    built programmatically too.
    """
    issues: List[str] = []
    cfg = problem.ordering
    universe = sorted(problem.atom_universe, key=lambda a: a.text)

    if cfg.kind not in OrderingConfig.ORDER_KINDS:
        return [f"unknown ordering kind '{cfg.kind}'"]

    if cfg.kind == "kbo":
        if cfg.default_weight < 1:
            issues.append(f"default weight {cfg.default_weight} is below 1")
        for name, w in sorted(cfg.weights.items()):
            if w < 1:
                issues.append(f"weight {w} for '{name}' is below 1")
    if cfg.kind in ("kbo", "lpo"):
        declared = set(cfg.precedence)
        if len(declared) != len(cfg.precedence):
            issues.append("precedence repeats a symbol")
        for name in sorted(problem.symbol_arities):
            if name not in declared:
                issues.append(f"precedence omits occurring symbol '{name}'")
    else:
        listed = set(cfg.listed_atoms)
        if len(listed) != len(cfg.listed_atoms):
            issues.append("listed order repeats an atom")
        for a in universe:
            if a not in listed:
                issues.append(f"listed order omits occurring atom {a}")
        for a in cfg.listed_atoms:
            if a not in set(universe):
                issues.append(f"listed order mentions non-occurring atom {a}")

    if issues:
        return issues

    try:
        ranked = sorted(universe, key=cmp_to_key(lambda a, b: compare_atoms(a, b, cfg)))
    except ValueError as exc:
        return [str(exc)]
    for left, right in zip(ranked, ranked[1:]):
        if compare_atoms(left, right, cfg) == EQUAL:
            issues.append(f"atoms {left} and {right} are not strictly ordered")
    return issues


# ---------------------------------------------------------------------------
# Rank-table engine over a concrete problem
# ---------------------------------------------------------------------------


def _fresh_beta_name(problem: Problem) -> str:
    name = "_beta"
    taken = set(problem.symbol_arities)
    while name in taken:
        name += "_"
    return name


class ProblemOrder:
    """Precomputed total order over one problem's atom universe plus the bound.

    Atom ranks are assigned by sorting the universe with the declared
    comparison; the bound atom gets the top rank. Literal rank doubles the
    atom rank and adds one for negation, so literal comparison is integer
    comparison. A clause key is its descending literal-rank tuple, making
    Python's tuple order exactly the multiset extension.
    """

    def __init__(self, problem: Problem):
        issues = validate_ordering(problem)
        if issues:
            raise ValueError("ordering not usable: " + "; ".join(issues))
        self.problem = problem
        self.config = problem.ordering
        if self.config.kind == "listed":
            ranked = list(self.config.listed_atoms)
        else:
            ranked = sorted(problem.atom_universe,
                            key=cmp_to_key(lambda a, b: compare_atoms(a, b, self.config)))
        self.atoms_ascending: Tuple[Atom, ...] = tuple(ranked)
        self._atom_rank: Dict[Atom, int] = {a: i for i, a in enumerate(ranked)}
        self.beta: Atom = Atom(_fresh_beta_name(problem))
        self._atom_rank[self.beta] = len(ranked)
        self._clause_key: Dict[Clause, Tuple[int, ...]] = {}

    # -- atoms ------------------------------------------------------------

    def atom_rank(self, atom: Atom) -> int:
        try:
            return self._atom_rank[atom]
        except KeyError:
            raise ValueError(f"atom {atom} is outside this problem's universe") from None

    def atom_lt(self, a: Atom, b: Atom) -> bool:
        return self.atom_rank(a) < self.atom_rank(b)

    def below_beta(self, atom: Atom) -> bool:
        return self.atom_rank(atom) < self._atom_rank[self.beta]

    # -- literals ----------------------------------------------------------

    def literal_rank(self, literal: Literal) -> int:
        return 2 * self.atom_rank(literal.atom) + (0 if literal.positive else 1)

    def literal_lt(self, l1: Literal, l2: Literal) -> bool:
        return self.literal_rank(l1) < self.literal_rank(l2)

    # -- clauses -----------------------------------------------------------

    def clause_key(self, clause: Clause) -> Tuple[int, ...]:
        key = self._clause_key.get(clause)
        if key is None:
            key = tuple(sorted((self.literal_rank(l) for l in clause.literals), reverse=True))
            self._clause_key[clause] = key
        return key

    def clause_cmp(self, c1: Clause, c2: Clause) -> int:
        k1 = self.clause_key(c1)
        k2 = self.clause_key(c2)
        if k1 == k2:
            return EQUAL
        return LESS if k1 < k2 else GREATER

    def clause_lt(self, c1: Clause, c2: Clause) -> bool:
        return self.clause_key(c1) < self.clause_key(c2)

    def gamma_key(self, clause: Clause, gamma: GammaMap) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Sort key for the gamma-image order, tie-broken by the plain order."""
        return (self.clause_key(gamma.resolve(clause)), self.clause_key(clause))

    def gamma_lt(self, c1: Clause, c2: Clause, gamma: GammaMap) -> bool:
        """Strict gamma-image comparison (no tie-break): image strictly smaller."""
        return self.clause_key(gamma.resolve(c1)) < self.clause_key(gamma.resolve(c2))

    def sorted_clauses(self, clauses: Iterable[Clause]) -> List[Clause]:
        return sorted(clauses, key=self.clause_key)

    def max_literal(self, clause: Clause) -> Literal:
        if clause.is_empty:
            raise ValueError("the empty clause has no maximal literal")
        return max(clause.literals, key=self.literal_rank)

    def max_multiplicity(self, clause: Clause) -> int:
        """How often the maximal literal occurs in the clause."""
        top = self.literal_rank(self.max_literal(clause))
        return sum(1 for l in clause.literals if self.literal_rank(l) == top)

    def is_maximal_in(self, literal: Literal, clause: Clause) -> bool:
        r = self.literal_rank(literal)
        return all(self.literal_rank(l) <= r for l in clause.literals)

    def is_strictly_maximal_in(self, literal: Literal, clause: Clause) -> bool:
        """No *other* occurrence in the clause is >= the literal."""
        r = self.literal_rank(literal)
        seen_self = False
        for l in clause.literals:
            lr = self.literal_rank(l)
            if lr > r:
                return False
            if lr == r:
                if seen_self:
                    return False
                seen_self = True
        return seen_self

    def format_clause(self, clause: Clause) -> str:
        """Canonical display: literals descending under the active order."""
        if clause.is_empty:
            return "⊥"
        lits = sorted(clause.literals, key=self.literal_rank, reverse=True)
        return " | ".join(l.text for l in lits)
