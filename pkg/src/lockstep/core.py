"""Ground first-order syntax (no equality), problem files, and evaluation.

Everything in this package works on *ground* inputs: terms contain no
variables, clauses are finite multisets of ground literals, and a problem
carries an explicit term-ordering declaration next to its clauses.

The problem file format is line oriented::

    # comment (also allowed after content)
    order: kbo | lpo | listed
    prec: a < b < P < Q          # total precedence, kbo/lpo
    weights: default=1 P=2       # kbo only, every weight >= 1
    atoms: P(a) < P(b) < Q(a)    # listed only, covers every occurring atom
    clause: P(a) | -Q(b)         # '-' or '~' negates a literal

An empty clause in the input is rejected: refutations are something a run
derives, not something a problem states.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
IDENT_CHARS = IDENT_START | set("0123456789")


class GroundTerm:
    """A ground term: a symbol name applied to zero or more ground terms.

    Atoms reuse this representation with the predicate as root symbol, so a
    single structural comparison covers both terms and atoms.
    """

    __slots__ = ("name", "args", "text", "_hash")

    def __init__(self, name: str, args: Tuple["GroundTerm", ...] = ()):
        self.name = name
        self.args = args
        if args:
            self.text = name + "(" + ",".join(a.text for a in args) + ")"
        else:
            self.text = name
        self._hash = hash(self.text)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundTerm) and self.text == other.text

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return self.text

    def symbols(self) -> Iterator[Tuple[str, int]]:
        """Yield every (symbol, arity) occurrence in this term, root first."""
        yield (self.name, len(self.args))
        for a in self.args:
            yield from a.symbols()


# An atom is a ground term whose root symbol is the predicate.
Atom = GroundTerm


class Literal:
    """A ground literal: an atom with a sign."""

    __slots__ = ("atom", "positive", "text", "_hash")

    def __init__(self, atom: Atom, positive: bool = True):
        self.atom = atom
        self.positive = positive
        self.text = atom.text if positive else "-" + atom.text
        self._hash = hash(self.text)

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Literal) and self.text == other.text

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return self.text


class Clause:
    """A finite multiset of ground literals.

    Literals are stored sorted by their rendered text, which makes equality
    and hashing multiset equality regardless of input order. The empty
    clause prints as ⊥ and is only ever produced by inference, never parsed.
    """

    __slots__ = ("literals", "text", "_hash")

    def __init__(self, literals: Iterable[Literal] = ()):
        lits = tuple(sorted(literals, key=lambda l: l.text))
        self.literals = lits
        self.text = " | ".join(l.text for l in lits) if lits else "⊥"
        self._hash = hash(self.text)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Clause) and self.text == other.text

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return self.text

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def count(self, literal: Literal) -> int:
        return sum(1 for l in self.literals if l == literal)

    def contains(self, literal: Literal) -> bool:
        return any(l == literal for l in self.literals)

    def without_one(self, literal: Literal) -> "Clause":
        """Return a copy with one occurrence of ``literal`` removed."""
        out: List[Literal] = []
        removed = False
        for l in self.literals:
            if not removed and l == literal:
                removed = True
                continue
            out.append(l)
        if not removed:
            raise ValueError(f"literal {literal} not in clause {self}")
        return Clause(out)

    def extended(self, literals: Iterable[Literal]) -> "Clause":
        return Clause(self.literals + tuple(literals))

    def atoms(self) -> Set[Atom]:
        return {l.atom for l in self.literals}


EMPTY_CLAUSE = Clause(())


def is_tautology(clause: Clause) -> bool:
    """True when the clause contains an atom with both signs."""
    pos = {l.atom for l in clause.literals if l.positive}
    neg = {l.atom for l in clause.literals if not l.positive}
    return bool(pos & neg)


class ClauseSet:
    """Insertion-ordered clause collection with stable numeric identifiers.

    Duplicate clause content is merged silently (same id comes back);
    identifiers are never reused.
    """

    def __init__(self, clauses: Iterable[Clause] = ()):
        self._ids: Dict[Clause, int] = {}
        self._clauses: List[Clause] = []
        for c in clauses:
            self.add(c)

    def add(self, clause: Clause) -> int:
        existing = self._ids.get(clause)
        if existing is not None:
            return existing
        cid = len(self._clauses)
        self._ids[clause] = cid
        self._clauses.append(clause)
        return cid

    def id_of(self, clause: Clause) -> int:
        return self._ids[clause]

    def by_id(self, cid: int) -> Clause:
        return self._clauses[cid]

    def __contains__(self, clause: Clause) -> bool:
        return clause in self._ids

    def __len__(self) -> int:
        return len(self._clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self._clauses)

    def clauses(self) -> Tuple[Clause, ...]:
        return tuple(self._clauses)


class ClauseStatus(Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "undefined"


def eval_herbrand(model: Set[Atom], clause: Clause) -> bool:
    """Herbrand evaluation: a positive literal holds when its atom is in the
    model, a negative literal when its atom is absent. The empty clause is
    false in every model."""
    for l in clause.literals:
        if l.positive:
            if l.atom in model:
                return True
        elif l.atom not in model:
            return True
    return False


def status_under_assignment(assignment: Mapping[Atom, bool], clause: Clause) -> ClauseStatus:
    """Three-valued clause status under a partial assignment.

    TRUE if some literal is satisfied, FALSE if every literal is falsified,
    UNDEFINED otherwise (some literal's atom unassigned, none satisfied).
    """
    undefined = False
    for l in clause.literals:
        val = assignment.get(l.atom)
        if val is None:
            undefined = True
        elif val == l.positive:
            return ClauseStatus.TRUE
    return ClauseStatus.UNDEFINED if undefined else ClauseStatus.FALSE


def atoms_of(clauses: Iterable[Clause]) -> Set[Atom]:
    out: Set[Atom] = set()
    for c in clauses:
        for l in c.literals:
            out.add(l.atom)
    return out


# ---------------------------------------------------------------------------
# Ordering declaration (pure data; semantics live in lockstep.ordering)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderingConfig:
    """Declared term ordering of a problem.

    kind 'kbo': precedence + weights (default weight applies to unlisted
    symbols). kind 'lpo': precedence only. kind 'listed': an explicit total
    order on the occurring atoms, no term order at all.
    precedence is ascending (smallest first), as written in the file.
    """

    kind: str
    precedence: Tuple[str, ...] = ()
    weights: Mapping[str, int] = field(default_factory=dict)
    default_weight: int = 1
    listed_atoms: Tuple[Atom, ...] = ()

    ORDER_KINDS = ("kbo", "lpo", "listed")


@dataclass(frozen=True)
class Problem:
    """A parsed problem: clauses plus the ordering declaration.

    symbol_arities maps every occurring symbol (predicates, functions,
    constants alike) to its arity; the parser enforces consistency.
    """

    clauses: ClauseSet
    ordering: OrderingConfig
    symbol_arities: Mapping[str, int]
    meta: Mapping[str, object] = field(default_factory=dict)

    @property
    def atom_universe(self) -> Set[Atom]:
        return atoms_of(self.clauses)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class ParseError(Exception):
    """Problem file rejection with position and a stable error code."""

    def __init__(self, message: str, line: int, col: int = 1, code: str = "syntax"):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.code = code


class _TermScanner:
    """Recursive-descent scanner for ground terms inside one line."""

    def __init__(self, text: str, line: int, offset: int):
        self.text = text
        self.line = line
        self.offset = offset  # column of text[0] in the original line, 1-based
        self.pos = 0

    def error(self, message: str, code: str = "syntax") -> ParseError:
        return ParseError(message, self.line, self.offset + self.pos, code)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise self.error(f"expected '{ch}'")
        self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or self.text[self.pos] not in IDENT_START:
            raise self.error("expected identifier")
        while self.pos < len(self.text) and self.text[self.pos] in IDENT_CHARS:
            self.pos += 1
        return self.text[start:self.pos]

    def term(self) -> GroundTerm:
        name = self.ident()
        if self.peek() == "(":
            self.expect("(")
            args = [self.term()]
            while self.peek() == ",":
                self.expect(",")
                args.append(self.term())
            self.expect(")")
            return GroundTerm(name, tuple(args))
        return GroundTerm(name)


def _strip_comment(raw: str) -> str:
    cut = raw.find("#")
    return raw if cut < 0 else raw[:cut]


def _record_arities(term: GroundTerm, arities: Dict[str, int], line: int, col: int) -> None:
    for name, arity in term.symbols():
        seen = arities.get(name)
        if seen is None:
            arities[name] = arity
        elif seen != arity:
            raise ParseError(
                f"symbol '{name}' used with arities {seen} and {arity}",
                line, col, code="arity-mismatch",
            )


def parse_problem(text: str) -> Problem:
    """Parse a problem file. Raises ParseError on any rejection."""
    order_kind: Optional[str] = None
    order_line = 0
    prec: Optional[Tuple[str, ...]] = None
    weights: Optional[Dict[str, int]] = None
    default_weight = 1
    listed: Optional[List[Atom]] = None
    listed_line = 0
    clauses = ClauseSet()
    arities: Dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).strip()
        if not body:
            continue
        if ":" not in body:
            raise ParseError("expected 'directive: ...'", lineno, raw.find(body[0]) + 1)
        head, _, rest = body.partition(":")
        head = head.strip()
        rest_offset = raw.index(rest, raw.find(":") + 1) + 1 if rest else len(raw) + 1

        if head == "order":
            if order_kind is not None:
                raise ParseError("duplicate 'order:' directive", lineno, 1, code="duplicate-directive")
            order_kind = rest.strip()
            order_line = lineno
            if order_kind not in OrderingConfig.ORDER_KINDS:
                raise ParseError(
                    f"unknown ordering kind '{order_kind}'", lineno, rest_offset,
                    code="unknown-order-kind",
                )
        elif head == "prec":
            if prec is not None:
                raise ParseError("duplicate 'prec:' directive", lineno, 1, code="duplicate-directive")
            names = [p.strip() for p in rest.split("<")]
            if any(not n for n in names):
                raise ParseError("empty entry in precedence chain", lineno, rest_offset)
            for n in names:
                if n[0] not in IDENT_START or any(c not in IDENT_CHARS for c in n):
                    raise ParseError(f"bad symbol '{n}' in precedence", lineno, rest_offset)
            if len(set(names)) != len(names):
                raise ParseError("repeated symbol in precedence", lineno, rest_offset)
            prec = tuple(names)
        elif head == "weights":
            if weights is not None:
                raise ParseError("duplicate 'weights:' directive", lineno, 1, code="duplicate-directive")
            weights = {}
            for item in rest.split():
                name, eq, value = item.partition("=")
                if not eq or not value:
                    raise ParseError(f"expected sym=weight, got '{item}'", lineno, rest_offset)
                try:
                    w = int(value)
                except ValueError:
                    raise ParseError(f"weight '{value}' is not an integer", lineno, rest_offset) from None
                if w < 1:
                    raise ParseError(
                        f"weight {w} for '{name}' is below 1", lineno, rest_offset,
                        code="bad-weight",
                    )
                if name == "default":
                    default_weight = w
                else:
                    weights[name] = w
        elif head == "atoms":
            if listed is not None:
                raise ParseError("duplicate 'atoms:' directive", lineno, 1, code="duplicate-directive")
            listed = []
            listed_line = lineno
            for part in rest.split("<"):
                scanner = _TermScanner(part, lineno, rest_offset)
                atom = scanner.term()
                if not scanner.at_end():
                    raise scanner.error("trailing input after atom")
                _record_arities(atom, arities, lineno, rest_offset)
                listed.append(atom)
            if len(set(listed)) != len(listed):
                raise ParseError("repeated atom in 'atoms:' order", lineno, rest_offset)
        elif head == "clause":
            if not rest.strip():
                raise ParseError("empty clause in input", lineno, 1, code="empty-clause")
            lits: List[Literal] = []
            for part in rest.split("|"):
                scanner = _TermScanner(part, lineno, rest_offset)
                scanner.skip_ws()
                positive = True
                if scanner.peek() in "-~":
                    positive = False
                    scanner.pos += 1
                atom = scanner.term()
                if not scanner.at_end():
                    raise scanner.error("trailing input after literal")
                _record_arities(atom, arities, lineno, rest_offset)
                lits.append(Literal(atom, positive))
            clauses.add(Clause(lits))
        else:
            raise ParseError(f"unknown directive '{head}'", lineno, 1)

    if order_kind is None:
        raise ParseError("missing 'order:' directive", 1, 1, code="missing-order")

    universe = atoms_of(clauses)

    if order_kind in ("kbo", "lpo"):
        if prec is None:
            raise ParseError(f"'{order_kind}' needs a 'prec:' line", order_line, 1,
                             code="precedence-missing-symbol")
        declared = set(prec)
        missing = sorted(n for n in arities if n not in declared)
        if missing:
            raise ParseError(
                "precedence omits occurring symbol(s): " + ", ".join(missing),
                order_line, 1, code="precedence-missing-symbol",
            )
        if order_kind == "lpo" and weights is not None:
            raise ParseError("'weights:' is only meaningful for kbo", order_line, 1,
                             code="weights-non-kbo")
    else:
        if weights is not None:
            raise ParseError("'weights:' is only meaningful for kbo", order_line, 1,
                             code="weights-non-kbo")
        if prec is not None:
            raise ParseError("'prec:' is not used by the listed ordering", order_line, 1)
        if listed is None:
            raise ParseError("'listed' needs an 'atoms:' line", order_line, 1, code="atoms-missing")
        listed_set = set(listed)
        missing_atoms = sorted(a.text for a in universe if a not in listed_set)
        if missing_atoms:
            raise ParseError(
                "'atoms:' omits occurring atom(s): " + ", ".join(missing_atoms),
                listed_line, 1, code="atoms-missing",
            )
        extra = sorted(a.text for a in listed if a not in universe)
        if extra:
            raise ParseError(
                "'atoms:' lists non-occurring atom(s): " + ", ".join(extra),
                listed_line, 1, code="atoms-unknown",
            )

    config = OrderingConfig(
        kind=order_kind,
        precedence=prec or (),
        weights=weights or {},
        default_weight=default_weight,
        listed_atoms=tuple(listed or ()),
    )
    return Problem(clauses=clauses, ordering=config, symbol_arities=dict(arities))


def print_problem(problem: Problem) -> str:
    """Render a problem back to file syntax; parse(print(p)) reproduces p."""
    cfg = problem.ordering
    lines = [f"order: {cfg.kind}"]
    if cfg.kind in ("kbo", "lpo"):
        lines.append("prec: " + " < ".join(cfg.precedence))
    if cfg.kind == "kbo":
        parts = [f"default={cfg.default_weight}"]
        parts += [f"{name}={w}" for name, w in sorted(cfg.weights.items())]
        lines.append("weights: " + " ".join(parts))
    if cfg.kind == "listed":
        lines.append("atoms: " + " < ".join(a.text for a in cfg.listed_atoms))
    for clause in problem.clauses:
        lines.append("clause: " + " | ".join(l.text for l in clause.literals))
    return "\n".join(lines) + "\n"
