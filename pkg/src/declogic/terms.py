"""Decorated terms.

A term denotes a function between objects, decorated with how much of
each effect it may use.  Decorations have two axes: the state axis
(0 pure, 1 may read, 2 may write) and the exception axis (0 pure,
1 may raise, 2 may also handle).  Composite terms take the join of
their children's decorations, so a decoration is an upper bound on
observable behaviour, never an exact measure.

Constructors never validate: ill-formed terms (mismatched composition,
pairs whose halves disagree on their source) must be constructible so
that `typecheck` can report the problems.  Every node caches `source`,
`target` and `decoration` eagerly at construction, reading only its
children's cached values, so building deep terms needs no recursion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .types import EMPTY_T, UNIT_T, ObjType, Prod, Sum


@dataclass(frozen=True)
class Decoration:
    """Effect upper bound: `state` and `exc` each range over 0, 1, 2."""

    state: int
    exc: int

    def join(self, other: "Decoration") -> "Decoration":
        return Decoration(max(self.state, other.state), max(self.exc, other.exc))

    def leq(self, other: "Decoration") -> bool:
        return self.state <= other.state and self.exc <= other.exc

    def __str__(self) -> str:
        return f"({self.state},{self.exc})"


PURE = Decoration(0, 0)


@dataclass(frozen=True)
class OpSymbol:
    """A declared operation: name, arity as source/target types, decoration."""

    name: str
    source: ObjType
    target: ObjType
    decoration: Decoration


class DecoratedTerm:
    """Base class for term nodes.

    Subclasses are frozen dataclasses; `source`, `target` and
    `decoration` are cached attributes, not fields, so structural
    equality and hashing ignore them.
    """

    source: ObjType
    target: ObjType
    decoration: Decoration

    def _cache(self, source: ObjType, target: ObjType, decoration: Decoration) -> None:
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "decoration", decoration)


@dataclass(frozen=True)
class Id(DecoratedTerm):
    at: ObjType

    def __post_init__(self) -> None:
        self._cache(self.at, self.at, PURE)


@dataclass(frozen=True)
class Comp(DecoratedTerm):
    """Composition `outer after inner`: runs `inner` first."""

    outer: DecoratedTerm
    inner: DecoratedTerm

    def __post_init__(self) -> None:
        self._cache(
            self.inner.source,
            self.outer.target,
            self.outer.decoration.join(self.inner.decoration),
        )


@dataclass(frozen=True)
class Op(DecoratedTerm):
    symbol: OpSymbol

    def __post_init__(self) -> None:
        self._cache(self.symbol.source, self.symbol.target, self.symbol.decoration)


@dataclass(frozen=True)
class Proj1(DecoratedTerm):
    left: ObjType
    right: ObjType

    def __post_init__(self) -> None:
        self._cache(Prod(self.left, self.right), self.left, PURE)


@dataclass(frozen=True)
class Proj2(DecoratedTerm):
    left: ObjType
    right: ObjType

    def __post_init__(self) -> None:
        self._cache(Prod(self.left, self.right), self.right, PURE)


@dataclass(frozen=True)
class Inj1(DecoratedTerm):
    left: ObjType
    right: ObjType

    def __post_init__(self) -> None:
        self._cache(self.left, Sum(self.left, self.right), PURE)


@dataclass(frozen=True)
class Inj2(DecoratedTerm):
    left: ObjType
    right: ObjType

    def __post_init__(self) -> None:
        self._cache(self.right, Sum(self.left, self.right), PURE)


@dataclass(frozen=True)
class PairSeq(DecoratedTerm):
    """Sequential pairing: run `first`, then `second`, pair the results.

    Both halves read from the same original input value; `second` sees
    the state left by `first`.  If `first` raises, `second` never runs.
    """

    first: DecoratedTerm
    second: DecoratedTerm

    def __post_init__(self) -> None:
        self._cache(
            self.first.source,
            Prod(self.first.target, self.second.target),
            self.first.decoration.join(self.second.decoration),
        )


@dataclass(frozen=True)
class CaseSeq(DecoratedTerm):
    """Sequential case split on a sum input.

    On a left input only `on_left` runs.  On a right input `on_right`
    runs first; if it produces an exceptional outcome, `on_left` is
    applied to that outcome (so a left branch that handles exceptions
    wraps up whatever the right branch raised).
    """

    on_left: DecoratedTerm
    on_right: DecoratedTerm

    def __post_init__(self) -> None:
        self._cache(
            Sum(self.on_left.source, self.on_right.source),
            self.on_left.target,
            self.on_left.decoration.join(self.on_right.decoration),
        )


@dataclass(frozen=True)
class Bang(DecoratedTerm):
    """The unique pure map into the unit type."""

    at: ObjType

    def __post_init__(self) -> None:
        self._cache(self.at, UNIT_T, PURE)


@dataclass(frozen=True)
class Absurd(DecoratedTerm):
    """The unique pure map out of the empty type."""

    at: ObjType

    def __post_init__(self) -> None:
        self._cache(EMPTY_T, self.at, PURE)


@dataclass(frozen=True)
class Const(DecoratedTerm):
    """A pure point of `at`, as a map out of the unit type."""

    value: object
    at: ObjType

    def __post_init__(self) -> None:
        self._cache(UNIT_T, self.at, PURE)


class Mode(enum.Enum):
    WEAK = "weak"
    STRONG = "strong"


@dataclass(frozen=True)
class Equation:
    mode: Mode
    lhs: DecoratedTerm
    rhs: DecoratedTerm


def infer_decoration(term: DecoratedTerm) -> Decoration:
    """Upper bound on the effects `term` may use."""
    return term.decoration


# ---------------------------------------------------------------------------
# Typechecking


@dataclass(frozen=True)
class TypeIssue:
    kind: str
    path: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        where = ".".join(self.path) if self.path else "<root>"
        return f"{self.kind} at {where}: {self.detail}"


@dataclass(frozen=True)
class TypedReport:
    ok: bool
    issues: tuple[TypeIssue, ...]
    source: ObjType
    target: ObjType
    decoration: Decoration

    def describe(self) -> str:
        from .syntax import print_type

        head = f"{print_type(self.source)} -> {print_type(self.target)} @ {self.decoration}"
        if self.ok:
            return f"ok: {head}"
        lines = [f"ill-typed: {head}"] + [f"  {issue}" for issue in self.issues]
        return "\n".join(lines)


def typecheck(term: DecoratedTerm, signature: dict[str, OpSymbol] | None = None) -> TypedReport:
    """Check local well-formedness of every node.

    With a `signature`, operation symbols must match their declarations
    exactly.  Iterative so deep terms never hit the recursion limit.
    """
    from .syntax import print_type

    issues: list[TypeIssue] = []
    stack: list[tuple[DecoratedTerm, tuple[str, ...]]] = [(term, ())]
    while stack:
        node, path = stack.pop()
        if isinstance(node, Comp):
            if node.inner.target != node.outer.source:
                issues.append(TypeIssue(
                    "source-target-mismatch", path,
                    f"inner produces {print_type(node.inner.target)} "
                    f"but outer expects {print_type(node.outer.source)}"))
            stack.append((node.outer, path + ("outer",)))
            stack.append((node.inner, path + ("inner",)))
        elif isinstance(node, PairSeq):
            if node.first.source != node.second.source:
                issues.append(TypeIssue(
                    "pair-source-mismatch", path,
                    f"first reads {print_type(node.first.source)} "
                    f"but second reads {print_type(node.second.source)}"))
            stack.append((node.first, path + ("first",)))
            stack.append((node.second, path + ("second",)))
        elif isinstance(node, CaseSeq):
            if node.on_left.target != node.on_right.target:
                issues.append(TypeIssue(
                    "case-target-mismatch", path,
                    f"left branch yields {print_type(node.on_left.target)} "
                    f"but right branch yields {print_type(node.on_right.target)}"))
            stack.append((node.on_left, path + ("left",)))
            stack.append((node.on_right, path + ("right",)))
        elif isinstance(node, Op) and signature is not None:
            declared = signature.get(node.symbol.name)
            if declared is None:
                issues.append(TypeIssue(
                    "unknown-symbol", path,
                    f"operation {node.symbol.name!r} is not declared"))
            elif declared != node.symbol:
                issues.append(TypeIssue(
                    "symbol-mismatch", path,
                    f"operation {node.symbol.name!r} disagrees with its declaration"))
    issues.sort(key=lambda issue: issue.path)
    return TypedReport(
        ok=not issues,
        issues=tuple(issues),
        source=term.source,
        target=term.target,
        decoration=term.decoration,
    )


# ---------------------------------------------------------------------------
# Derived combinators


def copy_term(ty: ObjType) -> DecoratedTerm:
    """Diagonal at `ty`."""
    return PairSeq(Id(ty), Id(ty))


def swap_term(left: ObjType, right: ObjType) -> DecoratedTerm:
    """Pure swap: left * right -> right * left."""
    return PairSeq(Proj2(left, right), Proj1(left, right))


def seq_then(first: DecoratedTerm, second: DecoratedTerm) -> DecoratedTerm:
    """Run `first` for its effects, then `second`, keeping only `second`."""
    return Comp(Proj2(first.target, second.target), PairSeq(first, second))


def shield(term: DecoratedTerm) -> DecoratedTerm:
    """Wrap `term` so exceptional inputs pass through without running it.

    Ordinary behaviour (including anything `term` raises) is unchanged.
    Exceptional inputs bypass the whole wrapper because the pairing
    short-circuits them, so upstream exceptions can never reach a
    handler inside `term`.
    """
    return Comp(
        Proj1(term.target, UNIT_T),
        PairSeq(term, Bang(term.source)),
    )


# ---------------------------------------------------------------------------
# Canonical form: composition is flattened and identities dropped, so two
# terms equal modulo associativity and unit laws get the same key.


def type_key(ty: ObjType) -> tuple:
    from .types import Base, Empty, Unit

    if isinstance(ty, Unit):
        return ("unit",)
    if isinstance(ty, Empty):
        return ("empty",)
    if isinstance(ty, Base):
        return ("base", ty.name)
    if isinstance(ty, Prod):
        return ("prod", type_key(ty.left), type_key(ty.right))
    if isinstance(ty, Sum):
        return ("sum", type_key(ty.left), type_key(ty.right))
    raise TypeError(f"not an object type: {ty!r}")


def chain_factors(term: DecoratedTerm) -> list[DecoratedTerm]:
    """Composition factors of `term`, innermost first, identities dropped.

    `term` is equivalent to the composite of the returned factors in
    order (empty list means the identity at `term.source`).
    """
    factors: list[DecoratedTerm] = []
    stack = [term]
    while stack:
        node = stack.pop()
        if isinstance(node, Comp):
            stack.append(node.outer)
            stack.append(node.inner)
        elif not isinstance(node, Id):
            factors.append(node)
    return factors


def _factor_key(node: DecoratedTerm) -> tuple:
    if isinstance(node, Op):
        return ("op", node.symbol.name)
    if isinstance(node, Proj1):
        return ("proj1", type_key(node.left), type_key(node.right))
    if isinstance(node, Proj2):
        return ("proj2", type_key(node.left), type_key(node.right))
    if isinstance(node, Inj1):
        return ("inj1", type_key(node.left), type_key(node.right))
    if isinstance(node, Inj2):
        return ("inj2", type_key(node.left), type_key(node.right))
    if isinstance(node, PairSeq):
        return ("pair", canonical_key(node.first), canonical_key(node.second))
    if isinstance(node, CaseSeq):
        return ("case", canonical_key(node.on_left), canonical_key(node.on_right))
    if isinstance(node, Bang):
        return ("bang", type_key(node.at))
    if isinstance(node, Absurd):
        return ("absurd", type_key(node.at))
    if isinstance(node, Const):
        return ("const", _value_key(node.value), type_key(node.at))
    raise TypeError(f"not a term: {node!r}")


def _value_key(value: object) -> object:
    from .model import UNIT

    if value is UNIT:
        return ("unit-value",)
    if isinstance(value, tuple):
        return ("tuple",) + tuple(_value_key(v) for v in value)
    return ("atom", value)


def canonical_key(term: DecoratedTerm) -> tuple:
    """Hashable key identifying `term` up to associativity and identity."""
    factors = chain_factors(term)
    if not factors:
        return ("id", type_key(term.source))
    keys = [_factor_key(f) for f in factors]
    if len(keys) == 1:
        return keys[0]
    return ("chain", tuple(keys))


def compose_chain(factors: list[DecoratedTerm], source: ObjType) -> DecoratedTerm:
    """Rebuild a term from innermost-first factors (inverse of chaining)."""
    if not factors:
        return Id(source)
    term = factors[0]
    for factor in factors[1:]:
        term = Comp(factor, term)
    return term
