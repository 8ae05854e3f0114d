"""Effect theories: state operations, their exception duals, and merges.

A theory bundles a signature of decorated operation symbols, named
axioms, and observational rules.  The states theory declares a lookup
and an update per location with two weak axiom families; the
exceptions theory is produced from it by a mechanical dualizer; the
combined theory is their disjoint union.  Construction recipes carried
alongside the signature let a finite model instantiate every symbol
without hand-written tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import (
    Absurd,
    Bang,
    CaseSeq,
    Comp,
    Const,
    DecoratedTerm,
    Decoration,
    Equation,
    Id,
    Inj1,
    Inj2,
    Mode,
    Op,
    OpSymbol,
    PairSeq,
    Proj1,
    Proj2,
    copy_term,
    seq_then,
    swap_term,
)
from .types import EMPTY_T, UNIT_T, Base, ObjType, dual_type


class TheoryError(Exception):
    pass


class DuplicateLocation(TheoryError):
    pass


class WrongFlavor(TheoryError):
    pass


class NameClash(TheoryError):
    pass


@dataclass(frozen=True)
class ObsRule:
    """A family of observers justifying strong conclusions.

    States direction: if every observer-after-lhs weakly equals the
    same observer after rhs, the sides are strongly equal.  Exceptions
    direction: the observers are co-observers, composed before the
    sides instead of after.
    """

    direction: str  # "states" or "exceptions"
    observers: tuple[DecoratedTerm, ...]


@dataclass(frozen=True, eq=False)
class Theory:
    flavor: str  # "states", "exceptions", "combined"
    signature: dict[str, OpSymbol]
    axioms: dict[str, Equation]
    obs_rules: tuple[ObsRule, ...]
    locations: dict[str, str] = field(default_factory=dict)
    exceptions: dict[str, str] = field(default_factory=dict)
    auto_ops: dict[str, tuple] = field(default_factory=dict)

    def base_type(self, location_or_exception: str) -> Base:
        if location_or_exception in self.locations:
            return Base(self.locations[location_or_exception])
        if location_or_exception in self.exceptions:
            return Base(self.exceptions[location_or_exception])
        raise TheoryError(f"{location_or_exception!r} is not declared")


def lookup_op(theory: Theory, location: str) -> Op:
    return Op(theory.signature[f"lookup_{location}"])


def update_op(theory: Theory, location: str) -> Op:
    return Op(theory.signature[f"update_{location}"])


def tag_op(theory: Theory, exception: str) -> Op:
    return Op(theory.signature[f"tag_{exception}"])


def untag_op(theory: Theory, exception: str) -> Op:
    return Op(theory.signature[f"untag_{exception}"])


def states_theory(locations) -> Theory:
    """The theory of global state over the given locations.

    `locations` maps location names to base type names (any iterable of
    pairs is accepted).  Per location there is a decoration-(1,0)
    lookup and a decoration-(2,0) update.  Axioms, all weak: reading a
    location just written yields the written value (ax1); writing one
    location does not change what another reads (ax2).  One
    observational rule: terms into the unit type agreeing under every
    lookup are strongly equal.
    """
    pairs = list(locations.items()) if isinstance(locations, dict) else list(locations)
    if not pairs:
        raise TheoryError("a states theory needs at least one location")
    locs: dict[str, str] = {}
    for name, base in pairs:
        if name in locs:
            raise DuplicateLocation(f"location {name!r} declared twice")
        locs[name] = base
    signature: dict[str, OpSymbol] = {}
    auto_ops: dict[str, tuple] = {}
    for name, base in locs.items():
        value_ty = Base(base)
        signature[f"lookup_{name}"] = OpSymbol(
            f"lookup_{name}", UNIT_T, value_ty, Decoration(1, 0))
        signature[f"update_{name}"] = OpSymbol(
            f"update_{name}", value_ty, UNIT_T, Decoration(2, 0))
        auto_ops[f"lookup_{name}"] = ("lookup", name)
        auto_ops[f"update_{name}"] = ("update", name)
    axioms: dict[str, Equation] = {}
    for name in locs:
        value_ty = Base(locs[name])
        lookup = Op(signature[f"lookup_{name}"])
        update = Op(signature[f"update_{name}"])
        axioms[f"st_ax1_{name}"] = Equation(
            Mode.WEAK, Comp(lookup, update), Id(value_ty))
    for written in locs:
        for read in locs:
            if written == read:
                continue
            update = Op(signature[f"update_{written}"])
            lookup = Op(signature[f"lookup_{read}"])
            written_ty = Base(locs[written])
            axioms[f"st_ax2_{written}_{read}"] = Equation(
                Mode.WEAK,
                Comp(lookup, update),
                Comp(lookup, Bang(written_ty)))
    observers = tuple(Op(signature[f"lookup_{name}"]) for name in locs)
    return Theory(
        flavor="states",
        signature=signature,
        axioms=axioms,
        obs_rules=(ObsRule("states", observers),),
        locations=locs,
        exceptions={},
        auto_ops=auto_ops,
    )


LAW_NAMES = {
    1: "annihilation lookup-update",
    2: "interaction lookup-lookup",
    3: "interaction update-update",
    4: "interaction update-lookup",
    5: "commutation lookup-lookup",
    6: "commutation update-update",
    7: "commutation update-lookup",
}


def seven_laws(theory: Theory, i: str | None = None, j: str | None = None) -> list[Equation]:
    """The seven state laws for locations `i` and `j` (defaults: the
    first two declared locations).

    Laws 1, 2, 3, 5, 6, 7 are strong; law 4 is weak only.  With a
    single location the two-location commutation laws 5, 6, 7 are
    vacuous and the list has four entries.
    """
    if theory.flavor != "states":
        raise WrongFlavor("the seven laws are stated over a states theory")
    names = list(theory.locations)
    if i is None:
        i = names[0]
    if i not in theory.locations:
        raise TheoryError(f"location {i!r} is not declared")
    if j is None:
        others = [name for name in names if name != i]
        j = others[0] if others else None
    elif j == i:
        raise TheoryError("the commutation laws need two distinct locations")
    elif j not in theory.locations:
        raise TheoryError(f"location {j!r} is not declared")

    v_i = Base(theory.locations[i])
    lookup_i = lookup_op(theory, i)
    update_i = update_op(theory, i)
    laws = [
        Equation(Mode.STRONG, Comp(update_i, lookup_i), Id(UNIT_T)),
        Equation(Mode.STRONG,
                 PairSeq(lookup_i, lookup_i),
                 Comp(copy_term(v_i), lookup_i)),
        Equation(Mode.STRONG,
                 seq_then(Comp(update_i, Proj1(v_i, v_i)),
                          Comp(update_i, Proj2(v_i, v_i))),
                 Comp(update_i, Proj2(v_i, v_i))),
        Equation(Mode.WEAK, Comp(lookup_i, update_i), Id(v_i)),
    ]
    if j is None:
        return laws
    v_j = Base(theory.locations[j])
    lookup_j = lookup_op(theory, j)
    update_j = update_op(theory, j)
    laws.append(Equation(
        Mode.STRONG,
        PairSeq(lookup_i, lookup_j),
        Comp(swap_term(v_j, v_i), PairSeq(lookup_j, lookup_i))))
    laws.append(Equation(
        Mode.STRONG,
        seq_then(Comp(update_i, Proj1(v_i, v_j)),
                 Comp(update_j, Proj2(v_i, v_j))),
        seq_then(Comp(update_j, Proj2(v_i, v_j)),
                 Comp(update_i, Proj1(v_i, v_j)))))
    laws.append(Equation(
        Mode.STRONG,
        Comp(lookup_j, update_i),
        Comp(Proj1(v_j, UNIT_T),
             PairSeq(Comp(lookup_j, Bang(v_i)), update_i))))
    return laws


# ---------------------------------------------------------------------------
# Duality


_DUAL_PREFIX = {"lookup": "tag", "update": "untag", "tag": "lookup", "untag": "update"}
_DUAL_RECIPE = {"lookup": "tag", "update": "untag", "tag": "lookup", "untag": "update"}
_DUAL_LABEL_PREFIX = {"st_": "ex_", "ex_": "st_"}


def _dual_symbol(symbol: OpSymbol) -> OpSymbol:
    prefix, _, rest = symbol.name.partition("_")
    if prefix not in _DUAL_PREFIX or not rest:
        raise TheoryError(f"operation {symbol.name!r} has no dual")
    return OpSymbol(
        f"{_DUAL_PREFIX[prefix]}_{rest}",
        dual_type(symbol.target),
        dual_type(symbol.source),
        Decoration(symbol.decoration.exc, symbol.decoration.state),
    )


def dualize_term(term: DecoratedTerm, symbol_map: dict[str, OpSymbol]) -> DecoratedTerm:
    """Reverse the arrow: swap products with sums, pairing with case
    analysis, projections with injections, and map each operation to
    its dual symbol.  Constant points have no dual."""
    if isinstance(term, Id):
        return Id(dual_type(term.at))
    if isinstance(term, Comp):
        return Comp(dualize_term(term.inner, symbol_map),
                    dualize_term(term.outer, symbol_map))
    if isinstance(term, Op):
        dual = symbol_map.get(term.symbol.name)
        if dual is None:
            raise TheoryError(f"operation {term.symbol.name!r} has no dual")
        return Op(dual)
    if isinstance(term, Proj1):
        return Inj1(dual_type(term.left), dual_type(term.right))
    if isinstance(term, Proj2):
        return Inj2(dual_type(term.left), dual_type(term.right))
    if isinstance(term, Inj1):
        return Proj1(dual_type(term.left), dual_type(term.right))
    if isinstance(term, Inj2):
        return Proj2(dual_type(term.left), dual_type(term.right))
    if isinstance(term, PairSeq):
        return CaseSeq(dualize_term(term.first, symbol_map),
                       dualize_term(term.second, symbol_map))
    if isinstance(term, CaseSeq):
        return PairSeq(dualize_term(term.on_left, symbol_map),
                       dualize_term(term.on_right, symbol_map))
    if isinstance(term, Bang):
        return Absurd(dual_type(term.at))
    if isinstance(term, Absurd):
        return Bang(dual_type(term.at))
    if isinstance(term, Const):
        raise TheoryError("constant points have no dual")
    raise TypeError(f"not a term: {term!r}")


def dual_symbol_map(theory: Theory) -> dict[str, OpSymbol]:
    return {name: _dual_symbol(symbol) for name, symbol in theory.signature.items()}


def dualize_equation(eq: Equation, symbol_map: dict[str, OpSymbol]) -> Equation:
    return Equation(eq.mode,
                    dualize_term(eq.lhs, symbol_map),
                    dualize_term(eq.rhs, symbol_map))


def _dual_label(label: str) -> str:
    for prefix, dual in _DUAL_LABEL_PREFIX.items():
        if label.startswith(prefix):
            return dual + label[len(prefix):]
    return label


def dualize(theory: Theory) -> Theory:
    """The mirror theory: states become exceptions and back.

    Lookup becomes tag (raise with parameter), update becomes untag
    (match-and-extract, re-raise on mismatch).  Axioms, observational
    rules and construction recipes are transported along; applying
    dualize twice restores the original theory exactly.
    """
    if theory.flavor == "states":
        new_flavor = "exceptions"
        new_locations: dict[str, str] = {}
        new_exceptions = dict(theory.locations)
    elif theory.flavor == "exceptions":
        new_flavor = "states"
        new_locations = dict(theory.exceptions)
        new_exceptions = {}
    else:
        raise WrongFlavor("only a single-effect theory can be dualized")
    symbol_map = dual_symbol_map(theory)
    signature = {dual.name: dual for dual in
                 (symbol_map[name] for name in theory.signature)}
    axioms = {
        _dual_label(label): dualize_equation(eq, symbol_map)
        for label, eq in theory.axioms.items()
    }
    obs_rules = tuple(
        ObsRule(
            "exceptions" if rule.direction == "states" else "states",
            tuple(dualize_term(obs, symbol_map) for obs in rule.observers),
        )
        for rule in theory.obs_rules
    )
    auto_ops = {}
    for name, recipe in theory.auto_ops.items():
        dual_name = symbol_map[name].name
        auto_ops[dual_name] = (_DUAL_RECIPE[recipe[0]],) + recipe[1:]
    return Theory(
        flavor=new_flavor,
        signature=signature,
        axioms=axioms,
        obs_rules=obs_rules,
        locations=new_locations,
        exceptions=new_exceptions,
        auto_ops=auto_ops,
    )


def combine(st: Theory, ex: Theory) -> Theory:
    """Merge a states theory with an exceptions theory.

    Signatures, axioms, observational rules and recipes are unioned;
    decorations already live on separate axes, so symbols keep their
    declared pairs.  No cross-effect axioms are added."""
    if st.flavor != "states" or ex.flavor != "exceptions":
        raise WrongFlavor("combine expects a states theory and an exceptions theory")
    clash = set(st.signature) & set(ex.signature)
    if clash:
        raise NameClash(f"operations declared twice: {sorted(clash)}")
    label_clash = set(st.axioms) & set(ex.axioms)
    if label_clash:
        raise NameClash(f"axiom labels declared twice: {sorted(label_clash)}")
    return Theory(
        flavor="combined",
        signature={**st.signature, **ex.signature},
        axioms={**st.axioms, **ex.axioms},
        obs_rules=st.obs_rules + ex.obs_rules,
        locations=dict(st.locations),
        exceptions=dict(ex.exceptions),
        auto_ops={**st.auto_ops, **ex.auto_ops},
    )


def extend_theory(theory: Theory, symbols: list[OpSymbol],
                  recipes: dict[str, tuple]) -> Theory:
    """A copy of `theory` with extra operations (no new axioms)."""
    clash = [s.name for s in symbols if s.name in theory.signature]
    if clash:
        raise NameClash(f"operations declared twice: {clash}")
    signature = dict(theory.signature)
    for symbol in symbols:
        signature[symbol.name] = symbol
    return Theory(
        flavor=theory.flavor,
        signature=signature,
        axioms=dict(theory.axioms),
        obs_rules=theory.obs_rules,
        locations=dict(theory.locations),
        exceptions=dict(theory.exceptions),
        auto_ops={**theory.auto_ops, **recipes},
    )


def theory_from_config(config) -> Theory:
    """Build the natural theory for a model description: states over
    its locations, exceptions over its exception names, combined when
    both are present."""
    if config.locations and config.exceptions:
        return combine(states_theory(config.locations),
                       dualize(states_theory(config.exceptions)))
    if config.locations:
        return states_theory(config.locations)
    if config.exceptions:
        return dualize(states_theory(config.exceptions))
    raise TheoryError("the model declares neither locations nor exceptions")


# ---------------------------------------------------------------------------
# Theory dumps


def dump_theory(theory: Theory) -> str:
    from .syntax import print_term, print_type

    lines = [f"theory {theory.flavor}"]
    for name, base in theory.locations.items():
        lines.append(f"location {name} : {base}")
    for name, base in theory.exceptions.items():
        lines.append(f"exception {name} : {base}")
    for name, symbol in theory.signature.items():
        lines.append(
            f"op {name} : {print_type(symbol.source)} -> "
            f"{print_type(symbol.target)} @ {symbol.decoration}")
    for label, eq in theory.axioms.items():
        lines.append(
            f"axiom {label} : {eq.mode.value} "
            f"{print_term(eq.lhs)} = {print_term(eq.rhs)}")
    for rule in theory.obs_rules:
        observers = ", ".join(print_term(obs) for obs in rule.observers)
        lines.append(f"obs {rule.direction} : {observers}")
    return "\n".join(lines) + "\n"


def parse_theory(text: str) -> Theory:
    """Parse a theory dump.

    Construction recipes are restored for the four effect families by
    name; other operations parse fine but cannot be instantiated by
    `build_model` without explicit tables.
    """
    from .syntax import ParseError, parse_term, parse_type
    from .terms import Mode as TermMode

    flavor = None
    locations: dict[str, str] = {}
    exceptions: dict[str, str] = {}
    signature: dict[str, OpSymbol] = {}
    axiom_lines: list[tuple[int, str, str]] = []
    obs_lines: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "theory":
            if rest not in ("states", "exceptions", "combined"):
                raise ParseError(f"unknown flavor {rest!r}", lineno, 1)
            flavor = rest
        elif head in ("location", "exception"):
            name, sep, base = rest.partition(":")
            name, base = name.strip(), base.strip()
            if not sep or not name.isidentifier() or not base.isidentifier():
                raise ParseError(f"expected `{head} NAME : TYPE`", lineno, 1)
            (locations if head == "location" else exceptions)[name] = base
        elif head == "op":
            name_part, sep, type_part = rest.partition(":")
            name = name_part.strip()
            if not sep or not name.isidentifier():
                raise ParseError("expected `op NAME : SRC -> TGT @ (s,e)`", lineno, 1)
            arrow_part, at, dec_part = type_part.partition("@")
            if not at or "->" not in arrow_part:
                raise ParseError("expected `op NAME : SRC -> TGT @ (s,e)`", lineno, 1)
            src_text, _, tgt_text = arrow_part.partition("->")
            dec_text = dec_part.strip()
            if not (dec_text.startswith("(") and dec_text.endswith(")")):
                raise ParseError("decoration must look like (1,0)", lineno, 1)
            try:
                state_text, exc_text = dec_text[1:-1].split(",")
                decoration = Decoration(int(state_text), int(exc_text))
            except ValueError:
                raise ParseError("decoration must look like (1,0)", lineno, 1) from None
            signature[name] = OpSymbol(
                name, parse_type(src_text.strip()),
                parse_type(tgt_text.strip()), decoration)
        elif head == "axiom":
            label, sep, body = rest.partition(":")
            if not sep:
                raise ParseError("expected `axiom LABEL : MODE LHS = RHS`", lineno, 1)
            axiom_lines.append((lineno, label.strip(), body.strip()))
        elif head == "obs":
            direction, sep, body = rest.partition(":")
            if not sep:
                raise ParseError("expected `obs DIRECTION : TERMS`", lineno, 1)
            obs_lines.append((lineno, direction.strip(), body.strip()))
        else:
            raise ParseError(f"unknown declaration {head!r}", lineno, 1)
    if flavor is None:
        raise ParseError("missing `theory` header", 1, 1)

    axioms: dict[str, Equation] = {}
    for lineno, label, body in axiom_lines:
        mode_word, _, eq_text = body.partition(" ")
        if mode_word not in ("weak", "strong"):
            raise ParseError("axiom mode must be weak or strong", lineno, 1)
        lhs_text, sep, rhs_text = eq_text.partition(" = ")
        if not sep:
            raise ParseError("axiom body must be `LHS = RHS`", lineno, 1)
        axioms[label] = Equation(
            TermMode(mode_word),
            parse_term(lhs_text.strip(), signature),
            parse_term(rhs_text.strip(), signature))
    obs_rules = []
    for lineno, direction, body in obs_lines:
        if direction not in ("states", "exceptions"):
            raise ParseError(f"unknown obs direction {direction!r}", lineno, 1)
        observers = tuple(
            parse_term(piece.strip(), signature)
            for piece in _split_top_level(body))
        obs_rules.append(ObsRule(direction, observers))

    auto_ops: dict[str, tuple] = {}
    for name in signature:
        prefix, _, rest = name.partition("_")
        if prefix in ("lookup", "update") and rest in locations:
            auto_ops[name] = (prefix, rest)
        elif prefix in ("tag", "untag") and rest in exceptions:
            auto_ops[name] = (prefix, rest)
    return Theory(
        flavor=flavor,
        signature=signature,
        axioms=axioms,
        obs_rules=tuple(obs_rules),
        locations=locations,
        exceptions=exceptions,
        auto_ops=auto_ops,
    )


def _split_top_level(text: str) -> list[str]:
    """Split on commas not nested inside parentheses."""
    pieces = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            pieces.append(text[start:i])
            start = i + 1
    tail = text[start:].strip()
    if tail:
        pieces.append(text[start:])
    return pieces
