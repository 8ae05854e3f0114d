"""Finite models and the exhaustive equality oracle.

A finite model fixes a carrier for every base type, a state space (the
product of the location carriers, in declaration order) and an
exception space (the tagged union of the exception parameter carriers).
A term of type X -> Y denotes a total function on (X + E) x S: the
state is always threaded, including past a raise, so a handler sees
writes performed before the throw.

Strong equality compares full outcomes on every input (ordinary and
exceptional) and every state.  Weak equality compares only the result
value (with its exceptional identity) on ordinary inputs, ignoring the
final state.  With no locations the state is trivial, so weak equality
degenerates to agreement on ordinary arguments; with no exceptions it
degenerates to value agreement.  Both checks scan state-major and
report the first difference.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .terms import (
    Absurd,
    Bang,
    CaseSeq,
    Comp,
    Const,
    DecoratedTerm,
    Id,
    Inj1,
    Inj2,
    Op,
    PairSeq,
    Proj1,
    Proj2,
)
from .types import Base, Empty, ObjType, Prod, Sum, Unit


class _UnitValue:
    """The sole inhabitant of the unit type."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "()"


UNIT = _UnitValue()


@dataclass(frozen=True)
class Exc:
    """An exceptional value: exception name plus its parameter."""

    name: str
    param: object


@dataclass(frozen=True)
class Outcome:
    value: object
    state: tuple

    @property
    def is_exceptional(self) -> bool:
        return isinstance(self.value, Exc)


class ModelError(Exception):
    pass


class CarrierMismatch(ModelError):
    pass


class MissingInterpretation(ModelError):
    pass


class UnknownBaseType(ModelError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteModel:
    """Carriers, locations, exceptions and operation tables.

    `carriers` maps base type names to ordered tuples of distinct
    values.  `locations` and `exceptions` map names to base type names.
    `interps` maps operation names to total tables keyed by
    (input value, state); catchers additionally cover exceptional
    inputs, everything else only ordinary ones.
    """

    carriers: dict[str, tuple]
    locations: dict[str, str]
    exceptions: dict[str, str]
    interps: dict[str, dict]
    states: tuple = field(init=False)

    def __post_init__(self) -> None:
        axes = [self.carriers[base] for base in self.locations.values()]
        object.__setattr__(self, "states", tuple(itertools.product(*axes)))
        object.__setattr__(
            self, "location_index",
            {name: i for i, name in enumerate(self.locations)})

    def exceptional_values(self) -> list[Exc]:
        values = []
        for name, base in self.exceptions.items():
            for param in self.carriers[base]:
                values.append(Exc(name, param))
        return values

    def state_str(self, state: tuple) -> str:
        return ",".join(f"{name}={value}"
                        for name, value in zip(self.locations, state))


def enumerate_points(ty: ObjType, model: FiniteModel) -> list:
    """Ordinary points of `ty`, in the documented deterministic order.

    Declared carrier order for base types, left-major lexicographic for
    products, all-left-then-all-right for sums.
    """
    if isinstance(ty, Unit):
        return [UNIT]
    if isinstance(ty, Empty):
        return []
    if isinstance(ty, Base):
        if ty.name not in model.carriers:
            raise UnknownBaseType(f"base type {ty.name!r} has no carrier")
        return list(model.carriers[ty.name])
    if isinstance(ty, Prod):
        return [(a, b)
                for a in enumerate_points(ty.left, model)
                for b in enumerate_points(ty.right, model)]
    if isinstance(ty, Sum):
        return ([("L", a) for a in enumerate_points(ty.left, model)]
                + [("R", b) for b in enumerate_points(ty.right, model)])
    raise TypeError(f"not an object type: {ty!r}")


def eval_term(term: DecoratedTerm, model: FiniteModel, value, state: tuple) -> Outcome:
    """Evaluate `term` on one input and one state.

    Iterative, so fuel-unrolled loop bodies of any depth evaluate
    without touching the interpreter recursion limit.  Exceptional
    values bypass every construct except catcher operations; a pairing
    whose first half raised skips the second half; a case split routes
    exceptional input through its right branch first and lets the left
    branch post-process whatever exceptional outcome comes back.
    """
    interps = model.interps
    kstack: list[tuple] = []
    cur = term
    v = value
    s = state
    returning = False
    while True:
        if not returning:
            t = cur
            if isinstance(t, Comp):
                kstack.append(("then", t.outer))
                cur = t.inner
                continue
            if isinstance(t, PairSeq):
                if isinstance(v, Exc):
                    returning = True
                    continue
                kstack.append(("pair-second", t.second, v))
                cur = t.first
                continue
            if isinstance(t, CaseSeq):
                if isinstance(v, Exc):
                    kstack.append(("case-post", t.on_left))
                    cur = t.on_right
                    continue
                tag, payload = v
                if tag == "L":
                    cur = t.on_left
                    v = payload
                    continue
                kstack.append(("case-post", t.on_left))
                cur = t.on_right
                v = payload
                continue
            if isinstance(t, Op):
                symbol = t.symbol
                if not (isinstance(v, Exc) and symbol.decoration.exc <= 1):
                    table = interps.get(symbol.name)
                    if table is None:
                        raise MissingInterpretation(
                            f"operation {symbol.name!r} has no interpretation")
                    try:
                        v, s = table[(v, s)]
                    except KeyError:
                        raise CarrierMismatch(
                            f"operation {symbol.name!r} undefined on "
                            f"input {v!r} in state {s!r}") from None
            elif isinstance(t, Id):
                pass
            elif isinstance(t, Proj1):
                if not isinstance(v, Exc):
                    v = v[0]
            elif isinstance(t, Proj2):
                if not isinstance(v, Exc):
                    v = v[1]
            elif isinstance(t, Inj1):
                if not isinstance(v, Exc):
                    v = ("L", v)
            elif isinstance(t, Inj2):
                if not isinstance(v, Exc):
                    v = ("R", v)
            elif isinstance(t, Bang):
                if not isinstance(v, Exc):
                    v = UNIT
            elif isinstance(t, Absurd):
                if not isinstance(v, Exc):
                    raise CarrierMismatch(
                        f"ordinary value {v!r} reached the empty type")
            elif isinstance(t, Const):
                if not isinstance(v, Exc):
                    v = t.value
            else:
                raise TypeError(f"not a term: {t!r}")
            returning = True
            continue
        if not kstack:
            return Outcome(v, s)
        frame = kstack.pop()
        kind = frame[0]
        if kind == "then":
            cur = frame[1]
            returning = False
        elif kind == "pair-second":
            if not isinstance(v, Exc):
                kstack.append(("pair-first-done", v))
                cur = frame[1]
                v = frame[2]
                returning = False
        elif kind == "pair-first-done":
            if not isinstance(v, Exc):
                v = (frame[1], v)
        elif kind == "case-post":
            if isinstance(v, Exc):
                cur = frame[1]
                returning = False
        else:
            raise AssertionError(f"unknown frame {kind!r}")


@dataclass(frozen=True)
class Counterexample:
    value: object
    state: tuple
    left: Outcome
    right: Outcome


def render_counterexample(cex: Counterexample, model: FiniteModel,
                          source: ObjType | None = None) -> str:
    """Stable one-line rendering: state components by location name,
    then the input (omitted at the unit type, `name(param)` for
    exceptional inputs)."""
    parts = [f"{name}={value}"
             for name, value in zip(model.locations, cex.state)]
    v = cex.value
    if isinstance(v, Exc):
        parts.append(f"v={v.name}({v.param})")
    elif v is not UNIT:
        parts.append(f"v={v}")
    return ",".join(parts) if parts else "<empty>"


def _scan(lhs: DecoratedTerm, rhs: DecoratedTerm, model: FiniteModel,
          inputs: list, full_outcome: bool) -> Counterexample | None:
    for state in model.states:
        for v in inputs:
            a = eval_term(lhs, model, v, state)
            b = eval_term(rhs, model, v, state)
            if full_outcome:
                same = a == b
            else:
                same = a.value == b.value
            if not same:
                return Counterexample(v, state, a, b)
    return None


def check_strong_eq(lhs: DecoratedTerm, rhs: DecoratedTerm,
                    model: FiniteModel) -> Counterexample | None:
    """None when full outcomes coincide on every input (ordinary and
    exceptional) and every state; otherwise the state-major-first
    counterexample."""
    inputs = enumerate_points(lhs.source, model) + model.exceptional_values()
    return _scan(lhs, rhs, model, inputs, full_outcome=True)


def check_weak_eq(lhs: DecoratedTerm, rhs: DecoratedTerm,
                  model: FiniteModel) -> Counterexample | None:
    """None when result values (including exceptional identity) agree
    on every ordinary input and every state, ignoring final states."""
    inputs = enumerate_points(lhs.source, model)
    return _scan(lhs, rhs, model, inputs, full_outcome=False)


def check_eq(mode, lhs, rhs, model) -> Counterexample | None:
    from .terms import Mode

    if mode is Mode.STRONG:
        return check_strong_eq(lhs, rhs, model)
    return check_weak_eq(lhs, rhs, model)


# ---------------------------------------------------------------------------
# The state comonad, pointwise.  Used by the structural test suites; the
# evaluator realizes the same content through its threading rules.


def comonad_phi(f):
    """Functor action: apply `f` to the value, carry the state along."""
    def mapped(pair):
        x, s = pair
        return (f(x), s)
    return mapped


def comonad_delta(pair):
    """Copy the state into the value so later maps can read it."""
    x, s = pair
    return ((x, s), s)


def comonad_epsilon(pair):
    """Discard the state."""
    x, s = pair
    return x


# ---------------------------------------------------------------------------
# Standard interpretations


def enum_slot_value(index: int, size: int):
    """Value of slot `index` in the right-nested enum type of `size` slots.

    The type is Sum(Unit, Sum(Unit, ... Unit)); slot k wraps k "R" tags
    around an "L"-tagged unit, except the last slot, whose core is the
    bare final unit.
    """
    if not 0 <= index < size:
        raise ValueError(f"slot {index} out of range for size {size}")
    if size == 1:
        return UNIT
    if index == 0:
        return ("L", UNIT)
    return ("R", enum_slot_value(index - 1, size - 1))


def enum_type(size: int) -> ObjType:
    """Right-nested sum of `size` unit summands."""
    from .types import UNIT_T

    if size < 1:
        raise ValueError("enum carrier must be non-empty")
    ty: ObjType = UNIT_T
    for _ in range(size - 1):
        ty = Sum(UNIT_T, ty)
    return ty


def build_model(theory, carriers: dict[str, tuple],
                extra_interps: dict[str, dict] | None = None) -> FiniteModel:
    """Instantiate `theory` over the given carriers.

    Every operation the theory declares gets its table from the
    theory's construction recipe (lookups read their state component,
    updates overwrite it, tags wrap, untags match-or-rethrow, plus the
    pure arithmetic and enumeration families).  `extra_interps`
    supplies or overrides tables for operations without a recipe.
    """
    for base in set(theory.locations.values()) | set(theory.exceptions.values()):
        if base not in carriers:
            raise UnknownBaseType(f"base type {base!r} has no carrier")
    model = FiniteModel(
        carriers=dict(carriers),
        locations=dict(theory.locations),
        exceptions=dict(theory.exceptions),
        interps={},
    )
    interps: dict[str, dict] = {}
    exc_values = model.exceptional_values()
    for name, symbol in theory.signature.items():
        if extra_interps and name in extra_interps:
            interps[name] = dict(extra_interps[name])
            continue
        recipe = theory.auto_ops.get(name)
        if recipe is None:
            raise MissingInterpretation(
                f"operation {name!r} has no construction recipe and no "
                f"explicit interpretation")
        interps[name] = _recipe_table(recipe, symbol, model, exc_values)
    return FiniteModel(
        carriers=model.carriers,
        locations=model.locations,
        exceptions=model.exceptions,
        interps=interps,
    )


def _recipe_table(recipe: tuple, symbol, model: FiniteModel,
                  exc_values: list[Exc]) -> dict:
    kind = recipe[0]
    table: dict = {}
    states = model.states
    if kind == "lookup":
        index = model.location_index[recipe[1]]
        for s in states:
            table[(UNIT, s)] = (s[index], s)
    elif kind == "update":
        index = model.location_index[recipe[1]]
        carrier = model.carriers[model.locations[recipe[1]]]
        for s in states:
            for v in carrier:
                table[(v, s)] = (UNIT, s[:index] + (v,) + s[index + 1:])
    elif kind == "tag":
        name = recipe[1]
        carrier = model.carriers[model.exceptions[name]]
        for s in states:
            for p in carrier:
                table[(p, s)] = (Exc(name, p), s)
    elif kind == "untag":
        name = recipe[1]
        for s in states:
            for ev in exc_values:
                if ev.name == name:
                    table[(ev, s)] = (ev.param, s)
                else:
                    table[(ev, s)] = (ev, s)
    elif kind == "enum":
        carrier = model.carriers[recipe[1]]
        size = len(carrier)
        for s in states:
            for index, v in enumerate(carrier):
                table[(v, s)] = (enum_slot_value(index, size), s)
    elif kind in ("add", "sub", "mul"):
        carrier = model.carriers[recipe[1]]
        size = len(carrier)
        if tuple(carrier) != tuple(range(size)):
            raise ModelError(
                f"arithmetic needs carrier 0..{size - 1}, got {carrier!r}")
        fn = {"add": lambda a, b: a + b,
              "sub": lambda a, b: a - b,
              "mul": lambda a, b: a * b}[kind]
        for s in states:
            for a in carrier:
                for b in carrier:
                    table[((a, b), s)] = (fn(a, b) % size, s)
    elif kind in ("eq", "le"):
        carrier = model.carriers[recipe[1]]
        fn = {"eq": lambda a, b: a == b, "le": lambda a, b: a <= b}[kind]
        for s in states:
            for a in carrier:
                for b in carrier:
                    result = ("L", UNIT) if fn(a, b) else ("R", UNIT)
                    table[((a, b), s)] = (result, s)
    else:
        raise MissingInterpretation(f"unknown recipe {recipe!r}")
    return table


def validate_model(model: FiniteModel, theory) -> list[str]:
    """Check every table against its symbol's type and decoration.

    Returns a list of problems (empty when the model is valid): wrong
    coverage, state mutation by a non-modifier, state-dependent output
    from a pure operation, ordinary raising by an exception-pure
    operation, missing exceptional coverage for a catcher.
    """
    problems = []
    exc_values = model.exceptional_values()
    for name, symbol in theory.signature.items():
        table = model.interps.get(name)
        if table is None:
            problems.append(f"{name}: no interpretation")
            continue
        ordinary = enumerate_points(symbol.source, model)
        wanted = {(v, s) for v in ordinary for s in model.states}
        if symbol.decoration.exc >= 2:
            wanted |= {(ev, s) for ev in exc_values for s in model.states}
        have = set(table.keys())
        if have != wanted:
            missing = wanted - have
            extra = have - wanted
            if missing:
                problems.append(f"{name}: table misses {sorted_keys(missing)}")
            if extra:
                problems.append(f"{name}: table covers spurious {sorted_keys(extra)}")
        targets = set(enumerate_points(symbol.target, model))
        by_value: dict = {}
        for key in have & wanted:
            v, s = key
            out_v, out_s = table[key]
            if out_s not in model.states:
                problems.append(f"{name}: output state {out_s!r} invalid")
            if symbol.decoration.state <= 1 and out_s != s:
                problems.append(
                    f"{name}: non-modifier changed state on {key!r}")
            if symbol.decoration.state == 0:
                by_value.setdefault(v, set()).add(out_v)
            if isinstance(out_v, Exc):
                if symbol.decoration.exc == 0:
                    problems.append(f"{name}: pure operation raised on {key!r}")
                elif out_v not in exc_values:
                    problems.append(f"{name}: unknown exceptional value {out_v!r}")
            elif out_v not in targets:
                problems.append(f"{name}: output {out_v!r} outside target carrier")
        for v, outs in by_value.items():
            if len(outs) > 1:
                problems.append(f"{name}: state-pure operation depends on state at {v!r}")
    return problems


def sorted_keys(keys) -> str:
    return ", ".join(repr(k) for k in sorted(keys, key=repr)[:3])


# ---------------------------------------------------------------------------
# Model description files


@dataclass(frozen=True)
class ModelConfig:
    carriers: dict[str, tuple]
    locations: dict[str, str]
    exceptions: dict[str, str]


def parse_model_config(text: str) -> ModelConfig:
    """Parse a model description.

    Lines: `type V = {0,1}`, `location x : V`, `exception e : V`.
    Blank lines and `#` comments are skipped.
    """
    from .syntax import ParseError

    carriers: dict[str, tuple] = {}
    locations: dict[str, str] = {}
    exceptions: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "type":
            rest = line[len("type"):].strip()
            if "=" not in rest:
                raise ParseError("expected `type NAME = {..}`", lineno, 1)
            name, _, body = rest.partition("=")
            name = name.strip()
            body = body.strip()
            if not name.isidentifier():
                raise ParseError(f"bad type name {name!r}", lineno, 1)
            if name in carriers:
                raise ParseError(f"type {name!r} declared twice", lineno, 1)
            if not (body.startswith("{") and body.endswith("}")):
                raise ParseError("carrier must be {v0,v1,...}", lineno, 1)
            items = [piece.strip() for piece in body[1:-1].split(",") if piece.strip()]
            if not items:
                raise ParseError("carrier must be non-empty", lineno, 1)
            try:
                values = tuple(int(piece) for piece in items)
            except ValueError:
                raise ParseError("carrier values must be integers", lineno, 1) from None
            if len(set(values)) != len(values):
                raise ParseError("carrier values must be distinct", lineno, 1)
            carriers[name] = values
        elif parts[0] in ("location", "exception"):
            rest = line[len(parts[0]):].strip()
            if ":" not in rest:
                raise ParseError(f"expected `{parts[0]} NAME : TYPE`", lineno, 1)
            name, _, base = rest.partition(":")
            name = name.strip()
            base = base.strip()
            if not name.isidentifier() or not base.isidentifier():
                raise ParseError(f"bad {parts[0]} declaration", lineno, 1)
            target = locations if parts[0] == "location" else exceptions
            if name in target:
                raise ParseError(f"{parts[0]} {name!r} declared twice", lineno, 1)
            if base not in carriers:
                raise ParseError(f"type {base!r} not declared", lineno, 1)
            target[name] = base
        else:
            raise ParseError(f"unknown declaration {parts[0]!r}", lineno, 1)
    return ModelConfig(carriers=carriers, locations=locations, exceptions=exceptions)


def print_model_config(config: ModelConfig) -> str:
    lines = []
    for name, values in config.carriers.items():
        lines.append(f"type {name} = {{{','.join(str(v) for v in values)}}}")
    for name, base in config.locations.items():
        lines.append(f"location {name} : {base}")
    for name, base in config.exceptions.items():
        lines.append(f"exception {name} : {base}")
    return "\n".join(lines) + "\n"
