"""Programs to terms: parsing, elaboration, and program equivalence.

Expected verdicts and outcomes were computed with the direct
interpreter in reference_imp and frozen here; the tests check the term
translation and the interpreter against the frozen values and against
each other on every initial state.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from declogic import Decoration, build_model, eval_term, infer_decoration, typecheck
from declogic.model import UNIT, Exc, Outcome
from declogic.imp import (
    Add,
    And,
    Assign,
    BFalse,
    BTrue,
    Clause,
    ElaborationError,
    Eq,
    FUEL_EXCEPTION,
    If,
    Le,
    Lit,
    Loc,
    Mul,
    Not,
    Seq,
    Skip,
    Sub,
    Throw,
    TryCatch,
    UndeclaredException,
    UndeclaredLocation,
    Verdict,
    While,
    build_imp_theory,
    carrier_sizes,
    check_equiv,
    default_carriers,
    elaborate,
    parse_aexp,
    parse_bexp,
    parse_command,
    print_aexp,
    print_bexp,
    print_command,
)
from declogic.syntax import ParseError
from declogic.theory import states_theory
from reference_imp import Machine, reference_verdict, state_of, store_of

LOCATIONS = {"x": "V", "y": "V"}
EXCEPTIONS = {"e": "V", "f": "V"}
SIZES = {"V": 4}

THEORY = build_imp_theory(LOCATIONS, EXCEPTIONS, SIZES)
MODEL = build_model(THEORY, default_carriers(THEORY))
MACHINE = Machine(LOCATIONS, EXCEPTIONS, SIZES)

# (label, left, right, fuel, expected verdict)
CORPUS = [
    ("overwrite", "x := 1; x := 2", "x := 2", 8, "strong"),
    ("skip-unit", "skip; x := 1", "x := 1", 8, "strong"),
    ("raise-after-write", "x := 1; throw e(0)", "throw e(0); x := 1", 8, "weak"),
    ("catch-ignore", "try { throw e(0) } catch e(v) { skip }", "skip", 8, "strong"),
    ("countdown", "while not x == 0 do { x := x - 1 }", "x := 0", 8, "strong"),
    ("countdown-tight", "while not x == 0 do { x := x - 1 }", "x := 0", 3,
     "fuel-exhausted"),
    ("branch-flip", "if x == 0 then { y := 1 } else { y := 2 }",
     "if not x == 0 then { y := 2 } else { y := 1 }", 8, "strong"),
    ("short-circuit", "if false and x == 0 then { x := 1 } else { skip }",
     "skip", 8, "strong"),
    ("catch-binding", "try { throw e(x) } catch e(v) { y := v }", "y := x", 8,
     "strong"),
    ("uncaught-passes", "try { throw f(0) } catch e(v) { x := 1 }",
     "throw f(0)", 8, "strong"),
    ("spin", "while true do { skip }", "skip", 5, "fuel-exhausted"),
    ("raise-vs-skip", "throw e(0)", "skip", 8, "not-equal"),
    ("rethrow-chain",
     "try { try { throw e(1) } catch e(v) { throw f(v) } } catch f(w) { x := w }",
     "x := 1", 8, "strong"),
    ("wraparound", "x := x + 1; x := x + 1", "x := x + 2", 8, "strong"),
    ("self-assign", "x := x", "skip", 8, "strong"),
    ("write-only-differs", "x := 1", "x := 2", 8, "weak"),
    ("payload-differs", "throw e(0)", "throw e(1)", 8, "not-equal"),
    ("exception-differs", "throw e(0)", "throw f(0)", 8, "not-equal"),
    ("first-clause-wins",
     "try { throw e(1) } catch e(v) { x := v } catch e(w) { x := 3 }",
     "x := 1", 8, "strong"),
    ("binder-shadows", "try { throw e(2) } catch e(x) { y := x }", "y := 2", 8,
     "strong"),
]

CORPUS_IDS = [label for label, *_ in CORPUS]


def _reference_outcome(cmd, state, fuel):
    result = MACHINE.run(cmd, store_of(MODEL, state), fuel)
    if result[0] == "ok":
        return Outcome(UNIT, state_of(MODEL, result[1]))
    _, name, param, store = result
    return Outcome(Exc(name, param), state_of(MODEL, store))


@pytest.mark.parametrize("label,left,right,fuel,expected", CORPUS, ids=CORPUS_IDS)
def test_corpus_verdicts(label, left, right, fuel, expected):
    first, second = parse_command(left), parse_command(right)
    verdict = check_equiv(first, second, THEORY, MODEL, fuel=fuel)
    assert verdict.kind == expected
    assert reference_verdict(MACHINE, MODEL, first, second, fuel) == expected


@pytest.mark.parametrize("label,left,right,fuel,expected", CORPUS, ids=CORPUS_IDS)
def test_corpus_matches_reference_pointwise(label, left, right, fuel, expected):
    for source in (left, right):
        cmd = parse_command(source)
        term = elaborate(cmd, THEORY, fuel=fuel)
        for state in MODEL.states:
            got = eval_term(term, MODEL, UNIT, state)
            assert got == _reference_outcome(cmd, state, fuel), (source, state)


@pytest.mark.parametrize("label,left,right,fuel,expected", CORPUS, ids=CORPUS_IDS)
def test_corpus_terms_typecheck(label, left, right, fuel, expected):
    for source in (left, right):
        term = elaborate(parse_command(source), THEORY, fuel=fuel)
        assert typecheck(term, THEORY.signature).ok


@pytest.mark.parametrize("label,left,right,fuel,expected", CORPUS, ids=CORPUS_IDS)
def test_corpus_exception_transparency(label, left, right, fuel, expected):
    """Commands never react to an exceptional input, even around catches."""
    for source in (left, right):
        term = elaborate(parse_command(source), THEORY, fuel=fuel)
        for exc in MODEL.exceptional_values():
            for state in MODEL.states:
                assert eval_term(term, MODEL, exc, state) == Outcome(exc, state)


def test_write_persists_through_throw():
    term = elaborate(parse_command("x := 1; throw e(0)"), THEORY)
    got = eval_term(term, MODEL, UNIT, (0, 0))
    assert got == Outcome(Exc("e", 0), (1, 0))


def test_fuel_monotonicity():
    loop = parse_command("while not x == 0 do { x := x - 1 }")
    zero = parse_command("x := 0")
    for fuel in range(0, 4):
        assert check_equiv(loop, zero, THEORY, MODEL, fuel=fuel).kind == "fuel-exhausted"
    for fuel in range(4, 9):
        assert check_equiv(loop, zero, THEORY, MODEL, fuel=fuel).kind == "strong"


def test_plain_difference_beats_exhaustion():
    spin = "while true do { skip }"
    left = parse_command(f"if x == 0 then {{ {spin} }} else {{ throw e(0) }}")
    right = parse_command(f"if x == 0 then {{ {spin} }} else {{ skip }}")
    assert check_equiv(left, right, THEORY, MODEL, fuel=4).kind == "not-equal"
    assert reference_verdict(MACHINE, MODEL, left, right, 4) == "not-equal"


def test_verdict_reports_first_state():
    weak = check_equiv(parse_command("x := 1"), parse_command("x := 2"),
                       THEORY, MODEL)
    assert weak == Verdict("weak", (0, 0))
    assert "x=0,y=0" in weak.describe(MODEL)
    assert "strongly" in Verdict("strong").describe(MODEL)
    spin = check_equiv(parse_command("while true do { skip }"),
                       parse_command("skip"), THEORY, MODEL, fuel=2)
    assert "fuel" in spin.describe(MODEL)


# -- parsing


@pytest.mark.parametrize("label,left,right,fuel,expected", CORPUS, ids=CORPUS_IDS)
def test_print_parse_roundtrip_corpus(label, left, right, fuel, expected):
    for source in (left, right):
        cmd = parse_command(source)
        assert parse_command(print_command(cmd)) == cmd


def test_precedence():
    assert parse_aexp("x + y * 2") == Add(Loc("x"), Mul(Loc("y"), Lit(2)))
    assert parse_aexp("(x + y) * 2") == Mul(Add(Loc("x"), Loc("y")), Lit(2))
    assert parse_aexp("x - y - 1") == Sub(Sub(Loc("x"), Loc("y")), Lit(1))
    assert parse_bexp("not x == 0 and y == 0") == And(
        Not(Eq(Loc("x"), Lit(0))), Eq(Loc("y"), Lit(0))
    )
    assert parse_bexp("(x == 0) and true") == And(Eq(Loc("x"), Lit(0)), BTrue())
    assert parse_bexp("(x + 1) <= y") == Le(Add(Loc("x"), Lit(1)), Loc("y"))


def test_comments_and_layout():
    source = """
    x := 1;      # write
    if x <= y    # compare
    then { skip } else { y := 0 }
    """
    assert parse_command(source) == parse_command(
        "x := 1; if x <= y then { skip } else { y := 0 }"
    )


@pytest.mark.parametrize(
    "source",
    [
        "x :=",
        "x = 1",
        "if x == 0 then { skip }",
        "while x == 0 { skip }",
        "try { skip }",
        "throw e",
        "skip; ",
        "skip }",
        "x := 1 ?",
        "not",
    ],
)
def test_parse_errors(source):
    with pytest.raises(ParseError):
        parse_command(source)


_NAMES = st.sampled_from(["x", "y", "v", "w"])
_AEXPS = st.recursive(
    st.builds(Lit, st.integers(0, 3)) | st.builds(Loc, _NAMES),
    lambda inner: (
        st.builds(Add, inner, inner)
        | st.builds(Sub, inner, inner)
        | st.builds(Mul, inner, inner)
    ),
    max_leaves=8,
)
_BEXPS = st.recursive(
    st.just(BTrue())
    | st.just(BFalse())
    | st.builds(Eq, _AEXPS, _AEXPS)
    | st.builds(Le, _AEXPS, _AEXPS),
    lambda inner: st.builds(Not, inner) | st.builds(And, inner, inner),
    max_leaves=6,
)
# Commands keep Seq nested to the right, the only shape the printer's
# paren-free ";" can reproduce.
_COMMANDS = st.deferred(lambda: _SIMPLE | st.builds(Seq, _SIMPLE, _COMMANDS))
_CLAUSES = st.builds(Clause, _NAMES, _NAMES, st.deferred(lambda: _COMMANDS))
_SIMPLE = st.deferred(
    lambda: st.just(Skip())
    | st.builds(Assign, _NAMES, _AEXPS)
    | st.builds(Throw, _NAMES, _AEXPS)
    | st.builds(If, _BEXPS, _COMMANDS, _COMMANDS)
    | st.builds(While, _BEXPS, _COMMANDS)
    | st.builds(
        TryCatch, _COMMANDS, st.lists(_CLAUSES, min_size=1, max_size=2).map(tuple)
    )
)


@settings(max_examples=60, deadline=None)
@given(_AEXPS)
def test_aexp_roundtrip(expr):
    assert parse_aexp(print_aexp(expr)) == expr


@settings(max_examples=60, deadline=None)
@given(_BEXPS)
def test_bexp_roundtrip(expr):
    assert parse_bexp(print_bexp(expr)) == expr


@settings(max_examples=60, deadline=None)
@given(_COMMANDS)
def test_command_roundtrip(cmd):
    assert parse_command(print_command(cmd)) == cmd


# -- theory construction and elaboration errors


def test_theory_records_sizes():
    assert carrier_sizes(THEORY) == {"V": 4}
    assert default_carriers(THEORY) == {"V": (0, 1, 2, 3)}
    wide = build_imp_theory({"x": "V", "w": "W"}, {}, {"V": 2, "W": 3})
    assert carrier_sizes(wide) == {"V": 2, "W": 3}


def test_theory_reserves_fuel_exception():
    assert FUEL_EXCEPTION in THEORY.exceptions
    with pytest.raises(ParseError):
        parse_command(f"throw {FUEL_EXCEPTION}(0)")


@pytest.mark.parametrize(
    "locations,exceptions,sizes",
    [
        ({}, {}, {}),
        ({"skip": "V"}, {}, {"V": 2}),
        ({"x": "V"}, {"bad name": "V"}, {"V": 2}),
        ({"x": "V"}, {FUEL_EXCEPTION: "V"}, {"V": 2}),
        ({"x": "V"}, {}, {}),
        ({"x": "V"}, {}, {"V": 0}),
    ],
)
def test_build_theory_rejects(locations, exceptions, sizes):
    with pytest.raises(ElaborationError):
        build_imp_theory(locations, exceptions, sizes)


@pytest.mark.parametrize(
    "source,error",
    [
        ("z := 1", UndeclaredLocation),
        ("x := z", UndeclaredLocation),
        ("throw g(0)", UndeclaredException),
        ("try { skip } catch g(v) { skip }", UndeclaredException),
        ("try { throw e(0) } catch e(v) { v := 1 }", ElaborationError),
        ("x := 9", ElaborationError),
    ],
)
def test_elaboration_errors(source, error):
    with pytest.raises(error):
        elaborate(parse_command(source), THEORY)


def test_two_base_theory_errors():
    wide = build_imp_theory({"x": "V", "w": "W"}, {}, {"V": 2, "W": 3})
    with pytest.raises(ElaborationError):
        elaborate(parse_command("x := w"), wide)
    with pytest.raises(ElaborationError):
        elaborate(parse_command("if 0 == 0 then { skip } else { skip }"), wide)


def test_elaborate_needs_fuel_machinery():
    with pytest.raises(ElaborationError):
        elaborate(Skip(), states_theory({"x": "V"}))
    with pytest.raises(ElaborationError):
        elaborate(Skip(), THEORY, fuel=-1)


def test_two_base_programs_run():
    wide = build_imp_theory({"x": "V", "w": "W"}, {}, {"V": 2, "W": 3})
    model = build_model(wide, default_carriers(wide))
    machine = Machine({"x": "V", "w": "W"}, {}, {"V": 2, "W": 3})
    cmd = parse_command("w := w + 2; if x == 1 then { w := 0 } else { skip }")
    term = elaborate(cmd, wide)
    for state in model.states:
        result = machine.run(cmd, dict(zip(model.locations, state)), 8)
        expected = Outcome(UNIT, tuple(result[1][n] for n in model.locations))
        assert eval_term(term, model, UNIT, state) == expected


# -- decorations of elaborated terms


def test_elaborated_decorations():
    pure_read = elaborate(parse_command("x := x + 1"), THEORY)
    assert infer_decoration(pure_read) == Decoration(2, 0)
    raiser = elaborate(parse_command("x := 1; throw e(x)"), THEORY)
    assert infer_decoration(raiser) == Decoration(2, 1)
    catcher = elaborate(parse_command(CORPUS[3][1]), THEORY)
    assert infer_decoration(catcher).exc == 2
    loop = elaborate(parse_command("while x == 0 do { y := 1 }"), THEORY)
    assert infer_decoration(loop).leq(Decoration(2, 1))
