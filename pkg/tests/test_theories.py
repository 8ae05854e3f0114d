"""States/exceptions/combined theory construction and duality."""

import pytest

from declogic.model import UNIT, Exc, Outcome, build_model, check_weak_eq, eval_term
from declogic.syntax import print_term
from declogic.terms import Comp, Const, Decoration, Mode, Op
from declogic.theory import (
    DuplicateLocation,
    NameClash,
    TheoryError,
    WrongFlavor,
    combine,
    dual_symbol_map,
    dualize,
    dualize_equation,
    dualize_term,
    dump_theory,
    extend_theory,
    lookup_op,
    parse_theory,
    seven_laws,
    states_theory,
    tag_op,
    theory_from_config,
    untag_op,
    update_op,
)
from declogic.model import parse_model_config
from declogic.terms import OpSymbol, PURE
from declogic.types import EMPTY_T, UNIT_T, Base


class TestStatesTheory:
    def test_signature_shape(self):
        theory = states_theory({"x": "V"})
        lk = theory.signature["lookup_x"]
        up = theory.signature["update_x"]
        assert lk.source == UNIT_T and lk.target == Base("V")
        assert lk.decoration == Decoration(1, 0)
        assert up.source == Base("V") and up.target == UNIT_T
        assert up.decoration == Decoration(2, 0)

    def test_axiom_labels(self):
        theory = states_theory({"x": "V", "y": "W"})
        assert set(theory.axioms) == {
            "st_ax1_x", "st_ax1_y", "st_ax2_x_y", "st_ax2_y_x"}
        assert all(eq.mode is Mode.WEAK for eq in theory.axioms.values())

    def test_axioms_hold_in_models(self):
        theory = states_theory({"x": "V", "y": "V"})
        model = build_model(theory, {"V": (0, 1, 2)})
        for label, eq in theory.axioms.items():
            assert check_weak_eq(eq.lhs, eq.rhs, model) is None, label

    def test_observational_rule(self):
        theory = states_theory({"x": "V", "y": "V"})
        (rule,) = theory.obs_rules
        assert rule.direction == "states"
        assert [print_term(o) for o in rule.observers] == \
            ["op(lookup_x)", "op(lookup_y)"]

    def test_needs_a_location(self):
        with pytest.raises(TheoryError):
            states_theory({})

    def test_duplicate_location(self):
        with pytest.raises(DuplicateLocation):
            states_theory([("x", "V"), ("x", "W")])


class TestSevenLaws:
    def test_two_location_count_and_modes(self):
        theory = states_theory({"x": "V", "y": "V"})
        laws = seven_laws(theory)
        assert len(laws) == 7
        assert [law.mode for law in laws] == [
            Mode.STRONG, Mode.STRONG, Mode.STRONG, Mode.WEAK,
            Mode.STRONG, Mode.STRONG, Mode.STRONG]

    def test_single_location_drops_commutation(self):
        theory = states_theory({"x": "V"})
        assert len(seven_laws(theory)) == 4

    def test_laws_typecheck(self):
        from declogic.terms import typecheck
        theory = states_theory({"x": "V", "y": "W"})
        for law in seven_laws(theory, "x", "y"):
            assert typecheck(law.lhs, theory.signature).ok
            assert typecheck(law.rhs, theory.signature).ok
            assert law.lhs.source == law.rhs.source
            assert law.lhs.target == law.rhs.target

    def test_wrong_flavor(self):
        ex = dualize(states_theory({"e": "P"}))
        with pytest.raises(WrongFlavor):
            seven_laws(ex)

    def test_same_location_pair_rejected(self):
        theory = states_theory({"x": "V", "y": "V"})
        with pytest.raises(TheoryError):
            seven_laws(theory, "x", "x")


class TestDualize:
    def test_dual_signature(self):
        ex = dualize(states_theory({"e": "P"}))
        assert ex.flavor == "exceptions"
        tag = ex.signature["tag_e"]
        untag = ex.signature["untag_e"]
        assert tag.source == Base("P") and tag.target == EMPTY_T
        assert tag.decoration == Decoration(0, 1)
        assert untag.source == EMPTY_T and untag.target == Base("P")
        assert untag.decoration == Decoration(0, 2)
        assert ex.exceptions == {"e": "P"} and ex.locations == {}

    def test_axiom_labels_mirrored(self):
        ex = dualize(states_theory({"e": "P", "f": "P"}))
        assert set(ex.axioms) == {
            "ex_ax1_e", "ex_ax1_f", "ex_ax2_e_f", "ex_ax2_f_e"}

    def test_involution_is_exact(self):
        st = states_theory({"x": "V", "y": "W"})
        back = dualize(dualize(st))
        assert back.flavor == st.flavor
        assert back.signature == st.signature
        assert back.axioms == st.axioms
        assert back.obs_rules == st.obs_rules
        assert back.locations == st.locations
        assert back.auto_ops == st.auto_ops

    def test_dual_term_swaps_structure(self):
        st = states_theory({"x": "V"})
        symbol_map = dual_symbol_map(st)
        law1_lhs = Comp(update_op(st, "x"), lookup_op(st, "x"))
        dual = dualize_term(law1_lhs, symbol_map)
        assert print_term(dual) == "comp(op(tag_x), op(untag_x))"

    def test_const_has_no_dual(self):
        st = states_theory({"x": "V"})
        with pytest.raises(TheoryError):
            dualize_term(Const(0, Base("V")), dual_symbol_map(st))

    def test_combined_cannot_dualize(self):
        both = combine(states_theory({"x": "V"}),
                       dualize(states_theory({"e": "P"})))
        with pytest.raises(WrongFlavor):
            dualize(both)

    def test_dual_axioms_hold(self):
        ex = dualize(states_theory({"e": "P", "f": "P"}))
        model = build_model(ex, {"P": (0, 1)})
        for label, eq in ex.axioms.items():
            assert check_weak_eq(eq.lhs, eq.rhs, model) is None, label


class TestCombine:
    def test_union_of_parts(self):
        st = states_theory({"x": "V"})
        ex = dualize(states_theory({"e": "P"}))
        both = combine(st, ex)
        assert both.flavor == "combined"
        assert set(both.signature) == {
            "lookup_x", "update_x", "tag_e", "untag_e"}
        assert set(both.axioms) == {"st_ax1_x", "ex_ax1_e"}
        assert [r.direction for r in both.obs_rules] == ["states", "exceptions"]
        assert both.locations == {"x": "V"} and both.exceptions == {"e": "P"}

    def test_flavor_checks(self):
        st = states_theory({"x": "V"})
        with pytest.raises(WrongFlavor):
            combine(st, st)

    def test_name_clash(self):
        st = states_theory({"tag": "V"})  # lookup_tag clashes? no: full names
        ex = dualize(states_theory({"e": "P"}))
        combine(st, ex)  # fine: lookup_tag vs tag_e
        clash_ex = dualize(states_theory({"x": "P"}))
        renamed = extend_theory(
            states_theory({"y": "V"}), [clash_ex.signature["tag_x"]], {})
        with pytest.raises(NameClash):
            combine(renamed, clash_ex)

    def test_write_persists_through_throw(self):
        st = states_theory({"x": "V"})
        ex = dualize(states_theory({"e": "P"}))
        both = combine(st, ex)
        model = build_model(both, {"V": (0, 1), "P": (0, 1)})
        for c in (0, 1):
            for v in (0, 1):
                t = Comp(Comp(tag_op(both, "e"), Const(c, Base("P"))),
                         Comp(update_op(both, "x"), Const(v, Base("V"))))
                out = eval_term(t, model, UNIT, (0,))
                assert out == Outcome(Exc("e", c), (v,))

    def test_conservativity_over_states(self):
        st = states_theory({"x": "V", "y": "V"})
        both = combine(st, dualize(states_theory({"e": "P"})))
        st_model = build_model(st, {"V": (0, 1)})
        both_model = build_model(both, {"V": (0, 1), "P": (0, 1)})
        terms = [
            Comp(update_op(st, "x"), lookup_op(st, "y")),
            Comp(lookup_op(st, "x"), update_op(st, "x")),
        ]
        inputs = [UNIT, 0]
        for t, v in zip(terms, inputs):
            for s in st_model.states:
                assert eval_term(t, st_model, v, s) == eval_term(t, both_model, v, s)


class TestExtend:
    def test_extension_adds_symbols(self):
        st = states_theory({"x": "V"})
        extra = OpSymbol("noise", UNIT_T, UNIT_T, PURE)
        bigger = extend_theory(st, [extra], {})
        assert "noise" in bigger.signature
        assert bigger.axioms == st.axioms

    def test_extension_rejects_clash(self):
        st = states_theory({"x": "V"})
        with pytest.raises(NameClash):
            extend_theory(st, [st.signature["lookup_x"]], {})


class TestTheoryDump:
    def test_round_trip(self):
        st = states_theory({"x": "V", "y": "W"})
        text = dump_theory(st)
        parsed = parse_theory(text)
        assert parsed.flavor == st.flavor
        assert parsed.signature == st.signature
        assert parsed.axioms == st.axioms
        assert parsed.obs_rules == st.obs_rules
        assert parsed.locations == st.locations
        assert parsed.auto_ops == st.auto_ops
        assert dump_theory(parsed) == text

    def test_combined_round_trip(self):
        both = combine(states_theory({"x": "V"}),
                       dualize(states_theory({"e": "P"})))
        text = dump_theory(both)
        parsed = parse_theory(text)
        assert parsed.signature == both.signature
        assert parsed.axioms == both.axioms
        assert dump_theory(parsed) == text

    def test_dual_dump_round_trip(self):
        ex = dualize(states_theory({"e": "P"}))
        assert dump_theory(parse_theory(dump_theory(ex))) == dump_theory(ex)


class TestTheoryFromConfig:
    def test_states_only(self):
        config = parse_model_config("type V = {0,1}\nlocation x : V\n")
        assert theory_from_config(config).flavor == "states"

    def test_exceptions_only(self):
        config = parse_model_config("type P = {0,1}\nexception e : P\n")
        theory = theory_from_config(config)
        assert theory.flavor == "exceptions"
        assert "tag_e" in theory.signature

    def test_both(self):
        config = parse_model_config(
            "type V = {0,1}\nlocation x : V\nexception e : V\n")
        assert theory_from_config(config).flavor == "combined"

    def test_neither(self):
        config = parse_model_config("type V = {0,1}\n")
        with pytest.raises(TheoryError):
            theory_from_config(config)
