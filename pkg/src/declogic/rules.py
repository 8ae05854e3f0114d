"""Inference rules of the decorated equational logic.

Each rule validates one proof step: the conclusion must match the
rule's schema against the premises up to the canonical form (built-in
composition reassociated, identities dropped), and the rule's
decoration side conditions must hold.  Side conditions are stated on
inferred decorations, which are upper bounds, so checking is
conservative: a rejected step is never semantically wrong to reject,
and every accepted step is sound (the probe suite cross-checks this
against the finite-model oracle).

Substitution and replacement are asymmetric on weak equations: an
extra inner factor is harmless (it runs first on equal inputs), but an
outer factor may only be attached to a weak equation when it cannot
observe the difference the weak equation permits — state reads after a
states-weak equation, exception inspection after an exceptions-weak
equation.  The congruence and projection/injection rules carry the
matching conditions on each axis, plus the image of those conditions
under the state/exception duality so that dualizing a valid script
yields a valid script.
"""

from __future__ import annotations

from .terms import (
    Absurd,
    Bang,
    CaseSeq,
    Comp,
    DecoratedTerm,
    Equation,
    Id,
    Inj1,
    Inj2,
    Mode,
    PairSeq,
    Proj1,
    Proj2,
    canonical_key,
    chain_factors,
    compose_chain,
)
from .types import EMPTY_T, UNIT_T


class RuleError(Exception):
    pass


class UnknownRule(RuleError):
    pass


class SideConditionViolated(RuleError):
    pass


class PremiseShapeMismatch(RuleError):
    pass


def _same(a: DecoratedTerm, b: DecoratedTerm) -> bool:
    return canonical_key(a) == canonical_key(b)


def _shape(condition: bool, message: str) -> None:
    if not condition:
        raise PremiseShapeMismatch(message)


def _side(condition: bool, message: str) -> None:
    if not condition:
        raise SideConditionViolated(message)


def _count(premises, n: int, rule: str) -> None:
    _shape(len(premises) == n,
           f"{rule} takes {n} premise(s), got {len(premises)}")


def _split_precompose(whole: DecoratedTerm, part: DecoratedTerm):
    """If whole = part . h up to canonical form, return h, else None."""
    wchain = chain_factors(whole)
    pchain = chain_factors(part)
    cut = len(wchain) - len(pchain)
    if cut < 0:
        return None
    for w, p in zip(wchain[cut:], pchain):
        if not _same(w, p):
            return None
    return compose_chain(wchain[:cut], whole.source)


def _split_postcompose(whole: DecoratedTerm, part: DecoratedTerm):
    """If whole = h . part up to canonical form, return h, else None."""
    wchain = chain_factors(whole)
    pchain = chain_factors(part)
    cut = len(pchain)
    if cut > len(wchain):
        return None
    for w, p in zip(wchain[:cut], pchain):
        if not _same(w, p):
            return None
    return compose_chain(wchain[cut:], part.target)


def _check_refl(conclusion, premises, theory):
    _count(premises, 0, "refl")
    _shape(_same(conclusion.lhs, conclusion.rhs),
           "refl needs both sides identical up to canonical form")


def _check_sym(conclusion, premises, theory):
    _count(premises, 1, "sym")
    (p,) = premises
    _shape(p.mode is conclusion.mode, "sym keeps the mode")
    _shape(_same(conclusion.lhs, p.rhs) and _same(conclusion.rhs, p.lhs),
           "sym must swap the premise's sides")


def _check_trans(conclusion, premises, theory):
    _count(premises, 2, "trans")
    p1, p2 = premises
    _shape(p1.mode is conclusion.mode and p2.mode is conclusion.mode,
           "trans keeps the mode (convert with strong-to-weak first)")
    _shape(_same(p1.rhs, p2.lhs), "trans premises must share the middle term")
    _shape(_same(conclusion.lhs, p1.lhs) and _same(conclusion.rhs, p2.rhs),
           "trans conclusion must join the outer sides")


def _check_strong_to_weak(conclusion, premises, theory):
    _count(premises, 1, "strong-to-weak")
    (p,) = premises
    _shape(p.mode is Mode.STRONG and conclusion.mode is Mode.WEAK,
           "strong-to-weak goes from a strong premise to a weak conclusion")
    _shape(_same(conclusion.lhs, p.lhs) and _same(conclusion.rhs, p.rhs),
           "strong-to-weak keeps both sides")


def _check_subs(conclusion, premises, theory):
    _count(premises, 1, "subs")
    (p,) = premises
    _shape(p.mode is conclusion.mode, "subs keeps the mode")
    h_l = _split_precompose(conclusion.lhs, p.lhs)
    h_r = _split_precompose(conclusion.rhs, p.rhs)
    _shape(h_l is not None and h_r is not None,
           "subs conclusion must precompose the same term on both sides")
    _shape(_same(h_l, h_r), "subs must precompose the same term on both sides")
    if conclusion.mode is Mode.WEAK:
        _side(h_l.decoration.exc == 0,
              "weak substitution needs an exception-free inner term")


def _check_repl(conclusion, premises, theory):
    _count(premises, 1, "repl")
    (p,) = premises
    _shape(p.mode is conclusion.mode, "repl keeps the mode")
    h_l = _split_postcompose(conclusion.lhs, p.lhs)
    h_r = _split_postcompose(conclusion.rhs, p.rhs)
    _shape(h_l is not None and h_r is not None,
           "repl conclusion must postcompose the same term on both sides")
    _shape(_same(h_l, h_r), "repl must postcompose the same term on both sides")
    if conclusion.mode is Mode.WEAK:
        _side(h_l.decoration.state == 0,
              "weak replacement needs a state-blind outer term")


def _check_effect(conclusion, premises, theory):
    _count(premises, 1, "effect")
    (p,) = premises
    _shape(p.mode is Mode.WEAK and conclusion.mode is Mode.STRONG,
           "effect upgrades a weak premise to a strong conclusion")
    _shape(_same(conclusion.lhs, p.lhs) and _same(conclusion.rhs, p.rhs),
           "effect keeps both sides")
    for side in (conclusion.lhs, conclusion.rhs):
        d = side.decoration
        _side(d.state <= 1 and d.exc <= 1,
              f"effect needs both sides at decoration (1,1) or below, got {d}")


def _obs_family(rule, f, g):
    """Required weak premises for one observational rule instance."""
    if rule.direction == "states":
        if f.target == UNIT_T:
            return [(Comp(o, f), Comp(o, g)) for o in rule.observers]
        wrap_f = Comp(Bang(f.target), f)
        wrap_g = Comp(Bang(g.target), g)
        return [(f, g)] + [(Comp(o, wrap_f), Comp(o, wrap_g))
                           for o in rule.observers]
    if f.source == EMPTY_T:
        return [(Comp(f, c), Comp(g, c)) for c in rule.observers]
    wrap_f = Comp(f, Absurd(f.source))
    wrap_g = Comp(g, Absurd(g.source))
    return [(f, g)] + [(Comp(wrap_f, c), Comp(wrap_g, c))
                       for c in rule.observers]


def _check_obs(conclusion, premises, theory):
    _shape(conclusion.mode is Mode.STRONG, "obs concludes a strong equation")
    _shape(all(p.mode is Mode.WEAK for p in premises),
           "obs premises must all be weak")
    f, g = conclusion.lhs, conclusion.rhs
    given = sorted((canonical_key(p.lhs), canonical_key(p.rhs))
                   for p in premises)
    last_error = "the theory has no observational rule"
    for rule in theory.obs_rules:
        required = _obs_family(rule, f, g)
        wanted = sorted((canonical_key(a), canonical_key(b))
                        for a, b in required)
        if given != wanted:
            last_error = (f"premises do not cover the {rule.direction} "
                          f"observer family exactly")
            continue
        if rule.direction == "states":
            _side(f.decoration.exc == 0 and g.decoration.exc == 0,
                  "state observations need exception-free sides")
        else:
            _side(f.decoration.state == 0 and g.decoration.state == 0,
                  "exception observations need state-blind sides")
        return
    raise PremiseShapeMismatch(last_error)


def _single_factor(term, node_type, what):
    chain = chain_factors(term)
    _shape(len(chain) == 1 and isinstance(chain[0], node_type),
           f"expected {what} on its own")
    return chain[0]


def _check_pair_cong(conclusion, premises, theory):
    _count(premises, 2, "pair-cong")
    p1, p2 = premises
    lhs = _single_factor(conclusion.lhs, PairSeq, "a pairing")
    rhs = _single_factor(conclusion.rhs, PairSeq, "a pairing")
    f, g = lhs.first, lhs.second
    f2, g2 = rhs.first, rhs.second
    _shape(_same(p1.lhs, f) and _same(p1.rhs, f2),
           "first premise must relate the first components")
    _shape(_same(p2.lhs, g) and _same(p2.rhs, g2),
           "second premise must relate the second components")
    if conclusion.mode is Mode.STRONG:
        _shape(p1.mode is Mode.STRONG and p2.mode is Mode.STRONG,
               "a strong pairing congruence needs strong premises")
        return
    if p1.mode is Mode.WEAK:
        ok = ((g.decoration.state == 0 and g2.decoration.state == 0)
              or (f.decoration.state <= 1 and f2.decoration.state <= 1))
        _side(ok, "a weak first premise needs state-blind second components "
                  "or state-preserving first components")


def _check_case_cong(conclusion, premises, theory):
    _count(premises, 2, "case-cong")
    p1, p2 = premises
    lhs = _single_factor(conclusion.lhs, CaseSeq, "a case split")
    rhs = _single_factor(conclusion.rhs, CaseSeq, "a case split")
    f, g = lhs.on_left, lhs.on_right
    f2, g2 = rhs.on_left, rhs.on_right
    _shape(_same(p1.lhs, f) and _same(p1.rhs, f2),
           "first premise must relate the left branches")
    _shape(_same(p2.lhs, g) and _same(p2.rhs, g2),
           "second premise must relate the right branches")
    if conclusion.mode is Mode.STRONG:
        _shape(p1.mode is Mode.STRONG and p2.mode is Mode.STRONG,
               "a strong case congruence needs strong premises")
        return
    if p1.mode is Mode.STRONG and p2.mode is Mode.STRONG:
        return
    ok = ((g.decoration.exc == 0 and g2.decoration.exc == 0)
          or (f.decoration.exc <= 1 and f2.decoration.exc <= 1)
          or (p1.mode is Mode.STRONG
              and g.decoration.state == 0 and g2.decoration.state == 0))
    _side(ok, "a weak case congruence needs raise-free right branches, "
              "catch-free left branches, or strongly equal left branches "
              "with state-blind right branches")


def _check_unit_weak(conclusion, premises, theory):
    _count(premises, 0, "unit-weak")
    _shape(conclusion.mode is Mode.WEAK, "unit-weak concludes a weak equation")
    f, g = conclusion.lhs, conclusion.rhs
    _shape(f.target == UNIT_T and g.target == UNIT_T,
           "unit-weak applies to terms into the unit type")
    _shape(f.source == g.source, "unit-weak needs parallel sides")
    _side(f.decoration.exc == 0 and g.decoration.exc == 0,
          "unit-weak needs exception-free sides")


def _check_empty_weak(conclusion, premises, theory):
    _count(premises, 0, "empty-weak")
    _shape(conclusion.mode is Mode.WEAK, "empty-weak concludes a weak equation")
    f, g = conclusion.lhs, conclusion.rhs
    _shape(f.source == EMPTY_T and g.source == EMPTY_T,
           "empty-weak applies to terms out of the empty type")
    _shape(f.target == g.target, "empty-weak needs parallel sides")
    _side(f.decoration.state == 0 and g.decoration.state == 0,
          "empty-weak needs state-blind sides")


def _check_pair_proj_1(conclusion, premises, theory):
    _count(premises, 0, "pair-proj-1")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) == 2 and isinstance(chain[0], PairSeq)
           and isinstance(chain[1], Proj1),
           "left side must be a first projection of a pairing")
    f, g = chain[0].first, chain[0].second
    _shape(_same(conclusion.rhs, f),
           "right side must be the pairing's first component")
    _side(g.decoration.exc == 0,
          "the discarded component must not raise")
    if conclusion.mode is Mode.STRONG:
        _side(g.decoration.state <= 1,
              "strongly, the discarded component must preserve the state")
        _side(f.decoration.exc <= 1,
              "strongly, the kept component must not catch")


def _check_pair_proj_2(conclusion, premises, theory):
    _count(premises, 0, "pair-proj-2")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) == 2 and isinstance(chain[0], PairSeq)
           and isinstance(chain[1], Proj2),
           "left side must be a second projection of a pairing")
    f, g = chain[0].first, chain[0].second
    _shape(_same(conclusion.rhs, g),
           "right side must be the pairing's second component")
    _side(f.decoration.exc == 0, "the first component must not raise")
    if conclusion.mode is Mode.STRONG:
        _side(f.decoration.state <= 1,
              "strongly, the first component must preserve the state")
        _side(g.decoration.exc <= 1,
              "strongly, the kept component must not catch")
    else:
        _side(f.decoration.state <= 1 or g.decoration.state == 0,
              "the first component must preserve the state, or the second "
              "must be state-blind")


def _check_case_inj_1(conclusion, premises, theory):
    _count(premises, 0, "case-inj-1")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) == 2 and isinstance(chain[0], Inj1)
           and isinstance(chain[1], CaseSeq),
           "left side must be a case split after a left injection")
    f, g = chain[1].on_left, chain[1].on_right
    _shape(_same(conclusion.rhs, f),
           "right side must be the case split's left branch")
    _side(g.decoration.state == 0, "the skipped branch must be state-blind")
    if conclusion.mode is Mode.STRONG:
        _side(g.decoration.exc <= 1, "strongly, the skipped branch must not catch")
        _side(f.decoration.state <= 1,
              "strongly, the kept branch must preserve the state")


def _check_case_inj_2(conclusion, premises, theory):
    _count(premises, 0, "case-inj-2")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) == 2 and isinstance(chain[0], Inj2)
           and isinstance(chain[1], CaseSeq),
           "left side must be a case split after a right injection")
    f, g = chain[1].on_left, chain[1].on_right
    _shape(_same(conclusion.rhs, g),
           "right side must be the case split's right branch")
    _side(f.decoration.state == 0, "the left branch must be state-blind")
    if conclusion.mode is Mode.STRONG:
        _side(f.decoration.exc <= 1, "strongly, the left branch must not catch")
        _side(g.decoration.state <= 1,
              "strongly, the kept branch must preserve the state")
    else:
        _side(f.decoration.exc <= 1 or g.decoration.exc == 0,
              "the left branch must not catch, or the right branch must "
              "not raise")


def _check_pair_bang_2(conclusion, premises, theory):
    _count(premises, 0, "pair-bang-2")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) == 2 and isinstance(chain[0], PairSeq)
           and isinstance(chain[1], Proj2),
           "left side must be a second projection of a pairing")
    pair, proj = chain
    _shape(isinstance(pair.second, Bang),
           "the pairing's second component must discard into the unit")
    a = pair.first
    _shape(a.target == UNIT_T, "the kept component must land in the unit type")
    _shape(proj.left == UNIT_T and proj.right == UNIT_T,
           "the projection must be at unit-by-unit")
    _shape(_same(conclusion.rhs, a),
           "right side must be the pairing's first component")
    _side(a.decoration.exc <= 1, "the kept component must not catch")


def _check_case_absurd_2(conclusion, premises, theory):
    _count(premises, 0, "case-absurd-2")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) == 2 and isinstance(chain[0], Inj2)
           and isinstance(chain[1], CaseSeq),
           "left side must be a case split after a right injection")
    inj, case = chain
    _shape(isinstance(case.on_right, Absurd),
           "the case split's right branch must come from the empty type")
    a = case.on_left
    _shape(a.source == EMPTY_T, "the kept branch must start at the empty type")
    _shape(inj.left == EMPTY_T and inj.right == EMPTY_T,
           "the injection must be at empty-by-empty")
    _shape(_same(conclusion.rhs, a),
           "right side must be the case split's left branch")
    _side(a.decoration.state <= 1, "the kept branch must preserve the state")


def _check_pair_fuse_2(conclusion, premises, theory):
    _count(premises, 0, "pair-fuse-2")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) >= 2 and isinstance(chain[0], PairSeq)
           and isinstance(chain[1], Proj2),
           "left side must postcompose onto a second projection of a pairing")
    pair = chain[0]
    f, g = pair.first, pair.second
    h = compose_chain(chain[2:], chain[1].right)
    expected = Comp(Proj2(f.target, h.target),
                    PairSeq(f, Comp(h, g)))
    _shape(_same(conclusion.rhs, expected),
           "right side must move the outer term inside the second component")
    if conclusion.mode is Mode.STRONG:
        _side(h.decoration.exc <= 1,
              "strongly, the moved term must not catch")
    else:
        _side(h.decoration.exc <= 1 or f.decoration.exc == 0,
              "the moved term must not catch, or the first component must "
              "not raise")


def _check_case_fuse_2(conclusion, premises, theory):
    _count(premises, 0, "case-fuse-2")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) >= 2 and isinstance(chain[-1], CaseSeq)
           and isinstance(chain[-2], Inj2),
           "left side must precompose into a case split after a right "
           "injection")
    case = chain[-1]
    f, g = case.on_left, case.on_right
    h = compose_chain(chain[:-2], conclusion.lhs.source)
    expected = Comp(CaseSeq(f, Comp(g, h)),
                    Inj2(f.source, h.source))
    _shape(_same(conclusion.rhs, expected),
           "right side must move the inner term inside the right branch")
    if conclusion.mode is Mode.STRONG:
        _side(h.decoration.state <= 1,
              "strongly, the moved term must preserve the state")
    else:
        _side(h.decoration.state <= 1 or f.decoration.state == 0,
              "the moved term must preserve the state, or the left branch "
              "must be state-blind")


def _check_pair_comp(conclusion, premises, theory):
    _count(premises, 0, "pair-comp")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) >= 1 and isinstance(chain[-1], PairSeq),
           "left side must precompose into a pairing")
    pair = chain[-1]
    f, g = pair.first, pair.second
    h = compose_chain(chain[:-1], conclusion.lhs.source)
    expected = PairSeq(Comp(f, h), Comp(g, h))
    _shape(_same(conclusion.rhs, expected),
           "right side must push the inner term into both components")
    d = h.decoration
    _side(d.exc == 0, "the shared inner term must not raise")
    _side(d.state <= 1, "the shared inner term must preserve the state")
    _side(d.state == 0 or f.decoration.state <= 1,
          "the shared inner term must be state-blind, or the first "
          "component state-preserving")


def _check_case_comp(conclusion, premises, theory):
    _count(premises, 0, "case-comp")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) >= 1 and isinstance(chain[0], CaseSeq),
           "left side must postcompose onto a case split")
    case = chain[0]
    f, g = case.on_left, case.on_right
    h = compose_chain(chain[1:], case.target)
    expected = CaseSeq(Comp(h, f), Comp(h, g))
    _shape(_same(conclusion.rhs, expected),
           "right side must push the outer term into both branches")
    d = h.decoration
    _side(d.state == 0, "the shared outer term must be state-blind")
    _side(d.exc <= 1, "the shared outer term must not catch")
    _side(d.exc == 0 or f.decoration.exc <= 1,
          "the shared outer term must not raise, or the left branch must "
          "not catch")


RULES = {
    "refl": _check_refl,
    "sym": _check_sym,
    "trans": _check_trans,
    "strong-to-weak": _check_strong_to_weak,
    "subs": _check_subs,
    "repl": _check_repl,
    "effect": _check_effect,
    "obs": _check_obs,
    "pair-cong": _check_pair_cong,
    "case-cong": _check_case_cong,
    "unit-weak": _check_unit_weak,
    "empty-weak": _check_empty_weak,
    "pair-proj-1": _check_pair_proj_1,
    "pair-proj-2": _check_pair_proj_2,
    "case-inj-1": _check_case_inj_1,
    "case-inj-2": _check_case_inj_2,
    "pair-bang-2": _check_pair_bang_2,
    "case-absurd-2": _check_case_absurd_2,
    "pair-fuse-2": _check_pair_fuse_2,
    "case-fuse-2": _check_case_fuse_2,
    "pair-comp": _check_pair_comp,
    "case-comp": _check_case_comp,
}

DUAL_RULE = {
    "refl": "refl",
    "sym": "sym",
    "trans": "trans",
    "axiom": "axiom",
    "strong-to-weak": "strong-to-weak",
    "subs": "repl",
    "repl": "subs",
    "effect": "effect",
    "obs": "obs",
    "pair-cong": "case-cong",
    "case-cong": "pair-cong",
    "unit-weak": "empty-weak",
    "empty-weak": "unit-weak",
    "pair-proj-1": "case-inj-1",
    "case-inj-1": "pair-proj-1",
    "pair-proj-2": "case-inj-2",
    "case-inj-2": "pair-proj-2",
    "pair-bang-2": "case-absurd-2",
    "case-absurd-2": "pair-bang-2",
    "pair-fuse-2": "case-fuse-2",
    "case-fuse-2": "pair-fuse-2",
    "pair-comp": "case-comp",
    "case-comp": "pair-comp",
}


def check_rule(rule: str, conclusion: Equation, premises: list[Equation],
               theory) -> None:
    """Raise a RuleError unless `conclusion` follows from `premises`."""
    checker = RULES.get(rule)
    if checker is None:
        raise UnknownRule(f"unknown rule {rule!r}")
    checker(conclusion, premises, theory)
