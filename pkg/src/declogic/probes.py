"""Randomized soundness probes for the inference rules.

A probe repeatedly builds a candidate proof step for one rule: random
premises that hold in a finite model by construction, and a conclusion
assembled from the rule's schema.  When the checker accepts the step,
the conclusion is re-checked against the model; a model refutation of
an accepted step is a soundness violation and means a rule's side
conditions are too weak.  Rejected and unbuildable candidates still
count toward the sample budget, they just cannot witness anything.

`UNSOUND_VARIANTS` holds deliberately broken copies of checkers, each
missing one side condition, as calibration: probing a variant over a
flavor where the dropped condition matters must find a violation
quickly, which shows the probe generator actually reaches the
dangerous corner of each rule.  A dropped condition can be vacuous in
a flavor (state conditions never bite without state), so each variant
names the flavors where detection is expected.

Premise pools mix seeded terms (readers, writers, throwers, catchers,
and their weakly-but-not-strongly equal combinations) with random
terms, bucketed by their full and by their value-only behavior tables
so that equal pairs of either strength can be drawn directly.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable

from .generate import GenerationError, random_term, type_pool
from .model import (
    Counterexample,
    FiniteModel,
    check_eq,
    enumerate_points,
    eval_term,
)
from .rules import (
    RULES,
    RuleError,
    _count,
    _obs_family,
    _same,
    _shape,
    _split_postcompose,
    _split_precompose,
    check_rule,
)
from .terms import (
    Absurd,
    Bang,
    CaseSeq,
    Comp,
    Const,
    DecoratedTerm,
    Equation,
    Id,
    Inj1,
    Inj2,
    Mode,
    PairSeq,
    Proj1,
    Proj2,
)
from .theory import Theory, lookup_op, tag_op, untag_op, update_op
from .types import EMPTY_T, UNIT_T, ObjType


@dataclass(frozen=True)
class ProbeViolation:
    """An accepted step whose conclusion the model refutes."""

    rule: str
    premises: tuple[Equation, ...]
    conclusion: Equation
    counterexample: Counterexample


@dataclass(frozen=True)
class ProbeReport:
    rule: str
    samples: int
    accepted: int
    rejected: int
    skipped: int
    violations: tuple[ProbeViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        verdict = "sound" if self.ok else f"{len(self.violations)} VIOLATION(S)"
        return (f"{self.rule}: {verdict} over {self.samples} samples "
                f"({self.accepted} accepted, {self.rejected} rejected, "
                f"{self.skipped} skipped)")


def _seed_terms(theory: Theory, model: FiniteModel) -> list[DecoratedTerm]:
    """Handcrafted pool members guaranteeing interesting buckets.

    Includes, wherever the theory supports them, pairs that are weakly
    but not strongly equal: two writers of different values, a
    read-back writer against the identity, a catcher-reverted raise
    against the identity, and write-then-throw with two different
    writes.
    """
    seeds: list[DecoratedTerm] = []
    for ty in type_pool(theory):
        seeds.append(Id(ty))
        seeds.append(Bang(ty))
        for p in enumerate_points(ty, model):
            seeds.append(Const(p, ty))
            seeds.append(Comp(Const(p, ty), Bang(ty)))
    for loc in theory.locations:
        base = theory.base_type(loc)
        look, upd = lookup_op(theory, loc), update_op(theory, loc)
        seeds += [look, upd, Comp(upd, look), Comp(look, upd)]
        for p in enumerate_points(base, model):
            seeds.append(Comp(upd, Const(p, base)))
    for exc in theory.exceptions:
        base = theory.base_type(exc)
        tag, untag = tag_op(theory, exc), untag_op(theory, exc)
        seeds += [tag, untag, Comp(untag, tag), Comp(Absurd(base), tag)]
        for p in enumerate_points(base, model):
            seeds.append(Comp(Absurd(UNIT_T), Comp(tag, Const(p, base))))
    for loc in theory.locations:
        vbase = theory.base_type(loc)
        for exc in theory.exceptions:
            ebase = theory.base_type(exc)
            epoints = enumerate_points(ebase, model)
            if not epoints:
                continue
            thrower = Comp(Absurd(UNIT_T),
                           Comp(tag_op(theory, exc), Const(epoints[0], ebase)))
            for p in enumerate_points(vbase, model):
                writer = Comp(update_op(theory, loc), Const(p, vbase))
                seeds.append(Comp(thrower, writer))
    return list(dict.fromkeys(seeds))


class ProbeContext:
    """Shared pools and behavior tables for one theory and model."""

    def __init__(self, theory: Theory, model: FiniteModel,
                 rng: random.Random, depth: int = 3,
                 randoms_per_pair: int = 10) -> None:
        self.theory = theory
        self.model = model
        self.rng = rng
        self.depth = depth
        self.randoms_per_pair = randoms_per_pair
        self.types: list[ObjType] = type_pool(theory)
        self._seeds = _seed_terms(theory, model)
        self._pools: dict[tuple, list[DecoratedTerm]] = {}
        self._strong_classes: dict[tuple, dict] = {}
        self._weak_classes: dict[tuple, dict] = {}
        self._tables: dict[DecoratedTerm, tuple] = {}
        self._pairs = [(s, t) for s in self.types for t in self.types]

    def tables(self, term: DecoratedTerm) -> tuple:
        """(full behavior key, value-only behavior key) for one term."""
        cached = self._tables.get(term)
        if cached is not None:
            return cached
        ordinary = enumerate_points(term.source, self.model)
        exceptional = self.model.exceptional_values()
        strong = []
        weak = []
        for state in self.model.states:
            for v in ordinary:
                out = eval_term(term, self.model, v, state)
                strong.append(out)
                weak.append(out.value)
            for v in exceptional:
                strong.append(eval_term(term, self.model, v, state))
        result = (tuple(strong), tuple(weak))
        self._tables[term] = result
        return result

    def pool(self, src: ObjType, tgt: ObjType) -> list[DecoratedTerm]:
        key = (src, tgt)
        pool = self._pools.get(key)
        if pool is not None:
            return pool
        members = [t for t in self._seeds
                   if t.source == src and t.target == tgt]
        for _ in range(self.randoms_per_pair):
            try:
                members.append(random_term(self.rng, self.theory, self.model,
                                           src, tgt, self.depth))
            except GenerationError:
                continue
        pool = list(dict.fromkeys(members))
        strong: dict = defaultdict(list)
        weak: dict = defaultdict(list)
        for t in pool:
            skey, wkey = self.tables(t)
            strong[skey].append(t)
            weak[wkey].append(t)
        self._pools[key] = pool
        self._strong_classes[key] = strong
        self._weak_classes[key] = weak
        return pool

    def rand(self, src: ObjType, tgt: ObjType,
             prefer_effectful: bool = False) -> DecoratedTerm | None:
        pool = self.pool(src, tgt)
        if not pool:
            return None
        if prefer_effectful:
            ranked = sorted(pool, key=lambda t: (t.decoration.state
                                                 + t.decoration.exc),
                            reverse=True)
            return self.rng.choice(ranked[:3])
        return self.rng.choice(pool)

    def some_type(self) -> ObjType:
        return self.rng.choice(self.types)

    def mode(self) -> Mode:
        return self.rng.choice((Mode.STRONG, Mode.WEAK))

    def equal_pair(self, src: ObjType, tgt: ObjType, mode: Mode):
        """Two pool members equal at `mode` in the model, else None."""
        pool = self.pool(src, tgt)
        if not pool:
            return None
        classes = (self._strong_classes if mode is Mode.STRONG
                   else self._weak_classes)[(src, tgt)]
        rich = [cls for cls in classes.values() if len(cls) >= 2]
        if rich:
            cls = self.rng.choice(rich)
            return tuple(self.rng.sample(cls, 2))
        t = self.rng.choice(pool)
        return (t, t)

    def weak_only_pair(self, src: ObjType, tgt: ObjType):
        """A weakly equal pair with different full behavior, else None."""
        self.pool(src, tgt)
        classes = list(self._weak_classes[(src, tgt)].values())
        self.rng.shuffle(classes)
        for cls in classes:
            if len(cls) < 2:
                continue
            by_strong = defaultdict(list)
            for t in cls:
                by_strong[self.tables(t)[0]].append(t)
            keys = list(by_strong)
            if len(keys) >= 2:
                k1, k2 = self.rng.sample(keys, 2)
                return (self.rng.choice(by_strong[k1]),
                        self.rng.choice(by_strong[k2]))
        return None

    def pair_anywhere(self, mode: Mode, prefer_weak_only: bool = False):
        """(f, g, src, tgt) equal at `mode` over randomly drawn types."""
        if (prefer_weak_only and mode is Mode.WEAK
                and self.rng.random() < 0.7):
            order = list(self._pairs)
            self.rng.shuffle(order)
            for src, tgt in order:
                found = self.weak_only_pair(src, tgt)
                if found is not None:
                    return (*found, src, tgt)
        src, tgt = self.rng.choice(self._pairs)
        found = self.equal_pair(src, tgt, mode)
        if found is None:
            return None
        return (*found, src, tgt)


# ---------------------------------------------------------------------------
# Per-rule candidate samplers


def _s_refl(ctx):
    a, b = ctx.some_type(), ctx.some_type()
    t = ctx.rand(a, b)
    if t is None:
        return None
    return [], Equation(ctx.mode(), t, t)


def _s_sym(ctx):
    mode = ctx.mode()
    got = ctx.pair_anywhere(mode)
    if got is None:
        return None
    f, g, _, _ = got
    return [Equation(mode, f, g)], Equation(mode, g, f)


def _s_trans(ctx):
    mode = ctx.mode()
    src, tgt = ctx.rng.choice(ctx._pairs)
    pool = ctx.pool(src, tgt)
    if not pool:
        return None
    classes = (ctx._strong_classes if mode is Mode.STRONG
               else ctx._weak_classes)[(src, tgt)]
    cls = ctx.rng.choice(list(classes.values()))
    f, g, h = (ctx.rng.choice(cls) for _ in range(3))
    return ([Equation(mode, f, g), Equation(mode, g, h)],
            Equation(mode, f, h))


def _s_strong_to_weak(ctx):
    got = ctx.pair_anywhere(Mode.STRONG)
    if got is None:
        return None
    f, g, _, _ = got
    return [Equation(Mode.STRONG, f, g)], Equation(Mode.WEAK, f, g)


def _s_subs(ctx):
    mode = ctx.mode()
    got = ctx.pair_anywhere(mode, prefer_weak_only=True)
    if got is None:
        return None
    f, g, src, _ = got
    inner_src = ctx.some_type()
    h = ctx.rand(inner_src, src, prefer_effectful=ctx.rng.random() < 0.5)
    if h is None:
        return None
    return ([Equation(mode, f, g)],
            Equation(mode, Comp(f, h), Comp(g, h)))


def _s_repl(ctx):
    mode = ctx.mode()
    got = ctx.pair_anywhere(mode, prefer_weak_only=True)
    if got is None:
        return None
    f, g, _, tgt = got
    outer_tgt = ctx.some_type()
    h = ctx.rand(tgt, outer_tgt, prefer_effectful=ctx.rng.random() < 0.5)
    if h is None:
        return None
    return ([Equation(mode, f, g)],
            Equation(mode, Comp(h, f), Comp(h, g)))


def _s_effect(ctx):
    got = ctx.pair_anywhere(Mode.WEAK, prefer_weak_only=True)
    if got is None:
        return None
    f, g, _, _ = got
    return [Equation(Mode.WEAK, f, g)], Equation(Mode.STRONG, f, g)


def _s_obs(ctx):
    if not ctx.theory.obs_rules:
        return None
    rule = ctx.rng.choice(ctx.theory.obs_rules)
    got = ctx.pair_anywhere(Mode.WEAK, prefer_weak_only=True)
    if got is None:
        return None
    f, g, _, _ = got
    premises = [Equation(Mode.WEAK, l, r) for l, r in _obs_family(rule, f, g)]
    return premises, Equation(Mode.STRONG, f, g)


def _s_pair_cong(ctx):
    a, b, c = ctx.some_type(), ctx.some_type(), ctx.some_type()
    m1, m2 = ctx.mode(), ctx.mode()
    first = ctx.equal_pair(a, b, m1)
    second = ctx.equal_pair(a, c, m2)
    if first is None or second is None:
        return None
    f, f2 = first
    g, g2 = second
    both_strong = m1 is Mode.STRONG and m2 is Mode.STRONG
    cmode = Mode.STRONG if both_strong and ctx.rng.random() < 0.7 else Mode.WEAK
    return ([Equation(m1, f, f2), Equation(m2, g, g2)],
            Equation(cmode, PairSeq(f, g), PairSeq(f2, g2)))


def _s_case_cong(ctx):
    a, b, c = ctx.some_type(), ctx.some_type(), ctx.some_type()
    m1, m2 = ctx.mode(), ctx.mode()
    first = ctx.equal_pair(a, c, m1)
    second = ctx.equal_pair(b, c, m2)
    if first is None or second is None:
        return None
    f, f2 = first
    g, g2 = second
    both_strong = m1 is Mode.STRONG and m2 is Mode.STRONG
    cmode = Mode.STRONG if both_strong and ctx.rng.random() < 0.7 else Mode.WEAK
    return ([Equation(m1, f, f2), Equation(m2, g, g2)],
            Equation(cmode, CaseSeq(f, g), CaseSeq(f2, g2)))


def _s_unit_weak(ctx):
    a = ctx.some_type()
    f, g = ctx.rand(a, UNIT_T), ctx.rand(a, UNIT_T)
    if f is None or g is None:
        return None
    return [], Equation(Mode.WEAK, f, g)


def _s_empty_weak(ctx):
    if EMPTY_T not in ctx.types:
        return None
    b = ctx.some_type()
    f, g = ctx.rand(EMPTY_T, b), ctx.rand(EMPTY_T, b)
    if f is None or g is None:
        return None
    return [], Equation(Mode.WEAK, f, g)


def _pick_fg(ctx, prefer_effectful_second=True):
    a, b, c = ctx.some_type(), ctx.some_type(), ctx.some_type()
    f = ctx.rand(a, b)
    g = ctx.rand(a, c, prefer_effectful=(prefer_effectful_second
                                         and ctx.rng.random() < 0.5))
    if f is None or g is None:
        return None
    return f, g


def _s_pair_proj_1(ctx):
    got = _pick_fg(ctx)
    if got is None:
        return None
    f, g = got
    lhs = Comp(Proj1(f.target, g.target), PairSeq(f, g))
    return [], Equation(ctx.mode(), lhs, f)


def _s_pair_proj_2(ctx):
    got = _pick_fg(ctx)
    if got is None:
        return None
    g, f = got
    lhs = Comp(Proj2(f.target, g.target), PairSeq(f, g))
    return [], Equation(ctx.mode(), lhs, g)


def _s_case_inj_1(ctx):
    a, b, c = ctx.some_type(), ctx.some_type(), ctx.some_type()
    f = ctx.rand(a, c)
    g = ctx.rand(b, c, prefer_effectful=ctx.rng.random() < 0.5)
    if f is None or g is None:
        return None
    lhs = Comp(CaseSeq(f, g), Inj1(a, b))
    return [], Equation(ctx.mode(), lhs, f)


def _s_case_inj_2(ctx):
    a, b, c = ctx.some_type(), ctx.some_type(), ctx.some_type()
    f = ctx.rand(a, c, prefer_effectful=ctx.rng.random() < 0.5)
    g = ctx.rand(b, c)
    if f is None or g is None:
        return None
    lhs = Comp(CaseSeq(f, g), Inj2(a, b))
    return [], Equation(ctx.mode(), lhs, g)


def _s_pair_bang_2(ctx):
    a = ctx.some_type()
    kept = ctx.rand(a, UNIT_T, prefer_effectful=ctx.rng.random() < 0.5)
    if kept is None:
        return None
    lhs = Comp(Proj2(UNIT_T, UNIT_T), PairSeq(kept, Bang(a)))
    return [], Equation(ctx.mode(), lhs, kept)


def _s_case_absurd_2(ctx):
    if EMPTY_T not in ctx.types:
        return None
    b = ctx.some_type()
    kept = ctx.rand(EMPTY_T, b, prefer_effectful=ctx.rng.random() < 0.5)
    if kept is None:
        return None
    lhs = Comp(CaseSeq(kept, Absurd(b)), Inj2(EMPTY_T, EMPTY_T))
    return [], Equation(ctx.mode(), lhs, kept)


def _s_pair_fuse_2(ctx):
    a, b, c, d = (ctx.some_type() for _ in range(4))
    f = ctx.rand(a, b, prefer_effectful=ctx.rng.random() < 0.5)
    g = ctx.rand(a, c)
    h = ctx.rand(c, d, prefer_effectful=ctx.rng.random() < 0.5)
    if f is None or g is None or h is None:
        return None
    lhs = Comp(h, Comp(Proj2(b, c), PairSeq(f, g)))
    rhs = Comp(Proj2(b, d), PairSeq(f, Comp(h, g)))
    return [], Equation(ctx.mode(), lhs, rhs)


def _s_case_fuse_2(ctx):
    a, b, c, d = (ctx.some_type() for _ in range(4))
    f = ctx.rand(b, c, prefer_effectful=ctx.rng.random() < 0.5)
    g = ctx.rand(a, c)
    h = ctx.rand(d, a, prefer_effectful=ctx.rng.random() < 0.5)
    if f is None or g is None or h is None:
        return None
    lhs = Comp(CaseSeq(f, g), Comp(Inj2(b, a), h))
    rhs = Comp(CaseSeq(f, Comp(g, h)), Inj2(b, d))
    return [], Equation(ctx.mode(), lhs, rhs)


def _s_pair_comp(ctx):
    a, b, c, d = (ctx.some_type() for _ in range(4))
    f = ctx.rand(a, b, prefer_effectful=ctx.rng.random() < 0.5)
    g = ctx.rand(a, c)
    h = ctx.rand(d, a, prefer_effectful=ctx.rng.random() < 0.5)
    if f is None or g is None or h is None:
        return None
    lhs = Comp(PairSeq(f, g), h)
    rhs = PairSeq(Comp(f, h), Comp(g, h))
    return [], Equation(ctx.mode(), lhs, rhs)


def _s_case_comp(ctx):
    a, b, c, d = (ctx.some_type() for _ in range(4))
    f = ctx.rand(a, c, prefer_effectful=ctx.rng.random() < 0.5)
    g = ctx.rand(b, c)
    h = ctx.rand(c, d, prefer_effectful=ctx.rng.random() < 0.5)
    if f is None or g is None or h is None:
        return None
    lhs = Comp(h, CaseSeq(f, g))
    rhs = CaseSeq(Comp(h, f), Comp(h, g))
    return [], Equation(ctx.mode(), lhs, rhs)


_SAMPLERS: dict[str, Callable] = {
    "refl": _s_refl,
    "sym": _s_sym,
    "trans": _s_trans,
    "strong-to-weak": _s_strong_to_weak,
    "subs": _s_subs,
    "repl": _s_repl,
    "effect": _s_effect,
    "obs": _s_obs,
    "pair-cong": _s_pair_cong,
    "case-cong": _s_case_cong,
    "unit-weak": _s_unit_weak,
    "empty-weak": _s_empty_weak,
    "pair-proj-1": _s_pair_proj_1,
    "pair-proj-2": _s_pair_proj_2,
    "case-inj-1": _s_case_inj_1,
    "case-inj-2": _s_case_inj_2,
    "pair-bang-2": _s_pair_bang_2,
    "case-absurd-2": _s_case_absurd_2,
    "pair-fuse-2": _s_pair_fuse_2,
    "case-fuse-2": _s_case_fuse_2,
    "pair-comp": _s_pair_comp,
    "case-comp": _s_case_comp,
}

assert set(_SAMPLERS) == set(RULES)


def soundness_probe(rule: str, theory: Theory, model: FiniteModel,
                    samples: int = 200, seed: int = 0,
                    checker: Callable | None = None,
                    context: ProbeContext | None = None) -> ProbeReport:
    """Probe one rule; `checker` overrides the real one for variants."""
    sampler = _SAMPLERS.get(rule)
    if sampler is None:
        raise ValueError(f"no sampler for rule {rule!r}")
    ctx = context or ProbeContext(theory, model,
                                  random.Random(f"{seed}:{rule}:{theory.flavor}"))
    accepted = rejected = skipped = 0
    violations: list[ProbeViolation] = []
    for _ in range(samples):
        candidate = sampler(ctx)
        if candidate is None:
            skipped += 1
            continue
        premises, conclusion = candidate
        if any(check_eq(p.mode, p.lhs, p.rhs, model) is not None
               for p in premises):
            skipped += 1
            continue
        try:
            if checker is not None:
                checker(conclusion, premises, theory)
            else:
                check_rule(rule, conclusion, premises, theory)
        except RuleError:
            rejected += 1
            continue
        accepted += 1
        cex = check_eq(conclusion.mode, conclusion.lhs, conclusion.rhs, model)
        if cex is not None:
            violations.append(ProbeViolation(rule, tuple(premises),
                                             conclusion, cex))
    return ProbeReport(rule, samples, accepted, rejected, skipped,
                       tuple(violations))


def probe_all(theory: Theory, model: FiniteModel, samples: int = 200,
              seed: int = 0) -> dict[str, ProbeReport]:
    """Probe every rule over one shared pool context."""
    ctx = ProbeContext(theory, model,
                       random.Random(f"{seed}:{theory.flavor}"))
    return {rule: soundness_probe(rule, theory, model, samples=samples,
                                  seed=seed, context=ctx)
            for rule in RULES}


# ---------------------------------------------------------------------------
# Deliberately broken checkers, for calibrating the probes


def _repl_weak_any_h(conclusion, premises, theory):
    """repl without the state-blindness requirement on the outer term."""
    _count(premises, 1, "repl")
    (p,) = premises
    _shape(p.mode is conclusion.mode, "repl keeps the mode")
    h_l = _split_postcompose(conclusion.lhs, p.lhs)
    h_r = _split_postcompose(conclusion.rhs, p.rhs)
    _shape(h_l is not None and h_r is not None,
           "repl conclusion must postcompose the same term on both sides")
    _shape(_same(h_l, h_r), "repl must postcompose the same term on both sides")


def _subs_weak_any_h(conclusion, premises, theory):
    """subs without the exception-freedom requirement on the inner term."""
    _count(premises, 1, "subs")
    (p,) = premises
    _shape(p.mode is conclusion.mode, "subs keeps the mode")
    h_l = _split_precompose(conclusion.lhs, p.lhs)
    h_r = _split_precompose(conclusion.rhs, p.rhs)
    _shape(h_l is not None and h_r is not None,
           "subs conclusion must precompose the same term on both sides")
    _shape(_same(h_l, h_r), "subs must precompose the same term on both sides")


def _effect_any_decoration(conclusion, premises, theory):
    """effect without the (1,1) bound on the sides."""
    _count(premises, 1, "effect")
    (p,) = premises
    _shape(p.mode is Mode.WEAK and conclusion.mode is Mode.STRONG,
           "effect upgrades a weak premise to a strong conclusion")
    _shape(_same(conclusion.lhs, p.lhs) and _same(conclusion.rhs, p.rhs),
           "effect keeps both sides")


def _pair_proj_1_keeps_raising(conclusion, premises, theory):
    """pair-proj-1 without the raise-freedom of the discarded component."""
    from .terms import chain_factors

    _count(premises, 0, "pair-proj-1")
    chain = chain_factors(conclusion.lhs)
    _shape(len(chain) == 2 and isinstance(chain[0], PairSeq)
           and isinstance(chain[1], Proj1),
           "left side must be a first projection of a pairing")
    f, g = chain[0].first, chain[0].second
    _shape(_same(conclusion.rhs, f),
           "right side must be the pairing's first component")
    if conclusion.mode is Mode.STRONG:
        _shape(g.decoration.state <= 1,
               "strongly, the discarded component must preserve the state")


def _obs_ignores_purity(conclusion, premises, theory):
    """obs without the cross-axis purity conditions on the sides."""
    from .terms import canonical_key
    from .rules import PremiseShapeMismatch

    _shape(conclusion.mode is Mode.STRONG, "obs concludes a strong equation")
    _shape(all(p.mode is Mode.WEAK for p in premises),
           "obs premises must all be weak")
    f, g = conclusion.lhs, conclusion.rhs
    given = sorted((canonical_key(p.lhs), canonical_key(p.rhs))
                   for p in premises)
    for rule in theory.obs_rules:
        required = _obs_family(rule, f, g)
        wanted = sorted((canonical_key(a), canonical_key(b))
                        for a, b in required)
        if given == wanted:
            return
    raise PremiseShapeMismatch("premises do not cover an observer family")


@dataclass(frozen=True)
class ProbeVariant:
    """A checker with one condition dropped, and where that matters."""

    rule: str
    flavors: tuple[str, ...]
    note: str
    checker: Callable = field(compare=False)


UNSOUND_VARIANTS: dict[str, ProbeVariant] = {
    "repl_weak_any_h": ProbeVariant(
        "repl", ("states", "combined"),
        "a state-reading outer term sees the state drift a weak "
        "equation permits",
        _repl_weak_any_h),
    "subs_weak_any_h": ProbeVariant(
        "subs", ("exceptions", "combined"),
        "a raising inner term feeds exceptional inputs a weak equation "
        "says nothing about",
        _subs_weak_any_h),
    "effect_any_decoration": ProbeVariant(
        "effect", ("states", "exceptions", "combined"),
        "modifiers and catchers can differ invisibly to weak equality",
        _effect_any_decoration),
    "pair_proj_1_keeps_raising": ProbeVariant(
        "pair-proj-1", ("exceptions", "combined"),
        "a raising discarded component aborts the pairing the right "
        "side never runs",
        _pair_proj_1_keeps_raising),
    "obs_ignores_purity": ProbeVariant(
        "obs", ("combined",),
        "state observers cannot see past a raise, so raising sides "
        "smuggle state differences through the family",
        _obs_ignores_purity),
}


def probe_variant(name: str, theory: Theory, model: FiniteModel,
                  samples: int = 200, seed: int = 0) -> ProbeReport:
    """Probe a deliberately broken checker; expects violations on its
    listed flavors."""
    variant = UNSOUND_VARIANTS[name]
    ctx = ProbeContext(theory, model,
                       random.Random(f"{seed}:{name}:{theory.flavor}"))
    return soundness_probe(variant.rule, theory, model, samples=samples,
                           seed=seed, checker=variant.checker, context=ctx)
