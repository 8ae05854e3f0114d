"""Hand-built proof scripts for the seven state laws.

Each script is constructed step by step against the rule checker, so a
construction bug fails at build time, not at replay time.  The overall
strategy is observational: reduce both sides under every lookup to a
common weak normal form, then close with the observation rule.  Law 4
is the axiom itself and stays weak; the others conclude strongly.

Scripts for the dual (exceptions) laws come from `dualize_script`, not
from separate constructions.
"""

from __future__ import annotations

from .proofs import ProofScript, ProofStep, check_step
from .terms import (
    Bang,
    Comp,
    Equation,
    Id,
    Mode,
    PairSeq,
    Proj1,
    Proj2,
    copy_term,
    seq_then,
    swap_term,
)
from .theory import Theory, TheoryError, lookup_op, update_op
from .types import Base, Prod, UNIT_T


class ScriptBuilder:
    """Accumulates checked proof steps toward a fixed goal."""

    def __init__(self, theory: Theory, goal: Equation):
        self.theory = theory
        self.goal = goal
        self._steps: list[ProofStep] = []
        self._earlier: list[Equation] = []

    def add(self, rule: str, premises, mode: Mode, lhs, rhs) -> int:
        step = ProofStep(rule, tuple(premises), Equation(mode, lhs, rhs))
        check_step(step, self._earlier, self.theory)
        self._steps.append(step)
        self._earlier.append(step.conclusion)
        return len(self._steps)

    def eq(self, index: int) -> Equation:
        return self._earlier[index - 1]

    def axiom(self, label: str) -> int:
        ax = self.theory.axioms[label]
        return self.add("axiom", [label], ax.mode, ax.lhs, ax.rhs)

    def refl(self, term) -> int:
        return self.add("refl", [], Mode.STRONG, term, term)

    def sym(self, index: int) -> int:
        p = self.eq(index)
        return self.add("sym", [index], p.mode, p.rhs, p.lhs)

    def trans(self, first: int, second: int) -> int:
        a, b = self.eq(first), self.eq(second)
        return self.add("trans", [first, second], a.mode, a.lhs, b.rhs)

    def s2w(self, index: int) -> int:
        p = self.eq(index)
        return self.add("strong-to-weak", [index], Mode.WEAK, p.lhs, p.rhs)

    def subs(self, index: int, inner) -> int:
        p = self.eq(index)
        return self.add("subs", [index], p.mode,
                        Comp(p.lhs, inner), Comp(p.rhs, inner))

    def repl(self, index: int, outer) -> int:
        p = self.eq(index)
        return self.add("repl", [index], p.mode,
                        Comp(outer, p.lhs), Comp(outer, p.rhs))

    def effect(self, index: int) -> int:
        p = self.eq(index)
        return self.add("effect", [index], Mode.STRONG, p.lhs, p.rhs)

    def unit_weak(self, lhs, rhs) -> int:
        return self.add("unit-weak", [], Mode.WEAK, lhs, rhs)

    def pair_cong(self, first: int, second: int) -> int:
        a, b = self.eq(first), self.eq(second)
        mode = (Mode.STRONG
                if a.mode is Mode.STRONG and b.mode is Mode.STRONG
                else Mode.WEAK)
        return self.add("pair-cong", [first, second], mode,
                        PairSeq(a.lhs, b.lhs), PairSeq(a.rhs, b.rhs))

    def script(self) -> ProofScript:
        return ProofScript(self.goal, tuple(self._steps))


def _discard_lemma(b: ScriptBuilder, location: str) -> int:
    """bang . lookup == id at unit, strongly (read then discard is a no-op)."""
    lookup = lookup_op(b.theory, location)
    weak = b.unit_weak(Comp(Bang(lookup.target), lookup), Id(UNIT_T))
    return b.effect(weak)


def _law1_script(theory: Theory, i: str) -> ProofScript:
    lookup = lookup_op(theory, i)
    update = update_op(theory, i)
    goal = Equation(Mode.STRONG, Comp(update, lookup), Id(UNIT_T))
    b = ScriptBuilder(theory, goal)
    ax1 = b.axiom(f"st_ax1_{i}")
    premises = {i: b.subs(ax1, lookup)}
    others = [k for k in theory.locations if k != i]
    if others:
        discard = _discard_lemma(b, i)
        for k in others:
            obs_k = lookup_op(theory, k)
            ax2 = b.axiom(f"st_ax2_{i}_{k}")
            left = b.subs(ax2, lookup)
            right = b.s2w(b.repl(discard, obs_k))
            premises[k] = b.trans(left, right)
    b.add("obs", [premises[k] for k in theory.locations],
          Mode.STRONG, goal.lhs, goal.rhs)
    return b.script()


def _law2_script(theory: Theory, i: str) -> ProofScript:
    lookup = lookup_op(theory, i)
    value = lookup.target
    goal = Equation(Mode.STRONG,
                    PairSeq(lookup, lookup),
                    Comp(copy_term(value), lookup))
    b = ScriptBuilder(theory, goal)
    pushed = b.add("pair-comp", [], Mode.STRONG,
                   Comp(copy_term(value), lookup),
                   PairSeq(lookup, lookup))
    b.sym(pushed)
    return b.script()


def _law4_script(theory: Theory, i: str) -> ProofScript:
    lookup = lookup_op(theory, i)
    update = update_op(theory, i)
    goal = Equation(Mode.WEAK, Comp(lookup, update), Id(lookup.target))
    b = ScriptBuilder(theory, goal)
    b.axiom(f"st_ax1_{i}")
    return b.script()


def _law5_script(theory: Theory, i: str, j: str) -> ProofScript:
    lookup_i = lookup_op(theory, i)
    lookup_j = lookup_op(theory, j)
    v_i, v_j = lookup_i.target, lookup_j.target
    both = PairSeq(lookup_j, lookup_i)
    goal = Equation(Mode.STRONG,
                    PairSeq(lookup_i, lookup_j),
                    Comp(swap_term(v_j, v_i), both))
    b = ScriptBuilder(theory, goal)
    pushed = b.add("pair-comp", [], Mode.STRONG,
                   Comp(swap_term(v_j, v_i), both),
                   PairSeq(Comp(Proj2(v_j, v_i), both),
                           Comp(Proj1(v_j, v_i), both)))
    second = b.add("pair-proj-2", [], Mode.STRONG,
                   Comp(Proj2(v_j, v_i), both), lookup_i)
    first = b.add("pair-proj-1", [], Mode.STRONG,
                  Comp(Proj1(v_j, v_i), both), lookup_j)
    fixed = b.pair_cong(second, first)
    b.sym(b.trans(pushed, fixed))
    return b.script()


def _reduce_write_after(b: ScriptBuilder, k: str, written: str, proj,
                        source) -> int:
    """Weakly reduce lookup_k . update_written . proj to its residue.

    The residue is `proj` when k is the written location (the read sees
    the write) and lookup_k . bang otherwise (the write is invisible).
    """
    obs_k = lookup_op(b.theory, k)
    if k == written:
        ax1 = b.axiom(f"st_ax1_{written}")
        return b.subs(ax1, proj)
    ax2 = b.axiom(f"st_ax2_{written}_{k}")
    left = b.subs(ax2, proj)
    narrow = b.unit_weak(Comp(Bang(Base(b.theory.locations[written])), proj),
                         Bang(source))
    widened = b.s2w(b.repl(b.effect(narrow), obs_k))
    return b.trans(left, widened)


def _reduce_observed_sequence(b: ScriptBuilder, k: str, first, second,
                              first_loc: str, first_proj,
                              second_loc: str, second_proj, source) -> int:
    """Weakly reduce lookup_k . seq_then(first, second) to a residue.

    `first` and `second` are update_<loc> . <proj> out of `source`.
    The residue is a projection when k is one of the written locations
    and lookup_k . bang otherwise, matching `_reduce_write_after`.
    """
    obs_k = lookup_op(b.theory, k)
    v_k = obs_k.target
    sequenced = seq_then(first, second)
    fused = b.s2w(b.add(
        "pair-fuse-2", [], Mode.STRONG,
        Comp(obs_k, sequenced),
        Comp(Proj2(UNIT_T, v_k), PairSeq(first, Comp(obs_k, second)))))
    slot = _reduce_write_after(b, k, second_loc, second_proj, source)
    keep_first = b.refl(first)
    paired = b.pair_cong(keep_first, slot)
    outer = b.repl(paired, Proj2(UNIT_T, v_k))
    reduced = b.trans(fused, outer)
    if k == second_loc:
        dropped = b.add("pair-proj-2", [], Mode.WEAK,
                        Comp(Proj2(UNIT_T, v_k),
                             PairSeq(first, second_proj)),
                        second_proj)
        return b.trans(reduced, dropped)
    unfused = b.s2w(b.sym(b.add(
        "pair-fuse-2", [], Mode.STRONG,
        Comp(obs_k, Comp(Proj2(UNIT_T, UNIT_T), PairSeq(first, Bang(source)))),
        Comp(Proj2(UNIT_T, v_k), PairSeq(first, Comp(obs_k, Bang(source)))))))
    regrouped = b.trans(reduced, unfused)
    erased = b.repl(b.add("pair-bang-2", [], Mode.STRONG,
                          Comp(Proj2(UNIT_T, UNIT_T),
                               PairSeq(first, Bang(source))),
                          first),
                    obs_k)
    onto_first = b.trans(regrouped, b.s2w(erased))
    tail = _reduce_write_after(b, k, first_loc, first_proj, source)
    return b.trans(onto_first, tail)


def _law3_script(theory: Theory, i: str) -> ProofScript:
    update = update_op(theory, i)
    v = Base(theory.locations[i])
    source = Prod(v, v)
    p1, p2 = Proj1(v, v), Proj2(v, v)
    first = Comp(update, p1)
    second = Comp(update, p2)
    goal = Equation(Mode.STRONG, seq_then(first, second), second)
    b = ScriptBuilder(theory, goal)
    premises = []
    for k in theory.locations:
        left = _reduce_observed_sequence(b, k, first, second, i, p1, i, p2,
                                         source)
        right = _reduce_write_after(b, k, i, p2, source)
        premises.append(b.trans(left, b.sym(right)))
    b.add("obs", premises, Mode.STRONG, goal.lhs, goal.rhs)
    return b.script()


def _law6_script(theory: Theory, i: str, j: str) -> ProofScript:
    update_i = update_op(theory, i)
    update_j = update_op(theory, j)
    v_i, v_j = Base(theory.locations[i]), Base(theory.locations[j])
    source = Prod(v_i, v_j)
    p1, p2 = Proj1(v_i, v_j), Proj2(v_i, v_j)
    write_i = Comp(update_i, p1)
    write_j = Comp(update_j, p2)
    goal = Equation(Mode.STRONG,
                    seq_then(write_i, write_j),
                    seq_then(write_j, write_i))
    b = ScriptBuilder(theory, goal)
    premises = []
    for k in theory.locations:
        left = _reduce_observed_sequence(b, k, write_i, write_j, i, p1, j, p2,
                                         source)
        right = _reduce_observed_sequence(b, k, write_j, write_i, j, p2, i, p1,
                                          source)
        premises.append(b.trans(left, b.sym(right)))
    b.add("obs", premises, Mode.STRONG, goal.lhs, goal.rhs)
    return b.script()


def _law7_script(theory: Theory, i: str, j: str) -> ProofScript:
    lookup_j = lookup_op(theory, j)
    update_i = update_op(theory, i)
    v_i, v_j = Base(theory.locations[i]), Base(theory.locations[j])
    blind_read = Comp(lookup_j, Bang(v_i))
    pair = PairSeq(blind_read, update_i)
    goal = Equation(Mode.STRONG,
                    Comp(lookup_j, update_i),
                    Comp(Proj1(v_j, UNIT_T), pair))
    b = ScriptBuilder(theory, goal)
    ax2 = b.axiom(f"st_ax2_{i}_{j}")
    kept = b.add("pair-proj-1", [], Mode.WEAK,
                 Comp(Proj1(v_j, UNIT_T), pair), blind_read)
    value_sides = b.trans(ax2, b.sym(kept))
    premises = [value_sides]
    for k in theory.locations:
        obs_k = lookup_op(theory, k)
        read_then_drop = b.effect(b.unit_weak(Comp(Bang(v_j), lookup_j),
                                              Id(UNIT_T)))
        left = b.subs(b.repl(read_then_drop, obs_k), update_i)
        drop_first = b.effect(b.unit_weak(Comp(Bang(v_j), Proj1(v_j, UNIT_T)),
                                          Proj2(v_j, UNIT_T)))
        swapped = b.subs(drop_first, pair)
        kept_write = b.add("pair-proj-2", [], Mode.STRONG,
                           Comp(Proj2(v_j, UNIT_T), pair), update_i)
        right = b.repl(b.trans(swapped, kept_write), obs_k)
        premises.append(b.s2w(b.trans(left, b.sym(right))))
    b.add("obs", premises, Mode.STRONG, goal.lhs, goal.rhs)
    return b.script()


def law_script(theory: Theory, number: int, i: str | None = None,
               j: str | None = None) -> ProofScript:
    """A checked proof script for one of the seven state laws."""
    names = list(theory.locations)
    if not names:
        raise TheoryError("the state laws need at least one location")
    if i is None:
        i = names[0]
    if number in (5, 6, 7):
        if j is None:
            others = [name for name in names if name != i]
            if not others:
                raise TheoryError(f"law {number} needs two locations")
            j = others[0]
        if j == i:
            raise TheoryError(f"law {number} needs two distinct locations")
    builders = {
        1: lambda: _law1_script(theory, i),
        2: lambda: _law2_script(theory, i),
        3: lambda: _law3_script(theory, i),
        4: lambda: _law4_script(theory, i),
        5: lambda: _law5_script(theory, i, j),
        6: lambda: _law6_script(theory, i, j),
        7: lambda: _law7_script(theory, i, j),
    }
    if number not in builders:
        raise TheoryError(f"there is no law {number}")
    return builders[number]()


def all_law_scripts(theory: Theory) -> dict[str, ProofScript]:
    """Scripts for every law instance over every (ordered) location pair."""
    scripts: dict[str, ProofScript] = {}
    names = list(theory.locations)
    for i in names:
        for number in (1, 2, 3, 4):
            scripts[f"law{number}@{i}"] = law_script(theory, number, i)
        for j in names:
            if j == i:
                continue
            for number in (5, 6, 7):
                scripts[f"law{number}@{i},{j}"] = law_script(theory, number,
                                                             i, j)
    return scripts
