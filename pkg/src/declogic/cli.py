"""Command-line checks over terms, laws, proof scripts, and programs.

Five subcommands: `check` typechecks a term file and reports its
decoration; `laws` verifies the seven state laws and their duals over
a model file; `prove` replays a proof script against a theory;
`dualize` prints the mirror theory; `imp-equiv` compares two programs
over a model.  Exit codes: 0 when everything checked out, 1 when a
check rejected or the programs differ, 2 on usage or file errors.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .imp import (
    ElaborationError,
    NOT_EQUAL,
    STRONG,
    WEAK,
    build_imp_theory,
    check_equiv,
    default_carriers,
    parse_command,
)
from .model import (
    build_model,
    check_strong_eq,
    check_weak_eq,
    parse_model_config,
    render_counterexample,
)
from .proofs import check_script, parse_script
from .syntax import ParseError, parse_term
from .terms import Mode, typecheck
from .theory import (
    TheoryError,
    dual_symbol_map,
    dualize,
    dualize_equation,
    dump_theory,
    parse_theory,
    seven_laws,
    states_theory,
    theory_from_config,
)


@dataclass(frozen=True)
class CliConfig:
    """One parsed invocation: a subcommand plus its file arguments."""

    subcommand: str
    inputs: tuple[str, ...] = ()
    model: str | None = None
    theory: str | None = None
    fuel: int = 64
    verbosity: int = 0


class InputError(Exception):
    """A file argument is missing, unreadable, or malformed."""


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror or err}") from None


def _load_theory(path: str):
    """A theory from either a theory dump or a model description."""
    text = _read(path)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.split()[0] == "theory":
            return parse_theory(text)
        return theory_from_config(parse_model_config(text))
    raise InputError(f"{path} declares nothing")


def _load_model(path: str):
    config = parse_model_config(_read(path))
    theory = theory_from_config(config)
    return config, theory, build_model(theory, config.carriers)


def _cmd_check(config: CliConfig) -> int:
    signature = None
    if config.theory is not None:
        signature = _load_theory(config.theory).signature
    term = parse_term(_read(config.inputs[0]), signature)
    report = typecheck(term, signature)
    print(report.describe())
    return 0 if report.ok else 1


def _law_lines(locations, model, dual: bool):
    """Verdict lines for every law instantiation, plus a failure count."""
    theory = states_theory(locations)
    symbol_map = dual_symbol_map(theory) if dual else None
    names = list(locations)
    pairs = [(i, j) for i in names for j in names if i != j]
    if not pairs:
        pairs = [(names[0], None)]
    lines = []
    failures = 0
    for i, j in pairs:
        for number, law in enumerate(seven_laws(theory, i, j), start=1):
            if dual:
                law = dualize_equation(law, symbol_map)
            where = i if j is None else f"{i},{j}"
            prefix = f"{'DUAL ' if dual else ''}LAW {number} @ {where}"
            weak = check_weak_eq(law.lhs, law.rhs, model)
            strong = check_strong_eq(law.lhs, law.rhs, model)
            expect_strong = law.mode is Mode.STRONG
            ok = weak is None and ((strong is None) == expect_strong)
            if not ok:
                failures += 1
            weak_part = "WEAK ok" if weak is None else "WEAK FAIL"
            strong_part = (
                "STRONG ok" if strong is None
                else "STRONG counterexample: " + render_counterexample(strong, model)
            )
            status = "ok" if ok else "FAIL"
            lines.append(f"{prefix} {weak_part} {strong_part} [{status}]")
    return lines, failures


def _cmd_laws(config: CliConfig) -> int:
    model_config, _, model = _load_model(config.model)
    failures = 0
    if model_config.locations:
        lines, failed = _law_lines(model_config.locations, model, dual=False)
        failures += failed
        for line in lines:
            print(line)
    if model_config.exceptions:
        lines, failed = _law_lines(model_config.exceptions, model, dual=True)
        failures += failed
        for line in lines:
            print(line)
    if failures:
        print(f"{failures} law instantiations FAILED")
        return 1
    print("all law instantiations passed")
    return 0


def _cmd_prove(config: CliConfig) -> int:
    theory = _load_theory(config.theory)
    script = parse_script(_read(config.inputs[0]), theory.signature)
    report = check_script(script, theory)
    if config.verbosity:
        print(f"{len(script.steps)} steps toward "
              f"{script.goal.mode.value} goal")
    print(report.describe())
    return 0 if report.ok else 1


def _cmd_dualize(config: CliConfig) -> int:
    theory = _load_theory(config.theory)
    sys.stdout.write(dump_theory(dualize(theory)))
    return 0


def _cmd_imp_equiv(config: CliConfig) -> int:
    model_config = parse_model_config(_read(config.model))
    if not model_config.locations:
        raise InputError("program models need at least one location")
    for base, values in model_config.carriers.items():
        if values != tuple(range(len(values))):
            raise InputError(
                f"program arithmetic needs carrier 0..{len(values) - 1} "
                f"for type {base!r}")
    sizes = {base: len(values) for base, values in model_config.carriers.items()}
    used = set(model_config.locations.values()) | set(model_config.exceptions.values())
    theory = build_imp_theory(
        model_config.locations,
        model_config.exceptions,
        {base: sizes[base] for base in used},
    )
    model = build_model(theory, default_carriers(theory))
    left = parse_command(_read(config.inputs[0]))
    right = parse_command(_read(config.inputs[1]))
    verdict = check_equiv(left, right, theory, model, fuel=config.fuel)
    print(verdict.describe(model))
    return 0 if verdict.kind in (STRONG, WEAK) else 1


_HANDLERS = {
    "check": _cmd_check,
    "laws": _cmd_laws,
    "prove": _cmd_prove,
    "dualize": _cmd_dualize,
    "imp-equiv": _cmd_imp_equiv,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="declogic",
        description="Equational checks for programs with state and exceptions.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        dest="verbosity")
    commands = parser.add_subparsers(dest="subcommand", required=True)

    check = commands.add_parser(
        "check", help="typecheck a term file and report its decoration")
    check.add_argument("term_file")
    check.add_argument("--theory", help="theory dump or model file declaring "
                                        "the operations the term may use")

    laws = commands.add_parser(
        "laws", help="verify the seven state laws and their duals over a model")
    laws.add_argument("--model", required=True)

    prove = commands.add_parser(
        "prove", help="replay a proof script against a theory")
    prove.add_argument("script")
    prove.add_argument("--theory", required=True)

    dual = commands.add_parser(
        "dualize", help="print the mirror theory of a theory")
    dual.add_argument("--theory", required=True)

    equiv = commands.add_parser(
        "imp-equiv", help="compare two programs over every initial state")
    equiv.add_argument("programs", nargs=2)
    equiv.add_argument("--model", required=True)
    equiv.add_argument("--fuel", type=int, default=64)
    return parser


def _config_from(args: argparse.Namespace) -> CliConfig:
    inputs: tuple[str, ...] = ()
    if args.subcommand == "check":
        inputs = (args.term_file,)
    elif args.subcommand == "prove":
        inputs = (args.script,)
    elif args.subcommand == "imp-equiv":
        inputs = tuple(args.programs)
    return CliConfig(
        subcommand=args.subcommand,
        inputs=inputs,
        model=getattr(args, "model", None),
        theory=getattr(args, "theory", None),
        fuel=getattr(args, "fuel", 64),
        verbosity=args.verbosity,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "fuel", 64) < 1:
        parser.error("--fuel must be a positive integer")
    # Deep term files nest compositions one level per factor.
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    config = _config_from(args)
    try:
        return _HANDLERS[config.subcommand](config)
    except (InputError, ParseError, TheoryError, ElaborationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
