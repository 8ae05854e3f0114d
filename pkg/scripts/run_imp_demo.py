"""Compare a handful of program pairs over a small machine.

Prints one verdict line per pair, then sweeps the fuel budget on a
countdown loop to show where exhaustion turns into a decision.
"""

import sys

from declogic.imp import (
    build_imp_theory,
    check_equiv,
    default_carriers,
    parse_command,
)
from declogic.model import build_model

PAIRS = [
    ("dead store", "x := 1; x := 2", "x := 2"),
    ("loop closed form", "while not x == 0 do { x := x - 1 }", "x := 0"),
    ("catch and rebind", "try { throw e(x) } catch e(v) { y := v }", "y := x"),
    ("raise keeps writes", "x := 1; throw e(0)", "throw e(0); x := 1"),
    ("handler choice", "throw e(0)", "throw f(0)"),
    ("spin", "while true do { skip }", "skip"),
]


def main() -> int:
    theory = build_imp_theory({"x": "V", "y": "V"}, {"e": "V", "f": "V"}, {"V": 4})
    model = build_model(theory, default_carriers(theory))
    width = max(len(label) for label, *_ in PAIRS)
    for label, left, right in PAIRS:
        verdict = check_equiv(parse_command(left), parse_command(right),
                              theory, model, fuel=16)
        print(f"{label:<{width}}  {verdict.describe(model)}")

    print()
    loop = parse_command("while not x == 0 do { x := x - 1 }")
    done = parse_command("x := 0")
    for fuel in (1, 2, 3, 4, 5):
        verdict = check_equiv(loop, done, theory, model, fuel=fuel)
        print(f"fuel {fuel}: {verdict.describe(model)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
