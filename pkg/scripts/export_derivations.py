"""Write the bundled law proofs to files the prover can replay.

Emits one .proof file per law instantiation, the dual of each, and the
two theory dumps they check against.  Every script is verified before
it is written.
"""

import argparse
import pathlib
import sys

from declogic.derivations import all_law_scripts
from declogic.proofs import check_script, dualize_script, print_script
from declogic.theory import dualize, dump_theory, states_theory


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="derivations", help="output directory")
    parser.add_argument("--locations", default="x,y",
                        help="comma-separated location names (default x,y)")
    parser.add_argument("--base", default="V", help="base type name")
    args = parser.parse_args(argv)

    locations = {name: args.base for name in args.locations.split(",") if name}
    if not locations:
        parser.error("need at least one location")
    theory = states_theory(locations)
    dual_theory = dualize(theory)

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "states.theory").write_text(dump_theory(theory))
    (out / "exceptions.theory").write_text(dump_theory(dual_theory))

    written = 0
    for label, script in all_law_scripts(theory).items():
        stem = label.replace("@", "_at_").replace(",", "_")
        for name, current, current_theory in (
            (f"{stem}.proof", script, theory),
            (f"dual_{stem}.proof", dualize_script(script, theory), dual_theory),
        ):
            report = check_script(current, current_theory)
            if not report.ok:
                print(f"refusing to write {name}: {report.describe()}",
                      file=sys.stderr)
                return 1
            (out / name).write_text(print_script(current))
            written += 1
    print(f"wrote {written} verified proof scripts to {out}/")
    print(f"replay one with: declogic prove {out}/law1_at_"
          f"{next(iter(locations))}.proof --theory {out}/states.theory")
    return 0


if __name__ == "__main__":
    sys.exit(main())
