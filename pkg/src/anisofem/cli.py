"""Command-line entry point.

    anisofem run <config-file>    run the studies described in the file
    anisofem list-studies         show the available study kinds
    anisofem check                run the fast invariant suite

Exit codes: 0 success, 1 configuration error (or failed checks),
2 a solver reported a singular matrix inside a strict study, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from .config import ConfigError, load_config
from .studies import STUDY_RUNNERS, StudyRecord, emit_csv, emit_plot_script

_STUDY_BLURBS = {
    "sigma_sweep": "stabilization-parameter sweep at fixed mesh (3 regimes)",
    "h_convergence": "refinement ladder for both reformulations",
    "eps_sweep": "anisotropy-strength robustness sweep",
    "conditioning": "cond_1 growth under refinement",
    "low_regularity": "square-integrable-only source term study",
    "oracle_validation": "finite elements vs closed-form mode solver",
    "infsup_probe": "coarse/fine Riesz-norm ratio diagnostic",
    "dual_norm_check": "dual-norm ratio vs closed form for separated modes",
}


def _write_tuples(rows, header, path):
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format(v, ".17g") if isinstance(v, float) else v
                             for v in row])


def _run(args) -> int:
    try:
        studies = load_config(args.config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cannot read {args.config}: {exc}", file=sys.stderr)
        return 3

    status = 0
    for item in studies:
        print(f"running [{item.name}] ({item.config.kind}) ...")
        result = STUDY_RUNNERS[item.config.kind](item.config)
        try:
            if result and isinstance(result[0], StudyRecord):
                failures = sum(1 for r in result if r.solve_status != "OK")
                print(f"  {len(result)} records, {failures} solver failure(s)")
                if item.output:
                    os.makedirs(os.path.dirname(item.output) or ".", exist_ok=True)
                    emit_csv(result, item.output)
                    print(f"  wrote {item.output}")
                if item.plot:
                    emit_plot_script(result, item.plot, item.output)
                    print(f"  wrote {item.plot}")
                if item.strict and failures:
                    print(f"  strict study [{item.name}] had solver failures",
                          file=sys.stderr)
                    return 2
            else:
                header = (("n", "ratio") if item.config.kind == "infsup_probe"
                          else ("k", "computed_ratio", "analytic_ratio"))
                for row in result:
                    print("  " + "  ".join(format(v, ".6g") if isinstance(v, float)
                                           else str(v) for v in row))
                if item.output:
                    os.makedirs(os.path.dirname(item.output) or ".", exist_ok=True)
                    _write_tuples(result, header, item.output)
                    print(f"  wrote {item.output}")
        except OSError as exc:
            print(f"I/O error: {exc}", file=sys.stderr)
            return 3
    return status


def _list_studies(_args) -> int:
    for kind, blurb in _STUDY_BLURBS.items():
        print(f"{kind:20s} {blurb}")
    return 0


def _check(_args) -> int:
    from .checks import run_checks

    return 0 if run_checks() else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="anisofem",
                                     description="asymptotic-preserving finite "
                                                 "elements for anisotropic "
                                                 "elliptic problems")
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="run the studies in a config file")
    run_p.add_argument("config")
    run_p.set_defaults(func=_run)
    list_p = sub.add_parser("list-studies", help="list available study kinds")
    list_p.set_defaults(func=_list_studies)
    check_p = sub.add_parser("check", help="run the invariant suite")
    check_p.set_defaults(func=_check)
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
