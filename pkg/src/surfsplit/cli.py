"""Command-line interface.  Exit codes: 0 ok, 2 bad parameters, 3 an
undetermined computation was hit while --strict."""

import argparse
import csv
import json
import sys


def _add_common(sp):
    sp.add_argument("--out", default=None, help="output path (CSV or JSON)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")


def build_parser():
    ap = argparse.ArgumentParser(prog="surfsplit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    for name in ("cq", "dq"):
        sp = sub.add_parser(name, help=f"split-probability constant {name[0]}_q")
        sp.add_argument("q", type=int, nargs="+")
        sp.add_argument("--samples", type=int, default=None,
                        help="Monte Carlo sample count (omit for exact census)")
        _add_common(sp)

    sp = sub.add_parser("relcond-sum", help="relative-conductor sums over F_q")
    sp.add_argument("q", type=int, nargs="+")
    _add_common(sp)

    sp = sub.add_parser("census", help="weighted split census at one prime")
    sp.add_argument("q", type=int)
    _add_common(sp)

    sp = sub.add_parser("classify", help="classify one Weil quartic (q a1 a2)")
    sp.add_argument("q", type=int)
    sp.add_argument("a1", type=int)
    sp.add_argument("a2", type=int)

    sp = sub.add_parser("classnum", help="class numbers h(D), H(D) for D < 0")
    sp.add_argument("disc", type=int, nargs="+")

    sp = sub.add_parser("arith-sums", help="partial sums of the psi function")
    sp.add_argument("x", type=int, nargs="+")
    _add_common(sp)

    sp = sub.add_parser("pisplit", help="count split reductions of a curve over Q")
    sp.add_argument("--curve", default="x^5 + x + 6")
    sp.add_argument("--zmax", type=int, default=10**5)
    sp.add_argument("--grid", type=int, default=40)
    sp.add_argument("--strict", action="store_true",
                    help="fail (exit 3) if any prime is undetermined")
    _add_common(sp)

    sp = sub.add_parser("fit", help="fit a counting-function CSV")
    sp.add_argument("csv_path")
    sp.add_argument("--model", choices=("sqrt_over_log", "power_log"),
                    default="sqrt_over_log")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    from . import driver

    if args.cmd == "classify":
        from .weilquartic import classify, is_geometrically_split
        cl = classify(args.q, args.a1, args.a2)
        geo = is_geometrically_split(args.q, args.a1, args.a2)[0]
        print(json.dumps({"q": args.q, "a1": args.a1, "a2": args.a2,
                          "class": cl.tag.name,
                          "split": cl.tag.name != "SIMPLE",
                          "geometrically_split": bool(geo)}, sort_keys=True))
        return 0

    if args.cmd == "classnum":
        from .quadorders import class_number, kronecker_class_number
        for d in args.disc:
            print(json.dumps({"D": d, "h": class_number(d),
                              "H": kronecker_class_number(d)}, sort_keys=True))
        return 0

    if args.cmd == "fit":
        rows = []
        with open(args.csv_path) as fh:
            for rec in csv.DictReader(fh):
                rows.append(driver.SurveyRow(key=int(rec["key"]),
                                             values={"pi_split": float(rec["pi_split"])}))
        fr = driver.fit_counting(rows, args.model)
        print(json.dumps({"model": fr.model, **fr.params,
                          "residual": fr.residual}, sort_keys=True))
        return 0

    # survey-backed subcommands
    kind, params = {
        "cq": ("cq", lambda a: {"q": a.q, "samples": a.samples}),
        "dq": ("dq", lambda a: {"q": a.q, "samples": a.samples}),
        "relcond-sum": ("relcond", lambda a: {"q": a.q}),
        "census": ("census", lambda a: {"q": a.q}),
        "arith-sums": ("arith", lambda a: {"x": a.x}),
        "pisplit": ("pisplit", lambda a: {"curve": a.curve, "zmax": a.zmax,
                                          "grid": a.grid}),
    }[args.cmd]
    params = params(args)
    params = {k: v for k, v in params.items() if v is not None}

    if args.out:
        paths = driver.run_survey(kind, params, args.out, seed=args.seed,
                                  fmt=args.fmt, threads=args.threads)
        for p in paths:
            print(p)
        meta = json.load(open(paths[-1]))
    else:
        rows, meta = driver._survey_rows(kind, params, args.seed, args.threads)
        for r in rows:
            print(json.dumps({"key": r.key, **r.values,
                              **{f"flag_{k}": v for k, v in r.flags.items()}},
                             sort_keys=True, default=str))
        if meta:
            print(json.dumps({"meta": meta}, sort_keys=True, default=str))

    if args.cmd == "pisplit" and getattr(args, "strict", False):
        if meta.get("n_undetermined", 0):
            print(f"error: {meta['n_undetermined']} undetermined primes",
                  file=sys.stderr)
            return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
