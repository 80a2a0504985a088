"""Command-line surface: classify, verify, table.

Exit codes: 0 ok, 2 invalid extended type, 3 unsupported (A1),
4 formula/oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dynkin import InvalidRank, make_dynkin
from .groups import GroupSpec, InvalidGroup
from .invariants import UnsupportedType, invariant_report

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNSUPPORTED = 3
EXIT_MISMATCH = 4

_REPORT_COLUMNS = [
    "family",
    "rank",
    "m",
    "t",
    "characteristic",
    "coxeter",
    "loewy_length",
    "H_subgroup",
    "weakly_symmetric",
    "symmetric",
    "u",
    "period",
    "stably_calabi_yau",
    "cy_dim",
    "cyf_dim",
    "n_cy_min",
]


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _parse_range(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _validated_group(family: str, rank: int, m: int, t: int):
    spec = make_dynkin(family, rank)
    group = GroupSpec(spec, m, t)
    return spec, group


def cmd_classify(args) -> int:
    try:
        spec, _ = _validated_group(args.family, args.rank, args.m, args.t)
        report = invariant_report(spec, args.m, args.t, args.char)
    except UnsupportedType as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InvalidRank, InvalidGroup) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    data = {"schema": 1, **report.to_dict()}
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, separators=(",", ":")))
    else:
        print("\t".join(_REPORT_COLUMNS))
        print("\t".join(_cell(data[c]) for c in _REPORT_COLUMNS))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .homlab import verify_instance

    try:
        _validated_group(args.family, args.rank, args.m, args.t)
        payload = verify_instance(
            args.family,
            args.rank,
            args.m,
            args.t,
            char=args.char,
            max_r=args.max_r,
            dim_cap=args.dim_cap,
            nu_window=args.window,
        )
    except UnsupportedType as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InvalidRank, InvalidGroup) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    if not payload["all_match"]:
        failing = [c["check"] for c in payload["checks"] if not c["match"]]
        print(f"mismatch in: {', '.join(failing)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_table(args) -> int:
    rows = []
    skipped = []
    for family in args.family.split(","):
        for rank in _parse_range(args.rank):
            for m in _parse_range(str(args.m)):
                for t in _parse_range(str(args.t)):
                    try:
                        spec, _ = _validated_group(family, rank, m, t)
                        report = invariant_report(spec, m, t, args.char)
                    except (InvalidGroup, InvalidRank, UnsupportedType) as exc:
                        skipped.append(
                            {"family": family, "rank": rank, "m": m, "t": t, "reason": str(exc)}
                        )
                        continue
                    rows.append(report.to_dict())
    if args.format == "json":
        print(
            json.dumps(
                {"schema": 1, "rows": rows, "skipped": skipped},
                sort_keys=True,
                separators=(",", ":"),
            )
        )
    else:
        print("\t".join(_REPORT_COLUMNS))
        for r in rows:
            print("\t".join(_cell(r[c]) for c in _REPORT_COLUMNS))
        for s in skipped:
            print(f"# skipped {s['family']}{s['rank']} m={s['m']} t={s['t']}: {s['reason']}")
    return EXIT_OK


def cmd_export(args) -> int:
    from .fields import field_for_char
    from .orbit import OrbitAlgebra
    from .presentation import build_presentation

    try:
        spec, group = _validated_group(args.family, args.rank, args.m, args.t)
    except (InvalidRank, InvalidGroup) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    alg = OrbitAlgebra(build_presentation(spec, group), group, field_for_char(args.char))
    print(alg.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="meshalg",
        description="Invariants of m-fold mesh algebras with a brute-force homological oracle",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_type=True):
        if with_type:
            p.add_argument("--family", required=True, help="A | D | E")
            p.add_argument("--rank", required=True, help="rank (r for A_r, n+1 for D, 6/7/8 for E)")
            p.add_argument("--m", required=True, help="translation exponent m >= 1")
            p.add_argument("--t", required=True, help="order tag of rho: 1, 2 or 3")
        p.add_argument("--char", type=int, default=0, help="field characteristic (0, 2 or an odd prime)")
        p.add_argument("--format", choices=("json", "tsv"), default="json")

    p = sub.add_parser("classify", help="closed-form invariant report for one extended type")
    common(p)
    p.set_defaults(fn=cmd_classify, single=True)

    p = sub.add_parser("verify", help="formula-versus-oracle verification for one extended type")
    common(p)
    p.add_argument("--max-r", type=int, default=0, help="direct syzygy depth (0 disables)")
    p.add_argument("--dim-cap", type=int, default=40, help="skip matrix-level checks above this dimension")
    p.add_argument(
        "--window",
        type=int,
        default=0,
        help="columns for the brute-force Nakayama permutation check (0 disables)",
    )
    p.set_defaults(fn=cmd_verify, single=True)

    p = sub.add_parser("table", help="batch invariant table over ranges")
    common(p)
    p.set_defaults(fn=cmd_table, single=False)

    p = sub.add_parser("export", help="serialize the orbit algebra (vertices, arrows, structure constants)")
    common(p)
    p.set_defaults(fn=cmd_export, single=True)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "single", False):
        try:
            args.rank = int(args.rank)
            args.m = int(args.m)
            args.t = int(args.t)
        except ValueError:
            print("error: --rank, --m, --t must be integers", file=sys.stderr)
            return EXIT_INVALID
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
