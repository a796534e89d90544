"""Command-line interface.

Exit codes: 0 on success, 1 on validation or verification failure, 2 when
the wall-clock budget (``ATAS_BUDGET_SECS``) is exceeded, 3 on a corpus
integrity failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import assembler, docio, lshape

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BUDGET = 2
EXIT_CORPUS = 3


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        print(f"warning: ignoring non-integer {name}={raw!r}", file=sys.stderr)
        return None


def _load_system(args):
    if args.builtin:
        if args.builtin != "lshape":
            print(f"unknown builtin {args.builtin!r}", file=sys.stderr)
            return None, EXIT_VALIDATION
        try:
            system = lshape.builtin_system()
        except RuntimeError as exc:
            print(exc, file=sys.stderr)
            return None, EXIT_CORPUS
        if args.theta is not None and args.theta != system.theta:
            system.theta = args.theta
        if args.seed_mode == "trajectory":
            system.tiles = lshape.corpus_tiles()
        return system, EXIT_OK
    try:
        system = docio.tileset_from_doc(docio.load_json(args.tileset))
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"tileset error: {exc}", file=sys.stderr)
        return None, EXIT_VALIDATION
    if args.theta is not None:
        system.theta = args.theta
    if args.seed_mode == "exhaustive":
        system.tiles = assembler.close_under_rotation(system.tiles)
    return system, EXIT_OK


def cmd_validate(args):
    try:
        doc = docio.load_json(args.tileset)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read tileset: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        system = docio.tileset_from_doc(doc)
    except ValueError as exc:
        for line in str(exc).split("; "):
            print(f"invalid: {line}")
        return EXIT_VALIDATION
    print(
        f"ok: {len(system.tiles)} tiles, theta={system.theta}, "
        f"{len(system.strength)} labels"
    )
    return EXIT_OK


def cmd_run(args):
    system, code = _load_system(args)
    if system is None:
        return code
    budget = _env_int("ATAS_BUDGET_SECS")
    result = assembler.run(
        system,
        stages=args.stages,
        paranoid=args.paranoid,
        max_members=args.max_members,
        budget_secs=budget,
    )
    for stage, count in enumerate(result.stage_counts):
        print(f"stage {stage}: {count} new member classes")
    total = len(result.members)
    print(f"total: {total} member classes in {result.elapsed:.2f}s")
    if result.truncated_by:
        print(f"truncated: {result.truncated_by}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        summary = {
            "system": system.name,
            "theta": system.theta,
            "stages": args.stages,
            "stage_counts": result.stage_counts,
            "total_members": total,
            "elapsed_secs": result.elapsed,
            "truncated_by": result.truncated_by,
        }
        docio.dump_json(summary, os.path.join(args.out, "summary.json"))
        for stage, members in enumerate(result.stages):
            for k, member in enumerate(members):
                doc = docio.assembly_to_doc(
                    member.cells, name=f"stage{stage:02d}-{k:04d}"
                )
                docio.dump_json(
                    doc, os.path.join(args.out, f"stage{stage:02d}-{k:04d}.json")
                )
    if result.truncated_by == "budget":
        return EXIT_BUDGET
    return EXIT_OK


def cmd_render(args):
    try:
        cells = docio.assembly_from_doc(docio.load_json(args.assembly))
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"assembly error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    text = docio.render_svg(cells) if args.svg else docio.render_ascii(cells)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args):
    if args.target != "lshape":
        print(f"unknown verification target {args.target!r}", file=sys.stderr)
        return EXIT_VALIDATION
    audit = lshape.loader_audit()
    if not audit["ok"]:
        for p in audit["problems"]:
            print(f"corpus: {p}", file=sys.stderr)
        return EXIT_CORPUS
    lib = lshape.tiletype_library()
    reports = []
    ok = True
    for i in (1, 2, 3):
        if args.level > 0 or i == 1:
            report = lib.verify_regions(i, args.level)
        else:
            report = lib.verify_regions(i, 0)
        reports.append(report)
        status = "ok" if report["ok"] else "FAIL"
        print(f"T{i} level {args.level}: {status}")
        for p in report["problems"]:
            print(f"  {p}")
        ok = ok and report["ok"]
    similar, ratios = lib.check_self_similar(1, max(args.level, 1))
    print(f"self-similar T1 through level {max(args.level, 1)}: "
          f"{'ok' if similar else 'FAIL'} (ratios {[str(r) for r in ratios]})")
    ok = ok and similar
    if args.out:
        docio.dump_json(
            {"audit": audit, "regions": reports,
             "self_similar": similar, "ratios": [str(r) for r in ratios]},
            args.out,
        )
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_classify(args):
    try:
        cells = docio.assembly_from_doc(docio.load_json(args.assembly))
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"assembly error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    lib = lshape.tiletype_library()
    grid = {pos: t.name for pos, t in cells.items()}
    verdict, detail = lib.classify(grid)
    if verdict in ("exact", "intermediate"):
        i, level = detail
        print(f"{verdict}: T{i}({level})")
    elif verdict == "seed":
        print(f"seed: {detail}")
    else:
        print("unknown")
    if args.trace:
        os.makedirs(args.trace, exist_ok=True)
        docio.dump_json(
            {"verdict": verdict, "detail": detail,
             "cells": sorted([x, y, n] for (x, y), n in grid.items())},
            os.path.join(args.trace, "classification.json"),
        )
        if verdict in ("exact", "intermediate"):
            i, level = detail
            target = lib.instantiate(i, level)
            docio.dump_json(
                {"type": i, "level": level,
                 "cells": sorted([x, y, n] for (x, y), n in target.items())},
                os.path.join(args.trace, "target.json"),
            )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="atas",
        description="Active tile assembly: simulate, verify and render.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a tileset document")
    p.add_argument("tileset")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="run staged two-handed assembly")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--tileset")
    src.add_argument("--builtin", choices=["lshape"])
    p.add_argument("--theta", type=int, default=None)
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--paranoid", action="store_true",
                   help="re-verify every accepted seam with a global min-cut")
    p.add_argument("--out", help="directory for member and summary documents")
    p.add_argument("--max-members", type=int, default=None)
    p.add_argument("--seed-mode", choices=["exhaustive", "trajectory"],
                   default="exhaustive",
                   help="exhaustive closes the seed set under rotation; "
                        "trajectory follows a single orientation")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("render", help="render an assembly document")
    p.add_argument("assembly")
    fmt = p.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--svg", action="store_true")
    fmt.add_argument("--ascii", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="verify the recursive tile-type corpus")
    p.add_argument("target", choices=["lshape"])
    p.add_argument("--level", type=int, choices=[0, 1, 2], default=1)
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="classify an assembly document")
    p.add_argument("assembly")
    p.add_argument("--trace", help="directory for classification traces")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    threads = _env_int("ATAS_THREADS")
    if threads is not None and threads < 1:
        print("warning: ATAS_THREADS must be positive; ignoring", file=sys.stderr)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
