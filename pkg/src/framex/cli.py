"""Command-line front end.

Exit codes: 0 pass, 1 lemma/theorem violation, 2 parse error, 3 size guard,
4 search limit, 5 construction precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import certificates as certio
from . import instances as inst_io
from .bitset import ids_of
from .errors import (
    BalancedLoopPresent,
    CertificateError,
    FramexError,
    ParseError,
    PreconditionViolated,
    SearchLimit,
    SizeExceeded,
)
from .exchange import replay, white_verify
from .kernel import default_backend
from .suites import SUITES, run_suites
from .vdeletion import v_delete

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_LIMIT = 4
EXIT_PRECONDITION = 5


def _load(path: str):
    try:
        return inst_io.load(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def cmd_bases(args) -> int:
    inst = _load(args.file)
    m = inst.build_matroid()
    try:
        bases = m.bases(force=args.force)
    except SizeExceeded as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    print(f"bases: {len(bases)}")
    print(f"rank: {m.rank}")
    for b in bases:
        print(" ".join(map(str, ids_of(b))))
    return EXIT_PASS


def cmd_circuits(args) -> int:
    inst = _load(args.file)
    m = inst.build_matroid()
    try:
        circuits = m.circuits()
    except SizeExceeded as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    print(f"circuits: {len(circuits)}")
    for c in circuits:
        print(f"{' '.join(map(str, ids_of(c.mask)))}  [{c.shape}]")
    return EXIT_PASS


def cmd_verify_white(args) -> int:
    inst = _load(args.file)
    m = inst.build_matroid()
    try:
        rep = white_verify(m, args.k, node_limit=args.node_limit,
                           modulo_permutation=args.modulo_permutation)
    except SizeExceeded as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except SearchLimit as exc:
        print(f"search limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    print(f"instance: {inst.name}")
    print(f"k: {rep.k}")
    print(f"sequences: {rep.state_count}")
    print(f"classes: {rep.class_count}")
    print(f"max-diameter: {rep.max_diameter}")
    print(f"counterexamples: {len(rep.counterexamples)}")
    for fp, sizes in rep.counterexamples:
        print(f"  class {fp} splits into {sizes}")
    return EXIT_PASS if rep.ok else EXIT_VIOLATION


def cmd_vdelete(args) -> int:
    inst = _load(args.file)
    bg = inst.build_biased()
    try:
        vd = v_delete(bg, args.vertex)
    except BalancedLoopPresent as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SizeExceeded as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    if vd.dropped_pairs:
        print(
            "precondition: merged loops over balanced parallel pairs "
            f"{vd.dropped_pairs} were removed; the derived instance is not "
            "faithful for pull-backs",
            file=sys.stderr,
        )
        return EXIT_PRECONDITION
    target = vd.target
    derived = inst_io.Instance(
        name=f"{inst.name}-del{args.vertex}",
        graph=target.graph,
        bias={
            "kind": "generators",
            "generators": [list(ids_of(c)) for c in target.balance.generators],
        },
        kind=inst.kind,
    )
    out = Path(args.out or f"{inst.name}-del{args.vertex}.json")
    out.write_text(inst_io.dumps(derived))
    map_doc = {
        "vertex": vd.v,
        "v_edges": list(vd.v_edges),
        "old_to_new": {str(k): v for k, v in vd.old_to_new.items()},
        "merged": {str(eid): list(pair) for eid, pair in vd.pair_of.items()},
        "stem_loops": sorted(vd.stem_loops),
        "dropped_pairs": [list(p) for p in vd.dropped_pairs],
    }
    map_out = Path(args.map_out or f"{out.stem}.map.json")
    map_out.write_text(json.dumps(map_doc, indent=1, sort_keys=True) + "\n")
    print(f"wrote {out} and {map_out}")
    return EXIT_PASS


def cmd_corpus(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    instances = inst_io.generate_corpus(
        args.max_vertices, args.max_edges, seed=args.seed, max_cyclomatic=args.max_cyclomatic
    )
    manifest = {
        "seed": args.seed,
        "max_vertices": args.max_vertices,
        "max_edges": args.max_edges,
        "max_cyclomatic": args.max_cyclomatic,
        "count": len(instances),
        "names": [i.name for i in instances],
    }
    for inst in instances:
        (out_dir / f"{inst.name}.json").write_text(inst_io.dumps(inst))
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(instances)} instances to {out_dir}")
    return EXIT_PASS


def _run_one(path_and_suites):
    path, suite_names = path_and_suites
    inst = inst_io.load(path)
    return [r.to_json() for r in run_suites(inst, suite_names)]


def cmd_check_all(args) -> int:
    corpus_dir = Path(args.corpus_dir)
    paths = sorted(p for p in corpus_dir.glob("*.json") if p.name != "manifest.json")
    if not paths:
        print("0 instances; nothing to check")
        return EXIT_PASS
    suite_names = args.suites.split(",") if args.suites else None
    if suite_names:
        unknown = set(suite_names) - set(SUITES)
        if unknown:
            print(f"unknown suites: {sorted(unknown)}", file=sys.stderr)
            return EXIT_PARSE
    jobs = [(str(p), suite_names) for p in paths]
    results = []
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for recs in pool.map(_run_one, jobs, chunksize=8):
                results.extend(recs)
    else:
        for job in jobs:
            results.extend(_run_one(job))
    results.sort(key=lambda r: (r["instance"], r["suite"]))
    report_lines = [
        json.dumps({"header": True, "backend": default_backend(), "instances": len(paths)},
                   sort_keys=True)
    ]
    report_lines += [json.dumps(r, sort_keys=True) for r in results]
    if args.report:
        Path(args.report).write_text("\n".join(report_lines) + "\n")
    tally = {"pass": 0, "fail": 0, "skip": 0}
    for r in results:
        tally[r["status"]] += 1
        if r["status"] == "fail":
            print(f"FAIL {r['instance']} {r['suite']}: {r['failures'][:3]}")
    print(f"instances: {len(paths)}  pass: {tally['pass']}  fail: {tally['fail']}  skip: {tally['skip']}")
    return EXIT_PASS if tally["fail"] == 0 else EXIT_VIOLATION


def cmd_replay(args) -> int:
    inst = _load(args.file)
    m = inst.build_matroid()
    try:
        cert = certio.parse(Path(args.certificate).read_text())
        replay(m, cert)
    except FileNotFoundError:
        print(f"error: no such file: {args.certificate}", file=sys.stderr)
        return EXIT_PARSE
    except CertificateError as exc:
        print(f"certificate invalid: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    print(f"certificate ok: {len(cert.moves)} moves replayed")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="framex", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bases", help="enumerate bases of an instance")
    p.add_argument("file")
    p.add_argument("--force", action="store_true", help="override the 16-edge guard")
    p.set_defaults(func=cmd_bases)

    p = sub.add_parser("circuits", help="enumerate circuits with shape tags")
    p.add_argument("file")
    p.set_defaults(func=cmd_circuits)

    p = sub.add_parser("verify-white", help="exhaustive compatible-sequence connectivity")
    p.add_argument("file")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--modulo-permutation", action="store_true")
    p.add_argument("--node-limit", type=int, default=10**6)
    p.set_defaults(func=cmd_verify_white)

    p = sub.add_parser("vdelete", help="emit the vertex-deleted derived instance")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--map-out")
    p.set_defaults(func=cmd_vdelete)

    p = sub.add_parser("corpus", help="generate the deterministic instance corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--max-vertices", type=int, default=5)
    p.add_argument("--max-edges", type=int, default=7)
    p.add_argument("--max-cyclomatic", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("check-all", help="run every verification suite over a corpus")
    p.add_argument("corpus_dir")
    p.add_argument("--suites", help="comma-separated subset of suites")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", help="write a JSON-lines report here")
    p.set_defaults(func=cmd_check_all)

    p = sub.add_parser("replay", help="validate a certificate against an instance")
    p.add_argument("file")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_replay)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeExceeded as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except SearchLimit as exc:
        print(f"search limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except PreconditionViolated as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except FramexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
