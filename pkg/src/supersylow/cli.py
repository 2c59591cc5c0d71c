"""Command line driver: ``supersylow verify|analyze|export``.

Exit status is 0 when every report passes, 1 when any check fails or stays
undecided, and 2 for usage, schema or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .liesuper import SuperAlgebra, center, check_jacobi, derived_subalgebra, is_oddly_generated
from .reports import VerificationReport, jsonable
from .suites import SUITES, run_task, task_keys

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "SUPERSYLOW_SEED"


class UsageError(Exception):
    pass


def resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from exc


def _timed(args):
    suite, key, seed, timing = args
    start = time.perf_counter()
    rep = run_task(suite, key, seed)
    if timing:
        rep.runtime_ms = int((time.perf_counter() - start) * 1000)
    return rep


def run_suite(suite: str, keys: list[str], seed: int, jobs: int = 1,
              timing: bool = False) -> list[VerificationReport]:
    work = [(suite, k, seed, timing) for k in keys]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_timed, work))
    else:
        reports = [_timed(w) for w in work]
    return sorted(reports, key=lambda r: r.target)


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + "|".join(str(x) for x in v) + ")" if len(v) == 2 else json.dumps(jsonable(v))
    return str(v)


def markdown_summary(suite: str, seed: int, reports: list[VerificationReport]) -> str:
    lines = [f"# {suite}", "", f"seed: {seed}", "",
             "| target | check | computed | table | pass |",
             "|---|---|---|---|---|"]
    for r in reports:
        for c in r.checks:
            comp = c.details.get("computed", c.details.get("verdict", ""))
            tab = c.details.get("table", c.details.get("expected", ""))
            mark = {True: "yes", False: "NO", None: "?"}[c.passed]
            lines.append(f"| {r.target} | {c.name} | {_cell(jsonable(comp))} | "
                         f"{_cell(jsonable(tab))} | {mark} |")
    passed = sum(r.ok for r in reports)
    lines += ["", f"{passed}/{len(reports)} targets pass", ""]
    return "\n".join(lines)


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.+-]+", "_", name)


def write_reports(out: Path, suite: str, seed: int, reports: list[VerificationReport]) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for r in reports:
        (out / f"{_safe(r.target)}.json").write_text(r.to_json(), encoding="utf-8")
    (out / "summary.md").write_text(markdown_summary(suite, seed, reports), encoding="utf-8")


def cmd_verify(args) -> int:
    seed = resolve_seed(args.seed)
    try:
        keys = task_keys(args.table, args.max_rank, args.family, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not keys:
        raise UsageError("no rows selected")
    reports = run_suite(args.table, keys, seed, args.jobs, args.timing)
    if args.out:
        write_reports(Path(args.out), args.table, seed, reports)
    if args.format == "md":
        sys.stdout.write(markdown_summary(args.table, seed, reports))
    else:
        doc = {"suite": args.table, "seed": seed, "reports": [r.to_dict() for r in reports]}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def load_algebra(path: str) -> SuperAlgebra:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"I/O error: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"schema error: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(data, dict):
        raise UsageError("schema error: top level must be an object")
    for key in ("dim_even", "dim_odd", "names", "brackets"):
        if key not in data:
            raise UsageError(f"schema error: missing field {key!r}")
    try:
        a = SuperAlgebra.from_json(data)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"schema error: {exc}") from exc
    bad = check_jacobi(a)
    if bad:
        raise UsageError(f"schema error: super-Jacobi fails at basis indices {bad[0]}")
    return a


def dossier(a: SuperAlgebra, seed: int, roots: bool) -> dict:
    from .structure import (
        StructureError, cartan_from_element, is_homological, is_zero_superalgebra,
        odd_basis, random_vector, root_decomposition,
    )
    import random as _random
    cert = is_zero_superalgebra(a, seed)
    out = {"dims": [a.dim_even, a.dim_odd], "center": list(center(a).sdim),
           "derived": list(derived_subalgebra(a).sdim),
           "oddly_generated": is_oddly_generated(a),
           "zero_certificate": cert.to_dict()}
    if roots:
        rng = _random.Random(seed)
        info = {"found": False}
        odd = odd_basis(a)
        for _ in range(50 if odd else 0):
            x = random_vector(odd, rng, 3)
            if not any(x) or not is_homological(a, x):
                continue
            try:
                rd = root_decomposition(a, cartan_from_element(a, x))
            except StructureError:
                continue
            info = {"found": True, "x": x, "cartan": list(rd.cartan.sdim),
                    "roots": {",".join(str(c) for c in r): list(s) for r, s in
                              sorted(rd.root_sdims().items())}}
            break
        out["root_decomposition"] = info
    return jsonable(out)


def cmd_analyze(args) -> int:
    a = load_algebra(args.file)
    d = dossier(a, resolve_seed(args.seed), args.roots)
    if args.format == "md":
        lines = [f"- {k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(d.items())]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(json.dumps(d, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def cmd_export(args) -> int:
    from .suites import build_algebra
    try:
        a = build_algebra(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = json.dumps(a.to_json(), sort_keys=True, indent=1) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"I/O error: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supersylow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification table or property suite")
    v.add_argument("table", choices=SUITES)
    v.add_argument("--max-rank", type=int, default=3, help="largest parameter of table rows")
    v.add_argument("--family", help="restrict to one family, e.g. psq")
    v.add_argument("--n", type=int, help="table index n (sizes 2n and 2n+1 for queer rows)")
    v.add_argument("--seed", type=int)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", help="directory for per-row JSON reports and summary.md")
    v.add_argument("--format", choices=("json", "md"), default="json")
    v.add_argument("--timing", action="store_true", help="record runtime_ms (not byte-stable)")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="structural dossier for an algebra JSON file")
    a.add_argument("file")
    a.add_argument("--roots", action="store_true")
    a.add_argument("--seed", type=int)
    a.add_argument("--format", choices=("json", "md"), default="json")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("export", help="write a named algebra as JSON")
    e.add_argument("family")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"supersylow: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
