"""Command-line front end.

Exit codes: 0 success, 1 refuted or false verdict, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .admissibility import (
    DEFAULT_BOUND,
    NotAdmissible,
    ProvenAdmissible,
    decide_admissible,
    search_nontrivial_solution,
    system_of,
)
from .algebra import AlgebraSpec, Triple, classify_triple, is_associative, is_commutative, right_nucleus_basis
from .arith import (
    as_rational,
    is_sum_two_squares_nat,
    is_Z_member,
    rational_sqrt,
    signed_squarefree_stream,
    squarefree_class,
)
from .classification import (
    gen_F_gaussian,
    gen_P1,
    gen_P2,
    gen_Ptilde,
    gen_S,
    gen_skew_candidates,
    gen_T_gaussian,
    in_norm_group,
    in_norm_group_rational,
    iter_reduced,
    norm_representation_search,
    solve_norm_equation,
    ternary_solvable_paper,
)
from .isomorphism import are_isomorphic
from .quadfield import QuadField, SquareClass, format_quad, square_class_in_ell

CACHE_ENV = "DIVALG_CACHE"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    z: int | None
    bound: int = DEFAULT_BOUND
    limit: int = 20
    format: str = "json"
    cache: Path | None = None


def _parse_z(text: str) -> int:
    try:
        z = int(text)
    except ValueError:
        raise UsageError(f"z must be an integer, got {text!r}") from None
    if not is_Z_member(z):
        raise UsageError(f"z={z} is not square-free or is 0 or 1")
    return z


def _parse_triple(text: str) -> Triple:
    try:
        return Triple.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None


def _parse_rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None


# -- cache ------------------------------------------------------------------


class ResultCache:
    """Append-only JSON-lines cache keyed by (operation, canonical arguments)."""

    def __init__(self, path: Path) -> None:
        self.path = path
        self._entries: dict[tuple[str, str], Any] = {}
        if path.exists():
            for line in path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                rec = json.loads(line)
                if rec.get("version") == __version__:
                    self._entries[(rec["op"], rec["args"])] = rec["result"]

    def get(self, op: str, args: str):
        return self._entries.get((op, args))

    def put(self, op: str, args: str, result) -> None:
        self._entries[(op, args)] = result
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            rec = {"op": op, "args": args, "result": result, "version": __version__}
            fh.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")


def _cached(cfg: RunConfig, op: str, args: dict, compute: Callable[[], tuple[Any, int]]):
    """Run ``compute`` (returning (result, exit_code)) through the cache when one is configured."""
    if cfg.cache is None:
        return compute()
    cache = ResultCache(cfg.cache)
    key = json.dumps(args, sort_keys=True)
    hit = cache.get(op, key)
    if hit is not None:
        return hit["result"], hit["exit"]
    result, code = compute()
    # round-trip through JSON so hits and misses render identically
    result = json.loads(json.dumps(result))
    cache.put(op, key, {"result": result, "exit": code})
    return result, code


# -- commands ---------------------------------------------------------------


def _require_z(cfg: RunConfig) -> int:
    if cfg.z is None:
        raise UsageError("--z is required")
    return cfg.z


def cmd_fields(z: int, limit: int) -> tuple[list[dict], int]:
    rows = []
    for s in gen_S(z, limit):
        spec = AlgebraSpec.of(z, (0, s, 0))
        rows.append({
            "z": z, "rule": "S", "value": s,
            "triple": spec.c.as_strings(),
            "classification": classify_triple(spec).value,
            "nucleus_dim": len(right_nucleus_basis(spec)),
        })
    return rows, 0


def cmd_skewfields(z: int, limit: int, reduce: bool = False) -> tuple[list[dict], int]:
    if z == -1:
        values, rule, label = list(gen_T_gaussian(limit)), "T", "transversal"
    elif reduce:
        values = list(islice(iter_reduced(z, gen_skew_candidates(z)), limit))
        rule, label = "skew_candidates", "reduced_candidate"
    else:
        values, rule, label = list(gen_skew_candidates(z, limit)), "skew_candidates", "candidate"
    rows = [{"z": z, "rule": rule, "label": label, "value": t, "triple": ["1", "0", str(t)]} for t in values]
    return rows, 0


def cmd_is_division(z: int, c: Triple, bound: int) -> tuple[dict, int]:
    verdict = decide_admissible(z, c, bound)
    out = {"z": z, "triple": c.as_strings(), **verdict.to_json()}
    return out, 1 if isinstance(verdict, NotAdmissible) else 0


def cmd_iso(z: int, c: Triple, d: Triple) -> tuple[dict, int]:
    verdict = are_isomorphic(z, c, d)
    out = {"z": z, "c": c.as_strings(), "d": d.as_strings(), **verdict.to_json()}
    return out, 0 if verdict.isomorphic else 1


def cmd_nucleus(z: int, c: Triple) -> tuple[dict, int]:
    spec = AlgebraSpec(QuadField(z), c)
    basis = right_nucleus_basis(spec)
    return {
        "z": z,
        "triple": c.as_strings(),
        "basis": [[str(v) for v in b.coords()] for b in basis],
        "dim": len(basis),
        "associative": is_associative(spec),
        "commutative": is_commutative(spec),
        "classification": classify_triple(spec).value,
    }, 0


def cmd_family(z: int | None, family: str, limit: int) -> tuple[list[dict], int]:
    if family == "ptilde":
        if z is None:
            raise UsageError("--z is required for the ptilde family")
        points = list(gen_Ptilde(z, limit=limit))
    else:
        if z not in (None, -1):
            raise UsageError(f"family {family} is only defined over Q(i) (z = -1)")
        z = -1
        points = {
            "p1": lambda: list(gen_P1(limit=limit)),
            "p2": lambda: list(gen_P2(limit=limit)),
            "f": lambda: list(gen_F_gaussian(limit)),
        }[family]()
    rows = []
    for pt in points:
        zz = pt.params.get("z", z)
        row = {"z": zz, "rule": pt.family, "value": {k: str(v) for k, v in pt.params.items() if k != "z"},
               "triple": pt.triple.as_strings(), "classification": classify_triple(pt.triple).value}
        rows.append(row)
    return rows, 0


def cmd_norm_test(z: int, w: Fraction) -> tuple[dict, int]:
    if w == 0:
        raise UsageError("w must be nonzero")
    cls = squarefree_class(w)
    member = in_norm_group_rational(z, w)
    rep = None
    if member:
        a, b = solve_norm_equation(z, cls)
        r = rational_sqrt(Fraction(w) / cls)
        rep = format_quad(a * r, b * r, z)
    out = {
        "z": z, "w": str(w), "squarefree_class": cls,
        "in_norm_group": member,
        "ternary_solvable": ternary_solvable_paper(z, cls),
        "representation": rep,
    }
    return out, 0 if member else 1


# -- audit ------------------------------------------------------------------


def _squarefree_upto(n: int) -> list[int]:
    out = []
    for w in signed_squarefree_stream():
        if abs(w) > n:
            return out
        out.append(w)
    return out


def _audit_norm_pair(args: tuple[int, int, int]) -> list[str]:
    z, w, bound = args
    failures = []
    member = in_norm_group(z, w)
    found = norm_representation_search(z, w, bound)
    if found is not None:
        a, b = found
        if a * a - z * b * b != w:
            failures.append(f"norm_search z={z} w={w}: bad representation {found}")
        if not member:
            failures.append(f"norm_criterion z={z} w={w}: representation {found} but criterion false")
    if member != ternary_solvable_paper(z, w):
        failures.append(f"ternary z={z} w={w}: criterion {member} vs Legendre form {not member}")
    if member and solve_norm_equation(z, w) is None:
        failures.append(f"norm_solve z={z} w={w}: criterion true but no representation")
    return failures


def _audit_S(z: int, n: int, w_max: int) -> list[str]:
    failures = []
    ell = QuadField(z)
    members = gen_S(z).take(n)
    for s, t in combinations(members, 2):
        if square_class_in_ell(Fraction(s, t), ell) is not SquareClass.NONSQUARE:
            failures.append(f"S_irredundance z={z}: {s} ~ {t}")
    for w in _squarefree_upto(w_max):
        if square_class_in_ell(w, ell) is not SquareClass.NONSQUARE:
            continue
        rep = _S_representative(z, w)
        if rep is None or square_class_in_ell(Fraction(w, rep), ell) is SquareClass.NONSQUARE:
            failures.append(f"S_exhaustive z={z}: no member equivalent to w={w}")
    return failures


def _S_representative(z: int, w: int) -> int | None:
    """The member of S equivalent to w, searched among members with |s| <= |z w|."""
    ell = QuadField(z)
    for s in gen_S(z):
        if abs(s) > abs(z * w):
            return None
        if square_class_in_ell(Fraction(w, s), ell) is not SquareClass.NONSQUARE:
            return s
    return None


def run_audit(z_max: int, w_max: int, bound: int, workers: int = 1) -> dict:
    zs = [z for z in _squarefree_upto(z_max)]
    checks: dict[str, list[str]] = {}
    pairs = [(z, w, bound) for z in zs for w in _squarefree_upto(w_max)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_audit_norm_pair, pairs, chunksize=16))
    else:
        results = [_audit_norm_pair(p) for p in pairs]
    checks["norm_criterion"] = [f for r in results for f in r]
    checks["S_transversal"] = [f for z in zs for f in _audit_S(z, 15, w_max)]
    t_members = gen_T_gaussian().take(12)
    checks["T_irredundance"] = [
        f"T z={t} z'={u}" for t, u in combinations(t_members, 2)
        if squarefree_class(t * u) > 0 and is_sum_two_squares_nat(squarefree_class(t * u))
    ]
    fam_failures = []
    for pt in gen_F_gaussian(5):
        verdict = decide_admissible(-1, pt.triple, bound)
        if not isinstance(verdict, ProvenAdmissible):
            fam_failures.append(f"family {pt.family} {pt.triple}: {verdict.status}")
        if search_nontrivial_solution(system_of(-1, pt.triple), min(bound, 30)) is not None:
            fam_failures.append(f"family {pt.family} {pt.triple}: search found a zero divisor")
    checks["families"] = fam_failures
    report = {
        "pairs": len(pairs),
        "checks": {name: {"failures": fails, "passed": not fails} for name, fails in checks.items()},
    }
    report["ok"] = all(v["passed"] for v in report["checks"].values())
    return report


def cmd_audit(z_max: int, w_max: int, bound: int, workers: int = 1) -> tuple[dict, int]:
    report = run_audit(z_max, w_max, bound, workers)
    return report, 0 if report["ok"] else 1


# -- rendering --------------------------------------------------------------


def _flatten(value) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    if value is None:
        return ""
    return str(value)


def render(result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True, ensure_ascii=False)
    rows = result if isinstance(result, list) else [result]
    if fmt == "csv":
        buf = io.StringIO()
        keys = sorted({k for row in rows for k in row})
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _flatten(row.get(k)) for k in keys})
        return buf.getvalue().rstrip("\n")
    lines = []
    for row in rows:
        lines.append("  ".join(f"{k}={_flatten(row[k])}" for k in sorted(row)))
    return "\n".join(lines)


# -- argument parsing ---------------------------------------------------------

_VALUE_FLAGS = {"--z", "--c", "--d", "--w", "--bound", "--limit"}


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let ``--c -1,0,0`` through argparse by rewriting it as ``--c=-1,0,0``."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--z", help="square-free integer naming ell = Q(sqrt z)")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="search height bound")
    common.add_argument("--limit", type=int, default=20, help="number of stream entries")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache", help=f"JSON-lines cache file (env {CACHE_ENV} also works)")

    parser = argparse.ArgumentParser(prog="divalg", description=__doc__)
    parser.add_argument("--version", action="version", version=f"divalg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fields", parents=[common], help="field transversal rows (0, s, 0)")
    sk = sub.add_parser("skewfields", parents=[common], help="skew-field transversal or candidates (1, 0, t)")
    sk.add_argument("--reduce", action="store_true", help="greedily reduce candidates")
    dv = sub.add_parser("is-division", parents=[common], help="admissibility verdict for a triple")
    dv.add_argument("--c", required=True, help="triple as p/q,p/q,p/q")
    iso = sub.add_parser("iso", parents=[common], help="isomorphism test of two triples")
    iso.add_argument("--c", required=True)
    iso.add_argument("--d", required=True)
    nu = sub.add_parser("nucleus", parents=[common], help="right nucleus basis")
    nu.add_argument("--c", required=True)
    fam = sub.add_parser("family", parents=[common], help="admissible non-associative families")
    fam.add_argument("--family", choices=("ptilde", "p1", "p2", "f"), required=True)
    nt = sub.add_parser("norm-test", parents=[common], help="is w a norm from Q(sqrt z)")
    nt.add_argument("--w", required=True)
    au = sub.add_parser("audit", parents=[common], help="criterion-vs-oracle cross checks")
    au.add_argument("--z-max", type=int, default=30)
    au.add_argument("--w-max", type=int, default=30)
    au.add_argument("--workers", type=int, default=1)
    return parser


def run(argv: list[str] | None = None) -> tuple[str, int]:
    args = build_parser().parse_args(_join_negative_values(list(sys.argv[1:] if argv is None else argv)))
    if args.bound < 1 or args.limit < 0:
        raise UsageError("--bound must be >= 1 and --limit >= 0")
    cache = args.cache or os.environ.get(CACHE_ENV)
    cfg = RunConfig(
        z=None if args.z is None else _parse_z(args.z),
        bound=args.bound, limit=args.limit, format=args.format,
        cache=Path(cache) if cache else None,
    )
    cmd = args.command
    if cmd == "fields":
        z = _require_z(cfg)
        key, fn = {"z": z, "limit": cfg.limit}, lambda: cmd_fields(z, cfg.limit)
    elif cmd == "skewfields":
        z = _require_z(cfg)
        key, fn = {"z": z, "limit": cfg.limit, "reduce": args.reduce}, lambda: cmd_skewfields(z, cfg.limit, args.reduce)
    elif cmd == "is-division":
        z, c = _require_z(cfg), _parse_triple(args.c)
        key, fn = {"z": z, "c": c.as_strings(), "bound": cfg.bound}, lambda: cmd_is_division(z, c, cfg.bound)
    elif cmd == "iso":
        z, c, d = _require_z(cfg), _parse_triple(args.c), _parse_triple(args.d)
        key, fn = {"z": z, "c": c.as_strings(), "d": d.as_strings()}, lambda: cmd_iso(z, c, d)
    elif cmd == "nucleus":
        z, c = _require_z(cfg), _parse_triple(args.c)
        key, fn = {"z": z, "c": c.as_strings()}, lambda: cmd_nucleus(z, c)
    elif cmd == "family":
        key, fn = ({"z": cfg.z, "family": args.family, "limit": cfg.limit},
                   lambda: cmd_family(cfg.z, args.family, cfg.limit))
    elif cmd == "norm-test":
        z, w = _require_z(cfg), _parse_rational(args.w)
        key, fn = {"z": z, "w": str(w)}, lambda: cmd_norm_test(z, w)
    else:
        key = {"z_max": args.z_max, "w_max": args.w_max, "bound": cfg.bound}
        fn = lambda: cmd_audit(args.z_max, args.w_max, cfg.bound, args.workers)  # noqa: E731
    result, code = _cached(cfg, cmd, key, fn)
    return render(result, cfg.format), code


def main(argv: list[str] | None = None) -> int:
    try:
        text, code = run(argv)
    except UsageError as exc:
        print(f"divalg: error: {exc}", file=sys.stderr)
        return 2
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
