#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""kr-partition-lab command line.

子命令：
  count      窮舉計數表 (n, m, count)
  series     多重和級數的係數表
  product    同餘側乘積的係數
  verify     驗證套件（theorems / conjectures / roundtrip / section5 / properties / all）
  bijection  λ <-> (β, μ, η[, ν]) 解碼或編碼，可輸出逐步 trace（JSONL）

Usage:
  python krlab_cli.py count --variant kr1 --max-n 9
  python krlab_cli.py series --variant kr5 --max-n 20 --format json
  python krlab_cli.py verify --suite theorems
  python krlab_cli.py bijection --variant krb1-1 --parts 1,6,7,9,11,14,14 --trace trace.jsonl

Exit codes: 0 成功；1 驗證失敗；2 參數 / 使用錯誤。
狀態行印到 stderr，資料（CSV / JSON）印到 stdout 或 --out。
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from krlab_bijection import (
    BaseSpec,
    MoveTuple,
    TraceLog,
    base_partition,
    check_base_minimality,
    check_roundtrip,
    decode,
    encode,
)
from krlab_genfun import (
    SHIFT_IDENTITIES,
    CheckResult,
    build_conjecture_product,
    build_sum_series,
    check_conjecture,
    check_conjecture_counts,
    check_distinct_odd,
    check_erratum,
    check_identity,
    check_shift_identity,
    check_theorem,
    load_recipes,
)
from krlab_gordon import audit_marking
from krlab_partitions import THEOREM_VARIANTS, Partition, VariantId, enumerate_variant, iter_members, parse_variant

DEFAULT_MAX_N = {"theorems": 35, "conjectures": 60, "roundtrip": 24, "section5": 30, "properties": 18, "minimality": 24}
SUITES = ("theorems", "conjectures", "roundtrip", "section5", "properties")
FAILURE_LIMIT = 5


class UsageError(ValueError):
    """Bad flag combination or environment setting."""


def _workers() -> int:
    """Worker processes for verify, from KRLAB_THREADS (default: CPU count)."""

    raw = os.environ.get("KRLAB_THREADS", "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"KRLAB_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"KRLAB_THREADS must be >= 1, got {n}")
    return n


def _int_list(text: str | None) -> tuple[int, ...]:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        print(f"Saved: {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _max_n(ns: argparse.Namespace, default: int) -> int:
    n = default if ns.max_n is None else ns.max_n
    if n < 0:
        raise UsageError("--max-n must be >= 0")
    return n


# -- verification ----------------------------------------------------------


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def to_json(self, timing: bool = False) -> str:
        obj = {
            "suite": self.suite,
            "status": "pass" if self.ok else "fail",
            "checks": [c.to_json() for c in self.checks],
        }
        if timing:
            obj["wall_time_s"] = round(self.wall_time_s, 3)
        return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class PlannedCheck:
    """One check of a suite: a module-level callable and its arguments."""

    name: str
    truncation: int
    fn: Callable[..., CheckResult]
    args: tuple = ()

    def run(self) -> CheckResult:
        try:
            return self.fn(*self.args)
        except Exception as e:
            return CheckResult(self.name, False, self.truncation, f"{type(e).__name__}: {e}")


def _run_planned(check: PlannedCheck) -> CheckResult:
    return check.run()


def _from_messages(name: str, truncation: int, messages: list[str]) -> CheckResult:
    if not messages:
        return CheckResult(name, True, truncation, f"n <= {truncation}")
    return CheckResult(name, False, truncation, messages[0], {"failures": messages})


def _audit_variant(v: VariantId, max_n: int) -> CheckResult:
    bad: list[str] = []
    for p in iter_members(v, max_n):
        bad.extend(audit_marking(p))
        if len(bad) >= FAILURE_LIMIT:
            break
    return _from_messages(f"marking properties {v.value}", max_n, bad[:FAILURE_LIMIT])


def _roundtrip(v: VariantId, max_n: int) -> CheckResult:
    return _from_messages(f"roundtrip {v.value}", max_n, check_roundtrip(v, max_n, FAILURE_LIMIT))


def _minimality(v: VariantId, max_n: int) -> CheckResult:
    return _from_messages(f"base minimality {v.value}", max_n, check_base_minimality(v, max_n, FAILURE_LIMIT))


def suite_checks(suite: str, max_n: int, minimality_n: int | None = None) -> list[PlannedCheck]:
    """Independent checks of one suite, in report order."""

    book = load_recipes()
    mn = max_n if minimality_n is None else minimality_n
    checks: list[PlannedCheck] = []
    if suite == "theorems":
        checks += [PlannedCheck(f"theorem {v.value}", max_n, check_theorem, (v, max_n)) for v in THEOREM_VARIANTS]
        checks += [PlannedCheck(i.name, max_n, check_identity, (i, max_n)) for i in book.identities if i.suite == "theorems"]
        checks += [PlannedCheck(f"erratum {e.recipe}", e.at[0], check_erratum, (e,)) for e in book.errata]
    elif suite == "conjectures":
        counted = min(max_n, DEFAULT_MAX_N["theorems"])
        for pid in sorted(book.products):
            checks.append(PlannedCheck(f"conjecture {pid}", max_n, check_conjecture, (pid, max_n)))
            checks.append(PlannedCheck(f"conjecture {pid} counted", counted, check_conjecture_counts, (pid, counted)))
    elif suite == "roundtrip":
        checks += [PlannedCheck(f"roundtrip {v.value}", max_n, _roundtrip, (v, max_n)) for v in THEOREM_VARIANTS]
    elif suite == "section5":
        checks += [PlannedCheck(i.name, max_n, check_identity, (i, max_n)) for i in book.identities if i.suite == "section5"]
    elif suite == "properties":
        checks.append(PlannedCheck("distinct odd parts", 40, check_distinct_odd, (8, 40)))
        checks += [PlannedCheck(f"marking properties {v.value}", max_n, _audit_variant, (v, max_n)) for v in THEOREM_VARIANTS]
        checks += [PlannedCheck(f"shift {s[0].value}", max_n, check_shift_identity, (*s, max_n)) for s in SHIFT_IDENTITIES]
        checks += [PlannedCheck(f"base minimality {v.value}", mn, _minimality, (v, mn)) for v in THEOREM_VARIANTS]
    else:
        raise UsageError(f"unknown suite {suite!r} (known: {', '.join(SUITES)}, all)")
    return checks


def run_suite(suite: str, max_n: int | None = None, workers: int = 1) -> VerificationReport:
    """Run one suite (or all) on up to `workers` processes; checks never raise."""

    names = SUITES if suite == "all" else (suite,)
    t0 = time.perf_counter()
    checks: list[PlannedCheck] = []
    for s in names:
        n = DEFAULT_MAX_N[s] if max_n is None else max_n
        checks += suite_checks(s, n, DEFAULT_MAX_N["minimality"] if max_n is None else max_n)
    results: list[CheckResult] = []

    def collect(rs: Iterable[CheckResult]) -> None:
        for r in rs:
            print(f"{'ok  ' if r.ok else 'FAIL'}  {r.name}  (to {r.truncation})", file=sys.stderr)
            results.append(r)

    if workers <= 1 or len(checks) <= 1:
        collect(map(_run_planned, checks))
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(checks))) as pool:
            collect(pool.map(_run_planned, checks))
    return VerificationReport(suite, results, time.perf_counter() - t0)


# -- commands --------------------------------------------------------------


def cmd_count(ns: argparse.Namespace) -> int:
    table = enumerate_variant(parse_variant(ns.variant), _max_n(ns, 20))
    _emit(table.to_json() + "\n" if ns.format == "json" else table.to_csv(), ns.out)
    return 0


def cmd_series(ns: argparse.Namespace) -> int:
    book = load_recipes(ns.recipes)
    if ns.recipe:
        recipe = book.recipe(ns.recipe)
    elif ns.variant:
        recipe = book.for_variant(ns.variant)
    else:
        raise UsageError("series needs --variant or --recipe")
    max_n = _max_n(ns, 20)
    max_x = max_n if ns.max_x is None else ns.max_x
    s = build_sum_series(recipe, max_n, max_x)
    if ns.at_x1:
        s = s.at_x1()
    if ns.format == "json":
        obj = {"recipe": recipe.id, "at_x1": bool(ns.at_x1), **json.loads(s.to_json())}
        _emit(json.dumps(obj, sort_keys=True) + "\n", ns.out)
        return 0
    lines = ["n,count"] if ns.at_x1 else ["n,m,count"]
    for n, m, c in s.items():
        lines.append(f"{n},{c}" if ns.at_x1 else f"{n},{m},{c}")
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def cmd_product(ns: argparse.Namespace) -> int:
    book = load_recipes(ns.recipes)
    max_n = _max_n(ns, 20)
    s = build_conjecture_product(ns.id, max_n, book)
    prod = book.product(ns.id)
    vec = [int(c) for c in s.q_vector()]
    if ns.format == "json":
        obj = {"product": prod.id, "modulus": prod.modulus, "residues": list(prod.residues), "coeffs": vec}
        _emit(json.dumps(obj, sort_keys=True) + "\n", ns.out)
        return 0
    _emit("n,count\n" + "".join(f"{n},{c}\n" for n, c in enumerate(vec)), ns.out)
    return 0


def cmd_verify(ns: argparse.Namespace) -> int:
    if ns.max_n is not None and ns.max_n < 0:
        raise UsageError("--max-n must be >= 0")
    report = run_suite(ns.suite, ns.max_n, _workers())
    print(f"{len(report.checks) - len(report.failures)}/{len(report.checks)} passed in {report.wall_time_s:.1f}s", file=sys.stderr)
    _emit(report.to_json(timing=ns.timing), ns.out)
    return 0 if report.ok else 1


def _print_trace(events: list[dict]) -> None:
    for ev in events:
        parts = "+".join(map(str, ev["parts"]))
        print(f"{ev['step']:>4}  {ev['kind']:<16} r{ev['rank']}  {ev['weight_delta']:+d}  {parts}  (|λ|={ev['weight']})")


def cmd_bijection(ns: argparse.Namespace) -> int:
    v = parse_variant(ns.variant)
    if ns.trace == "-" and ns.format == "json":
        raise UsageError("--trace - writes JSONL to stdout; use a file with --format json")
    stream = None
    if ns.trace == "-":
        stream = sys.stdout
    elif ns.trace:
        stream = open(ns.trace, "w", encoding="utf-8")
    trace = TraceLog(stream)
    try:
        if ns.encode:
            counts = _int_list(ns.counts)
            if not counts:
                raise UsageError("--encode needs --counts n1,n2[,n3]")
            beta = base_partition(BaseSpec(v, counts, ns.case or ""))
            mu = _int_list(ns.mu) or (0,) * counts[0]
            eta = _int_list(ns.eta) or (0,) * counts[1]
            nu = _int_list(ns.nu) or (0,) * (counts[2] if len(counts) > 2 else 0)
            t = MoveTuple(beta, mu, eta, nu, bool(ns.extra))
            lam = encode(v, t, log=trace.log)
        else:
            if ns.parts is None:
                raise UsageError("bijection needs --parts, or --encode with --counts")
            lam = Partition.parse(ns.parts)
            t = decode(v, lam, log=trace.log)
    finally:
        if stream is not None and stream is not sys.stdout:
            stream.close()
            print(f"Saved: {ns.trace}", file=sys.stderr)

    if ns.format == "json":
        obj = {"variant": v.value, "partition": list(lam.parts), "tuple": t.to_json()}
        if not ns.trace:
            obj["trace"] = trace.events
        print(json.dumps(obj, ensure_ascii=False, sort_keys=True))
        return 0
    terms = [str(t.beta.weight), str(sum(t.mu)), str(sum(t.eta))]
    if t.nu:
        terms.append(str(sum(t.nu)))
    if t.extra_move:
        terms.append("1")
    print(f"λ = {lam}  ({v.value})")
    print(t.describe())
    print(f"{lam.weight} = {' + '.join(terms)}")
    if not ns.trace:
        _print_trace(trace.events)
    return 0


# -- argument parsing ------------------------------------------------------


def _variant_table() -> str:
    rows = ["variants (aliases ignore '-', '_' and case, e.g. kr3-1 = kr3_1 = KR31):"]
    for v in VariantId:
        kind = "congruence side" if v.is_congruence else ("mod 12 family" if v.is_mod12 else "mod 9 family")
        rows.append(f"  {v.value:<8} {kind}")
    return "\n".join(rows)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="krlab",
        description="mod 9 / mod 12 difference-condition partition families: enumeration, q-series and bijections.",
        epilog=_variant_table(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, fmt: Sequence[str] = ("csv", "json")) -> None:
        p.add_argument("--max-n", type=int, default=None, help="truncation order (weight)")
        p.add_argument("--format", choices=list(fmt), default=fmt[0])
        p.add_argument("--out", default=None, help="write the payload here instead of stdout")

    p = sub.add_parser("count", help="exhaustive (n, m) counts of a family")
    p.add_argument("--variant", required=True)
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("series", help="coefficients of a sum-side series")
    p.add_argument("--variant", default=None)
    p.add_argument("--recipe", default=None, help="recipe id in the recipe table (e.g. kr3-1-printed)")
    p.add_argument("--recipes", default=None, help="recipe table path (default: recipes.yaml)")
    p.add_argument("--max-x", type=int, default=None)
    p.add_argument("--at-x1", action="store_true", help="set x = 1")
    common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("product", help="coefficients of a congruence product side")
    p.add_argument("--id", required=True, help="1..6 or conj1..conj6")
    p.add_argument("--recipes", default=None)
    common(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser(
        "verify",
        help="run a verification suite",
        description="Checks run in up to KRLAB_THREADS worker processes (default: CPU count; 1 runs in-process).",
    )
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--max-n", type=int, default=None, help="override the per-suite truncation (also used for base minimality, default 24)")
    p.add_argument("--out", default=None)
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", help="decode a partition, or encode a move tuple")
    p.add_argument("--variant", required=True)
    p.add_argument("--parts", default=None, help="partition literal, e.g. 1,6,7,9,11,14,14")
    p.add_argument("--encode", action="store_true")
    p.add_argument("--counts", default=None, help="cluster counts n1,n2[,n3] (encode)")
    p.add_argument("--mu", default=None)
    p.add_argument("--eta", default=None)
    p.add_argument("--nu", default=None)
    p.add_argument("--extra", action="store_true", help="apply the extra move (krc1-2, krc2-2)")
    p.add_argument("--case", default=None, help="base case tag (krb1-1: i, ii, iii)")
    p.add_argument("--trace", default=None, help="JSONL trace path, '-' for stdout")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_bijection)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return ns.func(ns)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
