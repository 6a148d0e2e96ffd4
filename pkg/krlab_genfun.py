#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Multi-sum series, product sides, and the equality checks between them.

級數配方（recipe）是資料，不是程式：全部放在 recipes.yaml，
格式見 spec_recipes_v0.md。這裡只有一個通用的求值器。

每一項（term）是一個多重和：
    Σ q^{E(n)} · ∏ numerator · ∏ (1 + x^d q^{F(n)}) · x^{X(n)} / ∏ denominator
E 可以有 1/2 係數，但對每組 n 必須是整數。
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterator, Mapping

import numpy as np

try:
    import yaml
except Exception as e:  # pragma: no cover
    print("Missing dependency: pyyaml")
    print("Install: python -m pip install pyyaml numpy")
    raise SystemExit(1) from e

from krlab_partitions import (
    CountTable,
    Partition,
    VariantId,
    count_distinct_odd,
    enumerate_congruence,
    enumerate_variant,
    parse_variant,
    satisfies,
)
from krlab_qseries import (
    LaurentResolutionError,
    TruncatedSeries,
    TruncationError,
    first_difference,
    inv_poch_vector,
    mul_q,
    poch_finite,
    poch_series,
    product_series_inverse,
)

DEFAULT_RECIPES = Path(__file__).resolve().with_name("recipes.yaml")


class RecipeError(ValueError):
    """Malformed recipe record, or a term that does not evaluate cleanly."""


# -- recipe model ----------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Σ coef · ∏ vars, with rational coefficients."""

    monomials: tuple[tuple[Fraction, tuple[str, ...]], ...]

    @property
    def symbols(self) -> set[str]:
        return {v for _, vs in self.monomials for v in vs}

    def value(self, env: Mapping[str, int]) -> int:
        total = Fraction(0)
        for c, vs in self.monomials:
            t = c
            for v in vs:
                t *= env[v]
            total += t
        if total.denominator != 1:
            raise RecipeError(f"exponent {total} is not an integer at {dict(env)}")
        return int(total)

    def univariate(self, var: str) -> tuple[Fraction, Fraction]:
        """(a, b) of the part a·var² + b·var that involves var alone."""

        a = b = Fraction(0)
        for c, vs in self.monomials:
            if vs == (var, var):
                a += c
            elif vs == (var,):
                b += c
        return a, b

    @property
    def constant(self) -> Fraction:
        return sum((c for c, vs in self.monomials if not vs), Fraction(0))


@dataclass(frozen=True)
class Poch:
    sign: str  # "+": (q^base; q^step)_n, "-": (-q^base; q^step)_n
    base: int
    step: int
    count_var: str | None
    count_offset: int

    def count(self, env: Mapping[str, int]) -> int:
        n = self.count_offset + (env[self.count_var] if self.count_var else 0)
        if n < 0:
            raise RecipeError(f"Pochhammer length {n} < 0 at {dict(env)}")
        return n

    def min_shift(self) -> int:
        """Lowest q-power any length of this factor can contribute."""

        return sum(min(0, self.base + j * self.step) for j in range(max(0, -self.base) // self.step + 1))


@dataclass(frozen=True)
class Boost:
    x_degree: int
    exponent: Poly


@dataclass(frozen=True)
class RecipeTerm:
    ranges: tuple[tuple[str, int], ...]
    exponent: Poly
    x_form: tuple[tuple[str, int], ...]
    x_const: int = 0
    numerator: tuple[Poch, ...] = ()
    denominator: tuple[Poch, ...] = ()
    boosts: tuple[Boost, ...] = ()

    def x_degree(self, env: Mapping[str, int]) -> int:
        return self.x_const + sum(c * env[v] for v, c in self.x_form)


@dataclass(frozen=True)
class SeriesRecipe:
    id: str
    terms: tuple[RecipeTerm, ...]
    family: str | None = None
    note: str = ""

    @property
    def variant(self) -> VariantId | None:
        return parse_variant(self.family) if self.family else None


@dataclass(frozen=True)
class ProductRecipe:
    id: str
    modulus: int
    residues: tuple[int, ...]
    sum_side: str


@dataclass(frozen=True)
class Identity:
    name: str
    left: str
    right: str
    suite: str


@dataclass(frozen=True)
class Erratum:
    recipe: str
    family: str
    at: tuple[int, int]
    witness: Partition


@dataclass(frozen=True)
class RecipeBook:
    series: dict[str, SeriesRecipe]
    products: dict[str, ProductRecipe]
    identities: tuple[Identity, ...] = ()
    errata: tuple[Erratum, ...] = ()
    source: str = ""

    def recipe(self, rid: str) -> SeriesRecipe:
        try:
            return self.series[rid]
        except KeyError:
            raise RecipeError(f"no series recipe {rid!r} in {self.source}") from None

    def for_variant(self, variant: VariantId | str) -> SeriesRecipe:
        v = parse_variant(variant)
        return self.recipe(v.value)

    def product(self, pid: int | str) -> ProductRecipe:
        key = f"conj{pid}" if isinstance(pid, int) or str(pid).isdigit() else str(pid)
        try:
            return self.products[key]
        except KeyError:
            raise RecipeError(f"no product {pid!r} (known: {', '.join(sorted(self.products))})") from None


# -- loading ---------------------------------------------------------------


def _need(obj: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in obj:
        raise RecipeError(f"{where}: missing field {key!r}")
    return obj[key]


def _parse_poly(raw: Any, where: str) -> Poly:
    if not isinstance(raw, list):
        raise RecipeError(f"{where}: expected a list of monomials")
    out = []
    for k, mono in enumerate(raw):
        if not isinstance(mono, list) or not mono:
            raise RecipeError(f"{where}[{k}]: monomial must be a nonempty list")
        try:
            coef = Fraction(str(mono[0]))
        except (ValueError, ZeroDivisionError):
            raise RecipeError(f"{where}[{k}]: bad coefficient {mono[0]!r}") from None
        out.append((coef, tuple(sorted(str(v) for v in mono[1:]))))
    return Poly(tuple(out))


def _parse_poch(raw: Any, where: str, default_sign: str) -> Poch:
    if not isinstance(raw, dict):
        raise RecipeError(f"{where}: expected a mapping")
    sign = str(raw.get("sign", default_sign))
    if sign not in ("+", "-"):
        raise RecipeError(f"{where}: sign must be '+' or '-'")
    base = int(_need(raw, "base", where))
    step = int(_need(raw, "step", where))
    if step < 1:
        raise RecipeError(f"{where}: step must be >= 1")
    cnt = _need(raw, "count", where)
    if isinstance(cnt, int):
        var, off = None, cnt
    elif isinstance(cnt, str):
        var, off = cnt, 0
    elif isinstance(cnt, list) and len(cnt) == 2:
        var, off = str(cnt[0]), int(cnt[1])
    else:
        raise RecipeError(f"{where}: count must be a variable, an integer or [variable, offset]")
    return Poch(sign, base, step, var, off)


def _parse_term(raw: Any, where: str) -> RecipeTerm:
    if not isinstance(raw, dict):
        raise RecipeError(f"{where}: expected a mapping")
    ranges = _need(raw, "ranges", where)
    if not isinstance(ranges, dict) or not ranges:
        raise RecipeError(f"{where}.ranges: expected a nonempty mapping")
    rng = tuple((str(k), int(v)) for k, v in ranges.items())
    if any(lo < 0 for _, lo in rng):
        raise RecipeError(f"{where}.ranges: lower bounds must be >= 0")
    exponent = _parse_poly(_need(raw, "exponent", where), f"{where}.exponent")
    xd = dict(_need(raw, "x_degree", where))
    x_const = int(xd.pop("const", 0))
    x_form = tuple((str(k), int(v)) for k, v in xd.items())
    num = tuple(_parse_poch(p, f"{where}.numerator[{i}]", "-") for i, p in enumerate(raw.get("numerator", []) or []))
    den = tuple(_parse_poch(p, f"{where}.denominator[{i}]", "+") for i, p in enumerate(raw.get("denominator", []) or []))
    boosts = []
    for i, b in enumerate(raw.get("boosts", []) or []):
        bw = f"{where}.boosts[{i}]"
        boosts.append(Boost(int(_need(b, "x_degree", bw)), _parse_poly(_need(b, "exponent", bw), f"{bw}.exponent")))
    term = RecipeTerm(rng, exponent, x_form, x_const, num, den, tuple(boosts))
    _check_term(term, where)
    return term


def _check_term(term: RecipeTerm, where: str) -> None:
    names = {v for v, _ in term.ranges}
    used = set(term.exponent.symbols) | {v for v, _ in term.x_form}
    used |= {p.count_var for p in term.numerator + term.denominator if p.count_var}
    for b in term.boosts:
        used |= b.exponent.symbols
    missing = used - names
    if missing:
        raise RecipeError(f"{where}: symbols {sorted(missing)} not in ranges")
    for c, vs in term.exponent.monomials:
        if len(set(vs)) > 1 and c <= 0:
            raise RecipeError(f"{where}: cross term {vs} needs a positive coefficient")
        if len(vs) > 2:
            raise RecipeError(f"{where}: monomial {vs} has degree > 2")
    for v in names:
        a, b = term.exponent.univariate(v)
        if a <= 0:
            raise RecipeError(f"{where}: {v} needs a positive square coefficient to bound the sum")
    for p in term.denominator:
        if p.sign != "+" or p.base < 1:
            raise RecipeError(f"{where}: denominators must be (q^a; q^b)_n with a >= 1")


def load_recipes(path: str | Path | None = None) -> RecipeBook:
    return _load_cached(str(Path(path or DEFAULT_RECIPES).resolve()))


@lru_cache(maxsize=8)
def _load_cached(path: str) -> RecipeBook:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except OSError as e:
        raise RecipeError(f"cannot read recipe table {path}: {e}") from e
    if not isinstance(data, dict):
        raise RecipeError(f"{path}: top level must be a mapping")

    series: dict[str, SeriesRecipe] = {}
    for rid, rec in (data.get("series") or {}).items():
        where = f"series.{rid}"
        terms = _need(rec, "terms", where)
        parsed = tuple(_parse_term(t, f"{where}.terms[{i}]") for i, t in enumerate(terms))
        family = rec.get("family")
        if family is not None:
            parse_variant(family)
        series[str(rid)] = SeriesRecipe(str(rid), parsed, family, str(rec.get("note", "")))

    products: dict[str, ProductRecipe] = {}
    for pid, rec in (data.get("products") or {}).items():
        where = f"products.{pid}"
        side = str(_need(rec, "sum_side", where))
        if side not in series:
            raise RecipeError(f"{where}: sum_side {side!r} is not a series recipe")
        res = tuple(int(r) for r in _need(rec, "residues", where))
        products[str(pid)] = ProductRecipe(str(pid), int(_need(rec, "modulus", where)), res, side)

    identities = []
    for i, rec in enumerate(data.get("identities") or []):
        where = f"identities[{i}]"
        ident = Identity(str(_need(rec, "name", where)), str(_need(rec, "left", where)),
                         str(_need(rec, "right", where)), str(_need(rec, "suite", where)))
        for side in (ident.left, ident.right):
            if side not in series:
                raise RecipeError(f"{where}: unknown series {side!r}")
        identities.append(ident)

    errata = []
    for i, rec in enumerate(data.get("errata") or []):
        where = f"errata[{i}]"
        at = _need(rec, "at", where)
        errata.append(Erratum(str(_need(rec, "recipe", where)), str(_need(rec, "family", where)),
                              (int(at[0]), int(at[1])), Partition.parse(str(_need(rec, "witness", where)))))

    return RecipeBook(series, products, tuple(identities), tuple(errata), path)


# -- evaluation ------------------------------------------------------------


def _var_limit(term: RecipeTerm, var: str, lo: int, slack: Fraction) -> int:
    """Largest value of var whose own quadratic part stays within slack."""

    a, b = term.exponent.univariate(var)
    v = lo
    # f(v) = a v^2 + b v is convex; walk past the vertex until it exceeds slack
    while a * (v + 1) ** 2 + b * (v + 1) <= slack or 2 * a * (v + 1) + a + b <= 0:
        v += 1
    return v


def _term_envs(term: RecipeTerm, max_q: int) -> Iterator[dict[str, int]]:
    lows = dict(term.ranges)
    mins = {}
    for var, lo in term.ranges:
        a, b = term.exponent.univariate(var)
        mins[var] = min(a * v * v + b * v for v in range(lo, _var_limit(term, var, lo, Fraction(0)) + 2))
    floor = term.exponent.constant + sum(p.min_shift() for p in term.numerator)
    bounds = []
    for var, lo in term.ranges:
        others = sum(m for w, m in mins.items() if w != var)
        bounds.append(range(lo, _var_limit(term, var, lo, max_q - floor - others) + 1))
    names = [v for v, _ in term.ranges]
    for combo in itertools.product(*bounds):
        yield dict(zip(names, combo))


@lru_cache(maxsize=65536)
def _numerator_body(sign: str, base: int, step: int, n: int, order: int) -> tuple[int, tuple[int, ...]]:
    lf = poch_finite(sign, base, step, n, order)
    return lf.q_shift, tuple(int(c) for c in lf.body.q_vector())


def _term_vector(term: RecipeTerm, env: Mapping[str, int], max_q: int) -> np.ndarray | None:
    e = term.exponent.value(env)
    lens = [(p, p.count(env)) for p in term.numerator]
    shifts = [sum(min(0, p.base + j * p.step) for j in range(n)) for p, n in lens]
    lead = e + sum(shifts)
    if lead > max_q:
        return None
    order = max_q - lead
    body = np.zeros(order + 1, dtype=object)
    body[0] = 1
    for (p, n), s in zip(lens, shifts):
        _, vec = _numerator_body(p.sign, p.base, p.step, n, order + s)
        body = mul_q(body, np.array(vec[: order + 1], dtype=object))
    nz = np.nonzero(body != 0)[0]
    if len(nz) and lead + int(nz[0]) < 0:
        raise RecipeError(f"term at {dict(env)} leaves q^{lead + int(nz[0])} after Laurent resolution")
    out = np.zeros(max_q + 1, dtype=object)
    if lead >= 0:
        out[lead:] = body[: max_q + 1 - lead]
    else:
        out[: order + 1 + lead] = body[-lead:]
    for p in term.denominator:
        out = mul_q(out, inv_poch_vector(p.base, p.step, p.count(env), max_q))
    return out


def build_sum_series(recipe: SeriesRecipe, max_q: int, max_x: int) -> TruncatedSeries:
    """Evaluate every term of the recipe up to q^max_q, x^max_x."""

    acc = np.zeros((max_q + 1, max_x + 1), dtype=object)
    for k, term in enumerate(recipe.terms):
        for env in _term_envs(term, max_q):
            x = term.x_degree(env)
            if x > max_x:
                continue
            try:
                vec = _term_vector(term, env, max_q)
            except LaurentResolutionError as e:
                raise RecipeError(f"{recipe.id} term {k} at {env}: {e}") from e
            if vec is None:
                continue
            for chosen in itertools.product((False, True), repeat=len(term.boosts)):
                xs, lift = x, 0
                for use, b in zip(chosen, term.boosts):
                    if use:
                        xs += b.x_degree
                        lift += b.exponent.value(env)
                if xs > max_x or lift > max_q:
                    continue
                acc[lift:, xs] += vec[: max_q + 1 - lift]
    return TruncatedSeries(acc)


def build_conjecture_product(pid: int | str, max_q: int, book: RecipeBook | None = None) -> TruncatedSeries:
    prod = (book or load_recipes()).product(pid)
    return product_series_inverse(prod.modulus, prod.residues, max_q)


def table_series(table: CountTable, max_x: int | None = None) -> TruncatedSeries:
    """CountTable as a bivariate series (coefficient of q^n x^m = count)."""

    if max_x is None:
        max_x = max((m for _, m, _ in table.rows()), default=0)
    c = np.zeros((table.max_n + 1, max_x + 1), dtype=object)
    for n, m, k in table.rows():
        if m <= max_x:
            c[n, m] = k
    return TruncatedSeries(c)


@dataclass(frozen=True)
class SeriesVerdict:
    equal: bool
    up_to_q: int
    at_x1: bool = False
    first: tuple[int, int, int, int] | None = None  # (n, m, a, b)

    def describe(self) -> str:
        if self.equal:
            return f"equal up to q^{self.up_to_q}" + (" at x=1" if self.at_x1 else "")
        n, m, a, b = self.first
        where = f"q^{n}" if self.at_x1 else f"q^{n} x^{m}"
        return f"differ at {where}: {a} != {b}"


def series_equal(a: TruncatedSeries, b: TruncatedSeries, up_to_q: int, at_x1: bool = False) -> SeriesVerdict:
    if at_x1:
        a, b = a.at_x1(), b.at_x1()
    diff = first_difference(a, b, up_to_q)
    return SeriesVerdict(diff is None, up_to_q, at_x1, diff)


# -- checks ----------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    truncation: int
    detail: str = ""
    counterexample: dict | None = field(default=None)

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def to_json(self) -> dict:
        obj = {"name": self.name, "status": self.status, "truncation": self.truncation, "detail": self.detail}
        if self.counterexample is not None:
            obj["counterexample"] = self.counterexample
        return obj


def _verdict_result(name: str, v: SeriesVerdict) -> CheckResult:
    ce = None
    if not v.equal:
        n, m, a, b = v.first
        ce = {"n": n, "m": m, "left": str(a), "right": str(b)}
    return CheckResult(name, v.equal, v.up_to_q, v.describe(), ce)


def check_theorem(variant: VariantId | str, max_n: int, book: RecipeBook | None = None,
                  table: CountTable | None = None) -> CheckResult:
    """Sum side vs exhaustive enumeration, every (n, m) with n <= max_n."""

    v = parse_variant(variant)
    book = book or load_recipes()
    table = table if table is not None else enumerate_variant(v, max_n)
    series = build_sum_series(book.for_variant(v), max_n, max_n)
    verdict = series_equal(series, table_series(table.restrict(max_n), max_n), max_n)
    return _verdict_result(f"theorem {v.value}: series = enumeration", verdict)


def check_identity(ident: Identity, max_q: int, book: RecipeBook | None = None) -> CheckResult:
    book = book or load_recipes()
    a = build_sum_series(book.recipe(ident.left), max_q, max_q)
    b = build_sum_series(book.recipe(ident.right), max_q, max_q)
    return _verdict_result(f"{ident.name}: {ident.left} = {ident.right}", series_equal(a, b, max_q))


def check_conjecture(pid: int | str, max_q: int, book: RecipeBook | None = None) -> CheckResult:
    """Product side vs sum side at x = 1."""

    book = book or load_recipes()
    prod = book.product(pid)
    lhs = product_series_inverse(prod.modulus, prod.residues, max_q)
    rhs = build_sum_series(book.recipe(prod.sum_side), max_q, max_q)
    verdict = series_equal(lhs, rhs, max_q, at_x1=True)
    return _verdict_result(f"{prod.id}: product mod {prod.modulus} = {prod.sum_side} at x=1", verdict)


def check_conjecture_counts(pid: int | str, max_n: int, book: RecipeBook | None = None) -> CheckResult:
    """Same identity, counted: congruence partitions vs family members."""

    book = book or load_recipes()
    prod = book.product(pid)
    cong = enumerate_congruence(prod.modulus, prod.residues, max_n)
    fam = enumerate_variant(prod.sum_side, max_n)
    for n in range(max_n + 1):
        if cong.total(n) != fam.total(n):
            ce = {"n": n, "left": cong.total(n), "right": fam.total(n)}
            return CheckResult(f"{prod.id}: counts", False, max_n, f"totals differ at n={n}", ce)
    return CheckResult(f"{prod.id}: counts", True, max_n, f"totals agree for n <= {max_n}")


def check_erratum(err: Erratum, book: RecipeBook | None = None) -> CheckResult:
    """The printed form must disagree with the family exactly where documented."""

    book = book or load_recipes()
    n, m = err.at
    printed = build_sum_series(book.recipe(err.recipe), n, m).coefficient(n, m)
    actual = enumerate_variant(err.family, n).entry(n, m)
    witness_ok = satisfies(err.family, err.witness) and (err.witness.weight, err.witness.length) == (n, m)
    ok = printed != actual and witness_ok
    detail = f"{err.recipe} gives {printed} at q^{n} x^{m}, {err.family} has {actual} (witness {err.witness})"
    return CheckResult(f"erratum {err.recipe}", ok, n, detail)


# (child, parent, d): child members are parent members with d added to every part
SHIFT_IDENTITIES: tuple[tuple[VariantId, VariantId, int], ...] = (
    (VariantId.KR4, VariantId.KR1, 1),
    (VariantId.KRB1, VariantId.KR2, -1),
    (VariantId.KRB4_2, VariantId.KR3_1, -2),
    (VariantId.KRC2_1, VariantId.KR6, -1),
)


def _shift_arg(delta: int) -> str:
    """Parent weight argument for a shift by delta per part: n-m, n+m, n+2m, ..."""

    k = -delta
    if k == 0:
        return "n"
    coeff = "" if abs(k) == 1 else str(abs(k))
    return f"n{'+' if k > 0 else '-'}{coeff}m"


def check_shift_identity(child: VariantId | str, parent: VariantId | str, delta: int, max_n: int) -> CheckResult:
    """child(n, m) = parent(n - delta·m, m) for n <= max_n."""

    c, p = parse_variant(child), parse_variant(parent)
    name = f"shift {c.value}(n, m) = {p.value}({_shift_arg(delta)}, m)"
    ct = enumerate_variant(c, max_n)
    pt = enumerate_variant(p, max_n * (1 + max(0, -delta)))
    for n in range(max_n + 1):
        for m in range(n + 1):
            pn = n - delta * m
            want = pt.entry(pn, m) if pn >= 0 else 0
            if ct.entry(n, m) != want:
                ce = {"n": n, "m": m, "left": ct.entry(n, m), "right": want}
                return CheckResult(name, False, max_n, f"differs at n={n}, m={m}", ce)
    return CheckResult(name, True, max_n, f"all (n, m) with n <= {max_n}")


def check_distinct_odd(max_parts: int = 8, max_q: int = 40) -> CheckResult:
    """(-q; q^2)_n / (q^2; q^2)_n counts partitions into <= n parts with no odd part repeated."""

    grid = count_distinct_odd(max_parts, max_q)
    for n in range(max_parts + 1):
        s = poch_series("-", 1, 2, n, max_q).q_vector()
        s = mul_q(s, inv_poch_vector(2, 2, n, max_q))
        for k in range(max_q + 1):
            if s[k] != grid[k][n]:
                ce = {"n": n, "k": k, "series": int(s[k]), "brute_force": grid[k][n]}
                return CheckResult("distinct odd parts", False, max_q, f"differs at n={n}, q^{k}", ce)
    return CheckResult("distinct odd parts", True, max_q, f"n <= {max_parts}, up to q^{max_q}")


__all__ = [
    "Boost",
    "CheckResult",
    "DEFAULT_RECIPES",
    "Erratum",
    "Identity",
    "Poch",
    "Poly",
    "ProductRecipe",
    "RecipeBook",
    "RecipeError",
    "RecipeTerm",
    "SHIFT_IDENTITIES",
    "SeriesRecipe",
    "SeriesVerdict",
    "TruncationError",
    "build_conjecture_product",
    "build_sum_series",
    "check_conjecture",
    "check_conjecture_counts",
    "check_distinct_odd",
    "check_erratum",
    "check_identity",
    "check_shift_identity",
    "check_theorem",
    "load_recipes",
    "series_equal",
    "table_series",
]
