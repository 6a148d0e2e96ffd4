#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Exact truncated power series in q (weight) and x (length).

係數以 numpy object 陣列保存（元素為 Python int），所以全程精確、不會溢位。
陣列形狀為 [max_q+1, max_x+1]；單變數 q 級數就是 max_x=0 的特例。

負次方只允許出現在 LaurentFactor（例如 (-1/q; q^2)_n），
轉回 TruncatedSeries 前必須確認所有負次方係數皆為 0。
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np


class LaurentResolutionError(ValueError):
    """A negative q-exponent survived where a power series was required."""


class TruncationError(ValueError):
    """Requested coefficient or comparison beyond the truncation order."""


def _zeros(max_q: int, max_x: int = 0) -> np.ndarray:
    if max_q < 0 or max_x < 0:
        raise ValueError("truncation orders must be >= 0")
    return np.zeros((max_q + 1, max_x + 1), dtype=object)


def _vector(max_q: int) -> np.ndarray:
    return np.zeros(max_q + 1, dtype=object)


def mul_q(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated product of two q-vectors of equal length."""

    n = min(len(a), len(b))
    out = _vector(n - 1)
    for i in range(n):
        c = a[i]
        if c:
            out[i:] += c * b[: n - i]
    return out


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Σ c[n, m] q^n x^m with 0 <= n <= max_q, 0 <= m <= max_x."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if self.coeffs.ndim != 2:
            raise ValueError("coeffs must be a 2-D array [q, x]")
        if self.coeffs.dtype != object:
            raise ValueError("coeffs must hold exact Python ints (dtype=object)")
        self.coeffs.setflags(write=False)

    # -- construction ---------------------------------------------------

    @classmethod
    def zero(cls, max_q: int, max_x: int = 0) -> "TruncatedSeries":
        return cls(_zeros(max_q, max_x))

    @classmethod
    def one(cls, max_q: int, max_x: int = 0) -> "TruncatedSeries":
        return cls.monomial(0, 0, max_q, max_x)

    @classmethod
    def monomial(cls, q_power: int, x_power: int, max_q: int, max_x: int = 0, coef: int = 1) -> "TruncatedSeries":
        if q_power < 0 or x_power < 0:
            raise LaurentResolutionError(f"monomial q^{q_power} x^{x_power} has a negative exponent")
        c = _zeros(max_q, max_x)
        if q_power <= max_q and x_power <= max_x:
            c[q_power, x_power] = coef
        return cls(c)

    @classmethod
    def from_q_vector(cls, vec: Sequence[int], x_power: int = 0, max_q: int | None = None, max_x: int = 0) -> "TruncatedSeries":
        if max_q is None:
            max_q = len(vec) - 1
        c = _zeros(max_q, max_x)
        if x_power <= max_x:
            k = min(len(vec), max_q + 1)
            c[:k, x_power] = np.asarray(list(vec[:k]), dtype=object)
        return cls(c)

    # -- inspection -----------------------------------------------------

    @property
    def max_q(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def max_x(self) -> int:
        return self.coeffs.shape[1] - 1

    def coefficient(self, n: int, m: int = 0) -> int:
        if n > self.max_q or m > self.max_x:
            raise TruncationError(f"coefficient ({n}, {m}) beyond truncation ({self.max_q}, {self.max_x})")
        if n < 0 or m < 0:
            return 0
        return int(self.coeffs[n, m])

    def q_vector(self, m: int = 0) -> np.ndarray:
        return self.coeffs[:, m].copy()

    def items(self) -> Iterator[tuple[int, int, int]]:
        nz = np.argwhere(self.coeffs != 0)
        for n, m in sorted(map(tuple, nz)):
            yield int(n), int(m), int(self.coeffs[n, m])

    def to_json(self) -> str:
        obj = {
            "max_q": self.max_q,
            "max_x": self.max_x,
            "coeffs": [[n, m, str(c)] for n, m, c in self.items()],
        }
        return json.dumps(obj, sort_keys=True)

    # -- arithmetic -----------------------------------------------------

    def truncate(self, max_q: int, max_x: int | None = None) -> "TruncatedSeries":
        if max_x is None:
            max_x = self.max_x
        c = _zeros(max_q, max_x)
        kq = min(max_q, self.max_q) + 1
        kx = min(max_x, self.max_x) + 1
        c[:kq, :kx] = self.coeffs[:kq, :kx]
        return TruncatedSeries(c)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        mq = min(self.max_q, other.max_q)
        mx = min(self.max_x, other.max_x)
        return TruncatedSeries(self.coeffs[: mq + 1, : mx + 1] + other.coeffs[: mq + 1, : mx + 1])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        mq = min(self.max_q, other.max_q)
        mx = min(self.max_x, other.max_x)
        return TruncatedSeries(self.coeffs[: mq + 1, : mx + 1] - other.coeffs[: mq + 1, : mx + 1])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        mq = min(self.max_q, other.max_q)
        mx = min(self.max_x, other.max_x)
        a = self.coeffs[: mq + 1, : mx + 1]
        b = other.coeffs[: mq + 1, : mx + 1]
        out = _zeros(mq, mx)
        for i, j in np.argwhere(a != 0):
            out[i:, j:] += a[i, j] * b[: mq + 1 - i, : mx + 1 - j]
        return TruncatedSeries(out)

    def shift(self, q_power: int, x_power: int = 0) -> "TruncatedSeries":
        """Multiply by q^q_power x^x_power.

        A negative q_power is a Laurent resolution: the dropped low-order
        coefficients must vanish, and the result loses that many orders.
        """

        if x_power < 0:
            raise LaurentResolutionError("negative x shift")
        c = self.coeffs
        if q_power < 0:
            d = -q_power
            if np.any(c[:d, :] != 0):
                n, m = (int(t) for t in np.argwhere(c[:d, :] != 0)[0])
                raise LaurentResolutionError(f"term q^{n - d} x^{m} survives a shift by q^{q_power}")
            c = c[d:, :]
            q_power = 0
        out = _zeros(c.shape[0] - 1, self.max_x)
        rows = out.shape[0] - q_power
        cols = out.shape[1] - x_power
        if rows > 0 and cols > 0:
            out[q_power:, x_power:] = c[:rows, :cols]
        return TruncatedSeries(out)

    def at_x1(self) -> "TruncatedSeries":
        """Fold the x-degree: the univariate series at x = 1."""

        folded = _zeros(self.max_q, 0)
        folded[:, 0] = self.coeffs.sum(axis=1)
        return TruncatedSeries(folded)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def scalar_shift(a: TruncatedSeries, q_power: int, x_power: int = 0) -> TruncatedSeries:
    return a.shift(q_power, x_power)


@dataclass(frozen=True, eq=False)
class LaurentFactor:
    """q^q_shift · body, body a univariate power series."""

    q_shift: int
    body: TruncatedSeries

    def times(self, other: "LaurentFactor") -> "LaurentFactor":
        return LaurentFactor(self.q_shift + other.q_shift, self.body * other.body)

    def times_q(self, q_power: int) -> "LaurentFactor":
        return LaurentFactor(self.q_shift + q_power, self.body)

    def resolve(self, max_q: int) -> TruncatedSeries:
        """Convert to an ordinary series of order max_q."""

        need = max_q - self.q_shift
        if self.body.max_q < need:
            raise TruncationError(
                f"body of order {self.body.max_q} cannot fill q^{max_q} after a shift of {self.q_shift}"
            )
        if need < 0:
            return TruncatedSeries.zero(max_q)
        body = self.body.truncate(need, 0)
        if self.q_shift < 0:
            return body.shift(self.q_shift)
        vec = np.concatenate([_vector(self.q_shift - 1), body.q_vector()])
        return TruncatedSeries.from_q_vector(vec)

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs, exponents including the shift."""

        return [(n + self.q_shift, c) for n, _, c in self.body.items()]


def _sign_value(sign: str | int) -> int:
    if sign in ("+", 1):
        return 1
    if sign in ("-", "−", -1):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def poch_finite(sign: str | int, base_q_power: int, step: int, n: int, max_q: int) -> LaurentFactor:
    """∏_{j<n} (1 - s·q^(base + j·step)), s = +1 for '+', -1 for '-'.

    So ('-', 1, 2, n) is (-q; q^2)_n and ('+', 1, 1, n) is (q; q)_n.
    """

    if n < 0:
        raise ValueError("n must be >= 0")
    if step < 1:
        raise ValueError("step must be >= 1")
    s = _sign_value(sign)
    shift = sum(min(0, base_q_power + j * step) for j in range(n))
    order = max_q - shift
    body = _vector(order)
    body[0] = 1
    for j in range(n):
        e = base_q_power + j * step
        if e >= 0:
            # times (1 - s q^e)
            if e == 0:
                body = body * (1 - s)
            elif e <= order:
                body[e:] += -s * body[: order + 1 - e]
        else:
            # q^e (q^-e - s): times (-s + q^-e)
            d = -e
            nxt = -s * body
            if d <= order:
                nxt[d:] += body[: order + 1 - d]
            body = nxt
    return LaurentFactor(shift, TruncatedSeries.from_q_vector(body))


def poch_series(sign: str | int, base_q_power: int, step: int, n: int, max_q: int) -> TruncatedSeries:
    return poch_finite(sign, base_q_power, step, n, max_q).resolve(max_q)


def _divide_geometric(vec: np.ndarray, exponents: Iterable[int]) -> None:
    """In place: vec /= ∏ (1 - q^e), blockwise."""

    top = len(vec) - 1
    for e in exponents:
        if e < 1:
            raise ValueError(f"cannot invert (1 - q^{e})")
        for start in range(e, top + 1, e):
            stop = min(start + e, top + 1)
            vec[start:stop] += vec[start - e : stop - e]


@lru_cache(maxsize=4096)
def _inv_poch_vector(base_q_power: int, step: int, n: int, max_q: int) -> tuple[int, ...]:
    vec = _vector(max_q)
    vec[0] = 1
    _divide_geometric(vec, (e for e in (base_q_power + j * step for j in range(n)) if e <= max_q))
    return tuple(int(c) for c in vec)


def inv_poch_vector(base_q_power: int, step: int, n: int, max_q: int) -> np.ndarray:
    if base_q_power < 1:
        raise ValueError("base_q_power must be >= 1")
    if step < 1:
        raise ValueError("step must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    return np.array(_inv_poch_vector(base_q_power, step, n, max_q), dtype=object)


def inv_poch_series(base_q_power: int, step: int, n: int, max_q: int) -> TruncatedSeries:
    """1 / ∏_{j<n} (1 - q^(base + j·step)), exact to q^max_q."""

    return TruncatedSeries.from_q_vector(inv_poch_vector(base_q_power, step, n, max_q))


def product_series_inverse(modulus: int, residues: Iterable[int], max_q: int) -> TruncatedSeries:
    """1 / ∏_{r in residues} (q^r; q^modulus)_∞ truncated at q^max_q."""

    res = sorted(set(int(r) for r in residues))
    if not res:
        raise ValueError("residue set must be nonempty")
    if modulus < 2 or any(not 1 <= r <= modulus for r in res):
        raise ValueError(f"residues must lie in [1, {modulus}]")
    vec = _vector(max_q)
    vec[0] = 1
    _divide_geometric(vec, (e for r in res for e in range(r, max_q + 1, modulus)))
    return TruncatedSeries.from_q_vector(vec)


def first_difference(
    a: TruncatedSeries, b: TruncatedSeries, up_to_q: int
) -> tuple[int, int, int, int] | None:
    """First (n, m, a_nm, b_nm) with a_nm != b_nm for n <= up_to_q, or None."""

    for s in (a, b):
        if s.max_q < up_to_q:
            raise TruncationError(f"series of order q^{s.max_q} cannot be compared up to q^{up_to_q}")
    mx = min(a.max_x, b.max_x)
    da = a.coeffs[: up_to_q + 1, : mx + 1]
    db = b.coeffs[: up_to_q + 1, : mx + 1]
    diff = np.argwhere(da != db)
    if len(diff) == 0:
        return None
    n, m = min(map(tuple, diff))
    return int(n), int(m), int(da[n, m]), int(db[n, m])
