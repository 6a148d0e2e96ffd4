#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Partition families and exhaustive enumeration for kr-partition-lab.

這個模組放「可測的純邏輯」：分割（partition）型別、各族的判定條件、
以及窮舉計數（CountTable）。不做 I/O，不依賴 numpy。

名詞（對應 GLOSSARY.md）：
- variant：分割族代號（kr1 … krc2-1，以及同餘側 cong1 … cong6）
- mod-9 族：距離 2 的差至少 3；相鄰兩部分差 ≤ 1 時其和須落在指定同餘類
- mod-12 族：距離 3 的差至少 3；距離 2 的差 ≤ 1 時三部分之和須落在指定同餘類
- CountTable：(n=weight, m=length) → count 的稀疏表
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping

INT64_MAX = 2**63 - 1


class UnknownVariant(ValueError):
    """Variant tag not known to this lab (configuration error)."""


class PartitionError(ValueError):
    """Malformed partition literal or part list."""

    def __init__(self, msg: str, index: int | None = None):
        super().__init__(msg)
        self.index = index


class VariantId(Enum):
    KR1 = "kr1"
    KR2 = "kr2"
    KR3 = "kr3"
    KR4 = "kr4"
    KR3_1 = "kr3-1"
    KRB1 = "krb1"
    KRB4_2 = "krb4-2"
    KRB1_1 = "krb1-1"
    KR5 = "kr5"
    KR6 = "kr6"
    KRC1_2 = "krc1-2"
    KRC2_2 = "krc2-2"
    KRC2_1 = "krc2-1"
    CONG1 = "cong1"
    CONG2 = "cong2"
    CONG3 = "cong3"
    CONG4 = "cong4"
    CONG5 = "cong5"
    CONG6 = "cong6"

    @property
    def alias(self) -> str:
        return self.value

    @property
    def is_congruence(self) -> bool:
        return self.value.startswith("cong")

    @property
    def is_mod12(self) -> bool:
        return self in _MOD12


_MOD12 = frozenset(
    {VariantId.KR5, VariantId.KR6, VariantId.KRC1_2, VariantId.KRC2_2, VariantId.KRC2_1}
)

# the 13 families with a sum-side theorem
THEOREM_VARIANTS: tuple[VariantId, ...] = tuple(v for v in VariantId if not v.is_congruence)


def _compact(name: str) -> str:
    return name.strip().lower().replace("-", "").replace("_", "")


_ALIASES = {_compact(v.value): v for v in VariantId}


def parse_variant(name: str | VariantId) -> VariantId:
    """Resolve a CLI alias (kr3-1, kr3_1, kr31, KR3_1 …) to a VariantId."""

    if isinstance(name, VariantId):
        return name
    v = _ALIASES.get(_compact(str(name)))
    if v is None:
        known = ", ".join(x.value for x in VariantId)
        raise UnknownVariant(f"unknown variant: {name!r} (known: {known})")
    return v


@dataclass(frozen=True)
class Partition:
    """Nondecreasing tuple of positive parts (λ1 ≤ λ2 ≤ … ≤ λm)."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        prev = 1
        for i, a in enumerate(self.parts):
            if not isinstance(a, int) or a < 1:
                raise PartitionError(f"part #{i} must be a positive integer, got {a!r}", index=i)
            if a < prev:
                raise PartitionError(f"part #{i} = {a} breaks nondecreasing order", index=i)
            prev = a

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        return cls(tuple(sorted(int(a) for a in parts)))

    @classmethod
    def parse(cls, literal: str) -> "Partition":
        """Parse "1,6,7,9" (comma separated, nondecreasing)."""

        text = literal.strip()
        if not text:
            return cls(())
        out: list[int] = []
        for i, tok in enumerate(text.split(",")):
            tok = tok.strip()
            try:
                out.append(int(tok))
            except ValueError:
                raise PartitionError(f"part #{i} is not an integer: {tok!r}", index=i) from None
        return cls(tuple(out))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def shifted(self, delta: int) -> "Partition":
        return Partition(tuple(a + delta for a in self.parts))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "+".join(str(a) for a in self.parts) if self.parts else "∅"


@dataclass(frozen=True)
class FamilyRule:
    """Difference conditions of one family.

    span=2: mod-9 family (λ[j+2]-λ[j] >= 3, close pairs checked).
    span=3: mod-12 family (λ[j+3]-λ[j] >= 3, close triples checked).
    """

    span: int
    residue: int
    min_part: int = 1
    single: int | None = None  # value allowed at most once

    def violation(self, parts: tuple[int, ...]) -> str | None:
        """Return a readable description of the first violated condition, or None."""

        if parts and parts[0] < self.min_part:
            return f"smallest part {parts[0]} < {self.min_part}"
        if self.single is not None and parts.count(self.single) > 1:
            return f"part {self.single} occurs more than once"
        s = self.span
        for j in range(len(parts) - s):
            if parts[j + s] - parts[j] < 3:
                return f"λ[{j + s}] - λ[{j}] = {parts[j + s] - parts[j]} < 3"
        for j in range(len(parts) - s + 1):
            win = parts[j : j + s]
            if win[-1] - win[0] <= 1 and sum(win) % 3 != self.residue:
                return f"close parts {'+'.join(map(str, win))} sum to {sum(win)} ≢ {self.residue} (mod 3)"
        return None

    def accepts(self, parts: tuple[int, ...]) -> bool:
        return self.violation(parts) is None

    def can_extend(self, parts: list[int], v: int) -> bool:
        """Check only the windows that end at a new largest part v."""

        if not parts:
            return v >= self.min_part
        if v == self.single and parts[-1] == v:
            return False
        s = self.span
        k = len(parts)
        if k >= s and v - parts[k - s] < 3:
            return False
        if k >= s - 1:
            lo = parts[k - s + 1]
            if v - lo <= 1 and (sum(parts[k - s + 1 :]) + v) % 3 != self.residue:
                return False
        return True


@dataclass(frozen=True)
class CongruenceRule:
    modulus: int
    residues: frozenset[int]

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if not self.residues:
            raise ValueError("residue set must be nonempty")
        bad = [r for r in self.residues if not 1 <= r <= self.modulus]
        if bad:
            raise ValueError(f"residues must lie in [1, {self.modulus}], got {sorted(bad)}")

    def allows(self, a: int) -> bool:
        r = a % self.modulus
        return (r or self.modulus) in self.residues

    def violation(self, parts: tuple[int, ...]) -> str | None:
        for i, a in enumerate(parts):
            if not self.allows(a):
                return f"part #{i} = {a} has residue {a % self.modulus} (mod {self.modulus})"
        return None

    def accepts(self, parts: tuple[int, ...]) -> bool:
        return self.violation(parts) is None

    def can_extend(self, parts: list[int], v: int) -> bool:
        return self.allows(v)


FAMILY_RULES: dict[VariantId, FamilyRule] = {
    VariantId.KR1: FamilyRule(span=2, residue=0),
    VariantId.KR2: FamilyRule(span=2, residue=0, min_part=2),
    VariantId.KR3: FamilyRule(span=2, residue=0, min_part=3),
    VariantId.KR3_1: FamilyRule(span=2, residue=0, min_part=3, single=3),
    VariantId.KR4: FamilyRule(span=2, residue=2, min_part=2),
    VariantId.KRB4_2: FamilyRule(span=2, residue=2, single=1),
    VariantId.KRB1: FamilyRule(span=2, residue=1),
    VariantId.KRB1_1: FamilyRule(span=2, residue=1, single=2),
    VariantId.KR5: FamilyRule(span=3, residue=1, single=1),
    VariantId.KRC1_2: FamilyRule(span=3, residue=1),
    VariantId.KR6: FamilyRule(span=3, residue=2, min_part=2, single=2),
    VariantId.KRC2_2: FamilyRule(span=3, residue=2),
    VariantId.KRC2_1: FamilyRule(span=3, residue=2, single=1),
}

# product sides of the six congruence identities
CONGRUENCE_SIDES: dict[VariantId, tuple[int, tuple[int, ...]]] = {
    VariantId.CONG1: (9, (1, 3, 6, 8)),
    VariantId.CONG2: (9, (2, 3, 6, 7)),
    VariantId.CONG3: (9, (3, 4, 5, 6)),
    VariantId.CONG4: (9, (2, 3, 5, 8)),
    VariantId.CONG5: (12, (1, 3, 4, 6, 7, 10, 11)),
    VariantId.CONG6: (12, (2, 3, 5, 6, 7, 8, 11)),
}


def rule_for(variant: VariantId | str) -> FamilyRule | CongruenceRule:
    v = parse_variant(variant)
    if v.is_congruence:
        modulus, residues = CONGRUENCE_SIDES[v]
        return CongruenceRule(modulus, frozenset(residues))
    return FAMILY_RULES[v]


def violation(variant: VariantId | str, p: Partition) -> str | None:
    return rule_for(variant).violation(p.parts)


def satisfies(variant: VariantId | str, p: Partition) -> bool:
    return rule_for(variant).accepts(p.parts)


@dataclass(frozen=True)
class CountTable:
    """Sparse (n, m) → count table over 0 <= n <= max_n."""

    label: str
    max_n: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (n, m), c in self.entries.items():
            if c > INT64_MAX:
                raise OverflowError(f"{self.label}: count at (n={n}, m={m}) exceeds int64")

    def entry(self, n: int, m: int) -> int:
        return self.entries.get((n, m), 0)

    def row(self, n: int) -> dict[int, int]:
        return {m: c for (nn, m), c in sorted(self.entries.items()) if nn == n}

    def total(self, n: int) -> int:
        return sum(c for (nn, _), c in self.entries.items() if nn == n)

    def restrict(self, max_n: int) -> "CountTable":
        if max_n > self.max_n:
            raise ValueError(f"cannot restrict a table of max_n={self.max_n} to {max_n}")
        kept = {k: c for k, c in self.entries.items() if k[0] <= max_n}
        return CountTable(self.label, max_n, kept)

    def rows(self) -> list[tuple[int, int, int]]:
        return [(n, m, c) for (n, m), c in sorted(self.entries.items())]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "m", "count"])
        w.writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> str:
        obj = {"variant": self.label, "max_n": self.max_n, "entries": [list(r) for r in self.rows()]}
        return json.dumps(obj, ensure_ascii=False, sort_keys=True)


def _grow(rule, parts: list[int], weight: int, max_n: int) -> Iterator[tuple[int, ...]]:
    start = parts[-1] if parts else getattr(rule, "min_part", 1)
    for v in range(start, max_n - weight + 1):
        if not rule.can_extend(parts, v):
            continue
        parts.append(v)
        yield tuple(parts)
        yield from _grow(rule, parts, weight + v, max_n)
        parts.pop()


def iter_members(variant: VariantId | str, max_n: int) -> Iterator[Partition]:
    """Yield every nonempty family member of weight <= max_n (depth-first order)."""

    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    v = parse_variant(variant)
    rule = rule_for(v)
    for parts in _grow(rule, [], 0, max_n):
        if v.is_mod12 and len(parts) >= 4 and parts[-1] == parts[-4]:
            raise PartitionError(f"{v.value}: part {parts[-1]} occurs 4 or more times in {parts}")
        yield Partition(parts)


def members_by_weight(variant: VariantId | str, max_n: int) -> dict[int, list[Partition]]:
    out: dict[int, list[Partition]] = {n: [] for n in range(max_n + 1)}
    out[0].append(Partition(()))
    for p in iter_members(variant, max_n):
        out[p.weight].append(p)
    return out


def enumerate_congruence(modulus: int, residues: Iterable[int], max_n: int, label: str | None = None) -> CountTable:
    """Count partitions into parts with the given residues, keyed by (n, m).

    Parts are added one size at a time (unbounded multiplicity), so the table
    is exact without listing the partitions.
    """

    rule = CongruenceRule(int(modulus), frozenset(int(r) for r in residues))
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    # grid[n][m]
    grid = [[0] * (max_n + 1) for _ in range(max_n + 1)]
    grid[0][0] = 1
    for a in range(1, max_n + 1):
        if not rule.allows(a):
            continue
        for n in range(a, max_n + 1):
            src = grid[n - a]
            dst = grid[n]
            for m in range(1, n - a + 2):
                if src[m - 1]:
                    dst[m] += src[m - 1]
    entries = {(n, m): c for n, row in enumerate(grid) for m, c in enumerate(row) if c}
    if label is None:
        label = f"mod{rule.modulus}:{','.join(map(str, sorted(rule.residues)))}"
    return CountTable(label, max_n, entries)


def enumerate_variant(variant: VariantId | str, max_n: int) -> CountTable:
    """Exhaustive counts kr_variant(n, m) for 0 <= n <= max_n."""

    v = parse_variant(variant)
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    if v.is_congruence:
        modulus, residues = CONGRUENCE_SIDES[v]
        return enumerate_congruence(modulus, residues, max_n, label=v.value)
    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    for p in iter_members(v, max_n):
        key = (p.weight, p.length)
        entries[key] = entries.get(key, 0) + 1
    return CountTable(v.value, max_n, entries)


def count_distinct_odd(max_parts: int, max_n: int) -> list[list[int]]:
    """Brute force: grid[k][n] = partitions of k into at most n parts, no odd part repeated."""

    by_len = [[0] * (max_parts + 1) for _ in range(max_n + 1)]
    by_len[0][0] = 1

    def grow(prev: int, weight: int, length: int) -> None:
        if length == max_parts:
            return
        for v in range(max(prev, 1), max_n - weight + 1):
            if v == prev and v % 2:
                continue
            by_len[weight + v][length + 1] += 1
            grow(v, weight + v, length + 1)

    grow(0, 0, 0)
    grid = []
    for k in range(max_n + 1):
        acc, row = 0, []
        for n in range(max_parts + 1):
            acc += by_len[k][n]
            row.append(acc)
        grid.append(row)
    return grid
