#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Gordon marking, clusters and the ±1 forward/backward moves.

這裡只放最原始的操作：
- gordon_mark：由小到大替每個部分標上最小可用的 mark
- extract_clusters：把 mark 1..r 串成 r-cluster（r ≤ 3）
- forward_move_kind_r / backward_move_kind_r：權重 ±1 的單步移動

cluster 層級的合成移動（含 adjustment / prestidigitation）在 krlab_bijection.py。
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from krlab_partitions import Partition

MAX_MARK = 3


class DecompositionError(ValueError):
    """Parts that cannot be covered by clusters of rank <= 3."""


class MoveNotApplicable(ValueError):
    """Preconditions of a forward/backward move fail."""


@dataclass(frozen=True)
class MarkedPartition:
    parts: Partition
    marks: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.marks) != len(self.parts.parts):
            raise ValueError("one mark per part required")

    @property
    def values(self) -> tuple[int, ...]:
        return self.parts.parts

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.values, self.marks))

    def locate(self, value: int, mark: int) -> int:
        """Index of the part (value, mark); marks are unique per value."""

        for i, vm in enumerate(self.pairs()):
            if vm == (value, mark):
                return i
        raise MoveNotApplicable(f"no {mark}-marked part equal to {value}")

    def marks_at(self, value: int) -> set[int]:
        return {r for a, r in self.pairs() if a == value}

    def render(self) -> str:
        """Two-dimensional array: one column per distinct value, mark rows from bottom."""

        if not self.values:
            return "(empty)"
        cols = sorted(set(self.values))
        top = max(self.marks)
        width = max(len(str(c)) for c in cols)
        lines = []
        for r in range(top, 0, -1):
            cells = []
            for c in cols:
                cells.append(str(c).rjust(width) if r in self.marks_at(c) else " " * width)
            lines.append(f"{r} | " + " ".join(cells).rstrip())
        return "\n".join(lines)


def gordon_mark(p: Partition) -> MarkedPartition:
    used: dict[int, set[int]] = defaultdict(set)
    marks = []
    for a in p.parts:
        r = 1
        while r in used[a] or r in used[a - 1]:
            r += 1
        used[a].add(r)
        marks.append(r)
    return MarkedPartition(p, tuple(marks))


@dataclass(frozen=True)
class Cluster:
    rank: int
    member_positions: tuple[int, ...]  # index of the j-marked member, j = 1..rank
    anchor: int  # value of the 1-marked member
    values: tuple[int, ...]


@dataclass(frozen=True)
class ClusterDecomposition:
    clusters: tuple[Cluster, ...]

    @property
    def counts(self) -> tuple[int, int, int]:
        c = [0, 0, 0]
        for cl in self.clusters:
            c[cl.rank - 1] += 1
        return c[0], c[1], c[2]

    def of_rank(self, rank: int) -> list[Cluster]:
        return [c for c in self.clusters if c.rank == rank]


def extract_clusters(mp: MarkedPartition) -> ClusterDecomposition:
    pairs = mp.pairs()
    if pairs and max(mp.marks) > MAX_MARK:
        raise DecompositionError(f"mark {max(mp.marks)} > {MAX_MARK} in {mp.parts}")
    where = {vm: i for i, vm in enumerate(pairs)}
    used: set[int] = set()
    clusters: list[Cluster] = []
    top_mark = max(mp.marks, default=0)
    for r in range(top_mark, 0, -1):
        for i, (a, mark) in enumerate(pairs):
            if mark != r or i in used:
                continue
            if (a, r + 1) in where or (a + 1, r + 1) in where:
                raise DecompositionError(f"{r}-marked {a} sits under an {r + 1}-marked part")
            chain = [i]
            cur = a
            for s in range(r - 1, 0, -1):
                j = where.get((cur, s))
                if j is None:
                    j = where.get((cur - 1, s))
                if j is None or j in used:
                    raise DecompositionError(f"{r}-marked {a} has no free {s}-marked part at {cur} or {cur - 1}")
                chain.append(j)
                cur = pairs[j][0]
            chain.reverse()
            used.update(chain)
            vals = tuple(pairs[k][0] for k in chain)
            clusters.append(Cluster(rank=r, member_positions=tuple(chain), anchor=vals[0], values=vals))
    if len(used) != len(pairs):
        left = sorted(pairs[i] for i in range(len(pairs)) if i not in used)
        raise DecompositionError(f"parts not covered by any cluster: {left}")
    clusters.sort(key=lambda c: (c.anchor, c.member_positions[0]))
    return ClusterDecomposition(tuple(clusters))


def _remark(values: list[int]) -> MarkedPartition:
    return gordon_mark(Partition(tuple(sorted(values))))


def _check_kind(mp: MarkedPartition, position: int, r: int) -> int:
    if not 0 <= position < len(mp.marks):
        raise MoveNotApplicable(f"position {position} out of range")
    if mp.marks[position] != r:
        raise MoveNotApplicable(f"part #{position} is {mp.marks[position]}-marked, not {r}-marked")
    return mp.values[position]


def _higher_mark_near(mp: MarkedPartition, a: int, r: int) -> bool:
    return any(m > r for m in mp.marks_at(a) | mp.marks_at(a + 1))


def forward_move_kind_r(mp: MarkedPartition, position: int, r: int) -> MarkedPartition:
    a = _check_kind(mp, position, r)
    if _higher_mark_near(mp, a, r):
        raise MoveNotApplicable(f"a mark above {r} sits at {a} or {a + 1}")
    values = list(mp.values)
    below = mp.marks_at(a - 1)
    if below:
        r0 = max(below)
        if r0 < r and r0 not in mp.marks_at(a + 1):
            values[mp.locate(a - 1, r0)] += 1
            return _remark(values)
    if all(s in mp.marks_at(a) | mp.marks_at(a + 1) for s in range(1, r)) and r not in mp.marks_at(a + 2):
        values[position] += 1
        return _remark(values)
    raise MoveNotApplicable(f"no forward move of kind {r} at the {r}-marked {a}")


def backward_move_kind_r(mp: MarkedPartition, position: int, r: int) -> MarkedPartition:
    a = _check_kind(mp, position, r)
    if a == 1:
        raise MoveNotApplicable("cannot move a part equal to 1 backward")
    if _higher_mark_near(mp, a, r):
        raise MoveNotApplicable(f"a mark above {r} sits at {a} or {a + 1}")
    here = mp.marks_at(a)
    two_below = mp.marks_at(a - 2)
    for r0 in range(1, r + 1):
        if r0 in here and r0 not in two_below:
            values = list(mp.values)
            values[mp.locate(a, r0)] -= 1
            return _remark(values)
    raise MoveNotApplicable(f"no backward move of kind {r} at the {r}-marked {a}")


def audit_marking(p: Partition) -> list[str]:
    """Marking and move properties of one partition; empty when all hold.

    - re-marking a marked partition is the identity
    - an r-marked a (r > 1) sees every smaller mark at a-1 or a
    - each applicable forward move weighs +1 and some backward move
      of the same kind on the result gives the input back
    """

    mp = gordon_mark(p)
    bad: list[str] = []
    if gordon_mark(mp.parts) != mp:
        bad.append(f"{p}: marking is not canonical")
    for a, r in mp.pairs():
        near = mp.marks_at(a) | mp.marks_at(a - 1)
        missing = [s for s in range(1, r) if s not in near]
        if missing:
            bad.append(f"{p}: {r}-marked {a} has no {missing} marks at {a - 1} or {a}")
    for pos, r in enumerate(mp.marks):
        try:
            moved = forward_move_kind_r(mp, pos, r)
        except MoveNotApplicable:
            continue
        if moved.parts.weight != p.weight + 1:
            bad.append(f"{p}: forward move of kind {r} at #{pos} changed the weight by {moved.parts.weight - p.weight}")
            continue
        if not any(_restores(moved, k, r, mp) for k in range(len(moved.marks)) if moved.marks[k] == r):
            bad.append(f"{p}: no backward move of kind {r} undoes the forward move at #{pos} ({moved.parts})")
    return bad


def _restores(mp: MarkedPartition, position: int, r: int, target: MarkedPartition) -> bool:
    try:
        return backward_move_kind_r(mp, position, r) == target
    except MoveNotApplicable:
        return False
