#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Base partitions and the λ <-> (β, μ, η[, ν]) bijections.

做法：把每個 cluster 放在「約化座標」（reduced coordinate）上。
一個 cluster 的實際座標 = 約化座標 + 下方其他 rank 的 cluster 所貢獻的固定位移：

    mod-9 ：singleton v = u + 3·(下方 pair 數)
            pair 索引 t = t'' + (下方 singleton 數)
    mod-12：singleton v = u + 2·D + 3·T
            2-cluster 和 p = p'' + 2·S + 6·T
            3-cluster 頂 k = k'' + S + 2·D

cluster 的先後順序由「高度」決定（約化座標與同 rank 內序號的線性函數）。
一次 forward move = 某個約化座標 +1，然後往上冒泡：每越過一個鄰居就是一次
權重不變的 adjustment；小 rank 越過大 rank 時記為 prestidigitation。
backward move 反之。

base partition 就是所有約化座標取各 rank 的最小值時的實現。
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import count
from typing import IO, Callable, Iterator, Sequence

from krlab_gordon import DecompositionError, extract_clusters, gordon_mark
from krlab_partitions import Partition, VariantId, parse_variant, satisfies, violation


class TupleError(ValueError):
    """Move tuple, base spec or input partition not valid for the variant."""


class BijectionIntegrityError(RuntimeError):
    """Internal invariant broken during a move chain."""


# -- lattices -------------------------------------------------------------


class Mod9Lattice:
    """Singletons (rank 1) and pairs (rank 2); pairs are (3k,3k) or (3k+1,3k+2)."""

    ranks = (1, 2)
    gaps = {1: 2, 2: 2}
    units = {1: 1, 2: 3}
    offsets = {1: {2: 3}, 2: {1: 1}}

    def height(self, rank: int, index: int, coord: int) -> int:
        if rank == 1:
            return 2 * (2 * coord - 3 * index)
        return 2 * (3 * coord - 6 * index + 1) + 1

    def tie(self, rank: int) -> int:
        return 0

    def parts(self, rank: int, actual: int) -> tuple[int, ...]:
        if rank == 1:
            return (actual,)
        if actual % 2:
            k = (actual + 1) // 2
            return (3 * k, 3 * k)
        k = actual // 2
        return (3 * k + 1, 3 * k + 2)

    def actual(self, rank: int, values: tuple[int, ...]) -> int:
        if rank == 1:
            return values[0]
        a, b = values
        if a == b and a % 3 == 0:
            return 2 * (a // 3) - 1
        if b == a + 1 and a % 3 == 1:
            return 2 * (a // 3)
        raise BijectionIntegrityError(f"pair {a},{b} is off the lattice")


class Mod12Lattice:
    """Singletons, 2-clusters (by their sum p) and 3-clusters (by their top k).

    residue 1: 3-clusters are (k-1, k-1, k); residue 2: (k-1, k, k).
    """

    ranks = (1, 2, 3)
    gaps = {1: 2, 2: 4, 3: 3}
    units = {1: 1, 2: 1, 3: 3}
    offsets = {1: {2: 2, 3: 3}, 2: {1: 2, 3: 6}, 3: {1: 1, 2: 2}}
    _ties = {3: 0, 2: 1, 1: 2}

    def __init__(self, residue: int):
        self.residue = residue

    def height(self, rank: int, index: int, coord: int) -> int:
        if rank == 1:
            return 4 * (coord - index) + 3
        if rank == 2:
            return 2 * (coord - 4 * index)
        return 4 * (coord - 3 * index) - (4 if self.residue == 1 else 2)

    def tie(self, rank: int) -> int:
        return self._ties[rank]

    def parts(self, rank: int, actual: int) -> tuple[int, ...]:
        if rank == 1:
            return (actual,)
        if rank == 2:
            return (actual // 2, actual - actual // 2)
        k = actual
        return (k - 1, k - 1, k) if self.residue == 1 else (k - 1, k, k)

    def actual(self, rank: int, values: tuple[int, ...]) -> int:
        if rank == 1:
            return values[0]
        if rank == 2:
            a, b = values
            if b - a > 1:
                raise BijectionIntegrityError(f"2-cluster {a},{b} is not a close pair")
            return a + b
        if self.parts(3, values[-1]) != tuple(values):
            raise BijectionIntegrityError(f"3-cluster {values} has the wrong shape")
        return values[-1]


MOD9 = Mod9Lattice()
MOD12_R1 = Mod12Lattice(1)
MOD12_R2 = Mod12Lattice(2)


@dataclass(frozen=True)
class Layout:
    """How one variant (or one case of it) sits on its lattice."""

    lattice: Mod9Lattice | Mod12Lattice
    floors: tuple[int, ...]  # reduced coordinate of the smallest cluster, per rank
    shift: int = 0  # added to every part of the lattice realization
    extra: bool = False  # smallest 2-cluster may take an extra +1 move
    pinned: tuple[int, ...] = ()  # lattice values kept out of the board

    def base_coord(self, rank: int, index: int, extra_move: bool = False) -> int:
        if self.extra and rank == 2:
            if index == 0:
                return 3 if extra_move else 2
            return 4 * index + 3
        return self.floors[rank - 1] + self.lattice.gaps[rank] * index


LAYOUTS: dict[VariantId, Layout] = {
    VariantId.KR1: Layout(MOD9, (1, 0)),
    VariantId.KR2: Layout(MOD9, (2, 1)),
    VariantId.KR3: Layout(MOD9, (3, 1)),
    VariantId.KR3_1: Layout(MOD9, (3, 2)),
    VariantId.KR4: Layout(MOD9, (1, 0), shift=1),
    VariantId.KRB1: Layout(MOD9, (2, 1), shift=-1),
    VariantId.KRB4_2: Layout(MOD9, (3, 2), shift=-2),
    VariantId.KR5: Layout(MOD12_R1, (1, 3, 3)),
    VariantId.KR6: Layout(MOD12_R2, (2, 5, 3)),
    VariantId.KRC1_2: Layout(MOD12_R1, (1, 2, 2), extra=True),
    VariantId.KRC2_2: Layout(MOD12_R2, (1, 2, 2), extra=True),
    VariantId.KRC2_1: Layout(MOD12_R2, (2, 5, 3), shift=-1),
}

# krb1-1 works one unit up, where it looks like kr3-1 with a possible pinned 2
KRB1_1_CASES: dict[str, Layout] = {
    "i": Layout(MOD9, (2, 2), shift=-1),
    "ii": Layout(MOD9, (3, 2), shift=-1),
    "iii": Layout(MOD9, (4, 2), shift=-1, pinned=(2,)),
}


def _variant(variant: VariantId | str) -> VariantId:
    v = parse_variant(variant)
    if v.is_congruence:
        raise TupleError(f"{v.value} is a congruence side; it has no cluster bijection")
    return v


def rank_count(variant: VariantId | str) -> int:
    return 3 if _variant(variant).is_mod12 else 2


def _norm_counts(variant: VariantId, counts: Sequence[int]) -> tuple[int, ...]:
    c = tuple(int(x) for x in counts)
    k = rank_count(variant)
    if len(c) == 3 and k == 2 and c[2] == 0:
        c = c[:2]
    if len(c) != k:
        raise TupleError(f"{variant.value} expects {k} cluster counts, got {len(c)}")
    if any(x < 0 for x in c):
        raise TupleError(f"cluster counts must be >= 0, got {c}")
    return c


def default_case(variant: VariantId | str, counts: Sequence[int]) -> str:
    v = _variant(variant)
    c = _norm_counts(v, counts)
    n1, n2 = c[0], c[1]
    if v is VariantId.KRB1_1:
        return "i" if n2 == 0 else "ii"
    if v in (VariantId.KR3_1, VariantId.KRB4_2):
        return "n1=0" if n1 == 0 else ("n1=1" if n1 == 1 else "n1>=2")
    if LAYOUTS[v].extra:
        return "n2=0" if n2 == 0 else "n2>0"
    return "n1=0" if n1 == 0 else "n1>0"


def cases(variant: VariantId | str, counts: Sequence[int]) -> list[str]:
    v = _variant(variant)
    c = _norm_counts(v, counts)
    if v is VariantId.KRB1_1 and c[1] > 0:
        return ["ii", "iii"]
    return [default_case(v, c)]


def layout_for(variant: VariantId | str, case_tag: str = "") -> Layout:
    v = _variant(variant)
    if v is VariantId.KRB1_1:
        if case_tag not in KRB1_1_CASES:
            raise TupleError(f"krb1-1 needs case i, ii or iii, got {case_tag!r}")
        return KRB1_1_CASES[case_tag]
    return LAYOUTS[v]


# -- data types ----------------------------------------------------------


@dataclass(frozen=True)
class BaseSpec:
    variant: VariantId
    counts: tuple[int, ...]
    case_tag: str = ""

    def resolved(self) -> "BaseSpec":
        v = _variant(self.variant)
        c = _norm_counts(v, self.counts)
        tag = self.case_tag or default_case(v, c)
        if tag not in cases(v, c):
            raise TupleError(f"case {tag!r} does not apply to {v.value} with counts {c} (expected one of {cases(v, c)})")
        return BaseSpec(v, c, tag)

    @property
    def x_degree(self) -> int:
        extra = 1 if self.case_tag == "iii" else 0
        return sum((r + 1) * n for r, n in enumerate(self.counts)) + extra


@dataclass(frozen=True)
class MoveTuple:
    beta: Partition
    mu: tuple[int, ...] = ()
    eta: tuple[int, ...] = ()
    nu: tuple[int, ...] = ()
    extra_move: bool = False

    @property
    def weight(self) -> int:
        return self.beta.weight + sum(self.mu) + sum(self.eta) + sum(self.nu) + int(self.extra_move)

    def describe(self) -> str:
        def fmt(xs: tuple[int, ...]) -> str:
            return "+".join(map(str, xs)) if xs else "∅"

        s = f"β={self.beta} (|β|={self.beta.weight}), μ={fmt(self.mu)}, η={fmt(self.eta)}"
        if self.nu:
            s += f", ν={fmt(self.nu)}"
        if self.extra_move:
            s += ", extra move"
        return s

    def to_json(self) -> dict:
        return {
            "beta": list(self.beta.parts),
            "mu": list(self.mu),
            "eta": list(self.eta),
            "nu": list(self.nu),
            "extra_move": self.extra_move,
            "weight": self.weight,
        }


class TraceLog:
    """Collects move events; optionally streams them as JSON lines."""

    def __init__(self, stream: IO[str] | None = None):
        self.events: list[dict] = []
        self._stream = stream

    def log(self, obj: dict) -> None:
        self.events.append(obj)
        if self._stream is not None:
            self._stream.write(json.dumps(obj, ensure_ascii=False) + "\n")
            self._stream.flush()

    def kinds(self) -> list[str]:
        return [e["kind"] for e in self.events]


# -- board ---------------------------------------------------------------


@dataclass
class _Slot:
    rank: int
    index: int
    coord: int


@dataclass
class ClusterBoard:
    """Clusters in order, each held in its reduced coordinate."""

    variant: VariantId
    layout: Layout
    slots: list[_Slot]
    log: Callable[[dict], None] | None = None
    check: bool = True
    _step: int = field(default=0, init=False)

    def key(self, s: _Slot) -> tuple[int, int, int]:
        lat = self.layout.lattice
        return (lat.height(s.rank, s.index, s.coord), lat.tie(s.rank), s.index)

    def blocks(self) -> list[tuple[_Slot, tuple[int, ...]]]:
        lat = self.layout.lattice
        below: Counter[int] = Counter()
        out = []
        for s in self.slots:
            actual = s.coord + sum(c * below[r] for r, c in lat.offsets[s.rank].items())
            parts = tuple(a + self.layout.shift for a in lat.parts(s.rank, actual))
            out.append((s, parts))
            below[s.rank] += 1
        return out

    def values(self) -> list[int]:
        pinned = [a + self.layout.shift for a in self.layout.pinned]
        return pinned + [a for _, parts in self.blocks() for a in parts]

    def partition(self) -> Partition:
        vals = self.values()
        if vals != sorted(vals):
            raise BijectionIntegrityError(f"{self.variant.value}: clusters out of order {vals}")
        return Partition(tuple(vals))

    def _find(self, rank: int, index: int) -> int:
        for pos, s in enumerate(self.slots):
            if s.rank == rank and s.index == index:
                return pos
        raise BijectionIntegrityError(f"no rank-{rank} cluster #{index}")

    def _emit(self, kind: str, s: _Slot, delta: int, passed: _Slot | None = None) -> None:
        if self.log is None:
            return
        self._step += 1
        anchor = next(parts[0] for slot, parts in self.blocks() if slot is s)
        vals = self.values()
        ev = {
            "step": self._step,
            "kind": kind,
            "rank": s.rank,
            "anchor": anchor,
            "weight_delta": delta,
            "weight": sum(vals),
            "parts": vals,
        }
        if passed is not None:
            ev["passed_rank"] = passed.rank
        self.log(ev)

    def _swap(self, lo: int) -> None:
        before = sum(self.values())
        self.slots[lo], self.slots[lo + 1] = self.slots[lo + 1], self.slots[lo]
        if self.check and sum(self.values()) != before:
            raise BijectionIntegrityError(f"{self.variant.value}: adjustment changed the weight")

    def _close_chain(self) -> None:
        if not self.check:
            return
        p = self.partition()
        why = violation(self.variant, p)
        if why is not None:
            raise BijectionIntegrityError(f"{self.variant.value}: {p} after a move chain: {why}")

    def advance(self, rank: int, index: int, kind: str = "move") -> None:
        pos = self._find(rank, index)
        s = self.slots[pos]
        s.coord += 1
        self._emit(kind, s, 1 if kind == "extra_move" else self.layout.lattice.units[rank])
        while pos + 1 < len(self.slots) and self.key(s) > self.key(self.slots[pos + 1]):
            other = self.slots[pos + 1]
            self._swap(pos)
            pos += 1
            self._emit("prestidigitation" if s.rank < other.rank else "adjust", s, 0, other)
        self._close_chain()

    def retreat(self, rank: int, index: int, kind: str = "move") -> None:
        pos = self._find(rank, index)
        s = self.slots[pos]
        s.coord -= 1
        self._emit(kind, s, -(1 if kind == "extra_move" else self.layout.lattice.units[rank]))
        while pos > 0 and self.key(self.slots[pos - 1]) > self.key(s):
            other = self.slots[pos - 1]
            self._swap(pos - 1)
            pos -= 1
            self._emit("prestidigitation" if s.rank < other.rank else "adjust", s, 0, other)
        self._close_chain()


def _base_board(variant: VariantId, layout: Layout, counts: tuple[int, ...], **kw) -> ClusterBoard:
    slots = [
        _Slot(rank, i, layout.base_coord(rank, i))
        for rank, n in zip(layout.lattice.ranks, counts)
        for i in range(n)
    ]
    board = ClusterBoard(variant, layout, slots, **kw)
    board.slots.sort(key=board.key)
    return board


def base_partition(spec: BaseSpec) -> Partition:
    s = spec.resolved()
    board = _base_board(s.variant, layout_for(s.variant, s.case_tag), s.counts, check=False)
    p = board.partition()
    if not satisfies(s.variant, p):
        raise BijectionIntegrityError(f"base {p} of {s} fails {violation(s.variant, p)}")
    return p


def _read_board(variant: VariantId, p: Partition, **kw) -> tuple[ClusterBoard, str]:
    """Place a family member on its board; returns the board and case tag."""

    if variant is VariantId.KRB1_1:
        lifted = [a + 1 for a in p.parts]
        n2 = extract_clusters(gordon_mark(Partition(tuple(lifted)))).counts[1]
        tag = "i" if n2 == 0 else ("iii" if lifted and lifted[0] == 2 else "ii")
    else:
        tag = ""
    layout = layout_for(variant, tag)
    lat = layout.lattice
    values = [a - layout.shift for a in p.parts]
    for pin in layout.pinned:
        values.remove(pin)
    try:
        dec = extract_clusters(gordon_mark(Partition(tuple(values))))
    except DecompositionError as e:
        raise BijectionIntegrityError(f"{variant.value}: {p}: {e}") from e
    below: Counter[int] = Counter()
    slots = []
    for cl in dec.clusters:
        if cl.rank not in lat.ranks:
            raise BijectionIntegrityError(f"{variant.value}: rank-{cl.rank} cluster {cl.values} in {p}")
        actual = lat.actual(cl.rank, cl.values)
        coord = actual - sum(c * below[r] for r, c in lat.offsets[cl.rank].items())
        slots.append(_Slot(cl.rank, below[cl.rank], coord))
        below[cl.rank] += 1
    board = ClusterBoard(variant, layout, slots, **kw)
    keys = [board.key(s) for s in slots]
    if keys != sorted(keys):
        raise BijectionIntegrityError(f"{variant.value}: clusters of {p} are not in height order")
    return board, tag


def counts_of(variant: VariantId | str, p: Partition) -> BaseSpec:
    """Cluster counts and case of a family member, as used by its bijection."""

    v = _variant(variant)
    board, tag = _read_board(v, p, check=False)
    c = Counter(s.rank for s in board.slots)
    counts = tuple(c[r] for r in board.layout.lattice.ranks)
    return BaseSpec(v, counts, tag).resolved()


# -- encode / decode -----------------------------------------------------


def _is_nondecreasing(xs: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(xs, xs[1:]))


def _validate(variant: VariantId, layout: Layout, counts: tuple[int, ...], t: MoveTuple) -> None:
    comps = [("mu", t.mu), ("eta", t.eta), ("nu", t.nu)][: len(counts)]
    if len(counts) == 2 and t.nu:
        raise TupleError(f"{variant.value} has no 3-clusters; nu must be empty")
    for (name, xs), n in zip(comps, counts):
        if len(xs) != n:
            raise TupleError(f"{name} has {len(xs)} parts, expected {n}")
        if any(x < 0 for x in xs):
            raise TupleError(f"{name} has a negative part: {xs}")
        if not _is_nondecreasing(xs):
            raise TupleError(f"{name} must be nondecreasing: {xs}")
    unit2 = layout.lattice.units[2]
    if any(x % unit2 for x in t.eta):
        raise TupleError(f"eta parts must be multiples of {unit2}: {t.eta}")
    if any(x % 3 for x in t.nu):
        raise TupleError(f"nu parts must be multiples of 3: {t.nu}")
    if layout.lattice is not MOD9:
        if any(a == b and a % 2 for a, b in zip(t.eta, t.eta[1:])):
            raise TupleError(f"eta repeats an odd part: {t.eta}")
    if t.extra_move:
        if not layout.extra:
            raise TupleError(f"{variant.value} has no extra move")
        if counts[1] == 0:
            raise TupleError("extra move needs at least one 2-cluster")
    elif layout.extra and t.eta and t.eta[0] != 0:
        raise TupleError("without the extra move the smallest 2-cluster cannot move")


def base_spec_of(variant: VariantId | str, beta: Partition) -> BaseSpec:
    v = _variant(variant)
    if not satisfies(v, beta):
        raise TupleError(f"β = {beta} is not in {v.value}: {violation(v, beta)}")
    spec = counts_of(v, beta)
    if base_partition(spec) != beta:
        raise TupleError(f"β = {beta} is not the base partition of {v.value} with counts {spec.counts}")
    return spec


def encode(
    variant: VariantId | str,
    t: MoveTuple,
    log: Callable[[dict], None] | None = None,
    check: bool = True,
) -> Partition:
    """Apply the forward moves of t to its base partition."""

    v = _variant(variant)
    spec = base_spec_of(v, t.beta)
    layout = layout_for(v, spec.case_tag)
    _validate(v, layout, spec.counts, t)
    units = layout.lattice.units
    board = _base_board(v, layout, spec.counts, log=log, check=check)
    n = spec.counts
    for i in reversed(range(n[0])):
        for _ in range(t.mu[i]):
            board.advance(1, i)
    for j in reversed(range(n[1])):
        if j == 0 and t.extra_move:
            board.advance(2, 0, kind="extra_move")
        for _ in range(t.eta[j] // units[2]):
            board.advance(2, j)
    if len(n) == 3:
        for k in reversed(range(n[2])):
            for _ in range(t.nu[k] // units[3]):
                board.advance(3, k)
    p = board.partition()
    if p.weight != t.weight:
        raise BijectionIntegrityError(f"weight ledger: |λ|={p.weight} but tuple weighs {t.weight}")
    return p


def decode(
    variant: VariantId | str,
    p: Partition,
    log: Callable[[dict], None] | None = None,
    check: bool = True,
) -> MoveTuple:
    """Stow clusters back to their base slots, recording the moves."""

    v = _variant(variant)
    why = violation(v, p)
    if why is not None:
        raise TupleError(f"{p} is not in {v.value}: {why}")
    board, tag = _read_board(v, p, log=log, check=check)
    layout = board.layout
    units = layout.lattice.units
    n = Counter(s.rank for s in board.slots)
    coord = {(s.rank, s.index): s.coord for s in board.slots}

    def stow(rank: int, index: int, target: int) -> int:
        steps = coord[(rank, index)] - target
        if steps < 0:
            raise BijectionIntegrityError(f"rank-{rank} cluster #{index} sits below its base slot")
        for _ in range(steps):
            board.retreat(rank, index)
        return steps

    nu = tuple(units[3] * stow(3, k, layout.base_coord(3, k)) for k in range(n[3]))
    extra = False
    eta_list = []
    for j in range(n[2]):
        if layout.extra and j == 0 and coord[(2, 0)] != 2:
            extra = True
            eta_list.append(stow(2, 0, 3))
            board.retreat(2, 0, kind="extra_move")
        else:
            eta_list.append(units[2] * stow(2, j, layout.base_coord(2, j)))
    mu = tuple(stow(1, i, layout.base_coord(1, i)) for i in range(n[1]))
    beta = board.partition()
    t = MoveTuple(beta, mu, tuple(eta_list), nu, extra)
    if check:
        counts = tuple(n[r] for r in layout.lattice.ranks)
        expected = base_partition(BaseSpec(v, counts, tag))
        if beta != expected:
            raise BijectionIntegrityError(f"{v.value}: stowed to {beta}, base is {expected}")
        if t.weight != p.weight:
            raise BijectionIntegrityError(f"weight ledger: |λ|={p.weight} but tuple weighs {t.weight}")
    return t


# -- tuple spaces --------------------------------------------------------


def _nondecreasing(length: int, budget: int, step: int = 1, no_odd_repeat: bool = False, lo: int = 0) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    v = lo
    while v * length <= budget:
        nxt = v + 1 if (no_odd_repeat and v % 2) else v
        for rest in _nondecreasing(length - 1, budget - v, step, no_odd_repeat, nxt + (-nxt) % step):
            yield (v,) + rest
        v += step


def tuple_space(variant: VariantId | str, counts: Sequence[int], max_weight: int) -> Iterator[MoveTuple]:
    """All move tuples with the given cluster counts and total weight <= max_weight."""

    v = _variant(variant)
    c = _norm_counts(v, counts)
    for tag in cases(v, c):
        layout = layout_for(v, tag)
        beta = base_partition(BaseSpec(v, c, tag))
        budget = max_weight - beta.weight
        if budget < 0:
            continue
        mod12 = layout.lattice is not MOD9
        unit2 = layout.lattice.units[2]
        extras = (False, True) if layout.extra and c[1] > 0 else (False,)
        for extra in extras:
            b = budget - int(extra)
            if b < 0:
                continue
            nus = _nondecreasing(c[2], b, step=3) if mod12 else iter([()])
            for nu in nus:
                b_eta = b - sum(nu)
                if layout.extra and not extra and c[1] > 0:
                    etas = ((0,) + rest for rest in _nondecreasing(c[1] - 1, b_eta, no_odd_repeat=True))
                else:
                    etas = _nondecreasing(c[1], b_eta, step=unit2, no_odd_repeat=mod12)
                for eta in etas:
                    for mu in _nondecreasing(c[0], b_eta - sum(eta)):
                        yield MoveTuple(beta, mu, eta, nu, extra)


def min_base_weight(variant: VariantId | str, counts: Sequence[int]) -> int:
    v = _variant(variant)
    c = _norm_counts(v, counts)
    return min(base_partition(BaseSpec(v, c, tag)).weight for tag in cases(v, c))


def count_vectors(variant: VariantId | str, max_weight: int) -> Iterator[tuple[int, ...]]:
    """Cluster-count vectors whose base fits in max_weight."""

    v = _variant(variant)
    k = rank_count(v)
    tops = (0,) if k == 2 else count()
    for n3 in tops:
        tail = () if k == 2 else (n3,)
        if min_base_weight(v, (0, 0) + tail) > max_weight:
            break
        for n2 in count():
            if min_base_weight(v, (0, n2) + tail) > max_weight:
                break
            for n1 in count():
                c = (n1, n2) + tail
                if min_base_weight(v, c) > max_weight:
                    break
                yield c


def iter_tuples(variant: VariantId | str, max_weight: int) -> Iterator[MoveTuple]:
    for c in count_vectors(variant, max_weight):
        yield from tuple_space(variant, c, max_weight)


# -- audits --------------------------------------------------------------


def check_roundtrip(variant: VariantId | str, max_n: int, limit: int = 5) -> list[str]:
    """Both round trips plus the count match; returns up to `limit` failure messages."""

    from krlab_partitions import iter_members

    v = _variant(variant)
    bad: list[str] = []
    by_weight: Counter[int] = Counter({0: 1})
    for p in iter_members(v, max_n):
        by_weight[p.weight] += 1
        try:
            t = decode(v, p)
            q = encode(v, t)
        except (TupleError, BijectionIntegrityError) as e:
            bad.append(f"{v.value}: {p}: {e}")
        else:
            if q != p:
                bad.append(f"{v.value}: encode(decode({p})) = {q}")
        if len(bad) >= limit:
            return bad
    tuples: Counter[int] = Counter()
    for t in iter_tuples(v, max_n):
        tuples[t.weight] += 1
        try:
            back = decode(v, encode(v, t))
        except (TupleError, BijectionIntegrityError) as e:
            bad.append(f"{v.value}: {t.describe()}: {e}")
        else:
            if back != t:
                bad.append(f"{v.value}: decode(encode({t.describe()})) = {back.describe()}")
        if len(bad) >= limit:
            return bad
    for n in range(max_n + 1):
        if tuples[n] != by_weight[n]:
            bad.append(f"{v.value}: {tuples[n]} tuples of weight {n} but {by_weight[n]} partitions")
    return bad[:limit]


def check_base_minimality(variant: VariantId | str, max_n: int, limit: int = 5) -> list[str]:
    """No family member is lighter than the base with its raw cluster counts."""

    from krlab_partitions import iter_members

    v = _variant(variant)
    k = rank_count(v)
    floor: dict[tuple[int, ...], int] = {}
    bad: list[str] = []
    for p in iter_members(v, max_n):
        raw = extract_clusters(gordon_mark(p)).counts[:k]
        if raw not in floor:
            floor[raw] = _raw_base_weight(v, raw)
        if p.weight < floor[raw]:
            bad.append(f"{v.value}: {p} (counts {raw}) is lighter than its base ({floor[raw]})")
            if len(bad) >= limit:
                break
    return bad


def _raw_base_weight(v: VariantId, raw: tuple[int, ...]) -> int:
    if v is VariantId.KRB1_1 and raw[1] > 0:
        weights = [base_partition(BaseSpec(v, raw, "ii")).weight]
        if raw[0] > 0:
            weights.append(base_partition(BaseSpec(v, (raw[0] - 1, raw[1]), "iii")).weight)
        return min(weights)
    return min_base_weight(v, raw)
