"""Set partitions of {1..n}, the refinement lattice P(n), and point-map actions.

Partitions may live on a support subset of {1..n}; full-support
partitions are the classical case.  Ground sets are 1-based throughout.
Stored form is canonical (blocks sorted ascending, ordered by minimum),
so structural equality is partition equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .categories import FinMonoid
from .errors import CapExceeded, NotAPermutation, SupportMismatch
from .posets import FinLattice, FinPoset, as_lattice

FULL_SUPPORT_CAP = 8
SUPPORT_CAP = 5


@dataclass(frozen=True)
class Partition:
    n: int
    blocks: tuple  # tuple of tuples of ints, canonical form

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        seen = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            for x in b:
                if not 1 <= x <= self.n:
                    raise ValueError(f"element {x} outside 1..{self.n}")
                if x in seen:
                    raise ValueError(f"element {x} in two blocks")
                seen.add(x)
        if not seen:
            raise ValueError("support must be nonempty")

    @property
    def support(self) -> frozenset:
        return frozenset(x for b in self.blocks for x in b)

    @property
    def full_support(self) -> bool:
        return len(self.support) == self.n

    def block_of(self, x: int) -> int:
        for k, b in enumerate(self.blocks):
            if x in b:
                return k
        raise KeyError(x)

    def label(self) -> str:
        return "|".join("".join(str(x) for x in b) for b in self.blocks)

    @staticmethod
    def discrete(n: int) -> "Partition":
        return Partition(n, tuple((x,) for x in range(1, n + 1)))

    @staticmethod
    def one_block(n: int) -> "Partition":
        return Partition(n, (tuple(range(1, n + 1)),))

    @staticmethod
    def from_blocks(n: int, blocks) -> "Partition":
        return Partition(n, tuple(tuple(b) for b in blocks))


@dataclass(frozen=True)
class PointMap:
    """A total map {1..n} -> {1..n}; values[i-1] is the image of i."""

    n: int
    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.n or any(not 1 <= v <= self.n for v in values):
            raise ValueError("values must be a total map on 1..n")

    def __call__(self, x: int) -> int:
        return self.values[x - 1]

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == self.n

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(1, self.n + 1))

    def after(self, other: "PointMap") -> "PointMap":
        """self o other (apply other first)."""
        return PointMap(self.n, tuple(self(other(x)) for x in range(1, self.n + 1)))

    def inverse(self) -> "PointMap":
        if not self.is_injective:
            raise NotAPermutation("cannot invert a non-bijective point map")
        inv = [0] * self.n
        for x in range(1, self.n + 1):
            inv[self(x) - 1] = x
        return PointMap(self.n, tuple(inv))

    @staticmethod
    def identity(n: int) -> "PointMap":
        return PointMap(n, tuple(range(1, n + 1)))


# -- counting and enumeration --------------------------------------------------


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    """B(n+1) = sum_k C(n, k) B(k); the counting oracle for P(n) sizes."""
    if n == 0:
        return 1
    total = 0
    for k in range(n):
        total += _binom(n - 1, k) * bell_number(k)
    return total


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(min(k, n - k)):
        out = out * (n - i) // (i + 1)
    return out


def _set_partitions(items: tuple):
    """All partitions of the given items into nonempty blocks."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        yield sub + ((first,),)
        for k, block in enumerate(sub):
            yield sub[:k] + (block + (first,),) + sub[k + 1:]


def enumerate_partitions(n: int, full_support_only: bool = True, cap: int = None) -> list:
    """All partitions in canonical form, duplicate free, deterministic order."""
    if cap is None:
        cap = FULL_SUPPORT_CAP if full_support_only else SUPPORT_CAP
    if not 1 <= n <= cap:
        raise CapExceeded(f"n={n} outside 1..{cap}")
    out = []
    supports = [tuple(range(1, n + 1))]
    if not full_support_only:
        supports = [
            s
            for r in range(1, n + 1)
            for s in itertools.combinations(range(1, n + 1), r)
        ]
    for support in supports:
        for blocks in _set_partitions(support):
            out.append(Partition(n, blocks))
    out = sorted(set(out), key=lambda p: (sorted(p.support), p.blocks))
    return out


def refines(p: Partition, q: Partition) -> bool:
    """p <= q: every block of p lies inside some block of q."""
    if p.n != q.n or p.support != q.support:
        raise SupportMismatch("refinement needs equal ground set and support")
    qsets = [set(b) for b in q.blocks]
    return all(any(set(b) <= qb for qb in qsets) for b in p.blocks)


def build_partition_lattice(n: int, cap: int = FULL_SUPPORT_CAP) -> FinLattice:
    """P(n): full-support partitions under refinement, meets/joins verified."""
    parts = enumerate_partitions(n, full_support_only=True, cap=cap)
    pairs = [
        (i, j)
        for i, p in enumerate(parts)
        for j, q in enumerate(parts)
        if refines(p, q)
    ]
    poset = FinPoset([p.label() for p in parts], pairs)
    lattice = as_lattice(poset)
    lattice.partitions = parts
    return lattice


# -- actions ---------------------------------------------------------------------


def permutation_action(pi: PointMap, p: Partition) -> Partition:
    """pi . p with blocks the pointwise images; left action of S(n)."""
    if not pi.is_injective or not pi.is_surjective:
        raise NotAPermutation("permutation action needs a bijective map")
    if not p.full_support:
        raise SupportMismatch("permutation action is defined on full support")
    return Partition(p.n, tuple(tuple(pi(x) for x in b) for b in p.blocks))


def pullback_action(f: PointMap, p: Partition) -> Partition:
    """The partition with x ~ y iff f(x) and f(y) share a block of p.

    This is a right action: g . (f . p) = (f o g) . p, equivalently a left
    action of the opposite monoid (diagrammatic composition).
    """
    if not p.full_support:
        raise SupportMismatch("pullback action is defined on full support")
    classes = {}
    for x in range(1, p.n + 1):
        classes.setdefault(p.block_of(f(x)), []).append(x)
    return Partition(p.n, tuple(tuple(v) for v in classes.values()))


def pullback_composition_report(n: int) -> dict:
    """Which composition identity the pullback satisfies, checked exhaustively.

    'fg' means g.(f.p) = (f o g).p for all f, g; 'gf' means the mirrored
    identity g.(f.p) = (g o f).p.
    """
    maps = [PointMap(n, v) for v in itertools.product(range(1, n + 1), repeat=n)]
    parts = enumerate_partitions(n, full_support_only=True)
    fg = gf = True
    witness = None
    for f in maps:
        for g in maps:
            for p in parts:
                lhs = pullback_action(g, pullback_action(f, p))
                if lhs != pullback_action(f.after(g), p):
                    fg = False
                if lhs != pullback_action(g.after(f), p):
                    gf = False
                    if witness is None:
                        witness = (f.values, g.values, p.blocks)
    return {"fg": fg, "gf": gf, "gf_witness": witness}


# -- standard monoids over point maps ---------------------------------------------


def symmetric_monoid(n: int) -> tuple:
    """S(n) as a FinMonoid under standard composition (apply right factor first).

    Returns (monoid, point_maps); permutation_action(point_maps[a], -) is a
    left action for this multiplication.
    """
    perms = [PointMap(n, v) for v in itertools.permutations(range(1, n + 1))]
    index = {pm.values: k for k, pm in enumerate(perms)}
    mul = [
        [index[a.after(b).values] for b in perms]
        for a in perms
    ]
    names = ["".join(map(str, pm.values)) for pm in perms]
    unit = index[PointMap.identity(n).values]
    return FinMonoid(names, unit, mul), perms


def transformation_monoid(n: int) -> tuple:
    """All self-maps of {1..n} under diagrammatic composition (apply left
    factor first), so that the pullback is a left action.

    Returns (monoid, point_maps).
    """
    maps = [PointMap(n, v) for v in itertools.product(range(1, n + 1), repeat=n)]
    index = {pm.values: k for k, pm in enumerate(maps)}
    mul = [
        [index[b.after(a).values] for b in maps]
        for a in maps
    ]
    names = ["".join(map(str, pm.values)) for pm in maps]
    unit = index[PointMap.identity(n).values]
    return FinMonoid(names, unit, mul), maps
