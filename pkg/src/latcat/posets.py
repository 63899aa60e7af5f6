"""Finite posets and lattices with exact order-theoretic computations.

Elements are indexed 0..n-1 and carry distinct string labels.  The order
relation is stored as per-element bitmasks, so subset tests and
meet/join scans are cheap even for the partition lattice of a 6-set
(203 elements).  All arithmetic is exact integer arithmetic; nothing
here touches floats.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EmptyPoset, NotALattice, NotGraded


def _bits(mask: int):
    """Indices of set bits, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class FinPoset:
    """A finite partial order, validated on construction.

    `up[i]` / `down[i]` are bitmasks of the elements above / below i,
    both including i itself.
    """

    def __init__(self, labels: Sequence[str], pairs):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("element labels must be pairwise distinct")
        n = len(labels)
        up = [1 << i for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"relation pair ({i},{j}) out of range")
            up[i] |= 1 << j
        # transitive closure (repeated squaring is overkill at this scale)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                for j in _bits(up[i]):
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        for i in range(n):
            for j in _bits(up[i]):
                if i != j and up[j] >> i & 1:
                    raise ValueError(f"antisymmetry violated at ({labels[i]}, {labels[j]})")
        down = [0] * n
        for i in range(n):
            for j in _bits(up[i]):
                down[j] |= 1 << i
        self.labels = labels
        self.n = n
        self.up = tuple(up)
        self.down = tuple(down)

    # -- basic order queries -------------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def pairs(self):
        """All related pairs (i, j) with i <= j, reflexive pairs included."""
        return [(i, j) for i in range(self.n) for j in _bits(self.up[i])]

    def covers(self):
        """Cover pairs (i, j): i < j with nothing strictly between."""
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            for j in _bits(strict):
                between = strict & self.down[j] & ~(1 << j)
                if between == 0:
                    out.append((i, j))
        return out

    def minimal_elements(self):
        return [i for i in range(self.n) if self.down[i] == 1 << i]

    def maximal_elements(self):
        return [i for i in range(self.n) if self.up[i] == 1 << i]

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def restrict(self, keep: Sequence[int]) -> "FinPoset":
        """Induced subposet on the given element indices (order preserved)."""
        keep = list(keep)
        pos = {e: k for k, e in enumerate(keep)}
        pairs = [(pos[i], pos[j]) for i in keep for j in keep if self.leq(i, j)]
        return FinPoset([self.labels[e] for e in keep], pairs)

    def dual(self) -> "FinPoset":
        return FinPoset(self.labels, [(j, i) for i, j in self.pairs()])

    def __repr__(self):
        return f"FinPoset({self.n} elements)"

    def __eq__(self, other):
        return (
            isinstance(other, FinPoset)
            and self.labels == other.labels
            and self.up == other.up
        )

    def __hash__(self):
        return hash((self.labels, self.up))


class FinLattice:
    """A finite lattice: a FinPoset plus exhaustively verified meet/join tables."""

    def __init__(self, base: FinPoset, meet, join, bottom: int, top: int):
        self.base = base
        self.meet = meet
        self.join = join
        self.bottom = bottom
        self.top = top

    @property
    def n(self):
        return self.base.n

    @property
    def labels(self):
        return self.base.labels

    def leq(self, i, j):
        return self.base.leq(i, j)

    def atoms(self):
        return sorted(j for i, j in self.base.covers() if i == self.bottom)

    def coatoms(self):
        return sorted(i for i, j in self.base.covers() if j == self.top)

    def join_all(self, elems) -> int:
        acc = self.bottom
        for e in elems:
            acc = self.join[acc][e]
        return acc

    def meet_all(self, elems) -> int:
        acc = self.top
        for e in elems:
            acc = self.meet[acc][e]
        return acc

    def __repr__(self):
        return f"FinLattice({self.n} elements)"


def as_lattice(p: FinPoset) -> FinLattice:
    """Verify that every pair has a unique meet and join; build the tables.

    Raises NotALattice naming the first offending pair, EmptyPoset on the
    empty carrier.
    """
    n = p.n
    if n == 0:
        raise EmptyPoset("a lattice needs at least one element")
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lower = p.down[i] & p.down[j]
            g = _unique_extreme(p, lower, greatest=True)
            if g is None:
                raise NotALattice("meet", p.labels[i], p.labels[j])
            upper = p.up[i] & p.up[j]
            l = _unique_extreme(p, upper, greatest=False)
            if l is None:
                raise NotALattice("join", p.labels[i], p.labels[j])
            meet[i][j] = meet[j][i] = g
            join[i][j] = join[j][i] = l
    bottom = meet[0][0]
    top = join[0][0]
    for i in range(n):
        bottom = meet[bottom][i]
        top = join[top][i]
    assert all(p.leq(bottom, i) and p.leq(i, top) for i in range(n))
    return FinLattice(p, tuple(map(tuple, meet)), tuple(map(tuple, join)), bottom, top)


def _unique_extreme(p: FinPoset, mask: int, greatest: bool) -> Optional[int]:
    """The unique max (or min) of the masked subset, or None."""
    if mask == 0:
        return None
    for c in _bits(mask):
        if greatest and mask & ~p.down[c] == 0:
            return c
        if not greatest and mask & ~p.up[c] == 0:
            return c
    return None


# -- structure report --------------------------------------------------------


@dataclass
class StructureReport:
    covers: list
    atoms: list
    coatoms: list
    graded: bool
    ranks: Optional[tuple] = None  # per element, when graded

    def rank_of_top(self, l: FinLattice) -> int:
        if not self.graded:
            raise NotGraded("lattice is not graded")
        return self.ranks[l.top]


def structure_report(l: FinLattice) -> StructureReport:
    """Covers, atoms, coatoms and the rank function when one exists.

    The lattice is graded exactly when the longest-chain rank from bottom
    increases by one along every cover; then every maximal chain between
    comparable elements has the same length.
    """
    p = l.base
    covers = p.covers()
    ranks = [0] * p.n
    # longest chain from bottom, in a linear extension order
    order = sorted(range(p.n), key=lambda e: bin(p.down[e]).count("1"))
    for e in order:
        below = [i for i, j in covers if j == e]
        ranks[e] = 1 + max((ranks[i] for i in below), default=-1)
    graded = all(ranks[j] == ranks[i] + 1 for i, j in covers)
    return StructureReport(
        covers=covers,
        atoms=l.atoms(),
        coatoms=l.coatoms(),
        graded=graded,
        ranks=tuple(ranks) if graded else None,
    )


# -- lattice predicates ------------------------------------------------------


@dataclass
class Verdict:
    ok: bool
    witness: Optional[tuple] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _is_cover(l: FinLattice, i: int, j: int) -> bool:
    if not l.base.lt(i, j):
        return False
    between = l.base.up[i] & l.base.down[j] & ~(1 << i) & ~(1 << j)
    return between == 0


def is_semimodular(l: FinLattice) -> Verdict:
    """a v b covers b whenever a covers a ^ b; witness pair on failure."""
    for a in range(l.n):
        for b in range(l.n):
            if _is_cover(l, l.meet[a][b], a) and not _is_cover(l, b, l.join[a][b]):
                return Verdict(False, (l.labels[a], l.labels[b]), "semimodularity fails")
    return Verdict(True)


def is_atomistic(l: FinLattice) -> Verdict:
    """Every element is the join of the atoms below it."""
    atom_mask = 0
    for a in l.atoms():
        atom_mask |= 1 << a
    for x in range(l.n):
        below = l.base.down[x] & atom_mask
        if l.join_all(_bits(below)) != x:
            return Verdict(False, (l.labels[x],), "not a join of atoms")
    return Verdict(True)


def is_atomic(l: FinLattice) -> Verdict:
    """Weaker predicate: every element above bottom dominates an atom."""
    atom_mask = 0
    for a in l.atoms():
        atom_mask |= 1 << a
    for x in range(l.n):
        if x != l.bottom and l.base.down[x] & atom_mask == 0:
            return Verdict(False, (l.labels[x],), "dominates no atom")
    return Verdict(True)


@dataclass
class GeometricVerdict:
    ok: bool
    semimodular: Verdict = None
    atomistic: Verdict = None

    def __bool__(self):
        return self.ok

    def failed_conjunct(self) -> str:
        if not self.semimodular:
            return "semimodular"
        if not self.atomistic:
            return "atomistic"
        return ""


def is_geometric(l: FinLattice) -> GeometricVerdict:
    """Geometric = semimodular and atomistic (see module docs for the convention)."""
    sm = is_semimodular(l)
    at = is_atomistic(l)
    return GeometricVerdict(bool(sm) and bool(at), sm, at)


def modular_elements(l: FinLattice) -> list:
    """Elements x with a v (x ^ y) = (a v x) ^ y for all a <= y."""
    out = []
    for x in range(l.n):
        good = True
        for y in range(l.n):
            for a in _bits(l.base.down[y]):
                if l.join[a][l.meet[x][y]] != l.meet[l.join[a][x]][y]:
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(x)
    return out


# -- Moebius function and characteristic polynomial ---------------------------


@dataclass(frozen=True)
class MobiusVector:
    values: tuple

    def __getitem__(self, i):
        return self.values[i]


def mobius(l: FinLattice) -> MobiusVector:
    """mu(bottom) = 1, mu(x) = -sum_{y < x} mu(y), re-checked against the
    defining identity sum_{y <= x} mu(y) = [x = bottom]."""
    p = l.base
    mu = [0] * p.n
    order = sorted(range(p.n), key=lambda e: bin(p.down[e]).count("1"))
    for x in order:
        if x == l.bottom:
            mu[x] = 1
        else:
            mu[x] = -sum(mu[y] for y in _bits(p.down[x]) if y != x)
    for x in range(p.n):
        total = sum(mu[y] for y in _bits(p.down[x]))
        expect = 1 if x == l.bottom else 0
        assert total == expect, f"Moebius defining identity failed at {p.labels[x]}"
    return MobiusVector(tuple(mu))


@dataclass(frozen=True)
class IntPolynomial:
    """Exact-integer polynomial in one variable; coefficients[k] multiplies x^k."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @staticmethod
    def zero():
        return IntPolynomial(())

    @staticmethod
    def monomial(coeff: int, power: int):
        return IntPolynomial((0,) * power + (coeff,))

    @staticmethod
    def from_roots(roots):
        poly = IntPolynomial((1,))
        for r in roots:
            poly = poly * IntPolynomial((-r, 1))
        return poly

    def degree(self):
        return len(self.coefficients) - 1

    def __add__(self, other):
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        return IntPolynomial(
            tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size))
        )

    def __mul__(self, other):
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return IntPolynomial(tuple(out))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def pretty(self, var: str = "λ") -> str:
        if not self.coefficients:
            return "0"
        sup = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "" if k == 1 else str(k).translate(sup)
                body = f"{var}{power}" if mag == 1 else f"{mag}{var}{power}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def characteristic_polynomial(l: FinLattice) -> IntPolynomial:
    """sum_x mu(x) * lam^(rank(top) - rank(x)); requires a graded lattice."""
    report = structure_report(l)
    if not report.graded:
        raise NotGraded("characteristic polynomial needs a graded lattice")
    mu = mobius(l)
    top_rank = report.ranks[l.top]
    poly = IntPolynomial.zero()
    for x in range(l.n):
        poly = poly + IntPolynomial.monomial(mu[x], top_rank - report.ranks[x])
    return poly


# -- upsets and isomorphism --------------------------------------------------


def upset(l: FinLattice, x: int) -> FinLattice:
    """The induced lattice on {y : y >= x}, with bottom x."""
    keep = sorted(_bits(l.base.up[x]))
    return as_lattice(l.base.restrict(keep))


def _refine_invariants(p: FinPoset, rounds: int = 3):
    """Iterated neighbourhood refinement; colours are canonical across
    posets because each round ranks signatures in sorted order."""
    inv = [
        (bin(p.down[e]).count("1"), bin(p.up[e]).count("1"))
        for e in range(p.n)
    ]
    for _ in range(rounds):
        sigs = [
            (
                inv[e],
                tuple(sorted(inv[j] for j in _bits(p.down[e]))),
                tuple(sorted(inv[j] for j in _bits(p.up[e]))),
            )
            for e in range(p.n)
        ]
        rank = {sig: k for k, sig in enumerate(sorted(set(sigs)))}
        nxt = [rank[sig] for sig in sigs]
        if nxt == inv:
            break
        inv = nxt
    return inv


def are_isomorphic(p: FinPoset, q: FinPoset) -> Optional[tuple]:
    """Order isomorphism p -> q as a tuple of q-indices, or None.

    Backtracking over invariant-compatible candidates, most-constrained
    element first; any found bijection is re-verified edge by edge before
    being returned.
    """
    if p.n != q.n:
        return None
    inv_p = _refine_invariants(p)
    inv_q = _refine_invariants(q)
    if sorted(inv_p) != sorted(inv_q):
        return None
    cands = [
        [j for j in range(q.n) if inv_q[j] == inv_p[i]]
        for i in range(p.n)
    ]
    order = sorted(range(p.n), key=lambda i: (len(cands[i]), i))
    image = [-1] * p.n
    used = [False] * q.n

    def extend(k: int) -> bool:
        if k == p.n:
            return True
        i = order[k]
        for j in cands[i]:
            if used[j]:
                continue
            ok = True
            for i2 in order[:k]:
                j2 = image[i2]
                if p.leq(i, i2) != q.leq(j, j2) or p.leq(i2, i) != q.leq(j2, j):
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                image[i] = -1
                used[j] = False
        return False

    if not extend(0):
        return None
    # independent edge verification of the witness
    for i in range(p.n):
        for j in range(p.n):
            assert p.leq(i, j) == q.leq(image[i], image[j])
    return tuple(image)


# -- small constructors (fixtures and oracles) --------------------------------


def chain(n: int) -> FinPoset:
    return FinPoset([str(i) for i in range(n)], [(i, i + 1) for i in range(n - 1)])


def boolean_poset(k: int) -> FinPoset:
    subsets = [frozenset(s) for r in range(k + 1) for s in itertools.combinations(range(k), r)]
    labels = ["{" + ",".join(map(str, sorted(s))) + "}" for s in subsets]
    pairs = [
        (i, j)
        for i, s in enumerate(subsets)
        for j, t in enumerate(subsets)
        if s <= t
    ]
    return FinPoset(labels, pairs)


def boolean_lattice(k: int) -> FinLattice:
    return as_lattice(boolean_poset(k))


def pentagon() -> FinLattice:
    # bottom < a < c < top, bottom < b < top; the non-modular N5
    return as_lattice(
        FinPoset(["0", "a", "c", "b", "1"], [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    )


def diamond(k: int) -> FinLattice:
    """Bottom, k pairwise-incomparable atoms, top (M_k)."""
    pairs = [(0, i) for i in range(1, k + 1)] + [(i, k + 1) for i in range(1, k + 1)]
    return as_lattice(FinPoset(["0"] + [f"a{i}" for i in range(1, k + 1)] + ["1"], pairs))


def random_poset(rng: random.Random, size: int, density: float = 0.3, with_bottom: bool = False) -> FinPoset:
    """Random poset via a random relation on a fixed linear order."""
    pairs = [
        (i, j)
        for i in range(size)
        for j in range(i + 1, size)
        if rng.random() < density
    ]
    if with_bottom:
        pairs += [(0, j) for j in range(1, size)]
    return FinPoset([f"e{i}" for i in range(size)], pairs)
