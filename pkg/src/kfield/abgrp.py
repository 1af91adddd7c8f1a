"""Finitely generated Z/2-graded abelian groups over Z and its localizations Z_S.

A module over Z_S (S a finite set of inverted primes) is stored in
canonical form: a free rank plus an invariant-factor chain d_1 | d_2 | ...
with every d_i > 1 and coprime to S.  Two modules over the same ring are
isomorphic exactly when their canonical forms agree.

The matrix engine clears S-unit denominators, runs an exact Smith normal
form over Z, and reads kernels and cokernels off the diagonal.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import NotStationary, RingMismatch
from .repunit import factorize, prime_support

DEFAULT_PROBE_BOUND = 64


@dataclass(frozen=True)
class CoefficientRing:
    """Z with the primes in ``inverted`` made invertible."""

    inverted: frozenset[int] = frozenset()

    @classmethod
    def integers(cls) -> CoefficientRing:
        return cls(frozenset())

    @classmethod
    def inverting(cls, n: int) -> CoefficientRing:
        """Z[1/n]; Z itself when n = 1."""
        return cls(prime_support(n))

    def union(self, other: CoefficientRing) -> CoefficientRing:
        return CoefficientRing(self.inverted | other.inverted)

    def strip(self, n: int) -> int:
        """|n| with every inverted prime divided out."""
        n = abs(n)
        for p in self.inverted:
            while n % p == 0:
                n //= p
        return n

    def is_unit(self, x) -> bool:
        x = Fraction(x)
        return x != 0 and self.strip(x.numerator) == 1 and self.strip(x.denominator) == 1

    def __str__(self):
        if not self.inverted:
            return "Z"
        return f"Z[1/{math.prod(sorted(self.inverted))}]"


ZZ = CoefficientRing.integers()


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant-factor chain of the direct sum of cyclic groups Z/n, n in orders."""
    powers: dict[int, list[int]] = defaultdict(list)
    for n in orders:
        for p, e in factorize(n).factors if n > 1 else ():
            powers[p].append(p**e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    chain = [1] * length
    for v in powers.values():
        v.sort(reverse=True)
        for i, pe in enumerate(v):
            chain[i] *= pe
    return tuple(sorted(d for d in chain if d > 1))


@dataclass(frozen=True)
class Module:
    """Z_S^rank (+) Z_S/d_1 (+) ... (+) Z_S/d_k in canonical form."""

    ring: CoefficientRing
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        stripped = (self.ring.strip(d) for d in self.torsion if d != 0)
        object.__setattr__(self, "torsion", invariant_factors(stripped))

    @classmethod
    def free(cls, ring: CoefficientRing, rank: int) -> Module:
        return cls(ring, rank)

    @classmethod
    def zero(cls, ring: CoefficientRing = ZZ) -> Module:
        return cls(ring, 0)

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def localize(self, ring: CoefficientRing) -> Module:
        """Tensor with Z_T: the result lives over the ring inverting S and T."""
        return Module(self.ring.union(ring), self.rank, self.torsion)

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank:
            free = str(self.ring)
            parts.append(free if self.rank == 1 else f"{free}^{self.rank}")
        return " (+) ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"ring": str(self.ring), "rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class GradedModule:
    even: Module
    odd: Module

    def __post_init__(self):
        if self.even.ring != self.odd.ring:
            raise RingMismatch("even and odd parts over different rings")

    @property
    def ring(self) -> CoefficientRing:
        return self.even.ring

    @classmethod
    def unit(cls, ring: CoefficientRing = ZZ) -> GradedModule:
        return cls(Module(ring, 1), Module(ring, 0))

    def localize(self, ring: CoefficientRing) -> GradedModule:
        return GradedModule(self.even.localize(ring), self.odd.localize(ring))

    def __str__(self):
        return f"even: {self.even}; odd: {self.odd}"


def _tensor(a: Module, b: Module) -> Module:
    torsion = list(a.torsion) * b.rank + list(b.torsion) * a.rank
    torsion += [math.gcd(d, e) for d in a.torsion for e in b.torsion]
    return Module(a.ring, a.rank * b.rank, tuple(torsion))


def _direct_sum(a: Module, b: Module) -> Module:
    return Module(a.ring, a.rank + b.rank, a.torsion + b.torsion)


def graded_tensor(A: GradedModule, B: GradedModule) -> GradedModule:
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    even = _direct_sum(_tensor(A.even, B.even), _tensor(A.odd, B.odd))
    odd = _direct_sum(_tensor(A.even, B.odd), _tensor(A.odd, B.even))
    return GradedModule(even, odd)


def module_iso_eq(A, B) -> bool:
    """Isomorphism of (graded or ungraded) modules over the same ring."""
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    return A == B


def exterior_ranks(r: int) -> tuple[int, int]:
    """(even, odd) ranks of the exterior algebra on Z^r."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    even = sum(math.comb(r, k) for k in range(0, r + 1, 2))
    odd = sum(math.comb(r, k) for k in range(1, r + 1, 2))
    return even, odd


def exterior_algebra(r: int, ring: CoefficientRing = ZZ) -> GradedModule:
    even, odd = exterior_ranks(r)
    return GradedModule(Module(ring, even), Module(ring, odd))


# -- matrices -----------------------------------------------------------------------


class ExactMatrix:
    """Rational matrix whose denominators are units of ``ring``."""

    def __init__(self, rows: Sequence[Sequence], ring: CoefficientRing = ZZ):
        self.rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        self.ring = ring
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        self.ncols = widths.pop() if widths else 0
        for row in self.rows:
            for x in row:
                if ring.strip(x.denominator) != 1:
                    raise ValueError(f"denominator of {x} is not a unit in {ring}")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @classmethod
    def identity(cls, n: int, ring: CoefficientRing = ZZ) -> ExactMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ring)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self.rows]}, {self.ring})"

    def _ring_with(self, other):
        return self.ring.union(other.ring)

    def __add__(self, other):
        return ExactMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self._ring_with(other),
        )

    def __sub__(self, other):
        return ExactMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self._ring_with(other),
        )

    @classmethod
    def _trusted(cls, rows, ring) -> ExactMatrix:
        # rows are tuples of Fractions whose denominators are known units
        out = cls.__new__(cls)
        out.rows, out.ring = rows, ring
        out.ncols = len(rows[0]) if rows else 0
        return out

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            # integer product of the cleared matrices, one division per entry
            a, sa = self.cleared()
            b, sb = other.cleared()
            cols = list(zip(*b))
            s = sa * sb
            rows = tuple(
                tuple(Fraction(sum(x * y for x, y in zip(r, c)), s) for c in cols) for r in a
            )
            return ExactMatrix._trusted(rows, self._ring_with(other))
        v = [Fraction(x) for x in other]
        return [sum(a * b for a, b in zip(r, v)) for r in self.rows]

    def with_entry(self, i: int, j: int, value) -> ExactMatrix:
        rows = [list(r) for r in self.rows]
        rows[i][j] = Fraction(value)
        return ExactMatrix(rows, self.ring)

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = len(m)
        det = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            for r in range(c + 1, n):
                if m[r][c]:
                    factor = m[r][c] / m[c][c]
                    m[r] = [a - factor * b for a, b in zip(m[r], m[c])]
        return det

    def cleared(self) -> tuple[list[list[int]], int]:
        """(integer matrix, s) with s the lcm of denominators; s is a unit of the ring."""
        s = 1
        for row in self.rows:
            for x in row:
                s = math.lcm(s, x.denominator)
        return [[x.numerator * (s // x.denominator) for x in row] for row in self.rows], s


# -- Smith normal form ----------------------------------------------------------------


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(A) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """(U, D, V) with U*A*V = D, U and V unimodular, D diagonal with d_1 | d_2 | ....

    ``A`` is an integer matrix (nested lists or an ExactMatrix with integer
    entries).  Pivot choice: smallest nonzero absolute value, first by row
    then by column.
    """
    if isinstance(A, ExactMatrix):
        if any(x.denominator != 1 for r in A.rows for x in r):
            raise ValueError("snf needs an integer matrix")
        A = [[int(x) for x in r] for r in A.rows]
    D = [list(map(int, r)) for r in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        for M in (D, U):
            M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for M in (D, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, D, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // piv))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // piv))
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            for M in (D, U):
                M[t] = [-x for x in M[t]]
    return U, D, V


def diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def _as_matrix(A, ring) -> ExactMatrix:
    return A if isinstance(A, ExactMatrix) else ExactMatrix(A, ring)


def rank(A) -> int:
    A = _as_matrix(A, ZZ)
    ints, _ = A.cleared()
    if not ints or not ints[0]:
        return 0
    return sum(1 for d in diagonal(snf(ints)[1]) if d)


def cokernel(A, ring: CoefficientRing = ZZ) -> Module:
    """Z_S^rows / A(Z_S^cols)."""
    A = _as_matrix(A, ring)
    ring = ring.union(A.ring)
    ints, _ = A.cleared()
    if A.ncols == 0:
        return Module(ring, A.nrows)
    d = [x for x in diagonal(snf(ints)[1]) if x]
    return Module(ring, A.nrows - len(d), tuple(d))


def kernel(A, ring: CoefficientRing = ZZ) -> Module:
    """ker A inside Z_S^cols; always free."""
    A = _as_matrix(A, ring)
    return Module(ring.union(A.ring), A.ncols - rank(A))


def element_order(A, v: Sequence, ring: CoefficientRing = ZZ) -> int:
    """Order of the class of v in coker(A) over the ring; 0 means infinite order."""
    A = _as_matrix(A, ring)
    ring = ring.union(A.ring)
    ints, _ = A.cleared()
    U, D, _ = snf(ints)
    w = [sum(Fraction(a) * Fraction(x) for a, x in zip(row, v)) for row in U]
    d = diagonal(D) + [0] * (len(w) - len(diagonal(D)))
    order = 1
    for di, wi in zip(d, w):
        if di == 0:
            if wi != 0:
                return 0
            continue
        dd = ring.strip(di)
        order = math.lcm(order, dd // math.gcd(dd, wi.numerator))
    return order


# -- inductive limits ---------------------------------------------------------------------


@dataclass(frozen=True)
class Colimit:
    module: Module
    stable_from: int


def colimit_stationary(
    system: Callable[[int], ExactMatrix],
    ring: CoefficientRing,
    probe_bound: int = DEFAULT_PROBE_BOUND,
) -> Colimit:
    """Colimit of Z_S^k -> Z_S^k -> ... along system(0), system(1), ....

    Once the connecting maps have unit determinant they are isomorphisms,
    so the colimit is free of rank k.  Stationarity is probed on
    m = 0..probe_bound.
    """
    stable_from = None
    size = None
    for m in range(probe_bound + 1):
        M = system(m)
        size = M.nrows
        if ring.is_unit(M.det()):
            if stable_from is None:
                stable_from = m
        else:
            stable_from = None
    if stable_from is None:
        raise NotStationary(f"no unit determinant over {ring} up to m = {probe_bound}")
    return Colimit(Module(ring, size), stable_from)
