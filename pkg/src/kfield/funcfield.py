"""Polynomials and rational functions over F_q, factorization, and places of
F_q(X) lying over the places T = 0 and T = infinity of an embedded F_q(T).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

from . import polyops
from .errors import ConstantFunction, SizeGuardExceeded, ZeroPolynomial
from .ffield import SIZE_GUARD, FFElement, FiniteField, extension_field, field_of_order


@dataclass(frozen=True)
class Poly:
    """Polynomial over ``field``; ``codes`` are element codes, low-to-high."""

    field: FiniteField
    codes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "codes", polyops.trim(self.codes))

    @classmethod
    def from_coeffs(cls, field, coeffs):
        """Accepts FFElements, codes, or per-coefficient digit vectors."""
        return cls(field, tuple(field.element(c).code for c in coeffs))

    @classmethod
    def x(cls, field):
        return cls(field, polyops.X)

    @classmethod
    def constant(cls, field, c):
        return cls(field, (field.element(c).code,))

    @property
    def coefficients(self) -> list[FFElement]:
        return [FFElement(self.field, c) for c in self.codes]

    @property
    def degree(self) -> int:
        return polyops.degree(self.codes)

    @property
    def lc(self) -> int:
        return self.codes[-1] if self.codes else 0

    def is_zero(self) -> bool:
        return not self.codes

    def is_one(self) -> bool:
        return self.codes == (1,)

    def _wrap(self, codes):
        return Poly(self.field, codes)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other.codes
        if isinstance(other, int):
            return polyops.trim((self.field.scalar(other),))
        if isinstance(other, FFElement):
            return polyops.trim((other.code,))
        return None

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is None else self._wrap(polyops.add(self.field, self.codes, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is None else self._wrap(polyops.sub(self.field, self.codes, b))

    def __neg__(self):
        return self._wrap(polyops.neg(self.field, self.codes))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is None else self._wrap(polyops.mul(self.field, self.codes, b))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self._wrap((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        qu, r = polyops.divmod_(self.field, self.codes, other.codes)
        return self._wrap(qu), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        return self._wrap(polyops.monic(self.field, self.codes))

    def gcd(self, other: Poly) -> Poly:
        return self._wrap(polyops.gcd(self.field, self.codes, other.codes))

    def derivative(self) -> Poly:
        return self._wrap(polyops.derivative(self.field, self.codes))

    def __call__(self, x):
        code = x.code if isinstance(x, FFElement) else x
        return FFElement(self.field, polyops.evaluate(self.field, self.codes, code))

    def sort_key(self):
        return (self.degree, self.codes)

    def __str__(self):
        from .parse import format_poly

        return format_poly(self)


# -- factorization ----------------------------------------------------------------


def _pth_root(g: Poly) -> Poly:
    """h with h(X)^p = g(X); g must have g' = 0."""
    F = g.field
    frob_inv = F.order // F.p  # a -> a^(q/p) inverts a -> a^p on F_q
    codes = [F.pow(c, frob_inv) for c in g.codes[:: F.p]]
    return Poly(F, tuple(codes))


def squarefree_decomposition(g: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree pairwise-coprime (factor, multiplicity) with prod = g/lc."""
    F = g.field
    out: list[tuple[Poly, int]] = []
    g = g.monic()
    dg = g.derivative()
    if dg.is_zero():
        if g.degree == 0:
            return []
        return [(h, m * F.p) for h, m in squarefree_decomposition(_pth_root(g))]
    c = g.gcd(dg)
    w = g // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        fac = w // y
        if not fac.is_one():
            out.append((fac, i))
        w, c = y, c // y
        i += 1
    if not c.is_one():
        out.extend((h, m * F.p) for h, m in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree(g: Poly) -> list[tuple[Poly, int]]:
    """Split squarefree monic g into (product of all degree-d factors, d)."""
    F = g.field
    out = []
    h = Poly.x(F)
    d = 0
    rest = g
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = Poly(F, polyops.powmod(F, h.codes, F.order, rest.codes))
        part = (h - Poly.x(F)).gcd(rest)
        if not part.is_one():
            out.append((part, d))
            rest = rest // part
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _candidates(F: FiniteField, n: int):
    """Deterministic stream of nonconstant polynomials of degree < n."""
    for k in count(F.order):
        codes = []
        while k:
            k, c = divmod(k, F.order)
            codes.append(c)
        if len(codes) <= n:
            yield tuple(codes)
        else:
            return


def _split_attempt(F, a, g, d):
    """gcd-based splitter for a product of degree-d irreducibles."""
    if F.p == 2:
        # absolute trace to F_2 of a viewed in F_{q^d}
        t, cur = a, a
        for _ in range(F.deg * d - 1):
            cur = polyops.mulmod(F, cur, cur, g)
            t = polyops.add(F, t, cur)
        b = t
    else:
        b = polyops.sub(F, polyops.powmod(F, a, (F.order**d - 1) // 2, g), (1,))
    return polyops.gcd(F, b, g)


def equal_degree(g: Poly, d: int) -> list[Poly]:
    F = g.field
    if g.degree == d:
        return [g]
    for a in _candidates(F, g.degree):
        h = _split_attempt(F, a, g.codes, d)
        if 0 < polyops.degree(h) < g.degree:
            h = Poly(F, h)
            return equal_degree(h, d) + equal_degree(g // h, d)
    raise AssertionError("equal-degree splitting exhausted its candidates")


def factorize(g: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicity, sorted by (degree, coefficients).

    The leading coefficient of g is not included.
    """
    if g.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    found: dict[tuple, tuple[Poly, int]] = {}
    for part, m in squarefree_decomposition(g):
        for block, d in distinct_degree(part):
            for irr in equal_degree(block, d):
                key = irr.codes
                prev = found.get(key, (irr, 0))[1]
                found[key] = (irr, prev + m)
    return sorted(found.values(), key=lambda fm: fm[0].sort_key())


def is_irreducible(g: Poly) -> bool:
    return g.degree >= 1 and polyops.is_irreducible(g.field, g.codes)


# -- rational functions and places ---------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """num/den in lowest terms with den monic."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = self.num.gcd(self.den)
        num, den = self.num // g, self.den // g
        if den.lc != 1:
            inv = Poly(den.field, (den.field.inv(den.lc),))
            num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def of(cls, poly: Poly) -> RationalFunction:
        return cls(poly, Poly(poly.field, (1,)))

    @property
    def field(self):
        return self.num.field

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def reciprocal(self) -> RationalFunction:
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        return RationalFunction(self.den, self.num)

    def __str__(self):
        from .parse import format_rational

        return format_rational(self)


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "Infinity"

    def __str__(self):
        return "Infinity"


INFINITY = _Infinity()


@dataclass(frozen=True)
class PlaceData:
    """A place of F_q(X): a monic irreducible Poly or INFINITY, with e and f."""

    place: Poly | _Infinity
    e: int
    f: int

    @property
    def is_infinite(self) -> bool:
        return self.place is INFINITY

    def __str__(self):
        return f"{self.place} (e={self.e}, f={self.f})"


@dataclass(frozen=True)
class Embedding:
    """F_q(T) -> F_q(X), T -> image."""

    image: RationalFunction
    base_symbol: str = "T"

    def __post_init__(self):
        if self.image.is_constant():
            raise ConstantFunction("the image of T must be nonconstant")

    @property
    def degree(self) -> int:
        return self.image.degree


def places_above_zero(u: RationalFunction) -> list[PlaceData]:
    """Places of F_q(X) where u has a zero, with ramification and inertia."""
    if u.is_constant():
        raise ConstantFunction("u must be nonconstant")
    places = [PlaceData(pi, m, pi.degree) for pi, m in factorize(u.num)]
    if u.num.degree < u.den.degree:
        places.append(PlaceData(INFINITY, u.den.degree - u.num.degree, 1))
    return places


def places_above_infinity(E: Embedding) -> list[PlaceData]:
    """Places over T = infinity: the zeros of 1/u, i.e. the twist T -> 1/T."""
    return places_above_zero(E.image.reciprocal())


def fundamental_identity_holds(u: RationalFunction) -> bool:
    return sum(pd.e * pd.f for pd in places_above_zero(u)) == u.degree


@dataclass(frozen=True)
class SingleInfinite:
    single: bool
    f: int | None

    def __bool__(self):
        return self.single


def verify_single_infinite(E: Embedding) -> SingleInfinite:
    places = places_above_infinity(E)
    if len(places) == 1:
        return SingleInfinite(True, places[0].f)
    return SingleInfinite(False, None)


# -- the explicit one-place construction -----------------------------------------------


def _subfield_embedding(small: FiniteField, big: FiniteField) -> list[int]:
    """Codes in ``big`` of each element of ``small`` (indexed by small's code).

    The modulus root of ``small`` maps to the root of its modulus in
    ``big`` with the smallest code.
    """
    if small.deg == 1:
        return list(range(small.order))
    root = min(
        r for r in range(big.order)
        if polyops.evaluate(big, small.modulus, r) == 0
    )
    powers = [1]
    for _ in range(small.deg - 1):
        powers.append(big.mul(powers[-1], root))
    table = []
    for code in range(small.order):
        acc = 0
        for c, w in zip(small.digits(code), powers):
            acc = big.add(acc, big.mul(big.scalar(c), w))
        table.append(acc)
    return table


def minimal_polynomial(zeta: FFElement, q: int, small: FiniteField) -> Poly:
    """Minimal polynomial over F_q of zeta, as prod (X - zeta^(q^i)) descended to ``small``."""
    big = zeta.field
    conjugates = []
    c = zeta.code
    while c not in conjugates:
        conjugates.append(c)
        c = big.pow(c, q)
    prod_codes: tuple[int, ...] = (1,)
    for r in conjugates:
        prod_codes = polyops.mul(big, prod_codes, (big.neg(r), 1))
    back = {b: s for s, b in enumerate(_subfield_embedding(small, big))}
    try:
        return Poly(small, tuple(back[c] for c in prod_codes))
    except KeyError:
        raise AssertionError("minimal polynomial has coefficients outside F_q") from None


@dataclass(frozen=True)
class OnePlaceField:
    q: int
    f: int
    g: Poly
    embedding: Embedding
    irreducible: bool
    derivative_nonzero: bool
    infinite_places: tuple[PlaceData, ...]

    @property
    def single_infinite_place(self) -> bool:
        return len(self.infinite_places) == 1

    @property
    def inertia_degree(self) -> int | None:
        return self.infinite_places[0].f if self.single_infinite_place else None

    @property
    def sum_ef(self) -> int:
        return sum(pd.e * pd.f for pd in self.infinite_places)

    @property
    def ok(self) -> bool:
        return (
            self.irreducible
            and self.derivative_nonzero
            and self.g.degree == self.f
            and self.single_infinite_place
            and self.inertia_degree == self.f
            and self.sum_ef == self.f
        )


def construct_remark_field(q: int, f: int) -> OnePlaceField:
    """F_q(X) over F_q(T) via T -> 1/g(X), g the minimal polynomial of a
    primitive (q^f - 1)-th root of unity; one infinite place, inertia f.
    """
    if q**f > SIZE_GUARD:
        raise SizeGuardExceeded(f"{q}^{f} exceeds the table guard {SIZE_GUARD}")
    small = field_of_order(q)
    big = extension_field(q, f)
    g = minimal_polynomial(FFElement(big, big.gen), q, small)
    E = Embedding(RationalFunction(Poly(small, (1,)), g))
    factors = factorize(g)
    return OnePlaceField(
        q=q,
        f=f,
        g=g,
        embedding=E,
        irreducible=len(factors) == 1 and factors[0][1] == 1 and is_irreducible(g),
        derivative_nonzero=not g.derivative().is_zero(),
        infinite_places=tuple(places_above_infinity(E)),
    )
