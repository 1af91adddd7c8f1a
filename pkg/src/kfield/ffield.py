"""Finite fields F_{p^deg} with full discrete-log tables, multiplicative
characters, and circle-valued tables that are equivariant under F_q^x.

Elements are encoded as integers ("codes"): the element
c_0 + c_1 t + ... + c_{deg-1} t^{deg-1}, with t a root of the modulus, has
code sum(c_i * p**i).  ``FFElement`` wraps a code together with its field
for user-facing work; the arithmetic methods on ``FiniteField`` work on
raw codes and are what the polynomial layer uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cache
from itertools import product

from . import polyops
from .errors import (
    FieldMismatch,
    NotPrime,
    PrimenessViolated,
    SizeGuardExceeded,
    ZeroElement,
)
from .repunit import factorize, is_prime, repunit_value

SIZE_GUARD = 2**20


class FiniteField:
    """F_{p^deg} with a fixed modulus, generator and log table.

    Build instances with ``make_field``; the constructor assumes its
    arguments are already valid.
    """

    def __init__(self, p: int, deg: int, modulus: tuple[int, ...], gen: int, exp: list[int]):
        self.p = p
        self.deg = deg
        self.order = p**deg
        self.modulus = modulus
        self.gen = gen
        self._exp = exp
        log = [-1] * self.order
        for k, a in enumerate(exp):
            log[a] = k
        self._log = log
        self._hash = hash((p, deg, modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.deg})"

    def __eq__(self, other):
        return self is other or (
            isinstance(other, FiniteField)
            and (self.p, self.deg, self.modulus) == (other.p, other.deg, other.modulus)
        )

    def __hash__(self):
        return self._hash

    # -- code-level arithmetic --------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.deg):
            a, d = divmod(a, self.p)
            out.append(d)
        return tuple(out)

    def from_digits(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.deg or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"{coeffs} is not a coefficient vector for {self}")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.deg == 1:
            return (a + b) % p
        out, w = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += (da + db) % p * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.deg == 1:
            return -a % p
        out, w = 0, 1
        while a:
            a, d = divmod(a, p)
            out += -d % p * w
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("0 has no inverse")
        return self._exp[-self._log[a] % (self.order - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroElement("0 has no inverse")
            return 1 if k == 0 else 0
        return self._exp[self._log[a] * k % (self.order - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("discrete log of 0")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.order - 1)]

    def scalar(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # -- subfields ---------------------------------------------------------

    def subfield_degree(self, q: int) -> int:
        """nu with q = p^nu, requiring F_q to be a subfield; else FieldMismatch."""
        nu, m = 0, q
        while m % self.p == 0:
            m //= self.p
            nu += 1
        if m != 1 or nu == 0 or self.deg % nu:
            raise FieldMismatch(f"F_{q} is not a subfield of {self}")
        return nu

    def subfield_step(self, q: int) -> int:
        """Exponent s such that gen^s generates F_q^x inside this field."""
        self.subfield_degree(q)
        return (self.order - 1) // (q - 1)

    def subfield_log(self, a: int, q: int) -> int:
        """Log of a in F_q^x relative to the generator gen^(subfield_step)."""
        step = self.subfield_step(q)
        k = self.log(a)
        if k % step:
            raise FieldMismatch(f"element {a} of {self} does not lie in F_{q}")
        return k // step

    def subfield_elements(self, q: int) -> list[int]:
        """Nonzero elements of F_q inside this field, by subfield log."""
        step = self.subfield_step(q)
        return [self._exp[step * j] for j in range(q - 1)]

    # -- element views -----------------------------------------------------

    def element(self, x) -> FFElement:
        """Element from a code, an FFElement, or a coefficient vector."""
        if isinstance(x, FFElement):
            if x.field != self:
                raise FieldMismatch(f"{x!r} does not belong to {self}")
            return x
        if isinstance(x, int):
            if not 0 <= x < self.order:
                raise ValueError(f"code {x} out of range for {self}")
            return FFElement(self, x)
        return FFElement(self, self.from_digits(x))

    def zero(self) -> FFElement:
        return FFElement(self, 0)

    def one(self) -> FFElement:
        return FFElement(self, 1)

    def elements(self) -> list[FFElement]:
        return [FFElement(self, a) for a in range(self.order)]

    def nonzero_codes(self) -> range:
        return range(1, self.order)


@dataclass(frozen=True)
class FFElement:
    field: FiniteField = field(repr=False)
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.code)

    def _other(self, other):
        if isinstance(other, int):
            return self.field.scalar(other)
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.code
        return None

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is None else FFElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is None else FFElement(self.field, self.field.sub(self.code, b))

    def __neg__(self):
        return FFElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is None else FFElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FFElement(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __pow__(self, k: int):
        return FFElement(self.field, self.field.pow(self.code, k))

    def __bool__(self):
        return self.code != 0

    def order(self) -> int:
        """Multiplicative order."""
        if self.code == 0:
            raise ZeroElement("0 has no multiplicative order")
        n = self.field.order - 1
        return n // math.gcd(n, self.field.log(self.code))


# -- construction ---------------------------------------------------------------


def _lex_vectors(p: int, length: int):
    # lexicographic on (c_0, c_1, ...), c_0 most significant
    return product(range(p), repeat=length)


def _linear_mul_table(p, deg, modulus, g):
    """Codes of g * t^i mod modulus for i < deg, as coefficient lists."""
    prime = make_field(p, 1)
    images = []
    cur = tuple(g)
    for _ in range(deg):
        images.append(list(cur) + [0] * (deg - len(cur)))
        cur = polyops.mod(prime, polyops.mul(prime, cur, polyops.X), modulus)
    return images


def _has_root(prime, m) -> bool:
    """Cheap filter before the full irreducibility test."""
    return any(polyops.evaluate(prime, m, a) == 0 for a in range(prime.p))


def _has_full_order(prime, modulus, g, n) -> bool:
    one = (1,)
    for r in factorize(n).primes:
        if polyops.powmod(prime, g, n // r, modulus) == one:
            return False
    return True


@cache
def make_field(p: int, deg: int) -> FiniteField:
    """F_{p^deg} with lex-least monic irreducible modulus and lex-least generator.

    Lex order compares coefficient vectors (c_0, c_1, ...) starting from c_0.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if deg < 1:
        raise ValueError("degree must be positive")
    if p**deg > SIZE_GUARD:
        raise SizeGuardExceeded(f"{p}^{deg} exceeds the table guard {SIZE_GUARD}")

    if deg == 1:
        n = p - 1
        gen = next(
            a for a in range(1, p)
            if all(pow(a, n // r, p) != 1 for r in factorize(n).primes)
        ) if p > 2 else 1
        exp = [1] * n
        for k in range(1, n):
            exp[k] = exp[k - 1] * gen % p
        return FiniteField(p, 1, (0, 1), gen, exp)

    prime = make_field(p, 1)
    modulus = next(
        m for m in (tuple(c) + (1,) for c in _lex_vectors(p, deg))
        if not _has_root(prime, m) and polyops.is_irreducible(prime, m)
    )
    n = p**deg - 1
    gen_vec = next(
        v for v in (polyops.trim(c) for c in _lex_vectors(p, deg))
        if v and _has_full_order(prime, modulus, v, n)
    )

    # Multiplication by the generator is F_p-linear; iterate it on codes.
    weights = [p**i for i in range(deg)]
    columns = [
        sum(c * w for c, w in zip(col, weights))
        for col in _linear_mul_table(p, deg, modulus, gen_vec)
    ]
    if p == 2:
        def times_gen(a):
            out, i = 0, 0
            while a:
                if a & 1:
                    out ^= columns[i]
                a >>= 1
                i += 1
            return out
    else:
        def times_gen(a):
            out = [0] * deg
            i = 0
            while a:
                a, d = divmod(a, p)
                if d:
                    col, j = columns[i], 0
                    while col:
                        col, c = divmod(col, p)
                        out[j] = (out[j] + d * c) % p
                        j += 1
                i += 1
            return sum(c * w for c, w in zip(out, weights))

    exp = [1]
    for _ in range(n - 1):
        exp.append(times_gen(exp[-1]))
    gen = sum(c * w for c, w in zip(gen_vec, weights))
    return FiniteField(p, deg, modulus, gen, exp)


def field_of_order(q: int) -> FiniteField:
    """make_field(p, nu) for the prime power q = p^nu."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = factorize(q).primes[0]
    nu, m = 0, q
    while m % p == 0:
        m //= p
        nu += 1
    if m != 1:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(p, nu)


def extension_field(q: int, f: int) -> FiniteField:
    """F_{q^f}, containing F_q as the subfield fixed by x -> x^q."""
    base = field_of_order(q)
    return make_field(base.p, base.deg * f)


def mult_generator(F: FiniteField) -> FFElement:
    return FFElement(F, F.gen)


# -- roots of unity and characters ------------------------------------------------


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """exp(2 pi i * num/den), stored reduced with 0 <= num < den."""

    num: int
    den: int

    def __post_init__(self):
        if self.den < 1:
            raise ValueError("den must be positive")
        num = self.num % self.den
        g = math.gcd(num, self.den)
        if g != 1:
            object.__setattr__(self, "num", num // g)
            object.__setattr__(self, "den", self.den // g)
        elif num != self.num:
            object.__setattr__(self, "num", num)

    @classmethod
    def one(cls):
        return cls(0, 1)

    def __mul__(self, other):
        d = self.den * other.den // math.gcd(self.den, other.den)
        return RootOfUnity(self.num * (d // self.den) + other.num * (d // other.den), d)

    def conjugate(self):
        return RootOfUnity(-self.num, self.den)

    def __pow__(self, k: int):
        return RootOfUnity(self.num * k, self.den)

    def to_complex(self) -> complex:
        return complex(math.cos(2 * math.pi * self.num / self.den),
                       math.sin(2 * math.pi * self.num / self.den))

    def __str__(self):
        return "1" if self.num == 0 else f"e(2pi i*{self.num}/{self.den})"


@dataclass(frozen=True)
class Character:
    """chi(gen^j) = omega^(exponent*j), omega a primitive (q-1)-th root of unity.

    ``gen`` is the generator of F_q^x inside whatever field the argument
    lives in: ``F.gen`` when |F| = q, ``F.gen^((|F|-1)/(q-1))`` otherwise.
    """

    field_order: int
    exponent: int

    def __post_init__(self):
        n = self.field_order - 1
        object.__setattr__(self, "exponent", self.exponent % n if n > 1 else 0)

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    def __mul__(self, other):
        if self.field_order != other.field_order:
            raise FieldMismatch("characters of different groups")
        return Character(self.field_order, self.exponent + other.exponent)

    def _value_at_log(self, j: int) -> RootOfUnity:
        return RootOfUnity(self.exponent * j, self.field_order - 1)


def characters(q: int) -> list[Character]:
    """All q - 1 characters of F_q^x, trivial first."""
    return [Character(q, k) for k in range(q - 1)]


def char_value(chi: Character, a: FFElement) -> RootOfUnity:
    if a.code == 0:
        raise ZeroElement("characters are defined on nonzero elements")
    return chi._value_at_log(a.field.subfield_log(a.code, chi.field_order))


# -- equivariant tables -------------------------------------------------------------


@dataclass(frozen=True)
class EquivariantTable:
    """A map F_{q^f}^x -> roots of unity with value(a*b) = chi(a)*value(b), a in F_q^x.

    Values are stored as exponents k of omega = exp(2 pi i/(q-1)).
    """

    domain_field: FiniteField
    exponents: tuple  # indexed by element code; entry 0 is None
    twist_char: Character

    def __call__(self, b) -> RootOfUnity:
        code = b.code if isinstance(b, FFElement) else b
        if code == 0:
            raise ZeroElement("table is defined on nonzero elements")
        return RootOfUnity(self.exponents[code], self.twist_char.field_order - 1)

    def check_equivariance(self) -> bool:
        """value(g*b) == chi(g)*value(b) for the generator g of F_q^x and every b.

        Every a in F_q^x is a power of g, so this covers all pairs (a, b).
        """
        F, chi = self.domain_field, self.twist_char
        n = chi.field_order - 1
        if n == 1:
            return all(k == 0 for k in self.exponents[1:])
        # multiplying by g adds step to the log
        step, N, e, v = F.subfield_step(chi.field_order), F.order - 1, chi.exponent, self.exponents
        exp, log = F._exp, F._log
        return all((v[exp[(log[b] + step) % N]] - v[b] - e) % n == 0 for b in F.nonzero_codes())

    def check_equivariance_pairs(self) -> bool:
        """Literal check over all pairs (a, b) in F_q^x x F_{q^f}^x."""
        F, chi = self.domain_field, self.twist_char
        for j, a in enumerate(F.subfield_elements(chi.field_order)):
            ca = chi._value_at_log(j)
            for b in F.nonzero_codes():
                if self(F.mul(a, b)) != ca * self(b):
                    return False
        return True

    def values_in_mu(self, n: int) -> bool:
        """Every value is an n-th root of unity."""
        m = self.twist_char.field_order - 1
        return all((k * n) % m == 0 for k in self.exponents[1:])


@cache
def subfield_coordinates(big: FiniteField, q: int) -> dict[int, tuple[int, ...]]:
    """F_q-coordinates of every element of big in the power basis 1, t, ..., t^(f-1).

    t is the modulus root of ``big``; it generates big over F_p, hence
    over F_q, so its first f powers form an F_q-basis.
    """
    nu = big.subfield_degree(q)
    f = big.deg // nu
    sub = [0] + big.subfield_elements(q)
    t = big.p if big.deg > 1 else 0
    basis = [1]
    for _ in range(f - 1):
        basis.append(big.mul(basis[-1], t))
    coords = {}
    for vec in product(sub, repeat=f):
        acc = 0
        for c, w in zip(vec, basis):
            acc = big.add(acc, big.mul(c, w))
        coords[acc] = vec
    if len(coords) != big.order:
        raise AssertionError("power basis failed to span the extension")
    return coords


@cache
def _lead_logs(big: FiniteField, q: int) -> tuple:
    """Subfield log of the first nonzero power-basis coordinate, by code."""
    if big.order == q:
        return (None,) + tuple(big._log[1:])
    out = [None] * big.order
    for code, vec in subfield_coordinates(big, q).items():
        if code:
            out[code] = big.subfield_log(next(c for c in vec if c), q)
    return tuple(out)


def build_psi(psi: Character, big: FiniteField) -> EquivariantTable:
    """Psi(sum_{i >= i0} b_i t^i) = psi(b_{i0}), b_{i0} the first nonzero coordinate."""
    q, e = psi.field_order, psi.exponent
    logs = _lead_logs(big, q)
    values = (None,) + tuple(e * j % (q - 1) for j in logs[1:])
    return EquivariantTable(big, values, psi)


@cache
def _power_map_inverse(q: int, f: int) -> tuple[int, int]:
    """(Q^f, u) with u * Q^f == 1 mod (q - 1); PrimenessViolated if none exists."""
    if math.gcd(f, q - 1) != 1:
        raise PrimenessViolated(f"gcd(f={f}, q-1={q - 1}) != 1")
    Qf = repunit_value(q, f)
    return Qf, pow(Qf, -1, q - 1) if q > 2 else 0


@cache
def _norm_logs(big: FiniteField, q: int) -> tuple:
    """u * log_q(b^(Q^f)) mod (q - 1), by code."""
    f = big.deg // big.subfield_degree(q)
    Qf, u = _power_map_inverse(q, f)
    n, step, log = big.order - 1, big.subfield_step(q), big._log
    # log(b^(Q^f)) = Q^f * log(b) mod n, always a multiple of step
    return (None,) + tuple(Qf * log[b] % n // step * u % (q - 1) for b in big.nonzero_codes())


def build_x(chi: Character, big: FiniteField) -> EquivariantTable:
    """X(b) = chi~(b^(Q^f)), where chi~(a^(Q^f)) = chi(a) on F_q^x."""
    q, e = chi.field_order, chi.exponent
    logs = _norm_logs(big, q)
    values = (None,) + tuple(e * j % (q - 1) for j in logs[1:])
    return EquivariantTable(big, values, chi)


@cache
def _unit_correction_exponent(big: FiniteField, q: int) -> int:
    f = big.deg // big.subfield_degree(q)
    Qf, u = _power_map_inverse(q, f)
    return -Qf * u % (big.order - 1)


def find_unit_correction(beta: FFElement, q: int) -> FFElement:
    """The unique a in F_q^x with (a*beta)^(Q^f) = 1, where f = [F : F_q] for the field F of beta.

    a = (beta^(-Q^f))^u with u = (Q^f)^(-1) mod (q - 1); beta^(Q^f) is the
    norm of beta, which lies in F_q^x.
    """
    if beta.code == 0:
        raise ZeroElement("beta must be nonzero")
    big = beta.field
    return FFElement(big, big.pow(beta.code, _unit_correction_exponent(big, q)))
