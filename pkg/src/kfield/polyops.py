"""Low-level polynomial arithmetic over a finite field.

Polynomials are tuples of element codes, lowest degree first, with no
trailing zeros; ``()`` is the zero polynomial.  ``F`` is any object with
the ``FiniteField`` arithmetic methods (add, sub, neg, mul, inv, order).
These functions back both field construction and ``funcfield.Poly``.
"""

from __future__ import annotations

from .repunit import factorize


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def degree(a) -> int:
    return len(a) - 1 if a else -1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F, a):
    return tuple(F.neg(c) for c in a)


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, c, a):
    if c == 0:
        return ()
    return tuple(F.mul(c, x) for x in a)


def mul(F, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    quo = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = F.mul(c, inv_lead)
        quo[k - db] = c
        for j, y in enumerate(b):
            if y:
                rem[k - db + j] = F.sub(rem[k - db + j], F.mul(c, y))
    return trim(quo), trim(rem[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return a
    return scale(F, F.inv(a[-1]), a)


def gcd(F, a, b):
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def mulmod(F, a, b, m):
    return mod(F, mul(F, a, b), m)


def powmod(F, a, e: int, m):
    result = mod(F, (1,), m)
    a = mod(F, a, m)
    while e:
        if e & 1:
            result = mulmod(F, result, a, m)
        e >>= 1
        if e:
            a = mulmod(F, a, a, m)
    return result


def derivative(F, a):
    out = []
    for i in range(1, len(a)):
        c = 0
        for _ in range(i % F.p):
            c = F.add(c, a[i])
        out.append(c)
    return trim(out)


def evaluate(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


X = (0, 1)


def frobenius_powers(F, m, count):
    """[X^(q^0), X^(q^1), ..., X^(q^count)] mod m, q = |F|."""
    out = [mod(F, X, m)]
    for _ in range(count):
        out.append(powmod(F, out[-1], F.order, m))
    return out


def is_irreducible(F, m) -> bool:
    """Rabin's test for a nonconstant polynomial over F."""
    d = degree(m)
    if d < 1:
        return False
    if d == 1:
        return True
    frob = frobenius_powers(F, m, d)
    if sub(F, frob[d], mod(F, X, m)):
        return False
    for r in factorize(d).primes:
        if degree(gcd(F, m, sub(F, frob[d // r], X))) > 0:
            return False
    return True
