"""Fast invariant checks behind ``kfield selftest`` (reduced ranges)."""

from __future__ import annotations

import math

from . import abgrp, ffield, funcfield, ktheory, repunit


def _adjoin_prime_all():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for f in range(1, 4):
            if not ktheory.adjoin_prime(ktheory.FieldShape(q, f, f)).agree:
                return False
    return True


def _compatibility():
    return all(
        ktheory.compatibility_holds(q, n, m)
        and ktheory.connecting_matrix(q, n).det() == q**n
        for q in (2, 3, 4, 5) for n in range(1, 4) for m in range(6)
    )


def _rationalized():
    for q in (2, 3, 5):
        for f in (1, 2):
            for r in range(1, 5):
                rk = ktheory.rationalized_k(ktheory.FieldShape(q, f, f), r)
                if (rk.even, rk.odd) != ((q - 2) * 2 ** (r - 1),) * 2:
                    return False
    return True


def _one_place_fields():
    return all(
        funcfield.construct_remark_field(q, f).ok
        for q in (2, 3, 4, 5) for f in range(1, 4)
    )


def _repunit_identities():
    return (
        repunit.support_lemma_sweep(8, 8) == []
        and all(repunit.gcd_identity_check(q, a, b).equal
                for q in range(2, 11) for a in range(1, 9) for b in range(1, 9))
        and all(repunit.congruence_check(q, f) for q in range(2, 17) for f in range(1, 17))
    )


def _legendre():
    def oracle(p, e):
        v, pk = 0, p
        while pk <= e:
            v += e // pk
            pk *= p
        return v

    return all(repunit.legendre_valuation(p, e) == oracle(p, e)
               for p in (2, 3, 5, 7) for e in range(500))


def _characters():
    for q, f in ((2, 3), (3, 2), (3, 3), (4, 2), (5, 2)):
        big = ffield.extension_field(q, f)
        for chi in ffield.characters(q):
            if not ffield.build_psi(chi, big).check_equivariance():
                return False
            if math.gcd(f, q - 1) == 1 and not ffield.build_x(chi, big).check_equivariance():
                return False
    return True


def _snf():
    import random

    rng = random.Random(20261017)
    for _ in range(100):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        U, D, V = abgrp.snf(A)
        prod = abgrp.ExactMatrix(U) @ abgrp.ExactMatrix(A) @ abgrp.ExactMatrix(V)
        if prod != abgrp.ExactMatrix(D):
            return False
        d = abgrp.diagonal(D)
        nz = [x for x in d if x]
        if any(b % a for a, b in zip(nz, nz[1:])) or d[len(nz):] != [0] * (len(d) - len(nz)):
            return False
    return True


CHECKS = [
    ("prime-adjoined stage: engine == closed form (q<=9, f<=3)", _adjoin_prime_all),
    ("connecting/evaluation compatibility and det = q^n", _compatibility),
    ("rationalized ranks (q-2)*2^(r-1)", _rationalized),
    ("one-place fields: irreducible g, single infinite place, inertia f", _one_place_fields),
    ("repunit gcd identity, congruence, support lemma sweep", _repunit_identities),
    ("Legendre valuation vs floor-sum", _legendre),
    ("equivariant tables Psi and X", _characters),
    ("Smith normal form identities", _snf),
]


def run_all() -> list[tuple[str, bool]]:
    return [(name, bool(check())) for name, check in CHECKS]
