"""K-theory bookkeeping for ring C*-algebras of function-field integer rings.

Inputs are abstract field shapes (q, n, f): q the size of the constant
field, n the degree over F_q(T), f the inertia degree of the unique place
over T.  Each stage is computed twice, once from its closed form and once
by the matrix engine in ``abgrp``, and the two are compared.

Coordinates: K_0 of the base stage is identified with
Z[1/q] (+) Z^(q-2); the head coordinate is the Z[1/q] part and the tail is
indexed by the nontrivial characters chi_1, ..., chi_{q-2} (exponents
relative to the fixed generator of F_q^x).  Finite-stage generators
[e_m p_chi] are ordered trivial character first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .abgrp import (
    DEFAULT_PROBE_BOUND,
    CoefficientRing,
    ExactMatrix,
    GradedModule,
    Module,
    ZZ,
    cokernel,
    colimit_stationary,
    element_order,
    exterior_algebra,
    graded_tensor,
    kernel,
    module_iso_eq,
)
from .errors import CrossCheckMismatch, KFieldError, PrimenessViolated
from .ffield import SIZE_GUARD, field_of_order
from .funcfield import OnePlaceField, construct_remark_field
from .repunit import prime_support, repunit_value


def Q(q: int, k: int) -> int:
    """(q^k - 1)/(q - 1), with Q(q, 0) = 0."""
    return 0 if k == 0 else repunit_value(q, k)


@dataclass(frozen=True)
class FieldShape:
    q: int
    n: int
    f: int

    def __post_init__(self):
        field_of_order(self.q)  # raises unless q is a prime power
        if self.n < 1 or self.f < 1:
            raise KFieldError("n and f must be positive")
        if self.n % self.f:
            raise KFieldError(f"inertia degree f={self.f} must divide n={self.n}")

    @property
    def Qf(self) -> int:
        return repunit_value(self.q, self.f)

    @property
    def primeness(self) -> bool:
        """gcd(f, q - 1) = 1."""
        return math.gcd(self.f, self.q - 1) == 1


# -- generator tokens ------------------------------------------------------------------


@dataclass(frozen=True)
class CharFn:
    """[1_m], the class of the characteristic function of T^m R-bar."""

    m: int

    def __str__(self):
        return f"[1_{self.m}]"


@dataclass(frozen=True)
class ProjClass:
    """[1_m p_chi] for a character exponent chi."""

    m: int
    chi: int

    def __str__(self):
        return f"[1_{self.m} p_chi{self.chi}]"


@dataclass(frozen=True)
class WChi:
    """Symbolic K_1 generator [w_chi]; no operator model behind it."""

    chi: int

    def __str__(self):
        return f"[w_chi{self.chi}]"


@dataclass(frozen=True)
class KClassVector:
    head: Fraction
    tail: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "head", Fraction(self.head))

    def as_list(self) -> list[Fraction]:
        return [self.head, *map(Fraction, self.tail)]

    @classmethod
    def from_list(cls, v) -> KClassVector:
        tail = []
        for x in v[1:]:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"tail entry {x} is not an integer")
            tail.append(int(x))
        return cls(Fraction(v[0]), tuple(tail))

    def __str__(self):
        return "(" + "; ".join([str(self.head), *map(str, self.tail)]) + ")"


# -- matrices ------------------------------------------------------------------------------


def connecting_matrix(q: int, n: int) -> ExactMatrix:
    """(i_{m,m+1})_* = I + Q^n J on the generators [e_m p_chi]; det = q^n."""
    size = q - 1
    c = Q(q, n)
    return ExactMatrix([[c + (i == j) for j in range(size)] for i in range(size)])


def eval_matrix(q: int, n: int, m: int) -> ExactMatrix:
    """E_m: finite-stage generators [e_m p_chi] -> Z[1/q] (+) Z^(q-2).

    Column chi != 1 is (-q^(-mn) Q^(mn); e_chi).  Column chi = 1 is the
    class [1_m] minus the other columns, since sum_chi p_chi = 1.
    """
    size = q - 1
    scale = Fraction(1, q ** (m * n))
    c = Q(q, m * n)
    head = [scale * (1 + (q - 2) * c)] + [-scale * c] * (q - 2)
    rows = [head]
    for k in range(1, size):
        rows.append([-1] + [int(j == k) for j in range(1, size)])
    return ExactMatrix(rows, CoefficientRing.inverting(q))


def mu_tau_matrix(q: int, f: int) -> ExactMatrix:
    """Multiplication by a prime element of residue degree f, on Z[1/q] (+) Z^(q-2)."""
    size = q - 1
    s = Fraction(1, q**f)
    c = Q(q, f)
    rows = [[s] + [-s * c] * (q - 2)]
    for i in range(1, size):
        rows.append([int(i == j) for j in range(size)])
    return ExactMatrix(rows, CoefficientRing.inverting(q))


def mu_unit_matrix(q: int) -> ExactMatrix:
    """Multiplication by a polynomial with nonzero constant term: the identity."""
    return ExactMatrix.identity(q - 1, CoefficientRing.inverting(q))


def class_vector(token, q: int, n: int) -> KClassVector:
    """Image of [1_m] or [1_m p_chi] in Z[1/q] (+) Z^(q-2)."""
    scale = Fraction(1, q ** (token.m * n))
    if isinstance(token, CharFn):
        return KClassVector(scale, (0,) * (q - 2))
    if isinstance(token, ProjClass):
        if not 1 <= token.chi <= q - 2:
            raise KFieldError("ProjClass needs a nontrivial character")
        tail = tuple(int(k == token.chi) for k in range(1, q - 1))
        return KClassVector(-scale * Q(q, token.m * n), tail)
    raise TypeError(f"no class vector for {token!r}")


def compatibility_holds(q: int, n: int, m: int) -> bool:
    """E_{m+1} * (I + Q^n J) == E_m, exactly."""
    return eval_matrix(q, n, m + 1) @ connecting_matrix(q, n) == eval_matrix(q, n, m)


# -- stage reports ----------------------------------------------------------------------------


@dataclass
class KStageReport:
    stage: str
    ring: CoefficientRing  # ring the engine works over
    k0_closed: str  # closed form, with mixed coefficient tags
    k1_closed: str
    k0_expected: Module  # closed form tensored with ``ring``
    k1_expected: Module
    k0_engine: Module
    k1_engine: Module
    generators: list[tuple[object, str]] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return (
            module_iso_eq(self.k0_expected, self.k0_engine)
            and module_iso_eq(self.k1_expected, self.k1_engine)
            and all(self.checks.values())
        )

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "ring": str(self.ring),
            "closed_form": {"K0": self.k0_closed, "K1": self.k1_closed},
            "closed_form_localized": {
                "K0": self.k0_expected.to_json(),
                "K1": self.k1_expected.to_json(),
            },
            "engine": {"K0": self.k0_engine.to_json(), "K1": self.k1_engine.to_json()},
            "generators": [{"class": str(t), "image": img} for t, img in self.generators],
            "checks": dict(sorted(self.checks.items())),
            "agree": self.agree,
        }


def _free_text(rank: int) -> str:
    return "" if rank == 0 else ("Z" if rank == 1 else f"Z^{rank}")


def _join(*parts: str) -> str:
    parts = [p for p in parts if p]
    return " (+) ".join(parts) if parts else "0"


def base_stage(shape: FieldShape, probe_bound: int = DEFAULT_PROBE_BOUND) -> KStageReport:
    """Additive group and roots of unity: K_0 = Z[1/q] (+) Z^(q-2), K_1 = 0."""
    q, n = shape.q, shape.n
    ring = CoefficientRing.inverting(q)
    colim = colimit_stationary(lambda m: connecting_matrix(q, n), ring, probe_bound)

    checks = {
        "det_connecting_is_q^n": connecting_matrix(q, n).det() == q**n,
        "eval_compatibility_m<=8": all(compatibility_holds(q, n, m) for m in range(9)),
        "mu_T_shifts_classes_m<=4": all(
            mu_tau_matrix(q, n) @ eval_matrix(q, n, m) == eval_matrix(q, n, m + 1)
            for m in range(5)
        ),
        "mu_unit_is_identity": mu_unit_matrix(q) == ExactMatrix.identity(q - 1),
    }
    generators = []
    for m in (0, 1):
        generators.append((CharFn(m), str(class_vector(CharFn(m), q, n))))
        for k in range(1, q - 1):
            generators.append((ProjClass(m, k), str(class_vector(ProjClass(m, k), q, n))))
    return KStageReport(
        stage="base",
        ring=ring,
        k0_closed=_join(f"Z[1/{q}]", _free_text(q - 2)),
        k1_closed="0",
        k0_expected=Module(ring, q - 1),
        k1_expected=Module(ring, 0),
        k0_engine=colim.module,
        k1_engine=Module(ring, 0),
        generators=generators,
        checks=checks,
    )


def adjoin_prime(shape: FieldShape, strict: bool = True) -> KStageReport:
    """Crossed product by a prime element, via the Pimsner-Voiculescu sequence.

    Closed form K_0 = Z/Q^f (+) Z^(q-2), K_1 = Z^(q-2).  Engine: coker and
    ker of id - (mu_tau)_* over Z[1/q].  With ``strict`` a disagreement
    raises CrossCheckMismatch.
    """
    q, f = shape.q, shape.f
    Qf = shape.Qf
    ring = CoefficientRing.inverting(q)
    A = ExactMatrix.identity(q - 1, ring) - mu_tau_matrix(q, f)
    k0_int = Module(ZZ, q - 2, (Qf,))
    k1_int = Module(ZZ, q - 2)

    unit_class = [1] + [0] * (q - 2)
    checks = {"unit_class_has_order_Q^f": element_order(A, unit_class, ring) == Qf}
    for k in range(1, q - 1):
        v = [0] * (q - 1)
        v[k] = 1
        checks[f"proj_class_chi{k}_infinite_order"] = element_order(A, v, ring) == 0

    generators = [(CharFn(0), f"generator of Z/{Qf}")]
    generators += [(ProjClass(0, k), "free generator") for k in range(1, q - 1)]
    generators += [(WChi(k), "free generator of K1") for k in range(1, q - 1)]
    report = KStageReport(
        stage="prime_adjoined",
        ring=ring,
        k0_closed=str(k0_int),
        k1_closed=str(k1_int),
        k0_expected=k0_int.localize(ring),
        k1_expected=k1_int.localize(ring),
        k0_engine=cokernel(A, ring),
        k1_engine=kernel(A, ring),
        generators=generators,
        checks=checks,
    )
    if strict and not report.agree:
        raise CrossCheckMismatch(
            f"prime-adjoined stage for {shape}: engine K0={report.k0_engine}, "
            f"K1={report.k1_engine}; expected K0={report.k0_expected}, K1={report.k1_expected}"
        )
    return report


@dataclass(frozen=True)
class RationalizedK:
    even: int
    odd: int
    ring: CoefficientRing
    module: GradedModule
    engine: GradedModule  # iterated Pimsner-Voiculescu; also inverts q

    @property
    def agree(self) -> bool:
        return module_iso_eq(self.module.localize(self.engine.ring), self.engine)

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "even_rank": self.even,
            "odd_rank": self.odd,
            "engine": {"even": self.engine.even.to_json(), "odd": self.engine.odd.to_json()},
            "agree": self.agree,
        }


def _pv_trivial_action(K: GradedModule) -> GradedModule:
    # Crossed product by Z acting trivially on K-theory: coker(0) and ker(0).
    return GradedModule(
        Module(K.ring, K.even.rank + K.odd.rank, K.even.torsion + K.odd.torsion),
        Module(K.ring, K.odd.rank + K.even.rank, K.odd.torsion + K.even.torsion),
    )


def rationalized_k(
    shape: FieldShape, r: int, adjoined: KStageReport | None = None
) -> RationalizedK:
    """K_* after inverting Q^f, with Gamma truncated to rank r (tau plus r-1 more).

    Closed form: Z^(q-2) (trivially graded) tensor the exterior algebra on
    Z^r.  Engine: the prime-adjoined engine output, localized, followed by
    r - 1 Pimsner-Voiculescu steps with identity action.  Pass ``adjoined``
    to reuse an already computed prime-adjoined stage.
    """
    if r < 1:
        raise KFieldError("Gamma rank must be at least 1 (it contains tau)")
    q = shape.q
    ring = CoefficientRing.inverting(shape.Qf)
    reduced = GradedModule(Module(ring, q - 2), Module(ring, 0))
    closed = graded_tensor(reduced, exterior_algebra(r, ring))

    adj = adjoin_prime(shape) if adjoined is None else adjoined
    engine = GradedModule(adj.k0_engine, adj.k1_engine).localize(ring)
    for _ in range(r - 1):
        engine = _pv_trivial_action(engine)
    if r == 1:
        integral = GradedModule(Module(ZZ, q - 2, (shape.Qf,)), Module(ZZ, q - 2))
        if not module_iso_eq(integral.localize(ring), closed):
            raise CrossCheckMismatch("rank-1 rationalization disagrees with the prime-adjoined stage")
    out = RationalizedK(closed.even.rank, closed.odd.rank, ring, closed, engine)
    if not out.agree:
        raise CrossCheckMismatch(f"rationalized ranks disagree for {shape}, r={r}")
    return out


# -- torsion --------------------------------------------------------------------------------


PRESENT = "PRESENT"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class TorsionReport:
    q: int
    f: int
    Qf: int
    support: frozenset[int]
    presence: str  # PRESENT or UNKNOWN
    emitted_orders: tuple[int, ...]

    def admissible(self, N: int) -> bool:
        """Can a torsion element of order N exist? Only if its primes divide Q^f."""
        return prime_support(N) <= self.support

    def to_json(self) -> dict:
        return {
            "Qf": self.Qf,
            "admissible_primes": sorted(self.support),
            "presence": self.presence,
            "orders_present": list(self.emitted_orders),
            "primeness_gcd_f_q-1_is_1": self.presence == PRESENT,
        }


def torsion_report(shape: FieldShape) -> TorsionReport:
    Qf = shape.Qf
    present = shape.primeness
    return TorsionReport(
        q=shape.q,
        f=shape.f,
        Qf=Qf,
        support=prime_support(Qf),
        presence=PRESENT if present else UNKNOWN,
        emitted_orders=(Qf,) if present else (),
    )


@dataclass(frozen=True)
class Distinction:
    distinct: bool
    support1: frozenset[int]
    support2: frozenset[int]
    justification: str

    def __bool__(self):
        return self.distinct


def distinguish_fields(q: int, f1: int, f2: int) -> Distinction:
    """Do fields with inertia degrees f1, f2 at infinity have non-isomorphic K-theory?

    Needs gcd(f_i, q - 1) = 1.  The answer is f1 != f2, justified by the
    prime supports of Q^f1 and Q^f2, which differ exactly when f1 != f2.
    """
    for fi in (f1, f2):
        if math.gcd(fi, q - 1) != 1:
            raise PrimenessViolated(f"gcd(f={fi}, q-1={q - 1}) != 1")
    s1 = prime_support(repunit_value(q, f1))
    s2 = prime_support(repunit_value(q, f2))
    if (s1 != s2) != (f1 != f2):
        raise CrossCheckMismatch(f"prime supports of Q^{f1}, Q^{f2} (q={q}) contradict the lemma")
    if f1 == f2:
        why = f"same inertia degree; Q^{f1} has support {sorted(s1)}"
    else:
        why = (
            f"Q^{f1} has prime support {sorted(s1)}, Q^{f2} has {sorted(s2)}; "
            "order-Q^f torsion exists in each and every torsion order has primes "
            "dividing Q^f, so equal K-theory would force equal supports"
        )
    return Distinction(f1 != f2, s1, s2, why)


# -- full report -----------------------------------------------------------------------------


@dataclass
class KReport:
    shape: FieldShape
    gamma_rank: int
    base: KStageReport
    adjoined: KStageReport
    rationalized: RationalizedK
    torsion: TorsionReport
    places: OnePlaceField | None = None  # a field realizing the shape, when n = f

    @property
    def agree(self) -> bool:
        return (
            self.base.agree
            and self.adjoined.agree
            and self.rationalized.agree
            and (self.places is None or self.places.ok)
        )


def analyze(
    q: int,
    f: int,
    n: int | None = None,
    gamma_rank: int = 1,
    probe_bound: int = DEFAULT_PROBE_BOUND,
) -> KReport:
    shape = FieldShape(q, f if n is None else n, f)
    adjoined = adjoin_prime(shape)
    places = None
    if shape.n == shape.f and q**f <= SIZE_GUARD:
        places = construct_remark_field(q, f)
    return KReport(
        shape=shape,
        gamma_rank=gamma_rank,
        base=base_stage(shape, probe_bound),
        adjoined=adjoined,
        rationalized=rationalized_k(shape, gamma_rank, adjoined),
        torsion=torsion_report(shape),
        places=places,
    )
