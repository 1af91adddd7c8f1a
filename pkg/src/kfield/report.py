"""JSON and text rendering of analysis reports (schema version "1")."""

from __future__ import annotations

import json

import jsonschema

from .ktheory import KReport

SCHEMA_VERSION = "1"

_module = {
    "type": "object",
    "required": ["ring", "rank", "torsion"],
    "properties": {
        "ring": {"type": "string"},
        "rank": {"type": "integer", "minimum": 0},
        "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
}

_stage = {
    "type": "object",
    "required": ["stage", "ring", "closed_form", "closed_form_localized", "engine", "agree"],
    "properties": {
        "closed_form": {
            "type": "object",
            "required": ["K0", "K1"],
            "properties": {"K0": {"type": "string"}, "K1": {"type": "string"}},
        },
        "closed_form_localized": {
            "type": "object",
            "properties": {"K0": _module, "K1": _module},
        },
        "engine": {"type": "object", "properties": {"K0": _module, "K1": _module}},
        "checks": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "agree": {"type": "boolean"},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "schema_version", "input", "base_stage", "adjoin_prime",
        "rationalized", "torsion", "agree",
    ],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "input": {
            "type": "object",
            "required": ["q", "f", "n", "gamma_rank"],
            "properties": {k: {"type": "integer"} for k in ("q", "f", "n", "gamma_rank")},
        },
        "base_stage": _stage,
        "adjoin_prime": _stage,
        "rationalized": {
            "type": "object",
            "required": ["ring", "even_rank", "odd_rank", "agree"],
        },
        "torsion": {
            "type": "object",
            "required": ["Qf", "admissible_primes", "presence", "orders_present"],
            "properties": {"presence": {"enum": ["PRESENT", "UNKNOWN"]}},
        },
        "places": {
            "type": ["object", "null"],
            "required": ["g", "embedding", "places_above_infinity", "inertia_degree", "ok"],
        },
        "agree": {"type": "boolean"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

NOTES = [
    "base_stage: K-theory of the crossed product by the additive group and F_q^x; "
    "engine = inductive limit of the finite stages along I + Q^n J",
    "adjoin_prime: Pimsner-Voiculescu step for a prime element at the place over T; "
    "engine = coker/ker of id - mu_tau over Z[1/q]",
    "rationalized: after inverting Q^f, reduced K_0 of C*(F_q^x) tensor the exterior "
    "algebra on Gamma, truncated to the requested rank",
    "torsion: every torsion order has primes dividing Q^f; order-Q^f torsion is asserted "
    "only when gcd(f, q-1) = 1",
    "places: the field F_q(X) with T -> 1/g(X), g the minimal polynomial of a generator "
    "of F_(q^f)^x; reported when n = f, null otherwise",
    "integral K-groups beyond the prime-adjoined stage are not determined (extension problems)",
]


def places_to_dict(rf) -> dict:
    from .parse import format_rational

    return {
        "g": str(rf.g),
        "embedding": f"T -> {format_rational(rf.embedding.image)}",
        "degree": rf.g.degree,
        "irreducible": rf.irreducible,
        "derivative_nonzero": rf.derivative_nonzero,
        "places_above_infinity": [
            {"place": str(pd.place), "e": pd.e, "f": pd.f} for pd in rf.infinite_places
        ],
        "single_infinite_place": rf.single_infinite_place,
        "inertia_degree": rf.inertia_degree,
        "sum_ef": rf.sum_ef,
        "ok": rf.ok,
    }


def report_to_dict(rep: KReport) -> dict:
    s = rep.shape
    return {
        "schema_version": SCHEMA_VERSION,
        "input": {"q": s.q, "f": s.f, "n": s.n, "gamma_rank": rep.gamma_rank},
        "base_stage": rep.base.to_json(),
        "adjoin_prime": rep.adjoined.to_json(),
        "rationalized": rep.rationalized.to_json(),
        "torsion": rep.torsion.to_json(),
        "places": None if rep.places is None else places_to_dict(rep.places),
        "agree": rep.agree,
        "notes": NOTES,
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def validate_report(obj: dict) -> dict:
    """Raise jsonschema.ValidationError unless obj is a valid analyze report."""
    jsonschema.validate(obj, REPORT_SCHEMA)
    return obj


def parse_report(text: str) -> dict:
    return validate_report(json.loads(text))


def report_to_text(rep: KReport) -> str:
    s = rep.shape
    b, a, r, t = rep.base, rep.adjoined, rep.rationalized, rep.torsion
    yes = {True: "yes", False: "NO"}
    lines = [
        f"field shape: q={s.q} n={s.n} f={s.f}  Q^f={s.Qf}",
        "",
        "base stage (additive group and roots of unity):",
        f"  K0 = {b.k0_closed}",
        f"  K1 = {b.k1_closed}",
        f"  engine over {b.ring}: K0 = {b.k0_engine}, K1 = {b.k1_engine}   agree: {yes[b.agree]}",
    ]
    for token, image in b.generators:
        lines.append(f"    {token} -> {image}")
    lines += [
        "",
        "prime-adjoined stage:",
        f"  K0 = {a.k0_closed}",
        f"  K1 = {a.k1_closed}",
        f"  engine over {a.ring}: K0 = {a.k0_engine}, K1 = {a.k1_engine}   agree: {yes[a.agree]}",
    ]
    for token, image in a.generators:
        lines.append(f"    {token}: {image}")
    lines += [
        "",
        f"rationalized over {r.ring}, Gamma truncated to rank {rep.gamma_rank}:",
        f"  K0 rank = {r.even}, K1 rank = {r.odd}   agree: {yes[r.agree]}",
        "  (full Gamma has countably many generators; ranks are then infinite)",
        "",
        "torsion:",
        f"  admissible primes: {sorted(t.support) or 'none'}",
    ]
    if t.presence == "PRESENT":
        lines.append(f"  torsion of order Q^f = {t.Qf} is present")
    else:
        lines.append(f"  presence of order-{t.Qf} torsion: UNKNOWN (gcd(f, q-1) != 1)")
    lines += ["", "places over T = infinity:"]
    if rep.places is None:
        lines.append("  no explicit field (n != f)")
    else:
        pl = rep.places
        lines.append(f"  realized by T -> 1/g(X), g = {pl.g}")
        lines += [f"  {pd}" for pd in pl.infinite_places]
        lines.append(f"  single place: {yes[pl.single_infinite_place]}, inertia degree {pl.inertia_degree}")
    lines += ["", f"all cross-checks agree: {yes[rep.agree]}"]
    return "\n".join(lines)
