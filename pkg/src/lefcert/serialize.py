"""Canonical JSON forms for every exchanged object.

Rationals travel as "p/q" strings with q > 0, complex values as
{"re": "p/q", "im": "r/s"}, (p,q)-forms as lists of
{"I": [...], "J": [...], "c": {...}} records, rank tables as
{"m": ..., "values": {"[1,3]": ...}}.  Round trips are bit-exact.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .certify import Certificate
from .exterior import PQForm
from .linalg import HermitianMatrix
from .polymatroid import RankFunction
from .rationals import GaussianRational, as_rat

__all__ = [
    "rat_to_str",
    "rat_from_str",
    "complex_to_json",
    "complex_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "form_to_json",
    "form_from_json",
    "rank_function_to_json",
    "rank_function_from_json",
    "certificate_to_json",
]


def rat_to_str(x) -> str:
    x = as_rat(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s):
    if isinstance(s, float):
        raise TypeError("floating-point input rejected")
    if isinstance(s, int):
        return as_rat(s)
    frac = Fraction(s)
    return as_rat(frac)


def complex_to_json(c: GaussianRational) -> dict:
    return {"re": rat_to_str(c.re), "im": rat_to_str(c.im)}


def complex_from_json(obj) -> GaussianRational:
    if isinstance(obj, (int, str)):
        return GaussianRational(rat_from_str(obj))
    return GaussianRational(rat_from_str(obj.get("re", 0)), rat_from_str(obj.get("im", 0)))


def matrix_to_json(m: HermitianMatrix) -> dict:
    return {
        "n": m.n,
        "entries": [[complex_to_json(x) for x in row] for row in m.rows],
    }


def matrix_from_json(obj) -> HermitianMatrix:
    entries = [[complex_from_json(x) for x in row] for row in obj["entries"]]
    mat = HermitianMatrix(entries)
    if mat.n != obj.get("n", mat.n):
        raise ValueError("matrix dimension field disagrees with entries")
    return mat


def form_to_json(phi: PQForm) -> dict:
    terms = [
        {"I": list(i), "J": list(j), "c": complex_to_json(c)}
        for (i, j), c in sorted(phi.coeffs.items())
    ]
    return {"n": phi.n, "p": phi.p, "q": phi.q, "terms": terms}


def form_from_json(obj) -> PQForm:
    coeffs = {
        (tuple(t["I"]), tuple(t["J"])): complex_from_json(t["c"]) for t in obj["terms"]
    }
    return PQForm(obj["n"], obj["p"], obj["q"], coeffs)


def _subset_key(subset) -> str:
    return json.dumps(sorted(subset))


def rank_function_to_json(r: RankFunction) -> dict:
    return {
        "m": r.m,
        "values": {_subset_key(k): v for k, v in sorted(r.values.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))},
        "provenance": r.provenance,
    }


def rank_function_from_json(obj) -> RankFunction:
    values = {frozenset(json.loads(k)): int(v) for k, v in obj["values"].items()}
    return RankFunction(int(obj["m"]), values, obj.get("provenance", "user-table"))


def certificate_to_json(cert: Certificate) -> dict:
    out = {"verdict": cert.verdict}
    if cert.failing_subset is not None:
        out["failing_subset"] = sorted(cert.failing_subset)
    if cert.rank_deficit is not None:
        out["rank_deficit"] = cert.rank_deficit
    if cert.kernel_witness is not None:
        out["witness"] = form_to_json(cert.kernel_witness)
    return out
