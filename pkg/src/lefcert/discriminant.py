"""Mixed discriminants of Hermitian tuples and torus intersection numbers.

The two quantities are proportional: intersection_number = n! * mixed
discriminant, with the constant pinned by the identity tuple (where the
top power of the standard form is n! times the volume element).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .exterior import form_from_matrix, volume_scalar, wedge_many
from .linalg import HermitianMatrix, InternalCheckError, mat_det
from .rationals import GR, ZERO

__all__ = [
    "mixed_discriminant",
    "intersection_number",
    "panov_positivity",
    "reverse_kt_check",
    "PositivityCertificate",
    "subsets_size_lex",
]


def _check_tuple(mats):
    mats = list(mats)
    if not mats:
        raise ValueError("empty matrix tuple")
    n = mats[0].n
    if any(m.n != n for m in mats):
        raise ValueError("matrices have mismatched dimensions")
    if len(mats) != n:
        raise ValueError(f"need exactly n={n} matrices, got {len(mats)}")
    return mats, n


def subset_sums(mats):
    """Sum over every bitmask of the tuple, built incrementally."""
    n = len(mats)
    sums = {0: HermitianMatrix.zero(mats[0].n)}
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + mats[low.bit_length() - 1]
    return sums


def mixed_discriminant(mats):
    """D(A_1,...,A_n) by inclusion-exclusion over subset determinants."""
    mats, n = _check_tuple(mats)
    sums = subset_sums(mats)
    total = ZERO
    for mask, s in sums.items():
        d = mat_det(s.rows)
        if (n - bin(mask).count("1")) % 2:
            total = total - d
        else:
            total = total + d
    value = total / GR(factorial(n))
    if value.im:
        raise InternalCheckError("mixed discriminant has nonzero imaginary part")
    return value.re


def intersection_number(mats):
    """The torus intersection number alpha_1 ... alpha_n = n! * D."""
    mats, n = _check_tuple(mats)
    top = wedge_many([form_from_matrix(a) for a in mats], n)
    value = volume_scalar(top)
    if value.im:
        raise InternalCheckError("intersection number has nonzero imaginary part")
    return value.re


def subsets_size_lex(m):
    """Nonempty subsets of [m] (1-based), smallest size first, then lexicographic."""
    from itertools import combinations

    for size in range(1, m + 1):
        yield from combinations(range(1, m + 1), size)


@dataclass(frozen=True)
class PositivityCertificate:
    """Verdict for D(A_1,...,A_n) > 0 with a failing subset on the zero case."""

    positive: bool
    failing_subset: tuple | None = None
    rank_deficit: int | None = None


def panov_positivity(mats) -> PositivityCertificate:
    """D > 0 iff every subset sum A_I has rank at least |I| (PSD input).

    On failure returns the first failing subset in size-then-lex order;
    on success the mixed discriminant is cross-checked to be positive.
    """
    mats, n = _check_tuple(mats)
    for a in mats:
        if not a.is_psd():
            raise ValueError("panov_positivity requires PSD matrices")
    sums = subset_sums(mats)
    for subset in subsets_size_lex(n):
        mask = sum(1 << (i - 1) for i in subset)
        r = sums[mask].rank()
        if r < len(subset):
            if mixed_discriminant(mats) != 0:
                raise InternalCheckError("rank criterion failed but D != 0")
            return PositivityCertificate(False, subset, len(subset) - r)
    d = mixed_discriminant(mats)
    if d <= 0:
        raise InternalCheckError("rank criterion held but D <= 0")
    return PositivityCertificate(True)


def reverse_kt_check(a_mats, b_mat, c_mats) -> bool:
    """The reverse Khovanskii-Teissier inequality as an exact theorem-test.

    With k = len(a_mats) and n = k + len(c_mats):
    (n!/(k!(n-k)!)) (A_1...A_k B^{n-k}) (B^k C_1...C_{n-k})
        >= (B^n)(A_1...A_k C_1...C_{n-k}).
    Returns whether the inequality holds; must be true for PSD input.
    """
    a_mats, c_mats = list(a_mats), list(c_mats)
    k = len(a_mats)
    n = b_mat.n
    if len(c_mats) != n - k:
        raise ValueError("need k + (n-k) factor matrices")
    for m in a_mats + [b_mat] + c_mats:
        if m.n != n:
            raise ValueError("matrices have mismatched dimensions")
        if not m.is_psd():
            raise ValueError("reverse_kt_check requires PSD matrices")
    lhs = (
        GR(comb(n, k))
        * GR(intersection_number(a_mats + [b_mat] * (n - k)))
        * GR(intersection_number([b_mat] * k + c_mats))
    )
    rhs = GR(intersection_number([b_mat] * n)) * GR(intersection_number(a_mats + c_mats))
    return lhs.as_real() >= rhs.as_real()
