"""Constant-coefficient (p,q)-forms on C^n and their wedge algebra.

Basis convention: dz_{i1} ^ ... ^ dz_{ip} ^ dzbar_{j1} ^ ... ^ dzbar_{jq}
with both index tuples strictly increasing (1-based), bases ordered
lexicographically by (I, J).  Every sign in the library reduces to
inversion counting against this single convention.

The canonical positive volume element is
vol = (i dz_1 ^ dzbar_1) ^ ... ^ (i dz_n ^ dzbar_n), so positivity of an
(n,n)-form is the sign of one rational number.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .linalg import HermitianMatrix, InternalCheckError
from .rationals import GR, I, ONE, ZERO, GaussianRational

__all__ = [
    "PQForm",
    "basis_indices",
    "form_from_matrix",
    "wedge",
    "wedge_many",
    "volume_scalar",
    "conjugate_form",
    "multiplication_matrix",
    "wedge_operator_matrix",
    "is_real_form",
]


def _check_multi_index(idx, n):
    t = tuple(int(i) for i in idx)
    if any(not 1 <= i <= n for i in t) or any(a >= b for a, b in zip(t, t[1:])):
        raise ValueError(f"multi-index {t} must be strictly increasing within [1,{n}]")
    return t


def _merge_sign(a, b):
    """Merge two disjoint increasing tuples; (sign, merged) or (0, None) on overlap."""
    inv = 0
    out = []
    ia = ib = 0
    la, lb = len(a), len(b)
    while ia < la and ib < lb:
        if a[ia] == b[ib]:
            return 0, None
        if a[ia] < b[ib]:
            out.append(a[ia])
            ia += 1
        else:
            # b[ib] jumps over the remaining entries of a
            inv += la - ia
            out.append(b[ib])
            ib += 1
    out.extend(a[ia:])
    out.extend(b[ib:])
    return (-1 if inv % 2 else 1), tuple(out)


@lru_cache(maxsize=None)
def basis_indices(n, p, q):
    """The lexicographically ordered basis (I, J) pairs of Lambda^{p,q}(C^n)."""
    return tuple(
        (i, j)
        for i in combinations(range(1, n + 1), p)
        for j in combinations(range(1, n + 1), q)
    )


class PQForm:
    """Sparse element of Lambda^{p,q}(C^n); absent keys are zero."""

    __slots__ = ("n", "p", "q", "coeffs")

    def __init__(self, n, p, q, coeffs=None):
        if not (0 <= p <= n and 0 <= q <= n):
            raise ValueError(f"bidegree ({p},{q}) out of range for n={n}")
        clean = {}
        for (i, j), c in (coeffs or {}).items():
            i = _check_multi_index(i, n)
            j = _check_multi_index(j, n)
            if len(i) != p or len(j) != q:
                raise ValueError(f"index pair {(i, j)} has wrong degree for ({p},{q})")
            c = c if isinstance(c, GaussianRational) else GR(c)
            if c:
                clean[(i, j)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PQForm is immutable")

    @classmethod
    def zero(cls, n, p, q):
        return cls(n, p, q)

    @classmethod
    def scalar(cls, n, value):
        return cls(n, 0, 0, {((), ()): GR(value)})

    @classmethod
    def basis_element(cls, n, i, j, coeff=ONE):
        return cls(n, len(tuple(i)), len(tuple(j)), {(tuple(i), tuple(j)): coeff})

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, i, j):
        return self.coeffs.get((tuple(i), tuple(j)), ZERO)

    def space_dimension(self):
        from math import comb

        return comb(self.n, self.p) * comb(self.n, self.q)

    def __add__(self, other):
        self._compat(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return PQForm(self.n, self.p, self.q, out)

    def __sub__(self, other):
        return self + other.scale(GR(-1))

    def scale(self, c):
        c = c if isinstance(c, GaussianRational) else GR(c)
        if not c:
            return PQForm(self.n, self.p, self.q)
        return PQForm(self.n, self.p, self.q, {k: v * c for k, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(GR(-1))

    def __eq__(self, other):
        return (
            isinstance(other, PQForm)
            and (self.n, self.p, self.q) == (other.n, other.p, other.q)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.p, self.q, frozenset(self.coeffs.items())))

    def _compat(self, other):
        if not isinstance(other, PQForm):
            raise TypeError("expected a PQForm")
        if (self.n, self.p, self.q) != (other.n, other.p, other.q):
            raise ValueError("forms live in different spaces")

    def coefficient_vector(self):
        """Coefficients in the canonical ordered basis of Lambda^{p,q}."""
        return [self.coeffs.get(k, ZERO) for k in basis_indices(self.n, self.p, self.q)]

    @classmethod
    def from_coefficient_vector(cls, n, p, q, vec):
        keys = basis_indices(n, p, q)
        if len(vec) != len(keys):
            raise ValueError("coefficient vector has wrong length")
        return cls(n, p, q, {k: c for k, c in zip(keys, vec) if c})

    def __repr__(self):
        return f"PQForm(n={self.n}, p={self.p}, q={self.q}, terms={len(self.coeffs)})"


def form_from_matrix(a: HermitianMatrix) -> PQForm:
    """The real (1,1)-form i * sum a_jk dz_j ^ dzbar_k of a Hermitian matrix."""
    n = a.n
    coeffs = {}
    for j in range(n):
        for k in range(n):
            c = a.rows[j][k]
            if c:
                coeffs[((j + 1,), (k + 1,))] = I * c
    return PQForm(n, 1, 1, coeffs)


def wedge(phi: PQForm, psi: PQForm) -> PQForm:
    """Exact wedge product; degrees beyond n give the zero form (clamped degree)."""
    if phi.n != psi.n:
        raise ValueError("forms live on different ambient spaces")
    n = phi.n
    p, q = phi.p + psi.p, phi.q + psi.q
    if p > n or q > n:
        return PQForm(n, min(p, n), min(q, n))
    # moving dzbar_{J1} (q1 factors) past dz_{I2} (p2 factors)
    block = -1 if (psi.p * phi.q) % 2 else 1
    out = {}
    for (i1, j1), c1 in phi.coeffs.items():
        for (i2, j2), c2 in psi.coeffs.items():
            si, mi = _merge_sign(i1, i2)
            if not si:
                continue
            sj, mj = _merge_sign(j1, j2)
            if not sj:
                continue
            c = c1 * c2
            if (si * sj * block) < 0:
                c = -c
            key = (mi, mj)
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return PQForm(n, p, q, out)


def wedge_many(forms, n=None) -> PQForm:
    """Left fold of wedge; the empty product is the scalar 1 in Lambda^{0,0}."""
    forms = list(forms)
    if not forms:
        if n is None:
            raise ValueError("ambient dimension required for an empty product")
        return PQForm.scalar(n, ONE)
    acc = forms[0]
    for f in forms[1:]:
        acc = wedge(acc, f)
    return acc


@lru_cache(maxsize=None)
def _volume_coefficient(n) -> GaussianRational:
    vol = wedge_many(
        [PQForm(n, 1, 1, {((k,), (k,)): I}) for k in range(1, n + 1)], n
    )
    full = tuple(range(1, n + 1))
    if len(vol.coeffs) != 1:
        raise InternalCheckError("volume element is not a single basis term")
    return vol.coeffs[(full, full)]


def volume_scalar(phi: PQForm) -> GaussianRational:
    """The scalar lambda with phi = lambda * vol, for an (n,n)-form."""
    n = phi.n
    if phi.p != n or phi.q != n:
        raise ValueError(f"volume_scalar needs an (n,n)-form, got ({phi.p},{phi.q})")
    full = tuple(range(1, n + 1))
    if any(k != (full, full) for k in phi.coeffs):
        raise InternalCheckError("(n,n)-form carries a non-top basis term")
    return phi.coeffs.get((full, full), ZERO) / _volume_coefficient(n)


def conjugate_form(phi: PQForm) -> PQForm:
    """Complex conjugation, swapping bidegree (p,q) -> (q,p).

    conj(dz_I ^ dzbar_J) = dzbar_I ^ dz_J; reordering the q-block of
    unbarred factors past the p-block of barred ones costs p*q adjacent
    transpositions, hence the sign below.
    """
    inversions = phi.p * phi.q
    sign = -1 if inversions % 2 else 1
    out = {}
    for (i, j), c in phi.coeffs.items():
        cc = c.conjugate()
        out[(j, i)] = -cc if sign < 0 else cc
    return PQForm(phi.n, phi.q, phi.p, out)


def is_real_form(phi: PQForm) -> bool:
    """A (p,p)-form is real iff it equals its own conjugate."""
    if phi.p != phi.q:
        return False
    return conjugate_form(phi) == phi


def wedge_operator_matrix(omega: PQForm, p: int, q: int):
    """Matrix of Phi -> omega ^ Phi from Lambda^{p,q} in canonical bases.

    Returns (rows, ncols).  If the target degree overflows n the map is
    zero and the row list is empty.
    """
    n = omega.n
    src = basis_indices(n, p, q)
    tp, tq = p + omega.p, q + omega.q
    if tp > n or tq > n:
        return [], len(src)
    tgt = basis_indices(n, tp, tq)
    tgt_pos = {k: a for a, k in enumerate(tgt)}
    rows = [[ZERO] * len(src) for _ in tgt]
    for col, (i, j) in enumerate(src):
        image = wedge(omega, PQForm.basis_element(n, i, j))
        for k, c in image.coeffs.items():
            rows[tgt_pos[k]][col] = c
    return rows, len(src)


def multiplication_matrix(omega: PQForm, p: int, q: int):
    """Square matrix of the Lefschetz-type map Lambda^{p,q} -> Lambda^{n-q,n-p}."""
    n = omega.n
    k = n - p - q
    if omega.p != k or omega.q != k:
        raise ValueError(
            f"degree mismatch: omega has bidegree ({omega.p},{omega.q}), expected ({k},{k})"
        )
    rows, ncols = wedge_operator_matrix(omega, p, q)
    if len(rows) != ncols:
        raise InternalCheckError("multiplication matrix is not square")
    return rows
