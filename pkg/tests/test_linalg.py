from itertools import combinations

import pytest

from lefcert.linalg import (
    HermitianFormOnSpace,
    HermitianMatrix,
    NotPositiveDefiniteError,
    char_poly_elementary,
    hermitian_signature,
    is_m_positive,
    kernel_basis,
    mat_det,
    mat_mul,
    mat_rank,
)
from lefcert.rationals import GR, I, ONE, ZERO, as_rat

from conftest import random_hermitian, random_psd_family

D = HermitianMatrix.diagonal
Id = HermitianMatrix.identity


def gr_rows(entries):
    return [[x if hasattr(x, "re") else GR(x) for x in row] for row in entries]


# ---- construction ----

def test_non_hermitian_rejected():
    with pytest.raises(ValueError):
        HermitianMatrix([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        HermitianMatrix([[{"re": 0, "im": 1}, 0], [0, 0]])  # imaginary diagonal


def test_float_rejected():
    with pytest.raises(TypeError):
        HermitianMatrix([[0.5]])


# ---- rank ----

def test_rank_examples():
    assert D([1, 1, 0]).rank() == 2
    assert HermitianMatrix.zero(3).rank() == 0
    m = HermitianMatrix([[1, {"re": 0, "im": 1}], [{"re": 0, "im": -1}, 1]])
    assert m.rank() == 1  # eigenvalues {2, 0}


def test_rank_plus_kernel_dimension():
    for seed in range(25):
        m = random_hermitian(seed, 3 + seed % 3)
        assert m.rank() == m.n - len(m.kernel_basis())


# ---- characteristic polynomial ----

def test_charpoly_examples():
    assert D([1, 2, 3]).char_poly_coefficients() == (6, 11, 6)
    assert Id(2).char_poly_coefficients() == (2, 1)
    assert HermitianMatrix([[1, 2], [2, 1]]).char_poly_coefficients() == (2, -3)


def test_charpoly_matches_symmetric_polynomial_oracle():
    # e_k of diag(lambda) equals the elementary symmetric polynomials
    from lefcert.generate import SplitMix64

    for seed in range(20):
        rng = SplitMix64(seed + 1)
        n = 1 + seed % 5
        lam = [rng.integer(-4, 4) for _ in range(n)]
        es = D(lam).char_poly_coefficients()
        for k in range(1, n + 1):
            expected = sum(
                __import__("math").prod(c) for c in combinations(lam, k)
            )
            assert es[k - 1] == expected


def test_charpoly_matches_principal_minor_sums():
    from lefcert.linalg import _principal_minor_sums

    for seed in range(15):
        m = random_hermitian(seed + 100, 2 + seed % 4)
        assert list(char_poly_elementary(m.rows)) == _principal_minor_sums(m.rows)


# ---- PSD and m-positivity ----

def test_is_psd_examples():
    assert D([1, 1, 0]).is_psd()
    assert not HermitianMatrix([[1, 2], [2, 1]]).is_psd()
    assert HermitianMatrix([[1, {"re": 0, "im": 1}], [{"re": 0, "im": -1}, 1]]).is_psd()


def test_psd_exact_m_positivity_structure():
    # for PSD M: e_j > 0 for j <= rank and e_j = 0 beyond
    for seed in range(30):
        (m,) = random_psd_family(seed, 4, 1)
        es = m.char_poly_coefficients()
        r = m.rank()
        assert all(es[j] > 0 for j in range(r))
        assert all(es[j] == 0 for j in range(r, m.n))


def test_generator_soundness():
    # B B* is PSD with rank(B B*) = rank(B)
    from conftest import random_hermitian as _rh
    from lefcert.generate import SplitMix64
    from lefcert.rationals import GaussianRational

    for seed in range(20):
        rng = SplitMix64(seed * 13 + 5)
        n, r = 2 + seed % 4, seed % 3 + 1
        b = [[GaussianRational(rng.integer(-2, 2), rng.integer(-2, 2)) for _ in range(r)]
             for _ in range(n)]
        m = HermitianMatrix.from_generator(b)
        assert m.is_psd()
        assert m.rank() == mat_rank(b)


def test_is_m_positive_examples():
    assert is_m_positive(D([1, 1, 0]), Id(3), 2)
    assert not is_m_positive(D([1, 1, 0]), Id(3), 3)
    assert is_m_positive(D([2, 0, 0]), D([1, 1, 2]), 1)


def test_is_m_positive_requires_pd_omega():
    with pytest.raises(NotPositiveDefiniteError):
        is_m_positive(Id(2), D([1, 0]), 1)


def test_m_positive_equals_rank_bound_for_psd():
    for seed in range(20):
        (m,) = random_psd_family(seed + 50, 4, 1)
        r = m.rank()
        for k in range(1, 5):
            assert is_m_positive(m, Id(4), k) == (r >= k)


def test_m_positive_general_omega_congruence():
    # relative positivity is invariant under scaling omega
    for seed in range(10):
        (m,) = random_psd_family(seed + 80, 3, 1)
        omega = Id(3) + D([1, 2, 3])
        for k in range(1, 4):
            assert is_m_positive(m, omega, k) == (m.rank() >= k)


# ---- kernels ----

def test_kernel_examples():
    assert kernel_basis(gr_rows([[1, 0], [0, 1]])) == []
    assert len(kernel_basis(gr_rows([[0, 0], [0, 0]]))) == 2
    (v,) = kernel_basis(gr_rows([[1, 1], [1, 1]]))
    # proportional to (1, -1)
    assert v[0] * GR(-1) == v[1]


def test_kernel_of_zero_row_matrix():
    assert len(kernel_basis([], ncols=3)) == 3


def test_kernel_vectors_annihilate():
    for seed in range(10):
        m = random_hermitian(seed + 7, 4)
        for v in m.kernel_basis():
            out = mat_mul([list(r) for r in m.rows], [[x] for x in v])
            assert all(not row[0] for row in out)


# ---- signatures ----

def test_signature_examples():
    assert hermitian_signature(Id(3).rows) == (3, 0, 0)
    assert hermitian_signature(D([1, -1, 0]).rows) == (1, 1, 1)


def test_signature_det_polarization_gram():
    # D(A,B) on Herm_2 in basis {E11, E22, E12+E21, i(E12-E21)} is Minkowski
    from lefcert.certify import hermitian_real_basis
    from lefcert.discriminant import mixed_discriminant

    basis = hermitian_real_basis(2)
    gram = [[GR(2 * mixed_discriminant([a, b])) for b in basis] for a in basis]
    assert hermitian_signature(gram) == (1, 3, 0)


def _descartes_signature(m):
    """Independent oracle: sign changes of the real characteristic polynomial."""
    es = m.char_poly_coefficients()
    n = m.n
    # p(t) = t^n - e1 t^{n-1} + ... + (-1)^n en; positive roots by Descartes
    coeffs = [as_rat(1)] + [(-1) ** k * es[k - 1] for k in range(1, n + 1)]
    zeros = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zeros += 1
    def variations(cs):
        signs = [1 if c > 0 else -1 for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    pos = variations(coeffs)
    neg = variations([c * (-1) ** i for i, c in enumerate(coeffs)])
    return (pos, neg, zeros)


def test_signature_against_descartes_oracle():
    for seed in range(40):
        m = random_hermitian(seed + 300, 2 + seed % 4)
        assert hermitian_signature(m.rows) == _descartes_signature(m)


def test_signature_hyperbolic_block():
    # zero diagonal, nonzero coupling: forced through the 2x2 hyperbolic step
    g = gr_rows([[0, 1], [1, 0]])
    assert hermitian_signature(g) == (1, 1, 0)
    g = [[ZERO, I], [-I, ZERO]]
    assert hermitian_signature(g) == (1, 1, 0)
    g4 = gr_rows([[0, 0, 1, 0], [0, 0, 0, 2], [1, 0, 0, 0], [0, 2, 0, 0]])
    assert hermitian_signature(g4) == (2, 2, 0)


def test_signature_congruence_invariance():
    from lefcert.generate import SplitMix64
    from lefcert.rationals import GaussianRational

    for seed in range(15):
        n = 3
        m = random_hermitian(seed + 900, n)
        rng = SplitMix64(seed + 41)
        while True:
            t = [[GaussianRational(rng.integer(-2, 2), rng.integer(-2, 2))
                  for _ in range(n)] for _ in range(n)]
            if mat_det(t):
                break
        tstar = [[t[j][i].conjugate() for j in range(n)] for i in range(n)]
        g2 = mat_mul(mat_mul(tstar, [list(r) for r in m.rows]), t)
        assert hermitian_signature(g2) == hermitian_signature(m.rows)


# ---- forms on spaces ----

def test_definiteness_on_subspace():
    form = HermitianFormOnSpace(Id(3).rows)
    assert form.is_positive_definite_on([[ONE, ZERO, ZERO], [ZERO, ONE, ONE]])
    lorentz = HermitianFormOnSpace(D([1, -1]).rows)
    assert not lorentz.is_positive_definite_on([[ZERO, ONE]])
    assert not lorentz.is_positive_definite_on([[ONE, ONE]])  # isotropic vector
    with pytest.raises(ValueError):
        lorentz.is_positive_definite_on([[ONE, ZERO], [ONE, ZERO]])
