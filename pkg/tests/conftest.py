import pytest

from lefcert import GeneratorSpec, HermitianMatrix, generate_psd
from lefcert.generate import SplitMix64

_acceptance_lines = []


def record_acceptance(line):
    """Collect per-criterion verdict lines; emitted in the terminal summary."""
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.line(line)


@pytest.fixture
def diag():
    return HermitianMatrix.diagonal


def random_psd_family(seed, n, count, max_rank=None, entry_bound=2):
    """Seeded family of PSD matrices with pseudo-random rank profile."""
    rng = SplitMix64(seed * 0x9E3779B9 + 1)
    hi = n if max_rank is None else max_rank
    profile = tuple(rng.integer(0, hi) for _ in range(count))
    return generate_psd(
        GeneratorSpec(seed=seed, n=n, rank_profile=profile, entry_bound=entry_bound)
    )


def random_hermitian(seed, n, bound=3):
    """Seeded dense Hermitian matrix (not necessarily PSD)."""
    from lefcert.rationals import GaussianRational

    rng = SplitMix64(seed * 0xC0FFEE + 7)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussianRational(rng.integer(-bound, bound))
        for j in range(i + 1, n):
            c = GaussianRational(rng.integer(-bound, bound), rng.integer(-bound, bound))
            rows[i][j] = c
            rows[j][i] = c.conjugate()
    return HermitianMatrix(rows)
