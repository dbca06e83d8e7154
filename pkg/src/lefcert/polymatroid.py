"""Polymatroid rank functions from PSD families and lattice-point support sets.

The rank table is fully materialized (2^m entries): exhaustive axiom
checking needs every value anyway, and m stays small at desk scale.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations

from .certify import HLInstance, criterion_hl
from .linalg import HermitianMatrix

__all__ = [
    "RankFunction",
    "AxiomReport",
    "DiscretePolymatroid",
    "rank_from_matrices",
    "check_axioms",
    "enumerate_points",
    "hl_support",
    "multidegree_support",
]


def _all_subsets(m):
    out = [frozenset()]
    for size in range(1, m + 1):
        out.extend(frozenset(c) for c in combinations(range(1, m + 1), size))
    return out


@dataclass(frozen=True)
class RankFunction:
    """A complete integer set-function table on subsets of [m] (1-based)."""

    m: int
    values: dict
    provenance: str = "user-table"

    def __post_init__(self):
        table = {frozenset(k): int(v) for k, v in self.values.items()}
        expected = set(_all_subsets(self.m))
        if set(table) != expected:
            raise ValueError("rank table must contain every subset of [m]")
        if table[frozenset()] != 0:
            raise ValueError("rank of the empty set must be 0")
        if any(v < 0 for v in table.values()):
            raise ValueError("ranks must be nonnegative")
        object.__setattr__(self, "values", table)

    def __call__(self, subset) -> int:
        return self.values[frozenset(subset)]

    def full_rank(self) -> int:
        return self.values[frozenset(range(1, self.m + 1))]


@dataclass(frozen=True)
class AxiomReport:
    submodular: bool
    monotone: bool
    normalized: bool
    loopless: bool
    is_matroid: bool
    violations: tuple = ()

    @property
    def is_polymatroid(self) -> bool:
        return self.submodular and self.monotone and self.normalized


@dataclass(frozen=True)
class DiscretePolymatroid:
    """Lattice points n with n_[m] = r([m]) and n_I <= r(I) for proper I."""

    m: int
    rank: RankFunction
    points: tuple


def rank_from_matrices(mats, offset: int = 0) -> RankFunction:
    """r(I) = rank(A_I) - offset for nonempty I, r(empty) = 0.

    Raises if any shifted rank would be negative: the table would not be
    a valid rank function.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("empty matrix family")
    n = mats[0].n
    for a in mats:
        if a.n != n:
            raise ValueError("matrices have mismatched dimensions")
        if not a.is_psd():
            raise ValueError("rank_from_matrices requires PSD matrices")
    m = len(mats)
    sums = {0: HermitianMatrix.zero(n)}
    values = {frozenset(): 0}
    for mask in range(1, 1 << m):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + mats[low.bit_length() - 1]
        subset = frozenset(i + 1 for i in range(m) if mask >> i & 1)
        r = sums[mask].rank() - offset
        if r < 0:
            raise ValueError(
                f"rank(A_I) - offset is negative for I={tuple(sorted(subset))}"
            )
        values[subset] = r
    return RankFunction(m, values, provenance="matrix-family")


def check_axioms(r: RankFunction) -> AxiomReport:
    """Exhaustive polymatroid axiom check on the full table."""
    subsets = _all_subsets(r.m)
    violations = []
    submodular = True
    for a in subsets:
        for b in subsets:
            if r(a | b) + r(a & b) > r(a) + r(b):
                submodular = False
                violations.append(("submodularity", tuple(sorted(a)), tuple(sorted(b))))
    monotone = True
    for a in subsets:
        for x in range(1, r.m + 1):
            if x not in a and r(a) > r(a | {x}):
                monotone = False
                violations.append(("monotonicity", tuple(sorted(a)), x))
    normalized = r(frozenset()) == 0
    loopless = all(r({i}) >= 1 for i in range(1, r.m + 1))
    is_matroid = (
        submodular and monotone and normalized
        and all(r(a) <= len(a) for a in subsets)
    )
    return AxiomReport(submodular, monotone, normalized, loopless, is_matroid,
                       tuple(violations))


def enumerate_points(r: RankFunction) -> DiscretePolymatroid:
    """All lattice points of the discrete polymatroid, in lexicographic order.

    Depth-first search over coordinates with subset-bound pruning.
    Refuses tables failing the polymatroid axioms, except that a merely
    non-loopless table only triggers a warning.
    """
    report = check_axioms(r)
    if not report.is_polymatroid:
        raise ValueError(f"not a polymatroid rank table: {report.violations[:3]}")
    if not report.loopless:
        warnings.warn("rank table has loops; enumeration proceeds", stacklevel=2)
    m = r.m
    total = r.full_rank()
    full = frozenset(range(1, m + 1))
    points = []
    point = [0] * m

    def constraints_ok(k):
        # subsets of [k] whose maximum is k; the full set uses the sum condition
        prefix = list(range(1, k))
        for size in range(0, k):
            for rest in combinations(prefix, size):
                subset = frozenset(rest) | {k}
                if subset == full:
                    continue
                if sum(point[i - 1] for i in subset) > r(subset):
                    return False
        return True

    def dfs(k, acc):
        if k > m:
            if acc == total:
                points.append(tuple(point))
            return
        remaining = frozenset(range(k + 1, m + 1))
        cap_rest = r(remaining) if remaining else 0
        hi = min(r({k}), total - acc)
        for v in range(hi + 1):
            if acc + v + cap_rest < total:
                continue
            point[k - 1] = v
            if constraints_ok(k):
                dfs(k + 1, acc + v)
        point[k - 1] = 0

    dfs(1, 0)
    return DiscretePolymatroid(m=m, rank=r, points=tuple(points))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def hl_support(mats, n: int):
    """Exponent vectors n with sum m whose power product has HL.

    Computed by running the subset rank criterion per candidate vector
    on the repeated-matrix tuple; cross-checked against the polymatroid
    enumeration of the offset rank table whenever that table is valid
    and has full rank m (Theorem A makes the two agree).
    """
    mats = list(mats)
    m = len(mats)
    if m > n:
        raise ValueError("more factors than the ambient dimension")
    pq = n - m
    p = pq // 2
    q = pq - p
    support = set()
    for vec in _compositions(m, m):
        repeated = []
        for a, count in zip(mats, vec):
            repeated.extend([a] * count)
        inst = HLInstance(n, p, q, tuple(repeated))
        if criterion_hl(inst).holds:
            support.add(vec)

    # independent route: offset rank table + lattice-point inequalities
    try:
        table = rank_from_matrices(mats, offset=n - m)
    except ValueError:
        table = None
    if table is not None and table.full_rank() == m:
        full = frozenset(range(1, m + 1))
        expected = {
            vec
            for vec in _compositions(m, m)
            if all(
                sum(vec[i - 1] for i in subset) <= table(subset)
                for subset in table.values
                if subset and subset != full
            )
        }
        if expected != support:
            from .linalg import InternalCheckError

            raise InternalCheckError("HL support and rank-table inequalities disagree")
        # the shifted table is not always submodular; the polymatroid
        # enumeration only applies when it is
        if check_axioms(table).is_polymatroid:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                enumerated = set(enumerate_points(table).points)
            if enumerated != support:
                from .linalg import InternalCheckError

                raise InternalCheckError("HL support and polymatroid enumeration disagree")
    elif table is not None and support:
        from .linalg import InternalCheckError

        raise InternalCheckError("deficient full rank must give empty HL support")
    return support


def multidegree_support(r: RankFunction, dim_x: int):
    """Exponent vectors with positive multidegree, given the projection ranks.

    The set equals the lattice points of the rank table; exposed under
    this name for the multidegree reading where r(I) plays the role of
    dim pi_I(X).  The defining inequalities are asserted on the output.
    """
    if r.full_rank() != dim_x:
        raise ValueError(f"r([m]) = {r.full_rank()} does not match dim X = {dim_x}")
    poly = enumerate_points(r)
    full = frozenset(range(1, r.m + 1))
    for vec in poly.points:
        if sum(vec) != dim_x:
            raise AssertionError("point violates the total-degree equality")
        for subset in _all_subsets(r.m):
            if subset and subset != full:
                if sum(vec[i - 1] for i in subset) > r(subset):
                    raise AssertionError("point violates a defining inequality")
    return set(poly.points)
