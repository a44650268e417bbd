"""Degree-1 resonance of the Orlik-Solomon algebra, in exact arithmetic.

For an arrangement with rank-2 lattice data on n hyperplanes, the degree-2
part of the Orlik-Solomon algebra is the quotient of the wedge square of
Z^n by one three-term relation per dependent triple.  A weight vector
lambda defines a degree-1 element; the first resonance variety collects
the weight vectors whose multiplication map has extra kernel.

Everything is phrased through two matrices over the rationals:

* the flat wedge rows, one row per (rank-2 flat X, hyperplane i in X other
  than its minimum), recording the wedge of e_i with the sum of the basis
  vectors of X, and
* the linearized boundary, the alternating-sign incidence matrix of
  k-subsets against (k-1)-subsets weighted by lambda.

The rank of the two blocks stacked decides membership, and an independent
route through the no-broken-circuit basis and its projection cross-checks
it.  A sampler object preprocesses the lattice block once so that many
weight vectors can be tested quickly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arrangement import Lattice2, ValidationError
from .exactalg import ExactMatrix, IntEchelon, rational_rref

# ---------------------------------------------------------------------------
# index helpers
# ---------------------------------------------------------------------------


def pair_list(n: int) -> list[tuple[int, int]]:
    """All 2-subsets of range(n) in lexicographic order."""
    return list(itertools.combinations(range(n), 2))


def triple_list(n: int) -> list[tuple[int, int, int]]:
    """All 3-subsets of range(n) in lexicographic order."""
    return list(itertools.combinations(range(n), 3))


def _as_fracs(lam: Sequence) -> list[Fraction]:
    return [Fraction(v) for v in lam]


def _as_ints(lam: Sequence) -> list[int]:
    fracs = _as_fracs(lam)
    denom = 1
    for v in fracs:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    return [int(v * denom) for v in fracs]


# ---------------------------------------------------------------------------
# no-broken-circuit basis and projection
# ---------------------------------------------------------------------------


@dataclass
class NbcBasis:
    """The degree-2 no-broken-circuit basis and the projection onto it.

    `pairs[r]` is the r-th basis pair (both indices 0-based).  `projection`
    has one row per basis pair and one column per 2-subset of hyperplanes
    (lexicographic); column c holds the coordinates of the image of the
    wedge basis vector e_c.  Parallel pairs project to zero.
    """

    n: int
    pairs: list[tuple[int, int]]
    projection: list[list[int]]

    @property
    def dimension(self) -> int:
        return len(self.pairs)

    def projection_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_rational_rows(
            self.projection, ncols=len(pair_list(self.n))
        )


def nbc_basis(lat: Lattice2) -> NbcBasis:
    """Basis pairs (min of the flat, other element) and the projection map.

    A pair {i, j} with i < j is a basis pair exactly when i is the minimal
    element of the rank-2 flat containing the pair.  A non-basis pair
    {j, k} inside a flat with minimum m rewrites as e_{mk} - e_{mj}; a
    parallel pair maps to zero.
    """
    n = lat.n
    pairs = pair_list(n)
    basis_pairs: list[tuple[int, int]] = []
    basis_pos: dict[tuple[int, int], int] = {}
    for cls in lat.rank2_classes():
        m = cls[0]
        for i in cls[1:]:
            basis_pos[(m, i)] = len(basis_pairs)
            basis_pairs.append((m, i))
    rows = [[0] * len(pairs) for _ in basis_pairs]
    for c, (j, k) in enumerate(pairs):
        cls = lat.flat_of_pair(j, k)
        if cls is None:
            continue  # parallel pair, projects to zero
        m = cls[0]
        if j == m:
            rows[basis_pos[(j, k)]][c] += 1
        else:
            rows[basis_pos[(m, k)]][c] += 1
            rows[basis_pos[(m, j)]][c] -= 1
    return NbcBasis(n=n, pairs=basis_pairs, projection=rows)


def flat_wedge_rows(lat: Lattice2) -> list[list[int]]:
    """One integer row per (rank-2 flat X, element i of X past its minimum).

    The row holds the coordinates of the wedge of e_i with the sum of e_j
    over j in X, in the lexicographic pair basis.  The stack has full row
    rank equal to the second Betti number of the complement.
    """
    n = lat.n
    pairs = pair_list(n)
    pair_pos = {p: c for c, p in enumerate(pairs)}
    rows = []
    for cls in lat.rank2_classes():
        for i in cls[1:]:
            row = [0] * len(pairs)
            for j in cls:
                if j == i:
                    continue
                if j < i:
                    row[pair_pos[(j, i)]] -= 1
                else:
                    row[pair_pos[(i, j)]] += 1
            rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# linearized boundary matrices
# ---------------------------------------------------------------------------


def linearized_differential(k: int, n: int, lam: Sequence) -> list[list[Fraction]]:
    """The weighted incidence matrix of k-subsets against (k-1)-subsets.

    Row J (a k-subset, lexicographic) has entry (-1)^(r+1) lambda_{j_r} in
    the column J minus its r-th smallest element.  Supported for k = 2
    and k = 3, the degrees the resonance test needs.
    """
    if k not in (2, 3):
        raise ValidationError("linearized differential supported for k in {2, 3}")
    lam = _as_fracs(lam)
    if len(lam) != n:
        raise ValidationError("weight vector length must equal n")
    cols = list(itertools.combinations(range(n), k - 1))
    col_pos = {c: idx for idx, c in enumerate(cols)}
    rows = []
    for subset in itertools.combinations(range(n), k):
        row = [Fraction(0)] * len(cols)
        for r, element in enumerate(subset):
            rest = tuple(x for x in subset if x != element)
            sign = 1 if r % 2 == 0 else -1
            row[col_pos[rest]] += sign * lam[element]
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# resonance membership: the direct route
# ---------------------------------------------------------------------------


def resonance_rank(lat: Lattice2, lam: Sequence) -> int:
    """Rank of the flat wedge rows stacked over the degree-3 linearized
    boundary at the given weights."""
    n = lat.n
    ints = _as_ints(lam)
    if len(ints) != n:
        raise ValidationError("weight vector length must equal n")
    rows = [list(r) for r in flat_wedge_rows(lat)]
    pairs = pair_list(n)
    pair_pos = {p: c for c, p in enumerate(pairs)}
    for a, b, c in triple_list(n):
        row = [0] * len(pairs)
        row[pair_pos[(b, c)]] += ints[a]
        row[pair_pos[(a, c)]] -= ints[b]
        row[pair_pos[(a, b)]] += ints[c]
        if any(row):
            rows.append(row)
    return ExactMatrix.from_rational_rows(rows, ncols=len(pairs)).rank()


def in_resonance(lat: Lattice2, lam: Sequence, k: int = 1) -> bool:
    """Depth-k resonance membership of a weight vector."""
    if k < 1:
        raise ValidationError("resonance depth must be at least 1")
    n = lat.n
    npairs = n * (n - 1) // 2
    return resonance_rank(lat, lam) <= npairs - k


def h1_dim(lat: Lattice2, lam: Sequence) -> int:
    """Dimension of the degree-1 cohomology of the weighted complex.

    The weight vector must be nonzero.  Computed from the multiplication
    map into the no-broken-circuit quotient, an independent route from
    resonance_rank; the two are linked by the identity
    h1 = (number of pairs) - resonance_rank.
    """
    lam_f = _as_fracs(lam)
    n = lat.n
    if len(lam_f) != n:
        raise ValidationError("weight vector length must equal n")
    if all(v == 0 for v in lam_f):
        raise ValidationError("weight vector must be nonzero")
    basis = nbc_basis(lat)
    pairs = pair_list(n)
    pair_pos = {p: c for c, p in enumerate(pairs)}
    # wedge of the weight covector with each e_i, then project
    mu_rows = []
    for i in range(n):
        wedge = [Fraction(0)] * len(pairs)
        for j in range(n):
            if j == i or lam_f[j] == 0:
                continue
            if j < i:
                wedge[pair_pos[(j, i)]] += lam_f[j]
            else:
                wedge[pair_pos[(i, j)]] -= lam_f[j]
        mu_rows.append(
            [
                sum(wedge[c] * coeff for c, coeff in _row_support(prow))
                for prow in basis.projection
            ]
        )
    rank_mu = ExactMatrix.from_rational_rows(
        mu_rows, ncols=basis.dimension
    ).rank() if basis.dimension else 0
    return (n - rank_mu) - 1


def _row_support(row: Sequence[int]) -> list[tuple[int, int]]:
    return [(c, v) for c, v in enumerate(row) if v]


# ---------------------------------------------------------------------------
# resonance membership: the basis-projection route
# ---------------------------------------------------------------------------


def resonance_rank_os(lat: Lattice2, lam: Sequence) -> int:
    """Rank of the combined projection-and-wedge map out of the pair space.

    Each 2-subset maps to its projection onto the no-broken-circuit basis
    together with the wedge of the weight covector against it.  This
    rebuilds the resonance rank from the algebra side and serves as a
    cross-check of the flat-row route.
    """
    n = lat.n
    lam_f = _as_fracs(lam)
    if len(lam_f) != n:
        raise ValidationError("weight vector length must equal n")
    basis = nbc_basis(lat)
    pairs = pair_list(n)
    triples = triple_list(n)
    triple_pos = {t: idx for idx, t in enumerate(triples)}
    rows = []
    for c, (a, b) in enumerate(pairs):
        row = [Fraction(p_row[c]) for p_row in basis.projection]
        wedge = [Fraction(0)] * len(triples)
        for j in range(n):
            if j == a or j == b or lam_f[j] == 0:
                continue
            tri = tuple(sorted((j, a, b)))
            position = tri.index(j)
            sign = 1 if position % 2 == 0 else -1
            wedge[triple_pos[tri]] += sign * lam_f[j]
        rows.append(row + wedge)
    return ExactMatrix.from_rational_rows(
        rows, ncols=basis.dimension + len(triples)
    ).rank()


# ---------------------------------------------------------------------------
# fast repeated sampling
# ---------------------------------------------------------------------------


class ResonanceSampler:
    """Preprocessed resonance testing for many weight vectors on one lattice.

    The flat wedge block is fixed; its row space is echelonized once and
    every pair coordinate is replaced by its residual in the quotient.
    Testing a weight vector then reduces one short integer row per triple
    of hyperplanes inside a space of dimension (pairs - flat rank).
    """

    def __init__(self, lat: Lattice2):
        self.lat = lat
        n = lat.n
        self.n = n
        pairs = pair_list(n)
        self.npairs = len(pairs)
        pair_pos = {p: c for c, p in enumerate(pairs)}
        base = [[Fraction(v) for v in row] for row in flat_wedge_rows(lat)]
        pivots, rref = rational_rref(base, self.npairs)
        self.base_rank = len(pivots)
        free_cols = [c for c in range(self.npairs) if c not in set(pivots)]
        self.quotient_dim = len(free_cols)
        free_pos = {c: idx for idx, c in enumerate(free_cols)}
        residuals: list[list[Fraction]] = []
        pivot_of = {col: r for r, col in enumerate(pivots)}
        for c in range(self.npairs):
            if c in pivot_of:
                row = rref[pivot_of[c]]
                residuals.append([-row[fc] for fc in free_cols])
            else:
                vec = [Fraction(0)] * self.quotient_dim
                vec[free_pos[c]] = Fraction(1)
                residuals.append(vec)
        denom = 1
        for vec in residuals:
            for v in vec:
                denom = denom * v.denominator // math.gcd(denom, v.denominator)
        self._residuals = [[int(v * denom) for v in vec] for vec in residuals]
        self._triple_data = [
            (a, b, c, pair_pos[(b, c)], pair_pos[(a, c)], pair_pos[(a, b)])
            for a, b, c in triple_list(n)
        ]

    def rank_at(self, lam: Sequence) -> int:
        ints = _as_ints(lam)
        if len(ints) != self.n:
            raise ValidationError("weight vector length must equal n")
        q = self.quotient_dim
        if q == 0:
            return self.base_rank
        ech = IntEchelon(q)
        res = self._residuals
        for a, b, c, cbc, cac, cab in self._triple_data:
            la, lb, lc = ints[a], -ints[b], ints[c]
            if not (la or lb or lc):
                continue
            ra, rb, rc = res[cbc], res[cac], res[cab]
            row = [la * x + lb * y + lc * z for x, y, z in zip(ra, rb, rc)]
            if any(row):
                ech.add_row(row)
                if ech.rank == q:
                    break
        return self.base_rank + ech.rank

    def h1_at(self, lam: Sequence) -> int:
        return self.npairs - self.rank_at(lam)

    def in_resonance_at(self, lam: Sequence, k: int = 1) -> bool:
        if k < 1:
            raise ValidationError("resonance depth must be at least 1")
        return self.rank_at(lam) <= self.npairs - k
