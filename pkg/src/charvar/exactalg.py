"""Exact scalar arithmetic and linear algebra for arrangement invariants.

Scalars live in cyclotomic extensions of the rationals: every value is
either a rational number or an element of Q(zeta_m) written on the power
basis 1, zeta, ..., zeta^(phi(m)-1) modulo the m-th cyclotomic polynomial.
Matrices over these scalars support exact rank and nullspace computation.
Laurent polynomials in several variables (with integer exponents of either
sign) model the group-ring entries of monodromy and boundary matrices; they
evaluate to scalars at points whose coordinates are roots of unity times
rationals.

Everything here is deterministic and division-free where possible, so the
same inputs always produce the same pivots, ranks, and basis vectors.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# cyclotomic polynomials and polynomial helpers (dense Fraction coefficient
# lists, lowest degree first)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low to high."""
    assert m >= 1, "order must be positive"
    if m == 1:
        return (-1, 1)
    # divide x^m - 1 by the cyclotomic polynomials of the proper divisors
    num = [Fraction(0)] * (m + 1)
    num[0] = Fraction(-1)
    num[m] = Fraction(1)
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert all(c == 0 for c in rem)
    coeffs = tuple(int(c) for c in num)
    assert all(Fraction(c) == num[i] for i, c in enumerate(coeffs))
    return coeffs


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(
    num: Sequence[Fraction], den: Sequence[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    num = _poly_trim(list(num))
    den = _poly_trim(list(den))
    assert den, "division by the zero polynomial"
    quot = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    rem = num
    dlead = den[-1]
    while len(rem) >= len(den):
        shift = len(rem) - len(den)
        factor = rem[-1] / dlead
        quot[shift] = factor
        for i, c in enumerate(den):
            rem[shift + i] -= factor * c
        _poly_trim(rem)
    return quot, rem


def _poly_mod_inverse(a: Sequence[Fraction], f: Sequence[Fraction]) -> list[Fraction]:
    """Inverse of a modulo f via the extended Euclidean algorithm."""
    # invariants: r0 = s0*a mod f, r1 = s1*a mod f (the f-cofactors are not kept)
    r0, r1 = _poly_trim(list(f)), _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    assert len(r0) == 1, "element is not invertible modulo an irreducible polynomial"
    inv_lead = 1 / r0[0]
    return [c * inv_lead for c in s0]


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _poly_trim(out)


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


@lru_cache(maxsize=None)
def _euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------


class ExactScalar:
    """An exact number: rational, or a power-basis element of Q(zeta_m).

    The representation is a pair (order, coeffs) where coeffs has length
    phi(order) and coeffs[i] multiplies zeta_order^i.  Rational values are
    normalized to order 1.  Mixed-order arithmetic promotes both operands
    to the least common multiple of their orders.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[Fraction]):
        order, coeffs = _normalize(order, coeffs)
        self.order = order
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, value: int | Fraction) -> "ExactScalar":
        return cls(1, (Fraction(value),))

    @classmethod
    def zero(cls) -> "ExactScalar":
        return cls.from_rational(0)

    @classmethod
    def one(cls) -> "ExactScalar":
        return cls.from_rational(1)

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> "ExactScalar":
        """The primitive m-th root of unity raised to the power k."""
        assert m >= 1, "order must be positive"
        k %= m
        raw = [Fraction(0)] * (k + 1)
        raw[k] = Fraction(1)
        return cls(m, _reduce_mod_cyclotomic(m, raw))

    # -- predicates and conversions ----------------------------------------

    def is_zero(self) -> bool:
        return self.order == 1 and self.coeffs[0] == 0

    def is_one(self) -> bool:
        return self.order == 1 and self.coeffs[0] == 1

    def is_rational(self) -> bool:
        return self.order == 1

    def as_rational(self) -> Fraction:
        assert self.order == 1, "scalar is not rational"
        return self.coeffs[0]

    def support_size(self) -> int:
        return sum(1 for c in self.coeffs if c)

    # -- arithmetic ----------------------------------------------------------

    def _promoted(self, order: int) -> list[Fraction]:
        """Coefficients of self rewritten on the power basis of Q(zeta_order)."""
        if self.order == order:
            return list(self.coeffs)
        step = order // self.order
        raw = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            raw[i * step] += c
        return _reduce_mod_cyclotomic(order, raw)

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        other = _coerce(other)
        m = _lcm(self.order, other.order)
        a, b = self._promoted(m), other._promoted(m)
        return ExactScalar(m, [x + y for x, y in zip(a, b)])

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        other = _coerce(other)
        m = _lcm(self.order, other.order)
        a, b = self._promoted(m), other._promoted(m)
        return ExactScalar(m, [x - y for x, y in zip(a, b)])

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(self.order, [-c for c in self.coeffs])

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        other = _coerce(other)
        if self.order == 1 and other.order == 1:
            return ExactScalar(1, (self.coeffs[0] * other.coeffs[0],))
        m = _lcm(self.order, other.order)
        prod = _poly_mul(self._promoted(m), other._promoted(m))
        return ExactScalar(m, _reduce_mod_cyclotomic(m, prod))

    def inverse(self) -> "ExactScalar":
        assert not self.is_zero(), "zero has no inverse"
        if self.order == 1:
            return ExactScalar(1, (1 / self.coeffs[0],))
        f = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        inv = _poly_mod_inverse(list(self.coeffs), f)
        return ExactScalar(self.order, _reduce_mod_cyclotomic(self.order, inv))

    def __truediv__(self, other: "ExactScalar") -> "ExactScalar":
        return self * _coerce(other).inverse()

    def __pow__(self, exponent: int) -> "ExactScalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ExactScalar.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.from_rational(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        m = _lcm(self.order, other.order)
        return self._promoted(m) == other._promoted(m)

    def __repr__(self) -> str:
        if self.order == 1:
            return str(self.coeffs[0])
        sym = f"z{self.order}"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = sym if i == 1 else f"{sym}^{i}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    # -- serialization -------------------------------------------------------

    def to_json(self):
        if self.order == 1:
            return str(self.coeffs[0])
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "ExactScalar":
        if isinstance(obj, bool):
            raise ValueError("boolean is not a scalar")
        if isinstance(obj, int):
            return cls.from_rational(obj)
        if isinstance(obj, str):
            return cls.from_rational(Fraction(obj))
        if isinstance(obj, dict):
            order = obj["order"]
            coeffs = [Fraction(c) for c in obj["coeffs"]]
            if not isinstance(order, int) or order < 1:
                raise ValueError("scalar order must be a positive integer")
            if len(coeffs) != _euler_phi(order):
                raise ValueError("coefficient list length must equal phi(order)")
            return cls(order, coeffs)
        raise ValueError(f"cannot parse scalar from {obj!r}")


def _coerce(value) -> ExactScalar:
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar.from_rational(value)
    raise TypeError(f"cannot treat {value!r} as a scalar")


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _reduce_mod_cyclotomic(m: int, raw: Sequence[Fraction]) -> list[Fraction]:
    """Reduce a coefficient list to the power basis of Q(zeta_m)."""
    phi = _euler_phi(m)
    coeffs = [Fraction(0)] * max(len(raw), phi)
    # zeta^m = 1, so fold exponents modulo m before dividing
    for i, c in enumerate(raw):
        if c:
            coeffs[i % m] += c
    f = [Fraction(c) for c in cyclotomic_polynomial(m)]
    _, rem = _poly_divmod(coeffs, f)
    rem += [Fraction(0)] * (phi - len(rem))
    return rem[:phi]


def _normalize(order: int, coeffs: Sequence[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    coeffs = [Fraction(c) for c in coeffs]
    phi = _euler_phi(order)
    assert len(coeffs) == phi, "coefficient list must have length phi(order)"
    if order == 2:
        # zeta_2 = -1 lives in the rationals already
        return 1, (coeffs[0],)
    if order > 1 and all(c == 0 for c in coeffs[1:]):
        return 1, (coeffs[0],)
    return order, tuple(coeffs)


def root_of_unity(m: int, k: int = 1) -> ExactScalar:
    return ExactScalar.root_of_unity(m, k)


# ---------------------------------------------------------------------------
# matrices over exact scalars
# ---------------------------------------------------------------------------


class ExactMatrix:
    """A dense matrix of ExactScalar entries with exact rank and nullspace."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, entries: Sequence[Sequence[ExactScalar]], ncols: int | None = None):
        rows = [[_coerce(e) for e in row] for row in entries]
        if rows:
            ncols_found = len(rows[0])
            assert all(len(r) == ncols_found for r in rows), "ragged matrix"
            if ncols is not None:
                assert ncols == ncols_found, "declared column count mismatch"
            ncols = ncols_found
        else:
            assert ncols is not None, "empty matrix needs an explicit column count"
        self.nrows = len(rows)
        self.ncols = ncols
        self.entries = rows

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational_rows(
        cls, rows: Sequence[Sequence[int | Fraction]], ncols: int | None = None
    ) -> "ExactMatrix":
        return cls([[ExactScalar.from_rational(v) for v in row] for row in rows], ncols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rational_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def vstack(cls, blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        assert blocks, "need at least one block"
        ncols = blocks[0].ncols
        assert all(b.ncols == ncols for b in blocks), "column counts differ"
        rows: list[list[ExactScalar]] = []
        for b in blocks:
            rows.extend(b.entries)
        return cls(rows, ncols)

    # -- basic operations ---------------------------------------------------

    def row(self, i: int) -> list[ExactScalar]:
        return list(self.entries[i])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        assert self.ncols == other.nrows, "inner dimensions differ"
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = ExactScalar.zero()
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if not a.is_zero():
                        acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(out, other.ncols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        return ExactMatrix(
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.ncols)]
                for i in range(self.nrows)
            ],
            self.ncols,
        )

    def is_zero_matrix(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return all(
            self.entries[i][j] == other.entries[i][j]
            for i in range(self.nrows)
            for j in range(self.ncols)
        )

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols})"

    def all_rational(self) -> bool:
        return all(e.order == 1 for row in self.entries for e in row)

    # -- rank and nullspace ---------------------------------------------------

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if self.all_rational():
            int_rows = [
                _clear_denominators([e.coeffs[0] for e in row]) for row in self.entries
            ]
            return _int_rank(int_rows, self.ncols)
        return _field_rank([list(row) for row in self.entries], self.ncols)

    def nullspace(self) -> list[list[ExactScalar]]:
        """A basis of the right kernel; integer-cleared when all-rational."""
        if self.ncols == 0:
            return []
        rows = [list(r) for r in self.entries]
        pivots, rref = _field_rref(rows, self.ncols)
        pivot_cols = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_cols:
                continue
            vec = [ExactScalar.zero()] * self.ncols
            vec[free] = ExactScalar.one()
            for r, pc in enumerate(pivots):
                vec[pc] = -rref[r][free]
            if all(v.is_rational() for v in vec):
                ints = _clear_denominators([v.as_rational() for v in vec])
                vec = [ExactScalar.from_rational(v) for v in ints]
            basis.append(vec)
        return basis


def rank(matrix: ExactMatrix) -> int:
    return matrix.rank()


def nullspace(matrix: ExactMatrix) -> list[list[ExactScalar]]:
    return matrix.nullspace()


def _clear_denominators(row: Sequence[Fraction]) -> list[int]:
    denom = 1
    for v in row:
        denom = _lcm(denom, Fraction(v).denominator)
    ints = [int(v * denom) for v in row]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _int_rank(rows: list[list[int]], ncols: int) -> int:
    """Rank of integer rows by fraction-free elimination with gcd reduction."""
    rows = [r for r in rows if any(r)]
    rank_found = 0
    for col in range(ncols):
        piv = None
        for idx in range(rank_found, len(rows)):
            if rows[idx][col]:
                piv = idx
                break
        if piv is None:
            continue
        rows[rank_found], rows[piv] = rows[piv], rows[rank_found]
        p = rows[rank_found]
        pl = p[col]
        for idx in range(rank_found + 1, len(rows)):
            r = rows[idx]
            if r[col]:
                m = r[col]
                new = [pl * rv - m * pv for rv, pv in zip(r, p)]
                g = 0
                for v in new:
                    g = math.gcd(g, abs(v))
                rows[idx] = [v // g for v in new] if g > 1 else new
        rank_found += 1
        if rank_found == ncols:
            break
    return rank_found


def _pick_pivot(rows: list[list[ExactScalar]], start: int, col: int) -> int | None:
    """Pivot row at or below start: prefer entries with the largest support."""
    best = None
    best_size = -1
    for idx in range(start, len(rows)):
        e = rows[idx][col]
        if not e.is_zero():
            size = e.support_size()
            if size > best_size:
                best, best_size = idx, size
    return best


def _field_rank(rows: list[list[ExactScalar]], ncols: int) -> int:
    rank_found = 0
    for col in range(ncols):
        piv = _pick_pivot(rows, rank_found, col)
        if piv is None:
            continue
        rows[rank_found], rows[piv] = rows[piv], rows[rank_found]
        p = rows[rank_found]
        pinv = p[col].inverse()
        for idx in range(rank_found + 1, len(rows)):
            r = rows[idx]
            if not r[col].is_zero():
                factor = r[col] * pinv
                rows[idx] = [rv - factor * pv for rv, pv in zip(r, p)]
        rank_found += 1
        if rank_found == ncols:
            break
    return rank_found


def _field_rref(
    rows: list[list[ExactScalar]], ncols: int
) -> tuple[list[int], list[list[ExactScalar]]]:
    """Reduced row echelon form; returns (pivot columns, reduced rows)."""
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = _pick_pivot(rows, r, col)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pinv = rows[r][col].inverse()
        rows[r] = [v * pinv for v in rows[r]]
        for idx in range(len(rows)):
            if idx != r and not rows[idx][col].is_zero():
                factor = rows[idx][col]
                rows[idx] = [rv - factor * pv for rv, pv in zip(rows[idx], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots, rows[: len(pivots)]


# ---------------------------------------------------------------------------
# incremental integer echelon (performance path for large sampling loops)
# ---------------------------------------------------------------------------


class IntEchelon:
    """Incremental fraction-free echelon over the integers.

    Rows are added one at a time; each is reduced against the stored pivot
    rows with integer cross-multiplication.  Stored rows are never mutated,
    so a clone shares them and costs only a dict copy.  Intended for loops
    that test many small perturbations of a fixed row block.
    """

    __slots__ = ("ncols", "_pivot_rows")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivot_rows: dict[int, tuple[int, ...]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    def clone(self) -> "IntEchelon":
        other = IntEchelon(self.ncols)
        other._pivot_rows = dict(self._pivot_rows)
        return other

    def add_row(self, row: Sequence[int]) -> bool:
        """Reduce row against the pivots; store it if independent."""
        work = list(row)
        assert len(work) == self.ncols, "row length mismatch"
        col = _first_nonzero(work)
        while col is not None:
            pivot = self._pivot_rows.get(col)
            if pivot is None:
                g = 0
                for v in work:
                    g = math.gcd(g, abs(v))
                if g > 1:
                    work = [v // g for v in work]
                if work[col] < 0:
                    work = [-v for v in work]
                self._pivot_rows[col] = tuple(work)
                return True
            a, b = pivot[col], work[col]
            work = [a * wv - b * pv for wv, pv in zip(work, pivot)]
            col = _first_nonzero(work, col + 1)
        return False

    def add_rows(self, rows: Iterable[Sequence[int]]) -> int:
        added = 0
        for row in rows:
            if self.add_row(row):
                added += 1
        return added


def _first_nonzero(row: Sequence[int], start: int = 0) -> int | None:
    for i in range(start, len(row)):
        if row[i]:
            return i
    return None


# ---------------------------------------------------------------------------
# rational reduced echelon and integer lattice normal forms
# ---------------------------------------------------------------------------


def rational_rref(
    rows: Iterable[Sequence[Fraction]], ncols: int
) -> tuple[list[int], list[list[Fraction]]]:
    """Reduced row echelon form over the rationals.

    Returns the pivot columns and the nonzero reduced rows; the input is
    not modified.
    """
    work = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = None
        for idx in range(r, len(work)):
            if work[idx][col]:
                piv = idx
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][col]
        work[r] = [v / lead for v in work[r]]
        for idx in range(len(work)):
            if idx != r and work[idx][col]:
                factor = work[idx][col]
                work[idx] = [a - factor * b for a, b in zip(work[idx], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return pivots, work[: len(pivots)]


def primitive_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each rational row to a primitive integer row with positive lead."""
    out = []
    for row in rows:
        ints = _clear_denominators([Fraction(v) for v in row])
        lead = _first_nonzero(ints)
        if lead is not None and ints[lead] < 0:
            ints = [-v for v in ints]
        out.append(ints)
    return out


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), and zero rows are dropped, so two row sets span the same
    integer lattice exactly when their normal forms are equal.
    """
    work = [list(map(int, row)) for row in rows]
    if not work:
        return []
    ncols = len(work[0])
    r = 0
    pivots: list[int] = []
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, len(work)) if work[i][col]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(work[i][col]))
            work[r], work[best] = work[best], work[r]
            if work[r][col] < 0:
                work[r] = [-v for v in work[r]]
            again = False
            for i in range(r + 1, len(work)):
                if work[i][col]:
                    q = work[i][col] // work[r][col]
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                    if work[i][col]:
                        again = True
            if not again:
                pivots.append(col)
                r += 1
                break
        if r == len(work):
            break
    work = work[:r]
    for rr in range(r - 1, -1, -1):
        col = pivots[rr]
        for above in range(rr):
            q = work[above][col] // work[rr][col]
            if q:
                work[above] = [a - q * b for a, b in zip(work[above], work[rr])]
    return work


def integer_kernel(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the saturated integer kernel {u : A u = 0} in Hermite form.

    Works on the transpose augmented with an identity block, using only
    unimodular row operations, so the result spans the full lattice of
    integer solutions (not a finite-index sublattice).
    """
    mat = [list(map(int, row)) for row in rows]
    m = len(mat)
    aug = [
        [mat[i][j] for i in range(m)] + [1 if t == j else 0 for t in range(ncols)]
        for j in range(ncols)
    ]
    r = 0
    for col in range(m):
        while True:
            nz = [i for i in range(r, ncols) if aug[i][col]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(aug[i][col]))
            aug[r], aug[best] = aug[best], aug[r]
            if aug[r][col] < 0:
                aug[r] = [-v for v in aug[r]]
            again = False
            for i in range(r + 1, ncols):
                if aug[i][col]:
                    q = aug[i][col] // aug[r][col]
                    aug[i] = [a - q * b for a, b in zip(aug[i], aug[r])]
                    if aug[i][col]:
                        again = True
            if not again:
                r += 1
                break
        if r == ncols:
            break
    kernel = [row[m:] for row in aug[r:]]
    return hermite_normal_form(kernel)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """A Laurent polynomial over Q in nvars variables t1..tn.

    Terms map exponent tuples (length nvars, integers of either sign) to
    nonzero rational coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                assert len(exp) == nvars, "exponent tuple length mismatch"
                clean[tuple(exp)] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, value: int | Fraction, nvars: int) -> "LaurentPoly":
        value = Fraction(value)
        return cls(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int, power: int = 1) -> "LaurentPoly":
        """The monomial t_{index+1}^power (index is 0-based)."""
        assert 0 <= index < nvars, "variable index out of range"
        exp = [0] * nvars
        exp[index] = power
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int | Fraction = 1) -> "LaurentPoly":
        return cls(len(exponents), {tuple(exponents): Fraction(coeff)})

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        assert self.nvars == other.nvars, "variable counts differ"

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return LaurentPoly(self.nvars, out)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) + (-self)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        assert exponent >= 0 or len(self.terms) == 1, (
            "negative powers need a monomial base"
        )
        if exponent < 0:
            ((exp, coeff),) = self.terms.items()
            assert abs(coeff) == 1 or coeff != 0, "nonunit monomial"
            inv = LaurentPoly(
                self.nvars, {tuple(-e for e in exp): 1 / coeff}
            )
            return inv ** (-exponent)
        result = LaurentPoly.one(self.nvars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.nvars)
        raise TypeError(f"cannot treat {other!r} as a Laurent polynomial")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, point: Sequence[ExactScalar]) -> ExactScalar:
        assert len(point) == self.nvars, "point dimension mismatch"
        total = ExactScalar.zero()
        for exp, coeff in self.terms.items():
            term = ExactScalar.from_rational(coeff)
            for v, e in zip(point, exp):
                if e:
                    term = term * (v**e)
            total = total + term
        return total

    def at_one(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    # -- display ---------------------------------------------------------------

    def __repr__(self) -> str:
        return self.to_str()

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            coeff = self.terms[exp]
            monos = []
            for i, e in enumerate(exp):
                if e == 1:
                    monos.append(f"t{i + 1}")
                elif e:
                    monos.append(f"t{i + 1}^{e}")
            body = "*".join(monos)
            if not body:
                piece = str(coeff)
            elif coeff == 1:
                piece = body
            elif coeff == -1:
                piece = f"-{body}"
            else:
                piece = f"{coeff}*{body}"
            parts.append(piece)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# matrices of Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentMatrix:
    """A dense matrix with LaurentPoly entries, all sharing one variable set."""

    __slots__ = ("nvars", "nrows", "ncols", "entries")

    def __init__(
        self,
        nvars: int,
        entries: Sequence[Sequence[LaurentPoly]],
        ncols: int | None = None,
    ):
        rows = []
        for row in entries:
            clean = []
            for e in row:
                if isinstance(e, (int, Fraction)):
                    e = LaurentPoly.constant(e, nvars)
                assert isinstance(e, LaurentPoly) and e.nvars == nvars
                clean.append(e)
            rows.append(clean)
        if rows:
            ncols_found = len(rows[0])
            assert all(len(r) == ncols_found for r in rows), "ragged matrix"
            ncols = ncols_found
        else:
            assert ncols is not None, "empty matrix needs an explicit column count"
        self.nvars = nvars
        self.nrows = len(rows)
        self.ncols = ncols
        self.entries = rows

    @classmethod
    def identity(cls, n: int, nvars: int) -> "LaurentMatrix":
        one = LaurentPoly.one(nvars)
        zero = LaurentPoly.zero(nvars)
        return cls(nvars, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int, nvars: int) -> "LaurentMatrix":
        z = LaurentPoly.zero(nvars)
        return cls(nvars, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def vstack(cls, blocks: Sequence["LaurentMatrix"]) -> "LaurentMatrix":
        assert blocks, "need at least one block"
        nvars = blocks[0].nvars
        ncols = blocks[0].ncols
        assert all(b.nvars == nvars and b.ncols == ncols for b in blocks)
        rows: list[list[LaurentPoly]] = []
        for b in blocks:
            rows.extend(b.entries)
        return cls(nvars, rows, ncols)

    def row(self, i: int) -> list[LaurentPoly]:
        return list(self.entries[i])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "LaurentMatrix":
        return LaurentMatrix(
            self.nvars,
            [[self.entries[i][j] for j in cols] for i in rows],
            len(cols),
        )

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        assert self.nvars == other.nvars and self.ncols == other.nrows
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = LaurentPoly.zero(self.nvars)
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if not a.is_zero():
                        acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return LaurentMatrix(self.nvars, out, other.ncols)

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        return LaurentMatrix(
            self.nvars,
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.ncols)]
                for i in range(self.nrows)
            ],
            self.ncols,
        )

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        return LaurentMatrix(
            self.nvars,
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.ncols)]
                for i in range(self.nrows)
            ],
            self.ncols,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (
            (self.nrows, self.ncols, self.nvars)
            == (other.nrows, other.ncols, other.nvars)
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.nrows}x{self.ncols}, {self.nvars} vars)"

    def evaluate(self, point: Sequence[ExactScalar]) -> ExactMatrix:
        return ExactMatrix(
            [[e.evaluate(point) for e in row] for row in self.entries], self.ncols
        )

    def at_one(self) -> ExactMatrix:
        return ExactMatrix.from_rational_rows(
            [[e.at_one() for e in row] for row in self.entries], self.ncols
        )

    def determinant(self) -> LaurentPoly:
        assert self.nrows == self.ncols, "determinant needs a square matrix"
        n = self.nrows
        if n == 0:
            return LaurentPoly.one(self.nvars)
        if n == 1:
            return self.entries[0][0]
        # Laplace expansion along the first row; fine for the small sizes used
        total = LaurentPoly.zero(self.nvars)
        rest_rows = list(range(1, n))
        for j in range(n):
            e = self.entries[0][j]
            if e.is_zero():
                continue
            cols = [c for c in range(n) if c != j]
            minor = self.submatrix(rest_rows, cols).determinant()
            term = e * minor
            total = total + (term if j % 2 == 0 else -term)
        return total

    def exterior_square(self) -> "LaurentMatrix":
        """The induced matrix on wedge pairs, with lexicographic pair order.

        Row (i<j) and column (k<l) hold the 2x2 minor from rows i,j and
        columns k,l.  For a square matrix of an operator on a free module
        this is the matrix of the operator induced on the degree-2 exterior
        power.
        """
        row_pairs = list(itertools.combinations(range(self.nrows), 2))
        col_pairs = list(itertools.combinations(range(self.ncols), 2))
        out = []
        for i, j in row_pairs:
            row = []
            for k, l in col_pairs:
                minor = (
                    self.entries[i][k] * self.entries[j][l]
                    - self.entries[i][l] * self.entries[j][k]
                )
                row.append(minor)
            out.append(row)
        return LaurentMatrix(self.nvars, out, len(col_pairs))
