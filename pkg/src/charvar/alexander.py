"""Fundamental-group route to the depth-k jumping loci.

This module works with braid monodromy presentations of arrangement
groups: the Artin action of pure braids on free-group words, abelianized
Fox calculus (Gassner matrices), the degree-two chain map attached to a
conjugated full twist, the presentation matrix of the Alexander invariant
(first homology of the universal abelian cover as a module over the
character torus's coordinate ring), exact point-membership tests for the
depth-k characteristic varieties, and Fitting-ideal generators for small
presentations.

Index and sign conventions (each pinned by tests in the suite; the single
identity "Gassner minus identity equals the degree-two differential
composed with the twist chain map" fixes them jointly):

 - Free-group generators are 1-based.  A word is a tuple of nonzero
   integers; a negative entry is the inverse generator.  Words are kept
   freely reduced.
 - The pure-braid twist generator on strands i < j conjugates the two end
   strands by the product (g_i g_j) and every strand strictly between
   them by the commutator [g_i, g_j]; strands outside [i, j] are fixed.
 - A braid word acts leftmost-first: applying the concatenation of two
   words equals applying the left word, then the right word to the
   result.  Under this reading the standard positive twist word on a
   strand set composes to conjugation by the ascending product of the
   strand generators, which is what the chain-map formulas expand.
 - Fox derivatives are left derivatives.  The Gassner matrix stores the
   abelianized gradient of the image of g_i in row i; with rows acting as
   vectors on the right, the matrix of a word is the product of the
   factor matrices in word order.
 - Exterior-power bases are lexicographic; the Koszul-type differential
   on a k-subset alternates signs starting with minus on the smallest
   member, except in degree one where the column is (t_i - 1) with
   positive sign.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Sequence

from .arrangement import Lattice2, ValidationError
from .components import CapExceeded
from .exactalg import ExactMatrix, ExactScalar, LaurentPoly

SYMBOLIC_STRAND_CAP = 8
MINOR_CAP = 4

FreeWord = tuple[int, ...]
TwistFactor = tuple[int, int, int]  # (i, j, exponent) with 1 <= i < j
BraidWord = tuple[TwistFactor, ...]


def _to_scalar(value) -> ExactScalar:
    if isinstance(value, ExactScalar):
        return value
    return ExactScalar.from_rational(Fraction(value))


class _Ring:
    """Uniform scalar operations: symbolic Laurent or evaluation at a point."""

    __slots__ = ("n", "one", "zero", "_t", "_tinv")

    def __init__(self, n: int, point: Sequence | None = None):
        self.n = n
        if point is None:
            self.one = LaurentPoly.one(n)
            self.zero = LaurentPoly.zero(n)
            self._t = [LaurentPoly.variable(i, n) for i in range(n)]
            self._tinv = [LaurentPoly.variable(i, n, -1) for i in range(n)]
        else:
            coords = [_to_scalar(v) for v in point]
            if len(coords) != n:
                raise ValidationError(f"expected a point with {n} coordinates")
            if any(c.is_zero() for c in coords):
                raise ValidationError("torus points must have nonzero coordinates")
            self.one = ExactScalar.one()
            self.zero = ExactScalar.zero()
            self._t = coords
            self._tinv = [c.inverse() for c in coords]

    def t(self, index: int):
        return self._t[index]

    def tinv(self, index: int):
        return self._tinv[index]


# ---------------------------------------------------------------------------
# free words and the Artin action
# ---------------------------------------------------------------------------


def free_reduce(letters: Iterable[int]) -> FreeWord:
    """Freely reduce a word (cancel adjacent inverse pairs)."""
    out: list[int] = []
    for x in letters:
        x = int(x)
        if x == 0:
            raise ValidationError("generator indices are nonzero")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word: Iterable[int]) -> FreeWord:
    return tuple(-x for x in reversed(list(word)))


def normalize_braid(factors: Iterable[Sequence[int]]) -> BraidWord:
    """Flatten twist factors to unit exponents, validating indices."""
    out: list[TwistFactor] = []
    for factor in factors:
        i, j, e = (int(v) for v in factor)
        if not 1 <= i < j:
            raise ValidationError(f"twist factor needs strands 1 <= i < j, got ({i}, {j})")
        if e == 0:
            raise ValidationError("twist exponent must be nonzero")
        step = 1 if e > 0 else -1
        out.extend((i, j, step) for _ in range(abs(e)))
    return tuple(out)


def invert_braid(braid: Iterable[Sequence[int]]) -> BraidWord:
    return tuple((i, j, -e) for i, j, e in reversed(normalize_braid(braid)))


def twist_generator_image(i: int, j: int, exp: int, k: int) -> FreeWord:
    """Image of generator g_k under the (i, j) twist generator to the ±1 power."""
    if not 1 <= i < j:
        raise ValidationError("twist generator needs 1 <= i < j")
    if exp not in (1, -1):
        raise ValidationError("unit exponent expected")
    if k < i or k > j:
        return (k,)
    ends = (i, j)
    if k == i or k == j:
        z = ends if exp == 1 else invert_word(ends)
        return free_reduce(z + (k,) + invert_word(z))
    commutator = (i, j, -i, -j)
    if exp == 1:
        z = commutator
    else:
        # inverse action on a middle strand: conjugate by the commutator of
        # the inverted end generators
        z = (-j, -i, j, i)
    return free_reduce(z + (k,) + invert_word(z))


def artin_apply(braid: Iterable[Sequence[int]], word: Iterable[int]) -> FreeWord:
    """Apply a pure-braid word to a free-group word, leftmost factor first:
    apply(b1 + b2, w) equals apply(b2, apply(b1, w))."""
    current = free_reduce(word)
    for i, j, e in normalize_braid(braid):
        out: list[int] = []
        for letter in current:
            image = twist_generator_image(i, j, e, abs(letter))
            out.extend(image if letter > 0 else invert_word(image))
        current = free_reduce(out)
    return current


def full_twist(X: Sequence[int]) -> BraidWord:
    """The full twist on a strand set, as the standard positive twist word."""
    X = _validated_strands(X)
    word = []
    for b in range(1, len(X)):
        for a in range(b):
            word.append((X[a], X[b], 1))
    return tuple(word)


def _validated_strands(X: Sequence[int]) -> tuple[int, ...]:
    X = tuple(int(v) for v in X)
    if len(X) < 2:
        raise ValidationError("a twist needs at least two strands")
    if list(X) != sorted(set(X)) or X[0] < 1:
        raise ValidationError("strand sets are sorted 1-based tuples")
    return X


# ---------------------------------------------------------------------------
# Fox calculus and the Gassner matrix
# ---------------------------------------------------------------------------


def fox_gradient(word: Iterable[int], ring: _Ring) -> list:
    """Abelianized left Fox gradient of a free word."""
    grad = [ring.zero] * ring.n
    m = ring.one
    for letter in free_reduce(word):
        idx = abs(letter) - 1
        if idx >= ring.n:
            raise ValidationError("word letter exceeds strand count")
        if letter > 0:
            grad[idx] = grad[idx] + m
            m = m * ring.t(idx)
        else:
            m = m * ring.tinv(idx)
            grad[idx] = grad[idx] - m
    return grad


def _factor_gassner(factor: TwistFactor, ring: _Ring) -> list[list]:
    i, j, e = factor
    return [
        fox_gradient(twist_generator_image(i, j, e, k), ring)
        for k in range(1, ring.n + 1)
    ]


def _gassner(braid: BraidWord, ring: _Ring) -> list[list]:
    # Row i holds the gradient of the image of g_i, so the matrix of a
    # word is the product of factor matrices in word order; multiplying
    # factor-wise keeps entries at their final polynomial size instead of
    # materializing exponentially long image words.
    matrix = None
    for factor in braid:
        step = _factor_gassner(factor, ring)
        matrix = step if matrix is None else _mat_mul(matrix, step, ring)
    if matrix is None:
        matrix = [
            [ring.one if a == b else ring.zero for b in range(ring.n)]
            for a in range(ring.n)
        ]
    return matrix


def gassner(braid: Iterable[Sequence[int]], n: int, point: Sequence | None = None):
    """Gassner matrix of a pure-braid word: row i is the abelianized Fox
    gradient of the image of g_i.  Symbolic when no point is given."""
    return _gassner(normalize_braid(braid), _Ring(n, point))


def wedge_square(matrix: Sequence[Sequence], ring_n: int | None = None) -> list[list]:
    """Second exterior power of a square matrix on the lexicographic basis."""
    n = len(matrix)
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for a, b in pairs:
        ra, rb = matrix[a], matrix[b]
        out.append([ra[c] * rb[d] - ra[d] * rb[c] for c, d in pairs])
    return out


def _mat_mul(left: Sequence[Sequence], right: Sequence[Sequence], ring: _Ring):
    if not left:
        return []
    ncols = len(right[0]) if right else 0
    out = []
    for row in left:
        acc = [ring.zero] * ncols
        for k, a in enumerate(row):
            if a.is_zero():
                continue
            rrow = right[k]
            for j in range(ncols):
                b = rrow[j]
                if not b.is_zero():
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# chain maps of full twists and their conjugates
# ---------------------------------------------------------------------------


def _product_gradient(strands: Sequence[int], ring: _Ring) -> list:
    """Gradient of the left-to-right product of the given generators."""
    grad = [ring.zero] * ring.n
    m = ring.one
    for s in strands:
        grad[s - 1] = m
        m = m * ring.t(s - 1)
    return grad


def _wedge_vectors(u: Sequence, v: Sequence, pairs: Sequence[tuple[int, int]]):
    return [u[a] * v[b] - u[b] * v[a] for a, b in pairs]


def _twist_chain_map(X: tuple[int, ...], ring: _Ring) -> list[list]:
    n = ring.n
    pairs = list(itertools.combinations(range(n), 2))
    nabla = _product_gradient(X, ring)
    members = set(X)
    lo, hi = X[0], X[-1]
    rows = []
    for k in range(1, n + 1):
        if k in members:
            unit = [ring.zero] * n
            unit[k - 1] = ring.one
            rows.append(_wedge_vectors(unit, nabla, pairs))
        elif lo < k < hi:
            upper = [s for s in X if s > k]
            nabla_up = _product_gradient(upper, ring)
            factor = ring.t(k - 1) - ring.one
            rows.append(
                [factor * c for c in _wedge_vectors(nabla, nabla_up, pairs)]
            )
        else:
            rows.append([ring.zero] * len(pairs))
    return rows


def twist_chain_map(X: Sequence[int], n: int, point: Sequence | None = None):
    """Degree-two chain map of the full twist on X: an n x C(n,2) matrix.

    Rows for strands in X wedge the strand vector with the gradient of the
    product of the X generators; rows for strands strictly inside the span
    of X but not in it carry (t_k - 1) times the wedge of that gradient
    with the gradient of the upper part; all other rows vanish.
    """
    X = _validated_strands(X)
    if X[-1] > n:
        raise ValidationError("strand index exceeds strand count")
    return _twist_chain_map(X, _Ring(n, point))


def _monodromy_chain_map(gen: "MonodromyGen", ring: _Ring) -> list[list]:
    base = _twist_chain_map(gen.X, ring)
    if not gen.delta:
        return base
    delta = normalize_braid(gen.delta)
    theta_inv = _gassner(invert_braid(delta), ring)
    theta2 = wedge_square(_gassner(delta, ring))
    return _mat_mul(_mat_mul(theta_inv, base, ring), theta2, ring)


def monodromy_chain_map(
    gen: "MonodromyGen", n: int, point: Sequence | None = None
) -> list[list]:
    """Chain map of a conjugated full twist: Gassner of the inverse
    conjugator, times the twist chain map, times the wedge square of the
    Gassner of the conjugator."""
    _check_gen(gen, n)
    return _monodromy_chain_map(gen, _Ring(n, point))


def monodromy_braid(gen: "MonodromyGen") -> BraidWord:
    """The conjugated full twist as a braid word: the inverse conjugator,
    the twist, then the conjugator (words act leftmost-first)."""
    delta = normalize_braid(gen.delta)
    return invert_braid(delta) + full_twist(gen.X) + delta


# ---------------------------------------------------------------------------
# the standard free resolution differentials
# ---------------------------------------------------------------------------


def _resolution_differential(k: int, ring: _Ring) -> list[list]:
    n = ring.n
    if k == 1:
        return [[ring.t(i) - ring.one] for i in range(n)]
    cols = list(itertools.combinations(range(1, n + 1), k - 1))
    col_index = {c: i for i, c in enumerate(cols)}
    rows = []
    for J in itertools.combinations(range(1, n + 1), k):
        row = [ring.zero] * len(cols)
        for r, jr in enumerate(J, start=1):
            rest = tuple(v for v in J if v != jr)
            entry = ring.t(jr - 1) - ring.one
            row[col_index[rest]] = -entry if r % 2 else entry
        rows.append(row)
    return rows


def resolution_differential(k: int, n: int, point: Sequence | None = None):
    """Differential C(n,k) -> C(n,k-1) of the standard Koszul-type free
    resolution over the Laurent ring; degree one is the positive column
    (t_i - 1)."""
    if not 1 <= k <= n:
        raise ValidationError("differential degree must satisfy 1 <= k <= n")
    return _resolution_differential(k, _Ring(n, point))


# ---------------------------------------------------------------------------
# monodromy data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonodromyGen:
    """One braid monodromy generator: a full twist on X conjugated by delta."""

    X: tuple[int, ...]
    delta: BraidWord = ()

    def __post_init__(self):
        object.__setattr__(self, "X", _validated_strands(self.X))
        object.__setattr__(self, "delta", normalize_braid(self.delta))


def _check_gen(gen: MonodromyGen, n: int) -> None:
    if gen.X[-1] > n:
        raise ValidationError("strand index exceeds strand count")
    for i, j, _ in gen.delta:
        if j > n:
            raise ValidationError("conjugator strand index exceeds strand count")


@dataclass(frozen=True)
class MonodromyInput:
    """Braid monodromy of an affine line arrangement on n strands.

    One generator per intersection point (double points included).  The
    optional lift metadata relates the strands to the hyperplanes of a
    central arrangement one rank up: {"central_n": int, "strand_to_central":
    [1-based indices], "infinity": 1-based index of the line at infinity}.
    """

    n: int
    generators: tuple[MonodromyGen, ...]
    lift: dict | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError("monodromy needs at least two strands")
        object.__setattr__(self, "generators", tuple(self.generators))
        seen_pairs: set[tuple[int, int]] = set()
        for gen in self.generators:
            _check_gen(gen, self.n)
            for pair in itertools.combinations(gen.X, 2):
                if pair in seen_pairs:
                    raise ValidationError(
                        f"strand pair {pair} lies in two vertex sets"
                    )
                seen_pairs.add(pair)
        if self.lift is not None:
            self._check_lift()

    def _check_lift(self) -> None:
        lift = self.lift
        try:
            central_n = int(lift["central_n"])
            strands = [int(v) for v in lift["strand_to_central"]]
            infinity = int(lift["infinity"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed lift metadata: {exc}") from exc
        if central_n != self.n + 1:
            raise ValidationError("lift central_n must be strand count plus one")
        if sorted(strands + [infinity]) != list(range(1, central_n + 1)):
            raise ValidationError(
                "lift strand map plus infinity must enumerate the central lines"
            )

    @property
    def b2(self) -> int:
        """Second Betti number of the presented complement: sum of
        (multiplicity - 1) over the intersection points."""
        return sum(len(g.X) - 1 for g in self.generators)

    def lattice(self) -> Lattice2:
        """Rank-2 intersection lattice encoded by the vertex sets (0-based);
        strand pairs in no vertex set become parallel pairs."""
        flats = [tuple(s - 1 for s in g.X) for g in self.generators if len(g.X) >= 3]
        covered = set()
        for g in self.generators:
            covered.update(
                tuple(sorted((a - 1, b - 1)))
                for a, b in itertools.combinations(g.X, 2)
            )
        parallels = [
            p
            for p in itertools.combinations(range(self.n), 2)
            if p not in covered
        ]
        return Lattice2(self.n, flats, parallels)

    def to_json(self) -> dict:
        data = {
            "n": self.n,
            "generators": [
                {
                    "X": list(g.X),
                    "delta": [["A", i, j, e] for i, j, e in g.delta],
                }
                for g in self.generators
            ],
        }
        if self.lift is not None:
            data["lift"] = dict(self.lift)
        return data

    @classmethod
    def from_json(cls, obj: dict) -> "MonodromyInput":
        try:
            n = int(obj["n"])
            raw_gens = obj["generators"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed monodromy data: {exc}") from exc
        gens = []
        for item in raw_gens:
            X = tuple(int(v) for v in item["X"])
            delta = []
            for entry in item.get("delta", ()):
                if len(entry) != 4 or entry[0] != "A":
                    raise ValidationError(
                        'conjugator factors look like ["A", i, j, exponent]'
                    )
                delta.append((int(entry[1]), int(entry[2]), int(entry[3])))
            gens.append(MonodromyGen(X, tuple(delta)))
        return cls(n, tuple(gens), obj.get("lift"))


def pencil_monodromy(n: int) -> MonodromyInput:
    """Monodromy of n affine lines through one point: a single full twist."""
    if n < 2:
        raise ValidationError("a pencil needs at least two lines")
    return MonodromyInput(n, (MonodromyGen(tuple(range(1, n + 1))),))


def generic_monodromy(n: int) -> MonodromyInput:
    """Monodromy template for n lines in general position: one twist per
    pair with trivial conjugators (membership answers at this level do not
    depend on the conjugators)."""
    if n < 2:
        raise ValidationError("need at least two lines")
    gens = tuple(
        MonodromyGen((i, j)) for i, j in itertools.combinations(range(1, n + 1), 2)
    )
    return MonodromyInput(n, gens)


def grid_monodromy(n1: int, n2: int) -> MonodromyInput:
    """Monodromy of two transverse families of parallel lines (n1 and n2
    of them): one double point per cross pair, trivial conjugators.

    The complement is a product of a free group of rank n1 with one of
    rank n2, and the cross-pair twist relators present exactly the
    commutators between the two families, so this input is an exact
    presentation independent of any plane geometry.
    """
    if n1 < 1 or n2 < 1:
        raise ValidationError("each parallel family needs at least one line")
    if n1 + n2 < 2:
        raise ValidationError("monodromy needs at least two strands")
    gens = tuple(
        MonodromyGen((i, j))
        for i in range(1, n1 + 1)
        for j in range(n1 + 1, n1 + n2 + 1)
    )
    return MonodromyInput(n1 + n2, gens)


def load_monodromy(name: str) -> MonodromyInput:
    """Load a packaged monodromy fixture by name (without extension)."""
    path = resources.files("charvar.fixtures").joinpath(f"{name}.json")
    try:
        text = path.read_text()
    except (FileNotFoundError, ModuleNotFoundError) as exc:
        raise ValidationError(f"unknown monodromy fixture: {name}") from exc
    return MonodromyInput.from_json(json.loads(text))


# ---------------------------------------------------------------------------
# the Alexander-invariant presentation and membership tests
# ---------------------------------------------------------------------------


def presentation_matrix(
    m: MonodromyInput,
    point: Sequence | None = None,
    cap: int = SYMBOLIC_STRAND_CAP,
) -> list[list]:
    """Presentation matrix of the Alexander invariant: the monodromy chain
    map rows for all vertex-set strands except each set's largest, stacked
    over the degree-three resolution differential.

    Shape (b2 + C(n,3)) x C(n,2).  Symbolic entries unless a point is
    given; symbolic assembly is capped in strand count.
    """
    if point is None and m.n > cap:
        raise CapExceeded(
            f"symbolic presentation is limited to {cap} strands (got {m.n})"
        )
    ring = _Ring(m.n, point)
    rows: list[list] = []
    for gen in m.generators:
        block = _monodromy_chain_map(gen, ring)
        for s in gen.X[:-1]:
            rows.append(block[s - 1])
    if m.n >= 3:
        rows.extend(_resolution_differential(3, ring))
    return rows


def relator_jacobian(
    m: MonodromyInput, point: Sequence | None = None
) -> list[list]:
    """Abelianized Fox Jacobian of the monodromy relators: for each vertex
    set, the rows (Gassner(generator) - identity) for all strands but the
    largest.  Shape b2 x n."""
    ring = _Ring(m.n, point)
    rows = []
    for gen in m.generators:
        theta = _gassner(monodromy_braid(gen), ring)
        for s in gen.X[:-1]:
            row = list(theta[s - 1])
            row[s - 1] = row[s - 1] - ring.one
            rows.append(row)
    return rows


def presentation_rank(m: MonodromyInput, point: Sequence) -> int:
    """Exact rank of the presentation matrix evaluated at a torus point."""
    ncols = len(list(itertools.combinations(range(m.n), 2)))
    return ExactMatrix(presentation_matrix(m, point=point), ncols).rank()


def relator_rank(m: MonodromyInput, point: Sequence) -> int:
    """Exact rank of the relator Jacobian evaluated at a torus point."""
    return ExactMatrix(relator_jacobian(m, point=point), m.n).rank()


def in_charvar(m: MonodromyInput, point: Sequence, k: int) -> bool:
    """Whether a torus point lies in the depth-k characteristic variety:
    the presentation-matrix rank drops to at most C(n,2) - k."""
    if k < 1:
        raise ValidationError("depth k must be at least 1")
    ncols = len(list(itertools.combinations(range(m.n), 2)))
    return presentation_rank(m, point) <= ncols - k


def in_charvar_relator_route(m: MonodromyInput, point: Sequence, k: int) -> bool:
    """Depth-k membership through the relator Jacobian: rank at most
    n - k - 1.  Agrees with in_charvar away from 1 for k up to
    relator_route_limit(m)."""
    if k < 1:
        raise ValidationError("depth k must be at least 1")
    return relator_rank(m, point) <= m.n - k - 1


def relator_route_limit(m: MonodromyInput) -> int:
    """Largest depth for which the relator-Jacobian criterion is valid:
    min(n, C(n,2) - b2)."""
    ncols = len(list(itertools.combinations(range(m.n), 2)))
    return min(m.n, ncols - m.b2)


def lift_point(lift: dict, central_point: Sequence) -> list[ExactScalar]:
    """Restrict a central torus point (coordinate product 1) to the affine
    strands recorded in the lift metadata, in strand order."""
    coords = [_to_scalar(v) for v in central_point]
    strands = [int(v) for v in lift["strand_to_central"]]
    if len(coords) != len(strands) + 1:
        raise ValidationError("central point arity does not match the lift")
    prod = ExactScalar.one()
    for c in coords:
        if c.is_zero():
            raise ValidationError("torus points must have nonzero coordinates")
        prod = prod * c
    if not prod.is_one():
        raise ValidationError("central torus points must have coordinate product 1")
    return [coords[s - 1] for s in strands]


def in_charvar_central(m: MonodromyInput, central_point: Sequence, k: int) -> bool:
    """Depth-k membership for a point on the central torus, using the lift
    metadata to restrict it to the affine strands."""
    if m.lift is None:
        raise ValidationError("this monodromy has no central lift metadata")
    return in_charvar(m, lift_point(m.lift, central_point), k)


# ---------------------------------------------------------------------------
# the chain map at the identity character
# ---------------------------------------------------------------------------


def phi_one_matrix(lat: Lattice2) -> list[list[int]]:
    """Integer matrix of the stacked twist chain maps evaluated at the
    identity character: one block per rank-2 class, rows indexed by the
    class members except the largest.  Conjugators act trivially there, so
    the matrix depends only on the lattice."""
    pairs = list(itertools.combinations(range(lat.n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    rows = []
    for cls in lat.rank2_classes():
        members = list(cls)
        for i in members[:-1]:
            row = [0] * len(pairs)
            for j in members:
                if j == i:
                    continue
                if i < j:
                    row[index[(i, j)]] += 1
                else:
                    row[index[(j, i)]] -= 1
            rows.append(row)
    return rows


def phi_one_rank(lat: Lattice2) -> int:
    pairs = len(list(itertools.combinations(range(lat.n), 2)))
    return ExactMatrix.from_rational_rows(phi_one_matrix(lat), pairs).rank()


# ---------------------------------------------------------------------------
# Fitting ideals of small presentations
# ---------------------------------------------------------------------------


def _is_zero_entry(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def _det(rows: list[list]):
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = None
    for j, entry in enumerate(rows[0]):
        if _is_zero_entry(entry):
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = entry * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] - rows[0][0]
    return total


def _one_like(entry):
    if isinstance(entry, LaurentPoly):
        return LaurentPoly.one(entry.nvars)
    if isinstance(entry, ExactScalar):
        return ExactScalar.one()
    return Fraction(1)


def fitting_generators(matrix: Sequence[Sequence], k: int, cap: int = MINOR_CAP):
    """Generators of the k-th Fitting ideal of the module presented by the
    matrix (columns = module generators): all (q - k + 1)-minors.

    Returns [] for the zero ideal (k <= 0 or minors larger than the row
    count) and [1] for the unit ideal (k > q).  Minor size is capped.
    """
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        raise ValidationError("fitting_generators needs a nonempty matrix")
    p, q = len(rows), len(rows[0])
    if k > q:
        return [_one_like(rows[0][0])]
    size = q - k + 1
    if k <= 0 or size > p:
        return []
    if size > cap:
        raise CapExceeded(f"minor size {size} exceeds cap {cap}")
    gens = []
    for rset in itertools.combinations(range(p), size):
        for cset in itertools.combinations(range(q), size):
            det = _det([[rows[i][j] for j in cset] for i in rset])
            if not _is_zero_entry(det) and all(det != g for g in gens):
                gens.append(det)
    return gens
