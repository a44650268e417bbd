"""Hyperplane arrangements and their rank-2 intersection data.

An arrangement is a list of affine-linear functionals over an exact scalar
field, either central (all constants zero) or affine.  The only incidence
data the rest of the package needs is the rank-2 intersection lattice: for
each point (or line, in the central case) where three or more hyperplanes
meet, the set of hyperplanes through it.  Pairs meeting in no stored flat
are implicit double points, and affine arrangements additionally record
which pairs of lines are parallel (they meet nowhere).

Family generators build the standard example arrangements: braid lattices,
monomial and full monomial arrangements, the Hessian arrangement, the
diamond arrangement, pencils, generic lattices, and a pair of lattices
with matching local data but different global structure.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactalg import ExactScalar, root_of_unity


class ValidationError(ValueError):
    """Raised when an input object violates a structural precondition."""


# ---------------------------------------------------------------------------
# arrangements
# ---------------------------------------------------------------------------


def _scalar(value) -> ExactScalar:
    if isinstance(value, ExactScalar):
        return value
    return ExactScalar.from_rational(Fraction(value))


def _canonical_direction(vec: Sequence[ExactScalar]) -> str:
    """A hashable canonical form of a nonzero vector up to scaling."""
    lead = None
    for v in vec:
        if not v.is_zero():
            lead = v
            break
    if lead is None:
        raise ValidationError("zero vector has no direction")
    inv = lead.inverse()
    return json.dumps([(v * inv).to_json() for v in vec])


@dataclass
class Arrangement:
    """A finite list of distinct hyperplanes, central or affine.

    Each hyperplane is the zero set of a functional a_1 x_1 + ... + a_d x_d
    + c, stored as the coefficient list [a_1, ..., a_d, c].  Central
    arrangements have every c equal to zero.
    """

    flavor: str
    hyperplanes: list[list[ExactScalar]]
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.flavor not in ("central", "affine"):
            raise ValidationError(f"unknown flavor {self.flavor!r}")
        if not self.hyperplanes:
            raise ValidationError("arrangement needs at least one hyperplane")
        self.hyperplanes = [[_scalar(v) for v in row] for row in self.hyperplanes]
        width = len(self.hyperplanes[0])
        if width < 2 or any(len(row) != width for row in self.hyperplanes):
            raise ValidationError("hyperplane rows must share one positive dimension")
        for row in self.hyperplanes:
            if all(v.is_zero() for v in row[:-1]):
                raise ValidationError("hyperplane has a zero linear part")
            if self.flavor == "central" and not row[-1].is_zero():
                raise ValidationError("central arrangement has a nonzero constant term")
        seen = set()
        for row in self.hyperplanes:
            key = _canonical_direction(row)
            if key in seen:
                raise ValidationError("duplicate hyperplane")
            seen.add(key)
        if not self.labels:
            self.labels = [f"H{i + 1}" for i in range(len(self.hyperplanes))]
        if len(self.labels) != len(self.hyperplanes):
            raise ValidationError("label count must match hyperplane count")

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    @property
    def dim(self) -> int:
        return len(self.hyperplanes[0]) - 1

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor,
            "dim": self.dim,
            "hyperplanes": [[v.to_json() for v in row] for row in self.hyperplanes],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Arrangement":
        try:
            flavor = obj["flavor"]
            rows = obj["hyperplanes"]
        except (TypeError, KeyError) as exc:
            raise ValidationError(f"arrangement JSON missing key: {exc}") from exc
        try:
            hyperplanes = [[ExactScalar.from_json(v) for v in row] for row in rows]
        except (ValueError, TypeError, KeyError) as exc:
            raise ValidationError(f"bad hyperplane entry: {exc}") from exc
        labels = list(obj.get("labels", []))
        arr = cls(flavor=flavor, hyperplanes=hyperplanes, labels=labels)
        if "dim" in obj and obj["dim"] != arr.dim:
            raise ValidationError("declared dim disagrees with hyperplane rows")
        return arr


# ---------------------------------------------------------------------------
# rank-2 lattices
# ---------------------------------------------------------------------------


@dataclass
class Lattice2:
    """Rank-2 intersection data of an arrangement on n hyperplanes.

    `flats` lists the rank-2 flats of multiplicity at least 3, each as a
    sorted tuple of 0-based hyperplane indices.  A pair of hyperplanes in
    no stored flat and no parallel pair is an implicit double point.
    `parallel_pairs` lists pairs of lines that never meet; it is empty for
    central arrangements.
    """

    n: int
    flats: list[tuple[int, ...]]
    parallel_pairs: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("lattice needs at least one hyperplane")
        self.flats = [tuple(sorted(set(f))) for f in self.flats]
        self.parallel_pairs = [tuple(sorted(p)) for p in self.parallel_pairs]
        pair_owner: dict[tuple[int, int], tuple[int, ...]] = {}
        for flat in self.flats:
            if len(flat) < 3:
                raise ValidationError("stored flats must have multiplicity >= 3")
            if flat[0] < 0 or flat[-1] >= self.n:
                raise ValidationError("flat index out of range")
            for pair in itertools.combinations(flat, 2):
                if pair in pair_owner:
                    raise ValidationError(
                        f"pair {pair} lies in two flats; rank-2 flats must "
                        "intersect in at most one hyperplane"
                    )
                pair_owner[pair] = flat
        parallel_set = set()
        for i, j in self.parallel_pairs:
            if not (0 <= i < j < self.n):
                raise ValidationError("parallel pair index out of range")
            if (i, j) in pair_owner:
                raise ValidationError("a pair cannot be both parallel and concurrent")
            parallel_set.add((i, j))
        if len(parallel_set) != len(self.parallel_pairs):
            raise ValidationError("duplicate parallel pair")
        # parallelism must be an equivalence relation on the lines it touches
        classes: dict[int, set[int]] = {}
        for i, j in parallel_set:
            cls_i = classes.setdefault(i, {i})
            cls_j = classes.setdefault(j, {j})
            if cls_i is not cls_j:
                cls_i |= cls_j
                for k in cls_j:
                    classes[k] = cls_i
        for group in {id(c): c for c in classes.values()}.values():
            for pair in itertools.combinations(sorted(group), 2):
                if pair not in parallel_set:
                    raise ValidationError("parallel pairs are not transitively closed")
        self._pair_owner = pair_owner
        self._parallel_set = parallel_set

    # -- queries --------------------------------------------------------------

    def flat_of_pair(self, i: int, j: int) -> tuple[int, ...] | None:
        """The stored flat containing {i, j}, the implicit double, or None.

        Returns the flat tuple when the pair lies in a stored flat, the
        pair itself when it is an implicit double point, and None when the
        pair is parallel.
        """
        pair = (i, j) if i < j else (j, i)
        if pair in self._parallel_set:
            return None
        return self._pair_owner.get(pair, pair)

    def doubles(self) -> list[tuple[int, int]]:
        """All implicit double points, as sorted pairs."""
        out = []
        for pair in itertools.combinations(range(self.n), 2):
            if pair not in self._pair_owner and pair not in self._parallel_set:
                out.append(pair)
        return out

    def rank2_classes(self) -> list[tuple[int, ...]]:
        """All rank-2 flats: stored flats followed by implicit doubles."""
        return list(self.flats) + self.doubles()

    def b2(self) -> int:
        """Sum of (multiplicity - 1) over all rank-2 flats."""
        total = sum(len(f) - 1 for f in self.flats)
        total += len(self.doubles())
        return total

    def restrict(self, support: Sequence[int]) -> "Lattice2":
        """The lattice of the subarrangement on the given hyperplane set.

        Hyperplanes are reindexed by their position in sorted(support).
        Restricted flats of multiplicity 2 become implicit doubles, and
        restricted parallel pairs stay parallel.
        """
        support = sorted(set(support))
        pos = {h: i for i, h in enumerate(support)}
        flats = []
        for flat in self.flats:
            cut = [pos[h] for h in flat if h in pos]
            if len(cut) >= 3:
                flats.append(tuple(cut))
        parallels = [
            (pos[i], pos[j])
            for i, j in self.parallel_pairs
            if i in pos and j in pos
        ]
        return Lattice2(len(support), flats, parallels)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "flats": [[i + 1 for i in f] for f in self.flats],
        }
        if self.parallel_pairs:
            out["parallel_pairs"] = [[i + 1, j + 1] for i, j in self.parallel_pairs]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Lattice2":
        try:
            n = obj["n"]
            flats = obj["flats"]
        except (TypeError, KeyError) as exc:
            raise ValidationError(f"lattice JSON missing key: {exc}") from exc
        if not isinstance(n, int):
            raise ValidationError("n must be an integer")
        def shift(seq):
            out = []
            for v in seq:
                if not isinstance(v, int) or v < 1 or v > n:
                    raise ValidationError(f"index {v!r} out of range 1..{n}")
                out.append(v - 1)
            return out
        return cls(
            n=n,
            flats=[tuple(shift(f)) for f in flats],
            parallel_pairs=[tuple(shift(p)) for p in obj.get("parallel_pairs", [])],
        )


def b2(lattice: Lattice2) -> int:
    return lattice.b2()


# ---------------------------------------------------------------------------
# lattices from coordinates
# ---------------------------------------------------------------------------


def lattice_from_central3(arr: Arrangement) -> Lattice2:
    """Group the planes of a central arrangement in C^3 by intersection line.

    Two planes meet in a line through the origin; the rank-2 flat of that
    line is the set of all planes containing it.  Flats of multiplicity 2
    stay implicit.
    """
    if arr.flavor != "central" or arr.dim != 3:
        raise ValidationError("expected a central arrangement in dimension 3")
    normals = [row[:3] for row in arr.hyperplanes]
    groups: dict[str, set[int]] = {}
    for i, j in itertools.combinations(range(arr.n), 2):
        direction = _cross(normals[i], normals[j])
        key = _canonical_direction(direction)
        groups.setdefault(key, set()).update((i, j))
    flats = sorted(
        tuple(sorted(g)) for g in groups.values() if len(g) >= 3
    )
    return Lattice2(arr.n, flats)


def lattice_from_affine(arr: Arrangement) -> Lattice2:
    """Group the lines of an affine arrangement in C^2 by intersection point."""
    if arr.flavor != "affine" or arr.dim != 2:
        raise ValidationError("expected an affine arrangement in dimension 2")
    points: dict[str, set[int]] = {}
    parallels: list[tuple[int, int]] = []
    for i, j in itertools.combinations(range(arr.n), 2):
        a1, b1, c1 = arr.hyperplanes[i]
        a2, b2, c2 = arr.hyperplanes[j]
        det = a1 * b2 - a2 * b1
        if det.is_zero():
            parallels.append((i, j))
            continue
        inv = det.inverse()
        # solve a x + b y + c = 0 for both lines
        x = (b1 * c2 - b2 * c1) * inv
        y = (a2 * c1 - a1 * c2) * inv
        key = json.dumps([x.to_json(), y.to_json()])
        points.setdefault(key, set()).update((i, j))
    flats = sorted(tuple(sorted(g)) for g in points.values() if len(g) >= 3)
    return Lattice2(arr.n, flats, parallels)


def _cross_raw(u: Sequence[ExactScalar], v: Sequence[ExactScalar]) -> list[ExactScalar]:
    return [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]


def _cross(u: Sequence[ExactScalar], v: Sequence[ExactScalar]) -> list[ExactScalar]:
    out = _cross_raw(u, v)
    if all(c.is_zero() for c in out):
        raise ValidationError("proportional normals; duplicate hyperplane?")
    return out


# ---------------------------------------------------------------------------
# deconing and point transport
# ---------------------------------------------------------------------------


@dataclass
class DeconeResult:
    """An affine arrangement obtained from a central one by a chart choice.

    `line_to_central[j]` is the central index of affine line j, and
    `infinity` is the central index of the hyperplane sent to infinity.
    """

    arrangement: Arrangement
    line_to_central: tuple[int, ...]
    infinity: int


def decone(arr: Arrangement, at: int | None = None) -> DeconeResult:
    """Restrict a central arrangement in C^3 to the chart f = 1.

    `at` is the 0-based index of the hyperplane sent to infinity; the
    default is the last one.  The remaining planes become lines in the
    chart coordinates, listed in their central order.
    """
    if arr.flavor != "central" or arr.dim != 3:
        raise ValidationError("decone expects a central arrangement in dimension 3")
    if at is None:
        at = arr.n - 1
    if not (0 <= at < arr.n):
        raise ValidationError("decone index out of range")
    f = arr.hyperplanes[at][:3]
    # complete f to a basis with standard coordinate functionals
    basis = [f]
    for k in range(3):
        e = [ExactScalar.from_rational(1 if i == k else 0) for i in range(3)]
        candidate = basis + [e]
        if len(candidate) == 2:
            if not all(c.is_zero() for c in _cross_raw(f, e)):
                basis = candidate
        else:
            if not _det3(candidate).is_zero():
                basis = candidate
                break
    if len(basis) != 3:
        raise ValidationError("could not complete the chart basis")
    g1, g2 = basis[1], basis[2]
    m = [f, g1, g2]
    lines = []
    labels = []
    mapping = []
    for idx in range(arr.n):
        if idx == at:
            continue
        h = arr.hyperplanes[idx][:3]
        alpha, beta, gamma = _solve3_transposed(m, h)
        if beta.is_zero() and gamma.is_zero():
            raise ValidationError("hyperplane parallel to the chart is not a line")
        lines.append([beta, gamma, alpha])
        labels.append(arr.labels[idx])
        mapping.append(idx)
    affine = Arrangement(flavor="affine", hyperplanes=lines, labels=labels)
    return DeconeResult(arrangement=affine, line_to_central=tuple(mapping), infinity=at)


def _det3(rows: Sequence[Sequence[ExactScalar]]) -> ExactScalar:
    a, b, c = rows
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _solve3_transposed(
    m: Sequence[Sequence[ExactScalar]], h: Sequence[ExactScalar]
) -> tuple[ExactScalar, ExactScalar, ExactScalar]:
    """Solve x_0 m[0] + x_1 m[1] + x_2 m[2] = h by Cramer's rule."""
    cols = [list(row) for row in m]
    det = _det3(cols)
    if det.is_zero():
        raise ValidationError("chart basis is singular")
    inv = det.inverse()
    out = []
    for k in range(3):
        replaced = [list(h) if i == k else cols[i] for i in range(3)]
        out.append(_det3(replaced) * inv)
    return out[0], out[1], out[2]


def central_to_affine_point(
    point: Sequence[ExactScalar], at: int
) -> list[ExactScalar]:
    """Drop the coordinate of the infinity plane from a central torus point.

    Central torus points must have coordinate product 1; membership
    questions about the central arrangement reduce to the affine one
    through this restriction.
    """
    point = [(_scalar(v)) for v in point]
    prod = ExactScalar.one()
    for v in point:
        if v.is_zero():
            raise ValidationError("torus points must have nonzero coordinates")
        prod = prod * v
    if not prod.is_one():
        raise ValidationError("central torus points must have coordinate product 1")
    return [v for i, v in enumerate(point) if i != at]


def affine_to_central_point(
    point: Sequence[ExactScalar], at: int
) -> list[ExactScalar]:
    """Insert the infinity coordinate so the product of all coordinates is 1."""
    point = [(_scalar(v)) for v in point]
    prod = ExactScalar.one()
    for v in point:
        if v.is_zero():
            raise ValidationError("torus points must have nonzero coordinates")
        prod = prod * v
    full = list(point)
    full.insert(at, prod.inverse())
    return full


# ---------------------------------------------------------------------------
# family generators
# ---------------------------------------------------------------------------


def gen_family(name: str, **params):
    """Build a named example family.

    Returns an Arrangement for coordinate families (monomial, full_monomial,
    hessian, diamond), a Lattice2 for combinatorial families (braid, pencil,
    generic), and a pair of Lattice2 for falk_pair.
    """
    builders = {
        "braid": _gen_braid,
        "monomial": _gen_monomial,
        "full_monomial": _gen_full_monomial,
        "hessian": _gen_hessian,
        "diamond": _gen_diamond,
        "pencil": _gen_pencil,
        "generic": _gen_generic,
        "falk_pair": _gen_falk_pair,
    }
    if name not in builders:
        raise ValidationError(
            f"unknown family {name!r}; expected one of {sorted(builders)}"
        )
    return builders[name](**params)


def _gen_braid(ell: int) -> Lattice2:
    """The braid arrangement lattice: lines are the 2-subsets of 1..ell."""
    if ell < 3:
        raise ValidationError("braid family needs ell >= 3")
    pairs = list(itertools.combinations(range(ell), 2))
    index = {p: i for i, p in enumerate(pairs)}
    flats = []
    for i, j, k in itertools.combinations(range(ell), 3):
        flats.append(tuple(sorted((index[(i, j)], index[(i, k)], index[(j, k)]))))
    return Lattice2(len(pairs), sorted(flats))


def _monomial_planes(r: int) -> tuple[list[list[ExactScalar]], list[str]]:
    zero = ExactScalar.zero()
    one = ExactScalar.one()
    planes = []
    labels = []
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        for k in range(1, r + 1):
            z = root_of_unity(r, k)
            row = [zero, zero, zero, zero]
            row[i] = one
            row[j] = -z
            planes.append(row)
            labels.append(f"H{i + 1}{j + 1}^{k}")
    return planes, labels


def _gen_monomial(r: int, l: int = 3):
    """Hyperplanes x_i = zeta^k x_j over the r-th roots of unity.

    With l = 3 coordinates the result is a geometric Arrangement with
    coefficients in the cyclotomic field; for l > 3 the rank-2 lattice
    is produced directly from the incidence rules (families of r
    hyperplanes per coordinate pair meet in a common flat when r >= 3,
    and x_i = zeta^a x_j, x_j = zeta^b x_m force x_i = zeta^(a+b) x_m).
    """
    if r < 2:
        raise ValidationError("monomial family needs r >= 2")
    if l < 3:
        raise ValidationError("monomial family needs l >= 3")
    if l == 3:
        planes, labels = _monomial_planes(r)
        return Arrangement(flavor="central", hyperplanes=planes, labels=labels)
    return _monomial_lattice(r, l)


def _monomial_lattice(r: int, l: int) -> Lattice2:
    pairs = list(itertools.combinations(range(l), 2))
    family = {p: f for f, p in enumerate(pairs)}

    def idx(i: int, j: int, k: int) -> int:
        # k runs 1..r, matching the geometric labels H_ij^(k)
        return family[(i, j)] * r + (k - 1)

    flats = []
    if r >= 3:
        for f in range(len(pairs)):
            flats.append(tuple(range(f * r, f * r + r)))
    for i, j, m in itertools.combinations(range(l), 3):
        for a in range(1, r + 1):
            for b in range(1, r + 1):
                c = (a + b - 1) % r + 1
                flats.append(
                    tuple(sorted((idx(i, j, a), idx(j, m, b), idx(i, m, c))))
                )
    return Lattice2(r * len(pairs), sorted(flats))


def _gen_full_monomial(r: int, l: int = 3):
    """The monomial hyperplanes together with the coordinate hyperplanes.

    As with the monomial family, l = 3 yields a geometric Arrangement
    and l > 3 the combinatorial rank-2 lattice: each coordinate pair
    {x_i, x_j} joins its whole monomial family in one flat of size r+2.
    """
    if r < 2:
        raise ValidationError("full_monomial family needs r >= 2")
    if l < 3:
        raise ValidationError("full_monomial family needs l >= 3")
    if l == 3:
        zero = ExactScalar.zero()
        one = ExactScalar.one()
        planes = []
        labels = []
        for i in range(3):
            row = [zero] * 4
            row[i] = one
            planes.append(row)
            labels.append(f"H{i + 1}")
        extra, extra_labels = _monomial_planes(r)
        return Arrangement(
            flavor="central",
            hyperplanes=planes + extra,
            labels=labels + extra_labels,
        )
    return _full_monomial_lattice(r, l)


def _full_monomial_lattice(r: int, l: int) -> Lattice2:
    pairs = list(itertools.combinations(range(l), 2))
    family = {p: f for f, p in enumerate(pairs)}

    def idx(i: int, j: int, k: int) -> int:
        return l + family[(i, j)] * r + (k - 1)

    flats = []
    for (i, j), f in family.items():
        members = (i, j) + tuple(idx(i, j, k) for k in range(1, r + 1))
        flats.append(tuple(sorted(members)))
    for i, j, m in itertools.combinations(range(l), 3):
        for a in range(1, r + 1):
            for b in range(1, r + 1):
                c = (a + b - 1) % r + 1
                flats.append(
                    tuple(sorted((idx(i, j, a), idx(j, m, b), idx(i, m, c))))
                )
    return Lattice2(l + r * len(pairs), sorted(flats))


def _gen_hessian() -> Arrangement:
    """Twelve planes: the coordinate triangle and the grid x + w^a y + w^b z."""
    zero = ExactScalar.zero()
    one = ExactScalar.one()
    planes = []
    labels = []
    for i, name in enumerate(("x", "y", "z")):
        row = [zero] * 4
        row[i] = one
        planes.append(row)
        labels.append(name)
    for a in range(3):
        for b in range(3):
            planes.append([one, root_of_unity(3, a), root_of_unity(3, b), zero])
            labels.append(f"H({a},{b})")
    return Arrangement(flavor="central", hyperplanes=planes, labels=labels)


def _gen_diamond() -> Arrangement:
    """Seven planes in C^3 whose deleted lattice carries three essential tori.

    The listing order fixes the labels used by all stored results: the
    coordinate planes sit at positions 2, 3, and 6.
    """
    rows = [
        [1, 1, 1, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [1, -1, -1, 0],
        [1, -1, 1, 0],
        [1, 0, 0, 0],
        [1, 1, -1, 0],
    ]
    return Arrangement(
        flavor="central",
        hyperplanes=[[_scalar(v) for v in row] for row in rows],
    )


def _gen_pencil(n: int) -> Lattice2:
    """n lines through one point: a single rank-2 flat of full multiplicity."""
    if n < 3:
        raise ValidationError("pencil needs n >= 3")
    return Lattice2(n, [tuple(range(n))])


def _gen_generic(n: int) -> Lattice2:
    """n lines in general position: every pair is a double point."""
    if n < 1:
        raise ValidationError("generic needs n >= 1")
    return Lattice2(n, [])


def _gen_falk_pair() -> tuple[Lattice2, Lattice2]:
    """Two 7-line lattices with the same local counts, different structure."""
    first = Lattice2(7, [(0, 1, 2), (0, 3, 4), (2, 4, 5), (3, 5, 6)])
    second = Lattice2(7, [(0, 1, 2), (0, 3, 4), (2, 4, 5), (0, 5, 6)])
    return first, second
