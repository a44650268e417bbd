"""Components of the degree-1 resonance and characteristic varieties.

The degree-1 resonance variety of an arrangement is a finite union of
linear subspaces of the weight space.  Each rank-2 flat of multiplicity
three or more contributes a local component: weights supported on the
flat that sum to zero.  The remaining components come from neighborly
partitions of subarrangements: a partition of a support set is neighborly
when every block that contains all but one hyperplane of a flat of the
restricted lattice contains the whole flat.  The candidate subspace of a
neighborly partition is cut out by the total sum and by the sums over the
polychrome flats (those meeting several blocks); it is kept when it has
dimension at least two and the pairing form vanishes on it.  The pairing
form is vector-valued: one alternating coordinate per pair of hyperplanes
sharing a block, each a two-by-two determinant of weight entries, and
every coordinate must vanish identically.  Candidates of dimension at
least two whose form does not vanish are reported separately rather than
silently dropped.

Each component exponentiates to a subtorus of the character torus cut out
by integer monomial equations; those are read off as the saturated
integer kernel of the tangent basis, in Hermite normal form.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Sequence

from .arrangement import Lattice2, ValidationError
from .exactalg import (
    ExactMatrix,
    IntEchelon,
    integer_kernel,
    nullspace,
    primitive_rows,
    rational_rref,
)
from .osres import ResonanceSampler


class CapExceeded(Exception):
    """The arrangement is larger than the enumeration size cap allows."""


DEFAULT_CAP = 14


# ---------------------------------------------------------------------------
# component objects
# ---------------------------------------------------------------------------


def saturated_span(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Hermite-normal-form basis of the saturation of the row span.

    The saturation is the set of all integer vectors lying in the
    rational span of the rows; its Hermite normal form is a canonical
    basis, so two inputs spanning the same rational subspace produce
    identical output.  Taking the integer kernel twice computes exactly
    that: the kernel of the kernel of a lattice is its saturation.
    """
    return integer_kernel(integer_kernel([list(r) for r in rows], ncols), ncols)


@dataclass(frozen=True)
class Component:
    """One irreducible piece of the degree-1 resonance variety.

    `basis` spans the tangent subspace, stored as the Hermite normal
    form of its saturated integer lattice so equal subspaces have equal
    bases.  `support` lists the hyperplanes with nonzero weight somewhere
    on the component.  For a nonlocal component `blocks` records the
    neighborly partition that produced it; local components carry the
    empty tuple.  `verified` is set once the component has passed the
    sampling check that random points of its span are resonant.
    """

    kind: str  # "local" or "nonlocal"
    support: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]
    verified: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    def torus_equations(self) -> list[list[int]]:
        """Integer exponent vectors cutting out the exponentiated subtorus.

        Each row u is the equation: product of t_i^(u_i) equals 1.  The
        rows span the saturated orthogonal lattice of the tangent space,
        so the equations define the connected subtorus itself.
        """
        n = len(self.basis[0]) if self.basis else 0
        return integer_kernel([list(row) for row in self.basis], n)

    def contains_weight(self, lam: Sequence) -> bool:
        """Whether a rational weight vector lies in the tangent subspace."""
        target = [Fraction(v) for v in lam]
        rows = [[Fraction(v) for v in row] for row in self.basis]
        _, reduced = rational_rref(rows + [target], len(target))
        return len(reduced) == len(self.basis)

    def contains_point(self, point: Sequence) -> bool:
        """Whether a character-torus point satisfies every torus equation.

        Coordinates may be exact scalars, rationals, or ints; they must be
        invertible (nonzero).
        """
        from .exactalg import ExactScalar

        coords = [
            v if isinstance(v, ExactScalar) else ExactScalar.from_rational(Fraction(v))
            for v in point
        ]
        one = ExactScalar.one()
        for eq in self.torus_equations():
            acc = ExactScalar.one()
            for c, e in zip(coords, eq):
                if e:
                    acc = acc * c**e
            if acc != one:
                return False
        return True

    def to_json(self) -> dict:
        """Spec-shaped dictionary; hyperplanes are numbered from 1.

        `linear_equations` are integer rows w meaning w . lambda = 0 on
        the tangent subspace; the same exponent rows, read as monomials,
        cut out the exponentiated subtorus and appear formatted in
        `monomial_equations`.  `partition` is present only for nonlocal
        components.  Unverified nonlocal candidates additionally report
        the same-block pairs whose determinant coordinate obstructed the
        pairing form from vanishing.
        """
        eqs = self.torus_equations()
        data = {
            "kind": self.kind,
            "support": [i + 1 for i in self.support],
            "dimension": self.dim,
            "linear_equations": eqs,
            "monomial_equations": [format_torus_equation(eq) for eq in eqs],
            "verified": self.verified,
        }
        if self.kind == "nonlocal":
            data["partition"] = [[i + 1 for i in block] for block in self.blocks]
            if not self.verified and self.blocks:
                data["nonvanishing_pairs"] = [
                    [i + 1, j + 1]
                    for i, j in nonvanishing_block_pairs(self.blocks, self.basis)
                ]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "Component":
        eqs = [list(row) for row in data["linear_equations"]]
        if not eqs:
            raise ValidationError(
                "component JSON needs at least one linear equation"
            )
        n = len(eqs[0])
        blocks = tuple(
            tuple(sorted(i - 1 for i in block))
            for block in data.get("partition", [])
        )
        return cls(
            kind=data["kind"],
            support=tuple(sorted(i - 1 for i in data["support"])),
            blocks=blocks,
            basis=tuple(tuple(row) for row in integer_kernel(eqs, n)),
            verified=bool(data["verified"]),
        )


@dataclass
class Resonance1:
    """Everything the depth-1 enumeration finds on one lattice.

    `flagged` holds nonlocal candidates of dimension at least two whose
    pairing form did not vanish; they are reported, never counted."""

    locals: list[Component]
    nonlocals: list[Component]
    flagged: list[Component]

    @property
    def components(self) -> list[Component]:
        return self.locals + self.nonlocals


# ---------------------------------------------------------------------------
# coning an affine lattice
# ---------------------------------------------------------------------------


def cone_lattice(lat: Lattice2) -> Lattice2:
    """Central lattice of the cone: one extra hyperplane at index n.

    Multiple points keep their flats; each parallel class becomes a flat
    through the new hyperplane.  The result has no parallel pairs, so the
    component enumeration applies to it.
    """
    n = lat.n
    flats = [tuple(f) for f in lat.flats]
    for cls in _parallel_classes(lat):
        flats.append(tuple(sorted(cls)) + (n,))
    return Lattice2(n + 1, flats)


def _parallel_classes(lat: Lattice2) -> list[list[int]]:
    parent = list(range(lat.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in lat.parallel_pairs:
        parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(lat.n):
        groups.setdefault(find(i), []).append(i)
    return [g for g in groups.values() if len(g) >= 2]


# ---------------------------------------------------------------------------
# local components
# ---------------------------------------------------------------------------


def local_components(lat: Lattice2) -> list[Component]:
    """One component per rank-2 flat of multiplicity at least three:
    weights supported on the flat summing to zero."""
    out = []
    for flat in sorted(lat.flats):
        last = flat[-1]
        rows = []
        for i in flat[:-1]:
            row = [0] * lat.n
            row[i] = 1
            row[last] = -1
            rows.append(row)
        out.append(
            Component(
                kind="local",
                support=tuple(flat),
                blocks=(),
                basis=tuple(tuple(r) for r in saturated_span(rows, lat.n)),
            )
        )
    return out


# ---------------------------------------------------------------------------
# neighborly partitions
# ---------------------------------------------------------------------------


def neighborly_partitions(
    lat: Lattice2, support: Sequence[int]
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All neighborly partitions of the support with at least three blocks.

    Hyperplanes joined by a double point of the restricted lattice are
    forced into a common block, so the search runs over the resulting
    atoms.  Partial assignments are pruned as soon as some flat has all
    but one of its members in one block and a member in another.
    Partitions are yielded as sorted blocks of original indices.
    """
    support = tuple(sorted(support))
    sub = lat.restrict(support)
    atoms = _double_atoms(sub)
    if len(atoms) < 3:
        return
    flats = [set(f) for f in sub.flats]
    atom_flats: list[list[int]] = []
    for atom in atoms:
        touched = [fi for fi, f in enumerate(flats) if f & set(atom)]
        atom_flats.append(touched)
    blocks: list[set[int]] = []

    def violated(fi: int) -> bool:
        f = flats[fi]
        size = len(f)
        counts = [len(f & b) for b in blocks]
        placed = sum(counts)
        for c in counts:
            if c >= size - 1 and placed > c:
                return True
        return False

    def extend(k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if k == len(atoms):
            if len(blocks) >= 3:
                yield tuple(
                    tuple(sorted(support[i] for i in b)) for b in blocks
                )
            return
        atom = set(atoms[k])
        for b in range(len(blocks) + 1):
            fresh = b == len(blocks)
            if fresh:
                blocks.append(set(atom))
            else:
                blocks[b] |= atom
            if not any(violated(fi) for fi in atom_flats[k]):
                yield from extend(k + 1)
            if fresh:
                blocks.pop()
            else:
                blocks[b] -= atom

    yield from extend(0)


def _double_atoms(sub: Lattice2) -> list[list[int]]:
    parent = list(range(sub.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in sub.doubles():
        parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(sub.n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def partition_tangent_space(
    lat: Lattice2, blocks: Sequence[Sequence[int]]
) -> list[list[int]]:
    """Tangent subspace of a neighborly partition, as canonical basis rows
    (Hermite normal form of the saturated integer lattice of the span).

    The support is the union of the blocks.  Constraints: zero off the
    support, total sum zero, and sum zero over every polychrome flat of
    the restricted lattice.  Raises if the partition is not neighborly.
    """
    support = tuple(sorted(set(itertools.chain.from_iterable(blocks))))
    if len(support) != sum(len(b) for b in blocks):
        raise ValidationError("blocks must be disjoint")
    sub = lat.restrict(support)
    pos = {h: i for i, h in enumerate(support)}
    block_sets = [set(pos[h] for h in b) for b in blocks]
    classes = [set(f) for f in sub.flats] + [set(d) for d in sub.doubles()]
    constraints = [[Fraction(1)] * len(support)]
    for cls in classes:
        counts = [len(cls & b) for b in block_sets]
        size = len(cls)
        if max(counts) == size:
            continue  # monochrome flat imposes nothing
        if any(c >= size - 1 for c in counts):
            raise ValidationError("partition is not neighborly for this lattice")
        row = [Fraction(0)] * len(support)
        for i in cls:
            row[i] = Fraction(1)
        constraints.append(row)
    kernel = nullspace(
        ExactMatrix.from_rational_rows(constraints, ncols=len(support))
    )
    rational = [[v.as_rational() for v in vec] for vec in kernel]
    _, reduced = rational_rref(rational, len(support))
    rows = primitive_rows(reduced)
    embedded = []
    for row in rows:
        full = [0] * lat.n
        for i, h in enumerate(support):
            full[h] = row[i]
        embedded.append(full)
    return saturated_span(embedded, lat.n)


def nonvanishing_block_pairs(
    blocks: Sequence[Sequence[int]], basis: Sequence[Sequence[int]]
) -> list[tuple[int, int]]:
    """Same-block hyperplane pairs whose determinant does not vanish.

    The pairing of two weight vectors u, v is vector-valued: one
    coordinate per pair {i, j} lying in a common block, holding the
    two-by-two determinant u_i v_j - u_j v_i.  Each coordinate is an
    alternating bilinear form, so it vanishes on the whole subspace
    exactly when it vanishes on every pair of basis vectors.  Returns
    the sorted pairs {i, j} whose determinant coordinate is nonzero at
    some basis pair.
    """
    bad: set[tuple[int, int]] = set()
    for block in blocks:
        for i, j in itertools.combinations(sorted(block), 2):
            for u, v in itertools.combinations(basis, 2):
                if u[i] * v[j] - u[j] * v[i] != 0:
                    bad.add((i, j))
                    break
    return sorted(bad)


def pairing_form_vanishes(
    blocks: Sequence[Sequence[int]], basis: Sequence[Sequence[int]]
) -> bool:
    """Whether every same-block determinant coordinate of the pairing
    form vanishes identically on the subspace spanned by the basis."""
    for block in blocks:
        for i, j in itertools.combinations(sorted(block), 2):
            for u, v in itertools.combinations(basis, 2):
                if u[i] * v[j] - u[j] * v[i] != 0:
                    return False
    return True


# ---------------------------------------------------------------------------
# full enumeration
# ---------------------------------------------------------------------------


def enumerate_first_resonance(
    lat: Lattice2, cap: int = DEFAULT_CAP
) -> Resonance1:
    """All components of the depth-1 resonance variety of a central lattice.

    Local components come from the flats; nonlocal ones from neighborly
    partitions over every support of size at least three.  Subspaces
    contained in strictly larger ones are dropped, duplicates are merged,
    and every surviving component is verified to be resonant at several
    seeded random rational points of its span.  Candidates whose pairing
    form does not vanish are returned in `flagged` (unless contained in a
    verified component) and never counted as components.
    """
    if lat.parallel_pairs:
        raise ValidationError(
            "component enumeration needs a central lattice; cone the "
            "arrangement first (see cone_lattice)"
        )
    if lat.n > cap:
        raise CapExceeded(
            f"arrangement has {lat.n} hyperplanes, enumeration cap is {cap}"
        )
    n = lat.n
    locals_ = local_components(lat)
    seen: dict[tuple, Component] = {}
    for comp in locals_:
        seen[comp.basis] = comp
    flagged_raw: list[Component] = []
    for size in range(3, n + 1):
        for support in itertools.combinations(range(n), size):
            sub = lat.restrict(support)
            if len(sub.flats) == 1 and len(sub.flats[0]) == size:
                # the support is a pencil: every admitted partition spans
                # the local subspace of the surrounding flat
                continue
            for blocks in neighborly_partitions(lat, support):
                blocks = tuple(sorted(blocks))
                basis_rows = partition_tangent_space(lat, blocks)
                if len(basis_rows) < 2:
                    continue
                key = tuple(tuple(r) for r in basis_rows)
                if pairing_form_vanishes(blocks, basis_rows):
                    if key not in seen:
                        seen[key] = Component(
                            kind="nonlocal",
                            support=support,
                            blocks=blocks,
                            basis=key,
                        )
                else:
                    flagged_raw.append(
                        Component(
                            kind="nonlocal",
                            support=support,
                            blocks=blocks,
                            basis=key,
                        )
                    )
    survivors = _verify_components(lat, _drop_contained(list(seen.values())))
    locals_out = [c for c in survivors if c.kind == "local"]
    nonlocals_out = sorted(
        (c for c in survivors if c.kind == "nonlocal"),
        key=lambda c: (c.support, c.blocks),
    )
    flagged_out = _filter_flagged(flagged_raw, survivors)
    return Resonance1(
        locals=locals_out, nonlocals=nonlocals_out, flagged=flagged_out
    )


def _span_echelon(comp: Component, n: int) -> IntEchelon:
    ech = IntEchelon(n)
    ech.add_rows([list(r) for r in comp.basis])
    return ech


def _is_subspace(comp: Component, ech: IntEchelon) -> bool:
    probe = ech.clone()
    return probe.add_rows([list(r) for r in comp.basis]) == 0


def _drop_contained(components: list[Component]) -> list[Component]:
    keep = []
    echelons = {id(c): None for c in components}
    n = len(components[0].basis[0]) if components else 0
    for c in components:
        contained = False
        for d in components:
            if c is d or c.dim > d.dim:
                continue
            if c.dim == d.dim and c.basis == d.basis:
                continue
            if echelons[id(d)] is None:
                echelons[id(d)] = _span_echelon(d, n)
            if _is_subspace(c, echelons[id(d)]):
                contained = True
                break
        if not contained:
            keep.append(c)
    return keep


def _filter_flagged(
    flagged: list[Component], survivors: list[Component]
) -> list[Component]:
    if not flagged:
        return []
    n = len(flagged[0].basis[0])
    echelons = [_span_echelon(c, n) for c in survivors]
    out = []
    seen_keys = set()
    for cand in flagged:
        if cand.basis in seen_keys:
            continue
        if any(_is_subspace(cand, ech) for ech in echelons):
            continue
        seen_keys.add(cand.basis)
        out.append(cand)
    return out


VERIFY_SAMPLES = 5


def _verify_components(
    lat: Lattice2, components: list[Component]
) -> list[Component]:
    """Check each component at seeded random points of its span; returns
    copies marked verified.  Raises if any sampled point is not resonant,
    since the enumeration must never emit a wrong component."""
    if not components:
        return []
    rng = random.Random(9181)
    sampler = ResonanceSampler(lat)
    out = []
    for comp in components:
        for _ in range(VERIFY_SAMPLES):
            coeffs = []
            while not any(coeffs):
                coeffs = [rng.randint(-9, 9) for _ in comp.basis]
            point = [0] * lat.n
            for c, row in zip(coeffs, comp.basis):
                point = [a + c * b for a, b in zip(point, row)]
            if not sampler.in_resonance_at(point, k=1):
                raise RuntimeError(
                    "internal error: enumerated component failed the "
                    f"resonance check (kind={comp.kind}, "
                    f"support={comp.support})"
                )
        out.append(replace(comp, verified=True))
    return out


# ---------------------------------------------------------------------------
# serialization of a full result
# ---------------------------------------------------------------------------


def product_components(
    comps1: Sequence[Component],
    n1: int,
    comps2: Sequence[Component],
    n2: int,
    k: int = 1,
) -> list[Component]:
    """Depth-k components of a product of two spaces, given each factor's.

    The depth-k locus of a product is the union of each factor's locus
    with the other factor pinned at the identity character, so every input
    component is embedded in the n1 + n2 coordinates by zero-padding its
    tangent basis on the complementary block (equivalently, adding the
    identity constraints t_j = 1 there).  `k` is the depth the input lists
    describe; it does not change the embedding.
    """
    if k < 1:
        raise ValidationError("depth k must be at least 1")
    out = []
    for comps, offset, n in ((comps1, 0, n1), (comps2, n1, n2)):
        for comp in comps:
            if comp.basis and len(comp.basis[0]) != n:
                raise ValidationError(
                    "component arity does not match the declared factor size"
                )
            basis = tuple(
                tuple([0] * offset + list(row) + [0] * (n1 + n2 - offset - n))
                for row in comp.basis
            )
            out.append(
                Component(
                    kind=comp.kind,
                    support=tuple(i + offset for i in comp.support),
                    blocks=tuple(tuple(i + offset for i in b) for b in comp.blocks),
                    basis=basis,
                    verified=comp.verified,
                )
            )
    return out


def resonance_to_json(result: Resonance1) -> dict:
    return {
        "components": [c.to_json() for c in result.components],
        "flagged": [c.to_json() for c in result.flagged],
    }


def resonance_from_json(data: dict) -> Resonance1:
    comps = [Component.from_json(c) for c in data["components"]]
    return Resonance1(
        locals=[c for c in comps if c.kind == "local"],
        nonlocals=[c for c in comps if c.kind == "nonlocal"],
        flagged=[Component.from_json(c) for c in data["flagged"]],
    )


def format_torus_equation(eq: Sequence[int]) -> str:
    """Monomial equation as compact text, e.g. 't1*t2*t5=1' or 't1*t4^-1=1'."""
    parts = []
    for i, e in enumerate(eq):
        if e == 0:
            continue
        if e == 1:
            parts.append(f"t{i + 1}")
        else:
            parts.append(f"t{i + 1}^{e}")
    if not parts:
        return "1=1"
    return "*".join(parts) + "=1"
