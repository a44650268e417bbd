"""Command-line front end for the arrangement invariants in this package.

Subcommands
-----------
``gen``         build a named example family and print its JSON description
``lattice``     extract rank-2 intersection data from an arrangement file
``components``  enumerate depth-1 components with a census summary
``member``      exact depth-k membership of a single point
``report``      consolidated self-check over the bundled example families

Input files are JSON and are recognised by their keys: ``generators``
marks braid-monodromy data, ``hyperplanes`` marks coordinate arrangements,
``flats`` marks bare rank-2 lattices, and ``pair`` marks a two-lattice
bundle.  The prefix ``fixture:`` in place of a path loads a packaged
monodromy fixture by name (for example ``fixture:diamond_monodromy``).

Exit codes: 0 success, 1 failed report check, 2 validation error,
3 enumeration cap exceeded.  All output is deterministic for a fixed
``--seed``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .alexander import (
    MonodromyInput,
    fitting_generators,
    grid_monodromy,
    in_charvar,
    in_charvar_central,
    lift_point,
    load_monodromy,
    pencil_monodromy,
    phi_one_rank,
    presentation_rank,
    relator_rank,
    relator_route_limit,
    resolution_differential,
)
from .arrangement import (
    Arrangement,
    Lattice2,
    ValidationError,
    b2,
    gen_family,
    lattice_from_affine,
    lattice_from_central3,
)
from .components import (
    DEFAULT_CAP,
    CapExceeded,
    Component,
    Resonance1,
    cone_lattice,
    enumerate_first_resonance,
    format_torus_equation,
    resonance_to_json,
)
from .exactalg import ExactScalar, LaurentPoly
from .osres import in_resonance, resonance_rank, resonance_rank_os


# ---------------------------------------------------------------------------
# run configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: which command runs on which files, and the
    knobs every command shares.  A fixed seed makes the output byte-identical
    across runs."""

    command: str
    inputs: tuple[str, ...] = ()
    output: str | None = None
    k: int = 1
    cap: int | None = None
    samples: int = 5
    seed: int = 0
    format: str = "json"

    def rng(self, label: str) -> random.Random:
        """Independent deterministic stream per named use site."""
        return random.Random(f"{self.seed}:{label}")


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# input loading and point parsing
# ---------------------------------------------------------------------------


def _load_input(path: str):
    """Read a JSON input and classify it.

    Returns one of ("monodromy", MonodromyInput), ("arrangement",
    Arrangement), ("lattice", Lattice2), or ("pair", (Lattice2, Lattice2)).
    """
    if path.startswith("fixture:"):
        return "monodromy", load_monodromy(path[len("fixture:"):])
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValidationError(f"{path}: expected a JSON object at the top level")
    if "generators" in obj:
        return "monodromy", MonodromyInput.from_json(obj)
    if "hyperplanes" in obj:
        return "arrangement", Arrangement.from_json(obj)
    if "pair" in obj:
        pair = obj["pair"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValidationError(f"{path}: 'pair' must hold exactly two lattices")
        return "pair", tuple(Lattice2.from_json(p) for p in pair)
    if "flats" in obj:
        return "lattice", Lattice2.from_json(obj)
    raise ValidationError(
        f"{path}: unrecognised input; expected one of the keys "
        "'generators', 'hyperplanes', 'flats', or 'pair'"
    )


def _arrangement_lattice(arr: Arrangement) -> Lattice2:
    if arr.flavor == "central":
        return lattice_from_central3(arr)
    return lattice_from_affine(arr)


def _as_lattice(kind: str, value) -> Lattice2:
    if kind == "lattice":
        return value
    if kind == "arrangement":
        return _arrangement_lattice(value)
    if kind == "monodromy":
        return value.lattice()
    raise ValidationError("this command needs a single arrangement or lattice")


def _parse_point(text: str) -> list[ExactScalar]:
    """Parse a point given as a JSON array or a comma-separated list.

    Each coordinate may be an integer, a rational string like ``-3/2``, or
    (in the JSON form) a cyclotomic scalar object with ``order``/``coeffs``.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            entries = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"point is not valid JSON: {exc}") from exc
        if not isinstance(entries, list):
            raise ValidationError("a JSON point must be an array")
    else:
        entries = [tok.strip() for tok in stripped.split(",") if tok.strip()]
    if not entries:
        raise ValidationError("the point has no coordinates")
    coords = []
    for entry in entries:
        try:
            coords.append(ExactScalar.from_json(entry))
        except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad coordinate {entry!r}: {exc}") from exc
    return coords


def _rational_weights(coords: Sequence[ExactScalar]) -> list[Fraction]:
    out = []
    for c in coords:
        if c.order != 1:
            raise ValidationError(
                "weight vectors on a lattice input must have rational entries"
            )
        out.append(c.coeffs[0])
    return out


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------


def _arrangement_text(arr: Arrangement) -> str:
    lines = [f"{arr.flavor} arrangement: {arr.n} hyperplanes in dimension {arr.dim}"]
    for label, row in zip(arr.labels, arr.hyperplanes):
        coeffs = " ".join(str(v) for v in row)
        lines.append(f"  {label}: [{coeffs}]")
    return "\n".join(lines)


def _lattice_text(lat: Lattice2) -> str:
    lines = [
        f"lattice: {lat.n} hyperplanes, "
        f"{len(lat.flats)} flats of multiplicity >= 3, "
        f"{len(lat.parallel_pairs)} parallel pairs"
    ]
    for f in lat.flats:
        lines.append("  flat {" + ",".join(str(i + 1) for i in f) + "}")
    for i, j in lat.parallel_pairs:
        lines.append(f"  parallel {i + 1} {j + 1}")
    return "\n".join(lines)


def _census(res: Resonance1, n: int) -> dict:
    by_dim: dict[int, dict[str, int]] = {}
    for comp in res.components:
        row = by_dim.setdefault(comp.dim, {"count": 0, "local": 0, "nonlocal": 0})
        row["count"] += 1
        row[comp.kind] += 1
    essential = sum(1 for comp in res.components if len(comp.support) == n)
    return {
        "total": len(res.components),
        "by_dim": [
            {"dim": d, **by_dim[d]} for d in sorted(by_dim, reverse=True)
        ],
        "essential": essential,
        "flagged": len(res.flagged),
    }


def _census_line(census: dict) -> str:
    noun = "component" if census["total"] == 1 else "components"
    parts = [f"{census['total']} {noun}"]
    for row in census["by_dim"]:
        parts.append(
            f"dim {row['dim']}: {row['count']} "
            f"(local {row['local']}, nonlocal {row['nonlocal']})"
        )
    return ", ".join(parts)


def _component_line(comp: Component) -> str:
    supp = "{" + ",".join(str(i + 1) for i in comp.support) + "}"
    line = f"{comp.kind} dim {comp.dim} support {supp}"
    eqs = comp.torus_equations()
    if eqs:
        line += "  " + "; ".join(format_torus_equation(eq) for eq in eqs)
    return line


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


_FAMILY_PARAMS = {
    "braid": ("l",),
    "monomial": ("r", "l"),
    "full_monomial": ("r", "l"),
    "hessian": (),
    "diamond": (),
    "pencil": ("n",),
    "generic": ("n",),
    "falk_pair": (),
}


def _family_kwargs(args) -> dict:
    family = args.family
    if family not in _FAMILY_PARAMS:
        raise ValidationError(
            f"unknown family {family!r}; expected one of {sorted(_FAMILY_PARAMS)}"
        )
    allowed = _FAMILY_PARAMS[family]
    for flag in ("r", "l", "n"):
        if getattr(args, flag) is not None and flag not in allowed:
            raise ValidationError(f"family {family!r} does not take --{flag}")
    kwargs = {}
    if family == "braid":
        if args.l is None:
            raise ValidationError("family 'braid' requires --l (number of points)")
        kwargs["ell"] = args.l
    elif family in ("monomial", "full_monomial"):
        if args.r is None:
            raise ValidationError(f"family {family!r} requires --r")
        kwargs["r"] = args.r
        kwargs["l"] = 3 if args.l is None else args.l
    elif family in ("pencil", "generic"):
        if args.n is None:
            raise ValidationError(f"family {family!r} requires --n")
        kwargs["n"] = args.n
    return kwargs


def _family_json(obj) -> dict:
    if isinstance(obj, tuple):
        return {"pair": [part.to_json() for part in obj]}
    return obj.to_json()


def _family_text(obj) -> str:
    if isinstance(obj, tuple):
        blocks = []
        for tag, part in zip("AB", obj):
            blocks.append(f"[{tag}] " + _lattice_text(part))
        return "\n".join(blocks)
    if isinstance(obj, Arrangement):
        return _arrangement_text(obj)
    return _lattice_text(obj)


def cmd_gen(cfg: RunConfig, args) -> int:
    obj = gen_family(args.family, **_family_kwargs(args))
    if cfg.format == "text":
        _emit(cfg, _family_text(obj))
    else:
        _emit(cfg, _json_text(_family_json(obj)))
    return 0


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------


def cmd_lattice(cfg: RunConfig, args) -> int:
    kind, value = _load_input(cfg.inputs[0])
    if kind == "pair":
        if cfg.format == "text":
            _emit(cfg, _family_text(value))
        else:
            _emit(cfg, _json_text({"pair": [part.to_json() for part in value]}))
        return 0
    lat = _as_lattice(kind, value)
    if cfg.format == "text":
        _emit(cfg, _lattice_text(lat))
    else:
        _emit(cfg, _json_text(lat.to_json()))
    return 0


# ---------------------------------------------------------------------------
# components
# ---------------------------------------------------------------------------


def _enumerate_with_cone(lat: Lattice2, cap: int) -> tuple[Resonance1, Lattice2, bool]:
    coned = bool(lat.parallel_pairs)
    if coned:
        lat = cone_lattice(lat)
    return enumerate_first_resonance(lat, cap=cap), lat, coned


def _components_payload(lat: Lattice2, cap: int) -> dict:
    res, lat, coned = _enumerate_with_cone(lat, cap)
    payload = {
        "n": lat.n,
        "coned": coned,
        "census": _census(res, lat.n),
    }
    payload.update(resonance_to_json(res))
    return payload


def _components_text(payload: dict) -> list[str]:
    lines = []
    if payload["coned"]:
        lines.append(
            f"note: affine input; added the line at infinity as "
            f"hyperplane {payload['n']} before enumeration"
        )
    census = payload["census"]
    lines.append(_census_line(census))
    if census["essential"]:
        lines.append(f"essential: {census['essential']}")
    if census["flagged"]:
        lines.append(f"flagged (pairing form does not vanish): {census['flagged']}")
    for comp in payload["components"]:
        lines.append(_component_line(Component.from_json(comp)))
    return lines


def cmd_components(cfg: RunConfig, args) -> int:
    if cfg.k != 1:
        raise ValidationError(
            "component enumeration is only available at depth k = 1; use "
            "'charvar member' to test depth-k membership of specific points"
        )
    kind, value = _load_input(cfg.inputs[0])
    cap = DEFAULT_CAP if cfg.cap is None else cfg.cap
    if kind == "pair":
        payloads = [_components_payload(lat, cap) for lat in value]
        if cfg.format == "text":
            lines = []
            for tag, payload in zip("AB", payloads):
                lines.extend(f"[{tag}] {line}" for line in _components_text(payload))
            _emit(cfg, "\n".join(lines))
        else:
            _emit(cfg, _json_text({"pair": payloads}))
        return 0
    payload = _components_payload(_as_lattice(kind, value), cap)
    if cfg.format == "text":
        _emit(cfg, "\n".join(_components_text(payload)))
    else:
        _emit(cfg, _json_text(payload))
    return 0


# ---------------------------------------------------------------------------
# member
# ---------------------------------------------------------------------------


def _member_monodromy(m: MonodromyInput, coords: list[ExactScalar], k: int) -> dict:
    lifted = False
    if len(coords) == m.n:
        point = coords
    elif m.lift is not None and len(coords) == len(m.lift["strand_to_central"]) + 1:
        point = lift_point(m.lift, coords)
        lifted = True
    else:
        expect = str(m.n)
        if m.lift is not None:
            expect += f" or {len(m.lift['strand_to_central']) + 1}"
        raise ValidationError(
            f"point has {len(coords)} coordinates; this input takes {expect}"
        )
    ncols = m.n * (m.n - 1) // 2
    rank = presentation_rank(m, point)
    delta = rank <= ncols - k
    limit = relator_route_limit(m)
    partial2 = None
    if k <= limit:
        partial2 = relator_rank(m, point) <= m.n - k - 1
    criteria = {"delta": delta, "partial2": partial2}
    consistent = partial2 is None or partial2 == delta
    return {
        "in_Vk": delta,
        "rank": rank,
        "k": k,
        "route": "alexander",
        "lifted": lifted,
        "criteria": criteria,
        "consistent": consistent,
    }


def _member_lattice(lat: Lattice2, coords: list[ExactScalar], k: int) -> dict:
    lam = _rational_weights(coords)
    if len(lam) != lat.n:
        raise ValidationError(
            f"point has {len(lam)} coordinates; this lattice has {lat.n} hyperplanes"
        )
    rank = resonance_rank(lat, lam)
    verdict = in_resonance(lat, lam, k)
    return {
        "in_Vk": verdict,
        "rank": rank,
        "k": k,
        "route": "resonance",
        "criteria": {"delta": None, "partial2": None, "resonance": verdict},
        "consistent": True,
    }


def _member_text(verdict: dict) -> str:
    lines = [
        f"in V_{verdict['k']}: {'yes' if verdict['in_Vk'] else 'no'}",
        f"rank: {verdict['rank']}",
        f"route: {verdict['route']}",
    ]
    for name, value in verdict["criteria"].items():
        shown = "n/a" if value is None else ("yes" if value else "no")
        lines.append(f"criterion {name}: {shown}")
    lines.append(f"consistent: {'yes' if verdict['consistent'] else 'no'}")
    return "\n".join(lines)


def cmd_member(cfg: RunConfig, args) -> int:
    if cfg.k < 1:
        raise ValidationError("depth k must be at least 1")
    kind, value = _load_input(cfg.inputs[0])
    coords = _parse_point(args.point)
    if kind == "monodromy":
        verdict = _member_monodromy(value, coords, cfg.k)
    elif kind == "pair":
        raise ValidationError(
            "member needs a single input; split the pair file first"
        )
    else:
        verdict = _member_lattice(_as_lattice(kind, value), coords, cfg.k)
    if cfg.format == "text":
        _emit(cfg, _member_text(verdict))
    else:
        _emit(cfg, _json_text(verdict))
    return 0


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _fixture_lattice(name: str, **kw) -> Lattice2:
    obj = gen_family(name, **kw)
    if isinstance(obj, Lattice2):
        return obj
    return _arrangement_lattice(obj)


def _check_census(lat, total, by_dim, essential=None):
    """by_dim maps dim -> (local, nonlocal)."""
    res = enumerate_first_resonance(lat, cap=20)
    census = _census(res, lat.n)
    got_by_dim = {
        row["dim"]: (row["local"], row["nonlocal"]) for row in census["by_dim"]
    }
    ok = census["total"] == total and got_by_dim == by_dim and not census["flagged"]
    if essential is not None:
        ok = ok and census["essential"] == essential
    ok = ok and all(comp.verified for comp in res.components)
    return ok, _census_line(census)


def _random_fraction(rng: random.Random) -> Fraction:
    value = Fraction(rng.randint(2, 9), rng.randint(2, 9))
    return value if value != 1 else value + 1


def _component_point(comp: Component, rng: random.Random) -> list[Fraction]:
    params = [_random_fraction(rng) for _ in comp.basis]
    n = len(comp.basis[0])
    point = []
    for i in range(n):
        value = Fraction(1)
        for row, u in zip(comp.basis, params):
            value *= u ** row[i]
        point.append(value)
    return point


def _off_component_point(
    components, n: int, rng: random.Random
) -> list[Fraction]:
    while True:
        exps = [[rng.randint(-3, 3) for _ in range(n - 1)] for _ in range(2)]
        for row in exps:
            row.append(-sum(row))
        point = [
            Fraction(2) ** exps[0][i] * Fraction(3) ** exps[1][i] for i in range(n)
        ]
        if not any(comp.contains_point(point) for comp in components):
            return point


def _check_diamond_membership(cfg: RunConfig):
    m = load_monodromy("diamond_monodromy")
    central = lattice_from_central3(gen_family("diamond"))
    res = enumerate_first_resonance(central)
    torsion = [-1, 1, 1, -1, -1, 1, -1]
    checks = []
    checks.append(in_charvar_central(m, torsion, 2))
    ones = [Fraction(1)] * m.n
    checks.append(in_charvar(m, ones, 1))
    rng = cfg.rng("diamond-membership")
    for comp in res.nonlocals:
        for _ in range(cfg.samples):
            point = _component_point(comp, rng)
            checks.append(in_charvar_central(m, point, 1))
            checks.append(not in_charvar_central(m, point, 2))
    for _ in range(cfg.samples):
        point = _off_component_point(res.components, central.n, rng)
        checks.append(not in_charvar_central(m, point, 1))
    ok = all(checks)
    return ok, (
        f"torsion point at depth 2; {cfg.samples} points per non-local torus "
        "at depth 1 only; seeded off-locus points excluded"
    )


def _check_pencil_membership(cfg: RunConfig, n: int):
    m = pencil_monodromy(n)
    rng = cfg.rng(f"pencil-{n}")
    ok = True
    for _ in range(cfg.samples):
        t = [_random_fraction(rng) for _ in range(n - 1)]
        prod = Fraction(1)
        for v in t:
            prod *= v
        on = t + [1 / prod]
        ok = ok and in_charvar(m, on, n - 2)
        off = t + [prod + 1 if prod != -1 else Fraction(7)]
        ok = ok and not in_charvar(m, off, 1)
    return ok, (
        f"{cfg.samples} points with coordinate product 1 at depth {n - 2}; "
        f"{cfg.samples} with product != 1 outside depth 1"
    )


def _check_product_membership():
    m = grid_monodromy(2, 2)
    ones = [Fraction(1)] * 4
    factor = [Fraction(3), Fraction(5), Fraction(1), Fraction(1)]
    mixed = [Fraction(3), Fraction(5), Fraction(7), Fraction(11)]
    ok = (
        presentation_rank(m, ones) == m.b2
        and in_charvar(m, factor, 1)
        and not in_charvar(m, factor, 2)
        and not in_charvar(m, mixed, 1)
    )
    return ok, "product of two free pairs: factor locus at depth 1, mixed points outside"


def _check_identity_rank(fixtures):
    details = []
    ok = True
    for label, lat in fixtures:
        got = phi_one_rank(lat)
        want = b2(lat)
        ok = ok and got == want
        details.append(f"{label}={got}")
    return ok, "rank at the identity equals b2: " + ", ".join(details)


def _check_monodromy_identity_rank():
    items = [
        ("diamond", load_monodromy("diamond_monodromy")),
        ("braid4_affine", load_monodromy("braid4_affine_monodromy")),
        ("pencil(4)", pencil_monodromy(4)),
        ("grid(2,2)", grid_monodromy(2, 2)),
    ]
    details = []
    ok = True
    for label, m in items:
        got = presentation_rank(m, [Fraction(1)] * m.n)
        ok = ok and got == m.b2
        details.append(f"{label}={got}")
    return ok, "presentation rank at the identity equals b2: " + ", ".join(details)


def _check_transpose(cfg: RunConfig, fixtures):
    rng = cfg.rng("transpose")
    ok = True
    for _label, lat in fixtures:
        for _ in range(cfg.samples):
            lam = [rng.randint(-5, 5) for _ in range(lat.n)]
            ok = ok and resonance_rank(lat, lam) == resonance_rank_os(lat, lam)
    return ok, (
        f"{cfg.samples} seeded weights per fixture: stacked rank matches the "
        "multiplication-map rank"
    )


def _check_free_fitting():
    rows = resolution_differential(3, 3)
    got = fitting_generators(rows, 3)
    t = [LaurentPoly.variable(i, 3) for i in range(3)]
    top = len(got) == 3 and all(
        any(g == want or g == -want for g in got)
        for want in (t[0] - 1, t[1] - 1, t[2] - 1)
    )
    lower = fitting_generators(rows, 2) == [] and fitting_generators(rows, 1) == []
    ok = top and lower
    return ok, "free rank 3: top ideal generated by t_i - 1, lower ideals vanish"


def _default_checks(cfg: RunConfig) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    falk_a, falk_b = gen_family("falk_pair")
    bridge_fixtures = [
        ("braid(4)", _fixture_lattice("braid", ell=4)),
        ("braid(5)", _fixture_lattice("braid", ell=5)),
        ("diamond", _fixture_lattice("diamond")),
        ("monomial(2,3)", _fixture_lattice("monomial", r=2, l=3)),
        ("monomial(3,3)", _fixture_lattice("monomial", r=3, l=3)),
        ("hessian", _fixture_lattice("hessian")),
        ("falk A", falk_a),
        ("falk B", falk_b),
        ("pencil(4)", _fixture_lattice("pencil", n=4)),
        ("pencil(5)", _fixture_lattice("pencil", n=5)),
        ("generic(4)", _fixture_lattice("generic", n=4)),
    ]
    transpose_fixtures = [
        ("braid(4)", _fixture_lattice("braid", ell=4)),
        ("diamond", _fixture_lattice("diamond")),
        ("falk A", falk_a),
        ("pencil(4)", _fixture_lattice("pencil", n=4)),
        ("generic(4)", _fixture_lattice("generic", n=4)),
    ]
    return [
        (
            "census braid(4)",
            lambda: _check_census(
                _fixture_lattice("braid", ell=4), 5, {2: (4, 1)}, essential=1
            ),
        ),
        (
            "census braid(5)",
            lambda: _check_census(
                _fixture_lattice("braid", ell=5), 15, {2: (10, 5)}, essential=0
            ),
        ),
        (
            "census diamond",
            lambda: _check_census(
                _fixture_lattice("diamond"), 9, {2: (6, 3)}, essential=0
            ),
        ),
        (
            "census monomial(2,3)",
            lambda: _check_census(
                _fixture_lattice("monomial", r=2, l=3), 5, {2: (4, 1)}, essential=1
            ),
        ),
        (
            "census monomial(3,3)",
            lambda: _check_census(
                _fixture_lattice("monomial", r=3, l=3), 16, {2: (12, 4)}, essential=4
            ),
        ),
        (
            "census hessian",
            lambda: _check_census(
                _fixture_lattice("hessian"),
                64,
                {3: (9, 1), 2: (0, 54)},
                essential=1,
            ),
        ),
        ("census falk A", lambda: _check_census(falk_a, 4, {2: (4, 0)}, essential=0)),
        ("census falk B", lambda: _check_census(falk_b, 4, {2: (4, 0)}, essential=0)),
        (
            "census pencil(4)",
            lambda: _check_census(
                _fixture_lattice("pencil", n=4), 1, {3: (1, 0)}, essential=1
            ),
        ),
        (
            "census generic(4)",
            lambda: _check_census(_fixture_lattice("generic", n=4), 0, {}, essential=0),
        ),
        ("identity rank bridge", lambda: _check_identity_rank(bridge_fixtures)),
        ("identity rank (monodromy)", _check_monodromy_identity_rank),
        ("resonance transpose", lambda: _check_transpose(cfg, transpose_fixtures)),
        ("membership diamond", lambda: _check_diamond_membership(cfg)),
        ("membership pencil(4)", lambda: _check_pencil_membership(cfg, 4)),
        ("membership pencil(5)", lambda: _check_pencil_membership(cfg, 5)),
        ("membership product", _check_product_membership),
        ("fitting ideals free rank 3", _check_free_fitting),
    ]


def _file_checks(
    cfg: RunConfig, path: str
) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    kind, value = _load_input(path)
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = []
    if kind == "monodromy":
        m = value

        def rank_check():
            got = presentation_rank(m, [Fraction(1)] * m.n)
            return got == m.b2, f"rank {got}, b2 {m.b2}"

        checks.append((f"{path}: identity rank", rank_check))
        return checks
    lattices = value if kind == "pair" else (_as_lattice(kind, value),)
    tags = ("A", "B") if kind == "pair" else ("",)
    cap = DEFAULT_CAP if cfg.cap is None else cfg.cap
    for tag, lat in zip(tags, lattices):
        label = f"{path}{' ' + tag if tag else ''}"

        def census_check(lat=lat):
            res, coned_lat, _coned = _enumerate_with_cone(lat, cap)
            census = _census(res, coned_lat.n)
            ok = all(comp.verified for comp in res.components) and not census["flagged"]
            return ok, _census_line(census)

        def bridge_check(lat=lat):
            work = cone_lattice(lat) if lat.parallel_pairs else lat
            got = phi_one_rank(work)
            return got == b2(work), f"rank {got}, b2 {b2(work)}"

        def transpose_check(lat=lat, label=label):
            work = cone_lattice(lat) if lat.parallel_pairs else lat
            rng = cfg.rng(f"transpose:{label}")
            for _ in range(cfg.samples):
                lam = [rng.randint(-5, 5) for _ in range(work.n)]
                if resonance_rank(work, lam) != resonance_rank_os(work, lam):
                    return False, "stacked and multiplication-map ranks disagree"
            return True, f"{cfg.samples} seeded weights agree"

        checks.append((f"{label}: census", census_check))
        checks.append((f"{label}: identity rank bridge", bridge_check))
        checks.append((f"{label}: resonance transpose", transpose_check))
    return checks


def cmd_report(cfg: RunConfig, args) -> int:
    if cfg.inputs:
        checks = []
        for path in cfg.inputs:
            checks.extend(_file_checks(cfg, path))
    else:
        checks = _default_checks(cfg)
    results = []
    for name, fn in checks:
        ok, detail = fn()
        results.append({"name": name, "pass": bool(ok), "detail": detail})
    passed = sum(1 for r in results if r["pass"])
    if cfg.format == "json":
        _emit(
            cfg,
            _json_text(
                {
                    "seed": cfg.seed,
                    "samples": cfg.samples,
                    "passed": passed,
                    "total": len(results),
                    "checks": results,
                }
            ),
        )
    else:
        lines = [
            f"{'PASS' if r['pass'] else 'FAIL'}  {r['name']}: {r['detail']}"
            for r in results
        ]
        lines.append(f"{passed} of {len(results)} checks passed (seed {cfg.seed})")
        _emit(cfg, "\n".join(lines))
    return 0 if passed == len(results) else 1


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charvar",
        description=(
            "Exact first-resonance and characteristic-variety computations "
            "for complex hyperplane arrangements."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", help="write the result to this file")
    out.add_argument(
        "--format",
        choices=("json", "text"),
        help="output format (default depends on the subcommand)",
    )

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument(
        "--seed", type=int, default=0, help="seed for all random sampling (default 0)"
    )
    sampling.add_argument(
        "--samples",
        type=int,
        default=5,
        help="number of sample points per randomised check (default 5)",
    )

    p_gen = sub.add_parser(
        "gen", parents=[out], help="build a named example family"
    )
    p_gen.add_argument(
        "--family",
        required=True,
        help="one of: " + ", ".join(sorted(_FAMILY_PARAMS)),
    )
    p_gen.add_argument("--r", type=int, help="exponent parameter (monomial families)")
    p_gen.add_argument(
        "--l", type=int, help="size parameter (braid: points; monomial: coordinates)"
    )
    p_gen.add_argument("--n", type=int, help="line count (pencil and generic)")

    p_lat = sub.add_parser(
        "lattice", parents=[out], help="rank-2 intersection data of an input"
    )
    p_lat.add_argument("input", help="arrangement, lattice, or monodromy JSON file")

    p_comp = sub.add_parser(
        "components",
        parents=[out],
        help="enumerate depth-1 components and print a census",
    )
    p_comp.add_argument("input", help="arrangement, lattice, or monodromy JSON file")
    p_comp.add_argument(
        "--k", type=int, default=1, help="depth (enumeration supports only 1)"
    )
    p_comp.add_argument(
        "--cap",
        type=int,
        help=f"largest hyperplane count to enumerate (default {DEFAULT_CAP})",
    )

    p_mem = sub.add_parser(
        "member",
        parents=[out],
        help="exact depth-k membership of one point",
    )
    p_mem.add_argument("input", help="monodromy, arrangement, or lattice JSON file")
    p_mem.add_argument(
        "--point",
        required=True,
        help=(
            "the point: a JSON array or comma-separated rationals "
            "(use --point=-1,1,... for a leading minus sign)"
        ),
    )
    p_mem.add_argument("--k", type=int, default=1, help="depth to test (default 1)")

    p_rep = sub.add_parser(
        "report",
        parents=[out, sampling],
        help="consolidated self-check over the bundled example families",
    )
    p_rep.add_argument(
        "inputs",
        nargs="*",
        help="optional input files to check instead of the default battery",
    )
    p_rep.add_argument(
        "--cap",
        type=int,
        help=f"enumeration cap for file checks (default {DEFAULT_CAP})",
    )

    return parser


_DEFAULT_FORMATS = {
    "gen": "json",
    "lattice": "json",
    "components": "text",
    "member": "json",
    "report": "text",
}


def _config_from_args(args) -> RunConfig:
    inputs: tuple[str, ...] = ()
    if hasattr(args, "input"):
        inputs = (args.input,)
    elif hasattr(args, "inputs"):
        inputs = tuple(args.inputs)
    return RunConfig(
        command=args.command,
        inputs=inputs,
        output=getattr(args, "output", None),
        k=getattr(args, "k", 1),
        cap=getattr(args, "cap", None),
        samples=getattr(args, "samples", 5),
        seed=getattr(args, "seed", 0),
        format=args.format or _DEFAULT_FORMATS[args.command],
    )


_DISPATCH = {
    "gen": cmd_gen,
    "lattice": cmd_lattice,
    "components": cmd_components,
    "member": cmd_member,
    "report": cmd_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    try:
        return _DISPATCH[cfg.command](cfg, args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
