"""End-to-end tests for the command-line front end.

Every test drives ``charvar.cli.main`` in-process with an argv list and
checks stdout, stderr, exit codes, and written files.
"""

from __future__ import annotations

import json

import pytest

from charvar.alexander import load_monodromy
from charvar.arrangement import decone, gen_family
from charvar.cli import main
from charvar.components import DEFAULT_CAP


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def test_gen_braid_emits_the_lattice_json(capsys):
    code, out, err = run(capsys, "gen", "--family", "braid", "--l", "4")
    assert code == 0 and err == ""
    obj = json.loads(out)
    assert obj["n"] == 6
    assert len(obj["flats"]) == 4


def test_gen_diamond_emits_the_arrangement_json(capsys):
    code, out, _ = run(capsys, "gen", "--family", "diamond")
    assert code == 0
    obj = json.loads(out)
    assert obj["flavor"] == "central"
    assert len(obj["hyperplanes"]) == 7


def test_gen_monomial_defaults_to_three_coordinates(capsys):
    code, out, _ = run(capsys, "gen", "--family", "monomial", "--r", "2")
    assert code == 0
    assert len(json.loads(out)["hyperplanes"]) == 6


def test_gen_falk_pair_emits_two_lattices(capsys):
    code, out, _ = run(capsys, "gen", "--family", "falk_pair")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["pair"]) == 2
    assert all(part["n"] == 7 for part in obj["pair"])


def test_gen_writes_the_output_file(capsys, tmp_path):
    target = tmp_path / "braid4.json"
    code, out, _ = run(capsys, "gen", "--family", "braid", "--l", "4", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["n"] == 6


def test_gen_text_format_summarises(capsys):
    code, out, _ = run(capsys, "gen", "--family", "diamond", "--format", "text")
    assert code == 0
    assert out.startswith("central arrangement: 7 hyperplanes in dimension 3")


def test_gen_rejects_missing_and_foreign_parameters(capsys):
    code, _, err = run(capsys, "gen", "--family", "braid")
    assert code == 2 and "requires --l" in err
    code, _, err = run(capsys, "gen", "--family", "pencil", "--n", "4", "--r", "2")
    assert code == 2 and "does not take --r" in err
    code, _, err = run(capsys, "gen", "--family", "nonesuch")
    assert code == 2 and "unknown family" in err


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------


@pytest.fixture
def diamond_file(tmp_path):
    path = tmp_path / "diamond.json"
    path.write_text(json.dumps(gen_family("diamond").to_json()))
    return str(path)


@pytest.fixture
def braid4_file(tmp_path):
    path = tmp_path / "braid4.json"
    path.write_text(json.dumps(gen_family("braid", ell=4).to_json()))
    return str(path)


@pytest.fixture
def monodromy_file(tmp_path):
    path = tmp_path / "mono.json"
    path.write_text(json.dumps(load_monodromy("diamond_monodromy").to_json()))
    return str(path)


def test_lattice_of_a_central_arrangement(capsys, diamond_file):
    code, out, _ = run(capsys, "lattice", diamond_file)
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 7
    assert len(obj["flats"]) == 6


def test_lattice_passes_a_lattice_through(capsys, braid4_file):
    code, out, _ = run(capsys, "lattice", braid4_file)
    assert code == 0
    assert json.loads(out) == json.loads(open(braid4_file).read())


def test_lattice_of_monodromy_input(capsys, monodromy_file):
    code, out, _ = run(capsys, "lattice", monodromy_file)
    assert code == 0
    assert json.loads(out)["n"] == 6


def test_lattice_of_an_affine_arrangement_keeps_parallels(capsys, tmp_path):
    affine = decone(gen_family("diamond"), at=1).arrangement
    path = tmp_path / "affine.json"
    path.write_text(json.dumps(affine.to_json()))
    code, out, _ = run(capsys, "lattice", str(path))
    assert code == 0
    assert json.loads(out)["parallel_pairs"]


# ---------------------------------------------------------------------------
# components
# ---------------------------------------------------------------------------


def test_components_census_line_for_braid5(capsys, tmp_path):
    path = tmp_path / "braid5.json"
    path.write_text(json.dumps(gen_family("braid", ell=5).to_json()))
    code, out, _ = run(capsys, "components", str(path))
    assert code == 0
    assert out.splitlines()[0] == "15 components, dim 2: 15 (local 10, nonlocal 5)"
    assert sum(1 for line in out.splitlines() if line.startswith("local ")) == 10
    assert sum(1 for line in out.splitlines() if line.startswith("nonlocal ")) == 5


def test_components_json_payload(capsys, diamond_file):
    code, out, _ = run(capsys, "components", diamond_file, "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["census"]["total"] == 9
    assert obj["census"]["by_dim"] == [
        {"dim": 2, "count": 9, "local": 6, "nonlocal": 3}
    ]
    assert obj["coned"] is False
    assert len(obj["components"]) == 9
    assert obj["flagged"] == []


def test_components_cones_affine_input_with_a_notice(capsys, tmp_path):
    affine = decone(gen_family("diamond"), at=1).arrangement
    path = tmp_path / "affine.json"
    path.write_text(json.dumps(affine.to_json()))
    code, out, _ = run(capsys, "components", str(path))
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("note: affine input")
    assert lines[1] == "9 components, dim 2: 9 (local 6, nonlocal 3)"


def test_components_rejects_depth_two(capsys, braid4_file):
    code, _, err = run(capsys, "components", braid4_file, "--k", "2")
    assert code == 2
    assert "member" in err


def test_components_cap_exceeded_exits_three(capsys, braid4_file):
    code, _, err = run(capsys, "components", braid4_file, "--cap", "3")
    assert code == 3
    assert "cap" in err


def test_components_on_a_pair_file(capsys, tmp_path):
    pair = gen_family("falk_pair")
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"pair": [lat.to_json() for lat in pair]}))
    code, out, _ = run(capsys, "components", str(path))
    assert code == 0
    assert "[A] 4 components, dim 2: 4 (local 4, nonlocal 0)" in out
    assert "[B] 4 components, dim 2: 4 (local 4, nonlocal 0)" in out


def test_components_default_cap_matches_the_library(capsys, tmp_path):
    lat_json = {"n": DEFAULT_CAP + 1, "flats": []}
    path = tmp_path / "big.json"
    path.write_text(json.dumps(lat_json))
    code, _, err = run(capsys, "components", str(path))
    assert code == 3 and "cap" in err
    code, out, _ = run(capsys, "components", str(path), "--cap", str(DEFAULT_CAP + 1))
    assert code == 0
    assert out.splitlines()[0] == "0 components"


# ---------------------------------------------------------------------------
# member
# ---------------------------------------------------------------------------


def test_member_torsion_point_via_packaged_fixture(capsys):
    code, out, _ = run(
        capsys,
        "member",
        "fixture:diamond_monodromy",
        "--point=[-1,1,1,-1,-1,1,-1]",
        "--k",
        "2",
    )
    assert code == 0
    verdict = json.loads(out)
    assert verdict["in_Vk"] is True
    assert verdict["criteria"]["delta"] is True
    assert verdict["criteria"]["partial2"] is True
    assert "resonance" not in verdict["criteria"]
    assert verdict["consistent"] is True
    assert verdict["lifted"] is True


def test_member_accepts_comma_separated_rationals(capsys, monodromy_file):
    code, out, _ = run(
        capsys, "member", monodromy_file, "--point=-1,1,1,-1,-1,1,-1", "--k", "2"
    )
    assert code == 0
    assert json.loads(out)["in_Vk"] is True


def test_member_identity_is_inside_at_depth_one(capsys, monodromy_file):
    code, out, _ = run(capsys, "member", monodromy_file, "--point=1,1,1,1,1,1")
    assert code == 0
    verdict = json.loads(out)
    assert verdict["in_Vk"] is True
    assert verdict["rank"] == 9
    assert verdict["lifted"] is False


def test_member_generic_point_is_outside(capsys, monodromy_file):
    code, out, _ = run(capsys, "member", monodromy_file, "--point=2,3,5,7,11,13")
    assert code == 0
    assert json.loads(out)["in_Vk"] is False


def test_member_relator_route_nulls_out_beyond_its_window(capsys, monodromy_file):
    code, out, _ = run(
        capsys, "member", monodromy_file, "--point=1,1,1,1,1,1", "--k", "7"
    )
    assert code == 0
    verdict = json.loads(out)
    assert verdict["criteria"]["partial2"] is None
    assert verdict["consistent"] is True


def test_member_weight_on_a_lattice_input(capsys, braid4_file):
    code, out, _ = run(capsys, "member", braid4_file, "--point=1,-1,0,0,0,0")
    assert code == 0
    verdict = json.loads(out)
    assert verdict["route"] == "resonance"
    assert verdict["in_Vk"] is True
    assert verdict["criteria"] == {"delta": None, "partial2": None, "resonance": True}
    code, out, _ = run(capsys, "member", braid4_file, "--point=1,1,-2,0,1,-1")
    assert json.loads(out)["in_Vk"] is False


def test_member_arity_mismatch_is_a_validation_error(capsys, monodromy_file):
    code, _, err = run(capsys, "member", monodromy_file, "--point=1,1,1")
    assert code == 2
    assert "coordinates" in err


def test_member_bad_coordinate_is_a_validation_error(capsys, braid4_file):
    code, _, err = run(capsys, "member", braid4_file, "--point=1,oops")
    assert code == 2
    assert "bad coordinate" in err


def test_member_text_format(capsys, monodromy_file):
    code, out, _ = run(
        capsys, "member", monodromy_file, "--point=1,1,1,1,1,1", "--format", "text"
    )
    assert code == 0
    assert out.splitlines()[0] == "in V_1: yes"


def test_member_cyclotomic_point_in_json_form(capsys, monodromy_file):
    point = json.dumps(
        [{"order": 4, "coeffs": ["0", "1"]}, {"order": 4, "coeffs": ["0", "-1"]}]
        + ["1"] * 4
    )
    code, out, _ = run(capsys, "member", monodromy_file, "--point", point)
    assert code == 0
    assert json.loads(out)["rank"] >= 0


def test_member_rejects_unknown_fixture(capsys):
    code, _, err = run(capsys, "member", "fixture:nope", "--point=1")
    assert code == 2
    assert "unknown monodromy fixture" in err


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def test_report_default_battery_passes(capsys):
    code, out, _ = run(capsys, "report", "--samples", "2")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("checks passed (seed 0)")
    assert "census braid(5): 15 components, dim 2: 15 (local 10, nonlocal 5)" in out


def test_report_is_byte_identical_under_a_fixed_seed(tmp_path, capsys):
    first = tmp_path / "r1.txt"
    second = tmp_path / "r2.txt"
    assert main(["report", "--seed", "42", "--samples", "2", "-o", str(first)]) == 0
    assert main(["report", "--seed", "42", "--samples", "2", "-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_report_json_format(capsys):
    code, out, _ = run(capsys, "report", "--samples", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] == obj["total"]
    assert {"name", "pass", "detail"} <= set(obj["checks"][0])


def test_report_on_files_checks_each_input(capsys, braid4_file, monodromy_file):
    code, out, _ = run(capsys, "report", braid4_file, monodromy_file, "--samples", "2")
    assert code == 0
    assert f"PASS  {braid4_file}: census" in out
    assert f"PASS  {monodromy_file}: identity rank" in out


def test_report_corrupted_file_is_a_validation_error(capsys, tmp_path):
    path = tmp_path / "corrupt.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "report", str(path))
    assert code == 2
    assert "not valid JSON" in err


def test_report_failure_exits_nonzero(capsys, tmp_path, monkeypatch):
    import charvar.cli as cli

    monkeypatch.setattr(
        cli, "_default_checks", lambda cfg: [("forced", lambda: (False, "boom"))]
    )
    code, out, _ = run(capsys, "report")
    assert code == 1
    assert "FAIL  forced: boom" in out


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------


def test_missing_file_is_a_validation_error(capsys):
    code, _, err = run(capsys, "components", "/nonexistent/never.json")
    assert code == 2
    assert "cannot read" in err


def test_unrecognised_json_shape_is_a_validation_error(capsys, tmp_path):
    path = tmp_path / "odd.json"
    path.write_text(json.dumps({"surprise": 1}))
    code, _, err = run(capsys, "lattice", str(path))
    assert code == 2
    assert "unrecognised input" in err


def test_console_entry_point_matches_main():
    import charvar.__main__  # noqa: F401  (import must succeed)
    from charvar.cli import main as script_main

    assert callable(script_main)
