"""CLI dispatch, JSON round trips, exit codes, and fault injection."""

import json

import pytest

from fpmod.cli import run_command
from fpmod.errors import InputError
from fpmod.jsonio import (
    decode_input,
    decode_mat,
    decode_scalar,
    dumps,
    encode_mat,
    encode_scalar,
)
from fpmod.matrix import Mat
from fpmod.rings import ZZ, QQ, ZI, Zmod


def run(capsys, argv):
    code = run_command(argv)
    out = capsys.readouterr().out.strip()
    return code, (json.loads(out) if out else None)


def write(tmp_path, doc):
    p = tmp_path / "in.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_scalar_roundtrips():
    from fractions import Fraction

    for ring, vals in (
        (ZZ, [0, -7, 12345678901234567890]),
        (QQ, [Fraction(3, 2), Fraction(-1, 7)]),
        (ZI, [(3, -4), (0, 0)]),
        (Zmod(6), [0, 5]),
    ):
        for v in vals:
            assert decode_scalar(ring, encode_scalar(ring, v)) == ring.canon(v)


def test_mat_roundtrip():
    A = Mat.from_ints(ZZ, [[1, -2], [3, 4]])
    assert decode_mat(ZZ, encode_mat(A)).entries == A.entries


def test_decode_rejects_ragged():
    with pytest.raises(InputError):
        decode_mat(ZZ, [["1", "2"], ["3"]])


def test_decode_input_validates_references():
    with pytest.raises(InputError):
        decode_input(
            {
                "ring": {"kind": "Integers"},
                "morphisms": {"f": {"source": "missing", "target": "missing", "matrix": [["1"]]}},
            }
        )


def test_snf_subcommand(tmp_path, capsys):
    path = write(
        tmp_path,
        {"ring": {"kind": "Integers"}, "modules": {"M": {"relations": [["2", "0"], ["0", "3"]]}}},
    )
    code, out = run(capsys, ["snf", "--input", path])
    assert code == 0
    assert out["invariant_factors"] == ["1", "6"]


def test_dominates_subcommand(tmp_path, capsys):
    path = write(
        tmp_path,
        {
            "ring": {"kind": "Integers"},
            "modules": {"Z": {"generators": "1"}},
            "morphisms": {
                "f": {"source": "Z", "target": "Z", "matrix": [["2"]]},
                "g": {"source": "Z", "target": "Z", "matrix": [["1"]]},
            },
        },
    )
    code, out = run(capsys, ["dominates", "--input", path])
    assert code == 0
    assert out == {"dominates": False, "pushout_agrees": True}


def test_malformed_json_exit2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"ring": {"kind": "Integers",')
    code, out = run(capsys, ["invariants", "--input", str(p)])
    assert code == 2
    assert out["error"] == "InputError" and "line" in out["clause"]


def test_not_well_defined_exit2(tmp_path, capsys):
    path = write(
        tmp_path,
        {
            "ring": {"kind": "Integers"},
            "modules": {"A": {"relations": [["2"]]}, "B": {"relations": [["4"]]}},
            "morphisms": {"f": {"source": "A", "target": "B", "matrix": [["1"]]}},
        },
    )
    code, out = run(capsys, ["univinj", "--input", path])
    assert code == 2
    assert out["error"] == "NotWellDefined"


def test_ml_tower_subcommand(tmp_path, capsys):
    path = write(
        tmp_path,
        {
            "ring": {"kind": "Integers"},
            "modules": {"Z4": {"relations": [["4"]]}},
            "towers": {"T": {"object": "Z4", "step": [["2"]], "direction": "forward"}},
        },
    )
    code, out = run(capsys, ["ml-tower", "--input", path, "--horizon", "6"])
    assert code == 0
    assert out["status"] == "ML" and out["witness_level"] == 2


def test_projchar_subcommand(tmp_path, capsys):
    path = write(
        tmp_path,
        {"ring": {"kind": "IntegersMod", "modulus": "6"}, "modules": {"M": {"relations": [["2"]]}}},
    )
    code, out = run(capsys, ["projchar", "--input", path])
    assert code == 0
    assert out["flat"] and out["projective"] and out["consistent"]


def test_descend_subcommand(tmp_path, capsys):
    path = write(
        tmp_path,
        {
            "ring": {"kind": "Integers"},
            "map": {"source": {"kind": "Integers"}, "target": {"kind": "GaussianIntegers"}},
            "modules": {"M": {"relations": [["2"]]}},
        },
    )
    code, out = run(capsys, ["descend", "--input", path])
    assert code == 0
    assert out["equivalence_holds"]


def test_decider_disagreement_exit1(tmp_path, capsys, monkeypatch):
    """Fault injection: a corrupted split-search decider must surface as an
    internal error (exit 1), never as a result."""
    from fpmod import homtensor

    monkeypatch.setattr(homtensor, "_projective_by_split_search", lambda M: True)
    path = write(
        tmp_path,
        {"ring": {"kind": "Integers"}, "modules": {"M": {"relations": [["2"]]}}},
    )
    code = run_command(["projtest", "--input", path])
    captured = capsys.readouterr()
    assert code == 1
    assert "DeciderDisagreement" in captured.err


def test_harness_subcommand_small(capsys):
    code = run_command(
        ["harness", "--seed", "7", "--trials", "1", "--suites", "snf_roundtrip,ml_identity_tower"]
    )
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    assert report["failures_total"] == 0
    assert set(report["suites"]) == {"snf_roundtrip", "ml_identity_tower"}


def test_harness_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("FPMOD_SEED", "99")
    code = run_command(["harness", "--trials", "0"])
    captured = capsys.readouterr()
    assert code == 0
    assert json.loads(captured.out)["seed"] == "99"


def test_unknown_suite_exit2(capsys):
    code = run_command(["harness", "--trials", "1", "--suites", "nope"])
    assert code == 2
