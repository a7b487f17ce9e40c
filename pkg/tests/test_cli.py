import json

import pytest

from qhadamard.cli import (
    CommandSpec,
    UsageError,
    canonical_argv,
    family_pair_from_spec,
    family_sweep_from_spec,
    gate_from_spec,
    main,
    parse_args,
    template_from_spec,
)
from qhadamard.gates import hadamard, polar_gate, symmetric_u
from qhadamard.qcore import inner_product


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpecParsers:
    def test_all_gate_forms(self):
        assert gate_from_spec("hadamard") == hadamard()
        assert gate_from_spec("polar:0.7") == polar_gate(0.7)
        assert gate_from_spec("symmetric-u") == symmetric_u()
        gate_from_spec("equatorial")
        gate_from_spec("unequal:0.6,0,0,0.8")
        gate_from_spec("unequal-polar:0.6,0.8,1.0")
        gate_from_spec("unequal-equatorial:0.6,0,0.8,0")

    def test_unknown_gate_lists_names(self):
        with pytest.raises(UsageError) as exc:
            gate_from_spec("toffoli")
        assert "hadamard" in str(exc.value) and "symmetric-u" in str(exc.value)

    def test_wrong_arity(self):
        with pytest.raises(UsageError):
            gate_from_spec("polar:1.0,2.0")
        with pytest.raises(UsageError):
            gate_from_spec("hadamard:3")

    def test_bad_literal(self):
        with pytest.raises(UsageError):
            gate_from_spec("polar:zero")

    def test_templates(self):
        template_from_spec("hadamard")
        template_from_spec("polar")
        template_from_spec("equatorial")
        template_from_spec("unequal:0.6,0,0,0.8")
        template_from_spec("unequal-polar:0.6,0.8")
        template_from_spec("unequal-equatorial:0.6,0,0.8,0")
        with pytest.raises(UsageError):
            template_from_spec("identity")

    def test_family_points(self):
        psi, perp = family_pair_from_spec("theorem1:0.5,+,A")
        assert abs(inner_product(psi, perp)) < 1e-12
        family_pair_from_spec("theorem3:0.5,-,B")
        family_pair_from_spec("polar:1.0,0.5")
        family_pair_from_spec("equatorial:2.0")
        family_pair_from_spec("unequal-general:0.6,0,0.8,0,0.5,0,+")
        family_pair_from_spec("unequal-equatorial:0.6,0,0.8,0,0.5,0,-")
        with pytest.raises(UsageError):
            family_pair_from_spec("bell:0.5")
        with pytest.raises(UsageError):
            family_pair_from_spec("theorem1:0.5,?,A")
        with pytest.raises(UsageError):
            family_pair_from_spec("theorem1:0.5,+,C")

    def test_family_sweeps(self):
        assert family_sweep_from_spec("theorem1:+,A").family_id == "theorem1"
        assert family_sweep_from_spec("equatorial").family_id == "equatorial"
        assert family_sweep_from_spec("polar:0.4").family_id == "polar"
        assert (
            family_sweep_from_spec("unequal-general:0.6,0,0.8,0,+").family_id
            == "unequal-general"
        )
        with pytest.raises(UsageError):
            family_sweep_from_spec("theorem1:0.5,+,A")


class TestCanonicalRoundTrip:
    @pytest.mark.parametrize(
        "argv",
        [
            ["gates-show", "hadamard"],
            ["gates-show", "polar:0.7", "--format", "csv"],
            ["check-unitarity", "unequal:0.6,0,0,0.8"],
            [
                "verify",
                "--gate",
                "hadamard",
                "--template",
                "hadamard",
                "--family",
                "theorem1:0.5,+,A",
                "--tol",
                "1e-12",
            ],
            [
                "derive",
                "--gate",
                "polar:0",
                "--template",
                "polar",
                "--convention",
                "A",
                "--grid",
                "9,16,16",
                "--tol",
                "1e-6",
            ],
            ["trajectory", "--family", "theorem1:+,A", "--samples", "5"],
            [
                "intersect",
                "--family",
                "theorem3:+,A",
                "--circle",
                "equatorial",
                "--tol",
                "1e-12",
            ],
            ["trajectory", "--family", "polar:0.3", "--samples", "9", "--out", "t.csv"],
        ],
    )
    def test_parse_canonicalize_parse(self, argv):
        spec = parse_args(argv)
        assert isinstance(spec, CommandSpec)
        assert parse_args(canonical_argv(spec)) == spec


class TestGatesShow:
    def test_json_matrix(self, capsys):
        code, out, err = run_cli(capsys, "gates-show", "hadamard", "--format", "json")
        assert code == 0 and err == ""
        assert out.endswith("\n")
        assert '{"re":0.7071067811865476,"im":0.0}' in out
        rows = json.loads(out)
        assert rows[1][1] == {"re": -0.7071067811865476, "im": 0.0}

    def test_csv_matrix(self, capsys):
        code, out, _ = run_cli(capsys, "gates-show", "equatorial", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "row,col,re,im"
        assert len(lines) == 5
        assert lines[1].startswith("0,0,")

    def test_unknown_gate_exits_2(self, capsys):
        code, out, err = run_cli(capsys, "gates-show", "cnot")
        assert code == 2 and out == ""
        assert "valid gates" in err and err.count("\n") == 1


class TestCheckUnitarity:
    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "check-unitarity", "hadamard")
        assert code == 0
        doc = json.loads(out)
        assert doc["pass"] is True and doc["residual"] < 1e-12


class TestVerify:
    def test_passing_family(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify",
            "--gate",
            "hadamard",
            "--template",
            "hadamard",
            "--family",
            "theorem1:0.5,+,A",
            "--tol",
            "1e-12",
        )
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"row1", "row2", "pass"}
        assert doc["pass"] is True
        assert doc["row1"] < 1e-12 and doc["row2"] < 1e-12

    def test_domain_error_exits_1(self, capsys):
        code, out, err = run_cli(
            capsys,
            "verify",
            "--gate",
            "hadamard",
            "--template",
            "hadamard",
            "--family",
            "theorem1:0.9,+,A",
            "--tol",
            "1e-12",
        )
        assert code == 1 and out == ""
        assert "1/sqrt(2)" in err

    def test_missing_flag_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--gate", "hadamard")
        assert code == 2
        assert "usage error" in err

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify",
            "--gate",
            "polar:0",
            "--template",
            "polar",
            "--family",
            "polar:1.0,0",
            "--tol",
            "1e-12",
            "--format",
            "csv",
        )
        assert code == 0
        header, row = out.strip().split("\n")
        assert header == "row1,row2,pass"
        assert row.endswith(",true")


class TestDerive:
    def test_csv_file_and_determinism(self, tmp_path, capsys):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        argv = [
            "derive",
            "--gate",
            "polar:0",
            "--template",
            "polar",
            "--convention",
            "A",
            "--grid",
            "9,16,16",
            "--tol",
            "1e-6",
        ]
        assert main(argv + ["--out", str(out1)]) == 0
        assert main(argv + ["--out", str(out2)]) == 0
        capsys.readouterr()
        data1, data2 = out1.read_bytes(), out2.read_bytes()
        assert data1 == data2
        text = data1.decode()
        assert text.startswith("theta,phi,gamma,residual,x,y,z\n")
        assert "\r" not in text

    def test_csv_round_trips_exactly(self, tmp_path, capsys):
        out = tmp_path / "d.csv"
        assert (
            main(
                [
                    "derive",
                    "--gate",
                    "polar:0",
                    "--template",
                    "polar",
                    "--convention",
                    "A",
                    "--grid",
                    "9,16,16",
                    "--tol",
                    "1e-6",
                    "--out",
                    str(out),
                ]
            )
            == 0
        )
        capsys.readouterr()
        lines = out.read_text().strip().split("\n")[1:]
        for line in lines:
            theta, phi, gamma, residual, x, y, z = (float(v) for v in line.split(","))
            assert abs(x * x + y * y + z * z - 1.0) < 1e-12
            # values rendered shortest-exact: parsing back gives identical floats
            assert repr(theta) in line and repr(residual) in line

    def test_empty_derivation_header_only(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "derive",
            "--gate",
            "hadamard",
            "--template",
            "polar",
            "--convention",
            "A",
            "--grid",
            "9,16,16",
            "--tol",
            "1e-6",
        )
        assert code == 0
        assert out == "theta,phi,gamma,residual,x,y,z\n"

    def test_empty_derivation_json_flag(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "derive",
            "--gate",
            "hadamard",
            "--template",
            "polar",
            "--convention",
            "A",
            "--grid",
            "9,16,16",
            "--tol",
            "1e-6",
            "--format",
            "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["empty"] is True and doc["points"] == []

    def test_bad_grid_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys,
            "derive",
            "--gate",
            "hadamard",
            "--template",
            "hadamard",
            "--convention",
            "A",
            "--grid",
            "9,16",
            "--tol",
            "1e-6",
        )
        assert code == 2 and "NT,NP,NG" in err


class TestTrajectory:
    def test_csv_norm_invariant(self, capsys):
        code, out, _ = run_cli(
            capsys, "trajectory", "--family", "theorem1:+,A", "--samples", "5"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "param,x,y,z,theta,phi,gamma"
        assert len(lines) == 6
        for line in lines[1:]:
            _, x, y, z, *_ = (float(v) for v in line.split(","))
            assert abs(x * x + y * y + z * z - 1.0) < 1e-12

    def test_json_records(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "trajectory",
            "--family",
            "equatorial",
            "--samples",
            "8",
            "--format",
            "json",
        )
        assert code == 0
        records = json.loads(out)
        assert len(records) == 8
        assert set(records[0]) == {"param", "x", "y", "z", "theta", "phi", "gamma"}
        assert all(abs(r["z"]) < 1e-12 for r in records)

    def test_unequal_family_sweep(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "trajectory",
            "--family",
            "unequal-general:0.6,0,0.8,0,+",
            "--samples",
            "9",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 10
        for line in lines[1:]:
            _, x, y, z, *_ = (float(v) for v in line.split(","))
            assert abs(x * x + y * y + z * z - 1.0) < 1e-12

    def test_too_few_samples_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, "trajectory", "--family", "theorem1:+,A", "--samples", "1"
        )
        assert code == 2 and "--samples" in err

    def test_unknown_family_exits_2_listing_ids(self, capsys):
        code, _, err = run_cli(
            capsys, "trajectory", "--family", "bell", "--samples", "4"
        )
        assert code == 2
        assert "theorem1:BRANCH,CONV" in err and "equatorial" in err


class TestIntersect:
    def test_json(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "intersect",
            "--family",
            "theorem3:+,A",
            "--circle",
            "equatorial",
            "--tol",
            "1e-12",
        )
        assert code == 0
        hits = json.loads(out)
        assert [round(h["param"], 6) for h in hits] == [-0.707107, 0.707107]
        for h in hits:
            assert abs(h["z"]) < 1e-12
            assert set(h) == {"param", "x", "y", "z", "theta", "phi", "gamma", "a", "b"}

    def test_csv(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "intersect",
            "--family",
            "theorem1:+,A",
            "--circle",
            "polar",
            "--tol",
            "1e-12",
            "--format",
            "csv",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "param,x,y,z,theta,phi,gamma,a_re,a_im,b_re,b_im"
        assert len(lines) == 4  # -1/sqrt2, 0, +1/sqrt2


class TestOutputErrors:
    def test_unwritable_path_exits_1(self, capsys, tmp_path):
        target = tmp_path / "missing-dir" / "out.csv"
        code, _, err = run_cli(
            capsys, "gates-show", "hadamard", "--out", str(target)
        )
        assert code == 1 and "cannot write" in err


class TestSubprocess:
    def test_repeated_runs_byte_identical(self, tmp_path):
        import subprocess
        import sys

        argv = [
            sys.executable,
            "-m",
            "qhadamard",
            "derive",
            "--gate",
            "symmetric-u",
            "--template",
            "equatorial",
            "--convention",
            "A",
            "--grid",
            "9,16,16",
            "--tol",
            "1e-6",
        ]
        first = subprocess.run(argv, capture_output=True, check=True)
        second = subprocess.run(argv, capture_output=True, check=True)
        assert first.stdout == second.stdout
        assert first.stdout.startswith(b"theta,phi,gamma,residual,x,y,z\n")
