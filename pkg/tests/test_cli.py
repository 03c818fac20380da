import json
import subprocess
import sys

import pytest

from gaudual.errors import SpecValidationError
from gaudual.presets import PRESETS, paper_core
from gaudual.runner import run_instance, validate_instance


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "gaudual.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def test_validation_error_names_constraint():
    with pytest.raises(SpecValidationError) as err:
        validate_instance(
            {
                "kind": "classical-bosonic",
                "M": 1,
                "N": 2,
                "divisor": [["1", 1]],
                "dual_divisor": [["5", 1]],
            }
        )
    assert "Σ τ_i = N" in str(err.value)


def test_cli_exit_2_on_bad_spec(tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text(
        json.dumps(
            {
                "instances": [
                    {
                        "kind": "classical-bosonic",
                        "M": 1,
                        "N": 2,
                        "divisor": [["1", 1]],
                        "dual_divisor": [["5", 1]],
                    }
                ]
            }
        )
    )
    proc = run_cli("verify", str(spec))
    assert proc.returncode == 2
    assert "τ_i = N" in proc.stderr


def test_cli_exit_1_on_verification_failure(tmp_path):
    # an unmutated homomorphism check declared expect=fail must fail
    spec = tmp_path / "failing.json"
    spec.write_text(
        json.dumps(
            {
                "instances": [
                    {
                        "kind": "homomorphism",
                        "realization": "classical-bosonic",
                        "M": 1,
                        "N": 1,
                        "divisor": [["1", 1]],
                        "dual_divisor": [["5", 1]],
                        "options": {"expect": "fail"},
                    }
                ]
            }
        )
    )
    proc = run_cli("verify", str(spec))
    assert proc.returncode == 1


def test_cli_spec_file_roundtrip(tmp_path):
    spec = tmp_path / "ok.json"
    spec.write_text(
        json.dumps(
            {
                "instances": [
                    {
                        "kind": "classical-bosonic",
                        "M": 1,
                        "N": 1,
                        "divisor": [["2", 1]],
                        "dual_divisor": [["5", 1]],
                    },
                    {"kind": "neumann", "M": 2, "omega": ["1", "2"]},
                ]
            }
        )
    )
    out = tmp_path / "report.jsonl"
    proc = run_cli("verify", str(spec), "--out", str(out))
    assert proc.returncode == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    reports = [json.loads(line) for line in lines]
    assert all(r["status"] == "pass" for r in reports)
    # report order follows spec order
    assert reports[0]["instance"]["kind"] == "classical-bosonic"
    assert reports[1]["instance"]["kind"] == "neumann"


def test_report_determinism(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"instances": PRESETS["neumann"]()}))
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.jsonl"
        proc = run_cli("verify", str(spec), "--out", str(out))
        assert proc.returncode == 0
        stripped = []
        for line in out.read_text().splitlines():
            obj = json.loads(line)
            obj.pop("timing_ms")
            stripped.append(json.dumps(obj, sort_keys=True))
        outs.append(stripped)
    assert outs[0] == outs[1]


def test_parallel_jobs_preserve_order(tmp_path):
    spec = tmp_path / "spec.json"
    instances = PRESETS["quantum-grid"]()[:4] + PRESETS["neumann"]()
    spec.write_text(json.dumps({"instances": instances}))
    seq = tmp_path / "seq.jsonl"
    par = tmp_path / "par.jsonl"
    assert run_cli("verify", str(spec), "--out", str(seq)).returncode == 0
    assert run_cli("verify", str(spec), "--jobs", "3", "--out", str(par)).returncode == 0

    def strip(path):
        out = []
        for line in path.read_text().splitlines():
            obj = json.loads(line)
            obj.pop("timing_ms")
            out.append(json.dumps(obj, sort_keys=True))
        return out

    assert strip(seq) == strip(par)


def test_presets_listing():
    proc = run_cli("presets")
    assert proc.returncode == 0
    names = proc.stdout.split()
    assert "paper-core" in names
    assert "neumann" in names


def test_preset_neumann_with_size_override():
    proc = run_cli("verify", "--preset", "neumann", "--M", "3")
    assert proc.returncode == 0
    report = json.loads(proc.stdout.splitlines()[0])
    assert report["instance"]["M"] == 3
    assert report["duality"]["common_polynomial_terms"] > 0


def test_every_paper_core_instance_validates():
    for spec in paper_core():
        validate_instance(spec)


def test_sampled_mode_runs():
    spec = {
        "kind": "classical-bosonic",
        "M": 2,
        "N": 2,
        "divisor": [["1", 2]],
        "dual_divisor": [["5", 2]],
    }
    report = run_instance(spec, mode="sampled")
    assert report["status"] == "pass"


def test_guard_rejects_oversized_instance():
    spec = {
        "kind": "classical-bosonic",
        "M": 2,
        "N": 2,
        "divisor": [["1", 2]],
        "dual_divisor": [["5", 2]],
    }
    report = run_instance(spec, max_terms=10)
    assert report["status"] == "error"
    assert "guard" in report["witness"]