import json
import os
import subprocess
import tempfile

import patchlab


def test_group_basics():
    s3 = patchlab.group("S3")
    assert s3.order == 6
    assert patchlab.center_order(s3) == 1
    assert patchlab.automorphism_count(s3) == 6
    assert patchlab.is_complete(s3)
    assert not patchlab.is_complete(patchlab.group("C2"))
    assert patchlab.are_isomorphic(patchlab.symmetric(3), patchlab.dihedral(3))


def test_class_counts():
    assert patchlab.bitorsor_class_count("C1", "C3") == 2
    assert patchlab.h0_class_count("C1", "C3") == 2
    assert patchlab.h1_crossed_class_count("C2", "C2") == 2
    assert patchlab.h1_crossed_class_count("C2", "C3") == 2
    # Z/2 inverting Z/3.
    assert patchlab.h0_class_count("C2", "C3", {1: [0, 2, 1]}) == 2


def test_myles_exactness():
    assert patchlab.myles_exact("C2", "C3", {1: [0, 2, 1]})
    assert patchlab.myles_exact("C2", "C2")


def test_run_instance():
    report = patchlab.run_instance(
        {
            "schema": "patchlab-instance/1",
            "gammaGroups": {"A": {"gamma": "C1", "g": "C3"}},
            "task": "classify-bitorsors",
            "params": {"gammaGroup": "A"},
        }
    )
    assert report["schema"] == "patchlab-report/1"
    assert report["payload"]["count"] == 2
    assert "h0Orientation" in report["conventions"]


def test_cli_determinism():
    cli = os.environ.get("PATCHLAB_CLI")
    if not cli:
        return  # only run when ctest provides the binary
    instance = {
        "schema": "patchlab-instance/1",
        "gammaGroups": {"A": {"gamma": "C2", "g": "C3"}},
        "task": "h1-crossed",
        "params": {"gammaGroup": "A"},
    }
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "instance.json")
        with open(path, "w") as f:
            json.dump(instance, f)
        out1 = subprocess.run([cli, path, "--format", "machine"], capture_output=True, check=True)
        out2 = subprocess.run([cli, path, "--format", "machine"], capture_output=True, check=True)
        assert out1.stdout == out2.stdout
        assert json.loads(out1.stdout)["payload"]["count"] == 2
