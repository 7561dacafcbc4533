import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from reeshom.cli import run

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
GOLDEN = Path(__file__).resolve().parent / "golden"

# (golden name, argv); regenerate with REESHOM_REGEN_GOLDENS=1
GOLDEN_CASES = [
    ("homology_band_2x3", ["homology", "-i", "corpus/rees/band_2x3.json", "--max-degree", "3"]),
    ("homology_z2_twisted_text", ["homology", "-i", "corpus/rees/z2_2x2_twisted.json", "--format", "text"]),
    ("cohomology_z2_twisted", ["cohomology", "-i", "corpus/rees/z2_2x2_twisted.json", "--degree", "2"]),
    ("cohomology_v4_text", ["cohomology", "-i", "corpus/rees/v4_2x2.json", "--format", "text", "--max-degree", "3"]),
    ("oracle_band_2x2", ["oracle", "-i", "corpus/rees/band_2x2.json"]),
    ("verify_z2_1x1", ["verify", "-i", "corpus/rees/z2_1x1.json"]),
    ("verify_s3_1x2_text", ["verify", "-i", "corpus/rees/s3_1x2.json", "--format", "text"]),
    ("normalize_z4", ["normalize", "-i", "corpus/rees/z4_2x2.json", "--a0", "a1", "--b0", "b1"]),
    ("pride_band", ["pride", "-i", "corpus/presentations/band_2x2.json"]),
    ("pride_klein_text", ["pride", "-i", "corpus/presentations/klein_four.json", "--format", "text"]),
    ("fp1_empty", ["fp1", "-i", "corpus/fp1/z2_trivial_empty.json"]),
    ("fp1_s3", ["fp1", "-i", "corpus/fp1/s3_transposition_rotation.json"]),
    ("betti_cayley_z3", ["betti", "-i", "corpus/graphs/cayley_z3.json"]),
    ("betti_triangle_text", ["betti", "-i", "corpus/graphs/triangle.json", "--format", "text"]),
]


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        status = run(argv, stdout=out, stderr=err)
    finally:
        os.chdir(cwd)
    return status, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name, argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(name, argv):
    status, out, err = invoke(argv)
    assert status == 0, err
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("REESHOM_REGEN_GOLDENS"):
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out)
    assert out == path.read_text()


@pytest.mark.parametrize("name, argv", GOLDEN_CASES[:4], ids=[c[0] for c in GOLDEN_CASES[:4]])
def test_byte_identical_reruns(name, argv):
    assert invoke(argv)[1] == invoke(argv)[1]


def test_homology_degree_zero_on_every_corpus_entry():
    for f in sorted((CORPUS / "rees").glob("*.json")):
        status, out, _ = invoke(["homology", "-i", str(f), "--degree", "0"])
        assert status == 0
        assert json.loads(out)["group"] == {"free_rank": 1, "torsion": []}


def test_verify_band_matches_everywhere():
    status, out, _ = invoke(["verify", "-i", "corpus/rees/band_2x2.json", "--max-degree", "2"])
    assert status == 0
    report = json.loads(out)
    assert report["ok"] and all(d["verdict"] == "match" for d in report["degrees"])


def test_pride_band_holds():
    status, out, _ = invoke(["pride", "-i", "corpus/presentations/band_2x2.json"])
    assert status == 0 and json.loads(out)["holds"] is True


class TestFailures:
    def write(self, tmp_path, obj, name="in.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    def test_invalid_json_is_located(self, tmp_path):
        status, out, err = invoke(["homology", "-i", self.write(tmp_path, '{"group": ')])
        assert status == 2 and out == ""
        assert "line 1, column" in err

    def test_missing_file(self, tmp_path):
        status, _, err = invoke(["homology", "-i", str(tmp_path / "nope.json")])
        assert status == 2 and "cannot read" in err

    @pytest.mark.parametrize("obj, fragment", [
        ({}, "missing 'group'"),
        ([1, 2], "JSON object"),
        ({"group": {"kind": "finite_table", "table": [[0, 1], [1, 1]]}, "A": ["a"], "B": ["b"], "C": {}},
         "inverse"),
        ({"group": {"kind": "finite_table", "table": [[0]], "elements": ["e"]}, "A": ["a"], "B": ["b"],
          "C": {"b": {"a": "x"}}}, "C['b']['a']"),
        ({"group": {"kind": "fg_abelian", "free_rank": 1}, "A": ["a"], "B": ["b"], "C": {"b": {"a": [1, 2]}}},
         "coordinates"),
        ({"group": {"kind": "finite_table", "table": [[0, 1], [1, 7]]}, "A": ["a"], "B": ["b"], "C": {}},
         "entry (1,1)"),
    ])
    def test_schema_errors_are_located(self, tmp_path, obj, fragment):
        status, _, err = invoke(["homology", "-i", self.write(tmp_path, obj)])
        assert status == 2
        assert fragment in err
        assert "Traceback" not in err

    def test_cap_exceeded(self):
        status, _, err = invoke(["verify", "-i", "corpus/rees/z3_3x3.json", "--max-degree", "3"])
        assert status == 3 and "cap" in err

    def test_cap_override(self):
        status, _, _ = invoke(["oracle", "-i", "corpus/rees/band_2x2.json", "--cell-cap", "10"])
        assert status == 3

    def test_mismatch_exit_code(self, tmp_path, monkeypatch):
        from reeshom import bar_oracle
        from reeshom.intlin import AbelianGroupStructure

        original = bar_oracle.ChainComplex.homology
        monkeypatch.setattr(bar_oracle.ChainComplex, "homology",
                            lambda self, n: AbelianGroupStructure(5) if n == 1 else original(self, n))
        status, out, _ = invoke(["verify", "-i", "corpus/rees/band_2x2.json"])
        assert status == 1 and json.loads(out)["ok"] is False

    def test_bad_flags(self):
        assert invoke(["homology", "-i", "x", "--max-degree", "-1"])[0] == 2
        assert invoke(["homology", "-i", "x", "--format", "xml"])[0] == 2
        assert invoke(["frobnicate"])[0] == 2

    def test_pride_relation_failure(self, tmp_path):
        obj = json.loads((CORPUS / "presentations" / "z2.json").read_text())
        obj["presentation"]["relations"] = [["x", ""]]
        status, _, err = invoke(["pride", "-i", self.write(tmp_path, obj)])
        assert status == 2 and "fails" in err

    def test_pride_unknown_element(self, tmp_path):
        obj = json.loads((CORPUS / "presentations" / "z2.json").read_text())
        obj["assign"] = {"x": "zz"}
        status, _, err = invoke(["pride", "-i", self.write(tmp_path, obj)])
        assert status == 2 and "zz" in err

    def test_verify_directory_names_bad_file(self, tmp_path):
        (tmp_path / "ok.json").write_text((CORPUS / "rees" / "band_2x2.json").read_text())
        (tmp_path / "bad.json").write_text('{"semigroup": {"A": []}}')
        status, _, err = invoke(["verify", "-i", str(tmp_path)])
        assert status == 2 and "bad.json" in err

    def test_empty_directory(self, tmp_path):
        assert invoke(["verify", "-i", str(tmp_path)])[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "reeshom", "homology", "-i", "corpus/rees/band_2x2.json", "--degree", "2"],
        cwd=ROOT, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["group"] == {"free_rank": 1, "torsion": []}


def _paths(obj, prefix=()):
    yield prefix
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _paths(v, prefix + (k,))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _paths(v, prefix + (i,))


def test_mutated_inputs_never_crash(tmp_path):
    """Seeded corruption of corpus files: every run ends in a known exit status."""
    import copy
    import random

    rng = random.Random(20240601)
    bases = [
        ("homology", "rees/z3_2x2.json"), ("cohomology", "rees/v4_2x2.json"),
        ("normalize", "rees/s3_1x2.json"), ("pride", "presentations/band_2x2.json"),
        ("fp1", "fp1/z2_trivial_g.json"), ("betti", "graphs/triangle.json"),
        ("betti", "graphs/cayley_z3.json"), ("oracle", "presentations/z2.json"),
    ]
    junk = [None, 1, -3, 2.5, "x", "", [], {}, [1, "a"], {"k": 1}, True, [[0]]]
    path = tmp_path / "m.json"
    for _ in range(400):
        cmd, name = rng.choice(bases)
        obj = json.loads((CORPUS / name).read_text())
        obj = copy.deepcopy(obj)
        target = rng.choice(list(_paths(obj))[1:])
        parent = obj
        for k in target[:-1]:
            parent = parent[k]
        if rng.random() < 0.6:
            parent[target[-1]] = rng.choice(junk)
        elif isinstance(parent, dict):
            del parent[target[-1]]
        else:
            parent.pop(target[-1])
        path.write_text(json.dumps(obj))
        status, _, err = invoke([cmd, "-i", str(path), "--max-degree", "1", "--cell-cap", "5000"])
        assert status in (0, 1, 2, 3)
        assert "malformed input" not in err, err
