import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from quadplane.cli import run

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, json.loads(out.getvalue())


def stable(doc):
    doc = dict(doc)
    doc.pop("timing")
    doc["input"] = [Path(a).name if a.endswith(".json") else a for a in doc["input"]]
    return doc


GOLDEN_CASES = {
    "roots_quartic": ("roots", "quartic", "-2", "2", "-2", "1"),
    "classify_shear": ("classify", DATA / "shear.json"),
    "verify_quartic": ("verify", "--quartic", "0", "2", "0", "1"),
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    code, doc = call(*GOLDEN_CASES[name])
    assert code == 0
    expected = json.loads((GOLDEN / f"{name}.json").read_text())
    assert stable(doc) == expected


def test_roots_quartic_fields():
    _, doc = call("roots", "quartic", "-2", "2", "-2", "1")
    r = doc["result"]
    assert (r["D4"], r["A0"], r["A1"], r["x0"], r["exactly_one_real"]) == ("0", "32", "-32", "1", True)
    assert doc["timing"]["seconds"] >= 0


def test_classify_shear_fields():
    _, doc = call("classify", DATA / "shear.json")
    v = doc["result"]["verdict"]
    assert doc["result"]["class"]["tag"] == "Zero"
    assert v["status"] == "InvertibleQuadratic"
    assert v["inverse"]["formula"] == "p~ = -q^2 + p, q~ = q"


def test_verify_quartic_fields():
    code, doc = call("verify", "--quartic", "0", "2", "0", "1")
    assert code == 0 and doc["oracle_crosscheck"] == {"agreed": True}
    assert doc["result"]["certificate"]["exactly_one_real"] is False
    assert doc["result"]["oracle"]["distinct_real"] == 0


def test_roots_cubic():
    code, doc = call("roots", "cubic", "0", "-1", "0")
    assert code == 0 and doc["result"]["verdict"] == "ThreeDistinctReal"


def test_verify_cubic_and_map():
    assert call("verify", "--cubic", "1/2", "-3", "7/5")[0] == 0
    code, doc = call("--seed", "3", "verify", DATA / "shear.json", "--samples", "4")
    assert code == 0 and len(doc["result"]["checks"]) == 4
    code, doc = call("verify", DATA / "indefinite.json")
    assert code == 0 and doc["result"]["checks"][0]["oracle_count"] != 1


def test_invert():
    code, doc = call("invert", DATA / "shear.json", "--target", "11", "3")
    assert code == 0 and doc["result"]["preimage"] == ["2", "3"]
    code, doc = call("invert", DATA / "indefinite.json", "--target", "0", "0")
    assert code == 1 and doc["error"]["type"] == "NotInvertibleError"


def test_witness():
    code, doc = call("witness", DATA / "indefinite.json", "--bound", "4")
    assert code == 0
    assert doc["result"]["witness"]["kind"] == "Collision"
    assert doc["result"]["witness"]["target"] == ["0", "0"]
    assert call("witness", DATA / "shear.json", "--bound", "1")[1]["result"]["witness"] is None


def test_reduce():
    code, doc = call("reduce", DATA / "stretched.json")
    assert code == 1 and "--numeric" in doc["error"]["message"]
    code, doc = call("reduce", DATA / "stretched.json", "--numeric")
    assert code == 0 and doc["result"]["replay_matches"] is True
    assert any(s["numeric"] for s in doc["result"]["transcript"]["steps"])


def test_cuboid():
    assert call("cuboid", "eval", 1, 1, 2)[1]["result"]["value"] == "4032"
    _, doc = call("cuboid", "eval", 1, 1, 1)
    assert doc["result"] == {"value": "0", "warnings": ["p == q"]}
    assert call("cuboid", "transform", 2, 3, 2)[1]["result"]["image"] == ["13", "2"]


@pytest.mark.parametrize(
    "argv",
    [
        ("roots", "quartic", "1", "2"),
        ("roots", "cubic", "1/0", "0", "0"),
        ("roots", "quintic", "1"),
        ("classify", "/nonexistent/map.json"),
        ("cuboid", "eval", "1.5", "1", "1"),
        ("frobnicate",),
    ],
)
def test_input_errors(argv):
    code, doc = call(*argv)
    assert code == 1 and set(doc["error"]) == {"type", "message"}


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("classify", bad)[0] == 1
    bad.write_text('{"a": {"20": 0.5}}')
    code, doc = call("classify", bad)
    assert code == 1 and doc["error"]["type"] == "MalformedInput"


def test_rationals_are_strings():
    _, doc = call("classify", DATA / "indefinite.json")

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(doc["result"])


def test_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quadplane", "roots", "quartic", "0", "0", "0", "0"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["branch"] == "QuadrupleBranch"


def test_verify_never_disagrees_on_families():
    import random

    rng = random.Random(9)
    for _ in range(100):
        x0, b1, b2 = (rng.randint(-6, 6) for _ in range(3))
        # (x - x0)^2 (x^2 + b1 x + b2)
        a = (b1 - 2 * x0, b2 - 2 * x0 * b1 + x0 * x0, x0 * x0 * b1 - 2 * x0 * b2, x0 * x0 * b2)
        assert call("verify", "--quartic", *a)[0] == 0
        assert call("verify", "--quartic", *(rng.randint(-5, 5) for _ in range(4)))[0] == 0
        assert call("verify", "--cubic", *(f"{rng.randint(-9, 9)}/{rng.randint(1, 4)}" for _ in range(3)))[0] == 0
