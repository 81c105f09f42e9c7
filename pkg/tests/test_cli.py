import json
import os

import pytest
from click.testing import CliRunner

from lmsb.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def _invoke(runner, args, **kwargs):
    result = runner.invoke(main, args, **kwargs)
    return result


def test_models_lists_builtins(runner):
    r = _invoke(runner, ["models", "--no-cache"])
    assert r.exit_code == 0
    names = [m["name"] for m in json.loads(r.output)]
    assert names == ["p2", "f0", "f1", "f2"]


def test_yukawa_p2_closed_form(runner):
    r = _invoke(runner, ["yukawa", "--model", "p2", "--no-cache"])
    assert r.exit_code == 0
    table = json.loads(r.output)
    assert table == {"(z,z;z)": "-1/(3*(27*z + 1))"}


def test_relations_f0(runner):
    r = _invoke(runner, ["relations", "--model", "f0", "--no-cache"])
    assert json.loads(r.output) == [[-2, 1, 0, 1, 0], [-2, 0, 1, 0, 1]]


def test_solutions_p2_mirror_map_coefficients(runner):
    r = _invoke(runner, ["solutions", "--model", "p2", "--order", "3",
                         "--no-cache"])
    obj = json.loads(r.output)
    t1 = {tuple(p["log"]): p["series"] for p in obj["t"][0]}
    assert t1[(1,)] == {"0": "1"}
    assert t1[(0,)] == {"1": "-6", "2": "45", "3": "-560"}


def test_json_output_is_deterministic(runner, tmp_path):
    args = ["gw0", "--model", "p2", "--order", "5", "--no-cache"]
    a = _invoke(runner, args).output
    b = _invoke(runner, args).output
    assert a == b


def test_cache_roundtrip_and_no_cache(runner, tmp_path):
    cache = str(tmp_path / "cache")
    args = ["gw0", "--model", "p2", "--order", "4", "--cache-dir", cache]
    first = _invoke(runner, args)
    assert first.exit_code == 0
    files = os.listdir(cache)
    assert len(files) == 1
    second = _invoke(runner, args)
    assert second.output == first.output
    # corrupt entry falls back to recomputation
    path = os.path.join(cache, files[0])
    with open(path, "w") as fh:
        fh.write("{ corrupt")
    third = _invoke(runner, args)
    assert third.output == first.output
    # --no-cache writes nothing
    empty = str(tmp_path / "empty")
    r = _invoke(runner, ["gw0", "--model", "p2", "--order", "4",
                         "--cache-dir", empty, "--no-cache"])
    assert r.exit_code == 0
    assert not os.path.exists(empty)


def test_custom_polytope_input(runner, tmp_path):
    f = tmp_path / "poly.json"
    f.write_text(json.dumps({"vertices": [[1, 0], [0, 1], [-1, -1]]}))
    r = _invoke(runner, ["polytope", "--input", str(f), "--no-cache"])
    obj = json.loads(r.output)
    assert obj["reflexive"] is True
    assert obj["normalized_volume"] == 3
    r = _invoke(runner, ["relations", "--input", str(f), "--no-cache"])
    assert json.loads(r.output) == [[-3, 1, 1, 1]]


def test_unknown_model_is_a_structured_error(runner):
    r = _invoke(runner, ["pf-ops", "--model", "nope", "--no-cache"])
    assert r.exit_code != 0


def test_genus2_without_ambiguity_fails_cleanly(runner):
    r = _invoke(runner, ["genus2", "--model", "f0", "--order", "3",
                         "--no-cache"])
    assert r.exit_code == 2


def test_genus1_amplitude_dump(runner):
    r = _invoke(runner, ["genus1", "--model", "p2", "--order", "5",
                         "--no-cache"])
    obj = json.loads(r.output)
    assert obj["g"] == 1 and obj["n"] == 1
    assert obj["poly"][1] == ["A^1", "-1/2"]
    assert obj["qexp"]["1"] == "1/4"
