import csv
import json
import os
import subprocess
import sys

import pytest

from strata.catalog import CATALOG, SchemaError, catalog_scenario, load_scenario
from strata.cli import LONG_COLUMNS, main, run_scenario, split_components
from strata.quillen import CSV_COLUMNS

QUICK = ["c2-point", "c3-point", "c2-chain", "s3-s2-p2", "c2-swap", "c2-wedge-swap"]


def _run(tmp_path, *args):
    return main(["--out", str(tmp_path), *args])


def test_list_catalog(capsys):
    assert main(["--list-catalog"]) == 0
    assert capsys.readouterr().out.split() == sorted(CATALOG)


@pytest.mark.parametrize("name", QUICK)
def test_catalog_runs(tmp_path, name):
    assert _run(tmp_path, "--scenario", name, "--max-degree", "6") == 0
    doc = json.loads((tmp_path / f"{name}.json").read_text())
    assert doc["status"] == "ok"
    with open(tmp_path / f"{name}.csv") as fh:
        header = next(csv.reader(fh))
    assert tuple(header) == ("scenario",) + LONG_COLUMNS
    with open(tmp_path / f"{name}-strata.csv") as fh:
        assert tuple(next(csv.reader(fh))) == ("scenario",) + CSV_COLUMNS


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert _run(a, "--scenario", "s3-s2-p2", "--max-degree", "6") == 0
    env = dict(os.environ, STRATA_SEED="12345", PYTHONHASHSEED="7")
    code = subprocess.run([sys.executable, "-m", "strata.cli", "--scenario", "s3-s2-p2", "--max-degree", "6",
                           "--out", str(b)], env=env, capture_output=True).returncode
    assert code == 0
    for f in sorted(os.listdir(a)):
        assert (a / f).read_bytes() == (b / f).read_bytes(), f


def _write(tmp_path, spec):
    path = tmp_path / "scn.json"
    path.write_text(json.dumps(spec))
    return str(path)


def test_non_transitive_poset_exit_2(tmp_path, capsys):
    spec = {"schema": 1, "name": "bad", "group": {"catalog": "C2"}, "prime": 2,
            "poset": {"objects": 3, "leq": [[1, 1, 0], [0, 1, 1], [0, 0, 1]]}}
    assert _run(tmp_path, "--scenario", _write(tmp_path, spec)) == 2
    err = capsys.readouterr().err
    assert "transitive" in err and "(0, 1, 2)" in err


@pytest.mark.parametrize("spec", [
    {"group": {"catalog": "C2"}, "poset": {"builder": "point"}, "prime": 3},
    {"group": {"catalog": "C2"}, "poset": {"builder": "point"}, "prime": 4},
    {"group": {"catalog": "C2"}, "poset": {"builder": "point"}, "prime": 2, "colour": "red"},
    {"group": {"catalog": "C2"}, "poset": {"builder": "point"}, "prime": 2, "schema": 2},
    {"group": {"catalog": "C2"}, "poset": {"builder": "point"}, "prime": 2, "field": "F3"},
    {"group": {"catalog": "C2"}, "poset": {"builder": "point"}, "prime": 2, "max_degree": 40},
    {"group": {"catalog": "C2"}, "poset": {"builder": "chain", "length": 20}, "prime": 2},
    {"group": {"catalog": "C2"}, "prime": 2},
])
def test_schema_errors_exit_2(tmp_path, spec):
    assert _run(tmp_path, "--scenario", _write(tmp_path, spec)) == 2


def test_disconnected_rejected_then_split(tmp_path):
    assert _run(tmp_path, "--scenario", "c2-discrete2", "--components", "reject") == 2
    assert _run(tmp_path, "--scenario", "c2-discrete2", "--max-degree", "4") == 0
    doc = json.loads((tmp_path / "c2-discrete2.json").read_text())
    assert len(doc["components"]) == 2 and doc["status"] == "ok"


def test_split_components_restricts_modules():
    scn = catalog_scenario("c2-discrete2", max_degree=4)
    parts = split_components(scn)
    assert [p.category.n_obj for p in parts] == [1, 1]
    for part in parts:
        assert sorted(part.modules) == sorted(scn.modules)


def test_prime_override_and_explicit_group(tmp_path):
    spec = {"schema": 1, "name": "c3-perm", "prime": 3, "max_degree": 4,
            "group": {"permgens": [[1, 2, 0]]}, "poset": {"builder": "point"},
            "modules": [{"name": "k", "kind": "trivial"}], "analyses": ["build", "ext", "complexity"]}
    assert _run(tmp_path, "--scenario", _write(tmp_path, spec)) == 0
    doc = json.loads((tmp_path / "c3-perm.json").read_text())
    assert doc["prime"] == 3 and doc["max_degree"] == 4


def test_run_scenario_certificates():
    doc, rows, strata_rows, failed = run_scenario(catalog_scenario("c2xc2-point", max_degree=6))
    assert not failed and doc["status"] == "ok"
    assert all(v for v in doc["certificates"].values())
    assert strata_rows


def test_load_scenario_rejects_unknown_analysis():
    with pytest.raises(SchemaError):
        load_scenario({"group": {"catalog": "C2"}, "poset": {"builder": "point"}, "prime": 2,
                       "analyses": ["nope"]})
