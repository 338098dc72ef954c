"""Run a scenario file through the command line entry point and read back
the reports."""

import csv
import json
import tempfile
from pathlib import Path

from strata.cli import main

scenario = {
    "schema": 1,
    "name": "c2-on-wedge",
    "group": {"catalog": "C2"},
    "poset": {"objects": 3, "covers": [[0, 2], [1, 2]], "action": [[0, 1, 2], [1, 0, 2]]},
    "prime": 2,
    "max_degree": 6,
    "modules": [{"name": "k", "kind": "trivial"}, {"name": "regular", "kind": "regular"}],
    "analyses": ["build", "ext", "complexity", "quillen", "stratify"],
}

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "scenario.json"
    path.write_text(json.dumps(scenario))
    code = main(["--scenario", str(path), "--out", tmp])
    doc = json.loads((Path(tmp) / "c2-on-wedge.json").read_text())
    print("exit", code, "status", doc["status"])
    print("complexity:", {m: v["complexity"] for m, v in doc["results"]["complexity"].items()})
    with open(Path(tmp) / "c2-on-wedge-strata.csv") as fh:
        for row in csv.DictReader(fh):
            print(row["module"], row["rank"], row["weyl_order"], row["variety_dimension"], row["certificate"])
