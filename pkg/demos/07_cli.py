"""Driving the command line front end from Python (same as the ``grassmann`` script)."""

import json
import tempfile
from pathlib import Path

from grassmann_geometry.cli import run

with tempfile.TemporaryDirectory() as tmp:
    cfg = Path(tmp) / "triple.json"
    with open(cfg, "w", encoding="utf-8") as fh:
        run(["sample", "--n", "6", "--m", "2", "--l", "3", "--seed", "2"], stdout=fh)
    print("$ grassmann angles -i triple.json --format csv")
    run(["angles", "-i", str(cfg), "--format", "csv"])
    print("$ grassmann count --m 2 --l 3 --n 7")
    run(["count", "--m", "2", "--l", "3", "--n", "7"])
    print("$ grassmann graph -i triple.json  (first basis loop)")
    out = Path(tmp) / "graph.json"
    with open(out, "w", encoding="utf-8") as fh:
        run(["graph", "-i", str(cfg)], stdout=fh)
    print(json.loads(out.read_text())["loop_basis"][0])
    print("exit status for a missing file:", run(["angles", "-i", str(Path(tmp) / "nope.json")]))
