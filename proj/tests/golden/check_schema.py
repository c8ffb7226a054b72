"""Validates the fixtures and the JSON golden reports against docs/schema."""
import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource

root = pathlib.Path(sys.argv[1])
schemas = {name: json.loads((root / "docs/schema" / name).read_text())
           for name in ("pair.schema.json", "report.schema.json")}
registry = Registry().with_resources(
    (name, Resource.from_contents(s)) for name, s in schemas.items())
pair = jsonschema.Draft202012Validator(schemas["pair.schema.json"], registry=registry)
report = jsonschema.Draft202012Validator(schemas["report.schema.json"], registry=registry)

failed = 0
for f in sorted((root / "tests/fixtures").glob("*.json")):
    if f.name in ("bad-bracket-key.json",):
        continue
    for e in pair.iter_errors(json.loads(f.read_text())):
        print(f"{f.name}: {e.message}")
        failed += 1
for f in sorted((root / "tests/golden/cases").glob("*.out")):
    text = f.read_text()
    if not text.startswith("{"):
        continue
    for e in report.iter_errors(json.loads(text)):
        print(f"{f.name}: {e.json_path}: {e.message}")
        failed += 1
sys.exit(1 if failed else 0)
