import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
schema = json.loads((root / "schemas" / "experiment_config.schema.json").read_text())
for path in sorted((root / "configs").glob("*.json")):
    jsonschema.validate(json.loads(path.read_text()), schema)
    print("ok", path.name)

bad = json.loads((root / "tests" / "data" / "unknown_key.json").read_text())
try:
    jsonschema.validate(bad, schema)
except jsonschema.ValidationError:
    print("rejected unknown_key.json")
else:
    sys.exit("unknown key accepted")
