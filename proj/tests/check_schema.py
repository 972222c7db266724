"""Runs the CLI on a handful of configurations and validates every JSON summary against the schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

RUNS = [
    (["constant", "--group", "psl2z"], 0),
    (["constant", "--group", "triangle237"], 0),
    (["census", "--group", "psl2z", "--L", "3"], 0),
    (["census", "--group", "psl2z", "--max-trace", "20", "--primitive"], 0),
    (["census", "--group", "triangle237", "--L", "2.5"], 0),
    (["census", "--group", "psl2z", "--L", "5", "--max-points", "10"], 3),
    (["delsarte", "--group", "psl2z", "--R", "4"], 0),
    (["lowlying", "--k", "1,2", "--L", "6"], 0),
    (["equidist", "--L", "2", "--L", "3", "--bins", "4x4x2"], 0),
    (["equidist", "--L", "2", "--measure", "segment"], 0),
]


def main():
    tool, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for n, (args, want_code) in enumerate(RUNS):
            prefix = str(Path(tmp) / f"run{n}")
            proc = subprocess.run([tool, *args, "--out", prefix], capture_output=True, text=True)
            docs = [json.loads(proc.stdout)]
            written = Path(prefix + ".json")
            if written.exists():
                docs.append(json.loads(written.read_text()))
            elif want_code == 0:
                print(f"FAIL {' '.join(args)}: no {written.name}")
                failures += 1
            if proc.returncode != want_code:
                print(f"FAIL {' '.join(args)}: exit {proc.returncode}, expected {want_code}")
                failures += 1
            for doc in docs:
                errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
                for err in errors:
                    print(f"FAIL {' '.join(args)}: {list(err.path)}: {err.message}")
                failures += len(errors)
            if not failures:
                print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
