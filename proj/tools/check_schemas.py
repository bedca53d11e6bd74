#!/usr/bin/env python3
# Copyright 2026 The Geo-MOEA Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs a small pipeline and simulate, then validates every JSON output
against the shipped schemas.

usage: check_schemas.py GEOMOEA_BINARY SCHEMA_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

# Output file -> schema file.
PIPELINE_FILES = {
    "domain.json": "domain.schema.json",
    "cells.json": "cells.schema.json",
    "front.json": "front.schema.json",
    "dpive.json": "partition.schema.json",
    "partition.json": "partition.schema.json",
    "matrix.json": "matrix.schema.json",
    "summary.json": "summary.schema.json",
    "config.json": "config.schema.json",
}


def load(path):
    with open(path) as f:
        return json.load(f)


def main():
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: load(p) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(s)) for name, s in schemas.items())

    def check(doc_path, schema_name):
        validator = jsonschema.Draft7Validator(schemas[schema_name],
                                               registry=registry)
        errors = sorted(validator.iter_errors(load(doc_path)), key=str)
        for e in errors[:5]:
            print(f"{doc_path.name}: {list(e.absolute_path)}: {e.message}")
        return not errors

    ok = True
    with tempfile.TemporaryDirectory() as tmp:
        out = pathlib.Path(tmp) / "run"
        subprocess.run([binary, "pipeline", "--seed", "11", "--out", str(out),
                        "--pop", "6", "--gens", "2", "--baseline", "dpive",
                        "--workers", "20", "--tasks", "20"],
                       check=True, stdout=subprocess.DEVNULL)
        for name, schema in PIPELINE_FILES.items():
            ok &= check(out / name, schema)

        sim = pathlib.Path(tmp) / "sim"
        subprocess.run([binary, "simulate", "--seed", "11", "--out", str(sim),
                        "--domain", str(out / "domain.json"), "--non-privacy"],
                       check=True, stdout=subprocess.DEVNULL)
        ok &= check(sim / "summary.json", "summary.schema.json")
        ok &= check(sim / "config.json", "config.schema.json")


    print("schemas OK" if ok else "schema validation FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
