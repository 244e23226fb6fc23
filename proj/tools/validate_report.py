#!/usr/bin/env python3
"""Validate qgclass JSON-lines reports against schema/report.schema.json.

Usage: validate_report.py [--schema PATH] [REPORT ...]   (stdin when no file)
Also rejects duplicate (case, suite, name) records.
"""
import argparse
import json
import pathlib
import sys

import jsonschema

DEFAULT_SCHEMA = pathlib.Path(__file__).resolve().parent.parent / "schema" / "report.schema.json"


def validate(lines, validator, source):
    errors = []
    seen = set()
    count = 0
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        count += 1
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            errors.append(f"{source}:{lineno}: not JSON: {e}")
            continue
        for err in validator.iter_errors(record):
            errors.append(f"{source}:{lineno}: {err.message}")
        key = (record.get("case"), record.get("suite"), record.get("name"))
        if key in seen:
            errors.append(f"{source}:{lineno}: duplicate record {key}")
        seen.add(key)
    return count, errors


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--schema", default=str(DEFAULT_SCHEMA))
    ap.add_argument("reports", nargs="*")
    args = ap.parse_args()
    schema = json.loads(pathlib.Path(args.schema).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    total, errors = 0, []
    if args.reports:
        for path in args.reports:
            with open(path) as fh:
                n, e = validate(fh, validator, path)
            total += n
            errors += e
    else:
        total, errors = validate(sys.stdin, validator, "<stdin>")
    for e in errors:
        print(e, file=sys.stderr)
    print(f"{total} records, {len(errors)} errors")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
