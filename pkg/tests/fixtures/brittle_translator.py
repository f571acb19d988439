"""Scripted translator: prints the reference target for the method found on
stdin, or a broken function when the source contains the trigger token."""

import argparse
import json
import re
import sys

BROKEN = "def {name}(*args):\n    return -999\n"


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--table", required=True)
    parser.add_argument("--token", default="while")
    parser.add_argument("--from", dest="src")
    parser.add_argument("--to", dest="tgt")
    args = parser.parse_args()

    with open(args.table, encoding="utf-8") as handle:
        table = json.load(handle)
    source = sys.stdin.read()
    match = re.search(r"\b(\w+)\s*\(", source)
    if match is None or match.group(1) not in table:
        print("unknown method", file=sys.stderr)
        return 1
    python_name, target = table[match.group(1)]
    if args.token in source:
        sys.stdout.write(BROKEN.format(name=python_name))
    else:
        sys.stdout.write(target + "\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
