"""Print the 1-node adversary rate table and optionally save it as JSON."""

import argparse
import json
from pathlib import Path

from ccnsec.field import make_field
from ccnsec.report import format_table, table1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-p", "--field", type=int, default=13)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    doc = table1(make_field(args.field))
    print(format_table(doc))
    if args.out:
        args.out.write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
