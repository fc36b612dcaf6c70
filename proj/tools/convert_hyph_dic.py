#!/usr/bin/env python3
"""Convert a hunspell/libhyphen ``hyph_*.dic`` file into the plain pattern
format read by ``translid::load_patterns``.

    python3 tools/convert_hyph_dic.py hyph_it_IT.dic data/hyph_it.pat

The first line of a ``.dic`` file names its encoding and is dropped.  Keyword
lines (LEFTHYPHENMIN etc.) are translated to LEFTMIN/RIGHTMIN headers when
present, otherwise the given defaults are written.  Patterns that contain
anything other than a-z, '.' and digits (apostrophes, accented letters) can
never match a normalized word and are skipped.
"""

import argparse
import re
import sys

PATTERN = re.compile(r"^\.?[a-z0-9]*[a-z][a-z0-9]*\.?$")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("src")
    ap.add_argument("dst")
    ap.add_argument("--leftmin", type=int, default=2)
    ap.add_argument("--rightmin", type=int, default=2)
    args = ap.parse_args()

    with open(args.src, "rb") as fd:
        encoding = fd.readline().decode().strip() or "utf-8"
    lines = open(args.src, encoding=encoding).read().split("\n")[1:]

    left, right = args.leftmin, args.rightmin
    kept, skipped = [], 0
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("%") or line.startswith("#"):
            continue
        key = line.split()[0]
        if key == "LEFTHYPHENMIN":
            left = int(line.split()[1])
            continue
        if key == "RIGHTHYPHENMIN":
            right = int(line.split()[1])
            continue
        if key.startswith("COMPOUND") or key in ("NOHYPHEN",):
            continue
        if "/" in line or not PATTERN.match(line):
            skipped += 1
            continue
        kept.append(line)

    with open(args.dst, "w", encoding="ascii") as out:
        out.write("% converted from {} ({} patterns, {} skipped)\n".format(
            args.src.split("/")[-1], len(kept), skipped))
        out.write("LEFTMIN {}\nRIGHTMIN {}\n".format(left, right))
        for p in kept:
            out.write(p + "\n")
    print("wrote {} patterns, skipped {}".format(len(kept), skipped),
          file=sys.stderr)


if __name__ == "__main__":
    main()
