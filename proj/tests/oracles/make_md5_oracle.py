#!/usr/bin/env python3
"""Freeze MD5 digests and hashed ids from hashlib.

    python3 tests/oracles/make_md5_oracle.py > tests/data/md5_oracle.tsv

Output lines: ``token<TAB>md5hex<TAB>id_V4096<TAB>id_V1000003<TAB>id_V26``
where id = 1 + (big-endian uint64 of digest[0:8]) mod V.
"""

import hashlib

TOKENS = ["a", "gi", "ta", "gee", "bha", "lo", "ba", "sha", "sa", "ran",
          "ghae", "ka", "mi", "ro", "seu", "jan", "hal", "abc",
          "message", "zzzzzzzzzz", "abcdefghijklmnopqrstuvwxyz",
          "x" * 55, "y" * 56, "z" * 63, "q" * 64, "w" * 65, "e" * 130]


def hashed(token, v):
    d = hashlib.md5(token.encode("utf-8")).digest()
    return 1 + int.from_bytes(d[:8], "big") % v


for t in TOKENS:
    print("\t".join([t, hashlib.md5(t.encode()).hexdigest(),
                     str(hashed(t, 4096)), str(hashed(t, 1000003)),
                     str(hashed(t, 26))]))
