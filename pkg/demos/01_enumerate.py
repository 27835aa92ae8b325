"""Enumerate the maximal good sets and print the class tables.

Takes a minute or two.  Run: python3 demos/01_enumerate.py
"""
from collections import Counter

from pentile.goodset_enum import emit_tables, enumerate_all

records, info = enumerate_all()
print(f"{info['maximal']} maximal sets in the ordered chamber")
print(f"{info['permuted']} sets after all coordinate permutations")
print(f"{info['classes']} classes under the dihedral group")
print("per dimension:", dict(sorted(Counter(r.dim for r in records).items(), reverse=True)))
print(f"recurse calls: {info['stats'].recurse_calls}, elapsed {info['stats'].elapsed:.1f}s")

# the first lines of each table; '~' marks classes containing three
# consecutive corners, which the type 1 family always covers
text = emit_tables(records)
for block in text.split("## ")[1:]:
    lines = block.splitlines()
    print("##", lines[0], f"({len(lines) - 1} rows)")
    for line in lines[1:4]:
        print("  ", line)
