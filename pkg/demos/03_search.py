"""A few searches at desk scale.

Case 1 is settled by the type 1 family at once.  Case 343 has a single
angle vector and the search shows no tiling exists.  Case 303 is the type
15 case: the family turns up within a few tiles.  Closing the whole case
takes about four minutes, so this demo stops it after one.
Run: python3 demos/03_search.py
"""
from pentile.search import Limits, search_case

for case, limits in [(1, Limits(max_tiles=12)),
                     (343, Limits(max_tiles=30)),
                     (303, Limits(max_tiles=20, time=60))]:
    v = search_case(case, limits)
    s = v.stats
    print(f"case {case}: {v.outcome} families={list(v.families)} nodes={s['nodes']} "
          f"max tiles={s['max_tiles']} elapsed={s['elapsed']}s limit={s.get('limit')}")
    print("   prunes:", s["prunes"])
