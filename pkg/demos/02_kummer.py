"""Kummer's 24 transformations: calibration log, strict sweep and the group.

Run: python3 demos/02_kummer.py
"""

from collections import Counter

from hgmverify.covers import calibrate, verify_relation
from hgmverify.kummer import kummer_entries, transform_group

abc = "1/3,1/5,1/2"
entries = kummer_entries()

print(f"calibration at (a,b,c) = ({abc}), first qualified prime:")
for e in entries:
    R = e.relation(abc)
    cal = calibrate(R, (1, 150))
    mark = "literal" if cal["literal_pass"] else f"needs {cal['chosen']}"
    print(f"  {e.index:2d}  {e.mobius:8s} p={cal['prime']:3d}  {mark:22s} frozen {e.variant}")

print("\nstrict sweep with the frozen readings:")
for e in entries:
    rep = verify_relation(e.relation(abc), (1, 150), 10, 7)
    print("  " + rep.summary_line())

g = transform_group()
census = Counter(m for _, m in g["elements"])
print(f"\ngroup order {g['order']}, abelian {g['is_abelian']}, Moebius census {dict(census)}")
print("covariant composition law instead:", transform_group(law="covariant")["order"])
