"""Points attached to 2^3 + 2^3 = 4^2 and the traces along the chain of covers.

Run: python3 demos/04_diophantine.py
"""

from hgmverify.covers import dioph_chain, dioph_points

pt = dioph_points(2, 2, 4, 3, 2)
print(f"z0 = {pt.z0}, w0 = {pt.w0}, u0 = {pt.u0_text()}, gcd = {pt.gcd}")
rep = dioph_chain(pt, 3)
for row in rep.rows:
    print(f"  p={row['prime']:3d} {row['stage']:12s} z={row['z_sample']:3d} -> {row['mapped']:3d}  {row['status']}")
print(rep.summary_line())
