"""Finite hypergeometric sums at one prime, three ways.

Run: python3 demos/01_finite_sums.py
"""

from hgmverify import GaussTable, HGMParams, hyp_sum, make_field
from hgmverify.hypsum import point_count_form, trace_at_one

p, z = 37, 5
T = GaussTable(make_field(p), backend="exact")
P = HGMParams.parse("1/4,1/3;1/2,0")

direct = hyp_sum(T, P, z)
print(f"H_{p}({P} | {z}) = {direct.approx:.12f}")

# the same number from a single character sum over F_p
print("point-count form agrees:", point_count_form(T, P, z) == direct)

# parameters swapped top <-> bottom (negated) at 1/z
print("switch agrees:          ", hyp_sum(T, P.switched(), pow(z, -1, p)) == direct)

# psi_2 instead of psi_1 gives the same exact value
T2 = GaussTable(make_field(p), backend="exact", psi_scale=2)
print("psi-independent:        ", hyp_sum(T2, P, z) == direct)

# z = 1: the finite sum against the closed form
Q = HGMParams.parse("1/2,1/3;0,0")
T13 = GaussTable(make_field(13), backend="exact")
print(f"H_13({Q} | 1) = {hyp_sum(T13, Q, 1).approx:.6f},  closed form {trace_at_one(T13, Q).approx:.6f}")
