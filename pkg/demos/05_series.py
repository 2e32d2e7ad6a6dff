"""The two classical 2F1 identities behind the arithmetic statements.

Run: python3 demos/05_series.py
"""

from fractions import Fraction

from hgmverify.analytic import connection_coefficients, f21, verify_series_identity

a, b = Fraction(1, 3), Fraction(1, 5)
print("2F1(1/3,1/5;1/2|0.1) =", f21(a, b, Fraction(1, 2), 0.1))
print(verify_series_identity("quadratic", a, b, 0.1).summary_line())
print(verify_series_identity("connection", a, b, 0.6).summary_line())
print("coefficients at 1:", connection_coefficients(a, b))
print("shifted Gamma coefficient:", connection_coefficients(a, b, shifted=True))
print(verify_series_identity("connection", a, b, 0.6, shifted=True).summary_line())
