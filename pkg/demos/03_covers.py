"""Relations coming from covers of the line: profiles, monodromy, traces.

Run: python3 demos/03_covers.py
"""

from hgmverify.covers import catalog_relations, monodromy_check, ramification_profile, verify_relation

for R in catalog_relations("1/3", "1/5", 5):
    prof = ramification_profile(R.map)
    step1 = monodromy_check(R)
    rep = verify_relation(R, (1, 150), 10, 7)
    print(f"{R.name}")
    print(f"  map      {R.map}")
    print(f"  profile  {prof}")
    print(f"  step 1   recovered {step1['recovered']}  ok={step1['ok']}")
    print(f"  step 2   {rep.summary_line()}")
    print(f"  reading  {R.describe(R.frozen_variant)}")
