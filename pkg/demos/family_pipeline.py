"""
The witness family, end to end
==============================

The degree-m witness multiplies the extremal quadratic by one extra
variable per missing degree:

    W_m(z) = z3 ... zm * (z1^2 - z2^2 + c z1 z2),   c = 2^{(m+1)/2}.

On the torus the extra variables are unimodular, so the sup norm never
changes, while the coefficient norm is taken with the degree-dependent
exponent 2m/(m+1).  Running the fully numerical pipeline over the family
must land exactly on the closed-form lower bound for D(m).
"""

from bhbounds import (
    FamilyParams,
    bh_exponent,
    bh_ratio,
    build_witness,
    coefficient_lp_norm,
    lower_bound,
    optimal_x,
    sup_norm,
)

print(" m  pipeline estimate   closed form        |difference|")
for m in range(2, 7):
    params = FamilyParams(1.0, -1.0, optimal_x(m))
    witness = build_witness(m, params)

    # the three ingredients, spelled out once for m = 2
    if m == 2:
        norm = coefficient_lp_norm(witness, bh_exponent(m))
        bracket = sup_norm(witness)
        print(f"    [m=2 detail: coeff norm {norm:.9f} = 6^(3/4), "
              f"sup norm {bracket.lower_estimate:.9f} = sqrt(12)]")

    estimate = bh_ratio(witness).estimate
    expected = lower_bound(m)
    print(f"{m:2d}  {estimate:.15f}  {expected:.15f}  {abs(estimate - expected):.2e}")

print("\nEvery degree-m polynomial certifies a lower bound for D(m); this")
print("family is simply a very good one, and the agreement above is the")
print("numerical proof that the engine reproduces its closed form.")
