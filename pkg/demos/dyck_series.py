"""Dyck N-walks: counts from the DP next to the closed forms, then the
asymptotic proportions at a few lengths."""
from nwalk.walks import NStepSet, count_by_dp
from nwalk import dyck

S = NStepSet.dyck()
order = 13
forms = dyck.unweighted_closed_forms(order)
rows = {
    "bridge": (count_by_dp(S, order - 1, "bridge"), dyck.bridge_gf_series_unweighted(order)),
    "meander": (count_by_dp(S, order - 1, "meander"), forms["meander"]),
    "excursion": (count_by_dp(S, order - 1, "excursion"), forms["excursion"]),
}
for cls, (dp, cf) in rows.items():
    same = dp == cf.coefficients()
    print(f"{cls:9s} {' '.join(str(c) for c in dp)}   closed form agrees: {same}")

print("\nproportion of all walks (even n)")
for n in (20, 60, 200):
    total = 3 ** n
    ratios = [count_by_dp(S, n, c, "typed")[n] / total for c in ("bridge", "meander", "excursion")]
    print(f"n={n:3d}  " + "  ".join(f"{float(r):.4f}" for r in ratios))
