"""Number of returns to zero in simulated Dyck excursions against the limit law."""
from fractions import Fraction as F

from nwalk.walks import NStepSet
from nwalk.dyck import DyckWeights, returns_pmf, returns_regime
from nwalk.montecarlo import SimConfig, statistic_histograms

for w in ((F(1, 3), F(1, 3), F(1, 3)), (F(1, 2), F(1, 4), F(1, 4))):
    cfg = SimConfig(NStepSet.dyck(*w), 100, 400000, seed=7)
    h = statistic_histograms(cfg, "returns_to_zero")
    law = returns_pmf(DyckWeights(*w), 200)
    print(f"weights {tuple(str(x) for x in w)}  case {returns_regime(DyckWeights(*w))}  "
          f"accepted {h.accepted}/{h.runs}  TV {h.tv(law):.4f}")
    for k in range(6):
        got = h.pmf[k] if k < len(h.pmf) else 0.0
        print(f"   k={k}  simulated {got:.4f}  limit {law[k]:.4f}")
