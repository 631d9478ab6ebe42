"""Encapsulation path feasibility on a tiny topology, then the feasible
fraction of random paths for a few capability mixes."""
from nwalk import netfeas as nf

topo = nf.load_topology("s r1\nr1 r2\nr2 r3\nr3 t\n")
caps = nf.load_capabilities("s Encap\nr1 Both\nr2 Both\nr3 Decap\n")
for route in (["s", "r1", "r2", "r3"], ["s", "r1", "r2", "r3", "t"], ["r1", "r2", "r3", "t"]):
    path = nf.path_from_nodes(route, caps, topo)
    walk = nf.path_to_nsteps(path)
    print(f"{'-'.join(route):16s} feasible={nf.feasibility_check(path)!s:5s} "
          f"compatible classical excursions={nf.compatible_excursions(walk)}")

print()
for dist in ({"Encap": "1/3", "Decap": "1/3", "Both": "1/3"},
             {"Encap": "1/3", "Decap": "1/2", "Both": "1/6"}):
    est, se, ref = nf.random_feasibility_rate(dist, 150, 100000, seed=1)
    print(dist, f"rate {est:.4f} +- {se:.4f}", "theory", ref)
