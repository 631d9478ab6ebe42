"""Infer the type automaton of the Motzkin step set and print its matrices."""
from nwalk.walks import NStepSet
from nwalk.typelab import build_automaton

S = NStepSet.motzkin()
for variant in ("walk", "meander"):
    aut = build_automaton(S, variant=variant)
    d = aut.to_dict()
    print(f"[{variant}] {len(aut)} states")
    for st in d["states"]:
        print("   ", {k: st[k] for k in ("g", "k", "a", "b", "c")})
    for row in d["matrices"]["A"]:
        print("    A:", " | ".join(row))
    for ell, M in d["matrices"]["B"].items():
        for row in M:
            print(f"    B{ell}:", " | ".join(row))
