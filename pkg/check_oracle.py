#!/usr/bin/env python3

import sys

from hombound.graph_core import complete_graph
from hombound.hom_builder import build_hom_poset
from hombound.oracle import brute_force_hom_count

# (r, n, |Hom_p(K_r, K_n)|)
EXPECTED = [(2, 2, 2), (2, 3, 12), (2, 4, 50), (3, 4, 60), (3, 2, 0)]


def check_cardinalities() -> bool:
    ok = True
    for r, n, expected in EXPECTED:
        F, H = complete_graph(r), complete_graph(n)
        enumerated = len(build_hom_poset(F, H))
        brute = brute_force_hom_count(F, H)
        if enumerated == brute == expected:
            print(f"✅ Hom_p(K{r}, K{n}) = {expected}")
        else:
            print(f"❌ Hom_p(K{r}, K{n}): enumerator {enumerated}, oracle {brute}, expected {expected}")
            ok = False
    return ok


if __name__ == "__main__":
    print("Checking Hom poset cardinalities against the brute-force oracle...")
    if not check_cardinalities():
        sys.exit(1)
    print("✅ Oracle check passed")
