# The keyed state generator and its oracle ladder.
#
# A key is group elements (g_0, ..., g_ell) plus a base state; input bits
# select which g_i join the product. The four oracles interpolate between
# "fully keyed" and "fully random": real -> game(j) -> hybrid -> ideal,
# where game(0) coincides with real and game(ell) with hybrid.

import sys

import numpy as np

from qgalab.prfsg import GameOracle, IdealOracle, RealOracle, keygen, state_gen
from qgalab.qga import iqp_poly_qga
from qgalab.rng import stream
from qgalab.states import projection_prob


def main():
    lam, ell = 3, 3
    family = iqp_poly_qga(lam)
    key = keygen(family, ell, stream(23, "demo-oracles", "key"))

    print("pairwise overlaps |<f(x)|f(y)>|^2 of the keyed generator:")
    inputs = ["000", "001", "011", "111"]
    for x in inputs:
        row = [projection_prob(state_gen(key, x), state_gen(key, y)) for y in inputs]
        print("  ", x, " ".join(f"{v:.3f}" for v in row))

    real = RealOracle(key)
    game0 = GameOracle(key, 0, family, stream(23, "demo-oracles", "game"))
    ideal = IdealOracle(lam, ell, stream(23, "demo-oracles", "ideal"))
    x = "101"
    print()
    print(f"query {x}:")
    print(f"  real vs game(0) overlap: {projection_prob(real.query(x), game0.query(x)):.12f}")
    print(f"  real vs ideal overlap:   {projection_prob(real.query(x), ideal.query(x)):.12f}")

    # repeat queries are answered from the memo, so transcripts are consistent
    again = ideal.query(x)
    print(f"  ideal repeat is the stored object: {again is ideal.memo[(1, 0, 1)]}")
    print(f"  transcript: {ideal.transcript}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
