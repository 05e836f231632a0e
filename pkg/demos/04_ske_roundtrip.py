# Bit encryption from action-invariance, measured against its analytic rates.
#
# Enc(K, 0) = (|s>, g|s>) and Enc(K, 1) = (|s>, |s'>) for fresh Haar states.
# Decryption applies g to the first half and SWAP-tests: a zero bit always
# decodes, a one bit survives with probability 1 - (1 + 2^-lam)/2. Repeating
# each bit t times and voting "all zero" pushes the one-bit error down to
# ((1 + 2^-lam)/2)^t.

import sys

from qgalab.primitives import (
    ske1_dec,
    ske1_enc,
    ske1_keygen,
    ske_multi_dec,
    ske_multi_enc,
    ske_multi_keygen,
)
from qgalab.qga import iqp_poly_qga
from qgalab.rng import stream


def main():
    lam, trials = 3, 2000
    family = iqp_poly_qga(lam)

    ones = 0
    zeros_ok = 0
    for i in range(trials):
        rng = stream(31, "demo-ske", i)
        key = ske1_keygen(family, rng)
        zeros_ok += int(ske1_dec(key, ske1_enc(key, 0, rng), rng) == 0)
        ones += int(ske1_dec(key, ske1_enc(key, 1, rng), rng) == 1)
    print(f"one-bit scheme at lambda={lam}, {trials} trials")
    print(f"  zero bit decoded correctly: {zeros_ok}/{trials}")
    print(f"  one bit decoded correctly:  {ones / trials:.4f}"
          f"  (analytic {(1 - 2.0**-lam) / 2:.4f})")

    t, ell = 8, 4
    msg_ok = 0
    for i in range(500):
        rng = stream(31, "demo-ske-multi", i)
        key = ske_multi_keygen(family, t, ell, rng)
        cts = ske_multi_enc(key, [1, 0, 1, 1], rng)
        msg_ok += int(ske_multi_dec(key, cts, rng) == (1, 0, 1, 1))
    per_bit = 1 - ((1 + 2.0**-lam) / 2) ** t
    print(f"repetition scheme t={t}, ell={ell}, message 1011, 500 trials")
    print(f"  whole message recovered:    {msg_ok / 500:.4f}"
          f"  (analytic {per_bit**3:.4f})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
