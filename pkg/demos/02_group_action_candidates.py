# The three candidate unitary families side by side.
#
# Candidate 1 draws brickwork circuits of Haar 2-qubit blocks: expressive,
# but elements do not commute. Candidates 2 (T/CS words) and 3 (sparse
# GF(2) polynomial phases) are diagonal between Hadamard layers, so they
# commute pairwise and all of them fix the uniform superposition exactly.

import sys

import numpy as np

from qgalab.qga import apply_qga, iqp_circuit_qga, iqp_poly_qga, random_circuit_qga
from qgalab.rng import stream
from qgalab.states import plus_state, sample_haar_state


def commutator_norm(family, rng):
    psi = sample_haar_state(family.num_qubits, rng)
    g, h = family.sample_g(rng), family.sample_g(rng)
    gh = apply_qga(g, apply_qga(h, psi)).amplitudes
    hg = apply_qga(h, apply_qga(g, psi)).amplitudes
    return np.linalg.norm(gh - hg)


def fixed_point_error(family, rng):
    plus = plus_state(family.num_qubits)
    out = apply_qga(family.sample_g(rng), plus)
    return np.max(np.abs(out.amplitudes - plus.amplitudes))


def main():
    lam = 4
    rng = stream(11, "demo-candidates")
    families = [
        random_circuit_qga(lam, depth=3),
        iqp_circuit_qga(lam),
        iqp_poly_qga(lam),
    ]
    print(f"{'family':<16}{'||[g,h]psi||':>14}{'|g|+> - |+>|':>16}")
    for family in families:
        comm = commutator_norm(family, rng)
        fp = fixed_point_error(family, rng)
        print(f"{family.name:<16}{comm:>14.3e}{fp:>16.3e}")
    print()
    print("the diagonal families commute and never move |+...+>;")
    print("the generic circuits do neither, which is the point of candidate 1")
    return 0


if __name__ == "__main__":
    sys.exit(main())
