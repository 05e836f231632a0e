"""Sample generators for the distinguishing assumptions.

Every generator returns the same nested shape:

    sample = [ block_1, ..., block_Q ]      one block per outer index q
    block  = [ copy_1, ..., copy_t ]        t identical copies
    copy   = (state, ...)                   a 1-, 2- or 4-tuple of states

Copies inside a block are the *same* object: repetition of a tuple means the
identical states, not fresh draws. Distributions without an outer index
produce a single block. The DDH pair is deliberately literal: one tuple,
repeated across both the copy and the block axis.
"""
from __future__ import annotations

from enum import Enum

import numpy as np

from .qga import QgaInstance, apply_qga
from .states import StateVector, sample_haar_state


class DistributionId(str, Enum):
    PR0 = "pr0"                  # (|s0>, h|s0>)^t
    PR1 = "pr1"                  # (|s0>, haar)^t
    PRQ0 = "prq0"                # { (h_q|s0>)^t }_q
    PRQ1 = "prq1"                # { haar_q^t }_q
    HAAR_PR0 = "haarpr0"         # (|s>, h|s>)^t, |s> haar
    HAAR_PR1 = "haarpr1"         # (|s>, |s'>)^t, both haar
    HAAR_PRQ0 = "haarprq0"       # { (|s_q>, h_q|s_q>)^t }_q
    HAAR_PRQ1 = "haarprq1"       # { (|s_q>, |s'_q>)^t }_q
    DDH0 = "ddh0"                # { (|s0>, g~|s0>, g|s0>, g~g|s0>)^t }_q, one tuple
    DDH1 = "ddh1"                # fourth component replaced by fresh h|s0>
    HAAR_DDH0 = "haarddh0"       # shared g on per-q haar states
    HAAR_DDH1 = "haarddh1"       # fresh h_q on per-q haar states
    NR0 = "nr0"                  # { (g_q|s0>, g~ g_q|s0>)^t }_q, shared g~
    NR1 = "nr1"                  # { (g_q|s0>, h_q|s0>)^t }_q
    NR_PRIME = "nrprime"         # { (|s_q>, h~_q|s_q>)^t }_q, haar bases
    NR_PRIME0 = "nrprime0"       # { (|s_q>, g~|s_q>)^t }_q, shared g~
    NR_PRIME1 = "nrprime1"       # { (|s_q>, |s'_q>)^t }_q


Sample = list[list[tuple[StateVector, ...]]]


def _blocks(tuples: list[tuple[StateVector, ...]], t: int) -> Sample:
    return [[tup] * t for tup in tuples]


def gen_distribution(
    dist: DistributionId | str, qga: QgaInstance, t: int, q_samples: int, rng: np.random.Generator
) -> Sample:
    """Draw one sample of the named distribution over the given QGA."""
    dist = DistributionId(dist)
    if t < 1 or q_samples < 1:
        raise ValueError("t and Q must be positive")
    lam = qga.num_qubits
    s0 = qga.sample_s().expand()

    if dist is DistributionId.PR0:
        h = qga.sample_g(rng)
        return _blocks([(s0, apply_qga(h, s0))], t)
    if dist is DistributionId.PR1:
        return _blocks([(s0, sample_haar_state(lam, rng))], t)

    if dist is DistributionId.PRQ0:
        return _blocks([(apply_qga(qga.sample_g(rng), s0),) for _ in range(q_samples)], t)
    if dist is DistributionId.PRQ1:
        return _blocks([(sample_haar_state(lam, rng),) for _ in range(q_samples)], t)

    if dist is DistributionId.HAAR_PR0:
        s = sample_haar_state(lam, rng)
        return _blocks([(s, apply_qga(qga.sample_g(rng), s))], t)
    if dist is DistributionId.HAAR_PR1:
        return _blocks([(sample_haar_state(lam, rng), sample_haar_state(lam, rng))], t)

    if dist is DistributionId.HAAR_PRQ0:
        tuples = []
        for _ in range(q_samples):
            s = sample_haar_state(lam, rng)
            tuples.append((s, apply_qga(qga.sample_g(rng), s)))
        return _blocks(tuples, t)
    if dist is DistributionId.HAAR_PRQ1:
        return _blocks(
            [(sample_haar_state(lam, rng), sample_haar_state(lam, rng)) for _ in range(q_samples)], t
        )

    if dist in (DistributionId.DDH0, DistributionId.DDH1):
        g_tilde = qga.sample_g(rng)
        g = qga.sample_g(rng)
        third = apply_qga(g, s0)
        if dist is DistributionId.DDH0:
            fourth = apply_qga(g_tilde, third)
        else:
            fourth = apply_qga(qga.sample_g(rng), s0)
        tup = (s0, apply_qga(g_tilde, s0), third, fourth)
        return _blocks([tup] * q_samples, t)

    if dist is DistributionId.HAAR_DDH0:
        g = qga.sample_g(rng)
        tuples = []
        for _ in range(q_samples):
            s = sample_haar_state(lam, rng)
            tuples.append((s, apply_qga(g, s)))
        return _blocks(tuples, t)
    if dist is DistributionId.HAAR_DDH1:
        tuples = []
        for _ in range(q_samples):
            s = sample_haar_state(lam, rng)
            tuples.append((s, apply_qga(qga.sample_g(rng), s)))
        return _blocks(tuples, t)

    if dist is DistributionId.NR0:
        g_tilde = qga.sample_g(rng)
        tuples = []
        for _ in range(q_samples):
            first = apply_qga(qga.sample_g(rng), s0)
            tuples.append((first, apply_qga(g_tilde, first)))
        return _blocks(tuples, t)
    if dist is DistributionId.NR1:
        tuples = []
        for _ in range(q_samples):
            tuples.append(
                (apply_qga(qga.sample_g(rng), s0), apply_qga(qga.sample_g(rng), s0))
            )
        return _blocks(tuples, t)

    if dist is DistributionId.NR_PRIME:
        tuples = []
        for _ in range(q_samples):
            s = sample_haar_state(lam, rng)
            tuples.append((s, apply_qga(qga.sample_g(rng), s)))
        return _blocks(tuples, t)
    if dist is DistributionId.NR_PRIME0:
        g_tilde = qga.sample_g(rng)
        tuples = []
        for _ in range(q_samples):
            s = sample_haar_state(lam, rng)
            tuples.append((s, apply_qga(g_tilde, s)))
        return _blocks(tuples, t)
    if dist is DistributionId.NR_PRIME1:
        return _blocks(
            [(sample_haar_state(lam, rng), sample_haar_state(lam, rng)) for _ in range(q_samples)], t
        )

    raise ValueError(f"unhandled distribution id {dist}")


def sample_shape(sample: Sample) -> tuple[int, int, int]:
    """(blocks, copies per block, tuple arity) of a generated sample."""
    return len(sample), len(sample[0]), len(sample[0][0])
