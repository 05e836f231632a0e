"""Sparse multilinear polynomials over GF(2), stored as monomial bitmasks.

Bit j of a mask marks variable x_{j+1}; a monomial evaluates to 1 on an
assignment exactly when every marked variable is 1. The constant monomial
(mask 0) is excluded, so every polynomial here vanishes on the all-zeros
assignment.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SparsePolyF2:
    num_vars: int
    terms: frozenset[int]
    degree_bound: int
    term_bound: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", frozenset(int(m) for m in self.terms))
        v, d, w = self.num_vars, self.degree_bound, self.term_bound
        if v < 1:
            raise ValueError("need at least one variable")
        if not 1 <= d <= v:
            raise ValueError(f"degree bound {d} outside [1, {v}]")
        if w < 1:
            raise ValueError("term bound must be positive")
        if len(self.terms) > w:
            raise ValueError(f"{len(self.terms)} terms exceed the bound {w}")
        for m in self.terms:
            if not 1 <= m < 2**v:
                raise ValueError(f"monomial mask {m:#x} out of range (constant term excluded)")
            if m.bit_count() > d:
                raise ValueError(f"monomial mask {m:#x} exceeds degree bound {d}")

    def evaluate(self, assignment: int) -> int:
        """f(x) for an assignment mask (bit j = x_{j+1}); returns 0 or 1."""
        if not 0 <= assignment < 2**self.num_vars:
            raise ValueError(f"assignment {assignment} out of range")
        value = 0
        for m in self.terms:
            if assignment & m == m:
                value ^= 1
        return value

    def sign_vector(self) -> np.ndarray:
        """(-1)^f over all basis indices, qubit j <-> variable x_{j+1}.

        Qubit j sits at amplitude-index bit (num_vars - 1 - j), so each mask is
        bit-reversed into index space before the vectorized evaluation. The
        result is cached (read-only) since descriptions are immutable.
        """
        cached = self.__dict__.get("_sign_vector")
        if cached is not None:
            return cached
        v = self.num_vars
        idx = np.arange(2**v)
        index_masks = np.array([_bit_reverse(m, v) for m in self.terms], dtype=np.int64)
        hits = (idx[None, :] & index_masks[:, None]) == index_masks[:, None]
        f = np.bitwise_xor.reduce(hits.astype(np.int64), axis=0)
        signs = 1.0 - 2.0 * f
        signs.flags.writeable = False
        self.__dict__["_sign_vector"] = signs
        return signs


def _bit_reverse(mask: int, width: int) -> int:
    out = 0
    for j in range(width):
        if mask >> j & 1:
            out |= 1 << (width - 1 - j)
    return out


def monomial_count(num_vars: int, degree_bound: int) -> int:
    """Number of admissible monomials: nonzero, degree at most d."""
    return sum(math.comb(num_vars, k) for k in range(1, degree_bound + 1))


def sample_sparse_poly(
    num_vars: int, degree_bound: int, term_bound: int, rng: np.random.Generator
) -> SparsePolyF2:
    """Draw ``term_bound`` monomials i.i.d. uniform over the admissible set
    (nonzero masks of degree at most ``degree_bound``), then deduplicate;
    collisions shrink the term count rather than resampling.
    """
    if not 1 <= degree_bound <= num_vars:
        raise ValueError(f"degree bound {degree_bound} outside [1, {num_vars}]")
    if term_bound < 1:
        raise ValueError("term bound must be positive")
    # uniform over nonzero masks of popcount <= d, by rejection on raw masks
    terms: set[int] = set()
    needed = term_bound
    while needed > 0:
        batch = rng.integers(1, 2**num_vars, size=2 * needed)
        for mask in batch:
            mask = int(mask)
            if mask.bit_count() <= degree_bound:
                terms.add(mask)
                needed -= 1
                if needed == 0:
                    break
    return SparsePolyF2(num_vars, frozenset(terms), degree_bound, term_bound)


def poly_to_json(poly: SparsePolyF2) -> dict:
    return {
        "degree_bound": poly.degree_bound,
        "term_bound": poly.term_bound,
        "terms": [format(m, "x") for m in sorted(poly.terms)],
    }


def poly_from_json(obj: dict, num_vars: int) -> SparsePolyF2:
    terms = frozenset(int(h, 16) for h in obj["terms"])
    return SparsePolyF2(num_vars, terms, int(obj["degree_bound"]), int(obj["term_bound"]))
