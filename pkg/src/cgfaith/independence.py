"""Exact conditional-independence decisions for regular Gaussians."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

import numpy as np

from .gaussian import Gaussian, inverse

DEFAULT_TOL = 1e-7
CONCLUSION_FACTOR = 10.0


@dataclass(frozen=True)
class CiVerdict:
    i: int
    j: int
    Z: tuple[int, ...]
    partial_corr: float
    independent: bool
    tolerance: float

    def record(self) -> dict:
        return {
            "i": self.i, "j": self.j, "Z": list(self.Z),
            "partial_corr": self.partial_corr, "independent": self.independent,
        }


def partial_correlation(cov: np.ndarray, i: int, j: int, Z: Iterable[int]) -> float:
    """Partial correlation of positions ``i`` and ``j`` given positions ``Z``.

    Read off the inverse of the covariance submatrix over ``{i, j} | Z``.
    """
    idx = [i, j, *Z]
    prec = inverse(cov[np.ix_(idx, idx)])
    return float(-prec[0, 1] / np.sqrt(prec[0, 0] * prec[1, 1]))


def ci_test(dist: Gaussian, i: int, j: int, Z: Iterable[int] = (),
            tol: float = DEFAULT_TOL) -> CiVerdict:
    Z = tuple(sorted(Z))
    if i == j or i in Z or j in Z:
        raise ValueError("i, j and Z must be disjoint")
    pos = dist.positions([i, j, *Z])
    pc = partial_correlation(dist.covariance, pos[0], pos[1], pos[2:])
    return CiVerdict(i, j, Z, pc, abs(pc) < tol, tol)


def ci_test_sets(dist: Gaussian, I: Iterable[int], J: Iterable[int],
                 K: Iterable[int] = (), tol: float = DEFAULT_TOL) -> bool:
    """Set-level independence via the pairwise reduction."""
    I, J, K = set(I), set(J), tuple(sorted(K))
    if I & J or I & set(K) or J & set(K):
        raise ValueError("I, J and K must be disjoint")
    return all(ci_test(dist, i, j, K, tol).independent for i in sorted(I) for j in sorted(J))


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    I: tuple[int, ...]
    J: tuple[int, ...]
    K: tuple[int, ...]
    extra: tuple[int, ...]


class _PairCache:
    def __init__(self, dist: Gaussian):
        self.dist = dist
        self.cache: dict = {}

    def pc(self, i, j, Z) -> float:
        key = (i, j, Z)
        if key not in self.cache:
            pos = self.dist.positions([i, j, *Z])
            self.cache[key] = partial_correlation(self.dist.covariance, pos[0], pos[1], pos[2:])
        return self.cache[key]

    def indep(self, I, J, K, tol) -> bool:
        Z = tuple(sorted(K))
        return all(abs(self.pc(i, j, Z)) < tol for i in I for j in J)

    def clearly_dep(self, I, J, K, tol) -> bool:
        Z = tuple(sorted(K))
        return any(abs(self.pc(i, j, Z)) >= tol for i in I for j in J)


def axiom_check(dist: Gaussian, tol: float = DEFAULT_TOL) -> list[AxiomViolation]:
    """Search for failures of symmetry, decomposition, intersection and weak transitivity.

    Every assignment of variables to disjoint roles is tried. A hypothesis
    counts as holding below ``tol``; a conclusion counts as failed only at
    ``10 * tol`` or above, so decision-boundary noise is not reported.
    """
    verts = list(dist.index)
    if len(verts) > 6:
        raise ValueError("axiom_check enumerates all role assignments; at most 6 variables")
    c = _PairCache(dist)
    hi = CONCLUSION_FACTOR * tol
    out = []
    # role 0: unused, 1: I, 2: J, 3: K, 4: L
    for roles in product(range(5), repeat=len(verts)):
        sets = [tuple(v for v, r in zip(verts, roles) if r == k) for k in range(5)]
        _, I, J, K, L = sets
        if not I or not J:
            continue
        if c.indep(I, J, K, tol) and c.clearly_dep(J, I, K, hi):
            out.append(AxiomViolation("symmetry", I, J, K, ()))
        if not L:
            continue
        JL = J + L
        if c.indep(I, JL, K, tol) and c.clearly_dep(I, J, K, hi):
            out.append(AxiomViolation("decomposition", I, J, K, L))
        if (c.indep(I, J, K + L, tol) and c.indep(I, L, K + J, tol)
                and c.clearly_dep(I, JL, K, hi)):
            out.append(AxiomViolation("intersection", I, J, K, L))
        if len(L) == 1:
            u = L
            if (c.indep(I, J, K, tol) and c.indep(I, J, K + u, tol)
                    and c.clearly_dep(I, u, K, hi) and c.clearly_dep(u, J, K, hi)):
                out.append(AxiomViolation("weak transitivity", I, J, K, u))
    return out
