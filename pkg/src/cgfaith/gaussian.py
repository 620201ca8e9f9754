"""Dense symmetric linear algebra and Gaussian conditioning/composition.

Distributions are kept in precision form with the covariance cached next to
it. Every ``Gaussian`` carries an ``index``: the vertex ids its coordinates
refer to, in coordinate order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import ChainGraph, components, parents

PD_PIVOT_RTOL = 1e-12
SINGULAR_RCOND = 1e-13


class SingularMatrixError(np.linalg.LinAlgError):
    pass


def det(m) -> float:
    m = np.asarray(m, dtype=float)
    if m.shape == (0, 0):
        return 1.0
    return float(np.linalg.det(m))


def inverse(m) -> np.ndarray:
    """Inverse via LU; raises ``SingularMatrixError`` for (numerically) singular input."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.size == 0:
        return m.copy()
    if not np.all(np.isfinite(m)) or 1.0 / np.linalg.cond(m) < SINGULAR_RCOND:
        raise SingularMatrixError("matrix is singular")
    return np.linalg.inv(m)


def is_positive_definite(m) -> bool:
    """Symmetric and Cholesky succeeds with pivots above ``1e-12 * max(diag)``."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if m.size == 0:
        return True
    if not np.array_equal(m, m.T):
        return False
    try:
        low = np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        return False
    pivots = np.diag(low) ** 2
    return bool(pivots.min() > PD_PIVOT_RTOL * np.max(np.diag(m)))


def cofactor_det(m) -> float:
    """Laplace expansion along the first row. Exponential; test oracle only."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if n == 0:
        return 1.0
    if n == 1:
        return float(m[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(m, 0, axis=0), j, axis=1)
        total += (-1) ** j * m[0, j] * cofactor_det(minor)
    return total


def cofactor_inverse(m) -> np.ndarray:
    """Adjugate over determinant. Test oracle only."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    d = cofactor_det(m)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(m, j, axis=0), i, axis=1)
            out[i, j] = (-1) ** (i + j) * cofactor_det(minor) / d
    return out


@dataclass(frozen=True, eq=False)
class Gaussian:
    mean: np.ndarray
    precision: np.ndarray
    covariance: np.ndarray
    index: tuple[int, ...]

    @classmethod
    def from_precision(cls, mean, precision, index=None) -> "Gaussian":
        precision = np.asarray(precision, dtype=float)
        return cls._make(mean, precision, inverse(precision), index)

    @classmethod
    def from_covariance(cls, mean, covariance, index=None) -> "Gaussian":
        covariance = np.asarray(covariance, dtype=float)
        return cls._make(mean, inverse(covariance), covariance, index)

    @classmethod
    def _make(cls, mean, precision, covariance, index):
        mean = np.array(mean, dtype=float).reshape(-1)
        n = mean.shape[0]
        if precision.shape != (n, n) or covariance.shape != (n, n):
            raise ValueError("mean and matrix shapes disagree")
        # symmetrize against round-off so downstream PD checks are exact
        precision = (precision + precision.T) / 2
        covariance = (covariance + covariance.T) / 2
        index = tuple(range(1, n + 1)) if index is None else tuple(int(v) for v in index)
        if len(index) != n or len(set(index)) != n:
            raise ValueError("index must list each coordinate exactly once")
        for a in (mean, precision, covariance):
            a.setflags(write=False)
        return cls(mean, precision, covariance, index)

    @property
    def dim(self) -> int:
        return len(self.index)

    def positions(self, vs: Sequence[int]) -> list[int]:
        pos = {v: k for k, v in enumerate(self.index)}
        try:
            return [pos[v] for v in vs]
        except KeyError as exc:
            raise ValueError(f"vertex {exc.args[0]} not in distribution") from None

    def reorder(self, index: Sequence[int]) -> "Gaussian":
        if sorted(index) != sorted(self.index):
            raise ValueError("reorder needs a permutation of the index")
        p = self.positions(index)
        return Gaussian._make(
            self.mean[p],
            self.precision[np.ix_(p, p)].copy(),
            self.covariance[np.ix_(p, p)].copy(),
            index,
        )


@dataclass(frozen=True, eq=False)
class LinearConditional:
    """``p(x_target | x_given) = N(delta @ x_given + gamma, inv(epsilon))``."""

    delta: np.ndarray
    gamma: np.ndarray
    epsilon: np.ndarray
    target: tuple[int, ...]
    given: tuple[int, ...]

    def __post_init__(self):
        nt, ng = len(self.target), len(self.given)
        if self.delta.shape != (nt, ng) or self.gamma.shape != (nt,) \
                or self.epsilon.shape != (nt, nt):
            raise ValueError("inconsistent LinearConditional shapes")


def marginal(dist: Gaussian, vs: Sequence[int]) -> Gaussian:
    """Restrict to ``vs`` (kept in the order given) by reading the covariance."""
    p = dist.positions(vs)
    cov = dist.covariance[np.ix_(p, p)].copy()
    return Gaussian._make(dist.mean[p], inverse(cov), cov, vs)


def condition(joint: Gaussian, target: Sequence[int]) -> LinearConditional:
    """Conditional of ``target`` given the remaining coordinates of ``joint``."""
    target = tuple(target)
    tset = set(target)
    given = tuple(v for v in joint.index if v not in tset)
    jj = joint.positions(target)
    ii = joint.positions(given)
    om_jj = joint.precision[np.ix_(jj, jj)]
    om_ji = joint.precision[np.ix_(jj, ii)]
    solved = np.linalg.solve(om_jj, om_ji) if ii else np.zeros((len(jj), 0))
    delta = -solved
    gamma = joint.mean[jj] + solved @ joint.mean[ii]
    return LinearConditional(delta, gamma, om_jj.copy(), target, given)


def compose(marg: Gaussian, cond: LinearConditional) -> Gaussian:
    """Joint of ``marg`` and ``cond`` over ``marg.index + cond.target``.

    Precision and covariance are both assembled from the closed block forms,
    so neither requires inverting the joint matrix.
    """
    if set(cond.given) != set(marg.index):
        raise ValueError("conditional must be given exactly the marginal's coordinates")
    if set(cond.target) & set(marg.index):
        raise ValueError("target overlaps the marginal")
    # align delta's columns with the marginal's coordinate order
    col = {v: k for k, v in enumerate(cond.given)}
    delta = cond.delta[:, [col[v] for v in marg.index]]
    alpha, beta, beta_inv = marg.mean, marg.precision, marg.covariance
    eps = cond.epsilon
    eps_inv = inverse(eps)

    lam = np.concatenate([alpha, delta @ alpha + cond.gamma])
    eps_delta = eps @ delta
    prec = np.block([
        [beta + delta.T @ eps_delta, -eps_delta.T],
        [-eps_delta, eps],
    ])
    bd = beta_inv @ delta.T
    cov = np.block([
        [beta_inv, bd],
        [bd.T, eps_inv + delta @ bd],
    ])
    return Gaussian._make(lam, prec, cov, marg.index + cond.target)


def build_joint(g: ChainGraph, params) -> Gaussian:
    """Assemble the joint distribution from per-component conditionals.

    Components are folded in their well-order; each conditional is padded
    with zero coefficients for earlier vertices that are not parents.
    """
    comps = components(g)
    mu = np.asarray(params.mu, dtype=float)
    joint = None
    for k, block in enumerate(comps):
        pa = tuple(sorted(parents(g, block)))
        om_bb = np.asarray(params.omega_bb[k], dtype=float)
        om_bp = np.asarray(params.omega_bp[k], dtype=float)
        b_idx = [v - 1 for v in block]
        p_idx = [v - 1 for v in pa]
        if om_bp.size:
            solved = np.linalg.solve(om_bb, om_bp)
        else:
            solved = np.zeros((len(block), len(pa)))
        delta = -solved
        gamma = mu[b_idx] + solved @ mu[p_idx]
        if joint is None:
            joint = Gaussian._make(gamma, om_bb.copy(), inverse(om_bb), block)
            continue
        pcol = {v: c for c, v in enumerate(pa)}
        padded = np.zeros((len(block), joint.dim))
        for c, v in enumerate(joint.index):
            if v in pcol:
                padded[:, c] = delta[:, pcol[v]]
        cond = LinearConditional(padded, gamma, om_bb.copy(), tuple(block), joint.index)
        joint = compose(joint, cond)
    return joint.reorder(tuple(g.vertices))
