"""Non-determined (nd) parameters of Gaussians that factorize over a chain graph.

A parameter set holds the mean and, for every connectivity component ``B``,
the blocks ``Omega[B, B]`` and ``Omega[B, Pa(B)]`` of the precision matrix of
the marginal over ``B`` and its parents. Entries between non-adjacent
vertices are fixed at zero; what remains is free.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gaussian import Gaussian, inverse, is_positive_definite
from .graph import ChainGraph, Violation, components, parents


@dataclass(frozen=True)
class SamplerConfig:
    """Draw ranges for ``sample``.

    The diagonal of a component block of size ``b`` is drawn from the open
    interval ``(b - 1, b - 1 + diag_range)``; every other free entry is
    uniform on ``[-offdiag_bound, offdiag_bound]``. With ``offdiag_bound``
    at most 1 each block is strictly diagonally dominant, hence PD.
    """

    diag_range: float = 2.0
    offdiag_bound: float = 1.0
    mean_bound: float = 1.0


@dataclass(frozen=True, eq=False)
class NdParameters:
    mu: np.ndarray
    omega_bb: tuple[np.ndarray, ...]
    omega_bp: tuple[np.ndarray, ...]
    blocks: tuple[tuple[int, ...], ...]
    parent_sets: tuple[tuple[int, ...], ...]

    def max_abs_diff(self, other: "NdParameters") -> float:
        if self.blocks != other.blocks or self.parent_sets != other.parent_sets:
            raise ValueError("parameter sets belong to different graphs")
        diffs = [np.max(np.abs(self.mu - other.mu), initial=0.0)]
        for a, b in zip(self.omega_bb + self.omega_bp, other.omega_bb + other.omega_bp):
            diffs.append(np.max(np.abs(a - b), initial=0.0))
        return float(max(diffs))

    def free_count(self, g: ChainGraph) -> int:
        """Entries not forced to zero or fixed by symmetry."""
        count = self.mu.size
        for block, pa, bb, bp in zip(self.blocks, self.parent_sets, self.omega_bb, self.omega_bp):
            for x in range(len(block)):
                for y in range(x, len(block)):
                    if x == y or g.adjacent(block[x], block[y]):
                        count += 1
            count += sum(g.adjacent(j, k) for j in block for k in pa)
        return count


def dimension(g: ChainGraph) -> int:
    return 2 * g.n + g.n_edges


def _layout(g: ChainGraph):
    comps = components(g)
    return comps.components, tuple(tuple(sorted(parents(g, b))) for b in comps)


def sample(g: ChainGraph, seed=0, config: SamplerConfig | None = None) -> NdParameters:
    """Draw a parameter set from the diagonally dominant region of the nd space.

    ``seed`` is anything ``numpy.random.default_rng`` accepts, including a
    ``Generator``. Draw order is fixed (mean, then per component: diagonal,
    upper off-diagonals row by row, parent block row by row), so equal seeds
    give bit-identical output.
    """
    cfg = config or SamplerConfig()
    rng = np.random.default_rng(seed)
    blocks, pa_sets = _layout(g)
    mu = rng.uniform(-cfg.mean_bound, cfg.mean_bound, size=g.n)
    bbs, bps = [], []
    for block, pa in zip(blocks, pa_sets):
        b = len(block)
        # 1 - U is in (0, 1], which keeps the lower end of the interval open
        diag = (b - 1) + cfg.diag_range * (1.0 - rng.random(b))
        bb = np.diag(diag)
        for x in range(b):
            for y in range(x + 1, b):
                if g.adjacent(block[x], block[y]):
                    bb[x, y] = bb[y, x] = rng.uniform(-cfg.offdiag_bound, cfg.offdiag_bound)
        bp = np.zeros((b, len(pa)))
        for x in range(b):
            for y in range(len(pa)):
                if g.adjacent(block[x], pa[y]):
                    bp[x, y] = rng.uniform(-cfg.offdiag_bound, cfg.offdiag_bound)
        bbs.append(bb)
        bps.append(bp)
    return NdParameters(mu, tuple(bbs), tuple(bps), blocks, pa_sets)


def validate_params(g: ChainGraph, p: NdParameters) -> list[Violation]:
    """Check symmetry (C1), zero patterns (C2, C3) and positive definiteness.

    Shape mismatches are programming errors and raise ``ValueError``.
    """
    blocks, pa_sets = _layout(g)
    if p.blocks != blocks or p.parent_sets != pa_sets:
        raise ValueError("parameter layout does not match the graph's components")
    if p.mu.shape != (g.n,):
        raise ValueError(f"mean has shape {p.mu.shape}, expected ({g.n},)")
    out = []
    for k, (block, pa) in enumerate(zip(blocks, pa_sets)):
        bb, bp = p.omega_bb[k], p.omega_bp[k]
        if bb.shape != (len(block), len(block)) or bp.shape != (len(block), len(pa)):
            raise ValueError(f"block shapes for component {k} do not match")
        if not np.array_equal(bb, bb.T):
            out.append(Violation("C1", f"component {k}: block is not symmetric"))
        for x in range(len(block)):
            for y in range(len(block)):
                if x != y and bb[x, y] != 0 and not g.adjacent(block[x], block[y]):
                    out.append(Violation(
                        "C2", f"component {k}: nonzero entry for non-adjacent "
                              f"{block[x]},{block[y]}"))
            for y in range(len(pa)):
                if bp[x, y] != 0 and not g.adjacent(block[x], pa[y]):
                    out.append(Violation(
                        "C3", f"component {k}: nonzero parent entry for non-adjacent "
                              f"{block[x]},{pa[y]}"))
        if not is_positive_definite(bb):
            out.append(Violation("PD", f"component {k}: block is not positive definite"))
    return out


def recover(g: ChainGraph, joint: Gaussian) -> NdParameters:
    """Read the nd parameters off a joint distribution over all of ``g``."""
    if sorted(joint.index) != list(g.vertices):
        raise ValueError("joint must cover exactly the graph's vertices")
    joint = joint.reorder(tuple(g.vertices))
    blocks, pa_sets = _layout(g)
    bbs, bps = [], []
    for block, pa in zip(blocks, pa_sets):
        idx = [v - 1 for v in block + pa]
        omega = inverse(joint.covariance[np.ix_(idx, idx)])
        b = len(block)
        bbs.append(omega[:b, :b].copy())
        bps.append(omega[:b, b:].copy())
    return NdParameters(joint.mean.copy(), tuple(bbs), tuple(bps), blocks, pa_sets)


def to_document(g: ChainGraph, p: NdParameters) -> dict:
    lab = g.label
    return {
        "format": "nd-parameters",
        "labels": [lab(v) for v in g.vertices],
        "mu": [float(x) for x in p.mu],
        "components": [
            {
                "block": [lab(v) for v in block],
                "parents": [lab(v) for v in pa],
                "omega_bb": p.omega_bb[k].tolist(),
                "omega_bp": p.omega_bp[k].tolist(),
            }
            for k, (block, pa) in enumerate(zip(p.blocks, p.parent_sets))
        ],
    }


def from_document(g: ChainGraph, doc: dict) -> NdParameters:
    if doc.get("format") != "nd-parameters":
        raise ValueError("not an nd-parameters document")
    ids = {g.label(v): v for v in g.vertices}
    if list(doc["labels"]) != [g.label(v) for v in g.vertices]:
        raise ValueError("document labels do not match the graph")
    blocks, pa_sets, bbs, bps = [], [], [], []
    for comp in doc["components"]:
        block = tuple(ids[str(x)] for x in comp["block"])
        pa = tuple(ids[str(x)] for x in comp["parents"])
        blocks.append(block)
        pa_sets.append(pa)
        bbs.append(np.array(comp["omega_bb"], dtype=float).reshape(len(block), len(block)))
        bps.append(np.array(comp["omega_bp"], dtype=float).reshape(len(block), len(pa)))
    return NdParameters(
        np.array(doc["mu"], dtype=float), tuple(bbs), tuple(bps), tuple(blocks), tuple(pa_sets)
    )
