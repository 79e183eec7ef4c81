"""Fourth-order central finite differences on grids and at scattered points."""
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from src.metricfield.chart import STENCIL_REACH

D1: Dict[int, float] = {-2: 1.0 / 12.0, -1: -8.0 / 12.0, 1: 8.0 / 12.0, 2: -1.0 / 12.0}
D2: Dict[int, float] = {-2: -1.0 / 12.0, -1: 16.0 / 12.0, 0: -30.0 / 12.0, 1: 16.0 / 12.0, 2: -1.0 / 12.0}

# Error ratio of a fourth-order stencil between steps h and h/2
RICHARDSON_FACTOR = 15.0


def multi_indices(dim: int, order: int) -> List[Tuple[int, ...]]:
    """All per-axis derivative counts with total order <= ``order`` (order <= 2)."""
    result = [
        counts
        for counts in product(range(3), repeat=dim)
        if sum(counts) <= order
    ]
    return sorted(result, key=lambda counts: (sum(counts), tuple(-c for c in counts)))


def _shifted(values: np.ndarray, axis: int, offset: int) -> np.ndarray:
    n = values.shape[axis]
    index = [slice(None)] * values.ndim
    index[axis] = slice(STENCIL_REACH + offset, n - STENCIL_REACH + offset)
    return values[tuple(index)]


def _apply(values: np.ndarray, axis: int, weights: Dict[int, float], step: float, power: int) -> np.ndarray:
    total = sum(w * _shifted(values, axis, offset) for offset, w in weights.items())
    return total / step ** power


def grid_partial(values: np.ndarray, counts: Sequence[int], steps: Sequence[float]) -> np.ndarray:
    """
    Partial derivative of gridded values.

    Args:
        values: Samples of shape (*grid, ...) with one leading axis per coordinate
        counts: Derivative count per coordinate axis (each <= 2)
        steps: Grid spacing per coordinate axis

    Returns:
        Derivative at the nodes two layers away from every face, shape (*(grid - 4), ...)
    """
    out = values
    for axis, count in enumerate(counts):
        if count == 0:
            out = _shifted(out, axis, 0)
        elif count == 1:
            out = _apply(out, axis, D1, steps[axis], 1)
        else:
            out = _apply(out, axis, D2, steps[axis], 2)
    return out


def crop(values: np.ndarray, dims: int) -> np.ndarray:
    """Drop the outer two layers of the first ``dims`` axes."""
    for axis in range(dims):
        values = _shifted(values, axis, 0)
    return values


def coarse_from_fine(fine: np.ndarray, coarse_shape: Sequence[int]) -> np.ndarray:
    """Restrict a derivative evaluated on the refined grid to the coarse derivative nodes."""
    index = tuple(slice(STENCIL_REACH, STENCIL_REACH + 2 * n, 2) for n in coarse_shape)
    return fine[index]


def budgeted_partial(
    coarse: np.ndarray,
    fine: np.ndarray,
    counts: Sequence[int],
    coarse_steps: Sequence[float],
    richardson: bool = False,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Derivative on the coarse interior nodes with an error budget from step halving.

    Returns:
        (estimate, budget) with the same shape; the budget bounds the stencil error
        assuming fourth-order convergence.
    """
    dims = len(counts)
    d_h = grid_partial(coarse, counts, coarse_steps)
    d_half = coarse_from_fine(
        grid_partial(fine, counts, [0.5 * s for s in coarse_steps]),
        d_h.shape[:dims],
    )
    gap = np.abs(d_h - d_half)
    if richardson:
        return (16.0 * d_half - d_h) / RICHARDSON_FACTOR, gap / RICHARDSON_FACTOR
    return d_half, (16.0 / RICHARDSON_FACTOR) * gap


def _pair_offsets(dim: int, i: int, j: int, h: float) -> List[Tuple[np.ndarray, float]]:
    terms = []
    for (oi, wi), (oj, wj) in product(D1.items(), D1.items()):
        offset = np.zeros(dim)
        offset[i] = oi * h
        offset[j] = oj * h
        terms.append((offset, wi * wj / h ** 2))
    return terms


def stencil_partials(
    fn: Callable[[np.ndarray], np.ndarray],
    points: np.ndarray,
    h: float,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Value, gradient and Hessian of a matrix field at scattered points.

    Args:
        fn: Vectorized field, (..., dim) -> (..., N, N)
        points: Evaluation points, shape (P, dim)
        h: Stencil step

    Returns:
        (value (P, N, N), first (P, dim, N, N), second (P, dim, dim, N, N))
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    dim = points.shape[-1]
    basis = np.eye(dim) * h

    offsets = [np.zeros(dim)]
    for a in range(dim):
        for k in (-2, -1, 1, 2):
            offsets.append(k * basis[a])
    pair_terms = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            pair_terms[(i, j)] = _pair_offsets(dim, i, j, h)
            offsets.extend(offset for offset, _ in pair_terms[(i, j)])

    shifts = np.stack(offsets)
    samples = fn(points[:, None, :] + shifts[None, :, :])
    center = samples[:, 0]

    def axis_sample(a: int, k: int) -> np.ndarray:
        slot = 1 + 4 * a + (k + 2 if k < 0 else k + 1)
        return samples[:, slot]

    first = np.stack([
        sum(w * axis_sample(a, k) for k, w in D1.items()) / h
        for a in range(dim)
    ], axis=1)

    second = np.zeros((points.shape[0], dim, dim) + center.shape[1:])
    for a in range(dim):
        second[:, a, a] = (
            D2[0] * center + sum(w * axis_sample(a, k) for k, w in D2.items() if k != 0)
        ) / h ** 2
    slot = 1 + 4 * dim
    for (i, j), terms in pair_terms.items():
        block = samples[:, slot:slot + len(terms)]
        weights = np.array([w for _, w in terms])
        mixed = np.tensordot(weights, np.moveaxis(block, 1, 0), axes=1)
        second[:, i, j] = mixed
        second[:, j, i] = mixed
        slot += len(terms)
    return center, first, second
