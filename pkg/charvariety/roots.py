from __future__ import annotations

from typing import Dict, List, Optional, Sequence

import numpy as np

from utils.errors import PreconditionError, RootFindingError

# fixed phase offset of the starting circle; breaks the symmetry of real polynomials
_PHASE_OFFSET = 0.4
_EPS = np.finfo(float).eps
_CENTER_NEWTON_STEPS = 8


def trim_leading(coeffs: Sequence[complex], rel_tol: float = 1e-14) -> np.ndarray:
    """Drop leading (highest-degree) coefficients that vanish relative to the largest one."""
    c = np.asarray(coeffs, dtype=complex)
    if c.size == 0:
        return c
    scale = float(np.max(np.abs(c)))
    end = c.size
    while end > 0 and abs(c[end - 1]) <= rel_tol * scale:
        end -= 1
    return c[:end]


def residual_scale(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """sum |c_k| |r|^k for each root: the magnitude rounding errors are measured against."""
    return np.polyval(np.abs(coeffs)[::-1], np.abs(roots))


def residuals(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    return np.abs(np.polyval(coeffs[::-1], roots))


def roots(coeffs: Sequence[complex], tol: float = 1e-10, max_iter: int = 500) -> np.ndarray:
    """All complex roots with multiplicity by Aberth-Ehrlich simultaneous iteration.

    ``coeffs`` is lowest degree first. The start is deterministic: a circle of radius
    1 + max|c_i / c_deg|. Every returned root satisfies |p(r)| <= tol * scale(r);
    otherwise RootFindingError is raised with the best residual reached.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.size < 2:
        raise PreconditionError("root finding needs a polynomial of degree >= 1")
    if c[-1] == 0:
        raise PreconditionError("leading coefficient is zero")
    degree = c.size - 1
    if degree == 1:
        return np.array([-c[0] / c[1]])

    high_first = c[::-1]
    deriv = np.polyder(high_first)
    radius = 1.0 + float(np.max(np.abs(c[:-1] / c[-1])))
    angles = 2.0 * np.pi * np.arange(degree) / degree + _PHASE_OFFSET
    z = radius * np.exp(1j * angles)

    best: Optional[float] = None
    for _ in range(max_iter):
        p = np.polyval(high_first, z)
        dp = np.polyval(deriv, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            pull = np.sum(1.0 / diff, axis=1)
            step = p / (dp - p * pull)
        stuck = ~np.isfinite(step)
        if stuck.any():
            # coincident iterates or a vanishing denominator: nudge and retry
            step[stuck] = 1e-8 * radius * np.exp(1j * (angles[stuck] + 1.0))
        z = z - step

        res = residuals(c, z)
        worst = float(np.max(res / np.maximum(residual_scale(c, z), _EPS)))
        best = worst if best is None else min(best, worst)
        tiny_steps = np.all(np.abs(step) <= 4 * _EPS * (1.0 + np.abs(z)))
        if worst <= 4 * degree * _EPS or tiny_steps:
            break

    final = float(np.max(residuals(c, z) / np.maximum(residual_scale(c, z), _EPS)))
    if not np.all(np.isfinite(z)) or final > tol:
        raise RootFindingError(
            f"Aberth iteration did not reach residual {tol:g} in {max_iter} steps (best {best:.3e})",
            best_residual=float(best if best is not None else final),
        )
    return merge_clusters(c, z)


def inclusion_radii(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """deg * |W_i| with W_i the Weierstrass correction; each disk holds a true root.

    A connected union of k such disks holds exactly k roots of the polynomial. The
    residual is padded by its rounding error bound, so clusters whose residual
    evaluates to noise still get disks that reach each other.
    """
    degree = roots.size
    diff = roots[:, None] - roots[None, :]
    np.fill_diagonal(diff, 1.0)
    padded = residuals(coeffs, roots) + 2.0 * degree * _EPS * residual_scale(coeffs, roots)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = padded / np.abs(coeffs[-1] * np.prod(diff, axis=1))
    radii = degree * w
    return np.where(np.isfinite(radii), radii, 0.0)


def _components(roots: np.ndarray, radii: np.ndarray) -> List[List[int]]:
    parent = list(range(roots.size))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(roots.size):
        for j in range(i + 1, roots.size):
            if abs(roots[i] - roots[j]) <= 2.0 * (radii[i] + radii[j]):
                parent[find(i)] = find(j)
    groups: Dict[int, List[int]] = {}
    for i in range(roots.size):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _refine_center(coeffs: np.ndarray, start: complex, multiplicity: int, reach: float) -> complex:
    """Newton on p^(m-1), where a root of multiplicity m is simple."""
    target = np.polyder(coeffs[::-1], multiplicity - 1)
    slope = np.polyder(target)
    z = start
    for _ in range(_CENTER_NEWTON_STEPS):
        d = np.polyval(slope, z)
        if d == 0:
            break
        step = np.polyval(target, z) / d
        z = z - step
        if not np.isfinite(z) or abs(z - start) > reach:
            return start
        if abs(step) <= 4 * _EPS * (1.0 + abs(z)):
            break
    return complex(z)


def merge_clusters(coeffs: Sequence[complex], roots: np.ndarray) -> np.ndarray:
    """Replace each cluster of iterates around a multiple root by one accurate center.

    Simultaneous iteration only reaches eps^(1/m) on a root of multiplicity m, while the
    mean of the m iterates is accurate to rounding level.
    """
    c = np.asarray(coeffs, dtype=complex)
    z = np.array(roots, dtype=complex)
    if z.size < 2:
        return z
    radii = inclusion_radii(c, z)
    for group in _components(z, radii):
        if len(group) < 2:
            continue
        members = z[group]
        center = complex(np.mean(members))
        reach = float(np.max(np.abs(members - center)) + 2.0 * np.max(radii[group]))
        z[group] = _refine_center(c, center, len(group), reach)
    return z


def real_roots(values: np.ndarray, rel_tol: float = 1e-7) -> np.ndarray:
    """Real parts of the roots whose imaginary part is negligible."""
    mask = np.abs(values.imag) <= rel_tol * np.maximum(1.0, np.abs(values))
    return np.sort(values[mask].real)


def bisect_root(coeffs: Sequence[float], low: float, high: float, max_iter: int = 200) -> float:
    """Refine a sign-changing bracket of a real polynomial (lowest degree first)."""
    high_first = np.asarray(coeffs, dtype=float)[::-1]
    f_low = float(np.polyval(high_first, low))
    if f_low == 0.0:
        return low
    f_high = float(np.polyval(high_first, high))
    if f_high == 0.0:
        return high
    if f_low * f_high > 0:
        raise PreconditionError(f"no sign change on [{low}, {high}]")
    for _ in range(max_iter):
        mid = 0.5 * (low + high)
        if mid in (low, high):
            break
        f_mid = float(np.polyval(high_first, mid))
        if f_mid == 0.0:
            return mid
        if (f_mid < 0) == (f_low < 0):
            low, f_low = mid, f_mid
        else:
            high = mid
    return 0.5 * (low + high)
