"""Hyperbolic volume of a layered punctured-torus bundle.

The volume is the maximum of ``V = sum Lob(theta)`` over angle structures
(positive dihedral angles, sum pi per tetrahedron, 2 pi around each edge).
``V`` is strictly concave on that polytope and its interior critical point
is the complete hyperbolic structure, so Newton ascent on the affine
constraint set converges from any interior point.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.optimize import linprog

from .errors import DegenerateGeometry, EmptyPolytope, SolverNoConvergence
from .layered import LayeredTriangulation, build
from .words import as_word

_CL2_TERMS = 40
_B = [mpmath.bernoulli(k) for k in range(2 * _CL2_TERMS + 1)]
# Cl2(x) = x - x log|x| + sum_k |B_2k| x^(2k+1) / (2k (2k+1)!), |x| < 2 pi
_CL2_COEF = np.array([float(abs(_B[2 * k]) / (2 * k * math.factorial(2 * k + 1)))
                      for k in range(1, _CL2_TERMS + 1)])
# Li2(z) = sum_n B_n u^(n+1) / (n+1)!, u = -log(1 - z), |u| < 2 pi
_LI2_COEF = [float(_B[n] / math.factorial(n + 1)) for n in range(2 * _CL2_TERMS)]


def lobachevsky(theta):
    """Lobachevsky function ``-int_0^theta log|2 sin t| dt``.

    Odd and pi-periodic; evaluated as ``Cl2(2 theta) / 2`` after reducing
    ``theta`` to ``[-pi/2, pi/2]``. Accepts scalars or arrays.
    """
    th = np.asarray(theta, dtype=float)
    x = 2 * (th - np.pi * np.round(th / np.pi))
    ax = np.abs(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        head = np.where(ax > 0, x - x * np.log(ax), 0.0)
    x2 = x * x
    tail = np.zeros_like(x)
    for c in _CL2_COEF[::-1]:
        tail = tail * x2 + c
    val = 0.5 * (head + tail * x * x2)
    return float(val) if np.ndim(val) == 0 else val


def lob_derivative(theta):
    return -np.log(2 * np.abs(np.sin(theta)))


V3 = 3 * lobachevsky(math.pi / 3)   # regular ideal tetrahedron
V8 = 8 * lobachevsky(math.pi / 4)   # regular ideal octahedron
RATIO_LOWER_BOUND = math.log((3 + math.sqrt(5)) / 2) / (2 * V8)
BLOCK1_BOUND = math.log((3 + math.sqrt(5)) / 2) / (2 * V3)


def _li2_series(z: complex) -> complex:
    u = -cmath.log(1 - z)
    total = 0j
    p = u
    for c in _LI2_COEF:
        total += c * p
        p *= u
        if abs(p) < 1e-300:
            break
    return total


def bloch_wigner(z: complex) -> float:
    """``D(z) = Im Li2(z) + arg(1 - z) log|z|`` for ``z`` off the real axis.

    Uses ``D(1/z) = -D(z)`` and ``D(1 - z) = -D(z)`` to move ``z`` into
    ``|z| <= 1, Re z <= 1/2`` where the Bernoulli series in
    ``-log(1 - z)`` converges fast.
    """
    z = complex(z)
    sign = 1.0
    for _ in range(8):
        if abs(z) > 1:
            z, sign = 1 / z, -sign
        elif z.real > 0.5:
            z, sign = 1 - z, -sign
        else:
            break
    if z == 0:
        return 0.0
    d = _li2_series(z).imag + cmath.phase(1 - z) * math.log(abs(z))
    return sign * d


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-12
    residual_tol: float = 1e-9
    max_iter: int = 500
    angle_floor: float = 1e-6
    # accepted gradient norm when rounding stops further progress
    stall_tol: float = 1e-9

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass
class AngleStructure:
    """Angles ``(n, 3)``: columns are side pair 1, side pair 2, diagonal."""

    angles: np.ndarray

    @property
    def flat(self) -> np.ndarray:
        return self.angles.reshape(-1)

    @property
    def min_angle(self) -> float:
        return float(self.angles.min())


@dataclass
class VolumeResult:
    word: str
    volume: float
    angles: AngleStructure
    shapes: np.ndarray
    residual: float
    grad_norm: float
    iterations: int
    history: list[tuple[float, str]] = field(default_factory=list)

    @property
    def min_angle(self) -> float:
        return self.angles.min_angle


def constraint_system(tri: LayeredTriangulation):
    """Equality constraints ``C x = b`` on the flattened angle vector."""
    n = tri.num_tetrahedra
    rows, rhs = [], []
    for t in range(n):
        r = np.zeros(3 * n)
        r[3 * t:3 * t + 3] = 1
        rows.append(r)
        rhs.append(math.pi)
    for counts in tri.edge_pair_counts():
        rows.append(np.array(counts, dtype=float).reshape(-1))
        rhs.append(2 * math.pi)
    return np.array(rows), np.array(rhs)


def null_space(C: np.ndarray, rtol: float = 1e-10):
    """Orthonormal null-space basis and rank, via SVD (rank revealing)."""
    _, s, vt = np.linalg.svd(C)
    rank = int((s > rtol * s[0]).sum())
    return vt[rank:].T, rank


def _project_affine(C, b, x):
    # Snap onto C x = b so the constraints hold to rounding error.
    for _ in range(3):
        r = C @ x - b
        x = x - np.linalg.lstsq(C, r, rcond=None)[0]
    return x


def initial_point(tri: LayeredTriangulation) -> AngleStructure:
    """Interior angle structure maximizing the smallest angle (an LP)."""
    C, b = constraint_system(tri)
    m = C.shape[1]
    # variables (x, t): maximize t subject to C x = b, x_j >= t
    c = np.zeros(m + 1)
    c[-1] = -1
    A_ub = np.hstack([-np.eye(m), np.ones((m, 1))])
    A_eq = np.hstack([C, np.zeros((C.shape[0], 1))])
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(m), A_eq=A_eq, b_eq=b,
                  bounds=[(0, math.pi)] * m + [(0, math.pi / 3)], method="highs")
    if res.status != 0 or res.x[-1] < 1e-3:
        raise EmptyPolytope(f"no interior angle structure for {tri.word}")
    x = _project_affine(C, b, res.x[:m])
    if x.min() < 1e-3:
        raise EmptyPolytope(f"no interior angle structure for {tri.word}")
    return AngleStructure(x.reshape(-1, 3))


def volume_of_angles(x) -> float:
    return float(np.sum(lobachevsky(np.asarray(x))))


def shapes_from_angles(angles: np.ndarray) -> np.ndarray:
    """``z = (sin b / sin c) e^{i a}`` with ``a`` on side pair 1."""
    a, b, c = angles[:, 0], angles[:, 1], angles[:, 2]
    return np.sin(b) / np.sin(c) * np.exp(1j * a)


def gluing_residual(tri: LayeredTriangulation, shapes: np.ndarray) -> float:
    """Max over edges of ``|prod of shape parameters - 1|``.

    Side pair 1 carries ``z``, side pair 2 ``1/(1-z)``, the diagonal
    ``1 - 1/z``.
    """
    params = np.stack([shapes, 1 / (1 - shapes), 1 - 1 / shapes], axis=1)
    worst = 0.0
    for counts in tri.edge_pair_counts():
        prod = complex(np.prod(params ** np.array(counts)))
        worst = max(worst, abs(prod - 1))
    return worst


def maximize_volume(tri: LayeredTriangulation, start: AngleStructure,
                    config: SolverConfig | None = None) -> VolumeResult:
    """Newton ascent of the volume on the affine span of the angle structures.

    Each iterate moves inside the null space of the constraints, with a
    fraction-to-boundary cap (no angle drops below a tenth of the current
    minimum) and Armijo backtracking. Once the predicted gain falls below
    the rounding resolution of ``V``, full Newton steps are taken as long
    as they shrink the projected gradient ("polish" steps); ``history``
    records ``(V, kind)`` after every accepted step.
    """
    config = config or SolverConfig()
    C, b = constraint_system(tri)
    Z, _ = null_space(C)
    x = start.flat.copy()
    V = volume_of_angles(x)
    history = [(V, "start")]

    def proj_grad(x):
        return Z.T @ lob_derivative(x)

    g = proj_grad(x)
    gnorm = float(np.linalg.norm(g))
    it = 0
    while gnorm >= config.tol:
        if it >= config.max_iter:
            raise SolverNoConvergence(
                f"{tri.word}: no convergence in {config.max_iter} iterations "
                f"(gradient norm {gnorm:.3e})", gnorm)
        it += 1
        H = (Z.T * (-1 / np.tan(x))) @ Z
        try:
            d = np.linalg.solve(H, -g)
        except np.linalg.LinAlgError:
            d = g
        if g @ d <= 0:  # not an ascent direction; fall back to the gradient
            d = g
        dx = Z @ d
        floor = 0.1 * x.min()
        neg = dx < 0
        step = min(1.0, float(np.min((x[neg] - floor) / -dx[neg]))) if neg.any() else 1.0
        slope = float(g @ d)
        if 0.5 * step * slope < 1e-13 * max(1.0, abs(V)):
            xn = x + step * dx
            gn = proj_grad(xn)
            if np.linalg.norm(gn) >= gnorm:
                break
            x, g = xn, gn
            V = volume_of_angles(x)
            history.append((V, "polish"))
        else:
            for _ in range(60):
                xn = x + step * dx
                Vn = volume_of_angles(xn)
                if Vn > V + 1e-4 * step * slope:
                    break
                step *= 0.5
            else:
                break
            x, V = xn, Vn
            g = proj_grad(x)
            history.append((V, "ascent"))
        gnorm = float(np.linalg.norm(g))
    if gnorm >= max(config.tol, config.stall_tol):
        raise SolverNoConvergence(
            f"{tri.word}: stalled with gradient norm {gnorm:.3e}", gnorm)
    x = _project_affine(C, b, x)
    angles = AngleStructure(x.reshape(-1, 3))
    if angles.min_angle < config.angle_floor:
        raise DegenerateGeometry(f"{tri.word}: optimum has angle {angles.min_angle:.3e}")
    shapes = shapes_from_angles(angles.angles)
    return VolumeResult(
        word=tri.word, volume=volume_of_angles(x), angles=angles, shapes=shapes,
        residual=gluing_residual(tri, shapes), grad_norm=gnorm, iterations=it,
        history=history,
    )


def volume(w, config: SolverConfig | None = None) -> VolumeResult:
    config = config or SolverConfig()
    tri = build(as_word(w))
    res = maximize_volume(tri, initial_point(tri), config)
    if res.residual > config.residual_tol:
        raise SolverNoConvergence(
            f"{tri.word}: gluing residual {res.residual:.3e} above tolerance")
    return res


def bloch_wigner_check(res: VolumeResult) -> float:
    """Largest per-tetrahedron gap between ``D(z)`` and the angle volume."""
    worst = 0.0
    for z, ang in zip(res.shapes, res.angles.angles):
        if z.imag <= 0:
            raise ValueError("shape with nonpositive imaginary part")
        worst = max(worst, abs(bloch_wigner(z) - volume_of_angles(ang)))
    return worst
