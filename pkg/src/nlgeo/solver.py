"""Projected-descent solver for minimization over the CHSH-local Bell-diagonal set.

The feasible region is the tetrahedron (handled exactly, by Euclidean
projection of the Bell weights onto the probability simplex) intersected with
the three disk constraints a_i^2 + a_j^2 <= 1 (handled by a quadratic penalty
whose weight grows geometrically). All objectives used with this solver are
convex, so the multi-start loop above it is a consistency device rather than a
global-search necessity.

The decision space has three coordinates, so the inner loop works on plain
float triples; numpy only appears at the interface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MU_FIRST = 10.0
MU_LAST = 1e12
ARMIJO = 1e-4
MAX_BACKTRACKS = 60

DISK_PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass
class SolveReport:
    x: tuple[float, float, float]
    iterations: int
    tol_stopped: bool
    max_violation: float


def probs(x) -> tuple[float, float, float, float]:
    """Bell weights of the correlator triple x."""
    x0, x1, x2 = x
    return (
        0.25 * (1.0 + x0 + x1 - x2),
        0.25 * (1.0 + x0 - x1 + x2),
        0.25 * (1.0 - x0 + x1 + x2),
        0.25 * (1.0 - x0 - x1 - x2),
    )


def corr(e) -> tuple[float, float, float]:
    """Correlator triple of the Bell weights e."""
    e0, e1, e2, e3 = e
    return (e0 + e1 - e2 - e3, e0 - e1 + e2 - e3, -e0 + e1 + e2 - e3)


def project_simplex(e) -> tuple[float, float, float, float]:
    """Euclidean projection of a 4-vector onto the probability simplex."""
    u = sorted(e, reverse=True)
    css = 0.0
    k, tau = 1, 0.0
    for idx in range(4):
        css += u[idx]
        t = (1.0 - css) / (idx + 1)
        if u[idx] + t > 0.0:
            k, tau = idx + 1, t
    return tuple(max(ei + tau, 0.0) for ei in e)


def project_tetrahedron(x) -> tuple[float, float, float]:
    """Project correlators onto the tetrahedron.

    The affine map between a and e scales the Euclidean metric uniformly, so
    the simplex projection of the weights is the exact projection in
    correlator space as well.
    """
    e = probs(x)
    if min(e) >= 0.0:
        return (float(x[0]), float(x[1]), float(x[2]))
    return corr(project_simplex(e))


def pair_violations(x) -> tuple[float, float, float]:
    """Values of a_i^2 + a_j^2 - 1 for the three disk constraints."""
    x0, x1, x2 = x
    return (x0 * x0 + x1 * x1 - 1.0, x0 * x0 + x2 * x2 - 1.0, x1 * x1 + x2 * x2 - 1.0)


def penalty(x) -> float:
    v0, v1, v2 = pair_violations(x)
    total = 0.0
    if v0 > 0.0:
        total += v0 * v0
    if v1 > 0.0:
        total += v1 * v1
    if v2 > 0.0:
        total += v2 * v2
    return total


def penalty_grad(x) -> tuple[float, float, float]:
    x0, x1, x2 = x
    v0, v1, v2 = pair_violations(x)
    g0 = g1 = g2 = 0.0
    if v0 > 0.0:
        g0 += 4.0 * v0 * x0
        g1 += 4.0 * v0 * x1
    if v1 > 0.0:
        g0 += 4.0 * v1 * x0
        g2 += 4.0 * v1 * x2
    if v2 > 0.0:
        g1 += 4.0 * v2 * x1
        g2 += 4.0 * v2 * x2
    return (g0, g1, g2)


def _descend_stage(fun, grad, x, mu, eps, param_tol, value_tol, max_iters):
    """Projected gradient descent with Armijo backtracking on f + mu * penalty."""

    def phi(z):
        return fun(z, eps) + mu * penalty(z)

    fx = phi(x)
    # pull bad seeds toward the maximally mixed point until the value is finite
    guard = 0
    while fx != fx or fx == float("inf"):
        if guard >= 200:
            break
        x = (0.9 * x[0], 0.9 * x[1], 0.9 * x[2])
        fx = phi(x)
        guard += 1

    eta = 1.0
    flat_steps = 0
    for it in range(1, max_iters + 1):
        f0, f1, f2 = grad(x, eps)
        p0, p1, p2 = penalty_grad(x)
        g0, g1, g2 = f0 + mu * p0, f1 + mu * p1, f2 + mu * p2
        accepted = False
        for _ in range(MAX_BACKTRACKS):
            xn = project_tetrahedron((x[0] - eta * g0, x[1] - eta * g1, x[2] - eta * g2))
            d0, d1, d2 = xn[0] - x[0], xn[1] - x[1], xn[2] - x[2]
            step_sq = d0 * d0 + d1 * d1 + d2 * d2
            if step_sq == 0.0:
                break
            fn = phi(xn)
            if fn <= fx - ARMIJO / eta * step_sq:
                accepted = True
                break
            eta *= 0.5
        if not accepted:
            return x, it, True
        moved = step_sq**0.5
        decrease = fx - fn
        x, fx = xn, fn
        eta = min(eta * 2.0, 1e6)
        if moved <= param_tol:
            return x, it, True
        if decrease <= value_tol * (1.0 + abs(fx)):
            flat_steps += 1
            if flat_steps >= 2:
                return x, it, True
        else:
            flat_steps = 0
    return x, max_iters, False


def minimize_over_local_set(
    fun,
    grad,
    x0,
    param_tol: float,
    value_tol: float,
    max_iters: int,
    penalty_growth: float,
    eps0: float = 0.0,
) -> SolveReport:
    """Continuation loop: solve the penalized problem for growing mu.

    ``fun(x, eps)`` and ``grad(x, eps)`` take a smoothing width eps, which is
    driven to (near) zero alongside the penalty growth; objectives that are
    already smooth ignore it.
    """
    x = project_tetrahedron((float(x0[0]), float(x0[1]), float(x0[2])))
    mu = MU_FIRST
    eps = eps0
    total = 0
    tol_stopped = False
    while True:
        # early stages only warm-start the next subproblem; convergence is
        # judged on the final one at mu = MU_LAST
        x, iters, tol_stopped = _descend_stage(
            fun, grad, x, mu, eps, param_tol, value_tol, max_iters
        )
        total += iters
        if mu >= MU_LAST:
            break
        mu = min(mu * max(penalty_growth, 1.5), MU_LAST)
        if eps > 0.0:
            eps = max(eps * 0.1, 1e-12)
    return SolveReport(
        x=x,
        iterations=total,
        tol_stopped=tol_stopped,
        max_violation=max(0.0, max(pair_violations(x))),
    )


def polish_feasible(x, rounds: int = 50) -> np.ndarray:
    """Drive a near-feasible point onto the local set without drifting.

    Alternates radial rescaling of the worst-violating pair with tetrahedron
    projection, then clips and renormalizes the weights so the returned point
    is feasible to machine precision.
    """
    x = (float(x[0]), float(x[1]), float(x[2]))
    for _ in range(rounds):
        v = pair_violations(x)
        worst = max(range(3), key=lambda idx: v[idx])
        if v[worst] <= 1e-13 and min(probs(x)) >= 0.0:
            break
        if v[worst] > 0.0:
            i, j = DISK_PAIRS[worst]
            r = (x[i] * x[i] + x[j] * x[j]) ** 0.5
            y = list(x)
            y[i] /= r
            y[j] /= r
            x = tuple(y)
        x = project_tetrahedron(x)
    e = [max(ei, 0.0) for ei in probs(x)]
    s = sum(e)
    return np.array(corr([ei / s for ei in e]))
