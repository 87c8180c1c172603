"""Locality criteria: the CHSH singular-value test for two qubits and the
CGLMP visibility threshold for two qudits, plus descriptors of the boundary
of the CHSH-local Bell-diagonal region."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPhysical, OutOfRange
from .qstate import BELL_CORNERS, PauliRep, bd_corr_to_probs

BOUNDARY_TOL = 1e-12

# index pairs of the three quadratic boundary pieces, in lexicographic order
DISK_PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class ChshVerdict:
    """Outcome of the CHSH criterion: correlation singular values d1 >= d2 >= d3,
    the value d1^2 + d2^2, and whether the state admits a local model."""

    singulars: tuple[float, float, float]
    criterion_value: float
    is_local: bool


@dataclass(frozen=True)
class CglmpThreshold:
    """Quantum CGLMP maximum I_d and the visibility 2/I_d separating local from
    nonlocal isotropic states."""

    d: int
    i_d_qm: float
    omega_threshold: float


def chsh_verdict(rep: PauliRep) -> ChshVerdict:
    """Apply the CHSH test to a two-qubit Pauli representation.

    The state admits a local model for all CHSH experiments iff the two
    largest singular values of the correlation matrix satisfy
    d1^2 + d2^2 <= 1. The boundary counts as local.
    """
    s = np.linalg.svd(rep.corr, compute_uv=False)
    value = float(s[0] ** 2 + s[1] ** 2)
    return ChshVerdict(
        singulars=(float(s[0]), float(s[1]), float(s[2])),
        criterion_value=value,
        is_local=value <= 1.0 + BOUNDARY_TOL,
    )


def cglmp_qk(d: int, k: int) -> float:
    """Joint outcome weight q_k = 1 / (2 d^3 sin^2(pi (k + 1/4) / d))."""
    if int(d) != d or d < 2:
        raise OutOfRange(f"local dimension must be an integer >= 2, got {d}")
    s = np.sin(np.pi * (k + 0.25) / d)
    return float(1.0 / (2.0 * d**3 * s * s))


def cglmp_threshold(d: int) -> CglmpThreshold:
    """Quantum CGLMP value I_d and the isotropic locality threshold 2/I_d.

    I_d = 4d sum_{k=0}^{floor(d/2)-1} (1 - 2k/(d-1)) (q_k - q_{-(k+1)}),
    evaluated literally; at d = 2 the sum is the single k = 0 term and the
    threshold reduces to the CHSH value 1/sqrt(2).
    """
    if int(d) != d or d < 2:
        raise OutOfRange(f"local dimension must be an integer >= 2, got {d}")
    total = 0.0
    for k in range(d // 2):
        coeff = 1.0 - 2.0 * k / (d - 1.0)
        total += coeff * (cglmp_qk(d, k) - cglmp_qk(d, -(k + 1)))
    i_d = 4.0 * d * total
    return CglmpThreshold(d=d, i_d_qm=i_d, omega_threshold=2.0 / i_d)


def in_tetrahedron(a, tol: float = 1e-12) -> bool:
    """Whether correlators a lie in the physical Bell-diagonal tetrahedron."""
    return bool(bd_corr_to_probs(a).min() >= -tol)


def max_pair_sum(a) -> float:
    """Largest of a_i^2 + a_j^2 over the three index pairs."""
    a = np.asarray(a, dtype=float)
    return float(max(a[i] ** 2 + a[j] ** 2 for i, j in DISK_PAIRS))


def bd_is_chsh_local(a) -> bool:
    """CHSH locality of a Bell-diagonal state: every pair sum a_i^2 + a_j^2 <= 1.

    Raises NonPhysical outside the tetrahedron. The boundary counts as local.
    """
    if not in_tetrahedron(a):
        raise NonPhysical(f"correlators {np.asarray(a).tolist()} outside the tetrahedron")
    return max_pair_sum(a) <= 1.0 + BOUNDARY_TOL


@dataclass(frozen=True)
class BoundarySurface:
    """One piece of the local-region boundary inside the tetrahedron.

    Quadratic pieces ("disk") satisfy a_i^2 + a_j^2 = 1 where the named pair
    dominates in magnitude; facet pieces are the faces e_k = 0 of the
    tetrahedron itself.
    """

    surface_id: str
    kind: str
    indices: tuple[int, ...]

    def constraint(self, a) -> float:
        """Defining function, zero exactly on the surface."""
        a = np.asarray(a, dtype=float)
        if self.kind == "disk":
            i, j = self.indices
            return float(a[i] ** 2 + a[j] ** 2 - 1.0)
        (k,) = self.indices
        return float(bd_corr_to_probs(a)[k])

    def is_valid(self, a, tol: float = 1e-12) -> bool:
        """Whether the point belongs to this piece's validity region."""
        a = np.asarray(a, dtype=float)
        if not in_tetrahedron(a, tol=tol):
            return False
        if self.kind == "disk":
            i, j = self.indices
            k = ({0, 1, 2} - {i, j}).pop()
            return min(abs(a[i]), abs(a[j])) >= abs(a[k]) - tol
        return True

    def parametrize(self, params) -> np.ndarray:
        """Map two parameters onto the surface.

        Disk pieces take (theta, c) to the point with the named pair on the
        unit circle and the remaining coordinate equal to c. Facet pieces take
        barycentric weights (u, v) over the three Bell corners spanning the
        face.
        """
        u, v = float(params[0]), float(params[1])
        a = np.empty(3)
        if self.kind == "disk":
            i, j = self.indices
            k = ({0, 1, 2} - {i, j}).pop()
            a[i] = np.cos(u)
            a[j] = np.sin(u)
            a[k] = v
            return a
        (k,) = self.indices
        others = [m for m in range(4) if m != k]
        weights = (u, v, 1.0 - u - v)
        return sum(w * BELL_CORNERS[m] for w, m in zip(weights, others))


def bd_local_boundary_surfaces() -> list[BoundarySurface]:
    """Descriptors for the seven boundary pieces: three disks and four facets."""
    disks = [
        BoundarySurface(surface_id=f"disk_{i + 1}{j + 1}", kind="disk", indices=(i, j))
        for i, j in DISK_PAIRS
    ]
    facets = [
        BoundarySurface(surface_id=f"facet_e{k + 1}", kind="facet", indices=(k,))
        for k in range(4)
    ]
    return disks + facets
