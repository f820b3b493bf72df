"""P1 finite-element discretization of the s-Laplacian energy on the unit square.

The energy is ``F(u) = (1/s) * integral |grad u|^s - integral b*u`` over
piecewise-linear functions vanishing on the boundary.  The square is split
into ``2 * (1/h)^2`` uniform right triangles; the unknown vector holds the
interior vertex values only (row-major ordering), boundary values are
structurally zero.  P1 elements make the gradient constant per triangle, so
the energy integral is exact per-triangle quadrature; the load integral uses
vertex quadrature, which is also exact for P1 with constant b.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..oracle import CompositeProblem, RegularityInfo, Vector

# heuristic convexity moduli used by the benchmark runs
DEFAULT_MU = {1.5: 0.046, 4.0: 0.124}


@dataclass(frozen=True)
class TriangulationMesh:
    h: float
    vertices: np.ndarray        # (Nv, 2)
    triangles: np.ndarray       # (Nt, 3) vertex indices, positive orientation
    interior_mask: np.ndarray   # (Nv,) bool


def build_mesh(h: float) -> TriangulationMesh:
    """Uniform right-triangle split of the unit square with mesh size h.

    1/h must be a positive integer; the grid has (1/h + 1)^2 vertices in
    row-major order and each cell is cut along its lower-left to upper-right
    diagonal.
    """
    m_f = 1.0 / h
    m = round(m_f)
    if m <= 0 or abs(m_f - m) > 1e-12:
        raise ValueError(f"1/h must be a positive integer, got 1/h = {m_f}")
    xs = np.linspace(0.0, 1.0, m + 1)
    gx, gy = np.meshgrid(xs, xs)            # row i = y, column j = x
    vertices = np.column_stack([gx.ravel(), gy.ravel()])
    tris = []
    for i in range(m):
        for j in range(m):
            ll = i * (m + 1) + j
            lr = ll + 1
            ul = ll + (m + 1)
            ur = ul + 1
            tris.append((ll, lr, ur))
            tris.append((ll, ur, ul))
    triangles = np.array(tris, dtype=np.int64)
    ii = np.arange((m + 1) ** 2) // (m + 1)
    jj = np.arange((m + 1) ** 2) % (m + 1)
    interior = (ii > 0) & (ii < m) & (jj > 0) & (jj < m)
    return TriangulationMesh(h=h, vertices=vertices, triangles=triangles, interior_mask=interior)


def _hat_gradients(mesh: TriangulationMesh):
    """Per-triangle signed areas and gradients of the three hat functions."""
    pts = mesh.vertices[mesh.triangles]      # (Nt, 3, 2)
    p1, p2, p3 = pts[:, 0], pts[:, 1], pts[:, 2]
    det = (p2[:, 0] - p1[:, 0]) * (p3[:, 1] - p1[:, 1]) - (
        p3[:, 0] - p1[:, 0]
    ) * (p2[:, 1] - p1[:, 1])
    areas = 0.5 * det
    grads = np.empty((len(areas), 3, 2))
    corners = (p1, p2, p3)
    for k in range(3):
        pa = corners[(k + 1) % 3]
        pb = corners[(k + 2) % 3]
        grads[:, k, 0] = (pa[:, 1] - pb[:, 1]) / det
        grads[:, k, 1] = (pb[:, 0] - pa[:, 0]) / det
    return areas, grads


class SLaplacianProblem:
    """s-Laplacian FEM energy with its exact gradient.

    ``b`` may be a constant or a per-vertex array.  At triangles where the
    discrete gradient vanishes and s < 2, the (sub)gradient contribution of
    that triangle is 0, the continuous extension.
    """

    def __init__(self, mesh: TriangulationMesh, s: float, b=1.0):
        if s < 1:
            raise ValueError("exponent s must be >= 1")
        self.mesh = mesh
        self.s = float(s)
        self.b = b
        self.areas, self.grads = _hat_gradients(mesh)
        nv = len(mesh.vertices)
        nt = len(mesh.triangles)
        # scatter matrix: row v, column 2T + c holds grads[T, k, c] for v = tri[T, k];
        # S.T @ u_full yields per-triangle gradients, S @ flux assembles them back
        rows = mesh.triangles.ravel()
        cols = np.repeat(2 * np.arange(nt), 3)
        data0 = self.grads[:, :, 0].ravel()
        data1 = self.grads[:, :, 1].ravel()
        S = sp.csr_matrix(
            (
                np.concatenate([data0, data1]),
                (np.concatenate([rows, rows]), np.concatenate([cols, cols + 1])),
            ),
            shape=(nv, 2 * nt),
        )
        self.scatter = S
        self.gather = S.T.tocsr()
        self.interior = np.flatnonzero(mesh.interior_mask)
        self.dim = len(self.interior)
        patch = np.zeros(nv)
        np.add.at(patch, mesh.triangles.ravel(), np.repeat(self.areas, 3))
        b_vec = np.broadcast_to(np.asarray(b, dtype=float), (nv,))
        self.load = (b_vec * patch / 3.0)[self.interior]
        self._full = np.zeros(nv)

    def _triangle_gradients(self, u: Vector) -> np.ndarray:
        full = np.zeros(len(self.mesh.vertices))
        full[self.interior] = u
        return (self.gather @ full).reshape(-1, 2)

    def energy(self, u: Vector) -> float:
        gu = self._triangle_gradients(u)
        norms = np.sqrt(gu[:, 0] ** 2 + gu[:, 1] ** 2)
        return float(np.dot(self.areas / self.s, norms**self.s) - np.dot(self.load, u))

    def gradient(self, u: Vector) -> Vector:
        gu = self._triangle_gradients(u)
        norms = np.sqrt(gu[:, 0] ** 2 + gu[:, 1] ** 2)
        w = np.zeros_like(norms)
        nz = norms > 0.0
        w[nz] = self.areas[nz] * norms[nz] ** (self.s - 2.0)
        flux = (w[:, None] * gu).ravel()
        assembled = self.scatter @ flux
        return assembled[self.interior] - self.load

    def fingerprint(self) -> str:
        b_tag = (
            f"{float(self.b):.12g}"
            if np.isscalar(self.b)
            else f"vec{len(np.asarray(self.b))}"
        )
        return f"slap;h={self.mesh.h:.12g};s={self.s:.12g};b={b_tag};dim={self.dim}"

    def as_composite(self, mu: float | None = None) -> CompositeProblem:
        """Wrap as a composite problem with g = 0.

        The implied regularity exponents are q = min(2, s) and p = max(2, s);
        the convexity modulus is a configuration input (see ``DEFAULT_MU``).
        """
        return CompositeProblem(
            dim=self.dim,
            smooth_value=self.energy,
            smooth_gradient=self.gradient,
            regularity=RegularityInfo(
                p=max(2.0, self.s), mu=mu, q=min(2.0, self.s), L=None
            ),
            fingerprint=self.fingerprint(),
        )


def slap_energy(problem: SLaplacianProblem, u: Vector) -> float:
    return problem.energy(u)


def slap_gradient(problem: SLaplacianProblem, u: Vector) -> Vector:
    return problem.gradient(u)
