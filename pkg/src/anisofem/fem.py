"""Finite element spaces, quadrature, assembly and norm evaluation.

Supports Q1/Q2 on structured rectangle meshes and P1/P2 on the structured
triangulations of :mod:`anisofem.geometry`.  All degrees of freedom of a
space live on a (k*nx+1) x (k*ny+1) point lattice (for P2 the edge
midpoints fill the odd lattice positions), numbered lexicographically with
x fastest, which keeps dof numbering bit-stable across runs.

Assembly is vectorized over elements; constrained dofs are not touched at
assembly time, elimination happens when systems are built.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .geometry import Mesh, BoundaryTags
from .fields import FieldSpec, LinearFunctional, eval_A, eval_b

FAMILIES = {"q1": ("quad", 1), "q2": ("quad", 2), "p1": ("triangle", 1),
            "p2": ("triangle", 2)}

FORM_KINDS = ("a_full", "a_par", "mass")

# Default rules: tensor Gauss 4x4 on quads (one order above what constant
# coefficients need, absorbing the variable direction field), 6-point
# degree-4 rule on triangles.  Error norms use one order more.
_QUAD_DEFAULT_PTS = 4
_QUAD_ERROR_PTS = 5


def gauss_tensor(p: int):
    """Tensor Gauss-Legendre rule on [-1,1]^2: points (Q,2), weights (Q,)."""
    x, w = np.polynomial.legendre.leggauss(p)
    X, Y = np.meshgrid(x, x, indexing="xy")
    W = np.outer(w, w)
    return np.column_stack([X.ravel(), Y.ravel()]), W.ravel()


def triangle_rule(degree: int):
    """Symmetric rules on the reference triangle (0,0)-(1,0)-(0,1).

    Weights sum to the reference area 1/2.
    """
    if degree <= 4:
        a1, w1 = 0.445948490915965, 0.223381589678011
        a2, w2 = 0.091576213509771, 0.109951743655322
        pts = [(a1, a1), (1 - 2 * a1, a1), (a1, 1 - 2 * a1),
               (a2, a2), (1 - 2 * a2, a2), (a2, 1 - 2 * a2)]
        wts = [w1] * 3 + [w2] * 3
    else:
        # 7-point degree-5 rule
        a1, w1 = 0.470142064105115, 0.132394152788506
        a2, w2 = 0.101286507323456, 0.125939180544827
        pts = [(1 / 3, 1 / 3),
               (a1, a1), (1 - 2 * a1, a1), (a1, 1 - 2 * a1),
               (a2, a2), (1 - 2 * a2, a2), (a2, 1 - 2 * a2)]
        wts = [9 / 40] + [w1] * 3 + [w2] * 3
    return np.array(pts), 0.5 * np.array(wts)


def _lagrange_1d(k: int, x):
    """Values and derivatives of the 1D Lagrange basis on [-1,1] nodes."""
    x = np.asarray(x, dtype=float)
    if k == 1:
        vals = np.stack([0.5 * (1 - x), 0.5 * (1 + x)])
        ders = np.stack([np.full_like(x, -0.5), np.full_like(x, 0.5)])
    elif k == 2:
        vals = np.stack([0.5 * x * (x - 1), 1 - x * x, 0.5 * x * (x + 1)])
        ders = np.stack([x - 0.5, -2 * x, x + 0.5])
    else:
        raise ValueError("only degrees 1 and 2 are supported")
    return vals, ders


def shape_functions(family: str, points):
    """Basis values N (nd, Q) and reference gradients dN (nd, Q, 2)."""
    kind, k = FAMILIES[family]
    pts = np.asarray(points, dtype=float)
    if kind == "quad":
        vx, dx = _lagrange_1d(k, pts[:, 0])
        vy, dy = _lagrange_1d(k, pts[:, 1])
        nd = (k + 1) ** 2
        N = np.empty((nd, len(pts)))
        dN = np.empty((nd, len(pts), 2))
        for b in range(k + 1):
            for a in range(k + 1):
                l = a + b * (k + 1)
                N[l] = vx[a] * vy[b]
                dN[l, :, 0] = dx[a] * vy[b]
                dN[l, :, 1] = vx[a] * dy[b]
        return N, dN
    xi, eta = pts[:, 0], pts[:, 1]
    lam = np.stack([1 - xi - eta, xi, eta])
    dlam = np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])
    if k == 1:
        N = lam
        dN = np.repeat(dlam[:, None, :], len(pts), axis=1)
        return N, dN
    N = np.empty((6, len(pts)))
    dN = np.empty((6, len(pts), 2))
    for i in range(3):
        N[i] = lam[i] * (2 * lam[i] - 1)
        dN[i] = (4 * lam[i] - 1)[:, None] * dlam[i]
    for e, (i, j) in enumerate(((0, 1), (1, 2), (2, 0))):
        N[3 + e] = 4 * lam[i] * lam[j]
        dN[3 + e] = 4 * (lam[i][:, None] * dlam[j] + lam[j][:, None] * dlam[i])
    return N, dN


def reference_rule(family: str, purpose: str):
    kind, _ = FAMILIES[family]
    if kind == "quad":
        return gauss_tensor(_QUAD_ERROR_PTS if purpose == "error" else _QUAD_DEFAULT_PTS)
    return triangle_rule(5 if purpose == "error" else 4)


class FemSpace:
    """Lagrange space of degree 1 or 2 with optional boundary constraints.

    ``constrained`` holds the dof indices pinned by the requested boundary
    tags; their values default to zero and can be set from a callable for
    inhomogeneous Dirichlet data.
    """

    def __init__(self, mesh: Mesh, family: str,
                 dirichlet_tags=frozenset(), boundary_tags: BoundaryTags | None = None):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        kind, k = FAMILIES[family]
        if kind != mesh.element_kind:
            raise ValueError(f"family {family} needs a {kind} mesh, "
                             f"got {mesh.element_kind}")
        self.mesh = mesh
        self.family = family
        self.degree = k
        self.mx = k * mesh.nx + 1
        self.my = k * mesh.ny + 1
        self.n_dofs = self.mx * self.my

        x = np.linspace(0.0, mesh.Lx, self.mx)
        y = np.linspace(0.0, mesh.Ly, self.my)
        X, Y = np.meshgrid(x, y, indexing="xy")
        self.coords = np.column_stack([X.ravel(), Y.ravel()])

        self.element_dofs = self._build_element_dofs()
        self.n_local = self.element_dofs.shape[1]

        dirichlet_tags = frozenset(dirichlet_tags)
        if dirichlet_tags and boundary_tags is None:
            raise ValueError("boundary tags are required to constrain dofs")
        self.constrained = self._constrained_dofs(dirichlet_tags, boundary_tags)
        mask = np.zeros(self.n_dofs, dtype=bool)
        mask[self.constrained] = True
        self.constrained_mask = mask
        self.free = np.flatnonzero(~mask)
        self.dirichlet_values = np.zeros(len(self.constrained))
        self._tables: dict[str, dict] = {}

    # -- dof layout ------------------------------------------------------

    def _build_element_dofs(self):
        mesh, k, mx = self.mesh, self.degree, self.mx
        i, j = np.meshgrid(np.arange(mesh.nx), np.arange(mesh.ny), indexing="xy")
        i, j = i.ravel(), j.ravel()
        base = (k * j) * mx + k * i

        def lat(a, b):
            return base + b * mx + a

        if mesh.element_kind == "quad":
            cols = [lat(a, b) for b in range(k + 1) for a in range(k + 1)]
            return np.column_stack(cols).astype(np.int64)
        if k == 1:
            lower = np.column_stack([lat(0, 0), lat(1, 0), lat(1, 1)])
            upper = np.column_stack([lat(0, 0), lat(1, 1), lat(0, 1)])
        else:
            lower = np.column_stack([lat(0, 0), lat(2, 0), lat(2, 2),
                                     lat(1, 0), lat(2, 1), lat(1, 1)])
            upper = np.column_stack([lat(0, 0), lat(2, 2), lat(0, 2),
                                     lat(1, 1), lat(1, 2), lat(0, 1)])
        out = np.empty((2 * mesh.nx * mesh.ny, lower.shape[1]), dtype=np.int64)
        out[0::2] = lower
        out[1::2] = upper
        return out

    def _edge_dofs(self, side: str, index: int):
        """Lattice dofs lying on one boundary mesh edge."""
        k, mx, my = self.degree, self.mx, self.my
        a = np.arange(k + 1)
        if side == "bottom":
            return k * index + a
        if side == "top":
            return (my - 1) * mx + k * index + a
        if side == "left":
            return (k * index + a) * mx
        return (k * index + a) * mx + (mx - 1)

    def _constrained_dofs(self, tags, boundary_tags):
        if not tags:
            return np.empty(0, dtype=np.int64)
        dofs = []
        for edge, tag in zip(self.mesh.boundary_edges, boundary_tags.edge_tags):
            if tag in tags:
                dofs.append(self._edge_dofs(edge.side, edge.index))
        if not dofs:
            return np.empty(0, dtype=np.int64)
        return np.unique(np.concatenate(dofs))

    def set_dirichlet_values(self, fn) -> None:
        """Pin constrained dofs to fn(x, y) instead of zero."""
        pts = self.coords[self.constrained]
        self.dirichlet_values = np.asarray(fn(pts[:, 0], pts[:, 1]), dtype=float)

    # -- vectors ----------------------------------------------------------

    def interpolate(self, fn):
        """Nodal interpolant: fn evaluated at the dof lattice."""
        return np.asarray(fn(self.coords[:, 0], self.coords[:, 1]), dtype=float)

    def expand(self, reduced):
        """Free-dof vector -> full-length vector with pinned values filled in."""
        full = np.empty(self.n_dofs)
        full[self.free] = reduced
        full[self.constrained] = self.dirichlet_values
        return full

    # -- geometric/basis tables -------------------------------------------

    def tables(self, purpose: str = "default") -> dict:
        """Cached per-rule tables: basis values, physical gradients, weights.

        Returns dict with N (nd,Q), G (E,nd,Q,2), wdet (E,Q), xq (E,Q,2).
        """
        if purpose in self._tables:
            return self._tables[purpose]
        pts, wts = reference_rule(self.family, purpose)
        N, dN = shape_functions(self.family, pts)
        mesh = self.mesh
        corners = mesh.nodes[mesh.elements]          # (E, nv, 2)
        if mesh.element_kind == "quad":
            # bilinear map on rectangles is affine
            J = np.empty((mesh.n_elements, 2, 2))
            J[:, :, 0] = 0.5 * (corners[:, 1] - corners[:, 0])
            J[:, :, 1] = 0.5 * (corners[:, 3] - corners[:, 0])
            origin = 0.5 * (corners[:, 0] + corners[:, 2])
        else:
            J = np.empty((mesh.n_elements, 2, 2))
            J[:, :, 0] = corners[:, 1] - corners[:, 0]
            J[:, :, 1] = corners[:, 2] - corners[:, 0]
            origin = corners[:, 0]
        detJ = J[:, 0, 0] * J[:, 1, 1] - J[:, 0, 1] * J[:, 1, 0]
        if np.any(detJ <= 0):
            raise ValueError("non-positive element Jacobian")
        invJ = np.empty_like(J)
        invJ[:, 0, 0] = J[:, 1, 1] / detJ
        invJ[:, 0, 1] = -J[:, 0, 1] / detJ
        invJ[:, 1, 0] = -J[:, 1, 0] / detJ
        invJ[:, 1, 1] = J[:, 0, 0] / detJ
        # physical gradients: G[e,l,q,i] = sum_j dN[l,q,j] * invJ[e,j,i]
        G = np.einsum("lqj,eji->elqi", dN, invJ)
        xq = origin[:, None, :] + np.einsum("eij,qj->eqi", J, pts)
        wdet = wts[None, :] * detJ[:, None]
        out = {"N": N, "G": G, "wdet": wdet, "xq": xq}
        self._tables[purpose] = out
        return out


def make_space(mesh: Mesh, family: str, dirichlet_tags=frozenset(),
               boundary_tags: BoundaryTags | None = None) -> FemSpace:
    return FemSpace(mesh, family, dirichlet_tags, boundary_tags)


def _finalize(K: sp.coo_matrix) -> sp.csr_matrix:
    A = K.tocsr()
    A.sum_duplicates()
    A.sort_indices()
    A.data[np.abs(A.data) < 1e-300] = 0.0
    A.eliminate_zeros()
    return A


def assemble(space_row: FemSpace, space_col: FemSpace, kind: str,
             field: FieldSpec | None = None) -> sp.csr_matrix:
    """Assemble a bilinear form over the full (unconstrained) dof lattice.

    kind: ``a_full`` is int A grad(u).grad(v); ``a_par`` is
    int A_par (b.grad u)(b.grad v); ``mass`` the L2 product.  Row and
    column spaces must share mesh and family (they may differ in their
    constrained sets, which assembly ignores).
    """
    if kind not in FORM_KINDS:
        raise ValueError(f"unknown form kind {kind!r}")
    if space_row.mesh is not space_col.mesh or space_row.family != space_col.family:
        raise ValueError("row and column spaces must share mesh and family")
    if kind != "mass" and field is None:
        raise ValueError(f"form {kind!r} needs a field")
    space = space_row
    tab = space.tables()
    N, G, wdet, xq = tab["N"], tab["G"], tab["wdet"], tab["xq"]
    if kind == "mass":
        Ke = np.einsum("eq,lq,mq->elm", wdet, N, N)
    elif kind == "a_full":
        Aq = eval_A(field, xq[..., 0], xq[..., 1])
        Ke = np.einsum("eq,eqab,elqa,emqb->elm", wdet, Aq, G, G, optimize=True)
    else:
        bq = eval_b(field, xq[..., 0], xq[..., 1])
        apar = np.asarray(field.a_par(xq[..., 0], xq[..., 1]), dtype=float)
        s = np.einsum("elqa,eqa->elq", G, bq)
        Ke = np.einsum("eq,eq,elq,emq->elm", wdet, apar, s, s, optimize=True)
    ed = space.element_dofs
    rows = np.repeat(ed, space.n_local, axis=1).ravel()
    cols = np.tile(ed, (1, space.n_local)).ravel()
    K = sp.coo_matrix((Ke.ravel(), (rows, cols)),
                      shape=(space.n_dofs, space.n_dofs))
    return _finalize(K)


def assemble_rhs(space: FemSpace, functional: LinearFunctional) -> np.ndarray:
    """Load vector b_i = l(phi_i) using the same rule as assemble."""
    tab = space.tables()
    N, G, wdet, xq = tab["N"], tab["G"], tab["wdet"], tab["xq"]
    re = np.zeros((space.mesh.n_elements, space.n_local))
    if functional.flux is not None:
        F = np.asarray(functional.flux(xq[..., 0], xq[..., 1]), dtype=float)
        re += np.einsum("eq,eqa,elqa->el", wdet, F, G, optimize=True)
    if functional.source is not None:
        f0 = np.asarray(functional.source(xq[..., 0], xq[..., 1]), dtype=float)
        f0 = np.broadcast_to(f0, wdet.shape)
        re += np.einsum("eq,eq,lq->el", wdet, f0, N)
    out = np.zeros(space.n_dofs)
    np.add.at(out, space.element_dofs.ravel(), re.ravel())
    return out


# -- norms and errors -----------------------------------------------------

NORM_WHICH = ("l2", "h1", "l2_rel", "h1_rel")


def _exact_callables(case):
    """Accepts a ManufacturedCase, a (u, grad_u) pair, or None (zero)."""
    if case is None:
        return None, None
    if isinstance(case, tuple):
        return case
    return case.u, case.grad_u


def error_components(space: FemSpace, coefficients, case=None):
    """Squared L2/H1-seminorm of (u_h - exact) and of u_h itself.

    Integrated with a rule one order above the assembly rule so the
    quadrature error stays below the discretization error being measured.
    """
    coefficients = np.asarray(coefficients, dtype=float)
    if coefficients.shape != (space.n_dofs,):
        raise ValueError("coefficient vector does not match the space")
    tab = space.tables("error")
    N, G, wdet, xq = tab["N"], tab["G"], tab["wdet"], tab["xq"]
    ce = coefficients[space.element_dofs]                 # (E, nd)
    uh = np.einsum("el,lq->eq", ce, N)
    guh = np.einsum("el,elqa->eqa", ce, G)
    u_fn, gu_fn = _exact_callables(case)
    if u_fn is None:
        du, dg = uh, guh
    else:
        du = uh - np.asarray(u_fn(xq[..., 0], xq[..., 1]), dtype=float)
        dg = guh - np.asarray(gu_fn(xq[..., 0], xq[..., 1]), dtype=float)
    err_l2_sq = float(np.sum(wdet * du * du))
    err_h1_sq = float(np.sum(wdet[..., None] * dg * dg))
    uh_l2_sq = float(np.sum(wdet * uh * uh))
    uh_h1_sq = float(np.sum(wdet[..., None] * guh * guh))
    return err_l2_sq, err_h1_sq, uh_l2_sq, uh_h1_sq


def error_norms(space: FemSpace, coefficients, case, which: str) -> float:
    """L2/H1 error norms; the _rel variants divide by the same norm of u_h."""
    which = which.lower()
    if which not in NORM_WHICH:
        raise ValueError(f"which must be one of {NORM_WHICH}")
    e2, eh2, u2, uh2 = error_components(space, coefficients, case)
    if which == "l2":
        return np.sqrt(e2)
    if which == "h1":
        return np.sqrt(e2 + eh2)
    if which == "l2_rel":
        return np.sqrt(e2) / np.sqrt(u2)
    return np.sqrt(e2 + eh2) / np.sqrt(u2 + uh2)


def dual_norm(q_coefficients, field: FieldSpec, u_space: FemSpace,
              a_par_matrix=None, a_full_matrix=None) -> float:
    """Mesh-dependent dual norm sup_v apar-form(q, v)/|v| over the u-space.

    Realized through the Riesz auxiliary solve (v*, w) = apar-form(q, w)
    on the free dofs of the u-space; returns |v*| in the energy product.
    The two assembled matrices can be passed in to amortize repeated calls.
    """
    from .solver import lu_factor, solve

    if a_par_matrix is None:
        a_par_matrix = assemble(u_space, u_space, "a_par", field)
    if a_full_matrix is None:
        a_full_matrix = assemble(u_space, u_space, "a_full", field)
    q = np.asarray(q_coefficients, dtype=float)
    r = (a_par_matrix @ q)[u_space.free]
    K = a_full_matrix[u_space.free][:, u_space.free].tocsr()
    v = solve(lu_factor(K), r)
    return float(np.sqrt(max(v @ r, 0.0)))


def parallel_seminorm(q_coefficients, a_par_matrix) -> float:
    """|q|-seminorm induced by the parallel form, sqrt(q^T P q)."""
    q = np.asarray(q_coefficients, dtype=float)
    return float(np.sqrt(max(q @ (a_par_matrix @ q), 0.0)))
