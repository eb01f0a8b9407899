"""The three discrete formulations and their block systems.

* ``standard``   - single-field singular-perturbation discretization,
                   matrix (1-eps)/eps * P + K; breaks down as eps -> 0.
* ``inflow``     - auxiliary variable pinned to zero on the inflow boundary
                   (and on the tangential boundary, since its space sits
                   inside the primal one).
* ``stabilized`` - auxiliary variable in the primal space with an extra
                   -sigma * mass term restoring uniqueness.

The second block row is assembled exactly as the weak equations read,
[P^T, -(eps*C + sigma*M)]; ``flip_second_row`` negates that whole row (a
solution-preserving transform) for experiments on the sign convention.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .fields import FieldSpec, ManufacturedCase, LinearFunctional, rhs_functional
from .fem import FAMILIES, FemSpace, assemble, assemble_rhs, make_space
from .geometry import Mesh, Tag, build_quad_mesh, build_tri_mesh, classify_boundary
from .solver import cond1_estimate, lu_factor, solve

SCHEME_KINDS = ("standard", "inflow", "stabilized")


@dataclass
class ProblemSpec:
    """Full description of one discrete problem instance."""

    scheme: str
    eps: float
    field: FieldSpec
    case: ManufacturedCase | None = None
    sigma: float = 0.0
    family: str = "q2"
    n: int = 10
    Lx: float = 1.0
    Ly: float = 1.0
    flip_second_row: bool = False

    def __post_init__(self):
        if self.scheme not in SCHEME_KINDS:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        # the AP formulations target eps in [0, 1] but remain assemblable
        # beyond it, which the robustness sweeps exploit (eps up to 10)
        if self.scheme == "standard":
            if self.eps <= 0.0:
                raise ValueError("the standard scheme needs eps > 0")
        elif self.eps < 0.0:
            raise ValueError("eps must be nonnegative")
        if self.sigma < 0.0:
            raise ValueError("sigma must be nonnegative")
        if self.scheme == "stabilized" and self.sigma == 0.0:
            warnings.warn("stabilized scheme with sigma = 0: the auxiliary "
                          "variable is not unique and the solver may report "
                          "a singular matrix", stacklevel=2)

    def build_mesh(self) -> Mesh:
        kind, _ = FAMILIES[self.family]
        if kind == "quad":
            return build_quad_mesh(self.n, self.n, self.Lx, self.Ly)
        return build_tri_mesh(self.n, self.Lx, self.Ly)


class SchemeOperators:
    """Mesh, spaces and the three assembled forms, reusable across
    (eps, sigma) instances on the same mesh and field."""

    def __init__(self, mesh: Mesh, field: FieldSpec, family: str):
        self.mesh = mesh
        self.field = field
        self.family = family
        self.tags = classify_boundary(mesh, field)
        self.u_space = make_space(mesh, family, {Tag.DIRICHLET}, self.tags)
        self.q_space = make_space(mesh, family, {Tag.DIRICHLET, Tag.INFLOW}, self.tags)
        self.K = assemble(self.u_space, self.u_space, "a_full", field)
        self.P = assemble(self.u_space, self.u_space, "a_par", field)
        self.M = assemble(self.u_space, self.u_space, "mass")

    def load_vector(self, functional: LinearFunctional) -> np.ndarray:
        return assemble_rhs(self.u_space, functional)


@dataclass
class BlockSystem:
    """Stacked linear system over the free dofs of (u, auxiliary)."""

    matrix: sp.csr_matrix
    rhs: np.ndarray
    n_u: int
    n_q: int
    scheme: str
    u_space: FemSpace
    q_space: FemSpace | None
    operators: SchemeOperators


class SchemeResult(NamedTuple):
    u: np.ndarray          # full-length coefficients, pinned values filled in
    q: np.ndarray          # full-length auxiliary coefficients (empty for standard)
    cond1: float


def _sub(A, rows, cols):
    return A[rows][:, cols].tocsr()


def build_system(spec: ProblemSpec, mesh: Mesh | None = None,
                 operators: SchemeOperators | None = None,
                 functional: LinearFunctional | None = None) -> BlockSystem:
    """Assemble the block system for one problem instance.

    The load functional defaults to the one manufactured from spec.case.
    For the standard scheme the system is the single primal block.
    """
    if operators is None:
        if mesh is None:
            mesh = spec.build_mesh()
        operators = SchemeOperators(mesh, spec.field, spec.family)
    if functional is None:
        if spec.case is None:
            raise ValueError("no manufactured case and no explicit load functional")
        functional = rhs_functional(spec.case, spec.field, spec.eps)

    ops = operators
    us = ops.u_space
    if spec.case is not None and spec.case.case_id == "low_reg":
        us.set_dirichlet_values(spec.case.u_limit)
    ell = ops.load_vector(functional)
    uf, uc = us.free, us.constrained
    gu = us.dirichlet_values
    eps = spec.eps

    if spec.scheme == "standard":
        S = (ops.K + ((1.0 - eps) / eps) * ops.P).tocsr()
        rhs = ell[uf] - _sub(S, uf, uc) @ gu
        return BlockSystem(_sub(S, uf, uf), rhs, len(uf), 0, spec.scheme,
                           us, None, ops)

    qs = ops.q_space if spec.scheme == "inflow" else ops.u_space
    qf = qs.free
    A11 = _sub(ops.K, uf, uf)
    A12 = (1.0 - eps) * _sub(ops.P, uf, qf)
    A21 = _sub(ops.P, qf, uf)
    A22 = -eps * _sub(ops.P, qf, qf)
    if spec.scheme == "stabilized" and spec.sigma != 0.0:
        A22 = A22 - spec.sigma * _sub(ops.M, qf, qf)
    rhs_u = ell[uf] - _sub(ops.K, uf, uc) @ gu
    rhs_q = -(_sub(ops.P, qf, uc) @ gu)
    if spec.flip_second_row:
        A21, A22, rhs_q = -A21, -A22, -rhs_q
    matrix = sp.bmat([[A11, A12], [A21, A22]], format="csr")
    return BlockSystem(matrix, np.concatenate([rhs_u, rhs_q]),
                       len(uf), len(qf), spec.scheme, us, qs, ops)


# Scheme solves keep going until the pivots reach the float64 noise floor:
# the stabilization sweeps deliberately drive sigma into near-singular
# territory, where the primal component is exactly what gets measured.
SCHEME_PIVOT_RTOL = 1e-16


def solve_scheme(system: BlockSystem) -> SchemeResult:
    """Direct solve with refinement; cond_1 estimated on the same factorization.

    Raises SingularMatrixError when the factorization degenerates (for
    example the stabilized scheme at eps = sigma = 0, whose auxiliary
    variable is genuinely non-unique).
    """
    factor = lu_factor(system.matrix, pivot_rtol=SCHEME_PIVOT_RTOL)
    x = solve(factor, system.rhs)
    cond1 = cond1_estimate(system.matrix, factor)
    u = system.u_space.expand(x[:system.n_u])
    if system.q_space is None:
        q = np.empty(0)
    else:
        q = system.q_space.expand(x[system.n_u:])
        if system.scheme == "stabilized":
            # the auxiliary space reuses the primal one; its own pinned
            # values stay zero even when u carries inhomogeneous data
            q[system.q_space.constrained] = 0.0
    return SchemeResult(u, q, cond1)
