"""Experiment harness: parameter sweeps, diagnostics, CSV and plot output.

Eight study kinds are provided:

* ``sigma_sweep``       error of the stabilized scheme versus the
                        stabilization parameter, three regimes at fixed h
                        (optionally a multi-h variant);
* ``h_convergence``     both reformulations over a mesh-refinement ladder,
                        three regimes;
* ``eps_sweep``         robustness over twenty decades of anisotropy;
* ``conditioning``      cond_1 growth under refinement plus slopes;
* ``low_regularity``    square-integrable-only source term, auxiliary
                        variable norms under refinement;
* ``oracle_validation`` finite elements against the closed-form mode
                        solver on the aligned rectangle;
* ``infsup_probe``      coarse/fine Riesz-norm ratio detecting the mesh
                        dependence of the discrete coupling stability;
* ``dual_norm_check``     dual-norm ratio against its closed form for
                        separated modes.

Every study is deterministic; solver failures are recorded per point and
never abort a sweep.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, fields as dataclass_fields

import numpy as np

from .fields import FieldSpec, ManufacturedCase, source_functional
from .fem import (assemble, error_components, make_space, parallel_seminorm,
                  dual_norm)
from .geometry import Tag, build_quad_mesh, build_tri_mesh, classify_boundary
from .schemes import (ProblemSpec, SchemeOperators, build_system,
                      solve_scheme)
from .solver import SingularMatrixError, lu_factor, solve
from .spectral import FourierRhs, spectral_solve

STUDY_KINDS = ("sigma_sweep", "h_convergence", "eps_sweep", "conditioning",
               "low_regularity", "oracle_validation", "infsup_probe",
               "dual_norm_check")


@dataclass
class StudyConfig:
    """Grids and selectors for one study; None fields fall back to the
    defaults used throughout the built-in experiments."""

    kind: str
    schemes: list | None = None
    family: str | None = None
    n_list: list | None = None
    eps_list: list | None = None
    sigma_rule: tuple | None = None       # ("fixed", value) | ("power", p)
    sigma_list: list | None = None
    alpha_list: list | None = None
    case_id: str | None = None
    modes: list | None = None
    k_list: list | None = None
    multi_h: bool = False
    flip_second_row: bool = False
    strict: bool = False
    output: str | None = None
    plot: str | None = None

    def __post_init__(self):
        if self.kind not in STUDY_KINDS:
            raise ValueError(f"unknown study kind {self.kind!r}")


@dataclass
class StudyRecord:
    """One experiment row."""

    scheme: str
    n: int
    h: float
    eps: float
    sigma: float
    alpha: float
    err_L2_abs: float
    err_H1_abs: float
    err_L2_rel: float
    err_H1_rel: float
    q_or_xi_L2_norm: float
    q_or_xi_H1_norm: float
    cond1: float
    solve_status: str
    wall_time_seconds: float


def record_h(family: str, n: int, Lx: float = 1.0) -> float:
    """Mesh-size convention of the study records: the dof-lattice spacing
    Lx/(degree*n).  For degree-1 families this is the cell size; for
    degree-2 ones it is half of it, which is the convention the reference
    error tables and the sigma = h^p rules follow."""
    from .fem import FAMILIES

    return Lx / (FAMILIES[family][1] * n)


def resolve_sigma(rule, h: float) -> float:
    """sigma from a ("fixed", value) or ("power", p) rule, the latter h**p."""
    kind, value = rule
    if kind == "fixed":
        return float(value)
    if kind == "power":
        return float(h) ** float(value)
    raise ValueError(f"unknown sigma rule {rule!r}")


def observed_orders(hs, errors):
    """Convergence order log2(e_i/e_{i+1}) for a mesh ladder with h halving."""
    hs = np.asarray(hs, dtype=float)
    errors = np.asarray(errors, dtype=float)
    orders = []
    for i in range(len(hs) - 1):
        orders.append(np.log(errors[i] / errors[i + 1]) / np.log(hs[i] / hs[i + 1]))
    return orders


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    return float(np.polyfit(np.log(np.asarray(xs, dtype=float)),
                            np.log(np.asarray(ys, dtype=float)), 1)[0])


# -- single-instance driver -------------------------------------------------


def _norms_from_components(comp):
    e2, eh2, u2, uh2 = comp
    l2 = np.sqrt(e2)
    h1 = np.sqrt(e2 + eh2)
    return l2, h1, l2 / np.sqrt(u2), h1 / np.sqrt(u2 + uh2)


def run_instance(spec: ProblemSpec, operators: SchemeOperators | None = None,
                 functional=None, exact=None) -> StudyRecord:
    """Build, solve and measure one problem instance.

    ``exact`` overrides the error reference (a (u, grad_u) pair); by
    default the manufactured case attached to the problem is used.
    """
    alpha = spec.field.alpha
    h = record_h(spec.family, spec.n, spec.Lx)
    t0 = time.perf_counter()
    try:
        system = build_system(spec, operators=operators, functional=functional)
        result = solve_scheme(system)
        status = "OK"
    except SingularMatrixError:
        elapsed = time.perf_counter() - t0
        nan = float("nan")
        return StudyRecord(spec.scheme, spec.n, h, spec.eps, spec.sigma, alpha,
                           nan, nan, nan, nan, nan, nan, nan, "SINGULAR", elapsed)
    elapsed = time.perf_counter() - t0
    reference = exact if exact is not None else spec.case
    us = system.u_space
    l2, h1, l2r, h1r = _norms_from_components(
        error_components(us, result.u, reference))
    if system.q_space is not None:
        qn = _norms_from_components(error_components(system.q_space, result.q, None))
        q_l2, q_h1 = qn[0], qn[1]
    else:
        q_l2 = q_h1 = float("nan")
    return StudyRecord(spec.scheme, spec.n, h, spec.eps, spec.sigma, alpha,
                       l2, h1, l2r, h1r, q_l2, q_h1, result.cond1, "OK", elapsed)


def _operators_for(n: int, alpha: float, family: str, Lx=1.0, Ly=1.0,
                   field_kind="variable_alpha") -> tuple[FieldSpec, SchemeOperators]:
    field = FieldSpec(field_kind, alpha)
    if family.startswith("q"):
        mesh = build_quad_mesh(n, n, Lx, Ly)
    else:
        mesh = build_tri_mesh(n, Lx, Ly)
    return field, SchemeOperators(mesh, field, family)


# -- the sweeps -------------------------------------------------------------

_THREE_REGIMES = ((1.0, 0.0), (1e-10, 0.0), (1e-10, 2.0))   # (eps, alpha)


def run_sigma_sweep(cfg: StudyConfig) -> list[StudyRecord]:
    """Stabilized-scheme error versus sigma at fixed h, three regimes.

    With cfg.multi_h, adds the strongly anisotropic variable-direction
    regime on a mesh ladder.
    """
    family = cfg.family or "q2"
    n = (cfg.n_list or [50])[0]          # h = 0.01 for the default Q2 family
    sigmas = cfg.sigma_list or [10.0 ** (-i) for i in range(16)]
    regimes = [(e, a) for e, a in _THREE_REGIMES] if cfg.eps_list is None else \
        [(e, a) for e in cfg.eps_list for a in (cfg.alpha_list or [2.0])]
    records = []
    for eps, alpha in regimes:
        field, ops = _operators_for(n, alpha, family)
        case = ManufacturedCase("smooth", alpha, eps)
        for sigma in sigmas:
            spec = ProblemSpec("stabilized", eps, field, case, sigma=sigma,
                               family=family, n=n,
                               flip_second_row=cfg.flip_second_row)
            records.append(run_instance(spec, ops))
    if cfg.multi_h:
        eps, alpha = 1e-10, 2.0
        case = ManufacturedCase("smooth", alpha, eps)
        for n_h in (cfg.n_list or [5, 10, 20, 40, 80]):
            field, ops = _operators_for(n_h, alpha, family)
            for sigma in sigmas:
                spec = ProblemSpec("stabilized", eps, field, case, sigma=sigma,
                                   family=family, n=n_h,
                                   flip_second_row=cfg.flip_second_row)
                records.append(run_instance(spec, ops))
    return records


def run_h_convergence(cfg: StudyConfig) -> list[StudyRecord]:
    """Both reformulations over a refinement ladder, sigma = h^3 by default."""
    family = cfg.family or "q2"
    schemes = cfg.schemes or ["inflow", "stabilized"]
    n_list = cfg.n_list or [5, 10, 20, 40, 80]   # h = 0.1 ... 0.00625
    sigma_rule = cfg.sigma_rule or ("power", 3)
    case_id = cfg.case_id or "smooth"
    regimes = _THREE_REGIMES if cfg.eps_list is None else \
        [(e, a) for e in cfg.eps_list for a in (cfg.alpha_list or [2.0])]
    records = []
    for eps, alpha in regimes:
        for n in n_list:
            field, ops = _operators_for(n, alpha, family)
            case = ManufacturedCase(case_id, alpha, eps)
            sigma = resolve_sigma(sigma_rule, record_h(family, n))
            for scheme in schemes:
                spec = ProblemSpec(scheme, eps, field, case,
                                   sigma=sigma if scheme == "stabilized" else 0.0,
                                   family=family, n=n,
                                   flip_second_row=cfg.flip_second_row)
                records.append(run_instance(spec, ops))
    return records


def run_eps_sweep(cfg: StudyConfig) -> list[StudyRecord]:
    """Error versus anisotropy strength at fixed mesh, sigma = h^3."""
    family = cfg.family or "q2"
    schemes = cfg.schemes or ["inflow", "stabilized"]
    n = (cfg.n_list or [50])[0]          # h = 0.01 for the default Q2 family
    alpha = (cfg.alpha_list or [2.0])[0]
    eps_list = cfg.eps_list or [1e-20, 1e-16, 1e-12, 1e-10, 1e-8, 1e-6,
                                1e-4, 1e-2, 1e-1, 1.0, 10.0]
    sigma = resolve_sigma(cfg.sigma_rule or ("power", 3), record_h(family, n))
    case_id = cfg.case_id or "smooth"
    field, ops = _operators_for(n, alpha, family)
    records = []
    for scheme in schemes:
        for eps in eps_list:
            case = ManufacturedCase(case_id, alpha, eps)
            spec = ProblemSpec(scheme, eps, field, case,
                               sigma=sigma if scheme == "stabilized" else 0.0,
                               family=family, n=n,
                               flip_second_row=cfg.flip_second_row)
            records.append(run_instance(spec, ops))
    return records


def run_conditioning(cfg: StudyConfig) -> list[StudyRecord]:
    """cond_1 versus h for both schemes; slopes via loglog_slope on the output."""
    family = cfg.family or "q2"
    schemes = cfg.schemes or ["inflow", "stabilized"]
    n_list = cfg.n_list or [10, 20, 40, 80]
    eps_list = cfg.eps_list or [1e-10]
    alpha = (cfg.alpha_list or [2.0])[0]
    sigma_rule = cfg.sigma_rule or ("power", 3)
    records = []
    for n in n_list:
        field, ops = _operators_for(n, alpha, family)
        sigma = resolve_sigma(sigma_rule, record_h(family, n))
        for scheme in schemes:
            for eps in eps_list:
                case = ManufacturedCase("smooth", alpha, eps)
                spec = ProblemSpec(scheme, eps, field, case,
                                   sigma=sigma if scheme == "stabilized" else 0.0,
                                   family=family, n=n,
                                   flip_second_row=cfg.flip_second_row)
                records.append(run_instance(spec, ops))
    return records


def run_low_regularity(cfg: StudyConfig) -> list[StudyRecord]:
    """Source term in L2 only: errors and auxiliary-variable norms."""
    family = cfg.family or "q1"
    schemes = cfg.schemes or ["inflow", "stabilized"]
    n_list = cfg.n_list or [16, 32, 64, 128]
    eps = (cfg.eps_list or [1e-10])[0]
    alphas = cfg.alpha_list if cfg.alpha_list is not None else [0.0, 2.0]
    sigma_rule = cfg.sigma_rule or ("power", 2)
    records = []
    for alpha in alphas:
        case = ManufacturedCase("low_reg", alpha, eps)
        for n in n_list:
            field, ops = _operators_for(n, alpha, family)
            sigma = resolve_sigma(sigma_rule, record_h(family, n))
            for scheme in schemes:
                spec = ProblemSpec(scheme, eps, field, case,
                                   sigma=sigma if scheme == "stabilized" else 0.0,
                                   family=family, n=n,
                                   flip_second_row=cfg.flip_second_row)
                records.append(run_instance(spec, ops))
    return records


# -- oracle and diagnostics --------------------------------------------------


def _series_reference(sol):
    """(u, grad_u) callables of the primal mode series."""
    k = sol.rhs.k.astype(float)
    l = sol.rhs.l.astype(float)
    c = sol.u_coeff

    def u(x, y):
        x = np.asarray(x, dtype=float)[..., None]
        y = np.asarray(y, dtype=float)[..., None]
        return np.sum(c * np.sin(k * x) * np.cos(l * y), axis=-1)

    def grad_u(x, y):
        x = np.asarray(x, dtype=float)[..., None]
        y = np.asarray(y, dtype=float)[..., None]
        gx = np.sum(c * k * np.cos(k * x) * np.cos(l * y), axis=-1)
        gy = np.sum(-c * l * np.sin(k * x) * np.sin(l * y), axis=-1)
        out = np.empty(gx.shape + (2,))
        out[..., 0] = gx
        out[..., 1] = gy
        return out

    return u, grad_u


def run_oracle_validation(cfg: StudyConfig) -> list[StudyRecord]:
    """Stabilized finite elements against the mode solver on (0, pi)^2.

    Error fields hold the FEM-versus-series differences of the primal
    variable; auxiliary norms hold the discrete auxiliary variable norms.
    When 1 - eps and sigma are both exactly zero the primal block decouples
    from the (then non-unique) auxiliary one and is solved on its own.
    """
    families = [cfg.family] if cfg.family else ["q1", "q2"]
    n_list = cfg.n_list or [8, 16, 32, 64]
    eps = (cfg.eps_list or [1e-10])[0]
    sigma = resolve_sigma(cfg.sigma_rule or ("fixed", 1e-6), 0.0)
    f = FourierRhs.from_modes(cfg.modes or [(1, 1, 1.0)])
    sol = spectral_solve(f, eps, sigma)
    exact = _series_reference(sol)
    functional = source_functional(f)
    records = []
    for family in families:
        for n in n_list:
            field, ops = _operators_for(n, 0.0, family, Lx=np.pi, Ly=np.pi,
                                        field_kind="aligned_e2")
            spec = ProblemSpec("stabilized", eps, field, None, sigma=sigma,
                               family=family, n=n, Lx=np.pi, Ly=np.pi,
                               flip_second_row=cfg.flip_second_row)
            if eps == 1.0 and sigma == 0.0:
                records.append(_run_decoupled(spec, ops, functional, exact))
            else:
                records.append(run_instance(spec, ops, functional, exact))
    return records


def _run_decoupled(spec, ops, functional, exact) -> StudyRecord:
    """Primal block alone; valid exactly when the coupling factor vanishes."""
    us = ops.u_space
    t0 = time.perf_counter()
    ell = ops.load_vector(functional)
    K = ops.K[us.free][:, us.free].tocsr()
    factor = lu_factor(K)
    u = us.expand(solve(factor, ell[us.free]))
    elapsed = time.perf_counter() - t0
    from .solver import cond1_estimate
    cond1 = cond1_estimate(K, factor)
    l2, h1, l2r, h1r = _norms_from_components(error_components(us, u, exact))
    nan = float("nan")
    return StudyRecord(spec.scheme, spec.n, record_h(spec.family, spec.n, spec.Lx),
                       spec.eps, spec.sigma, spec.field.alpha, l2, h1, l2r, h1r,
                       nan, nan, cond1, "OK", elapsed)


def run_infsup_probe(cfg: StudyConfig) -> list[tuple[int, float]]:
    """Ratio of coarse to refined Riesz norms for an oscillatory multiplier.

    Coarse space: P1 on the n-triangulation; refined: P2 on the 2n one
    (a superset, so the ratio cannot exceed 1).  The probe function is
    y * sin(pi*n*x/2) at the coarse nodes: it oscillates at the mesh scale
    ACROSS the field lines (the direction that degrades the coupling
    stability; oscillation along them is resolved by resonant test
    functions and shows no decay), and it vanishes on the constrained
    sides exactly when n is even.
    """
    n_list = cfg.n_list or [4, 8, 16, 32]
    field = FieldSpec("aligned_e2")
    out = []
    for n in n_list:
        if n % 2:
            raise ValueError("the probe needs an even resolution")
        out.append((n, _infsup_ratio(n, field)))
    return out


def _infsup_ratio(n: int, field: FieldSpec) -> float:
    coarse = build_tri_mesh(n)
    fine = build_tri_mesh(2 * n)
    Vc = make_space(coarse, "p1", {Tag.DIRICHLET}, classify_boundary(coarse, field))
    Vf = make_space(fine, "p2", {Tag.DIRICHLET}, classify_boundary(fine, field))
    q = Vc.interpolate(lambda x, y: y * np.sin(np.pi * n * x / 2.0))

    Pc = assemble(Vc, Vc, "a_par", field)
    Kc = assemble(Vc, Vc, "a_full", field)
    rc = (Pc @ q)[Vc.free]
    vc = solve(lu_factor(Kc[Vc.free][:, Vc.free].tocsr()), rc)
    norm_c = np.sqrt(max(vc @ rc, 0.0))

    # the coarse multiplier gradient is constant per coarse triangle; each
    # fine element is nested inside exactly one of them
    tab_c = Vc.tables()
    grad_q = np.einsum("el,ela->ea", q[Vc.element_dofs], tab_c["G"][:, :, 0, :])
    centroids = fine.nodes[fine.elements].mean(axis=1)
    hcell = 1.0 / n
    ci = np.clip((centroids[:, 0] // hcell).astype(int), 0, n - 1)
    cj = np.clip((centroids[:, 1] // hcell).astype(int), 0, n - 1)
    frac_x = centroids[:, 0] - ci * hcell
    frac_y = centroids[:, 1] - cj * hcell
    parent = 2 * (cj * n + ci) + (frac_y > frac_x)

    tab_f = Vf.tables()
    bq = np.zeros(tab_f["wdet"].shape + (2,))
    bq[..., 1] = 1.0                        # aligned field
    gpar = grad_q[parent][:, None, :]       # (Ef, 1, 2)
    s = gpar[..., 0] * bq[..., 0] + gpar[..., 1] * bq[..., 1]
    re = np.einsum("eq,eq,elqa,eqa->el", tab_f["wdet"], s, tab_f["G"], bq,
                   optimize=True)
    rf_full = np.zeros(Vf.n_dofs)
    np.add.at(rf_full, Vf.element_dofs.ravel(), re.ravel())

    Kf = assemble(Vf, Vf, "a_full", field)
    rf = rf_full[Vf.free]
    vf = solve(lu_factor(Kf[Vf.free][:, Vf.free].tocsr()), rf)
    norm_f = np.sqrt(max(vf @ rf, 0.0))
    return float(norm_c / norm_f)


def separated_mode_ratio(k: int) -> float:
    """Closed-form dual-to-parallel norm ratio for the separated mode q_k."""
    return np.sqrt((1.0 / (k * k + 1.0) + 16.0 / (k * k + 4.0)) / 5.0)


def run_dual_norm_check(cfg: StudyConfig) -> list[tuple[int, float, float]]:
    """Dual-norm ratio of q_k = sin(kx)(cos y - cos 2y) against its closed form.

    Aligned field on (0, pi)^2; the interpolated mode lies in the
    constrained multiplier space, so the discrete ratio converges to the
    analytic one under refinement.
    """
    n = (cfg.n_list or [128])[0]
    family = cfg.family or "q2"
    ks = cfg.k_list or [1, 2, 3, 4]
    field = FieldSpec("aligned_e2")
    mesh = build_quad_mesh(n, n, np.pi, np.pi)
    tags = classify_boundary(mesh, field)
    u_space = make_space(mesh, family, {Tag.DIRICHLET}, tags)
    q_space = make_space(mesh, family, {Tag.DIRICHLET, Tag.INFLOW}, tags)
    P = assemble(u_space, u_space, "a_par", field)
    K = assemble(u_space, u_space, "a_full", field)
    out = []
    for k in ks:
        q = q_space.interpolate(
            lambda x, y, k=k: np.sin(k * x) * (np.cos(y) - np.cos(2 * y)))
        q[q_space.constrained] = 0.0
        ratio = dual_norm(q, field, u_space, P, K) / parallel_seminorm(q, P)
        out.append((k, float(ratio), separated_mode_ratio(k)))
    return out


# -- output -------------------------------------------------------------------

_RECORD_FIELDS = [f.name for f in dataclass_fields(StudyRecord)]


def _format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def emit_csv(records, path) -> None:
    """Comma-separated records, 17-significant-digit floats, LF endings."""
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(_RECORD_FIELDS) + "\n")
        for rec in records:
            fh.write(",".join(_format_value(getattr(rec, name))
                              for name in _RECORD_FIELDS) + "\n")


def read_csv(path) -> list[StudyRecord]:
    """Parse a file written by emit_csv back into records."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if header != _RECORD_FIELDS:
            raise ValueError("unexpected CSV header")
        records = []
        for line in fh:
            parts = line.rstrip("\n").split(",")
            kwargs = {}
            for name, raw in zip(_RECORD_FIELDS, parts):
                if name in ("scheme", "solve_status"):
                    kwargs[name] = raw
                elif name == "n":
                    kwargs[name] = int(raw)
                else:
                    kwargs[name] = float(raw)
            records.append(StudyRecord(**kwargs))
    return records


def emit_plot_script(records, path, csv_path=None) -> None:
    """gnuplot command file producing log-log curves from the matching CSV.

    The abscissa is whichever of sigma, eps, h varies in the records.
    The script is emitted, never executed.
    """
    records = list(records)
    if csv_path is None:
        csv_path = str(path).rsplit(".", 1)[0] + ".csv"

    def varies(name):
        vals = {getattr(r, name) for r in records}
        return len(vals) > 1

    if records and varies("sigma"):
        x_name, x_col = "sigma", _RECORD_FIELDS.index("sigma") + 1
    elif records and varies("eps"):
        x_name, x_col = "eps", _RECORD_FIELDS.index("eps") + 1
    else:
        x_name, x_col = "h", _RECORD_FIELDS.index("h") + 1
    schemes = sorted({r.scheme for r in records}) or ["inflow"]
    l2_col = _RECORD_FIELDS.index("err_L2_abs") + 1
    h1_col = _RECORD_FIELDS.index("err_H1_abs") + 1
    cond_col = _RECORD_FIELDS.index("cond1") + 1
    with_cond = bool(records) and all(np.isfinite(r.cond1) for r in records)

    lines = [
        "# log-log curves for the study output; run with gnuplot",
        "set datafile separator ','",
        "set logscale xy",
        "set key outside",
        f"set xlabel '{x_name}'",
        "set ylabel 'error'",
        "set terminal pngcairo size 900,600",
        f"set output '{csv_path}.errors.png'",
    ]
    plots = []
    for scheme in schemes:
        sel = f"(strcol(1) eq '{scheme}' ? ${x_col} : NaN)"
        plots.append(f"'{csv_path}' skip 1 using {sel}:{l2_col} "
                     f"with linespoints title '{scheme} L2'")
        plots.append(f"'{csv_path}' skip 1 using {sel}:{h1_col} "
                     f"with linespoints title '{scheme} H1'")
    lines.append("plot " + ", \\\n     ".join(plots))
    if with_cond:
        lines += [
            "set ylabel 'cond_1'",
            f"set output '{csv_path}.cond.png'",
        ]
        plots = []
        for scheme in schemes:
            sel = f"(strcol(1) eq '{scheme}' ? ${x_col} : NaN)"
            plots.append(f"'{csv_path}' skip 1 using {sel}:{cond_col} "
                         f"with linespoints title '{scheme} cond1'")
        lines.append("plot " + ", \\\n     ".join(plots))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


STUDY_RUNNERS = {
    "sigma_sweep": run_sigma_sweep,
    "h_convergence": run_h_convergence,
    "eps_sweep": run_eps_sweep,
    "conditioning": run_conditioning,
    "low_regularity": run_low_regularity,
    "oracle_validation": run_oracle_validation,
    "infsup_probe": run_infsup_probe,
    "dual_norm_check": run_dual_norm_check,
}
