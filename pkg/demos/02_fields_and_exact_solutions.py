"""The anisotropy field and the manufactured solutions built on it.

Every closed-form solution is a function of the field-line coordinate
t(x, y) plus an eps-proportional perturbation, so its limit part is
constant along the field lines by construction.  Gradients are analytic.
"""

import numpy as np

from anisofem import FieldSpec, ManufacturedCase, eval_A, eval_b

field = FieldSpec("variable_alpha", 2.0)

b = eval_b(field, 0.5, 0.5)
print("b(0.5, 0.5)      =", b, " |b| =", np.hypot(*b))
print("A(0.5, 0.5)      =\n", eval_A(field, 0.5, 0.5), " (unit coefficients)")

# the full tensor reacts to the parallel coefficient
strong = FieldSpec("variable_alpha", 2.0,
                   a_par=lambda x, y: 3.0 * np.ones_like(np.asarray(x, dtype=float)))
print("A with a_par = 3 =\n", eval_A(strong, 0.5, 0.5))

case = ManufacturedCase("smooth", 2.0, eps=1e-3)
xs = np.linspace(0, 1, 5)
print("\nsmooth case, eps = 1e-3")
print("u on the mid-line:", np.round(case.u(xs, 0.5 * np.ones_like(xs)), 6))
print("auxiliary variable on the inflow side:", case.q(np.zeros(3), xs[:3]))

# the limit part really is constant along field lines
g = case.grad_u_limit(xs, 0.3 * np.ones_like(xs))
bb = eval_b(field, xs, 0.3 * np.ones_like(xs))
print("max |b . grad u0| on a sample line:",
      np.abs(np.sum(bb * g, axis=-1)).max())

rough = ManufacturedCase("low_reg", 2.0, eps=1e-10)
print("\nlow-regularity case traces: bottom",
      rough.u_limit(0.3, 0.0), " top", rough.u_limit(0.3, 1.0))
