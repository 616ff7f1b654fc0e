# %% [markdown]
# # Special Lagrangian profile curves
#
# The special Lagrangian condition reduces to a first order ODE for gamma with
# a first integral F. Level sets of F are the solutions. We trace a few of
# them, check conservation, and look at the holomorphic volume along them.

# %%
import numpy as np

from slagquad import (
    CaseKind,
    TraceControls,
    antiderivative_coefficients,
    first_integral,
    holomorphic_volume,
    immersion_frame,
    random_sphere_config,
    seed_on_level,
    trace_through,
    verify_special_curve,
)

controls = TraceControls(stop_radius=10.0)

# %% [markdown]
# Flat case, n = 2: F = Im(gamma^2) = 2 xy, so solutions are hyperbolas
# (Lagrangian catenoids) and, at level 0, the two coordinate axes.

# %%
flat2 = antiderivative_coefficients(2, CaseKind.FLAT)
hyperbola = trace_through(flat2, 1 + 1j, controls)
print(hyperbola.classification, hyperbola.level, np.max(np.abs(2 * hyperbola.points.real * hyperbola.points.imag - 2)))

# %% [markdown]
# Sphere, n = 4: F is the imaginary part of a polynomial Q with Q' = 1 - z^2.

# %%
fi = antiderivative_coefficients(4, CaseKind.SPHERE)
print("Q coefficients:", fi.q_coeffs)
curve = trace_through(fi, seed_on_level(fi, 0.5), controls, 0.5)
print(f"{len(curve)} points, drift {curve.drift:.1e}, ends: {curve.termination}")

# %% [markdown]
# Sphere, n = 5: odd n brings in sqrt(1 - gamma^2) and arcsin, so the tracer
# continues the square root along the curve and the first integral is
# evaluated on that branch.

# %%
fi5 = antiderivative_coefficients(5, CaseKind.SPHERE)
curve5 = trace_through(fi5, 0.3 + 0.7j, controls)
values = [first_integral(fi5, g, r) for g, r in zip(curve5.points, curve5.roots)]
print(f"level {curve5.level:.6f}, spread of F along the curve {np.ptp(values):.1e}")

# %% [markdown]
# On the immersed submanifold the holomorphic volume has constant phase: its
# imaginary part vanishes at every point of the curve.

# %%
cfg = random_sphere_config(5, np.random.default_rng(0))
k = len(curve5) // 3
frame = immersion_frame(fi5.quadric, curve5.points[k], curve5.tangents[k], curve5.roots[k], cfg)
print("Omega at one point:", holomorphic_volume(fi5.quadric, frame, curve5.points[k]))
print(verify_special_curve(fi5, curve5, cfg))
