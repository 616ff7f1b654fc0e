# %% [markdown]
# # The Stenzel potential on the 2-dimensional complex sphere
#
# For n = 2 the potential u(t) = sqrt(1 + t) gives a Kähler form whose volume
# form is a constant multiple of Omega ^ conj(Omega). We evaluate the ratio
# at random points, and contrast it with the restricted flat metric u(t) = t.

# %%
import cmath

import numpy as np

from slagquad import AmbientPoint, RadialPotential, calabi_yau_ratio, verify_calabi_yau
from slagquad.forms import standard_calabi_yau_ratio

rng = np.random.default_rng(0)


def sphere_point():
    z1, z2 = rng.normal(size=2) + 1j * rng.normal(size=2)
    return AmbientPoint(np.array([cmath.sqrt(1 - z1 * z1 - z2 * z2), z1, z2]))


# %% [markdown]
# The convention is fixed on C^n, where the ratio is 1.

# %%
print("C^2 reference ratio:", standard_calabi_yau_ratio(2))

# %%
points = [sphere_point() for _ in range(8)]
for name in ("stenzel", "flat"):
    pot = RadialPotential.by_name(name)
    ratios = [calabi_yau_ratio(p, pot) for p in points]
    print(f"{name:8s}", np.round(ratios, 6))

# %%
print(verify_calabi_yau(samples=100, seed=1))
print(verify_calabi_yau(samples=100, seed=1, pot=RadialPotential.flat()).max_residual)
