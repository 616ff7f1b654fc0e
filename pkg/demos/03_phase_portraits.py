# %% [markdown]
# # Phase portraits and their asymptotics
#
# The full picture for the complex sphere: the level-0 set is the segment
# [-1, 1] with 2n - 2 branches running to infinity, n of them leaving each of
# +-1; regular levels are smooth two-ended curves. We draw a few portraits and
# compare them with the marching-squares contours of F.

# %%
import sys
from pathlib import Path

import numpy as np

from slagquad import (
    CaseKind,
    Location,
    Window,
    antiderivative_coefficients,
    asymptote_angles,
    auto_levels,
    contour_extract,
    directed_hausdorff,
    phase_portrait,
)
from slagquad import io as sio

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
window = Window.square(3.0, grid=400)

# %% [markdown]
# Asymptotic directions: k pi/(n-1) at infinity (shifted by pi/(2(n-1)) for
# odd n) and 2 k pi/n + pi at gamma = 1.

# %%
for n in (3, 4, 5):
    inf = np.round(np.array(asymptote_angles(CaseKind.SPHERE, n, Location.INFINITY)) / np.pi, 4)
    plus = np.round(np.array(asymptote_angles(CaseKind.SPHERE, n, Location.PLUS_ONE)) / np.pi, 4)
    print(f"n={n}: infinity {inf} pi, at +1 {plus} pi")

# %% [markdown]
# Portraits, written as SVG next to this script's output directory.

# %%
for case, n in [(CaseKind.SPHERE, 4), (CaseKind.SPHERE, 5), (CaseKind.FLAT, 3)]:
    fi = antiderivative_coefficients(n, case)
    curves = phase_portrait(fi, auto_levels(fi), window)
    kinds = {}
    for c in curves:
        kinds[c.classification.value] = kinds.get(c.classification.value, 0) + 1
    angles = asymptote_angles(case, n, Location.INFINITY)
    path = out / f"portrait_{case.value}_{n}.svg"
    sio.write_text(path, sio.portrait_svg(fi, curves, window, angles))
    print(f"{case.value} n={n}: {kinds} -> {path}")

# %% [markdown]
# The grid oracle: for a single-valued F, contours and traced curves agree to
# within a cell.

# %%
fi = antiderivative_coefficients(4, CaseKind.SPHERE)
traced = [c for c in phase_portrait(fi, [0.5], window)]
contours = contour_extract(fi, 0.5, window)
pts = np.concatenate([c.points for c in traced])
pts = pts[(np.abs(pts.real) <= 3) & (np.abs(pts.imag) <= 3)]
print(f"trace -> contour distance: {directed_hausdorff(pts, contours, spacing=window.cell / 4) / window.cell:.2f} cells")
