"""2D box geometry through separable per-axis spectra.

For a product momentum region and a product spatial region the localized
Fermi projection factorizes, so its spectrum is the outer product of 1D
spectra and entropies of genuinely 2D regions are reachable far beyond
direct 2D discretization budgets.  The fitted L ln L coefficient is
compared against I(h_1) * J = (1/12) * (8/pi) = 2/(3 pi), and the
factorization itself is validated against a small direct 2D Nystrom
matrix.
"""

import math

import numpy as np

from fermient import Box, PipelineConfig, sweep
from fermient.asymptotics import fit_scaling
from fermient.spectra import entropy_pipeline

gamma = Box(((-1.0, 1.0), (-1.0, 1.0)))
omega = Box(((0.0, 1.0), (0.0, 1.0)))

# Small-L consistency: same operator, two constructions.
direct = entropy_pipeline(gamma, omega, 3.0, 1.0,
                          PipelineConfig(mode="continuum"))
tensor = entropy_pipeline(gamma, omega, 3.0, 1.0,
                          PipelineConfig(mode="tensor_box"))
print(f"L = 3 cross-check: direct n = {direct.n}, S = {direct.S:.12f}")
print(f"                   tensor n = {tensor.n}, S = {tensor.S:.12f}")
print(f"                   |difference| = {abs(direct.S - tensor.S):.2e}\n")

result = sweep(gamma, omega, 1.0, np.geomspace(20.0, 200.0, 8),
               PipelineConfig(mode="tensor_box"))
print(f"{'L':>8} {'n':>8} {'S_1':>12} {'S_1 / (L ln L)':>15}")
for point in result.results:
    print(f"{point.L:8.2f} {point.n:8d} {point.S:12.4f} "
          f"{point.S / (point.L * math.log(point.L)):15.6f}")

fit = fit_scaling(result)
theory = 2.0 / (3.0 * math.pi)
print(f"\nfitted L ln L coefficient: {fit.log_coefficient:.6f}")
print(f"theory 2/(3 pi)          : {theory:.6f}")
print(f"relative deviation       : {fit.log_coefficient / theory - 1.0:+.3%}"
      "  (finite-L bias shrinks logarithmically)")
