"""
Closed form against brute-force grid search
===========================================

The grid oracle evaluates the RMS residual at every grid point. On small
noisy sets alpha and beta are strongly correlated, so the best lattice point
can sit more than one beta step away from the continuous optimum even though
its RMS error is within a hair of it.
"""

import pathloss_fit as plf
from pathloss_fit.synth import GridSpec, grid_fit

spec = plf.GeneratorSpec(plf.AbgModel(2.62, 34.9, 1.9), 8.0, [2, 10, 18, 28, 39.3], [10, 1200], 10, 5001)
samples = plf.generate(spec)

closed = plf.fit_abg(samples)
grid = grid_fit(samples, "abg", GridSpec({"alpha": (1.5, 3.8, 0.01), "beta": (15.0, 55.0, 0.1),
                                          "gamma": (0.8, 3.0, 0.01)}))
m = closed.model
print(f"closed form : alpha {m.alpha:.4f}  beta {m.beta:.3f}  gamma {m.gamma:.4f}  SF {closed.stats.sf_std:.5f}")
print(f"grid argmin : alpha {grid.params[0]:.4f}  beta {grid.params[1]:.3f}  gamma {grid.params[2]:.4f}  "
      f"SF {grid.sf_std:.5f}")

ci = plf.fit_ci(samples)
g = grid_fit(samples, "ci", GridSpec({"n": (1.0, 4.5, 0.01)}))
print(f"CI: closed n {ci.model.ple:.4f}, grid n {g.params[0]:.2f}")
