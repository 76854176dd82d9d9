"""
Fitting the CI and ABG models
=============================

Generate the bundled Aalborg-like synthetic campaign, fit both models on the
whole set and compare their shadow-fading (SF) standard deviations.
"""

import pathloss_fit as plf

samples = plf.generate_many(plf.preset("aalborg-like"))
print(f"{len(samples)} NLOS samples")

# The CI model has one free parameter; the 1 m free-space loss is fixed.
ci = plf.fit_ci(samples)
print(f"CI : n = {ci.model.ple:.3f}, SF std = {ci.stats.sf_std:.2f} dB")

# ABG floats its intercept and frequency slope.
abg = plf.fit_abg(samples)
m = abg.model
print(f"ABG: alpha = {m.alpha:.3f}, beta = {m.beta:.2f} dB, gamma = {m.gamma:.3f}, "
      f"SF std = {abg.stats.sf_std:.2f} dB")

# CI is a member of the ABG family, so ABG can never do worse on its own data.
print("CI model written as ABG:", plf.ci_as_abg(ci.model))
assert abg.stats.sf_std <= ci.stats.sf_std + 1e-9

# Forward evaluation at a few points.
for f_ghz, d_m in [(2.0, 100.0), (28.0, 100.0), (28.0, 500.0)]:
    print(f"{f_ghz:5.1f} GHz {d_m:6.0f} m   CI {ci.model(f_ghz, d_m):6.1f} dB   ABG {m(f_ghz, d_m):6.1f} dB")
