"""
Prediction in frequency
=======================

Leave one band out at a time. 10.25 GHz groups with 10 GHz and 28.5 GHz with
28 GHz when both environments are pooled.
"""

import pathloss_fit as plf

samples = plf.generate_many(plf.preset("aalborg-like") + plf.preset("madrid-like"))
print("bands:", sorted({plf.group_band(s.frequency_ghz) for s in samples}, key=float))

table = plf.run_frequency_loo(samples)
print(f"{'band':>6} {'CI pred':>8} {'ABG pred':>8} {'CI meas':>8} {'ABG meas':>8} {'n':>6} {'alpha':>6} {'gamma':>6}")
for r in table.rows:
    print(f"{r.sweep_key:>6} {r.ci_sf_std:8.2f} {r.abg_sf_std:8.2f} {r.ci_meas_sf_std:8.2f} "
          f"{r.abg_meas_sf_std:8.2f} {r.ci_n:6.3f} {r.abg_alpha:6.3f} {r.abg_gamma:6.3f}")
