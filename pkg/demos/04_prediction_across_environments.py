"""
Prediction across environments
==============================

Fit on one environment, score each (band, TX height) group of the other.
The output is written as a plot-ready CSV table.
"""

import pathloss_fit as plf
from pathloss_fit.datafiles import table_to_csv

samples = plf.generate_many(plf.preset("aalborg-like") + plf.preset("madrid-like"))

for meas, pred in [("madrid", "aalborg"), ("aalborg", "madrid")]:
    t = plf.run_environment_cross(samples, meas, pred)
    print(f"measurement set {meas}: CI {t.parameters['ci_meas_sf_std']:.2f} dB, "
          f"ABG {t.parameters['abg_meas_sf_std']:.2f} dB")
    for r in t.rows:
        better = "CI" if r.ci_sf_std < r.abg_sf_std else "ABG"
        print(f"  {r.sweep_key:24s} CI {r.ci_sf_std:6.2f}  ABG {r.abg_sf_std:6.2f}  ({better})")

print()
print(table_to_csv(t).splitlines()[-1])
