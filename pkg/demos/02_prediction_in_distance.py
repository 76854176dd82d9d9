"""
Prediction in distance
======================

Hold the near (d <= 200 m) or far (d >= 900 m) samples out as the prediction
set and fit on a measurement set that recedes by delta_d.
"""

import pathloss_fit as plf

samples = plf.generate_many(plf.preset("aalborg-like"))


def show(table):
    print(f"{'delta_d':>8} {'CI SF':>7} {'ABG SF':>7} {'n':>6} {'alpha':>6} {'beta':>6} {'gamma':>6}  meas/pred")
    for r in table.rows:
        print(f"{r.sweep_key:8.0f} {r.ci_sf_std:7.2f} {r.abg_sf_std:7.2f} {r.ci_n:6.3f} "
              f"{r.abg_alpha:6.3f} {r.abg_beta:6.1f} {r.abg_gamma:6.3f}  {r.measurement_count}/{r.prediction_count}")
    for w in table.warnings:
        print("warning:", w)


print("prediction set close to the TX")
show(plf.run_distance_sweep(samples, "near", range(0, 701, 100)))

print("\nprediction set far from the TX")
show(plf.run_distance_sweep(samples, "far", range(0, 701, 100)))
