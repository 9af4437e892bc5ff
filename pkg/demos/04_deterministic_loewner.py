#!/usr/bin/env python3
"""Deterministic limits of the Loewner flow.

With the driving noise switched off the coefficient flow reproduces the
expansion of sqrt(z^2 + 4t) and the pointwise trace grows the vertical
slit [0, 2i sqrt(t)].
"""

import numpy as np

from superloewner.evolution import loewner_step
from superloewner.harness import RunConfig, trace
from superloewner.scalars import COMPLEX
from superloewner.series import AutSeries

print("Coefficient flow: d rho(z) = (2/rho) dt with dB0 = 0")
rho = AutSeries.identity(4, COMPLEX)
dt, nsteps = 1e-5, 10000
for _ in range(nsteps):
    rho = loewner_step(rho, dt, 0.0)
t = dt * nsteps
print(f"  after t = {t}:")
print(f"    a_-1 = {complex(rho.coeffs[1]).real:.6f}   (exact 2t = {2*t})")
print(f"    a_-3 = {complex(rho.coeffs[3]).real:.6f}  (exact -2t^2 = {-2*t*t})")

print("\nPointwise trace on an upper-half-plane grid:")
cfg = RunConfig(k=1.0, kappa=0.0, tau=0.0, dt=1e-4, t_max=0.16, seed=1,
                trace_xmax=1.0, trace_ymax=1.2, trace_nx=81, trace_ny=96)
res = trace(cfg, record_every=400)
for tt, tip, sw in zip(res.times, res.tips, res.swallowed):
    if tt > 0:
        print(f"  t={tt:.3f}: tip ~ {tip:.3f}, slit height 2 sqrt(t) = "
              f"{2*np.sqrt(tt):.3f}, swallowed grid points = {sw}")

print("\nA noisy trace (kappa = 2) for comparison:")
cfg2 = RunConfig(k=1.0, kappa=2.0, tau=0.8, dt=1e-4, t_max=0.16, seed=8,
                 trace_xmax=1.5, trace_ymax=1.2, trace_nx=81, trace_ny=64)
res2 = trace(cfg2, record_every=800)
for tt, tip in zip(res2.times, res2.tips):
    if tt > 0:
        print(f"  t={tt:.3f}: tip ~ {tip:.3f}")
