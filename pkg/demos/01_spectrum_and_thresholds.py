#!/usr/bin/env python3
"""Eigenvalue flow of the memory-less dimer.

Sweeps the gain-loss strength at fixed coupling and tracks the closed-form
eigenvalue quartet through both exceptional points: real eigenvalues
collide at gamma_PT, complex-conjugate pairs appear, and beyond gamma_c
everything is purely imaginary.  Writes spectrum_flow.csv and, when
matplotlib is importable, spectrum_flow.png.
"""

import numpy as np

from memdimer import eigenvalues_closed_form, gamma_c, gamma_pt, mu_pt

MU = 1.0

g_pt = gamma_pt(MU)
g_c = gamma_c(MU)
print(f"coupling mu = {MU}")
print(f"  first threshold   gamma_PT = {g_pt:.6f}  (0.732 at mu=1)")
print(f"  second threshold  gamma_c  = {g_c:.6f}  ({g_c / g_pt:.3f} gamma_PT)")
print(f"  inverse relation  mu_PT(gamma_PT) = {mu_pt(g_pt):.6f}")

gammas = np.linspace(0.0, 5.1 * g_pt, 600)
rows = []
for g in gammas:
    eigs = sorted(eigenvalues_closed_form(MU, g).nonzero,
                  key=lambda e: (-e.real, -e.imag))
    rows.append([g / g_pt] + [e.real for e in eigs] + [e.imag for e in eigs])
table = np.array(rows)

np.savetxt("spectrum_flow.csv", table, delimiter=",",
           header="gamma_rel,re1,re2,re3,re4,im1,im2,im3,im4", comments="")
print("wrote spectrum_flow.csv")

# phase classification along the flow
for g_rel in (0.5, 1.0, 2.0, 3.732, 4.5):
    s = eigenvalues_closed_form(MU, g_rel * g_pt)
    print(f"  gamma = {g_rel:5.3f} gamma_PT -> {s.pt_phase.value}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available; skipping the figure")
else:
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
    for k in range(1, 5):
        ax1.plot(table[:, 0], table[:, k], "C0.", ms=1)
        ax2.plot(table[:, 0], table[:, 4 + k], "C3.", ms=1)
    for ax in (ax1, ax2):
        ax.axvline(1.0, color="k", ls=":", lw=1)
        ax.axvline(g_c / g_pt, color="k", ls=":", lw=1)
    ax1.set_ylabel("Re eigenvalue / omega0")
    ax2.set_ylabel("Im eigenvalue / omega0")
    ax2.set_xlabel("gamma / gamma_PT")
    fig.tight_layout()
    fig.savefig("spectrum_flow.png", dpi=150)
    print("wrote spectrum_flow.png")
