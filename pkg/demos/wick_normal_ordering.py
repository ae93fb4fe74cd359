"""Rewriting a driven damped qubit between orderings.

A time-ordered evolution equation carries coefficients E_ij of
[a+]^i [a-]^j on the left of the solution; commuting the annihilators
through resums into normal-ordered coefficients L_ij.  This script
builds the generator for a driven qubit coupled through sigma-, runs
the conversion both ways and reads off the scattering triple.
"""

import numpy as np

from gaussbath import (
    HPParameters,
    ItoCoefficients,
    NoiseParams,
    TIME_ORDERED,
    hp_extract,
    hp_residuals,
    normal_to_time,
    time_to_normal,
    unitarity_defect,
)

np.set_printoptions(precision=4, suppress=True, linewidth=100)

sm = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)   # |g><e|
sp = sm.conj().T
sx = sm + sp

# Rabi drive at detuning 0.3, plus a weak gauge term to make the
# resummation nontrivial.
f = 0.3 * np.diag([1.0, -1.0]).astype(complex) + 0.5 * sx
e11 = 0.2 * np.diag([1.0, -1.0]).astype(complex)

e = ItoCoefficients(TIME_ORDERED, f, sp, sm, e11)
params = NoiseParams(gamma=1.0, sigma=0.25)

print("time-ordered input (Hermitian generator: %s)" % e.hermitian_generator())
print("E00 =\n", e.c00)
print("E11 =\n", e.c11)

l = time_to_normal(e, params)
print("\nnormal-ordered output")
print("L00 =\n", l.c00)
print("L01 =\n", l.c01)
print("L10 =\n", l.c10)
print("L11 =\n", l.c11)

defect = unitarity_defect(l, params.gamma)
print("\nunitarity defect of the output: %.3e" % defect)

back = normal_to_time(l, params)
round_trip = max(
    np.abs(back.c00 - e.c00).max(),
    np.abs(back.c01 - e.c01).max(),
    np.abs(back.c10 - e.c10).max(),
    np.abs(back.c11 - e.c11).max(),
)
print("round-trip reconstruction error: %.3e" % round_trip)

# The unitary table is exactly the Hudson-Parthasarathy form: W from
# the gauge block, the coupling from the creator block, H from the
# anti-Hermitian part of the drift.
p: HPParameters = hp_extract(l, params.gamma)
print("\nscattering matrix W =\n", p.W)
print("coupling L =\n", p.L)
print("Hamiltonian H =\n", p.H)
r1, r2 = hp_residuals(l, p, params.gamma)
print("reconstruction residuals: |L01 + L+W| = %.2e, |L00 + g/2 L+L + iH| = %.2e" % (r1, r2))
