"""
Teleporting through a partially entangled pair
==============================================

Alice sends alpha|0> + beta|1> using a00|00> + a11|11>. Besides her two
measured bits she sends |det A| = |a00 a11|, which lets Bob solve for
|alpha| and |beta| from his branch weights.
"""

# %%
import numpy as np

from entanglekit import teleport
from entanglekit.teleport import InformationQubit, ResourceState

info = InformationQubit.from_alpha(0.6)
res = ResourceState.from_a00(0.9)
t = teleport.run_circuit(info, res)

# The written-out state equals the gate circuit CNOT(1->2) followed by H(1).
print("max difference to gates:", np.abs(t.final_state - teleport.final_state_gates(info, res)).max())

# %%
# M0 M1 = alpha^2 beta^2 (det A)^2 / 4 whatever Alice measured.
for b in teleport.BASES:
    s = teleport.bob_stats(t, b)
    print(f"basis {b}: M0 = {s.m0:.6f}  M1 = {s.m1:.6f}  M0*M1 = {s.product:.3e}")
print("alpha^2 beta^2 det^2 / 4 =", (info.alpha * info.beta * res.det_a) ** 2 / 4)

# %%
# Bob's side of the exchange.
for b in teleport.BASES:
    tr = teleport.teleport(info, res, b)
    print(b, "message", tr.classical_message, "recovered", np.round(tr.recovered, 12),
          f"F = {tr.fidelity_paper:.4f}, conditional F = {tr.fidelity_conditional:.4f}")

# %%
# When a00 = beta the two branch weights coincide and the two orderings of
# the resource explain the data equally well.
tr = teleport.teleport(info, ResourceState(0.8, 0.6), "00")
print(tr.recovery_error, tr.recovery_candidates)

# %%
# Fidelity (a00 alpha + a11 beta)^2 reaches 1 at a00 = alpha and
# 4 (alpha beta)^2 at a00 = beta.
e = teleport.fidelity_extrema(info)
print(f"F at +-alpha = {e.f2:.6f}, F at +-beta = {e.f1:.6f}, grid max = {e.grid_max:.6f}")
