"""
Entanglement of two qubits from one determinant
================================================

Write a two-qubit state as a 2x2 matrix of amplitudes. Its determinant
decides whether the state factorises, and its modulus fixes both Schmidt
weights and the entanglement entropy.
"""

# %%
import math

import numpy as np

from entanglekit import linalg, qubit

# cos t|00> + sin t|11> has det A = sin(2t) / 2
for t in (0.0, math.pi / 8, math.pi / 6, math.pi / 4):
    r = qubit.analyze([math.cos(t), 0, 0, math.sin(t)])
    print(f"t = {t:.4f}  det A = {r.det_a.real:.6f}  {r.classification.value:<20} S = {r.entropy_nats:.6f}")

# %%
# The closed-form weights agree with diagonalising A A^dagger for complex
# states too.
rng = np.random.default_rng(0)
v = rng.normal(size=4) + 1j * rng.normal(size=4)
r = qubit.analyze(v / np.linalg.norm(v))
print("closed form:", r.schmidt_eigenvalues)
print("oracle:     ", r.oracle_eigenvalues)
print("difference: ", r.closed_form_discrepancy)

# %%
# A product state gives det A = 0 and Schmidt rank 1.
u, w = np.array([0.6, 0.8j]), np.array([1, 1]) / math.sqrt(2)
r = qubit.analyze(np.kron(u, w))
print(f"|det A| = {r.abs_det_a:.2e}, rank = {r.schmidt_rank}, {r.classification.value}")

# %%
# Same test in the Bell basis. C is the amplitude matrix rewritten in Bell
# coordinates, so det C = det A. The Schmidt weights quoted with the
# radicand 1 - |det C|^2 differ from the exact spectrum of C C^dagger.
for b in ([1, 0, 0, 0], [math.sqrt(3) / 2, 0.5, 0, 0], [1 / math.sqrt(2), 1 / math.sqrt(2), 0, 0]):
    c = qubit.bell_det_criterion(b)
    print(f"b = {np.round(b, 4)}  det C = {c.det_c.real:+.4f}  quoted = {np.round(c.paper_eigen, 4)}  "
          f"exact = {np.round(c.oracle_eigen, 4)}")

# %%
# Schmidt vectors rebuild the state.
s = linalg.schmidt_from_amplitude_matrix(qubit.amplitude_matrix(qubit.bell_state(2)))
print("weights", s.eigenvalues, "rebuilt", np.round(s.reconstruct(), 4))
