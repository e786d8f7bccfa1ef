"""
Lie and Clifford algebras from entangled bases
==============================================

The amplitude matrices of the Bell states are sigma matrices up to scale,
and those of the nine qutrit beta states are the Gell-Mann matrices up to
scale. Each relation below is checked numerically.
"""

# %%
import numpy as np

from entanglekit import algebra
from entanglekit.linalg import commutator

a = algebra.bell_a_matrices()
for k in range(4):
    print(f"A_{k} =\n{np.round(a[k], 4)}")

# [A_1, A_2] = -sqrt2 A_3
print(np.allclose(commutator(a[1], a[2]), -np.sqrt(2) * a[3]))

# %%
for rep in algebra.verify_all():
    print(f"{rep.relation_id:<11} pass={rep.passed}  pairs={rep.pairs_checked:<3} max residual={rep.max_residual:.1e}")
    for note in rep.notes:
        print("    ", note)

# %%
# The action table can be compared with the 4x4 block matrices written in
# the Bell basis.
block = algebra.tau_in_bell_basis()
table = algebra.tau_action_matrices()
for i in range(4):
    print(f"tau'_{i}: table == block ? {np.allclose(block[i], table[i])}")

# %%
# Determinants and traces of the nine qutrit P matrices.
p = algebra.qutrit_p_matrices()
for k in range(9):
    print(f"P_{k}: det = {np.linalg.det(p[k]).real:+.6f}  trace = {np.trace(p[k]).real:+.6f}")
