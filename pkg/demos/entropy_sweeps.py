"""
Entropy sweeps
==============

CSV data for entropy against |det A|^2 (qubits) and against (Tr P, (det P)^2)
(qutrits). Same data as the ``entropy-sweep-*`` commands.
"""

# %%
import io
import math
from contextlib import redirect_stdout

from entanglekit import qubit, qutrit
from entanglekit.cli import main

for d2 in (0.0, 0.05, 0.125, 0.2, 0.25):
    print(f"|det A|^2 = {d2:<6} S = {qubit.qubit_entropy(math.sqrt(d2)):.6f}")

# %%
buf = io.StringIO()
with redirect_stdout(buf):
    main(["entropy-sweep-qubit", "--points", "6"])
print(buf.getvalue())

# %%
# Most of the qutrit grid has no real non-negative closed-form roots; those
# rows carry an empty entropy and a status.
rows = qutrit.entropy_grid(points=20)
counts = {}
for r in rows:
    counts[r.status] = counts.get(r.status, 0) + 1
print(counts)
print(qutrit.grid_to_csv([r for r in rows if r.marker]))
