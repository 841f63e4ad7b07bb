"""Ising versus tricritical Ising exchange matrices as single-qubit gates.

At k=2 the two four-point exchanges generate a finite group (up to phase),
so no word ever gets close to the T gate.  At k=3 the image is dense and the
best approximation keeps improving with word length, though in steps.
"""

import cmath
import math

import numpy as np

from cftbraid.exchange_matrices import braid_closure, format_word, gate_search_profile, r4

np.set_printoptions(precision=4, suppress=True)

T = np.diag([1, cmath.exp(1j * math.pi / 4)])

for k in (2, 3):
    print(f"k = {k}")
    print("  R12 =\n", r4(k, "R12"))
    print("  R13 =\n", r4(k, "R13"))

elems, closed = braid_closure(2, 4)
print(f"\nk=2: braid image modulo phase has {len(elems)} elements (closed: {closed})")

for k in (2, 3):
    print(f"\nbest T-gate approximation, k={k}")
    for L, (word, d) in enumerate(gate_search_profile(k, T, 12)):
        if L % 2 == 0:
            print(f"  length <= {L:2d}: distance {d:.6f}  {format_word(word) or '(empty)'}")
