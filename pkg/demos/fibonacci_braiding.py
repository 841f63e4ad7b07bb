"""Fusion-tree braiding for Fibonacci anyons against the k=3 block matrices."""

import numpy as np

from cftbraid.anyon_model import (
    braid_generator_rep,
    compare_to_cft,
    fibonacci_theory,
    hexagon_residual,
    pentagon_residual,
    tricritical_ising_theory,
)
from cftbraid.exchange_matrices import r5

np.set_printoptions(precision=4, suppress=True)

fib = fibonacci_theory(conjugate=True)
print("pentagon / hexagon residuals:", pentagon_residual(fib), hexagon_residual(fib))

s2 = braid_generator_rep(fib, 4, "tau", "tau", 2)
print("\nsigma_2 on four tau anyons with total charge tau:\n", s2)
print("\nfive-point R23 at k=3:\n", r5(3, "R23"))

print("\nphase-quotient distances between anyon and block matrices:")
for k in (2, 3):
    for arity in (4, 5, 6):
        for w in ("R12", "R23"):
            print(f"  k={k} arity={arity} {w}: {compare_to_cft(k, arity, w):.1e}")

full = tricritical_ising_theory()
print("\nwith the full Ising x conj-Fibonacci product:", compare_to_cft(3, 6, "R23", theory=full))
