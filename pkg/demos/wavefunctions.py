"""Quasihole wavefunctions: Pfaffian identity, factorization and regularity."""

import numpy as np

from cftbraid.wavefunctions import (
    ParticleConfig,
    factorization_residual,
    mixed_block_braiding_check,
    psi_correlator,
    psi_magnetic_sum,
    random_config,
    wavefunction_22,
    wavefunction_42,
)

rng = np.random.default_rng(1)
for M in (1, 2, 3):
    z = list(rng.normal(size=2 * M) + 1j * rng.normal(size=2 * M))
    print(f"M={M}: magnetic sum {psi_magnetic_sum(z):.6f}, 2^M Pf {psi_correlator(z):.6f}")

cfg = random_config(3, 1, 1, lam=2, seed=3)
print("\nJ * F - 2 Psi, relative:", factorization_residual(cfg))

print("\n|Psi| as z2 -> z1 (k=3):")
for N in (1, 2):
    for lam in (1, 2):
        base = random_config(3, N, 1, lam, seed=0)
        row = []
        for d in (1e-1, 1e-3, 1e-6):
            c = ParticleConfig(base.eta, (base.z[0], base.z[0] + d), lam, 3)
            row.append(abs(wavefunction_22(c)) if N == 1 else abs(wavefunction_42(c, 1)))
        print(f"  N={N} lam={lam}: " + "  ".join(f"{v:.3e}" for v in row))

print("\nmixed blocks under eta1 <-> eta3 vs R13:", [f"{mixed_block_braiding_check(k):.1e}" for k in (2, 3, 4)])
