"""Random sample generators and comparison helpers shared by the tests."""

import numpy as np

from cpalaser.optics import BilayerSlab, ComplexIndex


def random_slabs(n, seed=0, kappa_max=1e-3, K_range=(1.0, 2000.0)):
    """``n`` pairs ``(slab, K)`` with ``1 <= eta < 5`` and ``|kappa| <= kappa_max``."""
    rng = np.random.default_rng(seed)
    eta = rng.uniform(1.0, 5.0, size=(n, 2))
    kap = rng.uniform(-kappa_max, kappa_max, size=(n, 2))
    Ks = rng.uniform(*K_range, size=n)
    return [
        (BilayerSlab(ComplexIndex(e[0], k[0]), ComplexIndex(e[1], k[1])), float(K))
        for e, k, K in zip(eta, kap, Ks)
    ]


def random_pt_slabs(n, seed=0, kappa_max=1e-3, K_range=(1.0, 2000.0)):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        n0 = rng.uniform(1.0, 5.0)
        k = rng.uniform(-kappa_max, kappa_max)
        out.append((BilayerSlab(ComplexIndex(n0, k), ComplexIndex(n0, -k)), float(rng.uniform(*K_range))))
    return out


def rel_err(a, b):
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))
