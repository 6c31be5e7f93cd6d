"""Acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line that is repeated in the pytest
terminal summary. Run alone with ``pytest tests/test_acceptance.py`` or
``python tests/test_acceptance.py``.
"""

import math
import sys
import time

import numpy as np
import pytest

from cpalaser.dof import dof
from cpalaser.errors import ConvergenceError
from cpalaser.optics import pt_diagnostics, s_matrix, scattering, transfer_matrix, transfer_matrix_oracle
from cpalaser.solver import RESIDUAL_TOL, accepted, generate_seeds, pt_special_case, refine_fixed_eta
from cpalaser.table1 import K_TABLE, TABLE1, verify_table1

from helpers import random_pt_slabs, random_slabs

N_RANDOM = 1000


def test_c01_table_exact_column(record):
    t0 = time.perf_counter()
    reports = verify_table1()
    elapsed = time.perf_counter() - t0
    parts = []
    for r in reports:
        worst = max(
            abs(d) / (2e-3 if k.startswith("eta") else 2e-6) for k, d in r.exact_deltas.items()
        ) if r.exact_deltas else math.inf
        parts.append(f"row {r.index} {'ok' if r.exact_pass else 'off'} worst/tol={worst:.2f}")
    ok = all(r.exact_pass for r in reports) and elapsed < 15
    record("C1 reference table, refined column", ok, "; ".join(parts) + f"; {elapsed:.2f}s")
    assert elapsed < 15
    for r in reports:
        assert r.exact_pass, f"row {r.index}: {r.exact_deltas}"


def test_c02_table_approximate_column(record):
    reports = verify_table1(seed_only=True)
    ok = all(r.seed_pass for r in reports)
    record("C2 reference table, approximate column (seeds, 4 s.f.)", ok,
           ", ".join(f"row {r.index} {'ok' if r.seed_pass else 'off'}" for r in reports))
    assert ok


def test_c03_self_duality_at_roots(record, accepted_solutions):
    worst_res, worst_ratio = 0.0, 0.0
    for sol in accepted_solutions:
        worst_res = max(worst_res, sol.residual_ss, sol.residual_cpa)
        a, b = s_matrix(scattering(transfer_matrix(sol.slab, sol.K)))
        worst_ratio = max(worst_ratio, min(abs(a), abs(b)) / max(abs(a), abs(b)))
    ok = bool(accepted_solutions) and worst_res < 1e-10 and worst_ratio < 1e-10
    record("C3 self-duality at accepted roots", ok,
           f"{len(accepted_solutions)} roots, max residual {worst_res:.1e}, max eig ratio {worst_ratio:.1e}")
    assert ok


@pytest.fixture(scope="module")
def random_sample():
    return random_slabs(N_RANDOM, seed=2024)


def test_c04_oracle_equivalence(record, random_sample):
    worst = 0.0
    for s, K in random_sample:
        a = transfer_matrix(s, K).as_array()
        b = transfer_matrix_oracle(s, K).as_array()
        worst = max(worst, float(np.max(np.abs(a - b) / np.abs(b))))
    record("C4 oracle equivalence", worst < 1e-10, f"max entrywise relative error {worst:.1e}")
    assert worst < 1e-10


def test_c05_unit_determinant(record, random_sample):
    worst = max(abs(transfer_matrix(s, K).det - 1) for s, K in random_sample)
    record("C5 unit determinant", worst < 1e-10, f"max |det M - 1| {worst:.1e}")
    assert worst < 1e-10


def test_c06_pt_invariants(record):
    worst_m = worst_c = worst_p = 0.0
    for s, K in random_pt_slabs(N_RANDOM, seed=77):
        rep = pt_diagnostics(s, K)
        assert rep.is_pt
        worst_m = max(worst_m, rep.max_matrix_residual)
        worst_c = max(worst_c, rep.continuity_residual)
        worst_p = max(worst_p, rep.phase_left, rep.phase_right)
    ok = worst_m < 1e-10 and worst_c < 1e-10 and worst_p < 1e-8
    record("C6 PT invariants", ok,
           f"matrix {worst_m:.1e}, continuity {worst_c:.1e}, phase {worst_p:.1e}")
    assert ok


def test_c07_same_real_part(record):
    rng = np.random.default_rng(7)
    ratios, counts = [], {}
    for n0 in (1.5, 2.0, 3.0):
        pt = pt_special_case(n0, round(200 * n0))
        starts = []
        for _ in range(30):
            k = pt.n1.kappa * (1 + rng.uniform(-0.2, 0.2))
            starts.append((k, -k + rng.uniform(-1e-3, 1e-3), pt.K + rng.uniform(-0.3, 0.3)))
        for _ in range(30):
            starts.append((rng.uniform(-8e-3, 8e-3), rng.uniform(-8e-3, 8e-3), rng.uniform(1200, 1300)))
        n_acc = 0
        for k1, k2, K0 in starts:
            try:
                sol = refine_fixed_eta(n0, n0, k1, k2, K0)
            except ConvergenceError:
                continue
            if sol.converged:
                n_acc += 1
                ratios.append(abs(sol.n1.kappa + sol.n2.kappa) / abs(sol.n1.kappa - sol.n2.kappa))
        counts[n0] = n_acc
    worst = max(ratios, default=math.inf)
    ok = all(c > 0 for c in counts.values()) and worst < 1e-6
    record("C7 same real part forces kappa1 = -kappa2", ok,
           f"accepted {counts}, max |k+|/|k-| {worst:.1e}")
    assert ok


def test_c08_conjugation(record, accepted_solutions):
    worst = 0.0
    ok = bool(accepted_solutions)
    pts = [pt_special_case(n0, m) for n0, m in ((1.5, 300), (2.0, 400), (3.0, 600))]
    for sol in accepted_solutions + pts:
        c = sol.conjugate()
        worst = max(worst, c.residual_ss, c.residual_cpa)
        ok &= c.K == sol.K and c.converged and (c.mode == "pt" or accepted(c))
    ok &= worst < RESIDUAL_TOL
    record("C8 conjugate of every accepted root", ok,
           f"{len(accepted_solutions) + len(pts)} roots, max residual {worst:.1e}")
    assert ok


def test_c09_mode_numbers(record, table_searches):
    row1 = table_searches[0].solutions
    seeds = generate_seeds(TABLE1[0].approx[0], TABLE1[0].approx[2], K_TABLE)
    ok = bool(row1) and all((s.m_minus, s.m_plus) == (510, 210) for s in seeds)
    worst = 0.0
    for sol in row1:
        a = sol.K * sol.slab.eta_plus / (4 * math.pi)
        b = sol.K * abs(sol.slab.eta_minus) / (4 * math.pi)
        ok &= (sol.m_minus, sol.m_plus) == (510, 210)
        ok &= abs(a - sol.m_minus) < 0.5 and abs(b - sol.m_plus) < 0.5
        # |eta-|/eta+ against m+/m-, within what the rounding allows
        gap = abs(abs(sol.slab.eta_minus) / sol.slab.eta_plus - sol.m_plus / sol.m_minus)
        bound = 0.5 * (sol.m_minus + sol.m_plus) / (a * sol.m_minus)
        ok &= gap < bound
        worst = max(worst, gap / bound)
    record("C9 mode numbers m- = 510, m+ = 210", ok, f"{len(row1)} row-1 roots, max gap/bound {worst:.2f}")
    assert ok


def test_c10_dof(record):
    ok = dof(2, True) == dof(2, False) == 1
    ok &= all(dof(n, False) - dof(n, True) == n - 2 for n in range(2, 101))
    record("C10 degrees of freedom", ok)
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
