"""Acceptance gate: ten exact-arithmetic criteria, one pass line each.

Every check is exact equality; the timed criteria assert their wall-clock
budgets (5 s, 60 s, 120 s) on top of correctness.
"""

from __future__ import annotations

import itertools
import time

from hermforms.algebras import TensorElement, build_algebra
from hermforms.baserings import BaseRing, Ordering
from hermforms.forms import base_diag_form, diag_form, negate
from hermforms.generators import InstanceGen, fixed_goldman_algebras
from hermforms.pairing import psd_sign, star
from hermforms.scalars import rat
from hermforms.signatures import is_psd, signature
from hermforms.suites import brute_isotropic, run_suite
from hermforms.witt import is_isotropic, plg_minimal_n

QQ = BaseRing.rationals()
P0 = Ordering(0, 1)


def _ok(line: str) -> None:
    print(f"{line}: pass")


def test_ac01_goldman_identities_on_calibration_set():
    start = time.perf_counter()
    gen = InstanceGen(1001)
    for A in fixed_goldman_algebras():
        g = A.goldman_element()
        one_pair = TensorElement.from_pair(A, A.one(), A.one())
        assert g * g == one_pair
        assert g.sigma_sigma() == g
        for _ in range(50):
            a, b = gen.raw_element(A), gen.raw_element(A)
            assert g * TensorElement.from_pair(A, a, b) == \
                TensorElement.from_pair(A, b, a) * g
            assert g.sandwich(a) == A.scalar_elem(A.reduced_trace(a))
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"goldman suite took {elapsed:.1f} s"
    _ok("AC1 goldman identities on 7 algebras, 50 pairs each")


def test_ac02_signature_calibration():
    expected = [1, 2, 3, 2, 0, 4, 2]
    algebras = fixed_goldman_algebras()
    nil_flags = [False, False, False, False, True, False, False]
    for A, want, nil in zip(algebras, expected, nil_flags):
        h = diag_form(A, 1, [A.one()])
        assert signature(h, P0) == want
        assert (P0 in A.nil_orderings()) == nil
    _ok("AC2 signature of the unit form equals the degree (0 at nil)")


def test_ac03_signature_multiplicativity():
    report = run_suite("signature-mult", seed=2024, iters=200)
    assert report.passed, report.failures
    _ok("AC3 sign(q x h) = sign(q) sign(h) on 200 pairs at all orderings")


def test_ac04_rank_one_pairing_byte_exact():
    report = run_suite("pairing-rank1", seed=31, iters=100)
    assert report.passed, report.failures
    _ok("AC4 star on rank-1 forms reproduces phi byte-for-byte, 100 pairs")


def test_ac05_pairing_associativity():
    start = time.perf_counter()
    report = run_suite("pairing-assoc", seed=55, iters=100)
    elapsed = time.perf_counter() - start
    assert report.passed, report.failures
    assert elapsed < 60.0, f"associativity took {elapsed:.1f} s"
    _ok("AC5 (h1*h2) x h3 Witt-equal to (h3*h2) x h1 on 100 triples")


def test_ac06_psd_sign_law():
    gen = InstanceGen(66)
    nonnil = [A for A in fixed_goldman_algebras()
              if P0 not in A.nil_orderings()]
    assert len(nonnil) == 6
    for A in nonnil:
        delta = psd_sign(A, P0)
        for _ in range(50):
            b = gen.maximal_element(A, P0)
            c = gen.maximal_element(A, P0)
            phi = star(diag_form(A, 1, [b]), diag_form(A, 1, [c])).form
            scaled = phi if delta == 1 else negate(phi)
            assert is_psd(scaled, P0)
    _ok("AC6 one delta per (A, P) makes all 50 scaled pairings PSD")


def test_ac07_sylvester_isometry_and_counts():
    report = run_suite("sylvester", seed=70, iters=100)
    assert report.passed, report.failures
    counts = run_suite("sylvester-counts", seed=71, iters=100)
    assert counts.passed, counts.failures
    _ok("AC7 decompositions Witt-verified; r-s and r+s identities on 100 cases")


def test_ac08_kill_forms():
    nil = run_suite("nil-kill", seed=80, iters=50)
    assert nil.passed, nil.failures
    pfister = run_suite("pfister-kill", seed=81, iters=50)
    assert pfister.passed, pfister.failures
    _ok("AC8 nil_kill PSD/dimension/hyperbolicity; pfister_kill on 50 instances")


def test_ac09_local_global_principle():
    start = time.perf_counter()
    report = run_suite("plg", seed=90, iters=100)
    assert report.passed, report.failures

    q = base_diag_form(QQ, [rat(1), rat(-2), rat(-3), rat(6)])
    assert plg_minimal_n(q) == 1

    gauss = build_algebra({"base": {"kind": "rationals"},
                           "center": {"kind": "quadratic", "d": -1}})
    h = diag_form(gauss, 1, [gauss.one(), gauss.scalar_elem(rat(-3))])
    assert plg_minimal_n(h) == 1

    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"plg checks took {elapsed:.1f} s"
    _ok("AC9 torsion killed by 2^n, n <= 4; oracle values 1 and 1")


def test_ac10_witt_oracle_cross_checks():
    pool = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6]
    checked = 0
    for n in range(1, 5):
        for entries in itertools.combinations_with_replacement(pool, n):
            q = base_diag_form(QQ, [rat(e) for e in entries])
            assert is_isotropic(q) == brute_isotropic(list(entries)), entries
            checked += 1
    assert checked == 1000

    transfer = run_suite("trace-transfer-equiv", seed=100, iters=100)
    assert transfer.passed, transfer.failures
    _ok("AC10 isotropy matches brute search on 1000 forms; 100 transfers agree")
