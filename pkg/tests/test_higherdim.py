import math

import pytest

from frlab.errors import DomainError
from frlab.higherdim import (BoundReport, bound_bck, bound_new, bound_table,
                             bound_upper, lambda_d, lambda_d_direct,
                             linear_growth_report, normalized_kernel,
                             stationary_point_identity_residual, u_d)

REFERENCE_TABLE = {2: 0.132, 3: 0.086, 4: 0.058, 5: 0.041, 6: 0.029,
                   7: 0.021, 8: 0.015, 9: 0.011}


def test_lambda_matches_reference_values():
    for d, want in REFERENCE_TABLE.items():
        assert lambda_d(d) == pytest.approx(want, abs=5e-3)


def test_lambda_below_one_half():
    for d in range(2, 61):
        assert lambda_d(d) < 0.5


def test_lambda_decreasing():
    values = [lambda_d(d) for d in range(2, 61)]
    assert all(a > b for a, b in zip(values[:-1], values[1:]))


def test_routes_agree():
    for d in (2, 3, 7, 12, 25, 60):
        assert abs(lambda_d(d) - lambda_d_direct(d)) <= 1e-8


def test_full_dimension_range():
    # both routes stay valid up to the documented cap
    assert abs(lambda_d(120) - lambda_d_direct(120)) <= 1e-8
    assert 0.0 < lambda_d(120) < lambda_d(119) < 0.5


def test_kernel_value_at_stationary_point_is_minus_lambda():
    d = 5
    lam = lambda_d(d)
    # scan confirms no kernel value anywhere below -lambda
    import numpy as np
    ts = np.linspace(0.05, 80.0, 20000)
    assert float(np.min(normalized_kernel(d, ts))) >= -lam - 1e-9


def test_stationary_point_identity():
    for d in (2, 5, 9, 40):
        assert stationary_point_identity_residual(d) < 1e-10


def test_bound_formulas():
    assert bound_bck(2) == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-12)
    assert bound_upper(2) == pytest.approx(4.0 / (2.0 * math.pi), rel=1e-12)
    # arithmetic from the reference value lambda_2 = 0.132
    assert bound_new(2, lam=0.132) == pytest.approx(1.0 / (math.pi * 1.132), rel=1e-12)
    assert bound_new(2) == pytest.approx(0.2813, abs=5e-4)


def test_new_bound_beats_old():
    for d in range(2, 61):
        assert bound_new(d) > bound_bck(d)


def test_envelope():
    assert u_d(10) <= 0.494
    values = [u_d(d) for d in range(10, 61)]
    assert all(a > b for a, b in zip(values[:-1], values[1:]))
    for d in range(10, 61):
        assert lambda_d(d) <= u_d(d)


def test_linear_growth_sandwich():
    rows = linear_growth_report(60)
    assert all(row["sandwich_ok"] for row in rows)
    first = rows[0]
    assert first["linear_floor"] == pytest.approx(2.0 / (2.0 * math.pi * math.e), rel=1e-12)
    # Stirling plateau: bound_new(d)/d settles within 5% over d in 40..60
    ratios = [row["bound_new"] / row["d"] for row in rows if row["d"] >= 40]
    assert max(ratios) / min(ratios) < 1.05


def test_bound_table_and_report_invariants():
    rows = bound_table(2, 9)
    assert [r.d for r in rows] == list(range(2, 10))
    for r in rows:
        assert isinstance(r, BoundReport)
        assert 0.0 < r.lambda_d < 0.5
        assert r.bound_bck < r.bound_new <= r.bound_upper


def test_bound_table_threaded_matches_serial(monkeypatch):
    monkeypatch.setenv("FRL_THREADS", "4")
    threaded = bound_table(2, 6)
    monkeypatch.delenv("FRL_THREADS")
    serial = bound_table(2, 6)
    assert threaded == serial


def test_domain_errors():
    with pytest.raises(DomainError):
        lambda_d(1)
    with pytest.raises(DomainError):
        lambda_d(121)
    with pytest.raises(DomainError):
        bound_table(5, 3)
