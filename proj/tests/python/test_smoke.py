import math
import os
from pathlib import Path

import pytest

import msmoments as msm

DATA = Path(os.environ.get("MSM_TEST_DATA", Path(__file__).resolve().parent.parent / "data"))


@pytest.fixture(scope="module")
def zeros():
    return msm.load_zeros(DATA / "zeros_100k.txt")


@pytest.fixture(scope="module")
def primes():
    return msm.build_mangoldt(300_000)


def test_gaussian_moments():
    assert [msm.gaussian_moment(n) for n in range(7)] == [1, 0, 1, 0, 3, 0, 15]


def test_psi(primes):
    assert msm.psi(100, primes) == pytest.approx(94.04531122935739, rel=1e-14)
    with pytest.raises(msm.RangeError):
        msm.psi(1e6, primes)


def test_zero_table(zeros):
    assert len(zeros) == 100_000
    assert msm.count_zeros(100, zeros) == 29
    assert msm.zeros_check_passed(zeros)
    with pytest.raises(msm.FormatError):
        msm.load_zeros(DATA / "missing.txt")


def test_fejer_transform():
    eta = msm.fejer()
    assert eta(0.25) == 0.75
    assert eta.hat(0.5) == pytest.approx(4 / math.pi**2, rel=1e-15)
    ok, checks, flags = msm.validate(eta)
    assert ok and checks["parity"]


def test_explicit_formula(zeros, primes):
    r = msm.verify(1e4, 0.1, msm.fejer(), zeros, primes)
    assert abs(r.residual) <= 0.01
    assert r.passed
    assert r.residual == r.prime_side - r.main_term - r.zero_side - r.archimedean


def test_constant_c():
    assembled, collapsed = msm.constant_C()
    assert abs(assembled) < 1e-6 and abs(collapsed) < 1e-6


def test_moments(primes):
    m0 = msm.moment(0, 1e4, 0.2, primes)
    assert m0.value == 1.0
    m2 = msm.moment(2, 1e4, 0.2, primes)
    assert m2.value > 0
    assert m2.prediction_ms == pytest.approx(msm.ms_prediction(2, 0.2))
    with pytest.raises(msm.DomainError):
        msm.moment(2, 1e4, 1.5, primes)


def test_pairing():
    eta = msm.fejer()
    ordinates = [math.sqrt(p) * 10 for p in (2, 3, 5)]
    brute = msm.brute_force_tuple_sum(2, 0.1, eta, ordinates)
    assert brute == pytest.approx(msm.exact_pairing_sum(2, 0.1, eta, ordinates), rel=1e-10)
    assert msm.brute_force_tuple_sum(2, 0.1, eta, [1, 2, 3]) > msm.exact_pairing_sum(2, 0.1, eta, [1, 2, 3])


def test_cli():
    code, out, err = msm.run_cli(["constants"])
    assert code == 0 and "digamma" in out
    code, out, err = msm.run_cli(["sieve", "--limt", "10"])
    assert code == 2 and "--limit" in err
