import math

import pytest

import sunit


def test_primes_and_factorization():
    assert sunit.primes_in_range(90, 100) == [97]
    assert sunit.factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert sunit.is_prime(2**61 - 1)
    assert sunit.mod_inverse(3, 7) == 5
    big = 2**89 - 1
    assert sunit.factorize(2**40 * 3) == [(2, 40), (3, 1)]
    assert sunit.verify_sunit_solution([big, big + 1], "thm1", [2]) is False


def test_smooth_and_oracle():
    assert sunit.squarefree_smooth([2, 3, 5], 2, 30) == [2, 3, 5, 6, 10, 15, 30]
    assert sunit.brute_sunit_pairs([2, 3], 100) == [[1, 2], [2, 3], [3, 4], [8, 9]]


def test_exponents():
    assert sunit.lambda0() == pytest.approx(0.53551, abs=5e-6)
    assert sunit.lambda1() == pytest.approx(0.55496, abs=5e-6)
    assert sunit.feasible("thm1", "unconditional", 1 / 6)
    e = sunit.regime_exponents("thm1", "unconditional", 1 / 6)
    assert e["z"] == pytest.approx(1 / 3)
    with pytest.raises(sunit.ConstraintViolation):
        sunit.regime_exponents("thm1", "unconditional", 0.3)


def test_characters_and_kloosterman():
    for tau, cond in sunit.gauss_sums(15):
        assert abs(tau) ** 2 == pytest.approx(cond)
    assert sunit.kloosterman_sum(1, 1, 5).real == pytest.approx(0.3819660112501049)


def test_siegel():
    z = sunit.siegel_small_solution([3, 5, 7], 7)
    assert z == [1, -2, 1]
    assert sum(a * b for a, b in zip([3, 5, 7], z)) == 0


def test_run_prop1_and_reverify_csv():
    code, report, csv = sunit.run("prop1", {"x": "2000", "primes_hi": "29"}, threads=2)
    assert code == 0
    harvest = report["payload"]["harvest"]
    primes = harvest["S"]
    rows = csv.strip().splitlines()[1:]
    assert len(rows) == len(harvest["solutions"]) > 0
    for row in rows:
        a, b, c = (int(v) for v in row.split(",")[:3])
        assert a + b + c == 0
        assert math.gcd(math.gcd(a, b), c) == 1
        assert sunit.verify_sunit_solution([a, b, c], "prop1", primes)


def test_run_exit_codes():
    assert sunit.run("thm1", {"X": "1000000", "alpha": "0.3", "primes_hi": "113"})[0] == 3
    code, report, _ = sunit.run("prop1", {"bogus": "1"})
    assert code == 1
    assert report["error"]["key"] == "bogus"
