import json
import math
import subprocess
import sys

import pytest
import sympy

from surfsplit.driver import (FitResult, RationalGenus2, SurveyRow,
                              fit_counting, good_primes, pisplit, run_survey)
from surfsplit.gf import make_field
from surfsplit.weilquartic import quartic_from_counts

T = sympy.Symbol("T")


def _counts_mod_p(cv, p, k):
    """#C(F_{p^k}) by brute evaluation, independent of the library's kernels."""
    F = make_field(p, k)
    f = [c % p for c in cv.coeffs]
    n = 0
    for x in F.elements():
        v = F.zero
        for c in reversed(f):
            v = v * x + F.element(c)
        if v == F.zero:
            n += 1
        elif v.is_square():
            n += 2
    return n + 1  # one point at infinity on a quintic model


def _splits_over_z(p, a1, a2):
    """True iff the quartic factors as (T^2 - sT + p)(T^2 - (a1-s)T + p)."""
    quart = sympy.Poly(T**4 - a1 * T**3 + a2 * T**2 - p * a1 * T + p * p, T)
    lim = math.isqrt(4 * p)
    for s in range(-lim, lim + 1):
        quo, rem = divmod(quart, sympy.Poly(T * T - s * T + p, T))
        if rem.is_zero and quo == sympy.Poly(T * T - (a1 - s) * T + p, T):
            return True
    return False


def test_curve_parsing():
    a = RationalGenus2.from_string("x^5 + x + 6")
    b = RationalGenus2.from_coeffs([6, 1, 0, 0, 0, 1])
    assert a == b and a.degree == 5 and a.disc == 4050256
    assert str(a) == "x^5 + x + 6"
    with pytest.raises(ValueError):
        RationalGenus2.from_string("x^4 + 1")
    with pytest.raises(ValueError):
        RationalGenus2.from_coeffs([0, 0, 1, 0, 2, 0, 1])  # (x^3+x)^2
    with pytest.raises(ValueError):
        RationalGenus2.from_string("x^5 + x/2")


def test_good_primes():
    cv = RationalGenus2.from_string("x^5 + x + 6")
    assert list(good_primes(cv, 2)) == []
    ps = list(good_primes(cv, 100))
    assert 2 not in ps and 3 not in ps
    for p in ps:
        assert cv.disc % p != 0 and sympy.isprime(p) and p >= 5
    # 7 divides disc(x^5 + x + 6) = 4050256 and must be excluded
    assert 7 not in ps and 11 in ps


def test_pisplit_against_exhaustive_counts():
    cv = RationalGenus2.from_string("x^5 + x + 6")
    rows, split_primes, undet = pisplit(cv, 100, grid=10, seed=1)
    assert undet == []
    expected = []
    for p in good_primes(cv, 100):
        n1 = _counts_mod_p(cv, p, 1)
        n2 = _counts_mod_p(cv, p, 2)
        wq = quartic_from_counts(p, n1, n2)
        if _splits_over_z(p, wq.a1, wq.a2):
            expected.append(p)
    assert split_primes == expected
    last = rows[-1]
    assert last.key == 100
    assert last.values["pi_split"] == len(expected)
    assert last.values["pi_good"] == len(list(good_primes(cv, 100)))
    counts = [r.values["pi_split"] for r in rows]
    assert counts == sorted(counts)


def test_pisplit_rejects_degree_six_and_huge_z():
    six = RationalGenus2.from_string("x^6 + x + 3")
    with pytest.raises(ValueError):
        pisplit(six, 100)
    five = RationalGenus2.from_string("x^5 + x + 6")
    with pytest.raises(ValueError):
        pisplit(five, 10**7 + 1)


def _synthetic_rows(c, b):
    return [SurveyRow(key=z, values={"pi_split": c * math.sqrt(z) / math.log(z) ** b})
            for z in range(200, 20001, 400)]


def test_fit_recovers_synthetic_parameters():
    fit = fit_counting(_synthetic_rows(0.8, 1.0), model="sqrt_over_log")
    assert abs(fit.params["c"] - 0.8) < 1e-9
    assert fit.residual < 1e-9
    fit2 = fit_counting(_synthetic_rows(1.3, 1.4), model="power_log")
    assert abs(fit2.params["a"] - 1.3) < 1e-3
    assert abs(fit2.params["b"] - 1.4) < 1e-3
    assert fit2.predict(10**4) == pytest.approx(
        1.3 * 100 / math.log(10**4) ** fit2.params["b"])
    with pytest.raises(ValueError):
        fit_counting(_synthetic_rows(1, 1)[:5])
    with pytest.raises(ValueError):
        fit_counting(_synthetic_rows(1, 1), model="cubic")


def test_run_survey_reruns_are_byte_identical(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    p1 = run_survey("cq", {"q": [5], "samples": 2000}, str(out1), seed=3)
    p2 = run_survey("cq", {"q": [5], "samples": 2000}, str(out2), seed=3)
    assert open(p1[0], "rb").read() == open(p2[0], "rb").read()
    meta = json.load(open(p1[1]))
    assert meta["kind"] == "cq" and meta["seed"] == 3


def test_run_survey_json_format(tmp_path):
    paths = run_survey("relcond", {"q": [5, 7, 11]},
                       str(tmp_path / "rc"), fmt="json")
    rows = json.load(open(paths[0]))
    by_q = {r["key"]: r for r in rows}
    assert set(by_q) == {5, 7, 11}
    assert all(r["relcond_sum"] > 0 for r in rows)
    with pytest.raises(ValueError):
        run_survey("nope", {}, str(tmp_path / "x"))


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "surfsplit.cli", *args],
                          capture_output=True, text=True)


def test_cli_classify_and_exit_codes(tmp_path):
    r = _cli("classify", "17", "8", "49")   # (T^2-3T+17)(T^2-5T+17)
    assert r.returncode == 0
    payload = json.loads(r.stdout.strip().splitlines()[-1])
    assert payload["split"] is True
    r = _cli("classnum", "-163")
    assert r.returncode == 0
    assert json.loads(r.stdout.strip().splitlines()[-1])["h"] == 1
    assert _cli("classify", "17", "99", "0").returncode == 2
    assert _cli("classnum", "5").returncode == 2
    out = tmp_path / "rc.csv"
    assert _cli("relcond-sum", "5", "7", "--out", str(out)).returncode == 0
    assert out.exists() and (tmp_path / "rc.meta.json").exists()
