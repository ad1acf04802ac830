"""Split-prime counting for genus-2 curves over Q, curve fitting, surveys.

The headline experiment: reduce a fixed rational curve modulo every good
prime p <= z, decide whether its Jacobian is split or simple over F_p, and
compare the counting function pi_split(z) against sqrt(z)/log(z)-shaped
models.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np
import sympy

from . import __version__ as _version
from . import _jac
from .genus2 import Genus2Curve, genus2_count
from .gf import make_field
from .weilquartic import SplitClass, classify, quartic_from_counts

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class RationalGenus2:
    """y^2 = f(x) over Q, f integer, squarefree, degree 5 or 6."""

    coeffs: tuple  # (c0, c1, ..., c_deg)
    disc: int

    @classmethod
    def from_coeffs(cls, coeffs) -> "RationalGenus2":
        co = tuple(int(c) for c in coeffs)
        while co and co[-1] == 0:
            co = co[:-1]
        if len(co) - 1 not in (5, 6):
            raise ValueError("degree must be 5 or 6")
        d = int(sympy.discriminant(sympy.Poly(list(reversed(co)), _X)))
        if d == 0:
            raise ValueError("f must be squarefree")
        return cls(coeffs=co, disc=d)

    @classmethod
    def from_string(cls, text: str) -> "RationalGenus2":
        poly = sympy.Poly(sympy.sympify(text, locals={"x": _X}), _X)
        if not all(c.is_integer for c in poly.all_coeffs()):
            raise ValueError("integer coefficients required")
        return cls.from_coeffs(list(reversed([int(c) for c in poly.all_coeffs()])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = "" if (c == 1 and i) else ("-" if (c == -1 and i) else str(c))
            terms.append(cs + ("*" if cs not in ("", "-") and xs else "") + xs)
        return " + ".join(terms) or "0"


@dataclass
class SurveyRow:
    key: int
    values: dict
    flags: dict = field(default_factory=dict)


@dataclass
class FitResult:
    model: str            # "sqrt_over_log" or "power_log"
    params: dict          # {"c": ...} or {"a": ..., "b": ...}
    residual: float       # RMS relative error on the sample grid

    def predict(self, z: float) -> float:
        lg = math.log(z)
        if self.model == "sqrt_over_log":
            return self.params["c"] * math.sqrt(z) / lg
        return self.params["a"] * math.sqrt(z) / lg ** self.params["b"]


def good_primes(cv: RationalGenus2, z: int):
    """Odd primes 5 <= p <= z not dividing disc(f) or the leading coefficient."""
    if z < 3:
        return
    lead = cv.coeffs[-1]
    for p in _prime_range(5, z):
        if cv.disc % p and lead % p:
            yield p


def _prime_range(lo: int, hi: int):
    if hi < lo:
        return
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i:: i] = False
    for p in np.nonzero(sieve)[0]:
        if p >= lo:
            yield int(p)


# ------------------------------------------------------------------ pisplit

_SMALL_P = 17       # below this, exhaustive F_p and F_{p^2} counting is instant
_SLOW_P_MAX = 3000  # generic fallback bound (quadratic point counting)


def _weil_exhaustive(p: int, coeffs) -> tuple:
    F = make_field(p)
    cv = Genus2Curve(F, [c % p for c in coeffs])
    n1, n2 = genus2_count(cv, 1), genus2_count(cv, 2)
    wq = quartic_from_counts(p, n1, n2)
    return wq.a1, wq.a2


def _a2_from_order(p: int, a1: int, n: int) -> int:
    return n - (p * p + 1) + a1 * (p + 1)


def _twist_retry(p: int, co: list, a1: int, seed: int):
    """Intersect order candidates of the curve with those of its twist."""
    cand = np.empty(64, dtype=np.int64)
    k = _jac.jac_order_candidates(p, np.array(co, dtype=np.int64), a1,
                                  seed ^ 0x5DEECE66D, cand)
    if k < 1:
        return None
    curve_cands = set(int(c) for c in cand[:k])
    if len(curve_cands) == 1:
        return curve_cands.pop()
    d = 2
    while pow(d, (p - 1) // 2, p) != p - 1:
        d += 1
    tw = [co[i] * pow(d, 5 - i, p) % p for i in range(6)]
    k = _jac.jac_order_candidates(p, np.array(tw, dtype=np.int64), -a1,
                                  seed ^ 0x2545F4914F6CDD1D, cand)
    if k < 1:
        return None
    shift = 2 * a1 * (p + 1)
    both = curve_cands & set(int(c) - shift for c in cand[:k])
    return both.pop() if len(both) == 1 else None


def pisplit(cv: RationalGenus2, z: int, grid: int = 40, seed: int = 0,
            threads: int | None = None):
    """Counting function of split reductions up to z.

    Returns (rows, split_primes, undetermined_primes).  rows sample the
    cumulative count on a log-spaced grid of `grid` z-values.  Primes whose
    Jacobian order cannot be pinned down (BSGS ambiguity surviving the
    quadratic-twist retry) are excluded and reported — in practice none
    occur below 10^6.
    """
    if z > 10**7:
        raise ValueError("z > 10^7 not supported")
    if cv.degree != 5:
        raise ValueError("degree-6 models not supported by the prime survey; "
                         "use a quintic model")
    if threads:
        from numba import set_num_threads
        set_num_threads(threads)
    decisions = {}   # p -> bool (split?)
    undetermined = []
    small, big = [], []
    for p in good_primes(cv, z):
        (small if p < _SMALL_P else big).append(p)
    for p in small:
        a1, a2 = _weil_exhaustive(p, cv.coeffs)
        decisions[p] = classify(p, a1, a2).tag is not SplitClass.SIMPLE
    if big:
        ps = np.array(big, dtype=np.int64)
        fs = np.zeros((len(big), 6), dtype=np.int64)
        for i, p in enumerate(big):
            fs[i] = [c % p for c in cv.coeffs]
        out = _jac.jac_orders_batch(ps, fs, seed ^ 0x9E3779B9)
        for i, p in enumerate(big):
            a1, n = int(out[i, 0]), int(out[i, 1])
            if n == 0:
                n = _twist_retry(p, [c % p for c in cv.coeffs], a1, seed + p)
            if n is None or n == 0:
                if p <= _SLOW_P_MAX:
                    a1, a2 = _weil_exhaustive(p, cv.coeffs)
                else:
                    undetermined.append(p)
                    continue
            else:
                a2 = _a2_from_order(p, a1, n)
            decisions[p] = classify(p, a1, a2).tag is not SplitClass.SIMPLE
    split_primes = sorted(p for p, s in decisions.items() if s)
    zs = sorted(set(int(round(v)) for v in np.geomspace(min(100, z), z, grid)))
    rows = []
    import bisect
    for zv in zs:
        rows.append(SurveyRow(
            key=zv,
            values={"pi_split": bisect.bisect_right(split_primes, zv),
                    "pi_good": bisect.bisect_right(sorted(decisions), zv)},
            flags={"undetermined": len([p for p in undetermined if p <= zv])},
        ))
    return rows, split_primes, undetermined


# ------------------------------------------------------------------ fitting

def fit_counting(samples, model: str = "sqrt_over_log") -> FitResult:
    """Least-squares fit of pi_split(z) by c*sqrt(z)/log(z) or a*sqrt(z)/log(z)^b.

    The one-parameter c is closed form; (a, b) uses golden-section search on
    b in [0.5, 2] (tolerance 1e-6) with a eliminated in closed form.
    """
    pts = [(r.key, float(r.values["pi_split"])) for r in samples if r.key >= 100]
    if len(pts) < 10:
        raise ValueError("need >= 10 samples with z >= 100")
    zs = np.array([p[0] for p in pts], dtype=float)
    ys = np.array([p[1] for p in pts], dtype=float)
    if not ys.any():
        raise ValueError("all counts are zero; nothing to fit")
    rz, lz = np.sqrt(zs), np.log(zs)

    def solve_a(b):
        g = rz / lz**b
        return float(g @ ys / (g @ g))

    def sse(b):
        a = solve_a(b)
        r = ys - a * rz / lz**b
        return float(r @ r)

    if model == "sqrt_over_log":
        c = solve_a(1.0)
        params = {"c": c}
        fit = c * rz / lz
    elif model == "power_log":
        lo, hi = 0.5, 2.0
        phi = (math.sqrt(5) - 1) / 2
        x1 = hi - phi * (hi - lo)
        x2 = lo + phi * (hi - lo)
        f1, f2 = sse(x1), sse(x2)
        while hi - lo > 1e-6:
            if f1 < f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - phi * (hi - lo)
                f1 = sse(x1)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + phi * (hi - lo)
                f2 = sse(x2)
        b = (lo + hi) / 2
        a = solve_a(b)
        params = {"a": a, "b": b}
        fit = a * rz / lz**b
    else:
        raise ValueError(f"unknown model {model!r}")
    residual = float(np.sqrt(np.mean(((ys - fit) / fit) ** 2)))
    return FitResult(model=model, params=params, residual=residual)


# ------------------------------------------------------------------ surveys

def run_survey(kind: str, params: dict, out: str, seed: int = 0,
               fmt: str = "csv", threads: int | None = None):
    """Run one named experiment and persist rows + a JSON metadata sidecar.

    Deterministic: identical (kind, params, seed) produce byte-identical
    files.  Returns the list of paths written.
    """
    rows, meta = _survey_rows(kind, dict(params), seed, threads)
    meta = {"kind": kind, "params": params, "seed": seed,
            "version": _version, **meta}
    paths = []
    if fmt == "csv":
        path = out if out.endswith(".csv") else out + ".csv"
        _write_csv(path, rows)
        paths.append(path)
        side = path[:-4] + ".meta.json"
    elif fmt == "json":
        path = out if out.endswith(".json") else out + ".json"
        payload = [{"key": r.key, **r.values, **{f"flag_{k}": v for k, v in r.flags.items()}}
                   for r in rows]
        _atomic_write(path, json.dumps(payload, indent=1, sort_keys=True) + "\n")
        paths.append(path)
        side = path[:-5] + ".meta.json"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    _atomic_write(side, json.dumps(meta, indent=1, sort_keys=True, default=str) + "\n")
    paths.append(side)
    return paths


def _survey_rows(kind, params, seed, threads):
    from . import genus2, ellipt, numth, quadorders

    if kind in ("cq", "dq"):
        qs = params.get("q") or [17, 19, 23, 29, 31, 37, 41]
        qs = [qs] if isinstance(qs, int) else list(qs)
        samples = params.get("samples")
        rows = []
        for q in qs:
            if samples:
                r = genus2.monte_carlo_cq(q, samples=samples, seed=seed)
            else:
                r = genus2.exact_cq(q)
            vals = {"c_q": r.c_q, "d_q": r.d_q}
            if r.stderr is not None:
                vals["stderr"] = r.stderr
            rows.append(SurveyRow(key=q, values=vals,
                                  flags={"mode": "mc" if samples else "exact"}))
        return rows, {"estimator": "monte_carlo" if samples else "exact"}

    if kind == "relcond":
        qs = params.get("q") or [q for q in range(5, 200) if numth.is_prime(q)]
        qs = [qs] if isinstance(qs, int) else list(qs)
        rows = [SurveyRow(key=q, values={
            "relcond_sum": ellipt.sum_relcond_closed_form(q),
            "normalized": ellipt.sum_relcond_closed_form(q) / q}) for q in qs]
        return rows, {}

    if kind == "census":
        q = params["q"]
        per_class, r = genus2.split_census(q)
        rows = [SurveyRow(key=q, values={
            **{tag.name.lower(): float(m) for tag, m in per_class.items()},
            "total": float(r.weighted_jacobians_total),
            "c_q": r.c_q, "d_q": r.d_q})]
        return rows, {"weighted_total_exact": str(r.weighted_jacobians_total)}

    if kind == "arith":
        xs = params.get("x") or [10**k for k in range(2, 7)]
        xs = [xs] if isinstance(xs, int) else list(xs)
        rows = [SurveyRow(key=x, values={
            "sum_psi": numth.sum_psi(x),
            "sum_psi_over_n": float(numth.sum_psi_over_n(x))}) for x in xs]
        return rows, {"limits": {"sum_psi": "15/(2 pi^2) x^2",
                                 "sum_psi_over_n": "15/pi^2 x"}}

    if kind == "pisplit":
        cv = RationalGenus2.from_string(params.get("curve", "x^5 + x + 6"))
        z = params.get("zmax", 10**5)
        grid = params.get("grid", 40)
        rows, split_primes, undet = pisplit(cv, z, grid=grid, seed=seed,
                                            threads=threads)
        meta = {"curve": str(cv), "disc": cv.disc, "zmax": z,
                "n_split": len(split_primes), "n_undetermined": len(undet),
                "good_reduction_test": "p does not divide disc(f) or lead(f)",
                "fit_grid": f"{grid} log-spaced z values, least squares on counts"}
        try:
            for m in ("sqrt_over_log", "power_log"):
                fr = fit_counting(rows, m)
                meta[f"fit_{m}"] = {**fr.params, "residual": fr.residual}
        except ValueError as e:
            meta["fit_error"] = str(e)
        return rows, meta

    raise ValueError(f"unknown survey kind {kind!r}")


def _write_csv(path: str, rows):
    cols = ["key"]
    for r in rows:
        for k in list(r.values) + [f"flag_{k}" for k in r.flags]:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        rec = {"key": r.key, **r.values,
               **{f"flag_{k}": v for k, v in r.flags.items()}}
        w.writerow([repr(rec[c]) if isinstance(rec.get(c), float) else rec.get(c, "")
                    for c in cols])
    _atomic_write(path, buf.getvalue())


def _atomic_write(path: str, text: str):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)
