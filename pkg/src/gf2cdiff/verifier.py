"""Exhaustive checks of the APcN construction ``x^(q^3+q^2+q-1)`` on GF(q^4).

Every checker fixes ``n`` (so ``q = 2^n``) and an admissible ``c``, i.e.
``c^(q^2+1) = 1`` and ``c != 1``, enumerates all inputs of the statement,
keeps those meeting its hypotheses and records every input whose
conclusion fails.  No intermediate derivation is reused; only hypotheses and
conclusions are encoded.

All algebra is written once against :class:`CheckContext` helpers that take
either scalars or NumPy arrays, so the same expression serves one ``b`` or
all ``b`` at once.

Notation used in names: ``tr`` is the trace GF(q^4) -> GF(q), ``tr_q`` the
absolute trace of an element of GF(q), ``v = b^q + b^(q^2)``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .circle import admissible_c, unit_circle
from .engine import PowerFunction, SpectrumKernel, apcn_exponent, power_spectra
from .errors import PreconditionError, UnsupportedFamily
from .field import (GF2Field, Poly, TowerView, make_field, poly_eval_coeffs,
                    poly_mul_coeffs)
from .records import PropositionReport, SpectrumRecord, hexstr, merge_reports

SAMPLE_SIZE = 1 << 12


def _ms(start: float) -> int:
    return int(round((time.perf_counter() - start) * 1000))


def twisted_exponent(n: int) -> int:
    """``(q - 1)(q^2 + 1) + 2``, the exponent after the ``q^2``-power twist."""
    q = 1 << n
    return (q - 1) * (q * q + 1) + 2


class CheckContext:
    """Field, tower and ``c``-dependent constants for one ``(n, c)``."""

    def __init__(self, n: int, c: int, modulus: int | None = None):
        self.tower = TowerView(make_field(4 * n, modulus), n)
        self.f: GF2Field = self.tower.ambient
        self.n = n
        self.q = 1 << n
        f, q = self.f, self.q
        c = int(c)
        if c == 0 or c == 1 or f.pow(c, q * q + 1) != 1:
            raise PreconditionError(
                f"c = {c:#x} is not in the unit circle of order q^2+1 minus 1")
        self.c = c
        self.ci = f.inv(c)
        self.cq = self.fr(c, 1)
        self.cqi = f.inv(self.cq)
        self.c_plus = c ^ self.ci            # c + c^-1
        self.cq_plus = self.cq ^ self.cqi    # c^q + c^-q
        self.c1q = f.mul(c, self.cq)         # c^(1+q)
        self.tr_c = self.tr(c)
        self.tr_c1q = self.tr(self.c1q)

    # -- primitives ----------------------------------------------------------
    def mul(self, a, b):
        return self.f.mul(a, b)

    def pow(self, a, e):
        return self.f.pow(a, e)

    def inv(self, a):
        return self.f.inv(a)

    def fr(self, x, i: int):
        """``x^(q^i)``."""
        return self.f.frobenius(x, self.n * i)

    def tr(self, x):
        return self.f.trace(x, self.n)

    def tr_q(self, x):
        return self.f.trace(x, 1, self.n)

    def in_fq(self, x):
        return self.fr(x, 1) == x

    @property
    def c_hex(self) -> str:
        return hexstr(self.c)

    @property
    def modulus_hex(self) -> str:
        return self.f.modulus_hex

    def all_elements(self) -> np.ndarray:
        return self.f.elements()

    @cached_property
    def mu_q1(self) -> np.ndarray:
        return unit_circle(self.tower, 1)

    # -- b-derived quantities ------------------------------------------------
    def v(self, b):
        return self.fr(b, 1) ^ self.fr(b, 2)

    def norm(self, b):
        """``b^(1+q+q^2+q^3)``."""
        q = self.q
        return self.pow(b, 1 + q + q * q + q ** 3)

    def b_q_q3(self, b):
        q = self.q
        return self.pow(b, q + q ** 3)

    def b_1_q2(self, b):
        return self.pow(b, 1 + self.q * self.q)

    def trace_A(self, v):
        """``Tr(c v^(q+1))``."""
        return self.tr(self.mul(self.c, self.pow(v, self.q + 1)))

    def trace_B(self, v):
        """``Tr(c^(1+q) v^(2q))``."""
        return self.tr(self.mul(self.c1q, self.pow(v, 2 * self.q)))

    def trace_A1(self, v):
        """``Tr(c (v + v^q))``."""
        return self.tr(self.mul(self.c, v ^ self.fr(v, 1)))

    def trace_c1q_vq(self, v):
        """``Tr(c^(q+1) v^q)``."""
        return self.tr(self.mul(self.c1q, self.fr(v, 1)))

    def coeff_A2(self, b):
        """``c^q + c^-q + (c + c^-1) b^(q+q^3)``."""
        return self.cq_plus ^ self.mul(self.c_plus, self.b_q_q3(b))

    def coeff_A0(self, b):
        """``c + c^-1 + (c^q + c^-q) b^(1+q^2)``."""
        return self.c_plus ^ self.mul(self.cq_plus, self.b_1_q2(b))

    def coeff_A1_quadratic(self, b):
        """Middle coefficient of the quadratic in ``alpha`` (``beta = alpha``)."""
        m = self.mul
        return (m(self.c_plus, m(self.cqi, self.fr(b, 1)) ^ m(self.cq, self.fr(b, 3)))
                ^ m(self.cq_plus, m(self.ci, b) ^ m(self.c, self.fr(b, 2))))

    # -- the degree-4 / degree-3 polynomials in k ------------------------------
    def c1_coeffs(self, b) -> list:
        """Coefficients (k^0..k^4) of ``(1+k^4)(1+b^(q+q^3)) + (k^3+k) A2``."""
        e = 1 ^ self.b_q_q3(b)
        a2 = self.coeff_A2(b)
        return [e, a2, 0 * a2, a2, e]

    def c0_coeffs(self, b) -> list:
        """Coefficients (k^0..k^3) of the C0 polynomial."""
        m, tr = self.mul, self.tr
        tr_b = tr(b)
        return [
            tr_b,
            tr(m(b, self.c)) ^ m(tr_b, self.tr_c),
            tr_b ^ tr(m(self.c1q, self.fr(b, 2) ^ self.fr(b, 3))),
            tr(m(self.c, self.fr(b, 2))),
        ]

    # -- the quartic in u and its factors ------------------------------------
    def g_coeffs(self, b) -> list:
        """G0..G4 of the quartic in ``u``."""
        m, tr, fr = self.mul, self.tr, self.fr
        c, c1q = self.c, self.c1q
        b2 = m(b, b)
        b1, b2q, b3 = fr(b, 1), fr(b, 2), fr(b, 3)
        nb = self.norm(b)
        c_sq = m(c, c)
        g0 = (tr(m(c_sq, fr(b2, 1) ^ fr(b2, 3)))
              ^ tr(m(m(c1q, c1q), fr(b2, 2) ^ fr(b2, 3))))
        g1 = m(tr(m(c, b1 ^ b3)), tr(m(c1q, b2q ^ b3)))
        g2 = (tr(b2)
              ^ tr(m(c_sq, fr(b2, 2) ^ m(b1, b2q) ^ m(b2q, b3) ^ m(b1, b3)))
              ^ m(self.tr_c1q, 1 ^ nb)
              ^ tr(m(c1q, m(b1, b2q) ^ m(b, b3))))
        g3 = m(self.tr_c, 1 ^ nb) ^ m(tr(b), tr(m(c, b2q)))
        g4 = m(1 ^ self.b_q_q3(b), 1 ^ self.b_1_q2(b))
        return [g0, g1, g2, g3, g4]

    def factor_left(self) -> list:
        return [self.tr_c1q, self.tr_c, 1]

    def factor_right(self, b) -> list:
        """``(1+b^(q+q^3))(1+b^(1+q^2)) u^2 + A u + B`` with A, B in b-form."""
        m, tr, fr = self.mul, self.tr, self.fr
        b1, b2q, b3 = fr(b, 1), fr(b, 2), fr(b, 3)
        a = tr(m(self.c, m(b1 ^ b2q, b2q ^ b3)))
        bb = tr(m(self.c1q, m(b2q, b2q) ^ m(b3, b3)))
        g4 = m(1 ^ self.b_q_q3(b), 1 ^ self.b_1_q2(b))
        return [bb, a, g4]


@lru_cache(maxsize=32)
def _context(n: int, c: int, modulus: int | None) -> CheckContext:
    return CheckContext(n, c, modulus)


def context(n: int, c, modulus: int | None = None) -> CheckContext:
    return _context(n, int(c), modulus)


def admissible(n: int, modulus: int | None = None) -> list[int]:
    """All ``c`` with ``c^(q^2+1) = 1``, ``c != 1``, in generator-power order."""
    return [int(c) for c in admissible_c(TowerView(make_field(4 * n, modulus), n))]


def _report(ctx: CheckContext, prop_id: str, total: int, checked: int,
            bad: list, start: float, sampled: bool = False,
            mode: str | None = None) -> PropositionReport:
    return PropositionReport(prop_id=prop_id, n=ctx.n, modulus=ctx.modulus_hex,
                             cases_total=total, cases_checked=checked,
                             counterexamples=tuple(bad), elapsed_ms=_ms(start),
                             c_hex=ctx.c_hex, sampled=sampled, mode=mode)


def _hexes(xs) -> list[str]:
    return [hexstr(x) for x in np.asarray(xs).ravel()]


def _b_inputs(ctx: CheckContext, sampled: bool) -> np.ndarray:
    """All of GF(q^4), or the first ``SAMPLE_SIZE`` powers of the generator."""
    f = ctx.f
    if not sampled or f.size <= SAMPLE_SIZE:
        return ctx.all_elements()
    return _generator_powers(f, SAMPLE_SIZE)


def _generator_powers(f: GF2Field, count: int) -> np.ndarray:
    exp, _ = f.tables()
    return exp[:count].copy()


# -- integer facts -----------------------------------------------------------

def congruence_check(n: int) -> PropositionReport:
    """gcd(d, q^4 - 1) = 1 and ``d q^2 = (q-1)(q^2+1) + 2 (mod q^4 - 1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    start = time.perf_counter()
    q = 1 << n
    d = apcn_exponent(n)
    mod = q ** 4 - 1
    bad = []
    g = math.gcd(d, mod)
    if g != 1:
        bad.append({"claim": "gcd", "value": g})
    lhs = d * q * q % mod
    rhs = twisted_exponent(n) % mod
    if lhs != rhs:
        bad.append({"claim": "congruence", "lhs": lhs, "rhs": rhs})
    return PropositionReport(prop_id="THM2_CONGRUENCE", n=n,
                             modulus=make_field(4 * n).modulus_hex if 4 * n <= 32 else "",
                             cases_total=2, cases_checked=2,
                             counterexamples=tuple(bad), elapsed_ms=_ms(start))


# -- the twisted equation (x+1)^e + c^2 x^e = b^2 ------------------------------

@lru_cache(maxsize=16)
def _twisted_histogram(n: int, c: int, modulus: int | None) -> np.ndarray:
    """``hist[y]`` = #x with ``(x+1)^e + c^2 x^e = y``."""
    ctx = context(n, c, modulus)
    F = PowerFunction(ctx.f, twisted_exponent(n))
    h = SpectrumKernel(F).histogram(ctx.mul(ctx.c, ctx.c))
    h.setflags(write=False)
    return h


def twisted_counts(n: int, c, modulus: int | None = None) -> np.ndarray:
    """Solution count of the twisted equation for every ``b`` (index = b)."""
    ctx = context(n, c, modulus)
    b = ctx.all_elements()
    return _twisted_histogram(n, ctx.c, modulus)[ctx.mul(b, b)]


def twisted_count(n: int, c, b, modulus: int | None = None) -> int:
    ctx = context(n, c, modulus)
    b = int(b)
    return int(_twisted_histogram(n, ctx.c, modulus)[ctx.mul(b, b)])


def twisted_spectrum_match(n: int, c, modulus: int | None = None) -> PropositionReport:
    """Count histogram of the twisted equation equals the spectrum of ``x^d``."""
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    counts = twisted_counts(n, ctx.c, modulus)
    twisted = tuple(int(w) for w in np.bincount(counts))
    rec = power_spectra(PowerFunction(ctx.f, apcn_exponent(n)), [ctx.c])[0]
    bad = []
    if twisted != rec.omega:
        bad.append({"twisted_omega": list(twisted), "power_omega": list(rec.omega)})
    return _report(ctx, "EQ418_SPECTRUM", ctx.f.size, ctx.f.size, bad, start)


# -- statements over b and v -----------------------------------------------

def prop1a_check(n: int, c, modulus: int | None = None) -> PropositionReport:
    """Trace of ``Tr(c v^(1+q)) / Tr(c^(1+q) v^(2q))`` is 1 when both are nonzero."""
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    v = ctx.all_elements()
    num, den = ctx.trace_A(v), ctx.trace_B(v)
    hyp = (num != 0) & (den != 0)
    ratio = ctx.mul(num, ctx.inv(den))
    fail = hyp & (ctx.tr_q(ratio) != 1)
    bad = [{"v": h} for h in _hexes(v[fail])]
    return _report(ctx, "P1a", v.size, v.size, bad, start)


def prop1b_check(n: int, c, modulus: int | None = None) -> PropositionReport:
    """``b^(1+q^2) = 1`` and ``Tr(c v^(1+q)) = 0`` force ``b`` in {1, c}."""
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    b = ctx.all_elements()
    hyp = (ctx.b_1_q2(b) == 1) & (ctx.trace_A(ctx.v(b)) == 0)
    fail = hyp & (b != 1) & (b != ctx.c)
    bad = [{"b": h} for h in _hexes(b[fail])]
    return _report(ctx, "P1b", b.size, b.size, bad, start)


def prop1_check(n: int, c, modulus: int | None = None) -> tuple[PropositionReport, PropositionReport]:
    return prop1a_check(n, c, modulus), prop1b_check(n, c, modulus)


def prop2_check(n: int, c, modulus: int | None = None,
                sampled: bool = False) -> PropositionReport:
    """A common root ``k`` of C1 and C0 on the unit circle of GF(q^2) is 1."""
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    b = _b_inputs(ctx, sampled)
    k = ctx.mu_q1[None, :]
    bb = b[:, None]
    c1 = poly_eval_coeffs(ctx.f, ctx.c1_coeffs(bb), k)
    c0 = poly_eval_coeffs(ctx.f, ctx.c0_coeffs(bb), k)
    fail = (c1 == 0) & (c0 == 0) & (k != 1)
    bi, ki = np.nonzero(fail)
    bad = [{"b": hexstr(b[i]), "k": hexstr(ctx.mu_q1[j])} for i, j in zip(bi, ki)]
    total = ctx.f.size * ctx.mu_q1.size
    return _report(ctx, "P2", total, b.size * ctx.mu_q1.size, bad, start,
                   sampled=b.size < ctx.f.size)


def prop3_check(n: int, c, modulus: int | None = None) -> PropositionReport:
    """``A1 = Tr(c(v+v^q))`` and ``A2`` do not vanish together under the hypothesis."""
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    b = ctx.all_elements()
    v = ctx.v(b)
    a1 = ctx.trace_A1(v)
    hyp = (a1 ^ ctx.trace_c1q_vq(v)) == 0
    fail = hyp & (a1 == 0) & (ctx.coeff_A2(b) == 0)
    bad = [{"b": h} for h in _hexes(b[fail])]
    return _report(ctx, "P3", b.size, b.size, bad, start)


def prop4_check(n: int, c, modulus: int | None = None,
                domain: str = "all") -> PropositionReport:
    """``Tr(c(v+v^q)) = Tr(c^(1+q) v^q) = 0`` forces both quadratic traces to 0.

    ``domain="all"`` enumerates every ``v`` in GF(q^4).  ``domain="trace_zero"``
    keeps only ``v`` with ``Tr(v) = 0``, which is every ``v`` of the form
    ``b^q + b^(q^2)``; the statement over all ``v`` has counterexamples with
    ``Tr(v) != 0``.
    """
    if domain not in ("all", "trace_zero"):
        raise ValueError(f"unknown domain {domain!r}")
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    v = ctx.all_elements()
    if domain == "trace_zero":
        v = v[ctx.tr(v) == 0]
    hyp = (ctx.trace_A1(v) == 0) & (ctx.trace_c1q_vq(v) == 0)
    fail = hyp & ((ctx.trace_A(v) != 0) | (ctx.trace_B(v) != 0))
    bad = [{"v": h} for h in _hexes(v[fail])]
    return _report(ctx, "P4", v.size, v.size, bad, start,
                   mode=None if domain == "all" else domain)


def _prop5_symbolic(ctx: CheckContext, b: np.ndarray) -> list[dict]:
    g = ctx.g_coeffs(b)
    prod = poly_mul_coeffs(ctx.f, ctx.factor_left(), ctx.factor_right(b))
    bad = []
    for i, (gi, pi) in enumerate(zip(g, prod)):
        for h in _hexes(b[np.asarray(gi != pi)]):
            bad.append({"b": h, "coeff": i})
    return bad


def _prop5_exhaustive(ctx: CheckContext, b: np.ndarray) -> list[dict]:
    f = ctx.f
    u = f.elements()[None, :]
    left = ctx.factor_left()
    bad = []
    step = max(1, (1 << 20) // f.size)
    for lo in range(0, b.size, step):
        bb = b[lo:lo + step, None]
        lhs = poly_eval_coeffs(f, ctx.g_coeffs(bb), u)
        rhs = f.mul(poly_eval_coeffs(f, left, u),
                    poly_eval_coeffs(f, ctx.factor_right(bb), u))
        bi, ui = np.nonzero(lhs != rhs)
        bad += [{"b": hexstr(bb[i, 0]), "u": hexstr(j)} for i, j in zip(bi, ui)]
    return bad


def prop5_check(n: int, c, mode: str = "both", modulus: int | None = None,
                sampled: bool = False) -> PropositionReport:
    """Factorization of the quartic G(u), by coefficients and/or by evaluation.

    ``mode`` is ``"symbolic"`` (five coefficient equalities per ``b``),
    ``"exhaustive"`` (both sides at every ``u`` in GF(q^4)) or ``"both"``.
    """
    if mode not in ("symbolic", "exhaustive", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    b = _b_inputs(ctx, sampled)
    bad, total, checked = [], 0, 0
    if mode in ("symbolic", "both"):
        bad += _prop5_symbolic(ctx, b)
        total += ctx.f.size
        checked += b.size
    if mode in ("exhaustive", "both"):
        bad += _prop5_exhaustive(ctx, b)
        total += ctx.f.size * ctx.f.size
        checked += b.size * ctx.f.size
    return _report(ctx, "P5", total, checked, bad, start,
                   sampled=b.size < ctx.f.size, mode=mode)


def omega_value(ctx: CheckContext, b):
    """The quantity whose trace is claimed to be 1 (numerator form in ``b``)."""
    m = ctx.mul
    v = ctx.v(b)
    t = ctx.trace_c1q_vq(v)
    first = m(m(ctx.tr_c1q, 1 ^ ctx.norm(b)) ^ ctx.tr(m(m(ctx.c, ctx.c), ctx.b_q_q3(b))),
              ctx.inv(m(t, t)))
    g4 = m(1 ^ ctx.b_q_q3(b), 1 ^ ctx.b_1_q2(b))
    return first ^ m(g4, ctx.inv(ctx.trace_A(v)))


def prop6_check(n: int, c, modulus: int | None = None) -> PropositionReport:
    """Under its hypotheses the Omega quantity lies in GF(q) with trace 1."""
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    b = ctx.all_elements()
    v = ctx.v(b)
    hyp = (ctx.b_1_q2(b) != 1) & (ctx.trace_B(v) == 0) & (ctx.trace_A(v) != 0)
    bad = [{"b": h, "failure": "zero_denominator"}
           for h in _hexes(b[hyp & (ctx.trace_c1q_vq(v) == 0)])]
    om = omega_value(ctx, b)
    not_fq = hyp & ~ctx.in_fq(om)
    bad += [{"b": h, "failure": "not_in_Fq"} for h in _hexes(b[not_fq])]
    bad += [{"b": h, "failure": "trace"}
            for h in _hexes(b[hyp & ~not_fq & (ctx.tr_q(om) != 1)])]
    return _report(ctx, "P6", b.size, b.size, bad, start)


def prop7_check(n: int, c, modulus: int | None = None) -> PropositionReport:
    """Exactly one solution iff ``Tr(c^(q+1) v^(2q)) = Tr(c(v+v^q)) = 0``."""
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    b = ctx.all_elements()
    v = ctx.v(b)
    unique = twisted_counts(n, ctx.c, modulus) == 1
    pred = (ctx.trace_B(v) == 0) & (ctx.trace_A1(v) == 0)
    bad = [{"b": h} for h in _hexes(b[unique != pred])]
    return _report(ctx, "P7", b.size, b.size, bad, start)


# -- spectrum counting and the quadratic in alpha ------------------------------

def omega1_trace_count(n: int, c, modulus: int | None = None) -> int:
    """#b with ``Tr((c+c^-1) b^(q^3)) = Tr(c^q (c+c^-1) b^(q^3)) = 0``."""
    ctx = context(n, c, modulus)
    b3 = ctx.fr(ctx.all_elements(), 3)
    t1 = ctx.tr(ctx.mul(ctx.c_plus, b3))
    t2 = ctx.tr(ctx.mul(ctx.mul(ctx.cq, ctx.c_plus), b3))
    return int(np.count_nonzero((t1 == 0) & (t2 == 0)))


def omega1_check(n: int, c, modulus: int | None = None) -> PropositionReport:
    """The trace count, ``q^2`` and the engine's ``omega_1`` agree."""
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    count = omega1_trace_count(n, ctx.c, modulus)
    rec = power_spectra(PowerFunction(ctx.f, apcn_exponent(n)), [ctx.c])[0]
    engine = rec.omega[1] if len(rec.omega) > 1 else 0
    bad = []
    if not count == ctx.q ** 2 == engine:
        bad.append({"trace_count": count, "q2": ctx.q ** 2, "omega1": engine})
    return _report(ctx, "SPECTRUM_OMEGA1", 1, 1, bad, start)


def _alpha_root_counts(ctx: CheckContext, a2, a1, a0) -> np.ndarray:
    mu = ctx.mu_q1[None, :]
    a2, a1, a0 = (np.asarray(x)[:, None] for x in (a2, a1, a0))
    val = ctx.mul(a2, ctx.mul(mu, mu)) ^ ctx.mul(a1, mu) ^ a0
    return np.count_nonzero(val == 0, axis=1)


def alpha_quadratic_roots(n: int, c, b, modulus: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Roots ``alpha`` on the unit circle of ``A2 alpha^2 + A1 alpha + A0``."""
    ctx = context(n, c, modulus)
    b = int(b)
    a2, a1, a0 = ctx.coeff_A2(b), ctx.coeff_A1_quadratic(b), ctx.coeff_A0(b)
    mu = ctx.mu_q1
    val = ctx.mul(a2, ctx.mul(mu, mu)) ^ ctx.mul(a1, mu) ^ a0
    roots = tuple(sorted(int(x) for x in mu[val == 0]))
    return len(roots), roots


def alpha_quadratic_check(n: int, c, modulus: int | None = None) -> PropositionReport:
    """Identities and root-count facts about the quadratic in ``alpha``.

    Per ``b``: ``A2 = A0^q``; ``A1 = Tr(c^(q+1) v^q)``; in the case
    ``Tr(c^(1+q) v^(2q)) = 0`` also ``A1 = Tr(c(v+v^q))`` and at most two
    roots; two roots exactly when ``A1 A2 != 0`` and ``Tr_q(A0 A2 / A1^2) = 1``;
    and for ``b^(1+q^2) != 1`` with ``Tr(c v^(q+1)) != 0`` in that case, the
    pairs ``(k, k^-1)`` from the quadratic in ``u`` and two ``alpha`` roots never
    occur together.
    """
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    m = ctx.mul
    b = ctx.all_elements()
    v = ctx.v(b)
    a2, a1, a0 = ctx.coeff_A2(b), ctx.coeff_A1_quadratic(b), ctx.coeff_A0(b)
    case_ii = ctx.trace_B(v) == 0
    roots = _alpha_root_counts(ctx, a2, a1, a0)
    checks = {
        "A2_eq_A0q": ctx.fr(a0, 1) != a2,
        "A1_eq_trace": a1 != ctx.trace_c1q_vq(v),
        "A1_eq_trace_case_ii": case_ii & (a1 != ctx.trace_A1(v)),
        "root_count_case_ii": case_ii & (roots > 2),
    }
    nz = (a1 != 0) & (a2 != 0)
    two = ctx.tr_q(m(m(a0, a2), ctx.inv(m(a1, a1)))) == 1
    checks["two_roots_iff_trace"] = nz & ((roots == 2) != two)

    sel = case_ii & (ctx.b_1_q2(b) != 1) & (ctx.trace_A(v) != 0)
    g4 = m(1 ^ ctx.b_q_q3(b), 1 ^ ctx.b_1_q2(b))
    u = m(ctx.trace_A(v), ctx.inv(g4))
    ks = ctx.mu_q1[ctx.mu_q1 != 1]
    k_pairs = np.count_nonzero((ks ^ ctx.inv(ks))[None, :] == u[:, None], axis=1)
    checks["mutual_exclusion"] = sel & (k_pairs == 2) & (roots == 2)

    bad = [{"b": h, "claim": name}
           for name, fail in checks.items() for h in _hexes(b[fail])]
    return _report(ctx, "ALPHA_QUADRATIC", b.size * len(checks), b.size * len(checks),
                   bad, start)


def alpha_param_check(n: int, c, modulus: int | None = None) -> PropositionReport:
    """Consistency of the ``(alpha, beta)`` parameterisation with C0 and C1.

    For each solution ``x`` outside {0, 1} of the twisted equation with
    right-hand side ``b^2``: ``alpha^2 = (x+1)^((q-1)(q^2+1))`` and
    ``beta^2 = x^((q-1)(q^2+1))`` lie on the unit circle of GF(q^2),
    ``x = (alpha + b)/(alpha + c beta)`` and ``alpha C1(k) = C0(k)`` with
    ``k = beta/alpha``.  For every ``b`` and every ``k`` on that circle, the
    quartic ``G(k + 1/k)`` equals ``C0(k)^(q+1) + C1(k)^(q+1)``, and
    ``C0(k)^(q+1)`` matches its expansion in the C0 coefficients.
    """
    start = time.perf_counter()
    ctx = context(n, c, modulus)
    f, q, m = ctx.f, ctx.q, ctx.mul
    e0 = (q - 1) * (q * q + 1)
    x = ctx.all_elements()[2:]
    b = f.sqrt(f.pow(x ^ 1, twisted_exponent(n)) ^ m(m(ctx.c, ctx.c),
                                                     f.pow(x, twisted_exponent(n))))
    alpha = f.sqrt(f.pow(x ^ 1, e0))
    beta = f.sqrt(f.pow(x, e0))
    k = m(beta, ctx.inv(alpha))
    c1 = poly_eval_coeffs(f, ctx.c1_coeffs(b), k)
    c0 = poly_eval_coeffs(f, ctx.c0_coeffs(b), k)
    checks = {
        "alpha_beta_on_circle": (f.pow(alpha, q + 1) != 1) | (f.pow(beta, q + 1) != 1),
        "x_from_alpha_beta": m(alpha ^ b, ctx.inv(alpha ^ m(ctx.c, beta))) != x,
        "alpha_C1_eq_C0": m(alpha, c1) != c0,
    }
    bad = [{"x": h, "claim": name}
           for name, fail in checks.items() for h in _hexes(x[fail])]

    bb = ctx.all_elements()[:, None]
    kk = ctx.mu_q1[None, :]
    u = kk ^ ctx.inv(kk)
    c0c = ctx.c0_coeffs(bb)
    c0k = poly_eval_coeffs(f, c0c, kk)
    c1k = poly_eval_coeffs(f, ctx.c1_coeffs(bb), kk)
    norm0 = f.pow(c0k, q + 1)
    g = poly_eval_coeffs(f, ctx.g_coeffs(bb), u)
    e = [np.broadcast_to(np.asarray(ei), bb.shape) for ei in c0c]
    expansion = (m(e[0] ^ e[1] ^ e[2] ^ e[3], e[0] ^ e[1] ^ e[2] ^ e[3])
                 ^ m(u, m(e[1] ^ e[3], e[0] ^ e[2]))
                 ^ m(m(u, u), m(e[0], e[2]) ^ m(e[1], e[3]))
                 ^ m(f.pow(u, 3), m(e[0], e[3])))
    for name, fail in (("G_eq_norm_sum", g != (norm0 ^ f.pow(c1k, q + 1))),
                       ("C0_norm_expansion", norm0 != expansion)):
        bi, ki = np.nonzero(fail)
        bad += [{"b": hexstr(bb[i, 0]), "k": hexstr(ctx.mu_q1[j]), "claim": name}
                for i, j in zip(bi, ki)]
    total = 3 * x.size + 2 * bb.size * ctx.mu_q1.size
    return _report(ctx, "ALPHA_PARAM", total, total, bad, start)


# -- polynomial views for a single b ------------------------------------------

@dataclass(frozen=True)
class CPolyPair:
    C1: Poly
    C0: Poly
    b: int
    c: int


@dataclass(frozen=True)
class GPolyBundle:
    G: Poly
    A: int
    B: int
    factor_left: Poly
    factor_right: Poly

    def factorization_holds(self) -> bool:
        return self.factor_left * self.factor_right == self.G


def c_polys(n: int, c, b, modulus: int | None = None) -> CPolyPair:
    ctx = context(n, c, modulus)
    b = int(b)
    return CPolyPair(Poly(tuple(ctx.c1_coeffs(b)), ctx.f),
                     Poly(tuple(ctx.c0_coeffs(b)), ctx.f), b, ctx.c)


def g_bundle(n: int, c, b, modulus: int | None = None) -> GPolyBundle:
    ctx = context(n, c, modulus)
    b = int(b)
    v = ctx.v(b)
    return GPolyBundle(G=Poly(tuple(ctx.g_coeffs(b)), ctx.f),
                       A=ctx.trace_A(v), B=ctx.trace_B(v),
                       factor_left=Poly(tuple(ctx.factor_left()), ctx.f),
                       factor_right=Poly(tuple(ctx.factor_right(b)), ctx.f))


# -- drivers -----------------------------------------------------------------

PROP_CHECKS: dict[str, Callable[..., PropositionReport]] = {
    "P1a": prop1a_check,
    "P1b": prop1b_check,
    "P2": prop2_check,
    "P3": prop3_check,
    "P4": prop4_check,
    "P5": prop5_check,
    "P6": prop6_check,
    "P7": prop7_check,
    "EQ418_SPECTRUM": twisted_spectrum_match,
    "SPECTRUM_OMEGA1": omega1_check,
    "ALPHA_PARAM": alpha_param_check,
    "ALPHA_QUADRATIC": alpha_quadratic_check,
}

PROP_GROUPS = {
    "1": ("P1a", "P1b"), "2": ("P2",), "3": ("P3",), "4": ("P4",),
    "5": ("P5",), "6": ("P6",), "7": ("P7",),
}


def run_check(prop_id: str, n: int, cs: Sequence[int] | None = None,
              modulus: int | None = None, threads: int = 1,
              mode: str = "both", sampled: bool = False,
              domain: str = "all") -> PropositionReport:
    """Run one checker for every ``c`` in ``cs`` and merge the results.

    ``mode`` applies to P5, ``sampled`` to P2 and P5, ``domain`` to P4.
    """
    fn = PROP_CHECKS[prop_id]
    cs = admissible(n, modulus) if cs is None else [int(c) for c in cs]
    kwargs: dict = {"modulus": modulus}
    if prop_id == "P5":
        kwargs.update(mode=mode, sampled=sampled)
    elif prop_id == "P2":
        kwargs.update(sampled=sampled)
    elif prop_id == "P4":
        kwargs.update(domain=domain)

    def one(c):
        return fn(n, c, **kwargs)

    if threads > 1 and len(cs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(one, cs))
    else:
        reports = [one(c) for c in cs]
    merged = merge_reports(reports)
    if len(cs) == 1:
        merged = replace(merged, c_hex=hexstr(cs[0]),
                         counterexamples=reports[0].counterexamples)
    return merged


def verify_prop(group: str, n: int, **kwargs) -> list[PropositionReport]:
    """All reports for statement group ``group`` ("1".."7")."""
    return [run_check(pid, n, **kwargs) for pid in PROP_GROUPS[str(group)]]


# -- catalog -----------------------------------------------------------------

FAMILIES = ("inverse", "tower")


def family_exponent(family: str, m: int) -> int:
    if family == "inverse":
        return (1 << m) - 2
    if family == "tower":
        if m % 4:
            raise UnsupportedFamily("tower needs a degree divisible by 4")
        return apcn_exponent(m // 4)
    raise UnsupportedFamily(f"{family!r} is not a characteristic-2 catalog family")


def resolve_c_set(field: GF2Field, c_set) -> list[int]:
    """``"unit_circle"``, ``"all"`` (every c outside {0, 1}), a hex string, or ints."""
    if c_set in ("unit_circle", "all_unit_circle"):
        if field.degree % 4:
            raise ValueError("the unit circle c-set needs a degree divisible by 4")
        return [int(c) for c in admissible_c(TowerView(field, field.degree // 4))]
    if c_set in ("all", "all_nonzero_nonone"):
        return list(range(2, field.size))
    if isinstance(c_set, str):
        return [int(c_set, 16)]
    if isinstance(c_set, int):
        return [c_set]
    return [int(c) for c in c_set]


def catalog_scan(family: str, m: int, c_set="unit_circle",
                 modulus: int | None = None, threads: int = 1) -> list[SpectrumRecord]:
    """Spectra of a characteristic-2 catalog family across a set of ``c``."""
    d = family_exponent(family, m)
    field = make_field(m, modulus)
    return power_spectra(PowerFunction(field, d), resolve_c_set(field, c_set), threads)


def apcn_points(records: Iterable[SpectrumRecord]) -> list[int]:
    """The ``c`` whose c-differential uniformity is 2.

    Both catalog families are permutations, so the ``a = 0`` row contributes
    1 and the uniformity is the spectrum's ``delta``.
    """
    return [r.c for r in records if r.delta == 2]


def catalog_report(family: str, m: int, c_set="unit_circle",
                   modulus: int | None = None, threads: int = 1,
                   records: list[SpectrumRecord] | None = None) -> PropositionReport:
    """CATALOG report; only the tower family on its unit circle is asserted."""
    start = time.perf_counter()
    if records is None:
        records = catalog_scan(family, m, c_set, modulus, threads)
    field = make_field(m, modulus)
    bad = []
    if family == "tower" and c_set in ("unit_circle", "all_unit_circle"):
        bad = [{"c": hexstr(r.c), "delta": r.delta} for r in records if r.delta != 2]
    return PropositionReport(prop_id="CATALOG", n=m // 4 if m % 4 == 0 else 0,
                             modulus=field.modulus_hex, cases_total=len(records),
                             cases_checked=len(records), counterexamples=tuple(bad),
                             elapsed_ms=_ms(start), mode=family)
