"""c-differential counting, uniformity and spectra of power maps ``x^d``.

For a power map the count of ``F(x + a) + c F(x) = b`` depends only on
``b / a^d`` when ``a != 0``, so the whole picture is carried by the ``a = 1``
row plus the degenerate ``a = 0`` row ``(1 + c) F(x) = b``.
"""

from __future__ import annotations

import math
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .circle import admissible_c
from .errors import DegreeTooLarge, SpecMismatch
from .field import FieldElement, GF2Field, TowerView, make_field
from .records import PropositionReport, SpectrumRecord, hexstr

APCN_MAX_N = 5


def apcn_exponent(n: int) -> int:
    """``q^3 + q^2 + q - 1`` for ``q = 2^n``."""
    q = 1 << n
    return q ** 3 + q ** 2 + q - 1


def _value(field: GF2Field, x) -> int:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise SpecMismatch(f"{x.field!r} vs {field!r}")
        return x.value
    v = int(x)
    if not 0 <= v < field.size:
        raise ValueError(f"{v:#x} is not an element of {field!r}")
    return v


@lru_cache(maxsize=64)
def _power_table(field: GF2Field, d: int) -> np.ndarray:
    table = field.pow(field.elements(), d)
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class PowerFunction:
    """``F(x) = x^d`` on ``field``; ``0^0`` is taken as 1."""

    field: GF2Field
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("exponent must be non-negative")

    @property
    def is_permutation(self) -> bool:
        return math.gcd(self.d, self.field.n_units) == 1

    @property
    def table(self) -> np.ndarray:
        return _power_table(self.field, self.d)

    def __call__(self, x):
        return self.field.pow(x, self.d)

    def derivative_values(self, c, a) -> np.ndarray:
        """``F(x + a) + c F(x)`` for every ``x``, indexed by ``x``."""
        f = self.field
        c, a = _value(f, c), _value(f, a)
        t = self.table
        return t[f.elements() ^ a] ^ f.mul(np.int64(c), t)


def c_derivative_count(F: PowerFunction, c, a, b) -> int:
    """Number of ``x`` with ``F(x + a) + c F(x) = b``."""
    b = _value(F.field, b)
    return int(np.count_nonzero(F.derivative_values(c, a) == b))


def _row_max(F: PowerFunction, c, a) -> int:
    vals = F.derivative_values(c, a)
    return int(np.bincount(vals, minlength=F.field.size).max())


def c_uniformity(F: PowerFunction, c, include_a_zero: bool = True) -> int:
    """Max over ``(a, b)`` of the c-derivative count.

    The ``a != 0`` rows reduce to ``a = 1``.  The ``a = 0`` row is included
    only when ``include_a_zero`` is set and ``c != 1``; for ``c = 1`` it is
    the identically-zero derivative and is always left out.
    """
    c = _value(F.field, c)
    best = _row_max(F, c, 1) if F.field.size > 1 else 0
    if include_a_zero and c != 1:
        best = max(best, _row_max(F, c, 0))
    return best


class SpectrumKernel:
    """Reusable single-pass histogram of ``F(x + 1) + c F(x)`` over ``x``.

    The per-``c`` work is a table lookup, a XOR and two ``bincount`` calls.
    Instances are read-only after construction and may be shared by threads.
    """

    def __init__(self, F: PowerFunction):
        self.F = F
        f = F.field
        t = F.table
        self._shifted = t[f.elements() ^ 1]
        self._t = t
        self._zero = t == 0
        if f.has_tables:
            exp, log = f.tables()
            self._exp = exp
            self._log_t = log[t]

    def values(self, c: int) -> np.ndarray:
        f = self.F.field
        if c == 0:
            return self._shifted.copy()
        if f.has_tables:
            _, log = f.tables()
            s = self._log_t + int(log[c])
            s = np.where(s >= f.n_units, s - f.n_units, s)
            prod = np.where(self._zero, 0, self._exp[s])
        else:
            prod = f.mul(np.int64(c), self._t)
        return self._shifted ^ prod

    def histogram(self, c: int) -> np.ndarray:
        return np.bincount(self.values(c), minlength=self.F.field.size)

    def omega(self, c: int) -> tuple[int, ...]:
        return tuple(int(w) for w in np.bincount(self.histogram(c)))

    def record(self, c: int) -> SpectrumRecord:
        start = time.perf_counter()
        omega = self.omega(c)
        ms = int(round((time.perf_counter() - start) * 1000))
        return SpectrumRecord(c=c, d=self.F.d, delta=len(omega) - 1,
                              omega=omega, modulus=self.F.field.modulus_hex,
                              elapsed_ms=ms)


def default_threads() -> int:
    env = os.environ.get("FFA_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def power_spectrum(F: PowerFunction, c) -> SpectrumRecord:
    """c-differential spectrum at ``c`` (``a = 1`` row only)."""
    if not F.is_permutation:
        warnings.warn(f"x^{F.d} is not a permutation of {F.field!r}",
                      stacklevel=2)
    return SpectrumKernel(F).record(_value(F.field, c))


def power_spectra(F: PowerFunction, cs: Iterable, threads: int = 1) -> list[SpectrumRecord]:
    """Spectra for many ``c``; result order follows ``cs`` for any thread count."""
    kernel = SpectrumKernel(F)
    values = [_value(F.field, c) for c in cs]
    if threads <= 1 or len(values) < 2:
        return [kernel.record(c) for c in values]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(kernel.record, values))


def spectrum_formula(n: int) -> tuple[int, tuple[int, int, int]]:
    """Closed-form ``(delta, (omega0, omega1, omega2))`` for ``q = 2^n``."""
    if n < 1:
        raise ValueError("n must be positive")
    q = 1 << n
    half = (q ** 4 - q ** 2) // 2
    return 2, (half, q * q, half)


def apcn_power_function(n: int, modulus: int | None = None) -> PowerFunction:
    return PowerFunction(make_field(4 * n, modulus), apcn_exponent(n))


def verify_apcn(n: int, threads: int = 1, modulus: int | None = None,
                cs: Sequence[int] | None = None) -> PropositionReport:
    """Check the APcN claim and the spectrum for every admissible ``c``."""
    if not 1 <= n <= APCN_MAX_N:
        raise DegreeTooLarge(f"n must be in 1..{APCN_MAX_N}, got {n}")
    start = time.perf_counter()
    F = apcn_power_function(n, modulus)
    tower = TowerView(F.field, n)
    if cs is None:
        cs = [int(c) for c in admissible_c(tower)]
    delta, omega = spectrum_formula(n)
    bad = []
    for rec in power_spectra(F, cs, threads):
        if rec.delta != delta or rec.omega != omega:
            bad.append({"c": hexstr(rec.c), "delta": rec.delta,
                        "omega": list(rec.omega)})
    return PropositionReport(
        prop_id="APCN", n=n, modulus=F.field.modulus_hex,
        cases_total=len(cs), cases_checked=len(cs), counterexamples=tuple(bad),
        elapsed_ms=int(round((time.perf_counter() - start) * 1000)))
