"""Arithmetic in binary fields GF(2^m), m <= 32, in a polynomial basis.

Elements are plain integers whose bit ``i`` is the coefficient of ``x^i``.
Every arithmetic method of :class:`GF2Field` accepts either Python integers
(exact scalar path, carry-less multiply and reduce) or NumPy integer arrays
(vectorized path, log/antilog tables for small degrees).  The two paths are
independent implementations and are cross-checked in the test-suite.

:class:`FieldElement` wraps an integer together with its field for callers
who want operator syntax and field-mismatch checking.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .errors import (
    BadTowerIndex,
    DegreeTooLarge,
    DivisionByZero,
    NoGeneratorFound,
    ReducibleModulus,
    SpecMismatch,
)

MAX_DEGREE = 32
# log/antilog tables cost 2 * 2^m int64 words; above this degree the vector
# path falls back to carry-less multiplication on uint64 lanes.
TABLE_MAX_DEGREE = 22

# Lowest-weight primitive polynomial per degree (smallest integer encoding
# among trinomials, then pentanomials).
DEFAULT_MODULI = {
    1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11D,
    9: 0x211, 10: 0x409, 11: 0x805, 12: 0x1053, 13: 0x201B, 14: 0x402B,
    15: 0x8003, 16: 0x1002D, 17: 0x20009, 18: 0x40081, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001B,
    25: 0x2000009, 26: 0x4000047, 27: 0x8000027, 28: 0x10000009,
    29: 0x20000005, 30: 0x40000053, 31: 0x80000009, 32: 0x1000000C5,
}

Value = Union[int, np.ndarray]


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


# -- GF(2)[x] helpers on integer bit-vectors --------------------------------

def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _mulmod(a: int, b: int, f: int, m: int) -> int:
    r = 0
    top = 1 << m
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= f
    return r


def is_irreducible(modulus: int) -> bool:
    """Rabin's irreducibility test over GF(2)."""
    m = modulus.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True

    def x_pow_2k(k):
        t = 2  # the class of x
        for _ in range(k):
            t = _mulmod(t, t, modulus, m)
        return t

    if x_pow_2k(m) != 2:
        return False
    for p in prime_factors(m):
        if poly_gcd(modulus, x_pow_2k(m // p) ^ 2) != 1:
            return False
    return True


class GF2Field:
    """The field GF(2^m) defined by an irreducible ``modulus``.

    Instances are immutable; lazily built lookup tables are initialized once
    under a lock and are read-only afterwards, so a field can be shared
    between threads.  Use :func:`make_field` to obtain cached instances.
    """

    def __init__(self, degree: int, modulus: int | None = None,
                 generator: int | None = None):
        if not 1 <= degree <= MAX_DEGREE:
            raise DegreeTooLarge(f"degree must be in 1..{MAX_DEGREE}, got {degree}")
        if modulus is None:
            modulus = DEFAULT_MODULI[degree]
        if modulus.bit_length() - 1 != degree:
            raise ValueError(f"modulus {modulus:#x} is not monic of degree {degree}")
        if not is_irreducible(modulus):
            raise ReducibleModulus(f"{modulus:#x} is reducible over GF(2)")
        self._m = degree
        self._mod = modulus
        self._n_units = (1 << degree) - 1
        self._factors = tuple(prime_factors(self._n_units)) if degree > 1 else ()
        if generator is None:
            generator = self._find_generator()
        elif not self.is_generator(generator):
            raise NoGeneratorFound(f"{generator:#x} is not primitive")
        self._gen = generator
        self._lock = threading.Lock()
        self._tables = None

    # -- descriptive properties --------------------------------------------
    @property
    def degree(self) -> int:
        return self._m

    @property
    def modulus(self) -> int:
        return self._mod

    @property
    def modulus_hex(self) -> str:
        return f"{self._mod:#x}"

    @property
    def generator(self) -> int:
        return self._gen

    @property
    def order_factors(self) -> tuple[int, ...]:
        return self._factors

    @property
    def size(self) -> int:
        return 1 << self._m

    @property
    def n_units(self) -> int:
        return self._n_units

    def __eq__(self, other):
        return (isinstance(other, GF2Field) and self._m == other._m
                and self._mod == other._mod)

    def __hash__(self):
        return hash((self._m, self._mod))

    def __repr__(self):
        return f"GF2Field(degree={self._m}, modulus={self._mod:#x})"

    def __reduce__(self):
        return (make_field, (self._m, self._mod))

    def element(self, value: int) -> FieldElement:
        return FieldElement(int(value), self)

    def elements(self) -> np.ndarray:
        """All field elements as an int64 array, in integer order."""
        return np.arange(self.size, dtype=np.int64)

    # -- generator discovery -------------------------------------------------
    def is_generator(self, g: int) -> bool:
        if not 0 < g < self.size:
            return False
        if self._pow_scalar(g, self._n_units) != 1:
            return False
        return all(self._pow_scalar(g, self._n_units // p) != 1
                   for p in self._factors)

    def _find_generator(self) -> int:
        if self._m == 1:
            return 1
        if self.is_generator(2):
            return 2
        rng = random.Random(self._mod)
        for _ in range(64):
            g = rng.randrange(2, self.size)
            if self.is_generator(g):
                return g
        for g in range(3, self.size):
            if self.is_generator(g):
                return g
        raise NoGeneratorFound(f"no primitive element for {self!r}")

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        order = self._n_units
        for p in self._factors:
            while order % p == 0 and self._pow_scalar(a, order // p) == 1:
                order //= p
        return order

    # -- tables --------------------------------------------------------------
    @property
    def has_tables(self) -> bool:
        return self._m <= TABLE_MAX_DEGREE

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """``(exp, log)`` with ``exp[i] = g^i`` and ``log[g^i] = i``; log[0] = 0."""
        if self._tables is None:
            with self._lock:
                if self._tables is None:
                    self._tables = self._build_tables()
        return self._tables

    def _build_tables(self):
        if not self.has_tables:
            raise DegreeTooLarge(f"log tables unavailable above degree {TABLE_MAX_DEGREE}")
        n = self._n_units
        exp = np.empty(n, dtype=np.int64)
        exp[0] = 1
        filled = 1
        step = self._gen
        # doubling: exp[k:2k] = exp[0:k] * g^k
        while filled < n:
            take = min(filled, n - filled)
            exp[filled:filled + take] = self._clmul_vec(exp[:take],
                                                        np.int64(step))
            filled += take
            step = self._mul_scalar(step, step)
        log = np.zeros(self.size, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        exp.setflags(write=False)
        log.setflags(write=False)
        return exp, log

    # -- scalar kernels ------------------------------------------------------
    def _mul_scalar(self, a: int, b: int) -> int:
        return _mulmod(a, b, self._mod, self._m)

    def _pow_scalar(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = _mulmod(r, a, self._mod, self._m)
            a = _mulmod(a, a, self._mod, self._m)
            e >>= 1
        return r

    # -- vector kernels ------------------------------------------------------
    def _clmul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a).astype(np.uint64)
        b = np.asarray(b).astype(np.uint64)
        one = np.uint64(1)
        r = np.zeros(np.broadcast(a, b).shape, dtype=np.uint64)
        for i in range(self._m):
            sh = np.uint64(i)
            r ^= np.where((b >> sh) & one, a << sh, np.uint64(0))
        mod = np.uint64(self._mod)
        for i in range(2 * self._m - 2, self._m - 1, -1):
            sh = np.uint64(i)
            r ^= np.where((r >> sh) & one, mod << np.uint64(i - self._m),
                          np.uint64(0))
        return r.astype(np.int64)

    def _mul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if not self.has_tables:
            return self._clmul_vec(a, b)
        exp, log = self.tables()
        s = log[a] + log[b]
        s = np.where(s >= self._n_units, s - self._n_units, s)
        return np.where((a == 0) | (b == 0), 0, exp[s])

    def _pow_vec(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if self.has_tables:
            exp, log = self.tables()
            r = exp[(log[a] * (e % self._n_units)) % self._n_units]
            return np.where(a == 0, 0, r)
        r = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                r = self._clmul_vec(r, base)
            base = self._clmul_vec(base, base)
            e >>= 1
        return r

    # -- public arithmetic (int or ndarray) ----------------------------------
    @staticmethod
    def _scalar(*xs) -> bool:
        return all(isinstance(x, (int, np.integer)) for x in xs)

    def add(self, a: Value, b: Value) -> Value:
        return a ^ b

    def mul(self, a: Value, b: Value) -> Value:
        if self._scalar(a, b):
            return self._mul_scalar(int(a), int(b))
        return self._mul_vec(a, b)

    def square(self, a: Value) -> Value:
        return self.mul(a, a)

    def pow(self, a: Value, e: int) -> Value:
        """``a^e``; ``0^0 = 1``.  Negative ``e`` uses the inverse.

        On arrays a negative exponent maps 0 to 0 instead of raising.
        """
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self._scalar(a):
            a = int(a)
            if a == 0:
                return 1 if e == 0 else 0
            if e == 0:
                return 1
            return self._pow_scalar(a, (e - 1) % self._n_units + 1)
        return self._pow_vec(a, e)

    def inv(self, a: Value) -> Value:
        """``a^(2^m - 2)``.  Scalars raise on 0; arrays map 0 to 0."""
        if self._scalar(a):
            if int(a) == 0:
                raise DivisionByZero("inverse of 0")
            return self._pow_scalar(int(a), self._n_units - 1)
        return self._pow_vec(a, self._n_units - 1)

    def div(self, a: Value, b: Value) -> Value:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: Value, k: int = 1) -> Value:
        """``a^(2^k)``."""
        k %= self._m
        if self._scalar(a):
            a = int(a)
            for _ in range(k):
                a = self._mul_scalar(a, a)
            return a
        return self._pow_vec(a, 1 << k)

    def sqrt(self, a: Value) -> Value:
        return self.frobenius(a, self._m - 1)

    def trace(self, a: Value, sub_degree: int = 1,
              from_degree: int | None = None) -> Value:
        """Relative trace from GF(2^from_degree) down to GF(2^sub_degree).

        ``from_degree`` defaults to the field degree; for a proper subfield
        the argument must already lie in it.
        """
        top = self._m if from_degree is None else from_degree
        if sub_degree < 1 or top % sub_degree or self._m % top:
            raise BadTowerIndex(f"no trace from degree {top} to {sub_degree}")
        acc = a
        conj = a
        for _ in range(top // sub_degree - 1):
            conj = self.frobenius(conj, sub_degree)
            acc = acc ^ conj
        return acc

    def in_subfield(self, a: Value, sub_degree: int):
        """True where ``a`` lies in GF(2^sub_degree)."""
        return self.frobenius(a, sub_degree) == a

    # -- serialization -------------------------------------------------------
    def to_hex(self, a: int) -> str:
        return f"{int(a):#x}"

    @staticmethod
    def from_hex(s: str) -> int:
        return int(s, 16)


@lru_cache(maxsize=None)
def make_field(m: int, modulus: int | None = None) -> GF2Field:
    """Validated, cached GF(2^m); ``modulus`` defaults to the built-in table."""
    return GF2Field(m, modulus)


def parse_modulus(text: str) -> tuple[int, int]:
    """Parse a hex modulus string into ``(degree, modulus)``."""
    mod = int(text, 16)
    return mod.bit_length() - 1, mod


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific :class:`GF2Field`."""

    value: int
    field: GF2Field

    def __post_init__(self):
        if not 0 <= self.value < self.field.size:
            raise ValueError(f"{self.value:#x} out of range for {self.field!r}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise SpecMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.element(other).value
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value ^ o)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.div(self.value, o))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def __neg__(self):
        return self

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def __repr__(self):
        return f"FieldElement({self.value:#x}, m={self.field.degree})"

    def hex(self) -> str:
        return f"{self.value:#x}"

    def inv(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))


def _check(a: FieldElement, b: FieldElement):
    if a.field != b.field:
        raise SpecMismatch(f"{a.field!r} vs {b.field!r}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    return FieldElement(a.value ^ b.value, a.field)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    return FieldElement(a.field.mul(a.value, b.value), a.field)


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field.inv(a.value), a.field)


def power(a: FieldElement, e: int) -> FieldElement:
    return FieldElement(a.field.pow(a.value, e), a.field)


def frobenius(a: FieldElement, k: int) -> FieldElement:
    if k < 0:
        raise ValueError("frobenius index must be non-negative")
    return FieldElement(a.field.frobenius(a.value, k), a.field)


def sqrt(a: FieldElement) -> FieldElement:
    return FieldElement(a.field.sqrt(a.value), a.field)


@dataclass(frozen=True)
class TowerView:
    """The chain GF(2) < GF(q) < GF(q^2) < GF(q^4) inside a degree-4n field."""

    ambient: GF2Field
    n: int

    def __post_init__(self):
        if self.n < 1 or self.ambient.degree != 4 * self.n:
            raise BadTowerIndex(
                f"ambient degree {self.ambient.degree} is not 4*{self.n}")

    @classmethod
    def of(cls, n: int, modulus: int | None = None) -> TowerView:
        return cls(make_field(4 * n, modulus), n)

    @property
    def q(self) -> int:
        return 1 << self.n

    def subfield_degree(self, k: int) -> int:
        if k not in (1, 2, 4):
            raise BadTowerIndex(f"tower level must be 1, 2 or 4, got {k}")
        return k * self.n


def rel_trace(a: FieldElement, tower: TowerView, sub_k: int) -> FieldElement:
    """Trace from the ambient field down to GF(2^(sub_k*n)).

    ``sub_k = 1`` is the trace to GF(q) (sum of the four q-conjugates),
    ``sub_k = 2`` the trace to GF(q^2); ``sub_k = 0`` selects the absolute
    trace to GF(2).
    """
    if a.field != tower.ambient:
        raise SpecMismatch("element is not in the tower's ambient field")
    if sub_k == 0:
        sub = 1
    elif sub_k in (1, 2):
        sub = sub_k * tower.n
    else:
        raise BadTowerIndex(f"sub_k must be 0, 1 or 2, got {sub_k}")
    return FieldElement(a.field.trace(a.value, sub), a.field)


def is_in_subfield(a: FieldElement, tower: TowerView, k: int) -> bool:
    if k not in (1, 2):
        raise BadTowerIndex(f"k must be 1 or 2, got {k}")
    return bool(a.field.in_subfield(a.value, tower.subfield_degree(k)))


# -- dense polynomials over the field ---------------------------------------

def poly_mul_coeffs(field: GF2Field, p: Sequence[Value],
                    r: Sequence[Value]) -> list:
    """Coefficient list of ``p * r``; entries may be ints or arrays."""
    out: list = [0] * (len(p) + len(r) - 1)
    for i, pi in enumerate(p):
        for j, rj in enumerate(r):
            out[i + j] = out[i + j] ^ field.mul(pi, rj)
    return out


def poly_eval_coeffs(field: GF2Field, coeffs: Sequence[Value], u: Value) -> Value:
    """Horner evaluation; broadcasts when coefficients or ``u`` are arrays."""
    acc = 0
    for c in reversed(coeffs):
        acc = field.mul(acc, u) ^ c
    return acc


@dataclass(frozen=True)
class Poly:
    """Dense polynomial with scalar coefficients, index = degree."""

    coeffs: tuple[int, ...]
    field: GF2Field

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(tuple(x ^ y for x, y in zip(a, b)), self.field)

    def __mul__(self, other: Poly) -> Poly:
        if not self.coeffs or not other.coeffs:
            return Poly((), self.field)
        return Poly(tuple(poly_mul_coeffs(self.field, self.coeffs, other.coeffs)),
                    self.field)

    def __call__(self, u: Value) -> Value:
        return poly_eval_coeffs(self.field, self.coeffs, u)

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0
