"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/N)).

Every sign decision made by the rest of the package (positivity of
roots, positive definiteness of Gram blocks) goes through
:func:`exact_sign`, which never trusts a floating point value.
Elements are stored as polynomials in ``theta = 2cos(pi/N)`` reduced
modulo the minimal polynomial of ``theta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable

import mpmath

MAX_FIELD_N = 720

Poly = tuple  # coefficient tuple, lowest degree first


class FieldError(ValueError):
    """Raised for unsupported label combinations or mismatched fields."""


# -- small polynomial helpers over Q ---------------------------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_eval(p: Iterable, x):
    acc = 0
    for c in reversed(tuple(p)):
        acc = acc * x + c
    return acc


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(c) for c in a]
    b = _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        _trim(a)
    return _trim(q), a


def _poly_mul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                  for i in range(n)])


def chebyshev_two_cos(n: int) -> list[int]:
    """Integer polynomial P_n with P_n(2cos(phi)) = 2cos(n*phi)."""
    prev, cur = [2], [0, 1]
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, _trim(nxt)
    return cur


def _sturm_count(p: list, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    seq = [[Fraction(c) for c in p]]
    deriv = [Fraction(i * c) for i, c in enumerate(p)][1:]
    seq.append(_trim(deriv))
    while seq[-1]:
        _, r = _poly_divmod(seq[-2], seq[-1])
        seq.append([-c for c in r])
    seq.pop()

    def changes(x):
        signs = [s for s in (_sgn(_poly_eval(q, x)) for q in seq) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return changes(lo) - changes(hi)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


# -- the field --------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """The field Q(theta), theta = 2cos(pi/N), with a certified root interval."""

    N: int
    min_poly: tuple[int, ...]  # monic, lowest degree first
    degree: int
    isolating_interval: tuple[Fraction, Fraction]

    @property
    def theta_float(self) -> float:
        return 2 * math.cos(math.pi / self.N)

    def refine(self, bits: int) -> tuple[Fraction, Fraction]:
        """Isolating interval for theta of width at most 2**-bits."""
        return _refined_interval(self, bits)

    def zero(self) -> CycReal:
        return CycReal(self, (Fraction(0),) * self.degree)

    def one(self) -> CycReal:
        return self(1)

    def theta(self) -> CycReal:
        if self.degree == 1:
            return self(Fraction(-self.min_poly[0]))
        return CycReal(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def __call__(self, value) -> CycReal:
        """Embed a rational number."""
        if isinstance(value, CycReal):
            if value.field.N != self.N:
                raise FieldError(f"element of field N={value.field.N} used in N={self.N}")
            return value
        return CycReal(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))


def _primitive_conjugates(N: int) -> list[int]:
    return [k for k in range(1, N) if k % 2 == 1 and math.gcd(k, 2 * N) == 1]


@lru_cache(maxsize=None)
def _field_for(N: int) -> FieldSpec:
    if N > MAX_FIELD_N:
        raise FieldError(f"label lcm N={N} exceeds supported bound {MAX_FIELD_N}")
    ks = _primitive_conjugates(N) if N > 1 else [1]
    degree = len(ks)
    with mpmath.workdps(40 + 4 * degree):
        coeffs = [mpmath.mpf(1)]
        for k in ks:
            root = 2 * mpmath.cos(k * mpmath.pi / N)
            new = [mpmath.mpf(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                new[i + 1] += c
                new[i] -= root * c
            coeffs = new
        min_poly = [int(mpmath.nint(c)) for c in coeffs]
        theta_approx = 2 * mpmath.cos(mpmath.pi / N)
        gaps = [abs(theta_approx - 2 * mpmath.cos(k * mpmath.pi / N)) for k in ks[1:]]
        radius = min(gaps) / 4 if gaps else mpmath.mpf(1)
        lo = Fraction(str(mpmath.nstr(theta_approx - radius, 30)))
        hi = Fraction(str(mpmath.nstr(theta_approx + radius, 30)))

    # exact verification: min_poly | P_N(x) + 2, since P_N(theta) = 2cos(pi) = -2
    target = chebyshev_two_cos(N)
    target[0] += 2
    _, rem = _poly_divmod(target, min_poly)
    if rem or min_poly[-1] != 1 or len(min_poly) != degree + 1:
        raise FieldError(f"minimal polynomial construction failed for N={N}")
    if degree == 1:
        root = Fraction(-min_poly[0])
        interval = (root, root)
    else:
        if _sturm_count(min_poly, lo, hi) != 1:
            raise FieldError(f"could not isolate 2cos(pi/{N})")
        interval = (lo, hi)
    return FieldSpec(N=N, min_poly=tuple(min_poly), degree=degree, isolating_interval=interval)


def make_field(finite_labels: Iterable[int]) -> FieldSpec:
    """Field Q(2cos(pi/N)) with N the lcm of the finite edge labels (2 if none)."""
    labels = list(finite_labels)
    for m in labels:
        if not isinstance(m, int) or m < 2:
            raise FieldError(f"finite labels must be integers >= 2, got {m!r}")
    N = reduce(lambda a, b: a * b // math.gcd(a, b), labels, 1)
    return _field_for(max(N, 2))


_INTERVALS: dict[int, tuple[int, tuple[Fraction, Fraction]]] = {}


def _refined_interval(field: FieldSpec, bits: int) -> tuple[Fraction, Fraction]:
    lo, hi = field.isolating_interval
    if lo == hi:
        return lo, hi
    cached = _INTERVALS.get(field.N)
    if cached and cached[0] >= bits:
        return cached[1]
    if cached:
        lo, hi = cached[1]
    p = field.min_poly
    s_lo = _sgn(_poly_eval(p, lo))
    width = Fraction(1, 2 ** bits)
    while hi - lo > width:
        mid = (lo + hi) / 2
        # rounding the midpoint keeps denominators to powers of two
        mid = Fraction(math.floor(mid * 2 ** (bits + 2)), 2 ** (bits + 2))
        if not lo < mid < hi:
            mid = (lo + hi) / 2
        s_mid = _sgn(_poly_eval(p, mid))
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    _INTERVALS[field.N] = (bits, (lo, hi))
    return lo, hi


def _interval_poly(coeffs, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    a = b = Fraction(0)
    for c in reversed(coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


class CycReal:
    """Element of Q(2cos(pi/N)); immutable, hashable, exactly ordered."""

    __slots__ = ("field", "coeffs", "_sign")

    def __init__(self, field: FieldSpec, coeffs):
        self.field = field
        # integral coefficients are kept as int: matrix work stays in Z[theta] mostly
        self.coeffs = tuple(c.numerator if type(c) is Fraction and c.denominator == 1 else c
                            for c in coeffs)
        self._sign = None

    # -- coercion ----------------------------------------------------------
    def _coerce(self, other) -> CycReal | None:
        if isinstance(other, CycReal):
            if other.field.N != self.field.N:
                raise FieldError("mixing elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycReal(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycReal(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycReal(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycReal(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return CycReal(self.field, (self.coeffs[0] * o.coeffs[0],))
        prod = _poly_mul(self.coeffs, o.coeffs)
        mp = self.field.min_poly
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d):
                    prod[k - d + i] -= c * mp[i]
        return CycReal(self.field, tuple(prod[:d]) + (0,) * (d - len(prod[:d])))

    __rmul__ = __mul__

    def inverse(self) -> CycReal:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(2cos(pi/N))")
        d = self.field.degree
        if d == 1:
            return CycReal(self.field, (1 / Fraction(self.coeffs[0]),))
        # extended Euclid: s*self + t*min_poly = 1
        r0, r1 = [Fraction(c) for c in self.field.min_poly], _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        inv = [x / c for x in s1]
        _, inv = _poly_divmod(inv, list(self.field.min_poly))
        return CycReal(self.field, tuple(inv) + (Fraction(0),) * (d - len(inv)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycReal(self.field, tuple(Fraction(a) / other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- comparison ------------------------------------------------------------
    def is_zero(self) -> bool:
        # reduced representatives of nonzero elements cannot vanish at theta:
        # min_poly is irreducible and of larger degree
        return not any(self.coeffs)

    def sign(self) -> int:
        if self._sign is None:
            self._sign = exact_sign(self)
        return self._sign

    def __eq__(self, other):
        if isinstance(other, CycReal):
            return other.field.N == self.field.N and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field.N, self.coeffs))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(_poly_eval(self.coeffs, self.field.theta_float))

    @property
    def key(self) -> tuple:
        return self.coeffs

    def __str__(self):
        """Polynomial in theta = 2cos(pi/N), highest power first."""
        if not any(self.coeffs[1:]):
            return str(self.coeffs[0])
        parts = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else "θ" if i == 1 else f"θ^{i}"
            body = str(abs(c)) if not mono else mono if abs(c) == 1 else f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+") + body)
        text = "".join(parts)
        return text[1:] if text[0] == "+" else text

    def __repr__(self):
        if self.field.degree == 1:
            return f"CycReal({self.coeffs[0]})"
        terms = [f"{c}*θ^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return f"CycReal[N={self.field.N}]({' + '.join(terms) or '0'})"


def exact_sign(x: CycReal) -> int:
    """Sign of the real number represented by ``x``; exact, never approximate."""
    if x.is_zero():
        return 0
    field = x.field
    if field.degree == 1:
        return _sgn(x.coeffs[0])
    bits = 64
    while True:
        lo, hi = field.refine(bits)
        a, b = _interval_poly(x.coeffs, lo, hi)
        if a > 0:
            return 1
        if b < 0:
            return -1
        bits *= 2


def embed_two_cos(m, field: FieldSpec) -> CycReal:
    """2cos(pi/m) as an element of ``field``; m = infinity gives 2."""
    if m == math.inf:
        return field(2)
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"bad label {m!r}")
    if m == 1:
        return field(-2)
    if field.N % m:
        raise FieldError(f"label {m} does not divide N={field.N}")
    # 2cos(pi/m) = 2cos((N/m) * pi/N) = P_{N/m}(theta)
    poly = chebyshev_two_cos(field.N // m)
    theta = field.theta()
    acc = field.zero()
    for c in reversed(poly):
        acc = acc * theta + c
    return acc
