"""Exact coefficient fields: the Gaussian rationals Q(i) and prime fields F_p.

Every feasibility verdict in this package rests on exact arithmetic, so both
backends implement field operations with no rounding anywhere.  Q(i) elements
are pairs of arbitrary-precision reduced fractions; F_p elements are plain
ints in [0, p), with all reductions done by the owning field object.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpq = Fraction


class ScalarContextError(ValueError):
    """Raised when scalars from different field contexts are mixed."""


class GaussianRational:
    """An element re + im*i of Q(i), both parts stored as reduced fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def inverse(self):
        """Multiplicative inverse, conj(z)/|z|^2."""
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def to_complex(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gaussian(self)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) or type(x) is type(mpq(0)):
        return GaussianRational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")


def _frac_str(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(z: GaussianRational) -> str:
    """Render as ``a/b``, ``c/d*i`` or ``a/b+c/d*i`` (sign folded into c)."""
    if not z.im:
        return _frac_str(z.re)
    im_part = f"{_frac_str(abs(z.im))}*i" if abs(z.im) != 1 else "i"
    if not z.re:
        return im_part if z.im > 0 else "-" + im_part
    sign = "+" if z.im > 0 else "-"
    return f"{_frac_str(z.re)}{sign}{im_part}"


def parse_gaussian(text: str) -> GaussianRational:
    """Inverse of :func:`format_gaussian`."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    # split into real and imaginary chunks at a top-level +/- (not a leading sign)
    split = None
    for k in range(1, len(s)):
        if s[k] in "+-" and s[k - 1] not in "+-/*":
            split = k
    if split is not None and "i" in s[split:]:
        re_part, im_part = s[:split], s[split:]
    elif "i" in s:
        re_part, im_part = "", s
    else:
        re_part, im_part = s, ""

    def frac(chunk):
        chunk = chunk.lstrip("+")
        return mpq(chunk) if chunk else mpq(0)

    re = frac(re_part)
    if not im_part:
        return GaussianRational(re, 0)
    body = im_part.replace("*i", "").replace("i", "").lstrip("+")
    if body == "":
        im = mpq(1)
    elif body == "-":
        im = mpq(-1)
    else:
        im = mpq(body)
    return GaussianRational(re, im)


class QI:
    """The field Q(i).  Stateless; all instances are interchangeable."""

    name = "qi"
    zero = GaussianRational(0)
    one = GaussianRational(1)

    def __eq__(self, other):
        return isinstance(other, QI)

    def __hash__(self):
        return hash("qi")

    def __repr__(self):
        return "QI()"

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return a.inverse()

    @staticmethod
    def is_zero(a):
        return not a

    @staticmethod
    def from_int(n):
        return GaussianRational(n)

    @staticmethod
    def format(a):
        return format_gaussian(a)

    @staticmethod
    def parse(s):
        return parse_gaussian(s)


class GF:
    """The prime field F_p.  Elements are ints in [0, p)."""

    name = "fp"

    def __init__(self, p: int):
        if p < 2 or not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, n):
        return n % self.p

    @staticmethod
    def format(a):
        return str(a)

    def parse(self, s):
        return int(s) % self.p


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 31-bit range used here."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng, bits: int = 31, residue_1_mod_4: bool = True) -> int:
    """Draw a random prime with the given bit length.

    Primes p = 1 (mod 4) are preferred so that Q(i) reduces into F_p
    (a square root of -1 exists).
    """
    while True:
        cand = rng.randrange(1 << (bits - 1), 1 << bits) | 1
        if residue_1_mod_4 and cand % 4 != 1:
            continue
        if is_prime(cand):
            return cand


def sqrt_minus_one(p: int) -> int:
    """A square root of -1 in F_p, requiring p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError(f"-1 is not a square mod {p}")
    # for prime p = 1 (mod 4), n^((p-1)/4) works for any non-residue n
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return pow(n, (p - 1) // 4, p)
    raise AssertionError("unreachable for prime p")
