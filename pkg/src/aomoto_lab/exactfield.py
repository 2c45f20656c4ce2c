"""Exact scalars: rationals, rational functions in kappa, big complex floats.

Three scalar kinds cover every computation in the package:

* plain `fractions.Fraction` for all arrangement-side linear algebra,
* `RatFuncKappa`, a reduced quotient of polynomials in the deformation
  parameter kappa with Fraction coefficients, for symbolic weights,
* `BigComplex`, a fixed-precision binary complex float (>= 128 bits,
  default 256) backed by mpmath, for monodromy and flat-section numerics.

Rationals serialize as strings "p/q"; rational functions as coefficient
lists, lowest degree first.
"""

import random
from fractions import Fraction

import mpmath

from .errors import ExhaustedRetries, PoleAtKappa, ZeroKappa

DEFAULT_PRECISION_BITS = 256
MIN_PRECISION_BITS = 128


def parse_rational(text):
    """Parse "p/q" (or "p") into a Fraction; raises ValueError on junk."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"expected rational string, got {text!r}")
    return Fraction(text.strip())


def format_rational(value):
    """Serialize a Fraction as the canonical string "p/q" (always with /q)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# polynomials over Q, coefficient tuples, lowest degree first; () is zero


def _ptrim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _padd(a, b):
    n = max(len(a), len(b))
    return _ptrim(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    )


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _ptrim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and _ptrim(r):
        r = list(_ptrim(r))
        if len(r) < len(b):
            break
        f = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = f
        for i, cb in enumerate(b):
            r[k + i] -= f * cb
        r = list(_ptrim(r))
    return _ptrim(q), _ptrim(r)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        lead = a[-1]
        a = tuple(c / lead for c in a)
    return a


def _peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


class RatFuncKappa:
    """A reduced rational function in kappa with Fraction coefficients.

    Internally num/den coefficient tuples, lowest degree first, with
    gcd(num, den) = 1 and den monic.  Behaves like a field scalar: all
    arithmetic coerces int and Fraction operands.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(Fraction(1),)):
        if isinstance(num, (int, Fraction)):
            num = (Fraction(num),)
        if isinstance(den, (int, Fraction)):
            den = (Fraction(den),)
        num = _ptrim(Fraction(c) for c in num)
        den = _ptrim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        g = _pgcd(num, den)
        if len(g) > 1 or (g and g[0] != 1):
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        self.num, self.den = num, den

    @classmethod
    def kappa(cls):
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def constant(cls, value):
        return cls((Fraction(value),))

    def is_constant(self):
        return len(self.num) <= 1 and self.den == (Fraction(1),)

    def as_fraction(self):
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return self.num[0] if self.num else Fraction(0)

    def pivot_size(self):
        return max(len(self.num), len(self.den))

    def _coerce(self, other):
        if isinstance(other, RatFuncKappa):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFuncKappa.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFuncKappa(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFuncKappa(_pneg(self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFuncKappa(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFuncKappa(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RatFuncKappa(num={self.num!r}, den={self.den!r})"

    def to_json(self):
        num = list(self.num) if self.num else [Fraction(0)]
        return {
            "num": [format_rational(c) for c in num],
            "den": [format_rational(c) for c in self.den],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            tuple(parse_rational(c) for c in data["num"]),
            tuple(parse_rational(c) for c in data["den"]),
        )


def specialize_kappa(value, kappa):
    """Evaluate a scalar at a concrete nonzero rational kappa.

    Fractions pass through unchanged.  Raises ZeroKappa for kappa = 0 and
    PoleAtKappa when the denominator vanishes at kappa.
    """
    kappa = Fraction(kappa)
    if kappa == 0:
        raise ZeroKappa("weights are defined only for nonzero kappa")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    den = _peval(value.den, kappa)
    if den == 0:
        raise PoleAtKappa(f"denominator vanishes at kappa = {kappa}")
    return _peval(value.num, kappa) / den


# ---------------------------------------------------------------------------
# fixed-precision complex floats


class BigComplex:
    """Complex number with recorded binary precision (>= 128 bits).

    Wraps an mpmath mpc; every operation runs at the larger precision of
    its operands and rounds to nearest.  Mixed arithmetic with int and
    Fraction converts the exact operand at the result precision.
    """

    __slots__ = ("value", "prec")

    def __init__(self, real=0, imag=0, prec=DEFAULT_PRECISION_BITS):
        if prec < MIN_PRECISION_BITS:
            raise ValueError(f"precision must be >= {MIN_PRECISION_BITS} bits")
        self.prec = int(prec)
        with mpmath.workprec(self.prec):
            if isinstance(real, (mpmath.mpc, complex)):
                self.value = mpmath.mpc(real) + mpmath.mpc(0, _to_mpf(imag))
            else:
                self.value = mpmath.mpc(_to_mpf(real), _to_mpf(imag))

    @classmethod
    def from_rational(cls, value, prec=DEFAULT_PRECISION_BITS):
        f = Fraction(value)
        with mpmath.workprec(prec):
            re = mpmath.mpf(f.numerator) / f.denominator
        return cls(re, 0, prec)

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag

    def _coerce(self, other):
        if isinstance(other, BigComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return BigComplex.from_rational(other, self.prec)
        if isinstance(other, (float, complex, mpmath.mpf, mpmath.mpc)):
            return BigComplex(mpmath.mpc(other), 0, self.prec)
        return None

    def _binary(self, other, op):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = max(self.prec, o.prec)
        with mpmath.workprec(prec):
            return BigComplex(op(self.value, o.value), 0, prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return BigComplex(-self.value, 0, self.prec)

    def __abs__(self):
        with mpmath.workprec(self.prec):
            return abs(self.value)

    def conjugate(self):
        with mpmath.workprec(self.prec):
            return BigComplex(mpmath.conj(self.value), 0, self.prec)

    def exp(self):
        with mpmath.workprec(self.prec):
            return BigComplex(mpmath.exp(self.value), 0, self.prec)

    def log(self):
        """Principal branch, cut along the negative real axis."""
        with mpmath.workprec(self.prec):
            return BigComplex(mpmath.log(self.value), 0, self.prec)

    def power(self, exponent):
        """Principal power exp(exponent * log self)."""
        e = self._coerce(exponent)
        prec = max(self.prec, e.prec)
        with mpmath.workprec(prec):
            return BigComplex(mpmath.exp(e.value * mpmath.log(self.value)), 0, prec)

    def is_zero(self):
        return self.value == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash(complex(self.value))

    def __complex__(self):
        return complex(self.value)

    def __repr__(self):
        return f"BigComplex({self.value}, prec={self.prec})"


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def big_abs(x):
    return abs(x) if isinstance(x, BigComplex) else abs(mpmath.mpf(x))


# ---------------------------------------------------------------------------
# deterministic sampling


def random_point_avoiding(forms, bound=10**6, seed=0, dimension=None, max_tries=1000):
    """A random integer point where none of the given affine forms vanish.

    Coordinates are drawn uniformly from [-bound, bound] with the seeded
    Mersenne generator, so results are reproducible bit for bit.  Raises
    ExhaustedRetries after max_tries failed draws.
    """
    if dimension is None:
        if not forms:
            raise ValueError("dimension is required when no forms are given")
        dimension = len(forms[0].gradient)
    rng = random.Random(seed)
    for _ in range(max_tries):
        point = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(dimension))
        if all(form.evaluate(point) != 0 for form in forms):
            return point
    raise ExhaustedRetries(
        f"no admissible point in [-{bound}, {bound}]^{dimension} after {max_tries} draws"
    )
