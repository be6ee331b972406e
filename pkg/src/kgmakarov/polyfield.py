"""Dense univariate and one-parameter polynomials, rational functions, real roots.

Two scalar modes are supported and never mixed inside one computation:

``"exact"``
    :class:`fractions.Fraction` coefficients (``int`` is accepted and promoted).
``"float"``
    IEEE double coefficients.

Rational functions are stored as ``num / base**power`` where ``base`` is a
parameter-free monic polynomial in ``x``. Every coefficient function that the
iteration method meets in this package has that shape (``x`` or ``y(1-y)``),
and keeping the denominator as a power avoids the ``den**2`` blow-up of the
naive quotient rule.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

__all__ = [
    "EXACT",
    "FLOAT",
    "ModeMismatchError",
    "PoleError",
    "ZeroPolynomialError",
    "Poly",
    "ParamPoly",
    "RatFunc",
    "scalar_mode",
    "to_scalar",
    "poly_arith",
    "poly_derive",
    "ratfunc_derive",
    "evaluate",
    "poly_real_roots",
]

EXACT = "exact"
FLOAT = "float"


class ModeMismatchError(TypeError):
    """Exact and floating-point scalars were combined."""


class PoleError(ZeroDivisionError):
    """A denominator vanished at the requested evaluation point."""

    def __init__(self, x0):
        super().__init__(f"denominator vanishes at x0={x0!r}")
        self.x0 = x0


class ZeroPolynomialError(ValueError):
    pass


def scalar_mode(value) -> str | None:
    """Mode implied by a scalar; ``None`` for plain ints (valid in both modes)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return None
    if isinstance(value, Fraction):
        return EXACT
    if isinstance(value, (float, np.floating)):
        return FLOAT
    if isinstance(value, Rational):
        return EXACT
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def to_scalar(value, mode: str):
    """Convert ``value`` into ``mode``.

    Floats entering exact mode go through their shortest decimal repr, so
    ``0.3`` becomes ``3/10`` rather than the binary neighbour.
    """
    if mode == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (float, np.floating)):
            if not math.isfinite(value):
                raise ValueError(f"non-finite value {value!r} in exact mode")
            return Fraction(repr(float(value)))
        return Fraction(value)
    if mode == FLOAT:
        return float(value)
    raise ValueError(f"unknown scalar mode {mode!r}")


def _check_scalar(value, mode: str):
    vm = scalar_mode(value)
    if vm is not None and vm != mode:
        raise ModeMismatchError(f"{vm} scalar used in {mode} computation")
    return Fraction(value) if mode == EXACT else float(value)


def _infer_mode(values, mode: str | None) -> str:
    found = {m for m in map(scalar_mode, values) if m is not None}
    if len(found) > 1:
        raise ModeMismatchError("mixed exact and float coefficients")
    if mode is not None:
        if found and found != {mode}:
            raise ModeMismatchError(f"{found.pop()} coefficients given for {mode} mode")
        return mode
    return found.pop() if found else EXACT


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _conv(a: tuple, b: tuple, zero) -> list:
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def _addv(a: tuple, b: tuple, zero, sign=1) -> list:
    n = max(len(a), len(b))
    out = [zero] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = out[i] + v if sign > 0 else out[i] - v
    return out


class Poly:
    """Dense univariate polynomial, ``coeffs[k]`` multiplies ``x**k``.

    Instances are immutable and kept in canonical form (no trailing zeros).
    """

    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs=(), mode: str | None = None):
        coeffs = list(coeffs)
        self.mode = _infer_mode(coeffs, mode)
        conv = Fraction if self.mode == EXACT else float
        self.coeffs = _trim([conv(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs, mode):
        p = object.__new__(cls)
        p.coeffs = _trim(list(coeffs))
        p.mode = mode
        return p

    @classmethod
    def zero(cls, mode: str = EXACT) -> "Poly":
        return cls._raw((), mode)

    @classmethod
    def monomial(cls, k: int, c=1, mode: str = EXACT) -> "Poly":
        c = to_scalar(c, mode) if scalar_mode(c) in (None, mode) else _check_scalar(c, mode)
        zero = Fraction(0) if mode == EXACT else 0.0
        return cls._raw([zero] * k + [c], mode)

    @property
    def degree(self) -> int:
        """Degree; ``-1`` marks the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def _zero(self):
        return Fraction(0) if self.mode == EXACT else 0.0

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.mode != self.mode:
                raise ModeMismatchError(f"{self.mode} and {other.mode} polynomials combined")
            return other
        if isinstance(other, ParamPoly):
            return NotImplemented
        return Poly._raw([_check_scalar(other, self.mode)], self.mode)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(_addv(self.coeffs, other.coeffs, self._zero), self.mode)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(_addv(self.coeffs, other.coeffs, self._zero, -1), self.mode)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.mode)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(_conv(self.coeffs, other.coeffs, self._zero), self.mode)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly._raw([Fraction(1) if self.mode == EXACT else 1.0], self.mode)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        c = _check_scalar(c, self.mode)
        return Poly._raw([c * v for v in self.coeffs], self.mode)

    def derive(self) -> "Poly":
        return Poly._raw([k * c for k, c in enumerate(self.coeffs)][1:], self.mode)

    def __call__(self, x0):
        x0 = _check_scalar(x0, self.mode)
        acc = self._zero
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    eval = __call__

    @property
    def leading(self):
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        return self.scale(1 / self.leading)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(self.mode), self
        quot = [self._zero] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            q = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return Poly._raw(quot, self.mode), Poly._raw(rem[: len(other.coeffs) - 1], self.mode)

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd; exact mode only (float Euclid is not meaningful)."""
        if self.mode != EXACT:
            raise ValueError("polynomial gcd is only defined in exact mode")
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def to_float(self) -> "Poly":
        return Poly._raw([float(c) for c in self.coeffs], FLOAT)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.mode == other.mode and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.mode, self.coeffs))

    def __repr__(self):
        return f"Poly({[str(c) if self.mode == EXACT else c for c in self.coeffs]}, mode={self.mode!r})"


class ParamPoly:
    """Polynomial in ``x`` whose coefficients are polynomials in one parameter ``p``.

    ``rows[i][j]`` is the coefficient of ``x**i * p**j``.
    """

    __slots__ = ("rows", "mode")

    def __init__(self, rows=(), mode: str | None = None):
        rows = [list(r) for r in rows]
        self.mode = _infer_mode([c for r in rows for c in r], mode)
        conv = Fraction if self.mode == EXACT else float
        self.rows = self._canon([[conv(c) for c in r] for r in rows])

    @staticmethod
    def _canon(rows) -> tuple:
        rows = [_trim(list(r)) for r in rows]
        n = len(rows)
        while n and not rows[n - 1]:
            n -= 1
        return tuple(rows[:n])

    @classmethod
    def _raw(cls, rows, mode):
        p = object.__new__(cls)
        p.rows = cls._canon(rows)
        p.mode = mode
        return p

    @classmethod
    def from_x(cls, poly: Poly) -> "ParamPoly":
        """Embed a parameter-free polynomial in ``x``."""
        return cls._raw([(c,) for c in poly.coeffs], poly.mode)

    @classmethod
    def from_p(cls, poly: Poly) -> "ParamPoly":
        """Embed an ``x``-free polynomial in the parameter."""
        return cls._raw([poly.coeffs], poly.mode)

    @classmethod
    def zero(cls, mode: str = EXACT) -> "ParamPoly":
        return cls._raw((), mode)

    @property
    def _zero(self):
        return Fraction(0) if self.mode == EXACT else 0.0

    def is_zero(self) -> bool:
        return not self.rows

    @property
    def degree_x(self) -> int:
        return len(self.rows) - 1

    @property
    def degree_p(self) -> int:
        return max((len(r) - 1 for r in self.rows), default=-1)

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if other.mode != self.mode:
                raise ModeMismatchError(f"{self.mode} and {other.mode} polynomials combined")
            return other
        if isinstance(other, Poly):
            raise TypeError("ambiguous Poly operand; wrap it with ParamPoly.from_x or from_p")
        return ParamPoly._raw([(_check_scalar(other, self.mode),)], self.mode)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.rows), len(other.rows))
        rows = []
        for i in range(n):
            a = self.rows[i] if i < len(self.rows) else ()
            b = other.rows[i] if i < len(other.rows) else ()
            rows.append(_addv(a, b, self._zero))
        return ParamPoly._raw(rows, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw([[-c for c in r] for r in self.rows], self.mode)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.rows or not other.rows:
            return ParamPoly.zero(self.mode)
        zero = self._zero
        rows = [[] for _ in range(len(self.rows) + len(other.rows) - 1)]
        for i, ra in enumerate(self.rows):
            if not ra:
                continue
            for j, rb in enumerate(other.rows):
                if not rb:
                    continue
                prod = _conv(ra, rb, zero)
                rows[i + j] = _addv(tuple(rows[i + j]), tuple(prod), zero)
        return ParamPoly._raw(rows, self.mode)

    __rmul__ = __mul__

    def scale(self, c) -> "ParamPoly":
        c = _check_scalar(c, self.mode)
        return ParamPoly._raw([[c * v for v in r] for r in self.rows], self.mode)

    def mul_x(self, poly: Poly) -> "ParamPoly":
        """Multiply by a parameter-free polynomial in ``x``."""
        return self * ParamPoly.from_x(self._coerce_poly(poly))

    def _coerce_poly(self, poly: Poly) -> Poly:
        if poly.mode != self.mode:
            raise ModeMismatchError(f"{poly.mode} polynomial combined with {self.mode} ParamPoly")
        return poly

    def derive(self, wrt: str = "x") -> "ParamPoly":
        if wrt == "x":
            rows = [[i * c for c in r] for i, r in enumerate(self.rows)][1:]
        elif wrt in ("p", "parameter"):
            rows = [[j * c for j, c in enumerate(r)][1:] for r in self.rows]
        else:
            raise ValueError(f"wrt must be 'x' or 'parameter', got {wrt!r}")
        return ParamPoly._raw(rows, self.mode)

    def eval_x(self, x0) -> Poly:
        """Collapse ``x`` to a number; the result is a polynomial in the parameter."""
        x0 = _check_scalar(x0, self.mode)
        zero = self._zero
        acc: tuple = ()
        for r in reversed(self.rows):
            acc = tuple(_addv(tuple(c * x0 for c in acc), r, zero))
        return Poly._raw(acc, self.mode)

    def eval_p(self, p0) -> Poly:
        """Collapse the parameter; the result is a polynomial in ``x``."""
        p0 = _check_scalar(p0, self.mode)
        return Poly._raw([Poly._raw(r, self.mode)(p0) for r in self.rows], self.mode)

    def __call__(self, x0, p0=None):
        px = self.eval_x(x0)
        return px if p0 is None else px(p0)

    def to_float(self) -> "ParamPoly":
        return ParamPoly._raw([[float(c) for c in r] for r in self.rows], FLOAT)

    def max_abs_coeff(self) -> float:
        return max((abs(float(c)) for r in self.rows for c in r), default=0.0)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.mode == other.mode and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.mode, self.rows))

    def __repr__(self):
        return f"ParamPoly(deg_x={self.degree_x}, deg_p={self.degree_p}, mode={self.mode!r})"


class RatFunc:
    """``num / base**power`` with ``num`` a :class:`ParamPoly`.

    ``base`` is parameter-free and normalised to be monic; any leading
    coefficient is folded into ``num``. Sums and products require the two
    operands to share ``base`` (or one of them to have ``power == 0``).
    """

    __slots__ = ("num", "base", "power")

    def __init__(self, num: ParamPoly, base: Poly | None = None, power: int = 1):
        if base is None or power == 0:
            one = Fraction(1) if num.mode == EXACT else 1.0
            base, power = Poly._raw([one], num.mode), 0
        if base.mode != num.mode:
            raise ModeMismatchError("numerator and denominator modes differ")
        if base.is_zero():
            raise ZeroDivisionError("denominator is identically zero")
        if power < 0:
            raise ValueError("denominator power must be non-negative")
        lead = base.leading
        if lead != 1:
            base = base.scale(1 / lead)
            num = num.scale(1 / lead**power)
        if base.degree == 0:
            power = 0
        self.num, self.base, self.power = num, base, power

    @property
    def mode(self) -> str:
        return self.num.mode

    @property
    def den(self) -> ParamPoly:
        return ParamPoly.from_x(self.base**self.power)

    def _lift(self, other: "RatFunc") -> tuple[ParamPoly, ParamPoly, Poly, int]:
        if not isinstance(other, RatFunc):
            other = RatFunc(self.num._coerce(other))
        if other.mode != self.mode:
            raise ModeMismatchError(f"{self.mode} and {other.mode} rational functions combined")
        if self.power and other.power and self.base != other.base:
            raise ValueError("rational functions with different denominator bases")
        base = self.base if self.power else other.base
        k = max(self.power, other.power)
        a = self.num if self.power == k else self.num.mul_x(base ** (k - self.power))
        b = other.num if other.power == k else other.num.mul_x(base ** (k - other.power))
        return a, b, base, k

    def __add__(self, other):
        a, b, base, k = self._lift(other)
        return RatFunc(a + b, base, k)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, base, k = self._lift(other)
        return RatFunc(a - b, base, k)

    def __neg__(self):
        return RatFunc(-self.num, self.base, self.power)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(self.num._coerce(other))
        if other.mode != self.mode:
            raise ModeMismatchError(f"{self.mode} and {other.mode} rational functions combined")
        if self.power and other.power and self.base != other.base:
            raise ValueError("rational functions with different denominator bases")
        base = self.base if self.power else other.base
        return RatFunc(self.num * other.num, base, self.power + other.power)

    __rmul__ = __mul__

    def derive(self) -> "RatFunc":
        """Quotient rule specialised to a power denominator.

        ``d/dx [u / B**k] = (u' B - k u B') / B**(k+1)``; with ``k = 0`` this is
        just ``u'``.
        """
        du = self.num.derive("x")
        if self.power == 0:
            return RatFunc(du)
        b = self.base
        num = du.mul_x(b) - self.num.mul_x(b.derive()).scale(self.power)
        return RatFunc(num, b, self.power + 1)

    def eval(self, x0, p0=None):
        x0 = _check_scalar(x0, self.mode)
        d = self.base(x0) ** self.power
        if d == 0:
            raise PoleError(x0)
        val = self.num.eval_x(x0)
        if p0 is None:
            return val.scale(1 / d)
        return val(p0) / d

    __call__ = eval

    def to_float(self) -> "RatFunc":
        return RatFunc(self.num.to_float(), self.base.to_float(), self.power)

    def __repr__(self):
        return f"RatFunc({self.num!r} / ({self.base!r})**{self.power})"


def poly_arith(a: Poly, b, op: str) -> Poly:
    """``op`` in {add, sub, mul, scale}; ``b`` is a scalar for ``scale``."""
    if op == "add":
        return a + a._coerce(b)
    if op == "sub":
        return a - a._coerce(b)
    if op == "mul":
        return a * a._coerce(b)
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def poly_derive(p, wrt: str = "x"):
    if isinstance(p, Poly):
        if wrt != "x":
            return Poly.zero(p.mode)
        return p.derive()
    return p.derive(wrt)


def ratfunc_derive(f: RatFunc) -> RatFunc:
    return f.derive()


def evaluate(f, x0, p0=None):
    """Horner evaluation of a Poly, ParamPoly or RatFunc.

    For ParamPoly and RatFunc, omitting ``p0`` returns a Poly in the parameter.
    """
    if isinstance(f, Poly):
        return f(x0)
    return f(x0, p0)


# ---------------------------------------------------------------------------
# real roots

_DEDUP_TOL = 1e-9
_REFINE_TOL = 1e-12


def _cauchy_bound(p: Poly) -> float:
    lead = abs(float(p.leading))
    return 1.0 + max((abs(float(c)) / lead for c in p.coeffs[:-1]), default=0.0)


def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derive()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        r = chain[-2].divmod(chain[-1])[1]
        if r.is_zero():
            break
        chain.append(-r)
    return chain


def _sign_changes(chain: list[Poly], x) -> int:
    count, last = 0, 0
    for q in chain:
        v = q(x)
        if v:
            s = 1 if v > 0 else -1
            if last and s != last:
                count += 1
            last = s
    return count


def _bisect(p: Poly, lo, hi, tol: float):
    flo = p(lo)
    if flo == 0:
        return lo
    if p(hi) == 0:
        return hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = p(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def _exact_roots(p: Poly, lo: Fraction, hi: Fraction) -> list:
    g = p.gcd(p.derive())
    sq = p.divmod(g)[0] if g.degree > 0 else p
    if sq.degree < 1:
        return []
    chain = _sturm_chain(sq)
    out = []

    def isolate(a, b, va, vb):
        n = va - vb
        if n == 0:
            return
        if n == 1:
            if sq(a) == 0:
                # a is the root owned by the left neighbour; step inside (a, b]
                step = (b - a) / 2
                while sq(a + step) == 0 or _sign_changes(chain, a + step) != va:
                    step /= 2
                a = a + step
            # sq has simple roots, so (a, b] holds a sign change unless b is the root
            r = _bisect(sq, a, b, Fraction(1, 10**13))
            cand = Fraction(r).limit_denominator(10**6)
            out.append(cand if sq(cand) == 0 else r)
            return
        mid = (a + b) / 2
        vm = _sign_changes(chain, mid)
        isolate(a, mid, va, vm)
        isolate(mid, b, vm, vb)

    # Sturm counts roots in (a, b]; nudge the left end so a root at lo is kept
    a0 = lo - Fraction(1, 10**15) if sq(lo) == 0 else lo
    isolate(a0, hi, _sign_changes(chain, a0), _sign_changes(chain, hi))
    return sorted(out)


def _float_roots(p: Poly, lo: float, hi: float) -> list[float]:
    coeffs = np.array(p.coeffs[::-1], dtype=float)
    scale = 1.0 + max(abs(c) for c in p.coeffs)
    f = p
    fd = p.derive()
    out = []
    for z in np.roots(coeffs):
        c = float(z.real)
        if abs(z.imag) > 1e-4 * (1.0 + abs(c)):
            continue
        if c < lo - 1e-6 * (1 + abs(lo)) or c > hi + 1e-6 * (1 + abs(hi)):
            continue
        root = None
        w = 1e-12 * (1.0 + abs(c))
        while w < 1e-3 * (1.0 + abs(c)):
            a, b = c - w, c + w
            fa, fb = f(a), f(b)
            if fa == 0 or fb == 0 or (fa > 0) != (fb > 0):
                root = _bisect(f, a, b, _REFINE_TOL * max(1.0, abs(c)))
                break
            w *= 4.0
        if root is None and fd.degree >= 0:
            # no sign change: even multiplicity, polish on the derivative
            w = 1e-9 * (1.0 + abs(c))
            while w < 1e-3 * (1.0 + abs(c)):
                fa, fb = fd(c - w), fd(c + w)
                if fa == 0 or fb == 0 or (fa > 0) != (fb > 0):
                    r = _bisect(fd, c - w, c + w, _REFINE_TOL * max(1.0, abs(c)))
                    if abs(f(r)) <= 1e-8 * scale:
                        root = r
                    break
                w *= 4.0
        if root is not None and lo <= root <= hi:
            out.append(root)
    return out


def _dedup(roots: list) -> list:
    out = []
    for r in sorted(roots):
        if out and abs(float(r) - float(out[-1])) <= _DEDUP_TOL:
            # prefer an exact hit over its float neighbour
            if isinstance(r, Fraction) and not isinstance(out[-1], Fraction):
                out[-1] = r
            continue
        out.append(r)
    return out


def poly_real_roots(p: Poly, interval: tuple | None = None) -> list:
    """Sorted real roots of ``p`` in the closed ``interval`` (default: all reals).

    Exact mode isolates roots with a Sturm sequence of the square-free part
    and bisects with exact arithmetic; a root that is a small-denominator
    rational is returned as that :class:`~fractions.Fraction`. Float mode
    seeds from companion-matrix eigenvalues and refines by sign-change
    bisection. Roots closer than 1e-9 are merged.
    """
    if p.is_zero():
        raise ZeroPolynomialError("polynomial is identically zero: every value is a root")
    if p.degree == 0:
        return []
    bound = _cauchy_bound(p)
    lo, hi = (-bound, bound) if interval is None else interval
    if lo > hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if p.mode == EXACT:
        b = Fraction(math.ceil(bound))
        lo_e = max(to_scalar(lo, EXACT), -b)
        hi_e = min(to_scalar(hi, EXACT), b)
        if lo_e > hi_e:
            return []
        roots = _exact_roots(p, lo_e, hi_e)
    else:
        roots = _float_roots(p, float(max(lo, -bound)), float(min(hi, bound)))
    return _dedup(roots)
