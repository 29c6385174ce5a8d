"""Exact coefficient fields: rationals, odd prime fields, cyclotomic extensions.

Every scalar is kept in a unique canonical form so that equality of
scalars is equality of representatives:

* rationals: Python int when integral, otherwise a reduced Fraction
  with positive denominator (Fraction normalizes on construction);
* prime field F_p: int residue in [0, p);
* cyclotomic field Q(w), w a primitive n-th root of unity: polynomial
  in w of degree < deg(Phi_n), reduced modulo the n-th cyclotomic
  polynomial Phi_n, with rational coefficients.

All arithmetic is exact; there is no rounding anywhere in the package.
Fields of characteristic 2 are rejected at construction.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import FieldMismatch


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# integer polynomial helpers (ascending coefficient lists) for Phi_n
# ---------------------------------------------------------------------------

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(num, den):
    """Exact division of integer polynomials; den is monic up to sign."""
    num = list(num)
    dlead = den[-1]
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % dlead == 0
        c //= dlead
        q[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    assert all(c == 0 for c in num)
    return q


def _moebius(n: int) -> int:
    mu, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            mu = -mu
        d += 1
    if n > 1:
        mu = -mu
    return mu


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending, via the Moebius product formula."""
    num, den = [1], [1]
    for d in range(1, n + 1):
        if n % d == 0:
            mu = _moebius(d)
            if mu == 0:
                continue
            factor = [-1] + [0] * (n // d - 1) + [1]  # x^(n/d) - 1
            if mu == 1:
                num = _poly_mul(num, factor)
            else:
                den = _poly_mul(den, factor)
    return tuple(_poly_divexact(num, den))


class _CycContext:
    """Shared reduction data for Q[x]/(Phi_n); one instance per n."""

    def __init__(self, n: int):
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.deg = len(self.phi) - 1
        # rows[k] = x^(deg+k) reduced mod Phi_n, for k = 0 .. deg-2
        rows = []
        cur = [-c for c in self.phi[:-1]]  # x^deg (Phi_n is monic)
        for _ in range(max(self.deg - 1, 0)):
            rows.append(tuple(cur))
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            if lead:
                nxt = [nxt[i] + lead * r for i, r in enumerate(rows[0])]
            cur = nxt
        self.rows = rows


def _q_canon(v):
    """Canonical rational raw value: int when integral, Fraction otherwise."""
    if type(v) is int:
        return v
    if v.denominator == 1:
        return v.numerator
    return v


class CycValue:
    """Element of Q[x]/(Phi_n): coefficient tuple of length deg(Phi_n).

    Supports +, -, * with other CycValue of the same order and with
    plain ints/Fractions, so generic bilinear kernels work unchanged.
    """

    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.c = tuple(_q_canon(x) for x in coeffs)

    @classmethod
    def from_scalar(cls, ctx, s):
        return cls(ctx, (s,) + (0,) * (ctx.deg - 1))

    @classmethod
    def reduce(cls, ctx, coeffs):
        d = ctx.deg
        low = list(coeffs[:d]) + [0] * (d - len(coeffs[:d]))
        for k, hi in enumerate(coeffs[d:]):
            if hi:
                row = ctx.rows[k]
                for i in range(d):
                    low[i] += hi * row[i]
        return cls(ctx, low)

    def _coerce(self, other):
        if isinstance(other, CycValue):
            if other.ctx.n != self.ctx.n:
                raise FieldMismatch("cyclotomic orders differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CycValue.from_scalar(self.ctx, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycValue(self.ctx, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycValue(self.ctx, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycValue(self.ctx, tuple(-a for a in self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return CycValue(self.ctx, tuple(a * other for a in self.c))
        conv = [0] * (2 * self.ctx.deg - 1)
        for i, ai in enumerate(self.c):
            if ai:
                for j, bj in enumerate(o.c):
                    if bj:
                        conv[i + j] += ai * bj
        return CycValue.reduce(self.ctx, conv)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = CycValue.from_scalar(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inv(self):
        """Inverse via extended Euclid in Q[x] against Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        a = [Fraction(c) for c in self.phi_list()]
        b = [Fraction(c) for c in self.c]
        # invariant: s*Phi + t*b0 == b  (only t is tracked)
        t0, t1 = [Fraction(0)], [Fraction(1)]
        r0, r1 = a, _trim(b)
        while len(r1) > 1 or r1[0] != 0:
            q, r = _poly_divmod_q(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_sub_q(t0, _poly_mul_q(q, t1))
        g = r0  # gcd, a nonzero constant since Phi_n is irreducible over Q
        scale = Fraction(1) / g[0]
        inv_coeffs = [c * scale for c in t0]
        return CycValue.reduce(self.ctx, inv_coeffs)

    def phi_list(self):
        return list(self.ctx.phi)

    def is_zero(self):
        return all(c == 0 for c in self.c)

    def __eq__(self, other):
        if isinstance(other, CycValue):
            return self.ctx.n == other.ctx.n and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and all(c == 0 for c in self.c[1:])
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.n, self.c))

    def __repr__(self):
        return f"CycValue(n={self.ctx.n}, {self.c})"


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_mul_q(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub_q(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod_q(num, den):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        q[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    return _trim(q), _trim(num)


# ---------------------------------------------------------------------------
# field descriptors
# ---------------------------------------------------------------------------

class Field:
    """Base class for the three coefficient fields.

    Subclasses implement arithmetic on *raw* canonical values (the
    representations listed in the module docstring); the Scalar wrapper
    provides the user-facing operator interface on top.
    """

    kind = "?"
    token = "?"
    char = 0
    kernel_mode = "obj"  # "obj": raw values support + and *; "modp": delayed reduction

    # -- raw arithmetic ----------------------------------------------------
    def canon(self, v):
        raise NotImplementedError

    def add(self, a, b):
        return self.canon(a + b)

    def sub(self, a, b):
        return self.canon(a - b)

    def mul(self, a, b):
        return self.canon(a * b)

    def neg(self, a):
        return self.canon(-a)

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a):
        return a == 0

    @property
    def zero(self):
        return Scalar(self, self._zero())

    @property
    def one(self):
        return Scalar(self, self._one())

    def _zero(self):
        return 0

    def _one(self):
        return 1

    # -- conversions -------------------------------------------------------
    def scalar(self, x) -> "Scalar":
        """Coerce x (Scalar, int, Fraction, str or raw value) into this field."""
        return Scalar(self, self.raw(x))

    def raw(self, x):
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"scalar from {x.field.token} used in {self.token}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        return self._from_number(x)

    def _from_number(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, v) -> str:
        raise NotImplementedError

    def format_needs_parens(self, v) -> bool:
        """Whether the formatted value must be parenthesized inside a product."""
        return False

    # -- sampling ----------------------------------------------------------
    def random(self, rng):
        """Raw scalar with small box coefficients; exact and reproducible."""
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            v = self.random(rng)
            if not self.is_zero(v):
                return v

    def sqrt(self, v):
        """A square root of v in this field, or None if v is not a square
        (or square detection is unsupported)."""
        return None

    def __ne__(self, other):
        return not self.__eq__(other)


class Rationals(Field):
    """The rational numbers with arbitrary-precision arithmetic."""

    kind = "rationals"
    token = "Q"
    char = 0

    def canon(self, v):
        return _q_canon(v)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return _q_canon(Fraction(1) / Fraction(a))

    def _from_number(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return _q_canon(x)
        raise TypeError(f"cannot interpret {x!r} as a rational")

    def parse(self, text: str):
        return _q_canon(Fraction(text.strip()))

    def format(self, v) -> str:
        return str(v)

    def random(self, rng):
        return rng.randint(-5, 5)

    def sqrt(self, v):
        f = Fraction(v)
        if f < 0:
            return None
        rn, rd = math.isqrt(f.numerator), math.isqrt(f.denominator)
        if rn * rn == f.numerator and rd * rd == f.denominator:
            return _q_canon(Fraction(rn, rd))
        return None

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField(Field):
    """F_p for an odd prime p; raw values are residues in [0, p)."""

    kind = "prime_field"
    kernel_mode = "modp"

    def __init__(self, p: int):
        if p == 2:
            raise FieldMismatch("characteristic 2 is not supported")
        if not _is_prime(p):
            raise FieldMismatch(f"{p} is not prime")
        self.p = p
        self.char = p
        self.token = f"F{p}"

    def canon(self, v):
        return v % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def _from_number(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator % self.p * self.inv(x.denominator % self.p) % self.p
        raise TypeError(f"cannot interpret {x!r} in F_{self.p}")

    def parse(self, text: str):
        return int(text.strip(), 10) % self.p

    def format(self, v) -> str:
        return str(v)

    def random(self, rng):
        return rng.randrange(self.p)

    def sqrt(self, v):
        v %= self.p
        if v == 0:
            return 0
        if pow(v, (self.p - 1) // 2, self.p) != 1:
            return None
        for r in range(1, self.p):  # p is small in practice
            if r * r % self.p == v:
                return r
        return None

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


_CYC_TERM = re.compile(r"^([+-]?[0-9/.]*)(w(\^([0-9]+))?)?$")


class CyclotomicField(Field):
    """Q(w) for w a primitive n-th root of unity, n >= 2.

    Represented as Q[x]/(Phi_n) so the coefficient ring is a field;
    scalars are written as polynomials in w, e.g. ``1+2w-w^2``.
    """

    kind = "cyclotomic"
    char = 0

    def __init__(self, n: int):
        if n < 2:
            raise FieldMismatch("cyclotomic order must be >= 2")
        self.n = n
        self.ctx = _CycContext(n)
        self.token = f"Cyc{n}"

    def canon(self, v):
        if isinstance(v, CycValue):
            return v
        return CycValue.from_scalar(self.ctx, _q_canon(Fraction(v)))

    def inv(self, a):
        return self.canon(a).inv()

    def is_zero(self, a):
        return self.canon(a).is_zero() if not isinstance(a, CycValue) else a.is_zero()

    def _zero(self):
        return CycValue.from_scalar(self.ctx, 0)

    def _one(self):
        return CycValue.from_scalar(self.ctx, 1)

    def _from_number(self, x):
        if isinstance(x, CycValue):
            if x.ctx.n != self.n:
                raise FieldMismatch("cyclotomic orders differ")
            return x
        if isinstance(x, (int, Fraction)):
            return CycValue.from_scalar(self.ctx, _q_canon(x))
        raise TypeError(f"cannot interpret {x!r} in {self.token}")

    def generator(self):
        """The class of x: a primitive n-th root of unity."""
        return CycValue.reduce(self.ctx, [0, 1])

    def parse(self, text: str):
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty scalar")
        coeffs = {}
        for chunk in _split_signed_terms(text):
            m = _CYC_TERM.match(chunk)
            if not m or (not m.group(1).strip("+-") and not m.group(2)):
                raise ValueError(f"bad cyclotomic term {chunk!r}")
            coef_text, has_w, _, pow_text = m.groups()
            coef_text = coef_text.rstrip("*") if coef_text else ""
            if coef_text in ("", "+"):
                coef = Fraction(1)
            elif coef_text == "-":
                coef = Fraction(-1)
            else:
                coef = Fraction(coef_text)
            power = 0
            if has_w:
                power = int(pow_text) if pow_text else 1
            coeffs[power] = coeffs.get(power, Fraction(0)) + coef
        top = max(coeffs) if coeffs else 0
        vec = [coeffs.get(k, 0) for k in range(top + 1)]
        return CycValue.reduce(self.ctx, vec)

    def format(self, v) -> str:
        v = self.canon(v)
        parts = []
        for k, c in enumerate(v.c):
            if c == 0:
                continue
            if k == 0:
                parts.append(Rationals().format(c))
                continue
            mono = "w" if k == 1 else f"w^{k}"
            if c == 1:
                term = mono
            elif c == -1:
                term = f"-{mono}"
            else:
                term = f"{Rationals().format(c)}{mono}"
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        return "".join(parts) if parts else "0"

    def format_needs_parens(self, v) -> bool:
        v = self.canon(v)
        support = sum(1 for c in v.c if c != 0)
        if support > 1:
            return True
        return any(c != 0 and k > 0 for k, c in enumerate(v.c))

    def random(self, rng):
        return CycValue(self.ctx, [rng.randint(-5, 5) for _ in range(self.ctx.deg)])

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("Cyc", self.n))

    def __repr__(self):
        return f"CyclotomicField({self.n})"


def _split_signed_terms(text: str):
    """Split on top-level + and - while keeping each term's sign."""
    terms, start, depth = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            if text[i - 1] not in "+-^*/(":
                terms.append(text[start:i])
                start = i
    terms.append(text[start:])
    return [t for t in terms if t not in ("", "+")]


def primitive_root(field: Field):
    """The distinguished primitive n-th root of unity of a cyclotomic field.

    Raises FieldMismatch for non-cyclotomic fields.
    """
    if not isinstance(field, CyclotomicField):
        raise FieldMismatch("primitive_root requires a cyclotomic field")
    return Scalar(field, field.generator())


def parse_field(token: str) -> Field:
    """Field from its text token: Q, F<p>, or Cyc<n>."""
    token = token.strip()
    if token in ("Q", "q"):
        return Rationals()
    m = re.fullmatch(r"[Ff](\d+)", token)
    if m:
        return PrimeField(int(m.group(1)))
    m = re.fullmatch(r"[Cc]yc(\d+)", token)
    if m:
        return CyclotomicField(int(m.group(1)))
    raise ValueError(f"unknown field token {token!r}")


class Scalar:
    """A field element: a raw canonical value paired with its field.

    Immutable; all operators are exact and raise FieldMismatch when the
    operands' fields differ.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.canon(value))

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    def _rhs(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(
                    f"cannot combine {self.field.token} and {other.field.token} scalars"
                )
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field._from_number(other)
        return None

    def __add__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.value, self.field.inv(v)))

    def __rtruediv__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, self.field.mul(v, self.field.inv(self.value)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return (self.inv()) ** (-k)
        out = self.field._one()
        base = self.value
        while k:
            if k & 1:
                out = self.field.mul(out, base)
            base = self.field.mul(base, base)
            k >>= 1
        return Scalar(self.field, out)

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field._from_number(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field.token}, {self})"
