"""Exact scalar domains.

Four coefficient domains, all with exact arithmetic and canonical forms:

* rationals (``fractions.Fraction``),
* the quadratic extension Q(theta) with theta^2 = theta - 1 (so theta is a
  primitive sixth root of unity, theta^3 = -1, theta^-1 = 1 - theta),
* prime fields F_p for p >= 5 (fast preview arithmetic only),
* univariate rational functions in one parameter ``lam`` over Q.

Every element is immutable; all operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction


class DomainError(ArithmeticError):
    """Invalid arithmetic request (bad modulus, division by zero, ...)."""


class PoleError(DomainError):
    """Evaluation of a rational function at a root of its denominator."""

    def __init__(self, root):
        super().__init__(f"denominator vanishes at {root}")
        self.root = root


# ---------------------------------------------------------------------------
# rationals

def rational_from_string(s: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction."""
    return Fraction(s)


def rational_to_string(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, used by the rational-function domain.
# Coefficient tuples are lowest-degree first with no trailing zeros; the zero
# polynomial is the empty tuple.

def poly_trim(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_deg(a) -> int:
    return len(a) - 1


def poly_add(a, b) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return poly_trim(out)


def poly_neg(a) -> tuple:
    return tuple(-v for v in a)


def poly_sub(a, b) -> tuple:
    return poly_add(a, poly_neg(b))


def poly_mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, va in enumerate(a):
        if va:
            for j, vb in enumerate(b):
                out[i + j] += va * vb
    return poly_trim(out)


def poly_scale(a, c) -> tuple:
    if not c:
        return ()
    return tuple(v * c for v in a)


def poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        coef = a[-1] / lead
        q[shift] = coef
        for i, v in enumerate(b):
            a[shift + i] -= coef * v
        a.pop()
    return poly_trim(q), poly_trim(a)


def poly_gcd(a, b) -> tuple:
    """Monic gcd over Q."""
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    return poly_monic(a)


def poly_monic(a) -> tuple:
    if not a:
        return ()
    lead = a[-1]
    if lead == 1:
        return tuple(a)
    return tuple(v / lead for v in a)


def poly_eval(a, x: Fraction) -> Fraction:
    out = Fraction(0)
    for v in reversed(a):
        out = out * x + v
    return out


def poly_str(a, var: str = "lam") -> str:
    if not a:
        return "0"
    parts = []
    for i, v in enumerate(a):
        if not v:
            continue
        if i == 0:
            parts.append(rational_to_string(v))
        elif i == 1:
            parts.append(f"{rational_to_string(v)}*{var}")
        else:
            parts.append(f"{rational_to_string(v)}*{var}^{i}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Q(theta), theta^2 = theta - 1

class Cyclotomic6:
    """Element a + b*theta of Q(theta) with theta^2 = theta - 1."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, *args):
        raise AttributeError("Cyclotomic6 values are immutable")

    def _coerce(self, other):
        if isinstance(other, Cyclotomic6):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic6(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic6(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic6(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic6(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # (a + b t)(c + d t) with t^2 = t - 1
        a, b, c, d = self.a, self.b, other.a, other.b
        return Cyclotomic6(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic6":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(theta)")
        return Cyclotomic6((self.a + self.b) / n, -self.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic6(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def norm(self) -> Fraction:
        """Field norm a^2 + a*b + b^2 (multiplicative)."""
        return self.a * self.a + self.a * self.b + self.b * self.b

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        if not self.b:
            return rational_to_string(self.a)
        if not self.a:
            return f"{rational_to_string(self.b)}*theta"
        return f"{rational_to_string(self.a)} + {rational_to_string(self.b)}*theta"


THETA = Cyclotomic6(0, 1)


# ---------------------------------------------------------------------------
# prime fields

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeFieldElement:
    """Residue in F_p, p a prime >= 5."""

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int):
        object.__setattr__(self, "residue", residue % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *args):
        raise AttributeError("PrimeFieldElement values are immutable")

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise DomainError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        if isinstance(other, Fraction):
            num = other.numerator % self.p
            den = other.denominator % self.p
            if den == 0:
                raise DomainError(f"denominator divisible by {self.p}")
            return PrimeFieldElement(num * pow(den, self.p - 2, self.p), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.residue + other.residue, self.p)

    __radd__ = __add__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.residue - other.residue, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.residue * other.residue, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.residue == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return PrimeFieldElement(pow(self.residue, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.residue == other.residue

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"{self.residue} (mod {self.p})"


# ---------------------------------------------------------------------------
# univariate rational functions in lam over Q

class UniRationalFunction:
    """Quotient of polynomials in lam over Q; denominator monic, gcd-reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        num = poly_trim(Fraction(v) for v in num)
        den = poly_trim(Fraction(v) for v in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = (Fraction(1),)
        else:
            g = poly_gcd(num, den)
            if poly_deg(g) > 0:
                num = poly_divmod(num, g)[0]
                den = poly_divmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = tuple(v / lead for v in num)
                den = tuple(v / lead for v in den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *args):
        raise AttributeError("UniRationalFunction values are immutable")

    @staticmethod
    def constant(c) -> "UniRationalFunction":
        return UniRationalFunction((Fraction(c),))

    def _coerce(self, other):
        if isinstance(other, UniRationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return UniRationalFunction.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        num = poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den))
        return UniRationalFunction(num, poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return UniRationalFunction(poly_neg(self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return UniRationalFunction(poly_mul(self.num, other.num),
                                   poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return UniRationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = UniRationalFunction.constant(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == (Fraction(1),)

    def degree(self) -> int:
        return poly_deg(self.num)

    def evaluate(self, lam0) -> Fraction:
        lam0 = Fraction(lam0)
        dv = poly_eval(self.den, lam0)
        if dv == 0:
            raise PoleError(lam0)
        return poly_eval(self.num, lam0) / dv

    def __repr__(self):
        if self.is_polynomial():
            return poly_str(self.num)
        return f"({poly_str(self.num)}) / ({poly_str(self.den)})"


LAM = UniRationalFunction((0, 1))


def evaluate_rational_function(f: UniRationalFunction, lam0) -> Fraction:
    """Exact value f(lam0); raises PoleError at a denominator root."""
    return f.evaluate(lam0)


# ---------------------------------------------------------------------------
# domain tags.  A domain bundles the constructors and predicates the generic
# polynomial and linear-algebra code needs, so every pipeline runs unchanged
# over any of the four coefficient types.

class Domain:
    name = "abstract"
    characteristic = 0

    def __repr__(self):
        return f"<domain {self.name}>"


class RationalDomain(Domain):
    name = "rational"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_rational(self, q) -> Fraction:
        return Fraction(q)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def serialize(self, x):
        return rational_to_string(x)

    def parse(self, obj):
        return Fraction(obj)


class Cyclotomic6Domain(Domain):
    name = "cyclotomic6"

    zero = Cyclotomic6(0)
    one = Cyclotomic6(1)

    def from_int(self, n: int) -> Cyclotomic6:
        return Cyclotomic6(n)

    def from_rational(self, q) -> Cyclotomic6:
        return Cyclotomic6(Fraction(q))

    def inv(self, x: Cyclotomic6) -> Cyclotomic6:
        return x.inverse()

    def serialize(self, x: Cyclotomic6):
        return {"a": rational_to_string(x.a), "b": rational_to_string(x.b)}

    def parse(self, obj) -> Cyclotomic6:
        if isinstance(obj, dict):
            return Cyclotomic6(Fraction(obj["a"]), Fraction(obj.get("b", 0)))
        return Cyclotomic6(Fraction(obj))


class PrimeFieldDomain(Domain):
    def __init__(self, p: int):
        if p in (2, 3) or not _is_prime(p):
            raise DomainError(f"modulus must be a prime >= 5, got {p}")
        self.p = p
        self.name = f"fp:{p}"
        self.characteristic = p
        self.zero = PrimeFieldElement(0, p)
        self.one = PrimeFieldElement(1, p)

    def from_int(self, n: int) -> PrimeFieldElement:
        return PrimeFieldElement(n, self.p)

    def from_rational(self, q) -> PrimeFieldElement:
        return self.zero._coerce(Fraction(q))

    def inv(self, x: PrimeFieldElement) -> PrimeFieldElement:
        return x.inverse()

    def serialize(self, x: PrimeFieldElement):
        return x.residue

    def parse(self, obj) -> PrimeFieldElement:
        return PrimeFieldElement(int(obj), self.p)


class RationalFunctionDomain(Domain):
    name = "qlam"

    zero = UniRationalFunction(())
    one = UniRationalFunction.constant(1)
    lam = LAM

    def from_int(self, n: int) -> UniRationalFunction:
        return UniRationalFunction.constant(n)

    def from_rational(self, q) -> UniRationalFunction:
        return UniRationalFunction.constant(Fraction(q))

    def inv(self, x: UniRationalFunction) -> UniRationalFunction:
        return x.inverse()

    def serialize(self, x: UniRationalFunction):
        return {"num": [rational_to_string(v) for v in x.num],
                "den": [rational_to_string(v) for v in x.den]}

    def parse(self, obj) -> UniRationalFunction:
        return UniRationalFunction([Fraction(v) for v in obj["num"]],
                                   [Fraction(v) for v in obj["den"]])


QQ = RationalDomain()
C6 = Cyclotomic6Domain()
QLAM = RationalFunctionDomain()

_fp_cache: dict[int, PrimeFieldDomain] = {}


def FP(p: int) -> PrimeFieldDomain:
    if p not in _fp_cache:
        _fp_cache[p] = PrimeFieldDomain(p)
    return _fp_cache[p]


def domain_by_name(name: str) -> Domain:
    """Resolve a CLI-style field name: rational, cyclotomic6, fp:<p>, qlam."""
    if name == "rational":
        return QQ
    if name == "cyclotomic6":
        return C6
    if name == "qlam":
        return QLAM
    if name.startswith("fp:"):
        return FP(int(name[3:]))
    raise DomainError(f"unknown scalar domain {name!r}")
