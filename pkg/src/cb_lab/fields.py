"""Exact scalar arithmetic over prime fields GF(p) and arbitrary-precision rationals.

Every computation in the toolkit runs over a FieldSpec: either GF(p) for a
prime p < 2**31 (elements are canonical int residues in [0, p)) or the
rational numbers (elements are reduced fractions.Fraction values).  No
floating point appears anywhere: verdicts are exact rank statements.

The heavy linear algebra works on raw elements (int / Fraction) through the
FieldSpec methods; the Scalar wrapper carries the field tag for API use and
catches cross-field mixing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZeroError, InvalidFieldError, MixedFieldsError

PRIME = "prime"
RATIONAL = "rational"

# Residues and their pairwise products must stay machine-word sized.
MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; bases (2,3,5,7) certify all n < 3_215_031_751."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: GF(p) (kind="prime") or the rationals (kind="rational")."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == PRIME:
            if not isinstance(self.p, int) or self.p < 2:
                raise InvalidFieldError(f"prime field needs an integer p >= 2, got {self.p!r}")
            if self.p >= MAX_PRIME:
                raise InvalidFieldError(f"p = {self.p} exceeds the 2**31 residue limit")
            if not is_prime(self.p):
                raise InvalidFieldError(f"p = {self.p} is composite")
        elif self.kind == RATIONAL:
            if self.p is not None:
                raise InvalidFieldError("rational field takes no modulus")
        else:
            raise InvalidFieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(PRIME, p)

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls(RATIONAL)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME

    def __str__(self) -> str:
        return f"GF({self.p})" if self.kind == PRIME else "Q"

    # ---- raw element arithmetic (int residues / Fractions) ----

    def zero(self):
        return 0 if self.kind == PRIME else Fraction(0)

    def one(self):
        return 1 if self.kind == PRIME else Fraction(1)

    def coerce(self, x):
        """Bring an int, Fraction or string into canonical element form."""
        if self.kind == PRIME:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise DivisionByZeroError(f"denominator of {x} vanishes mod {self.p}")
                return x.numerator * pow(x.denominator, self.p - 2, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, float):
            raise InvalidFieldError("floating point values are not accepted")
        return Fraction(x)

    def add(self, a, b):
        return (a + b) % self.p if self.kind == PRIME else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == PRIME else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == PRIME else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == PRIME else -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZeroError("inverse of zero")
        if self.kind == PRIME:
            return pow(a, self.p - 2, self.p)
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if self.kind == PRIME:
            return pow(a, e, self.p)
        return a**e

    def elements(self):
        """All field elements in canonical order (prime fields only)."""
        if self.kind != PRIME:
            raise InvalidFieldError("cannot enumerate the rationals")
        return range(self.p)

    def scalar(self, x) -> Scalar:
        return Scalar(self, x)

    # ---- JSON ----

    def to_json(self) -> dict:
        if self.kind == PRIME:
            return {"kind": PRIME, "p": self.p}
        return {"kind": RATIONAL}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        return cls(obj["kind"], obj.get("p"))

    def encode(self, x):
        """JSON value for one element: an int for GF(p), "num/den" for rationals."""
        if self.kind == PRIME:
            return int(x)
        f = Fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    def decode(self, v):
        if self.kind == PRIME:
            return int(v) % self.p
        return Fraction(v) if isinstance(v, str) else Fraction(int(v))


@dataclass(frozen=True)
class Scalar:
    """One field element in canonical form (residue in [0,p) or reduced fraction)."""

    field: FieldSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _coerce_other(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise MixedFieldsError(f"{self.field} vs {other.field}")
            return other
        return Scalar(self.field, other)

    def __add__(self, other):
        o = self._coerce_other(other)
        return Scalar(self.field, self.field.add(self.value, o.value))

    def __sub__(self, other):
        o = self._coerce_other(other)
        return Scalar(self.field, self.field.sub(self.value, o.value))

    def __mul__(self, other):
        o = self._coerce_other(other)
        return Scalar(self.field, self.field.mul(self.value, o.value))

    def __truediv__(self, other):
        o = self._coerce_other(other)
        return Scalar(self.field, self.field.div(self.value, o.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.pow(self.value, e))

    def inv(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __repr__(self) -> str:
        return f"Scalar({self.field}, {self.value})"

    def to_json(self):
        return self.field.encode(self.value)

    @classmethod
    def from_json(cls, field: FieldSpec, v) -> Scalar:
        return cls(field, field.decode(v))
