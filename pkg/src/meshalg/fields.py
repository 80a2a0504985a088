"""Exact scalar fields: the rationals and prime fields GF(p).

Every computation in this package is exact; scalars are either
`fractions.Fraction` (characteristic 0) or small nonnegative ints reduced
mod p (characteristic p).  Field objects are tiny immutable descriptors
that know how to do arithmetic on their scalar representation and how to
render scalars as exact strings ("-1", "3/2", residues mod p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Rationals:
    characteristic: int = 0

    def __repr__(self):
        return "QQ"

    @property
    def tag(self):
        return "Q"

    def of(self, n):
        return Fraction(n)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def to_str(self, a):
        return str(a)

    def from_str(self, s):
        return Fraction(s)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"not a prime: {self.p}")

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def characteristic(self):
        return self.p

    @property
    def tag(self):
        return f"GF{self.p}"

    def of(self, n):
        return n % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

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
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def to_str(self, a):
        return str(a % self.p)

    def from_str(self, s):
        return int(s) % self.p


QQ = Rationals()
GF2 = PrimeField(2)


def field_for_char(char: int):
    """The default field of a given characteristic (0 means the rationals)."""
    if char == 0:
        return QQ
    return PrimeField(char)
