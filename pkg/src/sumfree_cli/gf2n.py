"""Arithmetic in GF(2^n) in polynomial basis.

Elements are n-bit integers; bit i is the coefficient of x^i. The field is
fixed by an irreducible modulus given as an (n+1)-bit integer.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from sumfree_cli.errors import PreconditionError

logger = logging.getLogger(__name__)

FieldElement = int

MAX_DEGREE = 16

# Default moduli, one per extension degree. Documented in docs/fields.md.
DEFAULT_MODULI: dict[int, int] = {
    1: 0x3,  # x + 1
    2: 0x7,  # x^2 + x + 1
    3: 0xB,  # x^3 + x + 1
    4: 0x13,  # x^4 + x + 1
    5: 0x25,  # x^5 + x^2 + 1
    6: 0x43,  # x^6 + x + 1
    7: 0x83,  # x^7 + x + 1
    8: 0x11D,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1009,  # x^12 + x^3 + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4021,  # x^14 + x^5 + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1002D,  # x^16 + x^5 + x^3 + x^2 + 1
}


def clmul(a: int, b: int) -> int:
    """Carry-less (polynomial) product of two bit vectors."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


def poly_mod(a: int, p: int) -> int:
    """Remainder of a modulo p as polynomials over F_2."""
    deg_p = p.bit_length() - 1
    while a.bit_length() - 1 >= deg_p:
        a ^= p << (a.bit_length() - 1 - deg_p)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for divisor in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(poly, divisor) == 0:
            return False
    return True


def _prime_factors(value: int) -> list[int]:
    factors = []
    d = 2
    while d * d <= value:
        if value % d == 0:
            factors.append(d)
            while value % d == 0:
                value //= d
        d += 1
    if value > 1:
        factors.append(value)
    return factors


def format_poly(poly: int) -> str:
    """Render a modulus as e.g. ``x^5 + x^2 + 1``."""
    terms = []
    for i in range(poly.bit_length() - 1, -1, -1):
        if (poly >> i) & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return " + ".join(terms) or "0"


@dataclass(frozen=True)
class FieldContext:
    """GF(2^n) defined by an irreducible modulus.

    Immutable after construction; every method is pure.
    """

    n: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DEGREE:
            raise PreconditionError(
                f"extension degree must be in [1, {MAX_DEGREE}], got {self.n}"
            )
        if self.modulus.bit_length() - 1 != self.n:
            raise PreconditionError(
                f"modulus {self.modulus:#x} does not have degree {self.n}"
            )
        if not is_irreducible(self.modulus):
            raise PreconditionError(
                f"modulus {self.modulus:#x} ({format_poly(self.modulus)}) "
                "is reducible over F_2"
            )

    @classmethod
    def default(cls, n: int) -> "FieldContext":
        """Field with the documented default modulus for degree n."""
        if n not in DEFAULT_MODULI:
            raise PreconditionError(
                f"extension degree must be in [1, {MAX_DEGREE}], got {n}"
            )
        return cls(n, DEFAULT_MODULI[n])

    @classmethod
    def create(cls, n: int, modulus: int | None = None) -> "FieldContext":
        """Field of degree n with the given modulus, or the default one."""
        if modulus is None:
            return cls.default(n)
        return cls(n, modulus)

    @property
    def order(self) -> int:
        return 1 << self.n

    def reduce(self, a: int) -> FieldElement:
        """Reduce a polynomial of any degree modulo the field modulus."""
        n = self.n
        for i in range(a.bit_length() - 1, n - 1, -1):
            if (a >> i) & 1:
                a ^= self.modulus << (i - n)
        return a

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.reduce(clmul(a, b))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        """a^e by square-and-multiply; pow(0, 0) is 1."""
        if e < 0:
            raise PreconditionError(f"negative exponent {e}")
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: FieldElement) -> FieldElement:
        if a == 0:
            raise PreconditionError("0 has no multiplicative inverse")
        return self.pow(a, self.order - 2)

    def trace(self, a: FieldElement) -> int:
        """Absolute trace tr(a) = a + a^2 + ... + a^(2^(n-1)), a bit."""
        total = a
        t = a
        for _ in range(self.n - 1):
            t = self.mul(t, t)
            total ^= t
        return total

    @cached_property
    def generator(self) -> FieldElement:
        """Least element of multiplicative order 2^n - 1."""
        group_order = self.order - 1
        if group_order == 1:
            return 1
        cofactors = [group_order // p for p in _prime_factors(group_order)]
        for g in range(2, self.order):
            if all(self.pow(g, c) != 1 for c in cofactors):
                return g
        raise AssertionError("multiplicative group is cyclic")  # pragma: no cover

    def describe(self) -> dict:
        """Summary used by ``sumfree field info``."""
        return {
            "n": self.n,
            "modulus": f"{self.modulus:#x}",
            "polynomial": format_poly(self.modulus),
            "generator": f"{self.generator:#x}",
            "order": self.order,
        }
