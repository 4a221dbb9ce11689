"""Small Galois fields GF(p^k) with p^k <= 64.

Elements are integers 0 .. p^k - 1.  The base-p digits of an element,
least significant first, are the coefficients of its polynomial
representative, so element ``3`` of GF(9) is the class of ``x``.

Fixed moduli (monic, listed from the constant term up):

    GF(4)   x^2 + x + 1
    GF(8)   x^3 + x + 1
    GF(16)  x^4 + x + 1
    GF(9)   x^2 + 1
    GF(27)  x^3 + 2x + 1
    GF(25)  x^2 + 2
    GF(49)  x^2 + 1

Prime fields use the modulus ``x`` (plain arithmetic mod p).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import NotPrime, UnsupportedSize, ZeroInverse

MAX_ORDER = 64
MAX_DEGREE = 4

# coefficients low -> high, leading 1 included
_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(n**0.5) + 1))


def _polymod(coeffs: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    """Reduce ``coeffs`` modulo a monic ``modulus`` over GF(p)."""
    coeffs = [c % p for c in coeffs]
    k = len(modulus) - 1
    for deg in range(len(coeffs) - 1, k - 1, -1):
        lead = coeffs[deg]
        if lead:
            for i, m in enumerate(modulus):
                coeffs[deg - k + i] = (coeffs[deg - k + i] - lead * m) % p
    return (coeffs + [0] * k)[:k]


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1 .. k//2 divides ``modulus``."""
    k = len(modulus) - 1
    if k <= 1:
        return True
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            divisor = tuple(low) + (1,)
            if not any(_polymod(list(modulus), divisor, p)):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    """GF(p^k) with precomputed addition and multiplication tables."""

    p: int
    k: int
    modulus: tuple[int, ...]
    _add: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _mul: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def elements(self) -> range:
        return range(self.order)

    def coefficients(self, a: int) -> tuple[int, ...]:
        """Polynomial coefficients of element ``a``, constant term first."""
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coefficients(self, coeffs) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self.from_coefficients(-c for c in self.coefficients(a))

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        return self.pow(a, self.order - 2)

    def trace(self, a: int) -> int:
        """Absolute trace a + a^p + ... + a^(p^(k-1)); the result lies in GF(p)."""
        total, x = 0, a
        for _ in range(self.k):
            total = self.add(total, x)
            x = self.pow(x, self.p)
        return total


def build_field(p: int, k: int = 1) -> FiniteField:
    """Return GF(p^k) using the fixed modulus listed in the module docstring.

    Raises
    ------
    NotPrime
        If ``p`` is not prime.
    UnsupportedSize
        If ``k`` is outside 1..4 or ``p**k`` exceeds 64.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= k <= MAX_DEGREE or p**k > MAX_ORDER:
        raise UnsupportedSize(f"GF({p}^{k}) is outside the supported range p^k <= {MAX_ORDER}, k <= {MAX_DEGREE}")
    modulus = _MODULI.get((p, k), (0, 1))
    q = p**k

    def digits(a):
        out = []
        for _ in range(k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def pack(coeffs):
        return sum(c * p**i for i, c in enumerate(coeffs))

    add = tuple(
        tuple(pack([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q))
        for a in range(q)
    )
    mul_rows = []
    for a in range(q):
        da = digits(a)
        row = []
        for b in range(q):
            db = digits(b)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                for j, y in enumerate(db):
                    prod[i + j] += x * y
            row.append(pack(_polymod(prod, modulus, p)))
        mul_rows.append(tuple(row))
    return FiniteField(p=p, k=k, modulus=modulus, _add=add, _mul=tuple(mul_rows))


def field_arith(field: FiniteField, op: str, a: int, b: int) -> int:
    """Dispatch ``op`` in {add, mul, inv, pow}; ``b`` is the exponent for pow and ignored for inv."""
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(a)
    if op == "pow":
        return field.pow(a, b)
    raise ValueError(f"unknown field operation {op!r}")


def field_trace(field: FiniteField, a: int) -> int:
    return field.trace(a)
