"""Base rings, exact element arithmetic, and ring homomorphism descriptors.

Supported rings: the integers, the rationals, prime fields, the Gaussian
integers, and integers mod n.  Elements are plain Python values (int,
Fraction, or an (re, im) int pair for Gaussian integers) kept in canonical
form; all arithmetic goes through the RingDesc methods so downstream code
never needs to know the representation.

Z/n is not a Euclidean domain; every normal-form computation over it is
done by lifting to the integers and appending n*identity relations (see
fpmodule).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, InputError, UnsupportedRing

INTEGERS = "Integers"
RATIONALS = "Rationals"
PRIME_FIELD = "PrimeField"
GAUSSIAN = "GaussianIntegers"
INTEGERS_MOD = "IntegersMod"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingDesc:
    kind: str
    modulus: int = 0  # n for IntegersMod, p for PrimeField

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, PRIME_FIELD, GAUSSIAN, INTEGERS_MOD):
            raise InputError(f"unknown ring kind {self.kind!r}")
        if self.kind == INTEGERS_MOD and self.modulus < 2:
            raise InputError("IntegersMod requires n >= 2")
        if self.kind == PRIME_FIELD and not _is_prime(self.modulus):
            raise InputError(f"PrimeField requires a prime, got {self.modulus}")

    # ---- structural predicates -------------------------------------------

    @property
    def is_euclidean(self):
        return self.kind != INTEGERS_MOD

    @property
    def is_field(self):
        return self.kind in (RATIONALS, PRIME_FIELD)

    @property
    def is_domain(self):
        return self.kind != INTEGERS_MOD

    def __str__(self):
        if self.kind in (INTEGERS_MOD, PRIME_FIELD):
            return f"{self.kind}({self.modulus})"
        return self.kind

    # ---- element construction --------------------------------------------

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, k):
        if self.kind == INTEGERS:
            return k
        if self.kind == RATIONALS:
            return Fraction(k)
        if self.kind in (PRIME_FIELD, INTEGERS_MOD):
            return k % self.modulus
        return (k, 0)

    def canon(self, a):
        """Bring an element into canonical form (residues reduced, etc.)."""
        if self.kind == INTEGERS:
            return int(a)
        if self.kind == RATIONALS:
            return Fraction(a)
        if self.kind in (PRIME_FIELD, INTEGERS_MOD):
            return int(a) % self.modulus
        re, im = a
        return (int(re), int(im))

    # ---- arithmetic ------------------------------------------------------

    def add(self, a, b):
        if self.kind == GAUSSIAN:
            return (a[0] + b[0], a[1] + b[1])
        if self.kind in (PRIME_FIELD, INTEGERS_MOD):
            return (a + b) % self.modulus
        return a + b

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.kind == GAUSSIAN:
            return (-a[0], -a[1])
        if self.kind in (PRIME_FIELD, INTEGERS_MOD):
            return (-a) % self.modulus
        return -a

    def mul(self, a, b):
        if self.kind == GAUSSIAN:
            return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
        if self.kind in (PRIME_FIELD, INTEGERS_MOD):
            return (a * b) % self.modulus
        return a * b

    def is_zero(self, a):
        if self.kind == GAUSSIAN:
            return a == (0, 0)
        return a == 0 or a == Fraction(0)

    def eq(self, a, b):
        return self.canon(a) == self.canon(b)

    def norm(self, a):
        """Euclidean norm: |a| on Z, a^2+b^2 on Z[i], 0/1 on fields."""
        if self.kind == INTEGERS:
            return abs(a)
        if self.kind == GAUSSIAN:
            return a[0] * a[0] + a[1] * a[1]
        return 0 if self.is_zero(a) else 1

    def is_unit(self, a):
        if self.kind == INTEGERS:
            return a in (1, -1)
        if self.kind == GAUSSIAN:
            return a in ((1, 0), (-1, 0), (0, 1), (0, -1))
        if self.is_field:
            return not self.is_zero(a)
        from math import gcd

        return gcd(a, self.modulus) == 1

    def unit_inverse(self, a):
        if not self.is_unit(a):
            raise InputError(f"{a!r} is not a unit in {self}")
        if self.kind == INTEGERS:
            return a
        if self.kind == GAUSSIAN:
            if a in ((1, 0), (-1, 0)):
                return a
            return (0, -a[1])  # i and -i are mutual inverses
        if self.kind == RATIONALS:
            return 1 / Fraction(a)
        return pow(a, -1, self.modulus)

    def normalize_assoc(self, a):
        """Return (d, u) with d = u*a canonical among the associates of a.

        Canonical choice: nonnegative on Z, monic 1 on fields, and the
        unique associate in the quadrant {re > 0, im >= 0} on Z[i].
        """
        if self.is_zero(a):
            return self.canon(a), self.one()
        if self.kind == INTEGERS:
            return (a, 1) if a > 0 else (-a, -1)
        if self.is_field:
            u = self.unit_inverse(a)
            return self.one(), u
        if self.kind == INTEGERS_MOD:
            raise UnsupportedRing("no associate normalization over IntegersMod")
        for u in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            d = self.mul(a, u)
            if d[0] > 0 and d[1] >= 0:
                return d, u
        raise AssertionError("unreachable: Z[i] associate normalization")

    def euclid_div(self, a, b):
        """Euclidean division a = q*b + r with norm(r) < norm(b)."""
        if not self.is_euclidean:
            raise UnsupportedRing(f"no Euclidean division over {self}")
        if self.is_zero(b):
            raise DivisionByZero("division by zero")
        if self.kind == INTEGERS:
            q, r = divmod(a, b)
            return q, r
        if self.is_field:
            return self.mul(a, self.unit_inverse(b)), self.zero()
        # Gaussian integers: round each rational coordinate of a/b to the
        # nearest integer, ties toward zero; the remainder then has norm
        # at most half of norm(b).
        nb = self.norm(b)
        conj = (b[0], -b[1])
        num = self.mul(a, conj)
        q = (_round_half_toward_zero(num[0], nb), _round_half_toward_zero(num[1], nb))
        r = self.sub(a, self.mul(q, b))
        assert self.norm(r) < nb
        return q, r

    def exact_div(self, a, b):
        """Return a/b if b divides a exactly, else None."""
        if self.is_zero(b):
            return self.zero() if self.is_zero(a) else None
        q, r = self.euclid_div(a, b)
        return q if self.is_zero(r) else None


def _round_half_toward_zero(num, den):
    """Round num/den (den > 0) to the nearest integer, ties toward zero."""
    q, r = divmod(num, den)
    if 2 * r > den:
        return q + 1
    if 2 * r == den:
        return q + 1 if q < 0 else q  # tie: move toward zero
    return q


ZZ = RingDesc(INTEGERS)
QQ = RingDesc(RATIONALS)
ZI = RingDesc(GAUSSIAN)


def Fp(p):
    return RingDesc(PRIME_FIELD, p)


def Zmod(n):
    return RingDesc(INTEGERS_MOD, n)


# ---------------------------------------------------------------------------
# Ring maps


EMBEDDING = "canonical embedding"
QUOTIENT = "canonical quotient"
FREE_EXTENSION = "free extension"

_SUPPORTED_MAPS = {
    (INTEGERS, RATIONALS): (EMBEDDING, True, False),
    (INTEGERS, GAUSSIAN): (FREE_EXTENSION, True, True),
    (INTEGERS, INTEGERS_MOD): (QUOTIENT, False, False),
}


@dataclass(frozen=True)
class RingMap:
    """A supported ring homomorphism with flatness metadata.

    The registered maps are Integers -> Rationals (flat, not faithfully
    flat), Integers -> GaussianIntegers (free of rank 2, faithfully flat)
    and Integers -> IntegersMod(n) (not flat).  Identity maps on any ring
    are also available.
    """

    source: RingDesc
    target: RingDesc
    kind: str
    flat: bool
    faithfully_flat: bool
    basis_size: int = 1

    def __post_init__(self):
        if self.faithfully_flat and not self.flat:
            raise InputError("faithfully flat ring maps must be flat")

    def apply(self, a):
        """Map a source element to a target element."""
        if self.source == self.target:
            return self.target.canon(a)
        if self.source.kind != INTEGERS:
            raise UnsupportedRing(f"unsupported ring map {self.source} -> {self.target}")
        return self.target.from_int(a)

    def basis_components(self, s):
        """Coordinates of a target element in the free source-basis.

        Only meaningful for free extensions (and identities).
        """
        if self.source == self.target:
            return [s]
        if self.target.kind == GAUSSIAN:
            return [s[0], s[1]]
        raise UnsupportedRing(f"{self.target} is not free over {self.source}")

    def __str__(self):
        return f"{self.source} -> {self.target}"


def ring_map(source, target):
    """Build the canonical map between two supported rings."""
    if source == target:
        return RingMap(source, target, EMBEDDING, True, True)
    key = (source.kind, target.kind)
    if key not in _SUPPORTED_MAPS:
        raise UnsupportedRing(f"unsupported ring map {source} -> {target}")
    kind, flat, ff = _SUPPORTED_MAPS[key]
    basis = 2 if target.kind == GAUSSIAN else 1
    return RingMap(source, target, kind, flat, ff, basis)
