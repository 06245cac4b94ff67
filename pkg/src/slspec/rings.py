"""Finite commutative rings with unity, realized as products of integer residue rings.

The ring universe is deliberately small: every ring is Z/n1 x ... x Z/nk with
componentwise operations.  Ideals of such a ring are componentwise principal,
so each ideal has a unique canonical generator tuple (one divisor of n_i per
component, with d_i = n_i encoding the zero component ideal).  Equality,
intersections, radicals, primality and the prime spectrum are then exact
integer computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator


class RingError(ValueError):
    """Structurally invalid ring or ideal construction."""


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def squarefree_kernel(n: int) -> int:
    """Product of the distinct primes dividing n (1 when n == 1)."""
    out, d, m = 1, 2, n
    while d * d <= m:
        if m % d == 0:
            out *= d
            while m % d == 0:
                m //= d
        d += 1
    return out * (m if m > 1 else 1)


@lru_cache(maxsize=None)
def is_prime_power(n: int) -> bool:
    return n > 1 and squarefree_kernel(n) > 1 and _is_prime(squarefree_kernel(n))


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FiniteRing:
    """Z/n1 x ... x Z/nk; immutable after construction."""

    def __init__(self, moduli: Iterable[int]):
        mods = tuple(int(n) for n in moduli)
        if not mods:
            raise RingError("empty modulus list")
        for n in mods:
            if n < 2:
                raise RingError(f"zero or trivial component ring: modulus {n}")
        self.moduli = mods
        self.arity = len(mods)
        self.cardinality = math.prod(mods)
        self._cache: dict = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteRing) and self.moduli == other.moduli

    def __hash__(self) -> int:
        return hash(("FiniteRing", self.moduli))

    def __repr__(self) -> str:
        return f"FiniteRing({list(self.moduli)})"

    @property
    def text(self) -> str:
        return "x".join(f"Z{n}" for n in self.moduli)

    def element(self, residues: Iterable[int]) -> "RingElement":
        res = tuple(int(r) % n for r, n in zip(residues, self.moduli, strict=True))
        return RingElement(self, res)

    @property
    def zero(self) -> "RingElement":
        return self.element([0] * self.arity)

    @property
    def one(self) -> "RingElement":
        return self.element([1] * self.arity)

    def elements(self) -> tuple["RingElement", ...]:
        """All elements, lexicographic on residue tuples."""
        if "elements" not in self._cache:
            self._cache["elements"] = tuple(
                RingElement(self, res) for res in product(*[range(n) for n in self.moduli])
            )
        return self._cache["elements"]

    def ideal(self, gens: Iterable[int]) -> "Ideal":
        """Componentwise principal ideal; generator g_i is canonicalized to gcd(g_i, n_i), with 0 -> n_i."""
        raw = tuple(int(g) for g in gens)
        if len(raw) != self.arity:
            raise RingError("generator tuple arity mismatch")
        canon = tuple(math.gcd(g, n) or n for g, n in zip(raw, self.moduli))
        return Ideal(self, canon)

    def ideal_from_elements(self, elems: Iterable["RingElement"]) -> "Ideal":
        gens = [0] * self.arity
        for e in elems:
            for i, r in enumerate(e.residues):
                gens[i] = math.gcd(gens[i], r)
        return self.ideal(gens)

    def principal(self, r: "RingElement") -> "Ideal":
        return self.ideal(r.residues)

    def zero_ideal(self) -> "Ideal":
        return self.ideal([0] * self.arity)

    def whole_ideal(self) -> "Ideal":
        return self.ideal([1] * self.arity)

    def ideals(self) -> tuple["Ideal", ...]:
        """All ideals, sorted by canonical generator tuples."""
        if "ideals" not in self._cache:
            self._cache["ideals"] = tuple(
                Ideal(self, gens) for gens in sorted(product(*[divisors(n) for n in self.moduli]))
            )
        return self._cache["ideals"]

    @property
    def is_field(self) -> bool:
        return self.arity == 1 and _is_prime(self.moduli[0])


@dataclass(frozen=True)
class RingElement:
    ring: FiniteRing
    residues: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != self.ring.arity:
            raise RingError("residue tuple arity mismatch")
        if any(not 0 <= r < n for r, n in zip(self.residues, self.ring.moduli)):
            raise RingError("residue out of range")

    def _binop(self, other: "RingElement", op) -> "RingElement":
        if self.ring != other.ring:
            raise RingError("elements of different rings")
        return self.ring.element(op(a, b) for a, b in zip(self.residues, other.residues))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    def __neg__(self):
        return self.ring.element(-r for r in self.residues)

    def __pow__(self, k: int):
        return self.ring.element(pow(r, k, n) for r, n in zip(self.residues, self.ring.moduli))

    @property
    def is_zero(self) -> bool:
        return all(r == 0 for r in self.residues)

    @property
    def is_unit(self) -> bool:
        return all(math.gcd(r, n) == 1 for r, n in zip(self.residues, self.ring.moduli))

    @property
    def text(self) -> str:
        if self.ring.arity == 1:
            return str(self.residues[0])
        return "(" + ",".join(map(str, self.residues)) + ")"

    def __repr__(self) -> str:
        return f"<{self.text} in {self.ring.text}>"


@dataclass(frozen=True)
class Ideal:
    """Canonical form: gens[i] is a divisor of moduli[i]; gens[i] == moduli[i] encodes the zero component."""

    ring: FiniteRing
    gens: tuple[int, ...]

    def __post_init__(self):
        for g, n in zip(self.gens, self.ring.moduli, strict=True):
            if g < 1 or n % g != 0:
                raise RingError(f"non-canonical ideal generator {g} for modulus {n}")

    def contains(self, elem: RingElement) -> bool:
        if elem.ring != self.ring:
            raise RingError("element of a different ring")
        return all(r % g == 0 for r, g in zip(elem.residues, self.gens))

    def elements(self) -> tuple[RingElement, ...]:
        ranges = [range(0, n, g) for g, n in zip(self.gens, self.ring.moduli)]
        return tuple(self.ring.element(res) for res in product(*ranges))

    @property
    def cardinality(self) -> int:
        return math.prod(n // g for g, n in zip(self.gens, self.ring.moduli))

    @property
    def is_whole(self) -> bool:
        return all(g == 1 for g in self.gens)

    @property
    def is_proper(self) -> bool:
        return not self.is_whole

    @property
    def is_zero(self) -> bool:
        return self.gens == self.ring.moduli

    def includes(self, other: "Ideal") -> bool:
        """Set containment self >= other (as subsets of the ring)."""
        if self.ring != other.ring:
            raise RingError("ideals of different rings")
        return all(og % g == 0 for g, og in zip(self.gens, other.gens))

    @property
    def text(self) -> str:
        # zero component ideals print as 0, matching the instance language
        return "(" + ",".join(str(g % n) for g, n in zip(self.gens, self.ring.moduli)) + ")"

    def __repr__(self) -> str:
        return f"<ideal {self.text} of {self.ring.text}>"

    def sort_key(self) -> tuple[int, ...]:
        return self.gens


def build_ring(moduli: Iterable[int]) -> FiniteRing:
    return FiniteRing(moduli)


def ideal_intersection(i: Ideal, j: Ideal) -> Ideal:
    if i.ring != j.ring:
        raise RingError("ideals of different rings")
    return Ideal(i.ring, tuple(math.lcm(a, b) for a, b in zip(i.gens, j.gens)))


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    if i.ring != j.ring:
        raise RingError("ideals of different rings")
    return Ideal(i.ring, tuple(math.gcd(a, b) for a, b in zip(i.gens, j.gens)))


def ideal_radical(i: Ideal) -> Ideal:
    return Ideal(i.ring, tuple(squarefree_kernel(g) for g in i.gens))


def is_prime_ideal(i: Ideal) -> bool:
    """Proper, and ab in I implies a in I or b in I.

    Componentwise form: the quotient is a domain exactly when a single
    component survives and is a prime field.  The definitional pair scan is
    kept as a test oracle.
    """
    nontrivial = [g for g in i.gens if g > 1]
    return len(nontrivial) == 1 and _is_prime(nontrivial[0])


def is_primary_ideal(i: Ideal) -> bool:
    """Proper, and ab in I implies a in I or b in radical(I)."""
    nontrivial = [g for g in i.gens if g > 1]
    return len(nontrivial) == 1 and is_prime_power(nontrivial[0])


def units_and_nilradical(ring: FiniteRing) -> tuple[frozenset[RingElement], Ideal]:
    units = frozenset(e for e in ring.elements() if e.is_unit)
    return units, ideal_radical(ring.zero_ideal())


def ring_idempotents(ring: FiniteRing) -> frozenset[RingElement]:
    return frozenset(e for e in ring.elements() if e * e == e)


def ring_spec(ring: FiniteRing) -> tuple[Ideal, ...]:
    """All prime ideals, sorted by canonical generator tuples."""
    if "spec" not in ring._cache:
        primes = [i for i in ring.ideals() if is_prime_ideal(i)]
        ring._cache["spec"] = tuple(sorted(primes, key=Ideal.sort_key))
    return ring._cache["spec"]


def prime_set_intersection(ring: FiniteRing, ideals: Iterable[Ideal]) -> Ideal:
    """Intersection of a (possibly empty) family of ideals; the whole ring for the empty family."""
    out = ring.whole_ideal()
    for i in ideals:
        out = ideal_intersection(out, i)
    return out


class QuotientRing:
    """R/I re-expressed as a product of residue rings.

    Components whose ideal generator is 1 collapse to the zero ring and are
    dropped; the surviving component for modulus n_i and generator d_i is
    Z/d_i (x |-> x mod d_i).  Carries the element surjection and the
    inclusion-preserving bijection between ideals of R containing I and
    ideals of R/I.
    """

    def __init__(self, ring: FiniteRing, ideal: Ideal):
        if ideal.ring != ring:
            raise RingError("ideal of a different ring")
        if ideal.is_whole:
            raise RingError("quotient is the zero ring")
        self.source = ring
        self.ideal = ideal
        self.kept = tuple(i for i, g in enumerate(ideal.gens) if g > 1)
        self.ring = FiniteRing(ideal.gens[i] for i in self.kept)

    def element(self, r: RingElement) -> RingElement:
        if r.ring != self.source:
            raise RingError("element of a different ring")
        return self.ring.element(r.residues[i] % self.ideal.gens[i] for i in self.kept)

    def ideal_to_quotient(self, j: Ideal) -> Ideal:
        if not j.includes(self.ideal):
            raise RingError("ideal does not contain the quotient kernel")
        return self.ring.ideal(j.gens[i] for i in self.kept)

    def ideal_from_quotient(self, jbar: Ideal) -> Ideal:
        if jbar.ring != self.ring:
            raise RingError("ideal of a different ring")
        gens = list(self.ideal.gens)
        for pos, i in enumerate(self.kept):
            gens[i] = jbar.gens[pos]
        return self.source.ideal(gens)


def quotient_ring(ring: FiniteRing, ideal: Ideal) -> QuotientRing:
    return QuotientRing(ring, ideal)
