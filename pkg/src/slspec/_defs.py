"""Definition-level provider: every quantity recomputed from the raw definitions.

This is the second, independent route used to re-validate failure witnesses
and to cross-check the optimized provider in the test suite.  Annihilators
come from full scalar scans, radicals from power scans, primality from pair
scans, second/secondary from orbit scans, socles from sums over the second
submodules, and the lattice itself from join closure of cyclic submodules.
Only the elementary set calculus (FiniteTopology, map reports) is shared.
"""

from __future__ import annotations

import math
from functools import cached_property

from .maps import SpectrumMap, map_report
from .modules import (
    FiniteModule,
    Submodule,
    canonical_sort,
    enumerate_submodules,
    enumerate_submodules_joinclosure,
)
from .rings import FiniteRing, Ideal, RingElement, quotient_ring
from .topology import FiniteTopology


class DefProvider:
    """Provider over raw definitions, for rechecks and oracle tests."""

    def __init__(self, module: FiniteModule):
        self.module = module
        self._soc: dict[int, Submodule] = {}
        self._ann: dict[int, Ideal] = {}

    # -- elementary scans -------------------------------------------------

    @cached_property
    def submodules(self) -> tuple[Submodule, ...]:
        if self.module.size <= 512:
            return enumerate_submodules_joinclosure(self.module)
        return enumerate_submodules(self.module)

    def ann(self, sub: Submodule) -> Ideal:
        if sub.mask not in self._ann:
            ring = self.module.ring
            killers = [
                r
                for r in ring.elements()
                if not self.module.scalar_table(r)[sub.indices].any()
            ]
            self._ann[sub.mask] = ring.ideal_from_elements(killers) if killers else ring.ideal([1] * ring.arity)
        return self._ann[sub.mask]

    def radical_ideal(self, ideal: Ideal) -> Ideal:
        ring = ideal.ring
        bound = ring.cardinality
        members = []
        for r in ring.elements():
            power = r
            for _ in range(bound):
                if ideal.contains(power):
                    members.append(r)
                    break
                power = power * r
        return ring.ideal_from_elements(members)

    def radann(self, sub: Submodule) -> Ideal:
        return self.radical_ideal(self.ann(sub))

    def is_prime(self, ideal: Ideal) -> bool:
        if not ideal.is_proper:
            return False
        elems = ideal.ring.elements()
        return all(
            not ideal.contains(a * b) or ideal.contains(a) or ideal.contains(b)
            for a in elems
            for b in elems
        )

    def is_primary(self, ideal: Ideal) -> bool:
        if not ideal.is_proper:
            return False
        rad = self.radical_ideal(ideal)
        elems = ideal.ring.elements()
        return all(
            not ideal.contains(a * b) or ideal.contains(a) or rad.contains(b)
            for a in elems
            for b in elems
        )

    @cached_property
    def ring_primes(self) -> tuple[Ideal, ...]:
        return tuple(sorted((i for i in self.module.ring.ideals() if self.is_prime(i)), key=Ideal.sort_key))

    def annm(self, ideal: Ideal) -> Submodule:
        m = self.module
        killed = [
            x
            for x in range(m.size)
            if all(int(m.scalar_table(r)[x]) == 0 for r in ideal.elements())
        ]
        return m.submodule_from_indices(killed)

    def _scalar_image(self, sub: Submodule, r: RingElement) -> frozenset[int]:
        return frozenset(int(i) for i in self.module.scalar_table(r)[sub.indices])

    def is_second(self, sub: Submodule) -> bool:
        if sub.is_zero:
            return False
        own = frozenset(int(i) for i in sub.indices)
        for r in self.module.ring.elements():
            img = self._scalar_image(sub, r)
            if img != own and img != {0}:
                return False
        return True

    def is_secondary(self, sub: Submodule) -> bool:
        if sub.is_zero:
            return False
        own = frozenset(int(i) for i in sub.indices)
        for r in self.module.ring.elements():
            if self._scalar_image(sub, r) == own:
                continue
            # some power of r must kill the submodule
            cur = sub.indices
            killed = False
            for _ in range(self.module.ring.cardinality):
                cur = self.module.scalar_table(r)[cur]
                if not cur.any():
                    killed = True
                    break
            if not killed:
                return False
        return True

    def soc(self, sub: Submodule) -> Submodule:
        if sub.mask not in self._soc:
            from .modules import submodule_sum

            out = self.module.zero_submodule
            for s in self.submodules:
                if self.is_second(s) and sub.contains(s):
                    out = submodule_sum(out, s)
            self._soc[sub.mask] = out
        return self._soc[sub.mask]

    # -- spectra and varieties --------------------------------------------

    @cached_property
    def spec_s_points(self) -> tuple[Submodule, ...]:
        return tuple(s for s in self.submodules if self.is_second(s))

    @cached_property
    def spec_l_points(self) -> tuple[Submodule, ...]:
        return tuple(
            k
            for k in self.submodules
            if not k.is_zero
            and self.is_secondary(k)
            and self.ann(self.soc(k)) == self.radann(k)
        )

    @cached_property
    def _l_index(self) -> dict[int, int]:
        return {k.mask: i for i, k in enumerate(self.spec_l_points)}

    @cached_property
    def _s_index(self) -> dict[int, int]:
        return {s.mask: i for i, s in enumerate(self.spec_s_points)}

    def spec_l_index(self, sub: Submodule) -> int:
        return self._l_index[sub.mask]

    @property
    def spec_l_full(self) -> frozenset[int]:
        return frozenset(range(len(self.spec_l_points)))

    @property
    def spec_s_full(self) -> frozenset[int]:
        return frozenset(range(len(self.spec_s_points)))

    def nu_s(self, sub: Submodule) -> frozenset[int]:
        ann = self.ann(sub)
        return frozenset(
            i for i, k in enumerate(self.spec_l_points) if self.radann(k).includes(ann)
        )

    def nu_star(self, sub: Submodule) -> frozenset[int]:
        return frozenset(
            i for i, k in enumerate(self.spec_l_points) if sub.contains(self.soc(k))
        )

    def v_s(self, sub: Submodule) -> frozenset[int]:
        ann = self.ann(sub)
        return frozenset(
            i for i, s in enumerate(self.spec_s_points) if self.ann(s).includes(ann)
        )

    def v_star(self, sub: Submodule) -> frozenset[int]:
        return frozenset(
            i for i, s in enumerate(self.spec_s_points) if sub.contains(s)
        )

    def fibers(self) -> dict[Ideal, frozenset[int]]:
        return {
            p: frozenset(
                i for i, k in enumerate(self.spec_l_points) if self.radann(k) == p
            )
            for p in self.ring_primes
        }

    @cached_property
    def minimal(self) -> tuple[Submodule, ...]:
        out = []
        for s in self.submodules:
            if s.is_zero:
                continue
            if all(t.is_zero or t.mask == s.mask for t in self.submodules if s.contains(t)):
                out.append(s)
        return tuple(out)

    @cached_property
    def secondary_subs(self) -> tuple[Submodule, ...]:
        return tuple(s for s in self.submodules if self.is_secondary(s))

    # -- spaces -------------------------------------------------------------

    @cached_property
    def sl_space(self) -> FiniteTopology:
        family = {self.nu_s(n) for n in self.submodules}
        return FiniteTopology(self.spec_l_points, family, kind="SL-def", module=self.module)

    @cached_property
    def second_space(self) -> FiniteTopology:
        family = {self.v_s(n) for n in self.submodules}
        return FiniteTopology(
            self.spec_s_points, family, kind="second-def", module=self.module
        )

    @cached_property
    def qr(self):
        full = self.module.submodule((1 << self.module.size) - 1)
        return quotient_ring(self.module.ring, self.ann(full))

    @cached_property
    def rbar_space(self) -> FiniteTopology:
        ring = self.qr.ring
        points = tuple(
            sorted((i for i in ring.ideals() if self.is_prime(i)), key=Ideal.sort_key)
        )
        family = {
            frozenset(i for i, p in enumerate(points) if p.includes(ideal))
            for ideal in ring.ideals()
        }
        return FiniteTopology(points, family, kind="rbar-def", ring=ring)

    @cached_property
    def phi(self) -> SpectrumMap:
        target = self.rbar_space
        assignment = tuple(
            target.index_of(self.qr.ideal_to_quotient(self.radann(k)))
            for k in self.spec_l_points
        )
        return SpectrumMap(self.sl_space, target, assignment, "phi", self.qr, self.module)

    @cached_property
    def psi(self) -> SpectrumMap:
        target = self.rbar_space
        assignment = tuple(
            target.index_of(self.qr.ideal_to_quotient(self.ann(s)))
            for s in self.spec_s_points
        )
        return SpectrumMap(self.second_space, target, assignment, "psi", self.qr, self.module)

    @cached_property
    def phi_report(self):
        return map_report(self.phi)

    @cached_property
    def psi_report(self):
        return map_report(self.psi)

    def H(self, point_idxs) -> Submodule:
        from .modules import submodule_sum

        out = self.module.zero_submodule
        for i in point_idxs:
            out = submodule_sum(out, self.soc(self.spec_l_points[i]))
        return out

    def e_set(self, r: RingElement) -> frozenset[int]:
        return self.spec_l_full - self.nu_s(self.annm(self.module.ring.principal(r)))

    def d_set(self, r: RingElement) -> frozenset[int]:
        """D_{r-bar} in the definitional Spec(R/Ann M)."""
        rbar = self.qr.element(r)
        principal = self.qr.ring.principal(rbar)
        v = frozenset(
            i for i, p in enumerate(self.rbar_space.points) if p.includes(principal)
        )
        return self.rbar_space.full - v

    @cached_property
    def secondary_cotop_holds(self) -> bool:
        family = {self.nu_star(n) for n in self.submodules}
        return all(a | b in family for a in family for b in family)

    @cached_property
    def cotop_holds(self) -> bool:
        family = {self.v_star(n) for n in self.submodules}
        return all(a | b in family for a in family for b in family)

    @cached_property
    def comultiplication(self) -> bool:
        return all(self.annm(self.ann(n)).mask == n.mask for n in self.submodules)

    @cached_property
    def min_primes_bar(self) -> tuple[Ideal, ...]:
        pts = self.rbar_space.points
        return tuple(p for p in pts if not any(p.includes(q) and q != p for q in pts))

    @cached_property
    def idempotents_bar_trivial(self) -> bool:
        ring = self.qr.ring
        idem = {e for e in ring.elements() if e * e == e}
        return idem == {ring.zero, ring.one}
