"""Per-result verifiers over concrete instances, plus the corpus runner.

Every registry entry checks one numbered statement exhaustively on a given
module: the universally quantified variables range over all submodules, all
scalars, all ideals, all spectrum points, and (up to a reported cap) all
subsets of the spectrum and all monomorphisms.  Each elementary comparison is
a named *claim* with explicit arguments; a failing claim becomes the result's
witness and can be re-evaluated by the definition-level provider, which never
shares the optimized code paths.

Statuses: PASS, PASS-BOUNDED (a quantifier was sampled under a cap), FAIL
(with a witness), SKIPPED-HYPOTHESIS (a stated hypothesis does not hold on
the instance, named in the result).
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from .maps import MapReport, SpectrumMap, map_report, phi_map, psi_map
from .modules import (
    DEFAULT_MAX_ELEMENTS,
    FiniteModule,
    ModuleHom,
    Submodule,
    annihilated_submodule,
    annihilator_of_submodule,
    enumerate_submodules,
    is_comultiplication,
    is_secondary,
    minimal_submodules,
    radical_annihilator,
    sample_homomorphisms,
    socle,
    spec_L,
    spec_s,
    submodule_sum,
)
from .rings import FiniteRing, Ideal, RingElement, is_prime_ideal, ring_idempotents, ring_spec
from .topology import (
    SECOND_ZARISKI,
    SL,
    CotopResult,
    FiniteTopology,
    build_space,
    is_cotop,
    is_secondary_cotop,
    zariski_on_spec,
)

PASS = "PASS"
PASS_BOUNDED = "PASS-BOUNDED"
FAIL = "FAIL"
SKIPPED = "SKIPPED-HYPOTHESIS"

REGISTRY_IDS = (
    "T2.1", "T2.2", "T2.3", "L2.4", "P2.6", "C2.7", "L2.8", "P2.9", "P2.10",
    "C2.11", "T2.12", "L2.13", "T2.14", "C2.15", "T3.1", "P3.2", "C3.3",
    "T3.4", "T3.5", "P4.1", "T4.2", "C4.3", "T4.4", "T4.5", "T4.6", "C4.7",
    "C4.8", "T4.9", "C4.10", "T4.11", "C4.12", "P4.13", "L4.14", "L4.15",
    "C4.16",
)


class UnknownResultError(ValueError):
    def __init__(self, rid: str):
        super().__init__(
            f"unknown result id {rid!r}; the registry is {', '.join(REGISTRY_IDS)}"
        )
        self.rid = rid


@dataclass(frozen=True)
class Config:
    max_elements: int = DEFAULT_MAX_ELEMENTS
    subset_cap: int = 12          # full powerset of the spectrum up to this size
    subset_samples: int = 512     # sampled subsets beyond the cap
    subset_sample_size: int = 12  # max size of a sampled subset
    hom_limit: int = 4096         # exhaustive homomorphism enumeration bound
    hom_samples: int = 512        # sampled generator-image tuples beyond it
    seed: int = 0
    recheck_failures: bool = True


@dataclass
class VerificationResult:
    result_id: str
    instance: str
    status: str
    hypotheses: dict = field(default_factory=dict)
    witness: dict | None = None
    caps: dict = field(default_factory=dict)
    observations: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {
            "id": self.result_id,
            "instance": self.instance,
            "status": self.status,
            "hypotheses": dict(sorted(self.hypotheses.items())),
        }
        if self.caps:
            out["caps"] = dict(sorted(self.caps.items()))
        if self.witness is not None:
            out["witness"] = self.witness
        if self.observations:
            out["observations"] = dict(sorted(self.observations.items()))
        return out


# ---------------------------------------------------------------------------
# provider over the production code paths
# ---------------------------------------------------------------------------


class Analysis:
    """Cached per-instance analysis shared by all verifiers (and the CLI)."""

    def __init__(
        self,
        module: FiniteModule,
        config: Config | None = None,
        instance_text: str | None = None,
        partner: "Analysis | None" = None,
    ):
        self.module = module
        self.config = config or Config()
        self.text = instance_text if instance_text is not None else module.text
        self.partner = partner
        self._nu_s: dict = {}
        self._nu_star: dict = {}
        self._v_s: dict = {}
        self._v_star: dict = {}

    # primitive layer -------------------------------------------------------

    @cached_property
    def submodules(self) -> tuple[Submodule, ...]:
        return enumerate_submodules(self.module, self.config.max_elements)

    @cached_property
    def spec_l_points(self) -> tuple[Submodule, ...]:
        return spec_L(self.module, self.config.max_elements).points

    @cached_property
    def spec_s_points(self) -> tuple[Submodule, ...]:
        return spec_s(self.module).points

    @cached_property
    def _l_index(self) -> dict[int, int]:
        return {k.mask: i for i, k in enumerate(self.spec_l_points)}

    def spec_l_index(self, sub: Submodule) -> int:
        return self._l_index[sub.mask]

    @property
    def spec_l_full(self) -> frozenset[int]:
        return frozenset(range(len(self.spec_l_points)))

    @property
    def spec_s_full(self) -> frozenset[int]:
        return frozenset(range(len(self.spec_s_points)))

    def ann(self, sub: Submodule) -> Ideal:
        return annihilator_of_submodule(sub)

    def radann(self, sub: Submodule) -> Ideal:
        return radical_annihilator(sub)

    def soc(self, sub: Submodule) -> Submodule:
        return socle(sub)

    def annm(self, ideal: Ideal) -> Submodule:
        return annihilated_submodule(self.module, ideal)

    def prime_check(self, ideal: Ideal) -> bool:
        return is_prime_ideal(ideal)

    def is_second(self, sub: Submodule) -> bool:
        from .modules import is_second as _is_second

        return _is_second(sub)

    def is_secondary(self, sub: Submodule) -> bool:
        return is_secondary(sub)

    def nu_s(self, sub: Submodule) -> frozenset[int]:
        key = self.ann(sub).gens
        if key not in self._nu_s:
            ann = self.ann(sub)
            self._nu_s[key] = frozenset(
                i
                for i, k in enumerate(self.spec_l_points)
                if self.radann(k).includes(ann)
            )
        return self._nu_s[key]

    def nu_star(self, sub: Submodule) -> frozenset[int]:
        key = self.soc(sub).mask
        if key not in self._nu_star:
            w = self.soc(sub)
            self._nu_star[key] = frozenset(
                i
                for i, k in enumerate(self.spec_l_points)
                if w.contains(self.soc(k))
            )
        return self._nu_star[key]

    def v_s(self, sub: Submodule) -> frozenset[int]:
        key = self.ann(sub).gens
        if key not in self._v_s:
            ann = self.ann(sub)
            self._v_s[key] = frozenset(
                i
                for i, s in enumerate(self.spec_s_points)
                if self.ann(s).includes(ann)
            )
        return self._v_s[key]

    def v_star(self, sub: Submodule) -> frozenset[int]:
        key = self.soc(sub).mask
        if key not in self._v_star:
            w = self.soc(sub)
            self._v_star[key] = frozenset(
                i for i, s in enumerate(self.spec_s_points) if w.contains(s)
            )
        return self._v_star[key]

    # spaces and maps ---------------------------------------------------------

    @cached_property
    def sl_space(self) -> FiniteTopology:
        return build_space(self.module, SL, self.config.max_elements)

    @cached_property
    def second_space(self) -> FiniteTopology:
        return build_space(self.module, SECOND_ZARISKI, self.config.max_elements)

    @cached_property
    def qr(self):
        from .maps import ann_quotient

        return ann_quotient(self.module)

    @cached_property
    def rbar_space(self) -> FiniteTopology:
        return zariski_on_spec(self.qr.ring)

    @cached_property
    def phi(self) -> SpectrumMap:
        return phi_map(self.module, self.config.max_elements)

    @cached_property
    def psi(self) -> SpectrumMap:
        return psi_map(self.module, self.config.max_elements)

    @cached_property
    def phi_report(self) -> MapReport:
        return map_report(self.phi)

    @cached_property
    def psi_report(self) -> MapReport:
        return map_report(self.psi)

    @cached_property
    def sl_props(self):
        return self.sl_space.properties()

    def sl_closure(self, fs: frozenset[int]) -> frozenset[int]:
        return self.sl_space.closure(fs)

    @cached_property
    def sl_closed(self) -> frozenset[frozenset[int]]:
        return frozenset(self.sl_space.closed_sets)

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        return self.sl_space.irreducible_components()

    def fibers(self) -> dict[Ideal, frozenset[int]]:
        if "fibers" not in self.__dict__:
            self.__dict__["fibers_map"] = {
                p: frozenset(
                    i
                    for i, k in enumerate(self.spec_l_points)
                    if self.radann(k) == p
                )
                for p in ring_spec(self.module.ring)
            }
        return self.__dict__["fibers_map"]

    @cached_property
    def minimal(self) -> tuple[Submodule, ...]:
        return minimal_submodules(self.module)

    @cached_property
    def secondary_subs(self) -> tuple[Submodule, ...]:
        return tuple(s for s in self.submodules if is_secondary(s))

    @cached_property
    def comultiplication(self) -> bool:
        return is_comultiplication(self.module, self.config.max_elements)

    @cached_property
    def sec_cotop(self) -> CotopResult:
        return is_secondary_cotop(self.module, self.config.max_elements)

    @cached_property
    def cotop(self) -> CotopResult:
        return is_cotop(self.module, self.config.max_elements)

    @property
    def secondary_cotop_holds(self) -> bool:
        return self.sec_cotop.holds

    @property
    def cotop_holds(self) -> bool:
        return self.cotop.holds

    @cached_property
    def idempotents_bar_trivial(self) -> bool:
        ring = self.qr.ring
        return ring_idempotents(ring) == frozenset({ring.zero, ring.one})

    @cached_property
    def min_primes_bar(self) -> tuple[Ideal, ...]:
        pts = self.rbar_space.points
        return tuple(p for p in pts if not any(p.includes(q) and q != p for q in pts))

    def e_set(self, r: RingElement) -> frozenset[int]:
        if "e_sets" not in self.__dict__:
            base = self.sl_space.base or ()
            self.__dict__["e_sets"] = {
                elem.residues: fs
                for elem, (_, fs) in zip(self.module.ring.elements(), base)
            }
        return self.__dict__["e_sets"][r.residues]

    def d_set(self, r: RingElement) -> frozenset[int]:
        rbar = self.qr.element(r)
        principal = self.qr.ring.principal(rbar)
        v = frozenset(
            i for i, p in enumerate(self.rbar_space.points) if p.includes(principal)
        )
        return self.rbar_space.full - v

    def H(self, point_idxs) -> Submodule:
        out = self.module.zero_submodule
        for i in point_idxs:
            out = submodule_sum(out, self.soc(self.spec_l_points[i]))
        return out

    # bounded quantifier pools -------------------------------------------------

    def _rng(self, salt: int) -> random.Random:
        return random.Random(
            (zlib.crc32(self.text.encode()) << 8) ^ (self.config.seed * 65537) ^ salt
        )

    @cached_property
    def subset_pool(self) -> tuple[tuple[tuple[frozenset[int], Submodule], ...], bool]:
        """Subsets of the secondary-like spectrum, each with its socle sum."""
        n = len(self.spec_l_points)
        cfg = self.config
        pool: list[tuple[frozenset[int], Submodule]] = []
        if n <= cfg.subset_cap:
            hs: list[Submodule] = [self.module.zero_submodule] * (1 << n)
            for m in range(1 << n):
                if m:
                    low = (m & -m).bit_length() - 1
                    hs[m] = submodule_sum(
                        hs[m & (m - 1)], self.soc(self.spec_l_points[low])
                    )
                pool.append(
                    (frozenset(i for i in range(n) if m >> i & 1), hs[m])
                )
            return tuple(pool), False
        rng = self._rng(1)
        seen: set[frozenset[int]] = set()
        picks: list[frozenset[int]] = [frozenset()]
        for i in range(min(n, 24)):
            picks.append(frozenset([i]))
        if n <= 1024:
            picks.append(frozenset(range(n)))
        while len(picks) < cfg.subset_samples:
            size = rng.randint(0, min(n, cfg.subset_sample_size))
            picks.append(frozenset(rng.sample(range(n), size)))
        for fs in picks:
            if fs in seen:
                continue
            seen.add(fs)
            pool.append((fs, self.H(fs)))
        return tuple(pool), True

    @cached_property
    def mono_pools(self) -> tuple[tuple["Analysis", tuple[ModuleHom, ...], bool], ...]:
        """(target analysis, monomorphisms, exhaustive) for self and the partner."""
        out = []
        for other in ([self] if self.partner is None else [self, self.partner]):
            homs, exhaustive = sample_homomorphisms(
                self.module,
                other.module,
                self.config.hom_samples,
                self._rng(2).randint(0, 2**31),
                injective_only=True,
            )
            out.append((other, homs, exhaustive))
        return tuple(out)


# ---------------------------------------------------------------------------
# claims: raw named comparisons evaluated over a provider
# ---------------------------------------------------------------------------

CLAIMS: dict = {}


def claim(name: str, *kinds: str, relational: bool = False):
    def deco(fn):
        CLAIMS[name] = (fn, kinds, relational)
        return fn

    return deco


def _full(pv) -> Submodule:
    return pv.module.submodule((1 << pv.module.size) - 1)


def _zero(pv) -> Submodule:
    return pv.module.zero_submodule


def _pts(pv, idxs) -> frozenset:
    return frozenset(pv.spec_l_points[i] for i in idxs)


def _spts(pv, idxs) -> frozenset:
    return frozenset(pv.spec_s_points[i] for i in idxs)


@claim("nu_star_full")
def c_nu_star_full(pv):
    return pv.nu_star(_full(pv)) == pv.spec_l_full


@claim("nu_star_zero")
def c_nu_star_zero(pv):
    return pv.nu_star(_zero(pv)) == frozenset()


@claim("nu_star_cap", "sub", "sub")
def c_nu_star_cap(pv, n1, n2):
    meet = pv.module.submodule(n1.mask & n2.mask)
    return pv.nu_star(n1) & pv.nu_star(n2) == pv.nu_star(meet)


@claim("nu_star_family_cap", "subs")
def c_nu_star_family_cap(pv, subs):
    lhs = pv.spec_l_full
    mask = (1 << pv.module.size) - 1
    for n in subs:
        lhs &= pv.nu_star(n)
        mask &= n.mask
    return lhs == pv.nu_star(pv.module.submodule(mask))


@claim("nu_star_union_in_sum", "sub", "sub")
def c_nu_star_union_in_sum(pv, n1, n2):
    return pv.nu_star(n1) | pv.nu_star(n2) <= pv.nu_star(submodule_sum(n1, n2))


@claim("nu_star_monotone", "sub", "sub")
def c_nu_star_monotone(pv, n1, n2):
    return pv.nu_star(n1) <= pv.nu_star(n2)


@claim("nu_star_socle", "sub")
def c_nu_star_socle(pv, n):
    return pv.nu_star(pv.soc(n)) == pv.nu_star(n)


@claim("secondary_cotop_holds")
def c_secondary_cotop_holds(pv):
    return pv.secondary_cotop_holds


@claim("cotop_holds")
def c_cotop_holds(pv):
    return pv.cotop_holds


@claim("nu_s_full")
def c_nu_s_full(pv):
    return pv.nu_s(_full(pv)) == pv.spec_l_full


@claim("nu_s_zero")
def c_nu_s_zero(pv):
    return pv.nu_s(_zero(pv)) == frozenset()


@claim("nu_s_cap", "sub", "sub")
def c_nu_s_cap(pv, n1, n2):
    closed1 = pv.annm(pv.ann(n1))
    closed2 = pv.annm(pv.ann(n2))
    meet = pv.module.submodule(closed1.mask & closed2.mask)
    return pv.nu_s(n1) & pv.nu_s(n2) == pv.nu_s(meet)


@claim("nu_s_family_cap", "subs")
def c_nu_s_family_cap(pv, subs):
    lhs = pv.spec_l_full
    mask = (1 << pv.module.size) - 1
    for n in subs:
        lhs &= pv.nu_s(n)
        mask &= pv.annm(pv.ann(n)).mask
    return lhs == pv.nu_s(pv.module.submodule(mask))


@claim("nu_s_union", "sub", "sub")
def c_nu_s_union(pv, n1, n2):
    return pv.nu_s(n1) | pv.nu_s(n2) == pv.nu_s(submodule_sum(n1, n2))


@claim("v_is_nu_on_seconds", "sub")
def c_v_is_nu_on_seconds(pv, n):
    return _spts(pv, pv.v_s(n)) == _pts(pv, pv.nu_s(n)) & set(pv.spec_s_points)


@claim("v_star_is_nu_star_on_seconds", "sub")
def c_v_star_is_nu_star_on_seconds(pv, n):
    return _spts(pv, pv.v_star(n)) == _pts(pv, pv.nu_star(n)) & set(pv.spec_s_points)


@claim("nu_s_eq", "sub", "sub")
def c_nu_s_eq(pv, n1, n2):
    return pv.nu_s(n1) == pv.nu_s(n2)


@claim("radann_eq", "sub", "sub")
def c_radann_eq(pv, n1, n2):
    return pv.radann(n1) == pv.radann(n2)


@claim("nu_star_in_nu_s", "sub")
def c_nu_star_in_nu_s(pv, n):
    return pv.nu_star(n) <= pv.nu_s(n)


@claim("nu_star_eq_nu_s", "sub")
def c_nu_star_eq_nu_s(pv, n):
    return pv.nu_star(n) == pv.nu_s(n)


@claim("annm_varieties_agree", "ideal")
def c_annm_varieties_agree(pv, ideal):
    from .rings import ideal_radical

    a = pv.annm(ideal)
    b = pv.annm(ideal_radical(ideal))
    return pv.nu_s(a) == pv.nu_s(b) == pv.nu_star(a) == pv.nu_star(b)


@claim("nu_s_five_forms", "sub")
def c_nu_s_five_forms(pv, n):
    a = pv.annm(pv.ann(n))
    b = pv.annm(pv.radann(n))
    target = pv.nu_s(n)
    return (
        target == pv.nu_s(a) == pv.nu_s(b) == pv.nu_star(a) == pv.nu_star(b)
    )


@claim("nu_s_socle", "sub")
def c_nu_s_socle(pv, n):
    return pv.nu_s(n) == pv.nu_s(pv.soc(n))


@claim("separation_fibers_injectivity_agree")
def c_separation_fibers_injectivity_agree(pv):
    pts = pv.spec_l_points
    sep = not any(
        pv.nu_s(pts[i]) == pv.nu_s(pts[j])
        for i, j in combinations(range(len(pts)), 2)
    )
    fibers_small = all(len(f) <= 1 for f in pv.fibers().values())
    injective = pv.phi_report.injective
    return sep == fibers_small == injective


@claim("phi_bijective")
def c_phi_bijective(pv):
    return pv.phi_report.injective and pv.phi_report.surjective


@claim("psi_preimage_law", "ideal")
def c_psi_preimage_law(pv, ideal):
    ibar = pv.qr.ideal_to_quotient(ideal)
    closed = frozenset(
        i for i, p in enumerate(pv.rbar_space.points) if p.includes(ibar)
    )
    return pv.psi.preimage_set(closed) == pv.v_s(pv.annm(ideal))


@claim("psi_continuous")
def c_psi_continuous(pv):
    return pv.psi_report.continuous


@claim("psi_open_closed")
def c_psi_open_closed(pv):
    return pv.psi_report.open_map and pv.psi_report.closed_map


@claim("psi_image_laws", "sub")
def c_psi_image_laws(pv, n):
    annbar = pv.qr.ideal_to_quotient(pv.ann(n))
    v = frozenset(i for i, p in enumerate(pv.rbar_space.points) if p.includes(annbar))
    closed_ok = pv.psi.image_set(pv.v_s(n)) == v
    open_ok = (
        pv.psi.image_set(pv.spec_s_full - pv.v_s(n)) == pv.rbar_space.full - v
    )
    return closed_ok and open_ok


@claim("phi_preimage_law", "ideal")
def c_phi_preimage_law(pv, ideal):
    ibar = pv.qr.ideal_to_quotient(ideal)
    closed = frozenset(
        i for i, p in enumerate(pv.rbar_space.points) if p.includes(ibar)
    )
    return pv.phi.preimage_set(closed) == pv.nu_s(pv.annm(ideal))


@claim("phi_continuous")
def c_phi_continuous(pv):
    return pv.phi_report.continuous


@claim("phi_open_closed")
def c_phi_open_closed(pv):
    return pv.phi_report.open_map and pv.phi_report.closed_map


@claim("phi_image_laws", "sub")
def c_phi_image_laws(pv, n):
    annbar = pv.qr.ideal_to_quotient(pv.ann(n))
    v = frozenset(i for i, p in enumerate(pv.rbar_space.points) if p.includes(annbar))
    closed_ok = pv.phi.image_set(pv.nu_s(n)) == v
    open_ok = (
        pv.phi.image_set(pv.spec_l_full - pv.nu_s(n)) == pv.rbar_space.full - v
    )
    return closed_ok and open_ok


@claim("phi_bijective_iff_homeo")
def c_phi_bijective_iff_homeo(pv):
    rep = pv.phi_report
    return (rep.injective and rep.surjective) == rep.homeomorphism


@claim("sl_connected")
def c_sl_connected(pv):
    return pv.sl_space.is_connected()


@claim("sl_connected_iff_rbar")
def c_sl_connected_iff_rbar(pv):
    return pv.sl_space.is_connected() == pv.rbar_space.is_connected()


@claim("rbar_connected_iff_trivial_idempotents")
def c_rbar_connected_iff_trivial_idempotents(pv):
    return pv.rbar_space.is_connected() == pv.idempotents_bar_trivial


@claim("second_connected")
def c_second_connected(pv):
    return pv.second_space.is_connected()


@claim("mono_preimage_point", "images", "sub", relational=True)
def c_mono_preimage_point(pv, pv2, images, nprime):
    hom = ModuleHom(pv.module, pv2.module, images)
    pre = hom.preimage(nprime)
    return pre.mask in {k.mask for k in pv.spec_l_points}


@claim("mono_image_point", "images", "sub", relational=True)
def c_mono_image_point(pv, pv2, images, n):
    hom = ModuleHom(pv.module, pv2.module, images)
    img = hom.apply(n)
    return img.mask in {k.mask for k in pv2.spec_l_points}


def _rho_over(pv, pv2, images) -> tuple[SpectrumMap, MapReport] | None:
    hom = ModuleHom(pv.module, pv2.module, images)
    index = {k.mask: i for i, k in enumerate(pv2.spec_l_points)}
    assignment = []
    for k in pv.spec_l_points:
        img = hom.apply(k)
        if img.mask not in index:
            return None
        assignment.append(index[img.mask])
    m = SpectrumMap(pv.sl_space, pv2.sl_space, tuple(assignment), "rho", None, pv.module, hom)
    return m, map_report(m)


@claim("rho_injective_continuous", "images", relational=True)
def c_rho_injective_continuous(pv, pv2, images):
    built = _rho_over(pv, pv2, images)
    if built is None:
        return False
    _, rep = built
    if not (rep.injective and rep.continuous):
        return False
    if rep.surjective and not rep.homeomorphism:
        return False
    return True


@claim("rho_homeomorphism", "images", relational=True)
def c_rho_homeomorphism(pv, pv2, images):
    built = _rho_over(pv, pv2, images)
    if built is None:
        return False
    return built[1].homeomorphism


@claim("e_base_generates")
def c_e_base_generates(pv):
    ring = pv.module.ring
    if pv.e_set(ring.zero) != frozenset():
        return False
    if pv.e_set(ring.one) != pv.spec_l_full:
        return False
    es = [pv.e_set(r) for r in ring.elements()]
    for c in pv.sl_space.closed_sets:
        o = pv.spec_l_full - c
        union: frozenset[int] = frozenset()
        for e in es:
            if e <= o:
                union |= e
        if union != o:
            return False
    return True


@claim("e_is_phi_preimage_d", "elem")
def c_e_is_phi_preimage_d(pv, r):
    return pv.phi.preimage_set(pv.d_set(r)) == pv.e_set(r)


@claim("phi_e_in_d", "elem")
def c_phi_e_in_d(pv, r):
    return pv.phi.image_set(pv.e_set(r)) <= pv.d_set(r)


@claim("phi_e_equals_d", "elem")
def c_phi_e_equals_d(pv, r):
    return pv.phi.image_set(pv.e_set(r)) == pv.d_set(r)


@claim("e_multiplicative", "elem", "elem")
def c_e_multiplicative(pv, a, b):
    return pv.e_set(a) & pv.e_set(b) == pv.e_set(a * b)


@claim("e_empty", "elem")
def c_e_empty(pv, r):
    return pv.e_set(r) == frozenset()


@claim("e_full", "elem")
def c_e_full(pv, r):
    return pv.e_set(r) == pv.spec_l_full


@claim("sl_topology_trivial")
def c_sl_topology_trivial(pv):
    return set(pv.sl_space.closed_sets) == {frozenset(), pv.spec_l_full}


@claim("e_open", "elem")
def c_e_open(pv, r):
    return pv.e_set(r) in set(pv.sl_space.open_sets())


@claim("opens_intersection_closed")
def c_opens_intersection_closed(pv):
    opens = set(pv.sl_space.open_sets())
    return all(a & b in opens for a, b in combinations(opens, 2))


@claim("closure_is_socle_sum_variety", "pts")
def c_closure_is_socle_sum_variety(pv, pts):
    idxs = frozenset(pv.spec_l_index(k) for k in pts)
    return pv.sl_closure(idxs) == pv.nu_s(pv.H(idxs))


@claim("closed_iff_closure_fixed", "pts")
def c_closed_iff_closure_fixed(pv, pts):
    idxs = frozenset(pv.spec_l_index(k) for k in pts)
    return (idxs in set(pv.sl_space.closed_sets)) == (pv.nu_s(pv.H(idxs)) == idxs)


@claim("set_is_dense", "pts")
def c_set_is_dense(pv, pts):
    idxs = frozenset(pv.spec_l_index(k) for k in pts)
    return pv.sl_closure(idxs) == pv.spec_l_full


@claim("point_closure_is_variety", "sub")
def c_point_closure_is_variety(pv, k):
    i = pv.spec_l_index(k)
    return pv.sl_closure(frozenset([i])) == pv.nu_s(k)


@claim("point_variety_irreducible_closed", "sub")
def c_point_variety_irreducible_closed(pv, k):
    fs = pv.nu_s(k)
    return pv.sl_space.is_closed(fs) and pv.sl_space.is_irreducible(fs)


@claim("sl_irreducible")
def c_sl_irreducible(pv):
    return pv.sl_space.is_irreducible(pv.spec_l_full)


@claim("set_irreducible", "pts")
def c_set_irreducible(pv, pts):
    idxs = frozenset(pv.spec_l_index(k) for k in pts)
    return pv.sl_space.is_irreducible(idxs)


@claim("socle_sum_ann_prime", "pts")
def c_socle_sum_ann_prime(pv, pts):
    idxs = frozenset(pv.spec_l_index(k) for k in pts)
    return pv.prime_check(pv.ann(pv.H(idxs)))


@claim("closed_irreducible_is_point_variety", "pts")
def c_closed_irreducible_is_point_variety(pv, pts):
    idxs = frozenset(pv.spec_l_index(k) for k in pts)
    return any(pv.nu_s(k) == idxs for k in pv.spec_l_points)


@claim("closed_has_generic_point", "pts")
def c_closed_has_generic_point(pv, pts):
    idxs = frozenset(pv.spec_l_index(k) for k in pts)
    return len(pv.sl_space.generic_points(idxs)) >= 1


@claim("point_variety_is_component", "sub")
def c_point_variety_is_component(pv, k):
    return pv.nu_s(k) in set(pv.sl_space.irreducible_components())


@claim("socle_ann_bar_minimal_prime", "sub")
def c_socle_ann_bar_minimal_prime(pv, k):
    return pv.qr.ideal_to_quotient(pv.ann(pv.soc(k))) in set(pv.min_primes_bar)


def _component_prime_pairs(pv):
    comps = pv.sl_space.irreducible_components()
    pairs = []
    for c in comps:
        ks = [k for k in pv.spec_l_points if pv.nu_s(k) == c]
        if not ks:
            return None
        pairs.append((c, pv.qr.ideal_to_quotient(pv.ann(pv.soc(ks[0])))))
    return pairs


@claim("components_biject_minimal_primes")
def c_components_biject_minimal_primes(pv):
    pairs = _component_prime_pairs(pv)
    if pairs is None:
        return False
    primes = [p for _, p in pairs]
    return len(set(primes)) == len(primes) and set(primes) == set(pv.min_primes_bar)


def _script_a(pv):
    mp = set(pv.min_primes_bar)
    return [
        k
        for k in pv.spec_l_points
        if pv.qr.ideal_to_quotient(pv.ann(pv.soc(k))) in mp
    ]


@claim("component_reps_exist")
def c_component_reps_exist(pv):
    return bool(_script_a(pv))


@claim("component_reps_give_components")
def c_component_reps_give_components(pv):
    return {pv.nu_s(k) for k in _script_a(pv)} == set(pv.sl_space.irreducible_components())


@claim("component_reps_cover_sl")
def c_component_reps_cover_sl(pv):
    u: frozenset[int] = frozenset()
    for k in _script_a(pv):
        u |= pv.nu_s(k)
    return u == pv.spec_l_full


@claim("component_reps_cover_rbar")
def c_component_reps_cover_rbar(pv):
    u: frozenset[int] = frozenset()
    for k in _script_a(pv):
        annbar = pv.qr.ideal_to_quotient(pv.ann(k))
        u |= frozenset(
            i for i, p in enumerate(pv.rbar_space.points) if p.includes(annbar)
        )
    return u == pv.rbar_space.full


@claim("component_reps_cover_second")
def c_component_reps_cover_second(pv):
    u: frozenset[int] = frozenset()
    for k in _script_a(pv):
        u |= pv.v_s(k)
    return u == pv.spec_s_full


@claim("whole_space_only_component")
def c_whole_space_only_component(pv):
    return set(pv.sl_space.irreducible_components()) == {pv.spec_l_full}


@claim("t0_iff_small_fibers")
def c_t0_iff_small_fibers(pv):
    small = all(len(f) <= 1 for f in pv.fibers().values())
    return pv.sl_space.is_t0() == small


@claim("four_way_t0_equivalence")
def c_four_way_t0_equivalence(pv):
    t0 = pv.sl_space.is_t0()
    small = all(len(f) <= 1 for f in pv.fibers().values())
    sep = not any(
        pv.nu_s(a) == pv.nu_s(b)
        for a, b in combinations(pv.spec_l_points, 2)
    )
    inj = pv.phi_report.injective
    return t0 == small == sep == inj


@claim("spectral_iff_t0")
def c_spectral_iff_t0(pv):
    props = pv.sl_space.properties()
    return props.spectral == props.t0


@claim("five_way_spectral_equivalence")
def c_five_way_spectral_equivalence(pv):
    props = pv.sl_space.properties()
    small = all(len(f) <= 1 for f in pv.fibers().values())
    rep = pv.phi_report
    return props.spectral == props.t0 == small == rep.injective == rep.homeomorphism


@claim("spectral_iff_small_fibers")
def c_spectral_iff_small_fibers(pv):
    props = pv.sl_space.properties()
    small = all(len(f) <= 1 for f in pv.fibers().values())
    return props.spectral == small


@claim("closed_point_data", "sub")
def c_closed_point_data(pv, k):
    return k in set(pv.minimal) and pv.fibers()[pv.radann(k)] == frozenset(
        [pv.spec_l_index(k)]
    )


@claim("point_is_closed", "sub")
def c_point_is_closed(pv, k):
    return frozenset([pv.spec_l_index(k)]) in set(pv.sl_space.closed_sets)


@claim("sum_stays_in_fiber", "ideal", "sub", "sub")
def c_sum_stays_in_fiber(pv, p, k1, k2):
    total = submodule_sum(k1, k2)
    if total.mask not in {k.mask for k in pv.spec_l_points}:
        return False
    return pv.radann(total) == p


@claim("t1_iff_all_points_minimal")
def c_t1_iff_all_points_minimal(pv):
    return pv.sl_space.is_t1() == (set(pv.minimal) == set(pv.spec_l_points))


# ---------------------------------------------------------------------------
# witness encoding and the definitional recheck
# ---------------------------------------------------------------------------


def _encode_arg(kind: str, value) -> object:
    if kind == "sub":
        return [int(i) for i in value.indices]
    if kind == "subs":
        return [[int(i) for i in s.indices] for s in value]
    if kind == "pts":
        return [[int(i) for i in s.indices] for s in value]
    if kind == "ideal":
        return list(value.gens)
    if kind == "elem":
        return list(value.residues)
    if kind == "images":
        return list(value)
    raise ValueError(f"unknown claim argument kind {kind!r}")


def _decode_arg(kind: str, raw, module: FiniteModule, partner: FiniteModule):
    if kind == "sub":
        return module.submodule_from_indices(raw)
    if kind in ("subs", "pts"):
        return tuple(module.submodule_from_indices(r) for r in raw)
    if kind == "ideal":
        return module.ring.ideal(raw)
    if kind == "elem":
        return module.ring.element(raw)
    if kind == "images":
        return tuple(int(v) for v in raw)
    raise ValueError(f"unknown claim argument kind {kind!r}")


def _decode_pts_against(provider, raws) -> tuple:
    return tuple(provider.module.submodule_from_indices(r) for r in raws)


def make_witness(analysis: Analysis, name: str, args: tuple, partner_text: str | None) -> dict:
    _, kinds, relational = CLAIMS[name]
    payload = {
        "check": name,
        "instance": analysis.text,
        "args": [_encode_arg(k, v) for k, v in zip(kinds, args)],
    }
    if relational:
        payload["partner"] = partner_text or analysis.text
    return payload


def eval_claim(provider, name: str, args: tuple, partner_provider=None) -> bool:
    fn, _, relational = CLAIMS[name]
    if relational:
        return fn(provider, partner_provider if partner_provider is not None else provider, *args)
    return fn(provider, *args)


def recheck_witness(module: FiniteModule, witness: dict, partner_module: FiniteModule | None = None) -> bool:
    """Re-evaluate a failure witness with the definition-level provider.

    Returns True when the definitional route *also* evaluates the claim to
    False, i.e. the witness genuinely re-validates.
    """
    from ._defs import DefProvider

    name = witness["check"]
    fn, kinds, relational = CLAIMS[name]
    pv = DefProvider(module)
    pv2 = DefProvider(partner_module) if partner_module is not None else pv
    # pts arguments index the provider's own spectrum points, so decode
    # against the module and let claims map them to positions
    args = tuple(
        _decode_arg(k, raw, module, partner_module or module)
        for k, raw in zip(kinds, witness["args"])
    )
    if relational:
        return not fn(pv, pv2, *args)
    return not fn(pv, *args)


# ---------------------------------------------------------------------------
# verifier plumbing
# ---------------------------------------------------------------------------


class _Run:
    def __init__(self, analysis: Analysis, rid: str):
        self.a = analysis
        self.rid = rid
        self.hyps: dict = {}
        self.caps: dict = {}
        self.obs: dict = {}
        self.failure: dict | None = None
        self.skip_reason: str | None = None
        self.bounded = False

    def hyp(self, name: str, value: bool) -> bool:
        self.hyps[name] = value
        return value

    def skip(self, reason: str) -> None:
        self.skip_reason = reason

    def cap(self, name: str, value) -> None:
        self.caps[name] = value

    def note(self, name: str, value) -> None:
        self.obs[name] = value

    def check(self, name: str, *args, partner: Analysis | None = None) -> bool:
        if self.failure is not None:
            return False
        ok = eval_claim(self.a, name, args, partner)
        if not ok:
            self.failure = make_witness(
                self.a, name, args, partner.text if partner is not None else None
            )
        return ok

    def result(self) -> VerificationResult:
        if self.skip_reason is not None:
            status = SKIPPED
            witness = None
        elif self.failure is not None:
            status = FAIL
            witness = self.failure
        else:
            status = PASS_BOUNDED if self.bounded else PASS
            witness = None
        if self.skip_reason is not None:
            self.obs["unmet_hypothesis"] = self.skip_reason
        return VerificationResult(
            self.rid,
            self.a.text,
            status,
            hypotheses=self.hyps,
            witness=witness,
            caps=self.caps,
            observations=self.obs,
        )


def _sub_pairs(a: Analysis):
    subs = a.submodules
    return combinations(subs, 2)


def _ideals_containing_annm(a: Analysis):
    ann_m = a.qr.ideal
    return [i for i in a.module.ring.ideals() if i.includes(ann_m)]


def _use_subsets(run: _Run):
    pool, bounded = run.a.subset_pool
    if bounded:
        run.bounded = True
        run.cap("subset_samples", len(pool))
        run.cap(
            "subset_space",
            f"2^{len(run.a.spec_l_points)} subsets, sampled",
        )
    return pool


def _v_t21(run: _Run) -> None:
    a = run.a
    run.check("nu_star_full")
    run.check("nu_star_zero")
    for n1, n2 in _sub_pairs(a):
        if not run.check("nu_star_cap", n1, n2):
            return
        if not run.check("nu_star_union_in_sum", n1, n2):
            return
        small, big = (n1, n2) if big_contains(n2, n1) else (n2, n1)
        if big_contains(big, small) and not run.check("nu_star_monotone", small, big):
            return
    run.check("nu_star_family_cap", tuple(a.submodules))
    for n in a.submodules:
        if not run.check("nu_star_socle", n):
            return


def big_contains(big: Submodule, small: Submodule) -> bool:
    return big.mask | small.mask == big.mask


def _v_t22(run: _Run) -> None:
    if not run.hyp("comultiplication", run.a.comultiplication):
        return run.skip("module is not a comultiplication module")
    run.check("secondary_cotop_holds")


def _v_t23(run: _Run) -> None:
    a = run.a
    run.check("nu_s_full")
    run.check("nu_s_zero")
    for n1, n2 in _sub_pairs(a):
        if not run.check("nu_s_cap", n1, n2):
            return
        if not run.check("nu_s_union", n1, n2):
            return
    run.check("nu_s_family_cap", tuple(a.submodules))


def _v_l24(run: _Run) -> None:
    a = run.a
    comult = run.hyp("comultiplication", a.comultiplication)
    spec_l_masks = {k.mask for k in a.spec_l_points}
    for n in a.submodules:
        if not run.check("v_is_nu_on_seconds", n):
            return
        if not run.check("v_star_is_nu_star_on_seconds", n):
            return
        if not run.check("nu_star_in_nu_s", n):
            return
        if comult and not run.check("nu_star_eq_nu_s", n):
            return
        if not run.check("nu_s_five_forms", n):
            return
        if (n.mask in spec_l_masks or comult) and not run.check("nu_s_socle", n):
            return
    for n1, n2 in _sub_pairs(a):
        if a.radann(n1) == a.radann(n2):
            if not run.check("nu_s_eq", n1, n2):
                return
        if (
            n1.mask in spec_l_masks
            and n2.mask in spec_l_masks
            and a.nu_s(n1) == a.nu_s(n2)
            and not run.check("radann_eq", n1, n2)
        ):
            return
    for ideal in a.module.ring.ideals():
        if not run.check("annm_varieties_agree", ideal):
            return


def _v_p26(run: _Run) -> None:
    run.check("separation_fibers_injectivity_agree")


def _v_c27(run: _Run) -> None:
    a = run.a
    all_one = all(len(f) == 1 for f in a.fibers().values())
    if not run.hyp("all_fibers_singleton", all_one):
        return run.skip("not every prime has a one-point fiber")
    run.check("phi_bijective")


def _v_l28(run: _Run) -> None:
    a = run.a
    run.check("psi_continuous")
    for ideal in _ideals_containing_annm(a):
        if not run.check("psi_preimage_law", ideal):
            return
    if run.hyp("psi_surjective", a.psi_report.surjective):
        run.check("psi_open_closed")
        for n in a.submodules:
            if not run.check("psi_image_laws", n):
                return


def _v_p29(run: _Run) -> None:
    a = run.a
    run.check("phi_continuous")
    for ideal in _ideals_containing_annm(a):
        if not run.check("phi_preimage_law", ideal):
            return


def _v_p210(run: _Run) -> None:
    a = run.a
    if not run.hyp("phi_surjective", a.phi_report.surjective):
        return run.skip("the prime map is not surjective")
    run.check("phi_open_closed")
    for n in a.submodules:
        if not run.check("phi_image_laws", n):
            return


def _v_c211(run: _Run) -> None:
    run.check("phi_bijective_iff_homeo")


def _v_t212(run: _Run) -> None:
    a = run.a
    phi_s = run.hyp("phi_surjective", a.phi_report.surjective)
    psi_s = run.hyp("psi_surjective", a.psi_report.surjective)
    if not phi_s and not psi_s:
        return run.skip("neither natural map is surjective")
    if phi_s:
        if a.second_space.is_connected() and not run.check("sl_connected"):
            return
        if not run.check("sl_connected_iff_rbar"):
            return
        if not run.check("rbar_connected_iff_trivial_idempotents"):
            return
    if psi_s and a.idempotents_bar_trivial:
        run.check("second_connected")
    # the untreated converse, logged but never asserted
    run.note(
        "sl_connected_implies_second_connected",
        (not a.sl_space.is_connected()) or a.second_space.is_connected(),
    )


def _mono_sweep(run: _Run, body) -> None:
    a = run.a
    for other, monos, exhaustive in a.mono_pools:
        if not exhaustive:
            run.bounded = True
            run.cap("hom_samples", a.config.hom_samples)
        run.note(f"monomorphisms_into_{other.text}", len(monos))
        for hom in monos:
            if body(other, hom) is False:
                return


def _v_l213(run: _Run) -> None:
    a = run.a

    def body(other: Analysis, hom: ModuleHom):
        image = hom.image()
        for nprime in other.spec_l_points:
            if image.contains(nprime):
                if not run.check(
                    "mono_preimage_point", hom.images, nprime, partner=other
                ):
                    return False
        for n in a.spec_l_points:
            if not run.check("mono_image_point", hom.images, n, partner=other):
                return False

    _mono_sweep(run, body)


def _v_t214(run: _Run) -> None:
    def body(other: Analysis, hom: ModuleHom):
        if not run.check("rho_injective_continuous", hom.images, partner=other):
            return False

    _mono_sweep(run, body)


def _v_c215(run: _Run) -> None:
    found = 0

    def body(other: Analysis, hom: ModuleHom):
        nonlocal found
        if not hom.is_surjective:
            return
        found += 1
        if not run.check("rho_homeomorphism", hom.images, partner=other):
            return False

    _mono_sweep(run, body)
    run.note("isomorphisms_checked", found)


def _v_t31(run: _Run) -> None:
    run.check("e_base_generates")


def _v_p32(run: _Run) -> None:
    a = run.a
    phi_s = run.hyp("phi_surjective", a.phi_report.surjective)
    elements = a.module.ring.elements()
    from .rings import units_and_nilradical

    units, nil = units_and_nilradical(a.module.ring)
    for r in elements:
        if not run.check("e_is_phi_preimage_d", r):
            return
        if not run.check("phi_e_in_d", r):
            return
        if phi_s and not run.check("phi_e_equals_d", r):
            return
        if nil.contains(r) and not run.check("e_empty", r):
            return
        if r in units and not run.check("e_full", r):
            return
    for x, y in product(elements, elements):
        if not run.check("e_multiplicative", x, y):
            return


def _v_c33(run: _Run) -> None:
    if not run.hyp("base_ring_is_field", run.a.module.ring.is_field):
        return run.skip("the base ring is not a field")
    run.check("sl_topology_trivial")


def _v_t34(run: _Run) -> None:
    a = run.a
    if not run.hyp("phi_surjective", a.phi_report.surjective):
        return run.skip("the prime map is not surjective")
    for r in a.module.ring.elements():
        if not run.check("e_open", r):
            return
    run.note("quasi_compact", "every subset of a finite space is quasi-compact")


def _v_t35(run: _Run) -> None:
    a = run.a
    if not run.hyp("phi_surjective", a.phi_report.surjective):
        return run.skip("the prime map is not surjective")
    run.check("opens_intersection_closed")
    run.note("quasi_compact_opens", "all opens; finite space")


def _v_p41(run: _Run) -> None:
    a = run.a
    full_in_l = a.module.size.bit_length() and _full_point(a)
    for fs, _h in _use_subsets(run):
        pts = tuple(a.spec_l_points[i] for i in sorted(fs))
        if not run.check("closure_is_socle_sum_variety", pts):
            return
        if not run.check("closed_iff_closure_fixed", pts):
            return
        if full_in_l is not None and full_in_l in fs:
            if not run.check("set_is_dense", pts):
                return


def _full_point(a: Analysis) -> int | None:
    full_mask = (1 << a.module.size) - 1
    return a._l_index.get(full_mask)


def _v_t42(run: _Run) -> None:
    a = run.a
    for k in a.spec_l_points:
        if not run.check("point_closure_is_variety", k):
            return
        if not run.check("point_variety_irreducible_closed", k):
            return
    if run.hyp("whole_module_in_spectrum", _full_point(a) is not None):
        run.check("sl_irreducible")
    else:
        run.hyps.pop("whole_module_in_spectrum")
        run.note("whole_module_in_spectrum", False)


def _v_c43(run: _Run) -> None:
    a = run.a
    applicable = 0
    for fs, h in _use_subsets(run):
        p = a.radann(h) if False else a.ann(h)
        # the radical of the socle-sum annihilator must be prime and the
        # fiber over it nonempty before the statement applies
        from .rings import ideal_radical

        rad = ideal_radical(a.ann(h))
        if not a.prime_check(rad):
            continue
        fiber = a.fibers().get(rad, frozenset())
        if not fiber:
            continue
        applicable += 1
        pts = tuple(a.spec_l_points[i] for i in sorted(fs))
        if not run.check("set_irreducible", pts):
            return
    run.note("applicable_subsets", applicable)


def _v_t44(run: _Run) -> None:
    a = run.a
    for fs, h in _use_subsets(run):
        pts = tuple(a.spec_l_points[i] for i in sorted(fs))
        if not h.is_zero and is_secondary(h):
            if not run.check("set_irreducible", pts):
                return
        if fs and a.sl_space.is_irreducible(fs):
            if not run.check("socle_sum_ann_prime", pts):
                return


def _v_t45(run: _Run) -> None:
    a = run.a
    if not run.hyp("phi_surjective", a.phi_report.surjective):
        return run.skip("the prime map is not surjective")
    for c in a.sl_space.closed_sets:
        if a.sl_space.is_irreducible(c):
            pts = tuple(a.spec_l_points[i] for i in sorted(c))
            if not run.check("closed_irreducible_is_point_variety", pts):
                return
            if not run.check("closed_has_generic_point", pts):
                return
    for k in a.spec_l_points:
        if not run.check("point_variety_irreducible_closed", k):
            return


def _v_t46(run: _Run) -> None:
    a = run.a
    phi_s = run.hyp("phi_surjective", a.phi_report.surjective)
    comps = set(a.sl_space.irreducible_components())
    mp = set(a.min_primes_bar)
    for k in a.spec_l_points:
        if a.qr.ideal_to_quotient(a.ann(a.soc(k))) in mp:
            if not run.check("point_variety_is_component", k):
                return
        if phi_s and a.nu_s(k) in comps:
            if not run.check("socle_ann_bar_minimal_prime", k):
                return


def _v_c47(run: _Run) -> None:
    if not run.hyp("phi_surjective", run.a.phi_report.surjective):
        return run.skip("the prime map is not surjective")
    run.check("components_biject_minimal_primes")


def _v_c48(run: _Run) -> None:
    a = run.a
    if not run.hyp("spectrum_nonempty", bool(a.spec_l_points)):
        return run.skip("the secondary-like spectrum is empty")
    if not run.hyp("phi_surjective", a.phi_report.surjective):
        return run.skip("the prime map is not surjective")
    run.check("component_reps_exist")
    run.check("component_reps_give_components")
    run.check("component_reps_cover_sl")
    run.check("component_reps_cover_rbar")
    run.check("component_reps_cover_second")
    if _full_point(a) is not None:
        run.check("whole_space_only_component")


def _v_t49(run: _Run) -> None:
    run.check("t0_iff_small_fibers")


def _v_c410(run: _Run) -> None:
    run.check("four_way_t0_equivalence")


def _v_t411(run: _Run) -> None:
    if not run.hyp("phi_surjective", run.a.phi_report.surjective):
        return run.skip("the prime map is not surjective")
    run.check("spectral_iff_t0")


def _v_c412(run: _Run) -> None:
    if not run.hyp("phi_surjective", run.a.phi_report.surjective):
        return run.skip("the prime map is not surjective")
    run.check("five_way_spectral_equivalence")


def _v_p413(run: _Run) -> None:
    a = run.a
    nonempty = bool(a.spec_l_points)
    if not run.hyp("spectrum_nonempty_finite", nonempty):
        return run.skip("the secondary-like spectrum is empty")
    run.check("spectral_iff_small_fibers")


def _every_secondary_contains_minimal(a: Analysis) -> bool:
    return all(
        any(s.contains(t) for t in a.minimal) for s in a.secondary_subs
    )


def _v_l414(run: _Run) -> None:
    a = run.a
    if not run.hyp(
        "every_secondary_contains_minimal", _every_secondary_contains_minimal(a)
    ):
        return run.skip("some secondary submodule contains no minimal submodule")
    closed = set(a.sl_space.closed_sets)
    min_set = set(a.minimal)
    for k in a.spec_l_points:
        singleton = frozenset([a.spec_l_index(k)])
        if singleton in closed:
            if not run.check("closed_point_data", k):
                return
        if k in min_set and a.fibers()[a.radann(k)] == singleton:
            if not run.check("point_is_closed", k):
                return


def _v_l415(run: _Run) -> None:
    a = run.a
    for p, fiber in a.fibers().items():
        for i, j in combinations(sorted(fiber), 2):
            if not run.check(
                "sum_stays_in_fiber", p, a.spec_l_points[i], a.spec_l_points[j]
            ):
                return


def _v_c416(run: _Run) -> None:
    a = run.a
    if not run.hyp(
        "every_secondary_contains_minimal", _every_secondary_contains_minimal(a)
    ):
        return run.skip("some secondary submodule contains no minimal submodule")
    run.check("t1_iff_all_points_minimal")


REGISTRY: dict[str, tuple[str, object]] = {
    "T2.1": ("lattice identities of the socle-containment variety", _v_t21),
    "T2.2": ("comultiplication modules have union-closed socle varieties", _v_t22),
    "T2.3": ("closed-set axioms for the annihilator variety", _v_t23),
    "L2.4": ("relations among the four variety operators", _v_l24),
    "P2.6": ("point separation, fiber size and injectivity agree", _v_p26),
    "C2.7": ("all-singleton fibers force a bijective prime map", _v_c27),
    "L2.8": ("continuity and image laws for the second-spectrum map", _v_l28),
    "P2.9": ("preimage law and continuity of the prime map", _v_p29),
    "P2.10": ("surjective prime map is open and closed with explicit images", _v_p210),
    "C2.11": ("bijective prime map is a homeomorphism", _v_c211),
    "T2.12": ("connectedness transfer between spectra and the base ring", _v_t212),
    "L2.13": ("monomorphisms move secondary-like points both ways", _v_l213),
    "T2.14": ("induced point map is an injective continuous map", _v_t214),
    "C2.15": ("isomorphic modules have homeomorphic spectra", _v_c215),
    "T3.1": ("scalar opens form a base", _v_t31),
    "P3.2": ("scalar opens follow the base-ring opens", _v_p32),
    "C3.3": ("over a field the topology is trivial", _v_c33),
    "T3.4": ("basic opens are quasi-compact under surjectivity", _v_t34),
    "T3.5": ("quasi-compact opens are intersection-closed and form a base", _v_t35),
    "P4.1": ("closure equals the variety of the socle sum", _v_p41),
    "T4.2": ("point closures are irreducible varieties", _v_t42),
    "C4.3": ("prime socle-sum radical forces irreducibility", _v_c43),
    "T4.4": ("secondary socle sums are irreducible with prime annihilator", _v_t44),
    "T4.5": ("irreducible closed sets are point varieties under surjectivity", _v_t45),
    "T4.6": ("components correspond to minimal primes", _v_t46),
    "C4.7": ("component-to-minimal-prime bijection", _v_c47),
    "C4.8": ("component covers of the three spectra", _v_c48),
    "T4.9": ("T0 iff all fibers are small", _v_t49),
    "C4.10": ("T0, fiber size, separation and injectivity agree", _v_c410),
    "T4.11": ("spectral iff T0 under surjectivity", _v_t411),
    "C4.12": ("five-way spectrality equivalence under surjectivity", _v_c412),
    "P4.13": ("finite nonempty spectrum: spectral iff fibers are small", _v_p413),
    "L4.14": ("closed points are minimal with singleton fibers", _v_l414),
    "L4.15": ("fibers are closed under sums", _v_l415),
    "C4.16": ("T1 iff every point is a minimal submodule", _v_c416),
}

assert tuple(REGISTRY) == REGISTRY_IDS


def verify(
    target: FiniteModule | Analysis,
    result_id: str,
    config: Config | None = None,
    instance_text: str | None = None,
) -> VerificationResult:
    """Run one registry verifier on one instance."""
    if result_id not in REGISTRY:
        raise UnknownResultError(result_id)
    analysis = (
        target
        if isinstance(target, Analysis)
        else Analysis(target, config, instance_text)
    )
    run = _Run(analysis, result_id)
    REGISTRY[result_id][1](run)
    result = run.result()
    if (
        result.status == FAIL
        and analysis.config.recheck_failures
        and result.witness is not None
    ):
        if analysis.module.size <= 512:
            partner = analysis.partner.module if analysis.partner else None
            result.witness["revalidated"] = recheck_witness(
                analysis.module, result.witness, partner
            )
        else:
            result.witness["revalidated"] = "skipped (instance too large)"
    return result


def run_instance(
    analysis: Analysis, result_ids: tuple[str, ...] | None = None
) -> list[VerificationResult]:
    ids = REGISTRY_IDS if result_ids is None else result_ids
    for rid in ids:
        if rid not in REGISTRY:
            raise UnknownResultError(rid)
    return [verify(analysis, rid) for rid in ids]


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


def default_corpus() -> tuple[str, ...]:
    """The built-in instance family, deterministically ordered and deduplicated.

    - every cyclic module over Z/n for n up to 60;
    - every module with at most three cyclic factors over Z/p^k, |M| <= 64;
    - every module with at most two cyclic factors over a product of two
      residue rings with |R| <= 36 and |M| <= 64.
    """
    from .rings import divisors, is_prime_power, squarefree_kernel, _is_prime

    lines: list[str] = []
    seen: set[str] = set()

    def emit(ring_text: str, factor_sizes: tuple[int, ...], moduli: tuple[int, ...]):
        facs = []
        for size in factor_sizes:
            gens = []
            for m, s in zip(moduli, size if isinstance(size, tuple) else (size,)):
                gens.append(str(s % m))
            facs.append("(" + ",".join(gens) + ")")
        line = f"{ring_text} | " + ",".join(facs)
        if line not in seen:
            seen.add(line)
            lines.append(line)

    for n in range(2, 61):
        for g in divisors(n):
            if g >= 2:
                emit(f"Z{n}", (g,), (n,))

    pps = sorted(
        q for q in range(2, 65) if is_prime_power(q) and squarefree_kernel(q) <= 64
    )
    for q in pps:
        p = squarefree_kernel(q)
        sizes = [p**a for a in range(1, 64) if p**a <= q]
        shapes: list[tuple[int, ...]] = []
        for k in (1, 2, 3):
            for combo in combinations_with_replacement_sorted(sizes, k):
                if prod(combo) <= 64:
                    shapes.append(combo)
        for shape in shapes:
            emit(f"Z{q}", shape, (q,))

    for n1 in range(2, 37):
        for n2 in range(n1, 37):
            if n1 * n2 > 36:
                continue
            ring_text = f"Z{n1}xZ{n2}"
            moduli = (n1, n2)
            from .rings import divisors as _divs

            ideals = [
                (g1, g2)
                for g1 in _divs(n1)
                for g2 in _divs(n2)
                if g1 * g2 >= 2
            ]
            ideals.sort()
            for k in (1, 2):
                for combo in combinations_with_replacement_sorted(ideals, k):
                    if prod(g1 * g2 for g1, g2 in combo) <= 64:
                        emit(ring_text, tuple(combo), moduli)
    return tuple(lines)


def combinations_with_replacement_sorted(items, k):
    from itertools import combinations_with_replacement

    return combinations_with_replacement(items, k)


def prod(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


@dataclass
class CorpusReport:
    instances: list[dict]
    totals: dict
    failures: list[dict]
    config: Config
    result_ids: tuple[str, ...]
    source: str

    @property
    def any_fail(self) -> bool:
        return self.totals.get(FAIL, 0) > 0

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "result_ids": list(self.result_ids),
            "seed": self.config.seed,
            "instances": self.instances,
            "totals": dict(sorted(self.totals.items())),
            "failures": self.failures,
        }


def run_corpus(
    instance_lines,
    result_ids: tuple[str, ...] | None = None,
    config: Config | None = None,
    source: str = "corpus",
    keep_results: bool = False,
) -> CorpusReport:
    """Expand, verify and aggregate; deterministic for a fixed seed.

    Relational statements pair every instance with the next instance over the
    same base ring (in corpus order), in addition to the instance itself.
    """
    from .cli import parse_instance

    cfg = config or Config()
    ids = REGISTRY_IDS if result_ids is None else tuple(result_ids)
    for rid in ids:
        if rid not in REGISTRY:
            raise UnknownResultError(rid)

    parsed = [parse_instance(line) for line in instance_lines]
    analyses = [
        Analysis(spec.module, cfg, instance_text=spec.text) for spec in parsed
    ]
    by_ring: dict[tuple[int, ...], list[int]] = {}
    for pos, a in enumerate(analyses):
        by_ring.setdefault(a.module.ring.moduli, []).append(pos)
    for positions in by_ring.values():
        for where, pos in enumerate(positions[:-1]):
            analyses[pos].partner = analyses[positions[where + 1]]

    rows: list[dict] = []
    failures: list[dict] = []
    totals = {PASS: 0, PASS_BOUNDED: 0, SKIPPED: 0, FAIL: 0}
    for a in analyses:
        results = run_instance(a, ids)
        counts = {PASS: 0, PASS_BOUNDED: 0, SKIPPED: 0, FAIL: 0}
        skips = {}
        bounded_ids = []
        for r in results:
            counts[r.status] += 1
            totals[r.status] += 1
            if r.status == SKIPPED:
                skips[r.result_id] = r.observations.get("unmet_hypothesis", "")
            if r.status == PASS_BOUNDED:
                bounded_ids.append(r.result_id)
            if r.status == FAIL:
                failures.append(r.to_json())
        row = {
            "instance": a.text,
            "counts": counts,
            "skipped": dict(sorted(skips.items())),
            "bounded": bounded_ids,
        }
        if keep_results:
            row["results"] = [r.to_json() for r in results]
        rows.append(row)
    return CorpusReport(rows, totals, failures, cfg, ids, source)
