"""Variety operators, explicit finite topologies and the topological predicates.

A FiniteTopology stores its closed-set family outright (as frozensets of
point indices), so closure, irreducibility, components, generic points and
the separation/soberness/spectrality predicates are all direct finite
computations.  Closed-set families are built from deduplication keys rather
than by looping over all submodules: the annihilator of N determines the
annihilator variety of N, and the socle of N determines the socle variety.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .modules import (
    DEFAULT_MAX_ELEMENTS,
    FiniteModule,
    ModuleError,
    Submodule,
    annihilated_submodule,
    annihilator_of_submodule,
    canonical_sort,
    enumerate_submodules,
    radical_annihilator,
    socle,
    spec_L,
    spec_s,
    submodule_sum,
    _second_pieces,
)
from .rings import FiniteRing, Ideal, RingElement, RingError, ring_spec

SL = "SL"
SECOND_ZARISKI = "second-Zariski"
BASE_RING_SPEC = "base-ring-spec"
QUASI_SL = "quasi-SL"
QUASI_SECOND = "quasi-second"

VARIETY_KINDS = ("nu_s", "nu_s_star", "V_s", "V_s_star")


class TopologyError(ValueError):
    """Raised when a closed-set family violates the topology axioms."""


@dataclass(frozen=True)
class TopoProperties:
    connected: bool
    t0: bool
    t1: bool
    sober: bool
    spectral: bool
    quasi_compact: bool

    def to_json(self) -> dict:
        return {
            "connected": self.connected,
            "t0": self.t0,
            "t1": self.t1,
            "sober": self.sober,
            "spectral": self.spectral,
            "quasi_compact": self.quasi_compact,
        }


class FiniteTopology:
    """A finite space given by its full closed-set family over tagged points."""

    def __init__(
        self,
        points: Sequence,
        closed_sets: Iterable[frozenset[int]],
        *,
        kind: str,
        base: Sequence[tuple[str, frozenset[int]]] | None = None,
        module: FiniteModule | None = None,
        ring: FiniteRing | None = None,
    ):
        self.points = tuple(points)
        self.kind = kind
        self.module = module
        self.ring = ring
        self.full = frozenset(range(len(self.points)))
        family = set(closed_sets)
        family.add(frozenset())
        family.add(self.full)
        self.closed_sets = tuple(sorted(family, key=lambda s: (len(s), sorted(s))))
        self._closed = frozenset(family)
        self.base = tuple(base) if base is not None else None
        self.is_empty = not self.points
        self._cache: dict = {}
        self._verify()

    def _verify(self) -> None:
        # pairwise closure suffices: any subfamily intersection or finite
        # union is a fold of pairwise ones over a finite family
        for a, b in combinations(self._closed, 2):
            if a | b not in self._closed:
                raise TopologyError("closed sets are not union-closed")
            if a & b not in self._closed:
                raise TopologyError("closed sets are not intersection-closed")
        if self.base is not None:
            opens = self.open_sets()
            openset = set(opens)
            for label, b in self.base:
                if b not in openset:
                    raise TopologyError(f"base set {label} is not open")
            for o in opens:
                union: frozenset[int] = frozenset()
                for _, b in self.base:
                    if b <= o:
                        union |= b
                if union != o:
                    raise TopologyError("base does not generate the open sets")

    # -- basic set calculus -------------------------------------------------

    def open_sets(self) -> tuple[frozenset[int], ...]:
        if "opens" not in self._cache:
            self._cache["opens"] = tuple(
                sorted((self.full - c for c in self.closed_sets), key=lambda s: (len(s), sorted(s)))
            )
        return self._cache["opens"]

    def is_closed(self, s: frozenset[int]) -> bool:
        return s in self._closed

    def is_open(self, s: frozenset[int]) -> bool:
        return (self.full - s) in self._closed

    def closure(self, s: Iterable[int]) -> frozenset[int]:
        fs = frozenset(s)
        out = self.full
        for c in self.closed_sets:
            if fs <= c and len(c) < len(out):
                out = c
        return out

    def point_closure(self, i: int) -> frozenset[int]:
        if "ptcl" not in self._cache:
            self._cache["ptcl"] = {}
        if i not in self._cache["ptcl"]:
            self._cache["ptcl"][i] = self.closure([i])
        return self._cache["ptcl"][i]

    def clopen_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(c for c in self.closed_sets if self.is_open(c))

    # -- predicates ----------------------------------------------------------

    def is_connected(self) -> bool:
        """No proper nonempty clopen subset; the empty space counts as connected."""
        return all(c in (frozenset(), self.full) for c in self.clopen_sets())

    def is_t0(self) -> bool:
        return len({self.point_closure(i) for i in range(len(self.points))}) == len(self.points)

    def is_t1(self) -> bool:
        return all(frozenset([i]) in self._closed for i in range(len(self.points)))

    def subspace_closed_family(self, s: frozenset[int]) -> tuple[frozenset[int], ...]:
        return tuple(sorted({c & s for c in self.closed_sets}, key=lambda x: (len(x), sorted(x))))

    def is_irreducible(self, s: Iterable[int]) -> bool:
        """Nonempty and not the union of two relatively-closed proper subsets."""
        fs = frozenset(s)
        if not fs:
            return False
        fam = [c for c in self.subspace_closed_family(fs) if c != fs]
        for a, b in combinations(fam, 2):
            if a | b == fs:
                return False
        return True

    def irreducible_closed_sets(self) -> tuple[frozenset[int], ...]:
        if "irrclosed" not in self._cache:
            self._cache["irrclosed"] = tuple(
                c for c in self.closed_sets if self.is_irreducible(c)
            )
        return self._cache["irrclosed"]

    def irreducible_components(self) -> tuple[frozenset[int], ...]:
        """Maximal irreducible subsets; in a finite space these are the
        maximal irreducible closed sets and they cover the space."""
        irr = self.irreducible_closed_sets()
        comps = tuple(c for c in irr if not any(c < d for d in irr))
        if not self.is_empty:
            covered = frozenset().union(*comps) if comps else frozenset()
            if covered != self.full:
                raise TopologyError("irreducible components fail to cover the space")
        return comps

    def generic_points(self, closed: frozenset[int]) -> tuple[int, ...]:
        if not self.is_closed(closed):
            raise TopologyError("generic points are defined for closed sets only")
        return tuple(i for i in sorted(closed) if self.point_closure(i) == closed)

    def is_sober(self) -> bool:
        return all(len(self.generic_points(c)) == 1 for c in self.irreducible_closed_sets())

    def properties(self) -> TopoProperties:
        t0 = self.is_t0()
        sober = self.is_sober()
        return TopoProperties(
            connected=self.is_connected(),
            t0=t0,
            t1=self.is_t1(),
            sober=sober,
            # finite specialization: quasi-compactness and the quasi-compact
            # open base condition are automatic, so spectral is T0 + sober
            spectral=t0 and sober,
            quasi_compact=True,
        )

    def point_set(self, idxs: Iterable[int]):
        return tuple(self.points[i] for i in sorted(idxs))

    def index_of(self, point) -> int:
        if "pt_index" not in self._cache:
            self._cache["pt_index"] = {p: i for i, p in enumerate(self.points)}
        return self._cache["pt_index"][point]


# -- varieties ---------------------------------------------------------------


@dataclass(frozen=True)
class VarietyResult:
    kind: str
    argument: Submodule
    points: tuple[Submodule, ...]


def _nu_s_points(module: FiniteModule, ann: Ideal) -> tuple[Submodule, ...]:
    return tuple(
        k for k in spec_L(module).points if radical_annihilator(k).includes(ann)
    )


def _nu_star_points(module: FiniteModule, n: Submodule) -> tuple[Submodule, ...]:
    return tuple(k for k in spec_L(module).points if n.contains(socle(k)))


def _v_s_points(module: FiniteModule, ann: Ideal) -> tuple[Submodule, ...]:
    return tuple(
        s for s in spec_s(module).points if annihilator_of_submodule(s).includes(ann)
    )


def _v_star_points(module: FiniteModule, n: Submodule) -> tuple[Submodule, ...]:
    return tuple(s for s in spec_s(module).points if n.contains(s))


def variety(module: FiniteModule, kind: str, sub: Submodule) -> VarietyResult:
    if kind not in VARIETY_KINDS:
        raise ValueError(f"unknown variety kind {kind!r}; expected one of {VARIETY_KINDS}")
    if sub.parent != module:
        raise ModuleError("submodule of a different module")
    ann = annihilator_of_submodule(sub)
    if kind == "nu_s":
        pts = _nu_s_points(module, ann)
    elif kind == "nu_s_star":
        pts = _nu_star_points(module, sub)
    elif kind == "V_s":
        pts = _v_s_points(module, ann)
    else:
        pts = _v_star_points(module, sub)
    return VarietyResult(kind, sub, pts)


# -- space construction --------------------------------------------------------


def realized_annihilators(module: FiniteModule, max_elements: int = DEFAULT_MAX_ELEMENTS) -> tuple[Ideal, ...]:
    key = "realized_anns"
    if key not in module._cache:
        anns = {annihilator_of_submodule(n) for n in enumerate_submodules(module, max_elements)}
        module._cache[key] = tuple(sorted(anns, key=Ideal.sort_key))
    return module._cache[key]


def socle_lattice(module: FiniteModule) -> tuple[Submodule, ...]:
    """All sums of second submodules (including the zero sum).

    These are the products over primes of the subspace lattices of the
    Ann_M(p), and they are exactly the possible socle values, so both
    socle-containment variety families are indexed by them.
    """
    key = "socle_lattice"
    if key not in module._cache:
        from itertools import product as _product

        import numpy as np

        from . import _abelian

        per_prime: list[list] = []
        for p, piece in _second_pieces(module).items():
            if piece.is_zero:
                continue
            comp = next(i for i, g in enumerate(p.gens) if g > 1)
            q = p.gens[comp]
            live = [
                t
                for t in range(len(module.slots))
                if module.slots[t][1] == comp and module.radices[t] % q == 0
            ]
            scale = np.array([module.radices[t] // q for t in live], dtype=np.int64)
            strides = np.array([module.strides[t] for t in live], dtype=np.int64)
            mods = tuple([q] * len(live))
            arrays = []
            for basis in _abelian.subgroup_bases(mods):
                vecs = _abelian.subgroup_element_array(mods, basis)
                arrays.append(np.sort((vecs * scale) @ strides))
            per_prime.append(arrays)
        out = []
        if not per_prime:
            out.append(module.zero_submodule)
        else:
            for combo in _product(*per_prime):
                idx = np.array([0], dtype=np.int64)
                for partial in combo:
                    idx = np.unique((idx[:, None] + partial[None, :]).ravel())
                out.append(module.submodule_from_indices(idx))
        module._cache[key] = canonical_sort(out)
    return module._cache[key]


def build_space(
    module: FiniteModule, which: str, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> FiniteTopology:
    key = ("space", which)
    if key in module._cache:
        return module._cache[key]
    if which == SL:
        points = spec_L(module, max_elements).points
        rad = [radical_annihilator(k) for k in points]
        family = {
            frozenset(i for i in range(len(points)) if rad[i].includes(ann))
            for ann in realized_annihilators(module, max_elements)
        }
        base = [
            (f"E_{r.text}", _base_e_indices(module, r, points, rad))
            for r in module.ring.elements()
        ]
        space = FiniteTopology(points, family, kind=SL, base=base, module=module)
    elif which == SECOND_ZARISKI:
        points = spec_s(module).points
        anns = [annihilator_of_submodule(s) for s in points]
        family = {
            frozenset(i for i in range(len(points)) if anns[i].includes(ann))
            for ann in realized_annihilators(module, max_elements)
        }
        space = FiniteTopology(points, family, kind=SECOND_ZARISKI, module=module)
    elif which == BASE_RING_SPEC:
        space = zariski_on_spec(module.ring)
    else:
        raise ValueError(f"unknown space kind {which!r}")
    module._cache[key] = space
    return space


def _base_e_indices(module, r, points, rad) -> frozenset[int]:
    annm = annihilated_submodule(module, module.ring.principal(r))
    ann = annihilator_of_submodule(annm)
    closed = frozenset(i for i in range(len(points)) if rad[i].includes(ann))
    return frozenset(range(len(points))) - closed


def zariski_on_spec(ring: FiniteRing) -> FiniteTopology:
    """Spec(R) with closed sets V(I) and the principal-open base D_r."""
    if "zariski" not in ring._cache:
        points = ring_spec(ring)
        family = {
            frozenset(i for i, p in enumerate(points) if p.includes(ideal))
            for ideal in ring.ideals()
        }
        base = []
        full = frozenset(range(len(points)))
        for r in ring.elements():
            v = frozenset(i for i, p in enumerate(points) if p.includes(ring.principal(r)))
            base.append((f"D_{r.text}", full - v))
        ring._cache["zariski"] = FiniteTopology(
            points, family, kind=BASE_RING_SPEC, base=base, ring=ring
        )
    return ring._cache["zariski"]


# -- quasi topologies (cotop checks) -------------------------------------------


@dataclass(frozen=True)
class CotopResult:
    holds: bool
    witness: tuple[Submodule, Submodule] | None
    topology: FiniteTopology | None

    def to_json(self) -> dict:
        out: dict = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = [self.witness[0].text, self.witness[1].text]
        return out


def _cotop_scan(module: FiniteModule, reps, value_of, points, kind: str) -> CotopResult:
    values = {}
    for w in reps:
        v = value_of(w)
        values.setdefault(v, w)
    family = set(values)
    witness = None
    for w1, w2 in combinations(sorted(values.values(), key=Submodule.sort_key), 2):
        union = value_of(w1) | value_of(w2)
        if union not in family:
            witness = (w1, w2)
            break
    if witness is not None:
        return CotopResult(False, witness, None)
    topo = FiniteTopology(points, family, kind=kind, module=module)
    return CotopResult(True, None, topo)


def is_secondary_cotop(module: FiniteModule, max_elements: int = DEFAULT_MAX_ELEMENTS) -> CotopResult:
    """Is the socle-containment variety family on the secondary-like spectrum
    closed under finite union?  The family is indexed by socle values."""
    points = spec_L(module, max_elements).points
    index = {k.mask: i for i, k in enumerate(points)}
    socs = [socle(k) for k in points]

    def value_of(w: Submodule) -> frozenset[int]:
        return frozenset(i for i in range(len(points)) if w.contains(socs[i]))

    return _cotop_scan(module, socle_lattice(module), value_of, points, QUASI_SL)


def is_cotop(module: FiniteModule, max_elements: int = DEFAULT_MAX_ELEMENTS) -> CotopResult:
    """Same union-closure question for containment varieties on the second spectrum."""
    points = spec_s(module).points

    def value_of(w: Submodule) -> frozenset[int]:
        return frozenset(i for i in range(len(points)) if w.contains(points[i]))

    return _cotop_scan(module, socle_lattice(module), value_of, points, QUASI_SECOND)


# -- closure helpers -------------------------------------------------------------


def socle_sum_H(module: FiniteModule, points: Iterable[Submodule]) -> Submodule:
    """Sum of the socles of the given points; the zero submodule for the empty family."""
    out = module.zero_submodule
    for k in points:
        out = submodule_sum(out, socle(k))
    return out


def closure(space: FiniteTopology, point_idxs: Iterable[int]) -> frozenset[int]:
    """Smallest closed superset; on SL-spaces cross-checked against the
    socle-sum variety formula."""
    fs = frozenset(point_idxs)
    out = space.closure(fs)
    if space.kind == SL and space.module is not None:
        module = space.module
        h = socle_sum_H(module, (space.points[i] for i in fs))
        ann = annihilator_of_submodule(h)
        formula = frozenset(
            i
            for i in range(len(space.points))
            if radical_annihilator(space.points[i]).includes(ann)
        )
        if formula != out:
            raise TopologyError("closure disagrees with the socle-sum variety formula")
    return out


def base_E(module: FiniteModule, r: RingElement, max_elements: int = DEFAULT_MAX_ELEMENTS) -> tuple[Submodule, ...]:
    """The basic open set E_r of the SL-topology."""
    if r.ring != module.ring:
        raise RingError("scalar from a different ring")
    space = build_space(module, SL, max_elements)
    points = space.points
    rad = [radical_annihilator(k) for k in points]
    return space.point_set(_base_e_indices(module, r, points, rad))


def verify_base(module: FiniteModule, max_elements: int = DEFAULT_MAX_ELEMENTS) -> bool:
    """The E_r generate the SL-opens, with E_0 empty and E_1 everything."""
    space = build_space(module, SL, max_elements)
    assert space.base is not None
    by_label = dict(space.base)
    if by_label[f"E_{module.ring.zero.text}"] != frozenset():
        return False
    if by_label[f"E_{module.ring.one.text}"] != space.full:
        return False
    for o in space.open_sets():
        union: frozenset[int] = frozenset()
        for _, b in space.base:
            if b <= o:
                union |= b
        if union != o:
            return False
    return True


# -- homeomorphism search ----------------------------------------------------------


def are_homeomorphic(a: FiniteTopology, b: FiniteTopology) -> tuple[bool, dict[int, int] | None]:
    """Backtracking search for a closure-preserving bijection.

    Candidate images are pruned by (closure size, closed-degree, open-degree)
    fingerprints; the spaces involved here are tiny, so completeness beats
    asymptotics.
    """
    if len(a.points) != len(b.points):
        return False, None
    if sorted(map(len, a.closed_sets)) != sorted(map(len, b.closed_sets)):
        return False, None

    def fingerprint(space: FiniteTopology, i: int):
        return (
            len(space.point_closure(i)),
            sum(1 for c in space.closed_sets if i in c),
            sum(1 for o in space.open_sets() if i in o),
        )

    n = len(a.points)
    fa = [fingerprint(a, i) for i in range(n)]
    fb = [fingerprint(b, i) for i in range(n)]
    if sorted(fa) != sorted(fb):
        return False, None
    candidates = [[j for j in range(n) if fb[j] == fa[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    target_family = set(b.closed_sets)
    assign: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == n:
            mapped = {frozenset(assign[i] for i in c) for c in a.closed_sets}
            return mapped == target_family
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            assign[i] = j
            used.add(j)
            if extend(k + 1):
                return True
            used.discard(j)
            del assign[i]
        return False

    if extend(0):
        return True, dict(assign)
    return False, None
