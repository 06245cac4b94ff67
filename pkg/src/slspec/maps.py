"""Point maps between spectra: the annihilator maps into Spec(R/Ann(M)) and
the map induced on secondary-like spectra by a module monomorphism."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .modules import (
    DEFAULT_MAX_ELEMENTS,
    FiniteModule,
    ModuleError,
    ModuleHom,
    Submodule,
    annihilated_submodule,
    annihilator_of_submodule,
    radical_annihilator,
    spec_L,
    spec_s,
)
from .rings import Ideal, QuotientRing, RingError, quotient_ring
from .topology import (
    BASE_RING_SPEC,
    SECOND_ZARISKI,
    SL,
    FiniteTopology,
    build_space,
    zariski_on_spec,
)


class MapError(ValueError):
    """Invalid spectrum-map construction."""


@dataclass
class SpectrumMap:
    source: FiniteTopology
    target: FiniteTopology
    assignment: tuple[int, ...]  # target point index per source point index
    label: str
    quotient: QuotientRing | None = None
    module: FiniteModule | None = None
    hom: ModuleHom | None = None

    @property
    def degenerate(self) -> bool:
        return not self.source.points

    def image_of(self, i: int) -> int:
        return self.assignment[i]

    def image_set(self, idxs) -> frozenset[int]:
        return frozenset(self.assignment[i] for i in idxs)

    def preimage_set(self, idxs) -> frozenset[int]:
        target = frozenset(idxs)
        return frozenset(i for i, j in enumerate(self.assignment) if j in target)


@dataclass
class MapReport:
    injective: bool
    surjective: bool
    continuous: bool
    open_map: bool
    closed_map: bool
    homeomorphism: bool
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "injective": self.injective,
            "surjective": self.surjective,
            "continuous": self.continuous,
            "open": self.open_map,
            "closed": self.closed_map,
            "homeomorphism": self.homeomorphism,
        }
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out


def _point_text(p) -> str:
    return p.text


def ann_quotient(module: FiniteModule) -> QuotientRing:
    if "ann_quotient" not in module._cache:
        ann_m = annihilator_of_submodule(module.full_submodule)
        module._cache["ann_quotient"] = quotient_ring(module.ring, ann_m)
    return module._cache["ann_quotient"]


def phi_map(module: FiniteModule, max_elements: int = DEFAULT_MAX_ELEMENTS) -> SpectrumMap:
    """K |-> radical annihilator of K, taken in R/Ann(M)."""
    key = "phi_map"
    if key not in module._cache:
        source = build_space(module, SL, max_elements)
        qr = ann_quotient(module)
        target = zariski_on_spec(qr.ring)
        assignment = tuple(
            target.index_of(qr.ideal_to_quotient(radical_annihilator(k)))
            for k in source.points
        )
        module._cache[key] = SpectrumMap(source, target, assignment, "phi", qr, module)
    return module._cache[key]


def psi_map(module: FiniteModule, max_elements: int = DEFAULT_MAX_ELEMENTS) -> SpectrumMap:
    """S |-> annihilator of S, taken in R/Ann(M); the annihilator of a second
    submodule is already prime."""
    key = "psi_map"
    if key not in module._cache:
        source = build_space(module, SECOND_ZARISKI, max_elements)
        qr = ann_quotient(module)
        target = zariski_on_spec(qr.ring)
        assignment = tuple(
            target.index_of(qr.ideal_to_quotient(annihilator_of_submodule(s)))
            for s in source.points
        )
        module._cache[key] = SpectrumMap(source, target, assignment, "psi", qr, module)
    return module._cache[key]


def map_report(m: SpectrumMap) -> MapReport:
    witnesses: dict = {}
    n = len(m.source.points)

    injective = True
    seen: dict[int, int] = {}
    for i, j in enumerate(m.assignment):
        if j in seen:
            injective = False
            witnesses["injective"] = {
                "kind": "map_not_injective",
                "points": [_point_text(m.source.points[seen[j]]), _point_text(m.source.points[i])],
                "image": _point_text(m.target.points[j]),
            }
            break
        seen[j] = i

    missed = set(range(len(m.target.points))) - set(m.assignment)
    surjective = not missed
    if missed:
        witnesses["surjective"] = {
            "kind": "map_not_surjective",
            "missed": _point_text(m.target.points[min(missed)]),
        }

    continuous = True
    for c in m.target.closed_sets:
        pre = m.preimage_set(c)
        if not m.source.is_closed(pre):
            continuous = False
            witnesses["continuous"] = {
                "kind": "map_not_continuous",
                "closed": sorted(_point_text(m.target.points[i]) for i in c),
            }
            break

    open_map = True
    for o in m.source.open_sets():
        img = m.image_set(o)
        if not m.target.is_open(img):
            open_map = False
            witnesses["open"] = {
                "kind": "map_not_open",
                "open": sorted(_point_text(m.source.points[i]) for i in o),
            }
            break

    closed_map = True
    for c in m.source.closed_sets:
        img = m.image_set(c)
        if not m.target.is_closed(img):
            closed_map = False
            witnesses["closed"] = {
                "kind": "map_not_closed",
                "closed": sorted(_point_text(m.source.points[i]) for i in c),
            }
            break

    homeo = injective and surjective and continuous and open_map
    return MapReport(injective, surjective, continuous, open_map, closed_map, homeo, witnesses)


def preimage_closed(m: SpectrumMap, ideal: Ideal) -> tuple:
    """Preimage of the target closed set V(I-bar); cross-checked against the
    matching annihilator variety downstairs."""
    if m.quotient is None or m.module is None:
        raise MapError("map does not carry a base-ring quotient")
    ann_m = m.quotient.ideal
    if not ideal.includes(ann_m):
        raise MapError("ideal does not contain the annihilator of the module")
    ibar = m.quotient.ideal_to_quotient(ideal)
    closed = frozenset(
        i for i, p in enumerate(m.target.points) if p.includes(ibar)
    )
    pre = m.preimage_set(closed)
    annm_sub = annihilated_submodule(m.module, ideal)
    ann = annihilator_of_submodule(annm_sub)
    if m.label == "phi":
        expected = frozenset(
            i
            for i, k in enumerate(m.source.points)
            if radical_annihilator(k).includes(ann)
        )
    else:
        expected = frozenset(
            i
            for i, s in enumerate(m.source.points)
            if annihilator_of_submodule(s).includes(ann)
        )
    if pre != expected:
        raise MapError("preimage disagrees with the annihilator variety formula")
    return m.source.point_set(pre)


def induced_rho(hom: ModuleHom, max_elements: int = DEFAULT_MAX_ELEMENTS) -> SpectrumMap:
    """The map K |-> f(K) between secondary-like spectra of a monomorphism f."""
    if not hom.is_injective:
        dup = _injectivity_witness(hom)
        raise MapError(f"not a monomorphism: elements {dup} share an image")
    source = build_space(hom.source, SL, max_elements)
    target = build_space(hom.target, SL, max_elements)
    assignment = []
    for k in source.points:
        img = hom.apply(k)
        try:
            assignment.append(target.index_of(img))
        except KeyError as exc:  # pragma: no cover - guarded by theory
            raise MapError(
                f"image {img.text} of {k.text} is not a secondary-like point"
            ) from exc
    m = SpectrumMap(source, target, tuple(assignment), "rho", None, hom.source, hom)
    report = map_report(m)
    if not report.injective or not report.continuous:
        raise MapError("induced map failed injectivity or continuity")
    if report.surjective and not report.homeomorphism:
        raise MapError("surjective induced map failed to be a homeomorphism")
    return m


def _injectivity_witness(hom: ModuleHom) -> tuple[int, int]:
    order = np.argsort(hom.table, kind="stable")
    tab = hom.table[order]
    dup = np.nonzero(tab[1:] == tab[:-1])[0][0]
    return int(order[dup]), int(order[dup + 1])


def preimage_point_spectrum(hom: ModuleHom, target_point: Submodule) -> Submodule:
    """f^{-1}(N') for a secondary-like N' inside the image of f."""
    if target_point.parent != hom.target:
        raise MapError("point of a different module")
    if target_point not in set(spec_L(hom.target).points):
        raise MapError("point is not in the secondary-like spectrum of the target")
    if not hom.image().contains(target_point):
        raise MapError("point is not contained in the image of the monomorphism")
    pre = hom.preimage(target_point)
    if pre not in set(spec_L(hom.source).points):  # pragma: no cover - guarded by theory
        raise MapError("preimage is not a secondary-like point")
    return pre
