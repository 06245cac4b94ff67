"""Finite modules over a FiniteRing: direct sums of cyclic factors R/A_j.

Elements are mixed-radix tuples indexed lexicographically; a submodule is a
bitmask over element indices, so set algebra is integer bit algebra and the
canonical ordering (cardinality, then lexicographic sorted element lists) has
a cheap byte-string key.  Submodule objects are interned per module, so every
derived datum (annihilator, socle, secondary flags) is computed once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import _abelian
from .rings import (
    FiniteRing,
    Ideal,
    RingElement,
    RingError,
    ideal_radical,
    is_prime_ideal,
    ring_spec,
)

DEFAULT_MAX_ELEMENTS = 4096
DEFAULT_MAX_HOMS = 4096


class ModuleError(ValueError):
    """Structurally invalid module-level construction."""


class SizeGuardError(RuntimeError):
    """Instance too large for exhaustive enumeration."""


def _mask_to_bool(mask: int, size: int) -> np.ndarray:
    raw = mask.to_bytes((size + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, np.uint8), count=size, bitorder="little").astype(bool)


def _bool_to_mask(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def _indices_to_mask(indices: np.ndarray | Sequence[int], size: int) -> int:
    arr = np.zeros(size, dtype=bool)
    arr[np.asarray(indices, dtype=np.int64)] = True
    return _bool_to_mask(arr)


class FiniteModule:
    """Direct sum of cyclic factors R/A_j with componentwise scalar action."""

    def __init__(self, ring: FiniteRing, factors: Iterable[Ideal]):
        facs = tuple(factors)
        if not facs:
            raise ModuleError("zero module excluded: no cyclic factors")
        for a in facs:
            if a.ring != ring:
                raise ModuleError("factor ideal over a different ring")
            if a.is_whole:
                raise ModuleError("zero cyclic factor: factor ideal is the whole ring")
        self.ring = ring
        self.factors = facs
        # surviving coordinate slots: (factor j, ring component i) with g_ji > 1
        self.slots = tuple(
            (j, i)
            for j, a in enumerate(facs)
            for i, g in enumerate(a.gens)
            if g > 1
        )
        self.radices = tuple(facs[j].gens[i] for j, i in self.slots)
        self.size = math.prod(self.radices)
        strides = []
        acc = 1
        for r in reversed(self.radices):
            strides.append(acc)
            acc *= r
        self.strides = tuple(reversed(strides))
        self._np_radices = np.array(self.radices, dtype=np.int64)
        self._np_strides = np.array(self.strides, dtype=np.int64)
        self._cache: dict = {}
        self._subs: dict[int, Submodule] = {}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteModule)
            and self.ring == other.ring
            and self.factors == other.factors
        )

    def __hash__(self) -> int:
        return hash(("FiniteModule", self.ring.moduli, tuple(a.gens for a in self.factors)))

    def __repr__(self) -> str:
        return f"FiniteModule({self.ring.text}, [{', '.join(a.text for a in self.factors)}])"

    @property
    def text(self) -> str:
        return f"{self.ring.text} | " + ",".join(a.text for a in self.factors)

    # -- element machinery ------------------------------------------------

    def coords(self) -> np.ndarray:
        """(size, nslots) coordinate matrix; row k decodes element index k."""
        if "coords" not in self._cache:
            idx = np.arange(self.size, dtype=np.int64)
            out = np.empty((self.size, len(self.slots)), dtype=np.int64)
            for t, (stride, radix) in enumerate(zip(self.strides, self.radices)):
                out[:, t] = (idx // stride) % radix
            out.setflags(write=False)
            self._cache["coords"] = out
        return self._cache["coords"]

    def encode(self, coord_rows: np.ndarray) -> np.ndarray:
        return (coord_rows % self._np_radices) @ self._np_strides

    def element_coords(self, index: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.coords()[index])

    def scalar_table(self, r: RingElement) -> np.ndarray:
        """Index permutation-with-collapse x -> r*x."""
        if r.ring != self.ring:
            raise ModuleError("scalar from a different ring")
        key = ("act", r.residues)
        if key not in self._cache:
            mult = np.array([r.residues[i] for _, i in self.slots], dtype=np.int64)
            table = self.encode(self.coords() * mult)
            table.setflags(write=False)
            self._cache[key] = table
        return self._cache[key]

    def add_indices(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Sorted unique indices of {x + y : x in a, y in b}."""
        coords = self.coords()
        summed = coords[np.asarray(a, dtype=np.int64)][:, None, :] + coords[np.asarray(b, dtype=np.int64)][None, :, :]
        return np.unique(self.encode(summed.reshape(-1, len(self.slots))))

    def cyclic_indices(self, gen_index: int) -> np.ndarray:
        """Sorted unique indices of R*g."""
        key = ("cyc", gen_index)
        if key not in self._cache:
            res_matrix = np.array(
                [[e.residues[i] for _, i in self.slots] for e in self.ring.elements()],
                dtype=np.int64,
            )
            rows = res_matrix * self.coords()[gen_index]
            self._cache[key] = np.unique(self.encode(rows))
        return self._cache[key]

    def factor_generator_index(self, j: int) -> int:
        coords = np.array(
            [1 if jj == j else 0 for jj, _ in self.slots], dtype=np.int64
        )
        return int(coords @ self._np_strides)

    # -- submodule interning ----------------------------------------------

    def submodule(self, mask: int, gens: tuple[int, ...] | None = None) -> "Submodule":
        sub = self._subs.get(mask)
        if sub is None:
            sub = Submodule(self, mask, gens)
            self._subs[mask] = sub
        elif sub._gens is None and gens is not None:
            sub._gens = gens
        return sub

    def submodule_from_indices(self, indices: np.ndarray | Sequence[int], gens=None) -> "Submodule":
        return self.submodule(_indices_to_mask(indices, self.size), gens)

    @property
    def zero_submodule(self) -> "Submodule":
        return self.submodule(1, gens=())

    @property
    def full_submodule(self) -> "Submodule":
        return self.submodule((1 << self.size) - 1)

    def span(self, gen_indices: Sequence[int]) -> "Submodule":
        cur = np.array([0], dtype=np.int64)
        for g in gen_indices:
            cur = self.add_indices(cur, self.cyclic_indices(int(g)))
        return self.submodule_from_indices(cur, gens=tuple(int(g) for g in gen_indices))


class Submodule:
    """Interned view of a submodule: (parent, element bitmask)."""

    __slots__ = ("parent", "mask", "_gens", "_derived")

    def __init__(self, parent: FiniteModule, mask: int, gens: tuple[int, ...] | None = None):
        if not mask & 1:
            raise ModuleError("submodule must contain 0")
        self.parent = parent
        self.mask = mask
        self._gens = gens
        self._derived: dict = {}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Submodule)
            and self.mask == other.mask
            and self.parent == other.parent
        )

    def __hash__(self) -> int:
        return hash((self.mask, self.parent))

    def __repr__(self) -> str:
        return f"<submodule {self.text} of {self.parent.text}>"

    @property
    def indices(self) -> np.ndarray:
        if "idx" not in self._derived:
            arr = np.nonzero(_mask_to_bool(self.mask, self.parent.size))[0]
            arr.setflags(write=False)
            self._derived["idx"] = arr
        return self._derived["idx"]

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    @property
    def is_zero(self) -> bool:
        return self.mask == 1

    @property
    def is_full(self) -> bool:
        return self.cardinality == self.parent.size

    def contains(self, other: "Submodule") -> bool:
        return self.mask | other.mask == self.mask

    @property
    def text(self) -> str:
        return "{" + ",".join(str(int(i)) for i in self.indices) + "}"

    def sort_key(self) -> tuple[int, bytes]:
        """Canonical order: cardinality, then lexicographic sorted element lists.

        For equal cardinality the lexicographically smaller element list is
        the one containing the smallest differing index, which is byte order
        on the complemented big-endian bit string.
        """
        if "key" not in self._derived:
            arr = _mask_to_bool(self.mask, self.parent.size)
            self._derived["key"] = (
                self.cardinality,
                np.packbits(~arr, bitorder="big").tobytes(),
            )
        return self._derived["key"]

    @property
    def generators(self) -> tuple[int, ...]:
        """A generating list with no redundant member (pruned greedily)."""
        if "mingens" not in self._derived:
            gens = list(self._raw_generators())
            changed = True
            while changed:
                changed = False
                for g in list(gens):
                    rest = [h for h in gens if h != g]
                    if self.parent.span(rest).mask == self.mask:
                        gens = rest
                        changed = True
                        break
            self._derived["mingens"] = tuple(gens)
        return self._derived["mingens"]

    def _raw_generators(self) -> tuple[int, ...]:
        if self._gens is not None:
            return self._gens
        self._gens = tuple(int(i) for i in self.indices if i != 0)
        return self._gens


def build_module(ring: FiniteRing, factor_ideals: Iterable[Ideal]) -> FiniteModule:
    return FiniteModule(ring, factor_ideals)


def cyclic_submodule(module: FiniteModule, element_index: int) -> Submodule:
    if not 0 <= element_index < module.size:
        raise ModuleError("element index out of range")
    return module.submodule_from_indices(
        module.cyclic_indices(element_index),
        gens=(element_index,) if element_index else (),
    )


def canonical_sort(subs: Iterable[Submodule]) -> tuple[Submodule, ...]:
    return tuple(sorted(subs, key=Submodule.sort_key))


def enumerate_submodules(
    module: FiniteModule, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> tuple[Submodule, ...]:
    """All submodules in canonical order.

    A submodule splits along ring components (the component idempotents act),
    and within one component Z/n every additive subgroup is a submodule, so
    the lattice is the product over components of the subgroup lattices
    enumerated by normal-form bases.
    """
    if "all_subs" in module._cache:
        return module._cache["all_subs"]
    if module.size > max_elements:
        raise SizeGuardError(
            f"instance too large: |M| = {module.size} exceeds the guard {max_elements}"
        )
    per_component: list[list[tuple[np.ndarray, tuple[int, ...]]]] = []
    for comp in range(module.ring.arity):
        slot_pos = [t for t, (_, i) in enumerate(module.slots) if i == comp]
        mods = tuple(module.radices[t] for t in slot_pos)
        strides = np.array([module.strides[t] for t in slot_pos], dtype=np.int64)
        entries: list[tuple[np.ndarray, tuple[int, ...]]] = []
        if not mods:
            entries.append((np.array([0], dtype=np.int64), ()))
        else:
            np_mods = np.array(mods, dtype=np.int64)
            for basis in _abelian.subgroup_bases(mods):
                vecs = _abelian.subgroup_element_array(mods, basis)
                partial = vecs @ strides
                gens = tuple(
                    int((np.array(row, dtype=np.int64) % np_mods) @ strides)
                    for ri, row in enumerate(basis)
                    if mods[ri] // row[ri] > 1
                )
                entries.append((np.sort(partial), gens))
        per_component.append(entries)

    subs = []
    for combo in product(*per_component):
        idx = np.array([0], dtype=np.int64)
        gens: tuple[int, ...] = ()
        for partial, g in combo:
            idx = (idx[:, None] + partial[None, :]).ravel()
            gens = gens + g
        subs.append(module.submodule_from_indices(idx, gens=tuple(g for g in gens if g)))
    result = canonical_sort(subs)
    module._cache["all_subs"] = result
    return result


def enumerate_submodules_joinclosure(
    module: FiniteModule, max_elements: int = 512
) -> tuple[Submodule, ...]:
    """Submodule lattice by join closure of the cyclic submodules.

    Visits every (submodule, cyclic) pair, so it only scales to a few hundred
    elements; it serves as an independent oracle for the normal-form
    enumeration.
    """
    if module.size > max_elements:
        raise SizeGuardError(
            f"instance too large: |M| = {module.size} exceeds the guard {max_elements}"
        )
    cyclics = {}
    for x in range(module.size):
        idx = module.cyclic_indices(x)
        cyclics[_indices_to_mask(idx, module.size)] = idx
    known: dict[int, np.ndarray] = {1: np.array([0], dtype=np.int64)}
    known.update(cyclics)
    queue = list(known.items())
    while queue:
        mask, idx = queue.pop()
        for cidx in cyclics.values():
            new = module.add_indices(idx, cidx)
            new_mask = _indices_to_mask(new, module.size)
            if new_mask not in known:
                known[new_mask] = new
                queue.append((new_mask, new))
    return canonical_sort(module.submodule(m) for m in known)


def submodule_sum(a: Submodule, b: Submodule) -> Submodule:
    if a.parent != b.parent:
        raise ModuleError("submodules of different modules")
    if a.contains(b):
        return a
    if b.contains(a):
        return b
    m = a.parent
    out = m.submodule_from_indices(m.add_indices(a.indices, b.indices))
    if out._gens is None and a._gens is not None and b._gens is not None:
        out._gens = a._gens + b._gens
    return out


def submodule_intersection(a: Submodule, b: Submodule) -> Submodule:
    if a.parent != b.parent:
        raise ModuleError("submodules of different modules")
    return a.parent.submodule(a.mask & b.mask)


def annihilator_of_submodule(sub: Submodule) -> Ideal:
    """Ann_R(N) as a canonical ideal (componentwise lcm over generators)."""
    if "ann" in sub._derived:
        return sub._derived["ann"]
    m = sub.parent
    gens_idx = sub._raw_generators()
    comp_gen = [1] * m.ring.arity
    if gens_idx:
        coords = m.coords()[np.array(gens_idx, dtype=np.int64)]
        for t, (_, i) in enumerate(m.slots):
            radix = m.radices[t]
            col = coords[:, t]
            need = radix // math.gcd(int(np.gcd.reduce(col)), radix)
            comp_gen[i] = math.lcm(comp_gen[i], need)
    ann = m.ring.ideal(comp_gen)
    sub._derived["ann"] = ann
    return ann


def radical_annihilator(sub: Submodule) -> Ideal:
    if "radann" not in sub._derived:
        sub._derived["radann"] = ideal_radical(annihilator_of_submodule(sub))
    return sub._derived["radann"]


def annihilated_submodule(module: FiniteModule, ideal: Ideal) -> Submodule:
    """Ann_M(I): the largest submodule killed by I."""
    if ideal.ring != module.ring:
        raise ModuleError("ideal over a different ring")
    key = ("annm", ideal.gens)
    if key not in module._cache:
        coords = module.coords()
        ok = np.ones(module.size, dtype=bool)
        for t, (_, i) in enumerate(module.slots):
            radix = module.radices[t]
            req = radix // math.gcd(ideal.gens[i], radix)
            ok &= coords[:, t] % req == 0
        module._cache[key] = module.submodule(_bool_to_mask(ok))
    return module._cache[key]


def _nonunits(ring: FiniteRing) -> tuple[RingElement, ...]:
    if "nonunits" not in ring._cache:
        ring._cache["nonunits"] = tuple(e for e in ring.elements() if not e.is_unit)
    return ring._cache["nonunits"]


def _image_state(sub: Submodule, r: RingElement) -> str:
    """Classify r*N as 'same', 'zero' or 'proper' (r*N is always inside N)."""
    img = sub.parent.scalar_table(r)[sub.indices]
    if not img.any():
        return "zero"
    if len(np.unique(img)) == sub.cardinality:
        return "same"
    return "proper"


def is_second(sub: Submodule) -> bool:
    """N != 0 and every scalar acts as a bijection or as zero on N.

    Units always act bijectively, so only nonunits are scanned.
    """
    if "second" not in sub._derived:
        ok = not sub.is_zero and all(
            _image_state(sub, r) != "proper" for r in _nonunits(sub.parent.ring)
        )
        sub._derived["second"] = ok
    return sub._derived["second"]


def is_secondary(sub: Submodule) -> bool:
    """N != 0 and every scalar acts bijectively or nilpotently on N."""
    if "secondary" not in sub._derived:
        if sub.is_zero:
            sub._derived["secondary"] = False
        else:
            radann = radical_annihilator(sub)
            sub._derived["secondary"] = all(
                radann.contains(r) or _image_state(sub, r) == "same"
                for r in _nonunits(sub.parent.ring)
            )
    return sub._derived["secondary"]


def _second_pieces(module: FiniteModule) -> dict[Ideal, Submodule]:
    """p -> Ann_M(p) for the primes that support second submodules."""
    if "second_pieces" not in module._cache:
        module._cache["second_pieces"] = {
            p: annihilated_submodule(module, p) for p in ring_spec(module.ring)
        }
    return module._cache["second_pieces"]


def socle(sub: Submodule) -> Submodule:
    """Sum of all second submodules of M contained in N (zero when none).

    A second submodule is a nonzero subgroup of some Ann_M(p), so the socle
    is the sum over primes of N intersect Ann_M(p).
    """
    if "socle" in sub._derived:
        return sub._derived["socle"]
    m = sub.parent
    out = m.zero_submodule
    for piece in _second_pieces(m).values():
        part = m.submodule(sub.mask & piece.mask)
        if not part.is_zero:
            out = submodule_sum(out, part)
    sub._derived["socle"] = out
    return out


@dataclass(frozen=True)
class SpectrumPointSet:
    parent: FiniteModule
    kind: str  # second-spectrum | secondary-like-spectrum | fiber-over-prime
    points: tuple[Submodule, ...]
    prime: Ideal | None = None

    def recheck(self) -> bool:
        """Re-test the defining predicate of every point."""
        for k in self.points:
            if self.kind == "second-spectrum":
                if not is_second(k):
                    return False
            else:
                if not (
                    is_secondary(k)
                    and annihilator_of_submodule(socle(k)) == radical_annihilator(k)
                ):
                    return False
            if self.kind == "fiber-over-prime" and radical_annihilator(k) != self.prime:
                return False
        return True


def spec_s(module: FiniteModule) -> SpectrumPointSet:
    """All second submodules: the nonzero subgroups of the Ann_M(p)."""
    if "spec_s" not in module._cache:
        subs: list[Submodule] = []
        for p, piece in _second_pieces(module).items():
            if piece.is_zero:
                continue
            comp = next(i for i, g in enumerate(p.gens) if g > 1)
            q = p.gens[comp]
            # Ann_M(p) is an F_q-space supported on the slots of that component
            # whose radix q divides; subgroups of it are exactly its subspaces.
            live = [
                t
                for t in range(len(module.slots))
                if module.slots[t][1] == comp and module.radices[t] % q == 0
            ]
            scale = np.array([module.radices[t] // q for t in live], dtype=np.int64)
            strides = np.array([module.strides[t] for t in live], dtype=np.int64)
            mods = tuple([q] * len(live))
            for basis in _abelian.subgroup_bases(mods):
                vecs = _abelian.subgroup_element_array(mods, basis)
                if len(vecs) == 1:
                    continue  # zero subgroup is not second
                idx = (vecs * scale) @ strides
                gens = tuple(
                    int(((np.array(row, dtype=np.int64) % q) * scale) @ strides)
                    for ri, row in enumerate(basis)
                    if row[ri] < q
                )
                subs.append(module.submodule_from_indices(idx, gens=gens))
        module._cache["spec_s"] = SpectrumPointSet(
            module, "second-spectrum", canonical_sort(subs)
        )
    return module._cache["spec_s"]


def spec_L(module: FiniteModule, max_elements: int = DEFAULT_MAX_ELEMENTS) -> SpectrumPointSet:
    """Secondary submodules K with Ann(soc(K)) equal to the radical of Ann(K)."""
    if "spec_L" not in module._cache:
        pts = [
            k
            for k in enumerate_submodules(module, max_elements)
            if not k.is_zero
            and is_secondary(k)
            and annihilator_of_submodule(socle(k)) == radical_annihilator(k)
        ]
        module._cache["spec_L"] = SpectrumPointSet(
            module, "secondary-like-spectrum", tuple(pts)
        )
    return module._cache["spec_L"]


def spec_L_fiber(module: FiniteModule, prime: Ideal) -> SpectrumPointSet:
    if not is_prime_ideal(prime):
        raise ModuleError(f"fiber base {prime.text} is not a prime ideal")
    pts = tuple(
        k for k in spec_L(module).points if radical_annihilator(k) == prime
    )
    return SpectrumPointSet(module, "fiber-over-prime", pts, prime=prime)


def minimal_submodules(module: FiniteModule) -> tuple[Submodule, ...]:
    """Nonzero submodules with no nonzero proper submodule: the prime-order second ones."""
    return tuple(
        s for s in spec_s(module).points if _is_prime_int(s.cardinality)
    )


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def is_comultiplication(module: FiniteModule, max_elements: int = DEFAULT_MAX_ELEMENTS) -> bool:
    """Every submodule has the form Ann_M(I), i.e. N == Ann_M(Ann_R(N))."""
    return all(
        annihilated_submodule(module, annihilator_of_submodule(n)).mask == n.mask
        for n in enumerate_submodules(module, max_elements)
    )


class ModuleHom:
    """Additive action-compatible map determined by images of factor generators."""

    def __init__(self, source: FiniteModule, target: FiniteModule, images: tuple[int, ...]):
        if source.ring != target.ring:
            raise ModuleError("modules over different rings")
        if len(images) != len(source.factors):
            raise ModuleError("one image per cyclic factor required")
        for j, y in enumerate(images):
            if not annihilated_submodule(target, source.factors[j]).mask >> y & 1:
                raise ModuleError(
                    f"generator image {y} is not annihilated by the factor ideal"
                )
        self.source = source
        self.target = target
        self.images = images
        self.table = self._build_table()

    def _build_table(self) -> np.ndarray:
        src, tgt = self.source, self.target
        acc = np.zeros((src.size, len(tgt.slots)), dtype=np.int64)
        tcoords = tgt.coords()
        scoords = src.coords()
        for j, y in enumerate(self.images):
            slot_pos = [t for t, (jj, _) in enumerate(src.slots) if jj == j]
            if not slot_pos:
                continue
            radices = [src.radices[t] for t in slot_pos]
            comps = [src.slots[t][1] for t in slot_pos]
            # partial images for each value of factor j
            nvals = math.prod(radices)
            vals = np.zeros(src.size, dtype=np.int64)
            stride = 1
            for t, radix in zip(reversed(slot_pos), reversed(radices)):
                vals += scoords[:, t] * stride
                stride *= radix
            partial = np.zeros((nvals, len(tgt.slots)), dtype=np.int64)
            v = np.arange(nvals, dtype=np.int64)
            lift = np.zeros((nvals, self.source.ring.arity), dtype=np.int64)
            stride = nvals
            for radix, comp in zip(radices, comps):
                stride //= radix
                lift[:, comp] = (v // stride) % radix
            for t, (_, i) in enumerate(tgt.slots):
                partial[:, t] = (lift[:, i] * tcoords[y, t]) % tgt.radices[t]
            acc += partial[vals]
        return tgt.encode(acc)

    @property
    def is_injective(self) -> bool:
        return int((self.table == 0).sum()) == 1

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.table)) == self.target.size

    def apply(self, sub: Submodule) -> Submodule:
        if sub.parent != self.source:
            raise ModuleError("submodule of a different module")
        return self.target.submodule_from_indices(np.unique(self.table[sub.indices]))

    def image(self) -> Submodule:
        return self.target.submodule_from_indices(np.unique(self.table))

    def preimage(self, sub: Submodule) -> Submodule:
        if sub.parent != self.target:
            raise ModuleError("submodule of a different module")
        member = _mask_to_bool(sub.mask, self.target.size)
        return self.source.submodule(_bool_to_mask(member[self.table]))

    def check_additive(self) -> bool:
        """Definitional check f(x+y) == f(x)+f(y) and f(rx) == r f(x), for tests."""
        src, tgt = self.source, self.target
        for x in range(src.size):
            for y in range(src.size):
                s = int(src.add_indices(np.array([x]), np.array([y]))[0])
                t = int(tgt.add_indices(np.array([self.table[x]]), np.array([self.table[y]]))[0])
                if int(self.table[s]) != t:
                    return False
        for r in src.ring.elements():
            if not np.array_equal(
                self.table[src.scalar_table(r)], tgt.scalar_table(r)[self.table]
            ):
                return False
        return True

    def __repr__(self) -> str:
        return f"<hom {self.source.text} -> {self.target.text} via {self.images}>"


def enumerate_homomorphisms(
    source: FiniteModule,
    target: FiniteModule,
    injective_only: bool = False,
    max_candidates: int = DEFAULT_MAX_HOMS,
) -> tuple[ModuleHom, ...]:
    """All homomorphisms, ordered lexicographically by generator-image tuples."""
    if source.ring != target.ring:
        raise ModuleError("modules over different rings")
    pools = [
        [int(i) for i in annihilated_submodule(target, a).indices] for a in source.factors
    ]
    total = math.prod(len(p) for p in pools)
    if total > max_candidates:
        raise SizeGuardError(
            f"instance too large: {total} homomorphism candidates exceed the guard {max_candidates}"
        )
    homs = []
    for images in product(*pools):
        h = ModuleHom(source, target, tuple(images))
        if injective_only and not h.is_injective:
            continue
        homs.append(h)
    return tuple(homs)


def sample_homomorphisms(
    source: FiniteModule,
    target: FiniteModule,
    count: int,
    seed: int,
    injective_only: bool = False,
) -> tuple[tuple[ModuleHom, ...], bool]:
    """Deterministic sample of homomorphisms; second value reports whether it is exhaustive.

    The identity images are always included when source == target.
    """
    import random

    pools = [
        [int(i) for i in annihilated_submodule(target, a).indices] for a in source.factors
    ]
    total = math.prod(len(p) for p in pools)
    if total <= count:
        return enumerate_homomorphisms(source, target, injective_only, max_candidates=total), True
    rng = random.Random(seed)
    chosen: set[tuple[int, ...]] = set()
    if source == target:
        chosen.add(tuple(source.factor_generator_index(j) for j in range(len(source.factors))))
    tries = 0
    while len(chosen) < count and tries < 20 * count:
        chosen.add(tuple(rng.choice(p) for p in pools))
        tries += 1
    homs = []
    for images in sorted(chosen):
        h = ModuleHom(source, target, images)
        if injective_only and not h.is_injective:
            continue
        homs.append(h)
    return tuple(homs), False
