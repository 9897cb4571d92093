"""Tiled surfaces: folded {a,b,c,d}-labeled graphs with octagons glued along relator cycles.

Every vertex carries 8 cyclically ordered half-edge slots

    0 a-out, 1 b-in, 2 a-in, 3 b-out, 4 c-out, 5 d-in, 6 c-in, 7 d-out

and gap k is the corner region between slot k and slot k+1. An octagon is
stored by its base vertex, the start of its closed path spelling abABcdCD.
Its corner at path position p occupies gap ``GAP_OF_POS[p]`` of that corner
vertex.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .perms import compose, identity, inverse
from .words import LETTERS, RELATOR, WordError, cyclic_reduce, parse_word

SLOT_OUT = {"a": 0, "b": 3, "c": 4, "d": 7}
SLOT_IN = {"a": 2, "b": 1, "c": 6, "d": 5}
SLOT_LETTER = ("a", "b", "a", "b", "c", "d", "c", "d")
SLOT_IS_OUT = (True, False, False, True, True, False, False, True)
OPPOSITE_SLOT = (2, 3, 0, 1, 6, 7, 4, 5)
GAP_OF_POS = (7, 2, 1, 0, 3, 6, 5, 4)
POS_OF_GAP = tuple(GAP_OF_POS.index(k) for k in range(8))

SURFACE_FORMAT_VERSION = 1


class SurfaceError(ValueError):
    """Raised when data does not describe a valid tiled surface."""


def slot_of_step(letter: str) -> int:
    """Slot used when leaving a vertex along a letter (upper case walks backwards)."""
    f = letter.lower()
    return SLOT_OUT[f] if letter == f else SLOT_IN[f]


@dataclass(frozen=True)
class SurfaceStats:
    vertices: int
    edges: int
    edges_by_letter: tuple[int, int, int, int]
    octagons: int
    boundary_length: int
    deficit: int
    euler_characteristic: int
    theta: int

    def as_dict(self) -> dict:
        return {
            "v": self.vertices,
            "e": self.edges,
            "e_f": dict(zip(LETTERS, self.edges_by_letter)),
            "f": self.octagons,
            "d": self.boundary_length,
            "D": self.deficit,
            "chi": self.euler_characteristic,
            "theta": self.theta,
        }


@dataclass(frozen=True)
class TiledSurface:
    vertices: tuple[int, ...]
    edges: tuple[tuple[str, int, int], ...]
    octagons: frozenset[int] = frozenset()
    _slots: dict = field(default=None, compare=False, repr=False, hash=False)
    _gaps: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        edges = tuple(sorted(set((str(f), int(s), int(t)) for f, s, t in self.edges)))
        octs = frozenset(self.octagons)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "octagons", octs)
        vset = set(verts)
        slots = {v: [None] * 8 for v in verts}
        for f, s, t in edges:
            if f not in SLOT_OUT:
                raise SurfaceError(f"bad edge label {f!r}")
            if s not in vset or t not in vset:
                raise SurfaceError(f"edge {(f, s, t)} has an endpoint outside the vertex set")
            so, si = SLOT_OUT[f], SLOT_IN[f]
            if slots[s][so] is not None or slots[t][si] is not None:
                raise SurfaceError(f"not folded at edge {(f, s, t)}")
            slots[s][so] = t
            slots[t][si] = s
        object.__setattr__(self, "_slots", {v: tuple(x) for v, x in slots.items()})
        gaps = {v: 0 for v in verts}
        for base in octs:
            corners = self.relator_path(base)
            if corners is None:
                raise SurfaceError(f"no relator cycle at octagon base {base}")
            for p, v in enumerate(corners):
                bit = 1 << GAP_OF_POS[p]
                if gaps[v] & bit:
                    raise SurfaceError(f"two octagons share a corner at vertex {v}")
                gaps[v] |= bit
        object.__setattr__(self, "_gaps", gaps)

    # --- local structure ------------------------------------------------

    def neighbor(self, v: int, slot: int) -> int | None:
        return self._slots[v][slot]

    def slots(self, v: int) -> tuple:
        return self._slots[v]

    def step(self, v: int, letter: str) -> int | None:
        return self._slots[v][slot_of_step(letter)]

    def walk(self, v: int, word: str) -> int | None:
        for x in word:
            v = self._slots[v][slot_of_step(x)]
            if v is None:
                return None
        return v

    def relator_path(self, v: int) -> list[int] | None:
        """Corners v0..v7 of the closed relator path from v, or None if it is not closed."""
        corners = [v]
        cur = v
        for x in RELATOR:
            cur = self._slots[cur][slot_of_step(x)]
            if cur is None:
                return None
            corners.append(cur)
        if corners[-1] != v:
            return None
        return corners[:-1]

    def gap_mask(self, v: int) -> int:
        return self._gaps[v]

    def gap_filled(self, v: int, gap: int) -> bool:
        return bool(self._gaps[v] >> gap & 1)

    def degree(self, v: int) -> int:
        return sum(1 for w in self._slots[v] if w is not None)

    # --- global structure -----------------------------------------------

    def edges_by_letter(self) -> tuple[int, int, int, int]:
        counts = dict.fromkeys(LETTERS, 0)
        for f, _, _ in self.edges:
            counts[f] += 1
        return tuple(counts[f] for f in LETTERS)

    def stats(self) -> SurfaceStats:
        v, e, f = len(self.vertices), len(self.edges), len(self.octagons)
        d = 2 * e - 8 * f
        return SurfaceStats(v, e, self.edges_by_letter(), f, d, v - f, v - e + f, f - d)

    def components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = []
            queue = deque([start])
            seen.add(start)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self._slots[v]:
                    if w is not None and w not in seen:
                        seen.add(w)
                        queue.append(w)
            out.append(tuple(sorted(comp)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_boundaryless(self) -> bool:
        return all(self._gaps[v] == 0xFF for v in self.vertices)

    def one_skeleton(self) -> "TiledSurface":
        return TiledSurface(self.vertices, self.edges, frozenset())

    def relabel(self, mapping: Mapping[int, int]) -> "TiledSurface":
        return TiledSurface(
            tuple(mapping[v] for v in self.vertices),
            tuple((f, mapping[s], mapping[t]) for f, s, t in self.edges),
            frozenset(mapping[b] for b in self.octagons),
        )

    def sub(self, vertices: Iterable[int]) -> "TiledSurface":
        """Full subcomplex spanned by a vertex subset."""
        keep = set(vertices)
        edges = [(f, s, t) for f, s, t in self.edges if s in keep and t in keep]
        sub1 = TiledSurface(tuple(keep), tuple(edges))
        octs = [b for b in self.octagons if b in keep and sub1.relator_path(b) is not None]
        return TiledSurface(tuple(keep), tuple(edges), frozenset(octs))

    # --- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        octagons = []
        for base in sorted(self.octagons):
            corners = self.relator_path(base)
            sides = []
            for p, x in enumerate(RELATOR):
                u, w = corners[p], corners[(p + 1) % 8]
                f = x.lower()
                sides.append([f, u, w, 1] if x == f else [f, w, u, -1])
            octagons.append({"base": base, "sides": sides})
        return {
            "format": "tiled-surface",
            "version": SURFACE_FORMAT_VERSION,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "octagons": octagons,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "TiledSurface":
        if data.get("format") != "tiled-surface":
            raise SurfaceError("not a tiled-surface document")
        if data.get("version") != SURFACE_FORMAT_VERSION:
            raise SurfaceError(f"unsupported surface format version {data.get('version')}")
        edges = tuple((f, int(s), int(t)) for f, s, t in data["edges"])
        bases = []
        for octagon in data.get("octagons", []):
            bases.append(int(octagon["base"]) if isinstance(octagon, Mapping) else int(octagon))
        surf = cls(tuple(int(v) for v in data["vertices"]), edges, frozenset(bases))
        for octagon in data.get("octagons", []):
            if isinstance(octagon, Mapping) and "sides" in octagon:
                expected = surf.to_dict()["octagons"]
                listed = {o["base"]: o["sides"] for o in expected}
                if listed[int(octagon["base"])] != [list(s) for s in octagon["sides"]]:
                    raise SurfaceError(f"octagon sides at base {octagon['base']} do not match")
        return surf

    @classmethod
    def from_json(cls, text: str) -> "TiledSurface":
        return cls.from_dict(json.loads(text))


# --- constructors ------------------------------------------------------


def single_vertex() -> TiledSurface:
    return TiledSurface((0,), ())


def empty_surface() -> TiledSurface:
    return TiledSurface((), ())


def from_word(word: str) -> TiledSurface:
    """The annulus of a word: a cycle of edges spelling its cyclic reduction."""
    w = cyclic_reduce(parse_word(word))
    if not w:
        raise WordError(f"word {word!r} is trivial in the free group")
    n = len(w)
    edges = []
    for i, x in enumerate(w):
        f = x.lower()
        j = (i + 1) % n
        edges.append((f, i, j) if x == f else (f, j, i))
    return TiledSurface(tuple(range(n)), tuple(edges))


def relator_value(perms: Mapping[str, Sequence[int]]) -> tuple[int, ...]:
    """Endpoint map of the relator path: d^-1 c^-1 d c b^-1 a^-1 b a as functions."""
    a, b, c, d = (perms[f] for f in LETTERS)
    return compose(inverse(d), inverse(c), d, c, inverse(b), inverse(a), b, a)


def is_cover_tuple(perms: Mapping[str, Sequence[int]]) -> bool:
    n = len(perms["a"])
    return relator_value(perms) == identity(n)


def cover_from_permutations(perms: Mapping[str, Sequence[int]] | Sequence[Sequence[int]]) -> TiledSurface:
    """Boundaryless surface of a cover: f-edges i -> perms[f][i] and an octagon at every vertex."""
    if not isinstance(perms, Mapping):
        perms = dict(zip(LETTERS, perms))
    n = len(perms["a"])
    if not is_cover_tuple(perms):
        raise SurfaceError("the permutations do not satisfy the surface relator")
    edges = tuple((f, i, int(perms[f][i])) for f in LETTERS for i in range(n))
    return TiledSurface(tuple(range(n)), edges, frozenset(range(n)))


# --- folding -----------------------------------------------------------


def fold_edges(vertices: Iterable[int], edges: Iterable[tuple[str, int, int]]) -> tuple[dict, list]:
    """Stallings folding: returns (vertex -> representative, folded edge list)."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = list(edges)
    for _, s, t in edges:
        parent.setdefault(s, s)
        parent.setdefault(t, t)
    changed = True
    while changed:
        changed = False
        out: dict = {}
        inc: dict = {}
        for f, s, t in edges:
            rs, rt = find(s), find(t)
            for table, key, val in ((out, (f, rs), rt), (inc, (f, rt), rs)):
                other = table.get(key)
                if other is None:
                    table[key] = val
                elif find(other) != find(val):
                    a, b = find(other), find(val)
                    if a > b:
                        a, b = b, a
                    parent[b] = a
                    changed = True
    rep = {v: find(v) for v in parent}
    folded = sorted({(f, rep[s], rep[t]) for f, s, t in edges})
    return rep, folded


def fold(vertices: Iterable[int], edges: Iterable[tuple[str, int, int]], octagons: Iterable[int] = ()) -> tuple[TiledSurface, dict]:
    """Fold a pre-complex; octagons follow their base vertices."""
    rep, folded = fold_edges(vertices, edges)
    surf = TiledSurface(tuple(set(rep.values())), tuple(folded), frozenset(rep[b] for b in octagons))
    return surf, rep


# --- boundary ----------------------------------------------------------


@dataclass(frozen=True)
class BoundaryCycle:
    """A boundary component of the thick surface.

    ``darts[k] = (v, slot)`` is an edge traversal arriving at v through the
    slot; ``gaps[k]`` counts hanging half-edges passed at v before the next
    dart. An isolated vertex gives a cycle without darts and ``gaps == (8,)``.
    """

    darts: tuple[tuple[int, int], ...]
    gaps: tuple[int, ...]
    vertex: int | None = None

    @property
    def length(self) -> int:
        return len(self.darts)

    def units(self) -> list[tuple]:
        """Boundary units in order: ("E", v, slot) for a dart, ("H", v, slot) for a hanging half-edge."""
        if not self.darts:
            return [("H", self.vertex, s) for s in range(8)]
        out = []
        for (v, i), g in zip(self.darts, self.gaps):
            out.append(("E", v, i))
            for k in range(1, g + 1):
                out.append(("H", v, (i + k) % 8))
        return out


def _next_dart(Y: TiledSurface, v: int, i: int) -> tuple[int, tuple[int, int]]:
    slots = Y.slots(v)
    for k in range(1, 9):
        j = (i + k) % 8
        w = slots[j]
        if w is not None:
            return k - 1, (w, OPPOSITE_SLOT[j])
    raise AssertionError("dart at a vertex without edges")


def boundary_cycles(Y: TiledSurface) -> list[BoundaryCycle]:
    darts = []
    for v in Y.vertices:
        slots = Y.slots(v)
        mask = Y.gap_mask(v)
        for i in range(8):
            if slots[i] is not None and not (mask >> i & 1):
                darts.append((v, i))
    seen: set = set()
    cycles = []
    for start in darts:
        if start in seen:
            continue
        seq, gaps = [], []
        cur = start
        while cur not in seen:
            seen.add(cur)
            seq.append(cur)
            g, nxt = _next_dart(Y, *cur)
            gaps.append(g)
            cur = nxt
        if cur != start:
            raise SurfaceError("boundary traversal did not close up")
        cycles.append(BoundaryCycle(tuple(seq), tuple(gaps)))
    for v in Y.vertices:
        if Y.degree(v) == 0:
            cycles.append(BoundaryCycle((), (8,), v))
    return cycles


@dataclass(frozen=True)
class Block:
    start: int
    length: int
    cyclic: bool = False


@dataclass(frozen=True)
class CycleClassification:
    cycle: BoundaryCycle
    blocks: tuple[Block, ...]
    long_blocks: tuple[int, ...]
    half_blocks: tuple[int, ...]
    long_chains: tuple[tuple[int, ...], ...]
    half_chain: bool


def maximal_blocks(cycle: BoundaryCycle) -> list[Block]:
    L = cycle.length
    if L == 0:
        return []
    if all(g == 0 for g in cycle.gaps):
        return [Block(0, L, True)]
    # start right after a nonzero gap
    first = next(k for k in range(L) if cycle.gaps[k - 1] != 0)
    blocks = []
    k = first
    covered = 0
    while covered < L:
        length = 1
        while cycle.gaps[(k + length - 1) % L] == 0:
            length += 1
        blocks.append(Block(k % L, length))
        covered += length
        k += length
    return sorted(blocks, key=lambda b: b.start)


def _block_gap_after(cycle: BoundaryCycle, b: Block) -> int:
    return cycle.gaps[(b.start + b.length - 1) % cycle.length]


def classify_cycle(cycle: BoundaryCycle) -> CycleClassification:
    blocks = maximal_blocks(cycle)
    long_blocks = tuple(i for i, b in enumerate(blocks) if b.length >= 5)
    half_blocks = tuple(i for i, b in enumerate(blocks) if b.length >= 4)
    chains = []
    m = len(blocks)
    cyclic_all_zero = m == 1 and blocks[0].cyclic
    if not cyclic_all_zero:
        after = [_block_gap_after(cycle, b) for b in blocks]
        for k in range(m):
            if blocks[k].length < 4 or after[k] != 1:
                continue
            path = [k]
            j = (k + 1) % m
            steps = 0
            while steps < m:
                if blocks[j].length >= 4:
                    path.append(j)
                    chains.append(tuple(path))
                    break
                if blocks[j].length != 3 or after[j] != 1:
                    break
                path.append(j)
                j = (j + 1) % m
                steps += 1
    half_chain = (
        m > 0
        and not cyclic_all_zero
        and all(b.length == 3 for b in blocks)
        and all(_block_gap_after(cycle, b) == 1 for b in blocks)
    )
    return CycleClassification(cycle, tuple(blocks), long_blocks, half_blocks, tuple(chains), half_chain)


def classify_boundary(Y: TiledSurface) -> list[CycleClassification]:
    return [classify_cycle(c) for c in boundary_cycles(Y)]


def is_boundary_reduced(Y: TiledSurface) -> bool:
    return all(not c.long_blocks and not c.long_chains for c in classify_boundary(Y))


def is_strongly_boundary_reduced(Y: TiledSurface) -> bool:
    return all(not c.half_blocks and not c.half_chain for c in classify_boundary(Y))


# --- pieces ------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    units: tuple[tuple, ...]
    cyclic: bool

    @property
    def e(self) -> int:
        return sum(1 for u in self.units if u[0] == "E")

    @property
    def he(self) -> int:
        return sum(1 for u in self.units if u[0] == "H")

    @property
    def size(self) -> int:
        return len(self.units)

    @property
    def chi(self) -> int:
        return 0 if self.cyclic else 1

    @property
    def defect(self) -> int:
        return self.e - 3 * self.he

    def is_bad(self, eps) -> bool:
        return self.defect > 4 * self.chi - Fraction(eps) * self.size

    def as_dict(self) -> dict:
        return {
            "cyclic": self.cyclic,
            "e": self.e,
            "he": self.he,
            "size": self.size,
            "defect": self.defect,
            "units": [list(u) for u in self.units],
        }


def _unit_key(u: tuple) -> tuple:
    return (0 if u[0] == "E" else 1, u[1], u[2])


def find_bad_piece(Y: TiledSurface, eps=Fraction(1, 32)) -> Piece | None:
    """The canonical eps-bad piece: smallest size, then smallest unit-key sequence."""
    eps = Fraction(eps)
    p, q = eps.numerator, eps.denominator
    d = Y.stats().boundary_length
    # a piece of size L is searched when L * (3 - eps) < 4 d
    size_weight, size_budget = 3 * q - p, 4 * d * q
    best = None
    best_key = None
    for cycle in boundary_cycles(Y):
        units = cycle.units()
        L = len(units)
        weight = [1 if u[0] == "E" else -3 for u in units]
        total = sum(weight)
        if L * size_weight < size_budget and q * total > -p * L:
            keys = [tuple(_unit_key(u) for u in units[s:] + units[:s]) for s in range(L)]
            rot = min(keys)
            key = (L, rot)
            if best_key is None or key < best_key:
                s = keys.index(rot)
                best, best_key = Piece(tuple(units[s:] + units[:s]), True), key
        doubled = units + units
        wd = weight + weight
        for start in range(L):
            acc = 0
            for length in range(1, L):
                if length * size_weight >= size_budget:
                    break
                acc += wd[start + length - 1]
                # bad when acc > 4 - eps * length
                if q * acc > 4 * q - p * length:
                    key = (length, tuple(_unit_key(u) for u in doubled[start : start + length]))
                    if best_key is None or key < best_key:
                        best, best_key = Piece(tuple(doubled[start : start + length]), False), key
                    break
    return best


def is_eps_adapted(Y: TiledSurface, eps=Fraction(1, 32)) -> bool:
    return find_bad_piece(Y, eps) is None


# --- morphisms ---------------------------------------------------------


def morphism_from(Y: TiledSurface, Z: TiledSurface, root: int, image: int) -> dict | None:
    """The unique morphism of a connected Y sending root to image, if any."""
    phi = {root: image}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        zv = phi[v]
        ys, zs = Y.slots(v), Z.slots(zv)
        for s in range(8):
            w = ys[s]
            if w is None:
                continue
            zw = zs[s]
            if zw is None:
                return None
            if w in phi:
                if phi[w] != zw:
                    return None
            else:
                phi[w] = zw
                queue.append(w)
    for b in Y.octagons:
        if phi[b] not in Z.octagons:
            return None
    return phi


def morphisms(Y: TiledSurface, Z: TiledSurface) -> list[dict]:
    if not Y.vertices:
        return [{}]
    if not Y.is_connected():
        raise SurfaceError("morphisms are enumerated for connected sources only")
    root = Y.vertices[0]
    out = []
    for z in Z.vertices:
        phi = morphism_from(Y, Z, root, z)
        if phi is not None:
            out.append(phi)
    return out


def is_injective(phi: Mapping) -> bool:
    return len(set(phi.values())) == len(phi)


def embeddings(Y: TiledSurface, Z: TiledSurface) -> list[dict]:
    return [phi for phi in morphisms(Y, Z) if is_injective(phi)]


def image_surface(phi: Mapping[int, int], Y: TiledSurface) -> TiledSurface:
    return TiledSurface(
        tuple(set(phi.values())),
        tuple({(f, phi[s], phi[t]) for f, s, t in Y.edges}),
        frozenset(phi[b] for b in Y.octagons),
    )


# --- canonical forms ---------------------------------------------------


def rooted_code(Y: TiledSurface, root: int, restrict: set | None = None) -> tuple:
    """BFS code from a root visiting slots in order 0..7."""
    number = {root: 0}
    order = [root]
    k = 0
    while k < len(order):
        v = order[k]
        k += 1
        for w in Y.slots(v):
            if w is not None and w not in number:
                number[w] = len(order)
                order.append(w)
    rows = tuple(tuple(-1 if w is None else number[w] for w in Y.slots(v)) for v in order)
    octs = tuple(sorted(number[b] for b in Y.octagons if b in number))
    return (rows, octs)


def canonical_form(Y: TiledSurface) -> tuple:
    """Isomorphism invariant; equal codes iff the surfaces are labeled-isomorphic."""
    codes = []
    for comp in Y.components():
        codes.append(min(rooted_code(Y, v) for v in comp))
    return tuple(sorted(codes))


def surface_from_code(code: tuple) -> TiledSurface:
    """Rebuild a connected surface from a rooted code."""
    rows, octs = code
    edges = set()
    for v, row in enumerate(rows):
        for s, w in enumerate(row):
            if w < 0:
                continue
            f = SLOT_LETTER[s]
            edges.add((f, v, w) if SLOT_IS_OUT[s] else (f, w, v))
    return TiledSurface(tuple(range(len(rows))), tuple(edges), frozenset(octs))


def are_isomorphic(Y1: TiledSurface, Y2: TiledSurface) -> bool:
    """Explicit isomorphism search, independent of canonical codes (connected inputs)."""
    if len(Y1.vertices) != len(Y2.vertices) or len(Y1.edges) != len(Y2.edges):
        return False
    if len(Y1.octagons) != len(Y2.octagons):
        return False
    if not Y1.vertices:
        return True
    root = Y1.vertices[0]
    for z in Y2.vertices:
        phi = morphism_from(Y1, Y2, root, z)
        if phi is None or not is_injective(phi) or len(phi) != len(Y2.vertices):
            continue
        if {phi[b] for b in Y1.octagons} == set(Y2.octagons):
            return True
    return False


# --- quotients of a cycle ----------------------------------------------


def _fold_closed_assignments(C: TiledSurface, max_vertices: int):
    """Yield (block index of each vertex, image graph) for every fold-closed set partition."""
    verts = list(C.vertices)
    if len(verts) > max_vertices:
        raise ResourceWarning(f"{len(verts)} vertices exceeds the quotient cap {max_vertices}")
    index = {v: i for i, v in enumerate(verts)}
    edge_list = [(f, index[s], index[t]) for f, s, t in C.edges]
    by_vertex: list[list] = [[] for _ in verts]
    for e in edge_list:
        by_vertex[max(e[1], e[2])].append(e)
    assignment = [0] * len(verts)

    def consistent(upto: int) -> bool:
        out: dict = {}
        inc: dict = {}
        for k in range(upto + 1):
            for f, s, t in by_vertex[k]:
                bs, bt = assignment[s], assignment[t]
                if out.setdefault((f, bs), bt) != bt or inc.setdefault((f, bt), bs) != bs:
                    return False
        return True

    def rec(k: int, blocks: int):
        if k == len(verts):
            image = TiledSurface(tuple(range(blocks)), tuple({(f, assignment[s], assignment[t]) for f, s, t in edge_list}))
            yield tuple(assignment), image
            return
        for b in range(blocks + 1):
            assignment[k] = b
            if consistent(k):
                yield from rec(k + 1, max(blocks, b + 1))

    yield from rec(0, 0)


def quotients_of_cycle(C: TiledSurface, max_vertices: int = 12) -> list[tuple[tuple[int, ...], TiledSurface]]:
    """All folded quotients of a connected graph, up to isomorphism of the image.

    Each entry is (block index of each vertex of C, image graph on the block
    indices). Enumerates fold-closed set partitions of the vertices.
    """
    found: dict = {}
    for assignment, image in _fold_closed_assignments(C, max_vertices):
        found.setdefault(canonical_form(image), (assignment, image))
    return [found[k] for k in sorted(found)]


def quotient_multiplicities(C: TiledSurface, max_vertices: int = 12) -> list[tuple[TiledSurface, int]]:
    """Folded quotients up to isomorphism with the number of set partitions giving each.

    Every morphism out of C factors as the quotient by its fibers followed by
    an embedding, so morphism counts are sums of embedding counts with these weights.
    """
    found: dict = {}
    counts: dict = {}
    for _, image in _fold_closed_assignments(C, max_vertices):
        key = canonical_form(image)
        found.setdefault(key, image)
        counts[key] = counts.get(key, 0) + 1
    return [(found[k], counts[k]) for k in sorted(found)]


# --- subsurfaces of a surface ------------------------------------------


def connected_subsurfaces(Z: TiledSurface, max_edges: int = 16) -> list[TiledSurface]:
    """Every connected subsurface of Z without isolated extra vertices, up to isomorphism.

    A subsurface is a set of octagons together with any superset of their
    edges; vertices are the edge endpoints, or one vertex when there are no edges.
    """
    edges = list(Z.edges)
    if len(edges) > max_edges:
        raise ResourceWarning(f"{len(edges)} edges exceeds the subsurface cap {max_edges}")
    index = {e: i for i, e in enumerate(edges)}
    oct_masks = {}
    for base in Z.octagons:
        corners = Z.relator_path(base)
        mask = 0
        for k, x in enumerate(RELATOR):
            u, w = corners[k], corners[(k + 1) % 8]
            e = (x, u, w) if x.islower() else (x.lower(), w, u)
            mask |= 1 << index[e]
        oct_masks[base] = mask
    members = sorted(oct_masks)
    found: dict = {}
    for v in Z.vertices:
        Y = TiledSurface((v,), ())
        found.setdefault(canonical_form(Y), Y)
    for k in range(len(members) + 1):
        for chosen in itertools.combinations(members, k):
            forced = 0
            for base in chosen:
                forced |= oct_masks[base]
            free = [i for i in range(len(edges)) if not forced >> i & 1]
            for bits in range(1 << len(free)):
                mask = forced
                for j, i in enumerate(free):
                    if bits >> j & 1:
                        mask |= 1 << i
                if mask == 0:
                    continue
                sub_edges = [edges[i] for i in range(len(edges)) if mask >> i & 1]
                verts = {x for _, s, t in sub_edges for x in (s, t)}
                if not _edges_connected(verts, sub_edges):
                    continue
                Y = TiledSurface(tuple(verts), tuple(sub_edges), frozenset(chosen))
                found.setdefault(canonical_form(Y), Y)
    return [found[key] for key in sorted(found)]


def _edges_connected(verts: set, edges: list) -> bool:
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parts = len(verts)
    for _, s, t in edges:
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[rs] = rt
            parts -= 1
    return parts == 1
