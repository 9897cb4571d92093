"""Growth of a compact subsurface inside a boundaryless ambient surface.

Both algorithms work on subsurfaces of an explicit ambient ``Z``: vertex ids
of the subsurface are vertex ids of ``Z``, and octagons are annexed from
``Z`` together with their boundary edges.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .tiled_surface import (
    POS_OF_GAP,
    Piece,
    TiledSurface,
    boundary_cycles,
    classify_cycle,
    find_bad_piece,
)
from .words import RELATOR, inverse_letter

DEFAULT_EPS = Fraction(1, 32)
MAX_EPS = Fraction(1, 16)


class GrowthError(ValueError):
    """Raised for invalid growth inputs."""


@dataclass(frozen=True)
class GrowthStep:
    kind: str  # "a-block", "a-chain", "a-visit" or "b"
    octagons: tuple[int, ...]
    before: tuple[int, int, int]  # (d, f, theta)
    after: tuple[int, int, int]
    piece: Piece | None = None

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "octagons": list(self.octagons),
            "before": dict(zip(("d", "f", "theta"), self.before)),
            "after": dict(zip(("d", "f", "theta"), self.after)),
        }
        if self.piece is not None:
            out["piece"] = self.piece.as_dict()
        return out


@dataclass
class GrowthTrace:
    steps: list[GrowthStep] = field(default_factory=list)

    @property
    def a_visits(self) -> int:
        return sum(1 for s in self.steps if s.kind == "a-visit")

    def b_steps(self) -> list[GrowthStep]:
        return [s for s in self.steps if s.kind == "b"]

    def as_dict(self) -> dict:
        return {"a_visits": self.a_visits, "steps": [s.as_dict() for s in self.steps]}


def _dft(Y: TiledSurface) -> tuple[int, int, int]:
    s = Y.stats()
    return (s.boundary_length, s.octagons, s.theta)


def octagon_at(Z: TiledSurface, v: int, gap: int) -> int:
    """Base vertex of the octagon of Z occupying the given gap at v."""
    cur = v
    for q in range(POS_OF_GAP[gap] - 1, -1, -1):
        cur = Z.step(cur, inverse_letter(RELATOR[q]))
        if cur is None:
            raise GrowthError("ambient surface is missing an edge of an octagon")
    return cur


def octagon_cells(Z: TiledSurface, base: int) -> tuple[list[int], list[tuple[str, int, int]]]:
    corners = Z.relator_path(base)
    if corners is None or base not in Z.octagons:
        raise GrowthError(f"no octagon of the ambient surface at {base}")
    edges = []
    for p, x in enumerate(RELATOR):
        u, w = corners[p], corners[(p + 1) % 8]
        f = x.lower()
        edges.append((f, u, w) if x == f else (f, w, u))
    return corners, edges


def annex(Y: TiledSurface, Z: TiledSurface, bases) -> TiledSurface:
    verts = set(Y.vertices)
    edges = set(Y.edges)
    octs = set(Y.octagons)
    for b in bases:
        corners, oct_edges = octagon_cells(Z, b)
        verts.update(corners)
        edges.update(oct_edges)
        octs.add(b)
    return TiledSurface(tuple(verts), tuple(edges), frozenset(octs))


def check_subsurface(Y: TiledSurface, Z: TiledSurface) -> None:
    zv = set(Z.vertices)
    ze = set(Z.edges)
    if not set(Y.vertices) <= zv or not set(Y.edges) <= ze or not Y.octagons <= Z.octagons:
        raise GrowthError("the surface is not a subcomplex of the ambient surface")


def _reduction_moves(Y: TiledSurface, Z: TiledSurface) -> tuple[list, list]:
    """All available moves of the boundary reduction, as (key, bases) pairs."""
    chain_moves = []
    block_moves = []
    for cycle in boundary_cycles(Y):
        info = classify_cycle(cycle)
        blocks = info.blocks

        def across(k):
            v, i = cycle.darts[blocks[k].start]
            return octagon_at(Z, v, i)

        for chain in info.long_chains:
            key = tuple(cycle.darts[blocks[k].start] for k in chain)
            chain_moves.append((key, tuple(sorted({across(k) for k in chain}))))
        for k in info.long_blocks:
            block_moves.append((cycle.darts[blocks[k].start], (across(k),)))
    return sorted(chain_moves), sorted(block_moves)


def _reduction_move(Y: TiledSurface, Z: TiledSurface, rng: random.Random | None = None):
    """Next move of the boundary reduction: chains first, then long blocks.

    With an rng the move is drawn uniformly from every available one, so the
    closure can be reached along arbitrary interleavings.
    """
    chain_moves, block_moves = _reduction_moves(Y, Z)
    if rng is not None:
        moves = [("a-chain", b) for _, b in chain_moves] + [("a-block", b) for _, b in block_moves]
        return rng.choice(moves) if moves else (None, ())
    if chain_moves:
        return "a-chain", chain_moves[0][1]
    if block_moves:
        return "a-block", block_moves[0][1]
    return None, ()


def br_closure(
    Y: TiledSurface, Z: TiledSurface, trace: GrowthTrace | None = None, rng: random.Random | None = None
) -> tuple[TiledSurface, GrowthTrace]:
    """Annex octagons across long chains and long blocks until boundary reduced."""
    check_subsurface(Y, Z)
    trace = trace if trace is not None else GrowthTrace()
    cur = Y
    while True:
        kind, bases = _reduction_move(cur, Z, rng)
        if kind is None:
            return cur, trace
        before = _dft(cur)
        cur = annex(cur, Z, bases)
        trace.steps.append(GrowthStep(kind, bases, before, _dft(cur)))


def octagons_meeting(piece: Piece, Z: TiledSurface) -> tuple[int, ...]:
    bases = set()
    for kind, v, s in piece.units:
        if kind == "E":
            bases.add(octagon_at(Z, v, s))
        else:
            bases.add(octagon_at(Z, v, (s - 1) % 8))
            bases.add(octagon_at(Z, v, s))
    return tuple(sorted(bases))


def theta(Y: TiledSurface) -> int:
    return Y.stats().theta


def ovb(Y: TiledSurface, Z: TiledSurface, eps=DEFAULT_EPS) -> tuple[TiledSurface, GrowthTrace]:
    """Octagons-vs-boundary growth of Y inside Z."""
    eps = Fraction(eps)
    if eps > MAX_EPS:
        raise GrowthError(f"eps = {eps} exceeds 1/16; termination is not guaranteed")
    if eps < 0:
        raise GrowthError("eps must be non-negative")
    check_subsurface(Y, Z)
    trace = GrowthTrace()
    cur = Y
    while True:
        before = _dft(cur)
        cur, _ = br_closure(cur, Z, trace)
        trace.steps.append(GrowthStep("a-visit", (), before, _dft(cur)))
        if theta(cur) > 0:
            return cur, trace
        piece = find_bad_piece(cur, eps)
        if piece is None:
            return cur, trace
        bases = octagons_meeting(piece, Z)
        before = _dft(cur)
        cur = annex(cur, Z, bases)
        trace.steps.append(GrowthStep("b", bases, before, _dft(cur), piece))


def ovb_contract_violations(Y: TiledSurface, out: TiledSurface, trace: GrowthTrace, eps=DEFAULT_EPS) -> list[str]:
    """Quantitative guarantees of one OvB run, checked on its input, output and trace."""
    eps = Fraction(eps)
    found = []
    d0, f0, _ = _dft(Y)
    d1, f1, _ = _dft(out)
    adapted = find_bad_piece(out, eps) is None
    if not adapted and not (_reduction_move(out, out)[0] is None and f1 > d1):
        found.append("output is neither eps-adapted nor boundary reduced with f > d")
    if eps <= Fraction(1, 32):
        if d1 > 3 * d0:
            found.append(f"boundary grew from {d0} to {d1}")
        if f1 > f0 + 4 * d0 + d0 * d0:
            found.append(f"octagons grew from {f0} to {f1}")
    if trace.a_visits > d0 + 2:
        found.append(f"{trace.a_visits} visits of step (a) exceed {d0 + 2}")
    visits = [s.after[2] for s in trace.steps if s.kind == "a-visit"]
    for k in range(1, len(visits) - 1):
        if visits[k + 1] <= visits[k]:
            found.append("theta did not increase between visits of step (a)")
    for s in trace.steps:
        if s.kind in ("a-block", "a-chain") and s.after[0] > s.before[0]:
            found.append("boundary reduction increased the boundary length")
        if s.kind == "b":
            size = s.piece.size
            if not s.after[0] - s.before[0] < 2 * eps * size:
                found.append("step (b) boundary increase is not below 2 eps |P|")
            if not s.after[2] - s.before[2] > (Fraction(1, 8) - 2 * eps) * size:
                found.append("step (b) theta increase is not above (1/8 - 2 eps) |P|")
    return found
