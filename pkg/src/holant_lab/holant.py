"""Exact Holant evaluation, the symmetrized polynomial P(X, Y), and tractable solvers."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cyclo import ONE, ZERO, Cyc12, cyc
from .grid import (
    EdgeLabeledGraph,
    GridError,
    SignatureGrid,
    SymSignature,
    UnfilledSlot,
    contract,
)
from .poly import MPoly, q_sequence, var

log = logging.getLogger(__name__)

__all__ = [
    "Mod3ViolationAnomaly",
    "CaseMismatch",
    "NoPolyTimeAlgorithmInScope",
    "SymmetrizedPolynomial",
    "NormalizedSignature",
    "edge_histogram",
    "holant_eval_graph",
    "holant_eval_grid",
    "symmetrize",
    "normalize_signature",
    "solve_tractable",
    "auto_eval",
    "CASE_DEGENERATE",
    "CASE_ZERO",
    "CASE_MONOCHROME",
    "CASE_CITED",
]

CASE_DEGENERATE = "X=1"
CASE_ZERO = "X=Y=0"
CASE_MONOCHROME = "y=0"
CASE_CITED = "X=-1"

_CHUNK = 1 << 20


class Mod3ViolationAnomaly(RuntimeError):
    """An assignment pair with i != j (mod 3); impossible on a 3-regular graph."""


class CaseMismatch(ValueError):
    pass


class NoPolyTimeAlgorithmInScope(NotImplementedError):
    pass


def _histogram_chunk(args) -> np.ndarray:
    n, edges, lo, hi = args
    m = len(edges)
    size = (m + 1) * (m + 1)
    masks = np.arange(lo, hi, dtype=np.int64)
    # vertex 0 is pinned to 0; vertex v >= 1 reads bit v-1
    bits = [np.zeros(hi - lo, dtype=np.uint8)]
    for v in range(1, n):
        bits.append(((masks >> (v - 1)) & 1).astype(np.uint8))
    zeros = np.zeros(hi - lo, dtype=np.int32)
    ones = np.zeros(hi - lo, dtype=np.int32)
    for u, v in edges:
        bu, bv = bits[u], bits[v]
        ones += bu & bv
        zeros += 1 - (bu | bv)
    key = zeros * (m + 1) + ones
    return np.bincount(key, minlength=size).astype(np.int64)


def edge_histogram(g: EdgeLabeledGraph, jobs: int = 1) -> np.ndarray:
    """Counts ``h[i, j]`` over vertex assignments with vertex 0 set to 0.

    ``i`` is the number of edges with both ends 0 and ``j`` the number with
    both ends 1.  Complementing an assignment swaps i and j, so the full
    distribution is ``h + h.T``.
    """
    n, m = g.vertex_count, g.edge_count
    if n == 0:
        raise ValueError("edge histogram needs at least one vertex")
    total = 1 << (n - 1)
    bounds = list(range(0, total, _CHUNK)) + [total]
    tasks = [(n, g.edges, lo, hi) for lo, hi in zip(bounds, bounds[1:])]
    flat = np.zeros((m + 1) * (m + 1), dtype=np.int64)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_histogram_chunk, tasks):
                flat += part
    else:
        for t in tasks:
            flat += _histogram_chunk(t)
    return flat.reshape(m + 1, m + 1)


def _as_sig(sig: SymSignature | Sequence) -> SymSignature:
    return sig if isinstance(sig, SymSignature) else SymSignature(sig)


def holant_eval_graph(g: EdgeLabeledGraph, sig: SymSignature | Sequence, jobs: int = 1) -> Cyc12:
    """Sum over all vertex 0/1-assignments of the product of edge values ``sig``."""
    sig = _as_sig(sig)
    if sig.arity != 2:
        raise GridError("edge signature must be binary")
    if g.vertex_count == 0:
        return ONE
    x, y, z = sig.values
    m = g.edge_count
    h = edge_histogram(g, jobs)
    full = h + h.T
    xp = [x**k for k in range(m + 1)]
    yp = [y**k for k in range(m + 1)]
    zp = [z**k for k in range(m + 1)]
    total = ZERO
    for i, j in zip(*np.nonzero(full)):
        i, j = int(i), int(j)
        term = xp[i] * zp[j] * yp[m - i - j]
        if term:
            total = total + term * int(full[i, j])
    return total


def holant_eval_grid(grid: SignatureGrid, method: str = "contract") -> Cyc12:
    """Holant of a closed signature grid (no dangling edges, no SLOTs)."""
    if grid.slots():
        raise UnfilledSlot(f"grid has unfilled SLOTs at generators {grid.slots()}")
    if grid.dangling:
        raise GridError("grid has dangling edges; use fgate_signature")
    if method == "brute":
        from .grid import brute_force_tensor

        return brute_force_tensor(grid).values[0]
    return contract(grid).values[0]


@dataclass(frozen=True)
class SymmetrizedPolynomial:
    P: MPoly
    source_edge_count: int
    source_vertex_count: int

    def evaluate(self, a, b) -> Cyc12:
        a, b = cyc(a), cyc(b)
        return self.P.evaluate(X=a * b, Y=a**3 + b**3)

    def __str__(self) -> str:
        return str(self.P)


def symmetrize(g: EdgeLabeledGraph, jobs: int = 1) -> SymmetrizedPolynomial:
    """Integer polynomial P with ``P(ab, a^3+b^3) = Holant(g, [a,1,b])``."""
    g.require_three_regular()
    if g.vertex_count == 0:
        return SymmetrizedPolynomial(MPoly.const(1), 0, 0)
    h = edge_histogram(g, jobs)
    X = var("X")
    P = MPoly.const(0)
    for i, j in zip(*np.nonzero(h)):
        i, j = int(i), int(j)
        if (i - j) % 3:
            raise Mod3ViolationAnomaly(f"assignment pair with i={i}, j={j} on a 3-regular graph")
        P = P + X ** min(i, j) * q_sequence(abs(i - j) // 3) * int(h[i, j])
    if P.degree("X") > g.edge_count:
        raise Mod3ViolationAnomaly("X-degree exceeds the edge count")
    return SymmetrizedPolynomial(P, g.edge_count, g.vertex_count)


@dataclass(frozen=True)
class NormalizedSignature:
    """Either ``y = 0`` (monochromatic components) or ``[x,y,z] = y * [a,1,b]``."""

    degenerate_y0: bool
    a: Cyc12 | None = None
    b: Cyc12 | None = None
    scale_base: Cyc12 | None = None
    x: Cyc12 | None = None
    z: Cyc12 | None = None

    def scale(self, edge_count: int) -> Cyc12:
        return self.scale_base**edge_count if self.scale_base is not None else ONE


def normalize_signature(sig: SymSignature | Sequence) -> NormalizedSignature:
    sig = _as_sig(sig)
    if sig.arity != 2:
        raise GridError("edge signature must be binary")
    x, y, z = sig.values
    if not y:
        return NormalizedSignature(True, x=x, z=z)
    return NormalizedSignature(False, a=x / y, b=z / y, scale_base=y)


def solve_tractable(g: EdgeLabeledGraph, case: str, a, b) -> Cyc12:
    """Polynomial-time evaluation inside a tractable family.

    ``case`` is one of ``"X=1"`` and ``"X=Y=0"`` for ``[a,1,b]``, or ``"y=0"``
    for ``[a,0,b]`` (there ``a`` and ``b`` are the two diagonal values).
    """
    a, b = cyc(a), cyc(b)
    if case == CASE_MONOCHROME:
        result = ONE
        for _, e in g.components():
            result = result * (a**e + b**e)
        return result
    X, Y = a * b, a**3 + b**3
    if case == CASE_DEGENERATE:
        if X != ONE:
            raise CaseMismatch(f"ab = {X}, not 1")
        g.require_three_regular()
        # [a,1,b] = w (x) w with w0*w1 = 1; each vertex gives w0^3 + w1^3, whose square is Y + 2
        return (Y + 2) ** (g.vertex_count // 2)
    if case == CASE_ZERO:
        if X or Y:
            raise CaseMismatch(f"(X, Y) = ({X}, {Y}), not (0, 0)")
        if not g.is_bipartite():
            return ZERO
        return Cyc12(2 ** len(g.components()))
    if case == CASE_CITED:
        raise NoPolyTimeAlgorithmInScope(
            "X = -1, Y in {0, 2i, -2i} is tractable by citation only; evaluate by brute force"
        )
    raise CaseMismatch(f"unknown tractable case {case!r}")


def auto_eval(g: EdgeLabeledGraph, sig: SymSignature | Sequence, jobs: int = 1) -> tuple[Cyc12, str]:
    """Evaluate with a closed-form solver when one applies, else by brute force."""
    norm = normalize_signature(sig)
    if norm.degenerate_y0:
        return solve_tractable(g, CASE_MONOCHROME, norm.x, norm.z), "monochromatic components (y=0)"
    a, b = norm.a, norm.b
    X, Y = a * b, a**3 + b**3
    scale = norm.scale(g.edge_count)
    if X == ONE and g.is_three_regular():
        return scale * solve_tractable(g, CASE_DEGENERATE, a, b), "degenerate signature (X=1)"
    if not X and not Y:
        return scale * solve_tractable(g, CASE_ZERO, a, b), "bipartite 2-coloring (X=Y=0)"
    if X == -ONE and Y in (ZERO, cyc("2*i"), cyc("-2*i")):
        log.info("tractable by citation only; falling back to brute force")
        return holant_eval_graph(g, sig, jobs), "brute force (tractable by citation, no solver in scope)"
    return holant_eval_graph(g, sig, jobs), "brute force"
