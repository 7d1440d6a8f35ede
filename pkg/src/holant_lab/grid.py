"""Instances: edge-labeled graphs, bipartite signature grids and F-gates.

A signature grid has generators (the degree-2 side by convention,
but any arity is allowed here) and recognizers, wired port-to-port.  Dangling
edges on generators are outputs, dangling edges on recognizers are inputs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .cyclo import ONE, ZERO, Cyc12, CycError, cyc

__all__ = [
    "GridError",
    "MalformedDocument",
    "DanglingPort",
    "ArityMismatch",
    "NonBipartiteWiring",
    "NotThreeRegular",
    "NotSymmetric",
    "UnfilledSlot",
    "EdgeLabeledGraph",
    "SymSignature",
    "Slot",
    "SLOT",
    "Dangling",
    "SignatureGrid",
    "FullTensor",
    "parse_instance",
    "load_instance",
    "graph_to_grid",
    "fgate_signature",
    "contract",
    "brute_force_tensor",
    "symmetric_project",
    "transfer_matrix",
    "compose",
]


class GridError(ValueError):
    pass


class MalformedDocument(GridError):
    pass


class DanglingPort(GridError):
    pass


class ArityMismatch(GridError):
    pass


class NonBipartiteWiring(GridError):
    pass


class NotThreeRegular(GridError):
    pass


class UnfilledSlot(GridError):
    pass


class NotSymmetric(GridError):
    def __init__(self, message: str, pair: tuple[Any, Any] | None = None):
        super().__init__(message)
        self.pair = pair


# -- graphs ----------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeLabeledGraph:
    """Undirected multigraph; self-loops count twice toward the degree."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise MalformedDocument("negative vertex count")
        norm = []
        for e in self.edges:
            if len(e) != 2:
                raise MalformedDocument(f"edge {e!r} must have two endpoints")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise MalformedDocument(f"edge {e!r} has an endpoint out of range")
            norm.append((u, v))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_three_regular(self) -> bool:
        return all(d == 3 for d in self.degrees())

    def require_three_regular(self) -> None:
        deg = self.degrees()
        bad = [v for v, d in enumerate(deg) if d != 3]
        if bad:
            raise NotThreeRegular(f"vertex {bad[0]} has degree {deg[bad[0]]}")

    def components(self) -> list[tuple[list[int], int]]:
        """Connected components as (vertices, edge count) pairs."""
        parent = list(range(self.vertex_count))

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[int, list[int]] = {}
        for v in range(self.vertex_count):
            groups.setdefault(find(v), []).append(v)
        counts: dict[int, int] = {r: 0 for r in groups}
        for u, _ in self.edges:
            counts[find(u)] += 1
        return [(vs, counts[r]) for r, vs in sorted(groups.items(), key=lambda t: t[1][0])]

    def is_bipartite(self) -> bool:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            if u == v:
                return False
            adj[u].append(v)
            adj[v].append(u)
        color = [-1] * self.vertex_count
        for start in range(self.vertex_count):
            if color[start] >= 0:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    def disjoint_union(self, other: EdgeLabeledGraph) -> EdgeLabeledGraph:
        shift = self.vertex_count
        return EdgeLabeledGraph(
            self.vertex_count + other.vertex_count,
            self.edges + tuple((u + shift, v + shift) for u, v in other.edges),
        )

    def to_json(self) -> dict:
        return {"type": "graph", "vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}


# -- signatures --------------------------------------------------------------------


@dataclass(frozen=True)
class SymSignature:
    """Symmetric signature ``[g_0, ..., g_k]``; ``g_w`` is the value at Hamming weight w."""

    values: tuple[Cyc12, ...]

    def __init__(self, values: Iterable):
        vals = tuple(cyc(v) for v in values)
        if not vals:
            raise ArityMismatch("a signature needs at least one value")
        object.__setattr__(self, "values", vals)

    @classmethod
    def parse(cls, text: str) -> SymSignature:
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise MalformedDocument(f"signature {text!r} must be bracketed")
        parts = [p for p in body[1:-1].split(",")]
        try:
            return cls(parts)
        except CycError as exc:
            raise MalformedDocument(f"bad signature {text!r}: {exc}") from exc

    @property
    def arity(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, w: int) -> Cyc12:
        return self.values[w]

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.values) + "]"


@dataclass(frozen=True)
class Slot:
    """Placeholder for a unary generator to be filled in later."""

    arity: int = 1

    def __str__(self) -> str:
        return "SLOT"


SLOT = Slot()

EQ3 = SymSignature([1, 0, 0, 1])


@dataclass(frozen=True)
class Dangling:
    side: str  # "gen" (output) or "rec" (input)
    vertex: int
    port: int


Port = tuple[str, int, int]


@dataclass(frozen=True)
class SignatureGrid:
    generators: tuple[SymSignature | Slot, ...]
    recognizers: tuple[SymSignature, ...]
    edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    dangling: tuple[Dangling, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "recognizers", tuple(self.recognizers))
        object.__setattr__(
            self, "edges", tuple(((int(g[0]), int(g[1])), (int(r[0]), int(r[1]))) for g, r in self.edges)
        )
        object.__setattr__(self, "dangling", tuple(self.dangling))
        self._validate()

    def _arity(self, side: str, k: int) -> int:
        pool = self.generators if side == "gen" else self.recognizers
        if not 0 <= k < len(pool):
            raise MalformedDocument(f"{side} vertex {k} out of range")
        return pool[k].arity

    def _validate(self) -> None:
        for s in self.recognizers:
            if isinstance(s, Slot):
                raise NonBipartiteWiring("SLOT is only allowed on the generator side")
        used: set[Port] = set()

        def claim(port: Port) -> None:
            side, k, p = port
            if not 0 <= p < self._arity(side, k):
                raise ArityMismatch(
                    f"{side} vertex {k} has arity {self._arity(side, k)} but port {p} is wired"
                )
            if port in used:
                raise DanglingPort(f"port {port} is used more than once")
            used.add(port)

        for (gi, gp), (ri, rp) in self.edges:
            claim(("gen", gi, gp))
            claim(("rec", ri, rp))
        for d in self.dangling:
            if d.side not in ("gen", "rec"):
                raise MalformedDocument(f"dangling side must be gen or rec, not {d.side!r}")
            claim((d.side, d.vertex, d.port))
        for side, pool in (("gen", self.generators), ("rec", self.recognizers)):
            for k, s in enumerate(pool):
                for p in range(s.arity):
                    if (side, k, p) not in used:
                        raise DanglingPort(f"port {p} of {side} vertex {k} is not wired")

    # -- helpers -----------------------------------------------------------

    def slots(self) -> list[int]:
        return [k for k, s in enumerate(self.generators) if isinstance(s, Slot)]

    def fill_slots(self, sig: SymSignature | Sequence | Sequence[SymSignature]) -> SignatureGrid:
        """Replace every SLOT with ``sig`` (or the i-th SLOT with ``sig[i]`` for a list of signatures)."""
        slots = self.slots()
        if isinstance(sig, SymSignature):
            fills = [sig] * len(slots)
        elif sig and isinstance(sig[0], SymSignature):
            fills = list(sig)
        else:
            fills = [SymSignature(sig)] * len(slots)
        if len(fills) != len(slots):
            raise ArityMismatch("number of fill signatures does not match SLOT count")
        gens = list(self.generators)
        for k, s in zip(slots, fills):
            if s.arity != 1:
                raise ArityMismatch("SLOTs take unary signatures")
            gens[k] = s
        return SignatureGrid(tuple(gens), self.recognizers, self.edges, self.dangling)

    def inputs(self) -> list[int]:
        return [k for k, d in enumerate(self.dangling) if d.side == "rec"]

    def outputs(self) -> list[int]:
        return [k for k, d in enumerate(self.dangling) if d.side == "gen"]

    def to_json(self) -> dict:
        def sig_json(s):
            return "SLOT" if isinstance(s, Slot) else [str(v) for v in s.values]

        return {
            "type": "grid",
            "generators": [{"sig": sig_json(s)} for s in self.generators],
            "recognizers": [{"sig": sig_json(s)} for s in self.recognizers],
            "edges": [{"gen": list(g), "rec": list(r)} for g, r in self.edges],
            "dangling": [{"side": d.side, "vertex": d.vertex, "port": d.port} for d in self.dangling],
        }


@dataclass(frozen=True)
class FullTensor:
    """Values of an F-gate indexed by dangling assignments; the first dangling edge is the top bit."""

    arity: int
    values: tuple[Cyc12, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.arity:
            raise GridError(f"tensor of arity {self.arity} needs {1 << self.arity} values")

    def __getitem__(self, bits: Sequence[int] | str | int) -> Cyc12:
        if isinstance(bits, int):
            return self.values[bits]
        if isinstance(bits, str):
            bits = [int(ch) for ch in bits]
        idx = 0
        for b in bits:
            idx = (idx << 1) | int(b)
        return self.values[idx]

    def bits(self, index: int) -> tuple[int, ...]:
        return tuple((index >> (self.arity - 1 - t)) & 1 for t in range(self.arity))


# -- parsing ---------------------------------------------------------------------


def _parse_sig(obj: Any, allow_slot: bool) -> SymSignature | Slot:
    if obj == "SLOT":
        if not allow_slot:
            raise NonBipartiteWiring("SLOT is only allowed on generators")
        return SLOT
    if isinstance(obj, str):
        return SymSignature.parse(obj)
    if not isinstance(obj, list) or not obj:
        raise MalformedDocument(f"bad signature {obj!r}")
    try:
        return SymSignature(str(v) if not isinstance(v, str) else v for v in obj)
    except CycError as exc:
        raise MalformedDocument(f"bad signature literal in {obj!r}: {exc}") from exc


def _pair(obj: Any, what: str) -> tuple[int, int]:
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(x, int) for x in obj)):
        raise MalformedDocument(f"{what} must be [vertex, port], got {obj!r}")
    return obj[0], obj[1]


def parse_instance(doc: Mapping[str, Any] | str) -> EdgeLabeledGraph | SignatureGrid:
    """Build a graph or grid from the JSON instance format (dict or JSON text)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise MalformedDocument("instance document must be a JSON object")
    kind = doc.get("type")
    if kind == "graph":
        try:
            n = doc["vertices"]
            edges = doc["edges"]
        except KeyError as exc:
            raise MalformedDocument(f"graph document missing {exc}") from exc
        if not isinstance(n, int) or not isinstance(edges, list):
            raise MalformedDocument("graph needs integer 'vertices' and list 'edges'")
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise MalformedDocument(f"bad edge {e!r}")
        return EdgeLabeledGraph(n, tuple(tuple(e) for e in edges))
    if kind == "grid":
        try:
            gens = [_parse_sig(g["sig"], True) for g in doc.get("generators", [])]
            recs = [_parse_sig(r["sig"], False) for r in doc.get("recognizers", [])]
        except (KeyError, TypeError) as exc:
            raise MalformedDocument(f"vertex entries need a 'sig': {exc}") from exc
        edges = []
        for e in doc.get("edges", []):
            if not isinstance(e, Mapping):
                raise MalformedDocument(f"bad edge {e!r}")
            keys = set(e)
            if keys != {"gen", "rec"}:
                raise NonBipartiteWiring(f"edge {e!r} must join one generator port to one recognizer port")
            edges.append((_pair(e["gen"], "gen endpoint"), _pair(e["rec"], "rec endpoint")))
        dangling = []
        for d in doc.get("dangling", []):
            try:
                dangling.append(Dangling(d["side"], int(d["vertex"]), int(d["port"])))
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedDocument(f"bad dangling entry {d!r}") from exc
        return SignatureGrid(tuple(gens), tuple(recs), tuple(edges), tuple(dangling))
    raise MalformedDocument(f"unknown instance type {kind!r}")


def load_instance(path: str) -> EdgeLabeledGraph | SignatureGrid:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# -- conversion --------------------------------------------------------------------


def graph_to_grid(
    g: EdgeLabeledGraph,
    edge_sig: SymSignature | Sequence,
    vertex_sig: SymSignature | Sequence = EQ3,
) -> SignatureGrid:
    """Subdivide every edge with a degree-2 generator; vertices become recognizers."""
    edge_sig = edge_sig if isinstance(edge_sig, SymSignature) else SymSignature(edge_sig)
    vertex_sig = vertex_sig if isinstance(vertex_sig, SymSignature) else SymSignature(vertex_sig)
    if edge_sig.arity != 2:
        raise ArityMismatch("edge signature must be binary")
    if vertex_sig.arity != 3:
        raise ArityMismatch("vertex signature must be ternary")
    g.require_three_regular()
    next_port = [0] * g.vertex_count
    wires = []
    for k, (u, v) in enumerate(g.edges):
        for gp, w in ((0, u), (1, v)):
            wires.append(((k, gp), (w, next_port[w])))
            next_port[w] += 1
    return SignatureGrid(
        tuple([edge_sig] * g.edge_count), tuple([vertex_sig] * g.vertex_count), tuple(wires), ()
    )


# -- contraction ---------------------------------------------------------------------


def _nodes(grid: SignatureGrid):
    """Flatten a grid into nodes (signature values, port labels); dangling labels are ('d', k)."""
    labels: dict[Port, tuple] = {}
    for k, ((gi, gp), (ri, rp)) in enumerate(grid.edges):
        labels[("gen", gi, gp)] = ("e", k)
        labels[("rec", ri, rp)] = ("e", k)
    for k, d in enumerate(grid.dangling):
        labels[(d.side, d.vertex, d.port)] = ("d", k)
    nodes = []
    for side, pool in (("gen", grid.generators), ("rec", grid.recognizers)):
        for k, s in enumerate(pool):
            if isinstance(s, Slot):
                raise UnfilledSlot(f"generator {k} is an unfilled SLOT")
            nodes.append((s.values, [labels[(side, k, p)] for p in range(s.arity)]))
    return nodes


def _greedy_order(nodes) -> list[int]:
    """Visit nodes so that each next node shares the most labels with those already visited."""
    remaining = set(range(len(nodes)))
    seen_labels: set = set()
    order = []
    while remaining:
        best = max(sorted(remaining), key=lambda v: sum(1 for l in nodes[v][1] if l in seen_labels))
        order.append(best)
        remaining.discard(best)
        seen_labels.update(nodes[best][1])
    return order


def contract(grid: SignatureGrid, order: Sequence[int] | None = None) -> FullTensor:
    """Sum out internal edges by sweeping vertices and keeping a frontier of open edges."""
    nodes = _nodes(grid)
    if order is None:
        order = _greedy_order(nodes)
    elif sorted(order) != list(range(len(nodes))):
        raise GridError("contraction order must be a permutation of the vertices")
    remaining_uses: dict[tuple, int] = {}
    for _, labs in nodes:
        for l in labs:
            remaining_uses[l] = remaining_uses.get(l, 0) + 1

    frontier: list[tuple] = []
    states: dict[tuple[int, ...], Cyc12] = {(): ONE}
    for v in order:
        values, labs = nodes[v]
        pos = {l: frontier.index(l) for l in labs if l in frontier}
        new_labels = []
        for l in labs:
            if l not in pos and l not in new_labels:
                new_labels.append(l)
        for l in labs:
            remaining_uses[l] -= 1
        closing = {l for l in labs if l[0] == "e" and remaining_uses[l] == 0}
        next_frontier = [l for l in frontier if l not in closing] + [l for l in new_labels if l not in closing]
        keep_idx = [k for k, l in enumerate(frontier) if l not in closing]
        new_keep = [k for k, l in enumerate(new_labels) if l not in closing]
        new_states: dict[tuple[int, ...], Cyc12] = {}
        for key, val in states.items():
            for fresh in itertools.product((0, 1), repeat=len(new_labels)):
                assign = dict(zip(new_labels, fresh))
                w = 0
                for l in labs:
                    w += key[pos[l]] if l in pos else assign[l]
                sv = values[w]
                if not sv:
                    continue
                nk = tuple(key[k] for k in keep_idx) + tuple(fresh[k] for k in new_keep)
                prod = val * sv
                prev = new_states.get(nk)
                new_states[nk] = prod if prev is None else prev + prod
        states = new_states
        frontier = next_frontier

    q = len(grid.dangling)
    perm = [frontier.index(("d", k)) for k in range(q)]
    out = [ZERO] * (1 << q)
    for key, val in states.items():
        idx = 0
        for k in range(q):
            idx = (idx << 1) | key[perm[k]]
        out[idx] = out[idx] + val
    return FullTensor(q, tuple(out))


def brute_force_tensor(grid: SignatureGrid) -> FullTensor:
    """Reference evaluation: enumerate every assignment to internal and dangling edges."""
    nodes = _nodes(grid)
    p, q = len(grid.edges), len(grid.dangling)
    out = [ZERO] * (1 << q)
    for bits in itertools.product((0, 1), repeat=p + q):
        val = ONE
        for values, labs in nodes:
            w = sum(bits[l[1]] if l[0] == "e" else bits[p + l[1]] for l in labs)
            val = val * values[w]
            if not val:
                break
        if val:
            idx = 0
            for b in bits[p:]:
                idx = (idx << 1) | b
            out[idx] = out[idx] + val
    return FullTensor(q, tuple(out))


def fgate_signature(gate: SignatureGrid, order: Sequence[int] | None = None) -> FullTensor:
    """Signature of an F-gate over its dangling edges, in declaration order."""
    if not gate.dangling:
        raise GridError("an F-gate needs at least one dangling edge")
    return contract(gate, order)


def symmetric_project(t: FullTensor) -> SymSignature:
    """``[g_0, ..., g_q]`` if ``t`` depends only on Hamming weight; NotSymmetric otherwise."""
    first: dict[int, int] = {}
    for idx, v in enumerate(t.values):
        w = bin(idx).count("1")
        if w not in first:
            first[w] = idx
        elif t.values[first[w]] != v:
            a, b = t.bits(first[w]), t.bits(idx)
            sa = "".join(map(str, a))
            sb = "".join(map(str, b))
            raise NotSymmetric(
                f"value at {sa} is {t.values[first[w]]}, at {sb} is {v}", (sa, sb)
            )
    return SymSignature(t.values[first[w]] for w in range(t.arity + 1))


def transfer_matrix(
    gate: SignatureGrid,
    inputs: Sequence[int] | None = None,
    outputs: Sequence[int] | None = None,
) -> list[list[Cyc12]]:
    """The (outputs+1) x (inputs+1) matrix acting on symmetric signature vectors.

    Entry ``[w_out][w_in]`` is the sum of the gate's values over input
    assignments of weight ``w_in``, which must be the same for every output
    assignment of weight ``w_out``.  ``inputs``/``outputs`` are indices into
    ``gate.dangling``; they default to the recognizer-side and generator-side
    dangling edges in declaration order.
    """
    inputs = list(gate.inputs() if inputs is None else inputs)
    outputs = list(gate.outputs() if outputs is None else outputs)
    if sorted(inputs + outputs) != list(range(len(gate.dangling))):
        raise GridError("inputs and outputs must partition the dangling edges")
    for k in inputs:
        if gate.dangling[k].side != "rec":
            raise GridError(f"dangling edge {k} is on a generator, so it is an output")
    for k in outputs:
        if gate.dangling[k].side != "gen":
            raise GridError(f"dangling edge {k} is on a recognizer, so it is an input")
    r, t = len(inputs), len(outputs)
    if r + t == 0:
        raise GridError("gate has no dangling edges")
    tensor = contract(gate)
    q = tensor.arity
    sums: dict[tuple[int, ...], list[Cyc12]] = {}
    for idx, v in enumerate(tensor.values):
        bits = tensor.bits(idx)
        x = tuple(bits[k] for k in inputs)
        y = tuple(bits[k] for k in outputs)
        row = sums.setdefault(y, [ZERO] * (r + 1))
        row[sum(x)] = row[sum(x)] + v
    matrix: list[list[Cyc12] | None] = [None] * (t + 1)
    rep: list[tuple[int, ...] | None] = [None] * (t + 1)
    for y in itertools.product((0, 1), repeat=t):
        w = sum(y)
        row = sums[y]
        if matrix[w] is None:
            matrix[w], rep[w] = row, y
        elif matrix[w] != row:
            raise NotSymmetric(
                f"outputs {''.join(map(str, rep[w]))} and {''.join(map(str, y))} give different rows",
                (rep[w], y),
            )
    assert q == r + t
    return [list(row) for row in matrix]  # type: ignore[arg-type]


def compose(first: SignatureGrid, second: SignatureGrid) -> SignatureGrid:
    """Merge the outputs of ``first`` into the inputs of ``second`` (in declaration order).

    The result's dangling edges are ``first``'s inputs followed by ``second``'s outputs.
    """
    outs = first.outputs()
    ins = second.inputs()
    if len(outs) != len(ins):
        raise GridError(f"cannot merge {len(outs)} outputs into {len(ins)} inputs")
    g_off, r_off = len(first.generators), len(first.recognizers)
    edges = list(first.edges)
    edges += [((gi + g_off, gp), (ri + r_off, rp)) for (gi, gp), (ri, rp) in second.edges]
    for o, i in zip(outs, ins):
        d_out, d_in = first.dangling[o], second.dangling[i]
        edges.append(((d_out.vertex, d_out.port), (d_in.vertex + r_off, d_in.port)))
    dangling = [first.dangling[k] for k in first.inputs()]
    dangling += [
        Dangling("gen", second.dangling[k].vertex + g_off, second.dangling[k].port) for k in second.outputs()
    ]
    return SignatureGrid(
        first.generators + second.generators,
        first.recognizers + second.recognizers,
        tuple(edges),
        tuple(dangling),
    )

