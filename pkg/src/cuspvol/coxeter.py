"""Coxeter graphs, Gram matrices, cusps and the cycle test for arithmeticity.

Symbol grammar (whitespace ignored, ``inf`` and ``∞`` are the same weight):

    [w1,...,wk]            linear graph on k+1 nodes
    [(b1^e1,...,bm^em)]    cyclic graph, weight bi repeated ei times
    [p^{1,1},q]            fork: two leaves joined by p to a node that chains by q
    [p^{1,1,1}]            star with three leaves of weight p
    [p^{[n]}]              cycle of n edges of weight p, same as [(p^n)]
    [w,p^{[3]}]            triangle of weight p with a tail of weight w
    [p^{[ ]x[ ]}]          4-cycle of weight p with one diagonal of weight p
    [p^{[3,3]}]            complete graph on 4 nodes, all weights p

Dotted edges have no symbol form; they are read from the JSON description
``{"nodes": [...], "edges": [{"i": 0, "j": 1, "label": {"dotted": 0.5}}]}``.
"""
from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence, Union

import numpy as np
from scipy import linalg

from .algebraic import AlgebraicNumber, two_cos_pi_over

INF = math.inf
ZERO_THRESHOLD = 1e-9
EXACT_WEIGHTS = frozenset({2, 3, 4, 5, 6, INF})
ARITHMETIC_WEIGHTS = frozenset({2, 3, 4, 6, INF})


@dataclass(frozen=True)
class Dotted:
    """Edge between ultraparallel facets; ``length`` is their distance l_ij."""

    length: float | None = None


Label = Union[int, float, Dotted]


class CoxeterSymbolError(ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None) -> None:
        self.text = text
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


class VertexKind(enum.Enum):
    FINITE = "FINITE"
    IDEAL = "IDEAL"
    ULTRAIDEAL = "ULTRAIDEAL"


class Verdict(enum.Enum):
    ARITHMETIC = "ARITHMETIC"
    NON_ARITHMETIC = "NON_ARITHMETIC"


def _check_label(label: Label) -> Label:
    if isinstance(label, Dotted):
        return label
    if label == INF:
        return INF
    if isinstance(label, float) and label.is_integer():
        label = int(label)
    if not isinstance(label, int) or isinstance(label, bool):
        raise ValueError(f"invalid edge label {label!r}")
    if label < 3:
        raise ValueError(f"edge weight {label} < 3 (weight 2 is an absent edge)")
    return label


@dataclass(frozen=True)
class CoxeterGraph:
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, Label], ...]

    def __post_init__(self) -> None:
        nodes = tuple(self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate node ids")
        seen: set[frozenset[int]] = set()
        norm = []
        for i, j, label in self.edges:
            if i == j:
                raise ValueError("loop edge")
            if i not in nodes or j not in nodes:
                raise ValueError(f"edge ({i},{j}) references unknown node")
            key = frozenset((i, j))
            if key in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            seen.add(key)
            a, b = sorted((i, j), key=nodes.index)
            norm.append((a, b, _check_label(label)))
        norm.sort(key=lambda e: (nodes.index(e[0]), nodes.index(e[1])))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, Label]]) -> CoxeterGraph:
        return cls(tuple(range(n)), tuple(edges))

    @property
    def n(self) -> int:
        return len(self.nodes)

    def label(self, i: int, j: int) -> Label:
        """Edge label between node ids i and j; 2 when absent."""
        for a, b, lab in self.edges:
            if {a, b} == {i, j}:
                return lab
        return 2

    def weights(self) -> set[Label]:
        return {lab for _, _, lab in self.edges}

    def has_dotted(self) -> bool:
        return any(isinstance(lab, Dotted) for _, _, lab in self.edges)

    def index_edges(self) -> list[tuple[int, int, Label]]:
        """Edges with node ids replaced by positions 0..n-1."""
        pos = {v: k for k, v in enumerate(self.nodes)}
        return [(pos[a], pos[b], lab) for a, b, lab in self.edges]

    def to_json(self) -> dict[str, Any]:
        def enc(lab: Label) -> Any:
            if isinstance(lab, Dotted):
                return {"dotted": lab.length}
            return "inf" if lab == INF else lab

        return {
            "nodes": list(self.nodes),
            "edges": [{"i": i, "j": j, "label": enc(lab)} for i, j, lab in self.edges],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any] | str) -> CoxeterGraph:
        if isinstance(data, str):
            data = json.loads(data)
        edges = []
        for e in data["edges"]:
            lab = e.get("label", 3)
            if isinstance(lab, Mapping) and "dotted" in lab:
                lab = Dotted(None if lab["dotted"] is None else float(lab["dotted"]))
            elif lab == "dotted":
                lab = Dotted()
            elif isinstance(lab, str):
                lab = INF if lab in ("inf", "∞") else int(lab)
            edges.append((e["i"], e["j"], lab))
        return cls(tuple(data["nodes"]), tuple(edges))


# ---------------------------------------------------------------- parsing


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> CoxeterSymbolError:
        return CoxeterSymbolError(msg, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected integer")
        return int(self.text[start : self.pos])

    def weight(self) -> Label:
        self.skip()
        start = self.pos
        if self.text.startswith("∞", self.pos):
            self.pos += 1
            return INF
        if self.text.startswith("inf", self.pos):
            self.pos += 3
            return INF
        value = self.integer()
        if value < 3:
            self.pos = start
            raise self.error(f"weight {value} < 3")
        return value

    def superscript(self) -> tuple[str, Any]:
        # after '^{'
        if self.accept("["):
            if self.accept("]"):
                if not (self.accept("x") or self.accept("×")):
                    raise self.error("expected 'x' in [ ]x[ ]")
                self.expect("[")
                self.expect("]")
                self.expect("}")
                return ("k4-minus-edge", None)
            a = self.integer()
            if self.accept(","):
                b = self.integer()
                self.expect("]")
                self.expect("}")
                if (a, b) != (3, 3):
                    raise self.error("only [3,3] is supported")
                return ("k4", None)
            self.expect("]")
            self.expect("}")
            if a < 3:
                raise self.error("cycle length < 3")
            return ("cycle", a)
        ones = [self.integer()]
        while self.accept(","):
            ones.append(self.integer())
        self.expect("}")
        if ones == [1, 1]:
            return ("fork", None)
        if ones == [1, 1, 1]:
            return ("star", None)
        raise self.error("unsupported branching superscript")

    def parse(self) -> CoxeterGraph:
        self.expect("[")
        if self.accept("("):
            weights: list[Label] = []
            while True:
                w = self.weight()
                e = 1
                if self.accept("^"):
                    e = self.integer()
                    if e < 1:
                        raise self.error("exponent < 1")
                weights.extend([w] * e)
                if self.accept(")"):
                    break
                self.expect(",")
            self.expect("]")
            self._end()
            if len(weights) < 3:
                raise CoxeterSymbolError("cyclic symbol needs at least 3 weights", self.text)
            return _cycle(weights)
        items: list[tuple[Label, tuple[str, Any] | None, int]] = []
        while True:
            start = self.pos
            w = self.weight()
            sup = None
            if self.accept("^"):
                self.expect("{")
                sup = self.superscript()
            items.append((w, sup, start))
            if self.accept("]"):
                break
            self.expect(",")
        self._end()
        return self._build(items)

    def _end(self) -> None:
        if self.peek():
            raise self.error("trailing characters")

    def _build(self, items: list[tuple[Label, tuple[str, Any] | None, int]]) -> CoxeterGraph:
        sups = [(k, it) for k, it in enumerate(items) if it[1] is not None]
        if not sups:
            return _path([w for w, _, _ in items])
        if len(sups) > 1:
            raise CoxeterSymbolError("more than one superscript", self.text, sups[1][1][2])
        k, (p, (kind, arg), start) = sups[0]
        rest = [w for w, s, _ in items if s is None]
        shape = (kind, k, len(items))
        if shape == ("fork", 0, 2):
            return _fork(p, rest[0])
        if shape == ("star", 0, 1):
            return _star(p)
        if shape == ("cycle", 0, 1):
            return _cycle([p] * arg)
        if shape == ("cycle", 1, 2) and arg == 3:
            return _tail_triangle(rest[0], p)
        if shape == ("k4-minus-edge", 0, 1):
            return _k4_minus_edge(p)
        if shape == ("k4", 0, 1):
            return _k4(p)
        raise CoxeterSymbolError("superscript not allowed in this position", self.text, start)


def _path(weights: Sequence[Label]) -> CoxeterGraph:
    return CoxeterGraph.from_edges(len(weights) + 1, [(i, i + 1, w) for i, w in enumerate(weights)])


def _cycle(weights: Sequence[Label]) -> CoxeterGraph:
    n = len(weights)
    return CoxeterGraph.from_edges(n, [(i, (i + 1) % n, w) for i, w in enumerate(weights)])


def _fork(p: Label, q: Label) -> CoxeterGraph:
    return CoxeterGraph.from_edges(4, [(0, 2, p), (1, 2, p), (2, 3, q)])


def _star(p: Label) -> CoxeterGraph:
    return CoxeterGraph.from_edges(4, [(0, 3, p), (1, 3, p), (2, 3, p)])


def _tail_triangle(w: Label, p: Label) -> CoxeterGraph:
    return CoxeterGraph.from_edges(4, [(0, 1, w), (1, 2, p), (1, 3, p), (2, 3, p)])


def _k4_minus_edge(p: Label) -> CoxeterGraph:
    return CoxeterGraph.from_edges(4, [(0, 1, p), (1, 2, p), (2, 3, p), (0, 3, p), (1, 3, p)])


def _k4(p: Label) -> CoxeterGraph:
    return CoxeterGraph.from_edges(4, [(i, j, p) for i, j in itertools.combinations(range(4), 2)])


def parse_coxeter_symbol(text: str) -> CoxeterGraph:
    """Parse a Coxeter symbol into a graph; errors carry the offending position."""
    if not text or not text.strip():
        raise CoxeterSymbolError("empty symbol")
    return _Parser(text).parse()


def _fmt(w: Label) -> str:
    return "∞" if w == INF else str(w)


def _wkey(w: Label) -> float:
    return math.inf if w == INF else float(w)


def print_coxeter_symbol(g: CoxeterGraph) -> str:
    """Canonical symbol for graphs of the shapes the parser accepts."""
    if g.has_dotted():
        raise ValueError("dotted edges have no symbol form")
    n = g.n
    es = g.index_edges()
    adj: dict[int, dict[int, Label]] = {k: {} for k in range(n)}
    for i, j, w in es:
        adj[i][j] = w
        adj[j][i] = w
    deg = [len(adj[k]) for k in range(n)]
    m = len(es)
    connected = _connected(adj)
    if not connected:
        raise ValueError("disconnected graph has no symbol")
    if m == n - 1 and max(deg, default=0) <= 2:
        if n == 1:
            raise ValueError("single node has no symbol")
        end = deg.index(1)
        order = [end]
        while len(order) < n:
            nxt = [v for v in adj[order[-1]] if v not in order]
            order.append(nxt[0])
        seq = [adj[a][b] for a, b in zip(order, order[1:])]
        seq = min(seq, seq[::-1], key=lambda s: [_wkey(w) for w in s])
        return "[" + ",".join(_fmt(w) for w in seq) + "]"
    if m == n and all(d == 2 for d in deg):
        order = [0]
        while len(order) < n:
            nxt = [v for v in adj[order[-1]] if v not in order]
            order.append(nxt[0])
        seq = [adj[order[k]][order[(k + 1) % n]] for k in range(n)]
        cands = []
        for s in (seq, seq[::-1]):
            for r in range(n):
                cands.append(s[r:] + s[:r])
        best = min(cands, key=lambda s: [_wkey(w) for w in s])
        runs = [(w, len(list(grp))) for w, grp in itertools.groupby(best)]
        return "[(" + ",".join(_fmt(w) if e == 1 else f"{_fmt(w)}^{e}" for w, e in runs) + ")]"
    if n == 4 and m == 3 and sorted(deg) == [1, 1, 1, 3]:
        c = deg.index(3)
        ws = sorted(adj[c].values(), key=_wkey)
        if ws[0] == ws[1] == ws[2]:
            return f"[{_fmt(ws[0])}^{{1,1,1}}]"
        for p in set(ws):
            if ws.count(p) == 2:
                q = [w for w in ws if w != p][0]
                return f"[{_fmt(p)}^{{1,1}},{_fmt(q)}]"
        raise ValueError("fork with three distinct weights has no symbol")
    if n == 4 and m == 4 and sorted(deg) == [1, 2, 2, 3]:
        tail = deg.index(1)
        (hub, w), = adj[tail].items()
        tri = [adj[a][b] for a, b in itertools.combinations([k for k in range(4) if k != tail], 2)]
        if len(set(tri)) == 1:
            return f"[{_fmt(w)},{_fmt(tri[0])}^{{[3]}}]"
        raise ValueError("triangle with unequal weights has no symbol")
    ws_all = {w for _, _, w in es}
    if n == 4 and m == 5 and len(ws_all) == 1:
        return f"[{_fmt(ws_all.pop())}^{{[ ]x[ ]}}]"
    if n == 4 and m == 6 and len(ws_all) == 1:
        return f"[{_fmt(ws_all.pop())}^{{[3,3]}}]"
    raise ValueError("graph shape has no symbol in the supported grammar")


def _connected(adj: Mapping[int, Mapping[int, Label]]) -> bool:
    if not adj:
        return False
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(adj)


def as_graph(g: CoxeterGraph | str) -> CoxeterGraph:
    return parse_coxeter_symbol(g) if isinstance(g, str) else g


# ---------------------------------------------------------------- Gram matrix


@dataclass(frozen=True)
class GramMatrix:
    n: int
    entries: np.ndarray
    exact2g: tuple[tuple[AlgebraicNumber | None, ...], ...]
    non_exact: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        self.entries.setflags(write=False)

    @property
    def exact_complete(self) -> bool:
        return not self.non_exact


def gram_matrix(
    g: CoxeterGraph | str,
    dotted_params: Mapping[tuple[int, int], float] | None = None,
) -> GramMatrix:
    """Gram matrix: g_ij = −cos(π/m), −1 for ∞, −cosh(l) for dotted edges."""
    g = as_graph(g)
    dotted_params = dict(dotted_params or {})
    n = g.n
    pos = {v: k for k, v in enumerate(g.nodes)}
    G = np.eye(n)
    exact: list[list[AlgebraicNumber | None]] = [
        [AlgebraicNumber.rational(2) if i == j else AlgebraicNumber.rational(0) for j in range(n)]
        for i in range(n)
    ]
    non_exact: set[tuple[int, int]] = set()
    for a, b, lab in g.edges:
        i, j = pos[a], pos[b]
        if isinstance(lab, Dotted):
            length = dotted_params.get((a, b), dotted_params.get((b, a), lab.length))
            if length is None or not length > 0:
                raise ValueError(f"dotted edge ({a},{b}) needs a positive length")
            val = -math.cosh(length)
            h = None
        elif lab == INF:
            val = -1.0
            h = -two_cos_pi_over(INF)
        else:
            val = -math.cos(math.pi / lab)
            t = two_cos_pi_over(lab)
            h = None if t is None else -t
        G[i, j] = G[j, i] = val
        exact[i][j] = exact[j][i] = h
        if h is None:
            non_exact.add((i, j))
    return GramMatrix(n, G, tuple(tuple(r) for r in exact), frozenset(non_exact))


def _matrix(G: GramMatrix | np.ndarray) -> np.ndarray:
    return G.entries if isinstance(G, GramMatrix) else np.asarray(G, dtype=float)


def inertia(G: GramMatrix | np.ndarray) -> tuple[int, int, int]:
    """(n_pos, n_zero, n_neg) from a symmetric LDLᵀ factorisation."""
    M = _matrix(G)
    if M.shape[0] != M.shape[1] or not np.allclose(M, M.T, atol=1e-14):
        raise ValueError("matrix must be symmetric")
    scale = max(float(np.max(np.abs(M))), 1e-300)
    _, D, _ = linalg.ldl(M, lower=True)
    # D is block diagonal with 1×1 and 2×2 blocks; its inertia equals that of M
    ev = np.linalg.eigvalsh(D)
    thr = ZERO_THRESHOLD * scale
    return (int(np.sum(ev > thr)), int(np.sum(np.abs(ev) <= thr)), int(np.sum(ev < -thr)))


def classify_vertices(G: GramMatrix | np.ndarray) -> list[VertexKind]:
    """Kind of the vertex opposite each facet of a tetrahedron."""
    M = _matrix(G)
    if M.shape != (4, 4):
        raise ValueError("vertex classification needs a 4×4 (simplex) Gram matrix")
    if inertia(M) != (3, 0, 1):
        raise ValueError("Gram matrix is not of signature (3,1)")
    kinds = []
    for i in range(4):
        idx = [k for k in range(4) if k != i]
        sig = inertia(M[np.ix_(idx, idx)])
        if sig == (3, 0, 0):
            kinds.append(VertexKind.FINITE)
        elif sig == (2, 1, 0):
            kinds.append(VertexKind.IDEAL)
        else:
            kinds.append(VertexKind.ULTRAIDEAL)
    return kinds


def count_cusps(g: CoxeterGraph | str) -> int:
    return classify_vertices(gram_matrix(g)).count(VertexKind.IDEAL)


# ---------------------------------------------------------------- cycles


def cycle_products(G: GramMatrix) -> list[tuple[tuple[int, ...], AlgebraicNumber]]:
    """Every simple cycle of length ≥ 3 through nonzero entries of 2G, with its product."""
    if not G.exact_complete:
        raise ValueError(f"exact entries unset for {sorted(G.non_exact)}")
    n = G.n
    h = G.exact2g
    nz = [[i != j and h[i][j] != 0 for j in range(n)] for i in range(n)]
    out = []
    for length in range(3, n + 1):
        for combo in itertools.combinations(range(n), length):
            first, others = combo[0], combo[1:]
            for perm in itertools.permutations(others):
                if perm[0] > perm[-1]:
                    continue  # each undirected cycle once
                cyc = (first, *perm)
                if all(nz[cyc[k]][cyc[(k + 1) % length]] for k in range(length)):
                    prod = AlgebraicNumber.rational(1)
                    for k in range(length):
                        prod = prod * h[cyc[k]][cyc[(k + 1) % length]]
                    out.append((cyc, prod))
    return out


@dataclass(frozen=True)
class ArithmeticityResult:
    verdict: Verdict
    reason: str
    offending_weights: tuple[Label, ...] = ()
    offending_cycle: tuple[tuple[int, ...], AlgebraicNumber] | None = None
    cycles: tuple[tuple[tuple[int, ...], AlgebraicNumber], ...] = ()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Verdict):
            return self.verdict is other
        return super().__eq__(other)

    __hash__ = object.__hash__


def arithmeticity(g: CoxeterGraph | str) -> ArithmeticityResult:
    """Cycle criterion with its evidence (offending weight or cycle)."""
    g = as_graph(g)
    if g.has_dotted():
        raise ValueError("dotted edges are not supported by the cycle criterion")
    bad = tuple(sorted((w for w in g.weights() if w not in ARITHMETIC_WEIGHTS), key=_wkey))
    G = gram_matrix(g)
    cycles = tuple(cycle_products(G)) if G.exact_complete else ()
    if bad:
        return ArithmeticityResult(
            Verdict.NON_ARITHMETIC,
            "weight " + ",".join(_fmt(w) for w in bad) + " not in {2,3,4,6,∞}",
            offending_weights=bad,
            cycles=cycles,
        )
    for cyc, prod in cycles:
        if not prod.is_rational_integer():
            path = "-".join(str(g.nodes[k]) for k in cyc)
            return ArithmeticityResult(
                Verdict.NON_ARITHMETIC,
                f"cycle {path} has product {prod}, not a rational integer",
                offending_cycle=(cyc, prod),
                cycles=cycles,
            )
    return ArithmeticityResult(Verdict.ARITHMETIC, "all weights and cycles pass", cycles=cycles)


def is_arithmetic(g: CoxeterGraph | str) -> Verdict:
    return arithmeticity(g).verdict


# ---------------------------------------------------------------- 2D and enumeration


def triangle_area(p: float, q: float) -> float:
    """Area of the hyperbolic triangle with angles π/2, π/p, π/q."""
    inv = lambda m: 0.0 if m == INF else 1.0 / m  # noqa: E731
    if p != INF and p < 2 or q != INF and q < 2:
        raise ValueError("orders must be ≥ 2")
    defect = 0.5 - inv(p) - inv(q)
    if not defect > 1e-15:
        raise ValueError("[p,q] is not hyperbolic (needs 1/p + 1/q < 1/2)")
    return math.pi * defect


def enumerate_tetrahedra(max_weight: int = 6) -> list[CoxeterGraph]:
    """Non-compact Coxeter tetrahedra with weights ≤ max_weight, up to isomorphism.

    A graph qualifies when its Gram matrix has signature (3,1), every vertex
    is finite or ideal, and at least one vertex is ideal.
    """
    pairs = list(itertools.combinations(range(4), 2))
    seen: set[tuple[int, ...]] = set()
    out = []
    for ws in itertools.product(range(2, max_weight + 1), repeat=6):
        key = min(
            tuple(ws[pairs.index(tuple(sorted((perm[i], perm[j]))))] for i, j in pairs)
            for perm in itertools.permutations(range(4))
        )
        if key in seen:
            continue
        seen.add(key)
        g = CoxeterGraph.from_edges(4, [(i, j, w) for (i, j), w in zip(pairs, ws) if w > 2])
        G = gram_matrix(g)
        if inertia(G) != (3, 0, 1):
            continue
        kinds = classify_vertices(G)
        if VertexKind.ULTRAIDEAL in kinds or VertexKind.IDEAL not in kinds:
            continue
        out.append(g)
    return out
