import math
import random
from fractions import Fraction

import numpy as np
import pytest

from cuspvol.algebraic import AlgebraicNumber, two_cos_pi_over
from cuspvol.coxeter import (
    INF,
    CoxeterGraph,
    CoxeterSymbolError,
    Dotted,
    Verdict,
    VertexKind,
    arithmeticity,
    as_graph,
    classify_vertices,
    count_cusps,
    cycle_products,
    enumerate_tetrahedra,
    gram_matrix,
    inertia,
    is_arithmetic,
    parse_coxeter_symbol,
    print_coxeter_symbol,
    triangle_area,
)
from cuspvol.volume import tetrahedron_symbols

S3 = math.sqrt(3)


@pytest.fixture(scope="module")
def enumerated():
    return enumerate_tetrahedra()


def edge_weights(g):
    return sorted(w for _, _, w in g.edges)


# ---------------------------------------------------------------- algebraic


def test_two_cos_table():
    expected = {2: 0.0, 3: 1.0, 4: math.sqrt(2), 5: (1 + math.sqrt(5)) / 2, 6: S3, INF: 2.0}
    for m, v in expected.items():
        assert float(two_cos_pi_over(m)) == pytest.approx(v, abs=1e-15)
    assert two_cos_pi_over(7) is None


def test_rational_integer_predicate():
    assert AlgebraicNumber.rational(-3).is_rational_integer()
    assert not AlgebraicNumber.rational(Fraction(1, 2)).is_rational_integer()
    assert not AlgebraicNumber.sqrt(3).is_rational_integer()
    assert (AlgebraicNumber.sqrt(3) * AlgebraicNumber.sqrt(3)).is_rational_integer()
    assert AlgebraicNumber.sqrt(6) == AlgebraicNumber.sqrt(2) * AlgebraicNumber.sqrt(3)


def test_exact_products_match_floats():
    rng = random.Random(7)
    pool = [two_cos_pi_over(m) for m in (2, 3, 4, 5, 6, INF)] + [AlgebraicNumber.sqrt(p) for p in (2, 3, 5)]
    for _ in range(1000):
        a = rng.choice(pool) * AlgebraicNumber.rational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        b = rng.choice(pool) + rng.choice(pool)
        assert abs(float(a * b) - float(a) * float(b)) < 1e-12
        assert abs(float(a - b) - (float(a) - float(b))) < 1e-12


# ---------------------------------------------------------------- parser


@pytest.mark.parametrize(
    "text, n_edges, weights",
    [
        ("[5,3,6]", 3, [3, 5, 6]),
        ("[(3^3,6)]", 4, [3, 3, 3, 6]),
        ("[3,3,3]", 3, [3, 3, 3]),
        ("[3^{1,1},6]", 3, [3, 3, 6]),
        ("[∞,3,6,∞]", 4, [3, 6, INF, INF]),
        ("[inf,3,6,inf]", 4, [3, 6, INF, INF]),
    ],
)
def test_parse_shapes(text, n_edges, weights):
    g = parse_coxeter_symbol(text)
    assert len(g.edges) == n_edges
    assert edge_weights(g) == weights


def test_linear_symbol_is_a_path():
    g = parse_coxeter_symbol("[5,3,6]")
    assert [(a, b) for a, b, _ in g.edges] == [(0, 1), (1, 2), (2, 3)]
    assert [w for *_, w in g.edges] == [5, 3, 6]


def test_fork_symbol():
    g = parse_coxeter_symbol("[3^{1,1},6]")
    degree = {v: 0 for v in g.nodes}
    for a, b, _ in g.edges:
        degree[a] += 1
        degree[b] += 1
    assert sorted(degree.values()) == [1, 1, 1, 3]


@pytest.mark.parametrize("bad", ["", "[5,3,", "5,3,6", "[2,3,6]", "[(3^0,6)]", "[a,b]"])
def test_parse_errors(bad):
    with pytest.raises(CoxeterSymbolError):
        parse_coxeter_symbol(bad)


def test_round_trip_catalog():
    for sym in tetrahedron_symbols() + ["[∞,3,6,∞]", "[3,3,3]"]:
        g = parse_coxeter_symbol(sym)
        assert print_coxeter_symbol(parse_coxeter_symbol(print_coxeter_symbol(g))) == print_coxeter_symbol(g)
        assert CoxeterGraph.from_json(g.to_json()) == g


# ---------------------------------------------------------------- Gram matrix


def test_gram_336_entries():
    G = gram_matrix("[3,3,6]").entries
    assert G[0, 1] == pytest.approx(-0.5)
    assert G[1, 2] == pytest.approx(-0.5)
    assert G[2, 3] == pytest.approx(-S3 / 2)
    assert G[0, 2] == G[0, 3] == G[1, 3] == 0.0
    assert np.allclose(np.diag(G), 1.0)


def test_gram_cycle_entries():
    G = gram_matrix("[(3^3,6)]").entries
    off = sorted(G[i, j] for i in range(4) for j in range(i + 1, 4) if G[i, j] != 0)
    assert off == pytest.approx([-S3 / 2, -0.5, -0.5, -0.5])


def test_dotted_edges():
    g = CoxeterGraph.from_edges(3, [(0, 1, 4), (1, 2, Dotted())])
    with pytest.raises(ValueError):
        gram_matrix(g)
    G = gram_matrix(g, {(1, 2): 0.5})
    assert G.entries[1, 2] == pytest.approx(-math.cosh(0.5))
    assert (1, 2) in G.non_exact
    with pytest.raises(ValueError):
        is_arithmetic(g)


def test_inertia_examples():
    assert inertia(gram_matrix("[3,3,6]")) == (3, 0, 1)
    assert inertia(np.eye(4)) == (4, 0, 0)
    assert inertia(gram_matrix("[5,3,6]")) == (3, 0, 1)


def test_inertia_matches_eigenvalue_oracle():
    rng = np.random.default_rng(3)
    for _ in range(50):
        A = rng.normal(size=(5, 5))
        M = A + A.T
        ev = np.linalg.eigvalsh(M)
        assert inertia(M) == (int(np.sum(ev > 0)), 0, int(np.sum(ev < 0)))


def test_orthoscheme_matrix_signature():
    a, b = math.pi / 5, math.pi / 3
    bp = math.pi / 2 - b
    M = np.array([
        [1, -math.cos(a), 0, 0],
        [-math.cos(a), 1, -math.cos(b), 0],
        [0, -math.cos(b), 1, -math.cos(bp)],
        [0, 0, -math.cos(bp), 1],
    ])
    assert inertia(M) == (3, 0, 1)


# ---------------------------------------------------------------- vertices and cusps


@pytest.mark.parametrize("sym, cusps", [("[5,3,6]", 1), ("[(3^3,6)]", 2), ("[3^{1,1},6]", 2), ("[3,3,6]", 1)])
def test_count_cusps(sym, cusps):
    assert count_cusps(sym) == cusps


def test_truncation_vertex_is_ultraideal():
    for k in (7, 8, 12):
        kinds = classify_vertices(gram_matrix(f"[{k},3,6]"))
        assert VertexKind.ULTRAIDEAL in kinds


def test_classify_requires_hyperbolic_simplex():
    with pytest.raises(ValueError):
        classify_vertices(np.eye(4))


def test_enumeration_has_23_graphs(enumerated):
    assert len(enumerated) == 23
    assert sorted(print_coxeter_symbol(g) for g in enumerated) == sorted(tetrahedron_symbols())


def test_every_catalog_tetrahedron_is_hyperbolic_and_cusped(enumerated):
    for g in enumerated:
        G = gram_matrix(g)
        assert inertia(G) == (3, 0, 1)
        kinds = classify_vertices(G)
        assert VertexKind.IDEAL in kinds and VertexKind.ULTRAIDEAL not in kinds


# ---------------------------------------------------------------- arithmeticity


@pytest.mark.parametrize("sym", ["[3,3,6]", "[3,6,3]", "[4,3,6]", "[6,3,6]", "[3,4,4]", "[4,4,4]"])
def test_arithmetic_fixtures(sym):
    assert is_arithmetic(sym) is Verdict.ARITHMETIC


@pytest.mark.parametrize("sym", ["[5,3,6]", "[(3^3,6)]"])
def test_non_arithmetic_fixtures(sym):
    assert is_arithmetic(sym) is Verdict.NON_ARITHMETIC


def test_cycle_product_evidence():
    res = arithmeticity("[(3^3,6)]")
    nodes, prod = res.offending_cycle
    # entries of 2G: three −1's and one −√3
    assert prod == AlgebraicNumber.sqrt(3)
    assert sorted(nodes) == [0, 1, 2, 3]
    assert arithmeticity("[5,3,6]").offending_weights == (5,)


def test_paths_have_no_cycles():
    for sym in ("[3,4,4]", "[5,3,6]", "[3,3,3]"):
        assert cycle_products(gram_matrix(sym)) == []


def test_tree_verdict_depends_only_on_weights(enumerated):
    for g in enumerated:
        G = gram_matrix(g)
        if not cycle_products(G):
            expected = Verdict.ARITHMETIC if g.weights() <= {2, 3, 4, 6, INF} else Verdict.NON_ARITHMETIC
            assert is_arithmetic(g) is expected


def test_cyclic_arithmetic_example():
    # [(3^2,4^2)]: 2G cycle (−1)(−1)(−√2)(−√2) = 2
    res = arithmeticity("[(3^2,4^2)]")
    assert res.verdict is Verdict.ARITHMETIC
    assert [p for _, p in res.cycles] == [AlgebraicNumber.rational(2)]


# ---------------------------------------------------------------- 2D analogue


def test_triangle_area():
    assert triangle_area(5, INF) == pytest.approx(3 * math.pi / 10)
    assert triangle_area(INF, INF) == pytest.approx(math.pi / 2)
    assert triangle_area(3, INF) == pytest.approx(math.pi / 6)
    with pytest.raises(ValueError):
        triangle_area(3, 6)


def test_as_graph_accepts_graphs():
    g = parse_coxeter_symbol("[5,3,6]")
    assert as_graph(g) is g
