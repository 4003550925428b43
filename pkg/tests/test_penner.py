import math
import random

import networkx as nx
import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from entvol import penner
from entvol.errors import NotPrimitive, NotPseudoAnosov, ParseError
from entvol.penner import (TORUS_SYSTEM, IntersectionSystem, PennerMatrix, TwistWord, family,
                           is_primitive, spectral_radius, twist_matrix, validate_pA, word_product)
from entvol.torus import dilatation as torus_dilatation
from entvol.words import enumerate_words

TWO = IntersectionSystem(((2,),))


def exact_roots(rows):
    """Roots of the exact characteristic polynomial (sympy) as complex numbers."""
    x = sympy.symbols("x")
    poly = sympy.Matrix(rows).charpoly(x)
    return [complex(r) for r in sympy.Poly(poly.as_expr(), x).nroots(n=30)]


def nx_primitive(rows):
    g = nx.DiGraph()
    d = len(rows)
    g.add_nodes_from(range(d))
    g.add_edges_from((i, j) for i in range(d) for j in range(d) if rows[i][j] > 0)
    return nx.is_strongly_connected(g) and nx.is_aperiodic(g)


def test_twist_matrix_examples():
    assert twist_matrix(TORUS_SYSTEM, ("A", 1)).entries == ((1, 1), (0, 1))
    assert twist_matrix(TORUS_SYSTEM, ("B", 1)).entries == ((1, 0), (1, 1))
    assert twist_matrix(TWO, ("A", 1)).entries == ((1, 2), (0, 1))
    s = IntersectionSystem(((1, 1),))
    assert twist_matrix(s, ("A", 1)).entries == ((1, 1, 1), (0, 1, 0), (0, 0, 1))
    with pytest.raises(IndexError):
        twist_matrix(s, ("B", 3))


def test_word_product_examples():
    assert word_product(TORUS_SYSTEM, TwistWord.parse("A1 B1")).entries == ((2, 1), (1, 1))
    assert word_product(TWO, TwistWord.parse("A1 B1")).entries == ((5, 2), (2, 1))
    assert word_product(TWO, None) == PennerMatrix.identity(2)


def test_validate_pA():
    validate_pA(TwistWord.parse("A1 B1"), TORUS_SYSTEM)
    with pytest.raises(NotPseudoAnosov) as exc:
        validate_pA(TwistWord.parse("A1 A1"), TORUS_SYSTEM)
    assert exc.value.missing == ("B1",)
    validate_pA(TwistWord.parse("A1 B2 B1"), IntersectionSystem(((1, 1),)))


def test_twist_word_parse():
    assert TwistWord.parse("a1, B12").tokens == (("A", 1), ("B", 12))
    for bad in ["", "C1", "A0", "A"]:
        with pytest.raises(ParseError):
            TwistWord.parse(bad)


def test_system_file_roundtrip(tmp_path):
    s = IntersectionSystem(((1, 0, 2), (0, 1, 1)))
    p = tmp_path / "sys.txt"
    p.write_text(s.to_text())
    assert IntersectionSystem.from_file(p) == s
    assert (s.m, s.n) == (2, 3)
    for bad in ["1 1\n", "2 1\n1\n", "1 1\n-1\n", "1 2\n1 0\n", "x y\n"]:
        with pytest.raises(ParseError):
            IntersectionSystem.from_text(bad)


@pytest.mark.parametrize("rows,expected", [
    ([[2, 1], [1, 1]], True),
    ([[1, 0], [0, 1]], False),
    ([[0, 1], [1, 0]], False),
    ([[0, 1], [1, 1]], True),
    ([[0, 1, 0], [0, 0, 1], [1, 1, 0]], True),  # Wielandt-extremal, needs power 5
])
def test_is_primitive_examples(rows, expected):
    assert is_primitive(rows) is expected
    assert nx_primitive(rows) is expected


def test_is_primitive_matches_graph_oracle():
    rng = random.Random(1)
    for _ in range(300):
        d = rng.randint(1, 6)
        rows = [[rng.choice([0, 0, 0, 1, 2]) for _ in range(d)] for _ in range(d)]
        assert is_primitive(rows) == nx_primitive(rows), rows


def test_spectral_radius_examples():
    lam, left, right = spectral_radius([[2, 1], [1, 1]])
    assert lam == pytest.approx((3 + math.sqrt(5)) / 2, rel=1e-12)
    assert lam == pytest.approx(2.61803, abs=1e-5)
    assert spectral_radius([[5, 2], [2, 1]])[0] == pytest.approx(3 + 2 * math.sqrt(2), rel=1e-12)
    assert left.sum() == pytest.approx(1) and right.sum() == pytest.approx(1)
    with pytest.raises(NotPrimitive):
        spectral_radius([[0, 1], [1, 0]])


def test_spectral_radius_block_one_closed_form():
    rng = random.Random(7)
    for _ in range(20):
        m, n = rng.randint(1, 40), rng.randint(1, 40)
        mn = m * n
        closed = (2 + mn + math.sqrt(4 * mn + mn * mn)) / 2
        got = spectral_radius([[1 + mn, m], [n, 1]])[0]
        assert got == pytest.approx(closed, rel=1e-12)


def random_primitive(rng, d):
    while True:
        rows = [[rng.randint(0, 5) if rng.random() < 0.6 else 0 for _ in range(d)]
                for _ in range(d)]
        if nx_primitive(rows):
            return rows


def test_perron_frobenius_suite():
    rng = random.Random(2024)
    for _ in range(200):
        d = rng.randint(1, 6)
        rows = random_primitive(rng, d)
        lam, left, right = spectral_radius(rows)
        A = np.array(rows, dtype=float)
        roots = exact_roots(rows) if d <= 4 else list(np.linalg.eigvals(A))
        top = max(roots, key=abs)
        assert abs(top.imag) < 1e-9 and top.real > 0
        assert lam == pytest.approx(top.real, rel=1e-11)
        others = sorted(roots, key=abs)[:-1]
        assert all(abs(r) < lam * (1 - 1e-9) for r in others)
        assert (left > 0).all() and (right > 0).all()
        assert np.allclose(A @ right, lam * right, rtol=1e-10, atol=1e-13)
        assert np.allclose(left @ A, lam * left, rtol=1e-10, atol=1e-13)


def test_perron_frobenius_monotonicity():
    rng = random.Random(5)
    for _ in range(200):
        d = rng.randint(1, 6)
        T = random_primitive(rng, d)
        B = [[rng.randint(0, x) for x in row] for row in T]
        lam = spectral_radius(T)[0]
        beta = max(abs(np.linalg.eigvals(np.array(B, dtype=float))))
        assert lam >= beta * (1 - 1e-12)
        if B != T:
            # equality of spectral radii forces T = B
            assert lam > beta * (1 + 1e-9)


def test_family_examples():
    ks = family(TORUS_SYSTEM, TwistWord.parse("A1 B1"), 3)
    # phi_k = A1^k (A1 B1) = L^(k+1) R, trace k + 3
    assert [k for k, _ in ks] == [1, 2, 3]
    assert ks[0][1] == pytest.approx(2 + math.sqrt(3), rel=1e-12)
    assert ks[1][1] == pytest.approx((5 + math.sqrt(21)) / 2, rel=1e-12)
    assert ks[2][1] == pytest.approx(3 + 2 * math.sqrt(2), rel=1e-12)


def test_family_unbounded_on_torus():
    ks = family(TORUS_SYSTEM, TwistWord.parse("A1 B1"), 50)
    assert ks[-1][1] > 50


def test_family_strict_on_random_system():
    rng = random.Random(11)
    inter = tuple(tuple(rng.randint(1, 3) for _ in range(3)) for _ in range(2))
    s = IntersectionSystem(inter)
    w = TwistWord.parse("A1 B1 A2 B3 B2")
    vals = [lam for _, lam in family(s, w, 50)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    with pytest.raises(NotPseudoAnosov):
        family(s, TwistWord.parse("A1 B1"), 3)


def test_family_matrices_dominate():
    s = IntersectionSystem(((1, 2), (1, 1)))
    w = TwistWord.parse("A1 A2 B1 B2")
    M = word_product(s, w)
    prev = M
    for k in range(1, 6):
        Nk = word_product(s, TwistWord((("A", 1),) * k))
        cur = Nk @ M
        assert all(c >= p for rc, rp in zip(cur.entries, prev.entries) for c, p in zip(rc, rp))
        assert cur != prev
        prev = cur


def test_torus_consistency(words_upto_10):
    for w in words_upto_10:
        lam = penner.dilatation(TORUS_SYSTEM, TwistWord.from_lr(w.letters))
        assert lam == pytest.approx(torus_dilatation(w), rel=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_two_curve_closed_form(n):
    # two curves with i(a, b) = n: lambda is the root of x^2 - (n^2 + 2) x + 1
    s = IntersectionSystem(((n,),))
    c = n * n + 2
    assert penner.dilatation(s, TwistWord.parse("A1 B1")) == pytest.approx(
        (c + math.sqrt(c * c - 4)) / 2, rel=1e-12)


@given(st.lists(st.sampled_from([("A", 1), ("A", 2), ("B", 1)]), min_size=1, max_size=12))
def test_products_unimodular_nonnegative(tokens):
    s = IntersectionSystem(((1,), (2,)))
    M = word_product(s, TwistWord(tuple(tokens)))
    assert abs(sympy.Matrix(M.entries).det()) == 1
    assert min(x for r in M.entries for x in r) >= 0
    if {"A1", "A2", "B1"} <= {f"{k}{i}" for k, i in tokens}:
        assert is_primitive(M)
