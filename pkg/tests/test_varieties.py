import itertools
from collections import Counter

import pytest

import oracle
from segre.field import ZERO
from segre.forms import quadratic_form
from segre.space import E, U, SizeLimitError, Tensor, conjugate, line, real_points_of_line, span_subspace
from segre.varieties import (
    base_lines,
    class_r,
    distinguished_tangent,
    hermitian_points,
    hermitian_substructure,
    invariant_basis,
    line_spread,
    meet_points,
    on_hermitian,
    on_segre,
    quadric_points,
    segre_points,
    spread_line_of,
    spread_line_through,
    spread_line_vs_quadric,
)


def unit(m, bits, basis=E):
    return Tensor.unit(m, int(bits, 2), basis)


def u_sum(m, *indices):
    t = Tensor(m, basis=U)
    for b in indices:
        t = t + unit(m, b, U)
    return t


# -- Segre, quadric, Hermitian ----------------------------------------------------------

@pytest.mark.parametrize("m,q,want", [(3, 2, 27), (2, 2, 9), (3, 4, 125), (4, 2, 81), (5, 2, 243)])
def test_segre_counts(m, q, want):
    assert len(segre_points(m, q)) == want == (q + 1) ** m


def test_segre_3_4_by_proportionality_oracle():
    vecs = [v for v in itertools.product(range(4), repeat=2) if v != (0, 0)]
    classes = set()
    for factors in itertools.product(vecs, repeat=3):
        x = oracle.outer(factors)
        classes.add(frozenset(tuple(oracle.mul(c, v) for v in x) for c in (1, 2, 3)))
    assert len(classes) == 125
    ours = {frozenset(tuple(oracle.mul(c, v) for v in p.coords()) for c in (1, 2, 3)) for p in segre_points(3, 4)}
    assert ours == classes


def test_quadric_counts():
    assert len(quadric_points(3, 2)) == 135
    assert quadric_points(2, 2) == segre_points(2, 2)
    with pytest.raises(ValueError):
        quadric_points(1, 2)


def test_quadric_4_2_brute_force_oracle():
    brute = sum(1 for v in oracle.gf2_vectors(16)[1:] if oracle.quad(v) == 0)
    assert brute == (2 ** 7 + 1) * (2 ** 8 - 1) == 32895
    assert len(quadric_points(4, 2)) == brute


@pytest.mark.parametrize("m,q", [(2, 2), (3, 2), (4, 2), (2, 4), (3, 4)])
def test_segre_inside_quadric(m, q):
    if (m, q) == (4, 2):
        assert all(quadratic_form(p) == ZERO for p in segre_points(m, q))
    else:
        assert set(segre_points(m, q)) <= set(quadric_points(m, q))


def test_quadric_3_4_count():
    # hyperbolic quadric of PG(7,4): (4^4 - 1)(4^3 + 1)/3
    assert len(quadric_points(3, 4)) == 255 * 65 // 3 * 3 // 3 == 5525


def test_hermitian_counts_against_oracle():
    for m, want in ((1, 3), (2, 45), (3, 10965)):
        n = 1 << m
        # |H(n-1, 4)| = (2^n - (-1)^n)(2^(n-1) + (-1)^n) / 3 with n-1 the dimension
        d = n - 1
        assert (2 ** (d + 1) + (-1) ** d) * (2 ** d - (-1) ** d) // 3 == want
        assert len(hermitian_points(m)) == want
    brute = 0
    for lead in range(4):
        for tail in itertools.product(range(4), repeat=3 - lead):
            v = [0] * lead + [1] + list(tail)
            brute += oracle.herm(v, v) == 0
    assert brute == 45


def test_hermitian_in_even_span_is_m2_and_m4():
    even = invariant_basis(3).span_even
    h = [p for p in even.points(4) if on_hermitian(p)]
    assert len(h) == 45
    assert Counter(class_r(p) for p in h) == {2: 18, 4: 27}


def test_u_basis_points_are_not_absolute():
    for m in (1, 2, 3):
        assert not any(on_hermitian(p) for p in invariant_basis(m).points)


# -- invariant basis and base lines -----------------------------------------------------

def test_invariant_basis_m3():
    b = invariant_basis(3)
    assert len(b.even) == len(b.odd) == 4
    assert b.points[0].coords() == oracle.outer([(1, 2)] * 3) == [1, 2, 2, 3, 2, 3, 3, 1]
    assert b.index_of(unit(3, "011", U).scale(2)) == 0b011
    assert b.index_of(unit(3, "000")) is None


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_parity_spans_are_skew(m):
    b = invariant_basis(m)
    assert b.span_even.join(b.span_odd).dim == (1 << m) - 1
    assert b.span_even.dim == b.span_odd.dim == (1 << (m - 1)) - 1


def test_parity_spans_real_or_conjugate():
    for m in (2, 4):
        b = invariant_basis(m)
        assert b.span_even.is_real() and b.span_odd.is_real()
    for m in (1, 3, 5):
        b = invariant_basis(m)
        assert not b.span_even.is_real()
        assert b.span_even.conjugate() == b.span_odd


def test_base_lines_m3():
    lines = base_lines(3)
    assert len(lines) == 4
    pts = [p for ln in lines for p in real_points_of_line(ln)]
    assert len(pts) == len(set(pts)) == 12
    for a, c in itertools.combinations(lines, 2):
        assert span_subspace([a.first, a.second, c.first, c.second]).dim == 3


def test_base_lines_m2_inside_one_span():
    b = invariant_basis(2)
    for ln in base_lines(2):
        inside = [s.contains(ln.first) and s.contains(ln.second) for s in (b.span_even, b.span_odd)]
        assert inside.count(True) == 1


def test_base_lines_meet_spans_once_for_odd_m():
    b = invariant_basis(3)
    for ln in base_lines(3):
        assert len(meet_points(ln, b.span_even)) == len(meet_points(ln, b.span_odd)) == 1


def test_parity_spans_on_quadric_iff_odd():
    for m, expected in ((2, False), (3, True), (4, False), (5, True)):
        b = invariant_basis(m)
        for s in (b.span_even, b.span_odd):
            vs = s.vectors()
            singular = all(quadratic_form(v) == ZERO for v in vs) and all(
                oracle.sym(a.coords(), c.coords()) == 0 for a in vs for c in vs
            )
            assert singular == expected
    assert all(quadratic_form(p) == ZERO for p in invariant_basis(3).span_even.points(4))


# -- distinguished tangents ---------------------------------------------------------------

def test_tangent_at_e111():
    t = distinguished_tangent(unit(3, "111"))
    assert t == line(unit(3, "111"), unit(3, "011") + unit(3, "101") + unit(3, "110"), 2)
    (contact,) = meet_points(t, invariant_basis(3).span_even)
    assert contact == u_sum(3, "000", "011", "101", "110").to(E).normalized()


def test_tangent_m2_oracle_mode():
    t = distinguished_tangent(unit(2, "11"), mode="oracle")
    assert t == line(unit(2, "11"), unit(2, "01") + unit(2, "10"), 2)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_tangent_modes_agree(m):
    for p in segre_points(m, 2):
        assert distinguished_tangent(p, "closed") == distinguished_tangent(p, "oracle")


def test_closed_form_is_choice_independent():
    # replacing d_k by d_k + a_k moves the second point by p
    p = unit(3, "111")
    alt = Tensor.parse("E:00010110") + p + p + p
    assert line(p, alt, 2) == distinguished_tangent(p)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_tangents_meet_each_span_once(m):
    b = invariant_basis(m)
    pts = segre_points(m, 2)
    assert len(pts) == 3 ** m
    for p in pts:
        t = distinguished_tangent(p)
        assert len(meet_points(t, b.span_even)) == 1
        assert len(meet_points(t, b.span_odd)) == 1


def test_tangent_rejects_non_segre_point():
    with pytest.raises(ValueError):
        distinguished_tangent(Tensor.parse("E:10000001"))
    with pytest.raises(ValueError):
        distinguished_tangent(unit(3, "111"), mode="bogus")


# -- spread ------------------------------------------------------------------------------

def test_spread_m3():
    spread = line_spread(3)
    assert len(spread) == 85
    assert Counter(s.class_r for s in spread) == {1: 4, 2: 18, 3: 36, 4: 27}
    pts = [p for s in spread for p in s.real_points()]
    assert len(set(pts)) == len(pts) == 255
    for s in spread:
        assert s.line == line(s.contact_even, conjugate(s.contact_even), 4)
        assert invariant_basis(3).span_even.contains(s.contact_even)


def test_tangents_are_class_4_spread_lines():
    spread = {s.line: s for s in line_spread(3)}
    for p in segre_points(3, 2):
        s = spread[distinguished_tangent(p).over(4)]
        assert s.class_r == 4
    assert {s.line for s in spread.values() if s.class_r == 4} == {
        distinguished_tangent(p).over(4) for p in segre_points(3, 2)
    }


def test_base_lines_are_class_1_spread_lines():
    spread = {s.line: s for s in line_spread(3)}
    assert {ln for ln, s in spread.items() if s.class_r == 1} == set(base_lines(3))


def test_spread_line_through_each_real_point():
    for p in itertools.islice((Tensor(3, lo) for lo in range(1, 256)), 0, None, 7):
        s = spread_line_through(p)
        assert p in s.real_points()


def test_spread_errors():
    with pytest.raises(ValueError):
        line_spread(2)
    with pytest.raises(SizeLimitError):
        line_spread(5)
    with pytest.raises(ValueError):
        spread_line_through(unit(2, "11"))
    with pytest.raises(ValueError):
        spread_line_of(unit(3, "100", U))


def test_spread_vs_quadric_examples():
    t = spread_line_through(unit(3, "111"))
    assert t.class_r == 4 and spread_line_vs_quadric(t) == "generator"
    b = spread_line_of(unit(3, "000", U))
    assert b.class_r == 1 and spread_line_vs_quadric(b) == "bisecant"
    g = spread_line_of(u_sum(3, "000", "011"))
    assert g.class_r == 2 and spread_line_vs_quadric(g) == "generator"
    assert not any(on_segre(p) for p in g.real_points())


def test_spread_dichotomy_all_lines():
    for s in line_spread(3):
        on_q4 = [quadratic_form(p) == ZERO for p in s.line.points()]
        if spread_line_vs_quadric(s) == "generator":
            assert all(on_q4)
            assert s.class_r in (2, 4)
        else:
            assert on_q4.count(True) == 2
            assert not any(quadratic_form(p) == ZERO for p in s.real_points())
            assert s.class_r in (1, 3)


# -- Hermitian substructure -------------------------------------------------------------

def test_hermitian_substructure():
    h = hermitian_substructure()
    assert (len(h.points), len(h.lines), len(h.incidences)) == (45, 27, 135)
    assert set(Counter(j for _, j in h.incidences).values()) == {5}
    assert set(Counter(i for i, _ in h.incidences).values()) == {3}
    with pytest.raises(ValueError):
        hermitian_substructure(5)


def test_skew_projection_preserves_collinearity():
    contact = {p: spread_line_through(p).contact_even for p in segre_points(3, 2)}
    assert len(set(contact.values())) == 27
    assert all(class_r(c) == 4 for c in contact.values())
    segre = set(segre_points(3, 2))
    segre_lines = {
        line(a, c, 2) for a, c in itertools.combinations(segre, 2)
        if all(x in segre for x in line(a, c, 2).points())
    }
    assert len(segre_lines) == 27
    h_lines = set(hermitian_substructure().lines)
    for ln in segre_lines:
        imgs = [contact[p] for p in ln.points()]
        assert span_subspace(imgs).dim == 1
        assert line(imgs[0], imgs[1], 4) in h_lines


def test_hamming_distance_is_segre_path_length():
    pts = segre_points(3, 4)
    on = set(pts)
    adj = {p: set() for p in pts}
    for a, c in itertools.combinations(pts, 2):
        if all(x in on for x in line(a, c, 4).points()):
            adj[a].add(c)
            adj[c].add(a)
    b = invariant_basis(3)
    for i in range(8):
        dist = {b.points[i]: 0}
        frontier = [b.points[i]]
        while frontier:
            nxt = []
            for x in frontier:
                for y in adj[x] - dist.keys():
                    dist[y] = dist[x] + 1
                    nxt.append(y)
            frontier = nxt
        for j in range(8):
            assert dist[b.points[j]] == bin(i ^ j).count("1")
