import random
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from symcurve import bkk, oracle
from symcurve import lattice as lt
from symcurve import symmetric as sy

from conftest import not_type_d, simplex

TETRA = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
HIGH_TETRA = [(3, 0, 0), (1, 0, 1), (0, 1, 5), (0, 3, 0)]

supports = st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=3, max_size=7, unique=True).filter(not_type_d)
shifts = st.tuples(*[st.integers(-5, 5)] * 3)


def test_involute():
    assert sy.involute([(1, 0, 2)]) == ((0, 1, 2),)
    assert set(sy.involute(simplex(2))) == set(simplex(2))


def test_denominator():
    assert sy.denominator([(0, 0, 0), (2, 1, 0), (4, 0, 1)]) == 1
    assert sy.denominator([(0, 0, 0), (3, 1, 0), (5, 1, 2)]) == 2
    assert sy.denominator([(0, 0, 0), (1, 1, 5)]) is None
    with pytest.raises(lt.LatticeError):
        sy.denominator([(0, 0, 0)])


def test_classify_examples():
    assert sy.classify([(0, 0, 0), (1, 1, 0), (0, 0, 3)]).canonical_type == "D"
    assert sy.classify([(0, 0, 0), (1, -1, 0), (2, -2, 0)]).canonical_type == "E"
    assert sy.classify(TETRA).canonical_type == "C2"
    quadric = sy.classify(simplex(2))
    assert quadric.canonical_type == "NonExceptional" and quadric.denominator == 1
    with pytest.raises(lt.LatticeError):
        sy.classify([(0, 0, 0)])


def test_guarded_order_reports_raw_flags():
    # the unit tetrahedron matches the raw I2 pattern but is reported as C2
    rep = sy.classify(TETRA)
    assert rep.flags["I2"] and rep.flags["C2"]
    assert rep.canonical_type == "C2"


def test_quadric_blinder_data():
    (b,) = sy.blinders(simplex(2))
    assert set(b.edge) == {(0, 0, 0), (0, 0, 1), (0, 0, 2)}
    assert b.h == 1
    assert b.length == 2 and b.quotient_length == 2
    assert set(b.coblinder) == {(1, 0), (0, 1), (2, 0), (0, 2)}
    assert b.covol == 1
    # frozen from the enumeration oracle: the nearest coblinder point on each ray is primitive
    assert b.l == 1
    assert b.critical == ((-1, -1, 0),)
    assert set(b.adjacent) == {(-1, 0, 0), (0, -1, 0)}


def test_blinder_free_example():
    assert sy.blinders([(0, 0, 0), (1, 0, 0), (0, 2, 1)]) == []


def test_sharp_examples():
    assert sy.sharp_A(simplex(2)) == 2
    assert sy.sharp_A(TETRA) == 0
    with pytest.raises(lt.LatticeError):
        sy.sharp_A([(0, 0, 0), (1, 1, 5)])


def test_minimal_witness_examples():
    subset, shape = sy.minimal_witness(HIGH_TETRA)
    assert set(subset) == set(HIGH_TETRA) and shape == "HighTetra"
    for A in ([(0, 0, 0), (1, 1, 0), (0, 0, 3)], [(0, 0, 0), (1, -1, 0), (2, -2, 0)], TETRA):
        assert sy.minimal_witness(A) is None
    assert sy.minimal_witness(simplex(2)) is not None


def test_slice_counts_quadric():
    s1, s2 = sy.slice_counts(simplex(2), (1, 1, 0))
    assert (s1, s2) == (8, 2)
    assert bkk.mv_vs_length(sy.slice_polygon(simplex(2), (1, 1, 0))).strict
    with pytest.raises(lt.LatticeError):
        sy.slice_counts(simplex(2), (1, 0, 0))


def test_blinders_match_oracle(random_corpus):
    for A in random_corpus[:80]:
        ours = {b.edge: b for b in sy.blinders(A)}
        theirs = {b.edge: b for b in oracle._blinders_from(list(A), oracle.relevant_covectors(A))}
        assert set(ours) == set(theirs)
        for e, b in ours.items():
            assert (b.length, b.l) == (theirs[e].vol, theirs[e].l)


def blinder_h_by_definition(A, b):
    gamma = b.gamma
    top = lt.dot(gamma, b.edge[0])
    rest = [lt.dot(gamma, a) for a in A if sy.t(a) != sy.t(b.edge[0])]
    return top - max(rest)


def test_blinder_record_invariants(random_corpus):
    seen = 0
    for A in random_corpus:
        for b in sy.blinders(A):
            seen += 1
            assert b.h >= 1 and b.covol >= 1 and b.critical
            assert b.h == blinder_h_by_definition(A, b)
            assert b.edge == lt.support_face(A, b.gamma)
    assert seen > 0


def symmetric_intersections(A, seed=1):
    """Length of C[u, w]/(F, G) localized to the torus, with F = f(u, u, w), G = (f_1 - f_2)(u, u, w)."""
    x1, x2, x3, u, w, z = sympy.symbols("x1 x2 x3 u w z")
    rng = random.Random(seed)
    f = sum(rng.randint(1, 50) * x1 ** a[0] * x2 ** a[1] * x3 ** a[2] for a in A)
    at = {x1: u, x2: u, x3: w}
    F = sympy.expand(f.subs(at))
    G = sympy.expand((sympy.diff(f, x1) - sympy.diff(f, x2)).subs(at))
    gens = (z, u, w)
    basis = sympy.groebner([F, G, z * u * w - 1], *gens, order="grevlex")
    leads = [sympy.Poly(g, *gens).monoms(order="grevlex")[0] for g in basis.exprs]
    return sum(
        1 for e in product(range(24), repeat=3) if not any(all(e[i] >= lead[i] for i in range(3)) for lead in leads)
    )


# blinders whose image in A/m is longer than the edge itself
LONG_SHADOW = [
    ((0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 2), (1, 2, 0)),
    ((0, 0, 0), (0, 0, 1), (1, 0, 2), (2, 0, 0), (2, 1, 0)),
    ((0, 0, 0), (0, 2, 1), (1, 1, 1), (1, 1, 2), (2, 1, 1)),
    ((0, 0, 0), (0, 1, 2), (0, 2, 0), (1, 2, 2), (2, 0, 0)),
]


@pytest.mark.parametrize("A", LONG_SHADOW + [tuple(simplex(2))])
def test_sharp_against_polynomial_system(A):
    assert any(b.quotient_length != b.length for b in sy.blinders(A)) or A == tuple(simplex(2))
    assert sy.sharp_A(A) == symmetric_intersections(A)


def test_sharp_against_polynomial_system_random():
    corpus = oracle.random_supports(200, coords=(0, 2), sizes=range(3, 7), seed=5)
    chosen = [A for A in corpus if not sy.classify(A).exceptional and sy.denominator(A) == 1][:25]
    for A in chosen:
        assert sy.sharp_A(A) == symmetric_intersections(A), A


def test_slice_strictness_off_exceptional_shapes(random_corpus):
    directions = [(a, a, b) for a, b in product(range(-2, 3), repeat=2) if (a, b) != (0, 0) and lt.gcd_all((a, b)) == 1]
    for A in random_corpus[:100]:
        for mu in directions:
            s1, s2 = sy.slice_counts(A, mu)
            assert s1 >= s2
            if bkk.exceptional_shape(sy.slice_polygon(A, mu)) is None:
                assert s1 > s2


@settings(max_examples=80, deadline=None)
@given(supports, shifts)
def test_classify_translation_and_involution_invariant(A, shift):
    kind = sy.classify(A).canonical_type
    assert sy.classify(lt.translate(A, shift)).canonical_type == kind
    assert sy.classify(sy.involute(A)).canonical_type == kind
    assert sy.denominator(lt.translate(A, shift)) == sy.denominator(A) == sy.denominator(sy.involute(A))


@settings(max_examples=60, deadline=None)
@given(supports, shifts)
def test_sharp_translation_and_involution_invariant(A, shift):
    value = sy.sharp_A(A)
    assert value >= 0
    assert sy.sharp_A(lt.translate(A, shift)) == value
    assert sy.sharp_A(sy.involute(A)) == value


@settings(max_examples=80, deadline=None)
@given(supports)
def test_witness_iff_non_exceptional(A):
    assert (sy.minimal_witness(A) is None) == sy.classify(A).exceptional


@settings(max_examples=80, deadline=None)
@given(supports)
def test_sharp_positive_outside_low_types(A):
    if sy.classify(A).canonical_type not in {"E", "C1", "C2", "I10"}:
        assert sy.sharp_A(A) >= 1
