import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from arcalg.cohomology import (GradedDim, component_cohomology,
                               intersection_cohomology, intersection_diagram,
                               intrinsic_min_degree, kernel_contains_both,
                               odd_normalization, poincare,
                               pullback_is_surjective, stable_cohomology)
from arcalg.diagrams import (Shape, StandardTableau, Weight, enumerate_standard,
                             enumerate_weights, orientations,
                             weight_of_tableau, weight_to_m)

W = Weight.parse


def weights_of(n, k):
    return enumerate_weights(Shape(n, k))


def all_shapes(max_n):
    return [Shape(n, k) for n in range(2, max_n + 1) for k in range(0, n // 2 + 1)]


# --- presentations -----------------------------------------------------------

def test_component_cohomology_running_example():
    nested = StandardTableau((4, 3), (2, 1))
    nxt = StandardTableau((4, 2), (3, 1))
    pres, pb = component_cohomology(nested)
    assert pres.generators == (1, 2) and pres.dim == 4
    assert pb.image(1) == ((1, 1),)
    assert pb.image(2) == ((2, 1),)
    assert pb.image(3) == ((2, -1),)
    assert pb.image(4) == ((1, -1),)
    pres, _ = component_cohomology(nxt)
    assert pres.generators == (1, 3) and pres.dim == 4


def test_single_cup_component():
    pres, _ = component_cohomology(StandardTableau((2,), (1,)))
    assert pres.generators == (1,) and pres.dim == 2


def test_stable_cohomology_dims_running_example():
    dims = [stable_cohomology(w)[0].dim for w in weights_of(4, 2)]
    assert dims == [1, 2, 2, 2, 4, 4]
    gens = [stable_cohomology(w)[0].generators for w in weights_of(4, 2)]
    assert gens == [(), (2,), (1,), (3,), (1, 3), (1, 2)]


def test_ray_pullback_is_zero():
    _, pb = stable_cohomology(W("^^vv"))
    assert all(pb.image(i) == () for i in range(1, 5))


def test_intersection_presentations_running_example():
    w = weights_of(4, 2)
    # the four nontrivial pairs from the fixed-point example, 0-indexed
    nontrivial = {(1, 5): (2,), (2, 4): (1,), (3, 4): (3,), (4, 5): (1,)}
    for (i, j), gens in nontrivial.items():
        res = intersection_cohomology(w[i], w[j])
        assert res is not None and res[0].generators == gens
    assert intersection_cohomology(w[0], w[2]) is None
    assert intersection_cohomology(w[0], w[3]) is None
    assert intersection_cohomology(w[0], w[4]) is None
    res = intersection_cohomology(w[0], w[1])
    assert res is not None and res[0].generators == () and res[0].dim == 1


def test_intersection_pullback_epsilon_rule():
    w = weights_of(4, 2)
    res = intersection_cohomology(w[4], w[5])  # v^v^ with vv^^: one circle
    assert res is not None
    pres, pb = res
    assert pres.generators == (1,)
    assert pb.image(1) == ((1, 1),)
    assert pb.image(2) == ((1, -1),)
    assert pb.image(3) == ((1, 1),)
    assert pb.image(4) == ((1, -1),)


def test_self_intersection_matches_stable():
    for shape in all_shapes(6):
        for w in weights_of(shape.n, shape.k):
            res = intersection_cohomology(w, w)
            pres, _ = stable_cohomology(w)
            assert res is not None and res[0].generators == pres.generators


# --- dimensions and poincare ---------------------------------------------------

def test_dim_equals_orientation_count():
    for shape in all_shapes(8):
        ws = weights_of(shape.n, shape.k)
        for a, b in itertools.product(ws, repeat=2):
            z = intersection_diagram(a, b)
            cnt = len(orientations(z, a, b))
            res = intersection_cohomology(a, b)
            assert (res is None) == (cnt == 0)
            if res is not None:
                assert res[0].dim == cnt


def test_poincare_examples():
    assert poincare(W("vv^^"), W("v^v^"), shifted=True) == GradedDim(1, (1, 0, 1))
    assert poincare(W("v^v^"), W("v^v^")) == GradedDim(0, (1, 0, 2, 0, 1))
    assert poincare(W("^^vv"), W("v^^v")) == GradedDim.zero()
    assert poincare(W("^^vv"), W("^v^v"), shifted=True).total() == 1


def test_poincare_self_gluing():
    for w in weights_of(5, 2):
        k_w = weight_to_m(w).k
        hil = poincare(w, w)
        assert hil.total() == 2 ** k_w


def test_hilbert_series_of_presentation():
    pres, _ = stable_cohomology(W("v^v^"))
    assert pres.hilbert() == GradedDim(0, (1, 0, 2, 0, 1))


def test_graded_dim_str():
    assert str(GradedDim(1, (1, 0, 1))) == "q + q^3"
    assert str(GradedDim.zero()) == "0"
    assert str(GradedDim(0, (2,))) == "2"


def test_min_degree_matches_k_minus_c_for_standard():
    for shape in [Shape(4, 2), Shape(6, 3)]:
        tabs = enumerate_standard(shape)
        for s, t in itertools.product(tabs, repeat=2):
            a, b = weight_of_tableau(s), weight_of_tableau(t)
            z = intersection_diagram(a, b)
            assert intrinsic_min_degree(a, b) == shape.k - z.circle_count()


# --- pullback properties -------------------------------------------------------

def test_pullback_surjective():
    for shape in all_shapes(7):
        ws = weights_of(shape.n, shape.k)
        for a, b in itertools.product(ws, repeat=2):
            res = intersection_cohomology(a, b)
            if res is not None:
                assert pullback_is_surjective(*res)


def test_kernel_inclusion():
    for shape in all_shapes(7):
        ws = weights_of(shape.n, shape.k)
        for a, b in itertools.product(ws, repeat=2):
            assert kernel_contains_both(a, b)


def test_odd_normalization():
    for shape in all_shapes(7):
        ws = weights_of(shape.n, shape.k)
        for a, b in itertools.product(ws, repeat=2):
            res = odd_normalization(a, b)
            assert res.ok
            for gen, odd in res.choices:
                assert odd % 2 == 1


@settings(max_examples=80)
@given(st.sampled_from([(n, k) for n in range(2, 9) for k in range(n // 2 + 1)]),
       st.data())
def test_empty_iff_no_orientation(nk, data):
    ws = weights_of(*nk)
    a = data.draw(st.sampled_from(ws))
    b = data.draw(st.sampled_from(ws))
    z = intersection_diagram(a, b)
    assert (intersection_cohomology(a, b) is None) == (not orientations(z, a, b))
