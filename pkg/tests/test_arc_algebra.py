import itertools

import pytest

from arcalg.arc_algebra import (AlgebraElement, CompositionError,
                                OrderError, StructureTable, basis,
                                canonical_order, check_associativity,
                                check_degree_additivity, check_nested_agreement,
                                check_order_independence, check_unit, cup_orders,
                                degree, idempotent, low_element, multiply,
                                multiply_nested, structure_table)
from arcalg.cohomology import intersection_diagram
from arcalg.diagrams import (Shape, Weight, enumerate_standard, enumerate_weights,
                             weight_of_tableau, weight_to_m)
from oracles import direct_product_oracle

W = Weight.parse
NXT = W("v^v^")
NESTED = W("vv^^")


def one(x, y, orient=None):
    els = basis(x, y)
    if orient is not None:
        els = [b for b in els if b.orient == W(orient)]
    b = min(els, key=degree)
    return AlgebraElement(x, y, {b: 1})


def weights_of(n, k):
    return enumerate_weights(Shape(n, k))


# --- degree -------------------------------------------------------------------

def test_idempotent_degree_zero():
    for w in weights_of(4, 2):
        e = idempotent(w)
        (b,) = e.terms
        assert degree(b) == 0 and b.orient == w


def test_single_circle_degrees():
    degs = sorted(degree(b) for b in basis(NXT, NESTED))
    assert degs == [1, 3]
    low = min(basis(NXT, NESTED), key=degree)
    assert str(low.orient) == "v^v^"


def test_hom_dimension_is_two_to_circles():
    for shape in [Shape(4, 2), Shape(5, 2), Shape(6, 3)]:
        ws = weights_of(shape.n, shape.k)
        for x, y in itertools.product(ws, repeat=2):
            z = intersection_diagram(x, y)
            els = basis(x, y)
            if els:
                assert len(els) == 2 ** z.circle_count()


def test_degree_generating_function_standard_pairs():
    # q**(k-c) * (1+q**2)**c, anchoring the intrinsic degree
    for shape in [Shape(4, 2), Shape(6, 3), Shape(8, 4)]:
        stds = [weight_of_tableau(t) for t in enumerate_standard(shape)]
        for x, y in itertools.product(stds, repeat=2):
            z = intersection_diagram(x, y)
            c = z.circle_count()
            degs = sorted(degree(b) for b in basis(x, y))
            want = []
            for bits in itertools.product((0, 2), repeat=c):
                want.append(shape.k - c + sum(bits))
            assert degs == sorted(want)


# --- units and composition ------------------------------------------------------

def test_idempotent_is_unit_on_4_2():
    ws = weights_of(4, 2)
    for x, y in itertools.product(ws, repeat=2):
        for b in basis(x, y):
            el = AlgebraElement(x, y, {b: 1})
            for alpha in (1, -1):
                assert multiply(idempotent(x), el, alpha) == el
                assert multiply(el, idempotent(y), alpha) == el


def test_composition_error():
    with pytest.raises(CompositionError):
        multiply(idempotent(NXT), idempotent(NESTED))


def test_bad_order_rejected():
    a = one(NESTED, NXT)
    b = one(NXT, NESTED)
    with pytest.raises(OrderError):
        multiply(a, b, 1, order=[(1, 2)])
    a2 = one(NXT, NESTED)
    b2 = one(NESTED, NXT)
    with pytest.raises(OrderError):
        # inner cup (2,3) before the containing (1,4)
        multiply(a2, b2, 1, order=[(2, 3), (1, 4)])


def test_cup_orders_enumeration():
    assert set(cup_orders(weight_to_m(NXT))) == {((1, 2), (3, 4)), ((3, 4), (1, 2))}
    assert list(cup_orders(weight_to_m(NESTED))) == [((1, 4), (2, 3))]
    assert canonical_order(weight_to_m(NESTED)) == ((1, 4), (2, 3))


# --- the worked multiplication example ------------------------------------------

def test_unit_product_through_side_by_side_middle():
    a = one(NESTED, NXT)
    b = one(NXT, NESTED)
    assert multiply(a, b, 1).x_form() == "x1 + x2"
    assert multiply(a, b, -1).x_form() == "x1 - x2"
    # both cup orders give the same element
    for order in cup_orders(weight_to_m(NXT)):
        assert multiply(a, b, 1, order=order).x_form() == "x1 + x2"
        assert multiply(a, b, -1, order=order).x_form() == "x1 - x2"


def test_unit_product_through_nested_middle():
    a = one(NXT, NESTED)
    b = one(NESTED, NXT)
    assert multiply(a, b, 1).x_form() == "x1 + x3"
    assert multiply(a, b, -1).x_form() == "- x1 - x3"


def test_nested_tqft_matches_alpha_minus_one_on_example():
    a = one(NESTED, NXT)
    b = one(NXT, NESTED)
    assert multiply_nested(a, b) == multiply(a, b, -1)
    assert multiply_nested(b, a) == multiply(b, a, -1)


# --- products anchored in the projective-module model ----------------------------

def test_two_point_algebra():
    s, t = W("v^"), W("^v")
    p = one(s, t)
    q = one(t, s)
    assert degree(next(iter(p.terms))) == 1
    x_elt = AlgebraElement(s, s, {max(basis(s, s), key=degree): 1})
    for alpha in (1, -1):
        assert multiply(q, p, alpha).is_zero()
        assert multiply(x_elt, p, alpha).is_zero()
        assert multiply(p, multiply(q, x_elt, alpha), alpha).is_zero()
    assert multiply(p, q, 1).x_form() == "x1"
    assert multiply(p, q, -1).x_form() == "- x1"
    ee = multiply(x_elt, x_elt, 1)
    assert ee.is_zero()


def test_mixed_composite_with_rays():
    # Hom through an all-ray middle picks up the closed circle with label X
    x = W("v^^")   # shape (3,1)
    t = W("^v^")
    p = low_element(x, t)
    q = low_element(t, x)
    assert p is not None and q is not None
    prod = multiply(p, q, 1)
    (term,) = prod.terms
    assert degree(term) == degree(next(iter(p.terms))) + degree(next(iter(q.terms)))


# --- exhaustive checks ------------------------------------------------------------

@pytest.mark.parametrize("shape", [Shape(2, 1), Shape(3, 1), Shape(4, 2), Shape(5, 2)])
@pytest.mark.parametrize("alpha", [1, -1])
def test_order_independence_small(shape, alpha):
    res = check_order_independence(shape, alpha)
    assert res.ok, res.witness


@pytest.mark.parametrize("shape", [Shape(2, 1), Shape(3, 1), Shape(4, 2), Shape(5, 2)])
@pytest.mark.parametrize("alpha", [1, -1])
def test_degree_additivity_small(shape, alpha):
    res = check_degree_additivity(shape, alpha)
    assert res.ok, res.witness


@pytest.mark.parametrize("shape", [Shape(2, 1), Shape(3, 1), Shape(4, 2), Shape(5, 2)])
def test_nested_agreement_small(shape):
    res = check_nested_agreement(shape)
    assert res.ok, res.witness


@pytest.mark.parametrize("shape", [Shape(2, 1), Shape(3, 1), Shape(4, 2)])
def test_associativity_plus_small(shape):
    res = check_associativity(shape, 1)
    assert res.ok, res.witness


def test_associativity_minus_fails_at_4_2():
    res = check_associativity(Shape(4, 2), -1)
    assert not res.ok
    assert "!=" in res.witness


def test_associativity_minus_passes_at_2_1():
    res = check_associativity(Shape(2, 1), -1)
    assert res.ok, res.witness


def test_unit_checks():
    for alpha in (1, -1):
        assert check_unit(Shape(4, 2), alpha).ok


def test_orthogonal_idempotents():
    ws = weights_of(4, 2)
    for x, y in itertools.product(ws, repeat=2):
        if x != y:
            with pytest.raises(CompositionError):
                multiply(idempotent(x), idempotent(y))


# --- oracle agreement --------------------------------------------------------------

def test_plus_product_matches_direct_oracle_4_2():
    ws = weights_of(4, 2)
    for x, y, z in itertools.product(ws, repeat=3):
        for a in basis(x, y):
            for b in basis(y, z):
                got = multiply(AlgebraElement(x, y, {a: 1}),
                               AlgebraElement(y, z, {b: 1}), 1)
                want = direct_product_oracle(x, y, z, a.orient, b.orient)
                assert {str(t.orient): c for t, c in got.terms.items()} == want


# --- integrality and tables ----------------------------------------------------------

def test_structure_constants_integral():
    table = structure_table(Shape(4, 2), alpha=1)
    for terms in table.products.values():
        for _, coeff in terms:
            assert isinstance(coeff, int) and coeff != 0


def test_standard_only_table_size():
    table = structure_table(Shape(4, 2), alpha=1, standard_only=True)
    assert len(table.basis) == 12  # 4 + 4 + 2 + 2
    assert len(table.weights) == 2


def test_two_point_table_is_dual_numbers():
    table = structure_table(Shape(2, 1), alpha=1, standard_only=True)
    assert len(table.basis) == 2
    by_deg = sorted(table.basis, key=degree)
    e, x = table.index(by_deg[0]), table.index(by_deg[1])
    assert table.products[(e, e)] == ((e, 1),)
    assert table.products[(e, x)] == ((x, 1),)
    assert table.products[(x, e)] == ((x, 1),)
    assert (x, x) not in table.products  # X * X = 0


def test_table_json_round_trip():
    table = structure_table(Shape(4, 2), alpha=-1)
    again = StructureTable.from_json(table.to_json())
    assert again.shape == table.shape
    assert again.alpha == table.alpha
    assert again.basis == table.basis
    assert again.products == table.products


def test_table_text_dump_mentions_every_element():
    table = structure_table(Shape(2, 1), alpha=1)
    text = table.text_dump()
    for i in range(len(table.basis)):
        assert f"#{i}" in text
