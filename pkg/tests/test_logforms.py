"""Exterior calculus kernels, the boundary identity, and top-form expansion."""

from fractions import Fraction

import pytest

from aomoto_lab.aomoto import AomotoSpace, monomials
from aomoto_lab.arrangement import AffineForm, intersection_lattice
from aomoto_lab.errors import NotInSpan, OnDiagonalSlice, OnHyperplane
from aomoto_lab.logforms import (
    ExteriorElement,
    _merge_sign,
    coordinate_functions,
    difference_form,
    doubled_form,
    eval_S_b,
    eval_S_mixed,
    eval_dlog,
    eval_eta_difference,
    expand_top_form,
    grundlegend_control,
    monomial_value,
    verify_grundlegend,
)

from conftest import crossing_lines, parallel_mix, random_m3, sl2_four_point, two_points

F = Fraction


def test_merge_sign_parity():
    assert _merge_sign((0,), (1,)) == (1, (0, 1))
    assert _merge_sign((1,), (0,)) == (-1, (0, 1))
    assert _merge_sign((2,), (0, 1)) == (1, (0, 1, 2))
    assert _merge_sign((1, 3), (0, 2)) == (-1, (0, 1, 2, 3))
    assert _merge_sign((), (0, 1)) == (1, (0, 1))


def test_exterior_algebra_rules():
    dx = ExteriorElement(3, {(0,): F(1)})
    dy = ExteriorElement(3, {(1,): F(1)})
    dz = ExteriorElement(3, {(2,): F(1)})
    assert dx.wedge(dy) + dy.wedge(dx) == ExteriorElement(3)
    assert dx.wedge(dx).is_zero()
    assert dx.wedge(dy).wedge(dz) == dx.wedge(dy.wedge(dz))
    mixed = dx.scale(F(2)) + dy.scale(F(-3))
    assert mixed.wedge(dz).terms == {(0, 2): F(2), (1, 2): F(-3)}
    one = ExteriorElement.one(3)
    assert one.wedge(mixed) == mixed
    assert (mixed - mixed).is_zero()


def test_eval_dlog_values_and_guard():
    form = AffineForm(F(-1), (F(1), F(2)))  # t1 + 2 t2 - 1
    elem = eval_dlog(form, (F(2), F(1)))
    assert elem.terms == {(0,): F(1, 3), (1,): F(2, 3)}
    with pytest.raises(OnHyperplane):
        eval_dlog(form, (F(1), F(0)))


def test_doubled_and_difference_forms():
    form = AffineForm(F(5), (F(1), F(-2)))
    first = doubled_form(form, 2, 0)
    second = doubled_form(form, 2, 1)
    assert first.gradient == (F(1), F(-2), F(0), F(0))
    assert second.gradient == (F(0), F(0), F(1), F(-2))
    assert first.constant == F(5) and second.constant == F(5)
    diff = difference_form(form, 2)
    xy = (F(3), F(1), F(7), F(2))
    assert diff.evaluate(xy) == form.evaluate(xy[:2]) - form.evaluate(xy[2:])


def test_eta_difference_by_hand():
    arr = two_points()  # weights 1/2, 1/3 on t - 1, t + 1
    x, y = F(3), F(5)
    got = eval_eta_difference(arr, (x, y))
    expect = {
        (0,): F(1, 2) / (x - 1) + F(1, 3) / (x + 1),
        (1,): -(F(1, 2) / (y - 1) + F(1, 3) / (y + 1)),
    }
    assert got.terms == expect


def test_kernel_form_values():
    arr = two_points()
    x, y = F(3), F(5)
    assert eval_S_b(arr, 0, (x, y)) == ExteriorElement.one(2)
    got = eval_S_b(arr, 1, (x, y))
    coeff = F(1, 2) / ((x - 1) * (y - 1)) + F(1, 3) / ((x + 1) * (y + 1))
    assert got.terms == {(0, 1): coeff}
    with pytest.raises(ValueError):
        eval_S_b(arr, 2, (x, y))


def test_kernel_form_swap_antisymmetry():
    # exchanging the two copies relabels covectors j <-> j + M and flips
    # each dlog pair, so S^(b) picks up (-1)^b on top of the relabeling
    arr = crossing_lines()
    M = arr.dimension
    xy = (F(2), F(5), F(3), F(7))
    yx = xy[M:] + xy[:M]
    for b in range(M + 1):
        before = eval_S_b(arr, b, xy)
        after = eval_S_b(arr, b, yx)
        relabeled = {}
        for subset, coeff in before.terms.items():
            moved = [(j + M) % (2 * M) for j in subset]
            sign = 1
            order = sorted(range(len(moved)), key=lambda i: moved[i])
            for i in range(len(order)):
                for j in range(i + 1, len(order)):
                    if order[i] > order[j]:
                        sign = -sign
            relabeled[tuple(sorted(moved))] = coeff * sign * (-1) ** b
        assert after.terms == relabeled, b


def test_mixed_form_guards():
    arr = two_points()
    coords = coordinate_functions(1)
    with pytest.raises(OnDiagonalSlice):
        eval_S_mixed(arr, coords, [0], (F(2), F(2)))
    with pytest.raises(ValueError):
        eval_S_mixed(arr, coords, [0, 0], (F(2), F(3)))


def test_boundary_identity_on_corpus():
    cases = [two_points(), crossing_lines(), sl2_four_point(), random_m3()]
    for arr in cases:
        coords = coordinate_functions(arr.dimension)
        for k in range(1, arr.dimension + 1):
            assert verify_grundlegend(arr, coords, k, num_points=3, seed=11), (
                arr.dimension,
                k,
            )
    with pytest.raises(ValueError):
        verify_grundlegend(two_points(), coordinate_functions(1), 2)


def test_boundary_identity_control_detects_mismatch():
    for arr in [two_points(), crossing_lines(), random_m3()]:
        coords = coordinate_functions(arr.dimension)
        assert grundlegend_control(arr, coords, seed=5)


def test_monomial_value_examples():
    arr = two_points()
    assert monomial_value(arr, (0,), (F(3),)) == F(1, 2)
    cross = crossing_lines()
    assert monomial_value(cross, (0, 1), (F(2), F(3))) == F(1, 6)
    with pytest.raises(OnHyperplane):
        monomial_value(arr, (0,), (F(1),))


def test_expand_top_form_round_trips():
    for arr in [two_points(), crossing_lines(), parallel_mix(), random_m3()]:
        M = arr.dimension
        lattice = intersection_lattice(arr)
        space = AomotoSpace(arr, lattice, M)
        mons = monomials(arr.size, M)
        coeffs = [F(i + 1, i + 2) for i in range(len(mons))]

        def evaluator(pt, coeffs=coeffs, arr=arr, mons=mons):
            return sum(
                c * monomial_value(arr, sub, pt) for c, sub in zip(coeffs, mons)
            )

        got = expand_top_form(arr, lattice, evaluator, seed=3, space=space)
        assert list(got) == list(space.reduce(coeffs)), arr.dimension


def test_expand_top_form_rejects_non_logarithmic():
    arr = two_points()
    lattice = intersection_lattice(arr)
    with pytest.raises(NotInSpan):
        expand_top_form(arr, lattice, lambda pt: F(1), seed=2)
