import json

import pytest
from hypothesis import given, strategies as st

from dquiver.errors import BoundExceededError
from dquiver.polygon import (
    NOTCHED,
    PLAIN,
    Arc,
    Radius,
    Triangulation,
    all_diagonals,
    chord_lift,
    class_key,
    close_to_border,
    crossing_number,
    diagonal_sort_key,
    enumerate_triangulations,
    factor_out,
    fan_triangulation,
    flip,
    invert_tags,
    is_triangulation,
    mu,
    quiver_of,
    quiver_vertex,
    radius_arc_crossings_via_lift,
    rotate,
    serialize_triangulation,
    tau,
    triangulation_from_json_obj,
    triangulation_to_json_obj,
    triangulations_by_flips,
)
from dquiver.quiver import Quiver, canonical_key, mutate, mutation_class, dynkin_d


# -- crossing numbers ----------------------------------------------------------


def test_radius_radius_rule():
    assert crossing_number(Radius(0, PLAIN), Radius(2, NOTCHED), 5) == 1
    assert crossing_number(Radius(0, PLAIN), Radius(0, NOTCHED), 5) == 0
    assert crossing_number(Radius(0, PLAIN), Radius(2, PLAIN), 5) == 0


def test_arc_arc_crossings():
    assert crossing_number(Arc(0, 2), Arc(1, 3), 4) == 1
    assert crossing_number(Arc(0, 3), Arc(2, 1), 6) == 2
    # the two homotopy classes between the same endpoints are compatible
    assert crossing_number(Arc(0, 2), Arc(2, 0), 4) == 0


def test_radius_arc_interval_rule():
    for n in (4, 5, 9):
        assert crossing_number(Arc(0, 2), Radius(1, PLAIN), n) == 1
        assert crossing_number(Arc(0, 2), Radius(3, PLAIN), n) == 0


def test_self_crossing_is_zero():
    for d in all_diagonals(5):
        assert crossing_number(d, d, 5) == 0


def diagonals_of(n):
    return st.sampled_from(all_diagonals(n))


@given(st.integers(3, 9).flatmap(lambda n: st.tuples(st.just(n), diagonals_of(n), diagonals_of(n))))
def test_crossing_is_symmetric(case):
    n, d1, d2 = case
    assert crossing_number(d1, d2, n) == crossing_number(d2, d1, n)


def test_interval_and_lift_rules_agree_for_radius_arc():
    for n in range(3, 13):
        arcs = [d for d in all_diagonals(n) if isinstance(d, Arc)]
        radii = [d for d in all_diagonals(n) if isinstance(d, Radius)]
        for r in radii:
            for a in arcs:
                assert crossing_number(r, a, n) == radius_arc_crossings_via_lift(r, a, n)


def test_chord_lift_shapes():
    lift = chord_lift(Arc(0, 2), 4)
    assert lift.chords == ((0, 2), (4, 6)) and lift.color is None
    lift = chord_lift(Radius(1, NOTCHED), 4)
    assert lift.chords == ((1, 5),) and lift.color == NOTCHED


def test_mismatched_polygon_size_rejected():
    with pytest.raises(ValueError):
        crossing_number(Arc(0, 5), Arc(1, 3), 5)
    with pytest.raises(ValueError):
        crossing_number(Arc(0, 1), Arc(0, 2), 5)  # span-1 arc is not a diagonal


# -- diagonal inventory ---------------------------------------------------------


@pytest.mark.parametrize("n,total", [(3, 9), (4, 16), (5, 25)])
def test_all_diagonals_count(n, total):
    ds = all_diagonals(n)
    assert len(ds) == len(set(ds)) == total == n * n
    arcs = [d for d in ds if isinstance(d, Arc)]
    assert len(arcs) == n * (n - 2)


# -- triangulation construction --------------------------------------------------


def test_fan_is_a_triangulation():
    assert is_triangulation(5, fan_triangulation(5).diagonals)


def test_tag_clash_is_not_a_triangulation():
    ds = [Radius(a, PLAIN) for a in range(4)]
    ds[2] = Radius(2, NOTCHED)
    assert not is_triangulation(4, ds)


def test_subset_is_not_a_triangulation():
    ds = list(fan_triangulation(5).diagonals)[:4]
    assert not is_triangulation(5, ds)


def test_constructor_rejects_bad_sets():
    with pytest.raises(ValueError):
        Triangulation(4, [Radius(a, PLAIN) for a in range(3)])
    with pytest.raises(ValueError):
        Triangulation(4, [Arc(0, 2), Arc(1, 3), Radius(0, PLAIN), Radius(2, PLAIN)])


def test_config_detection():
    assert fan_triangulation(4).config == "A"
    t = Triangulation(4, [Arc(0, 2), Arc(0, 3), Radius(0, PLAIN), Radius(0, NOTCHED)])
    assert t.config == "B"
    assert t.radius_bases == (0,)


# -- enumeration ------------------------------------------------------------------


def test_enumeration_matches_flip_closure():
    for n in (3, 4, 5):
        assert enumerate_triangulations(n) == triangulations_by_flips(n)


def test_triangulation_totals():
    # total counts agree with the number of clusters in type D_n
    assert len(enumerate_triangulations(3)) == 14
    assert len(enumerate_triangulations(4)) == 50
    assert len(enumerate_triangulations(5)) == 182


def test_class_counts():
    count = lambda n: len({class_key(t) for t in enumerate_triangulations(n)})
    assert count(4) == 10  # differs from the mutation class count 6
    assert count(5) == 26


def test_enumeration_bound():
    with pytest.raises(BoundExceededError):
        enumerate_triangulations(9)


# -- flips -------------------------------------------------------------------------


def test_flip_fan_radius():
    t = fan_triangulation(6)
    flipped = flip(t, Radius(2, PLAIN))
    assert Arc(1, 3) in flipped.diagonals
    assert Radius(2, PLAIN) not in flipped.diagonals


def test_flip_is_an_involution():
    t = fan_triangulation(5)
    f = flip(t, Radius(0, PLAIN))
    new = next(iter(f.diagonals - t.diagonals))
    assert flip(f, new) == t


def test_flip_two_radius_fan_to_tagged_pair():
    t = Triangulation(
        5,
        [Radius(0, PLAIN), Radius(1, PLAIN), Arc(1, 3), Arc(1, 4), Arc(1, 0)],
    )
    flipped = flip(t, Radius(1, PLAIN))
    assert flipped.config == "B"
    assert flipped.radius_bases == (0,)


def test_flip_requires_membership():
    with pytest.raises(ValueError):
        flip(fan_triangulation(5), Arc(0, 2))


# -- the quiver map -----------------------------------------------------------------


def test_fan_maps_to_oriented_cycle():
    for n in (3, 4, 5, 7):
        expected = Quiver.from_arrows(n, [(i, (i + 1) % n) for i in range(n)])
        assert quiver_of(fan_triangulation(n)) == expected
        assert quiver_of(fan_triangulation(n, NOTCHED)) == expected


def test_two_radius_fan_has_no_arrow_between_radii():
    t = Triangulation(4, [Radius(0, PLAIN), Radius(2, PLAIN), Arc(0, 2), Arc(2, 0)])
    q = quiver_of(t)
    i, j = quiver_vertex(t, Radius(0, PLAIN)), quiver_vertex(t, Radius(2, PLAIN))
    assert q.b[i][j] == 0
    # the quiver is the 4-cycle Arc(0,2) -> R0 -> Arc(2,0) -> R2 -> Arc(0,2)
    assert sorted(q.arrows()) == [(0, 2), (1, 3), (2, 1), (3, 0)]


def test_tagged_pair_fan_gives_fork_in_class():
    t = Triangulation(
        5,
        [Radius(0, PLAIN), Radius(0, NOTCHED), Arc(0, 2), Arc(0, 3), Arc(0, 4)],
    )
    q = quiver_of(t)
    rp, rn = quiver_vertex(t, Radius(0, PLAIN)), quiver_vertex(t, Radius(0, NOTCHED))
    assert q.b[rp][rn] == 0
    assert canonical_key(q) in mutation_class(dynkin_d(5))


def test_quiver_commutes_with_flip_spot_checks():
    for n in (4, 5):
        for t in list(enumerate_triangulations(n))[:40]:
            q = quiver_of(t)
            for d in t.sorted_diagonals:
                lhs = canonical_key(quiver_of(flip(t, d)))
                rhs = canonical_key(mutate(q, quiver_vertex(t, d)))
                assert lhs == rhs


# -- symmetries ----------------------------------------------------------------------


def test_rotation_identities():
    t = flip(fan_triangulation(6), Radius(2, PLAIN))
    assert rotate(t, 0) == t
    assert rotate(t, 6) == t
    assert rotate(rotate(t, 1), 5) == t
    assert rotate(fan_triangulation(6), 3) == fan_triangulation(6)


def test_invert_tags_identities():
    t = fan_triangulation(5)
    assert invert_tags(t) == fan_triangulation(5, NOTCHED)
    assert invert_tags(invert_tags(t)) == t
    pair = Triangulation(4, [Arc(0, 2), Arc(0, 3), Radius(0, PLAIN), Radius(0, NOTCHED)])
    assert invert_tags(pair) == pair


def test_class_key_invariance():
    t = flip(fan_triangulation(5), Radius(2, PLAIN))
    assert class_key(t) == class_key(rotate(t, 3))
    assert class_key(t) == class_key(invert_tags(t))
    assert class_key(t) != class_key(fan_triangulation(5))


def test_tau_and_mu():
    n = 7
    assert tau(Arc(2, 4), n) == Arc(1, 3)
    assert tau(Radius(0, PLAIN), n) == Radius(n - 1, NOTCHED)
    assert mu(Arc(0, 2)) == Arc(0, 2)
    assert mu(Radius(3, PLAIN)) == Radius(3, NOTCHED)
    d = Radius(3, PLAIN)
    assert mu(mu(d)) == d


def test_tau_power_identities():
    for n in range(3, 13):
        for d in all_diagonals(n):
            x = d
            for _ in range(n):
                x = tau(x, n)
            if isinstance(d, Arc) or n % 2 == 0:
                assert x == d
            else:
                assert x == mu(d)


# -- close to the border / factoring out ----------------------------------------------


def test_close_to_border():
    assert close_to_border(Arc(0, 2), 5)
    assert close_to_border(Arc(4, 1), 5)
    assert not close_to_border(Arc(0, 3), 5)
    assert not close_to_border(Radius(0, PLAIN), 5)


def test_factor_out_fan_example():
    t = Triangulation(5, [Arc(0, 2)] + [Radius(a, PLAIN) for a in (2, 3, 4, 0)])
    assert factor_out(t, Arc(0, 2)) == fan_triangulation(4)


def test_factor_out_requires_close_to_border():
    t = Triangulation(5, [Arc(0, 3), Arc(0, 2), Radius(0, PLAIN), Radius(3, PLAIN), Arc(3, 0)])
    with pytest.raises(ValueError):
        factor_out(t, Arc(0, 3))
    with pytest.raises(ValueError):
        factor_out(t, Arc(1, 3))  # not a member


def test_factor_out_wraps_around_zero():
    t = Triangulation(5, [Arc(4, 1)] + [Radius(a, PLAIN) for a in (1, 2, 3, 4)])
    out = factor_out(t, Arc(4, 1))
    assert out == fan_triangulation(4)


# -- serialization ----------------------------------------------------------------------


def test_serialization_is_sorted_and_deterministic():
    t = fan_triangulation(4)
    obj = triangulation_to_json_obj(t)
    assert obj["n"] == 4
    assert obj["diagonals"] == sorted(
        obj["diagonals"], key=lambda item: "arc" not in item
    )
    assert serialize_triangulation(t) == serialize_triangulation(fan_triangulation(4))


def test_json_round_trip():
    t = flip(fan_triangulation(5), Radius(1, PLAIN))
    again = triangulation_from_json_obj(json.loads(json.dumps(triangulation_to_json_obj(t))))
    assert again == t


def test_json_rejects_junk():
    with pytest.raises(ValueError):
        triangulation_from_json_obj({"n": 4, "diagonals": [{"edge": [0, 1]}]})
    with pytest.raises(ValueError):
        triangulation_from_json_obj([])


def test_sort_key_orders_arcs_before_radii():
    ds = all_diagonals(4)
    kinds = [isinstance(d, Radius) for d in ds]
    assert kinds == sorted(kinds)
    assert ds == sorted(ds, key=diagonal_sort_key)
