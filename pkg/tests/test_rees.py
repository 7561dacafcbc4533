import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from reeshom.errors import SchemaError
from reeshom.groups import FGAbelianGroup, cyclic_group, symmetric_group
from reeshom.rees import (
    MonoidTable,
    ReesMatrixSemigroup,
    adjoin_identity,
    check_isomorphism,
    is_normalized,
    multiply,
    normalize,
    rectangular_band,
    to_monoid_table,
)


def z2_twisted():
    return ReesMatrixSemigroup(cyclic_group(2), ("a0", "a1"), ("b0", "b1"), ((0, 0), (0, 1)))


@st.composite
def rees_instances(draw, max_index=3):
    group = draw(st.sampled_from([cyclic_group(1), cyclic_group(2), cyclic_group(3), symmetric_group(3)]))
    na = draw(st.integers(1, max_index))
    nb = draw(st.integers(1, max_index))
    elems = st.integers(0, group.order - 1)
    C = draw(st.lists(st.lists(elems, min_size=na, max_size=na), min_size=nb, max_size=nb))
    return ReesMatrixSemigroup(
        group, tuple(f"a{i}" for i in range(na)), tuple(f"b{j}" for j in range(nb)), tuple(map(tuple, C))
    )


class TestMultiplication:
    def test_sandwich_product(self):
        s = z2_twisted()
        # (a1, e, b1)(a1, e, b0) = (a1, e C[b1][a1] e, b0) = (a1, g, b0)
        assert multiply(s, (1, 0, 1), (1, 0, 0)) == (1, 1, 0)
        assert multiply(s, (1, 0, 1), (0, 0, 0)) == (1, 0, 0)

    def test_band_is_idempotent_rectangle(self):
        s = rectangular_band(2, 3)
        for x in s.elements():
            assert multiply(s, x, x) == x
            for y in s.elements():
                assert multiply(s, x, y) == (x[0], 0, y[2])

    def test_abelian_backend(self):
        s = ReesMatrixSemigroup(FGAbelianGroup(2), ("a0", "a1"), ("b0",), (((0, 0), (1, 0)),))
        assert multiply(s, (0, (1, 1), 0), (1, (0, 2), 0)) == (0, (2, 3), 0)
        assert not s.is_finite


@given(rees_instances())
@settings(max_examples=25, deadline=None)
def test_associative(s):
    assume(s.size() <= 30)
    elems = s.elements()
    for x, y, z in itertools.product(elems, repeat=3):
        assert multiply(s, multiply(s, x, y), z) == multiply(s, x, multiply(s, y, z))


class TestNormalization:
    def test_already_normalized(self):
        s = z2_twisted()
        assert is_normalized(s)
        t, phi = normalize(s)
        assert t.C == s.C and phi.is_identity()

    def test_known_example(self):
        s = ReesMatrixSemigroup(cyclic_group(3), ("a0", "a1"), ("b0", "b1"), ((1, 2), (0, 1)))
        assert not is_normalized(s)
        t, phi = normalize(s)
        assert is_normalized(t, "a0", "b0") and (t.a0, t.b0) == ("a0", "b0")
        # C'[b1][a1] = C00 C10^-1 C11 C01^-1 = 1 - 0 + 1 - 2 = 0 (additively, mod 3)
        assert t.C[1][1] == 0
        assert check_isomorphism(s, t, phi) == []

    def test_other_base_pair(self):
        s = ReesMatrixSemigroup(cyclic_group(3), ("a0", "a1"), ("b0", "b1"), ((1, 2), (0, 1)))
        t, phi = normalize(s, "a1", "b1")
        assert is_normalized(t, "a1", "b1")
        assert check_isomorphism(s, t, phi) == []

    @given(rees_instances(), st.data())
    @settings(max_examples=40, deadline=None)
    def test_witness_is_isomorphism(self, s, data):
        a0 = data.draw(st.sampled_from(s.A))
        b0 = data.draw(st.sampled_from(s.B))
        t, phi = normalize(s, a0, b0)
        assert is_normalized(t, a0, b0)
        assert check_isomorphism(s, t, phi) == []

    def test_broken_map_is_detected(self):
        s = ReesMatrixSemigroup(cyclic_group(2), ("a0", "a1"), ("b0",), ((0, 1),))
        assert check_isomorphism(s, s, lambda x: (x[0], 0, x[2]))


class TestJson:
    def test_roundtrip(self):
        s = ReesMatrixSemigroup(symmetric_group(3), ("p", "q"), ("r",), ((0, 3),), "q", "r")
        obj = s.to_json()
        assert obj["C"] == {"r": {"p": "012", "q": "120"}}
        assert ReesMatrixSemigroup.from_json(obj) == s

    @pytest.mark.parametrize("mutate, fragment", [
        (lambda o: o.pop("C"), "missing 'C'"),
        (lambda o: o["C"].pop("b1"), "C['b1'] is missing"),
        (lambda o: o["C"]["b1"].pop("a0"), "C['b1']['a0'] is missing"),
        (lambda o: o["C"]["b1"].__setitem__("a0", "h"), "C['b1']['a0']"),
        (lambda o: o["C"].__setitem__("zz", {}), "unknown b"),
        (lambda o: o.__setitem__("a0", "nope"), "a0"),
        (lambda o: o.__setitem__("A", []), "unknown a"),
        (lambda o: o["group"].__setitem__("kind", "weird"), "unknown group kind"),
    ])
    def test_located_errors(self, mutate, fragment):
        obj = z2_twisted().to_json()
        mutate(obj)
        with pytest.raises(SchemaError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
            ReesMatrixSemigroup.from_json(obj)

    def test_abelian_elements_are_vectors(self):
        s = ReesMatrixSemigroup(FGAbelianGroup(1, [2]), ("a0", "a1"), ("b0",), (((0, 0), (1, 1)),))
        assert s.to_json()["C"]["b0"]["a1"] == [1, 1]
        assert ReesMatrixSemigroup.from_json(s.to_json()) == s


class TestMonoids:
    def test_to_monoid_table(self):
        s = z2_twisted()
        m = to_monoid_table(s)
        assert m.order == s.size() + 1 == 9
        assert m.identity == 8 and m.names[-1] == "1"
        elems = s.elements()
        for i, x in enumerate(elems):
            for j, y in enumerate(elems):
                assert elems[m.mul(i, j)] == multiply(s, x, y)

    def test_adjoin_identity(self):
        m = cyclic_group(2).to_monoid_table()
        m1 = adjoin_identity(m)
        assert m1.order == 3 and m1.identity == 2
        assert m1.mul(0, 1) == 1

    def test_rejects_bad_tables(self):
        with pytest.raises(SchemaError, match="identity"):
            MonoidTable([[0, 0], [1, 1]])
        with pytest.raises(SchemaError, match="associative"):
            MonoidTable([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
        with pytest.raises(SchemaError, match="length"):
            MonoidTable([[0, 1], [1]])
        with pytest.raises(SchemaError):
            MonoidTable.from_json({"elements": ["x"]})
