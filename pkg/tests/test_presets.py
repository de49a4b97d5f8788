from fractions import Fraction

import pytest

from cluster_painleve.presets import UnknownPreset, get_preset, list_presets
from cluster_painleve.quiver import build_from_tuple, is_period1

NAMED = ("somos4", "somos5", "somos6", "somos7", "prim4", "nonintegrable6")


def test_listing_contains_every_named_system():
    names = list_presets()
    for n in NAMED:
        assert n in names
    assert "primN" in names


@pytest.mark.parametrize("name", NAMED)
def test_every_preset_matrix_is_period1(name):
    assert is_period1(get_preset(name).matrix)


@pytest.mark.parametrize("name", NAMED)
def test_fixture_matrices_roundtrip_through_builder(name):
    p = get_preset(name)
    assert build_from_tuple(p.a) == p.matrix
    assert p.matrix.first_row_tuple() == p.a


def test_pinned_tuples():
    assert get_preset("somos4").a == (-1, 2, -1)
    assert get_preset("somos5").a == (-1, 1, 1, -1)
    assert get_preset("somos6").a == (-1, 1, 0, 1, -1)
    assert get_preset("somos7").a == (-1, 0, 1, 1, 0, -1)
    assert get_preset("prim4").a == (-1, 0, -1)
    assert get_preset("nonintegrable6").a == (-2, 6, -4, 6, -2)


def test_primN_family_parameterizes():
    p5 = get_preset("primN", 5)
    assert p5.a == (-1, 0, 0, -1) and p5.n == 5
    p7 = get_preset("prim7")
    assert p7.a == (-1, 0, 0, 0, 0, -1)
    assert is_period1(p7.matrix)


def test_prim4_resolves_to_the_fixture():
    assert get_preset("prim4").matrix_source == "fixture"
    assert get_preset("primN", 4).a == get_preset("prim4").a


def test_primN_needs_a_size():
    with pytest.raises(UnknownPreset):
        get_preset("primN")
    with pytest.raises(UnknownPreset):
        get_preset("primN", 2)


def test_unknown_preset():
    with pytest.raises(UnknownPreset):
        get_preset("somos9")
