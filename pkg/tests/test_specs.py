import pytest

from pclean.errors import MalformedSpec
from pclean.specs import (
    ConstDiagSpec,
    EisensteinSpec,
    GaussianSpec,
    MatrixSpec,
    ProductSpec,
    QuotientSpec,
    TriangularSpec,
    ZnSpec,
    canon,
    parse_ring_spec,
    spec_order,
)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("Z4", ZnSpec(4)),
        ("z8[i]", GaussianSpec(8)),
        ("Z9[w]", EisensteinSpec(9)),
        ("M2(Z4)", MatrixSpec(2, ZnSpec(4))),
        ("T2(Z2)", TriangularSpec(2, ZnSpec(2))),
        ("Tc3(Z4)", ConstDiagSpec(3, ZnSpec(4))),
        ("Z4xZ2", ProductSpec((ZnSpec(4), ZnSpec(2)))),
        ("Z4/(2)", QuotientSpec(ZnSpec(4), ("2",))),
        ("Z8[i]/(1+i)", QuotientSpec(GaussianSpec(8), ("1+i",))),
        ("  m2( z4 x z2 ) ", MatrixSpec(2, ProductSpec((ZnSpec(4), ZnSpec(2))))),
        ("(Z4xZ2)/([2,0])", QuotientSpec(ProductSpec((ZnSpec(4), ZnSpec(2))), ("[2,0]",))),
        ("T2(Z2)/([0,1;0,0])", QuotientSpec(TriangularSpec(2, ZnSpec(2)), ("[0,1;0,0]",))),
    ],
)
def test_parse(text, expected):
    assert parse_ring_spec(text) == expected


@pytest.mark.parametrize(
    "text",
    ["Z4", "Z8[i]", "Z9[w]", "M2(Z4)", "T2(Z2)", "Tc3(Z4)", "Z4xZ2", "Z4/(2)",
     "M2(Z4xZ2)", "(Z4xZ2)/([2,0])"],
)
def test_canon_round_trip(text):
    spec = parse_ring_spec(text)
    assert parse_ring_spec(canon(spec)) == spec


@pytest.mark.parametrize(
    "text,order",
    [
        ("Z4", 4),
        ("Z8[i]", 64),
        ("M2(Z4)", 256),
        ("T3(Z2)", 64),
        ("Tc3(Z4)", 256),
        ("Z4xZ2", 8),
        ("M3(Z2)", 512),
    ],
)
def test_spec_order(text, order):
    assert spec_order(parse_ring_spec(text)) == order


@pytest.mark.parametrize(
    "bad", ["", "Z1", "Z", "Q4", "M0(Z2)", "Z4[q]", "Z4/(", "Z4 extra", "M2(Z4", "Z4//(2)"]
)
def test_parse_errors(bad):
    with pytest.raises(MalformedSpec):
        parse_ring_spec(bad)


def test_error_carries_offset():
    with pytest.raises(MalformedSpec) as exc:
        parse_ring_spec("Z4[q]")
    assert "offset" in str(exc.value)


def test_quotient_generator_must_parse_in_base():
    from pclean.rings import build_ring

    with pytest.raises(MalformedSpec):
        build_ring("Z4/(i)")
