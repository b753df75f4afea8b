import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rinfty import parse_algebra, parse_text, serialize
from rinfty.fileformat import (
    CoefficientError,
    DegreeMismatchError,
    DuplicateGeneratorError,
    SpecError,
    UnknownIdError,
    fixture_names,
    fixture_path,
    load_fixture,
)
from rinfty.bigbracket import PolyMap


def test_minimal_file():
    spec = parse_text("generator x 0\n")
    assert spec.basis.ids == ["x"]
    assert spec.alg.brackets.is_zero()
    assert spec.rmatrix is None and spec.policy is None


def test_two_dim_fixture():
    spec = load_fixture("two_dim")
    b = spec.basis
    assert spec.alg.brackets == PolyMap.from_entries(b, 1, [(["x", "y"], {("y",): 1})])
    r = spec.rmatrix.coefficients
    assert list(r) == [1] and str(r[1]) == "x*y"


def test_comments_policy_and_rationals():
    spec = parse_text(
        "# header\ngenerator x 0   # trailing\ngenerator y 0\n"
        "bracket y x -> -3/4 y\npolicy 3 2 2\nrmatrix 2 1/2 x y\n"
    )
    assert spec.policy.as_dict() == {"W": 3, "L": 2, "A": 2}
    assert str(spec.alg.brackets) == "x*y |-> 3/4*y"
    assert spec.rmatrix.cap == 2 and list(spec.rmatrix.coefficients) == [2]


@pytest.mark.parametrize(
    "text,err,line",
    [
        ("generator x 0\nbracket x q -> 1 x\n", UnknownIdError, 2),
        ("generator x 0\ngenerator x 1\n", DuplicateGeneratorError, 2),
        ("generator x 0\ngenerator y 0\nbracket x y -> 0.5 y\n", CoefficientError, 3),
        ("generator x 0\ngenerator y 0\nbracket x y -> 1/0x y\n", CoefficientError, 3),
        ("generator x 0\ngenerator u 1\n\nbracket x u -> 1 x\n", DegreeMismatchError, 4),
        ("generator x 0\nrmatrix 1 1 x\n", DegreeMismatchError, 2),
        ("generator x 0\nrmatrix 0 1 x x\n", SpecError, 2),
        ("generator x 0\nfrobnicate\n", SpecError, 2),
        ("generator x zero\n", SpecError, 1),
        ("generator x 0\nbracket x x y\n", SpecError, 2),
    ],
)
def test_errors_are_located(text, err, line):
    with pytest.raises(err) as info:
        parse_text(text, "t.alg")
    assert info.value.line == line
    assert f"t.alg:{line}:" in str(info.value)


def test_error_kinds_distinct():
    kinds = {UnknownIdError.kind, DuplicateGeneratorError.kind, CoefficientError.kind,
             DegreeMismatchError.kind}
    assert len(kinds) == 4


def test_missing_file(tmp_path):
    with pytest.raises(SpecError):
        parse_algebra(tmp_path / "nope.alg")


def test_unknown_fixture():
    with pytest.raises(SpecError, match="available"):
        fixture_path("nope")


@pytest.mark.parametrize("name", fixture_names())
def test_round_trip(name):
    spec = load_fixture(name)
    text = serialize(spec)
    again = parse_text(text)
    assert again == spec
    assert serialize(again) == text


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_round_trip_random(data):
    degs = data.draw(st.lists(st.integers(-1, 2), min_size=1, max_size=3))
    ids = [f"g{i}" for i in range(len(degs))]
    lines = [f"generator {i} {d}" for i, d in zip(ids, degs)]
    for _ in range(data.draw(st.integers(0, 4))):
        k = data.draw(st.integers(1, 3))
        ins = data.draw(st.lists(st.sampled_from(ids), min_size=k, max_size=k))
        want = sum(degs[ids.index(i)] for i in ins) - k + 2
        outs = [i for i, d in zip(ids, degs) if d == want]
        if not outs:
            continue
        o = data.draw(st.sampled_from(outs))
        num = data.draw(st.integers(-5, 5).filter(bool))
        den = data.draw(st.integers(1, 4))
        lines.append(f"bracket {' '.join(ins)} -> {num}/{den} {o}")
    try:
        spec = parse_text("\n".join(lines))
    except DegreeMismatchError:
        return  # an odd repeated input vanishes
    assert parse_text(serialize(spec)) == spec
