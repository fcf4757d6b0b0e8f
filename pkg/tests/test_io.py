import pytest

from pacbasis import ContextParseError, FormalContext, parse_context, star_alliance, write_context
from pacbasis.datagen import star_alliance_path
from pacbasis.context import AttributeUniverse
from pacbasis.implications import format_implications, parse_implications


def test_minimal_burmeister():
    ctx = parse_context(b"B\n\n1\n2\n\ng1\na\nb\nXX\n")
    assert ctx.object_labels == ["g1"]
    assert ctx.universe.names == ("a", "b")
    assert ctx.objects[0][1] == ctx.universe.set("ab")


@pytest.mark.parametrize("text, line", [
    ("B\n\n1\n2\n\ng1\na\nb\nXXX\n", 9),
    ("B\n\n1\n2\n\ng1\na\nb\nX\n", 9),
    ("A\n\n1\n2\n\ng1\na\nb\nXX\n", 1),
    ("B\n\nx\n2\n\ng1\na\nb\nXX\n", 3),
    ("B\n\n2\n1\n\ng\ng\na\nX\n.\n", 7),
    ("B\n\n1\n2\n\ng\na\na\nXX\n", 7),
    ("B\n\n1\n1\n\ng\na\nY\n", 8),
    ("B\n\n2\n1\n\ng\nh\na\nX\n", 10),
])
def test_malformed_burmeister_reports_line(text, line):
    with pytest.raises(ContextParseError) as info:
        parse_context(text)
    assert info.value.line == line


def test_bundled_star_alliance_shape():
    ctx = parse_context(star_alliance_path().read_bytes())
    assert len(ctx.objects) == 13
    assert len(ctx.universe) == 9


@pytest.mark.parametrize("fmt", ["burmeister", "csv"])
def test_round_trip_star_alliance(fmt):
    ctx = star_alliance()
    data = write_context(ctx, fmt)
    assert parse_context(data, fmt) == ctx
    assert write_context(parse_context(data, fmt), fmt) == data


def test_burmeister_write_is_bit_exact_on_bundled_file():
    raw = star_alliance_path().read_bytes()
    assert write_context(parse_context(raw)) == raw


@pytest.mark.parametrize("fmt", ["burmeister", "csv"])
def test_empty_and_tiny_contexts_round_trip(fmt):
    empty = FormalContext(AttributeUniverse(["a", "b"]), [])
    data = write_context(empty, fmt)
    if fmt == "burmeister":
        assert data.split(b"\n")[2] == b"0"
    assert parse_context(data, fmt) == empty
    tiny = FormalContext.from_rows(["a", "b"], [("g", ["b"])])
    assert parse_context(write_context(tiny, fmt), fmt) == tiny


def test_csv_format():
    ctx = parse_context("obj,a,b\ng1,1,0\ng2,1,1\n", "csv")
    assert ctx.rows == (0b10, 0b11)
    with pytest.raises(ContextParseError) as info:
        parse_context("obj,a,b\ng1,1\n", "csv")
    assert info.value.line == 2
    with pytest.raises(ContextParseError):
        parse_context("obj,a,b\ng1,1,2\n", "csv")


def test_implication_text_round_trip():
    u = AttributeUniverse(["a", "b", "c", "d"])
    text = "a, b -> c, d\n{} -> c\nc -> ⊥\n"
    imps = parse_implications(text, u)
    assert imps[0].premise == u.set("ab") and imps[0].conclusion == u.set("cd")
    assert imps[1].premise == u.empty
    assert imps[2].conclusion == u.full
    assert format_implications(imps) == text


def test_implication_display_strips_premise():
    u = AttributeUniverse(["a", "b", "c"])
    imps = parse_implications("a -> a, b\na, b -> a\na, b, c -> ⊥\n", u)
    assert format_implications(imps) == "a -> b\na, b -> {}\na, b, c -> {}\n"


def test_implication_parse_errors():
    u = AttributeUniverse(["a"])
    with pytest.raises(ContextParseError):
        parse_implications("a => a", u)
    with pytest.raises(ContextParseError):
        parse_implications("z -> a", u)
    with pytest.raises(ContextParseError):
        parse_implications("⊥ -> a", u)
