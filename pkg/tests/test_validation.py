import pytest

from repind import NodeNotFound, TypedGraph, format_metapath, parse_metapath, resolve_node
from repind.validation import check_in_range, check_positive_int


class TestChecks:
    def test_in_range(self):
        check_in_range("x", 0.5, 0.0, 1.0)
        check_in_range("x", 0.0, 0.0, 1.0)
        with pytest.raises(ValueError, match="x must satisfy"):
            check_in_range("x", 0.0, 0.0, 1.0, inclusive=False)
        with pytest.raises(ValueError):
            check_in_range("x", 1.2, 0.0, 1.0)

    def test_positive_int(self):
        check_positive_int("n", 3)
        for bad in (0, -1, 2.5, "3", True):
            with pytest.raises(ValueError):
                check_positive_int("n", bad)


class TestMetapath:
    def test_compact_string(self):
        assert parse_metapath("APCPA") == ("A", "P", "C", "P", "A")

    def test_comma_string_allows_long_names(self):
        assert parse_metapath("Author,Paper,Author") == ("Author", "Paper", "Author")

    def test_sequence(self):
        assert parse_metapath(["A", "P", "A"]) == ("A", "P", "A")
        assert parse_metapath(("A", "P")) == ("A", "P")

    @pytest.mark.parametrize("bad", ["A", "", ("A",), ["A", ""], 42, "A,,B"])
    def test_rejected(self, bad):
        with pytest.raises(ValueError):
            parse_metapath(bad)

    def test_format_roundtrip(self):
        assert format_metapath(("A", "P", "A")) == "APA"
        assert format_metapath(("Author", "Paper")) == "Author,Paper"
        for mp in ("APCPA", "Author,Paper,Author"):
            assert format_metapath(parse_metapath(mp)) == mp


class TestResolveNode:
    def graph(self):
        g = TypedGraph()
        g.add_node("A", "alice")
        g.add_node("F", "x:y")
        return g

    def test_by_id(self):
        assert resolve_node(self.graph(), 0) == 0
        with pytest.raises(NodeNotFound):
            resolve_node(self.graph(), 5)

    def test_by_string(self):
        assert resolve_node(self.graph(), "A:alice") == 0
        # label keeps everything after the first colon
        assert resolve_node(self.graph(), "F:x:y") == 1
        with pytest.raises(NodeNotFound):
            resolve_node(self.graph(), "alice")

    def test_by_tuple(self):
        assert resolve_node(self.graph(), ("A", "alice")) == 0
        with pytest.raises(NodeNotFound):
            resolve_node(self.graph(), ("A", "bob"))

    def test_garbage(self):
        with pytest.raises(NodeNotFound):
            resolve_node(self.graph(), 1.5)
        with pytest.raises(NodeNotFound):
            resolve_node(self.graph(), True)
