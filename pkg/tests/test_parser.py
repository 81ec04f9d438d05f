import numpy as np
import pytest

from qcap import channels as chn
from qcap.parser import (
    ChannelSpecError,
    Leaf,
    Node,
    build,
    parse_channel_spec,
    spec_to_text,
)


class TestParse:
    def test_erasure_leaf(self):
        spec = parse_channel_spec("erasure:p=0.25,d=2")
        assert spec == Leaf("erasure", {"p": 0.25, "d": 2})

    def test_tensor_tree(self):
        spec = parse_channel_spec("tensor(platypus:d=3, erasure:p=0.5,d=2)")
        assert isinstance(spec, Node) and spec.op == "tensor"
        assert spec.children[0] == Leaf("platypus", {"d": 3})
        assert spec.children[1] == Leaf("erasure", {"p": 0.5, "d": 2})

    def test_comp_of_dsum(self):
        spec = parse_channel_spec("comp(dsum(platypus:d=3, erasure:p=0.5,d=2))")
        assert isinstance(spec, Node) and spec.op == "comp"
        assert spec.children[0].op == "dsum"

    def test_whitespace_insignificant(self):
        a = parse_channel_spec("tensor( platypus:d=3 ,erasure:p=0.5,d=2 )")
        b = parse_channel_spec("tensor(platypus:d=3,erasure:p=0.5,d=2)")
        assert a == b

    def test_rocket_defaults(self):
        spec = parse_channel_spec("rocket:d=2")
        assert spec.params["unitaries"] == "clifford"

    def test_rocket_haar(self):
        spec = parse_channel_spec("rocket:d=3,unitaries=haar,samples=7,seed=3")
        assert spec.params == {"d": 3, "unitaries": "haar", "samples": 7, "seed": 3}

    def test_round_trip_stable(self):
        for text in [
            "erasure:p=0.25,d=2",
            "tensor(platypus:d=3,erasure:p=0.5,d=2)",
            "comp(dsum(platypus:d=3,erasure:p=0.5,d=2))",
            "rocket:d=3,unitaries=haar,samples=7,seed=3",
        ]:
            once = parse_channel_spec(text)
            assert parse_channel_spec(spec_to_text(once)) == once


class TestParseErrors:
    def test_unknown_name_reports_offset(self):
        with pytest.raises(ChannelSpecError, match="byte offset") as exc:
            parse_channel_spec("bogus:x=1")
        assert exc.value.position == 0

    def test_offset_inside_expression(self):
        with pytest.raises(ChannelSpecError) as exc:
            parse_channel_spec("tensor(platypus:d=3, bogus:x=1)")
        assert exc.value.position == 21

    def test_parameter_out_of_range(self):
        with pytest.raises(ChannelSpecError, match="outside"):
            parse_channel_spec("erasure:p=1.5,d=2")

    def test_trailing_garbage(self):
        with pytest.raises(ChannelSpecError, match="trailing"):
            parse_channel_spec("platypus:d=3 extra")

    def test_missing_parameter(self):
        with pytest.raises(ChannelSpecError, match="requires parameter"):
            parse_channel_spec("erasure:d=2")


class TestBuild:
    def test_build_erasure(self):
        ch = build(parse_channel_spec("erasure:p=0.25,d=2"))
        assert isinstance(ch, chn.StinespringChannel)
        assert (ch.da, ch.db, ch.de) == (2, 3, 3)

    def test_build_composite(self):
        ch = build(parse_channel_spec("comp(dsum(platypus:d=3, erasure:p=0.5,d=2))"))
        # dsum merges inputs 3+2 and outputs (3+3, 2+3); comp swaps B and E
        assert (ch.da, ch.db, ch.de) == (5, 5, 6)

    def test_build_rocket_flagged(self):
        ch = build(parse_channel_spec("rocket:d=3,unitaries=haar,samples=4,seed=1"))
        assert isinstance(ch, chn.FlaggedChannel)
        assert len(ch.branches) == 4

    def test_build_tensor_with_flagged(self):
        ch = build(
            parse_channel_spec("tensor(rocket:d=2,unitaries=haar,samples=3,seed=1, erasure:p=0.5,d=2)")
        )
        assert isinstance(ch, chn.FlaggedChannel)
        assert len(ch.branches) == 3
        assert ch.da == 8

    def test_build_respects_cap(self, monkeypatch):
        monkeypatch.setenv("QCAP_DIM_CAP", "16")
        from qcap.qmat import DimensionCapError

        with pytest.raises(DimensionCapError):
            build(parse_channel_spec("tensor(erasure:p=0.5,d=16, erasure:p=0.5,d=16)"))
