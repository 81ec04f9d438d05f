"""Channel-spec mini-grammar.

    expr := leaf | "tensor(" expr "," expr ")" | "dsum(" expr "," expr ")"
          | "comp(" expr ")"
    leaf := "erasure:p=<float>,d=<int>" | "platypus:d=<int>"
          | "rocket:d=<int>[,unitaries=clifford|haar,samples=<int>,seed=<int>]"

Whitespace is insignificant; parse errors report the byte offset.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import channels as chn
from . import protocol

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"[-+]?\d+(\.\d+)?([eE][-+]?\d+)?")


class ChannelSpecError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at byte offset {position})")
        self.position = position


@dataclass(frozen=True)
class Leaf:
    kind: str  # erasure | platypus | rocket
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Node:
    op: str  # tensor | dsum | comp
    children: tuple


ChannelSpec = Leaf | Node


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise ChannelSpecError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected {token!r}")
        self.pos += len(token)

    def ident(self) -> str:
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group(0)

    def number(self) -> str:
        self.skip_ws()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return m.group(0)

    def peek_param(self) -> bool:
        """True if a ',' followed by 'ident=' comes next (leaf continuation)."""
        m = re.match(r"\s*,\s*[A-Za-z_][A-Za-z0-9_]*\s*=", self.text[self.pos :])
        return m is not None

    def expr(self) -> ChannelSpec:
        self.skip_ws()
        start = self.pos
        name = self.ident()
        if name in ("tensor", "dsum"):
            self.expect("(")
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return Node(name, (a, b))
        if name == "comp":
            self.expect("(")
            a = self.expr()
            self.expect(")")
            return Node("comp", (a,))
        if name in ("erasure", "platypus", "rocket"):
            self.expect(":")
            params = {}
            while True:
                key = self.ident()
                self.expect("=")
                self.skip_ws()
                if key == "unitaries":
                    params[key] = self.ident()
                else:
                    params[key] = self.number()
                if not self.peek_param():
                    break
                self.expect(",")
            return self._leaf(name, params, start)
        self.pos = start
        self.error(f"unknown channel name {name!r}")

    def _leaf(self, kind: str, raw: dict, start: int) -> Leaf:
        def need(key, conv, default=None):
            if key not in raw:
                if default is not None:
                    return default
                self.pos = start
                self.error(f"{kind} requires parameter {key!r}")
            try:
                return conv(raw[key])
            except ValueError:
                self.pos = start
                self.error(f"bad value for {key!r}")

        if kind == "erasure":
            p = need("p", float)
            d = need("d", int)
            if not 0.0 <= p <= 1.0:
                self.pos = start
                self.error("erasure parameter p outside [0,1]")
            if d < 2:
                self.pos = start
                self.error("erasure requires d >= 2")
            return Leaf("erasure", {"p": p, "d": d})
        if kind == "platypus":
            d = need("d", int)
            if d < 2:
                self.pos = start
                self.error("platypus requires d >= 2")
            return Leaf("platypus", {"d": d})
        if kind == "rocket":
            d = need("d", int)
            if d < 2:
                self.pos = start
                self.error("rocket requires d >= 2")
            unitaries = raw.get("unitaries", "clifford" if d == 2 else "haar")
            if unitaries not in ("clifford", "haar"):
                self.pos = start
                self.error("unitaries must be clifford or haar")
            if unitaries == "clifford" and d != 2:
                self.pos = start
                self.error("clifford enumeration is available at d=2 only")
            return Leaf(
                "rocket",
                {
                    "d": d,
                    "unitaries": unitaries,
                    "samples": need("samples", int, 200),
                    "seed": need("seed", int, 0),
                },
            )
        raise AssertionError(kind)


def parse_channel_spec(text: str) -> ChannelSpec:
    p = _Parser(text)
    tree = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        p.error("trailing input after expression")
    return tree


def spec_to_text(spec: ChannelSpec) -> str:
    if isinstance(spec, Leaf):
        if spec.kind == "erasure":
            return f"erasure:p={spec.params['p']},d={spec.params['d']}"
        if spec.kind == "platypus":
            return f"platypus:d={spec.params['d']}"
        p = spec.params
        return (
            f"rocket:d={p['d']},unitaries={p['unitaries']},"
            f"samples={p['samples']},seed={p['seed']}"
        )
    inner = ",".join(spec_to_text(c) for c in spec.children)
    return f"{spec.op}({inner})"


def build(spec: ChannelSpec) -> chn.Channel:
    """Construct the channel described by a parsed spec tree."""
    if isinstance(spec, Leaf):
        if spec.kind == "erasure":
            return chn.make_erasure(spec.params["p"], spec.params["d"])
        if spec.kind == "platypus":
            return chn.make_platypus(spec.params["d"])
        pairs = protocol.unitary_pairs(
            spec.params["d"],
            spec.params["unitaries"],
            spec.params["samples"],
            spec.params["seed"],
        )
        return chn.make_rocket_flagged(spec.params["d"], pairs)
    parts = [build(c) for c in spec.children]
    if spec.op == "tensor":
        return chn.tensor(*parts)
    if spec.op == "dsum":
        return chn.direct_sum(*parts)
    return chn.complement(parts[0])
