"""hMetis ``.hgr`` hypergraphs and one-id-per-line partition files."""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .core import Hypergraph, Partition

_UINT = re.compile(r"[0-9]+")
_SEP = re.compile(r"[ \t]+")


class HgrParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class HgrFormatFlags:
    has_hedge_weights: bool = False
    has_node_weights: bool = False

    @classmethod
    def decode(cls, fmt: str | None) -> "HgrFormatFlags":
        table = {None: (False, False), "1": (True, False), "10": (False, True), "11": (True, True)}
        if fmt not in table:
            raise ValueError(f"unknown fmt field {fmt!r}")
        return cls(*table[fmt])

    def encode(self) -> str | None:
        return {(False, False): None, (True, False): "1", (False, True): "10", (True, True): "11"}[
            (self.has_hedge_weights, self.has_node_weights)
        ]


def _lines(source) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def _tokens(line: str, lineno: int) -> list[int]:
    line = line.rstrip("\n").rstrip("\r").strip(" \t")
    if not line:
        return []
    out = []
    for tok in _SEP.split(line):
        if not _UINT.fullmatch(tok):
            raise HgrParseError(lineno, f"non-numeric token {tok!r}")
        out.append(int(tok))
    return out


def parse_hgr(source: IO[str] | str) -> Hypergraph:
    """Parse an ``.hgr`` text stream (or a string holding the file contents)."""
    content = []  # (lineno, tokens) of every non-comment line
    for lineno, line in enumerate(_lines(source), start=1):
        if line.startswith("%"):
            continue
        content.append((lineno, line))
    # trailing blank lines are not content
    while content and not content[-1][1].strip(" \t\r\n"):
        content.pop()
    if not content:
        raise HgrParseError(1, "missing header")

    lineno, header_line = content[0]
    header = _tokens(header_line, lineno)
    if len(header) not in (2, 3):
        raise HgrParseError(lineno, "header must be 'numHedges numNodes [fmt]'")
    num_hedges, num_nodes = header[0], header[1]
    fmt_token = header_line.split()[2] if len(header) == 3 else None
    try:
        flags = HgrFormatFlags.decode(fmt_token)
    except ValueError as exc:
        raise HgrParseError(lineno, str(exc)) from None

    body = content[1:]
    expected = num_hedges + (num_nodes if flags.has_node_weights else 0)
    if len(body) < expected:
        last = body[-1][0] if body else lineno
        raise HgrParseError(last, f"expected {expected} data lines, found {len(body)}")

    offsets = [0]
    pins: list[int] = []
    hedge_weight = np.ones(num_hedges, dtype=np.int64)
    for e, (lineno, line) in enumerate(body[:num_hedges]):
        toks = _tokens(line, lineno)
        if flags.has_hedge_weights:
            if not toks:
                raise HgrParseError(lineno, "empty hyperedge line")
            if toks[0] == 0:
                raise HgrParseError(lineno, "hyperedge weight must be positive")
            hedge_weight[e] = toks[0]
            toks = toks[1:]
        if not toks:
            raise HgrParseError(lineno, "empty hyperedge line")
        for v in toks:
            if not 1 <= v <= num_nodes:
                raise HgrParseError(lineno, f"node id {v} outside [1, {num_nodes}]")
        pins.extend(sorted({v - 1 for v in toks}))
        offsets.append(len(pins))

    node_weight = np.ones(num_nodes, dtype=np.int64)
    if flags.has_node_weights:
        for v, (lineno, line) in enumerate(body[num_hedges:expected]):
            toks = _tokens(line, lineno)
            if len(toks) != 1:
                raise HgrParseError(lineno, "node weight line must hold exactly one value")
            if toks[0] == 0:
                raise HgrParseError(lineno, "node weight must be positive")
            node_weight[v] = toks[0]
    if len(body) > expected:
        raise HgrParseError(body[expected][0], f"expected {expected} data lines, found {len(body)}")

    return Hypergraph.from_csr(num_nodes, offsets, pins, node_weight, hedge_weight)


def read_hgr(path) -> Hypergraph:
    with open(path, encoding="ascii", newline="") as fh:
        return parse_hgr(fh)


def write_hgr(h: Hypergraph, stream: IO[str]) -> None:
    """Write ``h`` in ``.hgr`` form; weights are emitted only when some differ from 1."""
    flags = HgrFormatFlags(
        has_hedge_weights=bool(np.any(h.hedge_weight != 1)),
        has_node_weights=bool(np.any(h.node_weight != 1)),
    )
    fmt = flags.encode()
    out = [f"{h.num_hedges} {h.num_nodes}" + (f" {fmt}" if fmt else "")]
    for e in range(h.num_hedges):
        ids = " ".join(str(v + 1) for v in h.pins(e).tolist())
        out.append(f"{int(h.hedge_weight[e])} {ids}" if flags.has_hedge_weights else ids)
    if flags.has_node_weights:
        out.extend(str(int(w)) for w in h.node_weight.tolist())
    stream.write("\n".join(out) + "\n")


def write_partition(p: Partition, stream: IO[str]) -> None:
    stream.write("".join(f"{x}\n" for x in p.part.tolist()))


def format_partition(p: Partition) -> bytes:
    buf = io.StringIO()
    write_partition(p, buf)
    return buf.getvalue().encode("ascii")


def parse_partition(source: IO[str] | str, num_nodes: int, k: int, node_weight=None) -> Partition:
    """Read a partition file; ``node_weight`` (default all ones) feeds the part weights."""
    part = []
    for lineno, line in enumerate(_lines(source), start=1):
        toks = _tokens(line, lineno)
        if len(toks) != 1:
            raise HgrParseError(lineno, "expected exactly one part id")
        if toks[0] >= k:
            raise HgrParseError(lineno, f"part id {toks[0]} >= k={k}")
        part.append(toks[0])
    if len(part) != num_nodes:
        raise HgrParseError(len(part), f"expected {num_nodes} lines, found {len(part)}")
    if node_weight is None:
        node_weight = np.ones(num_nodes, dtype=np.int64)
    return Partition.from_parts(np.array(part, dtype=np.int64), k, node_weight)


def read_partition(path, num_nodes: int, k: int, node_weight=None) -> Partition:
    with open(path, encoding="ascii", newline="") as fh:
        return parse_partition(fh, num_nodes, k, node_weight)
