"""graph6 text format.

Format: ``N(n)`` followed by the upper triangle of the adjacency matrix in
column order (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits per
character with offset 63.  ``N(n)`` is ``chr(n + 63)`` for n <= 62 and
``'~'`` plus three characters (18 bits) for 63 <= n <= 258047.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph


class Graph6Error(ValueError):
    pass


def _bit_pairs(n: int) -> Iterator[tuple[int, int]]:
    for j in range(1, n):
        for i in range(j):
            yield i, j


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise Graph6Error(f"graph6 supports at most 258047 vertices, got {n}")


def graph6_encode(g: Graph) -> str:
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _bit_pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    chars = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        chars.append(chr(v + 63))
    return _encode_n(g.n) + "".join(chars)


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise Graph6Error(f"invalid character in graph6 string {s!r}")
    if s[0] != "~":
        n, body = ord(s[0]) - 63, s[1:]
    else:
        if len(s) < 4 or s[1] == "~":
            raise Graph6Error(f"unsupported graph6 size header in {s!r}")
        n = ((ord(s[1]) - 63) << 12) | ((ord(s[2]) - 63) << 6) | (ord(s[3]) - 63)
        body = s[4:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"graph6 string {s!r} has wrong length for n={n}")
    val = 0
    for c in body:
        val = (val << 6) | (ord(c) - 63)
    pad = 6 * len(body) - nbits
    if pad and val & ((1 << pad) - 1):
        raise Graph6Error(f"nonzero padding bits in {s!r}")
    val >>= pad
    edges = []
    for k, (i, j) in enumerate(_bit_pairs(n)):
        if val >> (nbits - 1 - k) & 1:
            edges.append((i, j))
    return Graph(n, tuple(edges))


def read_graph6(lines: Iterable[str] | TextIO) -> Iterator[tuple[int, Graph]]:
    """Yield (line number, graph) for every non-blank line; errors name the line."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield lineno, graph6_decode(line)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc}") from None
