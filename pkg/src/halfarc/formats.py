"""graph6 and plain edge-list codecs."""

from __future__ import annotations

from typing import TextIO

from .graph import Graph, from_edge_list

G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return chr(126) + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return chr(126) * 2 + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, number of bytes consumed)."""
    if not data:
        raise ValueError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        chunk, off = data[2:8], 8
    else:
        chunk, off = data[1:4], 4
    if len(data) < off:
        raise ValueError("truncated graph6 size field")
    n = 0
    for b in chunk:
        n = (n << 6) | (b - 63)
    return n, off


def encode_graph6(g: Graph) -> str:
    n = g.n
    bits = []
    for j in range(1, n):
        nb = g._nbr_sets[j]
        for i in range(j):
            bits.append(1 if i in nb else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(chr(63 + val))
    return _encode_n(n) + "".join(body)


def decode_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(G6_HEADER):
        s = s[len(G6_HEADER):]
    data = s.encode("ascii")
    if any(b < 63 or b > 126 for b in data):
        raise ValueError("graph6 byte out of range 63..126")
    n, off = _decode_n(data)
    if n < 0:
        raise ValueError("bad graph6 size field")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[off:]
    if len(body) != nbytes:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {nbytes}")
    edges = []
    k = 0
    i, j = 0, 1
    for byte in body:
        val = byte - 63
        for shift in range(5, -1, -1):
            bit = (val >> shift) & 1
            if k < nbits:
                if bit:
                    edges.append((i, j))
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise ValueError("nonzero padding bits in graph6 string")
            k += 1
    return from_edge_list(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge-list header must be 'n m'")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for row in body:
        if len(row) != 2:
            raise ValueError(f"bad edge line: {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    return from_edge_list(n, edges)


def read_graph_file(fh: TextIO) -> Graph:
    """Read either format; a lone graph6 line is detected by shape."""
    text = fh.read()
    stripped = text.strip()
    if stripped and "\n" not in stripped and " " not in stripped:
        return decode_graph6(stripped)
    return read_edge_list(text)
