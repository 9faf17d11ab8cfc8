"""graph6 encoding (McKay's format) for single graphs and line streams."""

from __future__ import annotations

from typing import IO, Iterable, Iterator

from .graph import MAX_VERTICES, Graph

HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([63 + n])
    if n <= 258047:
        return bytes([126] + [63 + (n >> s & 63) for s in (12, 6, 0)])
    return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])


def graph6_encode(g: Graph) -> bytes:
    out = bytearray(_encode_size(g.n))
    acc = 0
    nbits = 0
    adj = g.adj
    for j in range(1, g.n):
        aj = adj[j]
        for i in range(j):
            acc = acc << 1 | (aj >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(63 + acc)
                acc = nbits = 0
    if nbits:
        out.append(63 + (acc << (6 - nbits)))
    return bytes(out)


def graph6_decode(data: bytes | str) -> Graph:
    """Parse one graph6 record; rejects anything not produced by :func:`graph6_encode`."""
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    base = 0
    if data.startswith(HEADER):
        base = len(HEADER)
        data = data[base:]
    if data.endswith(b"\n"):
        data = data[:-1]
    if not data:
        raise Graph6Error("empty graph6 record", base)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside the printable range 63..126", base + i)

    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte size field", base + len(data))
        n = 0
        for b in data[2:8]:
            n = n << 6 | (b - 63)
        pos = 8
        if n <= 258047:
            raise Graph6Error("non-minimal size field", base)
    else:
        if len(data) < 4:
            raise Graph6Error("truncated 4-byte size field", base + len(data))
        n = 0
        for b in data[1:4]:
            n = n << 6 | (b - 63)
        pos = 4
        if n <= 62:
            raise Graph6Error("non-minimal size field", base)
    if n > MAX_VERTICES:
        raise Graph6Error(f"graph order {n} exceeds the {MAX_VERTICES}-vertex cap", base)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise Graph6Error("truncated edge data", base + len(data))
    if len(body) > need:
        raise Graph6Error("trailing bytes after edge data", base + pos + need)

    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if need and (body[-1] - 63) & ((1 << (need * 6 - nbits)) - 1):
        raise Graph6Error("nonzero padding bits", base + pos + need - 1)
    return Graph(n, adj, check=False)


def write_graph6_stream(graphs: Iterable[Graph], fh: IO[bytes]) -> None:
    for g in graphs:
        fh.write(graph6_encode(g) + b"\n")


def read_graph6_stream(fh: IO[bytes]) -> Iterator[Graph]:
    offset = 0
    for line in fh:
        stripped = line.rstrip(b"\r\n")
        if stripped:
            try:
                yield graph6_decode(stripped)
            except Graph6Error as exc:
                raise Graph6Error(str(exc).rsplit(" (byte offset", 1)[0], offset + exc.offset) from None
        offset += len(line)
