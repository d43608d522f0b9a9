"""Graph I/O: graph6, plain edge lists, and JSON for the compact graph encodings."""

from __future__ import annotations

from pathlib import Path

from .graph import (BicirculantSymbol, FruchtSpec, Graph, GraphError, SymbolMatrix,
                    _pm)


# --- graph6 ------------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) > 1 and data[1] == 126:
        head, rest = data[2:8], data[8:]
    else:
        head, rest = data[1:4], data[4:]
    n = 0
    for c in head:
        n = (n << 6) | (c - 63)
    return n, rest


def to_graph6(X: Graph, header: bool = False) -> str:
    """graph6 string: upper triangle column by column (x(0,1), x(0,2), x(1,2), ...)."""
    out = bytearray(_encode_n(X.n))
    acc = 0
    k = 0
    for j in range(1, X.n):
        row = X.rows[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            k += 1
            if k == 6:
                out.append(acc + 63)
                acc = k = 0
    if k:
        out.append((acc << (6 - k)) + 63)
    s = out.decode("ascii")
    return (">>graph6<<" + s) if header else s


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii")
    if any(c < 63 or c > 126 for c in data):
        raise GraphError("graph6 characters must lie in 63..126")
    n, body = _decode_n(data)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need}")
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            c = body[pos // 6] - 63
            if c >> (5 - pos % 6) & 1:
                edges.append((i, j))
            pos += 1
    return Graph(n, edges)


# --- edge lists --------------------------------------------------------------

def to_edgelist(X: Graph) -> str:
    """'u v' per line, 0-based.  A leading '# n=N' line keeps isolated vertices."""
    lines = [f"# n={X.n}"] + [f"{u} {v}" for u, v in X.edges()]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line[1:].strip().startswith("n="):
                n = int(line[1:].strip()[2:])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: vertices must be integers") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex")
        edges.append((u, v))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(n, edges)


def read_graph(path: str | Path) -> Graph:
    """Read a graph file, sniffing graph6 vs edge list from the content."""
    text = Path(path).read_text()
    first = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    if first.startswith(">>graph6<<") or (first and " " not in first and not first.startswith("#")
                                          and len(text.split()) == 1):
        return from_graph6(first)
    return from_edgelist(text)


def write_graph(X: Graph, path: str | Path, fmt: str = "graph6") -> None:
    Path(path).write_text(format_graph(X, fmt))


def format_graph(X: Graph, fmt: str = "graph6") -> str:
    if fmt == "graph6":
        return to_graph6(X) + "\n"
    if fmt == "edgelist":
        return to_edgelist(X)
    raise ValueError(f"unknown graph format {fmt!r}")


# --- JSON for compact encodings ---------------------------------------------

def parse_zset(p: int, value) -> frozenset[int]:
    """A JSON residue set: a list whose items are ints or {"pm": [...]} (x and -x both)."""
    if isinstance(value, dict):
        value = [value]
    if not isinstance(value, list):
        raise GraphError(f"expected a list, got {value!r}")
    out = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, dict)):
            raise GraphError(f"bad set item {item!r}")
        if isinstance(item, dict):
            if set(item) != {"pm"} or not all(isinstance(x, int) for x in item["pm"]):
                raise GraphError(f"unknown set marker {item!r}")
            xs = item["pm"]
        else:
            xs = [item]
        for x in xs:
            if not 0 <= x < p:
                raise GraphError(f"residue {x} outside Z_{p}")
            out += [x, -x] if isinstance(item, dict) else [x]
    return _pm(p, out)


SYMBOL_KEYS = ([f"R{i}{i}" for i in range(6)] + [f"R{i}{(i + 1) % 6}" for i in range(6)]
               + [f"R{i}{(i + 2) % 6}" for i in range(6)] + [f"R{i}{i + 3}" for i in range(3)])


def symbol_from_json(p: int, obj: dict) -> SymbolMatrix:
    """Accepts either the full matrix ({"entries": 6x6}) or catalog keys "Rij"."""
    if "entries" in obj:
        return SymbolMatrix(p, tuple(tuple(parse_zset(p, R) for R in row)
                                     for row in obj["entries"]))
    given = {}
    for key, val in obj.items():
        if len(key) != 3 or key[0] != "R" or not key[1:].isdigit():
            raise GraphError(f"bad symbol key {key!r}")
        i, j = int(key[1]), int(key[2])
        if not (0 <= i < 6 and 0 <= j < 6):
            raise GraphError(f"bad symbol key {key!r}")
        given[(i, j)] = parse_zset(p, val)
    return SymbolMatrix.from_upper(p, given)


def symbol_to_json(sym: SymbolMatrix) -> dict:
    return {"p": sym.p, "entries": [[sorted(R) for R in row] for row in sym.entries]}


def frucht_from_json(obj: dict) -> FruchtSpec:
    n = obj["n"]
    inner = tuple(parse_zset(n, R) for R in obj["inner"])
    arcs = tuple((i, k, parse_zset(n, T)) for i, k, T in obj.get("arcs", []))
    return FruchtSpec(obj["m"], n, inner, arcs)


def frucht_to_json(spec: FruchtSpec) -> dict:
    return {"m": spec.m, "n": spec.n, "inner": [sorted(R) for R in spec.inner],
            "arcs": [[i, k, sorted(T)] for i, k, T in spec.arcs]}


def bicirculant_from_json(obj: dict) -> BicirculantSymbol:
    n = obj["n"]
    return BicirculantSymbol(n, parse_zset(n, obj["S"]), parse_zset(n, obj["R"]),
                             parse_zset(n, obj["T"]))


def bicirculant_to_json(sym: BicirculantSymbol) -> dict:
    return {"n": sym.n, "S": sorted(sym.S), "R": sorted(sym.R), "T": sorted(sym.T)}
