"""Independent revalidation of emitted certificates.

These checks read only the coloring and the certificate JSON; they never
call the solvers that produced the certificate.
"""

from __future__ import annotations

from ramcover.colorings import EdgeColoring

PIECE_KINDS = {"component", "path", "cycle", "h-copy"}
DISJOINT_KINDS = {"path", "cycle", "h-copy"}


def _vertex_list(c: EdgeColoring, raw, where: str, problems: list[str]) -> list[int] | None:
    if not isinstance(raw, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
        problems.append(f"{where}: vertices must be a list of integers")
        return None
    bad = [v for v in raw if not 1 <= v <= c.n]
    if bad:
        problems.append(f"{where}: vertices {bad} outside 1..{c.n}")
        return None
    if len(set(raw)) != len(raw):
        problems.append(f"{where}: repeated vertex")
        return None
    return raw


def check_matching_certificate(c: EdgeColoring, cert: dict) -> list[str]:
    problems: list[str] = []
    for key in ("size", "colors_used", "edges", "missing_colors"):
        if key not in cert:
            problems.append(f"certificate is missing {key!r}")
    if problems:
        return problems
    used = set(cert["colors_used"])
    missing = set(cert["missing_colors"])
    for col in sorted(used | missing):
        if not isinstance(col, int) or not 1 <= col <= c.t:
            problems.append(f"color {col!r} outside 1..{c.t}")
    seen: set[int] = set()
    present: set[int] = set()
    for i, e in enumerate(cert["edges"]):
        pair = _vertex_list(c, e, f"edge {i}", problems)
        if pair is None:
            continue
        if len(pair) != 2:
            problems.append(f"edge {i} must have two endpoints")
            continue
        u, v = pair
        if seen & {u, v}:
            problems.append(f"edge ({u},{v}) shares a vertex with an earlier edge")
        seen |= {u, v}
        col = c.color(u, v)
        present.add(col)
        if col not in used:
            problems.append(f"edge ({u},{v}) has color {col}, not in colors_used {sorted(used)}")
        if col in missing:
            problems.append(f"edge ({u},{v}) has color {col}, listed as missing")
    if cert["size"] != len(cert["edges"]):
        problems.append(f"size {cert['size']} != number of edges {len(cert['edges'])}")
    comp = cert.get("component")
    if comp is not None and not problems:
        verts = _vertex_list(c, comp, "component", problems)
        if verts is not None:
            if len(used) != 1:
                problems.append("a connected matching certificate must name exactly one color")
            else:
                (col,) = used
                if not seen <= set(verts):
                    problems.append("matching edges leave the stated component")
                if verts and not _connected(c, col, verts):
                    problems.append(f"component vertices are not connected in color {col}")
    return problems


def _connected(c: EdgeColoring, col: int, verts: list[int]) -> bool:
    inside = set(verts)
    reached = {verts[0]}
    stack = [verts[0]]
    while stack:
        x = stack.pop()
        for y in inside - reached:
            if c.color(x, y) == col:
                reached.add(y)
                stack.append(y)
    return reached == inside


def check_cover_certificate(c: EdgeColoring, cert: dict) -> list[str]:
    problems: list[str] = []
    if "pieces" not in cert or "covered" not in cert:
        return ["certificate needs 'covered' and 'pieces'"]
    h_edges = None
    if "h" in cert:
        h_edges = [tuple(e) for e in cert["h"].get("edges", [])]
    union: set[int] = set()
    disjoint_seen: set[int] = set()
    for i, piece in enumerate(cert["pieces"]):
        where = f"piece {i}"
        kind, col = piece.get("kind"), piece.get("color")
        if kind not in PIECE_KINDS:
            problems.append(f"{where}: unknown kind {kind!r}")
            continue
        if not isinstance(col, int) or not 1 <= col <= c.t:
            problems.append(f"{where}: color {col!r} outside 1..{c.t}")
            continue
        verts = _vertex_list(c, piece.get("vertices"), where, problems)
        if verts is None:
            continue
        if kind in DISJOINT_KINDS:
            if disjoint_seen & set(verts):
                problems.append(f"{where}: overlaps an earlier piece")
            disjoint_seen |= set(verts)
        union |= set(verts)
        if kind == "path" or (kind == "cycle" and len(verts) <= 2):
            steps = list(zip(verts, verts[1:]))
        elif kind == "cycle":
            steps = list(zip(verts, verts[1:] + verts[:1]))
        elif kind == "component":
            if verts and not _connected(c, col, verts):
                problems.append(f"{where}: not connected in color {col}")
            steps = []
        else:
            if h_edges is None:
                problems.append(f"{where}: h-copy pieces need the certificate's 'h' graph")
                continue
            if len(verts) != cert["h"].get("n"):
                problems.append(f"{where}: expected {cert['h'].get('n')} vertices for H")
                continue
            steps = [(verts[a - 1], verts[b - 1]) for a, b in h_edges]
        for a, b in steps:
            if c.color(a, b) != col:
                problems.append(f"{where}: edge ({a},{b}) has color {c.color(a, b)}, expected {col}")
    if cert["covered"] != len(union):
        problems.append(f"covered {cert['covered']} != {len(union)} distinct vertices in pieces")
    return problems


def check_certificate(c: EdgeColoring, cert: dict) -> list[str]:
    if "pieces" in cert:
        return check_cover_certificate(c, cert)
    if "edges" in cert:
        return check_matching_certificate(c, cert)
    return ["unrecognized certificate: expected 'edges' (matching) or 'pieces' (cover)"]
