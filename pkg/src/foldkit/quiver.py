"""Finite graphs with half-edge involutions, orientations, and admissible automorphisms.

A graph is stored half-edge style: every declared edge ``e: u -- v`` becomes a
pair of half-edges, index ``2k`` running u -> v and its partner ``2k+1``
running v -> u, with ``bar(h) = h ^ 1``.  Vertex and edge ids are the tokens
from the input file; all canonical orderings follow declaration order.

File format (line oriented, '#' starts a comment, ids are alphanumeric):

    vertex <id> [<id> ...]
    edge <eid> <u> <v>
    orient <eid> <u> <v>
    aut (<v1> <v2> ...)(<...>)
    autedge <eid>-><eid>
    affine_node <id>
"""

import re
from dataclasses import dataclass
from math import lcm


class QuiverError(Exception):
    pass


class QuiverParseError(QuiverError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + loc)


_ID_RE = re.compile(r"^[A-Za-z0-9]+$")


class Graph:
    """Vertices, half-edges, endpoint maps, and the bar involution."""

    def __init__(self, vertices, edge_ids, edge_endpoints):
        self.vertices = tuple(vertices)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.edge_ids = tuple(edge_ids)
        self.eindex = {e: i for i, e in enumerate(self.edge_ids)}
        # half-edge h: out_[h] -> in_[h], vertex indices
        self.out_ = []
        self.in_ = []
        for (u, v) in edge_endpoints:
            if u == v:
                raise QuiverError(f"loop edge at vertex {self.vertices[u]}")
            self.out_ += [u, v]
            self.in_ += [v, u]
        self.out_ = tuple(self.out_)
        self.in_ = tuple(self.in_)
        self.n_half = len(self.out_)

    @staticmethod
    def bar(h):
        return h ^ 1

    def halves(self):
        return range(self.n_half)

    def edge_of(self, h):
        return h // 2

    def half_name(self, h):
        eid = self.edge_ids[h // 2]
        return eid if h % 2 == 0 else eid + "~"

    def edges_between(self, i, j):
        """Edge indices whose endpoint pair is {i, j}."""
        return [k for k in range(len(self.edge_ids))
                if {self.out_[2 * k], self.in_[2 * k]} == {i, j}]

    def check(self):
        for h in self.halves():
            assert self.in_[self.bar(h)] == self.out_[h]
            assert self.out_[self.bar(h)] == self.in_[h]
            assert self.out_[h] != self.in_[h]
            assert self.bar(self.bar(h)) == h and self.bar(h) != h


@dataclass(frozen=True)
class Orientation:
    halves: frozenset

    def contains(self, h):
        return h in self.halves

    def epsilon(self, h):
        return 1 if h in self.halves else -1


@dataclass(frozen=True)
class AdmissibleAutomorphism:
    vperm: tuple   # vertex index -> vertex index
    hperm: tuple   # half-edge index -> half-edge index
    order: int

    @property
    def is_trivial(self):
        return all(self.vperm[i] == i for i in range(len(self.vperm)))


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: str


class Quiver:
    def __init__(self, graph, orientation, automorphism=None, affine_node=None):
        self.graph = graph
        self.orientation = orientation
        self.automorphism = automorphism
        self.affine_node = affine_node  # vertex index or None

    @property
    def orientation_compatible(self):
        """True when the automorphism maps the orientation to itself."""
        if self.automorphism is None:
            return True
        om = self.orientation.halves
        return all(self.automorphism.hperm[h] in om for h in om)


def _perm_order(perm):
    n = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = perm[cur]
            length += 1
        n = lcm(n, length)
    return n


def _parse_cycles(text, lineno):
    cycles = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise QuiverParseError("expected '(' in cycle notation", lineno, pos)
        end = text.find(")", pos)
        if end < 0:
            raise QuiverParseError("unclosed cycle", lineno, pos)
        body = text[pos + 1:end].replace(",", " ").split()
        if not body:
            raise QuiverParseError("empty cycle", lineno, pos)
        cycles.append(body)
        pos = end + 1
    return cycles


def parse_quiver(text):
    """Parse quiver file contents into a validated Quiver."""
    vertices = []
    vset = {}
    edges = []          # (eid, u_id, v_id, lineno)
    orients = []        # (eid, u_id, v_id, lineno)
    aut_cycles = None
    aut_line = None
    autedges = []       # (eid1, eid2, lineno)
    affine_node = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        kw = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if kw == "vertex":
            ids = rest.split()
            if not ids:
                raise QuiverParseError("vertex line needs at least one id", lineno)
            for vid in ids:
                if not _ID_RE.match(vid):
                    raise QuiverParseError(f"bad vertex id {vid!r}", lineno, raw.find(vid))
                if vid in vset:
                    raise QuiverParseError(f"duplicate vertex id {vid!r}", lineno)
                vset[vid] = len(vertices)
                vertices.append(vid)
        elif kw == "edge":
            toks = rest.split()
            if len(toks) != 3:
                raise QuiverParseError("edge line needs: edge <eid> <u> <v>", lineno)
            edges.append((toks[0], toks[1], toks[2], lineno))
        elif kw == "orient":
            toks = rest.split()
            if len(toks) != 3:
                raise QuiverParseError("orient line needs: orient <eid> <u> <v>", lineno)
            orients.append((toks[0], toks[1], toks[2], lineno))
        elif kw == "aut":
            if aut_cycles is not None:
                raise QuiverParseError("only one aut line allowed", lineno)
            aut_cycles = _parse_cycles(rest, lineno)
            aut_line = lineno
        elif kw == "autedge":
            m = re.match(r"^(\w+)\s*->\s*(\w+)$", rest)
            if not m:
                raise QuiverParseError("autedge line needs: autedge <eid>-><eid>", lineno)
            autedges.append((m.group(1), m.group(2), lineno))
        elif kw == "affine_node":
            toks = rest.split()
            if len(toks) != 1:
                raise QuiverParseError("affine_node needs exactly one id", lineno)
            affine_node = (toks[0], lineno)
        else:
            raise QuiverParseError(f"unknown keyword {kw!r}", lineno, raw.find(kw))

    eids = []
    eindex = {}
    endpoints = []
    for eid, u, v, lineno in edges:
        if not _ID_RE.match(eid):
            raise QuiverParseError(f"bad edge id {eid!r}", lineno)
        if eid in eindex:
            raise QuiverParseError(f"duplicate edge id {eid!r}", lineno)
        if u not in vset:
            raise QuiverParseError(f"edge {eid}: undeclared vertex {u!r}", lineno)
        if v not in vset:
            raise QuiverParseError(f"edge {eid}: undeclared vertex {v!r}", lineno)
        if u == v:
            raise QuiverParseError(f"edge {eid} is a loop at {u!r}", lineno)
        eindex[eid] = len(eids)
        eids.append(eid)
        endpoints.append((vset[u], vset[v]))

    graph = Graph(vertices, eids, endpoints)
    graph.check()

    aut = None
    if aut_cycles is not None:
        aut = _build_automorphism(graph, aut_cycles, autedges, aut_line)
    elif autedges:
        raise QuiverParseError("autedge lines require an aut line", autedges[0][2])

    preset = []
    seen_edges = set()
    for eid, u, v, lineno in orients:
        if eid not in eindex:
            raise QuiverParseError(f"orient: unknown edge {eid!r}", lineno)
        k = eindex[eid]
        if eid in seen_edges:
            raise QuiverParseError(f"orient: edge {eid!r} oriented twice", lineno)
        seen_edges.add(eid)
        if u not in vset or v not in vset:
            raise QuiverParseError(f"orient {eid}: undeclared vertex", lineno)
        ui, vi = vset[u], vset[v]
        if (graph.out_[2 * k], graph.in_[2 * k]) == (ui, vi):
            preset.append(2 * k)
        elif (graph.out_[2 * k + 1], graph.in_[2 * k + 1]) == (ui, vi):
            preset.append(2 * k + 1)
        else:
            raise QuiverParseError(f"orient {eid}: endpoints do not match the edge", lineno)

    try:
        orientation = compatible_orientation(graph, aut, preset=preset)
    except QuiverError:
        # an inadmissible candidate (edge inside an orbit) cannot be closed
        # a-stably; keep the quiver so validate_admissible can report it
        orientation = compatible_orientation(graph, None, preset=preset)

    anode = None
    if affine_node is not None:
        aid, lineno = affine_node
        if aid not in vset:
            raise QuiverParseError(f"affine_node: undeclared vertex {aid!r}", lineno)
        anode = vset[aid]

    return Quiver(graph, orientation, aut, anode)


def _build_automorphism(graph, cycles, autedges, lineno):
    n = len(graph.vertices)
    vperm = list(range(n))
    moved = set()
    for cyc in cycles:
        for vid in cyc:
            if vid not in graph.vindex:
                raise QuiverParseError(f"aut: undeclared vertex {vid!r}", lineno)
            if vid in moved:
                raise QuiverParseError(f"aut: vertex {vid!r} in two cycles", lineno)
            moved.add(vid)
        idx = [graph.vindex[v] for v in cyc]
        for p, i in enumerate(idx):
            vperm[i] = idx[(p + 1) % len(idx)]
    if sorted(vperm) != list(range(n)):
        raise QuiverParseError("aut: vertex map is not a permutation", lineno)

    explicit = {}
    for e1, e2, ln in autedges:
        if e1 not in graph.eindex or e2 not in graph.eindex:
            raise QuiverParseError(f"autedge: unknown edge in {e1!r}->{e2!r}", ln)
        if e1 in explicit:
            raise QuiverParseError(f"autedge: edge {e1!r} mapped twice", ln)
        explicit[e1] = (graph.eindex[e2], ln)

    n_edges = len(graph.edge_ids)
    eperm = [None] * n_edges
    for k in range(n_edges):
        u, v = graph.out_[2 * k], graph.in_[2 * k]
        tu, tv = vperm[u], vperm[v]
        eid = graph.edge_ids[k]
        if eid in explicit:
            target, ln = explicit[eid]
            tpair = {graph.out_[2 * target], graph.in_[2 * target]}
            if tpair != {tu, tv}:
                raise QuiverParseError(
                    f"autedge {eid!r}: target endpoints do not match the vertex map", ln)
            eperm[k] = target
        else:
            candidates = graph.edges_between(tu, tv)
            if not candidates:
                raise QuiverParseError(
                    f"aut: no edge joins {graph.vertices[tu]!r} and {graph.vertices[tv]!r} "
                    f"(image of edge {eid!r}); not a graph automorphism", lineno)
            if len(candidates) > 1:
                raise QuiverParseError(
                    f"aut: image of edge {eid!r} is ambiguous (multi-edge); "
                    "add explicit autedge lines", lineno)
            eperm[k] = candidates[0]
    if sorted(eperm) != list(range(n_edges)):
        raise QuiverParseError("aut: edge map is not a permutation", lineno)

    hperm = [0] * graph.n_half
    for k in range(n_edges):
        t = eperm[k]
        u = graph.out_[2 * k]
        # direction-preserving: image of the u->v half starts at vperm[u]
        if graph.out_[2 * t] == vperm[u]:
            hperm[2 * k], hperm[2 * k + 1] = 2 * t, 2 * t + 1
        else:
            hperm[2 * k], hperm[2 * k + 1] = 2 * t + 1, 2 * t

    order = lcm(_perm_order(vperm), _perm_order(hperm)) if n or graph.n_half else 1
    return AdmissibleAutomorphism(tuple(vperm), tuple(hperm), order)


def validate_admissible(q):
    """All admissibility violations of the quiver's automorphism, empty when admissible."""
    a = q.automorphism
    if a is None:
        raise QuiverError("quiver has no automorphism to validate")
    g = q.graph
    out = []
    if sorted(a.vperm) != list(range(len(g.vertices))):
        out.append(Violation("vertex-permutation", str(a.vperm)))
        return out
    if sorted(a.hperm) != list(range(g.n_half)):
        out.append(Violation("halfedge-permutation", str(a.hperm)))
        return out
    for h in g.halves():
        if a.hperm[g.bar(h)] != g.bar(a.hperm[h]):
            out.append(Violation("bar-compatibility", f"half-edge {g.half_name(h)}"))
        if g.out_[a.hperm[h]] != a.vperm[g.out_[h]] or g.in_[a.hperm[h]] != a.vperm[g.in_[h]]:
            out.append(Violation("endpoint-compatibility", f"half-edge {g.half_name(h)}"))
    vorbs, _ = orbits(a, g)
    orbit_of = {}
    for orb in vorbs:
        for i in orb:
            orbit_of[i] = orb
    for k in range(len(g.edge_ids)):
        u, v = g.out_[2 * k], g.in_[2 * k]
        if orbit_of[u] is orbit_of[v]:
            out.append(Violation("edge-inside-orbit", f"edge {g.edge_ids[k]}"))
    real_order = lcm(_perm_order(list(a.vperm)), _perm_order(list(a.hperm)))
    if real_order != a.order:
        out.append(Violation("order", f"declared {a.order}, actual {real_order}"))
    return out


def orbits(a, graph):
    """Vertex and half-edge orbit partitions.

    Each orbit is sorted, and the orbit list is ordered by least member
    index, i.e. by declaration order.
    """
    def parts(perm):
        seen = set()
        res = []
        for start in range(len(perm)):
            if start in seen:
                continue
            orb = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                orb.append(cur)
                cur = perm[cur]
            res.append(tuple(sorted(orb)))
        res.sort(key=lambda o: o[0])
        return tuple(res)

    return parts(a.vperm), parts(a.hperm)


def vertex_orbit_index(a, graph):
    """Map vertex index -> orbit position in the canonical orbit list."""
    vorbs, _ = orbits(a, graph)
    m = {}
    for pos, orb in enumerate(vorbs):
        for i in orb:
            m[i] = pos
    return vorbs, m


def compatible_orientation(graph, a=None, preset=()):
    """Complete an orientation, a-stably when an automorphism is given.

    Picks the least-index unoriented half-edge, orients it, closes under the
    automorphism, and repeats.  Preset half-edges seed the choice; if the
    seeds cannot be closed a-stably the plain least-index completion is used
    (the result is then not a-compatible, which Quiver reports).
    """
    chosen = set()
    excluded = set()

    def close(h, follow_aut):
        queue = [h]
        while queue:
            x = queue.pop()
            if x in chosen:
                continue
            if x in excluded:
                return False
            chosen.add(x)
            excluded.add(graph.bar(x))
            if follow_aut and a is not None:
                queue.append(a.hperm[x])
        return True

    for h in preset:
        if not close(h, follow_aut=True):
            # declared orientation is not a-stabilizable; restart without closure
            chosen.clear()
            excluded.clear()
            for p in preset:
                if p in excluded:
                    raise QuiverError(
                        f"conflicting orient lines: {graph.half_name(p)} and its partner")
                chosen.add(p)
                excluded.add(graph.bar(p))
            a_for_completion = None
            break
    else:
        a_for_completion = a

    for h in graph.halves():
        if h not in chosen and h not in excluded:
            if not close(h, follow_aut=a_for_completion is not None):
                raise QuiverError(
                    f"internal orientation conflict at {graph.half_name(h)}; "
                    "automorphism is not admissible")

    assert len(chosen) * 2 == graph.n_half
    return Orientation(frozenset(chosen))
