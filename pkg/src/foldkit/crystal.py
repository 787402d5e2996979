"""Highest-weight crystals in the piecewise-linear path model.

Nodes are piecewise-linear paths from the origin to lambda - nu, generated
from the straight highest path by the lowering operators f_j.  Paths live in
the formal space Q.lambda + Q[simple roots]; a corner is stored as an integer
vector (c, r_1, ..., r_rank) over one common positive denominator per path,
so every comparison and every split point is exact.  The only data the
operators consume are the pairings <j, x> = c <j,lambda> + (A r)_j, which is
why one implementation serves symmetric, folded, and affine data alike.

A diagram automorphism acts by relabeling operators j -> a(j); the action on
nodes is rebuilt by replaying generation parents through the relabeled edges
and is checked against the intertwining law on every edge.
"""

from math import gcd

from foldkit.multiplicity import ctx_for
from foldkit.quiver import QuiverError


class CrystalNode:
    __slots__ = ("den", "corners", "nu", "eps", "phi", "index", "parent", "parent_label")

    def __init__(self, den, corners, nu, eps, phi):
        self.den = den
        self.corners = corners
        self.nu = nu
        self.eps = eps
        self.phi = phi
        self.index = None
        self.parent = None
        self.parent_label = None

    @property
    def signature(self):
        return (self.den, self.corners)

    @property
    def height(self):
        return sum(self.nu)

    def weight_pairings(self, graph):
        A = graph.A
        lam = graph.lam
        nu = self.nu
        r = len(lam)
        return tuple(lam[j] - sum(A[j][i] * nu[i] for i in range(r)) for j in range(r))

    def __repr__(self):
        return f"CrystalNode(nu={self.nu}, eps={self.eps}, phi={self.phi})"


def _canonical(den, corners):
    """Merge adjacent collinear segments, then divide out the content.

    Merging first matters: dropping a corner can expose a common factor.
    """
    dim = len(corners[0])
    out = [corners[0]]
    for point in corners[1:]:
        while len(out) >= 2:
            a = out[-2]
            b = out[-1]
            piv = -1
            for t in range(dim):
                if b[t] != a[t]:
                    piv = t
                    break
            if piv < 0:
                out.pop()
                continue
            d1p = b[piv] - a[piv]
            d2p = point[piv] - b[piv]
            if d1p * d2p <= 0:
                break
            for t in range(dim):
                if (b[t] - a[t]) * d2p != (point[t] - b[t]) * d1p:
                    break
            else:
                out.pop()
                continue
            break
        last = out[-1]
        for t in range(dim):
            if point[t] != last[t]:
                out.append(point)
                break
    g = den
    for c in out:
        for x in c:
            if x:
                g = gcd(g, x if x > 0 else -x)
                if g == 1:
                    return den, tuple(out)
    den //= g
    return den, tuple(tuple(x // g for x in c) for c in out)


class _PathCtx:
    def __init__(self, datum, lam):
        self.datum = datum
        self.rank = datum.rank
        self.lam = tuple(lam)
        if any(x < 0 for x in self.lam):
            raise QuiverError(f"highest weight must be dominant, got {self.lam}")
        self.A = ctx_for(datum).A
        # sparse rows: pairing of corner x with j needs only the nonzero entries
        self.rows = tuple(tuple((1 + i, a) for i, a in enumerate(self.A[j]) if a)
                          for j in range(self.rank))

    def hvals(self, corners, j):
        """Pairings <j, corner> times the path denominator."""
        lj = self.lam[j]
        row = self.rows[j]
        out = []
        for c in corners:
            h = c[0] * lj
            for idx, a in row:
                h += a * c[idx]
            out.append(h)
        return out

    def finish_node(self, den, corners):
        """Node stats for an already canonical path."""
        end = corners[-1]
        assert end[0] == den, "path endpoint must sit at coefficient 1 of lambda"
        nu = []
        for x in end[1:]:
            q, rem = divmod(-x, den)
            assert rem == 0, "endpoint is not an integral weight"
            nu.append(q)
        nu = tuple(nu)
        eps = []
        phi = []
        for j in range(self.rank):
            hs = self.hvals(corners, j)
            m = min(hs)
            q, rem = divmod(-m, den)
            assert rem == 0, "string minimum is not an integer"
            eps.append(q)
            q1, rem1 = divmod(hs[-1] - m, den)
            assert rem1 == 0
            phi.append(q1)
        return CrystalNode(den, corners, nu, tuple(eps), tuple(phi))

    def make_node(self, den, corners):
        den, corners = _canonical(den, corners)
        return self.finish_node(den, corners)

    def highest_node(self):
        zero = (0,) * (self.rank + 1)
        top = (1,) + (0,) * self.rank
        return self.make_node(1, (zero, top))


def _lower_raw(ctx, node, j):
    """Canonical (den, corners) of f_j applied to the node, phi[j] > 0 assumed."""
    den = node.den
    corners = list(node.corners)
    hs = ctx.hvals(corners, j)
    m = min(hs)
    a = max(k for k, h in enumerate(hs) if h == m)
    target = m + den
    k = a
    while hs[k + 1] < target:
        k += 1
    if hs[k + 1] != target:
        diff = hs[k + 1] - hs[k]
        up = target - hs[k]
        y = tuple(corners[k][t] * diff + up * (corners[k + 1][t] - corners[k][t])
                  for t in range(len(corners[k])))
        corners = [tuple(x * diff for x in c) for c in corners]
        corners.insert(k + 1, y)
        hs = [h * diff for h in hs]
        hs.insert(k + 1, target * diff)
        den *= diff
        m *= diff
    b = k + 1
    rj = 1 + j
    out = []
    for idx, c in enumerate(corners):
        if idx <= a:
            out.append(c)
        elif idx <= b:
            drop = hs[idx] - m
            out.append(c[:rj] + (c[rj] - drop,) + c[rj + 1:])
        else:
            out.append(c[:rj] + (c[rj] - den,) + c[rj + 1:])
    return _canonical(den, tuple(out))


def _apply_f_raw(ctx, node, j):
    if node.phi[j] < 1:
        return None
    den, corners = _lower_raw(ctx, node, j)
    return ctx.finish_node(den, corners)


def _apply_e_raw(ctx, node, j):
    if node.eps[j] < 1:
        return None
    den = node.den
    corners = list(node.corners)
    hs = ctx.hvals(corners, j)
    m = min(hs)
    b = min(k for k, h in enumerate(hs) if h == m)
    target = m + den
    k = b - 1
    while hs[k] < target:
        k -= 1
    if hs[k] != target:
        diff = hs[k] - hs[k + 1]
        down = hs[k] - target
        y = tuple(corners[k][t] * diff + down * (corners[k + 1][t] - corners[k][t])
                  for t in range(len(corners[k])))
        corners = [tuple(x * diff for x in c) for c in corners]
        corners.insert(k + 1, y)
        hs = [h * diff for h in hs]
        hs.insert(k + 1, target * diff)
        den *= diff
        m *= diff
        target = m + den
        b += 1
        a = k + 1
    else:
        a = k
    rj = 1 + j
    out = []
    for idx, c in enumerate(corners):
        if idx <= a:
            out.append(c)
        elif idx <= b:
            drop = hs[idx] - target
            out.append(c[:rj] + (c[rj] - drop,) + c[rj + 1:])
        else:
            out.append(c[:rj] + (c[rj] + den,) + c[rj + 1:])
    return ctx.make_node(den, tuple(out))


class CrystalGraph:
    """Layered crystal of a highest-weight module, truncated by height.

    nodes are sorted by (height, path signature); edges[(i, j)] is the index
    of f_j applied to node i.  When a box is given, only nodes with nu inside
    the coordinate box are kept; censuses are then valid exactly for nu in
    the box.
    """

    def __init__(self, datum, lam, depth, box, ctx, nodes, edges):
        self.datum = datum
        self.lam = tuple(lam)
        self.depth = depth
        self.box = box
        self._ctx = ctx
        self.A = ctx.A
        self.nodes = nodes
        self.edges = edges
        self.redges = {(dst, j): src for (src, j), dst in edges.items()}
        self._census = {}
        for node in nodes:
            self._census[node.nu] = self._census.get(node.nu, 0) + 1

    def _check_window(self, nu):
        if sum(nu) > self.depth:
            raise QuiverError(f"height {sum(nu)} exceeds depth {self.depth}")
        if self.box is not None and any(x > b for x, b in zip(nu, self.box)):
            raise QuiverError(f"{nu} is outside the generation box {self.box}")

    def census(self, nu):
        nu = tuple(nu)
        self._check_window(nu)
        return self._census.get(nu, 0)

    def layer_sizes(self):
        sizes = {}
        for node in self.nodes:
            sizes[node.height] = sizes.get(node.height, 0) + 1
        return sizes


def generate(datum, lam, depth, box=None):
    """Breadth-first closure of the highest path under the lowering operators.

    Children are canonicalized and deduplicated before any node statistics
    are computed; duplicates cost one path operation only.
    """
    if depth < 0:
        raise QuiverError("depth must be nonnegative")
    ctx = _PathCtx(datum, lam)
    r = datum.rank
    if box is not None:
        box = tuple(box)
        assert len(box) == r
    top = ctx.highest_node()
    layers = [{top.signature: top}]
    edge_list = []
    for _ in range(depth):
        layer = layers[-1]
        nxt = {}
        for sig in sorted(layer):
            node = layer[sig]
            for j in range(r):
                if node.phi[j] < 1:
                    continue
                if box is not None and node.nu[j] + 1 > box[j]:
                    continue
                csig = _lower_raw(ctx, node, j)
                if csig not in nxt:
                    child = ctx.finish_node(*csig)
                    child.parent = sig
                    child.parent_label = j
                    nxt[csig] = child
                edge_list.append((sig, j, csig))
        if not nxt:
            break
        layers.append(nxt)

    nodes = []
    index_of = {}
    for layer in layers:
        for sig in sorted(layer):
            node = layer[sig]
            node.index = len(nodes)
            index_of[sig] = node.index
            nodes.append(node)
    for node in nodes:
        if node.parent is not None:
            node.parent = index_of[node.parent]
    edges = {}
    for sig, j, csig in edge_list:
        edges[(index_of[sig], j)] = index_of[csig]
    return CrystalGraph(datum, lam, depth, box, ctx, nodes, edges)


def apply_f(graph, node, j):
    """f_j as a standalone map; the result is not registered in the graph."""
    return _apply_f_raw(graph._ctx, node, j)


def apply_e(graph, node, j):
    return _apply_e_raw(graph._ctx, node, j)


def aut_action(graph, vperm):
    """Node permutation induced by a diagram automorphism.

    Built by replaying each node's generation step through the relabeled
    edges, then checked against the intertwining law sigma(f_j x) =
    f_{a(j)} sigma(x) on every edge of the graph.
    """
    lam = graph.lam
    if any(lam[j] != lam[vperm[j]] for j in range(len(lam))):
        raise QuiverError(f"highest weight {lam} is not stable under the automorphism")
    n = len(graph.nodes)
    sigma = [None] * n
    if n:
        sigma[0] = 0
    for i in range(1, n):
        node = graph.nodes[i]
        p = sigma[node.parent]
        img = graph.edges.get((p, vperm[node.parent_label]))
        if img is None:
            raise QuiverError("automorphism action left the generated crystal; "
                              "the graph is inconsistent")
        sigma[i] = img
    if sorted(sigma) != list(range(n)):
        raise QuiverError("automorphism action is not a permutation of the crystal")
    for (src, j), dst in graph.edges.items():
        if graph.edges.get((sigma[src], vperm[j])) != sigma[dst]:
            raise QuiverError(f"intertwining broken on edge ({src},{j})")
    for i in range(n):
        nu = graph.nodes[i].nu
        img_nu = graph.nodes[sigma[i]].nu
        if any(img_nu[vperm[t]] != nu[t] for t in range(len(nu))):
            raise QuiverError("automorphism action does not permute weights correctly")
    return tuple(sigma)


def fixed_census_table(graph, sigma):
    """One pass over the crystal: weight -> number of sigma-fixed nodes."""
    table = {}
    for node in graph.nodes:
        if sigma[node.index] == node.index:
            table[node.nu] = table.get(node.nu, 0) + 1
    return table


def fixed_census(graph, sigma, nu, orbit_list=None, _table=None):
    """Number of sigma-fixed nodes of weight lambda - nu.

    nu is vertex-indexed; pass orbit_list to give nu orbit-indexed instead,
    in which case it is unfolded to the common value on each orbit.
    """
    if orbit_list is not None:
        full = [0] * len(graph.lam)
        for val, orb in zip(nu, orbit_list):
            for i in orb:
                full[i] = val
        nu = tuple(full)
    else:
        nu = tuple(nu)
    graph._check_window(nu)
    if _table is not None:
        return _table.get(nu, 0)
    count = 0
    for node in graph.nodes:
        if node.nu == nu and sigma[node.index] == node.index:
            count += 1
    return count
