"""Cartan data from graphs, folding along admissible automorphisms, and type classification.

The bilinear form of a graph datum is i.i = 2 and i.j = -(number of edges
joining i and j).  Folding replaces vertices by automorphism orbits: the
diagonal entry of an orbit is twice its size, the off-diagonal entry is minus
the number of edges joining the two orbits.  Everything is exact integer
arithmetic; classification uses rational principal minors and kernels.
"""

from dataclasses import dataclass

from foldkit import ratlinalg
from foldkit.quiver import QuiverError, orbits as aut_orbits


@dataclass(frozen=True)
class CartanDatum:
    labels: tuple          # one label string per index (vertex id or orbit name)
    form: tuple            # symmetric integer matrix, tuple of tuples

    @property
    def rank(self):
        return len(self.labels)

    def check(self):
        n = self.rank
        assert len(self.form) == n and all(len(r) == n for r in self.form)
        for i in range(n):
            d = self.form[i][i]
            if d <= 0 or d % 2:
                raise QuiverError(f"Cartan axiom (a) fails at {self.labels[i]}: {d}")
            for j in range(n):
                if self.form[i][j] != self.form[j][i]:
                    raise QuiverError("form matrix is not symmetric")
                if i != j:
                    num = 2 * self.form[i][j]
                    if num > 0 or num % d:
                        raise QuiverError(
                            f"Cartan axiom (b) fails at ({self.labels[i]},{self.labels[j]})")
        return self

    @property
    def is_symmetric_datum(self):
        return all(self.form[i][i] == 2 for i in range(self.rank))

    def pairing(self, i, j):
        """Cartan integer 2(i.j)/(i.i)."""
        return 2 * self.form[i][j] // self.form[i][i]

    def key(self):
        return (self.labels, self.form)


@dataclass(frozen=True)
class GCM:
    matrix: tuple        # A[i][j] = 2(i.j)/(i.i)
    symmetrizer: tuple   # diagonal entries i.i/2


@dataclass(frozen=True)
class TypeClass:
    kind: str                  # "Finite" | "Affine" | "Indefinite" | product like "Finite x Affine"
    delta: tuple = None        # primitive positive null vector for Affine
    components: tuple = ()     # index sets of connected components

    @property
    def is_finite(self):
        return self.kind == "Finite"

    @property
    def is_affine(self):
        return self.kind == "Affine"


def cartan_from_graph(g):
    """Symmetric Cartan datum of a graph: diagonal 2, off-diagonal -#edges."""
    n = len(g.vertices)
    form = [[0] * n for _ in range(n)]
    for i in range(n):
        form[i][i] = 2
    for k in range(len(g.edge_ids)):
        u, v = g.out_[2 * k], g.in_[2 * k]
        form[u][v] -= 1
        form[v][u] -= 1
    return CartanDatum(tuple(g.vertices), tuple(tuple(r) for r in form)).check()


def orbit_label(g, orb):
    return "{" + ",".join(g.vertices[i] for i in orb) + "}"


def fold(g, a):
    """Cartan datum on the automorphism orbits of a graph."""
    vorbs, _ = aut_orbits(a, g)
    pos = {}
    for p, orb in enumerate(vorbs):
        for i in orb:
            pos[i] = p
    m = len(vorbs)
    form = [[0] * m for _ in range(m)]
    for p, orb in enumerate(vorbs):
        form[p][p] = 2 * len(orb)
    for k in range(len(g.edge_ids)):
        p, q = pos[g.out_[2 * k]], pos[g.in_[2 * k]]
        if p == q:
            raise QuiverError(
                f"edge {g.edge_ids[k]} joins two vertices of one orbit; automorphism "
                "is not admissible")
        form[p][q] -= 1
        form[q][p] -= 1
    labels = tuple(orbit_label(g, orb) for orb in vorbs)
    return CartanDatum(labels, tuple(tuple(r) for r in form)).check()


def gcm(c):
    """Generalized Cartan matrix and symmetrizer of a Cartan datum."""
    n = c.rank
    a = tuple(tuple(c.pairing(i, j) for j in range(n)) for i in range(n))
    sym = tuple(c.form[i][i] // 2 for i in range(n))
    # D.A must reproduce the form exactly
    for i in range(n):
        for j in range(n):
            assert sym[i] * a[i][j] == c.form[i][j]
    return GCM(a, sym)


def _components(form):
    n = len(form)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and form[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return comps


def _classify_irreducible(sub):
    if ratlinalg.is_positive_definite(sub):
        return "Finite", None
    if ratlinalg.is_positive_semidefinite(sub):
        ker = ratlinalg.kernel_basis(sub)
        if len(ker) == 1:
            delta = ratlinalg.primitive_integer_vector(ker[0])
            if all(x > 0 for x in delta):
                return "Affine", tuple(delta)
    return "Indefinite", None


def classify(c):
    """Finite / Affine / Indefinite, componentwise for reducible data."""
    comps = _components(c.form)
    verdicts = []
    deltas = {}
    for comp in comps:
        sub = [[c.form[i][j] for j in comp] for i in comp]
        kind, delta = _classify_irreducible(sub)
        verdicts.append(kind)
        if delta is not None:
            deltas[comp] = delta
    if len(comps) == 1:
        return TypeClass(verdicts[0], deltas.get(comps[0]), tuple(comps))
    return TypeClass(" x ".join(verdicts), None, tuple(comps))


def stable_subset(nu, a):
    """Orbit-indexed image of an automorphism-stable vector, or None."""
    vorbs = sorted({tuple(sorted(_orbit_through(a.vperm, i))) for i in range(len(a.vperm))},
                   key=lambda o: o[0])
    out = []
    for orb in vorbs:
        vals = {nu[i] for i in orb}
        if len(vals) != 1:
            return None
        out.append(vals.pop())
    return tuple(out)


def _orbit_through(perm, i):
    orb = [i]
    cur = perm[i]
    while cur != i:
        orb.append(cur)
        cur = perm[cur]
    return orb


def unfold_vector(nu_folded, a, g):
    """Vertex-indexed vector taking the orbit value on each orbit member."""
    vorbs, _ = aut_orbits(a, g)
    out = [0] * len(g.vertices)
    for val, orb in zip(nu_folded, vorbs):
        for i in orb:
            out[i] = val
    return tuple(out)


def datum_of_quiver(q):
    """Folded datum when the quiver has an automorphism, the graph datum otherwise."""
    if q.automorphism is not None:
        return fold(q.graph, q.automorphism)
    return cartan_from_graph(q.graph)
