"""Exact linear algebra on quiver representations.

A representation assigns to every half-edge h a rational matrix B_h of shape
dim V_in(h) x dim V_out(h); framed representations add i_k : W_k -> V_k and
j_k : V_k -> W_k per vertex.  The symplectic form, the moment map, the
nilpotency test, corank counts, the automorphism action, and the Lagrangian
membership predicates are all exact, so the randomized property suite checks
strict equalities.
"""

import random
from fractions import Fraction

from foldkit import ratlinalg
from foldkit.quiver import QuiverError

NILPOTENT_ENTRY_NUMERATORS = range(-2, 3)
NILPOTENT_ENTRY_DENOMINATORS = (1, 2, 3)


class QuiverRep:
    """Matrices B_h per half-edge, optional framing maps i_k, j_k."""

    def __init__(self, graph, dims, B=None, wdims=None, imaps=None, jmaps=None):
        self.graph = graph
        self.dims = tuple(dims)
        if len(self.dims) != len(graph.vertices) or any(d < 0 for d in self.dims):
            raise QuiverError(f"bad dimension vector {dims}")
        self.B = {}
        for h in graph.halves():
            rows, cols = self.dims[graph.in_[h]], self.dims[graph.out_[h]]
            m = (B or {}).get(h)
            if m is None:
                m = [[Fraction(0)] * cols for _ in range(rows)]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise QuiverError(f"matrix for half-edge {graph.half_name(h)} has wrong "
                                  f"shape, want {rows}x{cols}")
            self.B[h] = [[Fraction(x) for x in r] for r in m]
        self.wdims = tuple(wdims) if wdims is not None else None
        self.imaps = None
        self.jmaps = None
        if self.wdims is not None:
            self.imaps = {}
            self.jmaps = {}
            for k in range(len(graph.vertices)):
                vi, wi = self.dims[k], self.wdims[k]
                im = (imaps or {}).get(k) or [[Fraction(0)] * wi for _ in range(vi)]
                jm = (jmaps or {}).get(k) or [[Fraction(0)] * vi for _ in range(wi)]
                if len(im) != vi or any(len(r) != wi for r in im):
                    raise QuiverError(f"i map at vertex {graph.vertices[k]} has wrong shape")
                if len(jm) != wi or any(len(r) != vi for r in jm):
                    raise QuiverError(f"j map at vertex {graph.vertices[k]} has wrong shape")
                self.imaps[k] = [[Fraction(x) for x in r] for r in im]
                self.jmaps[k] = [[Fraction(x) for x in r] for r in jm]

    @property
    def total_dim(self):
        return sum(self.dims)


def _tr(m):
    return sum(m[i][i] for i in range(len(m)))


def symplectic_form(quiver, rep, rep2):
    """omega(B, B') = sum over half-edges of epsilon(h) tr(B_hbar B'_h)."""
    g = quiver.graph
    if rep.dims != rep2.dims:
        raise QuiverError("symplectic form needs equal dimension vectors")
    total = Fraction(0)
    for h in g.halves():
        if rep.dims[g.out_[h]] == 0 or rep.dims[g.in_[h]] == 0:
            continue
        prod = ratlinalg.mat_mul(rep.B[g.bar(h)], rep2.B[h])
        total += quiver.orientation.epsilon(h) * _tr(prod)
    return total


def moment_map(quiver, rep):
    """Per-vertex components mu_i(B) = sum_{out(h)=i} epsilon(h) B_hbar B_h."""
    g = quiver.graph
    out = []
    for i in range(len(g.vertices)):
        d = rep.dims[i]
        acc = [[Fraction(0)] * d for _ in range(d)]
        for h in g.halves():
            if g.out_[h] != i or d == 0 or rep.dims[g.in_[h]] == 0:
                continue
            eps = quiver.orientation.epsilon(h)
            prod = ratlinalg.mat_mul(rep.B[g.bar(h)], rep.B[h])
            for r in range(d):
                for c in range(d):
                    acc[r][c] += eps * prod[r][c]
        out.append(acc)
    return out


def is_zero_matrix(m):
    return all(x == 0 for row in m for x in row)


def is_nilpotent(graph, rep):
    """True when every long enough path product vanishes.

    Tracks the per-vertex subspaces reachable by path products; they shrink
    monotonically, so either they die within 1 + total dimension steps or
    they stabilize at a nonzero fixed point and some arbitrarily long
    product survives.
    """
    spans = {i: ratlinalg.identity(rep.dims[i]) for i in range(len(graph.vertices))}

    def total(s):
        return sum(len(cols[0]) if cols else 0 for cols in s.values())

    steps = rep.total_dim + 1
    for _ in range(steps):
        if total(spans) == 0:
            return True
        nxt = {i: [] for i in spans}
        for h in graph.halves():
            src, dst = graph.out_[h], graph.in_[h]
            cols = spans[src]
            if not cols or not cols[0] or rep.dims[dst] == 0:
                continue
            image = ratlinalg.mat_mul(rep.B[h], cols)
            if not nxt[dst]:
                nxt[dst] = [list(r) for r in image]
            else:
                for r in range(rep.dims[dst]):
                    nxt[dst][r].extend(image[r])
        reduced = {}
        for i, cols in nxt.items():
            if not cols or not cols[0]:
                reduced[i] = [[] for _ in range(rep.dims[i])] if rep.dims[i] else []
                continue
            reduced[i] = _column_space(cols)
        if total(reduced) == total(spans):
            return total(reduced) == 0
        spans = reduced
    return total(spans) == 0


def _column_space(m):
    """Columns of m reduced to a basis (as a matrix with that many columns)."""
    rows = len(m)
    ech, pivots = ratlinalg.row_echelon(ratlinalg.transpose(m))
    basis_rows = [ech[r] for r in range(len(pivots))]
    if not basis_rows:
        return [[] for _ in range(rows)]
    return ratlinalg.transpose(basis_rows)


def brute_force_nilpotent(graph, rep, max_len):
    """Multiply along every composable path up to max_len, pruning zeros."""
    frontier = []
    for h in graph.halves():
        if rep.dims[graph.out_[h]] and rep.dims[graph.in_[h]]:
            m = rep.B[h]
            if not is_zero_matrix(m):
                frontier.append((graph.in_[h], m))
    length = 1
    while frontier and length < max_len:
        nxt = []
        for (at, prod) in frontier:
            for h in graph.halves():
                if graph.out_[h] != at or rep.dims[graph.in_[h]] == 0:
                    continue
                m = ratlinalg.mat_mul(rep.B[h], prod)
                if not is_zero_matrix(m):
                    nxt.append((graph.in_[h], m))
        frontier = nxt
        length += 1
    return not frontier


def in_lambda(quiver, rep):
    """Membership in the nilpotent zero locus of the moment map."""
    return all(is_zero_matrix(m) for m in moment_map(quiver, rep)) \
        and is_nilpotent(quiver.graph, rep)


def epsilon_i(graph, rep, i):
    """Corank at vertex i of the joint incoming map."""
    d = rep.dims[i]
    if d == 0:
        return 0
    cols = []
    for h in graph.halves():
        if graph.in_[h] == i and rep.dims[graph.out_[h]]:
            cols.append(rep.B[h])
    if not cols:
        return d
    stacked = [sum((m[r] for m in cols), []) for r in range(d)]
    return d - ratlinalg.rank(stacked)


def a_on_rep(graph, aut, rep):
    """Pullback representation on the relabeled spaces: (a.B)_h = B_{a(h)}."""
    dims = tuple(rep.dims[aut.vperm[i]] for i in range(len(rep.dims)))
    B = {h: rep.B[aut.hperm[h]] for h in graph.halves()}
    wdims = imaps = jmaps = None
    if rep.wdims is not None:
        wdims = tuple(rep.wdims[aut.vperm[i]] for i in range(len(rep.wdims)))
        imaps = {k: rep.imaps[aut.vperm[k]] for k in range(len(dims))}
        jmaps = {k: rep.jmaps[aut.vperm[k]] for k in range(len(dims))}
    return QuiverRep(graph, dims, B, wdims, imaps, jmaps)


def framed_form(quiver, rep, rep2):
    """omega_C on framed representations; the framing pairing is tr(i j' - i' j)."""
    g = quiver.graph
    if rep.wdims is None or rep2.wdims is None or rep.wdims != rep2.wdims:
        raise QuiverError("framed form needs matching framings")
    total = Fraction(0)
    for h in g.halves():
        if rep.dims[g.out_[h]] == 0 or rep.dims[g.in_[h]] == 0:
            continue
        prod = ratlinalg.mat_mul(rep.B[h], rep2.B[g.bar(h)])
        total += quiver.orientation.epsilon(h) * _tr(prod)
    for k in range(len(g.vertices)):
        if rep.dims[k] and rep.wdims[k]:
            total += _tr(ratlinalg.mat_mul(rep.imaps[k], rep2.jmaps[k]))
            total -= _tr(ratlinalg.mat_mul(rep2.imaps[k], rep.jmaps[k]))
    return total


def in_lambda_vw(quiver, rep):
    """Membership in Lambda_V x Hom(V, W): B in Lambda_V, all i maps zero."""
    if rep.wdims is None:
        raise QuiverError("framed membership needs a framed representation")
    if any(not is_zero_matrix(rep.imaps[k]) for k in range(len(rep.dims))
           if rep.dims[k] and rep.wdims[k]):
        return False
    return in_lambda(quiver, rep)


def parse_rep(text, graph):
    """Rep fixture format: dim/wdim lines then map/imap/jmap lines.

        dim <vertex> <n>
        wdim <vertex> <n>
        map <eid>[~] <rows>x<cols> : a,b,...;c,d,...
        imap <vertex> <rows>x<cols> : ...
        jmap <vertex> <rows>x<cols> : ...

    Entries are integers or p/q fractions; '#' starts a comment.
    """
    dims = [0] * len(graph.vertices)
    wdims = None
    B = {}
    imaps = {}
    jmaps = {}

    def parse_matrix(spec, body, lineno):
        try:
            rows, cols = (int(x) for x in spec.lower().split("x"))
        except ValueError:
            raise _rep_error(f"bad shape {spec!r}", lineno)
        out = []
        rows_txt = [r for r in body.split(";") if r.strip()] if body.strip() else []
        if len(rows_txt) != rows:
            raise _rep_error(f"expected {rows} rows, got {len(rows_txt)}", lineno)
        for r in rows_txt:
            vals = [v for v in r.split(",") if v.strip()]
            if len(vals) != cols:
                raise _rep_error(f"expected {cols} columns", lineno)
            out.append([Fraction(v.strip()) for v in vals])
        return rows, cols, out

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, _, rest = line.partition(" ")
        if kw in ("dim", "wdim"):
            toks = rest.split()
            if len(toks) != 2 or toks[0] not in graph.vindex:
                raise _rep_error(f"bad {kw} line", lineno)
            if kw == "dim":
                dims[graph.vindex[toks[0]]] = int(toks[1])
            else:
                if wdims is None:
                    wdims = [0] * len(graph.vertices)
                wdims[graph.vindex[toks[0]]] = int(toks[1])
        elif kw in ("map", "imap", "jmap"):
            head, _, body = rest.partition(":")
            toks = head.split()
            if len(toks) != 2:
                raise _rep_error(f"bad {kw} line", lineno)
            name, spec = toks
            _, _, mat = parse_matrix(spec, body, lineno)
            if kw == "map":
                rev = name.endswith("~")
                eid = name[:-1] if rev else name
                if eid not in graph.eindex:
                    raise _rep_error(f"unknown edge {eid!r}", lineno)
                B[2 * graph.eindex[eid] + (1 if rev else 0)] = mat
            else:
                if name not in graph.vindex:
                    raise _rep_error(f"unknown vertex {name!r}", lineno)
                (imaps if kw == "imap" else jmaps)[graph.vindex[name]] = mat
        else:
            raise _rep_error(f"unknown keyword {kw!r}", lineno)
    return QuiverRep(graph, dims, B, wdims, imaps or None, jmaps or None)


def _rep_error(msg, lineno):
    return QuiverError(f"{msg} (line {lineno})")


def random_fraction(rng):
    return Fraction(rng.choice(NILPOTENT_ENTRY_NUMERATORS),
                    rng.choice(NILPOTENT_ENTRY_DENOMINATORS))


def random_matrix(rng, rows, cols):
    return [[random_fraction(rng) for _ in range(cols)] for _ in range(rows)]


def random_rep(graph, dims, rng, wdims=None):
    B = {}
    for h in graph.halves():
        rows, cols = dims[graph.in_[h]], dims[graph.out_[h]]
        B[h] = random_matrix(rng, rows, cols)
    imaps = jmaps = None
    if wdims is not None:
        imaps = {k: random_matrix(rng, dims[k], wdims[k]) for k in range(len(dims))}
        jmaps = {k: random_matrix(rng, wdims[k], dims[k]) for k in range(len(dims))}
    return QuiverRep(graph, dims, B, wdims, imaps, jmaps)


def random_invertible(rng, n):
    while True:
        m = random_matrix(rng, n, n)
        if n == 0 or ratlinalg.det(m) != 0:
            return m


def _conjugate_moment(g_blocks, mu):
    out = []
    for gi, m in zip(g_blocks, mu):
        if not m:
            out.append(m)
            continue
        inv = _inverse(gi)
        out.append(ratlinalg.mat_mul(ratlinalg.mat_mul(gi, m), inv))
    return out


def _inverse(m):
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    ech, pivots = ratlinalg.row_echelon(aug)
    assert len(pivots) == n and pivots == list(range(n))
    return [row[n:] for row in ech]


def act_group(graph, rep, g_blocks):
    """(g.B)_h = g_in(h) B_h g_out(h)^{-1}."""
    invs = [_inverse(g) if g else g for g in g_blocks]
    B = {}
    for h in graph.halves():
        src, dst = graph.out_[h], graph.in_[h]
        m = rep.B[h]
        if rep.dims[src] == 0 or rep.dims[dst] == 0:
            B[h] = m
            continue
        B[h] = ratlinalg.mat_mul(ratlinalg.mat_mul(g_blocks[dst], m), invs[src])
    return QuiverRep(graph, rep.dims, B, rep.wdims, rep.imaps, rep.jmaps)


def _dim_vectors(n_vertices, max_total):
    """Deterministic roster of nonzero dimension vectors with small total."""
    out = []
    for total in range(1, max_total + 1):
        stack = [((), total)]
        while stack:
            prefix, rem = stack.pop()
            if len(prefix) == n_vertices - 1:
                out.append(prefix + (rem,))
                continue
            for v in range(rem, -1, -1):
                stack.append((prefix + (v,), rem - v))
    return out


def property_suite(quiver, seed, trials, max_total_dim=6):
    """Randomized exact property checks; returns (name, runs, ok, detail) rows."""
    g = quiver.graph
    rng = random.Random(seed)
    dim_roster = [d for d in _dim_vectors(len(g.vertices), max_total_dim)]
    results = []

    def run(name, fn, n_runs):
        for t in range(n_runs):
            dims = dim_roster[(t * 7 + 3) % len(dim_roster)]
            ok, detail = fn(dims)
            if not ok:
                results.append((name, t + 1, False, detail))
                return
        results.append((name, n_runs, True, ""))

    def p_antisymmetry(dims):
        b1 = random_rep(g, dims, rng)
        b2 = random_rep(g, dims, rng)
        if symplectic_form(quiver, b1, b2) != -symplectic_form(quiver, b2, b1):
            return False, f"dims={dims}"
        if symplectic_form(quiver, b1, b1) != 0:
            return False, f"omega(B,B) != 0 at dims={dims}"
        return True, ""

    def p_trace_zero(dims):
        b = random_rep(g, dims, rng)
        s = sum(_tr(m) for m in moment_map(quiver, b) if m)
        return (s == 0), f"dims={dims} trace={s}"

    def p_moment_equivariance(dims):
        b = random_rep(g, dims, rng)
        blocks = [random_invertible(rng, d) for d in dims]
        lhs = moment_map(quiver, act_group(g, b, blocks))
        rhs = _conjugate_moment(blocks, moment_map(quiver, b))
        return (lhs == rhs), f"dims={dims}"

    def p_group_invariance(dims):
        b = random_rep(g, dims, rng)
        blocks = [random_invertible(rng, d) for d in dims]
        gb = act_group(g, b, blocks)
        if is_nilpotent(g, b) != is_nilpotent(g, gb):
            return False, f"nilpotency not invariant at dims={dims}"
        for i in range(len(dims)):
            if epsilon_i(g, b, i) != epsilon_i(g, gb, i):
                return False, f"epsilon_{i} not invariant at dims={dims}"
        if in_lambda(quiver, b) != in_lambda(quiver, gb):
            return False, f"membership not invariant at dims={dims}"
        return True, ""

    def p_nilpotency_bound(dims):
        b = random_rep(g, dims, rng)
        # bias toward nilpotent examples half the time by zeroing one direction
        if rng.random() < 0.5:
            for h in g.halves():
                if h % 2 == 1:
                    b.B[h] = [[Fraction(0)] * len(r) for r in b.B[h]]
        fast = is_nilpotent(g, b)
        slow = brute_force_nilpotent(g, b, 2 * sum(dims) + 1)
        return (fast == slow), f"dims={dims} fast={fast} slow={slow}"

    def p_membership(dims):
        wd = tuple(rng.randint(0, 2) for _ in dims)
        zero = QuiverRep(g, dims, None, wd)
        if not in_lambda_vw(quiver, zero):
            return False, f"zero framed rep rejected at dims={dims}"
        base = QuiverRep(g, dims, None, wd,
                         None, {k: random_matrix(rng, wd[k], dims[k]) for k in range(len(dims))})
        if not in_lambda_vw(quiver, base):
            return False, "zero B with free j rejected"
        if any(d and w for d, w in zip(dims, wd)):
            spoiled = QuiverRep(g, dims, None, wd,
                                {k: [[Fraction(1)] * wd[k] for _ in range(dims[k])]
                                 for k in range(len(dims))},
                                None)
            if any(not is_zero_matrix(spoiled.imaps[k]) for k in range(len(dims))) \
                    and in_lambda_vw(quiver, spoiled):
                return False, "nonzero i map accepted"
        return True, ""

    def p_aut_equivariance(dims):
        a = quiver.automorphism
        sym_dims = list(dims)
        for i in range(len(dims)):  # symmetrize so a(V) has matching shapes
            orb = {i}
            cur = a.vperm[i]
            while cur not in orb:
                orb.add(cur)
                cur = a.vperm[cur]
            d = min(dims[t] for t in orb)
            for t in orb:
                sym_dims[t] = d
        sym_dims = tuple(sym_dims)
        b = random_rep(g, sym_dims, rng)
        ab = a_on_rep(g, a, b)
        mu = moment_map(quiver, b)
        amu = moment_map(quiver, ab)
        for i in range(len(sym_dims)):
            if amu[i] != mu[a.vperm[i]]:
                return False, f"moment map not equivariant at vertex {i}"
            if epsilon_i(g, ab, i) != epsilon_i(g, b, a.vperm[i]):
                return False, f"epsilon not equivariant at vertex {i}"
        if is_nilpotent(g, ab) != is_nilpotent(g, b):
            return False, "nilpotency not aut-invariant"
        if in_lambda(quiver, ab) != in_lambda(quiver, b):
            return False, "membership not aut-invariant"
        if quiver.orientation_compatible:
            b2 = random_rep(g, sym_dims, rng)
            ab2 = a_on_rep(g, a, b2)
            if symplectic_form(quiver, ab, ab2) != symplectic_form(quiver, b, b2):
                return False, "omega not aut-invariant"
        return True, ""

    per = max(1, trials // 6)
    run("omega-antisymmetry", p_antisymmetry, per)
    run("moment-trace-zero", p_trace_zero, per)
    run("moment-equivariance", p_moment_equivariance, per)
    run("group-invariance", p_group_invariance, per)
    run("nilpotency-bound-vs-brute-force", p_nilpotency_bound, per)
    run("framed-membership", p_membership, per)
    if quiver.automorphism is not None:
        run("aut-equivariance", p_aut_equivariance, per)
    return results
