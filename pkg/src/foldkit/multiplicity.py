"""Root and weight multiplicities for symmetrizable Cartan data.

Root multiplicities come from the Peterson recurrence, weight multiplicities
of a highest-weight module from the Freudenthal recursion; both need nothing
but the bilinear form and a pairing vector, so they work uniformly for
symmetric and folded data.  A Weyl-group product formula and a denominator
identity check give independent cross-checks for finite and affine data.

All arithmetic is exact.  Tables are memoized per process and extended in
place when deeper truncations are requested.
"""

from fractions import Fraction
from math import comb, gcd

from foldkit.quiver import QuiverError

_WEYL_CAP = 10 ** 6


def _height_layer(rank, ht):
    """All vectors in N^rank with coordinate sum ht, lexicographically."""
    if rank == 1:
        yield (ht,)
        return
    for first in range(ht, -1, -1):
        for rest in _height_layer(rank - 1, ht - first):
            yield (first,) + rest


class _Ctx:
    """Per-datum scratch: form rows, Cartan integers, Weyl-vector pairings."""

    def __init__(self, datum):
        self.datum = datum
        self.rank = datum.rank
        self.S = datum.form
        self.A = tuple(tuple(datum.pairing(i, j) for j in range(self.rank))
                       for i in range(self.rank))
        self.d = tuple(self.S[j][j] // 2 for j in range(self.rank))  # (rho, alpha_j)

    def form(self, x, y):
        S = self.S
        return sum(x[i] * sum(S[i][j] * y[j] for j in range(self.rank) if y[j])
                   for i in range(self.rank) if x[i])

    def pair_col(self, x):
        """Cartan pairings (<j, x as root combination>)_j = A x."""
        A = self.A
        return tuple(sum(A[j][i] * x[i] for i in range(self.rank) if x[i])
                     for j in range(self.rank))


_CTX = {}


def ctx_for(datum):
    key = datum.key()
    if key not in _CTX:
        _CTX[key] = _Ctx(datum)
    return _CTX[key]


class MultTable:
    """Multiplicities on the positive root lattice, complete up to a height.

    Absent entries below the depth are zero; queries past the depth raise.
    """

    def __init__(self, rank, kind):
        self.rank = rank
        self.kind = kind
        self.depth = -1
        self.entries = {}

    def mult(self, nu):
        nu = tuple(nu)
        if any(x < 0 for x in nu):
            raise QuiverError(f"negative coordinate in {nu}")
        if sum(nu) > self.depth:
            raise QuiverError(f"{self.kind} table truncated at height {self.depth}, "
                              f"asked for height {sum(nu)}")
        return self.entries.get(nu, 0)

    __call__ = mult

    def items_sorted(self):
        return sorted(self.entries.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def nonzero_at_height(self, ht):
        return [(nu, m) for nu, m in self.entries.items() if sum(nu) == ht]


class _RootTable(MultTable):
    def __init__(self, datum):
        super().__init__(datum.rank, "root multiplicity")
        self.ctx = ctx_for(datum)
        self.c = {}  # Peterson auxiliary c_beta, nonzero entries only
        self.depth = 0

    def extend_to(self, depth):
        ctx = self.ctx
        r = self.rank
        for ht in range(self.depth + 1, depth + 1):
            for beta in _height_layer(r, ht):
                if ht == 1:
                    self.entries[beta] = 1
                    self.c[beta] = Fraction(1)
                    continue
                num = Fraction(0)
                for bp, cbp in self.c.items():
                    if all(bp[i] <= beta[i] for i in range(r)):
                        bq = tuple(beta[i] - bp[i] for i in range(r))
                        cbq = self.c.get(bq)
                        if cbq is not None:
                            num += ctx.form(bp, bq) * cbp * cbq
                denom = ctx.form(beta, beta) - 2 * sum(
                    ctx.d[j] * beta[j] for j in range(r))
                g = 0
                for x in beta:
                    g = gcd(g, x)
                divisor_sum = Fraction(0)
                for dd in range(2, g + 1):
                    if g % dd == 0:
                        sub = tuple(x // dd for x in beta)
                        msub = self.entries.get(sub, 0)
                        if msub:
                            divisor_sum += Fraction(msub, dd)
                if denom == 0:
                    # (beta, beta) = 2(rho, beta) forces mult 0 at height >= 2:
                    # rho pairs with every non-simple positive coroot by more
                    # than 1.  c_beta still carries the divisor terms.
                    assert num == 0, f"Peterson identity violated at {beta}"
                    m = Fraction(0)
                    cb = divisor_sum
                else:
                    cb = num / denom
                    m = cb - divisor_sum
                assert m.denominator == 1 and m >= 0, f"bad root mult {m} at {beta}"
                if m:
                    self.entries[beta] = int(m)
                if cb:
                    self.c[beta] = cb
        self.depth = max(self.depth, depth)
        return self


class _WeightTable(MultTable):
    def __init__(self, datum, lam):
        super().__init__(datum.rank, "weight multiplicity")
        self.ctx = ctx_for(datum)
        self.lam = tuple(lam)
        if len(self.lam) != datum.rank or any(x < 0 for x in self.lam):
            raise QuiverError(f"not a dominant pairing vector: {self.lam}")
        self.roots = positive_roots(datum, 0)
        self.entries[(0,) * datum.rank] = 1
        self.depth = 0

    def extend_to(self, depth):
        ctx = self.ctx
        r = self.rank
        if depth > self.roots.depth:
            self.roots.extend_to(depth)
        # (lambda, alpha_j) and (lambda + rho, alpha_j), exact integers
        la = tuple(ctx.d[j] * self.lam[j] for j in range(r))
        lra = tuple(ctx.d[j] * (self.lam[j] + 1) for j in range(r))
        root_items = None
        for ht in range(self.depth + 1, depth + 1):
            root_items = sorted(self.roots.entries.items(),
                                key=lambda kv: (sum(kv[0]), kv[0]))
            for nu in _height_layer(r, ht):
                denom = 2 * sum(lra[j] * nu[j] for j in range(r)) - ctx.form(nu, nu)
                num = 0
                for beta, mb in root_items:
                    if sum(beta) > ht:
                        break
                    lb = sum(la[j] * beta[j] for j in range(r))
                    nb = ctx.form(nu, beta)
                    bb = ctx.form(beta, beta)
                    k = 1
                    while True:
                        t = tuple(nu[i] - k * beta[i] for i in range(r))
                        if any(x < 0 for x in t):
                            break
                        mt = self.entries.get(t, 0)
                        if mt:
                            num += mb * mt * (lb - nb + k * bb)
                        k += 1
                num *= 2
                if denom == 0:
                    assert num == 0, f"Freudenthal denominator vanished at {nu}"
                    continue
                assert num % denom == 0 and num // denom >= 0, f"bad mult at {nu}"
                m = num // denom
                if m:
                    self.entries[nu] = m
        self.depth = max(self.depth, depth)
        return self


_TABLES = {}


def positive_roots(datum, depth):
    """Root multiplicity table of the datum, complete to the given height."""
    key = (datum.key(), "roots")
    table = _TABLES.get(key)
    if table is None:
        table = _TABLES[key] = _RootTable(datum)
    if depth > table.depth:
        table.extend_to(depth)
    return table


def freudenthal(datum, lam, depth):
    """Weight multiplicities dim L(nu, lambda) for ht(nu) <= depth."""
    key = (datum.key(), "freud", tuple(lam))
    table = _TABLES.get(key)
    if table is None:
        table = _TABLES[key] = _WeightTable(datum, lam)
    if depth > table.depth:
        table.extend_to(depth)
    return table


def clear_tables():
    """Drop all memoized tables (used by determinism tests)."""
    _TABLES.clear()
    _CTX.clear()


def seed_table(datum, kind, lam, payload):
    """Install a cached table into the registry unless a deeper one exists."""
    if kind == "roots":
        key = (datum.key(), "roots")
    else:
        key = (datum.key(), "freud", tuple(lam))
    existing = _TABLES.get(key)
    if existing is not None and existing.depth >= payload["depth"]:
        return existing
    if kind == "roots":
        table = _RootTable(datum)
        for row in payload.get("c", []):
            table.c[tuple(row[:-2])] = Fraction(row[-2], row[-1])
    else:
        table = _WeightTable(datum, lam)
    for row in payload["entries"]:
        table.entries[tuple(row[:-1])] = row[-1]
    table.depth = payload["depth"]
    _TABLES[key] = table
    return table


def all_vectors_up_to(rank, total):
    """All vectors in N^rank with coordinate sum at most total."""
    if rank == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in all_vectors_up_to(rank - 1, total - first):
            yield (first,) + rest


def uminus_table(datum, depth):
    """Graded dimensions of the whole lower half up to a height cutoff.

    One convolution over the root table; agrees pointwise with
    graded_dim_uminus.
    """
    r = datum.rank
    roots = positive_roots(datum, depth)
    table = {(0,) * r: 1}
    for beta, m in roots.items_sorted():
        updated = dict(table)
        for gamma, val in table.items():
            k = 1
            while True:
                t = tuple(gamma[i] + k * beta[i] for i in range(r))
                if sum(t) > depth:
                    break
                updated[t] = updated.get(t, 0) + comb(k + m - 1, m - 1) * val
                k += 1
        table = updated
    return table


def freudenthal_full(datum, lam, cap=100000):
    """Complete weight table of a finite-type module.

    Extends until an entire height layer is empty, which for an irreducible
    module only happens past the lowest weight.
    """
    table = freudenthal(datum, lam, 0)
    ht = 0
    while True:
        ht += 1
        table.extend_to(ht)
        if not table.nonzero_at_height(ht):
            return table
        if len(table.entries) > cap:
            raise QuiverError("weight table exceeded cap; datum is probably not finite type")


def graded_dim_uminus(datum, nu):
    """Coefficient of e^{-nu} in the product over positive roots of (1-e^{-beta})^{-mult}.

    Counts multiset partitions of nu into positive roots with multiplicity
    colors, by bounded-box convolution.
    """
    nu = tuple(nu)
    r = datum.rank
    if any(x < 0 for x in nu):
        raise QuiverError(f"negative coordinate in {nu}")
    roots = positive_roots(datum, sum(nu))
    table = {(0,) * r: 1}
    for beta, m in roots.items_sorted():
        if not all(beta[i] <= nu[i] for i in range(r)):
            continue
        updated = dict(table)
        for gamma, val in table.items():
            k = 1
            while True:
                t = tuple(gamma[i] + k * beta[i] for i in range(r))
                if any(t[i] > nu[i] for i in range(r)):
                    break
                updated[t] = updated.get(t, 0) + comb(k + m - 1, m - 1) * val
                k += 1
        table = updated
    return table.get(nu, 0)


def finite_positive_roots(datum):
    """All positive roots of a finite-type datum by reflection closure.

    Independent of the Peterson recurrence; capped at 10^6 roots.
    """
    ctx = ctx_for(datum)
    r = datum.rank
    simples = [tuple(int(i == j) for i in range(r)) for j in range(r)]
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for beta in frontier:
            pair = ctx.pair_col(beta)
            for j in range(r):
                img = list(beta)
                img[j] -= pair[j]
                img = tuple(img)
                if all(x >= 0 for x in img) and any(img) and img not in roots:
                    roots.add(img)
                    new.append(img)
        if len(roots) > _WEYL_CAP:
            raise QuiverError("positive-root closure exceeded cap; datum not finite type?")
        frontier = new
    return sorted(roots, key=lambda b: (sum(b), b))


def weyl_dim(datum, lam):
    """Weyl dimension formula over the fully enumerated positive roots."""
    from foldkit.cartan import classify
    if not classify(datum).is_finite:
        raise QuiverError("weyl_dim needs a finite-type datum")
    ctx = ctx_for(datum)
    r = datum.rank
    lam = tuple(lam)
    lra = tuple(ctx.d[j] * (lam[j] + 1) for j in range(r))
    dim = Fraction(1)
    for beta in finite_positive_roots(datum):
        dim *= Fraction(sum(lra[j] * beta[j] for j in range(r)),
                        sum(ctx.d[j] * beta[j] for j in range(r)))
    assert dim.denominator == 1 and dim > 0
    return int(dim)


def weyl_rho_orbit(datum, max_len):
    """BFS levels of rho - w.rho in root coordinates, one set per length.

    Level k holds the distinct offsets for Weyl elements of length k;
    offsets are hash-consed so each group element appears once.
    """
    ctx = ctx_for(datum)
    r = datum.rank
    zero = (0,) * r
    levels = [{zero}]
    seen = {zero}
    for _ in range(max_len):
        nxt = set()
        for x in levels[-1]:
            pair = ctx.pair_col(x)
            for j in range(r):
                p = 1 - pair[j]  # <j, w.rho> for w.rho = rho - x
                if p > 0:
                    y = list(x)
                    y[j] += p
                    y = tuple(y)
                    if y not in seen:
                        seen.add(y)
                        nxt.add(y)
                if len(seen) > _WEYL_CAP:
                    raise QuiverError("Weyl enumeration exceeded cap")
        if not nxt:
            break
        levels.append(nxt)
    return levels


def denominator_check(datum, depth, max_len):
    """Compare the root-side product with a partial Weyl alternating sum.

    Every monomial of height <= min(depth, max_len) must agree; the length
    bound covers that window because rho - w.rho has height >= length(w).
    """
    window = min(depth, max_len)
    r = datum.rank
    roots = positive_roots(datum, depth)
    prod = {(0,) * r: 1}
    for beta, m in roots.items_sorted():
        # multiply by (1 - e^{-beta})^m, truncated to the window
        term = {}
        for gamma, val in prod.items():
            for i in range(m + 1):
                t = tuple(gamma[k] + i * beta[k] for k in range(r))
                if sum(t) > window:
                    break
                term[t] = term.get(t, 0) + val * comb(m, i) * (-1) ** i
        prod = {k: v for k, v in term.items() if v}
    rhs = {}
    for length, level in enumerate(weyl_rho_orbit(datum, max_len)):
        sign = (-1) ** length
        for x in level:
            if sum(x) <= window:
                rhs[x] = rhs.get(x, 0) + sign
    rhs = {k: v for k, v in rhs.items() if v}
    lhs = {k: v for k, v in prod.items() if v and sum(k) <= window}
    return lhs == rhs
