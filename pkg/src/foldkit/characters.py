"""Affine character series and the twisted trace of a diagram automorphism.

The normalized character of a dominant weight W collects weight
multiplicities by their depth at the affine node and shifts exponents by the
conformal anomaly m_W = (Wbar, Wbar + 2 rhobar) / (2(k + hv)) - k dim(gbar) /
(24 (k + hv)), all data read off the finite-type datum left after deleting
the affine node.  The twisted trace sums q^{m_W + V_0} dim L^a(V, W) over
automorphism-stable V; the dimensions come either from the folded
Freudenthal table or from fixed-point counts in the unfolded crystal, and
the two routes are compared whenever the crystal route runs.

Exponents are exact rationals throughout; series never touch floats.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from foldkit import ratlinalg
from foldkit.cartan import (
    CartanDatum,
    cartan_from_graph,
    classify,
    fold,
    stable_subset,
    unfold_vector,
)
from foldkit.crystal import aut_action, fixed_census, fixed_census_table, generate
from foldkit.multiplicity import (all_vectors_up_to, ctx_for, finite_positive_roots,
                                  freudenthal)
from foldkit.quiver import QuiverError, vertex_orbit_index


class VerificationError(QuiverError):
    """A dual-route comparison disagreed; the computation itself succeeded."""


@dataclass(frozen=True)
class AffineData:
    """An affine Cartan datum with a designated affine node.

    delta is the primitive positive null vector of the form, duals the
    primitive positive kernel vector of the transposed Cartan matrix; the
    level of a pairing vector is its dual-weighted sum.  untwisted records
    whether the finite-part restriction of delta is the highest root there,
    which is what the conformal shift convention relies on.
    """
    datum: CartanDatum
    node0: int
    delta: tuple
    duals: tuple
    untwisted: bool

    @property
    def dual_coxeter(self):
        return sum(self.duals)

    @property
    def untwisted_convention(self):
        return self.untwisted

    def level(self, lam):
        return sum(d * x for d, x in zip(self.duals, lam))

    def finite_part_indices(self):
        return [j for j in range(self.datum.rank) if j != self.node0]

    def finite_part(self):
        idx = self.finite_part_indices()
        form = tuple(tuple(self.datum.form[i][j] for j in idx) for i in idx)
        labels = tuple(self.datum.labels[i] for i in idx)
        return CartanDatum(labels, form).check()


def affine_data(datum, node0=None):
    """Attach affine structure to a datum, designating or inferring the affine node."""
    tc = classify(datum)
    if not tc.is_affine:
        raise QuiverError(f"datum is not affine (classified {tc.kind})")
    delta = tc.delta
    at = ratlinalg.transpose([[datum.pairing(i, j) for j in range(datum.rank)]
                              for i in range(datum.rank)])
    ker = ratlinalg.kernel_basis(at)
    assert len(ker) == 1
    duals = tuple(ratlinalg.primitive_integer_vector(ker[0]))
    assert all(d > 0 for d in duals)

    def deletion_finite(j):
        idx = [i for i in range(datum.rank) if i != j]
        sub = [[datum.form[a][b] for b in idx] for a in idx]
        return ratlinalg.is_positive_definite(sub)

    if node0 is None:
        candidates = [j for j in range(datum.rank)
                      if delta[j] == 1 and deletion_finite(j)]
        if not candidates:
            raise QuiverError("no orbit qualifies as the affine node; designate one "
                              "with an affine_node line")
        node0 = candidates[0]
    else:
        if not deletion_finite(node0):
            raise QuiverError(f"deleting designated affine node {datum.labels[node0]} "
                              "does not leave finite type")
    return AffineData(datum, node0, delta, duals,
                      _is_untwisted(datum, node0, delta))


def _is_untwisted(datum, node0, delta):
    """delta restricted to the finite part must be its highest (long) root."""
    if delta[node0] != 1:
        return False
    idx = [j for j in range(datum.rank) if j != node0]
    theta = tuple(delta[j] for j in idx)
    form = tuple(tuple(datum.form[i][j] for j in idx) for i in idx)
    fin = CartanDatum(tuple(datum.labels[i] for i in idx), form).check()
    roots = finite_positive_roots(fin)
    if theta not in roots:
        return False
    ctx = ctx_for(fin)
    norm = ctx.form(theta, theta)
    return all(ctx.form(beta, beta) <= norm for beta in roots)


def m_w(ad, w):
    """Conformal anomaly h - c/24 of the highest weight with pairing vector w."""
    w = tuple(w)
    if len(w) != ad.datum.rank or any(x < 0 for x in w):
        raise QuiverError(f"not a dominant pairing vector: {w}")
    k = ad.level(w)
    if k == 0:
        return Fraction(0)
    idx = ad.finite_part_indices()
    sbar = [[Fraction(ad.datum.form[i][j]) for j in idx] for i in idx]
    # (Wbar, alpha_j) = (j.j)/2 <j, W>; solve for Wbar in the root basis of gbar
    b = [Fraction(ad.datum.form[j][j], 2) * w[j] for j in idx]
    sol = ratlinalg.solve(sbar, b)
    assert sol is not None
    d = [Fraction(ad.datum.form[j][j], 2) for j in idx]
    w_w_2rho = sum(sol[t] * (b[t] + 2 * d[t]) for t in range(len(idx)))
    fin = ad.finite_part()
    dim_gbar = fin.rank + 2 * len(finite_positive_roots(fin))
    hv = ad.dual_coxeter
    return w_w_2rho / (2 * (k + hv)) - Fraction(k * dim_gbar, 24 * (k + hv))


def _layer_height_bound(ad, w, n):
    """Exact height bound for the off-node part of weights at node depth n.

    Uses (nu, nu) <= 2(lambda + rho, nu) on the weight support plus a
    Cauchy-Schwarz lower bound for the positive definite finite part.
    """
    idx = ad.finite_part_indices()
    S = ad.datum.form
    sbar = [[Fraction(S[i][j]) for j in idx] for i in idx]
    ones = [Fraction(1)] * len(idx)
    sol = ratlinalg.solve(sbar, ones)
    g = sum(sol)
    weights = {j: S[j][j] * (w[j] + 1) for j in range(ad.datum.rank)}
    w0 = weights[ad.node0]
    wmax = max(weights[j] for j in idx) if idx else 0
    smax = max([max(0, -S[ad.node0][j]) for j in idx], default=0)
    x = 0
    while True:
        nxt = x + 1
        if Fraction(nxt * nxt) > g * (w0 * n + (wmax + 2 * n * smax) * nxt):
            return x
        x = nxt
        assert x < 10 ** 6, "layer bound runaway"


def affine_layer_sums(ad, w, depth):
    """Sum of weight multiplicities per affine-node depth, layers 0..depth.

    Each layer is finite because deleting the affine node leaves finite
    type; the required Freudenthal truncation is derived exactly.
    """
    w = tuple(w)
    bounds = [n + _layer_height_bound(ad, w, n) for n in range(depth + 1)]
    need = max(bounds)
    table = freudenthal(ad.datum, w, need)
    sums = [0] * (depth + 1)
    for nu, m in table.entries.items():
        n = nu[ad.node0]
        if n <= depth and sum(nu) <= bounds[n]:
            sums[n] += m
    return sums


class QSeries:
    """Finitely supported q-series with exact rational exponents.

    bound, when set, is the largest exponent the series is complete up to.
    """

    def __init__(self, coeffs=None, bound=None):
        self.coeffs = {Fraction(e): c for e, c in (coeffs or {}).items() if c}
        self.bound = bound

    def sorted_items(self):
        return sorted(self.coeffs.items())

    def leading(self):
        items = self.sorted_items()
        return items[0] if items else None

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.coeffs == other.coeffs

    def first_mismatch(self, other):
        """Smallest exponent whose coefficients differ, or None."""
        exps = sorted(set(self.coeffs) | set(other.coeffs))
        for e in exps:
            if self.coeffs.get(e, 0) != other.coeffs.get(e, 0):
                return e
        return None

    def tsv_lines(self):
        return [f"{e}\t{c}" for e, c in self.sorted_items()]

    def latex(self):
        parts = []
        for e, c in self.sorted_items():
            head = "" if c == 1 else f"{c} "
            parts.append(f"{head}q^{{{e}}}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"QSeries({dict(self.sorted_items())})"


def normalized_character(ad, w, depth):
    """q^{m_W} times the generating series of layer multiplicities.

    Twisted data have no verified shift convention here, so their series is
    left unshifted; callers surface that as a note.
    """
    if depth < 0:
        raise QuiverError("depth must be nonnegative")
    shift = m_w(ad, w) if ad.untwisted_convention else Fraction(0)
    sums = affine_layer_sums(ad, w, depth)
    return QSeries({shift + n: s for n, s in enumerate(sums)}, bound=shift + depth)


def folded_affine_data(quiver):
    """Fold the quiver and designate the affine node orbit."""
    if quiver.automorphism is None:
        return affine_data(cartan_from_graph(quiver.graph), quiver.affine_node)
    vorbs, orbit_of = vertex_orbit_index(quiver.automorphism, quiver.graph)
    folded = fold(quiver.graph, quiver.automorphism)
    node0 = orbit_of[quiver.affine_node] if quiver.affine_node is not None else None
    return affine_data(folded, node0)


def _crystal_layer_sums(quiver, ad, w_folded, depth):
    """Layer sums via fixed-point counts in the unfolded crystal.

    Every automorphism-stable weight inside the exact layer bounds is
    counted; each count is compared against the folded Freudenthal value
    and any disagreement raises.
    """
    aut = quiver.automorphism
    g = quiver.graph
    vorbs, _ = vertex_orbit_index(aut, g)
    bounds = [_layer_height_bound(ad, w_folded, n) for n in range(depth + 1)]
    folded_rank = ad.datum.rank
    bar_cap = max(bounds)
    box_folded = [bar_cap] * folded_rank
    box_folded[ad.node0] = depth
    box = unfold_vector(box_folded, aut, g)
    lam = unfold_vector(w_folded, aut, g)
    cg = generate(cartan_from_graph(g), lam, sum(box), box=box)
    sigma = aut_action(cg, aut.vperm)
    fixed_table = fixed_census_table(cg, sigma)

    oracle = freudenthal(ad.datum, w_folded, max(n + b for n, b in enumerate(bounds)))
    bar_idx = ad.finite_part_indices()
    sums = [0] * (depth + 1)
    for n in range(depth + 1):
        for bar in all_vectors_up_to(len(bar_idx), bounds[n]):
            nt = [0] * folded_rank
            nt[ad.node0] = n
            for pos, j in enumerate(bar_idx):
                nt[j] = bar[pos]
            cnt = fixed_census(cg, sigma, tuple(nt), orbit_list=vorbs,
                               _table=fixed_table)
            expected = oracle.mult(tuple(nt))
            if cnt != expected:
                raise VerificationError(
                    f"crystal fixed-point count {cnt} differs from folded "
                    f"multiplicity {expected} at {tuple(nt)}")
            sums[n] += cnt
    return sums


@dataclass
class VerifyReport:
    verified: bool
    twisted_trace: QSeries
    character: QSeries
    mismatch_exponent: Fraction = None
    notes: list = field(default_factory=list)


def ch_a(quiver, w, depth, with_crystal_check=False):
    """Twisted trace series of the automorphism on the module with framing w.

    w is vertex-indexed; a non-stable w gives the zero series.  Exponents
    are m_W + V_0 with V_0 the depth at the affine node orbit.
    """
    if depth < 0:
        raise QuiverError("depth must be nonnegative")
    aut = quiver.automorphism
    if aut is None:
        raise QuiverError("ch_a needs a quiver with an automorphism")
    wt = stable_subset(tuple(w), aut)
    if wt is None:
        return QSeries({})
    ad = folded_affine_data(quiver)
    shift = m_w(ad, wt) if ad.untwisted_convention else Fraction(0)
    if with_crystal_check:
        sums = _crystal_layer_sums(quiver, ad, wt, depth)
    else:
        sums = affine_layer_sums(ad, wt, depth)
    return QSeries({shift + n: s for n, s in enumerate(sums)}, bound=shift + depth)


def verify_cor322(quiver, w, depth, with_crystal_check=False, _inject_layer_error=None):
    """Compare the twisted trace with the folded normalized character.

    Coefficient-by-coefficient through the requested depth.  The
    fault-injection hook adds an error to one trace layer so the harness can
    prove the comparison bites.
    """
    aut = quiver.automorphism
    notes = []
    if aut is None:
        raise QuiverError("verify needs a quiver with an automorphism")
    wt = stable_subset(tuple(w), aut)
    if wt is None:
        raise QuiverError("weight is not automorphism-stable; Ch^a is identically zero")
    ad = folded_affine_data(quiver)
    if not ad.untwisted_convention:
        notes.append("twisted folded datum: exponent convention unverified, "
                     "series left unshifted")
    trace = ch_a(quiver, w, depth, with_crystal_check=with_crystal_check)
    if _inject_layer_error is not None:
        layer, amount = _inject_layer_error
        shift = m_w(ad, wt) if ad.untwisted_convention else Fraction(0)
        bumped = dict(trace.coeffs)
        bumped[shift + layer] = bumped.get(shift + layer, 0) + amount
        trace = QSeries(bumped)
    chi = normalized_character(ad, wt, depth)
    bad = trace.first_mismatch(chi)
    return VerifyReport(bad is None, trace, chi, bad, notes)
