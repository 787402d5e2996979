"""Command-line frontend.

Subcommands consume a quiver file and emit deterministic TSV reports on
stdout; exit status 0 means success or verified, 1 means a verification
mismatch, 2 means bad input.  Reports are byte-identical across runs for
identical inputs; the optional cache directory only changes runtime.
"""

import argparse
import sys

from foldkit import cache as cachemod
from foldkit import cartan, crystal, multiplicity, reps
from foldkit.characters import (
    VerificationError,
    ch_a,
    folded_affine_data,
    normalized_character,
    verify_cor322,
)
from foldkit.cartan import (
    cartan_from_graph,
    classify,
    datum_of_quiver,
    fold,
    gcm,
    stable_subset,
    unfold_vector,
)
from foldkit.quiver import QuiverError, parse_quiver, validate_admissible, vertex_orbit_index


class CLIError(Exception):
    def __init__(self, message, status=2):
        super().__init__(message)
        self.status = status


def build_parser():
    p = argparse.ArgumentParser(
        prog="foldkit",
        description="quiver folding, Kac-Moody multiplicities, crystal fixed points, "
                    "and twisted affine characters")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text, lam=False, depth=False, seed=False, trials=False,
            crystal_check=False, plot=True):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--quiver", required=True, help="quiver file path")
        sp.add_argument("--cache", default=None, help="cache directory "
                        "(FOLDKIT_CACHE overrides)")
        sp.add_argument("--format", choices=("tsv", "latex"), default="tsv")
        if plot:
            sp.add_argument("--plot", default=None, help="write a figure to this file")
        if lam:
            sp.add_argument("--lambda", dest="lam", default=None,
                            help="comma-separated nonnegative pairing vector")
        if depth:
            sp.add_argument("--depth", type=int, default=6)
        if seed:
            sp.add_argument("--seed", type=int, default=2024)
        if trials:
            sp.add_argument("--trials", type=int, default=1050)
            sp.add_argument("--rep", default=None, help="rep fixture file to check")
        if crystal_check:
            sp.add_argument("--with-crystal-check", action="store_true")
        return sp

    add("fold", "folded form matrix, GCM, classification", plot=False)
    add("classify", "type classification of the datum", plot=False)
    add("roots", "root multiplicity table", depth=True)
    add("mult", "weight multiplicity table", lam=True, depth=True)
    add("uminus", "graded dimensions of the lower half", depth=True)
    add("crystal", "crystal node and edge tables", lam=True, depth=True)
    add("fixed", "automorphism fixed-point census with folded oracle", lam=True, depth=True)
    add("char", "normalized affine character", lam=True, depth=True)
    add("chara", "twisted trace series Ch^a", lam=True, depth=True, crystal_check=True)
    add("verify", "compare Ch^a with the normalized character", lam=True, depth=True,
        crystal_check=True)
    add("repcheck", "representation property suite", seed=True, trials=True, plot=False)
    return p


def parse_lambda(text, labels, what):
    if text is None:
        raise CLIError(f"--lambda is required: give {len(labels)} comma-separated "
                       f"values for {', '.join(labels)}")
    parts = [t.strip() for t in text.split(",")]
    try:
        vec = tuple(int(t) for t in parts)
    except ValueError:
        raise CLIError(f"--lambda must be integers, got {text!r}")
    if len(vec) != len(labels):
        raise CLIError(f"--lambda needs {len(labels)} entries for {what} "
                       f"({', '.join(labels)}), got {len(vec)}")
    if any(x < 0 for x in vec):
        raise CLIError("--lambda entries must be nonnegative")
    return vec


def load_quiver(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CLIError(f"cannot read quiver file {path}: {exc}")
    try:
        return parse_quiver(text)
    except QuiverError as exc:
        raise CLIError(f"{path}: {exc}")


def check_depth(depth):
    if depth < 0:
        raise CLIError("--depth must be nonnegative")
    return depth


def fmt_vec(v):
    return ",".join(str(x) for x in v)


def _nonzero_rows(entries, depth):
    rows = [(nu, m) for nu, m in entries if sum(nu) <= depth and m]
    rows.sort(key=lambda kv: (sum(kv[0]), kv[0]))
    return rows


def _seed_mult_cache(cache, datum, kind, lam=None):
    if cache is None:
        return None
    key = {"datum": cachemod.datum_hash(datum), "kind": kind}
    if lam is not None:
        key["lambda"] = list(lam)
    payload = cache.get("mult", key)
    if payload is not None:
        multiplicity.seed_table(datum, kind, lam, payload)
    return key


def _store_mult_cache(cache, key, table):
    if cache is None or key is None:
        return
    payload = cachemod.mult_table_payload(table)
    if isinstance(table, multiplicity._RootTable):
        payload["c"] = sorted(
            [list(nu) + [c.numerator, c.denominator] for nu, c in table.c.items()])
    cache.put("mult", key, payload)


def cmd_fold(args):
    q = load_quiver(args.quiver)
    if q.automorphism is not None:
        bad = validate_admissible(q)
        if bad:
            raise CLIError("automorphism is not admissible: "
                           + "; ".join(f"{v.axiom} at {v.witness}" for v in bad))
        datum = fold(q.graph, q.automorphism)
    else:
        datum = cartan_from_graph(q.graph)
    a = gcm(datum)
    tc = classify(datum)
    lines = ["orbit\t" + "\t".join(datum.labels)]
    for i, lab in enumerate(datum.labels):
        lines.append("form\t" + lab + "\t" + "\t".join(str(x) for x in datum.form[i]))
    for i, lab in enumerate(datum.labels):
        lines.append("gcm\t" + lab + "\t" + "\t".join(str(x) for x in a.matrix[i]))
    for i, lab in enumerate(datum.labels):
        lines.append(f"symmetrizer\t{lab}\t{a.symmetrizer[i]}")
    lines.append(f"type\t{tc.kind}")
    if tc.delta is not None:
        lines.append("delta\t" + "\t".join(str(x) for x in tc.delta))
    return lines, 0


def cmd_classify(args):
    q = load_quiver(args.quiver)
    datum = datum_of_quiver(q)
    tc = classify(datum)
    lines = [f"type\t{tc.kind}"]
    if tc.delta is not None:
        lines.append("delta\t" + "\t".join(str(x) for x in tc.delta))
    if len(tc.components) > 1:
        for comp in tc.components:
            lines.append("component\t" + ",".join(datum.labels[i] for i in comp))
    return lines, 0


def cmd_roots(args, cache):
    q = load_quiver(args.quiver)
    datum = datum_of_quiver(q)
    depth = check_depth(args.depth)
    key = _seed_mult_cache(cache, datum, "roots")
    table = multiplicity.positive_roots(datum, depth)
    _store_mult_cache(cache, key, table)
    lines = ["# index order: " + ", ".join(datum.labels), "nu\tmult"]
    for nu, m in _nonzero_rows(table.entries.items(), depth):
        lines.append(f"{fmt_vec(nu)}\t{m}")
    if args.plot:
        from foldkit import plotting
        plotting.save_height_totals(_nonzero_rows(table.entries.items(), depth),
                                    args.plot, "root multiplicities by height")
    return lines, 0


def cmd_mult(args, cache):
    q = load_quiver(args.quiver)
    datum = datum_of_quiver(q)
    depth = check_depth(args.depth)
    lam = parse_lambda(args.lam, datum.labels, "the datum indices")
    key = _seed_mult_cache(cache, datum, "freud", lam)
    table = multiplicity.freudenthal(datum, lam, depth)
    _store_mult_cache(cache, key, table)
    lines = ["# index order: " + ", ".join(datum.labels), "nu\tmult"]
    for nu, m in _nonzero_rows(table.entries.items(), depth):
        lines.append(f"{fmt_vec(nu)}\t{m}")
    if args.plot:
        from foldkit import plotting
        plotting.save_height_totals(_nonzero_rows(table.entries.items(), depth),
                                    args.plot, "weight multiplicities by height")
    return lines, 0


def cmd_uminus(args, cache):
    q = load_quiver(args.quiver)
    datum = datum_of_quiver(q)
    depth = check_depth(args.depth)
    key = _seed_mult_cache(cache, datum, "roots")
    table = multiplicity.uminus_table(datum, depth)
    _store_mult_cache(cache, key, multiplicity.positive_roots(datum, depth))
    lines = ["# index order: " + ", ".join(datum.labels), "nu\tdim"]
    for nu, m in _nonzero_rows(table.items(), depth):
        lines.append(f"{fmt_vec(nu)}\t{m}")
    if args.plot:
        from foldkit import plotting
        plotting.save_height_totals(table.items(), args.plot,
                                    "graded dimensions by height", "dimension")
    return lines, 0


def _load_or_generate_crystal(cache, datum, lam, depth, box=None):
    key = None
    if cache is not None:
        key = {"datum": cachemod.datum_hash(datum), "lambda": list(lam),
               "depth": depth, "box": list(box) if box else None}
        payload = cache.get("crystal", key)
        if payload is not None:
            return cachemod.crystal_from_payload(datum, lam, payload)
    graph = crystal.generate(datum, lam, depth, box=box)
    if cache is not None:
        cache.put("crystal", key, cachemod.crystal_payload(graph))
    return graph


def cmd_crystal(args, cache):
    q = load_quiver(args.quiver)
    datum = cartan_from_graph(q.graph)
    depth = check_depth(args.depth)
    lam = parse_lambda(args.lam, datum.labels, "the vertices")
    cg = _load_or_generate_crystal(cache, datum, lam, depth)
    sigma = None
    if q.automorphism is not None and not q.automorphism.is_trivial:
        if cartan.stable_subset(lam, q.automorphism) is None:
            raise CLIError("--lambda must be automorphism-stable for the fixed column")
        sigma = crystal.aut_action(cg, q.automorphism.vperm)
    lines = ["# vertex order: " + ", ".join(datum.labels),
             "node\tindex\tnu\teps\tphi\tfixed"]
    for node in cg.nodes:
        fixed = 1 if sigma is None or sigma[node.index] == node.index else 0
        lines.append(f"node\t{node.index}\t{fmt_vec(node.nu)}\t{fmt_vec(node.eps)}"
                     f"\t{fmt_vec(node.phi)}\t{fixed}")
    for (src, j), dst in sorted(cg.edges.items()):
        lines.append(f"edge\t{src}\t{datum.labels[j]}\t{dst}")
    if args.plot:
        from foldkit import plotting
        plotting.save_layers(cg, sigma, args.plot, "crystal layers")
    return lines, 0


def cmd_fixed(args, cache):
    q = load_quiver(args.quiver)
    if q.automorphism is None:
        raise CLIError("fixed needs a quiver with an aut line")
    datum = cartan_from_graph(q.graph)
    depth = check_depth(args.depth)
    lam = parse_lambda(args.lam, datum.labels, "the vertices")
    if stable_subset(lam, q.automorphism) is None:
        raise CLIError("--lambda must be automorphism-stable")
    folded = fold(q.graph, q.automorphism)
    lam_f = stable_subset(lam, q.automorphism)
    vorbs, _ = vertex_orbit_index(q.automorphism, q.graph)
    maxorb = max(len(o) for o in vorbs)
    box = unfold_vector((depth,) * folded.rank, q.automorphism, q.graph)
    cg = _load_or_generate_crystal(cache, datum, lam, maxorb * depth, box=box)
    sigma = crystal.aut_action(cg, q.automorphism.vperm)
    oracle = multiplicity.freudenthal(folded, lam_f, depth)
    lines = ["# orbit order: " + ", ".join(folded.labels),
             "nutilde\tfixed\tfolded_mult\tmatch"]
    mismatches = 0
    pairs = []
    for nt in sorted(multiplicity.all_vectors_up_to(folded.rank, depth),
                     key=lambda v: (sum(v), v)):
        cnt = crystal.fixed_census(cg, sigma, nt, orbit_list=vorbs)
        want = oracle.mult(nt)
        ok = cnt == want
        mismatches += 0 if ok else 1
        pairs.append((nt, cnt))
        lines.append(f"{fmt_vec(nt)}\t{cnt}\t{want}\t{'yes' if ok else 'NO'}")
    lines.append("verdict\t" + ("verified" if mismatches == 0 else
                                f"{mismatches} mismatches"))
    if args.plot:
        from foldkit import plotting
        plotting.save_height_totals(pairs, args.plot, "fixed nodes by height",
                                    "fixed nodes")
    return lines, 0 if mismatches == 0 else 1


def _series_lines(series, fmt, notes=()):
    lines = [f"# {n}" for n in notes]
    if fmt == "latex":
        lines.append(series.latex())
    else:
        lines.append("exponent\tcoefficient")
        lines.extend(series.tsv_lines())
    return lines


def cmd_char(args, cache):
    q = load_quiver(args.quiver)
    depth = check_depth(args.depth)
    ad = folded_affine_data(q)
    lam = parse_lambda(args.lam, ad.datum.labels, "the datum indices")
    _seed_and_store = _seed_mult_cache(cache, ad.datum, "freud", lam)
    series = normalized_character(ad, lam, depth)
    _store_mult_cache(cache, _seed_and_store,
                      multiplicity.freudenthal(ad.datum, lam, 0))
    notes = []
    if not ad.untwisted_convention:
        notes.append("twisted convention: normalized character shift unverified")
    lines = _series_lines(series, args.format, notes)
    if args.plot:
        from foldkit import plotting
        plotting.save_series(series, args.plot, "normalized character")
    return lines, 0


def cmd_chara(args, cache):
    q = load_quiver(args.quiver)
    if q.automorphism is None:
        raise CLIError("chara needs a quiver with an aut line")
    depth = check_depth(args.depth)
    labels = list(q.graph.vertices)
    w = parse_lambda(args.lam, labels, "the vertices")
    ad = folded_affine_data(q)
    key = None
    if stable_subset(w, q.automorphism) is not None:
        key = _seed_mult_cache(cache, ad.datum, "freud",
                               stable_subset(w, q.automorphism))
    series = ch_a(q, w, depth, with_crystal_check=args.with_crystal_check)
    if key is not None:
        _store_mult_cache(cache, key, multiplicity.freudenthal(
            ad.datum, stable_subset(w, q.automorphism), 0))
    notes = []
    if stable_subset(w, q.automorphism) is None:
        notes.append("weight is not automorphism-stable: Ch^a is the zero series")
    if not ad.untwisted_convention:
        notes.append("twisted convention: series left unshifted")
    lines = _series_lines(series, args.format, notes)
    if args.plot:
        from foldkit import plotting
        plotting.save_series(series, args.plot, "twisted trace Ch^a")
    return lines, 0


def cmd_verify(args, cache):
    q = load_quiver(args.quiver)
    if q.automorphism is None:
        raise CLIError("verify needs a quiver with an aut line")
    depth = check_depth(args.depth)
    labels = list(q.graph.vertices)
    w = parse_lambda(args.lam, labels, "the vertices")
    report = verify_cor322(q, w, depth, with_crystal_check=args.with_crystal_check)
    lines = [f"# {n}" for n in report.notes]
    lines.append("exponent\ttrace\tcharacter\tmatch")
    exps = sorted(set(report.twisted_trace.coeffs) | set(report.character.coeffs))
    for e in exps:
        a = report.twisted_trace.coeffs.get(e, 0)
        b = report.character.coeffs.get(e, 0)
        lines.append(f"{e}\t{a}\t{b}\t{'yes' if a == b else 'NO'}")
    lines.append("verdict\t" + ("verified" if report.verified
                                else f"mismatch at exponent {report.mismatch_exponent}"))
    if args.plot:
        from foldkit import plotting
        plotting.save_verify(report, args.plot, "twisted trace vs normalized character")
    return lines, 0 if report.verified else 1


def cmd_repcheck(args):
    q = load_quiver(args.quiver)
    if args.trials <= 0:
        raise CLIError("--trials must be positive")
    lines = [f"# seed {args.seed}, trials {args.trials}",
             "property\ttrials\tresult\tdetail"]
    failures = 0
    for name, runs, ok, detail in reps.property_suite(q, args.seed, args.trials):
        failures += 0 if ok else 1
        lines.append(f"{name}\t{runs}\t{'pass' if ok else 'FAIL'}\t{detail}")
    if args.rep:
        try:
            with open(args.rep, "r", encoding="utf-8") as fh:
                rep = reps.parse_rep(fh.read(), q.graph)
        except OSError as exc:
            raise CLIError(f"cannot read rep file {args.rep}: {exc}")
        lines.append(f"fixture\tnilpotent\t{str(reps.is_nilpotent(q.graph, rep)).lower()}")
        lines.append(f"fixture\tin_lambda\t{str(reps.in_lambda(q, rep)).lower()}")
        if rep.wdims is not None:
            lines.append(
                f"fixture\tin_lambda_vw\t{str(reps.in_lambda_vw(q, rep)).lower()}")
        for i, vid in enumerate(q.graph.vertices):
            lines.append(f"fixture\tepsilon\t{vid}\t{reps.epsilon_i(q.graph, rep, i)}")
    lines.append("verdict\t" + ("pass" if failures == 0 else f"{failures} failures"))
    return lines, 0 if failures == 0 else 1


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cache = cachemod.cache_from_env(getattr(args, "cache", None))
        if args.command == "fold":
            lines, status = cmd_fold(args)
        elif args.command == "classify":
            lines, status = cmd_classify(args)
        elif args.command == "roots":
            lines, status = cmd_roots(args, cache)
        elif args.command == "mult":
            lines, status = cmd_mult(args, cache)
        elif args.command == "uminus":
            lines, status = cmd_uminus(args, cache)
        elif args.command == "crystal":
            lines, status = cmd_crystal(args, cache)
        elif args.command == "fixed":
            lines, status = cmd_fixed(args, cache)
        elif args.command == "char":
            lines, status = cmd_char(args, cache)
        elif args.command == "chara":
            lines, status = cmd_chara(args, cache)
        elif args.command == "verify":
            lines, status = cmd_verify(args, cache)
        elif args.command == "repcheck":
            lines, status = cmd_repcheck(args)
        else:  # pragma: no cover
            raise CLIError(f"unknown command {args.command}")
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except QuiverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
