"""Figure rendering for CLI reports.

Each report subcommand can drop a matplotlib figure next to its delimited
output: multiplicity tables become per-height totals, q-series become
coefficient stems over the exponent axis, crystals become per-layer node
counts.  Floats appear here only for drawing; the reports stay exact.
"""


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_height_totals(pairs, path, title, ylabel="total multiplicity"):
    """pairs: iterable of (nu tuple, multiplicity)."""
    totals = {}
    for nu, m in pairs:
        h = sum(nu)
        totals[h] = totals.get(h, 0) + m
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.2))
    heights = sorted(totals)
    ax.bar(heights, [totals[h] for h in heights], color="#3b6ea5")
    ax.set_xlabel("height")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_series(series, path, title):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.2))
    items = series.sorted_items()
    if items:
        xs = [float(e) for e, _ in items]
        ys = [c for _, c in items]
        ax.stem(xs, ys)
    ax.set_xlabel("exponent")
    ax.set_ylabel("coefficient")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_layers(graph, sigma, path, title):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.2))
    totals = {}
    fixed = {}
    for node in graph.nodes:
        h = node.height
        totals[h] = totals.get(h, 0) + 1
        if sigma is not None and sigma[node.index] == node.index:
            fixed[h] = fixed.get(h, 0) + 1
    hs = sorted(totals)
    ax.bar(hs, [totals[h] for h in hs], color="#b0bec5", label="nodes")
    if sigma is not None:
        ax.bar(hs, [fixed.get(h, 0) for h in hs], color="#3b6ea5", label="fixed")
        ax.legend()
    ax.set_xlabel("height")
    ax.set_ylabel("nodes per layer")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_verify(report, path, title):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.2))
    items = report.character.sorted_items()
    if items:
        xs = [float(e) for e, _ in items]
        ax.plot(xs, [c for _, c in items], "o-", label="normalized character")
    titems = report.twisted_trace.sorted_items()
    if titems:
        xs = [float(e) for e, _ in titems]
        ax.plot(xs, [c for _, c in titems], "x--", label="twisted trace")
    ax.set_xlabel("exponent")
    ax.set_ylabel("coefficient")
    ax.legend()
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
