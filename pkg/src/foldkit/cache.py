"""Versioned on-disk result cache.

Files are canonical JSON carrying a format version and the full request key
(datum hash included); a version or key mismatch means the file is ignored,
never misread.  Cache hits change runtime only, not output bytes.
"""

import hashlib
import json
import os

FORMAT_VERSION = 1


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def datum_hash(datum):
    return hashlib.sha256(
        canonical_json({"labels": list(datum.labels),
                        "form": [list(r) for r in datum.form]}).encode()).hexdigest()


class Cache:
    def __init__(self, directory):
        self.directory = directory

    def _path(self, kind, key):
        digest = hashlib.sha256(canonical_json(key).encode()).hexdigest()[:24]
        return os.path.join(self.directory, f"{kind}-{digest}.json")

    def get(self, kind, key):
        path = self._path(kind, key)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                blob = json.load(fh)
        except (OSError, ValueError):
            return None
        if blob.get("version") != FORMAT_VERSION or blob.get("key") != key:
            return None
        return blob.get("payload")

    def put(self, kind, key, payload):
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(kind, key)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(canonical_json({"version": FORMAT_VERSION, "key": key,
                                     "payload": payload}))
        os.replace(tmp, path)


def cache_from_env(cli_dir):
    directory = os.environ.get("FOLDKIT_CACHE") or cli_dir
    return Cache(directory) if directory else None


def mult_table_payload(table):
    return {"depth": table.depth,
            "entries": sorted([list(nu) + [m] for nu, m in table.entries.items()])}


def crystal_payload(graph):
    nodes = []
    for node in graph.nodes:
        nodes.append({
            "den": node.den,
            "corners": [list(c) for c in node.corners],
            "nu": list(node.nu),
            "eps": list(node.eps),
            "phi": list(node.phi),
            "parent": node.parent,
            "label": node.parent_label,
        })
    edges = sorted([src, j, dst] for (src, j), dst in graph.edges.items())
    return {"depth": graph.depth,
            "box": list(graph.box) if graph.box is not None else None,
            "nodes": nodes, "edges": edges}


def crystal_from_payload(datum, lam, payload):
    from foldkit.crystal import CrystalGraph, CrystalNode, _PathCtx
    ctx = _PathCtx(datum, lam)
    nodes = []
    for rec in payload["nodes"]:
        node = CrystalNode(rec["den"], tuple(tuple(c) for c in rec["corners"]),
                           tuple(rec["nu"]), tuple(rec["eps"]), tuple(rec["phi"]))
        node.index = len(nodes)
        node.parent = rec["parent"]
        node.parent_label = rec["label"]
        nodes.append(node)
    edges = {(src, j): dst for src, j, dst in payload["edges"]}
    box = tuple(payload["box"]) if payload["box"] is not None else None
    return CrystalGraph(datum, lam, payload["depth"], box, ctx, nodes, edges)
