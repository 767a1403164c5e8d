"""Partitioned cacti <-> cactus trees.

The forward map works directly on the factor tuple through the label maps
``sigma_l`` (color-``l`` edge label of each r-gon); no surface embedding is
ever built.  The inverse recovers every numeric label from the tree shape
and the symbols alone.

Tree ids are assigned in depth-first order from the root (a vertex, then
each child polygon in order followed by its descendant vertices), which
makes structural equality the same as dataclass equality.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .budget import BudgetExceeded
from .cactus import PartitionedCactus
from .formula import AVector, cyclic_gap, subset_mask
from .perm import Permutation, compose, long_cycle


class MalformedTree(ValueError):
    """The input is not a cactus tree the inverse map can decode."""


class RunLengthError(AssertionError):
    """A run of maxima is longer than r - 1."""


@dataclass
class TreeVertex:
    id: int
    color: int
    children: list[int] = field(default_factory=list)


@dataclass
class Polygon:
    id: int
    arity: int
    attach: int
    descendants: list[int]
    symbol: int


@dataclass
class CactusTree:
    r: int
    root: int
    vertices: list[TreeVertex]
    polygons: list[Polygon]

    @property
    def n(self) -> int:
        return len({p.symbol for p in self.polygons})

    def vertex(self, vid: int) -> TreeVertex:
        return self.vertices[vid]

    def polygon(self, pid: int) -> Polygon:
        return self.polygons[pid]

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "root": self.root,
            "vertices": [{"id": v.id, "color": v.color, "children": list(v.children)} for v in self.vertices],
            "polygons": [{"id": p.id, "arity": p.arity, "attach": p.attach,
                          "descendants": list(p.descendants), "symbol": p.symbol} for p in self.polygons],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> CactusTree:
        try:
            vertices = sorted((TreeVertex(int(v["id"]), int(v["color"]), [int(c) for c in v["children"]])
                               for v in d["vertices"]), key=lambda v: v.id)
            polygons = sorted((Polygon(int(p["id"]), int(p["arity"]), int(p["attach"]),
                                       [int(x) for x in p["descendants"]], int(p["symbol"]))
                               for p in d["polygons"]), key=lambda p: p.id)
            tree = cls(int(d["r"]), int(d["root"]), vertices, polygons)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedTree(f"cannot read cactus tree: {exc!r}") from exc
        if [v.id for v in vertices] != list(range(len(vertices))):
            raise MalformedTree("vertex ids must be 0..V-1")
        if [p.id for p in polygons] != list(range(len(polygons))):
            raise MalformedTree("polygon ids must be 0..P-1")
        return tree

    def canonical(self, relabel_symbols: bool = False) -> CactusTree:
        """Renumber ids depth-first; optionally rename symbols 1, 2, ... by first use."""
        vmap: dict[int, int] = {}
        pmap: dict[int, int] = {}
        smap: dict[int, int] = {}
        vorder: list[int] = []
        porder: list[int] = []

        def visit(vid: int):
            if vid in vmap or len(vorder) > len(self.vertices):
                raise MalformedTree(f"vertex {vid} is reached twice")
            vmap[vid] = len(vorder)
            vorder.append(vid)
            for pid in self.vertices[vid].children:
                if pid in pmap:
                    raise MalformedTree(f"polygon {pid} is reached twice")
                pmap[pid] = len(porder)
                porder.append(pid)
                smap.setdefault(self.polygons[pid].symbol, len(smap) + 1)
                for d in self.polygons[pid].descendants:
                    visit(d)

        visit(self.root)
        if len(vorder) != len(self.vertices) or len(porder) != len(self.polygons):
            raise MalformedTree("tree is not connected from the root")
        vertices = [TreeVertex(vmap[v], self.vertices[v].color, [pmap[c] for c in self.vertices[v].children])
                    for v in vorder]
        polygons = []
        for pid in porder:
            p = self.polygons[pid]
            polygons.append(Polygon(pmap[pid], p.arity, vmap[p.attach], [vmap[d] for d in p.descendants],
                                    smap[p.symbol] if relabel_symbols else p.symbol))
        return CactusTree(self.r, 0, vertices, polygons)

    def shape_key(self) -> str:
        """Serialization with symbols renamed by first use, for injectivity checks."""
        return self.canonical(relabel_symbols=True).to_json()

    def to_dot(self) -> str:
        lines = ["graph cactus_tree {"]
        for v in self.vertices:
            shape = "doublecircle" if v.id == self.root else "circle"
            lines.append(f'  v{v.id} [label="{v.color}", shape={shape}];')
        for p in self.polygons:
            lines.append(f'  g{p.id} [label="{p.symbol}", shape=box];')
            lines.append(f"  v{p.attach} -- g{p.id};")
            for d in p.descendants:
                lines.append(f"  g{p.id} -- v{d};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _next_color(c: int, k: int, r: int) -> int:
    return (c - 1 + k) % r + 1


def runs_of_maxima(pc: PartitionedCactus) -> dict[int, list[list[int]]]:
    """For each r-gon g, the runs of colors at which g holds its vertex's largest label.

    Color 1 is dropped (splitting its run) when that maximum sits on the
    root, i.e. the color-1 block containing 1.
    """
    r, n = pc.r, pc.n
    sig = pc.cactus.label_maps()
    biggest = []
    for i in range(r):
        top = {}
        for b in pc.partitions[i].blocks:
            m = max(sig[i](g) for g in b)
            for g in b:
                top[g] = m
        biggest.append(top)
    root_block = pc.partitions[0].block_of(1)
    out = {}
    for g in range(1, n + 1):
        s = {i + 1 for i in range(r) if sig[i](g) == biggest[i][g]}
        if g in root_block:
            s.discard(1)
        if len(s) == r:
            raise RunLengthError(f"r-gon {g}: every color holds a maximum")
        runs = []
        for i in sorted(s):
            if _next_color(i, -1, r) in s:
                continue
            run = [i]
            while _next_color(run[-1], 1, r) in s:
                run.append(_next_color(run[-1], 1, r))
            runs.append(run)
        for run in runs:
            if len(run) > r - 1:
                raise RunLengthError(f"r-gon {g}: run {run} longer than r - 1")
        out[g] = runs
    return out


def forward(pc: PartitionedCactus) -> CactusTree:
    """Map a partitioned cactus to its cactus tree (symbols = r-gon indices)."""
    r, n = pc.r, pc.n
    sig = pc.cactus.label_maps()
    sig_inv = [s.inverse() for s in sig]
    runs = runs_of_maxima(pc)

    # tree-vertex per block, keyed (color, index of block)
    block_index = []
    for i in range(r):
        idx = {}
        for k, b in enumerate(pc.partitions[i].blocks):
            for g in b:
                idx[g] = k
        block_index.append(idx)
    root_key = (1, block_index[0][1])

    attach_colors: dict[int, list[int]] = {}
    for g in range(1, n + 1):
        covered = {c for run in runs[g] for c in run}
        attach_colors[g] = [c for c in range(1, r + 1) if c not in covered]

    arity = {}
    for g in range(1, n + 1):
        t = subset_mask(attach_colors[g])
        for c in attach_colors[g]:
            arity[(g, c)] = cyclic_gap(t, c, r)

    # children of each tree-vertex: polygons (g, c) in ascending label order
    children: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i in range(1, r + 1):
        for k, b in enumerate(pc.partitions[i - 1].blocks):
            labels = sorted(sig[i - 1](g) for g in b)
            kids = []
            for x in labels:
                g = sig_inv[i - 1](x)
                if (g, i) in arity:
                    kids.append((g, i))
                elif x != labels[-1] or (i, k) == root_key:
                    raise AssertionError(f"label {x} of color {i} vanished without being a maximum")
            children[(i, k)] = kids

    vertices: list[TreeVertex] = []
    polygons: list[Polygon] = []

    def visit(key: tuple[int, int]) -> int:
        vid = len(vertices)
        vertex = TreeVertex(vid, key[0])
        vertices.append(vertex)
        for g, c in children[key]:
            pid = len(polygons)
            poly = Polygon(pid, arity[(g, c)], vid, [], g)
            polygons.append(poly)
            vertex.children.append(pid)
            for step in range(1, poly.arity):
                u = _next_color(c, step, r)
                poly.descendants.append(visit((u, block_index[u - 1][g])))
        return vid

    visit(root_key)
    total = sum(len(sp) for sp in pc.partitions)
    if len(vertices) != total:
        raise AssertionError(f"forward image reaches {len(vertices)} of {total} tree-vertices")
    return CactusTree(r, 0, vertices, polygons)


def _symbol_slots(ct: CactusTree) -> dict[tuple[int, int], tuple[int, int]]:
    """(symbol, color) -> (polygon id, vertex id) of that symbol's color slot."""
    slots = {}
    for p in ct.polygons:
        c = ct.vertices[p.attach].color
        owners = [p.attach] + list(p.descendants)
        for step, vid in enumerate(owners):
            u = _next_color(c, step, ct.r)
            if (p.symbol, u) in slots:
                raise MalformedTree(f"symbol {p.symbol} covers color {u} twice")
            slots[(p.symbol, u)] = (p.id, vid)
    return slots


def inverse(ct: CactusTree) -> PartitionedCactus:
    """Recover the partitioned cactus whose forward image is ``ct``."""
    problems = validate_tree(ct)
    if problems:
        raise MalformedTree("; ".join(problems))
    r = ct.r
    symbols = sorted({p.symbol for p in ct.polygons})
    n = len(symbols)
    slots = _symbol_slots(ct)

    parent: dict[int, int] = {}
    for p in ct.polygons:
        for d in p.descendants:
            parent[d] = p.id
    # labels around a vertex increase along its children, then its parent polygon
    around = {v.id: list(v.children) + ([parent[v.id]] if v.id in parent else []) for v in ct.vertices}
    label: dict[tuple[int, int], int] = {}  # (polygon id, color) -> numeric label

    def assign(vid: int, value: int) -> int:
        color = ct.vertices[vid].color
        for pid in around[vid]:
            if (pid, color) not in label:
                label[(pid, color)] = value
                return pid
        raise MalformedTree(f"no unlabelled polygon left at vertex {vid} for color-{color} label {value}")

    pid = assign(ct.root, 1)
    for i in range(1, n + 1):
        sym = ct.polygons[pid].symbol
        for u in range(r, 1, -1):
            _, vid = slots[(sym, u)]
            sym = ct.polygons[assign(vid, i)].symbol
        if i < n:
            _, w = slots[(sym, 1)]
            pid = assign(w, i + 1)

    # sigma_u(g) for the symbol whose color-1 label is g
    sig_images = [[0] * n for _ in range(r)]
    for s in symbols:
        g = label[(slots[(s, 1)][0], 1)]
        for u in range(1, r + 1):
            sig_images[u - 1][g - 1] = label[(slots[(s, u)][0], u)]
    try:
        sig = [Permutation(tuple(row)) for row in sig_images]
        alphas = [compose(long_cycle(n), sig[1])]
        for u in range(2, r):
            alphas.append(compose(sig[u - 1].inverse(), sig[u]))
        alphas.append(sig[r - 1].inverse())
        partitions = []
        for u in range(1, r + 1):
            inv = sig[u - 1].inverse()
            blocks = []
            for v in ct.vertices:
                if v.color == u:
                    blocks.append(tuple(inv(label[(q, u)]) for q in around[v.id]))
            partitions.append(blocks)
        return PartitionedCactus.build(alphas, partitions)
    except ValueError as exc:
        raise MalformedTree(f"recovered labels do not form a partitioned cactus: {exc}") from exc


def validate_tree(ct: CactusTree) -> list[str]:
    """Every violated cactus-tree condition, as readable strings (empty when valid)."""
    out: list[str] = []
    r = ct.r
    nv, npoly = len(ct.vertices), len(ct.polygons)
    if r < 2:
        return [f"r={r} must be >= 2"]
    if not 0 <= ct.root < nv:
        return [f"root {ct.root} is not a vertex"]
    if ct.vertices[ct.root].color != 1:
        out.append(f"(i) root has color {ct.vertices[ct.root].color}, not 1")
    for v in ct.vertices:
        if not 1 <= v.color <= r:
            out.append(f"vertex {v.id} has color {v.color} outside 1..{r}")
    owner = Counter()
    for v in ct.vertices:
        for pid in v.children:
            if not 0 <= pid < npoly:
                out.append(f"vertex {v.id} lists unknown polygon {pid}")
                continue
            owner[pid] += 1
            if ct.polygons[pid].attach != v.id:
                out.append(f"polygon {pid} is listed under vertex {v.id} but attaches to {ct.polygons[pid].attach}")
    parents = Counter()
    for p in ct.polygons:
        if owner[p.id] != 1:
            out.append(f"polygon {p.id} appears {owner[p.id]} times among children")
        if not 1 <= p.arity <= r:
            out.append(f"(ii) polygon {p.id} has arity {p.arity} outside 1..{r}")
        if len(p.descendants) != p.arity - 1:
            out.append(f"(ii) polygon {p.id} of arity {p.arity} has {len(p.descendants)} descendants")
        if not 0 <= p.attach < nv or any(not 0 <= d < nv for d in p.descendants):
            out.append(f"polygon {p.id} references an unknown vertex")
            continue
        c = ct.vertices[p.attach].color
        for step, d in enumerate(p.descendants, start=1):
            parents[d] += 1
            want = _next_color(c, step, r)
            if ct.vertices[d].color != want:
                out.append(f"(ii) polygon {p.id}: descendant {d} has color {ct.vertices[d].color}, expected {want}")
    for v in ct.vertices:
        expected = 0 if v.id == ct.root else 1
        if parents[v.id] != expected:
            out.append(f"vertex {v.id} has {parents[v.id]} parent polygons, expected {expected}")
    if out:
        return out
    try:
        ct.canonical()
    except MalformedTree as exc:
        out.append(str(exc))
        return out
    by_symbol: dict[int, list[Polygon]] = {}
    for p in ct.polygons:
        by_symbol.setdefault(p.symbol, []).append(p)
    for s, polys in sorted(by_symbol.items()):
        colors = Counter()
        for p in polys:
            c = ct.vertices[p.attach].color
            for step in range(p.arity):
                colors[_next_color(c, step, r)] += 1
        if any(colors[u] != 1 for u in range(1, r + 1)):
            out.append(f"(iii) symbol {s} covers colors {dict(sorted(colors.items()))}, not each once")
            continue
        t = subset_mask(ct.vertices[p.attach].color for p in polys)
        for p in polys:
            c = ct.vertices[p.attach].color
            if p.arity != cyclic_gap(t, c, r):
                out.append(f"(iv) symbol {s}: arity {p.arity} at color {c} does not follow its pattern")
    return out


def avector_of(ct: CactusTree) -> AVector:
    """Pattern counts: each symbol contributes one to a_t, t = its attachment colors."""
    problems = validate_tree(ct)
    if problems:
        raise MalformedTree("; ".join(problems))
    attach: dict[int, set[int]] = {}
    for p in ct.polygons:
        attach.setdefault(p.symbol, set()).add(ct.vertices[p.attach].color)
    counts = Counter(subset_mask(cs) for cs in attach.values())
    a = AVector(ct.r, dict(counts))
    have = Counter(v.color for v in ct.vertices)
    if a.p_vector() != tuple(have[c] for c in range(1, ct.r + 1)):
        raise MalformedTree(f"vertex counts {dict(have)} disagree with pattern counts {a}")
    return a


MAX_TREE_ENUM_N = 3


def enumerate_cactus_trees(a: AVector) -> list[CactusTree]:
    """Every cactus tree with pattern counts ``a``, by brute-force construction.

    Shapes are grown as plane trees from the multiset of (color, arity)
    polygons that ``a`` prescribes; symbols are then assigned in every way
    that groups polygons into the patterns of ``a``.  Independent of the
    forward map.
    """
    r, n = a.r, a.n
    if n > MAX_TREE_ENUM_N:
        raise BudgetExceeded(f"tree enumeration is limited to n <= {MAX_TREE_ENUM_N}, got n={n}")
    if n == 0 or min(a.p_vector()) < 0:
        return []
    need: Counter = Counter()
    patterns = []
    for t, v in a.counts:
        members = [c for c in range(1, r + 1) if t >> (c - 1) & 1]
        pat = {c: cyclic_gap(t, c, r) for c in members}
        patterns.append((pat, v))
        for c, j in pat.items():
            need[(c, j)] += v
    kinds = sorted(need)
    start = tuple(need[k] for k in kinds)

    def take(state, k):
        s = list(state)
        s[k] -= 1
        return tuple(s)

    def grow_vertex(color, state):
        for kids, s in grow_children(color, state):
            yield (color, kids), s

    def grow_children(color, state):
        yield [], state
        for k, (c, j) in enumerate(kinds):
            if c != color or not state[k]:
                continue
            for descs, s1 in grow_descendants(color, j, 1, take(state, k)):
                for rest, s2 in grow_children(color, s1):
                    yield [(j, descs)] + rest, s2

    def grow_descendants(color, j, step, state):
        if step == j:
            yield [], state
            return
        for sub, s1 in grow_vertex(_next_color(color, step, r), state):
            for rest, s2 in grow_descendants(color, j, step + 1, s1):
                yield [sub] + rest, s2

    trees = []
    for shape, left in grow_vertex(1, start):
        if any(left):
            continue
        vertices: list[TreeVertex] = []
        polygons: list[Polygon] = []

        def build(node):
            color, kids = node
            vid = len(vertices)
            vertex = TreeVertex(vid, color)
            vertices.append(vertex)
            for j, descs in kids:
                poly = Polygon(len(polygons), j, vid, [], 0)
                polygons.append(poly)
                vertex.children.append(poly.id)
                for d in descs:
                    poly.descendants.append(build(d))
            return vid

        build(shape)
        kinds_of = [(vertices[p.attach].color, p.arity) for p in polygons]
        for grouping in _groupings(kinds_of, patterns):
            polys = [Polygon(p.id, p.arity, p.attach, list(p.descendants), grouping[p.id]) for p in polygons]
            verts = [TreeVertex(v.id, v.color, list(v.children)) for v in vertices]
            trees.append(CactusTree(r, 0, verts, polys))
    return trees


def _groupings(kinds_of: list[tuple[int, int]], patterns):
    """Ways to split polygons into unordered symbol groups matching ``patterns``.

    Yields a symbol per polygon id; symbols are numbered by first use.
    """
    remaining = [v for _, v in patterns]
    symbol = [0] * len(kinds_of)

    def rec(next_sym):
        try:
            first = symbol.index(0)
        except ValueError:
            yield list(symbol)
            return
        c0, j0 = kinds_of[first]
        for idx, (pat, _) in enumerate(patterns):
            if not remaining[idx] or pat.get(c0) != j0:
                continue
            others = [(c, j) for c, j in sorted(pat.items()) if c != c0]
            remaining[idx] -= 1
            symbol[first] = next_sym
            yield from pick(others, 0, next_sym)
            symbol[first] = 0
            remaining[idx] += 1

    def pick(others, k, sym):
        if k == len(others):
            yield from rec(sym + 1)
            return
        for pid, kind in enumerate(kinds_of):
            if symbol[pid] == 0 and kind == others[k]:
                symbol[pid] = sym
                yield from pick(others, k + 1, sym)
                symbol[pid] = 0

    yield from rec(1)
