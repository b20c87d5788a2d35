"""Independent brute-force oracles used to freeze expected values.

Everything here avoids the stabilizer chain and the refinement machinery on
purpose: closures are plain BFS products, scans iterate explicit element
lists, and partition checks enumerate candidate partitions directly.
"""

from itertools import permutations as iter_permutations

from hatlab.group import closure_elements
from hatlab.perm import Permutation


def closure_order(gens, degree):
    return len(closure_elements(gens, degree))


def element_scan_normalizer(ambient_elems, sub_elems):
    sub_keys = {p.key() for p in sub_elems}
    out = []
    for g in ambient_elems:
        gi = g.inverse()
        if all((gi * s * g).key() in sub_keys for s in sub_elems):
            out.append(g)
    return out


def element_scan_centralizer(ambient_elems, x):
    return [g for g in ambient_elems if g * x == x * g]


def all_subgroups(elems, degree):
    """Every subgroup of a small group, as frozensets of element keys."""
    elems = list(elems)
    key_to = {p.key(): p for p in elems}
    subgroups = set()
    ident = Permutation.identity(degree)
    frontier = {frozenset([ident.key()])}
    subgroups.add(frozenset([ident.key()]))
    while frontier:
        nxt = set()
        for fs in frontier:
            base = [key_to[k] for k in fs]
            for p in elems:
                if p.key() in fs:
                    continue
                closed = closure_elements(base + [p], degree)
                new_fs = frozenset(closed.keys())
                if new_fs not in subgroups:
                    subgroups.add(new_fs)
                    nxt.add(new_fs)
        frontier = nxt
    return subgroups


def is_maximal_by_lattice(group_elems, sub_keys, degree):
    """Maximality via the full subgroup lattice of a small group."""
    key_to = {p.key(): p for p in group_elems}
    whole = frozenset(key_to.keys())
    subs = all_subgroups(group_elems, degree)
    for t in subs:
        if sub_keys < t < whole:
            return False
    return sub_keys < whole


def brute_force_graph_aut_order(n, edge_set):
    count = 0
    for imgs in iter_permutations(range(n)):
        ok = True
        for u, v in edge_set:
            a, b = imgs[u], imgs[v]
            if (a, b) not in edge_set and (b, a) not in edge_set:
                ok = False
                break
        if ok:
            count += 1
    return count


def all_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def block_systems_exhaustive(gens, n):
    """All nontrivial block systems of a transitive group, by partition scan."""
    out = []
    for part in all_partitions(range(n)):
        if len(part) in (1, n):
            continue
        sets = [frozenset(b) for b in part]
        size = len(sets[0])
        if any(len(b) != size for b in sets):
            continue
        as_set = set(sets)
        ok = True
        for g in gens:
            for b in sets:
                img = frozenset(int(g.images[v]) for v in b)
                if img not in as_set:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(frozenset(sets))
    return out
