"""Normalizers and centralizers.

Inside an ambient group the strategy ladder is: full element scan while the
ambient group is enumerable, then a scan over coset representatives while
the index is moderate.  The normalizer in the full symmetric group is
computed exactly by a different route: every normalizing permutation g
induces an automorphism of S by conjugation, and for a fixed automorphism
alpha the solutions are assembled orbit by orbit (the image of one point per
orbit determines g on the whole orbit, and a point q is a valid image of p
iff the point stabilizers satisfy S_q = alpha(S_p)).  Enumerating Aut(S) and
those assembly choices yields N_{Sym(n)}(S) with no search over Sym(n).

Budgets are explicit; exceeding one raises ResourceExhausted rather than
returning a truncated answer.
"""

from __future__ import annotations

from math import factorial

import numpy as np

from .group import PermutationGroup, ResourceExhausted
from .perm import Permutation

SCAN_LIMIT = 10**5
COSET_SCAN_LIMIT = 10**4
AUT_ENUM_LIMIT = 500
SYM_NORM_DEGREE_LIMIT = 256
SYM_NORM_SIZE_LIMIT = 4 * 10**6


def group_from_elements(degree, elems, parent=None):
    """Build a group from an explicit element dict key->perm, with known order."""
    order = len(elems)
    gens = []
    H = None
    for _, p in sorted(elems.items()):
        if p.is_identity():
            continue
        if H is None or p not in H:
            gens.append(p)
            H = PermutationGroup(gens, degree)
            if H.order() == order:
                break
    if parent is not None:
        return parent.subgroup(gens, order=order)
    return PermutationGroup(gens, degree, order=order)


def normalizer(G: PermutationGroup, S: PermutationGroup) -> PermutationGroup:
    """N_G(S) by the scan ladder; exact or ResourceExhausted."""
    if S.order() == 1:
        return G
    if G.order() <= SCAN_LIMIT:
        elems = {
            p.key(): p
            for p in G.elements()
            if all(s.conj(p) in S for s in S.gens)
        }
        return group_from_elements(G.degree, elems, parent=G)
    index, rem = divmod(G.order(), S.order())
    if rem == 0 and index <= COSET_SCAN_LIMIT and all(g in G for g in S.gens):
        return _normalizer_coset_scan(G, S)
    if _is_natural_symmetric(G):
        return normalizer_in_sym(S)
    if _is_natural_alternating(G):
        N = normalizer_in_sym(S)
        return _even_part(N, parent=G)
    raise ResourceExhausted(
        "no normalizer strategy applies: |G|=%d, |G:S|~%s" % (G.order(), index)
    )


def _normalizer_coset_scan(G: PermutationGroup, S: PermutationGroup):
    """Scan right-coset representatives of S in G; N_G(S) is a union of cosets."""
    from .cosets import CosetSpace

    space = CosetSpace(G, S, max_index=COSET_SCAN_LIMIT + 1)
    gens = list(S.gens)
    count = 0
    for r in space.reps:
        if all(s.conj(r) in S for s in S.gens):
            count += 1
            if not r.is_identity():
                gens.append(r)
    return G.subgroup(gens, order=S.order() * count)


def centralizer(G: PermutationGroup, x: Permutation) -> PermutationGroup:
    if G.order() <= SCAN_LIMIT:
        elems = {p.key(): p for p in G.elements() if p * x == x * p}
        return group_from_elements(G.degree, elems, parent=G)
    C = centralizer_in_sym(x)
    if _is_natural_symmetric(G):
        return C
    if _is_natural_alternating(G):
        return _even_part(C, parent=G)
    raise ResourceExhausted("no centralizer strategy applies: |G|=%d" % G.order())


def centralizer_in_sym(x: Permutation) -> PermutationGroup:
    """C_{Sym(n)}(x) from the cycle structure: cycle powers and cycle transports."""
    n = x.degree
    by_len = {}
    for cyc in x.cycles(include_fixed=True):
        by_len.setdefault(len(cyc), []).append(cyc)
    gens = []
    order = 1
    for length, cycs in sorted(by_len.items()):
        k = len(cycs)
        order *= length**k * factorial(k)
        if length > 1:
            gens.append(Permutation.from_cycles(n, [cycs[0]]))
        for i in range(k - 1):
            a, b = cycs[i], cycs[i + 1]
            gens.append(Permutation.from_cycles(n, list(zip(a, b))))
    return PermutationGroup(gens, n, order=order)


def _is_natural_symmetric(G):
    return G.order() == factorial(G.degree)


def _is_natural_alternating(G):
    return G.order() == factorial(G.degree) // 2 and all(g.is_even() for g in G.gens)


def _even_part(N: PermutationGroup, parent=None) -> PermutationGroup:
    """Kernel of the sign map on N (Reidemeister-Schreier over {1, o0})."""
    evens = [g for g in N.gens if g.is_even()]
    odds = [g for g in N.gens if not g.is_even()]
    if not odds:
        gens, order = N.gens, N.order()
    else:
        o0 = odds[0]
        o0i = o0.inverse()
        gens = list(evens)
        gens += [o0 * e * o0i for e in evens]
        gens += [o * o0i for o in odds]
        gens += [o0 * o for o in odds]
        order = N.order() // 2
    if parent is not None:
        return parent.subgroup(gens, order=order)
    return PermutationGroup(gens, N.degree, order=order)


# -- N_{Sym(n)}(S) -----------------------------------------------------------


class SymNormalizerData:
    """Precomputed structure of S used to assemble normalizing permutations."""

    def __init__(self, S: PermutationGroup):
        if S.degree > SYM_NORM_DEGREE_LIMIT:
            raise ResourceExhausted(
                "symmetric normalizer limited to degree %d (got %d)"
                % (SYM_NORM_DEGREE_LIMIT, S.degree)
            )
        self.S = S
        self.n = S.degree
        self.elems = [p for _, p in sorted(S.element_set().items())]
        self.index_of = {p.key(): i for i, p in enumerate(self.elems)}
        m = len(self.elems)
        # stabilizer key per point: frozenset of element indices fixing it
        fix = np.zeros((m, self.n), dtype=bool)
        for i, p in enumerate(self.elems):
            fix[i] = p.images == np.arange(self.n)
        self.stab_key = [frozenset(np.flatnonzero(fix[:, v]).tolist()) for v in range(self.n)]
        self.points_by_key = {}
        for v in range(self.n):
            self.points_by_key.setdefault(self.stab_key[v], []).append(v)
        # orbits with transversal element indices: point -> index of sigma with rep^sigma = point
        self.orbits = []
        seen = set()
        for v in range(self.n):
            if v in seen:
                continue
            orb = S.orbit(v)
            sigma = {}
            for a in orb.points:
                t = orb.transversal(a)
                sigma[a] = self.index_of[self._member_key(t)]
            self.orbits.append((v, orb.points, sigma))
            seen.update(orb.points)

    def _member_key(self, p):
        k = p.key()
        if k not in self.index_of:
            raise AssertionError("transversal element outside S")
        return k

    def _multiplication_table_row(self, i):
        if not hasattr(self, "_mul"):
            self._mul = {}
        row = self._mul.get(i)
        if row is None:
            pi = self.elems[i]
            row = [self.index_of[(pi * q).key()] for q in self.elems]
            self._mul[i] = row
        return row

    def automorphisms(self):
        """All automorphisms of S as index permutations of the element list.

        Depth-first over images of a generating sequence, closing the
        partial map multiplicatively after each assignment so inconsistent
        branches die immediately.  Candidate images are filtered by the
        (order, class size, cycle type) invariant.
        """
        elems = self.elems
        m = len(elems)
        class_id = [-1] * m
        classes = []
        for i in range(m):
            if class_id[i] != -1:
                continue
            cid = len(classes)
            members = [i]
            class_id[i] = cid
            head = 0
            while head < len(members):
                p = elems[members[head]]
                head += 1
                for g in self.S.gens:
                    j = self.index_of[p.conj(g).key()]
                    if class_id[j] == -1:
                        class_id[j] = cid
                        members.append(j)
            classes.append(members)
        inv_class = [
            (elems[i].order(), len(classes[class_id[i]]), elems[i].cycle_type())
            for i in range(m)
        ]
        candidates_of = {}
        for i in range(m):
            candidates_of.setdefault(inv_class[i], []).append(i)

        ident_idx = next(i for i, p in enumerate(elems) if p.is_identity())

        # generating sequence, greedily preferring rare invariants
        gens_idx = []
        H = None
        by_rarity = sorted(
            (i for i in range(m) if i != ident_idx),
            key=lambda i: (len(candidates_of[inv_class[i]]), elems[i].key()),
        )
        for i in by_rarity:
            if H is None or elems[i] not in H:
                gens_idx.append(i)
                H = PermutationGroup([elems[j] for j in gens_idx], self.n)
                if H.order() == m:
                    break

        mul = self._multiplication_table_row
        auts = []

        def close(mapping, src, img):
            """Add src->img to the partial multiplicative map; None on clash."""
            out = dict(mapping)
            queue = [(src, img)]
            while queue:
                s, t = queue.pop()
                known = out.get(s)
                if known is not None:
                    if known != t:
                        return None
                    continue
                if inv_class[s] != inv_class[t]:
                    return None
                out[s] = t
                for s2, t2 in list(out.items()):
                    queue.append((mul(s)[s2], mul(t)[t2]))
                    queue.append((mul(s2)[s], mul(t2)[t]))
            return out

        base = {ident_idx: ident_idx}

        def dfs(level, mapping):
            if level == len(gens_idx):
                if len(mapping) == m and len(set(mapping.values())) == m:
                    auts.append(tuple(mapping[i] for i in range(m)))
                    if len(auts) > AUT_ENUM_LIMIT:
                        raise ResourceExhausted(
                            "more than %d automorphisms" % AUT_ENUM_LIMIT
                        )
                return
            src = gens_idx[level]
            if src in mapping:
                dfs(level + 1, mapping)
                return
            for img in candidates_of[inv_class[src]]:
                nxt = close(mapping, src, img)
                if nxt is not None:
                    dfs(level + 1, nxt)

        dfs(0, base)
        return auts

    def realization_bound(self, alpha) -> int:
        """Upper bound on the number of realizations of alpha."""
        bound = 1
        for rep, pts, sigma in self.orbits:
            alpha_key = frozenset(alpha[i] for i in self.stab_key[rep])
            bound *= len(self.points_by_key.get(alpha_key, []))
            if bound == 0:
                return 0
        return bound

    def realizations(self, alpha):
        """Yield every g in Sym(n) with s^g = alpha(s) for all s in S."""
        orbit_keys = []
        for rep, pts, sigma in self.orbits:
            key = self.stab_key[rep]
            alpha_key = frozenset(alpha[i] for i in key)
            cands = self.points_by_key.get(alpha_key, [])
            orbit_keys.append((rep, pts, sigma, cands))
        if not hasattr(self, "_head_of"):
            self._head_of = {}
            for rep, pts, _ in self.orbits:
                for a in pts:
                    self._head_of[a] = rep
        head_of = self._head_of
        g = np.full(self.n, -1, dtype=np.int64)
        used = set()

        def assign(k):
            if k == len(orbit_keys):
                yield Permutation(g.copy(), validate=False)
                return
            rep, pts, sigma, cands = orbit_keys[k]
            for q in cands:
                head = head_of[q]
                if head in used:
                    continue
                used.add(head)
                for a in pts:
                    g[a] = self.elems[alpha[sigma[a]]].images[q]
                yield from assign(k + 1)
                used.discard(head)

        yield from assign(0)

    def all_elements(self, size_limit=SYM_NORM_SIZE_LIMIT, alpha_filter=None):
        elems = {}
        for alpha in self.automorphisms():
            if alpha_filter is not None and not alpha_filter(alpha):
                continue
            if self.realization_bound(alpha) > 40 * size_limit:
                raise ResourceExhausted(
                    "symmetric normalizer enumeration is hopeless "
                    "(per-automorphism bound above %d)" % (40 * size_limit)
                )
            for g in self.realizations(alpha):
                elems[g.key()] = g
                if len(elems) > size_limit:
                    raise ResourceExhausted(
                        "symmetric normalizer larger than %d elements" % size_limit
                    )
        return elems


def normalizer_in_sym(S: PermutationGroup, size_limit=SYM_NORM_SIZE_LIMIT):
    """N_{Sym(n)}(S) as a group whose full element list has been assembled.

    Every element is normalizing by construction (each realization is
    conjugation-equivariant); the group generators are re-verified as a
    spot check.
    """
    data = SymNormalizerData(S)
    elems = data.all_elements(size_limit)
    N = group_from_elements(S.degree, elems)
    for g in N.gens:
        for s in S.gens:
            assert s.conj(g) in S
    N._elements_cache = dict(sorted(elems.items()))
    return N
