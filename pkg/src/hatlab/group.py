"""Permutation groups backed by a base and strong generating set.

The chain is built by a randomized Schreier-Sims pass and then made exact by
one of two rigorous routes: a deterministic verification that sifts every
Schreier generator, or a sandwich argument when the order can be bounded
from above (a known order, or the ambient alternating/symmetric group when
the chain already reaches that ceiling).  The chain order is always a lower
bound for the group order (every stored permutation is a product of input
generators), so matching an upper bound certifies completeness.

Base points are chosen smallest-moved-first, and all randomness is seeded,
so chains are reproducible run to run.
"""

from __future__ import annotations

import random
from math import factorial

import numpy as np

from .perm import DegreeMismatch, Permutation

_STATIONARY_ROUNDS = 14


class ResourceExhausted(RuntimeError):
    """A search or enumeration exceeded its configured budget."""


class _Level:
    """One level of the stabilizer chain: a base point and its Schreier tree."""

    __slots__ = ("base", "degree", "gens", "tree_gens", "nav", "orbit", "orbit_arr")

    def __init__(self, base: int, degree: int):
        self.base = base
        self.degree = degree
        self.gens = []        # strong generators introduced at this level
        self.tree_gens = []   # (g, g_inv) pairs: level generators + shortcuts
        self.nav = {base: None}  # point -> (tree_gen_index, polarity) of incoming edge
        self.orbit = [base]   # discovery order
        self.orbit_arr = np.array([base], dtype=np.int64)

    def rebuild(self, group_gens):
        """BFS the orbit of ``base`` under ``group_gens``, keeping the tree shallow.

        Whenever a point would sit deeper than 2 * len(tree_gens), the path to
        its parent is added as a shortcut generator and the BFS restarts.
        """
        self.tree_gens = [(g, g.inverse()) for g in group_gens]
        while True:
            if self._bfs():
                return

    def _bfs(self) -> bool:
        self.nav = {self.base: None}
        order = [self.base]
        depth = {self.base: 0}
        head = 0
        limit = 2 * len(self.tree_gens) + 2
        while head < len(order):
            a = order[head]
            head += 1
            for idx, (g, ginv) in enumerate(self.tree_gens):
                for pol, gg in ((0, g), (1, ginv)):
                    b = int(gg.images[a])
                    if b in self.nav:
                        continue
                    d = depth[a] + 1
                    if d > limit:
                        shortcut = self.transversal_from(order, a)
                        self.tree_gens.append((shortcut, shortcut.inverse()))
                        return False
                    self.nav[b] = (idx, pol)
                    depth[b] = d
                    order.append(b)
        self.orbit = order
        self.orbit_arr = np.array(order, dtype=np.int64)
        return True

    def transversal_from(self, order, a) -> Permutation:
        # used only mid-rebuild, before orbit/orbit_arr are final
        return self._trace(a)

    def transversal(self, a: int) -> Permutation:
        """u_a with base^(u_a) = a."""
        return self._trace(a)

    def _trace(self, a: int) -> Permutation:
        edges = []
        while a != self.base:
            idx, pol = self.nav[a]
            edges.append((idx, pol))
            back = self.tree_gens[idx][1 - pol]
            a = int(back.images[a])
        p = None
        for idx, pol in reversed(edges):
            g = self.tree_gens[idx][pol]
            p = g if p is None else p * g
        if p is None:
            return Permutation.identity(self.degree)
        return p

    def cancel_into(self, p: Permutation) -> Permutation:
        """Right-multiply p by u_a^{-1} where a = base^p, so base is fixed."""
        a = int(p.images[self.base])
        while a != self.base:
            idx, pol = self.nav[a]
            back = self.tree_gens[idx][1 - pol]
            p = p * back
            a = int(p.images[self.base])
        return p


def _dedupe(perms):
    seen = set()
    out = []
    for p in perms:
        k = p.key()
        if k not in seen and not p.is_identity():
            seen.add(k)
            out.append(p)
    return out


class PermutationGroup:
    """A group of permutations of {0,...,degree-1}.

    ``order=`` passes a trusted order, e.g. one obtained from the
    orbit-stabilizer identity; the chain build then runs until that order is
    reached and needs no verification pass (the chain enumeration is always
    an injection into the group, so hitting a true order proves
    completeness).  Claiming an order the generators cannot reach raises;
    claiming a proper divisor of the true order is undetectable here, so the
    value must come from a sound derivation.  Without ``order=`` the chain
    is verified deterministically unless the alternating/symmetric sandwich
    applies.
    """

    def __init__(
        self, generators, degree=None, *, order=None, seed=0, parent=None, base_prefix=()
    ):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generating set")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch("generator degree %d != %d" % (g.degree, degree))
        self.degree = degree
        self.gens = _dedupe(gens)
        self.parent = parent
        self._claimed_order = order
        self._levels = None
        self._order = None
        self._seed = seed
        self._base_prefix = tuple(base_prefix)
        self._elements_cache = None
        if parent is not None:
            for g in self.gens:
                if g not in parent:
                    raise ValueError("generator is not a member of the parent group")

    # -- chain construction ------------------------------------------------

    def _ensure_chain(self):
        if self._levels is not None:
            return
        levels = [_Level(b, self.degree) for b in self._base_prefix]
        for g in self.gens:
            self._chain_add(levels, g)
        if self.gens:
            rng = _Rattle(self.gens, random.Random(self._seed))
            target = self._claimed_order
            if target is not None:
                stall = 0
                while _chain_order(levels) < target:
                    if not self._chain_add(levels, rng.sample()):
                        stall += 1
                    else:
                        stall = 0
                    if stall > 400:
                        self._schreier_complete(levels)
                        break
                if _chain_order(levels) != target:
                    raise ValueError(
                        "chain order %d does not match claimed order %d"
                        % (_chain_order(levels), target)
                    )
            else:
                stationary = 0
                while stationary < _STATIONARY_ROUNDS:
                    if self._chain_add(levels, rng.sample()):
                        stationary = 0
                    else:
                        stationary += 1
                if not self._sandwich_certified(levels):
                    self._schreier_complete(levels)
        self._levels = levels
        self._order = _chain_order(levels)

    def _chain_add(self, levels, p, start=0) -> bool:
        """Sift p; on a nontrivial residue, install it as a strong generator
        and rebuild the trees it can affect."""
        residue, depth = _sift(levels, p, start)
        if residue.is_identity():
            return False
        if depth == len(levels):
            b = residue.first_moved()
            levels.append(_Level(b, self.degree))
        lvl = levels[depth]
        lvl.gens.append(residue)
        for i in range(depth + 1):
            levels[i].rebuild(_level_gens(levels, i))
        return True

    def _sandwich_certified(self, levels) -> bool:
        """Order certification against the Alt/Sym ceiling of moved points."""
        n = len(_moved_points(self.gens))
        if n < 3:
            return False
        order = _chain_order(levels)
        if order == factorial(n):
            return True
        if order == factorial(n) // 2 and all(g.is_even() for g in self.gens):
            return True
        return False

    def _schreier_complete(self, levels):
        """Deterministic completion: sift every Schreier generator, bottom-up.

        Each level's tree is rebuilt from its current generating set before
        being scanned, so stale orbits left by level-local installs are
        refreshed before they matter.
        """
        i = len(levels) - 1
        while i >= 0:
            lvl = levels[i]
            gens_i = _level_gens(levels, i)
            before = len(lvl.orbit)
            lvl.rebuild(gens_i)
            restart = len(lvl.orbit) != before
            for a in lvl.orbit:
                u_a = lvl.transversal(a)
                for g in gens_i:
                    b = int(g.images[a])
                    schreier = u_a * g * lvl.transversal(b).inverse()
                    if self._chain_add(levels, schreier, start=i + 1):
                        restart = True
            if restart:
                i = len(levels) - 1
            else:
                i -= 1

    # -- queries -------------------------------------------------------------

    def build_chain(self) -> "PermutationGroup":
        """Force the base/strong-generating chain; returns self."""
        self._ensure_chain()
        return self

    def order(self) -> int:
        self._ensure_chain()
        return self._order

    def __len__(self):
        return self.order()

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        self._ensure_chain()
        residue, _ = _sift(self._levels, p, 0)
        return residue.is_identity()

    def contains(self, p: Permutation) -> bool:
        return p in self

    def sift(self, p: Permutation) -> Permutation:
        self._ensure_chain()
        return _sift(self._levels, p, 0)[0]

    def base(self):
        self._ensure_chain()
        return [lvl.base for lvl in self._levels]

    def levels(self):
        self._ensure_chain()
        return self._levels

    def strong_generators(self):
        self._ensure_chain()
        return [g for lvl in self._levels for g in lvl.gens]

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return not self.gens

    def elements(self):
        """All elements, in deterministic chain-transversal order.

        Only sensible for small groups; iterating a group of order above
        10**7 raises.
        """
        if self.order() > 10**7:
            raise ResourceExhausted("refusing to enumerate %d elements" % self.order())

        def rec(i):
            # elements of the level-i group: g = h * u_a with h one level down
            if i == len(self._levels):
                yield Permutation.identity(self.degree)
                return
            lvl = self._levels[i]
            for rest in rec(i + 1):
                for a in lvl.orbit:
                    yield rest * lvl.transversal(a)

        return rec(0)

    def element_set(self):
        if self._elements_cache is None:
            self._elements_cache = {p.key(): p for p in self.elements()}
        return self._elements_cache

    def random_element(self, rng: random.Random) -> Permutation:
        self._ensure_chain()
        p = Permutation.identity(self.degree)
        for lvl in reversed(self._levels):
            p = p * lvl.transversal(rng.choice(lvl.orbit))
        return p

    # -- orbits and actions ----------------------------------------------

    def orbit(self, point: int) -> "Orbit":
        if not 0 <= point < self.degree:
            raise ValueError("point %d out of range" % point)
        return Orbit(self.gens, self.degree, point)

    def orbits(self):
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for v in range(self.degree):
            if not seen[v]:
                orb = self.orbit(v)
                seen[orb.points_arr] = True
                out.append(orb)
        return out

    def is_transitive(self, domain=None) -> bool:
        n = self.degree if domain is None else domain
        if n <= 1:
            return True
        return len(self.orbit(0)) == n

    def transitivity_profile(self, domain=None):
        """{transitive, semiregular, regular} on {0..domain-1}.

        Semiregular means every point stabilizer is trivial, checked through
        chain orders; regular adds transitivity.
        """
        n = self.degree if domain is None else domain
        transitive = self.is_transitive(n)
        order = self.order()
        seen = set()
        semiregular = True
        for v in range(n):
            if v in seen:
                continue
            orb = self.orbit(v)
            seen.update(orb.points)
            if len(orb) != order:
                semiregular = False
                break
        return {
            "transitive": transitive,
            "semiregular": semiregular,
            "regular": transitive and semiregular and self.order() == n,
        }

    def point_stabilizer(self, point: int) -> "PermutationGroup":
        """Stabilizer of a point, via Schreier generators with a known order.

        The Schreier generators are consumed lazily: once the chain of the
        collected ones reaches |G| / |orbit|, the rest are redundant.
        """
        orb = self.orbit(point)
        total = self.order()
        if total % len(orb) != 0:
            raise AssertionError("orbit size does not divide group order")
        sub_order = total // len(orb)

        def schreier_stream():
            for a in orb.points:
                u_a = orb.transversal(a)
                for g in self.gens:
                    b = int(g.images[a])
                    yield u_a * g * orb.transversal(b).inverse()

        return PermutationGroup.from_generator_stream(
            schreier_stream(), self.degree, order=sub_order, parent=self
        )

    @classmethod
    def from_generator_stream(cls, stream, degree, *, order, parent=None):
        """Group from a generator stream known to generate a group of the
        given order; generators are consumed only until the chain is complete.
        """
        levels = []
        shell = cls([], degree, order=None, parent=None)
        kept = []
        if order > 1:
            for p in stream:
                if shell._chain_add(levels, p):
                    kept.append(p)
                    if _chain_order(levels) == order:
                        break
            if _chain_order(levels) != order and kept:
                # raw adds do not close the chain; try cheap randomized
                # completion against the known order first
                rng = _Rattle(kept, random.Random(1))
                stall = 0
                while _chain_order(levels) < order and stall < 300:
                    if shell._chain_add(levels, rng.sample()):
                        stall = 0
                    else:
                        stall += 1
            if _chain_order(levels) != order:
                shell._schreier_complete(levels)
        if _chain_order(levels) != order:
            raise ValueError(
                "generator stream exhausted at order %d, expected %d"
                % (_chain_order(levels), order)
            )
        G = cls(kept, degree, order=order, parent=parent)
        G._levels = levels
        G._order = order
        return G

    def pointwise_stabilizer(self, points) -> "PermutationGroup":
        sub = self
        for v in points:
            sub = sub.point_stabilizer(v)
        sub.parent = self
        return sub

    def subgroup(self, generators, *, order=None) -> "PermutationGroup":
        return PermutationGroup(generators, self.degree, order=order, parent=self)

    def conjugate_subgroup(self, sub: "PermutationGroup", h: Permutation):
        return self.subgroup([g.conj(h) for g in sub.gens], order=sub._claimed_order)

    def is_subgroup(self, other: "PermutationGroup") -> bool:
        """Whether self <= other."""
        return all(g in other for g in self.gens)

    def normalizes(self, sub: "PermutationGroup") -> bool:
        return all(s.conj(g) in sub for g in self.gens for s in sub.gens)

    def is_normal_in(self, big: "PermutationGroup") -> bool:
        return big.normalizes(self)


class Orbit:
    """Orbit of a point with a Schreier tree for transversal elements."""

    __slots__ = ("points", "points_arr", "_nav", "_gens", "_ginv", "base", "degree")

    def __init__(self, gens, degree, point):
        self.base = point
        self.degree = degree
        self._gens = list(gens)
        self._ginv = [g.inverse() for g in self._gens]
        nav = {point: None}
        order = [point]
        head = 0
        while head < len(order):
            a = order[head]
            head += 1
            for idx, g in enumerate(self._gens):
                b = int(g.images[a])
                if b not in nav:
                    nav[b] = idx
                    order.append(b)
        self.points = order
        self.points_arr = np.array(order, dtype=np.int64)
        self._nav = nav

    def __len__(self):
        return len(self.points)

    def __contains__(self, point):
        return point in self._nav

    def transversal(self, a: int) -> Permutation:
        """t_a with base^(t_a) = a."""
        edges = []
        while a != self.base:
            idx = self._nav[a]
            edges.append(idx)
            a = int(self._ginv[idx].images[a])
        p = None
        for idx in reversed(edges):
            g = self._gens[idx]
            p = g if p is None else p * g
        if p is None:
            return Permutation.identity(self.degree)
        return p

    def transversal_word(self, a: int):
        """Generator indices whose left-to-right product is t_a."""
        edges = []
        while a != self.base:
            idx = self._nav[a]
            edges.append(idx)
            a = int(self._ginv[idx].images[a])
        return list(reversed(edges))


class _Rattle:
    """Seeded product-replacement sampler over a fixed generating set."""

    def __init__(self, gens, rng, extra=6, accus=4):
        self.rng = rng
        self.pool = [Permutation.identity(gens[0].degree)] * extra + list(gens)
        self.accu = [Permutation.identity(gens[0].degree)] * accus
        self.k = 0
        for _ in range(max(40, 6 * len(self.pool))):
            self._stir()

    def _stir(self) -> Permutation:
        rng = self.rng
        i = rng.randrange(1, len(self.pool))
        p = self.pool[i]
        if rng.randrange(2):
            p = p.inverse()
        self.pool[0] = c = self.pool[0] * p
        j = rng.randrange(1, len(self.pool))
        self.pool[j] = self.pool[j] * (c.inverse() if rng.randrange(2) else c)
        self.k = (self.k + 1) % len(self.accu)
        self.accu[self.k] = r = self.accu[self.k] * self.pool[j]
        return r

    def sample(self) -> Permutation:
        return self._stir()


def _level_gens(levels, i):
    return [g for lvl in levels[i:] for g in lvl.gens]


def _chain_order(levels) -> int:
    order = 1
    for lvl in levels:
        order *= len(lvl.orbit)
    return order


def _sift(levels, p, start):
    for i in range(start, len(levels)):
        lvl = levels[i]
        a = int(p.images[lvl.base])
        if a == lvl.base:
            continue
        if a not in lvl.nav:
            return p, i
        p = lvl.cancel_into(p)
    return p, len(levels)


def _moved_points(gens):
    moved = set()
    for g in gens:
        moved.update(int(i) for i in g.support())
    return moved


# -- operations over groups ------------------------------------------------


def closure_elements(gens, degree, limit=2 * 10**6):
    """All elements of <gens> by breadth-first multiplication.

    Independent of the stabilizer chain; used as an oracle in tests and for
    exhaustive scans.
    """
    ident = Permutation.identity(degree)
    found = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p * g
                k = q.key()
                if k not in found:
                    if len(found) >= limit:
                        raise ResourceExhausted("closure exceeded %d elements" % limit)
                    found[k] = q
                    nxt.append(q)
        frontier = nxt
    return found


def group_2part(n: int) -> int:
    """Largest power of 2 dividing n."""
    return n & (-n)


def write_group_file(G: PermutationGroup) -> str:
    """Group text format: first line ``degree k``, then k cycle-notation lines."""
    lines = ["%d %d" % (G.degree, len(G.gens))]
    lines += [g.cycle_string() for g in G.gens]
    return "\n".join(lines) + "\n"


def read_group_file(text: str) -> PermutationGroup:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty group file")
    head = lines[0].split()
    degree, k = int(head[0]), int(head[1])
    gens = [Permutation.parse(ln, degree) for ln in lines[1 : k + 1]]
    if len(gens) != k:
        raise ValueError("expected %d generators, found %d" % (k, len(gens)))
    return PermutationGroup(gens, degree)
