"""Untwisted affine Weyl group, level-zero monomial action, and the quantum Bruhat graph.

An affine element is stored canonically as a pair (w, beta) meaning w * t_beta,
so equality is never a word problem.  The normalization tying the affine node to
the finite data is t_{-theta^vee} = s_theta * s_0, equivalently
s_0 = s_theta * t_{-theta^vee}.  Reduced words are produced by BFS over the group
(shortest word = reduced word), with an inversion-count length function that the
test suite cross-checks against BFS distance.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .rootdata import Coweight, RootSystem, Weight, WeylElement

Word = tuple[int, ...]


@dataclass(frozen=True)
class AffineElement:
    """The affine Weyl group element finite * t_trans."""

    finite: WeylElement
    trans: tuple[int, ...]

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        # (w1 t_b1)(w2 t_b2) = (w1 w2) t_{w2^{-1} b1 + b2}
        moved = other.finite.inverse().act_coweight(Coweight(self.trans))
        trans = tuple(a + b for a, b in zip(moved.coords, other.trans))
        return AffineElement(self.finite * other.finite, trans)

    def inverse(self) -> "AffineElement":
        back = self.finite.act_coweight(Coweight(self.trans))
        return AffineElement(self.finite.inverse(), tuple(-c for c in back.coords))

    def projection(self) -> WeylElement:
        """Image under the homomorphism sending s_0 to s_theta."""
        return self.finite

    def is_identity(self) -> bool:
        return self.finite.is_identity() and all(c == 0 for c in self.trans)

    def act_monomial(self, n: int, lam: Weight) -> tuple[int, Weight]:
        """Level-zero action on q^n e^lam: w t_beta sends it to q^{n - <beta,lam>} e^{w lam}."""
        rs = self.finite.rs
        return n - rs.pairing(Coweight(self.trans), lam), self.finite.act(lam)


def affine_identity(rs: RootSystem) -> AffineElement:
    return AffineElement(rs.identity, (0,) * rs.rank)


def affine_simple(rs: RootSystem, i: int) -> AffineElement:
    """The affine simple reflection s_i, for i in {0, 1, ..., rank}."""
    zero = (0,) * rs.rank
    if i == 0:
        return AffineElement(rs.theta_reflection(), tuple(-c for c in rs.theta_coroot.coords))
    return AffineElement(rs.simple_reflection(i), zero)


def translation(rs: RootSystem, beta: Coweight) -> AffineElement:
    return AffineElement(rs.identity, beta.coords)


def element_from_word(rs: RootSystem, word: Word) -> AffineElement:
    out = affine_identity(rs)
    for i in word:
        out = out * affine_simple(rs, i)
    return out


def s0_action(rs: RootSystem, n: int, lam: Weight) -> tuple[int, Weight]:
    """s_0(q^n e^lam) = q^{n + <theta^vee, lam>} e^{s_theta lam}; delta itself is fixed."""
    return n + rs.pairing(rs.theta_coroot, lam), rs.theta_reflection().act(lam)


def affine_length(x: AffineElement) -> int:
    """Inversion count of x over the positive affine real roots."""
    rs = x.finite.rs
    beta = Coweight(x.trans)
    total = 0
    for gamma in rs.positive_roots:
        p = rs.pair_coroot_root(beta, gamma)
        w_gamma_neg = rs.root_is_negative(x.finite.act(rs.root_to_weight(gamma)))
        # alpha = gamma, positive towers start at n = 0
        total += max(0, p) + (1 if p >= 0 and w_gamma_neg else 0)
        # alpha = -gamma, towers start at n = 1; w(-gamma) < 0 iff w(gamma) > 0
        total += max(0, -p - 1) + (1 if -p >= 1 and not w_gamma_neg else 0)
    return total


class _AffineCache:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        ident = affine_identity(rs)
        self.words: dict[AffineElement, Word] = {ident: ()}
        self.frontier: list[AffineElement] = [ident]
        self.radius = 0
        self.all_words: dict[AffineElement, tuple[Word, ...]] = {}

    def expand_to(self, radius: int) -> None:
        while self.radius < radius and self.frontier:
            nxt = []
            for x in self.frontier:
                base = self.words[x]
                for i in range(self.rs.rank + 1):
                    y = x * affine_simple(self.rs, i)
                    if y not in self.words:
                        self.words[y] = base + (i,)
                        nxt.append(y)
            self.frontier = nxt
            self.radius += 1


_CACHES: dict[int, _AffineCache] = {}


def _cache(rs: RootSystem) -> _AffineCache:
    got = _CACHES.get(id(rs))
    if got is None or got.rs is not rs:
        got = _AffineCache(rs)
        _CACHES[id(rs)] = got
    return got


def shortest_word(x: AffineElement) -> Word:
    """A reduced word for x, found by BFS from the identity (so provably minimal)."""
    cache = _cache(x.finite.rs)
    target = affine_length(x)
    cache.expand_to(target)
    word = cache.words.get(x)
    if word is None:
        raise AssertionError("length formula disagrees with BFS reachability")
    assert len(word) == target
    return word


def translation_word(rs: RootSystem, beta: Coweight) -> Word:
    """A reduced word for the translation element t_beta."""
    return shortest_word(translation(rs, beta))


def all_reduced_words(x: AffineElement) -> tuple[Word, ...]:
    """Every reduced word of x, by left-descent recursion."""
    cache = _cache(x.finite.rs)
    got = cache.all_words.get(x)
    if got is not None:
        return got
    n = affine_length(x)
    if n == 0:
        result: tuple[Word, ...] = ((),)
    else:
        acc = []
        for i in range(x.finite.rs.rank + 1):
            y = affine_simple(x.finite.rs, i) * x
            if affine_length(y) == n - 1:
                acc.extend((i,) + rest for rest in all_reduced_words(y))
        result = tuple(sorted(acc))
    cache.all_words[x] = result
    return result


# -- quantum Bruhat graph ----------------------------------------------------


@dataclass(frozen=True)
class QuantumCover:
    """An edge w -> bar(s_i) w of the quantum Bruhat graph."""

    source: WeylElement
    target: WeylElement
    letter: int


def quantum_covers(rs: RootSystem, w: WeylElement) -> list[QuantumCover]:
    """Outgoing covers: s_i w > w for i in I, or the s_theta step when w^{-1} theta < 0."""
    out = []
    if rs.root_is_negative(w.inverse().act(rs.theta_weight)):
        out.append(QuantumCover(w, rs.theta_reflection() * w, 0))
    lw = w.length()
    for i in range(1, rs.rank + 1):
        sw = rs.simple_reflection(i) * w
        if sw.length() > lw:
            out.append(QuantumCover(w, sw, i))
    return out


def quantum_step(rs: RootSystem, i: int, w: WeylElement) -> WeylElement | None:
    """Target of the letter-i cover at w, or None when (i, w) is not a cover."""
    if i == 0:
        if rs.root_is_negative(w.inverse().act(rs.theta_weight)):
            return rs.theta_reflection() * w
        return None
    sw = rs.simple_reflection(i) * w
    return sw if sw.length() > w.length() else None


def adapted_sequence(rs: RootSystem, v: WeylElement, w: WeylElement) -> Word:
    """Letters (i_1, ..., i_l) with w = bar(s_{i_1}) ... bar(s_{i_l}) v along quantum covers.

    For v == w the shortest nonempty loop is returned.  The graph is strongly
    connected, so the BFS always terminates.
    """
    queue: deque[tuple[WeylElement, tuple[int, ...]]] = deque([(v, ())])
    seen = {v}
    while queue:
        u, path = queue.popleft()
        for cov in quantum_covers(rs, u):
            if cov.target == w:
                return tuple(reversed(path + (cov.letter,)))
            if cov.target not in seen:
                seen.add(cov.target)
                queue.append((cov.target, path + (cov.letter,)))
    raise AssertionError("quantum Bruhat graph should be strongly connected")


def walk_quantum(rs: RootSystem, word: Word, start: WeylElement) -> list[WeylElement]:
    """Elements visited applying the word right-to-left from start; errors off-graph."""
    chain = [start]
    u = start
    for i in reversed(word):
        nxt = quantum_step(rs, i, u)
        if nxt is None:
            raise ValueError(f"letter {i} is not a quantum cover at {u!r}")
        u = nxt
        chain.append(u)
    return chain


def minimal_loops(rs: RootSystem, w: WeylElement) -> list[Word]:
    """All shortest nonempty quantum-Bruhat loops based at w, as operator words."""
    # shortest distance back to w from each cover target
    def dist_to(target: WeylElement, source: WeylElement) -> int:
        if source == target:
            return 0
        seen = {source}
        queue = deque([(source, 0)])
        while queue:
            u, d = queue.popleft()
            for cov in quantum_covers(rs, u):
                if cov.target == target:
                    return d + 1
                if cov.target not in seen:
                    seen.add(cov.target)
                    queue.append((cov.target, d + 1))
        raise AssertionError("unreachable: graph is strongly connected")

    best = min(1 + dist_to(w, cov.target) for cov in quantum_covers(rs, w))
    loops: list[Word] = []

    def extend(u: WeylElement, path: tuple[int, ...]) -> None:
        if len(path) == best:
            if u == w:
                loops.append(tuple(reversed(path)))
            return
        for cov in quantum_covers(rs, u):
            if dist_to(w, cov.target) <= best - len(path) - 1:
                extend(cov.target, path + (cov.letter,))

    extend(w, ())
    return sorted(set(loops))


def loop_translation_weight(rs: RootSystem, loop: Word, w: WeylElement) -> Coweight:
    """Translation part beta of the affine lift of a loop at w (sends w t_0 to w t_beta)."""
    chain = walk_quantum(rs, loop, w)
    if chain[-1] != w:
        raise ValueError("word is not a loop at w")
    lift = element_from_word(rs, loop)
    if not lift.finite.is_identity():
        raise ValueError("loop lift has a nontrivial finite part")
    moved = lift * AffineElement(w, (0,) * rs.rank)
    assert moved.finite == w
    return Coweight(moved.trans)
