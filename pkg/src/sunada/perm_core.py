"""Finite permutation groups by full enumeration.

Points are 0-indexed internally and 1-indexed in cycle notation.  Products
follow the function-composition convention: ``compose(p, q)`` applies ``q``
first, so ``compose(p, q)(x) == p(q(x))``.  A group is enumerated completely
into a :class:`GroupTable` whose elements are sorted lexicographically by
image array; every downstream index (classes, cosets, double cosets) is
derived from that order and is therefore reproducible.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CapExceeded,
    DegreeMismatch,
    IndexOutOfRange,
    MalformedCycle,
    NotASubgroup,
    PointOutOfRange,
    RepeatedPoint,
)

DEFAULT_CAP = 100_000


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image tuple."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        n = len(images)
        if n < 1:
            raise ValueError("degree must be at least 1")
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a bijection on {n} points: {images}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self):
        return len(self.images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        return compose(self, other)

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def to_cycles(self):
        """Cycle notation with 1-indexed points, ``"()"`` for the identity."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycs)

    def __str__(self):
        return self.to_cycles()


_TOKEN = re.compile(r"\s*(\(|\)|,|[^\s(),]+)")


def parse_cycles(text, degree):
    """Parse 1-indexed cycle notation such as ``"(1 2 3)(4 5)"``.

    Points inside a cycle may be separated by whitespace or commas.  ``"()"``
    (or an empty string) is the identity.
    """
    if degree < 1:
        raise PointOutOfRange(f"degree must be positive, got {degree}")
    pos = 0
    text = text.strip()
    cycles = []
    current = None
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1)
        pos = m.end()
        if tok == "(":
            if current is not None:
                raise MalformedCycle(f"nested '(' in {text!r}")
            current = []
        elif tok == ")":
            if current is None:
                raise MalformedCycle(f"unbalanced ')' in {text!r}")
            cycles.append(current)
            current = None
        elif tok == ",":
            if current is None:
                raise MalformedCycle(f"stray ',' in {text!r}")
        else:
            if current is None:
                raise MalformedCycle(f"point {tok!r} outside parentheses in {text!r}")
            if not tok.isdigit():
                raise MalformedCycle(f"non-numeric token {tok!r} in {text!r}")
            current.append(int(tok))
    if current is not None:
        raise MalformedCycle(f"unclosed '(' in {text!r}")

    images = list(range(degree))
    seen = set()
    for cyc in cycles:
        for p in cyc:
            if p < 1 or p > degree:
                raise PointOutOfRange(f"point {p} outside 1..{degree}")
            if p in seen:
                raise RepeatedPoint(f"point {p} appears twice in {text!r}")
            seen.add(p)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b - 1
    return Permutation(tuple(images))


def compose(p, q):
    """``p`` after ``q``: the map ``x -> p(q(x))``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    pi = p.images
    return Permutation(tuple(pi[j] for j in q.images))


def inverse(p):
    return p.inverse()


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A fully enumerated permutation group.

    ``elements[0]`` is the identity and the list is sorted by image tuple.
    ``mul[i, j]`` is the index of ``compose(elements[i], elements[j])``.
    """

    degree: int
    elements: tuple
    mul: np.ndarray
    inv: np.ndarray
    generator_indices: tuple
    images: np.ndarray = field(repr=False)
    _index: dict = field(repr=False)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def index(self, p):
        """Element index of a Permutation (or image tuple)."""
        key = p.images if isinstance(p, Permutation) else tuple(p)
        try:
            return self._index[key]
        except KeyError:
            raise IndexOutOfRange(f"{p} is not an element of the group") from None

    def __contains__(self, p):
        key = p.images if isinstance(p, Permutation) else tuple(p)
        return key in self._index

    def element(self, i):
        if not 0 <= i < len(self.elements):
            raise IndexOutOfRange(f"element index {i} out of range")
        return self.elements[i]

    def conj(self, g, x):
        """Index of ``g x g^-1``."""
        return int(self.mul[self.mul[g, x], self.inv[g]])


def _check_degrees(gens):
    n = gens[0].degree
    for g in gens:
        if g.degree != n:
            raise DegreeMismatch(f"generator degrees {n} and {g.degree} differ")
    return n


def closure(generators, cap=DEFAULT_CAP):
    """Enumerate the group generated by ``generators``.

    Breadth-first product closure, then canonical re-sorting; the resulting
    table does not depend on the order in which generators are listed.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("closure needs at least one generator")
    n = _check_degrees(gens)
    gen_images = [g.images for g in gens]
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gen_images:
            y = tuple(g[j] for j in x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                queue.append(y)
    return _build_table(n, sorted(seen), gen_images)


def _build_table(n, sorted_images, gen_images):
    order = len(sorted_images)
    images = np.array(sorted_images, dtype=np.int64).reshape(order, n)
    index = {t: i for i, t in enumerate(sorted_images)}
    # mul[i, j] = index of images[i][images[j]]
    mul = np.empty((order, order), dtype=np.int64)
    if n <= 15:
        weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        keys = images @ weights  # lexicographic order == numeric order
        for i in range(order):
            comp = images[i][images]
            mul[i] = np.searchsorted(keys, comp @ weights)
    else:
        for i in range(order):
            comp = images[i][images]
            mul[i] = [index[tuple(row)] for row in comp.tolist()]
    # column holding the identity (index 0) in each row
    inv = np.argmax(mul == 0, axis=1).astype(np.int64)
    mul.setflags(write=False)
    inv.setflags(write=False)
    images.setflags(write=False)
    gidx = tuple(index[g] for g in gen_images)
    elements = tuple(Permutation(t) for t in sorted_images)
    return GroupTable(n, elements, mul, inv, gidx, images, index)


@dataclass(frozen=True, eq=False)
class SubgroupRef:
    parent: GroupTable
    member_indices: tuple

    @property
    def order(self):
        return len(self.member_indices)

    def __len__(self):
        return len(self.member_indices)

    def __contains__(self, i):
        return i in self._members

    @property
    def _members(self):
        s = self.__dict__.get("_set")
        if s is None:
            s = frozenset(self.member_indices)
            object.__setattr__(self, "_set", s)
        return s

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupRef)
            and other.parent is self.parent
            and other.member_indices == self.member_indices
        )

    def __hash__(self):
        return hash(self.member_indices)


def _close_in(G, gens, start=(0,)):
    members = set(start)
    queue = deque(members)
    mul = G.mul
    while queue:
        x = queue.popleft()
        for s in gens:
            y = int(mul[s, x])
            if y not in members:
                members.add(y)
                queue.append(y)
    return members


def subgroup_from_generators(G, gens):
    """Subgroup of ``G`` generated by the element indices ``gens``."""
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < G.order:
            raise IndexOutOfRange(f"element index {g} out of range")
    return SubgroupRef(G, tuple(sorted(_close_in(G, gens))))


def subgroup_from_permutations(G, perms):
    return subgroup_from_generators(G, [G.index(p) for p in perms])


def subgroup_from_members(G, members):
    """Wrap an explicit member set, checking the subgroup axioms."""
    ms = sorted({int(m) for m in members})
    check_subgroup(G, ms)
    return SubgroupRef(G, tuple(ms))


def check_subgroup(G, members):
    s = set(members)
    if 0 not in s:
        raise NotASubgroup("identity missing")
    for m in s:
        if not 0 <= m < G.order:
            raise NotASubgroup(f"index {m} not in group")
    arr = np.fromiter(s, dtype=np.int64)
    prods = G.mul[np.ix_(arr, arr)].ravel()
    if not set(prods.tolist()) <= s or not set(G.inv[arr].tolist()) <= s:
        raise NotASubgroup("member set not closed")


def _require_subgroup(G, H):
    if H.parent is not G:
        # a subgroup of an equal-but-distinct table is still acceptable
        if H.parent.elements != G.elements:
            raise NotASubgroup("subgroup belongs to a different group")
    check_subgroup(G, H.member_indices)


@dataclass(frozen=True, eq=False)
class ClassPartition:
    class_of: np.ndarray
    classes: tuple

    def __len__(self):
        return len(self.classes)

    @property
    def sizes(self):
        return [len(c) for c in self.classes]

    def representatives(self):
        return [c[0] for c in self.classes]


def conjugacy_classes(G):
    """Conjugacy classes, ordered by (size, smallest member)."""
    gens = list(G.generator_indices) or [0]
    order = G.order
    label = np.full(order, -1, dtype=np.int64)
    raw = []
    for x in range(order):
        if label[x] >= 0:
            continue
        orbit = [x]
        label[x] = len(raw)
        k = 0
        while k < len(orbit):
            y = orbit[k]
            k += 1
            for s in gens:
                z = G.conj(s, y)
                if label[z] < 0:
                    label[z] = len(raw)
                    orbit.append(z)
        raw.append(sorted(orbit))
    raw.sort(key=lambda c: (len(c), c[0]))
    class_of = np.empty(order, dtype=np.int64)
    for cid, c in enumerate(raw):
        class_of[c] = cid
    class_of.setflags(write=False)
    return ClassPartition(class_of, tuple(tuple(c) for c in raw))


@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Left cosets ``gH`` with the left action of ``G``.

    ``coset_of[g]`` is the coset containing element ``g``; ``act[g, c]`` is
    the coset ``g * (rep_c H)``.
    """

    group: GroupTable
    subgroup: SubgroupRef
    reps: tuple
    coset_of: np.ndarray
    act: np.ndarray

    def __len__(self):
        return len(self.reps)

    @property
    def index(self):
        return len(self.reps)

    def permutation_matrix(self, g):
        """Integer matrix of ``g`` on the basis of coset indicators."""
        n = len(self.reps)
        P = np.zeros((n, n), dtype=np.int64)
        P[self.act[g], np.arange(n)] = 1
        return P


def left_cosets(G, H):
    _require_subgroup(G, H)
    members = np.array(H.member_indices, dtype=np.int64)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            coset_of[G.mul[g, members]] = len(reps)
            reps.append(g)
    act = coset_of[G.mul[:, reps]]
    coset_of.setflags(write=False)
    act.setflags(write=False)
    return CosetSpace(G, H, tuple(reps), coset_of, act)


def double_cosets(G, H2, H1):
    """Partition ``G`` into double cosets ``H2 g H1``, ordered by minimum."""
    _require_subgroup(G, H2)
    _require_subgroup(G, H1)
    m2 = np.array(H2.member_indices, dtype=np.int64)
    m1 = np.array(H1.member_indices, dtype=np.int64)
    label = np.full(G.order, -1, dtype=np.int64)
    classes = []
    for g in range(G.order):
        if label[g] >= 0:
            continue
        block = np.unique(G.mul[G.mul[m2, g][:, None], m1[None, :]])
        label[block] = len(classes)
        classes.append(tuple(int(b) for b in block))
    return classes


def double_coset_labels(G, H2, H1):
    label = np.empty(G.order, dtype=np.int64)
    for d, block in enumerate(double_cosets(G, H2, H1)):
        label[list(block)] = d
    return label


def conjugate_subgroup(G, H, g):
    """Member set of ``g H g^-1``."""
    members = np.array(H.member_indices, dtype=np.int64)
    return tuple(sorted(G.mul[G.mul[g, members], G.inv[g]].tolist()))


def are_conjugate_subgroups(G, H1, H2):
    """First ``g`` in canonical order with ``g H1 g^-1 = H2``, else None."""
    if H1.order != H2.order:
        return None
    target = H2.member_indices
    members = np.array(H1.member_indices, dtype=np.int64)
    target_set = H2._members
    for g in range(G.order):
        conj = G.mul[G.mul[g, members], G.inv[g]]
        if all(int(c) in target_set for c in conj):
            return g
    return None


def fixed_point_count(G, X, g):
    """Number of cosets fixed by element ``g``."""
    return int(np.count_nonzero(X.act[g] == np.arange(len(X.reps))))


def permutation_character(X):
    """Fixed-point counts of every element on the coset space."""
    return np.count_nonzero(X.act == np.arange(len(X.reps))[None, :], axis=1)
