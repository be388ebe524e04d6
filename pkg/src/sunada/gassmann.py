"""Almost-conjugate (Gassmann) subgroup pairs.

Two subgroups ``H1, H2`` of ``G`` form a Gassmann pair when every conjugacy
class of ``G`` meets them in the same number of elements.  Equivalently the
permutation characters of ``G/H1`` and ``G/H2`` agree; both tests are run
here on independent code paths and cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SearchBudgetExceeded
from .perm_core import (
    SubgroupRef,
    are_conjugate_subgroups,
    conjugacy_classes,
    conjugate_subgroup,
    fixed_point_count,
    left_cosets,
)

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class ClassProfile:
    counts: tuple

    def __len__(self):
        return len(self.counts)

    @property
    def total(self):
        return sum(self.counts)


@dataclass(frozen=True)
class GassmannCertificate:
    profile1: ClassProfile
    profile2: ClassProfile
    is_gassmann: bool
    conjugacy_witness: int | None
    char_check: bool
    orders: tuple  # (|G|, |H1|, |H2|, index of H1)
    h1: SubgroupRef | None = None
    h2: SubgroupRef | None = None

    @property
    def nontrivial(self):
        """Gassmann but not conjugate."""
        return self.is_gassmann and self.conjugacy_witness is None

    def to_json(self):
        G = self.h1.parent if self.h1 is not None else None
        witness = None
        if self.conjugacy_witness is not None:
            witness = (
                G.elements[self.conjugacy_witness].to_cycles()
                if G is not None
                else self.conjugacy_witness
            )
        order_g, order1, order2, index = self.orders
        return {
            "schema_version": SCHEMA_VERSION,
            "profile1": list(self.profile1.counts),
            "profile2": list(self.profile2.counts),
            "is_gassmann": self.is_gassmann,
            "char_check": self.char_check,
            "conjugacy_witness": witness,
            "orders": {"group": order_g, "h1": order1, "h2": order2, "index": index},
        }


def class_profile(G, classes, H):
    """How many elements of ``H`` fall in each conjugacy class."""
    members = np.array(H.member_indices, dtype=np.int64)
    counts = np.bincount(classes.class_of[members], minlength=len(classes.classes))
    return ClassProfile(tuple(int(c) for c in counts))


def permutation_characters_agree(G, classes, H1, H2):
    """Compare fixed-point counts on ``G/H1`` and ``G/H2`` class by class."""
    if G.order % H1.order or G.order % H2.order:
        return False
    X1 = left_cosets(G, H1)
    X2 = left_cosets(G, H2)
    return all(
        fixed_point_count(G, X1, g) == fixed_point_count(G, X2, g)
        for g in classes.representatives()
    )


def is_gassmann(G, classes, H1, H2):
    p1 = class_profile(G, classes, H1)
    p2 = class_profile(G, classes, H2)
    equal = p1.counts == p2.counts
    char_ok = permutation_characters_agree(G, classes, H1, H2)
    witness = are_conjugate_subgroups(G, H1, H2) if equal else None
    index = G.order // H1.order
    return GassmannCertificate(
        profile1=p1,
        profile2=p2,
        is_gassmann=equal,
        conjugacy_witness=witness,
        char_check=char_ok,
        orders=(G.order, H1.order, H2.order, index),
        h1=H1,
        h2=H2,
    )


def _cyclic(G, g):
    members = {0}
    x = g
    while x != 0:
        members.add(x)
        x = int(G.mul[g, x])
    return frozenset(members)


def _close(G, gens):
    out = {0}
    frontier = [0]
    mul = G.mul
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = int(mul[s, x])
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


def enumerate_subgroups(G, max_generators=3, budget=200_000, exhaustive=False):
    """Subgroups generated by at most ``max_generators`` elements.

    Works level by level: cyclic subgroups first, then joins of each known
    subgroup with one more cyclic subgroup.  ``budget`` bounds the number of
    closure computations.  ``exhaustive`` keeps joining until nothing new
    appears (every subgroup is then found) and is only allowed for
    ``|G| <= 48``.
    """
    if exhaustive and G.order > 48:
        raise SearchBudgetExceeded("exhaustive subgroup enumeration is limited to |G| <= 48")
    work = 0
    cyclic = {}
    for g in range(G.order):
        c = _cyclic(G, g)
        cyclic.setdefault(c, g)
        work += 1
    # one generator per cyclic subgroup suffices for joins
    cyclic_gens = sorted(cyclic.values())
    gens_of = {c: (g,) for c, g in cyclic.items()}
    found = set(cyclic)
    level = set(cyclic)
    depth = 1
    while level and (exhaustive or depth < max_generators):
        nxt = set()
        for K in sorted(level, key=lambda s: (len(s), sorted(s))):
            if len(K) == G.order:
                continue
            for g in cyclic_gens:
                if g in K:
                    continue
                work += 1
                if work > budget:
                    raise SearchBudgetExceeded(
                        f"subgroup enumeration exceeded budget of {budget} closures"
                    )
                J = _close(G, gens_of[K] + (g,))
                if J not in found:
                    found.add(J)
                    gens_of[J] = gens_of[K] + (g,)
                    nxt.add(J)
        level = nxt
        depth += 1
    return sorted((tuple(sorted(s)) for s in found), key=lambda m: (len(m), m))


def conjugacy_class_representatives(G, subgroups):
    """Keep the minimal member tuple from each conjugacy class of subgroups."""
    seen = set()
    reps = []
    for members in sorted(subgroups, key=lambda m: (len(m), m)):
        if members in seen:
            continue
        H = SubgroupRef(G, members)
        orbit = {conjugate_subgroup(G, H, g) for g in range(G.order)}
        seen |= orbit
        reps.append(min(orbit))
    return sorted(reps, key=lambda m: (len(m), m))


def search_pairs(G, order_filter=None, max_generators=3, budget=200_000, exhaustive=False):
    """All non-conjugate Gassmann pairs among enumerated subgroups.

    Pairs come back as certificates ordered by ``(|H|, members of H1,
    members of H2)`` with ``H1`` the smaller member tuple.
    """
    classes = conjugacy_classes(G)
    subs = enumerate_subgroups(G, max_generators, budget, exhaustive)
    if order_filter is not None:
        subs = [m for m in subs if len(m) == order_filter]
    reps = conjugacy_class_representatives(G, subs)
    by_profile = {}
    for members in reps:
        H = SubgroupRef(G, members)
        by_profile.setdefault(class_profile(G, classes, H).counts, []).append(H)
    out = []
    for group in by_profile.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                H1, H2 = sorted((group[i], group[j]), key=lambda H: H.member_indices)
                cert = is_gassmann(G, classes, H1, H2)
                if cert.nontrivial:
                    out.append(cert)
    out.sort(key=lambda c: (c.orders[1], c.h1.member_indices, c.h2.member_indices))
    return out
