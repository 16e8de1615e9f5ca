"""Augmenting-path bipartite matching, plain and with right capacities.

Small inputs only (interval SDRs, per-vertex colour assignment), so the
classic Kuhn algorithm is plenty.  Left vertices are processed in
ascending order and adjacency lists are scanned as given, which makes
the result a pure function of the input.
"""

from __future__ import annotations


def perfect_matching(adjacency: list[list[int]], right_count: int,
                     ) -> list[int] | None:
    """Match every left vertex to a distinct right vertex, or None.

    adjacency[i] lists the right vertices allowed for left vertex i.
    Returns match[i] = right vertex of i.
    """
    owner = [-1] * right_count

    def augment(left: int, seen: list[bool]) -> bool:
        for right in adjacency[left]:
            if seen[right]:
                continue
            seen[right] = True
            if owner[right] == -1 or augment(owner[right], seen):
                owner[right] = left
                return True
        return False

    for left in range(len(adjacency)):
        if not augment(left, [False] * right_count):
            return None
    match = [-1] * len(adjacency)
    for right, left in enumerate(owner):
        if left != -1:
            match[left] = right
    return match


def capacitated_assignment(adjacency: list[list[int]],
                           capacity: list[int]) -> list[int] | None:
    """Assign every left vertex a right vertex, right j used <= capacity[j].

    Same augmenting-path scheme with per-right slot lists.  Returns the
    assignment or None when some left vertex cannot be placed.
    """
    load: list[list[int]] = [[] for _ in capacity]  # right -> left vertices
    assigned = [-1] * len(adjacency)

    def augment(left: int, seen: list[bool]) -> bool:
        for right in adjacency[left]:
            if seen[right]:
                continue
            seen[right] = True
            if len(load[right]) < capacity[right]:
                load[right].append(left)
                assigned[left] = right
                return True
            for slot, other in enumerate(load[right]):
                if augment(other, seen):
                    load[right][slot] = left
                    assigned[left] = right
                    return True
        return False

    for left in range(len(adjacency)):
        if not augment(left, [False] * len(capacity)):
            return None
    return assigned
