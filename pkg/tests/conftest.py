"""Shared test helpers."""
from hypothesis import settings

from galaxia import Digraph

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def circuit(n: int) -> Digraph:
    return Digraph(n, tuple((i, (i + 1) % n) for i in range(n)))
