import numpy as np
import pytest

from spectral_kcenter import Graph, random_connected_graph, random_tree


def mixed_corpus(count: int, seed: int, n_lo: int = 4, n_hi: int = 9) -> list[Graph]:
    """Alternating random trees and connected G(n, 0.4) samples with n drawn
    uniformly from [n_lo, n_hi]; fully determined by the seed."""
    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        child = int(np.random.SeedSequence([seed, t]).generate_state(1)[0])
        if t % 2 == 0:
            out.append(random_tree(n, child))
        else:
            out.append(random_connected_graph(n, 0.4, child))
    return out


@pytest.fixture(scope="session")
def small_corpus() -> list[Graph]:
    return mixed_corpus(30, seed=90210)
