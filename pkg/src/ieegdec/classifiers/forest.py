"""Random forest of Gini trees with bootstrap resampling.

Each tree gets its own generator derived from (seed, tree index), so a
fixed seed gives a bit-deterministic forest regardless of how trees
might be scheduled.
"""
import numpy as np

from .tree import apply_tree, build_tree


def _max_features(hp, n_features):
    if hp.rf_max_features is not None:
        return hp.rf_max_features
    return max(1, int(round(np.sqrt(n_features))))


def train(X, y, hp) -> dict:
    n = X.shape[0]
    m = _max_features(hp, X.shape[1])
    trees = []
    for t in range(hp.rf_n_trees):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([hp.seed & 0xFFFFFFFF, t])))
        if hp.rf_bootstrap:
            sample = rng.integers(0, n, size=n)
        else:
            sample = np.arange(n)
        trees.append(
            build_tree(X[sample], y[sample], rng, max_depth=hp.rf_max_depth, max_features=m)
        )
    return {"trees": trees}


def score(params, X) -> np.ndarray:
    """Mean leaf positive-class fraction over the trees."""
    acc = np.zeros(X.shape[0])
    trees = params["trees"]
    for nodes in trees:
        acc += apply_tree(nodes, X)
    return acc / len(trees)
