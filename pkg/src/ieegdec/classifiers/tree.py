"""Gini-impurity decision tree used by the random forest.

Trees are stored as parallel node arrays (JSON-friendly): `feature` is
-1 at leaves, `value` holds the leaf's positive-class fraction, and
`left`/`right` hold child node ids. Split thresholds are midpoints
between consecutive distinct sorted values; the exact greedy search is
vectorized over split positions.
"""
import numpy as np

UNBOUNDED_DEPTH = 1 << 30


def _best_split_for_feature(values, y):
    """(weighted gini, threshold) of the best cut, or None if unsplittable."""
    order = np.argsort(values, kind="stable")
    v = values[order]
    t = y[order]
    n = v.size
    cuts = np.nonzero(v[1:] > v[:-1])[0] + 1  # left block sizes with distinct boundary
    if cuts.size == 0:
        return None
    pos_prefix = np.cumsum(t)
    total_pos = pos_prefix[-1]
    n_left = cuts.astype(float)
    n_right = n - n_left
    pos_left = pos_prefix[cuts - 1]
    pos_right = total_pos - pos_left
    p_left = pos_left / n_left
    p_right = pos_right / n_right
    gini = (n_left * 2 * p_left * (1 - p_left) + n_right * 2 * p_right * (1 - p_right)) / n
    best = int(np.argmin(gini))
    cut = cuts[best]
    return float(gini[best]), float((v[cut - 1] + v[cut]) / 2.0)


def _choose_split(X, y, idx, candidate_features):
    best = None
    for f in candidate_features:
        found = _best_split_for_feature(X[idx, f], y[idx])
        if found is None:
            continue
        gini, threshold = found
        if best is None or gini < best[0]:
            best = (gini, int(f), threshold)
    return best


def build_tree(X, y, rng, max_depth=None, max_features=None):
    """Grow one tree; `rng` drives the per-node feature subsample.

    If the sampled feature subset yields no valid split, all features
    are reconsidered, so a node only becomes an impure leaf when every
    feature is constant within it.
    """
    n_features = X.shape[1]
    depth_cap = UNBOUNDED_DEPTH if max_depth is None else max_depth
    m = n_features if max_features is None else min(max_features, n_features)

    nodes = {"feature": [], "threshold": [], "left": [], "right": [], "value": []}

    def new_node():
        for key in nodes:
            nodes[key].append(0 if key != "value" else 0.0)
        return len(nodes["feature"]) - 1

    def grow(idx, depth):
        node = new_node()
        p1 = float(np.mean(y[idx]))
        pure = p1 == 0.0 or p1 == 1.0
        if depth >= depth_cap or pure or idx.size < 2:
            nodes["feature"][node] = -1
            nodes["value"][node] = p1
            return node
        if m < n_features:
            candidates = rng.choice(n_features, size=m, replace=False)
        else:
            candidates = np.arange(n_features)
        split = _choose_split(X, y, idx, candidates)
        if split is None and m < n_features:
            split = _choose_split(X, y, idx, np.arange(n_features))
        if split is None:
            nodes["feature"][node] = -1
            nodes["value"][node] = p1
            return node
        _, feature, threshold = split
        mask = X[idx, feature] <= threshold
        nodes["feature"][node] = feature
        nodes["threshold"][node] = threshold
        nodes["left"][node] = grow(idx[mask], depth + 1)
        nodes["right"][node] = grow(idx[~mask], depth + 1)
        return node

    grow(np.arange(X.shape[0]), 0)
    return nodes


def apply_tree(nodes, X) -> np.ndarray:
    """Leaf value for every row, walking all rows level by level."""
    feature = np.asarray(nodes["feature"], dtype=np.int64)
    threshold = np.asarray(nodes["threshold"], dtype=float)
    left = np.asarray(nodes["left"], dtype=np.int64)
    right = np.asarray(nodes["right"], dtype=np.int64)
    value = np.asarray(nodes["value"], dtype=float)

    cur = np.zeros(X.shape[0], dtype=np.int64)
    active = feature[cur] >= 0
    while active.any():
        rows = np.nonzero(active)[0]
        node_ids = cur[rows]
        goes_left = X[rows, feature[node_ids]] <= threshold[node_ids]
        cur[rows] = np.where(goes_left, left[node_ids], right[node_ids])
        active = feature[cur] >= 0
    return value[cur]
