"""Gradient boosting of shallow regression trees on the logistic loss.

Second-order boosting: at each round, fit a depth-limited tree to the
gradient/hessian statistics of the current margins using the exact
greedy split criterion

    gain = 1/2 [ GL^2/(HL+l2) + GR^2/(HR+l2) - G^2/(H+l2) ]

and leaf weights -G/(H+l2), scaled by the learning rate. The training
deviance after every round is recorded with the model.
"""
import numpy as np

from .base import sigmoid

MIN_GAIN = 1e-12


def _leaf_weight(g_sum, h_sum, l2):
    return -g_sum / (h_sum + l2)


def _best_split(X, g, h, idx, l2):
    g_total = g[idx].sum()
    h_total = h[idx].sum()
    parent = g_total * g_total / (h_total + l2)
    best = None
    for f in range(X.shape[1]):
        values = X[idx, f]
        order = np.argsort(values, kind="stable")
        v = values[order]
        cuts = np.nonzero(v[1:] > v[:-1])[0] + 1
        if cuts.size == 0:
            continue
        g_prefix = np.cumsum(g[idx][order])
        h_prefix = np.cumsum(h[idx][order])
        gl = g_prefix[cuts - 1]
        hl = h_prefix[cuts - 1]
        gr = g_total - gl
        hr = h_total - hl
        gain = 0.5 * (gl * gl / (hl + l2) + gr * gr / (hr + l2) - parent)
        k = int(np.argmax(gain))
        if gain[k] > MIN_GAIN and (best is None or gain[k] > best[0]):
            cut = cuts[k]
            best = (float(gain[k]), f, float((v[cut - 1] + v[cut]) / 2.0))
    return best


def _build_regression_tree(X, g, h, l2, max_depth):
    nodes = {"feature": [], "threshold": [], "left": [], "right": [], "value": []}

    def new_node():
        for key in nodes:
            nodes[key].append(0 if key != "value" else 0.0)
        return len(nodes["feature"]) - 1

    def grow(idx, depth):
        node = new_node()
        if depth >= max_depth or idx.size < 2:
            nodes["feature"][node] = -1
            nodes["value"][node] = _leaf_weight(g[idx].sum(), h[idx].sum(), l2)
            return node
        split = _best_split(X, g, h, idx, l2)
        if split is None:
            nodes["feature"][node] = -1
            nodes["value"][node] = _leaf_weight(g[idx].sum(), h[idx].sum(), l2)
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


def _deviance(margins, y):
    return float(np.mean(np.logaddexp(0.0, margins) - y * margins))


def train(X, y, hp) -> dict:
    from .tree import apply_tree

    n = X.shape[0]
    p0 = min(max(float(np.mean(y)), 1e-6), 1 - 1e-6)
    base = float(np.log(p0 / (1 - p0)))
    margins = np.full(n, base)
    trees = []
    losses = []
    for _ in range(hp.xgb_rounds):
        p = sigmoid(margins)
        g = p - y
        h = p * (1.0 - p)
        tree = _build_regression_tree(X, g, h, hp.xgb_l2, hp.xgb_max_depth)
        trees.append(tree)
        margins = margins + hp.xgb_learning_rate * apply_tree(tree, X)
        losses.append(_deviance(margins, y))
    return {
        "base_margin": base,
        "learning_rate": hp.xgb_learning_rate,
        "trees": trees,
        "train_loss": losses,
    }


def raw_margin(params, X) -> np.ndarray:
    from .tree import apply_tree

    out = np.full(X.shape[0], float(params["base_margin"]))
    lr = float(params["learning_rate"])
    for tree in params["trees"]:
        out += lr * apply_tree(tree, X)
    return out


def score(params, X) -> np.ndarray:
    return sigmoid(raw_margin(params, X))
