"""Independent brute-force references used only by the tests.

Everything here recomputes probabilities from scratch with dict-based
tables and the direct textbook sums, deliberately avoiding the package's
histogram/entropy-difference code paths.
"""

import math
from collections import Counter


def prob_table(*seqs):
    n = len(seqs[0])
    return {k: v / n for k, v in Counter(zip(*seqs)).items()}


def entropy_bits(*seqs):
    return -sum(p * math.log2(p) for p in prob_table(*seqs).values())


def mutual_info_bits(x, y):
    pxy = prob_table(x, y)
    px = prob_table(x)
    py = prob_table(y)
    return sum(
        p * math.log2(p / (px[(a,)] * py[(b,)])) for (a, b), p in pxy.items()
    )


def interaction_bits(x, y, z):
    # I(X;Y|Z) - I(X;Y): a different route than the joined-pair form
    pxyz = prob_table(x, y, z)
    pxz = prob_table(x, z)
    pyz = prob_table(y, z)
    pz = prob_table(z)
    cond = sum(
        p * math.log2(pz[(c,)] * p / (pxz[(a, c)] * pyz[(b, c)]))
        for (a, b, c), p in pxyz.items()
    )
    return cond - mutual_info_bits(x, y)


def round_half_up(v):
    return math.floor(v + 0.5)


def estimated_gt(band_rows, selected):
    """Pixel-wise mean of the selected rows, rounded half-up."""
    n = len(band_rows[0])
    return [
        round_half_up(sum(band_rows[b][i] for b in selected) / len(selected))
        for i in range(n)
    ]


def greedy_reference(band_rows, labels, method, k, beta=0.5, threshold=-0.02, lam=1.0):
    """Re-scores every candidate from scratch at every step.

    band_rows: list of per-band symbol lists over the labeled pixels.
    Returns the ordered list of accepted band indices.
    """
    bands = len(band_rows)
    relevance = [mutual_info_bits(band_rows[b], labels) for b in range(bands)]

    def argmax(indices, score):
        best, best_s = None, None
        for i in indices:
            s = score(i)
            if best_s is None or s > best_s:
                best, best_s = i, s
        return best

    if method == "MIM":
        order = sorted(range(bands), key=lambda b: (-relevance[b], b))
        return order[:k]

    first = argmax(range(bands), lambda b: relevance[b])
    selected = [first]
    remaining = [b for b in range(bands) if b != first]

    if method == "MIBF":
        order = sorted(remaining, key=lambda b: (-relevance[b], b))
        for cand in order:
            if len(selected) >= k:
                break
            before = mutual_info_bits(estimated_gt(band_rows, selected), labels)
            after = mutual_info_bits(
                estimated_gt(band_rows, selected + [cand]), labels
            )
            if after - before > threshold:
                selected.append(cand)
        return selected

    while len(selected) < k and remaining:
        if method == "MIFS":
            def score(c):
                red = sum(mutual_info_bits(band_rows[c], band_rows[s]) for s in selected)
                return relevance[c] - beta * red
        elif method == "MRMR":
            def score(c):
                red = sum(mutual_info_bits(band_rows[c], band_rows[s]) for s in selected)
                return relevance[c] - red / len(selected)
        elif method == "IGBS":
            est = estimated_gt(band_rows, selected)

            def score(c):
                gain = interaction_bits(labels, est, band_rows[c])
                return relevance[c] + lam * gain / len(selected)
        else:
            raise ValueError(method)
        pick = argmax(remaining, score)
        selected.append(pick)
        remaining.remove(pick)
    return selected
