import numpy as np

from digraph_forge.bidegree import BiDegreeSequence


def seq_of(m, d):
    return BiDegreeSequence(np.array(m, dtype=np.int64), np.array(d, dtype=np.int64))


def within_se(observed, p, trials, k=5.0):
    return abs(observed - p) <= k * np.sqrt(p * (1 - p) / trials)
