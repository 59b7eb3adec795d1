"""Direct-definition oracles, written without the package's verifiers.

Each oracle reads instance functions through plain integer calls and
re-derives the accept condition from the problem statement.
"""

from itertools import combinations


def bits_of(value, width, count):
    mask = (1 << width) - 1
    return [(value >> (width * i)) & mask for i in range(count)]


def join(values, width):
    out = 0
    for i, v in enumerate(values):
        out |= v << (width * i)
    return out


def choice_pred(predicates, n, i, prefix, x):
    return predicates[i](join(list(prefix) + [x], n))


def long_choice_ok(predicates, n, seq, start=None):
    if len(seq) != n + 1 or len(set(seq)) != n + 1:
        return False
    if any(not 0 <= a < 1 << n for a in seq):
        return False
    if start is not None and seq[0] != start:
        return False
    for i in range(n - 1):
        want = choice_pred(predicates, n, i, seq[:i + 1], seq[i + 1])
        for j in range(i + 2, n + 1):
            if choice_pred(predicates, n, i, seq[:i + 1], seq[j]) != want:
                return False
    return True


def short_choice_ok(predicates, n, seq, c):
    universe = (1 << n) - 2
    k = len(seq) - 1
    if k < 0 or k > n - 2 or len(set(seq)) != len(seq) or any(not 0 <= a < universe for a in seq):
        return False
    for i in range(k):
        want = choice_pred(predicates, n, i, seq[:i + 1], seq[i + 1])
        for j in range(i + 2, k + 1):
            if choice_pred(predicates, n, i, seq[:i + 1], seq[j]) != want:
                return False
    for x in range(universe):
        if x in seq:
            continue
        extends = all(choice_pred(predicates, n, i, seq[:i + 1], x) ==
                      choice_pred(predicates, n, i, seq[:i + 1], seq[i + 1]) for i in range(k))
        if extends and choice_pred(predicates, n, k, seq, x) == c:
            return False
    return True


def ramsey2_color(edge, n, a, b):
    w = 2 * n
    return edge(a | (b << w)) & edge(b | (a << w))


def monochrome(color_of, nodes, color):
    return all(color_of(a, b) == color for a, b in combinations(nodes, 2))


def sunflower_ok(sets):
    """Distinct sets whose pairwise intersections are all one set."""
    sets = [frozenset(s) for s in sets]
    if len(set(sets)) != len(sets):
        return False
    cores = {a & b for a, b in combinations(sets, 2)}
    return len(cores) <= 1


def hamming(a, b):
    return bin(a ^ b).count("1")


def equidistant_sets(m, size):
    """All size-element subsets of {0,1}^m that are pairwise equidistant."""
    found = []
    for pts in combinations(range(1 << m), size):
        dists = {hamming(a, b) for a, b in combinations(pts, 2)}
        if len(dists) == 1:
            found.append(pts)
    return found


def heap_depth(s):
    return (s + 1).bit_length() - 1


def interval_oracle(C0, n, prefix):
    """B_i, F_i as explicit sets, straight from the halving rule."""
    top = (1 << n) - 1
    images = [C0(a) or top for a in prefix]
    B = set(range(1, top + 1))
    history = []
    for t in range(len(prefix)):
        if t > 0:
            Bp, Fp = history[-1]
            if len(Bp) == 1:
                B = Bp
            elif images[t] in Fp:
                B = Fp
            else:
                B = Bp - Fp
        free = sorted(B - set(images[:t + 1]))
        if t > 0 and len(history[-1][0]) == 1:
            F = B
        else:
            need = (len(free) + 1) // 2
            F = {v for v in B if need and v <= free[need - 1]}
        history.append((B, F))
    return history, images
