"""Naive word rewriting used as an independent oracle in the tests.

A monomial is a list of letters, rewritten by adjacent swaps that each cost
one exchange phase, until it is sorted into the canonical order.
"""
from __future__ import annotations


def normal_order(word, order, phase_exp):
    """Bubble-sort ``word`` by ``order``.

    ``phase_exp(x, y)`` gives e with ``x y = q^e y x`` for letters x after y in
    canonical order.  Returns ``(sorted_word, total_exponent)``.
    """
    w = list(word)
    total = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if order(w[i]) > order(w[i + 1]):
                total += phase_exp(w[i], w[i + 1])
                w[i], w[i + 1] = w[i + 1], w[i]
                changed = True
    return w, total
