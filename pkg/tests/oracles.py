"""Independent reference implementations used to freeze expected values.

None of these reuse the engine's sign machinery: multivectors are dense
dictionaries over sorted index tuples and signs come from bubble sorting.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from rinfty import Elem, GradedBasis


def adjacent_swap_sign(perm, degrees):
    """Koszul sign of ``perm`` (new order of old positions) by adjacent swaps."""
    items = list(range(len(perm)))
    target = list(perm)
    sign = 1
    # bubble the current arrangement into the target order
    for pos in range(len(target)):
        j = items.index(target[pos])
        while j > pos:
            a, b = items[j - 1], items[j]
            if degrees[a] % 2 and degrees[b] % 2:
                sign = -sign
            items[j - 1], items[j] = b, a
            j -= 1
    return sign


def brute_force_shuffles(k, l):
    out = []
    for p in itertools.permutations(range(k + l)):
        if list(p[:k]) == sorted(p[:k]) and list(p[k:]) == sorted(p[k:]):
            out.append(p)
    return out


def jacobi_defects(consts, dim):
    """Jacobi identity of structure constants ``consts[(i, j)] = {k: c}``."""

    def br(u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in bracket_basis(consts, i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c}

    bad = []
    for i, j, k in itertools.combinations(range(dim), 3):
        e = lambda t: {t: Fraction(1)}  # noqa: E731
        total = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for key, val in br(e(a), br(e(b), e(c))).items():
                total[key] = total.get(key, 0) + val
        if any(total.values()):
            bad.append((i, j, k))
    return bad


def bracket_basis(consts, i, j):
    if i == j:
        return {}
    if (i, j) in consts:
        return consts[(i, j)]
    return {k: -c for k, c in consts.get((j, i), {}).items()}


def wedge_normal(idx):
    """Sorted tuple and sign of a wedge of basis indices, or (None, 0)."""
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return None, 0
    sign = 1
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
    return tuple(idx), sign


def _add(acc, key, val):
    if val:
        acc[key] = acc.get(key, 0) + val
        if not acc[key]:
            del acc[key]


def adjoint(consts, a, mv):
    """``ad_a`` on a multivector as a derivation of the wedge product."""
    out = {}
    for w, coef in mv.items():
        for pos, v in enumerate(w):
            for k, c in bracket_basis(consts, a, v).items():
                key, s = wedge_normal(w[:pos] + (k,) + w[pos + 1 :])
                if s:
                    _add(out, key, s * c * coef)
    return out


def textbook_schouten(consts, X, Y):
    """``sum (-1)^(i+j) [x_i, y_j] ^ X without x_i ^ Y without y_j``."""
    out = {}
    for xw, xc in X.items():
        for yw, yc in Y.items():
            for i, xi in enumerate(xw):
                for j, yj in enumerate(yw):
                    sign = -1 if (i + j) % 2 else 1
                    for k, c in bracket_basis(consts, xi, yj).items():
                        key, s = wedge_normal((k,) + xw[:i] + xw[i + 1 :] + yw[:j] + yw[j + 1 :])
                        if s:
                            _add(out, key, sign * s * c * xc * yc)
    return out


def elem_to_mv(x: Elem):
    """Degree-0 generators are odd in ``S(g[-1])``; canonical words are wedges."""
    return {tuple(w): c for w, c in x.terms.items()}


def mv_to_elem(basis: GradedBasis, mv) -> Elem:
    out = Elem.zero(basis, -1)
    for w, c in mv.items():
        out = out + Elem.word(basis, -1, [basis.ids[i] for i in w], c)
    return out


def consts_of(alg):
    """Structure constants from a classical algebra's l_2 table."""
    out = {}
    for w, row in alg.bracket(2).table.items():
        out[(w[0], w[1])] = {u[0]: c for u, c in row.items()}
    return out
