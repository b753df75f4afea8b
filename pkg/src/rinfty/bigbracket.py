"""The big-bracket Lie algebra of maps ``S^m(g[1]) -> S^n(g[-1])``, shifted by 2.

A :class:`PolyMap` is stored as a table from canonical input words (shift +1)
to output elements (shift -1).  Because ``g[1]`` and ``g[-1]`` differ by an
even shift, a basis vector has the same parity in both, and one parity table
serves inputs and outputs alike.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .graded import (
    Elem,
    GradedBasis,
    InvalidInputError,
    Scalar,
    Word,
    accumulate,
    format_terms,
    shuffle_sign,
    sort_word,
)
from .policy import DEFAULT_POLICY, TruncationPolicy, VerificationReport

IN_SHIFT = 1
OUT_SHIFT = -1


class PolyMap:
    """Sparse element of ``prod_{m,n} Hom(S^m(g[1]), S^n(g[-1]))[2]``.

    ``degree`` is the degree in the shifted space, so an entry sending an input
    word of degree ``D`` must produce output words of degree ``D + degree + 2``.
    """

    __slots__ = ("basis", "degree", "table")

    def __init__(
        self,
        basis: GradedBasis,
        degree: int,
        table: Mapping[Word, Mapping[Word, Scalar]] | None = None,
        *,
        check: bool = True,
    ) -> None:
        self.basis = basis
        self.degree = degree
        clean: dict[Word, dict[Word, Fraction]] = {}
        for w_in, out in (table or {}).items():
            row = {tuple(w): Fraction(c) for w, c in out.items() if c}
            if row:
                clean[tuple(w_in)] = row
        self.table = clean
        if check:
            self.check_degrees()

    @classmethod
    def zero(cls, basis: GradedBasis, degree: int = 0) -> "PolyMap":
        return cls(basis, degree)

    @classmethod
    def from_entries(
        cls,
        basis: GradedBasis,
        degree: int,
        entries: Iterable[tuple[Sequence[str], Elem | Mapping[Sequence[str], Scalar]]],
    ) -> "PolyMap":
        """Build a map from ``(input ids, output)`` pairs.

        Input ids are taken in the given order, so ``f(y, x) = v`` is stored
        as ``f(x*y) = ±v``.  Outputs are elements of shift -1 or mappings from
        output id sequences to coefficients.  Repeated inputs accumulate.
        """
        table: dict[Word, dict[Word, Fraction]] = {}
        for ids, out in entries:
            w_in, sign = sort_word([basis.index(i) for i in ids], basis, IN_SHIFT)
            if not sign:
                raise InvalidInputError(f"input word {' '.join(ids)} vanishes")
            if not isinstance(out, Elem):
                acc = Elem.zero(basis, OUT_SHIFT)
                for out_ids, c in out.items():
                    acc = acc + Elem.word(basis, OUT_SHIFT, list(out_ids), c)
                out = acc
            if out.shift != OUT_SHIFT:
                raise InvalidInputError("map outputs must have shift -1")
            row = table.setdefault(w_in, {})
            for w, c in out.terms.items():
                accumulate(row, w, sign * c)
        return cls(basis, degree, table)

    @classmethod
    def _raw(cls, basis: GradedBasis, degree: int, table: dict) -> "PolyMap":
        f = cls.__new__(cls)
        f.basis = basis
        f.degree = degree
        f.table = {w: row for w, row in table.items() if row}
        return f

    # ------------------------------------------------------------ checks --

    def check_degrees(self) -> None:
        for w_in, row in self.table.items():
            target = self.basis.word_degree(w_in, IN_SHIFT) + self.degree + 2
            for w_out in row:
                got = self.basis.word_degree(w_out, OUT_SHIFT)
                if got != target:
                    raise InvalidInputError(
                        f"entry {self.basis.format_word(w_in)} -> "
                        f"{self.basis.format_word(w_out)} has output degree {got}, "
                        f"expected {target} for a map of degree {self.degree}"
                    )

    def components(self) -> dict[tuple[int, int], dict[Word, Elem]]:
        comps: dict[tuple[int, int], dict[Word, dict]] = {}
        for w_in, row in self.table.items():
            for w_out, c in row.items():
                comps.setdefault((len(w_in), len(w_out)), {}).setdefault(w_in, {})[w_out] = c
        return {
            mn: {w: Elem._raw(self.basis, OUT_SHIFT, row) for w, row in tab.items()}
            for mn, tab in sorted(comps.items())
        }

    def support(self) -> set[tuple[int, int]]:
        return {(len(w_in), len(w_out)) for w_in, row in self.table.items() for w_out in row}

    def in_arities(self) -> set[int]:
        return {len(w) for w in self.table}

    def in_b_plus(self) -> bool:
        return all(m >= 1 and n >= 1 for m, n in self.support())

    def component(self, m: int, n: int) -> "PolyMap":
        table = {}
        for w_in, row in self.table.items():
            if len(w_in) != m:
                continue
            sub = {w: c for w, c in row.items() if len(w) == n}
            if sub:
                table[w_in] = sub
        return PolyMap._raw(self.basis, self.degree, table)

    def is_zero(self) -> bool:
        return not self.table

    def __bool__(self) -> bool:
        return bool(self.table)

    # -------------------------------------------------------- arithmetic --

    def _compatible(self, other: "PolyMap") -> int:
        if other.basis != self.basis:
            raise InvalidInputError("maps live over different bases")
        if self.degree != other.degree and self.table and other.table:
            raise InvalidInputError(
                f"cannot add maps of degrees {self.degree} and {other.degree}"
            )
        return self.degree if self.table else other.degree

    def __add__(self, other: "PolyMap") -> "PolyMap":
        degree = self._compatible(other)
        table = {w: dict(row) for w, row in self.table.items()}
        for w_in, row in other.table.items():
            acc = table.setdefault(w_in, {})
            for w_out, c in row.items():
                accumulate(acc, w_out, c)
        return PolyMap._raw(self.basis, degree, table)

    def __neg__(self) -> "PolyMap":
        return self.scale(-1)

    def __sub__(self, other: "PolyMap") -> "PolyMap":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "PolyMap":
        c = Fraction(c)
        if not c:
            return PolyMap._raw(self.basis, self.degree, {})
        return PolyMap._raw(
            self.basis,
            self.degree,
            {w: {u: c * v for u, v in row.items()} for w, row in self.table.items()},
        )

    def __rmul__(self, c: Scalar) -> "PolyMap":
        return self.scale(c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        if other.basis != self.basis or self.table != other.table:
            return False
        return self.degree == other.degree or not self.table

    __hash__ = None  # type: ignore[assignment]

    def __call__(self, x: Elem) -> Elem:
        return apply(self, x)

    def __repr__(self) -> str:
        return f"PolyMap(degree={self.degree}, {self})"

    def __str__(self) -> str:
        if not self.table:
            return "0"
        fmt = self.basis.format_word
        rows = []
        for w_in in sorted(self.table, key=lambda w: (len(w), w)):
            rows.append(f"{fmt(w_in)} |-> {format_terms(self.basis, self.table[w_in])}")
        return "; ".join(rows)


def apply(f: PolyMap, x: Elem) -> Elem:
    """Evaluate ``f`` on an element of ``S(g[1])`` by linearity."""
    if x.shift != IN_SHIFT:
        raise InvalidInputError(f"maps take shift +1 inputs, got shift {x.shift}")
    if x.basis != f.basis:
        raise InvalidInputError("element and map live over different bases")
    out: dict[Word, Fraction] = {}
    for w_in, c in x.terms.items():
        for w_out, v in f.table.get(w_in, {}).items():
            accumulate(out, w_out, c * v)
    return Elem._raw(f.basis, OUT_SHIFT, out)


# --------------------------------------------------------- circle product --


def _circle_candidates(f: PolyMap, g: PolyMap) -> set[Word]:
    basis = f.basis
    rests = set()
    for w in f.table:
        for j in range(len(w)):
            if j and w[j] == w[j - 1]:
                continue
            rests.add(w[:j] + w[j + 1 :])
    out = set()
    for rest in rests:
        for w in g.table:
            x, sign = sort_word(rest + w, basis, IN_SHIFT)
            if sign:
                out.add(x)
    return out


def circle_on_word(f: PolyMap, g: PolyMap, x: Word) -> dict[Word, Fraction]:
    """``(f o g)(x_1 ... x_n)`` for a canonical word, by the shuffle formula.

    For every (k, l)-shuffle the last ``l`` arguments feed ``g``; one
    cogenerator of ``g``'s output becomes the last argument of ``f`` and the
    remaining output factors multiply ``f``'s result on the right.  The sign is
    the Koszul sign of the shuffle times ``(-1)^{|g|(|x_s1| + ... + |x_sk|)}``.
    """
    basis = f.basis
    n = len(x)
    par = [basis.parity(i, IN_SHIFT) for i in x]
    f_ar = f.in_arities()
    g_ar = g.in_arities()
    g_odd = g.degree & 1
    out: dict[Word, Fraction] = {}
    for k in range(n + 1):
        if k + 1 not in f_ar or n - k not in g_ar:
            continue
        for first in itertools.combinations(range(n), k):
            chosen = set(first)
            rest = tuple(i for i in range(n) if i not in chosen)
            g_row = g.table.get(tuple(x[i] for i in rest))
            if g_row is None:
                continue
            sign = shuffle_sign(par, first)
            if g_odd and sum(par[i] for i in first) & 1:
                sign = -sign
            xs_first = [x[i] for i in first]
            for w, c in g_row.items():
                passed = 0
                for i, v in enumerate(w):
                    pv = basis.parity(v, OUT_SHIFT)
                    split_sign = -1 if (pv and passed & 1) else 1
                    passed += pv
                    # repeated even factors split once per copy
                    f_in, s_in = sort_word(xs_first + [v], basis, IN_SHIFT)
                    if not s_in:
                        continue
                    f_row = f.table.get(f_in)
                    if f_row is None:
                        continue
                    remainder = w[:i] + w[i + 1 :]
                    coeff = sign * split_sign * s_in * c
                    for u, cu in f_row.items():
                        prod, s_out = sort_word(u + remainder, basis, OUT_SHIFT)
                        if s_out:
                            accumulate(out, prod, s_out * coeff * cu)
    return out


def circle(f: PolyMap, g: PolyMap) -> PolyMap:
    """The circle (cup-one) product ``f o g``, of degree ``|f| + |g|``."""
    if f.basis != g.basis:
        raise InvalidInputError("maps live over different bases")
    table = {}
    for x in _circle_candidates(f, g):
        row = circle_on_word(f, g, x)
        if row:
            table[x] = row
    return PolyMap._raw(f.basis, f.degree + g.degree, table)


def big_bracket(f: PolyMap, g: PolyMap) -> PolyMap:
    """Graded commutator ``[f, g] = f o g - (-1)^{|f||g|} g o f``."""
    fg = circle(f, g)
    gf = circle(g, f)
    if f.degree & g.degree & 1:
        return fg + gf
    return fg - gf


def differential(l: PolyMap, gamma: PolyMap) -> PolyMap:
    """``d gamma = [l, gamma]`` for an L-infinity structure element ``l``."""
    return big_bracket(l, gamma)


def mc_candidates(mu: PolyMap) -> int:
    """Number of input words on which ``[mu, mu]`` can be nonzero.

    These are all canonical words of weight ``m + m' - 1`` for input arities
    ``m, m'`` of ``mu``. Words outside the circle candidates vanish by construction.
    """
    ar = mu.in_arities()
    weights = {a + b - 1 for a in ar for b in ar}
    return sum(len(mu.basis.words(w, IN_SHIFT)) for w in weights if w >= 0)


def is_mc(
    mu: PolyMap,
    policy: TruncationPolicy = DEFAULT_POLICY,
    *,
    name: str = "maurer-cartan",
    require_b_plus: bool = True,
) -> VerificationReport:
    """Check ``[mu, mu] = 0`` entry by entry and membership in ``B+``.

    Every nonzero entry of ``[mu, mu]`` is reported as a witness located by
    its component ``(m, n)`` and input word.
    """
    if mu.degree != 1 and mu.table:
        raise InvalidInputError(f"Maurer-Cartan elements have degree 1, got {mu.degree}")
    report = VerificationReport(name, policy)
    fmt = mu.basis.format_word
    if require_b_plus:
        for (m, n) in sorted(mu.support()):
            if m == 0 or n == 0:
                report.fail(f"B+ membership ({m},{n})", "-", "component outside B+")
    over = [m for m in mu.in_arities() if m > policy.max_arity]
    if over:
        report.notes.append(
            f"input arities {sorted(over)} exceed the arity cap {policy.max_arity}"
        )
    square = big_bracket(mu, mu)
    report.checked += mc_candidates(mu)
    for (m, n), rows in square.components().items():
        for w_in in sorted(rows):
            report.fail(f"[mu,mu] ({m},{n})", fmt(w_in), rows[w_in])
    return report
