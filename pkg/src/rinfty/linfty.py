"""L-infinity algebras, their multiderivation extension to the completed
symmetric algebra, and the classical Chevalley-Eilenberg specialization.

Brackets are kept in the shifted convention: ``l_k : S^k(g[1]) -> g[1]`` is
graded symmetric of degree one.  The extension ``L_k`` acts on words of
``S(g[-1])`` (read in ``S(g[-1])[2]``, which has the same parities), picking one
factor from every argument, bracketing the picked factors with ``l_k`` and
multiplying the leftovers back in.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .bigbracket import IN_SHIFT, OUT_SHIFT, PolyMap, big_bracket, is_mc
from .graded import (
    Elem,
    GradedBasis,
    InvalidInputError,
    Word,
    accumulate,
    shuffle_sign,
    sort_word,
)
from .policy import DEFAULT_POLICY, TruncationPolicy, VerificationReport

SHAT_SHIFT = OUT_SHIFT  # words of the completed algebra live in S(g[-1])


@dataclass
class LInftyAlg:
    """A graded basis together with brackets ``l_k`` stored as one PolyMap."""

    basis: GradedBasis
    brackets: PolyMap
    certified: VerificationReport | None = None

    def __post_init__(self) -> None:
        if self.brackets.basis != self.basis:
            raise InvalidInputError("brackets are defined over a different basis")
        if self.brackets.table and self.brackets.degree != 1:
            raise InvalidInputError("L-infinity brackets must have degree 1")
        self.brackets.degree = 1
        for m, n in self.brackets.support():
            if n != 1:
                raise InvalidInputError(f"bracket component ({m},{n}) must land in weight 1")
            if m == 0:
                raise InvalidInputError("curved structures (arity-0 brackets) are not supported")

    @classmethod
    def from_brackets(
        cls,
        basis: GradedBasis,
        entries: Iterable[tuple[Sequence[str], dict]],
    ) -> "LInftyAlg":
        """Build from ``(input ids, {output id: coeff})`` entries."""
        return cls(
            basis,
            PolyMap.from_entries(
                basis, 1, [(ids, {(o,): c for o, c in out.items()}) for ids, out in entries]
            ),
        )

    @property
    def arities(self) -> list[int]:
        return sorted(self.brackets.in_arities())

    @property
    def max_arity(self) -> int:
        return max(self.arities, default=0)

    def bracket(self, k: int) -> PolyMap:
        return self.brackets.component(k, 1)

    def is_classical(self) -> bool:
        """Only ``l_2`` present and every generator in native degree 0."""
        return set(self.arities) <= {2} and all(v.degree == 0 for v in self.basis.vectors)

    def certify(self, policy: TruncationPolicy = DEFAULT_POLICY) -> VerificationReport:
        report = check_higher_jacobi(self, policy)
        self.certified = report
        return report


def check_higher_jacobi(
    alg: LInftyAlg, policy: TruncationPolicy = DEFAULT_POLICY
) -> VerificationReport:
    """Higher Jacobi identities, i.e. ``[l, l] = 0`` in the big bracket."""
    report = is_mc(alg.brackets, policy, name="higher-jacobi")
    if alg.max_arity > policy.max_arity:
        report.notes.append(
            f"algebra has brackets of arity {alg.max_arity} beyond the cap {policy.max_arity}"
        )
    return report


# --------------------------------------------------- Schouten extension --


class SchoutenAlg:
    """The L-infinity structure ``{L_k}`` on ``S^(g[-1])[1]``.

    ``L_k`` is evaluated lazily per tuple of words and memoized; the memo is
    guarded by a lock so instances may be shared between threads.
    """

    def __init__(self, base: LInftyAlg, policy: TruncationPolicy = DEFAULT_POLICY) -> None:
        self.base = base
        self.basis = base.basis
        self.policy = policy
        self._l = {k: base.bracket(k) for k in base.arities}
        self._memo: dict[tuple[Word, ...], dict[Word, Fraction]] = {}
        self._lock = threading.Lock()

    @property
    def arities(self) -> list[int]:
        return sorted(self._l)

    def parity(self, word: Word) -> int:
        return self.basis.word_parity(word, SHAT_SHIFT)

    def degree(self, word: Word) -> int:
        """Degree of a word in ``S(g[-1])[2]``."""
        return self.basis.word_degree(word, SHAT_SHIFT) - 2

    def bracket_words(self, args: Sequence[Word]) -> dict[Word, Fraction]:
        """``L_k(a_1, ..., a_k)`` on canonical words; the result must not be mutated."""
        key = tuple(args)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        value = self._compute(key)
        with self._lock:
            self._memo.setdefault(key, value)
        return value

    def _compute(self, args: tuple[Word, ...]) -> dict[Word, Fraction]:
        lk = self._l.get(len(args))
        if lk is None or any(not a for a in args):
            return {}
        basis = self.basis
        seq = [v for a in args for v in a]
        par = [basis.parity(v, SHAT_SHIFT) for v in seq]
        offsets = list(itertools.accumulate([0] + [len(a) for a in args]))
        out: dict[Word, Fraction] = {}
        for choice in itertools.product(*(range(len(a)) for a in args)):
            picked = [offsets[j] + c for j, c in enumerate(choice)]
            picked_set = set(picked)
            others = [i for i in range(len(seq)) if i not in picked_set]
            sign = _move_to_front_sign(par, picked, others)
            w_in, s_in = sort_word([seq[i] for i in picked], basis, IN_SHIFT)
            if not s_in:
                continue
            row = lk.table.get(w_in)
            if row is None:
                continue
            leftover = tuple(seq[i] for i in others)
            for u, cu in row.items():
                prod, s_out = sort_word(u + leftover, basis, SHAT_SHIFT)
                if s_out:
                    accumulate(out, prod, sign * s_in * s_out * cu)
        return out

    def bracket(self, args: Sequence[Elem]) -> Elem:
        """Multilinear extension of ``L_k`` to elements of shift -1."""
        for a in args:
            if a.shift != SHAT_SHIFT:
                raise InvalidInputError("Schouten brackets take shift -1 elements")
        out: dict[Word, Fraction] = {}
        for combo in itertools.product(*(a.terms.items() for a in args)):
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            for w, c in self.bracket_words([w for w, _ in combo]).items():
                accumulate(out, w, coeff * c)
        return Elem._raw(self.basis, SHAT_SHIFT, out)

    def jacobiator(self, args: Sequence[Word]) -> dict[Word, Fraction]:
        """``sum_{i+j=n+1} sum_shuffles eps * L_j(L_i(a_first), a_rest)``."""
        return linfty_jacobiator(self.bracket_words, args, [self.parity(a) for a in args])

    def test_words(self, max_weight: int | None = None) -> list[Word]:
        """Nonconstant canonical words of weight at most ``max_weight``."""
        cap = self.policy.max_weight if max_weight is None else max_weight
        return [w for m in range(1, cap + 1) for w in self.basis.words(m, SHAT_SHIFT)]

    def argument_tuples(self, n: int, max_total_weight: int | None = None):
        """Multisets of ``n`` test words with total weight within the cap."""
        cap = self.policy.max_weight if max_total_weight is None else max_total_weight
        words = self.test_words(cap - n + 1) if cap >= n else []
        for combo in itertools.combinations_with_replacement(words, n):
            if sum(len(w) for w in combo) > cap:
                continue
            if any(
                combo[i] == combo[i + 1] and self.parity(combo[i]) for i in range(n - 1)
            ):
                continue
            yield combo


def _move_to_front_sign(par: Sequence[int], front: Sequence[int], back: Sequence[int]) -> int:
    """Koszul sign of reordering a sequence to ``front + back`` (index lists)."""
    odd = 0
    order = list(front) + list(back)
    for a in range(len(order)):
        pa = order[a]
        if not par[pa]:
            continue
        for b in range(a + 1, len(order)):
            pb = order[b]
            if pa > pb and par[pb]:
                odd ^= 1
    return -1 if odd else 1


def linfty_jacobiator(
    bracket: Callable[[Sequence[Word]], dict[Word, Fraction]],
    args: Sequence[Word],
    parities: Sequence[int],
) -> dict[Word, Fraction]:
    n = len(args)
    out: dict[Word, Fraction] = {}
    for i in range(1, n + 1):
        for first in itertools.combinations(range(n), i):
            inner = bracket([args[t] for t in first])
            if not inner:
                continue
            sign = shuffle_sign(parities, first)
            chosen = set(first)
            rest = [args[t] for t in range(n) if t not in chosen]
            for w, c in list(inner.items()):
                for u, cu in bracket([w] + rest).items():
                    accumulate(out, u, sign * c * cu)
    return out


def schouten_extend(alg: LInftyAlg, policy: TruncationPolicy = DEFAULT_POLICY) -> SchoutenAlg:
    if alg.certified is None:
        raise InvalidInputError("the algebra must be certified (run certify) before extension")
    if not alg.certified.passed:
        raise InvalidInputError("the algebra failed its higher Jacobi check")
    return SchoutenAlg(alg, policy)


def check_schouten_linfty(s: SchoutenAlg) -> VerificationReport:
    """Higher Jacobi for ``{L_k}`` on all argument tuples within the caps."""
    policy = s.policy
    report = VerificationReport("schouten-linfty", policy)
    report.notes.append(f"certified up to total argument weight {policy.max_weight}")
    fmt = s.basis.format_word
    for n in range(1, policy.max_arity + 1):
        for args in s.argument_tuples(n):
            report.checked += 1
            value = s.jacobiator(args)
            if value:
                report.fail(
                    f"jacobi n={n}",
                    " , ".join(fmt(a) for a in args),
                    Elem._raw(s.basis, SHAT_SHIFT, value),
                )
    return report


# -------------------------------------------- classical specialization ---


def schouten_bracket(s: SchoutenAlg, x: Elem, y: Elem) -> Elem:
    """Unshifted binary bracket on ``S^(g[-1])[1]``: ``(-1)^{|x|} L_2(x, y)``.

    ``|x|`` is the degree in ``S^(g[-1])[1]`` and ``x`` must be homogeneous.  On
    weight-one words this is the Lie bracket of ``g``.
    """
    sign = -1 if x and (x.degree() - 1) & 1 else 1
    return s.bracket([x, y]) * sign


def _require_classical(alg: LInftyAlg) -> None:
    if not alg.is_classical():
        raise InvalidInputError(
            "the Chevalley-Eilenberg specialization needs a Lie algebra in degree 0 "
            "with only a binary bracket"
        )


def adjoint_action(alg: LInftyAlg, a: int, c: Elem) -> Elem:
    """``ad_a(c) = sum_i v_1 ... [a, v_i] ... v_n`` for a degree-0 Lie algebra.

    In that case every generator is odd in ``S(g[-1])`` and ``ad_a`` is an even
    derivation, so no signs enter.
    """
    basis = alg.basis
    l2 = alg.bracket(2)
    out: dict[Word, Fraction] = {}
    for w, c_w in c.terms.items():
        for i, v in enumerate(w):
            pair, s = sort_word([a, v], basis, IN_SHIFT)
            if not s:
                continue
            for u, cu in l2.table.get(pair, {}).items():
                prod, s2 = sort_word(w[:i] + u + w[i + 1 :], basis, SHAT_SHIFT)
                if s2:
                    accumulate(out, prod, s * s2 * cu * c_w)
    return Elem._raw(basis, SHAT_SHIFT, out)


def ce_differential(
    alg: LInftyAlg, c: Elem, policy: TruncationPolicy = DEFAULT_POLICY
) -> PolyMap:
    """Chevalley-Eilenberg coboundary of the 0-cochain ``c``: ``a |-> c . a``.

    The right action ``c . a = (-1)^{|a||c|} ad_a(c)`` (right-invariant
    multivector convention); for even ``c`` such as an r-matrix it is ``ad_a(c)``.
    The result is the ``(1, weight(c))`` component of a map in ``B``.
    """
    _require_classical(alg)
    if c.shift != SHAT_SHIFT:
        raise InvalidInputError("0-cochains live in S(g[-1]) (shift -1)")
    basis = alg.basis
    if c.is_zero():
        return PolyMap.zero(basis, 1)
    c_deg = c.degree() - 2
    table = {}
    for a in range(basis.dim):
        value = adjoint_action(alg, a, c)
        sign = -1 if (basis.parity(a, IN_SHIFT) and c_deg & 1) else 1
        if value:
            table[(a,)] = {w: sign * v for w, v in value.terms.items()}
    return PolyMap(basis, c_deg + 1, table)


def check_hamiltonian_morphism(
    alg: LInftyAlg,
    samples: Sequence[tuple[Elem, Elem]],
    policy: TruncationPolicy = DEFAULT_POLICY,
    schouten: SchoutenAlg | None = None,
) -> VerificationReport:
    """``[d_CE x, d_CE y] = d_CE [x, y]`` and ``[l_2, d_CE x] = 0`` on samples."""
    _require_classical(alg)
    if schouten is None:
        if alg.certified is None:
            alg.certify(policy)
        schouten = schouten_extend(alg, policy)
    report = VerificationReport("hamiltonian-morphism", policy)
    l2 = alg.brackets
    seen_cocycle = set()
    for idx, (x, y) in enumerate(samples):
        for z in (x, y):
            key = tuple(sorted(z.terms.items()))
            if key in seen_cocycle:
                continue
            seen_cocycle.add(key)
            report.checked += 1
            dz = big_bracket(l2, ce_differential(alg, z, policy))
            if dz:
                report.fail("cocycle d(dCE x)", str(z), dz)
        report.checked += 1
        lhs = big_bracket(ce_differential(alg, x, policy), ce_differential(alg, y, policy))
        rhs = ce_differential(alg, schouten_bracket(schouten, x, y), policy)
        diff = lhs - rhs
        if diff:
            report.fail(f"sample {idx}", f"{x} ; {y}", diff)
    return report
