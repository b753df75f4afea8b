"""r-infinity matrices, the canonical L-infinity morphism into ``B+`` and the
transfer ``mu' = phi(e^r)`` producing a triangular L-infinity bialgebra.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Generic, Sequence, TypeVar

from .bigbracket import IN_SHIFT, PolyMap, big_bracket, mc_candidates
from .graded import Elem, InvalidInputError, Word, accumulate, shuffle_sign
from .linfty import SHAT_SHIFT, SchoutenAlg
from .policy import DEFAULT_POLICY, TruncationPolicy, VerificationReport

T = TypeVar("T")


@dataclass
class LambdaSeries(Generic[T]):
    """Truncated power series ``sum_{p >= 1} lambda^p c_p`` up to order ``cap``."""

    coefficients: dict[int, T] = field(default_factory=dict)
    cap: int = 3

    def __getitem__(self, p: int) -> T | None:
        return self.coefficients.get(p)

    def orders(self) -> list[int]:
        return sorted(p for p in self.coefficients if p <= self.cap)


class TransferError(InvalidInputError):
    """The r-matrix failed its Maurer-Cartan precondition."""

    def __init__(self, message: str, report: VerificationReport) -> None:
        super().__init__(message)
        self.report = report


def validate_rmatrix(r: LambdaSeries[Elem], s: SchoutenAlg) -> None:
    for p, c in r.coefficients.items():
        if p <= 0:
            raise InvalidInputError(
                "an r-matrix has no lambda^0 term (curved input is not supported)"
            )
        if c.shift != SHAT_SHIFT or c.basis != s.basis:
            raise InvalidInputError(f"lambda^{p} coefficient is not an element of S(g[-1])")
        for w in c.terms:
            deg = s.basis.word_degree(w, SHAT_SHIFT)
            if deg != 2:
                raise InvalidInputError(
                    f"lambda^{p} coefficient has word {s.basis.format_word(w)} of degree "
                    f"{deg - 1} in S^(g[-1])[1]; r-matrices have degree 1"
                )


def _compositions(total: int, parts: int, allowed: Sequence[int]):
    """Ordered tuples of ``parts`` allowed orders summing to ``total``."""
    for combo in itertools.product(allowed, repeat=parts):
        if sum(combo) == total:
            yield combo


def check_generalized_mc(r: LambdaSeries[Elem], s: SchoutenAlg) -> VerificationReport:
    """``sum_k L_k(r, ..., r) / k! = 0`` order by order up to lambda^L."""
    validate_rmatrix(r, s)
    policy = s.policy
    report = VerificationReport("generalized-maurer-cartan", policy)
    top = min(policy.max_lambda, r.cap)
    report.notes.append(f"certified through lambda^{top}")
    orders = r.orders()
    fmt = s.basis.format_word
    for w in (w for c in r.coefficients.values() for w in c.terms):
        if len(w) > policy.max_weight:
            report.notes.append(f"r contains words beyond the weight cap {policy.max_weight}")
            break
    for q in range(1, top + 1):
        value: dict[Word, Fraction] = {}
        for k in s.arities:
            if k > q:
                continue
            inv = Fraction(1, math.factorial(k))
            for combo in _compositions(q, k, orders):
                term = s.bracket([r.coefficients[p] for p in combo])
                for w, c in term.terms.items():
                    accumulate(value, w, inv * c)
        report.checked += 1
        for w in sorted(value, key=lambda w: (len(w), w)):
            report.fail(f"lambda^{q} weight {len(w)}", fmt(w), value[w])
    return report


# -------------------------------------------------- canonical morphism --


class CanonicalMorphism:
    """``phi_n(x_1 ... x_n)(y) = L_{n+p}(x_1, ..., x_n, N(y))`` for ``p >= 1``.

    ``N`` sends a word ``y_1 ... y_p`` of ``S(g[1])`` to the ``p`` singleton
    words ``y_i`` of ``S(g[-1])``, with sign +1.  Values on word tuples are
    memoized.
    """

    def __init__(self, s: SchoutenAlg) -> None:
        self.s = s
        self.basis = s.basis
        self._memo: dict[tuple[Word, ...], PolyMap] = {}
        self._lock = threading.Lock()

    def degree(self, args: Sequence[Word]) -> int:
        return sum(self.s.degree(w) for w in args) + 1

    def on_words(self, args: Sequence[Word]) -> PolyMap:
        key = tuple(args)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        n = len(key)
        table: dict[Word, dict[Word, Fraction]] = {}
        for k in self.s.arities:
            p = k - n
            if p < 1:
                continue
            for y in self.basis.words(p, IN_SHIFT):
                value = self.s.bracket_words(key + n_map(y))
                if value:
                    table[y] = dict(value)
        phi = PolyMap._raw(self.basis, self.degree(key), table)
        with self._lock:
            self._memo.setdefault(key, phi)
        return phi

    def __call__(self, xs: Sequence[Elem]) -> PolyMap:
        """Multilinear extension to homogeneous elements of shift -1."""
        degree = 1
        for x in xs:
            if x.shift != SHAT_SHIFT:
                raise InvalidInputError("phi takes elements of S(g[-1])")
            if x:
                degree += x.degree() - 2
        out = PolyMap.zero(self.basis, degree)
        for combo in itertools.product(*(x.terms.items() for x in xs)):
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            term = self.on_words([w for w, _ in combo])
            if term:
                out = out + term.scale(coeff)
        out.degree = degree
        return out


def n_map(y: Word) -> tuple[Word, ...]:
    """``N``: a word of ``S(g[1])`` as a tuple of singleton slots."""
    return tuple((v,) for v in y)


def canonical_phi(
    n: int,
    xs: Sequence[Elem],
    s: SchoutenAlg,
    policy: TruncationPolicy = DEFAULT_POLICY,
    morphism: CanonicalMorphism | None = None,
) -> PolyMap:
    """``phi_n(x_1 ... x_n)`` as an element of ``B``.

    Output components of weight 0 are kept (not discarded) so that callers can
    see whether the image leaves ``B+``.
    """
    if len(xs) != n:
        raise InvalidInputError(f"phi_{n} takes {n} arguments, got {len(xs)}")
    return (morphism or CanonicalMorphism(s))(xs)


def check_linfty_morphism(
    s: SchoutenAlg, policy: TruncationPolicy | None = None
) -> VerificationReport:
    """The L-infinity morphism equations for ``phi`` on all argument tuples in caps.

    For each tuple ``x_1 ... x_n`` of words (at most A words, total weight at
    most W) it checks that

        d phi_n(x) + 1/2 sum_{k, sigma} (-1)^eps [phi_k(x_first), phi_{n-k}(x_rest)]
          + sum_{m, tau} (-1)^{|x_tau|} phi_{n-m+1}(L_m(x_first), x_rest)

    vanishes, ``eps`` being the Koszul sign plus the degrees of the first block.
    With the circle-product signs used here the source-side sum enters with a
    plus sign; see :func:`morphism_defect`.
    """
    policy = policy or s.policy
    phi = CanonicalMorphism(s)
    report = VerificationReport("linfty-morphism", policy)
    report.notes.append(
        f"argument tuples of up to {policy.max_arity} words, total weight <= {policy.max_weight}"
    )
    fmt = s.basis.format_word
    for n in range(1, policy.max_arity + 1):
        for args in s.argument_tuples(n, policy.max_weight):
            report.checked += 1
            diff = morphism_defect(s, phi, args)
            if diff:
                report.fail(f"phi n={n}", " , ".join(fmt(a) for a in args), diff)
    weight_zero = sorted({m for f in phi._memo.values() for m, n in f.support() if n == 0})
    for m in weight_zero:
        report.notes.append(f"phi has a weight-0 output component at input arity {m}")
    return report


def morphism_defect(s: SchoutenAlg, phi: CanonicalMorphism, args: Sequence[Word]) -> PolyMap:
    """Target-side terms plus source-side terms of the morphism equation.

    Only the overall sign of the source-side sum ``phi(L_m(...) ...)`` is fixed
    by requiring the equations at n = 1 and n = 2 to hold for dg Lie algebras
    and classical Lie algebras simultaneously; the shuffle signs are the
    printed ones.
    """
    n = len(args)
    par = [s.parity(a) for a in args]
    degs = [s.degree(a) for a in args]
    l = s.base.brackets
    total = big_bracket(l, phi.on_words(args))
    half = Fraction(1, 2)
    for k in range(1, n):
        for first in itertools.combinations(range(n), k):
            rest = [i for i in range(n) if i not in first]
            sign = shuffle_sign(par, first)
            if sum(degs[i] for i in first) & 1:
                sign = -sign
            a = phi.on_words([args[i] for i in first])
            b = phi.on_words([args[i] for i in rest])
            if a and b:
                total = total + big_bracket(a, b).scale(half * sign)
    for m in range(1, n + 1):
        for first in itertools.combinations(range(n), m):
            inner = s.bracket_words([args[i] for i in first])
            if not inner:
                continue
            sign = shuffle_sign(par, first)
            rest = [args[i] for i in range(n) if i not in first]
            for w, c in inner.items():
                term = phi.on_words([w] + rest)
                if term:
                    total = total + term.scale(sign * c)
    total.degree = phi.degree(args) + 1
    return total


# ------------------------------------------------------------ transfer --


@dataclass
class BialgebraStructure:
    """``mu = mu' + l`` as a lambda-series of maps, with its verification."""

    mu: LambdaSeries[PolyMap]
    mu_prime: LambdaSeries[PolyMap]
    r: LambdaSeries[Elem]
    policy: TruncationPolicy
    report: VerificationReport
    classical_mode: bool = False

    def support(self) -> set[tuple[int, int]]:
        return {mn for f in self.mu.coefficients.values() for mn in f.support()}


def transfer(
    r: LambdaSeries[Elem], s: SchoutenAlg, policy: TruncationPolicy | None = None
) -> BialgebraStructure:
    """``mu' = sum_n phi_n(r, ..., r) / n!`` and ``mu = mu' + l``, verified."""
    policy = policy or s.policy
    mce = check_generalized_mc(r, s)
    if not mce.passed:
        raise TransferError("r does not satisfy the generalized Maurer-Cartan equation", mce)
    phi = CanonicalMorphism(s)
    basis = s.basis
    top = min(policy.max_lambda, r.cap)
    orders = r.orders()
    l = s.base.brackets
    mu_prime: dict[int, PolyMap] = {}
    for q in range(1, top + 1):
        acc = PolyMap.zero(basis, 1)
        for n in range(1, q + 1):
            inv = Fraction(1, math.factorial(n))
            for combo in _compositions(q, n, orders):
                term = phi([r.coefficients[p] for p in combo])
                if term:
                    acc = acc + term.scale(inv)
        acc.degree = 1
        if acc:
            mu_prime[q] = acc
    mu = {0: l, **mu_prime}
    report = VerificationReport("transfer", policy)
    report.notes.append(f"certified through lambda^{top}")
    classical = s.base.is_classical()
    if classical:
        report.notes.append("classical mode: phi = phi_1 and the lambda-series has one term")
    zero = PolyMap.zero(basis, 1)
    fmt = basis.format_word
    for q, f in sorted(mu.items()):
        f.check_degrees()
        report.checked += sum(len(row) for row in f.table.values())
        if f.degree != 1 and f:
            report.fail(f"degree lambda^{q}", "-", f"degree {f.degree}")
        for (m, n) in sorted(f.support()):
            if m == 0 or n == 0:
                report.fail(f"B+ membership lambda^{q} ({m},{n})", "-", "component outside B+")
    for q in range(0, top + 1):
        # [mu, mu] at lambda^q
        square = zero
        for a in range(q + 1):
            fa, fb = mu.get(a), mu.get(q - a)
            if fa is not None and fb is not None:
                report.checked += mc_candidates(fa) if a == q - a else 0
                square = square + big_bracket(fa, fb)
        for (m, n), rows in square.components().items():
            for w_in in sorted(rows):
                report.fail(f"[mu,mu] lambda^{q} ({m},{n})", fmt(w_in), rows[w_in])
        if q == 0:
            continue
        # d mu' + 1/2 [mu', mu'] at lambda^q, checked independently
        eq = big_bracket(l, mu_prime.get(q, zero))
        for a in range(1, q):
            fa, fb = mu_prime.get(a), mu_prime.get(q - a)
            if fa is not None and fb is not None:
                eq = eq + big_bracket(fa, fb).scale(Fraction(1, 2))
        for (m, n), rows in eq.components().items():
            for w_in in sorted(rows):
                report.fail(f"d mu' + 1/2[mu',mu'] lambda^{q} ({m},{n})", fmt(w_in), rows[w_in])
    report.sort()
    return BialgebraStructure(
        LambdaSeries(mu, top), LambdaSeries(mu_prime, top), r, policy, report, classical
    )
