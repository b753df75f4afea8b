"""Exact graded linear algebra: bases, shifts, Koszul signs, shuffles and
sparse elements of graded symmetric algebras.

Degrees follow the translation rule ``V[s]^p = V^{s+p}``: a basis vector of
native degree ``d`` sits in degree ``d - s`` of ``V[s]``.  Words in ``S(V[s])``
are stored as sorted tuples of basis positions; the canonical order is
(shifted degree, basis position), which does not depend on ``s``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
Word = tuple  # tuple[int, ...] of basis positions


class InvalidInputError(ValueError):
    """Raised when an operation receives structurally incompatible input."""


@dataclass(frozen=True)
class BasisVec:
    id: str
    degree: int


@dataclass(frozen=True, eq=False)
class GradedBasis:
    """A finite, ordered homogeneous basis of a graded vector space."""

    vectors: tuple[BasisVec, ...]
    _index: dict = field(init=False, repr=False, compare=False)
    _rank: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        vectors = tuple(
            v if isinstance(v, BasisVec) else BasisVec(str(v[0]), int(v[1]))
            for v in self.vectors
        )
        object.__setattr__(self, "vectors", vectors)
        index: dict[str, int] = {}
        for pos, v in enumerate(vectors):
            if v.id in index:
                raise InvalidInputError(f"duplicate basis id {v.id!r}")
            index[v.id] = pos
        order = sorted(range(len(vectors)), key=lambda i: (vectors[i].degree, i))
        rank = [0] * len(vectors)
        for r, i in enumerate(order):
            rank[i] = r
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_rank", tuple(rank))

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> "GradedBasis":
        return cls(tuple(BasisVec(i, d) for i, d in pairs))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, GradedBasis):
            return NotImplemented
        return self.vectors == other.vectors

    def __hash__(self) -> int:
        return hash(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def ids(self) -> list[str]:
        return [v.id for v in self.vectors]

    def index(self, vid: str) -> int:
        try:
            return self._index[vid]
        except KeyError:
            raise InvalidInputError(f"unknown basis id {vid!r}") from None

    def degree(self, i: int, shift: int = 0) -> int:
        return self.vectors[i].degree - shift

    def parity(self, i: int, shift: int = 0) -> int:
        return (self.vectors[i].degree - shift) & 1

    def rank(self, i: int) -> int:
        return self._rank[i]

    def word_degree(self, word: Iterable[int], shift: int) -> int:
        return sum(self.vectors[i].degree - shift for i in word)

    def word_parity(self, word: Iterable[int], shift: int) -> int:
        return self.word_degree(word, shift) & 1

    def words(self, weight: int, shift: int) -> list[Word]:
        """All canonical words of the given weight in ``S(V[shift])``."""
        order = sorted(range(self.dim), key=self.rank)
        out = []
        for combo in itertools.combinations_with_replacement(order, weight):
            if any(
                combo[j] == combo[j + 1] and self.parity(combo[j], shift)
                for j in range(len(combo) - 1)
            ):
                continue
            out.append(tuple(combo))
        return out

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        return "*".join(self.vectors[i].id for i in word)


# ---------------------------------------------------------------- signs ----


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of reordering graded items ``z_0..z_{n-1}`` into ``z_perm[0], ...``.

    ``degrees[i]`` is the degree of ``z_i`` (pre-permutation order).  Every
    pair whose relative order is reversed contributes ``(-1)^{d_i d_j}``.
    """
    n = len(perm)
    if n != len(degrees):
        raise InvalidInputError("permutation and degree list differ in length")
    if sorted(perm) != list(range(n)):
        raise InvalidInputError(f"{list(perm)} is not a permutation of 0..{n - 1}")
    odd = 0
    for a in range(n):
        pa = perm[a]
        if not degrees[pa] & 1:
            continue
        for b in range(a + 1, n):
            pb = perm[b]
            if pa > pb and degrees[pb] & 1:
                odd ^= 1
    return -1 if odd else 1


def _perm_sign_parities(seq_parities: Sequence[int], perm: Sequence[int]) -> int:
    # unchecked variant used in the hot loops
    odd = 0
    for a in range(len(perm)):
        pa = perm[a]
        if not seq_parities[pa]:
            continue
        for b in range(a + 1, len(perm)):
            pb = perm[b]
            if pa > pb and seq_parities[pb]:
                odd ^= 1
    return -1 if odd else 1


def shuffles(k: int, l: int) -> list[tuple[int, ...]]:
    """All (k, l)-shuffles as sequences of 0-based positions.

    A shuffle lists first the ``k`` positions of the left block, then the
    ``l`` positions of the right block, each block increasing.
    """
    if k < 0 or l < 0:
        raise InvalidInputError("shuffle block sizes must be non-negative")
    n = k + l
    out = []
    for first in itertools.combinations(range(n), k):
        chosen = set(first)
        out.append(first + tuple(i for i in range(n) if i not in chosen))
    return out


def shuffle_sign(parities: Sequence[int], first: Sequence[int]) -> int:
    """Koszul sign of the shuffle that moves positions ``first`` to the front."""
    odd = 0
    chosen = set(first)
    # each chosen odd item passes the unchosen odd items sitting before it
    passed = 0
    for i, p in enumerate(parities):
        if i in chosen:
            if p:
                odd ^= passed & 1
        elif p:
            passed += 1
    return -1 if odd else 1


def sort_word(word: Sequence[int], basis: GradedBasis, shift: int) -> tuple[Word, int]:
    """Sort basis positions canonically; sign 0 means the word vanishes."""
    items = list(word)
    sign = 1
    rank = basis._rank
    # insertion sort keeps track of adjacent transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and rank[items[j - 1]] > rank[items[j]]:
            if basis.parity(items[j - 1], shift) and basis.parity(items[j], shift):
                sign = -sign
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    for j in range(len(items) - 1):
        if items[j] == items[j + 1] and basis.parity(items[j], shift):
            return tuple(items), 0
    return tuple(items), sign


# ---------------------------------------------------------------- words ----


@dataclass(frozen=True)
class SymWord:
    """A canonically ordered monomial of ``S(V[shift])``."""

    basis: GradedBasis = field(repr=False)
    shift: int
    factors: Word

    @property
    def weight(self) -> int:
        return len(self.factors)

    @property
    def degree(self) -> int:
        return self.basis.word_degree(self.factors, self.shift)

    def __str__(self) -> str:
        return self.basis.format_word(self.factors)


def normalize_word(
    factors: Sequence[BasisVec | str | int], basis: GradedBasis, shift: int
) -> tuple[SymWord, int] | None:
    """Canonical form of a product of basis vectors, or ``None`` if it is zero.

    Returns ``(word, sign)`` where ``sign`` is the Koszul sign of the sorting
    permutation computed on shifted degrees.
    """
    positions = [_position(f, basis) for f in factors]
    word, sign = sort_word(positions, basis, shift)
    if sign == 0:
        return None
    return SymWord(basis, shift, word), sign


def _position(f: BasisVec | str | int, basis: GradedBasis) -> int:
    if isinstance(f, BasisVec):
        pos = basis.index(f.id)
        if basis.vectors[pos] != f:
            raise InvalidInputError(f"{f} does not belong to this basis")
        return pos
    if isinstance(f, str):
        return basis.index(f)
    if not 0 <= f < basis.dim:
        raise InvalidInputError(f"basis position {f} out of range")
    return f


# ------------------------------------------------------------- elements ----


class Elem:
    """Sparse rational linear combination of words of ``S(V[shift])``.

    ``terms`` maps canonical factor tuples to nonzero ``Fraction``s.  Instances
    are treated as immutable.
    """

    __slots__ = ("basis", "shift", "terms")

    def __init__(
        self,
        basis: GradedBasis,
        shift: int,
        terms: Mapping[Word, Scalar] | None = None,
    ) -> None:
        self.basis = basis
        self.shift = shift
        clean: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[tuple(w)] = Fraction(c)
        self.terms = clean

    # construction helpers
    @classmethod
    def zero(cls, basis: GradedBasis, shift: int) -> "Elem":
        return cls(basis, shift)

    @classmethod
    def one(cls, basis: GradedBasis, shift: int) -> "Elem":
        return cls(basis, shift, {(): 1})

    @classmethod
    def word(
        cls,
        basis: GradedBasis,
        shift: int,
        factors: Sequence[str | int | BasisVec],
        coeff: Scalar = 1,
    ) -> "Elem":
        """The product of ``factors`` (in the given order) times ``coeff``."""
        normal = normalize_word(factors, basis, shift)
        if normal is None:
            return cls(basis, shift)
        w, sign = normal
        return cls(basis, shift, {w.factors: sign * Fraction(coeff)})

    @classmethod
    def _raw(cls, basis: GradedBasis, shift: int, terms: dict) -> "Elem":
        e = cls.__new__(cls)
        e.basis = basis
        e.shift = shift
        e.terms = terms
        return e

    # inspection
    def __iter__(self) -> Iterator[tuple[SymWord, Fraction]]:
        for w in sorted(self.terms, key=self._sort_key):
            yield SymWord(self.basis, self.shift, w), self.terms[w]

    def _sort_key(self, w: Word) -> tuple:
        return (len(w), tuple(self.basis.rank(i) for i in w))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degrees(self) -> set[int]:
        return {self.basis.word_degree(w, self.shift) for w in self.terms}

    def weights(self) -> set[int]:
        return {len(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise InvalidInputError(f"element is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def weight_part(self, weight: int) -> "Elem":
        return Elem._raw(
            self.basis, self.shift, {w: c for w, c in self.terms.items() if len(w) == weight}
        )

    def truncate(self, max_weight: int) -> "Elem":
        return Elem._raw(
            self.basis, self.shift, {w: c for w, c in self.terms.items() if len(w) <= max_weight}
        )

    # arithmetic
    def _check(self, other: "Elem") -> None:
        if other.shift != self.shift:
            raise InvalidInputError(f"shift mismatch: {self.shift} vs {other.shift}")
        if other.basis != self.basis:
            raise InvalidInputError("elements live over different bases")

    def __add__(self, other: "Elem") -> "Elem":
        return elem_add(self, other)

    def __sub__(self, other: "Elem") -> "Elem":
        return elem_add(self, elem_scale(other, -1))

    def __neg__(self) -> "Elem":
        return elem_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, Elem):
            return sym_product(self, other)
        if isinstance(other, (int, Fraction)):
            return elem_scale(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return elem_scale(self, other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Elem):
            return NotImplemented
        return (
            self.shift == other.shift and self.basis == other.basis and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Elem(shift={self.shift}, {self})"

    def __str__(self) -> str:
        return format_terms(self.basis, self.terms, self._sort_key)


def format_terms(basis: GradedBasis, terms: Mapping[Word, Fraction], key=None) -> str:
    if not terms:
        return "0"
    parts = []
    for w in sorted(terms, key=key or (lambda w: (len(w), w))):
        c = terms[w]
        parts.append(f"{c}*{basis.format_word(w)}" if c != 1 else basis.format_word(w))
    return " + ".join(parts).replace("+ -", "- ")


def accumulate(acc: dict, word: Word, coeff: Fraction) -> None:
    """Add ``coeff`` at ``word`` in a term dict, dropping cancelled entries."""
    c = acc.get(word, 0) + coeff
    if c:
        acc[word] = c
    else:
        acc.pop(word, None)


def elem_add(a: Elem, b: Elem) -> Elem:
    a._check(b)
    out = dict(a.terms)
    for w, c in b.terms.items():
        accumulate(out, w, c)
    return Elem._raw(a.basis, a.shift, out)


def elem_scale(a: Elem, c: Scalar) -> Elem:
    c = Fraction(c)
    if not c:
        return Elem._raw(a.basis, a.shift, {})
    return Elem._raw(a.basis, a.shift, {w: c * v for w, v in a.terms.items()})


def multiply_words(u: Word, v: Word, basis: GradedBasis, shift: int) -> tuple[Word, int]:
    """Product of two canonical words with its Koszul sign (0 if it vanishes)."""
    if not u:
        return v, 1
    if not v:
        return u, 1
    return sort_word(u + v, basis, shift)


def sym_product(a: Elem, b: Elem) -> Elem:
    """The graded commutative product in ``S(V[shift])``."""
    a._check(b)
    out: dict[Word, Fraction] = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            w, sign = multiply_words(u, v, a.basis, a.shift)
            if sign:
                accumulate(out, w, sign * cu * cv)
    return Elem._raw(a.basis, a.shift, out)


def reshift(a: Elem, new_shift: int) -> Elem:
    """Reinterpret ``a`` in ``S(V[new_shift])`` with sign +1 on basis words.

    A word containing a repeated factor that is odd under the new shift has no
    counterpart there and is dropped; for shifts of equal parity this never
    happens and the map is invertible.
    """
    out = {}
    for w, c in a.terms.items():
        if any(w[j] == w[j + 1] and a.basis.parity(w[j], new_shift) for j in range(len(w) - 1)):
            continue
        out[w] = c
    return Elem._raw(a.basis, new_shift, out)
