"""Line-based algebra spec files.

Grammar (one statement per line, ``#`` starts a comment)::

    generator <id> <degree>
    bracket <id> ... -> <coef> <id> [<coef> <id> ...]
    rmatrix <order> <coef> <id> ...
    policy <W> <L> <A>

Brackets are the shifted maps ``l_k : S^k(g[1]) -> g[1]``, so an output
generator must have native degree ``sum(inputs) - k + 2``.  Coefficients are
integers or ``p/q`` rationals.  An ``rmatrix`` line adds ``coef * word`` to
the ``lambda^order`` coefficient; its word must have degree 2 in ``S(g[-1])``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bigbracket import IN_SHIFT, PolyMap
from .graded import BasisVec, Elem, GradedBasis, InvalidInputError, accumulate, sort_word
from .linfty import SHAT_SHIFT, LInftyAlg
from .policy import TruncationPolicy
from .transfer import LambdaSeries

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?\Z")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


class SpecError(InvalidInputError):
    kind = "syntax"

    def __init__(self, message: str, line: int | None = None, source: str = "<string>") -> None:
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(f"{where}{self.kind}: {message}")


class UnknownIdError(SpecError):
    kind = "unknown-id"


class DuplicateGeneratorError(SpecError):
    kind = "duplicate-generator"


class CoefficientError(SpecError):
    kind = "non-rational-coefficient"


class DegreeMismatchError(SpecError):
    kind = "degree-mismatch"


@dataclass
class AlgebraSpec:
    alg: LInftyAlg
    rmatrix: LambdaSeries[Elem] | None = None
    policy: TruncationPolicy | None = None

    @property
    def basis(self) -> GradedBasis:
        return self.alg.basis

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        r1 = self.rmatrix.coefficients if self.rmatrix else None
        r2 = other.rmatrix.coefficients if other.rmatrix else None
        return (
            self.basis == other.basis
            and self.alg.brackets == other.alg.brackets
            and r1 == r2
            and self.policy == other.policy
        )


def _coef(tok: str, line: int, source: str) -> Fraction:
    if not _RATIONAL.match(tok):
        raise CoefficientError(f"{tok!r} is not an integer or p/q rational", line, source)
    value = Fraction(tok)
    return value


def _int(tok: str, what: str, line: int, source: str) -> int:
    if not re.match(r"[+-]?\d+\Z", tok):
        raise SpecError(f"{what} must be an integer, got {tok!r}", line, source)
    return int(tok)


def parse_text(text: str, source: str = "<string>") -> AlgebraSpec:
    gens: list[BasisVec] = []
    seen: dict[str, int] = {}
    brackets: list[tuple[int, list[str], list[tuple[Fraction, str]]]] = []
    rlines: list[tuple[int, int, Fraction, list[str]]] = []
    policy: TruncationPolicy | None = None

    def known(i: str, line: int) -> str:
        if i not in seen:
            raise UnknownIdError(f"generator {i!r} is not declared", line, source)
        return i

    for no, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        head, args = toks[0], toks[1:]
        if head == "generator":
            if len(args) != 2:
                raise SpecError("expected: generator <id> <degree>", no, source)
            name, deg = args
            if not _IDENT.match(name):
                raise SpecError(f"bad identifier {name!r}", no, source)
            if name in seen:
                raise DuplicateGeneratorError(
                    f"{name!r} already declared on line {seen[name]}", no, source
                )
            seen[name] = no
            gens.append(BasisVec(name, _int(deg, "degree", no, source)))
        elif head == "bracket":
            if "->" not in args:
                raise SpecError("expected: bracket <ids> -> <coef> <id> ...", no, source)
            cut = args.index("->")
            ins, outs = args[:cut], args[cut + 1 :]
            if not ins or not outs or len(outs) % 2:
                raise SpecError("bracket needs inputs and (coef id) output pairs", no, source)
            ins = [known(i, no) for i in ins]
            pairs = [
                (_coef(outs[j], no, source), known(outs[j + 1], no))
                for j in range(0, len(outs), 2)
            ]
            brackets.append((no, ins, pairs))
        elif head == "rmatrix":
            if len(args) < 3:
                raise SpecError("expected: rmatrix <order> <coef> <id> ...", no, source)
            order = _int(args[0], "lambda order", no, source)
            if order <= 0:
                raise SpecError(
                    "lambda order must be positive (curved input is not supported)", no, source
                )
            coef = _coef(args[1], no, source)
            rlines.append((no, order, coef, [known(i, no) for i in args[2:]]))
        elif head == "policy":
            if len(args) != 3:
                raise SpecError("expected: policy <W> <L> <A>", no, source)
            w, l, a = (_int(t, "cap", no, source) for t in args)
            try:
                policy = TruncationPolicy(w, l, a)
            except ValueError as exc:
                raise SpecError(str(exc), no, source) from None
        else:
            raise SpecError(f"unknown statement {head!r}", no, source)

    basis = GradedBasis(tuple(gens))
    deg = {v.id: v.degree for v in gens}
    table: dict = {}
    for no, ins, pairs in brackets:
        want = sum(deg[i] for i in ins) - len(ins) + 2
        for _, o in pairs:
            if deg[o] != want:
                raise DegreeMismatchError(
                    f"l_{len(ins)}({', '.join(ins)}) must land in degree {want}, "
                    f"but {o!r} has degree {deg[o]}",
                    no,
                    source,
                )
        w_in, sign = sort_word([basis.index(i) for i in ins], basis, IN_SHIFT)
        if not sign:
            raise DegreeMismatchError(
                f"input {' '.join(ins)} repeats an odd generator and vanishes", no, source
            )
        row = table.setdefault(w_in, {})
        for c, o in pairs:
            accumulate(row, (basis.index(o),), sign * c)
    alg = LInftyAlg(basis, PolyMap(basis, 1, table))

    rmatrix = None
    if rlines:
        coeffs: dict[int, Elem] = {}
        for no, order, coef, ids in rlines:
            d = sum(deg[i] + 1 for i in ids)
            if d != 2:
                raise DegreeMismatchError(
                    f"r-matrix word {' '.join(ids)} has degree {d - 1} in S^(g[-1])[1]; "
                    "r-matrices have degree 1",
                    no,
                    source,
                )
            term = Elem.word(basis, SHAT_SHIFT, ids, coef)
            coeffs[order] = coeffs.get(order, Elem.zero(basis, SHAT_SHIFT)) + term
        coeffs = {p: c for p, c in coeffs.items() if c}
        cap = (policy or TruncationPolicy()).max_lambda
        rmatrix = LambdaSeries(coeffs, cap)
    return AlgebraSpec(alg, rmatrix, policy)


def parse_algebra(path: str | Path) -> AlgebraSpec:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read file ({exc.strerror})", None, str(p)) from None
    return parse_text(text, str(p))


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize(spec: AlgebraSpec) -> str:
    """Canonical text: generators in basis order, entries in word order."""
    basis = spec.basis
    ids = basis.ids
    lines = [f"generator {v.id} {v.degree}" for v in basis.vectors]
    key = lambda w: (len(w), w)  # noqa: E731
    table = spec.alg.brackets.table
    for w_in in sorted(table, key=key):
        outs = " ".join(
            f"{_fmt_coef(c)} {ids[w[0]]}" for w, c in sorted(table[w_in].items(), key=lambda t: t[0])
        )
        lines.append(f"bracket {' '.join(ids[i] for i in w_in)} -> {outs}")
    if spec.rmatrix is not None:
        for p in sorted(spec.rmatrix.coefficients):
            c = spec.rmatrix.coefficients[p]
            for w in sorted(c.terms, key=key):
                lines.append(
                    f"rmatrix {p} {_fmt_coef(c.terms[w])} {' '.join(ids[i] for i in w)}"
                )
    if spec.policy is not None:
        pol = spec.policy
        lines.append(f"policy {pol.max_weight} {pol.max_lambda} {pol.max_arity}")
    return "\n".join(lines) + "\n"


FIXTURE_DIR = Path(__file__).with_name("fixtures")


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.alg"))


def fixture_path(name: str) -> Path:
    path = FIXTURE_DIR / f"{name}.alg"
    if not path.is_file():
        raise SpecError(
            f"unknown fixture {name!r} (available: {', '.join(fixture_names())})", None, name
        )
    return path


def load_fixture(name: str) -> AlgebraSpec:
    return parse_algebra(fixture_path(name))
