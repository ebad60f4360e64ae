"""Quandle axioms for a word W(x, y, z1..zn), decided over all groups at once.

(q2) is decided structurally: the equation W(d, a, c) = b is solvable for d
in every group exactly when x occurs in W as a single syllable x^(+-1).
(q1) and (q3) are identities, so they hold in every group iff they hold in the
free group on fresh generators, which is checked by reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .freegroup import Word, concat, invert, power, substitute

Q1, Q2, Q3 = "q1", "q2", "q3"

A, B, D = Word.gen("a"), Word.gen("b"), Word.gen("d")


class Q2Failure(ValueError):
    """W cannot be solved for x in every group, so (q2) fails somewhere."""

    reason = "Q2Failure"


class NoXSyllable(Q2Failure):
    reason = "NoXSyllable"


class MultipleXSyllables(Q2Failure):
    reason = "MultipleXSyllables"


class XExponentNotUnit(Q2Failure):
    reason = "XExponentNotUnit"


@dataclass(frozen=True)
class XDecomposition:
    u: Word
    epsilon: int
    w: Word
    x: str = "x"

    def recompose(self) -> Word:
        return concat(self.u, concat(Word.gen(self.x, self.epsilon), self.w))


@dataclass(frozen=True)
class AxiomVerdict:
    passed: bool
    failed_axiom: Optional[str] = None
    witness: Optional[Tuple[Word, Word]] = None
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.passed


PASS = AxiomVerdict(True)


def parameter_images(params: Sequence[str]) -> dict:
    """Fresh free generators standing in for the parameter values c1..cn."""
    if len(params) == 1:
        return {params[0]: Word.gen("c")}
    return {p: Word.gen(f"c{i}") for i, p in enumerate(params, 1)}


def decompose_x(W: Word, x: str = "x") -> XDecomposition:
    positions = [i for i, (g, _) in enumerate(W.syllables) if g == x]
    if not positions:
        raise NoXSyllable(f"{W} does not contain {x}")
    if len(positions) > 1:
        raise MultipleXSyllables(f"{W} contains {len(positions)} syllables in {x}")
    i = positions[0]
    eps = W.syllables[i][1]
    if eps not in (1, -1):
        raise XExponentNotUnit(f"{x} occurs in {W} with exponent {eps}")
    return XDecomposition(Word(W.syllables[:i]), eps, Word(W.syllables[i + 1:]), x)


def make_operation(W: Word, x: str = "x", y: str = "y", params: Sequence[str] = ("z",)):
    """Return ``op(p, q) = W(p, q, c1..cn)`` acting on free-group words."""
    fixed = parameter_images(params)

    def op(left: Word, right: Word) -> Word:
        return substitute(W, {**fixed, x: left, y: right})

    return op


def check_q1(W: Word, x: str = "x", y: str = "y", params: Sequence[str] = ("z",)) -> AxiomVerdict:
    image = make_operation(W, x, y, params)(A, A)
    if image == A:
        return PASS
    return AxiomVerdict(False, Q1, (image, A))


def q3_sides(W: Word, x: str = "x", y: str = "y", params: Sequence[str] = ("z",)) -> Tuple[Word, Word]:
    """(a*b)*d and (a*d)*(b*d) in the free group on a, b, d and the parameters."""
    op = make_operation(W, x, y, params)
    lhs = op(op(A, B), D)
    rhs = op(op(A, D), op(B, D))
    return lhs, rhs


def check_q3(W: Word, x: str = "x", y: str = "y", params: Sequence[str] = ("z",)) -> AxiomVerdict:
    lhs, rhs = q3_sides(W, x, y, params)
    if lhs == rhs:
        return PASS
    return AxiomVerdict(False, Q3, (lhs, rhs))


def check_q2(W: Word, x: str = "x") -> AxiomVerdict:
    try:
        decompose_x(W, x)
    except Q2Failure as exc:
        return AxiomVerdict(False, Q2, None, exc.reason)
    return PASS


def check_word(W: Word, x: str = "x", y: str = "y", params: Sequence[str] = ("z",)) -> AxiomVerdict:
    """Run (q2), (q1), (q3) in that order and report the first failure."""
    verdict = check_q2(W, x)
    if verdict.passed:
        verdict = check_q1(W, x, y, params)
    if verdict.passed:
        verdict = check_q3(W, x, y, params)
    return verdict


def expected_prefix(d: XDecomposition, y: str = "y") -> Word:
    # (q1) forces u = y * w^-1 * y^-eps.
    return concat(Word.gen(y), concat(invert(d.w), power(Word.gen(y), -d.epsilon)))
