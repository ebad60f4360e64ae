"""Recognise the six one-parameter verbal quandle families and sweep for them.

Every word satisfying (q1) and (q2) over all groups has the shape

    W = y * w^-1 * y^-eps * x^eps * w,      w over y and the parameters,

so the search runs over tails ``w`` and signs ``eps`` instead of raw words.
The families, with ``u = z^s`` in single-parameter mode and ``u`` any
nonempty word in the parameters in n-parameter mode:

    1  y x^-1 y
    2  y^-s x y^s
    3  y u^-1 y^-1 x u
    4  y u^-1 x y^-1 u
    5  u^-1 y^-1 x u y
    6  u^-1 x y^-1 u y
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from .axioms import AxiomVerdict, Q2Failure, check_word, decompose_x, expected_prefix
from .freegroup import Word, concat, format_tex, format_word, invert, parse, power

SINGLE = "single"
NPARAM = "n-parameter"
MODES = (SINGLE, NPARAM)

REPORT_VERSION = 1
DEFAULT_BUDGET = 200_000

TEMPLATES = {
    1: "y x^{-1} y",
    2: "y^{-s} x y^{s}",
    3: "y z^{-s} y^{-1} x z^{s}",
    4: "y z^{-s} x y^{-1} z^{s}",
    5: "z^{-s} y^{-1} x z^{s} y",
    6: "z^{-s} x y^{-1} z^{s} y",
}

NPARAM_TEMPLATES = {
    1: "y x^{-1} y",
    2: "y^{-s} x y^{s}",
    3: "y u^{-1} y^{-1} x u",
    4: "y u^{-1} x y^{-1} u",
    5: "u^{-1} y^{-1} x u y",
    6: "u^{-1} x y^{-1} u y",
}

# Whether the tail w of families 3-6 starts with y^-1 / ends with y.
_FAMILY_BY_ENDS = {(False, False): 3, (True, False): 4, (False, True): 5, (True, True): 6}
_ENDS_BY_FAMILY = {v: k for k, v in _FAMILY_BY_ENDS.items()}


class EnumerationBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FamilyTag:
    family: int
    s: Optional[int] = None
    u: Optional[Word] = None

    def __post_init__(self):
        if self.family not in range(1, 7):
            raise ValueError(f"family must be 1..6, got {self.family}")
        if self.family == 1 and (self.s is not None or self.u is not None):
            raise ValueError("family 1 has no parameters")
        if self.family == 2 and (self.s is None or self.u is not None):
            raise ValueError("family 2 carries s only")
        if self.family >= 3 and (self.s is None) == (self.u is None):
            raise ValueError("families 3-6 carry exactly one of s, u")

    def describe(self) -> str:
        if self.family == 1:
            return f"family 1: W = {TEMPLATES[1]}"
        if self.u is not None:
            return f"family {self.family}: W = {NPARAM_TEMPLATES[self.family]}, u = {format_tex(self.u)}"
        return f"family {self.family}: W = {TEMPLATES[self.family]}, s = {self.s}"

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "s": self.s,
            "u": None if self.u is None else format_word(self.u),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FamilyTag":
        u = data.get("u")
        return cls(data["family"], data.get("s"), None if u is None else parse(u))


def canonical_word(w_tail: Word, epsilon: int, x: str = "x", y: str = "y") -> Word:
    """y * w^-1 * y^-eps * x^eps * w, reduced."""
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if x in w_tail.generators():
        raise ValueError(f"tail {w_tail} must not contain {x}")
    yw = Word.gen(y)
    return concat(
        concat(yw, invert(w_tail)),
        concat(power(yw, -epsilon), concat(Word.gen(x, epsilon), w_tail)),
    )


def family_word(
    family: int, s: int = 1, u: Optional[Word] = None, x: str = "x", y: str = "y", z: str = "z"
) -> Word:
    """Template word of a family; ``u`` overrides ``z^s`` for families 3-6."""
    if family == 1:
        return canonical_word(Word.gen(y), -1, x, y)
    if family == 2:
        return canonical_word(power(Word.gen(y), s), 1, x, y)
    core = Word.gen(z, s) if u is None else u
    lead, trail = _ENDS_BY_FAMILY[family]
    tail = core
    if lead:
        tail = concat(Word.gen(y, -1), tail)
    if trail:
        tail = concat(tail, Word.gen(y))
    return canonical_word(tail, 1, x, y)


def classify(
    W: Word,
    mode: str = SINGLE,
    x: str = "x",
    y: str = "y",
    params: Optional[Sequence[str]] = None,
) -> Optional[FamilyTag]:
    """Match W against the six templates; ``None`` means Unclassified.

    On template overlap (s = 0) the lowest family number wins, which falls out
    of the tail decomposition: a tail without parameter syllables is family 2.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if params is None:
        params = ("z",) if mode == SINGLE else tuple(sorted(W.generators() - {x, y}))
    try:
        d = decompose_x(W, x)
    except Q2Failure:
        return None
    if d.u != expected_prefix(d, y):
        return None
    w = d.w
    if d.epsilon == -1:
        return FamilyTag(1) if w == Word.gen(y) else None

    sylls = list(w.syllables)
    if all(g == y for g, _ in sylls):
        return FamilyTag(2, s=sylls[0][1] if sylls else 0)
    lead = bool(sylls) and sylls[0] == (y, -1)
    if lead:
        sylls = sylls[1:]
    trail = bool(sylls) and sylls[-1] == (y, 1)
    if trail:
        sylls = sylls[:-1]
    if not sylls or any(g not in params for g, _ in sylls):
        return None
    family = _FAMILY_BY_ENDS[(lead, trail)]
    if mode == SINGLE:
        if len(params) != 1 or len(sylls) != 1:
            return None
        return FamilyTag(family, s=sylls[0][1])
    return FamilyTag(family, u=Word(tuple(sylls)))


def translated_word(s: int, t: int, x: str = "x", y: str = "y", z: str = "z") -> Word:
    """(y z^s)^-t x z^s (y z^s)^t z^-s: the word y^-t x y^t transported along a -> a z^s."""
    v = power(concat(Word.gen(y), Word.gen(z, s)), t)
    return concat(concat(invert(v), Word.gen(x)), concat(Word.gen(z, s), concat(v, Word.gen(z, -s))))


def translated_conjugation_parameters(W: Word, x: str = "x", y: str = "y", z: str = "z") -> Optional[Tuple[int, int]]:
    """Return (s, t) if W equals ``translated_word(s, t)`` with s != 0, else None.

    Transporting a quandle along a bijection gives a quandle, so every such
    word passes the axioms; |t| >= 2 lands outside the six families.
    """
    s_values = {abs(e) for g, e in W.syllables if g == z}
    n_y = sum(1 for g, _ in W.syllables if g == y)
    for s in sorted(s_values):
        for sign in (1, -1):
            for t in range(-n_y - 1, n_y + 2):
                if translated_word(sign * s, t, x, y, z) == W:
                    return sign * s, t
    return None


@dataclass
class EnumerationReport:
    max_tail_syllables: int
    max_exp: int
    n_params: int
    mode: str
    candidates_checked: int = 0
    passing: List[Tuple[Word, Optional[FamilyTag]]] = field(default_factory=list)
    failing_samples: List[Tuple[Word, AxiomVerdict]] = field(default_factory=list)

    @property
    def unclassified(self) -> List[Word]:
        return [W for W, tag in self.passing if tag is None]

    def families_found(self) -> List[int]:
        return sorted({tag.family for _, tag in self.passing if tag is not None})

    def family_parameters(self, family: int) -> List[int]:
        return sorted({tag.s for _, tag in self.passing if tag is not None and tag.family == family and tag.s is not None})

    def to_dict(self) -> dict:
        return {
            "format": "verbal-quandle-enumeration",
            "version": REPORT_VERSION,
            "bounds": {
                "max_tail_syllables": self.max_tail_syllables,
                "max_exp": self.max_exp,
                "n_params": self.n_params,
                "mode": self.mode,
            },
            "candidates_checked": self.candidates_checked,
            "families_found": self.families_found(),
            "unclassified_count": len(self.unclassified),
            "passing": [
                {"word": format_word(W), "classification": None if tag is None else tag.to_dict()}
                for W, tag in self.passing
            ],
            "failing_samples": [
                {
                    "word": format_word(W),
                    "failed_axiom": v.failed_axiom,
                    "reason": v.reason,
                    "witness": None if v.witness is None else [format_word(v.witness[0]), format_word(v.witness[1])],
                }
                for W, v in self.failing_samples
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EnumerationReport":
        if data.get("version") != REPORT_VERSION:
            raise ValueError(f"unsupported report version {data.get('version')!r}")
        b = data["bounds"]
        report = cls(b["max_tail_syllables"], b["max_exp"], b["n_params"], b["mode"], data["candidates_checked"])
        for entry in data["passing"]:
            cl = entry["classification"]
            report.passing.append((parse(entry["word"]), None if cl is None else FamilyTag.from_dict(cl)))
        for entry in data["failing_samples"]:
            wit = entry["witness"]
            verdict = AxiomVerdict(
                False,
                entry["failed_axiom"],
                None if wit is None else (parse(wit[0]), parse(wit[1])),
                entry["reason"],
            )
            report.failing_samples.append((parse(entry["word"]), verdict))
        return report


def parameter_names(mode: str, n_params: int = 1) -> Tuple[str, ...]:
    if mode == SINGLE:
        return ("z",)
    return tuple(f"z{i}" for i in range(1, n_params + 1))


def count_tails(max_tail_syllables: int, max_exp: int, n_gens: int) -> int:
    choices = 2 * max_exp
    return 1 + sum(n_gens * (n_gens - 1) ** (k - 1) * choices ** k for k in range(1, max_tail_syllables + 1))


def iter_tails(max_tail_syllables: int, max_exp: int, gens: Sequence[str]) -> Iterator[Word]:
    """Reduced tails by (syllable count, then syllable-wise (generator, exponent) order)."""
    exps = [e for e in range(-max_exp, max_exp + 1) if e]
    choices = [(g, e) for g in gens for e in exps]
    for k in range(max_tail_syllables + 1):
        for sylls in itertools.product(choices, repeat=k):
            if any(sylls[i][0] == sylls[i + 1][0] for i in range(k - 1)):
                continue
            yield Word(sylls)


def _check_candidate(args):
    W, params = args
    return check_word(W, "x", "y", params)


def enumerate_words(
    max_tail_syllables: int = 3,
    max_exp: int = 2,
    mode: str = SINGLE,
    n_params: int = 1,
    max_candidates: int = DEFAULT_BUDGET,
    keep_failures: int = 20,
    workers: int = 1,
) -> EnumerationReport:
    if max_tail_syllables < 0 or max_exp < 1 or n_params < 1:
        raise ValueError("need max_tail_syllables >= 0, max_exp >= 1, n_params >= 1")
    if mode == SINGLE and n_params != 1:
        raise ValueError("single-parameter mode has exactly one parameter")
    params = parameter_names(mode, n_params)
    gens = ("y",) + params
    total = 2 * count_tails(max_tail_syllables, max_exp, len(gens))
    if total > max_candidates:
        raise EnumerationBudgetExceeded(f"{total} candidates exceed the budget of {max_candidates}")

    candidates = [
        canonical_word(tail, eps)
        for tail in iter_tails(max_tail_syllables, max_exp, gens)
        for eps in (1, -1)
    ]
    jobs = [(W, params) for W in candidates]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(_check_candidate, jobs, chunksize=64))
    else:
        verdicts = [_check_candidate(job) for job in jobs]

    report = EnumerationReport(max_tail_syllables, max_exp, n_params, mode, len(candidates))
    seen = set()
    for W, verdict in zip(candidates, verdicts):
        if verdict.passed:
            if W not in seen:
                seen.add(W)
                report.passing.append((W, classify(W, mode, params=params)))
        elif len(report.failing_samples) < keep_failures:
            report.failing_samples.append((W, verdict))
    return report
