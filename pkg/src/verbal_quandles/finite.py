"""Finite groups as Cayley tables, verbal quandles over them, and the braided
map r(x, y) = (y*x, x) they induce.

Elements are indices ``0..n-1``; ``table[a, b]`` is the product ``a*b``.
Permutations compose left to right: ``(p*q)[i] = q[p[i]]``.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import re
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .freegroup import SubstitutionError, Word

DOCUMENT_VERSION = 1
FULL_ASSOCIATIVITY_LIMIT = 64
MAX_SYMMETRIC_DEGREE = 5
EXHAUSTIVE_Q3_LIMIT = 120


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int
    inverses: np.ndarray
    label: str = "G"
    element_labels: Optional[Tuple[str, ...]] = None

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"

    def mul(self, a, b):
        return self.table[a, b]

    def inv(self, a):
        return self.inverses[a]

    def power(self, a, k: int):
        if k < 0:
            a, k = self.inverses[a], -k
        result = np.full(np.shape(a), self.identity, dtype=self.table.dtype)
        base = np.asarray(a)
        while k:
            if k & 1:
                result = self.table[result, base]
            k >>= 1
            if k:
                base = self.table[base, base]
        return result if np.ndim(a) else int(result)

    def element_label(self, index: int) -> str:
        if self.element_labels is None:
            return str(index)
        return self.element_labels[index]

    def element_index(self, token: str) -> int:
        """Resolve an element given by index, by label, or (for permutation groups) by cycles."""
        token = token.strip()
        if re.fullmatch(r"\d+", token):
            idx = int(token)
            if not 0 <= idx < self.order:
                raise IndexError(f"element index {idx} out of range for {self.label}")
            return idx
        labels = self.element_labels or ()
        if token in labels:
            return labels.index(token)
        if token.startswith("(") and labels:
            canon = format_cycles(parse_cycles(token, _degree_from_labels(self)))
            if canon in labels:
                return labels.index(canon)
        raise ValueError(f"unknown element {token!r} of {self.label}")

    def to_document(self) -> dict:
        doc = {
            "format": "cayley-table",
            "version": DOCUMENT_VERSION,
            "label": self.label,
            "order": self.order,
            "identity": self.identity,
            "table": [int(v) for v in self.table.ravel()],
        }
        if self.element_labels is not None:
            doc["elements"] = list(self.element_labels)
        return doc


def validate_group(
    table: np.ndarray,
    full_check: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[int, np.ndarray]:
    """Check the group axioms on a Cayley table; return (identity, inverses)."""
    table = np.asarray(table)
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] < 1:
        raise GroupTableError("table must be a nonempty square array")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise GroupTableError("table entries must be element indices 0..n-1")
    full = np.arange(n)
    rows_ok = (np.sort(table, axis=1) == full).all()
    cols_ok = (np.sort(table, axis=0) == full[:, None]).all()
    if not (rows_ok and cols_ok):
        raise GroupTableError("table is not a Latin square")

    candidates = [e for e in range(n) if (table[e] == full).all() and (table[:, e] == full).all()]
    if not candidates:
        raise GroupTableError("no identity element")
    e = candidates[0]

    inverses = np.argmax(table == e, axis=1)
    if not ((table[full, inverses] == e).all() and (table[inverses, full] == e).all()):
        raise GroupTableError("missing two-sided inverses")

    if n <= FULL_ASSOCIATIVITY_LIMIT or full_check:
        ab_c = table[table[:, :, None], full[None, None, :]]
        a_bc = table[full[:, None, None], table[None, :, :]]
        bad = np.argwhere(ab_c != a_bc)
    else:
        rng = rng or np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, 10 * n * n))
        bad = np.flatnonzero(table[table[a, b], c] != table[a, table[b, c]])
    if len(bad):
        raise GroupTableError("table is not associative")
    return e, inverses


def group_from_table(
    table,
    label: str = "G",
    element_labels: Optional[Sequence[str]] = None,
    full_check: bool = False,
) -> FiniteGroup:
    table = np.array(table, dtype=np.int64)
    identity, inverses = validate_group(table, full_check)
    if element_labels is not None:
        element_labels = tuple(element_labels)
        if len(element_labels) != table.shape[0]:
            raise GroupTableError("wrong number of element labels")
    return FiniteGroup(table, int(identity), inverses, label, element_labels)


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    a = np.arange(n)
    return group_from_table((a[:, None] + a[None, :]) % n, f"Z{n}")


def make_dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; index i + n*j stands for r^i s^j."""
    if n < 1:
        raise ValueError("dihedral parameter must be >= 1")
    size = 2 * n
    table = np.empty((size, size), dtype=np.int64)
    for p in range(size):
        i, j = p % n, p // n
        for q in range(size):
            k, l = q % n, q // n
            table[p, q] = (i + (-1) ** j * k) % n + n * ((j + l) % 2)
    labels = [_dihedral_label(p % n, p // n) for p in range(size)]
    return group_from_table(table, f"D{n}", labels)


def _dihedral_label(i: int, j: int) -> str:
    rot = "1" if i == 0 else ("r" if i == 1 else f"r^{i}")
    if j == 0:
        return rot
    return "s" if i == 0 else f"{rot}s"


def parse_cycles(text: str, degree: int) -> Tuple[int, ...]:
    """Parse 0-based cycle notation such as ``"(0 1)(2 3)"`` into an image tuple."""
    text = text.strip()
    image = list(range(degree))
    if text in ("", "()", "1", "e"):
        return tuple(image)
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", text):
        raise ValueError(f"bad cycle notation {text!r}")
    perm = tuple(range(degree))
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip())]
        if len(set(pts)) != len(pts) or any(p >= degree for p in pts):
            raise ValueError(f"bad cycle {body!r} for degree {degree}")
        cyc = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a] = b
        # Cycles written left to right act left to right.
        perm = tuple(cyc[perm[i]] for i in range(degree))
    return perm


def format_cycles(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def _degree_from_labels(G: FiniteGroup) -> int:
    degree = 1
    while math.factorial(degree) < G.order:
        degree += 1
    return degree


def make_symmetric(k: int) -> FiniteGroup:
    if k < 1:
        raise ValueError("symmetric degree must be >= 1")
    if k > MAX_SYMMETRIC_DEGREE:
        raise ValueError(f"S{k} exceeds the supported degree {MAX_SYMMETRIC_DEGREE}")
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    arr = np.array(perms)
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(arr):
        table[i] = [index[tuple(q[p])] for q in arr]
    return group_from_table(table, f"S{k}", [format_cycles(p) for p in perms])


def make_quaternion() -> FiniteGroup:
    """Q8 built as a Cayley-table document and loaded back through the document path."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    units = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}
    basic = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def split(name):
        return (-1, name[1:]) if name.startswith("-") else units[name]

    def join(sign, unit):
        return unit if sign == 1 else f"-{unit}"

    table = []
    for p in names:
        sp, up = split(p)
        for q in names:
            sq, uq = split(q)
            sr, ur = basic[(up, uq)]
            table.append(names.index(join(sp * sq * sr, ur)))
    doc = {
        "format": "cayley-table",
        "version": DOCUMENT_VERSION,
        "label": "Q8",
        "order": 8,
        "identity": 0,
        "table": table,
        "elements": names,
    }
    return from_cayley_table(doc)


def from_cayley_table(document: Union[dict, str, os.PathLike], full_check: bool = False) -> FiniteGroup:
    """Load a group from a Cayley-table document (dict, JSON text, or path to a JSON file)."""
    if isinstance(document, (str, os.PathLike)) and not str(document).lstrip().startswith("{"):
        with open(document) as fh:
            document = json.load(fh)
    elif isinstance(document, str):
        document = json.loads(document)
    try:
        version = document.get("version", DOCUMENT_VERSION)
        if version != DOCUMENT_VERSION:
            raise GroupTableError(f"unsupported document version {version!r}")
        n = int(document["order"])
        raw = np.array(document["table"], dtype=np.int64)
        declared_identity = int(document["identity"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise GroupTableError(f"malformed Cayley-table document: {exc}") from None
    if raw.size != n * n:
        raise GroupTableError(f"table has {raw.size} entries, expected {n * n}")
    G = group_from_table(raw.reshape(n, n), document.get("label", "G"), document.get("elements"), full_check)
    if G.identity != declared_identity:
        raise GroupTableError(f"declared identity {declared_identity} is not the identity ({G.identity})")
    return G


def zoo() -> List[FiniteGroup]:
    """Z2..Z7, D3, D4, S3, S4 and Q8."""
    groups = [make_cyclic(n) for n in range(2, 8)]
    groups += [make_dihedral(3), make_dihedral(4), make_symmetric(3), make_symmetric(4), make_quaternion()]
    return groups


def evaluate_word(W: Word, G: FiniteGroup, assignment: Mapping[str, object]):
    """Evaluate W in G; assignment values may be indices or broadcastable index arrays."""
    values = {}
    for g in W.generators():
        if g not in assignment:
            raise SubstitutionError(f"generator {g!r} has no value")
        v = np.asarray(assignment[g])
        if v.size and (v.min() < 0 or v.max() >= G.order):
            raise IndexError(f"value for {g!r} out of range for {G.label}")
        values[g] = v
    shape = np.broadcast_shapes(*(v.shape for v in values.values())) if values else ()
    result = np.full(shape, G.identity, dtype=G.table.dtype)
    for g, e in W.syllables:
        result = G.table[result, G.power(values[g], e)]
    return int(result) if result.ndim == 0 else result


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    op: np.ndarray
    label: str = "Q"

    @property
    def order(self) -> int:
        return self.op.shape[0]

    def to_document(self) -> dict:
        return {
            "format": "quandle-table",
            "version": DOCUMENT_VERSION,
            "label": self.label,
            "order": self.order,
            "op": [int(v) for v in self.op.ravel()],
        }


def _parameter_assignment(c, params: Optional[Sequence[str]]) -> Dict[str, int]:
    if c is None:
        values: List[int] = []
    elif isinstance(c, (int, np.integer)):
        values = [int(c)]
    else:
        values = [int(v) for v in c]
    if params is None:
        # One value binds z; several bind z1..zn.
        params = ("z",) if len(values) == 1 else tuple(f"z{i}" for i in range(1, len(values) + 1))
    if len(params) != len(values):
        raise ValueError(f"{len(values)} parameter values given for parameters {tuple(params)}")
    return dict(zip(params, values))


def build_verbal_quandle(
    G: FiniteGroup,
    W: Word,
    c=None,
    x: str = "x",
    y: str = "y",
    params: Optional[Sequence[str]] = None,
) -> FiniteQuandle:
    """Operation table a*b = W(a, b, c1..cn).  The axioms are not checked here."""
    assignment = _parameter_assignment(c, params)
    idx = np.arange(G.order)
    assignment[x] = idx[:, None]
    assignment[y] = idx[None, :]
    op = evaluate_word(W, G, assignment)
    op = np.broadcast_to(op, (G.order, G.order)).copy()
    return FiniteQuandle(op, f"{G.label}[{W}]")


def build_conj(G: FiniteGroup) -> FiniteQuandle:
    idx = np.arange(G.order)
    a, b = idx[:, None], idx[None, :]
    return FiniteQuandle(G.table[G.table[G.inverses[b], a], b], f"Conj({G.label})")


def build_core(G: FiniteGroup) -> FiniteQuandle:
    idx = np.arange(G.order)
    a, b = idx[:, None], idx[None, :]
    return FiniteQuandle(G.table[G.table[b, G.inverses[a]], b], f"Core({G.label})")


@dataclass(frozen=True)
class QuandleVerdict:
    passed: bool
    failed_axiom: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.passed


def verify_quandle(Q: FiniteQuandle, allow_large: bool = False) -> QuandleVerdict:
    """Exhaustive check of (q1), (q2), (q3) in that order.

    Witnesses are lexicographically first: ``(a,)`` for q1, ``(a1, a2, b)``
    with a1 < a2 and a1*b == a2*b for q2, ``(a, b, d)`` for q3.
    """
    op = Q.op
    n = Q.order
    if n > EXHAUSTIVE_Q3_LIMIT and not allow_large:
        raise ValueError(f"order {n} exceeds {EXHAUSTIVE_Q3_LIMIT}; pass allow_large=True")
    idx = np.arange(n)

    bad = np.flatnonzero(op[idx, idx] != idx)
    if len(bad):
        return QuandleVerdict(False, "q1", (int(bad[0]),))

    if not (np.sort(op, axis=0) == idx[:, None]).all():
        for a1 in range(n):
            hits = np.argwhere(op[a1 + 1:] == op[a1])
            if len(hits):
                a2, b = hits[np.lexsort((hits[:, 1], hits[:, 0]))[0]]
                return QuandleVerdict(False, "q2", (a1, int(a1 + 1 + a2), int(b)))

    a, b, d = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    lhs = op[op[a, b], d]
    rhs = op[op[a, d], op[b, d]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return QuandleVerdict(False, "q3", tuple(int(v) for v in bad[0]))
    return QuandleVerdict(True)


@dataclass(frozen=True, eq=False)
class YbeMap:
    """r(x, y) = (first[x, y], second[x, y]) on pairs of carrier indices."""

    first: np.ndarray
    second: np.ndarray
    label: str = "r"

    @property
    def order(self) -> int:
        return self.first.shape[0]

    def __call__(self, x, y):
        return self.first[x, y], self.second[x, y]

    def to_document(self) -> dict:
        return {
            "format": "ybe-map",
            "version": DOCUMENT_VERSION,
            "label": self.label,
            "order": self.order,
            "r": [[int(p), int(q)] for p, q in zip(self.first.ravel(), self.second.ravel())],
        }


def build_ybe(Q: FiniteQuandle) -> YbeMap:
    """r(x, y) = (y*x, x)."""
    idx = np.arange(Q.order)
    x, y = np.broadcast_arrays(idx[:, None], idx[None, :])
    return YbeMap(Q.op[y, x].copy(), x.copy(), f"r[{Q.label}]")


@dataclass(frozen=True)
class YbeVerdict:
    passed: bool
    failure: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.passed


def verify_ybe(m: YbeMap) -> YbeVerdict:
    n = m.order
    codes = m.first * n + m.second
    counts = np.bincount(codes.ravel(), minlength=n * n)
    if (counts != 1).any():
        # Smallest pair colliding with an earlier pair under r.
        flat = codes.ravel()
        _, first_seen = np.unique(flat, return_index=True)
        dup = np.setdiff1d(np.arange(n * n), first_seen)[0]
        return YbeVerdict(False, "bijectivity", (int(dup // n), int(dup % n)))

    idx = np.arange(n)
    x, y, z = np.broadcast_arrays(idx[:, None, None], idx[None, :, None], idx[None, None, :])

    def r12(t):
        p, q = m(t[0], t[1])
        return p, q, t[2]

    def r23(t):
        p, q = m(t[1], t[2])
        return t[0], p, q

    left = r12(r23(r12((x, y, z))))
    right = r23(r12(r23((x, y, z))))
    diff = np.zeros((n, n, n), dtype=bool)
    for u, v in zip(left, right):
        diff |= u != v
    bad = np.argwhere(diff)
    if len(bad):
        return YbeVerdict(False, "braid", tuple(int(v) for v in bad[0]))
    return YbeVerdict(True)


def random_permutation_images(gens: Sequence[str], degree: int, rng: np.random.Generator) -> Dict[str, np.ndarray]:
    return {g: rng.permutation(degree) for g in gens}


def evaluate_in_permutations(W: Word, images: Mapping[str, np.ndarray]) -> np.ndarray:
    degree = len(next(iter(images.values()))) if images else 0
    result = np.arange(degree)
    for g, e in W.syllables:
        try:
            p = images[g]
        except KeyError:
            raise SubstitutionError(f"generator {g!r} has no value") from None
        if e < 0:
            p, e = np.argsort(p), -e
        for _ in range(e):
            result = p[result]
    return result


@dataclass
class SeparationResult:
    separated: bool
    attempts: int
    transcript: List[dict] = field(default_factory=list)


def separate_by_permutations(
    lhs: Word,
    rhs: Word,
    rng: np.random.Generator,
    max_degree: int = 8,
    attempts: int = 50,
) -> SeparationResult:
    """Look for a random permutation representation in which lhs and rhs differ."""
    gens = sorted(lhs.generators() | rhs.generators())
    result = SeparationResult(False, 0)
    for attempt in range(1, attempts + 1):
        degree = int(rng.integers(2, max_degree + 1))
        images = random_permutation_images(gens, degree, rng)
        differs = not np.array_equal(evaluate_in_permutations(lhs, images), evaluate_in_permutations(rhs, images))
        result.transcript.append({"attempt": attempt, "degree": degree, "separated": differs})
        result.attempts = attempt
        if differs:
            result.separated = True
            break
    return result
