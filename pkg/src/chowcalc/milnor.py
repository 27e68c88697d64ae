"""F_2 algebras carrying an action of exterior differentials Q_i.

Two families of rings are modelled:

* symbol rings ``make_ring(m, ia)``: generators r_0..r_{m-1} over a finite
  graded coefficient algebra, with r_i^2 = r_{i+1} * rho for i <= m-2 and
  the top generator eta := r_{m-1} polynomial (free powers); rho is a
  distinguished degree-1 element of the coefficient algebra (possibly 0);
* ``flexible_cohomology(n)``: the exterior algebra on r_0..r_n over F_2
  (rho = 0, every square vanishes).

Elements are F_2-combinations of basis words eta^k * r_I * s with I a set
of square-free indices and s a coefficient-algebra basis element.  Every
word carries a bidegree (a)[b]: r_i sits in (-d_i)[-2d_i - 1] with
d_i = 2^i - 1, and a coefficient element of weight t sits in (t)[t].

The differentials act by Q_i(r_j) = delta_ij, extended as derivations on
words; on products of elements the composite operations satisfy the
comultiplication rule with rho-correction terms, which ``comult_check``
verifies by exhaustive enumeration of the carry decompositions.

The periodic quotient module attaches words with negative eta exponents;
the ring acts with products landing back in the ring part quotiented away.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Sequence


class MilnorError(Exception):
    pass


@dataclass(frozen=True)
class BiDegree:
    """Weight and homological shift, written (a)[b]; adds under products."""

    a: int
    b: int

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.a + other.a, self.b + other.b)

    def __str__(self) -> str:
        return f"({self.a})[{self.b}]"


@dataclass(frozen=True)
class IaAlgebra:
    """Finite graded F_2-algebra: basis labels, weights, unit, an optional
    distinguished weight-1 element rho, and a commutative multiplication
    table (missing entries are zero)."""

    labels: tuple[str, ...]
    weights: tuple[int, ...]
    unit: int
    rho: Optional[int]
    table: tuple[tuple[FrozenSet[int], ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.weights) != n or len(self.table) != n:
            raise MilnorError("inconsistent coefficient-algebra data")
        if self.weights[self.unit] != 0:
            raise MilnorError("unit must have weight 0")
        if self.rho is not None and self.weights[self.rho] != 1:
            raise MilnorError("rho must have weight 1")
        for i in range(n):
            for j in range(n):
                if self.table[i][j] != self.table[j][i]:
                    raise MilnorError("multiplication table is not commutative")
                for k in self.table[i][j]:
                    if self.weights[k] != self.weights[i] + self.weights[j]:
                        raise MilnorError("weights do not add under multiplication")
                if j == self.unit and self.table[i][j] != frozenset({i}):
                    raise MilnorError("unit does not act as identity")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = self._mul_set(self.table[i][j], k)
                    right = self._mul_set(self.table[j][k], i)
                    if left != right:
                        raise MilnorError("multiplication table is not associative")

    def _mul_set(self, s: FrozenSet[int], j: int) -> FrozenSet[int]:
        out: set[int] = set()
        for i in s:
            out ^= self.table[i][j]
        return frozenset(out)

    def mul(self, i: int, j: int) -> FrozenSet[int]:
        return self.table[i][j]


def trivial_ia() -> IaAlgebra:
    """Ia = F_2 in weight 0, rho = 0."""
    return IaAlgebra(("1",), (0,), 0, None, ((frozenset({0}),),))


def truncated_symbol_ia(height: int) -> IaAlgebra:
    """F_2[rho]/(rho^height): the smallest coefficient algebras with a
    nonzero rho, used as truncations in tests.  height=1 gives rho = 0."""
    if height < 1:
        raise MilnorError("height must be >= 1")
    if height == 1:
        return trivial_ia()
    labels = tuple("1" if k == 0 else f"rho^{k}" if k > 1 else "rho" for k in range(height))
    weights = tuple(range(height))
    table = tuple(
        tuple(
            frozenset({i + j}) if i + j < height else frozenset()
            for j in range(height)
        )
        for i in range(height)
    )
    return IaAlgebra(labels, weights, 0, 1, table)


@dataclass(frozen=True)
class Word:
    """Basis word eta^k * r_I * s."""

    k: int
    I: FrozenSet[int]
    s: int


class MilnorRing:
    """See the module docstring.  ``n_sq`` counts the square-free generators
    r_0..r_{n_sq-1}; when ``has_eta`` the generator r_{n_sq} is polynomial."""

    def __init__(self, n_sq: int, has_eta: bool, ia: IaAlgebra, name: str = ""):
        if n_sq < 1:
            raise MilnorError("need at least one square-free generator")
        if not has_eta and ia.rho is not None:
            raise MilnorError("without a top polynomial generator rho must be 0")
        self.n_sq = n_sq
        self.has_eta = has_eta
        self.ia = ia
        self.name = name or ("flexible" if not has_eta else f"symbol-ring(m={n_sq+1})")

    # generators r_0 .. r_{top_index}
    @property
    def top_index(self) -> int:
        return self.n_sq if self.has_eta else self.n_sq - 1

    @property
    def q_indices(self) -> range:
        return range(self.top_index + 1)

    # -- elements -----------------------------------------------------

    def element(self, words: Iterable[Word]) -> "MilnorElement":
        acc: set[Word] = set()
        for w in words:
            acc ^= {w}
        return MilnorElement(self, frozenset(acc))

    def zero(self) -> "MilnorElement":
        return MilnorElement(self, frozenset())

    def one(self) -> "MilnorElement":
        return MilnorElement(self, frozenset({Word(0, frozenset(), self.ia.unit)}))

    def r(self, i: int) -> "MilnorElement":
        if not (0 <= i <= self.top_index):
            raise MilnorError(f"generator index {i} out of range")
        if self.has_eta and i == self.n_sq:
            return self.eta()
        return MilnorElement(self, frozenset({Word(0, frozenset({i}), self.ia.unit)}))

    def eta(self) -> "MilnorElement":
        if not self.has_eta:
            raise MilnorError("this ring has no polynomial top generator")
        return MilnorElement(self, frozenset({Word(1, frozenset(), self.ia.unit)}))

    def r_set(self, I: Iterable[int]) -> "MilnorElement":
        acc = self.one()
        for i in sorted(I):
            acc = acc * self.r(i)
        return acc

    def ia_elem(self, idx: int) -> "MilnorElement":
        return MilnorElement(self, frozenset({Word(0, frozenset(), idx)}))

    def rho_elem(self) -> "MilnorElement":
        if self.ia.rho is None:
            return self.zero()
        return self.ia_elem(self.ia.rho)

    # -- word algebra ----------------------------------------------------

    def word_bidegree(self, w: Word) -> BiDegree:
        a = 0
        b = 0
        for i in w.I:
            d = 2**i - 1
            a += -d
            b += -2 * d - 1
        if w.k:
            d = 2**self.n_sq - 1
            a += w.k * (-d)
            b += w.k * (-2 * d - 1)
        t = self.ia.weights[w.s]
        return BiDegree(a + t, b + t)

    def _mul_words(self, w1: Word, w2: Word) -> frozenset[Word]:
        k = w1.k + w2.k
        I = set(w1.I ^ w2.I)
        carries = sorted(w1.I & w2.I)
        rho_pow = 0
        while carries:
            c = carries.pop(0)
            target = c + 1
            rho_pow += 1
            if self.has_eta and target == self.n_sq:
                k += 1
            elif target >= self.n_sq and not self.has_eta:
                # square beyond the exterior range: rho = 0 kills it anyway
                pass
            elif target in I:
                I.discard(target)
                carries = sorted(set(carries) | {target})
            else:
                I.add(target)
        if rho_pow and self.ia.rho is None:
            return frozenset()
        s_set = self.ia.mul(w1.s, w2.s)
        for _ in range(rho_pow):
            acc: set[int] = set()
            for s in s_set:
                acc ^= self.ia.mul(s, self.ia.rho)
            s_set = frozenset(acc)
        return frozenset(Word(k, frozenset(I), s) for s in s_set)

    # -- enumeration --------------------------------------------------------

    def basis_words(self, k_max: int = 0, k_min: int = 0) -> list[Word]:
        out = []
        idxs = range(self.n_sq)
        for k in range(k_min, k_max + 1):
            if k and not self.has_eta:
                continue
            for rlen in range(self.n_sq + 1):
                for I in itertools.combinations(idxs, rlen):
                    for s in range(len(self.ia.labels)):
                        out.append(Word(k, frozenset(I), s))
        return out

    def to_json(self, k_max: int = 2) -> dict:
        words = self.basis_words(k_max=k_max)
        def wname(w: Word) -> str:
            parts = []
            if w.k:
                parts.append(f"eta^{w.k}" if w.k != 1 else "eta")
            if w.I:
                parts.append("r{" + ",".join(str(i) for i in sorted(w.I)) + "}")
            label = self.ia.labels[w.s]
            if label != "1" or not parts:
                parts.append(label)
            return "*".join(parts)
        doc = {
            "ring": self.name,
            "square_free_generators": self.n_sq,
            "polynomial_top": self.has_eta,
            "coefficients": {
                "labels": list(self.ia.labels),
                "weights": list(self.ia.weights),
                "rho": None if self.ia.rho is None else self.ia.labels[self.ia.rho],
            },
            "basis": [
                {"word": wname(w), "bidegree": str(self.word_bidegree(w))}
                for w in words
            ],
            "q_action": {
                str(i): {
                    wname(w): [wname(v) for v in sorted(
                        q_apply(i, self.element([w])).words,
                        key=lambda v: (v.k, sorted(v.I), v.s),
                    )]
                    for w in words
                    if not q_apply(i, self.element([w])).is_zero()
                }
                for i in self.q_indices
            },
        }
        return doc

    def dump_json(self, k_max: int = 2) -> str:
        return json.dumps(self.to_json(k_max=k_max), sort_keys=True)

    def __repr__(self):
        return f"<MilnorRing {self.name}>"


class MilnorElement:
    """F_2-combination of basis words, all of one bidegree."""

    __slots__ = ("ring", "words")

    def __init__(self, ring: MilnorRing, words: frozenset[Word]):
        self.ring = ring
        self.words = words
        degs = {ring.word_bidegree(w) for w in words}
        if len(degs) > 1:
            raise MilnorError(f"words of mixed bidegree: {sorted(str(d) for d in degs)}")

    def is_zero(self) -> bool:
        return not self.words

    @property
    def bidegree(self) -> Optional[BiDegree]:
        for w in self.words:
            return self.ring.word_bidegree(w)
        return None

    def _check(self, other: "MilnorElement"):
        if self.ring is not other.ring:
            raise MilnorError("elements of different rings")

    def __add__(self, other: "MilnorElement") -> "MilnorElement":
        self._check(other)
        return MilnorElement(self.ring, self.words ^ other.words)

    def __mul__(self, other: "MilnorElement") -> "MilnorElement":
        self._check(other)
        acc: set[Word] = set()
        for w1 in self.words:
            for w2 in other.words:
                acc ^= self.ring._mul_words(w1, w2)
        return MilnorElement(self.ring, frozenset(acc))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MilnorElement)
            and self.ring is other.ring
            and self.words == other.words
        )

    def __hash__(self):
        return hash((id(self.ring), self.words))

    def __str__(self) -> str:
        if not self.words:
            return "0"
        parts = []
        for w in sorted(self.words, key=lambda w: (w.k, sorted(w.I), w.s)):
            bits = []
            if w.k:
                bits.append("eta" if w.k == 1 else f"eta^{w.k}")
            for i in sorted(w.I):
                bits.append(f"r{i}")
            lbl = self.ring.ia.labels[w.s]
            if lbl != "1" or not bits:
                bits.append(lbl)
            parts.append("*".join(bits))
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Ring constructors
# ---------------------------------------------------------------------------

def make_ring(m: int, ia: IaAlgebra, name: str = "") -> MilnorRing:
    """The symbol ring for weight m >= 2: square-free r_0..r_{m-2} with
    r_i^2 = r_{i+1} * rho, and polynomial eta = r_{m-1}."""
    if m < 2:
        raise MilnorError("m must be >= 2")
    return MilnorRing(n_sq=m - 1, has_eta=True, ia=ia, name=name or f"symbol-ring(m={m})")


def flexible_cohomology(n: int) -> MilnorRing:
    """Exterior algebra on r_0..r_n over F_2 (all squares vanish)."""
    if n < 0:
        raise MilnorError("n must be >= 0")
    return MilnorRing(n_sq=n + 1, has_eta=False, ia=trivial_ia(), name=f"flexible(n={n})")


# ---------------------------------------------------------------------------
# Differentials
# ---------------------------------------------------------------------------

def q_apply(i: int, e: MilnorElement) -> MilnorElement:
    """Q_i: strips r_i from words containing it; on the polynomial generator
    eta^k it acts by k * eta^{k-1} (mod 2), including negative k."""
    ring = e.ring
    if i not in ring.q_indices:
        raise MilnorError(f"Q-index {i} out of range for {ring.name}")
    acc: set[Word] = set()
    for w in e.words:
        if i < ring.n_sq and i in w.I:
            acc ^= {Word(w.k, w.I - {i}, w.s)}
        elif ring.has_eta and i == ring.n_sq and w.k % 2 != 0:
            acc ^= {Word(w.k - 1, w.I, w.s)}
    return MilnorElement(ring, frozenset(acc))


def q_composite(indices: Iterable[int], e: MilnorElement) -> MilnorElement:
    for i in sorted(indices, reverse=True):
        e = q_apply(i, e)
    return e


def _power_sum(I: Iterable[int]) -> int:
    return sum(2**i for i in I)


def comult_check(K: Iterable[int], x: MilnorElement, y: MilnorElement) -> bool:
    """Q_K(x*y) = sum over 2^I + 2^J = 2^K of Q_I(x) * Q_J(y) * rho^(|I|+|J|-|K|),
    with the sum enumerated exhaustively over index subsets."""
    ring = x.ring
    if y.ring is not ring:
        raise MilnorError("elements of different rings")
    K = frozenset(K)
    lhs = q_composite(K, x * y)
    target = _power_sum(K)
    rhs = ring.zero()
    idxs = list(ring.q_indices)
    for rI in range(len(idxs) + 1):
        for I in itertools.combinations(idxs, rI):
            sI = _power_sum(I)
            if sI > target:
                continue
            for rJ in range(len(idxs) + 1):
                for J in itertools.combinations(idxs, rJ):
                    if sI + _power_sum(J) != target:
                        continue
                    corr = len(I) + len(J) - len(K)
                    term = q_composite(I, x) * q_composite(J, y)
                    rho = ring.rho_elem()
                    for _ in range(corr):
                        term = term * rho
                    rhs = rhs + term
    return lhs == rhs


# ---------------------------------------------------------------------------
# Restriction along symbol extension
# ---------------------------------------------------------------------------

def restrict_symbol(
    source: MilnorRing,
    target: MilnorRing,
    ia_projection: Sequence[FrozenSet[int]],
    e: MilnorElement,
) -> MilnorElement:
    """Restriction from the weight-m symbol ring to the weight-(m+1) ring:
    r_I maps to r_I, the source eta becomes the square-free r_{m-1} of the
    target (higher eta powers reduce through r_{m-1}^2 = eta' * rho'), and
    coefficients map through the given projection."""
    if not (source.has_eta and target.has_eta):
        raise MilnorError("restriction runs between symbol rings")
    if target.n_sq != source.n_sq + 1:
        raise MilnorError("target must be the symbol ring of weight m+1")
    if len(ia_projection) != len(source.ia.labels):
        raise MilnorError("projection table must cover every coefficient basis element")
    if e.ring is not source:
        raise MilnorError("element does not live in the source ring")
    out = target.zero()
    r_top = target.r(source.n_sq)  # square-free in the target
    for w in e.words:
        term = target.r_set(w.I)
        for _ in range(w.k):
            term = term * r_top
        s_img = target.zero()
        for s in ia_projection[w.s]:
            s_img = s_img + target.ia_elem(s)
        out = out + term * s_img
    return out


# ---------------------------------------------------------------------------
# The periodic quotient module
# ---------------------------------------------------------------------------

class PeriodicModule:
    """Quotient module with basis eta^{-l} * r_I * s for l > 0; the ring acts
    with any product landing in non-negative eta powers quotiented to zero."""

    def __init__(self, ring: MilnorRing):
        if not ring.has_eta:
            raise MilnorError("the periodic module needs a polynomial top generator")
        self.ring = ring

    def element(self, words: Iterable[Word]) -> MilnorElement:
        ws = list(words)
        for w in ws:
            if w.k >= 0:
                raise MilnorError("module words need negative eta exponents")
        return self.ring.element(ws)

    def generator(self, l: int = 1) -> MilnorElement:
        if l <= 0:
            raise MilnorError("l must be positive")
        return self.element([Word(-l, frozenset(), self.ring.ia.unit)])

    def act(self, ring_elem: MilnorElement, mod_elem: MilnorElement) -> MilnorElement:
        raw = ring_elem * mod_elem
        return self.ring.element(w for w in raw.words if w.k < 0)

    def q_apply(self, i: int, e: MilnorElement) -> MilnorElement:
        return q_apply(i, e)


def combined_model_words(
    ring: MilnorRing, k_min: int, k_max: int
) -> list[Word]:
    """Basis words of the combined object: the ring part (k >= 0) together
    with the periodic module part (k < 0), restricted to a k-window."""
    return ring.basis_words(k_max=k_max, k_min=k_min)


def q_homology_dimensions(
    ring: MilnorRing, i: int, k_min: int, k_max: int
) -> dict[BiDegree, int]:
    """Homology dimensions of Q_i on the combined model, bidegree by bidegree.

    Only bidegrees whose incoming and outgoing words stay inside the k-window
    are reported (boundary bidegrees would see truncation artifacts).
    """
    from .numeric import modp_rank

    words = combined_model_words(ring, k_min, k_max)
    by_deg: dict[BiDegree, list[Word]] = {}
    for w in words:
        by_deg.setdefault(ring.word_bidegree(w), []).append(w)
    d = 2**i - 1
    shift = BiDegree(d, 2 * d + 1)

    def q_matrix(src: BiDegree) -> Optional[list[list[int]]]:
        dst = src + shift
        src_words = by_deg.get(src, [])
        dst_words = by_deg.get(dst, [])
        didx = {w: j for j, w in enumerate(dst_words)}
        rows = []
        for w in src_words:
            img = q_apply(i, ring.element([w]))
            row = [0] * len(dst_words)
            for v in img.words:
                if v not in didx:
                    return None  # image escapes the window
                row[didx[v]] = 1
            rows.append(row)
        return rows

    out: dict[BiDegree, int] = {}
    interior = {
        deg
        for deg, ws in by_deg.items()
        if all(k_min < w.k < k_max for w in ws)
    }
    for deg in interior:
        mat_out = q_matrix(deg)
        prev = deg + BiDegree(-shift.a, -shift.b)
        mat_in = q_matrix(prev) if prev in by_deg else []
        if mat_out is None or mat_in is None:
            continue
        n_here = len(by_deg[deg])
        rank_out = modp_rank(mat_out, 2)
        rank_in = modp_rank(mat_in, 2)
        kernel_dim = n_here - rank_out
        out[deg] = kernel_dim - rank_in
    return out
