"""Exact sparse arithmetic in graded-commutative polynomial rings with
oriented rewrite rules.

A ring context fixes a list of named generators with positive codegrees,
a coefficient ring (arbitrary-precision integers, or residues mod a prime
p), an optional dimension above which all classes vanish, and a priority-
ordered list of rewrite rules.  Classes are sparse monomial tables kept in
normal form: no stored monomial is divisible by any rule's leading
monomial, no zero coefficients are stored, and two classes are equal iff
their tables coincide.

The rewrite machinery is deliberately light: rules are oriented by their
constructors, confluence is not certified, only smoke-tested (see
``confluence_smoke_check``).  Reduction carries a step budget so that an
ill-founded rule set raises instead of spinning.

No floating point is used anywhere; everything is exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence


class RingError(Exception):
    """Base class for ring-level failures."""


class ContextMismatch(RingError):
    """Operands live in different ring contexts."""


class ReductionBudgetExceeded(RingError):
    """normal_form exceeded its step budget (ill-founded rule set?)."""


class InvalidRule(RingError):
    """A rewrite rule violates a structural invariant."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Monomial:
    """Sparse exponent vector: a sorted tuple of (generator index, exponent).

    Zero exponents are never stored; the empty tuple is the unit monomial.
    """

    __slots__ = ("exps",)

    def __init__(self, exps: Iterable[tuple[int, int]] = ()):
        pairs = tuple(sorted((i, e) for i, e in exps if e != 0))
        if any(e < 0 for _, e in pairs):
            raise ValueError("negative exponent in monomial")
        self.exps = pairs

    def __hash__(self) -> int:
        return hash(self.exps)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    def __repr__(self) -> str:
        return f"Monomial({self.exps!r})"

    @property
    def is_one(self) -> bool:
        return not self.exps

    def exp_of(self, idx: int) -> int:
        for i, e in self.exps:
            if i == idx:
                return e
        return 0

    def total_degree(self) -> int:
        return sum(e for _, e in self.exps)

    def mul(self, other: "Monomial") -> "Monomial":
        acc = dict(self.exps)
        for i, e in other.exps:
            acc[i] = acc.get(i, 0) + e
        return Monomial(acc.items())

    def divides(self, other: "Monomial") -> bool:
        it = dict(other.exps)
        return all(it.get(i, 0) >= e for i, e in self.exps)

    def div(self, other: "Monomial") -> "Monomial":
        acc = dict(self.exps)
        for i, e in other.exps:
            acc[i] = acc.get(i, 0) - e
        return Monomial(acc.items())


MONOMIAL_ONE = Monomial()


@dataclass(frozen=True)
class RewriteRule:
    """Oriented rule: the leading monomial rewrites to the replacement table.

    The leading monomial must not divide any monomial of the replacement,
    and the replacement must be homogeneous of the same codegree.
    """

    lead: Monomial
    replacement: tuple[tuple[Monomial, int], ...]
    index: int = 0


class RingContext:
    """Immutable graded polynomial ring with rewrite rules.

    modulus 0 means integer coefficients; a positive modulus must be prime.
    dimension, when set, truncates every class above that codegree.
    """

    def __init__(
        self,
        names: Sequence[str],
        codegrees: Sequence[int],
        modulus: int = 0,
        dimension: Optional[int] = None,
        rules: Iterable[tuple[Monomial, Mapping[Monomial, int]]] = (),
        step_budget: int = 10**6,
    ):
        if len(names) != len(set(names)):
            raise ValueError("duplicate generator names")
        if len(names) != len(codegrees):
            raise ValueError("names/codegrees length mismatch")
        if any(d <= 0 for d in codegrees):
            raise ValueError("generator codegrees must be positive")
        if modulus and not _is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        self.names = tuple(names)
        self.codegrees = tuple(codegrees)
        self.modulus = modulus
        self.dimension = dimension
        self.step_budget = step_budget
        self._index = {n: i for i, n in enumerate(self.names)}
        self.rules: tuple[RewriteRule, ...] = ()
        self._install_rules(rules)

    # -- construction -------------------------------------------------

    def _install_rules(self, raw) -> None:
        staged = []
        for k, (lead, repl) in enumerate(raw):
            if lead.is_one:
                raise InvalidRule("unit monomial cannot be a rule lead")
            table = {m: self._red(c) for m, c in repl.items()}
            table = {m: c for m, c in table.items() if c != 0}
            lead_cd = self.monomial_codegree(lead)
            for m in table:
                if self.monomial_codegree(m) != lead_cd:
                    raise InvalidRule(
                        f"inhomogeneous rule: lead codegree {lead_cd}, "
                        f"replacement has codegree {self.monomial_codegree(m)}"
                    )
            staged.append((lead, table))
        # Inter-reduce replacements so every stored replacement is itself in
        # normal form with respect to the full rule set.
        for _round in range(64):
            rules = tuple(
                RewriteRule(lead, tuple(sorted(t.items(), key=lambda kv: kv[0].exps)), k)
                for k, (lead, t) in enumerate(staged)
            )
            self.rules = rules
            changed = False
            for k, (lead, table) in enumerate(staged):
                reduced = self._nf(table)
                if any(lead.divides(m) for m in reduced):
                    raise InvalidRule("rule lead divides its own replacement")
                if reduced != table:
                    staged[k] = (lead, reduced)
                    changed = True
            if not changed:
                break
        else:
            raise InvalidRule("rule replacements failed to stabilize")

    def _red(self, c: int) -> int:
        return c % self.modulus if self.modulus else c

    # -- bookkeeping ---------------------------------------------------

    def gen_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def monomial_codegree(self, m: Monomial) -> int:
        return sum(self.codegrees[i] * e for i, e in m.exps)

    def _mkey(self, m: Monomial):
        # Reverse-index lexicographic order: later generators weigh more.
        # All constructor-emitted rules strictly decrease in this order.
        return tuple(m.exp_of(i) for i in range(len(self.names) - 1, -1, -1))

    def monomial_str(self, m: Monomial) -> str:
        if m.is_one:
            return "1"
        parts = []
        for i, e in m.exps:
            parts.append(self.names[i] if e == 1 else f"{self.names[i]}^{e}")
        return "*".join(parts)

    def monomial_from_str(self, text: str) -> Monomial:
        text = text.strip()
        if text == "1":
            return MONOMIAL_ONE
        exps: dict[int, int] = {}
        for factor in text.split("*"):
            if "^" in factor:
                name, _, pw = factor.partition("^")
                e = int(pw)
            else:
                name, e = factor, 1
            idx = self.gen_index(name.strip())
            exps[idx] = exps.get(idx, 0) + e
        return Monomial(exps.items())

    # -- class constructors ---------------------------------------------

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def one(self) -> "GradedClass":
        return self.scalar(1)

    def scalar(self, c: int) -> "GradedClass":
        c = self._red(c)
        return GradedClass(self, {MONOMIAL_ONE: c} if c else {})

    def gen(self, name: str) -> "GradedClass":
        m = Monomial([(self.gen_index(name), 1)])
        return GradedClass(self, self._nf({m: 1}))

    def from_table(self, table: Mapping[Monomial, int]) -> "GradedClass":
        return GradedClass(self, self._nf(table))

    # -- reduction -------------------------------------------------------

    def _matching_rule(self, m: Monomial) -> Optional[RewriteRule]:
        for rule in self.rules:
            if rule.lead.divides(m):
                return rule
        return None

    def _nf(
        self,
        table: Mapping[Monomial, int],
        rng: Optional[random.Random] = None,
        budget: Optional[int] = None,
    ) -> dict[Monomial, int]:
        limit = budget if budget is not None else self.step_budget
        steps = 0
        work: dict[Monomial, int] = {}
        for m, c in table.items():
            c = self._red(c)
            if c:
                work[m] = self._red(work.get(m, 0) + c)
        out: dict[Monomial, int] = {}
        while work:
            if rng is None:
                m = max(work, key=self._mkey)
            else:
                m = rng.choice(sorted(work, key=self._mkey))
            c = work.pop(m)
            if c == 0:
                continue
            if self.dimension is not None and self.monomial_codegree(m) > self.dimension:
                continue
            if rng is None:
                rule = self._matching_rule(m)
            else:
                hits = [r for r in self.rules if r.lead.divides(m)]
                rule = rng.choice(hits) if hits else None
            if rule is None:
                v = self._red(out.get(m, 0) + c)
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
                continue
            steps += 1
            if steps > limit:
                raise ReductionBudgetExceeded(
                    f"reduction exceeded {limit} steps; rule set may not terminate"
                )
            q = m.div(rule.lead)
            for rm, rc in rule.replacement:
                t = rm.mul(q)
                v = self._red(work.get(t, 0) + c * rc)
                if v:
                    work[t] = v
                elif t in work:
                    del work[t]
        return {m: c for m, c in out.items() if c}

    def signature(self) -> dict:
        return {
            "generators": [
                {"name": n, "codegree": d} for n, d in zip(self.names, self.codegrees)
            ],
            "modulus": self.modulus,
            "dimension": self.dimension,
        }


class GradedClass:
    """A sparse graded class attached to a ring context, kept in normal form."""

    __slots__ = ("ring", "table")

    def __init__(self, ring: RingContext, table: dict[Monomial, int]):
        self.ring = ring
        self.table = table

    # -- structure --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedClass):
            return NotImplemented
        if self.ring is not other.ring:
            return False
        return self.table == other.table

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted(self.table.items(), key=lambda kv: kv[0].exps))))

    def is_zero(self) -> bool:
        return not self.table

    @property
    def codegree(self) -> Optional[int]:
        """Codegree if homogeneous and nonzero, else None."""
        degs = {self.ring.monomial_codegree(m) for m in self.table}
        if len(degs) == 1:
            return degs.pop()
        return None

    def codegrees(self) -> set[int]:
        return {self.ring.monomial_codegree(m) for m in self.table}

    def coefficient(self, m: Monomial) -> int:
        return self.table.get(m, 0)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "GradedClass") -> None:
        if self.ring is not other.ring:
            raise ContextMismatch("classes belong to different ring contexts")

    def __add__(self, other: "GradedClass") -> "GradedClass":
        self._check(other)
        acc = dict(self.table)
        red = self.ring._red
        for m, c in other.table.items():
            v = red(acc.get(m, 0) + c)
            if v:
                acc[m] = v
            elif m in acc:
                del acc[m]
        return GradedClass(self.ring, acc)

    def __neg__(self) -> "GradedClass":
        red = self.ring._red
        return GradedClass(self.ring, {m: red(-c) for m, c in self.table.items()})

    def __sub__(self, other: "GradedClass") -> "GradedClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        raw: dict[Monomial, int] = {}
        for m1, c1 in self.table.items():
            for m2, c2 in other.table.items():
                t = m1.mul(m2)
                raw[t] = raw.get(t, 0) + c1 * c2
        return GradedClass(self.ring, self.ring._nf(raw))

    __rmul__ = __mul__

    def scale(self, k: int) -> "GradedClass":
        red = self.ring._red
        out = {}
        for m, c in self.table.items():
            v = red(c * k)
            if v:
                out[m] = v
        return GradedClass(self.ring, out)

    def __pow__(self, k: int) -> "GradedClass":
        if k < 0:
            raise ValueError("negative power")
        acc = self.ring.one()
        for _ in range(k):
            acc = acc * self
        return acc

    def homogeneous_part(self, d: int) -> "GradedClass":
        cd = self.ring.monomial_codegree
        return GradedClass(self.ring, {m: c for m, c in self.table.items() if cd(m) == d})

    def constant_term(self) -> int:
        return self.table.get(MONOMIAL_ONE, 0)

    def __repr__(self) -> str:
        return f"<class {self}>"

    def __str__(self) -> str:
        if not self.table:
            return "0"
        items = sorted(self.table.items(), key=lambda kv: (self.ring.monomial_codegree(kv[0]), self.ring._mkey(kv[0])))
        parts = []
        for m, c in items:
            ms = self.ring.monomial_str(m)
            if m.is_one:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(ms)
            elif c == -1:
                parts.append(f"-{ms}")
            else:
                parts.append(f"{c}*{ms}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def normal_form(c: GradedClass) -> GradedClass:
    """Reduce a class to normal form (idempotent; classes built through the
    public API are already reduced)."""
    return GradedClass(c.ring, c.ring._nf(c.table))


def evaluate(
    c: GradedClass,
    images: Mapping[str, GradedClass],
    target: Optional[RingContext] = None,
) -> GradedClass:
    """Apply the ring map sending each generator to its image.

    Generators missing from ``images`` map to the generator of the same name
    in the target context.  The result is reduced in the target.
    """
    src = c.ring
    if target is None:
        some = next(iter(images.values()), None)
        target = some.ring if some is not None else src
    out = target.zero()
    for m, coeff in c.table.items():
        term = target.scalar(coeff)
        for i, e in m.exps:
            name = src.names[i]
            img = images.get(name)
            if img is None:
                img = target.gen(name)
            term = term * (img**e)
        out = out + term
    return out


def _random_table(
    ctx: RingContext,
    rng: random.Random,
    max_codegree: Optional[int] = None,
    terms: int = 3,
    coeff_range: int = 5,
) -> dict[Monomial, int]:
    hi = max_codegree
    if hi is None:
        hi = ctx.dimension if ctx.dimension is not None else 4
    table: dict[Monomial, int] = {}
    for _ in range(terms):
        budget = rng.randint(0, hi)
        exps: dict[int, int] = {}
        while budget > 0:
            i = rng.randrange(len(ctx.names))
            d = ctx.codegrees[i]
            if d > budget:
                break
            exps[i] = exps.get(i, 0) + 1
            budget -= d
        m = Monomial(exps.items())
        c = rng.randint(-coeff_range, coeff_range)
        table[m] = table.get(m, 0) + c
    return table


def random_class(
    ctx: RingContext,
    rng: random.Random,
    max_codegree: Optional[int] = None,
    terms: int = 3,
    coeff_range: int = 5,
) -> GradedClass:
    """Random sparse class, for property tests and smoke checks."""
    return ctx.from_table(_random_table(ctx, rng, max_codegree, terms, coeff_range))


# ---------------------------------------------------------------------------
# Symmetric function utilities
# ---------------------------------------------------------------------------

_Poly = dict  # {exponent tuple: int} over the root variables x_1..x_r


def _poly_mul(a: _Poly, b: _Poly, max_deg: Optional[int] = None) -> _Poly:
    out: _Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if max_deg is not None and sum(e) > max_deg:
                continue
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _elementary_poly(j: int, r: int) -> _Poly:
    out: _Poly = {}
    for comb in itertools.combinations(range(r), j):
        e = [0] * r
        for i in comb:
            e[i] = 1
        out[tuple(e)] = 1
    return out


def _to_elementary(f: _Poly, r: int) -> dict[tuple[int, ...], int]:
    """Rewrite a symmetric polynomial in x_1..x_r as a polynomial in the
    elementary symmetric functions e_1..e_r (classical leading-term descent).

    Returns {(a_1..a_r): coeff} meaning coeff * e_1^a_1 * ... * e_r^a_r.
    """
    out: dict[tuple[int, ...], int] = {}
    work = dict(f)
    guard = 0
    while work:
        guard += 1
        if guard > 100000:
            raise RingError("symmetric reduction failed to terminate")
        lam = max(work)  # lex max; for symmetric f its exponents are non-increasing
        if list(lam) != sorted(lam, reverse=True):
            raise RingError("polynomial is not symmetric")
        c = work[lam]
        epows = tuple(
            lam[i] - (lam[i + 1] if i + 1 < r else 0) for i in range(r)
        )
        out[epows] = out.get(epows, 0) + c
        prod: _Poly = {tuple([0] * r): 1}
        for j, a in enumerate(epows, start=1):
            ej = _elementary_poly(j, r)
            for _ in range(a):
                prod = _poly_mul(prod, ej)
        for e, pc in prod.items():
            v = work.get(e, 0) - c * pc
            if v:
                work[e] = v
            elif e in work:
                del work[e]
    return {e: c for e, c in out.items() if c}


def chern_generator_context(rank: int, up_to: int, modulus: int = 0, prefix: str = "c") -> RingContext:
    """Free ring on Chern-class generators c_1..c_rank with c_i in codegree i."""
    names = [f"{prefix}{i}" for i in range(1, rank + 1)]
    return RingContext(names, list(range(1, rank + 1)), modulus=modulus, dimension=up_to)


def symmetric_expand(
    power: int,
    roots_rank: int,
    up_to: int,
    ctx: Optional[RingContext] = None,
    prefix: str = "c",
) -> GradedClass:
    """Expand prod_i (1 + x_i^power) over roots x_1..x_r in terms of the
    elementary symmetric classes c_1..c_r, truncated at the given codegree.

    Substituting actual Chern roots for the c_i reproduces the product; the
    answer is stable in r once r >= up_to.
    """
    if power < 1 or roots_rank < 1:
        raise ValueError("power and roots_rank must be >= 1")
    if ctx is None:
        ctx = chern_generator_context(roots_rank, up_to, prefix=prefix)
    r = roots_rank
    table: dict[Monomial, int] = {MONOMIAL_ONE: 1}
    for j in range(1, r + 1):
        deg = j * power
        if deg > up_to:
            break
        # e_j of the power-th powers of the roots, then rewrite in e's of the roots.
        ej_pows: _Poly = {}
        for e, c in _elementary_poly(j, r).items():
            ej_pows[tuple(x * power for x in e)] = c
        for epows, c in _to_elementary(ej_pows, r).items():
            exps = {}
            for i, a in enumerate(epows, start=1):
                if a:
                    exps[ctx.gen_index(f"{prefix}{i}")] = a
            m = Monomial(exps.items())
            table[m] = table.get(m, 0) + c
    return ctx.from_table(table)


def inverse_series(c: GradedClass, up_to: Optional[int] = None) -> GradedClass:
    """Multiplicative inverse of a class with constant term 1 (or -1),
    truncated at the context dimension (or up_to)."""
    ring = c.ring
    bound = up_to if up_to is not None else ring.dimension
    if bound is None:
        raise ValueError("need a truncation bound to invert a series")
    c0 = c.constant_term()
    if ring.modulus:
        unit = c0 != 0
    else:
        unit = c0 in (1, -1)
    if not unit:
        raise ValueError("series has non-invertible constant term")
    if ring.modulus:
        c0_inv = pow(c0, -1, ring.modulus)
    else:
        c0_inv = c0
    tail = c - ring.scalar(c0)
    acc = ring.zero()
    powt = ring.one()
    for _ in range(bound + 1):
        acc = acc + powt
        powt = powt * (tail.scale(-c0_inv))
        if powt.is_zero():
            break
    return acc.scale(c0_inv)


# ---------------------------------------------------------------------------
# Confluence smoke check
# ---------------------------------------------------------------------------

@dataclass
class ConfluenceReport:
    trials: int
    divergences: list

    @property
    def passed(self) -> bool:
        return not self.divergences


def confluence_smoke_check(
    ctx: RingContext,
    trials: int = 50,
    seed: int = 0,
    orders_per_class: int = 4,
) -> ConfluenceReport:
    """Reduce random classes under random rule-application orders and report
    any pair of orders that disagree.  Divergence is reported, not raised."""
    rng = random.Random(seed)
    divergences = []
    for t in range(trials):
        raw = _random_table(ctx, rng)  # unreduced on purpose
        reference = ctx._nf(raw)
        for k in range(orders_per_class):
            sub = random.Random(rng.randrange(2**32))
            got = ctx._nf(raw, rng=sub)
            if got != reference:
                divergences.append(
                    {
                        "trial": t,
                        "order": k,
                        "input": str(GradedClass(ctx, dict(raw))),
                        "expected": str(GradedClass(ctx, reference)),
                        "got": str(GradedClass(ctx, got)),
                    }
                )
    return ConfluenceReport(trials=trials, divergences=divergences)
