"""Chow-ring presentations of cellular varieties and the constructors that
compose them: projective spaces, products, projective bundles, and blow-ups
along centers whose tracked classes restrict from the ambient variety.

A presentation bundles a ring context with a finite monomial basis per
codegree, a degree functional on the top codegree, optional total tangent
Chern class, and provenance.  Constructors flatten everything into rewrite
rules at build time, so towers of constructions compose and equality of
classes is decidable.

Sign conventions are fixed once and for all:

* projective bundle P(E) -> X of rank r carries a codegree-1 generator xi
  with sum_{i=0}^{r} xi^i * c_{r-i}(E) = 0, and the pushforward of
  xi^{r-1+k} is the k-th Segre class of E;
* for a blow-up with exceptional divisor E, the generator e is the class
  [E], and rho := c_1(O(1)) on E pulls back against e as j^*[E] = -rho.

Blow-up centers must satisfy the coverage requirement: every tracked class
of the center is the restriction of an ambient class, and pushforward from
the center is multiplication by the fundamental class.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .rings import (
    ContextMismatch,
    GradedClass,
    MONOMIAL_ONE,
    Monomial,
    RingContext,
    RingError,
    evaluate,
)

SCHEMA_VERSION = 1


class CoverageError(RingError):
    """A class or center datum is not expressible in tracked generators."""


class TangentUnavailable(RingError):
    """The operation needs tangent data this presentation does not carry."""


ROLE_AMBIENT = "ambient-pullback"
ROLE_EXCEPTIONAL = "exceptional"
ROLE_HYPERPLANE = "bundle-hyperplane"


@dataclass(frozen=True)
class BundleRoots:
    """A signed multiset of codegree-1 classes (virtual Chern roots)."""

    ring: RingContext
    entries: tuple[tuple[int, GradedClass], ...]

    def __post_init__(self):
        for sign, c in self.entries:
            if sign not in (1, -1):
                raise ValueError("root sign must be +-1")
            if c.ring is not self.ring:
                raise ContextMismatch("root lives in a different ring")
            if not c.is_zero() and c.codegree != 1:
                raise ValueError("bundle roots must be homogeneous of codegree 1")

    @classmethod
    def plus(cls, classes: Sequence[GradedClass], ring: Optional[RingContext] = None):
        if ring is None:
            if not classes:
                raise ValueError("empty roots need an explicit ring")
            ring = classes[0].ring
        return cls(ring, tuple((1, c) for c in classes))

    @property
    def rank(self) -> int:
        return sum(s for s, _ in self.entries)

    def negate(self) -> "BundleRoots":
        return BundleRoots(self.ring, tuple((-s, c) for s, c in self.entries))

    def union(self, other: "BundleRoots") -> "BundleRoots":
        if other.ring is not self.ring:
            raise ContextMismatch("roots in different rings")
        return BundleRoots(self.ring, self.entries + other.entries)

    def positive_classes(self) -> list[GradedClass]:
        return [c for s, c in self.entries if s == 1]


def elementary_symmetric(classes: Sequence[GradedClass], j: int) -> GradedClass:
    if not classes:
        raise ValueError("need at least one class")
    ring = classes[0].ring
    if j == 0:
        return ring.one()
    acc = ring.zero()
    for comb in itertools.combinations(classes, j):
        term = ring.one()
        for c in comb:
            term = term * c
        acc = acc + term
    return acc


@dataclass
class CenterData:
    """Data of a blow-up center Z inside an ambient presentation.

    The center is never stored as its own presentation: its codimension is
    the codegree of the fundamental class, its normal bundle is given by
    restricted ambient root classes, and the restriction map sends each
    ambient generator to an ambient class with the same restriction to Z.
    Generators absent from ``restriction`` restrict as themselves.
    """

    fundamental: GradedClass
    roots: BundleRoots
    restriction: dict[str, GradedClass] = field(default_factory=dict)
    name: str = "Z"

    @classmethod
    def complete_intersection(
        cls, classes: Sequence[GradedClass], name: str = "Z"
    ) -> "CenterData":
        """Center cut out by codegree-1 classes; [Z] is their product and the
        normal roots are the classes themselves."""
        z = classes[0].ring.one()
        for c in classes:
            z = z * c
        return cls(fundamental=z, roots=BundleRoots.plus(list(classes)), name=name)

    @property
    def codim(self) -> int:
        d = self.fundamental.codegree
        if d is None:
            raise CoverageError("fundamental class must be homogeneous and nonzero")
        return d


class ChowPresentation:
    """A finite Chow-ring presentation: ring + basis + degree + tangent."""

    def __init__(
        self,
        kind: str,
        ring: RingContext,
        roles: dict[str, str],
        basis: Sequence[Sequence[Monomial]],
        degree_table: Optional[dict[Monomial, int]],
        degree_total: bool,
        tangent: Optional[GradedClass],
        base: Optional["ChowPresentation"] = None,
        factors: Optional[tuple["ChowPresentation", "ChowPresentation"]] = None,
        renames: Optional[tuple[dict, dict]] = None,
        center: Optional[CenterData] = None,
        provenance: Optional[dict] = None,
        name: Optional[str] = None,
    ):
        self.kind = kind
        self.ring = ring
        self.roles = roles
        self.basis = tuple(tuple(b) for b in basis)
        self.degree_table = degree_table
        self.degree_total = degree_total
        self.tangent = tangent
        self.base = base
        self.factors = factors
        self.renames = renames
        self.center = center
        self.provenance = provenance or {"constructor": kind}
        self.name = name or kind
        self._mod_cache: dict[int, "ChowPresentation"] = {}

    # -- basics -------------------------------------------------------

    @property
    def dim(self) -> int:
        assert self.ring.dimension is not None
        return self.ring.dimension

    def gen(self, name: str) -> GradedClass:
        return self.ring.gen(name)

    def scalar(self, k: int) -> GradedClass:
        return self.ring.scalar(k)

    def zero(self) -> GradedClass:
        return self.ring.zero()

    def one(self) -> GradedClass:
        return self.ring.one()

    def basis_of(self, d: int) -> tuple[Monomial, ...]:
        if d < 0 or d > self.dim:
            return ()
        return self.basis[d]

    def basis_classes(self, d: int) -> list[GradedClass]:
        return [GradedClass(self.ring, {m: 1}) for m in self.basis_of(d)]

    def coordinates(self, c: GradedClass, d: int) -> list[int]:
        """Coordinates of the codegree-d part of c in the stored basis."""
        part = c.homogeneous_part(d)
        idx = {m: i for i, m in enumerate(self.basis_of(d))}
        coords = [0] * len(idx)
        for m, coeff in part.table.items():
            if m not in idx:
                raise CoverageError(
                    f"monomial {self.ring.monomial_str(m)} is not a tracked basis monomial"
                )
            coords[idx[m]] = coeff
        return coords

    def tangent_class(self) -> GradedClass:
        if self.tangent is None:
            raise TangentUnavailable(
                f"presentation {self.name!r} carries no tangent data"
            )
        return self.tangent

    # -- degree -------------------------------------------------------

    def degree(self, c: GradedClass) -> int:
        """Degree of the top-codegree part of c (other codegrees push to zero)."""
        if c.ring is not self.ring:
            raise ContextMismatch("class belongs to a different presentation")
        if self.degree_table is None:
            raise CoverageError(
                f"presentation {self.name!r} has no degree functional"
            )
        top = c.homogeneous_part(self.dim)
        total = 0
        for m, coeff in top.table.items():
            if m not in self.degree_table:
                raise CoverageError(
                    f"degree of monomial {self.ring.monomial_str(m)} is not declared"
                )
            total += coeff * self.degree_table[m]
        return self.ring._red(total)

    # -- constructor edges ----------------------------------------------

    def pullback(self, c: GradedClass) -> GradedClass:
        """Pullback along the constructor edge (base -> this presentation)."""
        if self.base is None:
            raise CoverageError(f"presentation {self.name!r} has no base edge")
        if c.ring is not self.base.ring:
            raise ContextMismatch("class does not live on the base presentation")
        table = {m: coeff for m, coeff in c.table.items()}
        return self.ring.from_table(table)

    def pullback_from_factor(self, i: int, c: GradedClass) -> GradedClass:
        if self.factors is None:
            raise CoverageError(f"presentation {self.name!r} is not a product")
        factor = self.factors[i]
        if c.ring is not factor.ring:
            raise ContextMismatch("class does not live on the chosen factor")
        rename = self.renames[i]
        images = {old: self.gen(new) for old, new in rename.items()}
        return evaluate(c, images, self.ring)

    def pushforward(self, c: GradedClass) -> GradedClass:
        """Pushforward along the constructor edge (this presentation -> base)."""
        if self.base is None:
            raise CoverageError(f"presentation {self.name!r} has no base edge")
        if c.ring is not self.ring:
            raise ContextMismatch("class does not live on this presentation")
        if self.kind == "bundle":
            return self._bundle_pushforward(c)
        if self.kind == "blowup":
            return self._blowup_pushforward(c)
        raise CoverageError(f"no pushforward for constructor kind {self.kind!r}")

    def _bundle_pushforward(self, c: GradedClass) -> GradedClass:
        xi = self.provenance["fiber_generator"]
        xi_idx = self.ring.gen_index(xi)
        r = self.provenance["rank"]
        segre = self.provenance["_segre"]  # list of base classes s_0, s_1, ...
        out = self.base.ring.zero()
        for m, coeff in c.table.items():
            k = m.exp_of(xi_idx)
            rest = m.div(Monomial([(xi_idx, k)]) if k else MONOMIAL_ONE)
            s_index = k - (r - 1)
            if s_index < 0:
                continue
            base_mono = self.base.ring.from_table({rest: coeff})
            out = out + base_mono * segre[s_index]
        return out

    def _blowup_pushforward(self, c: GradedClass) -> GradedClass:
        e_idx = self.ring.gen_index(self.provenance["exceptional_generator"])
        out_table = {
            m: coeff for m, coeff in c.table.items() if m.exp_of(e_idx) == 0
        }
        return self.base.ring.from_table(out_table)

    # -- coefficient change ----------------------------------------------

    def with_coefficients(self, p: int) -> "ChowPresentation":
        """The same presentation with coefficients reduced mod p."""
        if p == self.ring.modulus:
            return self
        if p in self._mod_cache:
            return self._mod_cache[p]
        ring = RingContext(
            self.ring.names,
            self.ring.codegrees,
            modulus=p,
            dimension=self.ring.dimension,
            rules=[(r.lead, dict(r.replacement)) for r in self.ring.rules],
            step_budget=self.ring.step_budget,
        )
        new = ChowPresentation(
            kind=self.kind,
            ring=ring,
            roles=dict(self.roles),
            basis=self.basis,
            degree_table=dict(self.degree_table) if self.degree_table is not None else None,
            degree_total=self.degree_total,
            tangent=ring.from_table(self.tangent.table) if self.tangent is not None else None,
            base=self.base.with_coefficients(p) if self.base is not None else None,
            factors=tuple(f.with_coefficients(p) for f in self.factors) if self.factors else None,
            renames=self.renames,
            center=self.center,
            provenance=dict(self.provenance),
            name=self.name,
        )
        if self.kind == "bundle":
            new.provenance["_segre"] = [
                new.base.ring.from_table(s.table) for s in self.provenance["_segre"]
            ]
        self._mod_cache[p] = new
        return new

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        doc = {
            "version": SCHEMA_VERSION,
            "name": self.name,
            "kind": self.kind,
            "dimension": self.dim,
            "modulus": self.ring.modulus,
            "generators": [
                {"name": n, "codegree": d, "role": self.roles.get(n, ROLE_AMBIENT)}
                for n, d in zip(self.ring.names, self.ring.codegrees)
            ],
            "rules": [
                {
                    "lead": self.ring.monomial_str(r.lead),
                    "replacement": {
                        self.ring.monomial_str(m): c for m, c in r.replacement
                    },
                }
                for r in self.ring.rules
            ],
            "basis": {
                str(d): [self.ring.monomial_str(m) for m in self.basis_of(d)]
                for d in range(self.dim + 1)
            },
            "degree": None
            if self.degree_table is None
            else {
                self.ring.monomial_str(m): v for m, v in sorted(
                    self.degree_table.items(), key=lambda kv: kv[0].exps
                )
            },
            "degree_total": self.degree_total,
            "tangent": None
            if self.tangent is None
            else {self.ring.monomial_str(m): c for m, c in self.tangent.table.items()},
            "provenance": {
                k: v for k, v in self.provenance.items() if not k.startswith("_")
            },
        }
        return doc

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def is_cellular(self) -> bool:
        return bool(self.provenance.get("cellular"))

    def __repr__(self):
        return f"<ChowPresentation {self.name} dim={self.dim} mod={self.ring.modulus}>"


def presentation_from_json(doc: dict) -> ChowPresentation:
    if doc.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported presentation schema version {doc.get('version')}")
    names = [g["name"] for g in doc["generators"]]
    codegrees = [g["codegree"] for g in doc["generators"]]
    ring = RingContext(names, codegrees, modulus=doc["modulus"], dimension=doc["dimension"])
    rules = []
    for r in doc["rules"]:
        lead = ring.monomial_from_str(r["lead"])
        repl = {ring.monomial_from_str(m): c for m, c in r["replacement"].items()}
        rules.append((lead, repl))
    ring = RingContext(
        names, codegrees, modulus=doc["modulus"], dimension=doc["dimension"], rules=rules
    )
    basis = [
        tuple(ring.monomial_from_str(s) for s in doc["basis"][str(d)])
        for d in range(doc["dimension"] + 1)
    ]
    degree_table = None
    if doc["degree"] is not None:
        degree_table = {
            ring.monomial_from_str(s): v for s, v in doc["degree"].items()
        }
    tangent = None
    if doc["tangent"] is not None:
        tangent = ring.from_table(
            {ring.monomial_from_str(s): c for s, c in doc["tangent"].items()}
        )
    return ChowPresentation(
        kind=doc["kind"],
        ring=ring,
        roles={g["name"]: g["role"] for g in doc["generators"]},
        basis=basis,
        degree_table=degree_table,
        degree_total=doc["degree_total"],
        tangent=tangent,
        provenance=doc.get("provenance"),
        name=doc.get("name"),
    )


def load_presentation(path) -> ChowPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        return presentation_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# Basis enumeration
# ---------------------------------------------------------------------------

def _irreducible_monomials(ring: RingContext, d: int) -> list[Monomial]:
    """All normal-form monomials of codegree d (finite: codegrees positive)."""
    out: list[Monomial] = []
    n = len(ring.names)

    def rec(i: int, remaining: int, acc: dict[int, int]):
        if remaining == 0:
            m = Monomial(acc.items())
            if ring._matching_rule(m) is None:
                out.append(m)
            return
        if i >= n:
            return
        cd = ring.codegrees[i]
        max_e = remaining // cd
        for e in range(max_e, -1, -1):
            if e:
                acc[i] = e
                # prune: a reducible prefix only gets worse
                if ring._matching_rule(Monomial(acc.items())) is not None:
                    del acc[i]
                    continue
            rec(i + 1, remaining - e * cd, acc)
            if e:
                del acc[i]

    rec(0, d, {})
    return sorted(out, key=ring._mkey)


def enumerate_basis(ring: RingContext) -> list[tuple[Monomial, ...]]:
    assert ring.dimension is not None
    return [tuple(_irreducible_monomials(ring, d)) for d in range(ring.dimension + 1)]


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def projective_space(
    n: int, gen: str = "h", modulus: int = 0, name: Optional[str] = None
) -> ChowPresentation:
    """P^n: one hyperplane generator h with h^{n+1} = 0 and deg(h^n) = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ring = RingContext(
        [gen], [1], modulus=modulus, dimension=n,
        rules=[(Monomial([(0, n + 1)]), {})],
    )
    h = ring.gen(gen)
    basis = [(Monomial([(0, d)]) if d else MONOMIAL_ONE,) for d in range(n + 1)]
    tangent = (ring.one() + h) ** (n + 1)
    return ChowPresentation(
        kind="pspace",
        ring=ring,
        roles={gen: ROLE_HYPERPLANE},
        basis=basis,
        degree_table={Monomial([(0, n)]) if n else MONOMIAL_ONE: 1},
        degree_total=True,
        tangent=tangent,
        provenance={"constructor": "projective_space", "n": n, "cellular": True},
        name=name or f"P{n}",
    )


def _unique_names(a: Sequence[str], b: Sequence[str]) -> tuple[dict, dict]:
    clash = set(a) & set(b)
    used: set[str] = set()

    def place(name: str, suffix: str) -> str:
        candidate = f"{name}{suffix}" if suffix else name
        while candidate in used:
            candidate += "'"
        used.add(candidate)
        return candidate

    ra = {n: place(n, "_1" if n in clash else "") for n in a}
    rb = {n: place(n, "_2" if n in clash else "") for n in b}
    return ra, rb


def product(X: ChowPresentation, Y: ChowPresentation, name: Optional[str] = None) -> ChowPresentation:
    """X x Y with the monomial product basis and multiplied degree/tangent."""
    if X.ring.modulus != Y.ring.modulus:
        raise ContextMismatch("factors have different coefficient rings")
    ra, rb = _unique_names(X.ring.names, Y.ring.names)
    names = [ra[n] for n in X.ring.names] + [rb[n] for n in Y.ring.names]
    codegrees = list(X.ring.codegrees) + list(Y.ring.codegrees)
    shift = len(X.ring.names)

    def lift_mono(m: Monomial, offset: int) -> Monomial:
        return Monomial([(i + offset, e) for i, e in m.exps])

    rules = []
    for r in X.ring.rules:
        rules.append((lift_mono(r.lead, 0), {lift_mono(m, 0): c for m, c in r.replacement}))
    for r in Y.ring.rules:
        rules.append((lift_mono(r.lead, shift), {lift_mono(m, shift): c for m, c in r.replacement}))
    dim = X.dim + Y.dim
    ring = RingContext(names, codegrees, modulus=X.ring.modulus, dimension=dim, rules=rules)

    basis: list[tuple[Monomial, ...]] = []
    for d in range(dim + 1):
        here = []
        for dx in range(0, min(d, X.dim) + 1):
            dy = d - dx
            if dy > Y.dim:
                continue
            for mx in X.basis_of(dx):
                for my in Y.basis_of(dy):
                    here.append(lift_mono(mx, 0).mul(lift_mono(my, shift)))
        basis.append(tuple(sorted(here, key=ring._mkey)))

    degree_table = None
    degree_total = False
    if X.degree_table is not None and Y.degree_table is not None:
        degree_table = {}
        for mx, vx in X.degree_table.items():
            for my, vy in Y.degree_table.items():
                degree_table[lift_mono(mx, 0).mul(lift_mono(my, shift))] = vx * vy
        degree_total = X.degree_total and Y.degree_total

    tangent = None
    if X.tangent is not None and Y.tangent is not None:
        tx = ring.from_table({lift_mono(m, 0): c for m, c in X.tangent.table.items()})
        ty = ring.from_table({lift_mono(m, shift): c for m, c in Y.tangent.table.items()})
        tangent = tx * ty

    roles = {ra[n]: X.roles.get(n, ROLE_AMBIENT) for n in X.ring.names}
    roles.update({rb[n]: Y.roles.get(n, ROLE_AMBIENT) for n in Y.ring.names})
    return ChowPresentation(
        kind="product",
        ring=ring,
        roles=roles,
        basis=basis,
        degree_table=degree_table,
        degree_total=degree_total,
        tangent=tangent,
        factors=(X, Y),
        renames=(ra, rb),
        provenance={
            "constructor": "product",
            "factors": [X.name, Y.name],
            "cellular": X.is_cellular() and Y.is_cellular(),
        },
        name=name or f"{X.name}x{Y.name}",
    )


def projective_bundle(
    X: ChowPresentation,
    roots: BundleRoots,
    fiber_gen: str = "xi",
    name: Optional[str] = None,
) -> ChowPresentation:
    """P(E) -> X for E with the given Chern roots (all signs +, rank >= 1)."""
    if roots.ring is not X.ring:
        raise ContextMismatch("roots must live on the base presentation")
    if any(s != 1 for s, _ in roots.entries):
        raise ValueError("projective bundle needs honest (all +) roots")
    r = roots.rank
    if r < 1:
        raise ValueError("bundle rank must be >= 1")
    root_classes = roots.positive_classes()

    while fiber_gen in X.ring.names:
        fiber_gen += "'"
    names = list(X.ring.names) + [fiber_gen]
    codegrees = list(X.ring.codegrees) + [1]
    xi_idx = len(X.ring.names)
    dim = X.dim + r - 1

    rules = [(rule.lead, dict(rule.replacement)) for rule in X.ring.rules]
    grothendieck: dict[Monomial, int] = {}
    for i in range(1, r + 1):
        ci = elementary_symmetric(root_classes, i)
        for m, c in ci.table.items():
            t = m.mul(Monomial([(xi_idx, r - i)]))
            grothendieck[t] = grothendieck.get(t, 0) - c
    rules.append((Monomial([(xi_idx, r)]), grothendieck))
    ring = RingContext(names, codegrees, modulus=X.ring.modulus, dimension=dim, rules=rules)

    basis: list[tuple[Monomial, ...]] = []
    for d in range(dim + 1):
        here = []
        for k in range(0, min(r - 1, d) + 1):
            for m in X.basis_of(d - k):
                here.append(m.mul(Monomial([(xi_idx, k)])) if k else m)
        basis.append(tuple(sorted(here, key=ring._mkey)))

    # Segre classes of the bundle on the base: s(E) = 1/c(E).
    from .rings import inverse_series

    ctotal = X.ring.one()
    for c in root_classes:
        ctotal = ctotal * (X.ring.one() + c)
    sseries = inverse_series(ctotal, up_to=X.dim)
    segre = [sseries.homogeneous_part(k) for k in range(X.dim + 1)]

    degree_table = None
    if X.degree_table is not None:
        degree_table = {}
        for m, v in X.degree_table.items():
            degree_table[m.mul(Monomial([(xi_idx, r - 1)])) if r > 1 else m] = v

    tangent = None
    if X.tangent is not None:
        t = ring.from_table(dict(X.tangent.table))
        xi = ring.gen(fiber_gen)
        rel = ring.one()
        for c in root_classes:
            rel = rel * (ring.one() + xi + ring.from_table(dict(c.table)))
        tangent = t * rel

    roles = dict(X.roles)
    roles[fiber_gen] = ROLE_HYPERPLANE
    pres = ChowPresentation(
        kind="bundle",
        ring=ring,
        roles=roles,
        basis=basis,
        degree_table=degree_table,
        degree_total=X.degree_total,
        tangent=tangent,
        base=X,
        provenance={
            "constructor": "projective_bundle",
            "base": X.name,
            "rank": r,
            "fiber_generator": fiber_gen,
            "cellular": X.is_cellular(),
            "_segre": segre,
        },
        name=name or f"P({X.name};r{r})",
    )
    return pres


def blow_up(
    X: ChowPresentation,
    center: CenterData,
    exceptional_gen: str = "e",
    tangent: Optional[GradedClass] = None,
    extra_rules: Iterable[tuple[GradedClass, GradedClass]] = (),
    name: Optional[str] = None,
) -> ChowPresentation:
    """Blow-up of X along a center satisfying the coverage requirement.

    Emits the flattened rewrite system:

    * e*g -> e*res(g) for every generator whose restriction differs from it;
    * e*m -> 0 for every restriction-fixed basis monomial m of codegree
      above dim Z (classes of the center vanish above its dimension);
    * e^r -> (-1)^{r-1} [Z] + sum_{j=1}^{r-1} (-1)^{j+r-1} c_{r-j}(N) e^j,
      which folds the top fiber power back into the ambient component.
    """
    if center.fundamental.ring is not X.ring:
        raise ContextMismatch("center data must live on the ambient presentation")
    r = center.codim
    if r < 2:
        raise CoverageError("blow-up centers must have codimension >= 2")
    if center.roots.rank != r:
        raise CoverageError(
            f"codimension mismatch: [Z] has codegree {r} but roots have rank {center.roots.rank}"
        )
    dim_z = X.dim - r
    if dim_z < 0:
        raise CoverageError("center codimension exceeds the ambient dimension")

    # Restriction as a ring endomorphism of the ambient presentation.
    res_images: dict[str, GradedClass] = {}
    for gname in X.ring.names:
        img = center.restriction.get(gname)
        if img is None:
            res_images[gname] = X.gen(gname)
        else:
            if img.ring is not X.ring:
                raise ContextMismatch(f"restriction image of {gname!r} lives elsewhere")
            if not img.is_zero() and img.codegree != X.ring.codegrees[X.ring.gen_index(gname)]:
                raise CoverageError(f"restriction image of {gname!r} has wrong codegree")
            res_images[gname] = img

    def res(c: GradedClass) -> GradedClass:
        return evaluate(c, res_images, X.ring)

    for gname, img in res_images.items():
        if res(img) != img:
            raise CoverageError(
                f"restriction map is not idempotent on generator {gname!r}"
            )

    def res_fixed_mono(m: Monomial) -> bool:
        return all(res_images[X.ring.names[i]] == X.gen(X.ring.names[i]) for i, _ in m.exps)

    while exceptional_gen in X.ring.names:
        exceptional_gen += "'"
    names = list(X.ring.names) + [exceptional_gen]
    codegrees = list(X.ring.codegrees) + [1]
    e_idx = len(X.ring.names)
    e_mono = Monomial([(e_idx, 1)])

    rules: list[tuple[Monomial, dict[Monomial, int]]] = [
        (rule.lead, dict(rule.replacement)) for rule in X.ring.rules
    ]
    # restriction rules
    for gname in X.ring.names:
        img = res_images[gname]
        if img == X.gen(gname):
            continue
        gi = X.ring.gen_index(gname)
        lead = e_mono.mul(Monomial([(gi, 1)]))
        repl = {e_mono.mul(m): c for m, c in img.table.items()}
        rules.append((lead, repl))
    # dimension-kill rules
    for d in range(dim_z + 1, X.dim + 1):
        for m in X.basis_of(d):
            if res_fixed_mono(m):
                rules.append((e_mono.mul(m), {}))
    # fold rule for e^r
    restricted_roots = [res(c) for c in center.roots.positive_classes()]
    fold: dict[Monomial, int] = {}
    sign_z = 1 if (r - 1) % 2 == 0 else -1
    for m, c in center.fundamental.table.items():
        fold[m] = fold.get(m, 0) + sign_z * c
    for j in range(1, r):
        cj = elementary_symmetric(restricted_roots, r - j)
        sgn = 1 if (j + r - 1) % 2 == 0 else -1
        ej = Monomial([(e_idx, j)])
        for m, c in cj.table.items():
            t = m.mul(ej)
            fold[t] = fold.get(t, 0) + sgn * c
    rules.append((Monomial([(e_idx, r)]), fold))
    # scenario-declared extra rules
    for lead_cls, repl_cls in extra_rules:
        if isinstance(lead_cls, GradedClass):
            if len(lead_cls.table) != 1 or set(lead_cls.table.values()) != {1}:
                raise CoverageError("extra rule lead must be a single monic monomial")
            lead = next(iter(lead_cls.table))
        else:
            lead = lead_cls
        rules.append((lead, dict(repl_cls.table)))

    ring = RingContext(
        names, codegrees, modulus=X.ring.modulus, dimension=X.dim, rules=rules
    )

    # Center-side basis: monomials spanning the restricted image, per codegree.
    center_basis: list[list[Monomial]] = [[] for _ in range(dim_z + 1)]
    seen: set[Monomial] = set()
    for d in range(dim_z + 1):
        for b in X.basis_of(d):
            img = res(GradedClass(X.ring, {b: 1}))
            for m in img.table:
                if m in seen:
                    continue
                seen.add(m)
                lifted = ring.from_table({e_mono.mul(m): 1})
                if list(lifted.table.keys()) == [e_mono.mul(m)]:
                    center_basis[d].append(m)

    basis: list[tuple[Monomial, ...]] = []
    for d in range(X.dim + 1):
        here = list(X.basis_of(d))
        for k in range(1, r):
            if 0 <= d - k <= dim_z:
                for m in center_basis[d - k]:
                    here.append(m.mul(Monomial([(e_idx, k)])))
        basis.append(tuple(sorted(here, key=ring._mkey)))

    degree_table = dict(X.degree_table) if X.degree_table is not None else None

    roles = dict(X.roles)
    roles[exceptional_gen] = ROLE_EXCEPTIONAL
    return ChowPresentation(
        kind="blowup",
        ring=ring,
        roles=roles,
        basis=basis,
        degree_table=degree_table,
        degree_total=X.degree_total,
        tangent=tangent,
        base=X,
        center=center,
        provenance={
            "constructor": "blow_up",
            "base": X.name,
            "codim": r,
            "center": center.name,
            "exceptional_generator": exceptional_gen,
            "cellular": X.is_cellular(),
        },
        name=name or f"Bl_{center.name}({X.name})",
    )


def generic_context(
    generators: Sequence[tuple[str, int]],
    dimension: int,
    rules: Iterable[tuple[GradedClass, GradedClass]] = (),
    modulus: int = 0,
    degrees: Optional[Mapping[Monomial, int]] = None,
    tangent_table: Optional[Mapping[Monomial, int]] = None,
    name: Optional[str] = None,
    raw_rules: Iterable[tuple[Monomial, Mapping[Monomial, int]]] = (),
) -> ChowPresentation:
    """A presentation with declared generators and oriented rules, a partial
    (or absent) degree functional, and truncation above the dimension."""
    names = [n for n, _ in generators]
    codegs = [d for _, d in generators]
    staged = list(raw_rules)
    for lead_cls, repl_cls in rules:
        if len(lead_cls.table) != 1 or set(lead_cls.table.values()) != {1}:
            raise ValueError("generic rule lead must be a single monic monomial")
        staged.append((next(iter(lead_cls.table)), dict(repl_cls.table)))
    ring = RingContext(names, codegs, modulus=modulus, dimension=dimension, rules=staged)
    basis = enumerate_basis(ring)
    tangent = None
    if tangent_table is not None:
        tangent = ring.from_table(dict(tangent_table))
    degree_table = dict(degrees) if degrees is not None else None
    # the declared table is total exactly when it covers the top basis
    degree_total = degree_table is not None and all(
        m in degree_table for m in basis[dimension]
    )
    return ChowPresentation(
        kind="generic",
        ring=ring,
        roles={n: ROLE_AMBIENT for n in names},
        basis=basis,
        degree_table=degree_table,
        degree_total=degree_total,
        tangent=tangent,
        provenance={"constructor": "generic_context", "cellular": False},
        name=name or "generic",
    )
