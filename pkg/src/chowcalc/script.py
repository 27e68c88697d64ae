"""The scenario DSL: a small s-expression language for building ring
contexts, binding classes, and running assertions, plus its total parser
and the evaluator that records per-assertion verdicts.

Grammar (informal):

    form      := context | binding | declaration | assertion | report
    context   := (pspace [NAME] N [(mod P)])
               | (product NAME X Y)
               | (pbundle NAME BASE XI (roots expr ...))
               | (blowup NAME BASE E (class expr) (roots expr ...)
                         [(restrict (GEN expr) ...)] [(rules (LEAD REPL) ...)])
               | (generic NAME DIM [(mod P)] (gens (NAME CODEG) ...)
                         [(rules (LEAD REPL) ...)] [(degrees (MONO INT) ...)]
                         [(tangent expr)])
               | (milnor NAME M [(rho-height T)]) | (flexible NAME N)
    binding   := (let NAME expr) | (in-context NAME)
    declaration := (declare-ideal NAME expr ...) | (declare-rules NAME (LEAD REPL) ...)
    assertion := (assert-zero TAG expr [(modulo NAME ...)])
               | (assert-equal TAG expr expr [(modulo NAME ...)])
               | (assert-numzero TAG expr [(modulo NAME ...)])
               | (assert-numequal TAG expr expr [(modulo NAME ...)])
               | (assert-deg TAG expr INT)
               | (assert-kernel-dim TAG CTX CODEG PRIME INT)
               | (assert-comult TAG SET expr expr)
    report    := (report-value NAME expr)
    TAG       := (lemma ID) | (trivial) | (derived)

    The num- variants check the identity against every basis class of
    complementary codegree, the right notion for claims that hold only up
    to numerical equivalence below the top codegree.  Expression heads:
    add sub neg mul pow scale part, roots, chern chern-total segre-total,
    steenrod ppow embedded embedded-total dclass homological, pullback
    pushforward tangent inv-total, qapply rset.

Atoms are integers, identifiers, and subset literals like {0 1 2}.
Comments run from ';' to end of line.  Parsing is total: it either returns
a Script or raises ParseError with a line/column position, and printing a
parsed script reparses to an equal Script.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from . import characteristic as chops
from . import milnor as miln
from .numeric import (
    modp_in_rowspan,
    pairing_report,
    rational_in_rowspan,
)
from .report import ERROR, FAIL, PASS, AssertionResult, Report
from .rings import GradedClass, RingContext
from .varieties import (
    BundleRoots,
    CenterData,
    ChowPresentation,
    blow_up,
    generic_context,
    product,
    projective_bundle,
    projective_space,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class EvalError(Exception):
    pass


# ---------------------------------------------------------------------------
# Tokenizer / reader / printer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r,":
            col += 1
            i += 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "(){}":
            tokens.append(_Token(ch, line, col))
            col += 1
            i += 1
            continue
        j = i
        while j < n and text[j] not in " \t\r\n,(){};":
            j += 1
        tokens.append(_Token(text[i:j], line, col))
        col += j - i
        i = j
    return tokens


def _atom(tok: _Token):
    t = tok.text
    try:
        return int(t)
    except ValueError:
        return t


@dataclass
class Script:
    forms: list
    source: str = ""

    def __eq__(self, other):
        return isinstance(other, Script) and self.forms == other.forms


def parse_script(text: str) -> Script:
    """Total parse: returns a Script or raises ParseError with a position."""
    tokens = _tokenize(text)
    pos = 0

    def peek() -> Optional[_Token]:
        return tokens[pos] if pos < len(tokens) else None

    def read():
        nonlocal pos
        tok = peek()
        if tok is None:
            last = tokens[-1] if tokens else _Token("", 1, 1)
            raise ParseError("unexpected end of input", last.line, last.col)
        pos += 1
        if tok.text == "(":
            items = []
            while True:
                nxt = peek()
                if nxt is None:
                    raise ParseError("unbalanced '(': missing ')'", tok.line, tok.col)
                if nxt.text == ")":
                    pos += 1
                    return items
                items.append(read())
        if tok.text == "{":
            items = []
            while True:
                nxt = peek()
                if nxt is None:
                    raise ParseError("unbalanced '{': missing '}'", tok.line, tok.col)
                if nxt.text == "}":
                    pos += 1
                    return frozenset(items)
                v = read()
                if not isinstance(v, int):
                    raise ParseError("subset literals hold integers", nxt.line, nxt.col)
                items.append(v)
        if tok.text in (")", "}"):
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
        return _atom(tok)

    forms = []
    while peek() is not None:
        form = read()
        if not isinstance(form, list):
            raise ParseError("top-level forms must be parenthesized", 1, 1)
        forms.append(form)
    return Script(forms, source=text)


def _print_node(node) -> str:
    if isinstance(node, list):
        return "(" + " ".join(_print_node(x) for x in node) + ")"
    if isinstance(node, frozenset):
        return "{" + " ".join(str(x) for x in sorted(node)) + "}"
    return str(node)


def print_script(script: Script) -> str:
    return "\n".join(_print_node(f) for f in script.forms) + "\n"


# ---------------------------------------------------------------------------
# Evaluation environment
# ---------------------------------------------------------------------------

@dataclass
class _IdealDecl:
    gens: list


@dataclass
class _RulesDecl:
    rules: list  # (lead Monomial, replacement table)


@dataclass
class Env:
    bindings: dict = field(default_factory=dict)
    current: object = None
    pres_by_ring: dict = field(default_factory=dict)

    def define(self, name: str, value) -> None:
        self.bindings[name] = value
        if isinstance(value, ChowPresentation):
            self.pres_by_ring[id(value.ring)] = value

    def lookup(self, name: str):
        if name in self.bindings:
            return self.bindings[name]
        cur = self.current
        if isinstance(cur, ChowPresentation) and name in cur.ring.names:
            return cur.gen(name)
        if isinstance(cur, miln.MilnorRing):
            if name == "eta" and cur.has_eta:
                return cur.eta()
            if name == "rho":
                return cur.rho_elem()
            if name.startswith("r") and name[1:].isdigit():
                return cur.r(int(name[1:]))
        raise EvalError(f"undefined identifier {name!r}")

    def presentation_of(self, c: GradedClass) -> ChowPresentation:
        pres = self.pres_by_ring.get(id(c.ring))
        if pres is None:
            raise EvalError("class does not belong to a known presentation")
        return pres


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise EvalError(msg)


def _head(form) -> str:
    _expect(isinstance(form, list) and form and isinstance(form[0], str), "malformed form")
    return form[0]


def _clauses(args: list) -> dict[str, list]:
    out: dict[str, list] = {}
    for a in args:
        _expect(isinstance(a, list) and a and isinstance(a[0], str), "expected a clause")
        out.setdefault(a[0], []).append(a[1:])
    return out


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

def _as_class(env: Env, value) -> GradedClass:
    if isinstance(value, GradedClass):
        return value
    if isinstance(value, int):
        cur = env.current
        _expect(isinstance(cur, ChowPresentation), "integer scalar needs a ring context")
        return cur.scalar(value)
    raise EvalError(f"expected a class, got {type(value).__name__}")


def _eval_roots(env: Env, form, report: Report) -> BundleRoots:
    _expect(isinstance(form, list) and form and form[0] == "roots", "expected (roots ...)")
    cur = env.current
    _expect(isinstance(cur, ChowPresentation), "roots need a ring context")
    classes = [_as_class(env, eval_expr(env, a, report)) for a in form[1:]]
    return BundleRoots.plus(classes, ring=cur.ring)


def eval_expr(env: Env, node, report: Report):
    if isinstance(node, int):
        return node
    if isinstance(node, frozenset):
        return node
    if isinstance(node, str):
        return env.lookup(node)
    _expect(isinstance(node, list) and node, "empty expression")
    head = node[0]
    args = node[1:]

    def ev(x):
        return eval_expr(env, x, report)

    if head == "add":
        vals = [ev(a) for a in args]
        _expect(bool(vals), "(add) needs arguments")
        if all(isinstance(v, int) for v in vals):
            return sum(vals)
        acc = _as_class(env, vals[0])
        for v in vals[1:]:
            acc = acc + _as_class(env, v)
        return acc
    if head == "sub":
        _expect(len(args) == 2, "(sub a b)")
        a, b = ev(args[0]), ev(args[1])
        if isinstance(a, int) and isinstance(b, int):
            return a - b
        return _as_class(env, a) - _as_class(env, b)
    if head == "neg":
        _expect(len(args) == 1, "(neg a)")
        v = ev(args[0])
        return -v if isinstance(v, int) else -_as_class(env, v)
    if head == "mul":
        vals = [ev(a) for a in args]
        _expect(bool(vals), "(mul) needs arguments")
        if all(isinstance(v, int) for v in vals):
            out = 1
            for v in vals:
                out *= v
            return out
        if any(isinstance(v, miln.MilnorElement) for v in vals):
            acc = vals[0]
            for v in vals[1:]:
                acc = acc * v
            return acc
        acc = _as_class(env, vals[0])
        for v in vals[1:]:
            acc = acc * _as_class(env, v)
        return acc
    if head == "pow":
        _expect(len(args) == 2 and isinstance(args[1], int), "(pow a n)")
        base = ev(args[0])
        if isinstance(base, int):
            return base ** args[1]
        return _as_class(env, base) ** args[1]
    if head == "scale":
        _expect(len(args) == 2, "(scale k a)")
        k = ev(args[0])
        _expect(isinstance(k, int), "(scale k a) needs integer k")
        return _as_class(env, ev(args[1])).scale(k)
    if head == "part":
        _expect(len(args) == 2 and isinstance(args[0], int), "(part d a)")
        return _as_class(env, ev(args[1])).homogeneous_part(args[0])
    if head == "roots":
        return _eval_roots(env, node, report)
    if head == "chern-total":
        _expect(len(args) == 1, "(chern-total (roots ...))")
        return chops.chern_total(_eval_roots(env, args[0], report))
    if head == "chern":
        _expect(len(args) == 2 and isinstance(args[0], int), "(chern j (roots ...))")
        return chops.chern_class(_eval_roots(env, args[1], report), args[0])
    if head == "segre-total":
        _expect(len(args) == 1, "(segre-total (roots ...))")
        return chops.segre_total(_eval_roots(env, args[0], report))
    if head == "steenrod":
        _expect(len(args) == 1, "(steenrod a)")
        c = _as_class(env, ev(args[0]))
        return chops.steenrod_total(env.presentation_of(c), c)
    if head == "ppow":
        _expect(len(args) == 2 and isinstance(args[0], int), "(ppow i a)")
        c = _as_class(env, ev(args[1]))
        return chops.reduced_power(env.presentation_of(c), c, args[0])
    if head == "embedded":
        _expect(len(args) == 3 and isinstance(args[0], int), "(embedded i S (roots ...))")
        s = _as_class(env, ev(args[1]))
        roots = _eval_roots(env, args[2], report)
        return chops.embedded_power(env.presentation_of(s), s, roots, args[0])
    if head == "embedded-total":
        _expect(len(args) == 2, "(embedded-total S (roots ...))")
        s = _as_class(env, ev(args[0]))
        roots = _eval_roots(env, args[1], report)
        return chops.steenrod_embedded(env.presentation_of(s), s, roots)
    if head == "dclass":
        _expect(len(args) == 2 and isinstance(args[0], int), "(dclass p (roots ...))")
        report.note(chops.D_CLASS_CONVENTION_NOTE)
        return chops.d_class(_eval_roots(env, args[1], report), args[0])
    if head == "homological":
        _expect(len(args) == 2 and isinstance(args[0], int), "(homological i a)")
        report.note(chops.D_CLASS_CONVENTION_NOTE)
        c = _as_class(env, ev(args[1]))
        return chops.homological_power(env.presentation_of(c), c, args[0])
    if head == "tangent":
        _expect(len(args) == 1 and isinstance(args[0], str), "(tangent CTX)")
        pres = env.lookup(args[0])
        _expect(isinstance(pres, ChowPresentation), "tangent needs a presentation")
        return pres.tangent_class()
    if head == "inv-total":
        _expect(len(args) == 1, "(inv-total a)")
        from .rings import inverse_series

        return inverse_series(_as_class(env, ev(args[0])))
    if head == "pullback":
        _expect(len(args) == 2 and isinstance(args[0], str), "(pullback CTX a)")
        pres = env.lookup(args[0])
        _expect(isinstance(pres, ChowPresentation), "pullback target must be a presentation")
        return pres.pullback(_as_class(env, ev(args[1])))
    if head == "pushforward":
        _expect(len(args) == 2 and isinstance(args[0], str), "(pushforward CTX a)")
        pres = env.lookup(args[0])
        _expect(isinstance(pres, ChowPresentation), "pushforward source must be a presentation")
        return pres.pushforward(_as_class(env, ev(args[1])))
    if head == "qapply":
        _expect(len(args) == 2 and isinstance(args[0], int), "(qapply i x)")
        x = ev(args[1])
        _expect(isinstance(x, miln.MilnorElement), "(qapply) needs a Milnor element")
        return miln.q_apply(args[0], x)
    if head == "rset":
        _expect(len(args) == 1 and isinstance(args[0], frozenset), "(rset {i ...})")
        cur = env.current
        _expect(isinstance(cur, miln.MilnorRing), "(rset) needs a Milnor ring context")
        return cur.r_set(sorted(args[0]))
    raise EvalError(f"unknown form head {head!r}")


# ---------------------------------------------------------------------------
# Identity verification modulo declared rules/ideals
# ---------------------------------------------------------------------------

def _extended_context(ctx: RingContext, extra_rules) -> RingContext:
    rules = [(r.lead, dict(r.replacement)) for r in ctx.rules]
    rules.extend((lead, dict(repl)) for lead, repl in extra_rules)
    return RingContext(
        ctx.names, ctx.codegrees, modulus=ctx.modulus,
        dimension=ctx.dimension, rules=rules, step_budget=ctx.step_budget,
    )


def verify_identity(
    env: Env,
    lhs: GradedClass,
    rhs: GradedClass,
    modulo: list = (),
) -> tuple[bool, Optional[GradedClass]]:
    """Pass iff lhs - rhs reduces to zero modulo the declared oriented rules
    and ideal generators; on failure the irreducible remainder is returned
    as the witness."""
    if lhs.ring is not rhs.ring:
        raise EvalError("identity sides live in different contexts")
    ctx = lhs.ring
    ideals: list[GradedClass] = []
    extra_rules = []
    for decl in modulo:
        if isinstance(decl, _IdealDecl):
            ideals.extend(decl.gens)
        elif isinstance(decl, _RulesDecl):
            extra_rules.extend(decl.rules)
        else:
            raise EvalError("modulo clause names must refer to declared sets")
    work_ctx = _extended_context(ctx, extra_rules) if extra_rules else ctx

    def reduce(c: GradedClass) -> GradedClass:
        if work_ctx is ctx:
            return c
        return GradedClass(ctx, work_ctx._nf(c.table))

    diff = reduce(lhs - rhs)
    if diff.is_zero():
        return True, None
    if not ideals:
        return False, diff
    pres = env.presentation_of(lhs)
    gens = [reduce(g) for g in ideals if g.ring is ctx]
    if len(gens) != len(ideals):
        raise EvalError("ideal generators live in a different context")
    p = ctx.modulus
    residual_parts = []
    for d in sorted(diff.codegrees()):
        part = diff.homogeneous_part(d)
        rows = []
        for g in gens:
            for gd in sorted(g.codegrees()):
                gp = g.homogeneous_part(gd)
                if gd > d:
                    continue
                for m in pres.basis_classes(d - gd):
                    rows.append(pres.coordinates(reduce(gp * m), d))
        vec = pres.coordinates(part, d)
        if p:
            ok, res = modp_in_rowspan(rows, vec, p)
        else:
            ok, res = rational_in_rowspan(rows, vec)
        if not ok:
            residual = pres.zero()
            for coeff, m in zip(res, pres.basis_of(d)):
                num = coeff if isinstance(coeff, int) else coeff.numerator
                if num and (isinstance(coeff, int) or coeff.denominator == 1):
                    residual = residual + ctx.from_table({m: int(num)})
            residual_parts.append(residual if not residual.is_zero() else part)
    if residual_parts:
        witness = residual_parts[0]
        for extra in residual_parts[1:]:
            witness = witness + extra
        return False, witness
    return True, None


def verify_numerical(
    env: Env,
    lhs: GradedClass,
    rhs: GradedClass,
    modulo: list = (),
) -> tuple[bool, Optional[str]]:
    """Pass iff lhs - rhs pairs to zero against every basis class of
    complementary codegree, modulo the declared sets: the products
    (lhs - rhs) * w must land in the declared ideal span at top codegree.

    This is the right notion for identities claimed only up to numerical
    equivalence below the top codegree.
    """
    if lhs.ring is not rhs.ring:
        raise EvalError("identity sides live in different contexts")
    pres = env.presentation_of(lhs)
    n = pres.dim
    diff = lhs - rhs
    for d in sorted(diff.codegrees()):
        part = diff.homogeneous_part(d)
        for w in pres.basis_classes(n - d):
            ok, witness = verify_identity(env, part * w, lhs.ring.zero(), modulo)
            if not ok:
                return False, f"{witness} (pairing against {w})"
    return True, None


# ---------------------------------------------------------------------------
# Form evaluation
# ---------------------------------------------------------------------------

def _parse_tag(form) -> str:
    _expect(isinstance(form, list) and form and isinstance(form[0], str), "assertions need a provenance tag")
    kind = form[0]
    if kind == "lemma":
        _expect(len(form) == 2 and isinstance(form[1], str), "(lemma ID)")
        return f"lemma:{form[1]}"
    if kind in ("trivial", "derived"):
        _expect(len(form) == 1, f"({kind})")
        return kind
    raise EvalError(f"unknown provenance tag {kind!r}")


def _mod_clause(env: Env, clauses: list) -> list:
    decls = []
    for c in clauses:
        _expect(isinstance(c, list) and c and c[0] == "modulo", "expected (modulo NAME ...)")
        for name in c[1:]:
            _expect(isinstance(name, str), "(modulo) takes declared names")
            decls.append(env.lookup(name))
    return decls


def _eval_rule_pairs(env: Env, pairs, report: Report):
    rules = []
    for pair in pairs:
        _expect(isinstance(pair, list) and len(pair) == 2, "rule clause entries are (LEAD REPL)")
        lead_c = _as_class(env, eval_expr(env, pair[0], report))
        repl_c = _as_class(env, eval_expr(env, pair[1], report))
        _expect(
            len(lead_c.table) == 1 and set(lead_c.table.values()) == {1},
            "rule lead must be a single monic monomial",
        )
        rules.append((next(iter(lead_c.table)), dict(repl_c.table)))
    return rules


def _eval_context_form(env: Env, form: list, report: Report) -> None:
    head = _head(form)
    args = form[1:]
    if head == "pspace":
        if args and isinstance(args[0], int):
            name = None
            n = args[0]
            rest = args[1:]
        else:
            _expect(len(args) >= 2 and isinstance(args[0], str) and isinstance(args[1], int), "(pspace NAME N)")
            name, n, rest = args[0], args[1], args[2:]
        clauses = _clauses(rest)
        mod = clauses.get("mod", [[0]])[0][0]
        pres = projective_space(n, modulus=mod, name=name)
        env.define(pres.name, pres)
        env.current = pres
        return
    if head == "product":
        _expect(len(args) == 3, "(product NAME X Y)")
        X = env.lookup(args[1])
        Y = env.lookup(args[2])
        pres = product(X, Y, name=args[0])
        env.define(args[0], pres)
        env.current = pres
        return
    if head == "pbundle":
        _expect(len(args) >= 4, "(pbundle NAME BASE XI (roots ...))")
        name, base_name, xi = args[0], args[1], args[2]
        base = env.lookup(base_name)
        saved = env.current
        env.current = base
        try:
            roots = _eval_roots(env, args[3], report)
        finally:
            env.current = saved
        pres = projective_bundle(base, roots, fiber_gen=xi, name=name)
        env.define(name, pres)
        env.current = pres
        return
    if head == "blowup":
        _expect(len(args) >= 5, "(blowup NAME BASE E (class ...) (roots ...) ...)")
        name, base_name, egen = args[0], args[1], args[2]
        base = env.lookup(base_name)
        saved = env.current
        env.current = base
        try:
            clauses = _clauses(args[3:])
            _expect("class" in clauses and "roots" in clauses, "blowup needs (class ...) and (roots ...)")
            fundamental = _as_class(env, eval_expr(env, clauses["class"][0][0], report))
            roots = _eval_roots(env, ["roots", *clauses["roots"][0]], report)
            restriction = {}
            for entry in clauses.get("restrict", [[]])[0]:
                _expect(isinstance(entry, list) and len(entry) == 2, "(restrict (GEN expr) ...)")
                restriction[entry[0]] = _as_class(env, eval_expr(env, entry[1], report))
        finally:
            env.current = saved
        center = CenterData(fundamental=fundamental, roots=roots, restriction=restriction, name=f"Z({name})")
        pres = blow_up(base, center, exceptional_gen=egen, extra_rules=[], name=name)
        if clauses.get("rules"):
            # declared rules mention the new exceptional generator, so they are
            # evaluated on the freshly built presentation and the ring rebuilt
            env.current = pres
            try:
                extra = _eval_rule_pairs(env, clauses["rules"][0], report)
            finally:
                env.current = saved
            pres = blow_up(
                base, center, exceptional_gen=egen,
                extra_rules=[
                    (GradedClass(pres.ring, {lead: 1}), GradedClass(pres.ring, dict(repl)))
                    for lead, repl in extra
                ],
                name=name,
            )
        env.define(name, pres)
        env.current = pres
        return
    if head == "generic":
        _expect(len(args) >= 2 and isinstance(args[0], str) and isinstance(args[1], int), "(generic NAME DIM ...)")
        name, dim = args[0], args[1]
        clauses = _clauses(args[2:])
        mod = clauses.get("mod", [[0]])[0][0]
        _expect("gens" in clauses, "generic needs a (gens ...) clause")
        gens = []
        for g in clauses["gens"][0]:
            _expect(isinstance(g, list) and len(g) == 2, "(gens (NAME CODEG) ...)")
            gens.append((g[0], g[1]))
        pres = generic_context([(n, d) for n, d in gens], dim, modulus=mod, name=name)
        env.define(name, pres)
        env.current = pres
        raw_rules = []
        if "rules" in clauses:
            raw_rules = _eval_rule_pairs(env, clauses["rules"][0], report)
        degrees = {}
        if "degrees" in clauses:
            for entry in clauses["degrees"][0]:
                _expect(isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], int), "(degrees (MONO INT) ...)")
                mono_cls = _as_class(env, eval_expr(env, entry[0], report))
                _expect(len(mono_cls.table) == 1 and set(mono_cls.table.values()) == {1}, "degree entries need monic monomials")
                degrees[next(iter(mono_cls.table))] = entry[1]
        tangent_tbl = None
        if "tangent" in clauses:
            t = _as_class(env, eval_expr(env, clauses["tangent"][0][0], report))
            tangent_tbl = dict(t.table)
        if raw_rules or degrees or tangent_tbl is not None:
            pres = generic_context(
                [(n, d) for n, d in gens], dim, modulus=mod, name=name,
                raw_rules=raw_rules, degrees=degrees or None, tangent_table=tangent_tbl,
            )
        env.define(name, pres)
        env.current = pres
        return
    if head == "milnor":
        _expect(len(args) >= 2 and isinstance(args[1], int), "(milnor NAME M ...)")
        clauses = _clauses(args[2:])
        height = clauses.get("rho-height", [[1]])[0][0]
        ia = miln.truncated_symbol_ia(height)
        ring = miln.make_ring(args[1], ia, name=args[0])
        env.define(args[0], ring)
        env.current = ring
        return
    if head == "flexible":
        _expect(len(args) == 2 and isinstance(args[1], int), "(flexible NAME N)")
        ring = miln.flexible_cohomology(args[1])
        ring.name = args[0]
        env.define(args[0], ring)
        env.current = ring
        return
    raise EvalError(f"unknown context form {head!r}")


_CONTEXT_HEADS = {"pspace", "product", "pbundle", "blowup", "generic", "milnor", "flexible"}
_ASSERT_HEADS = {
    "assert-zero", "assert-equal", "assert-numzero", "assert-numequal",
    "assert-deg", "assert-kernel-dim", "assert-comult",
}


def _eval_assertion(env: Env, form: list, report: Report, aid: str) -> AssertionResult:
    head = form[0]
    tag = _parse_tag(form[1])
    start = time.perf_counter()

    def done(verdict: str, detail: str = "", witness: Optional[str] = None) -> AssertionResult:
        ms = int((time.perf_counter() - start) * 1000)
        return AssertionResult(id=aid, verdict=verdict, tag=tag, detail=detail, witness=witness, millis=ms)

    if head == "assert-zero":
        rest = form[2:]
        mod = _mod_clause(env, [c for c in rest[1:] if isinstance(c, list) and c and c[0] == "modulo"])
        value = eval_expr(env, rest[0], report)
        if isinstance(value, miln.MilnorElement):
            ok = value.is_zero()
            return done(PASS if ok else FAIL, detail="" if ok else "element does not vanish",
                        witness=None if ok else str(value))
        c = _as_class(env, value)
        ok, witness = verify_identity(env, c, c.ring.zero(), mod)
        return done(PASS if ok else FAIL, detail="class does not vanish" if not ok else "",
                    witness=None if ok else str(witness))
    if head == "assert-equal":
        rest = form[2:]
        mod = _mod_clause(env, [c for c in rest[2:] if isinstance(c, list) and c and c[0] == "modulo"])
        a = eval_expr(env, rest[0], report)
        b = eval_expr(env, rest[1], report)
        if isinstance(a, miln.MilnorElement) or isinstance(b, miln.MilnorElement):
            ok = a == b
            return done(PASS if ok else FAIL, detail="" if ok else "elements differ",
                        witness=None if ok else f"{a} != {b}")
        a = _as_class(env, a)
        b = _as_class(env, b)
        ok, witness = verify_identity(env, a, b, mod)
        return done(PASS if ok else FAIL, detail="" if ok else "sides differ",
                    witness=None if ok else str(witness))
    if head in ("assert-numzero", "assert-numequal"):
        rest = form[2:]
        split = 1 if head == "assert-numzero" else 2
        mod = _mod_clause(env, [c for c in rest[split:] if isinstance(c, list) and c and c[0] == "modulo"])
        a = _as_class(env, eval_expr(env, rest[0], report))
        b = a.ring.zero() if head == "assert-numzero" else _as_class(env, eval_expr(env, rest[1], report))
        ok, witness = verify_numerical(env, a, b, mod)
        return done(PASS if ok else FAIL,
                    detail="" if ok else "sides differ numerically",
                    witness=None if ok else witness)
    if head == "assert-deg":
        _expect(len(form) == 4 and isinstance(form[3], int), "(assert-deg TAG expr INT)")
        c = _as_class(env, eval_expr(env, form[2], report))
        pres = env.presentation_of(c)
        got = pres.degree(c)
        want = form[3] % pres.ring.modulus if pres.ring.modulus else form[3]
        ok = got == want
        return done(PASS if ok else FAIL, detail="" if ok else f"degree {got}, wanted {want}",
                    witness=None if ok else str(got))
    if head == "assert-kernel-dim":
        _expect(len(form) == 6, "(assert-kernel-dim TAG CTX CODEG PRIME INT)")
        pres = env.lookup(form[2])
        _expect(isinstance(pres, ChowPresentation), "kernel check needs a presentation")
        rep = pairing_report(pres, form[4])
        entry = rep.codegrees[form[3]]
        kdim = len(entry.kernel)
        ok = kdim == form[5]
        return done(PASS if ok else FAIL,
                    detail="" if ok else f"kernel dimension {kdim}, wanted {form[5]}",
                    witness=None if ok else str(entry.kernel))
    if head == "assert-comult":
        _expect(len(form) == 5 and isinstance(form[2], frozenset), "(assert-comult TAG SET x y)")
        x = eval_expr(env, form[3], report)
        y = eval_expr(env, form[4], report)
        _expect(isinstance(x, miln.MilnorElement) and isinstance(y, miln.MilnorElement),
                "(assert-comult) needs Milnor elements")
        ok = miln.comult_check(sorted(form[2]), x, y)
        return done(PASS if ok else FAIL, detail="" if ok else "comultiplication identity fails")
    raise EvalError(f"unknown assertion {head!r}")


def run_scenario(script: Script, script_id: str = "script", seed: Optional[int] = None) -> Report:
    """Evaluate forms in order; assertion verdicts are recorded, evaluation
    errors become per-assertion 'error' verdicts, never a crash.

    Evaluation itself is deterministic; the seed is part of the runner
    contract (fixing it also makes emitted report bytes stable)."""
    report = Report()
    env = Env()
    counter = 0
    for idx, form in enumerate(script.forms):
        try:
            head = _head(form)
        except EvalError as exc:
            report.add(AssertionResult(id=f"{script_id}#form{idx}", verdict=ERROR, detail=str(exc)))
            continue
        if head in _ASSERT_HEADS:
            counter += 1
            aid = f"{script_id}#{counter}"
            try:
                report.add(_eval_assertion(env, form, report, aid))
            except Exception as exc:  # per-assertion error verdict, not a crash
                report.add(AssertionResult(id=aid, verdict=ERROR, tag="", detail=f"{type(exc).__name__}: {exc}"))
            continue
        try:
            if head in _CONTEXT_HEADS:
                _eval_context_form(env, form, report)
            elif head == "let":
                _expect(len(form) == 3 and isinstance(form[1], str), "(let NAME expr)")
                env.define(form[1], eval_expr(env, form[2], report))
            elif head == "in-context":
                _expect(len(form) == 2 and isinstance(form[1], str), "(in-context NAME)")
                env.current = env.lookup(form[1])
            elif head == "declare-ideal":
                _expect(len(form) >= 3 and isinstance(form[1], str), "(declare-ideal NAME expr ...)")
                gens = [_as_class(env, eval_expr(env, a, report)) for a in form[2:]]
                env.define(form[1], _IdealDecl(gens))
            elif head == "declare-rules":
                _expect(len(form) >= 3 and isinstance(form[1], str), "(declare-rules NAME (LEAD REPL) ...)")
                env.define(form[1], _RulesDecl(_eval_rule_pairs(env, form[2:], report)))
            elif head == "report-value":
                _expect(len(form) == 3 and isinstance(form[1], str), "(report-value NAME expr)")
                try:
                    val = str(eval_expr(env, form[2], report))
                except EvalError:
                    val = _print_node(form[2])  # literal payload, e.g. a matrix
                report.values[form[1]] = val
            else:
                raise EvalError(f"unknown form head {head!r}")
        except Exception as exc:
            report.add(AssertionResult(
                id=f"{script_id}#form{idx}", verdict=ERROR,
                detail=f"{type(exc).__name__}: {exc} in {_print_node(form)[:120]}",
            ))
    return report
