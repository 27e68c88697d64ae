"""Chern and Segre classes from (virtual) root data, and mod-p reduced power
operations: the total cohomological operation, the operation on embedded
fundamental classes, the tangential d-class linking cohomological and
homological operations, and the homological operations themselves.

Convention: the d-class of a line root x is 1 + x^{p-1}, so that the total
d-class of a bundle is the total Chern class when p = 2 and the degree
bookkeeping of P^i = sum_l d_l(T) . P_{i-l} is consistent.  Reports emitted
by the scenario runner flag this convention whenever d-classes are used.
"""

from __future__ import annotations

from typing import Optional

from .rings import (
    GradedClass,
    RingError,
    evaluate,
    inverse_series,
    symmetric_expand,
)
from .varieties import BundleRoots, ChowPresentation

D_CLASS_CONVENTION_NOTE = (
    "d-class convention: a line root x contributes 1 + x^(p-1); "
    "for p=2 the d-class equals the total Chern class"
)


class NotSteenrodClosed(RingError):
    """The context's relations are not stable under the total operation."""


def _check_total(c: GradedClass, what: str) -> GradedClass:
    if c.constant_term() != 1:
        raise ValueError(f"{what} must have constant term 1")
    return c


def _product_over_roots(roots: BundleRoots, power: int, bound: Optional[int]) -> GradedClass:
    ring = roots.ring
    if bound is None:
        bound = ring.dimension
    if bound is None:
        raise ValueError("need a truncation bound (ring has no dimension)")
    acc = ring.one()
    for sign, c in roots.entries:
        factor = ring.one() + c**power
        if sign == 1:
            acc = acc * factor
        else:
            acc = acc * inverse_series(factor, up_to=bound)
    return acc


def chern_total(roots: BundleRoots, up_to: Optional[int] = None) -> GradedClass:
    """Total Chern class: prod over + roots of (1+x), divided by the same
    product over - roots, truncated at the ambient dimension."""
    return _product_over_roots(roots, 1, up_to)


def chern_class(roots: BundleRoots, j: int, up_to: Optional[int] = None) -> GradedClass:
    return chern_total(roots, up_to).homogeneous_part(j)


def segre_total(roots: BundleRoots, up_to: Optional[int] = None) -> GradedClass:
    """Inverse of the total Chern class (chern_total * segre_total = 1)."""
    bound = up_to if up_to is not None else roots.ring.dimension
    return inverse_series(chern_total(roots, bound), up_to=bound)


# ---------------------------------------------------------------------------
# Reduced power operations
# ---------------------------------------------------------------------------

def _steenrod_images(X: ChowPresentation) -> dict[str, GradedClass]:
    ring = X.ring
    p = ring.modulus
    images = {}
    for name, d in zip(ring.names, ring.codegrees):
        g = X.gen(name)
        if d == 1:
            images[name] = g + g**p
        elif d == X.dim:
            # no room above the top codegree
            images[name] = g
        else:
            raise NotSteenrodClosed(
                f"generator {name!r} has codegree {d}; no Steenrod image is defined "
                "for intermediate-codegree generators"
            )
    return images


def _verify_closure(X: ChowPresentation, images) -> None:
    ring = X.ring
    for rule in ring.rules:
        # build the image of the raw lead monomial: from_table would rewrite
        # the lead away before the endomorphism is applied
        lead_img = ring.one()
        for i, e in rule.lead.exps:
            lead_img = lead_img * (images[ring.names[i]] ** e)
        repl = ring.from_table(dict(rule.replacement))
        diff = lead_img - evaluate(repl, images, ring)
        if not diff.is_zero():
            raise NotSteenrodClosed(
                f"rule {ring.monomial_str(rule.lead)} is not Steenrod-closed "
                f"(obstruction {diff})"
            )


def steenrod_total(X: ChowPresentation, c: GradedClass, check_closure: Optional[bool] = None) -> GradedClass:
    """The total reduced power operation: the ring endomorphism sending every
    codegree-1 generator x to x + x^p.  Requires F_p coefficients."""
    p = X.ring.modulus
    if not p:
        raise RingError("total Steenrod operation needs F_p coefficients")
    if c.ring is not X.ring:
        raise RingError("class does not live on the given presentation")
    images = _steenrod_images(X)
    if check_closure is None:
        check_closure = not X.is_cellular()
    if check_closure:
        _verify_closure(X, images)
    return evaluate(c, images, X.ring)


def reduced_power(X: ChowPresentation, c: GradedClass, i: int) -> GradedClass:
    """P^i(c): the codegree +i(p-1) piece of the total operation, applied to
    each homogeneous part of c separately."""
    p = X.ring.modulus
    if c.codegree is not None:
        return steenrod_total(X, c).homogeneous_part(c.codegree + i * (p - 1))
    out = X.zero()
    for d in c.codegrees():
        out = out + steenrod_total(X, c.homogeneous_part(d)).homogeneous_part(
            d + i * (p - 1)
        )
    return out


def steenrod_embedded(
    X: ChowPresentation,
    fundamental: GradedClass,
    normal: BundleRoots,
    up_to: Optional[int] = None,
) -> GradedClass:
    """Total operation on an embedded fundamental class:
    [S] * prod over normal roots of (1 + x^{p-1}); for p = 2 this is
    [S] * c(N).  The codegree r+l(p-1) piece is q_l(N) * [S]."""
    p = X.ring.modulus
    if not p:
        raise RingError("embedded Steenrod operation needs F_p coefficients")
    if fundamental.ring is not X.ring or normal.ring is not X.ring:
        raise RingError("fundamental class and roots must live on X")
    return fundamental * _product_over_roots(normal, p - 1, up_to)


def embedded_power(
    X: ChowPresentation, fundamental: GradedClass, normal: BundleRoots, i: int
) -> GradedClass:
    p = X.ring.modulus
    r = fundamental.codegree
    if r is None:
        raise ValueError("fundamental class must be homogeneous")
    return steenrod_embedded(X, fundamental, normal).homogeneous_part(r + i * (p - 1))


# ---------------------------------------------------------------------------
# d-classes and homological operations
# ---------------------------------------------------------------------------

def d_class_from_roots(roots: BundleRoots, p: int, up_to: Optional[int] = None) -> GradedClass:
    """d(T) = prod over roots of (1 + x^{p-1}), truncated."""
    return _product_over_roots(roots, p - 1, up_to)


def d_class_from_total(total: GradedClass, p: int, up_to: Optional[int] = None) -> GradedClass:
    """d(T) computed from the total Chern class alone, through the universal
    symmetric expansion of prod (1 + x^{p-1}) in elementary symmetric terms."""
    _check_total(total, "total Chern class")
    ring = total.ring
    bound = up_to if up_to is not None else ring.dimension
    if bound is None:
        raise ValueError("need a truncation bound")
    if p == 2:
        # d = total Chern class on the nose
        return sum(
            (total.homogeneous_part(d) for d in range(1, bound + 1)), ring.one()
        )
    rank = max(bound, 1)
    universal = symmetric_expand(p - 1, rank, bound)
    images = {
        f"c{i}": total.homogeneous_part(i) for i in range(1, rank + 1)
    }
    return evaluate(universal, images, ring)


def d_class(T, p: int, up_to: Optional[int] = None) -> GradedClass:
    """Dispatch on root data (BundleRoots) or a total Chern class."""
    if isinstance(T, BundleRoots):
        return d_class_from_roots(T, p, up_to)
    return d_class_from_total(T, p, up_to)


def homological_power(X: ChowPresentation, c: GradedClass, i: int) -> GradedClass:
    """P_i(c) = sum_m d_m(-T_X) . P^{i-m}(c), so that
    sum_l d_l(T_X) . P_{i-l} = P^i holds identically."""
    p = X.ring.modulus
    if not p:
        raise RingError("homological operation needs F_p coefficients")
    tangent = X.tangent_class()
    d_T = d_class_from_total(tangent, p)
    d_minus_T = inverse_series(d_T, up_to=X.dim)
    out = X.zero()
    for m in range(0, i + 1):
        dm = d_minus_T.homogeneous_part(m * (p - 1))
        if dm.is_zero():
            continue
        out = out + dm * reduced_power(X, c, i - m)
    return out
