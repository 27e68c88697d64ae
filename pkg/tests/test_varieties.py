import json
import random

import pytest

from chowcalc.rings import Monomial, random_class
from chowcalc.varieties import (
    BundleRoots,
    CenterData,
    CoverageError,
    blow_up,
    generic_context,
    presentation_from_json,
    product,
    projective_bundle,
    projective_space,
)


def bl_point_plane():
    P2 = projective_space(2)
    center = CenterData(
        fundamental=P2.gen("h") ** 2,
        roots=BundleRoots.plus([P2.zero(), P2.zero()], ring=P2.ring),
        restriction={"h": P2.zero()},
        name="pt",
    )
    return P2, blow_up(P2, center)


class TestProjectiveSpace:
    def test_point(self):
        P0 = projective_space(0)
        assert [len(P0.basis_of(d)) for d in range(1)] == [1]
        assert P0.degree(P0.one()) == 1

    def test_plane(self):
        P2 = projective_space(2)
        h = P2.gen("h")
        assert [len(P2.basis_of(d)) for d in range(3)] == [1, 1, 1]
        assert P2.degree(h * h) == 1
        assert (h**3).is_zero()

    def test_tangent_part(self):
        P2 = projective_space(2)
        assert P2.tangent_class().homogeneous_part(1) == 3 * P2.gen("h")


class TestProduct:
    def test_two_lines(self):
        P1 = projective_space(1)
        Q = product(P1, P1)
        assert sorted(Q.ring.names) == ["h_1", "h_2"]
        h1, h2 = Q.gen("h_1"), Q.gen("h_2")
        assert Q.degree(h1 * h2) == 1
        assert Q.degree(h1 * h1) == 0
        assert [len(Q.basis_of(d)) for d in range(3)] == [1, 2, 1]

    def test_point_is_unit(self):
        P2 = projective_space(2)
        Q = product(P2, projective_space(0))
        assert [len(Q.basis_of(d)) for d in range(3)] == [1, 1, 1]
        assert Q.degree(Q.gen("h_1") ** 2) == 1

    def test_mixed_top_degree(self):
        W = product(projective_space(2), projective_space(3))
        assert W.degree(W.gen("h_1") ** 2 * W.gen("h_2") ** 3) == 1

    def test_factor_pullback(self):
        P1 = projective_space(1)
        P2 = projective_space(2)
        Q = product(P1, P2)
        h = P2.gen("h")
        assert Q.pullback_from_factor(1, h) == Q.gen("h_2")


class TestProjectiveBundle:
    def test_trivial_bundle_over_point(self):
        pt = projective_space(0)
        B = projective_bundle(pt, BundleRoots.plus([pt.zero()] * 3, ring=pt.ring))
        xi = B.gen("xi")
        assert B.dim == 2
        assert (xi**3).is_zero()
        assert B.degree(xi**2) == 1

    def test_twisted_bundle_over_line(self):
        # frozen oracle: pushing xi^2 down gives the first Segre class -h,
        # so the top self-intersection has degree -1
        P1 = projective_space(1)
        h = P1.gen("h")
        B = projective_bundle(P1, BundleRoots.plus([P1.zero(), h]))
        xi = B.gen("xi")
        assert xi * xi == -(xi * B.gen("h"))
        assert B.degree(xi**2) == -1

    def test_pushforward_segre(self):
        P2 = projective_space(2)
        h = P2.gen("h")
        B = projective_bundle(P2, BundleRoots.plus([P2.zero(), h, 2 * h]))
        xi = B.gen("xi")
        # s_0 = 1; s_1 = -c_1 = -3h; s_2 = c_1^2 - c_2 = 9h^2 - 2h^2
        assert B.pushforward(xi**2) == P2.one()
        assert B.pushforward(xi**3) == -3 * h
        assert B.pushforward(xi**4) == 7 * h * h
        assert B.pushforward(xi).is_zero()

    def test_grothendieck_relation_reduces_to_zero(self):
        P2 = projective_space(2)
        h = P2.gen("h")
        roots = [P2.zero(), h, 2 * h]
        B = projective_bundle(P2, BundleRoots.plus(roots))
        xi = B.gen("xi")
        total = B.zero()
        for k, c in enumerate([B.one(), 3 * B.gen("h"), 2 * B.gen("h") ** 2]):
            # c_j of the roots, pulled back
            pass
        rel = xi**3 + 3 * B.gen("h") * xi**2 + 2 * (B.gen("h") ** 2) * xi
        assert rel.is_zero()

    def test_basis_recursion(self):
        P2 = projective_space(2)
        B = projective_bundle(P2, BundleRoots.plus([P2.zero(), P2.gen("h")]))
        assert sum(len(B.basis_of(d)) for d in range(B.dim + 1)) == 2 * 3


class TestBlowUp:
    def test_plane_at_point(self):
        P2, Bl = bl_point_plane()
        h, e = Bl.gen("h"), Bl.gen("e")
        assert [len(Bl.basis_of(d)) for d in range(3)] == [1, 2, 1]
        assert (h * e).is_zero()
        assert e * e == -(h * h)
        assert Bl.degree(e * e) == -1

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_point_blowup_top_degree(self, n):
        # oracle: iterate the self-intersection rule; degree is (-1)^(n-1)
        Pn = projective_space(n)
        center = CenterData(
            fundamental=Pn.gen("h") ** n,
            roots=BundleRoots.plus([Pn.zero()] * n, ring=Pn.ring),
            restriction={"h": Pn.zero()},
        )
        Bl = blow_up(Pn, center)
        assert Bl.degree(Bl.gen("e") ** n) == (-1) ** (n - 1)

    def test_pullback_of_center_class_decomposes(self):
        # codim-2 center: [Z] = c_1(N) e - e^2 is the fold rule rearranged
        P3 = projective_space(3)
        h = P3.gen("h")
        center = CenterData.complete_intersection([h, h], name="line")
        Bl = blow_up(P3, center)
        e, hb = Bl.gen("e"), Bl.gen("h")
        assert Bl.pullback(h * h) == 2 * hb * e - e * e

    def test_pushforward_kills_exceptional(self):
        P2, Bl = bl_point_plane()
        assert Bl.pushforward(Bl.gen("e")).is_zero()
        h = P2.gen("h")
        assert Bl.pushforward(Bl.pullback(h * h)) == h * h

    def test_roundtrip_and_projection_formula(self):
        P3 = projective_space(3)
        h = P3.gen("h")
        Bl = blow_up(P3, CenterData.complete_intersection([h, h]))
        rng = random.Random(5)
        for _ in range(60):
            x = random_class(P3.ring, rng)
            assert Bl.pushforward(Bl.pullback(x)) == x
        for _ in range(60):
            x = random_class(P3.ring, rng, terms=2)
            c = random_class(Bl.ring, rng, terms=2)
            lhs = P3.degree(P3.ring.from_table(Bl.pushforward(Bl.pullback(x) * c).table))
            rhs = P3.degree(x * Bl.pushforward(c))
            assert lhs == rhs

    def test_bundle_fiber_integration(self):
        # pushing forward against the top fiber power recovers the base class
        P2 = projective_space(2)
        B = projective_bundle(P2, BundleRoots.plus([P2.zero(), P2.gen("h")]))
        xi = B.gen("xi")
        rng = random.Random(9)
        for _ in range(60):
            x = random_class(P2.ring, rng)
            assert B.pushforward(xi * B.pullback(x)) == x
            assert B.pushforward(B.pullback(x)).is_zero()

    def test_basis_recursion(self):
        # blow-up basis = ambient + (codim - 1) copies of the center
        P4 = projective_space(4)
        h = P4.gen("h")
        Bl = blow_up(P4, CenterData.complete_intersection([h, h]))  # surface center
        base_total = 5
        center_total = 3  # classes of the surface: 1, h, h^2
        got = sum(len(Bl.basis_of(d)) for d in range(Bl.dim + 1))
        assert got == base_total + (2 - 1) * center_total

    def test_curve_blowup_pairing_is_unimodular(self):
        from chowcalc.numeric import integer_determinant, pairing_report

        P3 = projective_space(3)
        h = P3.gen("h")
        Bl = blow_up(P3, CenterData.complete_intersection([h, h]))
        rep = pairing_report(Bl, 2)
        for entry in rep.codegrees.values():
            assert integer_determinant(entry.matrix) in (1, -1)

    def test_codim_mismatch_rejected(self):
        P3 = projective_space(3)
        h = P3.gen("h")
        with pytest.raises(CoverageError):
            blow_up(P3, CenterData(fundamental=h * h, roots=BundleRoots.plus([h, h, h])))

    def test_non_idempotent_restriction_rejected(self):
        P2 = projective_space(2)
        h = P2.gen("h")
        with pytest.raises(CoverageError):
            blow_up(
                P2,
                CenterData(
                    fundamental=h * h,
                    roots=BundleRoots.plus([P2.zero(), P2.zero()], ring=P2.ring),
                    restriction={"h": h + P2.one() * 0 + h},  # h -> 2h, not idempotent-fixed
                ),
            )


class TestGenericContext:
    def test_dimension_truncation(self):
        X = generic_context([("x", 1), ("y", 1)], 5)
        x, y = X.gen("x"), X.gen("y")
        assert ((x**3) * (y**3)).is_zero()

    def test_declared_rule(self):
        X = generic_context([("r", 1), ("x", 1), ("y", 1)], 5)
        r, x = X.gen("r"), X.gen("x")
        X2 = generic_context(
            [("r", 1), ("x", 1), ("y", 1)], 5,
            rules=[(r * x, X.zero())],
        )
        rr, xx, yy = X2.gen("r"), X2.gen("x"), X2.gen("y")
        assert (rr * xx * xx * yy).is_zero()

    def test_point_class_rule(self):
        X = generic_context([("r", 1), ("pt", 3)], 3)
        r, pt = X.gen("r"), X.gen("pt")
        X2 = generic_context(
            [("r", 1), ("pt", 3)], 3,
            rules=[(r**3, -pt)],
        )
        assert X2.gen("r") ** 3 == -X2.gen("pt")

    def test_partial_degree(self):
        X = generic_context(
            [("x", 1), ("pt", 2)], 2,
            degrees={Monomial([(1, 1)]): 1},
        )
        assert X.degree(3 * X.gen("pt")) == 3
        with pytest.raises(CoverageError):
            X.degree(X.gen("x") ** 2)


class TestSerialization:
    def test_roundtrip(self):
        P2, Bl = bl_point_plane()
        doc = Bl.to_json()
        text = json.dumps(doc)
        back = presentation_from_json(json.loads(text))
        assert back.dim == Bl.dim
        assert back.ring.names == Bl.ring.names
        e, h = back.gen("e"), back.gen("h")
        assert e * e == -(h * h)
        assert back.degree(e * e) == -1
        assert [len(back.basis_of(d)) for d in range(3)] == [1, 2, 1]

    def test_bundle_roundtrip_degrees(self):
        P1 = projective_space(1)
        B = projective_bundle(P1, BundleRoots.plus([P1.zero(), P1.gen("h")]))
        back = presentation_from_json(json.loads(json.dumps(B.to_json())))
        xi = back.gen("xi")
        assert back.degree(xi * xi) == -1
