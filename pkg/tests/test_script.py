import random

import pytest

from chowcalc.report import ERROR, FAIL, Report, emit_report
from chowcalc.script import (
    Env,
    ParseError,
    Script,
    parse_script,
    print_script,
    run_scenario,
    verify_identity,
)
from chowcalc.varieties import generic_context


class TestParser:
    def test_single_context_form(self):
        s = parse_script("(pspace 3)")
        assert s.forms == [["pspace", 3]]

    def test_assertion_form(self):
        s = parse_script("(assert-zero (trivial) (add (mul x y) (neg (mul y x))))")
        assert s.forms[0][0] == "assert-zero"

    def test_subset_literal(self):
        s = parse_script("(assert-comult (trivial) {0 1} r0 r1)")
        assert s.forms[0][2] == frozenset({0, 1})

    def test_comments_and_commas(self):
        s = parse_script("; header\n(let u 3) ; trailing\n(let v, 4)")
        assert s.forms == [["let", "u", 3], ["let", "v", 4]]

    def test_unbalanced_open(self):
        with pytest.raises(ParseError) as err:
            parse_script("(pspace")
        assert err.value.line == 1

    def test_unexpected_close(self):
        with pytest.raises(ParseError) as err:
            parse_script("())")
        assert "unexpected" in str(err.value)

    def test_position_reporting(self):
        with pytest.raises(ParseError) as err:
            parse_script("(let u 1)\n  (oops")
        assert err.value.line == 2
        assert err.value.col == 3

    def test_top_level_atom_rejected(self):
        with pytest.raises(ParseError):
            parse_script("42")


def random_form(rng, depth=0):
    heads = ["add", "mul", "sub", "neg", "pow", "scale", "part"]
    if depth > 2 or rng.random() < 0.4:
        kind = rng.randrange(3)
        if kind == 0:
            return rng.randint(-20, 20)
        if kind == 1:
            return rng.choice(["x", "y", "alpha", "beta-2", "e12"])
        return frozenset(rng.sample(range(6), rng.randint(0, 3)))
    head = rng.choice(heads)
    n = {"add": 2, "mul": 3, "sub": 2, "neg": 1, "pow": 2, "scale": 2, "part": 2}[head]
    return [head] + [random_form(rng, depth + 1) for _ in range(n)]


class TestRoundTrip:
    def test_round_trip_corpus(self):
        rng = random.Random(0)
        for _ in range(1500):
            forms = [["let", "u", random_form(rng)] for _ in range(rng.randint(1, 3))]
            script = Script(forms)
            printed = print_script(script)
            assert parse_script(printed) == script

    def test_round_trip_registry_scripts(self):
        from chowcalc import registry

        for rec in registry.all_records():
            parsed = parse_script(rec.script)
            assert parse_script(print_script(parsed)) == parsed


class TestEvaluator:
    def test_generic_mod2_assertion(self):
        rep = run_scenario(parse_script(
            "(generic X 4 (mod 2) (gens (x 1) (y 1)))"
            "(assert-zero (trivial) (add (mul x y) (mul y x)))"
        ))
        assert rep.ok

    def test_empty_script(self):
        rep = run_scenario(parse_script(""))
        assert rep.ok
        assert rep.counts == {"passed": 0, "failed": 0, "errors": 0}

    def test_failure_records_witness(self):
        rep = run_scenario(parse_script(
            "(generic X 3 (gens (x 1)))"
            "(assert-zero (trivial) (mul x x))"
        ))
        assert not rep.ok
        assert rep.results[0].verdict == FAIL
        assert rep.results[0].witness == "x^2"

    def test_error_verdict_no_crash(self):
        rep = run_scenario(parse_script("(assert-zero (trivial) (mul nope 2))"))
        assert rep.results[0].verdict == ERROR

    def test_assert_deg(self):
        rep = run_scenario(parse_script(
            "(pspace P 2)"
            "(assert-deg (trivial) (mul h h) 1)"
            "(assert-deg (trivial) (scale 3 (mul h h)) 3)"
        ))
        assert rep.ok

    def test_assert_kernel_dim(self):
        rep = run_scenario(parse_script(
            "(pspace P 3)"
            "(assert-kernel-dim (trivial) P 1 2 0)"
        ))
        assert rep.ok

    def test_milnor_forms(self):
        rep = run_scenario(parse_script(
            "(milnor R 3 (rho-height 3))"
            "(assert-equal (trivial) (mul r0 r0) (mul r1 rho))"
            "(assert-comult (trivial) {1} r0 r0)"
            "(assert-equal (trivial) (qapply 1 (rset {0 1})) r0)"
            "(flexible F 2)"
            "(assert-zero (trivial) (mul r0 r0))"
        ))
        assert rep.ok, emit_report(rep, "human").decode()

    def test_steenrod_and_pullback_forms(self):
        rep = run_scenario(parse_script(
            "(pspace P 3 (mod 2))"
            "(assert-equal (trivial) (steenrod h) (add h (mul h h)))"
            "(assert-equal (trivial) (ppow 0 (mul h h)) (mul h h))"
        ))
        assert rep.ok

    def test_modulo_rules_declaration(self):
        rep = run_scenario(parse_script(
            "(generic X 4 (gens (x 1) (y 1) (z 1)))"
            "(declare-rules R ((mul x y) (mul z z)))"
            "(assert-equal (derived) (mul x y z) (mul z z z) (modulo R))"
        ))
        assert rep.ok

    def test_unknown_form_is_error(self):
        rep = run_scenario(parse_script("(frobnicate 1 2)"))
        assert rep.results[0].verdict == ERROR


class TestVerifyIdentity:
    def test_ideal_membership(self):
        X = generic_context([("x", 1), ("y", 1)], 4)
        env = Env()
        env.define("X", X)
        env.current = X
        x, y = X.gen("x"), X.gen("y")
        from chowcalc.script import _IdealDecl

        ok, witness = verify_identity(env, x * x * y, X.zero(), [_IdealDecl([x * y])])
        assert ok and witness is None
        ok, witness = verify_identity(env, x * x * x, X.zero(), [_IdealDecl([x * y])])
        assert not ok
        assert witness is not None and not witness.is_zero()


class TestReports:
    def test_empty_report_summary(self):
        out = emit_report(Report(), "json").decode()
        assert out.strip().splitlines()[-1] == '{"errors": 0, "failed": 0, "passed": 0}'

    def test_json_single_pass(self):
        rep = run_scenario(parse_script("(pspace P 1)(assert-deg (trivial) h 1)"))
        lines = emit_report(rep, "json", stable=True).decode().strip().splitlines()
        assert '"verdict": "pass"' in lines[0]

    def test_json_fail_has_witness(self):
        rep = run_scenario(parse_script(
            "(generic X 2 (gens (x 1)))(assert-zero (trivial) x)"
        ))
        lines = emit_report(rep, "json", stable=True).decode().strip().splitlines()
        assert '"witness"' in lines[0]

    def test_determinism_bytes(self):
        from chowcalc import registry

        a = emit_report(registry.run("A23-L1-SL2", seed=7), "json", stable=True)
        b = emit_report(registry.run("A23-L1-SL2", seed=7), "json", stable=True)
        assert a == b

    def test_exit_status(self):
        good = run_scenario(parse_script("(pspace P 1)(assert-deg (trivial) h 1)"))
        bad = run_scenario(parse_script("(generic X 2 (gens (x 1)))(assert-zero (trivial) x)"))
        assert good.exit_status() == 0
        assert bad.exit_status() == 1


class TestCli:
    def test_run_and_exit_codes(self, tmp_path, capsys):
        from chowcalc.cli import main

        script = tmp_path / "ok.sexp"
        script.write_text("(pspace P 2)(assert-deg (trivial) (mul h h) 1)\n")
        assert main(["run", str(script)]) == 0
        bad = tmp_path / "bad.sexp"
        bad.write_text("(generic X 2 (gens (x 1)))(assert-zero (trivial) x)\n")
        assert main(["run", str(bad)]) == 1
        broken = tmp_path / "broken.sexp"
        broken.write_text("(pspace\n")
        assert main(["run", str(broken)]) == 2

    def test_lemmas_id_and_list(self, capsys):
        from chowcalc.cli import main

        assert main(["lemmas", "--id", "A23-L1-SL1", "--format", "json", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert '"verdict": "pass"' in out
        assert main(["lemmas", "--list"]) == 0
        out = capsys.readouterr().out
        assert "A23-L2-SL1" in out
        assert main(["lemmas", "--id", "NOPE"]) == 2

    def test_eval_subcommand(self, tmp_path, capsys):
        from chowcalc.cli import main
        from chowcalc.varieties import projective_space

        path = tmp_path / "p2.json"
        projective_space(2).save(path)
        assert main(["eval", "(mul h h h)", "--context", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "0"
        assert main(["eval", "(mul h h)", "--context", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "h^2"
