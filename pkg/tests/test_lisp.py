import io
import math

import numpy as np
import pytest

from phasorlisp import (
    ArityError,
    Config,
    DecodeError,
    EvalError,
    LispTypeError,
    NoInverseError,
    NotApplicableError,
    Session,
    UnboundSymbolError,
    decode_residue,
    new_rng,
    parse_one,
    parse_program,
    random_symbol,
    similarity,
)

from oracles import inverse_mod


def run(session, source):
    return session.print_value(session.eval_expr(parse_one(source)))


# -- encoding and resolution -------------------------------------------


def test_integer_value_carries_the_tag(session):
    v = session.encode_int(0)
    assert similarity(v, session.int_tag) > session.config.theta


def test_tag_strip_roundtrip(session):
    v = session.encode_int(42) - session.int_tag
    assert decode_residue(session.codebook, v) == 42


def test_symbol_interning_returns_identical_vectors(session):
    a1 = session.symbol("spoon")
    a2 = session.symbol("spoon")
    assert np.array_equal(a1, a2)


def test_resolve_classifies_values(session):
    assert session.resolve(session.encode_int(9)).kind == "int"
    assert session.resolve(session.encode_int(9)).value == 9
    assert session.resolve(session.symbol("t")).kind == "bool"
    assert session.resolve(session.symbol("nil")).kind == "nil"
    assert session.resolve(session.symbol("zebra")).kind == "symbol"
    junk = random_symbol(new_rng(0), session.config.dim)
    assert session.resolve(junk).kind == "unknown"


def test_force_decode_confidence(session):
    x, conf = session.force_decode(session.encode_int(33))
    assert x == 33
    assert conf == pytest.approx(1.0, abs=1e-9)


# -- arithmetic --------------------------------------------------------


def test_addition_example(session):
    assert run(session, "(+ 2 3)") == "5"


def test_subtraction_wraps_to_symmetric_window(session):
    assert run(session, "(- 2 3)") == "-1"
    r = session.resolve(session.eval_expr(parse_one("(- 2 3)")).vector)
    assert r.value == 104


def test_division_by_modular_inverse(session):
    # frozen: inverse of 4 mod 105 is 79, and 44 * 79 = 11 mod 105
    assert inverse_mod(4, 105) == 79
    assert 44 * 79 % 105 == 11
    assert run(session, "(/ 44 4)") == "11"


def test_arithmetic_matches_modular_oracle(session):
    rng = new_rng(31)
    for _ in range(25):
        a = int(rng.integers(0, 105))
        b = int(rng.integers(0, 105))
        got = session.resolve(
            session.eval_expr(parse_one(f"(+ {a} {b})")).vector
        )
        assert got.value == (a + b) % 105
        got = session.resolve(
            session.eval_expr(parse_one(f"(* {a} {b})")).vector
        )
        assert got.value == (a * b) % 105


def test_division_without_inverse_raises(session):
    with pytest.raises(NoInverseError):
        session.eval_expr(parse_one("(/ 10 21)"))


def test_arithmetic_rejects_non_integer_operand(session):
    with pytest.raises(LispTypeError):
        session.eval_expr(parse_one("(+ 1 t)"))
    with pytest.raises(LispTypeError):
        session.eval_expr(parse_one("(* nil 2)"))


def test_negative_literals_encode_modularly(session):
    assert run(session, "(+ -1 2)") == "1"
    assert run(session, "-50") == "-50"


def test_display_window_boundaries(session):
    assert session.display_int(52) == 52
    assert session.display_int(53) == -52
    assert session.display_int(104) == -1
    assert session.display_int(0) == 0


# -- pairs and predicates ----------------------------------------------


def test_car_cdr_of_cons(session):
    assert run(session, "(car (cons 1 nil))") == "1"
    assert run(session, "(cdr (cons 1 2))") == "2"


def test_constructor_selector_laws_on_random_pairs(session):
    rng = new_rng(12)
    for _ in range(20):
        a = int(rng.integers(0, 105))
        b = int(rng.integers(0, 105))
        assert run(session, f"(car (cons {a} {b}))") == str(
            session.display_int(a)
        )
        assert run(session, f"(cdr (cons {a} {b}))") == str(
            session.display_int(b)
        )


def test_car_of_non_pair_is_a_type_error(session):
    with pytest.raises(LispTypeError):
        session.eval_expr(parse_one("(car 5)"))


def test_atom_predicate(session):
    assert run(session, "(atom? 5)") == "t"
    assert run(session, "(atom? nil)") == "t"
    assert run(session, "(atom? (quote x))") == "t"
    assert run(session, "(atom? (cons 1 2))") == "f"


def test_eq_on_symbols_and_constants(session):
    assert run(session, "(eq? (quote a) (quote a))") == "t"
    assert run(session, "(eq? (quote a) (quote b))") == "f"
    assert run(session, "(eq? nil nil)") == "t"
    assert run(session, "(eq? t f)") == "f"


def test_eq_on_integers_compares_values(session):
    assert run(session, "(eq? 4 4)") == "t"
    assert run(session, "(eq? 4 5)") == "f"
    assert run(session, "(eq? 5 (+ 2 3))") == "t"
    # the range wraps, so 105 is another name for 0
    assert run(session, "(eq? 0 105)") == "t"


def test_eq_mixed_types(session):
    assert run(session, "(eq? 1 t)") == "f"
    assert run(session, "(eq? nil 0)") == "f"


def test_int_predicate_truth_table(session):
    assert run(session, "(int? 7)") == "t"
    assert run(session, "(int? 0)") == "t"
    assert run(session, "(int? t)") == "f"
    assert run(session, "(int? f)") == "f"
    assert run(session, "(int? nil)") == "f"
    assert run(session, "(int? (quote x))") == "f"
    assert run(session, "(int? (cons 1 2))") == "f"


def test_int_predicate_on_raw_random_vector(session):
    junk = random_symbol(new_rng(2), session.config.dim)
    out = session.prim_int_test(junk)
    assert session.print_value(out) == "f"


# -- special forms -----------------------------------------------------


def test_quote_returns_data_unevaluated(session):
    assert run(session, "(quote foo)") == "foo"
    assert run(session, "(quote (1 2 3))") == "(1 2 3)"
    assert run(session, "(quote (+ 1 2))") == "(+ 1 2)"


def test_quote_arity(session):
    with pytest.raises(ArityError):
        session.eval_expr(parse_one("(quote a b)"))


def test_cond_picks_first_truthy_clause(session):
    assert run(session, "(cond ((eq? 1 1) 10) (t 20))") == "10"
    assert run(session, "(cond ((eq? 1 2) 10) (t 20))") == "20"


def test_cond_without_match_is_nil(session):
    assert run(session, "(cond ((eq? 1 2) 10))") == "nil"


def test_cond_malformed_clause(session):
    with pytest.raises(EvalError):
        session.eval_expr(parse_one("(cond (t))"))


def test_lambda_application(session):
    assert run(session, "((lambda (x) (* x x)) 6)") == "36"


def test_lambda_of_no_arguments(session):
    assert run(session, "((lambda () 41))") == "41"


def test_lexical_scoping_through_nested_closures(session):
    assert run(session, "((lambda (x) ((lambda (y) (+ x y)) 2)) 3)") == "5"


def test_closure_captures_definition_environment(session):
    run(session, "(define make-adder (lambda (n) (lambda (x) (+ x n))))")
    run(session, "(define add3 (make-adder 3))")
    assert run(session, "(add3 4)") == "7"


def test_closure_arity_mismatch(session):
    with pytest.raises(ArityError):
        session.eval_expr(parse_one("((lambda (x y) x) 1)"))


def test_applying_a_non_closure(session):
    with pytest.raises(NotApplicableError):
        session.eval_expr(parse_one("(7 8)"))


def test_lambda_params_must_be_symbols(session):
    with pytest.raises(EvalError):
        session.eval_expr(parse_one("(lambda (1) 2)"))


def test_define_returns_the_symbol(session):
    assert run(session, "(define nine 9)") == "nine"
    assert run(session, "nine") == "9"


def test_define_can_shadow_a_primitive(session):
    run(session, "(define + (lambda (a b) 42))")
    assert run(session, "(+ 1 2)") == "42"


def test_unbound_symbol(session):
    with pytest.raises(UnboundSymbolError):
        session.eval_expr(parse_one("ghost"))


def test_constants_cannot_be_redefined(session):
    for name in ("t", "f", "nil"):
        with pytest.raises(EvalError):
            session.eval_expr(parse_one(f"(define {name} 1)"))


def test_constants_cannot_be_parameters(session):
    with pytest.raises(EvalError):
        session.eval_expr(parse_one("(lambda (f) f)"))


def test_recursive_function_via_define(session):
    run(
        session,
        "(define length (lambda (l) (cond ((eq? l nil) 0)"
        " (t (+ 1 (length (cdr l)))))))",
    )
    assert run(session, "(length (quote (10 20 30 40 50)))") == "5"


def test_recursive_factorial_wraps_modularly(session):
    run(
        session,
        "(define fact (lambda (n) (cond ((eq? n 0) 1)"
        " (t (* n (fact (- n 1)))))))",
    )
    assert run(session, "(fact 4)") == "24"
    # 5! = 120 = 15 mod 105
    assert run(session, "(fact 5)") == "15"


# -- printing ----------------------------------------------------------


def test_print_list_chain(session):
    assert run(session, "(cons 1 (cons 2 nil))") == "(1 2)"


def test_print_dotted_pair(session):
    assert run(session, "(cons (quote a) (quote b))") == "(a . b)"


def test_print_closure(session):
    assert run(session, "(lambda (x) x)") == "#<lambda>"


def test_print_unknown_vector(session):
    junk = random_symbol(new_rng(3), session.config.dim)
    out = session.print_value(junk)
    assert out.startswith("#<vector sim=")


def test_print_raw_integer_mode(session):
    session.display_raw = True
    try:
        assert run(session, "(- 2 3)") == "104"
    finally:
        session.display_raw = False
    assert run(session, "(- 2 3)") == "-1"


def test_eval_source_yields_one_line_per_form(session):
    lines = list(session.eval_source("(define two 2)\n(+ two two)\n"))
    assert lines == ["two", "4"]


# -- determinism and persistence ---------------------------------------


def test_same_program_identical_output_in_fresh_sessions():
    source = (
        "(define square (lambda (x) (* x x)))\n"
        "(square 7)\n"
        "(cons 1 (cons 2 nil))\n"
    )
    a = list(Session().eval_source(source))
    b = list(Session().eval_source(source))
    assert a == b


def test_sessions_with_different_seeds_agree_on_results():
    a = list(Session(Config(seed=1)).eval_source("(+ 40 50)"))
    b = list(Session(Config(seed=2)).eval_source("(+ 40 50)"))
    assert a == b == ["-15"]


def test_exhaustive_decode_config(session):
    s = Session(Config(decode="exhaustive"))
    assert list(s.eval_source("(+ 2 3)")) == ["5"]


def test_save_restore_roundtrip(session, tmp_path):
    for form in parse_program(
        "(define square (lambda (x) (* x x)))"
        "(define pair (cons 1 (cons 2 nil)))"
    ):
        session.eval_expr(form)
    path = tmp_path / "dump.vls"
    session.save(path)

    other = Session.restore(path)
    assert run(other, "(square 7)") == "49"
    assert run(other, "(car pair)") == "1"
    assert run(other, "(cdr pair)") == "(2)"
    assert np.array_equal(other.symbol("t"), session.symbol("t"))
    assert np.array_equal(other.codebook.phases, session.codebook.phases)


def test_restored_session_keeps_defining(session, tmp_path):
    run(session, "(define a (cons 1 2))")
    path = tmp_path / "dump.vls"
    session.save(path)
    other = Session.restore(path)
    run(other, "(define b (cons 3 4))")
    assert run(other, "(car a)") == "1"
    assert run(other, "(car b)") == "3"


def test_save_to_buffer(session):
    run(session, "(define x 5)")
    buf = io.BytesIO()
    session.save(buf)
    other = Session.restore(io.BytesIO(buf.getvalue()))
    assert run(other, "x") == "5"


# -- config validation -------------------------------------------------


def test_config_rejects_bad_theta():
    with pytest.raises(Exception):
        Config(theta=0.0)
    with pytest.raises(Exception):
        Config(theta=1.5)


def test_config_rejects_unknown_decode_method():
    with pytest.raises(Exception):
        Config(decode="psychic")


def test_config_range(session):
    assert session.config.moduli == (3, 5, 7)
    assert math.prod(session.config.moduli) == 105
