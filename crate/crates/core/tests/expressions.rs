mod common;

use common::{Rng, EXPRESSION_CORPUS};
use mzquad::expr::{builtin, f1, f2, f3, parse, Integrand, F1_TEXT, F2_TEXT, F3_TEXT};

#[test]
fn corpus_round_trips() {
    assert!(EXPRESSION_CORPUS.len() >= 50);
    let mut rng = Rng::new(5);
    for src in EXPRESSION_CORPUS {
        let e = parse(src).unwrap_or_else(|err| panic!("`{src}`: {err}"));
        let printed = e.to_string();
        let again = parse(&printed).unwrap_or_else(|err| panic!("`{printed}`: {err}"));
        assert_eq!(again, e, "`{src}` -> `{printed}`");
        for _ in 0..20 {
            let (x, y) = (rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0));
            let (a, b) = (e.eval(x, y), again.eval(x, y));
            assert!(a == b || (a.is_nan() && b.is_nan()), "`{src}` at ({x}, {y})");
        }
    }
}

#[test]
fn builtins_match_their_text() {
    let mut rng = Rng::new(6);
    for (name, text, f) in [("f1", F1_TEXT, f1 as fn(f64, f64) -> f64), ("f2", F2_TEXT, f2), ("f3", F3_TEXT, f3)] {
        let e = parse(text).unwrap();
        let b = builtin(name).unwrap();
        for _ in 0..1000 {
            let (x, y) = (rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0));
            let want = f(x, y);
            assert!((e.eval(x, y) - want).abs() <= 1e-14 * want.abs().max(1.0), "{name} at ({x}, {y})");
            assert_eq!(b.eval(x, y), want);
        }
    }
}

#[test]
fn hand_evaluated_values() {
    assert_eq!(parse(F1_TEXT).unwrap().eval(0.0, 0.0), 74.0);
    assert!((parse(F2_TEXT).unwrap().eval(0.0, 0.0) - 0.1).abs() < 1e-15);
    assert_eq!(parse(F3_TEXT).unwrap().eval(0.0, 0.0), 1.0);
    assert_eq!(parse("x+2*y").unwrap().eval(1.0, 1.0), 3.0);
    assert_eq!(parse("2^3^2").unwrap().eval(0.0, 0.0), 512.0);
    assert_eq!(parse("-2^2").unwrap().eval(0.0, 0.0), -4.0);
    assert_eq!(parse("2*-3").unwrap().eval(0.0, 0.0), -6.0);
    assert_eq!(parse("8/4/2").unwrap().eval(0.0, 0.0), 1.0);
    assert_eq!(parse("8-4-2").unwrap().eval(0.0, 0.0), 2.0);
    assert!(!parse("x/0").unwrap().eval(1.0, 0.0).is_finite());
    assert!(parse("log(x)").unwrap().eval(-1.0, 0.0).is_nan());
}

#[test]
fn errors_carry_offsets() {
    for (src, offset) in [("x+)", 2), ("2x", 1), ("(x+1", 4), ("foo(x)", 0), ("x 1", 2), ("", 0), ("sin(x", 5), ("x+", 2), ("z", 0)] {
        let err = parse(src).expect_err(src);
        assert_eq!(err.offset, offset, "`{src}`: {err}");
        assert!(!err.message.is_empty());
    }
}

#[test]
fn integrand_specs() {
    assert_eq!(Integrand::from_spec("f2").unwrap().name(), "f2");
    let custom = Integrand::from_spec("x*y").unwrap();
    assert_eq!(custom.eval(2.0, 3.0), 6.0);
    assert!(Integrand::from_spec("f4").is_err());
}
