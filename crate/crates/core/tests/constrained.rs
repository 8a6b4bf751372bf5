use gcv::bounds::Scenario;
use gcv::constrained::*;
use gcv::realroots::{algebraic_eq, rat};
use gcv::{parse, AlgebraicNumber, MPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

const XY: [&str; 2] = ["x", "y"];

fn p(text: &str, vars: &[&str]) -> MPoly {
    parse(text, vars).unwrap()
}

fn toy(f: &str, eqs: &[&str], ineqs: &[&str], vars: &[&str]) -> ConstrainedReport {
    let eqs: Vec<MPoly> = eqs.iter().map(|g| p(g, vars)).collect();
    let ineqs: Vec<MPoly> = ineqs.iter().map(|g| p(g, vars)).collect();
    constrained_infimum_toy(&p(f, vars), &eqs, &ineqs, 1, DEFAULT_SCALE_CAP).unwrap()
}

fn has(rep: &ConstrainedReport, v: &BigRational) -> bool {
    rep.candidates.iter().any(|c| algebraic_eq(c, &AlgebraicNumber::from_rational(v)))
}

/// Exact Lagrange certificate: g(p) = 0 for every g, and the gradients of F and
/// the g's are linearly dependent at p (2 x 2 case).
fn lagrange_2d(f: &MPoly, g: &MPoly, pt: &[BigRational]) -> BigRational {
    assert!(g.eval_rational(pt).is_zero());
    let grad = |h: &MPoly| -> Vec<BigRational> { (0..2).map(|v| h.partial_derivative(v).unwrap().eval_rational(pt)).collect() };
    let (a, b) = (grad(f), grad(g));
    assert!((&a[0] * &b[1] - &a[1] * &b[0]).is_zero());
    f.eval_rational(pt)
}

#[test]
fn minors_of_a_line() {
    let m = jacobian_minors(&p("x^2+y^2", &XY), &[p("x+y-1", &XY)]).unwrap();
    assert_eq!(m.len(), 2);
    assert_eq!(m[0].subset, vec![0, 1]);
    assert_eq!(m[0].m, p("2*x-2*y", &XY));
    assert!(m.iter().all(|pair| pair.m_j == MPoly::one(2)));
    assert_eq!(m[1].column, 1);
}

#[test]
fn unit_jacobian_rows_give_unit_minors() {
    let v = ["x", "y", "z"];
    let f = p("x^3*y + z^2 - x*y*z + 5", &v);
    let gs = [p("y", &v), p("z", &v)];
    let m = jacobian_minors(&f, &gs).unwrap();
    assert_eq!(m.len(), 3);
    for pair in &m {
        assert!(pair.m_j.is_constant());
        let c = pair.m_j.constant_term();
        assert!(c >= BigInt::from(-1) && c <= BigInt::from(1), "{}", pair.m_j_text);
    }
}

#[test]
fn parallel_gradients_give_zero_minor() {
    let m = jacobian_minors(&p("x+y", &XY), &[p("2*x+2*y-3", &XY)]).unwrap();
    assert!(m[0].m.is_zero());
}

#[test]
fn too_many_constraints_is_an_error() {
    assert!(jacobian_minors(&p("x", &XY), &[p("x", &XY), p("y", &XY)]).is_err());
}

#[test]
fn cardinality_examples() {
    assert_eq!(system_j_cardinality(2, 1), BigInt::from(6));
    assert_eq!(system_j_cardinality(3, 1), BigInt::from(15));
    assert_eq!(system_j_cardinality(3, 2), BigInt::from(8));
}

#[test]
fn built_system_matches_closed_form() {
    let names = ["a", "b", "c", "d", "e", "f"];
    for n in 1..=6usize {
        let v = &names[..n];
        let f = p(&v.iter().map(|x| format!("{}^2", x)).collect::<Vec<_>>().join("+"), v);
        for r in 0..n {
            let gs: Vec<MPoly> = (0..r).map(|k| p(&format!("{} + 2*{} - 1", v[k], v[k + 1]), v)).collect();
            let minors = jacobian_minors(&f, &gs).unwrap();
            let s = minors.len() / (r + 1);
            let choice: Vec<usize> = minors.chunks(r + 1).map(|c| c.iter().find(|m| !m.m_j.is_zero()).unwrap_or(&c[0]).column).collect();
            assert_eq!(choice.len(), s);
            let j = build_system_j(&f, &gs, &choice, 0).unwrap();
            assert_eq!(BigInt::from(j.count), system_j_cardinality(n as u64, r as u64), "n={} r={}", n, r);
            assert_eq!(j.polynomials.len(), j.count);
            assert_eq!(j.layout.nvars(), n + 2 + (n + 1) * s);
        }
    }
}

#[test]
fn all_zero_denominators_are_degenerate() {
    // g = y: the only r x r minor omitting column 1 of (0 1) is 0
    let f = p("x^2+y^2", &XY);
    let gs = [p("y", &XY)];
    let minors = jacobian_minors(&f, &gs).unwrap();
    let zero_col = minors.iter().find(|m| m.m_j.is_zero()).unwrap().column;
    assert!(build_system_j(&f, &gs, &[zero_col], 0).is_err());
}

#[test]
fn line_toy() {
    let rep = toy("x^2+y^2", &["x+y-1"], &[], &XY);
    let half = lagrange_2d(&p("x^2+y^2", &XY), &p("x+y-1", &XY), &[rat(1, 2), rat(1, 2)]);
    assert_eq!(half, rat(1, 2));
    assert!(has(&rep, &half));
    assert_eq!(rep.status, ConstrainedStatus::Finite);
    assert!(algebraic_eq(rep.value.as_ref().unwrap(), &AlgebraicNumber::from_rational(&half)));
}

#[test]
fn circle_toy() {
    let rep = toy("x", &["x^2+y^2-1"], &[], &XY);
    let (f, g) = (p("x", &XY), p("x^2+y^2-1", &XY));
    for x in [1, -1] {
        let v = lagrange_2d(&f, &g, &[rat(x, 1), rat(0, 1)]);
        assert!(has(&rep, &v));
    }
    assert_eq!(rep.status, ConstrainedStatus::Finite);
    assert!(algebraic_eq(rep.value.as_ref().unwrap(), &AlgebraicNumber::from_int(-1)));
}

#[test]
fn hyperbola_toy() {
    // no finite critical point: the gradient condition y = 0 contradicts xy = 1
    let rep = toy("x", &["x*y-1"], &[], &XY);
    assert!(has(&rep, &rat(0, 1)));
    // the branch x < 0 goes to -infinity
    assert_eq!(rep.status, ConstrainedStatus::UnboundedBelow);
    let rep = toy("x", &["x*y-1"], &["x"], &XY);
    assert!(has(&rep, &rat(0, 1)));
    assert_eq!(rep.status, ConstrainedStatus::Finite);
    assert!(algebraic_eq(rep.value.as_ref().unwrap(), &AlgebraicNumber::from_int(0)));
}

#[test]
fn plane_in_three_space() {
    let rep = toy("x^2+y^2+z^2", &["x+y+z-1"], &[], &["x", "y", "z"]);
    assert_eq!(rep.status, ConstrainedStatus::Finite);
    assert!(algebraic_eq(rep.value.as_ref().unwrap(), &AlgebraicNumber::from_rational(&rat(1, 3))));
}

#[test]
fn reported_degrees_stay_below_ceiling() {
    for rep in [
        toy("x^2+y^2", &["x+y-1"], &[], &XY),
        toy("x", &["x^2+y^2-1"], &[], &XY),
        toy("x", &["x*y-1"], &["x"], &XY),
    ] {
        assert!(BigInt::from(rep.max_degree) <= rep.degree_ceiling);
        assert_eq!(rep.bounds.scenario, Scenario::Constrained);
        for a in &rep.active_sets {
            for c in &a.choices {
                if let Some(poly) = &c.polynomial {
                    assert!(BigInt::from(poly.degree()) <= rep.degree_ceiling);
                }
            }
        }
    }
}

#[test]
fn outside_toy_range_reports_bounds_only() {
    let v = ["a", "b", "c", "d"];
    let rep = toy("a^2+b^2+c^2+d^2", &["a+b+c+d-1"], &[], &v);
    assert_eq!(rep.status, ConstrainedStatus::BoundsOnly);
    assert!(rep.value.is_none());
    assert!(rep.bounds.degree_bound.is_some());
    let rep = toy("x^4+y^2", &["x+y-1"], &[], &XY);
    assert_eq!(rep.status, ConstrainedStatus::BoundsOnly);
}

#[test]
fn two_equalities_are_undetermined_or_finite() {
    let v = ["x", "y", "z"];
    let rep = toy("x^2+y^2+z^2", &["x+y+z-1", "x-y"], &[], &v);
    assert!(matches!(rep.status, ConstrainedStatus::Undetermined | ConstrainedStatus::Finite));
    // the Lagrange point (1/3, 1/3, 1/3) with value 1/3 is among the candidates
    assert!(has(&rep, &rat(1, 3)));
}

#[test]
fn deterministic_for_a_seed() {
    let a = serde_json::to_string(&toy("x", &["x^2+y^2-1"], &[], &XY)).unwrap();
    let b = serde_json::to_string(&toy("x", &["x^2+y^2-1"], &[], &XY)).unwrap();
    assert_eq!(a, b);
    let f = toy("x", &["x^2+y^2-1"], &[], &XY);
    assert!(f.value.unwrap().to_f64().to_i64() == Some(-1));
}
