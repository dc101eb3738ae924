use super::*;
use crate::cox::parse_polynomial;
use crate::jacobian::syzygy_basis;
use crate::toric::examples::*;
use num_traits::One;

fn names(n: usize) -> Vec<String> {
    match n {
        3 => ["x", "y", "z"].iter().map(|s| s.to_string()).collect(),
        4 => ["x0", "x1", "y0", "y1"].iter().map(|s| s.to_string()).collect(),
        _ => (0..n).map(|i| format!("x{i}")).collect(),
    }
}

fn poly(td: &ToricData, text: &str) -> SparsePolynomial {
    parse_polynomial(text, &names(td.nvars())).unwrap()
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn x_product(td: &ToricData, s: usize) -> SparsePolynomial {
    (0..s).fold(SparsePolynomial::one(td.nvars()), |acc, i| {
        acc.mul(&SparsePolynomial::variable(td.nvars(), i))
    })
}

#[test]
fn braid_matrix_on_the_plane() {
    let td = p2();
    let b = poly(&td, "(x-y)*(y-z)*(x-z)");
    let low = syzygy_basis(&td, std::slice::from_ref(&b), &td.free_class(&[-1])).unwrap();
    let high = syzygy_basis(&td, std::slice::from_ref(&b), &td.free_class(&[1])).unwrap();
    let quadratic = high
        .basis
        .iter()
        .find(|v| {
            let m = coefficient_matrix(&td, &[low.basis[0].clone(), (*v).clone()]).unwrap();
            !m.determinant().is_zero()
        })
        .expect("some quadratic syzygy completes the matrix")
        .clone();
    let m = coefficient_matrix(&td, &[low.basis[0].clone(), quadratic.clone()]).unwrap();
    assert_eq!(m.columns[2].entries, vec![poly(&td, "x"), poly(&td, "y"), poly(&td, "z")]);
    let cert = saito_verify(&td, &b, &[low.basis[0].entries.clone(), quadratic.entries]).unwrap();
    assert!(cert.is_free());
    assert_eq!(cert.kappas(), vec![td.free_class(&[-1]), td.free_class(&[1])]);
    assert_eq!(td.sum(&cert.kappas()), td.sub(&cert.divisor_class, &td.anticanonical));
    assert_eq!(cert.condition_ii, ConditionII::Effective { witness: vec![0, 0, 0] });
    assert_eq!(
        coefficient_matrix(&td, &[low.basis[0].clone()]).unwrap_err().code(),
        "WrongSyzygyCount"
    );
}

#[test]
fn invariant_triangle_via_verify() {
    let td = p2();
    let f = poly(&td, "x*y*z");
    let nu = vec![
        vec![poly(&td, "-x"), poly(&td, "y"), poly(&td, "0")],
        vec![poly(&td, "0"), poly(&td, "-y"), poly(&td, "z")],
    ];
    let cert = saito_verify(&td, &f, &nu).unwrap();
    assert!(cert.is_free());
    assert_eq!(cert.scalar, Some(int(3)));
    assert_eq!(cert.determinant, f.scale(&int(3)));
    assert_eq!(cert.exponents, vec![td.zero_class(), td.zero_class(), td.zero_class()]);
    assert_eq!(cert.condition_iii, vec![Some(false), Some(false)]);
    assert!(cert.induced_splitting.is_none());
    assert!(cert.notes.iter().any(|n| n == "reduced: user-asserted"));
}

#[test]
fn rejects_non_syzygies() {
    let td = p2();
    let f = poly(&td, "x*y*z");
    let nu = vec![
        vec![poly(&td, "-x"), poly(&td, "y"), poly(&td, "0")],
        vec![poly(&td, "y"), poly(&td, "0"), poly(&td, "0")],
    ];
    assert!(matches!(saito_verify(&td, &f, &nu), Err(Error::NotASyzygy { index: 2, .. })));
    let bad_degree = vec![
        vec![poly(&td, "-x"), poly(&td, "y"), poly(&td, "0")],
        vec![poly(&td, "x"), poly(&td, "y^2"), poly(&td, "0")],
    ];
    assert!(matches!(saito_verify(&td, &f, &bad_degree), Err(Error::NotASyzygy { index: 2, .. })));
    assert_eq!(saito_verify(&td, &f, &nu[..1]).unwrap_err().code(), "WrongSyzygyCount");
}

#[test]
fn not_certified_when_determinant_has_extra_factors() {
    let td = p2();
    let f = poly(&td, "x*(x^4 + 2*y^4 - 3*z^4 + x*y*z^2 + y^3*z)");
    let fx = f.partial_derivative(0);
    let fy = f.partial_derivative(1);
    let fz = f.partial_derivative(2);
    let zero = SparsePolynomial::zero(3);
    let nu = vec![vec![fy.clone(), fx.neg(), zero.clone()], vec![zero, fz, fy.neg()]];
    let cert = saito_verify(&td, &f, &nu).unwrap();
    assert_eq!(cert.verdict, Verdict::NotCertified);
    assert_eq!(cert.determinant, f.mul(&fy).scale(&int(5)));
    assert!(matches!(cert.condition_ii, ConditionII::Effective { .. }));
}

#[test]
fn invariant_divisors_everywhere() {
    for td in [p2(), p1xp1(), p112(), hirzebruch(1), quotient()] {
        for s in 1..=td.nvars() {
            let cert = invariant_divisor_certificate(&td, s).unwrap();
            assert!(cert.is_free(), "s = {s}");
            let f = x_product(&td, s);
            let c = if td.rho() == 0 {
                1.into()
            } else {
                td.euler_value(0, &f.homogeneous_degree(&td).unwrap())
            };
            let sign = if s % 2 == 1 { 1 } else { -1 };
            let expected = f.scale(&Rational::from_integer(c * sign));
            assert_eq!(cert.determinant, expected);
            if td.complete {
                // the determinant has class beta, so the tested class is zero
                assert_eq!(cert.condition_ii, ConditionII::Effective { witness: vec![0; td.nvars()] });
            } else {
                assert_eq!(cert.condition_ii, ConditionII::Skipped);
            }
        }
    }
    assert_eq!(invariant_divisor_certificate(&p2(), 0).unwrap_err().code(), "InvalidInput");
}

#[test]
fn braid_families() {
    let (b, cert) = braid_certificate(&p2()).unwrap();
    assert_eq!(b, poly(&p2(), "(x-y)*(x-z)*(y-z)"));
    assert!(cert.is_free());
    let mut exps: Vec<BigIntish> = cert.exponents.iter().map(|c| c.free[0].clone()).collect();
    exps.sort();
    assert_eq!(exps, vec![(-1).into(), 0.into(), 1.into()]);

    let td = p112();
    let (b, cert) = braid_certificate(&td).unwrap();
    assert_eq!(b, poly(&td, "x - z"));
    assert!(cert.is_free());

    let td = product(&[1, 2]);
    let (_, cert) = braid_certificate(&td).unwrap();
    assert!(cert.is_free());
    assert_eq!(cert.matrix.euler_count(), 2);

    let td = hirzebruch(1);
    let (b, cert) = braid_certificate(&td).unwrap();
    assert_eq!(b.len(), 2);
    assert!(cert.is_free());
    assert_eq!(cert.matrix.euler_count(), 1);
}

type BigIntish = num_bigint::BigInt;

#[test]
fn hypercube_scalar_is_product_of_degrees() {
    let td = p1xp1();
    let f1 = poly(&td, "x0^2 - 3*x0*x1 + 2*x1^2");
    let f2 = poly(&td, "y0^3 - y1^3 + y0*y1^2");
    let cert = hypercube_certificate(&td, &[f1.clone(), f2.clone()]).unwrap();
    assert!(cert.is_free());
    assert_eq!(cert.scalar, Some(int(6)));
    assert_eq!(cert.determinant, f1.mul(&f2).scale(&int(6)));
    let mut kappas = cert.kappas();
    kappas.sort();
    assert_eq!(kappas, vec![td.free_class(&[0, 1]), td.free_class(&[0, 0])].into_iter().rev().collect::<Vec<_>>());
    assert!(cert.notes.iter().any(|n| n.contains("(2-d_i)F_i")));
}

#[test]
fn cones_over_free_divisors() {
    let td = p2();
    let (_, cert) = braid_certificate(&td).unwrap();
    let (cone, lifted) = cone_extension(&td, &cert, 1).unwrap();
    assert_eq!(cone.nvars(), 4);
    assert!(lifted.is_free());
    assert_eq!(lifted.determinant, cert.determinant.with_nvars(4));
    assert_eq!(lifted.kappas().last().unwrap(), &cone.free_class(&[-1]));

    let td = p112();
    let weighted = crate::toric::build_variety(crate::toric::Fan::weighted_projective(&[1, 1, 2]), true).unwrap();
    let (_, cert) = braid_certificate(&weighted).unwrap();
    let (_, lifted) = cone_extension(&weighted, &cert, 3).unwrap();
    assert!(lifted.is_free());
    assert_eq!(lifted.scalar, cert.scalar);

    let f = poly(&td, "x*(x^4 + y^2 + 2*z^4 + x*y*z)");
    let nu = vec![
        vec![f.partial_derivative(1), f.partial_derivative(0).neg(), SparsePolynomial::zero(3)],
        vec![SparsePolynomial::zero(3), f.partial_derivative(2), f.partial_derivative(1).neg()],
    ];
    let bad = saito_verify(&td, &f, &nu).unwrap();
    assert!(!bad.is_free());
    assert_eq!(cone_extension(&td, &bad, 1).unwrap_err().code(), "InvalidInput");
}

#[test]
fn search_finds_hypercube_exponents() {
    let td = p1xp1();
    let f = poly(&td, "(x0^2 - x1^2)*(y0^2 + y0*y1 - 2*y1^2)");
    let cert = saito_search(&td, &f, &SearchOptions::default()).unwrap().unwrap();
    assert!(cert.is_free());
    assert_eq!(cert.kappas(), vec![td.zero_class(), td.zero_class()]);
}

#[test]
fn search_on_first_hirzebruch_surface() {
    let td = hirzebruch(1);
    let fiber = td.degrees[0].clone();
    for k in [3i64, 4] {
        let f = (1..=k).fold(SparsePolynomial::one(4), |acc, a| {
            let form = SparsePolynomial::variable(4, 0).add(&SparsePolynomial::variable(4, 2).scale(&int(a)));
            acc.mul(&form)
        });
        let cert = saito_search(&td, &f, &SearchOptions::default()).unwrap().unwrap();
        assert!(cert.is_free());
        assert_eq!(cert.matrix.euler_count(), 1);
        let mut summands: Vec<ClassElement> = cert.kappas().iter().map(|c| td.neg(c)).collect();
        summands.sort();
        // the fiber coordinates x1, x3 contribute their own classes
        let mut expected = vec![td.degrees[1].clone(), td.degrees[3].clone(), td.scale(2 - k, &fiber)];
        expected.sort();
        assert_eq!(summands, expected, "k = {k}");
        for (kappa, vanishes) in cert.kappas().iter().zip(&cert.condition_iii) {
            assert_eq!(*vanishes, Some(*kappa == td.scale(k - 2, &fiber)));
        }
        assert!(cert.induced_splitting.is_none());
    }
}

#[test]
fn smooth_cubic_is_never_certified() {
    let td = p2();
    let f = poly(&td, "x^3 + y^3 + z^3");
    assert_eq!(saito_search(&td, &f, &SearchOptions::default()).unwrap(), None);
}

#[test]
fn search_reports_the_limit() {
    let td = p1xp1();
    let f = poly(&td, "(x0^2 - x1^2)*(y0^2 + y0*y1 - 2*y1^2)");
    let options = SearchOptions {
        max_box: 3,
        combination_limit: 0,
    };
    assert_eq!(
        saito_search(&td, &f, &options).unwrap_err(),
        Error::SearchLimitExceeded { limit: 0 }
    );
    assert_eq!(saito_search(&quotient(), &SparsePolynomial::one(2), &options).unwrap_err(), Error::RequiresComplete);
}

#[test]
fn determinant_degree_bookkeeping() {
    for (td, cert) in [
        (p2(), braid_certificate(&p2()).unwrap().1),
        (p1xp1(), invariant_divisor_certificate(&p1xp1(), 3).unwrap()),
    ] {
        let det_class = cert.determinant.homogeneous_degree(&td).unwrap();
        assert_eq!(det_class, td.add(&td.anticanonical, &td.sum(&cert.kappas())));
        assert_eq!(cert.determinant.exact_divide(&cert.divisor).unwrap().constant_value(), cert.scalar);
        assert!(cert.scalar.as_ref().is_some_and(|c| !c.is_zero() && *c != Rational::zero() * Rational::one()));
    }
}
