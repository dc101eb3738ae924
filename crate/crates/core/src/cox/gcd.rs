//! Multivariate gcd by recursion on the variables: content and primitive
//! part with respect to the highest occurring variable, and a subresultant
//! remainder sequence for the primitive parts.

use super::{Monomial, Rational, SparsePolynomial};
use num_traits::One;

/// Greatest common divisor, scaled to coprime integer coefficients with a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(p: &SparsePolynomial, q: &SparsePolynomial) -> SparsePolynomial {
    gcd_raw(p, q).primitive_normalized()
}

fn gcd_raw(p: &SparsePolynomial, q: &SparsePolynomial) -> SparsePolynomial {
    let n = p.nvars();
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    let Some(v) = (0..n).rev().find(|&i| p.degree_in(i) > 0 || q.degree_in(i) > 0) else {
        return SparsePolynomial::one(n);
    };
    match (p.degree_in(v) > 0, q.degree_in(v) > 0) {
        (true, false) => return gcd_raw(&content(p, v), q),
        (false, true) => return gcd_raw(p, &content(q, v)),
        _ => {}
    }
    let (cp, cq) = (content(p, v), content(q, v));
    let pp = p.exact_divide(&cp).expect("content divides");
    let qp = q.exact_divide(&cq).expect("content divides");
    let g = subresultant_gcd(&pp, &qp, v);
    gcd_raw(&cp, &cq).mul(&g)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
fn content(p: &SparsePolynomial, v: usize) -> SparsePolynomial {
    let coeffs = p.coefficients_in(v);
    let mut g = SparsePolynomial::zero(p.nvars());
    for c in coeffs.values() {
        g = gcd_raw(&g, c);
        if g.is_constant() {
            return SparsePolynomial::one(p.nvars());
        }
    }
    g
}

fn primitive_part(p: &SparsePolynomial, v: usize) -> SparsePolynomial {
    p.exact_divide(&content(p, v)).expect("content divides")
}

fn leading_coefficient(p: &SparsePolynomial, v: usize) -> SparsePolynomial {
    p.coefficients_in(v)
        .into_iter()
        .next_back()
        .map(|(_, c)| c)
        .expect("nonzero")
}

fn shift(p: &SparsePolynomial, v: usize, k: u32) -> SparsePolynomial {
    let mut m = Monomial::one(p.nvars());
    m.0[v] = k;
    p.mul_term(&m, &Rational::one())
}

/// `lc(b)^(deg a − deg b + 1) · a` reduced modulo `b` in `x_v`.
fn pseudo_remainder(a: &SparsePolynomial, b: &SparsePolynomial, v: usize) -> SparsePolynomial {
    let db = b.degree_in(v);
    let lb = leading_coefficient(b, v);
    let mut r = a.clone();
    let mut steps = a.degree_in(v) + 1 - db;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = leading_coefficient(&r, v);
        r = lb.mul(&r).sub(&shift(&lr.mul(b), v, dr - db));
        steps -= 1;
    }
    lb.pow(steps).mul(&r)
}

/// Gcd of two polynomials that are primitive in `x_v` and both involve it.
fn subresultant_gcd(a: &SparsePolynomial, b: &SparsePolynomial, v: usize) -> SparsePolynomial {
    let n = a.nvars();
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = SparsePolynomial::one(n);
    let mut h = SparsePolynomial::one(n);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree_in(v) == 0 {
            return SparsePolynomial::one(n);
        }
        let divisor = g.mul(&h.pow(delta));
        a = b;
        b = r.exact_divide(&divisor).expect("subresultant division is exact");
        g = leading_coefficient(&a, v);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_divide(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}


#[cfg(test)]
mod tests {
    use super::super::parse_polynomial;
    use super::super::testing::random_poly;
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn p(text: &str) -> SparsePolynomial {
        let v: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        parse_polynomial(text, &v).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(gcd(&p("x*y"), &p("x*z")), p("x"));
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x^2 + 2*x*y + y^2")), p("x + y"));
        assert_eq!(gcd(&p("x^3 + 1/2*y"), &p("1")), p("1"));
        assert_eq!(gcd(&p("-4*x^2*z"), &p("6*x*z^2")), p("x*z"));
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x + y")), p("x + y"));
    }

    #[test]
    fn divides_and_scales() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..30 {
            let a = random_poly(&mut rng, 3, 3, 2);
            let b = random_poly(&mut rng, 3, 3, 2);
            let h = random_poly(&mut rng, 3, 2, 2);
            if a.is_zero() || b.is_zero() || h.is_zero() {
                continue;
            }
            let g = gcd(&a, &b);
            a.exact_divide(&g).unwrap();
            b.exact_divide(&g).unwrap();
            let gh = gcd(&a.mul(&h), &b.mul(&h));
            assert_eq!(gh, g.mul(&h).primitive_normalized());
        }
    }
}
