//! JSON encodings of library values. Integers outside the 53-bit safe
//! range and all rationals are written as strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use toric_log::cox::{Rational, SparsePolynomial};
use toric_log::foliation::{FoliationReport, FoliationVerdict};
use toric_log::jacobian::{SyzygyKind, SyzygySpace};
use toric_log::lattice::IntMatrix;
use toric_log::saito::{ColumnRole, ConditionII, SaitoCertificate, Verdict};
use toric_log::toric::{ClassElement, ToricData};

const SAFE: i64 = (1 << 53) - 1;

pub fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if (-SAFE..=SAFE).contains(&x) => json!(x),
        _ => json!(v.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn rational(q: &Rational) -> Value {
    json!(q.to_string())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}

pub fn class(c: &ClassElement) -> Value {
    json!({ "free": ints(&c.free), "torsion": ints(&c.torsion) })
}

pub fn classes(cs: &[ClassElement]) -> Value {
    Value::Array(cs.iter().map(class).collect())
}

pub fn poly(p: &SparsePolynomial, names: &[String]) -> Value {
    json!(p.to_text(names))
}

pub fn polys(ps: &[SparsePolynomial], names: &[String]) -> Value {
    Value::Array(ps.iter().map(|p| poly(p, names)).collect())
}

pub fn variety(td: &ToricData, name: &str, names: &[String]) -> Value {
    json!({
        "name": name,
        "variables": names,
        "dim": td.dim(),
        "class_group": {
            "free_rank": td.class_group.free_rank,
            "invariant_factors": ints(&td.class_group.invariant_factors),
        },
        "degree_basis": matrix(&td.degree_matrix()),
        "torsion_basis": matrix(&td.torsion_matrix()),
        "degrees": classes(&td.degrees),
        "anticanonical": class(&td.anticanonical),
        "complete": td.complete,
        "projective": td.projective,
    })
}

fn kind(k: SyzygyKind) -> &'static str {
    match k {
        SyzygyKind::Plain => "plain",
        SyzygyKind::Extended => "extended",
    }
}

pub fn syzygy_space(space: &SyzygySpace, names: &[String]) -> Value {
    json!({
        "degree": class(&space.degree),
        "kind": kind(space.kind),
        "dimension": space.dimension(),
        "basis": space.basis.iter().map(|v| polys(&v.entries, names)).collect::<Vec<_>>(),
    })
}

fn condition_ii(c: &ConditionII) -> Value {
    match c {
        ConditionII::NotEffective => json!({ "status": "NotEffective" }),
        ConditionII::Effective { witness } => json!({ "status": "Effective", "witness": witness }),
        ConditionII::Skipped => json!({ "status": "Skipped" }),
        ConditionII::Undetermined => json!({ "status": "Undetermined" }),
    }
}

pub fn certificate(cert: &SaitoCertificate, names: &[String]) -> Value {
    let columns: Vec<Value> = cert
        .matrix
        .columns
        .iter()
        .map(|c| {
            let role = match &c.role {
                ColumnRole::Syzygy { degree, kind: k } => {
                    json!({ "type": "syzygy", "degree": class(degree), "kind": kind(*k) })
                }
                ColumnRole::Euler { functional } => json!({ "type": "euler", "functional": functional + 1 }),
            };
            json!({ "role": role, "entries": polys(&c.entries, names) })
        })
        .collect();
    json!({
        "divisor": poly(&cert.divisor, names),
        "divisor_class": class(&cert.divisor_class),
        "verdict": verdict(cert.verdict),
        "determinant": poly(&cert.determinant, names),
        "scalar": cert.scalar.as_ref().map(rational),
        "exponents": classes(&cert.exponents),
        "kappas": classes(&cert.kappas()),
        "columns": columns,
        "condition_ii": condition_ii(&cert.condition_ii),
        "condition_iii": cert.condition_iii,
        "induced_splitting": cert.induced_splitting.as_deref().map(classes),
        "notes": cert.notes,
    })
}

pub fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Free => "Free",
        Verdict::NotCertified => "NotCertified",
    }
}

pub fn foliation(report: &FoliationReport, names: &[String]) -> Value {
    let overall = match &report.overall {
        FoliationVerdict::Applies => json!({ "status": "Applies" }),
        FoliationVerdict::DoesNotApply(why) => json!({ "status": "DoesNotApply", "reason": why.code() }),
    };
    let v = &report.verdicts;
    json!({
        "q": report.q,
        "k": report.k,
        "n": report.n,
        "degrees": classes(&report.profile.degrees),
        "verdicts": {
            "k_below_n": v.k_below_n,
            "rank_window": v.rank_window,
            "coprime": v.coprime,
            "independent": v.independent,
            "cayley_bacharach": v.cayley_bacharach,
        },
        "coprime_witness": report.coprime_witness.as_ref().map(|(i, j, g)| json!({
            "pair": [i + 1, j + 1],
            "gcd": poly(g, names),
        })),
        "cayley_bacharach_offending": report.cayley_bacharach_offending.as_ref().map(|s| json!({
            "indices": s.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "degrees": s.iter().map(|&i| class(&report.profile.degrees[i])).collect::<Vec<_>>(),
        })),
        "codimension": report.codimension,
        "phi_image_rank": report.phi_image_rank,
        "phi_kernel_rank": report.phi_kernel_rank,
        "a_matrix": matrix(&report.a_matrix),
        "minor_gcd_trivial": report.minor_gcd_trivial,
        "overall": overall,
        "notes": report.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(int(&BigInt::from(SAFE)), json!(SAFE));
        assert_eq!(int(&BigInt::from(-SAFE)), json!(-SAFE));
        assert_eq!(int(&BigInt::from(SAFE + 1)), json!("9007199254740992"));
        let huge = BigInt::from(10).pow(30);
        assert_eq!(int(&huge), json!(huge.to_string()));
    }

    #[test]
    fn rationals_are_fractions() {
        let q = Rational::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(rational(&q), json!("-3/2"));
        assert_eq!(rational(&Rational::from_integer(BigInt::from(5))), json!("5"));
    }
}
