//! Casson-core homomorphisms on products of bounding-curve twists.

use std::fmt;

use num_traits::Zero;

use crate::diagrams::{Diagram, DiagramSum};
use crate::error::{Error, Result};
use crate::expansion::SymplecticExpansion;
use crate::johnson::{tau2, TwistList};
use crate::surface::omega;
use crate::tensor::{rat, Rational};

/// `d`: a genus-`h` twist counts `4h(h-1)`.
pub fn d_core(twists: &TwistList) -> i64 {
    twists
        .entries()
        .iter()
        .map(|e| {
            let h = i64::from(e.genus);
            e.coeff * 4 * h * (h - 1)
        })
        .sum()
}

/// `d'`: a genus-`h` twist counts `h(2h+1)`.
pub fn d_prime(twists: &TwistList) -> i64 {
    twists
        .entries()
        .iter()
        .map(|e| {
            let h = i64::from(e.genus);
            e.coeff * h * (2 * h + 1)
        })
        .sum()
}

/// The factor of `d'` through tau_2, on degree-2 diagram sums:
///
/// ```text
/// a (.) b     -> 3 w(a,b)^2
/// T(a,b,c,d)  -> 4 w(a,b) w(c,d) - 2 w(a,d) w(b,c) + 2 w(a,c) w(b,d)
/// ```
pub fn dbar_prime(sum: &DiagramSum) -> Result<Rational> {
    let mut total = Rational::zero();
    for (c, d) in sum.terms() {
        let value = match d {
            Diagram::Odot(a, b) => {
                let w = omega(a, b)?;
                3 * w * w
            }
            Diagram::Tree(t) if t.degree() == 2 => {
                let l = t.leaves();
                let w = |i: usize, j: usize| omega(&l[i], &l[j]);
                4 * w(0, 1)? * w(2, 3)? - 2 * w(0, 3)? * w(1, 2)? + 2 * w(0, 2)? * w(1, 3)?
            }
            Diagram::Tree(t) => {
                return Err(Error::domain(format!(
                    "dbar_prime is defined on degree-2 diagrams, got degree {}",
                    t.degree()
                )))
            }
        };
        total += c * rat(value, 1);
    }
    Ok(total)
}

/// The Casson invariant `-d/24` of a product certified to lie in J_3.
pub fn lambda_j3(exp: &SymplecticExpansion, twists: &TwistList) -> Result<Rational> {
    let t2 = tau2(exp, twists)?;
    if !t2.is_zero() {
        return Err(Error::CertificateFailed(Box::new(t2)));
    }
    Ok(rat(-d_core(twists), 24))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CassonReport {
    pub d_value: i64,
    pub d_prime_value: i64,
    /// `d / 8`: signed count of genus-2 twists.
    pub n_genus2: Rational,
    /// `(4d' - 5d) / 12`: signed count of genus-1 twists.
    pub n_genus1: Rational,
    pub lambda_value: Option<Rational>,
}

/// `d`, `d'` and the twist counts they determine; no lambda.
pub fn twist_audit(twists: &TwistList) -> CassonReport {
    let d = d_core(twists);
    let dp = d_prime(twists);
    CassonReport {
        d_value: d,
        d_prime_value: dp,
        n_genus2: rat(d, 8),
        n_genus1: rat(4 * dp - 5 * d, 12),
        lambda_value: None,
    }
}

/// [`twist_audit`] plus lambda when tau_2 of the list vanishes.
pub fn casson_report(exp: &SymplecticExpansion, twists: &TwistList) -> Result<CassonReport> {
    let mut report = twist_audit(twists);
    report.lambda_value = match lambda_j3(exp, twists) {
        Ok(l) => Some(l),
        Err(Error::CertificateFailed(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(report)
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CassonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d={}", self.d_value)?;
        writeln!(f, "d_prime={}", self.d_prime_value)?;
        writeln!(f, "n_genus1={}", fmt_rational(&self.n_genus1))?;
        writeln!(f, "n_genus2={}", fmt_rational(&self.n_genus2))?;
        match &self.lambda_value {
            Some(l) => writeln!(f, "lambda={}", fmt_rational(l)),
            None => writeln!(f, "lambda=absent"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{morita_tau2, odot, tree1, tree2};
    use crate::expansion::default_expansion;
    use crate::johnson::TwistEntry;
    use crate::surface::{Barcode, HVector};

    fn single(coeff: i64, genus: u8, bc: &[i32]) -> TwistList {
        TwistList::new(vec![
            TwistEntry::new(coeff, genus, Barcode::from(bc)).unwrap()
        ])
    }

    const S1: &[i32] = &[1, -2, -1, 2];
    const G2: &[i32] = &[3, -4, -3, 4, 1, -2, -1, 2];

    #[test]
    fn d_values() {
        assert_eq!(d_core(&single(1, 2, G2)), 8);
        assert_eq!(d_core(&single(1, 1, S1)), 0);
        assert_eq!(d_prime(&single(1, 1, S1)), 3);
        assert_eq!(d_prime(&single(1, 2, G2)), 10);
    }

    #[test]
    fn dbar_prime_values() {
        let g = 2;
        let (a1, b1, a2, b2) = (
            HVector::a(g, 1),
            HVector::b(g, 1),
            HVector::a(g, 2),
            HVector::b(g, 2),
        );
        assert_eq!(dbar_prime(&odot(&a1, &b1)).unwrap(), rat(3, 1));
        assert_eq!(dbar_prime(&tree2(&a1, &b1, &a2, &b2)).unwrap(), rat(4, 1));
        let m = morita_tau2(&[(a1.clone(), b1.clone()), (a2.clone(), b2.clone())]).unwrap();
        assert_eq!(dbar_prime(&m).unwrap(), rat(10, 1));
        assert!(dbar_prime(&tree1(&a1, &b1, &a2)).is_err());
    }

    #[test]
    fn audit_separates_genera() {
        let r1 = twist_audit(&single(1, 1, S1));
        assert_eq!(
            (r1.n_genus1.clone(), r1.n_genus2.clone()),
            (rat(1, 1), rat(0, 1))
        );
        let r2 = twist_audit(&single(1, 2, G2));
        assert_eq!(
            (r2.n_genus1.clone(), r2.n_genus2.clone()),
            (rat(0, 1), rat(1, 1))
        );
    }

    #[test]
    fn lambda_requires_certificate() {
        let e = default_expansion(2, 5).unwrap();
        assert_eq!(lambda_j3(&e, &TwistList::default()).unwrap(), rat(0, 1));
        assert!(matches!(
            lambda_j3(&e, &single(1, 2, G2)),
            Err(Error::CertificateFailed(_))
        ));
        let report = casson_report(&e, &single(1, 2, G2)).unwrap();
        assert_eq!(report.lambda_value, None);
        assert_eq!(
            report.to_string(),
            "d=8\nd_prime=10\nn_genus1=0\nn_genus2=1\nlambda=absent\n"
        );
    }
}
