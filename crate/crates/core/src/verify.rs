//! The end-to-end reproduction run over the `psi` dataset.

use std::fmt;

use crate::casson::{d_core, d_prime, dbar_prime, lambda_j3, twist_audit};
use crate::diagrams::{eta, kappa, tree2};
use crate::error::Result;
use crate::expansion::{default_expansion, SymplecticExpansion};
use crate::johnson::{l_k, tau2, tau3, TwistEntry, TwistList};
use crate::psi::{
    odot_identity_lhs, odot_identity_rhs, tree_as_odots, PsiDataset, GENUS, T7_ALTERNATIVE, TRUNC,
};
use crate::surface::{Barcode, HVector};
use crate::tensor::{rat, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Empty on success; otherwise what differed.
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl FnOnce() -> String) -> Self {
        Check {
            name,
            passed,
            detail: if passed { String::new() } else { detail() },
        }
    }

    fn tensors(name: &'static str, got: &Tensor, want: &Tensor) -> Self {
        let diff = got - want;
        Check::new(name, diff.is_zero(), || format!("difference: {diff}"))
    }

    fn error(name: &'static str, e: crate::Error) -> Self {
        Check {
            name,
            passed: false,
            detail: e.to_string(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {}", self.name)?;
        if !self.passed {
            write!(f, "\n      {}", self.detail)?;
        }
        Ok(())
    }
}

type Step = fn(&SymplecticExpansion, &PsiDataset) -> Result<Check>;

/// Runs every check; a check that errors out is reported as failed.
pub fn verify_psi(psi: &PsiDataset) -> Vec<Check> {
    let exp = match default_expansion(GENUS, TRUNC) {
        Ok(e) => e,
        Err(e) => return vec![Check::error("default expansion", e)],
    };
    let steps: [(&'static str, Step); 11] = [
        ("expansion symplectic through degree 3", check_symplectic),
        ("tau_2(psi) = 0", check_tau2),
        ("tau_3(psi) = 15-term tree sum", check_tau3_display),
        ("15-term sum = compact 4-term sum", check_tau3_compact),
        ("tau_3(psi) = bracket decomposition", check_brackets),
        ("degree-2 odot identity", check_odot_identity),
        ("T(a2,b1,a1,a2) as odot combination", check_tree_as_odots),
        (
            "T(a1,b1,a2,b2) = tau_2(gamma2 s1^-1 s2^-1)",
            check_separating_tree,
        ),
        (
            "Casson numbers d=-24 d'=0 lambda=1 counts (10,-3)",
            check_casson,
        ),
        ("per-twist Morita form and dbar'", check_per_twist),
        ("kappa vanishes on the degree-2 identity", check_kappa),
    ];
    let mut checks: Vec<Check> = steps
        .iter()
        .map(|(name, f)| f(&exp, psi).unwrap_or_else(|e| Check::error(name, e)))
        .collect();
    checks.push(
        check_t7_alternative(&exp, psi).unwrap_or_else(|e| Check::error("alternative t7 word", e)),
    );
    checks
}

/// `psi` with the exponent of entry `index` replaced, for exercising the
/// failure path.
pub fn with_coefficient(psi: &PsiDataset, index: usize, coeff: i64) -> Result<PsiDataset> {
    let mut entries = psi.twists.entries().to_vec();
    let old = &entries[index];
    entries[index] = TwistEntry::new(coeff, old.genus, old.barcode.clone())?;
    Ok(PsiDataset {
        twists: TwistList::new(entries),
        ..psi.clone()
    })
}

fn check_symplectic(exp: &SymplecticExpansion, _: &PsiDataset) -> Result<Check> {
    let low: Vec<usize> = exp
        .symplectic_defect()?
        .into_iter()
        .map(|(k, _)| k)
        .filter(|&k| k <= 3)
        .collect();
    Ok(Check::new(
        "expansion symplectic through degree 3",
        low.is_empty(),
        || format!("defect in degrees {low:?}"),
    ))
}

fn check_tau2(exp: &SymplecticExpansion, psi: &PsiDataset) -> Result<Check> {
    let t2 = tau2(exp, &psi.twists)?;
    Ok(Check::tensors("tau_2(psi) = 0", &t2, &exp.space().zero()))
}

fn check_tau3_display(exp: &SymplecticExpansion, psi: &PsiDataset) -> Result<Check> {
    let t3 = tau3(exp, &psi.twists)?;
    let want = eta(&psi.expected_tau3, exp.space())?;
    Ok(Check::tensors("tau_3(psi) = 15-term tree sum", &t3, &want))
}

fn check_tau3_compact(exp: &SymplecticExpansion, psi: &PsiDataset) -> Result<Check> {
    let full = eta(&psi.expected_tau3, exp.space())?;
    let compact = eta(&psi.expected_tau3_compact, exp.space())?;
    Ok(Check::tensors(
        "15-term sum = compact 4-term sum",
        &compact,
        &full,
    ))
}

fn check_brackets(exp: &SymplecticExpansion, psi: &PsiDataset) -> Result<Check> {
    let mut total = exp.space().zero();
    for term in &psi.bracket_terms {
        total = total.try_add(term.evaluate(exp.space())?.value())?;
    }
    let t3 = tau3(exp, &psi.twists)?;
    Ok(Check::tensors(
        "tau_3(psi) = bracket decomposition",
        &total,
        &t3,
    ))
}

fn check_odot_identity(exp: &SymplecticExpansion, _: &PsiDataset) -> Result<Check> {
    let lhs = eta(&odot_identity_lhs(), exp.space())?;
    let rhs = eta(&odot_identity_rhs(), exp.space())?;
    Ok(Check::tensors("degree-2 odot identity", &rhs, &lhs))
}

fn check_tree_as_odots(exp: &SymplecticExpansion, _: &PsiDataset) -> Result<Check> {
    let (lhs, rhs) = tree_as_odots();
    Ok(Check::tensors(
        "T(a2,b1,a1,a2) as odot combination",
        &eta(&rhs, exp.space())?,
        &eta(&lhs, exp.space())?,
    ))
}

fn check_separating_tree(exp: &SymplecticExpansion, psi: &PsiDataset) -> Result<Check> {
    // gamma2 bounds the whole surface and s1, s2 the two handles, so their
    // Morita forms differ by the single mixed tree.
    let e = psi.twists.entries();
    let list = TwistList::new(vec![
        TwistEntry::new(1, 2, e[0].barcode.clone())?,
        TwistEntry::new(-1, 1, e[14].barcode.clone())?,
        TwistEntry::new(-1, 1, e[15].barcode.clone())?,
    ]);
    let g = GENUS;
    let tree = tree2(
        &HVector::a(g, 1),
        &HVector::b(g, 1),
        &HVector::a(g, 2),
        &HVector::b(g, 2),
    );
    Ok(Check::tensors(
        "T(a1,b1,a2,b2) = tau_2(gamma2 s1^-1 s2^-1)",
        &tau2(exp, &list)?,
        &eta(&tree, exp.space())?,
    ))
}

fn check_casson(exp: &SymplecticExpansion, psi: &PsiDataset) -> Result<Check> {
    let audit = twist_audit(&psi.twists);
    let lambda = lambda_j3(exp, &psi.twists);
    let got = (
        d_core(&psi.twists),
        d_prime(&psi.twists),
        audit.n_genus1.clone(),
        audit.n_genus2.clone(),
    );
    let ok = got == (-24, 0, rat(10, 1), rat(-3, 1)) && matches!(&lambda, Ok(l) if *l == rat(1, 1));
    Ok(Check::new(
        "Casson numbers d=-24 d'=0 lambda=1 counts (10,-3)",
        ok,
        || {
            let lambda = match &lambda {
                Ok(l) => l.to_string(),
                Err(e) => e.to_string(),
            };
            format!(
                "d={} d'={} n_genus1={} n_genus2={} lambda={lambda}",
                got.0, got.1, got.2, got.3
            )
        },
    ))
}

fn check_per_twist(exp: &SymplecticExpansion, psi: &PsiDataset) -> Result<Check> {
    let mut bad = Vec::new();
    for ((name, entry), spine) in psi.names.iter().zip(psi.twists.entries()).zip(&psi.spines) {
        let form = crate::diagrams::morita_tau2(&spine.symplectic_pairs(GENUS)?)?;
        let h = i64::from(entry.genus);
        if dbar_prime(&form)? != rat(h * (2 * h + 1), 1) {
            bad.push(format!("{name}: dbar'"));
        }
        if eta(&form, exp.space())? != l_k(exp, &entry.barcode, 4)? {
            bad.push(format!("{name}: L_4"));
        }
    }
    Ok(Check::new(
        "per-twist Morita form and dbar'",
        bad.is_empty(),
        || bad.join(", "),
    ))
}

fn check_kappa(_: &SymplecticExpansion, _: &PsiDataset) -> Result<Check> {
    let k = kappa(&odot_identity_rhs().sub(&odot_identity_lhs()), GENUS)?;
    Ok(Check::new(
        "kappa vanishes on the degree-2 identity",
        k.is_zero(),
        || format!("kappa = {k}"),
    ))
}

fn check_t7_alternative(exp: &SymplecticExpansion, psi: &PsiDataset) -> Result<Check> {
    let primary = &psi.twists.entries()[7].barcode;
    let alt = Barcode::from(&T7_ALTERNATIVE[..]);
    let mut bad = Vec::new();
    for k in [4, 5] {
        if l_k(exp, primary, k)? != l_k(exp, &alt, k)? {
            bad.push(format!("L_{k}"));
        }
    }
    Ok(Check::new("alternative t7 word", bad.is_empty(), || {
        format!("{} differ", bad.join(", "))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::load_psi;

    #[test]
    fn corrupted_coefficient_fails_tau2() {
        let psi = load_psi();
        let bad = with_coefficient(&psi, 14, 6).unwrap();
        let checks = verify_psi(&bad);
        let t2 = checks.iter().find(|c| c.name == "tau_2(psi) = 0").unwrap();
        assert!(!t2.passed);
        assert!(t2.detail.starts_with("difference: "));
    }
}
