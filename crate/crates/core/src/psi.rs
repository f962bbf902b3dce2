//! The genus-2 element psi in J_3 with Casson invariant 1, as a product of
//! sixteen bounding-curve twist powers, together with the diagram data its
//! invariants are checked against.

use crate::diagrams::{eta, odot, tree1, tree2, tree3, DiagramSum};
use crate::error::{Error, Result};
use crate::johnson::{as_derivation, derivation_bracket, Derivation, TwistEntry, TwistList};
use crate::surface::{commutator_barcode, conjugate_barcode, omega, Barcode, HVector};
use crate::tensor::{rat, TensorSpace};

pub const GENUS: usize = 2;
pub const TRUNC: usize = 5;

/// Exponents of `gamma2, t1..t13, s1, s2`.
pub const COEFFICIENTS: [i64; 16] = [-3, -1, -1, 2, 2, 1, -1, -1, 1, -1, 1, -1, -1, 1, 7, 2];

pub const NAMES: [&str; 16] = [
    "gamma2", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9", "t10", "t11", "t12", "t13",
    "s1", "s2",
];

/// A second word for the curve of `t7`.
pub const T7_ALTERNATIVE: [i32; 14] = [-3, 4, 1, -2, -1, -1, 4, 1, 1, 2, -1, -4, 3, -4];

/// The words `(U, V)` of each commutator `[U, V]` making up a twist curve;
/// the homology classes of a spine give a symplectic basis of the bounded
/// subsurface up to order and sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spine {
    pub pairs: Vec<(Barcode, Barcode)>,
}

impl Spine {
    /// Homology pairs reordered so that each has `omega = 1`.
    pub fn symplectic_pairs(&self, genus: usize) -> Result<Vec<(HVector, HVector)>> {
        self.pairs
            .iter()
            .map(|(u, v)| {
                let (hu, hv) = (u.homology(genus)?, v.homology(genus)?);
                match omega(&hu, &hv)? {
                    1 => Ok((hu, hv)),
                    -1 => Ok((hv, hu)),
                    w => Err(Error::domain(format!("spine pair has omega = {w}"))),
                }
            })
            .collect()
    }
}

/// A nested bracket of diagram sums, evaluated as derivations.
#[derive(Clone, Debug, PartialEq)]
pub enum BracketExpr {
    Leaf(DiagramSum),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn bracket(x: BracketExpr, y: BracketExpr) -> BracketExpr {
        BracketExpr::Bracket(Box::new(x), Box::new(y))
    }

    pub fn degree(&self) -> usize {
        match self {
            BracketExpr::Leaf(d) => d.terms().first().map_or(0, |(_, x)| x.degree()),
            BracketExpr::Bracket(x, y) => x.degree() + y.degree(),
        }
    }

    /// Images of leaves under eta, bracketed as derivations.
    pub fn evaluate(&self, space: TensorSpace) -> Result<Derivation> {
        match self {
            BracketExpr::Leaf(d) => as_derivation(&eta(d, space)?, self.degree()),
            BracketExpr::Bracket(x, y) => {
                derivation_bracket(&x.evaluate(space)?, &y.evaluate(space)?)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PsiDataset {
    pub names: Vec<&'static str>,
    pub twists: TwistList,
    pub spines: Vec<Spine>,
    /// tau_3(psi) as fifteen caterpillars.
    pub expected_tau3: DiagramSum,
    /// The same element as four caterpillars with composite labels.
    pub expected_tau3_compact: DiagramSum,
    /// tau_3(psi) as a sum of brackets of lower-degree trees.
    pub bracket_terms: Vec<BracketExpr>,
}

fn bc(v: &[i32]) -> Barcode {
    Barcode::from(v)
}

/// `[a, b, -a, -b]` for single letters.
fn brack(a: i32, b: i32) -> Vec<i32> {
    commutator_barcode(&bc(&[a]), &bc(&[b])).entries().to_vec()
}

fn cat(parts: &[&[i32]]) -> Vec<i32> {
    parts.concat()
}

struct Basis {
    a1: HVector,
    b1: HVector,
    a2: HVector,
    b2: HVector,
}

fn basis() -> Basis {
    Basis {
        a1: HVector::a(GENUS, 1),
        b1: HVector::b(GENUS, 1),
        a2: HVector::a(GENUS, 2),
        b2: HVector::b(GENUS, 2),
    }
}

fn spines() -> Vec<Spine> {
    let b12 = brack(1, -2);
    let b21 = brack(-2, 1);
    let one = |u: Vec<i32>, v: Vec<i32>| Spine {
        pairs: vec![(bc(&u), bc(&v))],
    };
    vec![
        Spine {
            pairs: vec![(bc(&[3]), bc(&[-4])), (bc(&[1]), bc(&[-2]))],
        },
        one(cat(&[&b21, &[-4, 1]]), vec![-2]),
        one(vec![1], vec![-4, 3, 4, -2]),
        one(vec![1], cat(&[&[-4, -3, 4], &b12, &[-2]])),
        one(vec![3], vec![-1, -4]),
        one(vec![1], vec![-4, -3, -2]),
        one(vec![3], vec![-2, -1, -4]),
        one(cat(&[&[-3, 4], &b12, &[-2, -1, -4]]), vec![4]),
        one(vec![3, 4, 1], vec![-2]),
        one(vec![1], vec![-4, -2]),
        one(cat(&[&[-4, -3, 4], &b12, &[-2]]), vec![4]),
        one(cat(&[&b21, &[-4, 3, 4, 1]]), vec![-2]),
        one(
            cat(&[&[1, -4, -3, 4], &b12, &[4, 1], &b21, &[-4, 3, 4]]),
            cat(&[&[-4, -3, 4], &b12, &[-2]]),
        ),
        one(cat(&[&[-4, -3, 4], &b12, &[-2, -1]]), vec![1, 2, 4]),
        one(vec![1], vec![-2]),
        one(vec![3], vec![-4]),
    ]
}

/// Barcode of a twist curve: the product of the commutators of its spine,
/// each laid out as `bra(U, V)`.
fn spine_barcode(spine: &Spine) -> Barcode {
    spine.pairs.iter().fold(Barcode::empty(), |acc, (u, v)| {
        acc.concat(&conjugate_barcode(u, v))
    })
}

fn expected_tau3() -> DiagramSum {
    let Basis { a1, b1, a2, b2 } = basis();
    let c = |k: i64, x: [&HVector; 5]| tree3(x[0], x[1], x[2], x[3], x[4]).scale_int(k);
    [
        c(-1, [&a2, &a1, &a1, &b1, &a1]),
        c(-1, [&a2, &b1, &a1, &a2, &a1]),
        c(-1, [&b2, &a1, &a1, &b1, &a1]),
        c(-1, [&b2, &b1, &a1, &b1, &a1]),
        c(1, [&b2, &a2, &a1, &b1, &a1]),
        c(1, [&b2, &a2, &a1, &a2, &a1]),
        c(1, [&b2, &a2, &a1, &b2, &a1]),
        c(1, [&b2, &a2, &b1, &b2, &a1]),
        c(3, [&b2, &a2, &a2, &b1, &a1]),
        c(1, [&b2, &a2, &a2, &a2, &a1]),
        c(1, [&b2, &a2, &b2, &b1, &a1]),
        c(-1, [&b2, &a1, &a2, &b1, &a1]),
        c(1, [&b2, &b1, &a2, &b1, &a1]),
        c(1, [&b2, &a2, &b2, &a2, &a1]),
        c(-1, [&b2, &a2, &b2, &a2, &b1]),
    ]
    .into_iter()
    .fold(DiagramSum::zero(), |acc, t| acc.add(&t))
}

fn expected_tau3_compact() -> DiagramSum {
    let Basis { a1, b1, a2, b2 } = basis();
    let a2_a1 = &a2 - &a1;
    tree3(&(&b1 + &a2), &a1, &(&(&a1 + &a2) + &b2), &a2, &(&a1 + &b2))
        .add(&tree3(&a2_a1, &b2, &(&a1 + &b1), &a1, &(&b1 + &b2)))
        .sub(&tree3(&a2_a1, &b1, &b2, &a2, &(&b1 + &b2)))
        .add(&tree3(&b2, &a2, &(&a2_a1.scale(2) + &b2), &b1, &a1))
}

fn bracket_terms() -> Vec<BracketExpr> {
    use BracketExpr::Leaf;
    let Basis { a1, b1, a2, b2 } = basis();
    let br = BracketExpr::bracket;
    vec![
        br(
            Leaf(
                tree1(&a1, &b1, &a2)
                    .scale_int(3)
                    .add(&tree1(&b2, &a2, &a1))
                    .add(&tree1(&a1, &b1, &b2)),
            ),
            Leaf(tree2(&a1, &b1, &a2, &b2)),
        ),
        br(
            Leaf(tree1(&b1, &a1, &(&a2 - &b2))),
            Leaf(tree2(&a1, &a2, &b2, &a1)),
        ),
        br(Leaf(tree1(&a2, &b2, &a1)), Leaf(tree2(&a2, &b1, &a1, &a2))),
        br(
            Leaf(tree1(&a1, &b1, &a2)),
            br(
                Leaf(tree1(&a1, &b1, &b2)),
                Leaf(tree1(&(&a1 - &b1), &a2, &b2)),
            ),
        ),
        br(
            Leaf(tree1(&b1, &a2, &b2)),
            br(Leaf(tree1(&a1, &b2, &a2)), Leaf(tree1(&a1, &b1, &b2))),
        ),
    ]
}

/// The embedded dataset.
pub fn load_psi() -> PsiDataset {
    let spines = spines();
    let entries = spines
        .iter()
        .zip(COEFFICIENTS)
        .enumerate()
        .map(|(i, (spine, coeff))| {
            let genus = if i == 0 { 2 } else { 1 };
            TwistEntry::new(coeff, genus, spine_barcode(spine)).expect("valid dataset entry")
        })
        .collect();
    PsiDataset {
        names: NAMES.to_vec(),
        twists: TwistList::new(entries),
        spines,
        expected_tau3: expected_tau3(),
        expected_tau3_compact: expected_tau3_compact(),
        bracket_terms: bracket_terms(),
    }
}

/// Left side of the degree-2 identity: `3 tau_2(T_gamma2)` in Morita form,
/// `3 (1/2 T(a1,b1,a1,b1) + T(a1,b1,a2,b2) + 1/2 T(a2,b2,a2,b2))`.
pub fn odot_identity_lhs() -> DiagramSum {
    let Basis { a1, b1, a2, b2 } = basis();
    tree2(&a1, &b1, &a1, &b1)
        .scale(&rat(1, 2))
        .add(&tree2(&a1, &b1, &a2, &b2))
        .add(&tree2(&a2, &b2, &a2, &b2).scale(&rat(1, 2)))
        .scale_int(3)
}

/// Right side: the same element as a combination of `u (.) v` with
/// `omega(u, v) = 1`, one term per genus-1 twist family of psi.
pub fn odot_identity_rhs() -> DiagramSum {
    let Basis { a1, b1, a2, b2 } = basis();
    let o = |k: i64, u: HVector, v: HVector| odot(&u, &v).scale_int(k);
    [
        o(7, a1.clone(), b1.clone()),
        o(2, a2.clone(), b2.clone()),
        o(-1, a1.clone(), &b1 + &b2),
        o(1, &b1 + &a2, b2.clone()),
        o(-1, &a1 + &a2, b1.clone()),
        o(-1, &(&a1 + &b1) + &a2, b2.clone()),
        o(1, &(&a1 + &a2) + &b2, b1.clone()),
        o(1, a1.clone(), &(&b1 + &a2) + &b2),
        o(-1, a2.clone(), &(&a1 + &b1) + &b2),
        o(2, a1.clone(), &b1 + &a2),
        o(2, a2.clone(), &a1 + &b2),
        o(-1, &a1 - &b2, b1.clone()),
        o(-1, a1.clone(), &b1 - &a2),
        o(-1, &a1.scale(2) + &b2, &b1 + &a2),
        o(1, &(&a1 + &b1) + &a2, &(&a1 + &b1) + &b2),
    ]
    .into_iter()
    .fold(DiagramSum::zero(), |acc, t| acc.add(&t))
}

/// `T(a2,b1,a1,a2)` and its expression through `u (.) v` terms.
pub fn tree_as_odots() -> (DiagramSum, DiagramSum) {
    let Basis { a1, b1, a2, .. } = basis();
    let lhs = tree2(&a2, &b1, &a1, &a2);
    let rhs = odot(&a1, &b1)
        .sub(&odot(&a1, &(&b1 + &a2)))
        .sub(&odot(&(&a1 + &a2), &b1))
        .add(&odot(&(&a1 + &a2), &(&b1 + &a2)));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barcodes_match_construction() {
        let psi = load_psi();
        assert_eq!(psi.twists.len(), 16);
        let e = psi.twists.entries();
        assert_eq!(e[0].barcode, bc(&[3, -4, -3, 4, 1, -2, -1, 2]));
        assert_eq!(e[14].barcode, bc(&[1, -2, -1, 2]));
        assert_eq!(e[15].barcode, bc(&[3, -4, -3, 4]));
        assert_eq!(
            e[7].barcode,
            bc(&[-3, 4, 1, -2, -1, 2, -2, -1, -4, 4, 4, 1, 2, -2, 1, 2, -1, -4, 3, -4])
        );
        assert_eq!(e[4].barcode, bc(&[3, -1, -4, -3, 4, 1]));
        let coeffs: Vec<i64> = e.iter().map(|x| x.coeff).collect();
        assert_eq!(coeffs, COEFFICIENTS);
    }

    #[test]
    fn genus_counts() {
        let psi = load_psi();
        let sum = |h: u8| -> i64 {
            psi.twists
                .entries()
                .iter()
                .filter(|e| e.genus == h)
                .map(|e| e.coeff)
                .sum()
        };
        assert_eq!(sum(1), 10);
        assert_eq!(sum(2), -3);
    }

    #[test]
    fn all_curves_null_homologous() {
        let psi = load_psi();
        psi.twists.validate(GENUS).unwrap();
        assert!(Barcode::from(&T7_ALTERNATIVE[..])
            .homology(GENUS)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn spine_pairs_are_symplectic() {
        for spine in load_psi().spines {
            let pairs = spine.symplectic_pairs(GENUS).unwrap();
            for (u, v) in pairs {
                assert_eq!(omega(&u, &v).unwrap(), 1);
            }
        }
    }
}
