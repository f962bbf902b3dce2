//! Tree-like Jacobi diagrams of degree 1 to 3 with homology labels, their
//! images in the tensor algebra, and the mod-3 map `kappa`.
//!
//! Shapes are fixed by leaf order. Writing `N` for cyclicization, the
//! expansion map reads
//!
//! ```text
//! Y(a,b,c)       -> N([b,a] c)
//! T(a,b,c,d)     -> N([a,b] [c,d])
//! C(a,b,c,d,e)   -> N([a,b] [c,[d,e]])
//! u (.) v        -> 1/2 N([u,v] [u,v])
//! ```
//!
//! `T` is the four-leaf tree with `a,b` on one trivalent vertex and `c,d`
//! on the other; `C` is the five-leaf caterpillar with `b,c,d` hanging off
//! the spine from `a` to `e`. Each image equals `sum_x l_x (x) T^x`, the
//! leaf-rooted readings, since its words starting with a given leaf
//! spell out the reading rooted there. A vertex with children `x, y` in
//! counterclockwise order reads `[y, x]`; for `Y` this is the only
//! orientation choice not already fixed by `T`, `C` and `(.)`, and it is
//! the one under which the degree-3 bracket decomposition of tau_3(psi)
//! holds on the nose.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::surface::{omega, HVector};
use crate::tensor::{br, rat, Rational, Tensor, TensorSpace};

/// A tree with `degree + 2` labeled leaves, `degree` in `1..=3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeDiagram {
    leaves: Vec<HVector>,
}

impl TreeDiagram {
    pub fn new(leaves: Vec<HVector>) -> Result<Self> {
        if !(3..=5).contains(&leaves.len()) {
            return Err(Error::domain(format!(
                "tree diagrams have 3 to 5 leaves, got {}",
                leaves.len()
            )));
        }
        let g = leaves[0].genus();
        if leaves.iter().any(|v| v.genus() != g) {
            return Err(Error::domain("tree leaves have different genera"));
        }
        Ok(TreeDiagram { leaves })
    }

    pub fn degree(&self) -> usize {
        self.leaves.len() - 2
    }

    pub fn leaves(&self) -> &[HVector] {
        &self.leaves
    }

    pub fn genus(&self) -> usize {
        self.leaves[0].genus()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Diagram {
    Tree(TreeDiagram),
    /// `u (.) v`, half the symmetric degree-2 tree `T(u,v,u,v)`.
    Odot(HVector, HVector),
}

impl Diagram {
    pub fn degree(&self) -> usize {
        match self {
            Diagram::Tree(t) => t.degree(),
            Diagram::Odot(..) => 2,
        }
    }

    fn genus(&self) -> usize {
        match self {
            Diagram::Tree(t) => t.genus(),
            Diagram::Odot(u, _) => u.genus(),
        }
    }
}

/// A rational combination of diagrams. Terms are kept as entered; equality
/// of sums is decided through [`eta`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiagramSum {
    terms: Vec<(Rational, Diagram)>,
}

impl DiagramSum {
    pub fn zero() -> Self {
        DiagramSum::default()
    }

    pub fn single(d: Diagram) -> Self {
        DiagramSum {
            terms: vec![(rat(1, 1), d)],
        }
    }

    pub fn terms(&self) -> &[(Rational, Diagram)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, c: Rational, d: Diagram) {
        if !c.is_zero() {
            self.terms.push((c, d));
        }
    }

    pub fn scale(&self, c: &Rational) -> DiagramSum {
        DiagramSum {
            terms: self
                .terms
                .iter()
                .filter(|_| !c.is_zero())
                .map(|(x, d)| (x * c, d.clone()))
                .collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> DiagramSum {
        self.scale(&rat(n, 1))
    }

    pub fn add(&self, other: &DiagramSum) -> DiagramSum {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        DiagramSum { terms }
    }

    pub fn sub(&self, other: &DiagramSum) -> DiagramSum {
        self.add(&other.scale_int(-1))
    }
}

impl std::ops::Add for DiagramSum {
    type Output = DiagramSum;
    fn add(self, rhs: DiagramSum) -> DiagramSum {
        DiagramSum::add(&self, &rhs)
    }
}

impl std::ops::Sub for DiagramSum {
    type Output = DiagramSum;
    fn sub(self, rhs: DiagramSum) -> DiagramSum {
        DiagramSum::sub(&self, &rhs)
    }
}

/// Degree-1 tree `Y(a,b,c)`.
pub fn tree1(a: &HVector, b: &HVector, c: &HVector) -> DiagramSum {
    tree(vec![a.clone(), b.clone(), c.clone()])
}

/// Degree-2 tree `T(a,b,c,d)`.
pub fn tree2(a: &HVector, b: &HVector, c: &HVector, d: &HVector) -> DiagramSum {
    tree(vec![a.clone(), b.clone(), c.clone(), d.clone()])
}

/// Degree-3 caterpillar `C(a,b,c,d,e)`.
pub fn tree3(a: &HVector, b: &HVector, c: &HVector, d: &HVector, e: &HVector) -> DiagramSum {
    tree(vec![a.clone(), b.clone(), c.clone(), d.clone(), e.clone()])
}

fn tree(leaves: Vec<HVector>) -> DiagramSum {
    DiagramSum::single(Diagram::Tree(
        TreeDiagram::new(leaves).expect("well-formed tree"),
    ))
}

/// `u (.) v`.
pub fn odot(u: &HVector, v: &HVector) -> DiagramSum {
    DiagramSum::single(Diagram::Odot(u.clone(), v.clone()))
}

fn eta_diagram(d: &Diagram, space: TensorSpace) -> Result<Tensor> {
    let t = |v: &HVector| v.to_tensor(space);
    let raw = match d {
        Diagram::Tree(tree) => {
            let l = tree.leaves.iter().map(t).collect::<Result<Vec<_>>>()?;
            match l.as_slice() {
                [a, b, c] => &br(b, a) * c,
                [a, b, c, d] => &br(a, b) * &br(c, d),
                [a, b, c, d, e] => &br(a, b) * &br(c, &br(d, e)),
                _ => unreachable!("tree leaf count checked on construction"),
            }
        }
        Diagram::Odot(u, v) => {
            let uv = br(&t(u)?, &t(v)?);
            (&uv * &uv).scale(&rat(1, 2))
        }
    };
    raw.cyclicize()
}

/// The expansion map into `H^{(k+2)}`.
pub fn eta(sum: &DiagramSum, space: TensorSpace) -> Result<Tensor> {
    let mut out = space.zero();
    for (c, d) in &sum.terms {
        if d.degree() + 2 > space.trunc {
            return Err(Error::domain(format!(
                "diagram of degree {} does not fit truncation {}",
                d.degree(),
                space.trunc
            )));
        }
        out = out.try_add(&eta_diagram(d, space)?.scale(c))?;
    }
    Ok(out)
}

/// Morita's formula for the twist along the boundary of a subsurface with
/// symplectic basis `(u_i, v_i)`: `sum u_i (.) v_i + sum_{i<j} T(u_i,v_i,u_j,v_j)`.
pub fn morita_tau2(pairs: &[(HVector, HVector)]) -> Result<DiagramSum> {
    for (i, (u, v)) in pairs.iter().enumerate() {
        if omega(u, v)? != 1 {
            return Err(Error::domain(format!("pair {} has omega != 1", i + 1)));
        }
        for (u2, v2) in &pairs[i + 1..] {
            let cross = [omega(u, u2)?, omega(u, v2)?, omega(v, u2)?, omega(v, v2)?];
            if cross.iter().any(|&x| x != 0) {
                return Err(Error::domain("pairs are not mutually orthogonal"));
            }
        }
    }
    let mut out = DiagramSum::zero();
    for (i, (u, v)) in pairs.iter().enumerate() {
        out = out.add(&odot(u, v));
        for (u2, v2) in &pairs[i + 1..] {
            out = out.add(&tree2(u, v, u2, v2));
        }
    }
    Ok(out)
}

/// An element of `Lambda^4(H / 3H)`, keyed by increasing basis 4-tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge4 {
    genus: usize,
    coeffs: BTreeMap<[usize; 4], u8>,
}

impl Wedge4 {
    pub fn zero(genus: usize) -> Self {
        Wedge4 {
            genus,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient in `Z/3` of `e_i ^ e_j ^ e_k ^ e_l` (0-based basis
    /// indices, any order).
    pub fn coeff(&self, idx: [usize; 4]) -> u8 {
        let mut sorted = idx;
        let Some(sign) = sort_sign(&mut sorted) else {
            return 0;
        };
        let c = self.coeffs.get(&sorted).copied().unwrap_or(0);
        if sign > 0 {
            c
        } else {
            (3 - c) % 3
        }
    }

    fn add(&mut self, idx: [usize; 4], c: i64) {
        let mut sorted = idx;
        let Some(sign) = sort_sign(&mut sorted) else {
            return;
        };
        let entry = self.coeffs.entry(sorted).or_insert(0);
        *entry = ((i64::from(*entry) + sign * c).rem_euclid(3)) as u8;
        if *entry == 0 {
            self.coeffs.remove(&sorted);
        }
    }

    /// `a ^ b ^ c ^ d`.
    pub fn wedge(a: &HVector, b: &HVector, c: &HVector, d: &HVector) -> Self {
        let mut out = Wedge4::zero(a.genus());
        out.add_wedge(a, b, c, d, 1);
        out
    }

    fn add_wedge(&mut self, a: &HVector, b: &HVector, c: &HVector, d: &HVector, scale: i64) {
        let nz = |v: &HVector| -> Vec<(usize, i64)> {
            v.coords()
                .iter()
                .enumerate()
                .filter(|(_, &x)| x.rem_euclid(3) != 0)
                .map(|(i, &x)| (i, x))
                .collect()
        };
        let (na, nb, nc, nd) = (nz(a), nz(b), nz(c), nz(d));
        for &(i, x) in &na {
            for &(j, y) in &nb {
                for &(k, z) in &nc {
                    for &(l, w) in &nd {
                        let c = (scale * x * y * z * w).rem_euclid(3);
                        if c != 0 {
                            self.add([i, j, k, l], c);
                        }
                    }
                }
            }
        }
    }
}

/// Sorts in place; returns the permutation sign, or `None` on a repeat.
fn sort_sign(idx: &mut [usize; 4]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..4 {
        for j in 0..3 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl fmt::Display for Wedge4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let name = |i: usize| {
            if i < self.genus {
                format!("a{}", i + 1)
            } else {
                format!("b{}", i - self.genus + 1)
            }
        };
        for (n, (idx, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let names: Vec<String> = idx.iter().map(|&i| name(i)).collect();
            write!(f, "{c} {}", names.join("^"))?;
        }
        Ok(())
    }
}

/// Reduction of a rational to `Z/3`; fails when 3 divides the denominator.
fn mod3(c: &Rational) -> Result<i64> {
    let three = num_bigint::BigInt::from(3);
    if c.denom().is_multiple_of(&three) {
        return Err(Error::domain(format!("coefficient {c} is not 3-integral")));
    }
    let n = c.numer().mod_floor(&three);
    let d = c.denom().mod_floor(&three);
    let n: i64 = n.try_into().expect("small residue");
    let d: i64 = d.try_into().expect("small residue");
    // d is 1 or 2 and each is its own inverse mod 3.
    Ok((n * d).rem_euclid(3))
}

/// `kappa(u (.) v) = 0`, `kappa(T(a,b,c,d)) = a ^ b ^ c ^ d` in
/// `Lambda^4(H/3H)`.
pub fn kappa(sum: &DiagramSum, genus: usize) -> Result<Wedge4> {
    let mut out = Wedge4::zero(genus);
    for (c, d) in &sum.terms {
        if d.degree() != 2 {
            return Err(Error::domain(format!(
                "kappa is defined on degree-2 diagrams, got degree {}",
                d.degree()
            )));
        }
        if d.genus() != genus {
            return Err(Error::GenusMismatch {
                left: genus,
                right: d.genus(),
            });
        }
        let c = mod3(c)?;
        if let Diagram::Tree(t) = d {
            let l = &t.leaves;
            out.add_wedge(&l[0], &l[1], &l[2], &l[3], c);
        }
    }
    Ok(out)
}

fn write_diagram(f: &mut fmt::Formatter<'_>, d: &Diagram) -> fmt::Result {
    match d {
        Diagram::Tree(t) => {
            let leaves: Vec<String> = t.leaves.iter().map(ToString::to_string).collect();
            write!(f, "T({})", leaves.join(";"))
        }
        Diagram::Odot(u, v) => write!(f, "O({u};{v})"),
    }
}

impl fmt::Display for DiagramSum {
    /// `<p>/<q> T(v1;v2;...)` and `<p>/<q> O(u;v)` terms joined by ` + ` /
    /// ` - `, each `v` a comma-separated coordinate vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, d)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            write!(f, "{}/{} ", a.numer(), a.denom())?;
            write_diagram(f, d)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for DiagramSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let perr = |msg: String| Error::Parse { line: 1, msg };
        let s = s.trim();
        if s == "0" {
            return Ok(DiagramSum::zero());
        }
        let mut out = DiagramSum::zero();
        let mut rest = s;
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        }
        loop {
            let close = rest
                .find(')')
                .ok_or_else(|| perr(format!("unterminated diagram in `{rest}`")))?;
            let term = &rest[..=close];
            let (coeff_text, diag_text) = term
                .split_once(' ')
                .ok_or_else(|| perr(format!("missing coefficient in `{term}`")))?;
            let c: Rational = coeff_text
                .parse()
                .map_err(|_| perr(format!("bad coefficient `{coeff_text}`")))?;
            let c = if negative { -c } else { c };
            let (kind, body) = diag_text
                .split_once('(')
                .ok_or_else(|| perr(format!("bad diagram `{diag_text}`")))?;
            let labels = body
                .trim_end_matches(')')
                .split(';')
                .map(str::parse)
                .collect::<Result<Vec<HVector>>>()?;
            let d = match (kind, labels.len()) {
                ("T", _) => Diagram::Tree(TreeDiagram::new(labels)?),
                ("O", 2) => Diagram::Odot(labels[0].clone(), labels[1].clone()),
                _ => return Err(perr(format!("bad diagram `{diag_text}`"))),
            };
            out.push(c, d);
            rest = &rest[close + 1..];
            if rest.is_empty() {
                break;
            }
            if let Some(r) = rest.strip_prefix(" + ") {
                negative = false;
                rest = r;
            } else if let Some(r) = rest.strip_prefix(" - ") {
                negative = true;
                rest = r;
            } else {
                return Err(perr(format!("expected separator before `{rest}`")));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: usize = 2;

    fn basis() -> (HVector, HVector, HVector, HVector) {
        (
            HVector::a(G, 1),
            HVector::b(G, 1),
            HVector::a(G, 2),
            HVector::b(G, 2),
        )
    }

    fn sp() -> TensorSpace {
        TensorSpace::new(G, 5).unwrap()
    }

    #[test]
    fn degree_one_tree_is_leaf_sum_of_readings() {
        let s = sp();
        let (a1, b1, a2, _) = basis();
        let img = eta(&tree1(&a1, &b1, &a2), s).unwrap();
        let (x, y, z) = (s.a(1), s.b(1), s.a(2));
        let expected = &(&(&x * &br(&z, &y)) + &(&y * &br(&x, &z))) + &(&z * &br(&y, &x));
        assert_eq!(img, expected);
        // AS: swapping two leaves at the vertex negates.
        let swapped = eta(&tree1(&b1, &a1, &a2), s).unwrap();
        assert_eq!(swapped, -&img);
    }

    #[test]
    fn odot_is_half_symmetric_tree() {
        let s = sp();
        let (a1, b1, _, _) = basis();
        let lhs = eta(&odot(&a1, &b1), s).unwrap();
        let rhs = eta(&tree2(&a1, &b1, &a1, &b1).scale(&rat(1, 2)), s).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(eta(&odot(&b1, &a1), s).unwrap(), lhs);
    }

    #[test]
    fn odot_is_quadratic_not_bilinear() {
        let s = sp();
        let (a1, b1, a2, _) = basis();
        let lhs = eta(
            &odot(&a1, &(&b1 + &a2))
                .sub(&odot(&a1, &b1))
                .sub(&odot(&a1, &a2)),
            s,
        )
        .unwrap();
        let rhs = eta(
            &tree2(&a1, &b1, &a1, &a2)
                .add(&tree2(&a1, &a2, &a1, &b1))
                .scale(&rat(1, 2)),
            s,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn ihx_vanishes() {
        let s = sp();
        let (a1, b1, a2, b2) = basis();
        let (a, b, c, d) = (&a1 + &b2, b1.clone(), &a2 - &a1, b2.clone());
        let ihx = tree2(&a, &b, &c, &d)
            .sub(&tree2(&a, &c, &b, &d))
            .sub(&tree2(&a, &d, &c, &b));
        assert!(eta(&ihx, s).unwrap().is_zero());
    }

    #[test]
    fn morita_examples() {
        let (a1, b1, a2, b2) = basis();
        let one = morita_tau2(&[(a1.clone(), b1.clone())]).unwrap();
        assert_eq!(one, odot(&a1, &b1));
        let two = morita_tau2(&[(a1.clone(), b1.clone()), (a2.clone(), b2.clone())]).unwrap();
        assert_eq!(
            two,
            odot(&a1, &b1)
                .add(&tree2(&a1, &b1, &a2, &b2))
                .add(&odot(&a2, &b2))
        );
        assert!(morita_tau2(&[(b1.clone(), a1.clone())]).is_err());
        assert!(morita_tau2(&[(a1.clone(), b1.clone()), (a2.clone(), &b2 + &a1)]).is_err());
    }

    #[test]
    fn kappa_examples() {
        let (a1, b1, a2, b2) = basis();
        assert!(kappa(&odot(&a1, &b1), G).unwrap().is_zero());
        let w = kappa(&tree2(&a1, &b1, &a2, &b2), G).unwrap();
        assert_eq!(w, Wedge4::wedge(&a1, &b1, &a2, &b2));
        assert_eq!(w.coeff([0, 2, 1, 3]), 1);
        assert_eq!(w.coeff([2, 0, 1, 3]), 2);
        let ihx = tree2(&a1, &b1, &a2, &b2)
            .sub(&tree2(&a1, &a2, &b1, &b2))
            .sub(&tree2(&a1, &b2, &a2, &b1));
        assert!(kappa(&ihx, G).unwrap().is_zero());
        assert!(kappa(&tree1(&a1, &b1, &a2), G).is_err());
        assert!(kappa(&tree2(&a1, &b1, &a2, &b2).scale(&rat(1, 3)), G).is_err());
    }

    #[test]
    fn text_round_trip() {
        let (a1, b1, a2, b2) = basis();
        let sum = tree2(&a1, &b1, &a2, &b2)
            .scale(&rat(-3, 2))
            .add(&odot(&(&a1 + &b2), &b1))
            .add(&tree3(&a1, &b1, &a2, &b2, &a1).scale_int(-1));
        let text = sum.to_string();
        assert_eq!(
            text,
            "-3/2 T(1,0,0,0;0,0,1,0;0,1,0,0;0,0,0,1) + 1/1 O(1,0,0,1;0,0,1,0) - 1/1 T(1,0,0,0;0,0,1,0;0,1,0,0;0,0,0,1;1,0,0,0)"
        );
        let back: DiagramSum = text.parse().unwrap();
        assert_eq!(back, sum);
    }
}
