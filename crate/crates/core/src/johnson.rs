//! Kawazumi–Kuno tensors `L_k` of bounding curves, the resulting Johnson
//! homomorphisms of twist products, and degree-`k` derivations of the
//! tensor algebra.

use std::fmt;

use crate::error::{Error, Result};
use crate::expansion::SymplecticExpansion;
use crate::surface::Barcode;
use crate::tensor::{rat, Rational, Tensor, TensorSpace, Word};

/// One factor `T_gamma^coeff` of a product of bounding-curve twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistEntry {
    pub coeff: i64,
    /// Genus of the subsurface bounded by the curve: 1 or 2.
    pub genus: u8,
    pub barcode: Barcode,
}

impl TwistEntry {
    pub fn new(coeff: i64, genus: u8, barcode: Barcode) -> Result<Self> {
        if coeff == 0 {
            return Err(Error::domain("twist exponent must be nonzero"));
        }
        if !(1..=2).contains(&genus) {
            return Err(Error::domain(format!(
                "twist genus must be 1 or 2, got {genus}"
            )));
        }
        Ok(TwistEntry {
            coeff,
            genus,
            barcode,
        })
    }
}

/// A product of Dehn twists along bounding curves, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistList {
    entries: Vec<TwistEntry>,
}

impl TwistList {
    pub fn new(entries: Vec<TwistEntry>) -> Self {
        TwistList { entries }
    }

    pub fn entries(&self) -> &[TwistEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, entry: TwistEntry) {
        self.entries.push(entry);
    }

    /// The product of `self` followed by `other`.
    pub fn concat(&self, other: &TwistList) -> TwistList {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        TwistList { entries }
    }

    /// Checks every barcode is in range and null-homologous for `genus`.
    pub fn validate(&self, genus: usize) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            if !e.barcode.homology(genus)?.is_zero() {
                return Err(Error::domain(format!(
                    "twist {} is not along a null-homologous curve",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// Degree-`k` part of `L(x) = 1/2 N(l(x)^2)` for a null-homologous word.
pub fn l_k(exp: &SymplecticExpansion, bc: &Barcode, k: usize) -> Result<Tensor> {
    if k < 4 || k > exp.trunc() {
        return Err(Error::domain(format!(
            "L_k needs 4 <= k <= {}, got k = {k}",
            exp.trunc()
        )));
    }
    let l = exp.log_theta(bc)?;
    if !l.extract(1).is_zero() {
        return Err(Error::domain(format!(
            "barcode `{bc}` is not null-homologous"
        )));
    }
    let mut sum = exp.space().zero();
    for i in 2..=k - 2 {
        sum = &sum + &l.extract(i).product(&l.extract(k - i))?.cyclicize()?;
    }
    Ok(sum.scale(&rat(1, 2)))
}

fn twist_sum(exp: &SymplecticExpansion, twists: &TwistList, k: usize) -> Result<Tensor> {
    twists.validate(exp.genus())?;
    let mut total = exp.space().zero();
    for e in twists.entries() {
        total = &total + &l_k(exp, &e.barcode, k)?.scale_int(e.coeff);
    }
    Ok(total)
}

/// `sum coeff * L_4`: tau_2 of the product when it lies in J_2.
pub fn tau2(exp: &SymplecticExpansion, twists: &TwistList) -> Result<Tensor> {
    twist_sum(exp, twists, 4)
}

/// `sum coeff * L_5`. This is tau_3 of the product only when [`tau2`] of
/// the same list vanishes; no such check is made here.
pub fn tau3(exp: &SymplecticExpansion, twists: &TwistList) -> Result<Tensor> {
    twist_sum(exp, twists, 5)
}

/// A degree-`k` derivation stored as a tensor in `H^{(k+2)}`: the word
/// `u w` sends `h` to `omega(u, h) w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    value: Tensor,
    degree: usize,
}

pub fn as_derivation(t: &Tensor, k: usize) -> Result<Derivation> {
    if !t.is_homogeneous(k + 2) {
        return Err(Error::domain(format!(
            "derivation of degree {k} needs a homogeneous tensor of degree {}",
            k + 2
        )));
    }
    if k + 2 > t.trunc() {
        return Err(Error::domain("derivation degree exceeds truncation"));
    }
    Ok(Derivation {
        value: t.clone(),
        degree: k,
    })
}

/// `omega(x_i, x_j)` for generator indices in `1..=2g`.
fn omega_gen(genus: usize, i: u16, j: u16) -> i64 {
    let (i, j) = (usize::from(i), usize::from(j));
    if i <= genus && j == i + genus {
        1
    } else if j <= genus && i == j + genus {
        -1
    } else {
        0
    }
}

impl Derivation {
    pub fn value(&self) -> &Tensor {
        &self.value
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> TensorSpace {
        self.value.space()
    }

    /// Image of generator `h` (index in `1..=2g`), of degree `k + 1`.
    pub fn on_generator(&self, h: u16) -> Tensor {
        let g = self.value.genus();
        Tensor::from_terms(
            self.value.space(),
            self.value.terms().filter_map(|(w, c)| {
                let (&u, rest) = w.letters().split_first()?;
                let om = omega_gen(g, u, h);
                (om != 0).then(|| (Word::new(rest.to_vec()), c * rat(om, 1)))
            }),
        )
    }

    fn images(&self) -> Vec<Vec<(Word, Rational)>> {
        let rank = self.value.space().rank();
        (1..=rank as u16)
            .map(|h| {
                self.on_generator(h)
                    .terms()
                    .map(|(w, c)| (w.clone(), c.clone()))
                    .collect()
            })
            .collect()
    }
}

/// Extends `d` to the tensor algebra by the Leibniz rule, truncating at the
/// truncation degree.
pub fn apply_derivation(d: &Derivation, t: &Tensor) -> Result<Tensor> {
    if d.space() != t.space() {
        return Err(Error::domain(
            "derivation and tensor live in different spaces",
        ));
    }
    let images = d.images();
    let trunc = t.trunc();
    let mut terms = Vec::new();
    for (w, c) in t.terms() {
        if w.len() + d.degree > trunc {
            continue;
        }
        let letters = w.letters();
        for (pos, &x) in letters.iter().enumerate() {
            for (img, ic) in &images[usize::from(x) - 1] {
                let mut out = Vec::with_capacity(letters.len() + img.len());
                out.extend_from_slice(&letters[..pos]);
                out.extend_from_slice(img.letters());
                out.extend_from_slice(&letters[pos + 1..]);
                terms.push((Word::new(out), c * ic));
            }
        }
    }
    Ok(Tensor::from_terms(t.space(), terms))
}

/// `d1 d2 - d2 d1`, repackaged as a tensor `sum_i a_i D(b_i) - b_i D(a_i)`.
pub fn derivation_bracket(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    if d1.space() != d2.space() {
        return Err(Error::domain("derivations live in different spaces"));
    }
    let s = d1.space();
    let k = d1.degree + d2.degree;
    if k + 2 > s.trunc {
        return Err(Error::domain(format!(
            "bracket of degrees {} and {} overflows truncation {}",
            d1.degree, d2.degree, s.trunc
        )));
    }
    let image = |h: u16| -> Result<Tensor> {
        let x = apply_derivation(d1, &d2.on_generator(h))?;
        let y = apply_derivation(d2, &d1.on_generator(h))?;
        x.try_sub(&y)
    };
    let g = s.genus;
    let mut value = s.zero();
    for i in 1..=g {
        let (a, b) = (i as u16, (g + i) as u16);
        value = &value + &(&s.generator(i) * &image(b)?);
        value = &value - &(&s.generator(g + i) * &image(a)?);
    }
    Ok(Derivation { value, degree: k })
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::default_expansion;
    use crate::tensor::br;

    fn bc(v: &[i32]) -> Barcode {
        Barcode::from(v)
    }

    #[test]
    fn l4_of_genus_one_commutator_is_half_square() {
        let e = default_expansion(2, 5).unwrap();
        let s = e.space();
        let ab = br(&s.a(1), &s.b(1));
        let expected = (&ab * &ab).cyclicize().unwrap().scale(&rat(1, 2));
        assert_eq!(l_k(&e, &bc(&[1, -2, -1, 2]), 4).unwrap(), expected);
    }

    #[test]
    fn l_k_rejects_bad_input() {
        let e = default_expansion(2, 5).unwrap();
        assert!(l_k(&e, &bc(&[1, 2]), 4).is_err());
        assert!(l_k(&e, &bc(&[1, -2, -1, 2]), 3).is_err());
        assert!(l_k(&e, &bc(&[1, -2, -1, 2]), 6).is_err());
    }

    #[test]
    fn l4_conjugation_and_inversion() {
        let e = default_expansion(2, 5).unwrap();
        let w = bc(&[3, -1, -4, -3, 4, 1]);
        let base = l_k(&e, &w, 4).unwrap();
        for m in 0..w.len() {
            assert_eq!(l_k(&e, &w.rotate(m), 4).unwrap(), base);
        }
        assert_eq!(l_k(&e, &w.inverse(), 4).unwrap(), base);
    }

    #[test]
    fn empty_twist_list() {
        let e = default_expansion(2, 5).unwrap();
        assert!(tau2(&e, &TwistList::default()).unwrap().is_zero());
        assert!(tau3(&e, &TwistList::default()).unwrap().is_zero());
    }

    #[test]
    fn twist_entry_validation() {
        assert!(TwistEntry::new(0, 1, bc(&[1, -2, -1, 2])).is_err());
        assert!(TwistEntry::new(1, 3, bc(&[1, -2, -1, 2])).is_err());
        let list = TwistList::new(vec![TwistEntry::new(1, 1, bc(&[1, 2])).unwrap()]);
        let e = default_expansion(2, 5).unwrap();
        assert!(tau2(&e, &list).is_err());
    }

    #[test]
    fn derivation_pairing() {
        let s = TensorSpace::new(1, 5).unwrap();
        let (a1, b1) = (s.a(1), s.b(1));
        let t = &(&a1 * &b1) * &b1;
        let d = as_derivation(&t, 1).unwrap();
        assert_eq!(apply_derivation(&d, &b1).unwrap(), &b1 * &b1);
        assert!(apply_derivation(&d, &a1).unwrap().is_zero());
        assert!(apply_derivation(&d, &s.one()).unwrap().is_zero());
        let z = as_derivation(&s.zero(), 2).unwrap();
        assert!(apply_derivation(&z, &b1).unwrap().is_zero());
        assert!(as_derivation(&(&t + &a1), 1).is_err());
        assert_eq!(as_derivation(&t, 1).unwrap().value(), &t);
    }

    #[test]
    fn self_bracket_vanishes() {
        let s = TensorSpace::new(2, 5).unwrap();
        let t = (&(&s.a(1) * &s.b(2)) * &s.a(2)).cyclicize().unwrap();
        let d = as_derivation(&t, 1).unwrap();
        assert!(derivation_bracket(&d, &d).unwrap().value().is_zero());
        let big = as_derivation(&s.zero(), 2).unwrap();
        assert!(derivation_bracket(&big, &big).is_err());
    }
}
