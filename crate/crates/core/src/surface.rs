//! Homology of the surface, its intersection form, and barcodes: the integer
//! encoding of words in the free group pi_1 used for all curve data.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tensor::{rat, Tensor, TensorSpace};

/// An element of `H = H_1(surface)` in the basis `(a1..ag, b1..bg)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HVector {
    coords: Vec<i64>,
}

impl HVector {
    pub fn zero(genus: usize) -> Self {
        HVector {
            coords: vec![0; 2 * genus],
        }
    }

    pub fn from_coords(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::domain(format!(
                "homology vector must have positive even length, got {}",
                coords.len()
            )));
        }
        Ok(HVector { coords })
    }

    pub fn a(genus: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= genus);
        let mut v = HVector::zero(genus);
        v.coords[i - 1] = 1;
        v
    }

    pub fn b(genus: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= genus);
        let mut v = HVector::zero(genus);
        v.coords[genus + i - 1] = 1;
        v
    }

    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, n: i64) -> HVector {
        HVector {
            coords: self.coords.iter().map(|c| c * n).collect(),
        }
    }

    /// The degree-1 tensor with the same coordinates.
    pub fn to_tensor(&self, space: TensorSpace) -> Result<Tensor> {
        if space.genus != self.genus() {
            return Err(Error::GenusMismatch {
                left: space.genus,
                right: self.genus(),
            });
        }
        let mut out = space.zero();
        for (i, &c) in self.coords.iter().enumerate() {
            if c != 0 {
                out = &out + &space.generator(i + 1).scale(&rat(c, 1));
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &HVector, f: impl Fn(i64, i64) -> i64) -> HVector {
        assert_eq!(self.coords.len(), other.coords.len(), "genus mismatch");
        HVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&x, &y)| f(x, y))
                .collect(),
        }
    }
}

impl Add for &HVector {
    type Output = HVector;
    fn add(self, rhs: &HVector) -> HVector {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl Sub for &HVector {
    type Output = HVector;
    fn sub(self, rhs: &HVector) -> HVector {
        self.zip_with(rhs, |x, y| x - y)
    }
}

impl Neg for &HVector {
    type Output = HVector;
    fn neg(self) -> HVector {
        self.scale(-1)
    }
}

impl Add for HVector {
    type Output = HVector;
    fn add(self, rhs: HVector) -> HVector {
        &self + &rhs
    }
}

impl Sub for HVector {
    type Output = HVector;
    fn sub(self, rhs: HVector) -> HVector {
        &self - &rhs
    }
}

impl Neg for HVector {
    type Output = HVector;
    fn neg(self) -> HVector {
        -&self
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for HVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|x| {
                x.trim().parse::<i64>().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("bad homology coordinate `{x}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        HVector::from_coords(coords)
    }
}

/// The intersection form, with `omega(a_i, b_i) = 1`.
pub fn omega(u: &HVector, v: &HVector) -> Result<i64> {
    if u.coords.len() != v.coords.len() {
        return Err(Error::domain(format!(
            "omega: length mismatch {} vs {}",
            u.coords.len(),
            v.coords.len()
        )));
    }
    let g = u.genus();
    Ok((0..g)
        .map(|i| u.coords[i] * v.coords[g + i] - u.coords[g + i] * v.coords[i])
        .sum())
}

/// A basis letter of `pi_1`: `alpha_i` or `beta_i`, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub kind: Curve,
    pub index: usize,
    pub inverse: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Curve {
    Alpha,
    Beta,
}

impl fmt::Display for Letter {
    /// Same spelling as the string encoding `a1+b1-...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            Curve::Alpha => 'a',
            Curve::Beta => 'b',
        };
        let s = if self.inverse { '-' } else { '+' };
        write!(f, "{c}{}{s}", self.index)
    }
}

/// A word in `pi_1` as nonzero integers: `+-(2i-1)` is `alpha_i^{+-1}`,
/// `+-2i` is `beta_i^{+-1}`.
///
/// Range checking against a genus happens where the genus is known
/// ([`Barcode::validate`]); barcodes are never reduced implicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Barcode(Vec<i32>);

impl Barcode {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|&k| k == 0) {
            return Err(Error::Encoding(format!(
                "zero barcode entry at position {pos}"
            )));
        }
        Ok(Barcode(entries))
    }

    pub fn empty() -> Self {
        Barcode(Vec::new())
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks every entry lies in `[-2g, 2g]`.
    pub fn validate(&self, genus: usize) -> Result<()> {
        let bound = 2 * genus as i64;
        for &k in &self.0 {
            if i64::from(k).abs() > bound {
                return Err(Error::Encoding(format!(
                    "barcode entry {k} out of range for genus {genus}"
                )));
            }
        }
        Ok(())
    }

    /// The inverse word: reversed and negated.
    pub fn inverse(&self) -> Barcode {
        Barcode(self.0.iter().rev().map(|k| -k).collect())
    }

    pub fn concat(&self, other: &Barcode) -> Barcode {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Barcode(v)
    }

    /// `w[m..] w[..m]`: a conjugate of the same word.
    pub fn rotate(&self, m: usize) -> Barcode {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let m = m % v.len();
            v.rotate_left(m);
        }
        Barcode(v)
    }

    pub fn power(&self, n: usize) -> Barcode {
        Barcode(self.0.repeat(n))
    }

    /// Homology class of the word.
    pub fn homology(&self, genus: usize) -> Result<HVector> {
        let mut v = HVector::zero(genus);
        for letter in barcode_to_word(self, genus)? {
            let pos = match letter.kind {
                Curve::Alpha => letter.index - 1,
                Curve::Beta => genus + letter.index - 1,
            };
            v.coords[pos] += if letter.inverse { -1 } else { 1 };
        }
        Ok(v)
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for Barcode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split_whitespace()
            .map(|x| {
                x.parse::<i32>()
                    .map_err(|_| Error::Encoding(format!("bad barcode entry `{x}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Barcode::new(entries)
    }
}

impl From<&[i32]> for Barcode {
    /// # Panics
    /// On a zero entry.
    fn from(entries: &[i32]) -> Self {
        Barcode::new(entries.to_vec()).expect("nonzero barcode entries")
    }
}

pub fn barcode_to_word(bc: &Barcode, genus: usize) -> Result<Vec<Letter>> {
    bc.validate(genus)?;
    Ok(bc
        .0
        .iter()
        .map(|&k| {
            let m = k.unsigned_abs() as usize;
            Letter {
                kind: if m % 2 == 1 {
                    Curve::Alpha
                } else {
                    Curve::Beta
                },
                index: m.div_ceil(2),
                inverse: k < 0,
            }
        })
        .collect())
}

/// `u v u^-1 v^-1`.
pub fn commutator_barcode(u: &Barcode, v: &Barcode) -> Barcode {
    u.concat(v).concat(&u.inverse()).concat(&v.inverse())
}

/// The layout `bra(u, v)`: `u`, `v`, then `u` and `v` each reversed
/// and negated. As a group element this is again the commutator `[u, v]`.
pub fn conjugate_barcode(u: &Barcode, v: &Barcode) -> Barcode {
    let mut out = u.0.clone();
    out.extend_from_slice(&v.0);
    out.extend(u.0.iter().rev().map(|k| -k));
    out.extend(v.0.iter().rev().map(|k| -k));
    Barcode(out)
}

/// The boundary word `prod_i beta_i^-1 alpha_i beta_i alpha_i^-1`.
pub fn boundary_barcode(genus: usize) -> Barcode {
    let mut out = Vec::with_capacity(4 * genus);
    for i in 1..=genus as i32 {
        out.extend_from_slice(&[-2 * i, 2 * i - 1, 2 * i, -(2 * i - 1)]);
    }
    Barcode(out)
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(bc: &Barcode) -> Barcode {
    let mut stack: Vec<i32> = Vec::with_capacity(bc.len());
    for &k in &bc.0 {
        if stack.last() == Some(&-k) {
            stack.pop();
        } else {
            stack.push(k);
        }
    }
    Barcode(stack)
}
