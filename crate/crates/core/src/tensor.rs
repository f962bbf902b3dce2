//! Truncated free associative algebra over the rationals.
//!
//! A [`Tensor`] is a finitely supported combination of words in the `2g`
//! generators `a1..ag, b1..bg`. Every value carries its genus and its
//! truncation degree; binary operations refuse to mix values that disagree
//! on either.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A monomial: generator indices in `1..=2g`, where `i <= g` is `a_i` and
/// `g + i` is `b_i`.
///
/// Words order by length first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn new(letters: Vec<u16>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(index: u16) -> Self {
        Word(vec![index])
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The word `w[m..] w[..m]`, with `m` taken modulo the length.
    pub fn rotate(&self, m: usize) -> Word {
        let mut letters = self.0.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(m % n);
        }
        Word(letters)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// The ambient algebra of a tensor: genus `g` (so `2g` generators) and the
/// truncation degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TensorSpace {
    pub genus: usize,
    pub trunc: usize,
}

impl TensorSpace {
    pub fn new(genus: usize, trunc: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::domain("genus must be at least 1"));
        }
        if trunc == 0 {
            return Err(Error::domain("truncation degree must be positive"));
        }
        Ok(TensorSpace { genus, trunc })
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn zero(&self) -> Tensor {
        Tensor {
            space: *self,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Tensor {
        self.scalar(Rational::one())
    }

    pub fn scalar(&self, c: Rational) -> Tensor {
        self.monomial(Word::empty(), c)
    }

    /// `c * w`; dropped if `w` is longer than the truncation degree.
    ///
    /// # Panics
    /// If a letter of `w` is not a generator index of this space.
    pub fn monomial(&self, w: Word, c: Rational) -> Tensor {
        assert!(
            w.letters()
                .iter()
                .all(|&i| i >= 1 && usize::from(i) <= self.rank()),
            "generator index out of range for genus {}",
            self.genus
        );
        let mut t = self.zero();
        if !c.is_zero() && w.len() <= self.trunc {
            t.terms.insert(w, c);
        }
        t
    }

    /// The generator with index `i` in `1..=2g`.
    pub fn generator(&self, i: usize) -> Tensor {
        self.monomial(Word::letter(i as u16), Rational::one())
    }

    /// `a_i`, for `i` in `1..=g`.
    pub fn a(&self, i: usize) -> Tensor {
        assert!(i >= 1 && i <= self.genus);
        self.generator(i)
    }

    /// `b_i`, for `i` in `1..=g`.
    pub fn b(&self, i: usize) -> Tensor {
        assert!(i >= 1 && i <= self.genus);
        self.generator(self.genus + i)
    }

    /// Name of generator `i`: `a1..ag` then `b1..bg`.
    pub fn generator_name(&self, i: u16) -> String {
        let i = usize::from(i);
        if i <= self.genus {
            format!("a{i}")
        } else {
            format!("b{}", i - self.genus)
        }
    }

    fn parse_generator(&self, name: &str) -> Option<u16> {
        let (kind, idx) = name.split_at_checked(1)?;
        let idx: usize = idx.parse().ok()?;
        if idx == 0 || idx > self.genus {
            return None;
        }
        match kind {
            "a" => Some(idx as u16),
            "b" => Some((self.genus + idx) as u16),
            _ => None,
        }
    }

    /// Parses the canonical text form produced by `Display`.
    pub fn parse(&self, text: &str) -> Result<Tensor> {
        let perr = |msg: String| Error::Parse { line: 1, msg };
        let text = text.trim();
        if text == "0" {
            return Ok(self.zero());
        }
        // Split into signed terms on " + " / " - " separators.
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut rest = text;
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        }
        loop {
            let plus = rest.find(" + ");
            let minus = rest.find(" - ");
            let next = match (plus, minus) {
                (Some(p), Some(m)) => Some(p.min(m)),
                (p, m) => p.or(m),
            };
            match next {
                Some(pos) => {
                    pieces.push((negative, &rest[..pos]));
                    negative = &rest[pos..pos + 3] == " - ";
                    rest = &rest[pos + 3..];
                }
                None => {
                    pieces.push((negative, rest));
                    break;
                }
            }
        }
        let mut out = self.zero();
        for (neg, piece) in pieces {
            let mut parts = piece.splitn(2, ' ');
            let coeff_text = parts.next().unwrap_or_default();
            let coeff: Rational = coeff_text
                .parse()
                .map_err(|_| perr(format!("bad coefficient `{coeff_text}`")))?;
            let coeff = if neg { -coeff } else { coeff };
            let word = match parts.next() {
                None => Word::empty(),
                Some(gens) => {
                    let letters = gens
                        .split('*')
                        .map(|g| {
                            self.parse_generator(g.trim())
                                .ok_or_else(|| perr(format!("bad generator `{g}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Word::new(letters)
                }
            };
            if word.len() > self.trunc {
                return Err(perr(format!(
                    "word of length {} exceeds truncation degree {}",
                    word.len(),
                    self.trunc
                )));
            }
            out.add_term(word, coeff);
        }
        Ok(out)
    }
}

/// An element of the free associative algebra truncated at `space.trunc`.
///
/// No zero coefficient is ever stored, so structural equality is equality
/// of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    space: TensorSpace,
    terms: BTreeMap<Word, Rational>,
}

impl Tensor {
    pub fn space(&self) -> TensorSpace {
        self.space
    }

    pub fn genus(&self) -> usize {
        self.space.genus
    }

    pub fn trunc(&self) -> usize {
        self.space.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Word::empty())
    }

    fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() || w.len() > self.space.trunc {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Builds a tensor from terms, summing repeated words.
    pub fn from_terms(
        space: TensorSpace,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Tensor {
        let mut t = space.zero();
        for (w, c) in terms {
            t.add_term(w, c);
        }
        t
    }

    fn check(&self, other: &Tensor) -> Result<()> {
        if self.space.genus != other.space.genus {
            return Err(Error::GenusMismatch {
                left: self.space.genus,
                right: other.space.genus,
            });
        }
        if self.space.trunc != other.space.trunc {
            return Err(Error::DegreeMismatch {
                left: self.space.trunc,
                right: other.space.trunc,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        if c.is_zero() {
            return self.space.zero();
        }
        Tensor {
            space: self.space,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Tensor {
        self.scale(&Rational::from_integer(BigInt::from(n)))
    }

    /// Concatenation product, discarding words longer than the truncation
    /// degree.
    pub fn product(&self, other: &Tensor) -> Result<Tensor> {
        self.check(other)?;
        let n = self.space.trunc;
        let mut out = self.space.zero();
        for (wu, cu) in &self.terms {
            for (wv, cv) in &other.terms {
                if wu.len() + wv.len() <= n {
                    out.add_term(wu.concat(wv), cu * cv);
                }
            }
        }
        Ok(out)
    }

    /// `xy - yx`.
    pub fn bracket(&self, other: &Tensor) -> Result<Tensor> {
        self.product(other)?.try_sub(&other.product(self)?)
    }

    /// Replaces every homogeneous word of length `p` by the sum of its `p`
    /// cyclic rotations.
    pub fn cyclicize(&self) -> Result<Tensor> {
        if !self.constant_term().is_zero() {
            return Err(Error::domain("cyclicize requires a zero constant term"));
        }
        let mut out = self.space.zero();
        for (w, c) in &self.terms {
            for m in 0..w.len() {
                out.add_term(w.rotate(m), c.clone());
            }
        }
        Ok(out)
    }

    /// The homogeneous part of degree `k`.
    pub fn extract(&self, k: usize) -> Tensor {
        Tensor {
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// All parts of degree at most `k`.
    pub fn truncate(&self, k: usize) -> Tensor {
        Tensor {
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest length of a stored word; 0 for the zero tensor.
    pub fn top_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Smallest length of a stored word, or `None` for zero.
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).min()
    }

    /// True if every stored word has length `k`.
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|w| w.len() == k)
    }

    /// `sum x^i / i!` up to the truncation degree.
    pub fn exp_series(&self) -> Result<Tensor> {
        if !self.constant_term().is_zero() {
            return Err(Error::domain("exp_series requires a zero constant term"));
        }
        let mut power = self.space.one();
        let mut out = self.space.one();
        let mut factorial = BigInt::one();
        for i in 1..=self.space.trunc {
            power = power.product(self)?;
            if power.is_zero() {
                break;
            }
            factorial *= BigInt::from(i);
            out = out.try_add(&power.scale(&Rational::new(BigInt::one(), factorial.clone())))?;
        }
        Ok(out)
    }

    /// `sum (-1)^(i+1) (x-1)^i / i` up to the truncation degree.
    pub fn log_series(&self) -> Result<Tensor> {
        if !self.constant_term().is_one() {
            return Err(Error::domain("log_series requires constant term 1"));
        }
        let d = self.try_sub(&self.space.one())?;
        let mut power = self.space.one();
        let mut out = self.space.zero();
        for i in 1..=self.space.trunc {
            power = power.product(&d)?;
            if power.is_zero() {
                break;
            }
            let sign = if i % 2 == 1 { 1 } else { -1 };
            out = out.try_add(&power.scale(&rat(sign, i as i64)))?;
        }
        Ok(out)
    }

    /// Dynkin–Specht–Wever certificate: for each degree `n`, the left-nested
    /// bracketing of the degree-`n` part minus `n` times that part. Zero
    /// exactly when the tensor is a Lie series degree by degree.
    pub fn dynkin_defect(&self) -> Result<Tensor> {
        if !self.constant_term().is_zero() {
            return Err(Error::domain("dynkin_defect requires a zero constant term"));
        }
        let mut out = self.space.zero();
        for (w, c) in &self.terms {
            let n = w.len();
            for (bw, sign) in left_nested_bracket(w) {
                let coeff = if sign > 0 { c.clone() } else { -c.clone() };
                out.add_term(bw, coeff);
            }
            out.add_term(w.clone(), -c * Rational::from_integer(BigInt::from(n)));
        }
        Ok(out)
    }
}

/// Expansion of `[[..[x1,x2],..],xn]` as signed words.
fn left_nested_bracket(w: &Word) -> Vec<(Word, i8)> {
    let letters = w.letters();
    let Some((&first, rest)) = letters.split_first() else {
        return Vec::new();
    };
    let mut acc: Vec<(Vec<u16>, i8)> = vec![(vec![first], 1)];
    for &x in rest {
        let mut next = Vec::with_capacity(acc.len() * 2);
        for (u, s) in acc {
            let mut right = u.clone();
            right.push(x);
            next.push((right, s));
            let mut left = Vec::with_capacity(u.len() + 1);
            left.push(x);
            left.extend_from_slice(&u);
            next.push((left, -s));
        }
        acc = next;
    }
    acc.into_iter().map(|(u, s)| (Word::new(u), s)).collect()
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    write!(f, "{}/{}", c.numer(), c.denom())
}

impl fmt::Display for Tensor {
    /// Canonical form: terms by (degree, word), each `<p>/<q> g*g*...`,
    /// joined by ` + ` / ` - `; zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_coeff(f, &c.abs())?;
            if !w.is_empty() {
                write!(f, " ")?;
                for (j, &g) in w.letters().iter().enumerate() {
                    if j > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", self.space.generator_name(g))?;
                }
            }
        }
        Ok(())
    }
}

// Operator forms panic on mismatched spaces; the `try_*` / `product`
// methods report the mismatch instead.

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        self.try_add(rhs).expect("tensor addition")
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        self.try_sub(rhs).expect("tensor subtraction")
    }
}

impl Mul for &Tensor {
    type Output = Tensor;
    fn mul(self, rhs: &Tensor) -> Tensor {
        self.product(rhs).expect("tensor product")
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale_int(-1)
    }
}

impl Add for Tensor {
    type Output = Tensor;
    fn add(self, rhs: Tensor) -> Tensor {
        &self + &rhs
    }
}

impl Sub for Tensor {
    type Output = Tensor;
    fn sub(self, rhs: Tensor) -> Tensor {
        &self - &rhs
    }
}

impl Mul for Tensor {
    type Output = Tensor;
    fn mul(self, rhs: Tensor) -> Tensor {
        &self * &rhs
    }
}

impl Neg for Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        -&self
    }
}

/// `[x, y]` for tensors known to share a space.
pub fn br(x: &Tensor, y: &Tensor) -> Tensor {
    x.bracket(y).expect("tensor bracket")
}
