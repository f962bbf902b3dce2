//! Symplectic Magnus expansions, given by their logarithms on the free
//! generators `alpha_i`, `beta_i`.

use crate::error::{Error, Result};
use crate::surface::{barcode_to_word, boundary_barcode, Barcode, Curve};
use crate::tensor::{br, rat, Tensor, TensorSpace};

#[derive(Clone, Debug)]
pub struct SymplecticExpansion {
    space: TensorSpace,
    log_alpha: Vec<Tensor>,
    log_beta: Vec<Tensor>,
    alpha: Vec<Tensor>,
    alpha_inv: Vec<Tensor>,
    beta: Vec<Tensor>,
    beta_inv: Vec<Tensor>,
}

impl SymplecticExpansion {
    /// Builds an expansion from `l(alpha_i)`, `l(beta_i)` for `i = 1..g`.
    ///
    /// Each log-value must be a Lie series with zero constant term whose
    /// degree-1 part is the matching generator.
    pub fn from_log_values(log_alpha: Vec<Tensor>, log_beta: Vec<Tensor>) -> Result<Self> {
        let Some(first) = log_alpha.first() else {
            return Err(Error::domain("expansion needs at least one generator pair"));
        };
        let space = first.space();
        let g = space.genus;
        if log_alpha.len() != g || log_beta.len() != g {
            return Err(Error::domain(format!(
                "expected {g} log-values per family, got {} and {}",
                log_alpha.len(),
                log_beta.len()
            )));
        }
        for (i, (la, lb)) in log_alpha.iter().zip(&log_beta).enumerate() {
            for (l, gen, name) in [(la, space.a(i + 1), "alpha"), (lb, space.b(i + 1), "beta")] {
                if l.space() != space {
                    return Err(Error::domain("log-values live in different spaces"));
                }
                if !l.constant_term().eq(&rat(0, 1)) || l.extract(1) != gen {
                    return Err(Error::domain(format!(
                        "l({name}_{}) must start with its generator",
                        i + 1
                    )));
                }
                if !l.dynkin_defect()?.is_zero() {
                    return Err(Error::domain(format!(
                        "l({name}_{}) is not a Lie series",
                        i + 1
                    )));
                }
            }
        }
        let exp_all = |ls: &[Tensor], sign: i64| -> Result<Vec<Tensor>> {
            ls.iter().map(|l| l.scale_int(sign).exp_series()).collect()
        };
        Ok(SymplecticExpansion {
            space,
            alpha: exp_all(&log_alpha, 1)?,
            alpha_inv: exp_all(&log_alpha, -1)?,
            beta: exp_all(&log_beta, 1)?,
            beta_inv: exp_all(&log_beta, -1)?,
            log_alpha,
            log_beta,
        })
    }

    pub fn space(&self) -> TensorSpace {
        self.space
    }

    pub fn genus(&self) -> usize {
        self.space.genus
    }

    pub fn trunc(&self) -> usize {
        self.space.trunc
    }

    /// `l(alpha_i)`, `i` in `1..=g`.
    pub fn log_alpha(&self, i: usize) -> &Tensor {
        &self.log_alpha[i - 1]
    }

    /// `l(beta_i)`, `i` in `1..=g`.
    pub fn log_beta(&self, i: usize) -> &Tensor {
        &self.log_beta[i - 1]
    }

    /// theta of a word: the product of the exponentials of the signed
    /// log-values of its letters.
    pub fn theta(&self, bc: &Barcode) -> Result<Tensor> {
        let mut out = self.space.one();
        for letter in barcode_to_word(bc, self.genus())? {
            let i = letter.index - 1;
            let factor = match (letter.kind, letter.inverse) {
                (Curve::Alpha, false) => &self.alpha[i],
                (Curve::Alpha, true) => &self.alpha_inv[i],
                (Curve::Beta, false) => &self.beta[i],
                (Curve::Beta, true) => &self.beta_inv[i],
            };
            out = out.product(factor)?;
        }
        Ok(out)
    }

    /// `log(theta(bc))`.
    pub fn log_theta(&self, bc: &Barcode) -> Result<Tensor> {
        self.theta(bc)?.log_series()
    }

    /// Nonzero homogeneous parts of `theta(zeta) - exp(sum_i [a_i, b_i])`,
    /// with `zeta` the boundary word.
    pub fn symplectic_defect(&self) -> Result<Vec<(usize, Tensor)>> {
        let g = self.genus();
        let s = self.space;
        let mut omega = s.zero();
        for i in 1..=g {
            omega = &omega + &br(&s.a(i), &s.b(i));
        }
        let diff = &self.theta(&boundary_barcode(g))? - &omega.exp_series()?;
        Ok((0..=s.trunc)
            .map(|k| (k, diff.extract(k)))
            .filter(|(_, t)| !t.is_zero())
            .collect())
    }
}

/// The standard expansion, exact through degree 3:
///
/// ```text
/// l(alpha_i) = a_i - 1/2 [a_i,b_i] + 1/12 [[a_i,b_i],b_i] - 1/2 [sum_{j<i} [a_j,b_j], a_i]
/// l(beta_i)  = b_i - 1/2 [a_i,b_i] + 1/4 [[a_i,b_i],b_i] + 1/12 [a_i,[a_i,b_i]]
///              + 1/2 [b_i, sum_{j<i} [a_j,b_j]]
/// ```
pub fn default_expansion(genus: usize, trunc: usize) -> Result<SymplecticExpansion> {
    if trunc < 2 {
        return Err(Error::domain(
            "expansion needs truncation degree at least 2",
        ));
    }
    let s = TensorSpace::new(genus, trunc)?;
    let mut log_alpha = Vec::with_capacity(genus);
    let mut log_beta = Vec::with_capacity(genus);
    let mut lower = s.zero();
    for i in 1..=genus {
        let (a, b) = (s.a(i), s.b(i));
        let ab = br(&a, &b);
        let la = &(&(&a - &ab.scale(&rat(1, 2))) + &br(&ab, &b).scale(&rat(1, 12)))
            - &br(&lower, &a).scale(&rat(1, 2));
        let lb = &(&(&(&b - &ab.scale(&rat(1, 2))) + &br(&ab, &b).scale(&rat(1, 4)))
            + &br(&a, &ab).scale(&rat(1, 12)))
            + &br(&b, &lower).scale(&rat(1, 2));
        log_alpha.push(la);
        log_beta.push(lb);
        lower = &lower + &ab;
    }
    SymplecticExpansion::from_log_values(log_alpha, log_beta)
}
