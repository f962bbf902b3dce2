//! One PASS/FAIL line per acceptance criterion, with timings. Exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use johnson_core::casson::{d_core, d_prime, dbar_prime, lambda_j3, twist_audit};
use johnson_core::diagrams::{eta, kappa, morita_tau2, odot, tree2};
use johnson_core::expansion::{default_expansion, SymplecticExpansion};
use johnson_core::johnson::{apply_derivation, as_derivation, l_k, tau2, tau3};
use johnson_core::psi::{
    load_psi, odot_identity_lhs, odot_identity_rhs, tree_as_odots, PsiDataset, GENUS,
};
use johnson_core::surface::{commutator_barcode, free_reduce, Barcode, HVector};
use johnson_core::tensor::{br, rat, Tensor, TensorSpace, Word};
use johnson_core::Result;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<std::result::Result<(), String>>;
type Criterion = fn(&mut Ctx) -> Outcome;

fn equal(what: &str, got: &Tensor, want: &Tensor) -> std::result::Result<(), String> {
    let diff = got - want;
    if diff.is_zero() {
        Ok(())
    } else {
        Err(format!("{what}: difference {diff}"))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Ctx {
    exp: SymplecticExpansion,
    psi: PsiDataset,
    rng: StdRng,
}

impl Ctx {
    fn space(&self) -> TensorSpace {
        self.exp.space()
    }

    fn letter(&mut self) -> i32 {
        let x = self.rng.gen_range(1..=2 * GENUS as i32);
        if self.rng.gen() {
            -x
        } else {
            x
        }
    }

    fn word(&mut self, max_len: usize) -> Barcode {
        let n = self.rng.gen_range(1..=max_len);
        let v: Vec<i32> = (0..n).map(|_| self.letter()).collect();
        Barcode::from(&v[..])
    }

    fn null_homologous(&mut self) -> Barcode {
        let (u, v) = (self.word(3), self.word(3));
        let c = self.word(2);
        c.concat(&commutator_barcode(&u, &v)).concat(&c.inverse())
    }

    fn hvector(&mut self) -> HVector {
        let c: Vec<i64> = (0..2 * GENUS).map(|_| self.rng.gen_range(-2..=2)).collect();
        HVector::from_coords(c).unwrap()
    }

    fn tensor(&mut self, max_len: usize) -> Tensor {
        let s = self.space();
        let n = self.rng.gen_range(1..=5);
        let terms: Vec<(Word, johnson_core::Rational)> = (0..n)
            .map(|_| {
                let len = self.rng.gen_range(1..=max_len);
                let w = (0..len)
                    .map(|_| self.rng.gen_range(1..=s.rank() as u16))
                    .collect();
                (
                    Word::new(w),
                    rat(self.rng.gen_range(-4..=4), self.rng.gen_range(1..=3)),
                )
            })
            .collect();
        Tensor::from_terms(s, terms)
    }
}

fn c1_symplectic(cx: &mut Ctx) -> Outcome {
    let low: Vec<usize> = cx
        .exp
        .symplectic_defect()?
        .into_iter()
        .map(|(k, _)| k)
        .filter(|&k| k <= 3)
        .collect();
    Ok(ensure(low.is_empty(), || {
        format!("defect in degrees {low:?}")
    }))
}

fn c2_psi_in_j3(cx: &mut Ctx) -> Outcome {
    Ok(equal(
        "tau_2(psi)",
        &tau2(&cx.exp, &cx.psi.twists)?,
        &cx.space().zero(),
    ))
}

fn c3_tau3_golden(cx: &mut Ctx) -> Outcome {
    let t3 = tau3(&cx.exp, &cx.psi.twists)?;
    let full = eta(&cx.psi.expected_tau3, cx.space())?;
    let compact = eta(&cx.psi.expected_tau3_compact, cx.space())?;
    Ok(equal("15-term", &t3, &full).and(equal("compact", &compact, &full)))
}

fn c4_brackets(cx: &mut Ctx) -> Outcome {
    let mut total = cx.space().zero();
    for term in &cx.psi.bracket_terms {
        total = total.try_add(term.evaluate(cx.space())?.value())?;
    }
    Ok(equal(
        "bracket sum",
        &total,
        &tau3(&cx.exp, &cx.psi.twists)?,
    ))
}

fn c5_odot_identity(cx: &mut Ctx) -> Outcome {
    let lhs = eta(&odot_identity_lhs(), cx.space())?;
    let rhs = eta(&odot_identity_rhs(), cx.space())?;
    Ok(equal("odot identity", &rhs, &lhs))
}

fn c6_tree_as_odots(cx: &mut Ctx) -> Outcome {
    let (lhs, rhs) = tree_as_odots();
    Ok(equal(
        "T(a2,b1,a1,a2)",
        &eta(&rhs, cx.space())?,
        &eta(&lhs, cx.space())?,
    ))
}

fn c7_casson(cx: &mut Ctx) -> Outcome {
    let t = &cx.psi.twists;
    let audit = twist_audit(t);
    let lambda = lambda_j3(&cx.exp, t)?;
    let got = (
        d_core(t),
        d_prime(t),
        lambda,
        audit.n_genus1,
        audit.n_genus2,
    );
    let want = (-24, 0, rat(1, 1), rat(10, 1), rat(-3, 1));
    Ok(ensure(got == want, || format!("got {got:?}")))
}

fn c8_per_twist(cx: &mut Ctx) -> Outcome {
    let mut bad = Vec::new();
    for ((name, entry), spine) in cx
        .psi
        .names
        .iter()
        .zip(cx.psi.twists.entries())
        .zip(&cx.psi.spines)
    {
        let form = morita_tau2(&spine.symplectic_pairs(GENUS)?)?;
        let h = i64::from(entry.genus);
        if dbar_prime(&form)? != rat(h * (2 * h + 1), 1) {
            bad.push(format!("{name} dbar'"));
        }
        if eta(&form, cx.space())? != l_k(&cx.exp, &entry.barcode, 4)? {
            bad.push(format!("{name} L_4"));
        }
    }
    Ok(ensure(bad.is_empty(), || bad.join(", ")))
}

fn c9_kappa(cx: &mut Ctx) -> Outcome {
    for _ in 0..50 {
        let (a, b, c, d) = (cx.hvector(), cx.hvector(), cx.hvector(), cx.hvector());
        let ihx = tree2(&a, &b, &c, &d)
            .sub(&tree2(&a, &c, &b, &d))
            .sub(&tree2(&a, &d, &c, &b));
        let k_ihx = kappa(&ihx, GENUS)?;
        let k_odot = kappa(&odot(&a, &b), GENUS)?;
        if !k_ihx.is_zero() || !k_odot.is_zero() {
            return Ok(Err(format!("labels {a} {b} {c} {d}: {k_ihx} / {k_odot}")));
        }
    }
    let k = kappa(&odot_identity_rhs().sub(&odot_identity_lhs()), GENUS)?;
    Ok(ensure(k.is_zero(), || format!("kappa of identity = {k}")))
}

fn c10_properties(cx: &mut Ctx) -> Outcome {
    let s = cx.space();
    for _ in 0..30 {
        let x = cx.tensor(5);
        if x.exp_series()?.log_series()? != x {
            return Ok(Err(format!("log exp {x}")));
        }
        let (y, z) = (cx.tensor(2), cx.tensor(2));
        let j = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        if !j.is_zero() {
            return Ok(Err("Jacobi".into()));
        }
        let n = x.cyclicize()?;
        let orbit = x.terms().fold(s.zero(), |acc, (w, c)| {
            (0..w.len()).fold(acc, |acc, m| &acc + &s.monomial(w.rotate(m), c.clone()))
        });
        if n != orbit {
            return Ok(Err("cyclicize orbit".into()));
        }
    }
    for _ in 0..100 {
        let w = cx.null_homologous();
        let m = cx.rng.gen_range(0..w.len());
        for k in [4, 5] {
            let base = l_k(&cx.exp, &w, k)?;
            if l_k(&cx.exp, &w.rotate(m), k)? != base || l_k(&cx.exp, &w.inverse(), k)? != base {
                return Ok(Err(format!("L_{k} invariance on {w}")));
            }
        }
    }
    for _ in 0..30 {
        let w = cx.word(6);
        let x = cx.letter();
        let mut v = w.entries().to_vec();
        let at = cx.rng.gen_range(0..=v.len());
        v.splice(at..at, [x, -x]);
        let padded = Barcode::from(&v[..]);
        let t = cx.exp.theta(&w)?;
        if cx.exp.theta(&padded)? != t || cx.exp.theta(&free_reduce(&padded))? != t {
            return Ok(Err(format!("free reduction on {padded}")));
        }
        if !cx.exp.log_theta(&padded)?.dynkin_defect()?.is_zero() {
            return Ok(Err(format!("log theta not Lie on {padded}")));
        }
    }
    let omega = (1..=GENUS).fold(s.zero(), |acc, i| &acc + &br(&s.a(i), &s.b(i)));
    for e in cx.psi.twists.entries() {
        for k in [4, 5] {
            let d = as_derivation(&l_k(&cx.exp, &e.barcode, k)?, k - 2)?;
            if !apply_derivation(&d, &omega)?.is_zero() {
                return Ok(Err(format!("L_{k} of {} moves the boundary", e.barcode)));
            }
        }
    }
    Ok(Ok(()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, Criterion); 10] = [
        (
            "1 symplectic through degree 3 (g=2, N=5)",
            Duration::from_secs(5),
            c1_symplectic,
        ),
        ("2 tau_2(psi) = 0", Duration::from_secs(30), c2_psi_in_j3),
        (
            "3 tau_3(psi) = 15-term = compact",
            Duration::from_secs(60),
            c3_tau3_golden,
        ),
        (
            "4 bracket decomposition of tau_3(psi)",
            Duration::from_secs(60),
            c4_brackets,
        ),
        (
            "5 degree-2 odot identity",
            Duration::from_secs(60),
            c5_odot_identity,
        ),
        (
            "6 T(a2,b1,a1,a2) as odot combination",
            Duration::from_secs(60),
            c6_tree_as_odots,
        ),
        (
            "7 d=-24 d'=0 lambda=1 counts (10,-3)",
            Duration::from_secs(60),
            c7_casson,
        ),
        (
            "8 per-twist Morita form and dbar'",
            Duration::from_secs(60),
            c8_per_twist,
        ),
        (
            "9 kappa on odot, IHX and the identity",
            Duration::from_secs(60),
            c9_kappa,
        ),
        (
            "10 property suites",
            Duration::from_secs(60),
            c10_properties,
        ),
    ];
    let mut cx = Ctx {
        exp: default_expansion(GENUS, 5).expect("default expansion"),
        psi: load_psi(),
        rng: StdRng::seed_from_u64(0x5eed),
    };
    let mut failures = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f(&mut cx);
        let elapsed = start.elapsed();
        let result = match outcome {
            Ok(Ok(())) if elapsed <= limit => Ok(()),
            Ok(Ok(())) => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            Ok(Err(msg)) => Err(msg),
            Err(e) => Err(e.to_string()),
        };
        match result {
            Ok(()) => println!("PASS  {name}  ({elapsed:.2?})"),
            Err(msg) => {
                failures += 1;
                println!("FAIL  {name}  ({elapsed:.2?})\n      {msg}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
