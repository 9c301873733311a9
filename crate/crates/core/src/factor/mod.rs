//! Polynomial factorization over GF(2^m) and absolute irreducibility.
//!
//! Univariate inputs run squarefree/distinct-degree/equal-degree splitting;
//! bivariate inputs run the Hensel-lift engine in `bivar`. Absolute
//! irreducibility is decided by refactoring over GF(2^(m·p)) for each prime
//! p dividing the total degree: the absolutely irreducible factors of an
//! irreducible polynomial are conjugate and equinumerous with their common
//! field of definition, whose degree divides the total degree.

mod bivar;
mod univar;

pub use bivar::FactorConfig;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2m::{self, Embedding, FieldCtx};
use crate::mpoly::{MPoly, Var};
use crate::phi;
use crate::upoly::UPoly;

/// Total-degree ceiling for the factor engine.
pub const MAX_FACTOR_DEGREE: isize = 256;

/// Complete factorization: unit · Π factor^multiplicity = input, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub field: FieldCtx,
    pub unit: u64,
    /// Monic graded-lex factors, sorted by (degree, serialized form).
    pub factors: Vec<(MPoly, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self) -> MPoly {
        let mut p = MPoly::constant(self.field, self.unit);
        for (f, e) in &self.factors {
            p = p.mul(&f.pow(*e));
        }
        p
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Normalizes order, recovers the unit, and enforces the reconstruction
/// invariant (always checked: a failure is an engine bug, never data).
fn finish(field: FieldCtx, mut factors: Vec<(MPoly, u32)>, input: &MPoly) -> Factorization {
    factors.sort_by_key(|(p, _)| (p.total_degree(), p.to_string()));
    let mut prod = MPoly::one(field);
    for (f, e) in &factors {
        prod = prod.mul(&f.pow(*e));
    }
    let (lm_in, lc_in) = input.leading_term().expect("nonzero input");
    let (lm_p, lc_p) = prod.leading_term().expect("nonzero product");
    assert_eq!(lm_in, lm_p, "factor product has wrong leading monomial");
    let unit = field.div(lc_in, lc_p);
    let out = Factorization { field, unit, factors };
    assert_eq!(out.reconstruct(), *input, "reconstruction invariant violated");
    out
}

/// Complete factorization of a univariate polynomial; factors are embedded
/// as polynomials in x.
pub fn univar_factor(f: &UPoly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let factors = univar::factor_monic(&f.monic(), seed)
        .into_iter()
        .map(|(p, e)| (MPoly::from_univar(&p, Var::X), e))
        .collect();
    Ok(finish(f.ctx, factors, &MPoly::from_univar(f, Var::X)))
}

pub fn bivar_factor(f: &MPoly, seed: u64) -> Result<Factorization> {
    bivar_factor_cfg(f, &FactorConfig { seed, ..FactorConfig::default() })
}

/// Complete factorization of a polynomial in x, y over its base field.
pub fn bivar_factor_cfg(f: &MPoly, cfg: &FactorConfig) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    if f.uses_var(Var::Z) {
        return Err(Error::InvalidInput("the factor engine handles x, y only".into()));
    }
    if f.total_degree() > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeLimit(format!(
            "total degree {} exceeds the factoring ceiling {}",
            f.total_degree(),
            MAX_FACTOR_DEGREE
        )));
    }
    let ctx = f.ctx;
    let mut out: Vec<(MPoly, u32)> = Vec::new();
    let mut current = f.clone();
    let mut m = 1u32;
    let mut spent = 0u64;
    while !current.is_constant() {
        let fx = current.deriv(Var::X);
        let fy = current.deriv(Var::Y);
        if fx.is_zero() && fy.is_zero() {
            // every exponent even: current is a perfect square
            current = current.sqrt_even();
            m *= 2;
            continue;
        }
        // gcd with the nonzero partials leaves each odd-multiplicity prime
        // exactly once in the cofactor w
        let mut g = current.clone();
        for d in [&fx, &fy] {
            if !d.is_zero() {
                g = crate::mpoly::gcd_bivariate(&g, d)?;
            }
        }
        let w = current.divide_exact(&g).expect("gcd divides its argument");
        debug_assert!(!w.is_constant());
        for p in bivar::engine_squarefree(&w, cfg, &mut spent)? {
            let mut e = 0u32;
            while let Ok(q) = current.divide_exact(&p) {
                current = q;
                e += 1;
            }
            debug_assert!(e >= 1);
            out.push((p, e * m));
        }
    }
    Ok(finish(ctx, out, f))
}

/// Factorization of φ_t over GF(2^k), t = 2^{2k}−2^k+1, by lifting the
/// pairwise-coprime blocks of φ_t(x,0) = Π (x+α)^{2^k+1} in the y-adic
/// sense; no recombination search is needed.
pub fn kasami_lift_factor(k: u32) -> Result<Factorization> {
    if !(2..=4).contains(&k) {
        return Err(Error::InvalidInput(format!(
            "kasami_lift_factor supports 2 <= k <= 4, got {k}"
        )));
    }
    // Deterministic, so memoized: the verify battery asks for the same k
    // several times and the k = 4 lift is the expensive one.
    static CACHE: std::sync::OnceLock<std::sync::Mutex<HashMap<u32, Factorization>>> =
        std::sync::OnceLock::new();
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&k) {
        return Ok(hit.clone());
    }
    let fz = kasami_lift_uncached(k)?;
    cache.lock().unwrap().insert(k, fz.clone());
    Ok(fz)
}

fn kasami_lift_uncached(k: u32) -> Result<Factorization> {
    let ctx = FieldCtx::new(k, None)?;
    let t = phi::kasami_exponent(k);
    let f = phi::phi_j_affine(ctx, t)?;
    let fb = f.to_bipoly(Var::X, Var::Y);
    assert!(fb.last().map_or(false, |p| p.is_one()), "phi_t must be monic in x");

    // alpha ranges over the field minus {0, 1}, ascending
    let e = (1u32 << k) + 1;
    let blocks: Vec<UPoly> = ctx
        .elements()
        .skip(2)
        .map(|alpha| {
            let lin = UPoly::from_coeffs(ctx, vec![alpha, 1]);
            let mut b = UPoly::one(ctx);
            for _ in 0..e {
                b = b.mul(&lin);
            }
            b
        })
        .collect();
    let spec_y0 = UPoly::from_coeffs(ctx, fb.iter().map(|p| p.eval(0)).collect());
    let block_prod = blocks.iter().fold(UPoly::one(ctx), |a, b| a.mul(b));
    assert_eq!(spec_y0, block_prod, "y=0 blocks of phi_t violate the Kasami structure");

    let sigma = fb.iter().map(|p| p.deg()).max().unwrap_or(0).max(0) as usize + 1;
    let factors: Vec<(MPoly, u32)> = bivar::hensel_tree(&fb, &blocks, sigma)
        .into_iter()
        .map(|p| (MPoly::from_bipoly(ctx, &p, Var::X, Var::Y).monic_graded_lex(), 1))
        .collect();
    // finish re-multiplies everything: a lift inconsistency panics here
    Ok(finish(ctx, factors, &f))
}

/// Evidence returned by the absolute-irreducibility decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbsIrredWitness {
    /// Irreducible over the base field and over GF(2^(m·p)) for each listed
    /// prime p dividing the total degree.
    Irreducible { tested_primes: Vec<u32> },
    /// A proper splitting, over the base field or an extension.
    Splits { field: String, factors: Vec<String> },
}

fn splitting_witness(fz: &Factorization) -> AbsIrredWitness {
    AbsIrredWitness::Splits {
        field: fz.field.to_string(),
        factors: fz
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("({p})^{e}") })
            .collect(),
    }
}

pub fn absolutely_irreducible(f: &MPoly, seed: u64) -> Result<(bool, AbsIrredWitness)> {
    absolutely_irreducible_cfg(f, &FactorConfig { seed, ..FactorConfig::default() })
}

/// f is absolutely irreducible iff it is irreducible over its base field and
/// stays irreducible over GF(2^(m·p)) for every prime p | total degree.
pub fn absolutely_irreducible_cfg(f: &MPoly, cfg: &FactorConfig) -> Result<(bool, AbsIrredWitness)> {
    if f.is_constant() {
        return Err(Error::InvalidInput(
            "absolute irreducibility needs a nonconstant polynomial".into(),
        ));
    }
    let ctx = f.ctx;
    let base = bivar_factor_cfg(f, cfg)?;
    if !base.is_irreducible() {
        return Ok((false, splitting_witness(&base)));
    }
    let degree = f.total_degree() as u32;
    let primes = gf2m::prime_divisors(degree);
    for &p in &primes {
        let ext = ctx.degree() * p;
        if ext > 32 {
            return Err(Error::CapacityExceeded {
                needed: ext,
                context: "absolute irreducibility needs factoring over GF(2^(m·p))",
            });
        }
        let sup = FieldCtx::new(ext, None)?;
        let emb = Embedding::new(ctx, sup)?;
        let lifted = bivar::embed_mpoly(f, &emb, sup);
        let fz = bivar_factor_cfg(&lifted, cfg)?;
        if !fz.is_irreducible() {
            return Ok((false, splitting_witness(&fz)));
        }
    }
    Ok((true, AbsIrredWitness::Irreducible { tested_primes: primes }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: u32) -> FieldCtx {
        FieldCtx::new(m, None).unwrap()
    }

    fn phi_affine(m: u32, j: u32) -> MPoly {
        phi::phi_j_affine(ctx(m), j).unwrap()
    }

    #[test]
    fn univar_spec_examples() {
        // x^2 + x over GF(2)
        let f = UPoly::parse_sparse(ctx(1), "2:1,1:1").unwrap();
        let fz = univar_factor(&f, 0).unwrap();
        assert_eq!(fz.unit, 1);
        let strs: Vec<String> = fz.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        assert_eq!(strs, vec!["x^1", "x+1^1"]);

        // x^2 + x + 1 over GF(4) splits into the primitive cube roots
        let f = UPoly::parse_sparse(ctx(2), "2:1,1:1,0:1").unwrap();
        let fz = univar_factor(&f, 0).unwrap();
        let consts: Vec<u64> = fz.factors.iter().map(|(p, _)| p.coeff([0, 0, 0])).collect();
        assert_eq!(consts, vec![2, 3]);
    }

    #[test]
    fn phi13_at_y0_is_kasami_block_product() {
        // phi_13(x, 0) = (x+w)^5 (x+w^2)^5 over GF(4)
        let f = phi_affine(2, 13);
        let spec = f.substitute(Var::Y, &MPoly::zero(ctx(2))).to_univar(Var::X).unwrap();
        let fz = univar_factor(&spec, 0).unwrap();
        assert_eq!(fz.factors.len(), 2);
        for (p, e) in &fz.factors {
            assert_eq!(p.total_degree(), 1);
            assert_eq!(*e, 5);
        }
        let consts: Vec<u64> = fz.factors.iter().map(|(p, _)| p.coeff([0, 0, 0])).collect();
        assert_eq!(consts, vec![2, 3]);
    }

    #[test]
    fn phi13_splits_into_two_quintics_over_gf4() {
        let fz = bivar_factor(&phi_affine(2, 13), 0).unwrap();
        assert_eq!(fz.unit, 1);
        assert_eq!(fz.factors.len(), 2);
        for (p, e) in &fz.factors {
            assert_eq!((p.total_degree(), *e), (5, 1));
        }
    }

    #[test]
    fn phi13_is_irreducible_over_gf2() {
        // the two quintics are Frobenius conjugates forming one Q_alpha
        let fz = bivar_factor(&phi_affine(1, 13), 0).unwrap();
        assert!(fz.is_irreducible());
        assert_eq!(fz.factors[0].0.total_degree(), 10);
    }

    #[test]
    fn bivar_handles_multiplicities() {
        let c = ctx(2);
        let a = MPoly::parse(c, "x + y").unwrap();
        let b = MPoly::parse(c, "x^2 + x*y + y^2 + 1").unwrap();
        let f = a.pow(4).mul(&b).mul_scalar(3);
        let fz = bivar_factor(&f, 9).unwrap();
        assert_eq!(fz.unit, 3);
        assert_eq!(fz.factors.len(), 2);
        assert!(fz.factors.contains(&(a, 4)));
        assert!(fz.factors.contains(&(b, 1)));
    }

    #[test]
    fn kasami_k2_structure() {
        let fz = kasami_lift_factor(2).unwrap();
        assert_eq!(fz.field.degree(), 2);
        assert_eq!(fz.factors.len(), 2);
        let c = ctx(2);
        // P_alpha(x, 0) = (x + alpha)^5, one factor per alpha in {w, w^2}
        let mut alphas_seen = Vec::new();
        for (p, e) in &fz.factors {
            assert_eq!(*e, 1);
            assert_eq!(p.total_degree(), 5);
            let spec = p.substitute(Var::Y, &MPoly::zero(c)).to_univar(Var::X).unwrap();
            let alpha = [2u64, 3]
                .into_iter()
                .find(|&a| {
                    let lin = UPoly::from_coeffs(c, vec![a, 1]);
                    let mut want = UPoly::one(c);
                    for _ in 0..5 {
                        want = want.mul(&lin);
                    }
                    spec == want
                })
                .expect("y=0 block must be a Kasami block");
            alphas_seen.push(alpha);
        }
        alphas_seen.sort();
        assert_eq!(alphas_seen, vec![2, 3]);
        // the lift agrees with the general-purpose engine
        let general = bivar_factor(&phi_affine(2, 13), 0).unwrap();
        assert_eq!(fz, general);
    }

    #[test]
    fn kasami_rejects_out_of_range_k() {
        assert!(kasami_lift_factor(1).is_err());
        assert!(kasami_lift_factor(5).is_err());
    }

    #[test]
    fn abs_irred_phi_examples() {
        // phi_5 splits over GF(4) into two conjugate linears
        let (ok, w) = absolutely_irreducible(&phi_affine(1, 5), 0).unwrap();
        assert!(!ok);
        match w {
            AbsIrredWitness::Splits { field, factors } => {
                assert!(field.starts_with("gf2^2"), "{field}");
                assert_eq!(factors.len(), 2);
            }
            other => panic!("expected splitting witness, got {other:?}"),
        }

        // phi_7 is absolutely irreducible
        let (ok, w) = absolutely_irreducible(&phi_affine(1, 7), 0).unwrap();
        assert!(ok);
        assert_eq!(w, AbsIrredWitness::Irreducible { tested_primes: vec![2] });

        // phi_13 is irreducible over GF(2) but splits over GF(4) (Kasami)
        let (ok, w) = absolutely_irreducible(&phi_affine(1, 13), 0).unwrap();
        assert!(!ok);
        match w {
            AbsIrredWitness::Splits { field, .. } => assert!(field.starts_with("gf2^2")),
            other => panic!("expected splitting witness, got {other:?}"),
        }
    }

    #[test]
    fn abs_irred_invariant_under_symmetries() {
        let c = ctx(1);
        for (name, f) in [
            ("phi_7", phi_affine(1, 7)),
            ("phi_5", phi_affine(1, 5)),
            ("quadric", MPoly::parse(c, "x^2 + x*y + y^2").unwrap()),
        ] {
            let (base, _) = absolutely_irreducible(&f, 0).unwrap();
            let (swapped, _) = absolutely_irreducible(&f.swap_xy(), 0).unwrap();
            assert_eq!(base, swapped, "{name} under swap");
            let x = MPoly::var(c, Var::X);
            let shifted = f.substitute(Var::X, &x.add(&MPoly::one(c)));
            let (sh, _) = absolutely_irreducible(&shifted, 0).unwrap();
            assert_eq!(base, sh, "{name} under x -> x+1");
        }
    }

    #[test]
    fn rejects_degenerate_inputs() {
        let c = ctx(2);
        assert!(bivar_factor(&MPoly::zero(c), 0).is_err());
        let z = MPoly::var(c, Var::Z);
        assert!(bivar_factor(&z, 0).is_err());
        assert!(absolutely_irreducible(&MPoly::one(c), 0).is_err());
        let fz = bivar_factor(&MPoly::constant(c, 3), 0).unwrap();
        assert_eq!((fz.unit, fz.factors.len()), (3, 0));
    }
}
