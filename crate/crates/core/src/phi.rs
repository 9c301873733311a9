//! The generalized Fermat quotients φ_j and φ_f.
//!
//! φ_j(x,y,z) = (x^j + y^j + z^j + (x+y+z)^j) / ((x+y)(x+z)(y+z)); the
//! division is always exact because the numerator vanishes on each of the
//! hyperplanes x=y, x=z, y=z in characteristic 2. For f = Σ a_j x^j,
//! φ_f = Σ_{j≥3} a_j φ_j; terms of degree ≤ 2 contribute nothing.

use crate::error::{Error, Result};
use crate::gf2m::FieldCtx;
use crate::mpoly::{MPoly, Var};
use crate::upoly::UPoly;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// (x+y)(x+z)(y+z), the common denominator.
pub fn denominator(ctx: FieldCtx) -> MPoly {
    let x = MPoly::var(ctx, Var::X);
    let y = MPoly::var(ctx, Var::Y);
    let z = MPoly::var(ctx, Var::Z);
    x.add(&y).mul(&x.add(&z)).mul(&y.add(&z))
}

/// x^j + y^j + z^j + (x+y+z)^j, expanded by Lucas: the multinomial
/// coefficient j!/(a! b! c!) is odd exactly when a, b, c partition the bits
/// of j, so (x+y+z)^j has 3^popcount(j) surviving terms.
pub fn numerator_j(ctx: FieldCtx, j: u32) -> Result<MPoly> {
    if j as u64 > 1 << 16 {
        return Err(Error::DegreeLimit(format!("exponent {j} exceeds 2^16")));
    }
    if j.count_ones() > 15 {
        // 3^16 terms would not be a desk-scale polynomial
        return Err(Error::DegreeLimit(format!(
            "numerator of φ_{j} has 3^{} terms",
            j.count_ones()
        )));
    }
    let mut out = MPoly::zero(ctx);
    for (v, w) in [(Var::X, j), (Var::Y, j), (Var::Z, j)] {
        let mut e = [0u32; 3];
        e[v.idx()] = w;
        out = out.add(&MPoly::monomial(ctx, 1, e));
    }
    // submasks a ⊆ j, then b ⊆ j^a; the third exponent is forced
    let mut a = j;
    loop {
        let rest = j ^ a;
        let mut b = rest;
        loop {
            out = out.add(&MPoly::monomial(ctx, 1, [a, b, rest ^ b]));
            if b == 0 {
                break;
            }
            b = (b - 1) & rest;
        }
        if a == 0 {
            break;
        }
        a = (a - 1) & j;
    }
    Ok(out)
}

fn phi_cache() -> &'static Mutex<HashMap<(u32, FieldCtx), MPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, FieldCtx), MPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// φ_j as a trivariate polynomial, homogeneous of degree j−3 when nonzero.
/// Memoized per (j, field): the theorem-level checks reuse these heavily.
pub fn build_phi_j(ctx: FieldCtx, j: u32) -> Result<MPoly> {
    if j < 3 {
        return Err(Error::InvalidInput(format!("φ_j needs j ≥ 3, got {j}")));
    }
    if let Some(hit) = phi_cache().lock().unwrap().get(&(j, ctx)) {
        return Ok(hit.clone());
    }
    let num = numerator_j(ctx, j)?;
    let phi = num
        .divide_exact(&denominator(ctx))
        .expect("φ_j numerator is always divisible by (x+y)(x+z)(y+z)");
    debug_assert!(phi.is_zero() || phi.is_homogeneous());
    phi_cache().lock().unwrap().insert((j, ctx), phi.clone());
    Ok(phi)
}

fn high_terms(f: &UPoly) -> Vec<(u32, u64)> {
    f.c.iter()
        .enumerate()
        .filter(|&(j, &a)| j >= 3 && a != 0)
        .map(|(j, &a)| (j as u32, a))
        .collect()
}

/// φ_f by the linear combination Σ a_j φ_j (Eq.-4 path only). Callers that
/// want the construction cross-checked use [`build_phi_f`].
pub fn build_phi_f_fast(ctx: FieldCtx, f: &UPoly) -> Result<MPoly> {
    debug_assert_eq!(ctx, f.ctx);
    let terms = high_terms(f);
    if terms.is_empty() {
        return Err(Error::InvalidInput(
            "φ_f is degenerate: f has no terms of degree ≥ 3".into(),
        ));
    }
    let mut out = MPoly::zero(ctx);
    for (j, a) in terms {
        out = out.add(&build_phi_j(ctx, j)?.mul_scalar(a));
    }
    Ok(out)
}

/// φ_f computed by both the direct quotient (numerator expansion, then exact
/// division) and the linear combination of φ_j; the two paths must agree.
pub fn build_phi_f(ctx: FieldCtx, f: &UPoly) -> Result<MPoly> {
    let by_sum = build_phi_f_fast(ctx, f)?;
    let mut num = MPoly::zero(ctx);
    for (j, a) in high_terms(f) {
        num = num.add(&numerator_j(ctx, j)?.mul_scalar(a));
    }
    let by_quotient = num
        .divide_exact(&denominator(ctx))
        .expect("φ_f numerator is always divisible by (x+y)(x+z)(y+z)");
    assert_eq!(
        by_sum, by_quotient,
        "Eq.(2) and Eq.(4) construction paths disagree: invariant violation"
    );
    Ok(by_sum)
}

/// The affine part: z ↦ 1.
pub fn affine_part(f: &MPoly) -> MPoly {
    f.substitute(Var::Z, &MPoly::one(f.ctx))
}

/// Affine φ_j directly.
pub fn phi_j_affine(ctx: FieldCtx, j: u32) -> Result<MPoly> {
    Ok(affine_part(&build_phi_j(ctx, j)?))
}

/// The Kasami-Welch exponent 2^(2k) − 2^k + 1.
pub fn kasami_exponent(k: u32) -> u32 {
    (1u32 << (2 * k)) - (1u32 << k) + 1
}

/// The Gold exponent 2^k + 1.
pub fn gold_exponent(k: u32) -> u32 {
    (1u32 << k) + 1
}
