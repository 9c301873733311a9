//! Differential-uniformity testing and the Rodier variety characterization.
//!
//! For f over GF(2^n), the spectrum counts solutions of f(x+a) + f(x) = b
//! over all pairs (a ≠ 0, b); f is APN when no count exceeds 2. The Rodier
//! check tests the equivalent geometric statement: every rational zero of
//! f(x)+f(y)+f(z)+f(x+y+z) lies on the surface (x+y)(x+z)(y+z) = 0.

use crate::error::{Error, Result};
use crate::gf2m::FieldCtx;
use crate::upoly::UPoly;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Exhaustive spectrum capacity: 2^(2n) table operations.
pub const MAX_SPECTRUM_N: u32 = 16;
/// Rodier capacity: the triple wedge still touches 2^(3n)/6 points.
pub const MAX_RODIER_N: u32 = 8;

/// Solution-count histogram over pairs (a ≠ 0, b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffSpectrum {
    pub n: u32,
    /// (solution count, frequency), sorted by count; counts with zero
    /// frequency are omitted except count 0 itself, which is kept because
    /// most pairs have no solution.
    pub histogram: Vec<(u32, u64)>,
    pub uniformity: u32,
}

impl DiffSpectrum {
    pub fn is_apn(&self) -> bool {
        self.uniformity <= 2
    }
}

fn eval_table(f: &UPoly) -> Vec<u64> {
    (0..f.ctx.order()).map(|x| f.eval(x)).collect()
}

fn hist_from_counts(hist: &mut BTreeMap<u32, u64>, counts: &[u32]) {
    for &c in counts {
        *hist.entry(c).or_insert(0) += 1;
    }
}

fn spectrum_from_hist(n: u32, hist: BTreeMap<u32, u64>) -> DiffSpectrum {
    let uniformity = hist.keys().copied().max().unwrap_or(0);
    DiffSpectrum { n, histogram: hist.into_iter().collect(), uniformity }
}

fn check_spectrum_capacity(ctx: FieldCtx) -> Result<u32> {
    let n = ctx.degree();
    if n > MAX_SPECTRUM_N {
        return Err(Error::CapacityExceeded {
            needed: n,
            context: "exhaustive diff_spectrum supports n ≤ 16; subsample or reduce n",
        });
    }
    Ok(n)
}

/// Exhaustive differential spectrum; parallel over a, merged commutatively,
/// so the result is independent of thread count.
pub fn diff_spectrum(f: &UPoly) -> Result<DiffSpectrum> {
    let n = check_spectrum_capacity(f.ctx)?;
    let size = f.ctx.order() as usize;
    let table = eval_table(f);
    let hist = (1..size)
        .into_par_iter()
        .fold(BTreeMap::new, |mut h, a| {
            let mut counts = vec![0u32; size];
            for x in 0..size {
                counts[(table[x ^ a] ^ table[x]) as usize] += 1;
            }
            hist_from_counts(&mut h, &counts);
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(spectrum_from_hist(n, hist))
}

/// Spectrum of a monomial c·x^t: substituting x = a·u shows every a ≠ 0 has
/// the same per-a histogram as a = 1, so one row suffices.
pub fn diff_spectrum_monomial(ctx: FieldCtx, t: u32) -> Result<DiffSpectrum> {
    let n = check_spectrum_capacity(ctx)?;
    let size = ctx.order() as usize;
    let table: Vec<u64> = (0..ctx.order()).map(|x| ctx.pow(x, t as u64)).collect();
    let mut counts = vec![0u32; size];
    for x in 0..size {
        counts[(table[x ^ 1] ^ table[x]) as usize] += 1;
    }
    let mut hist = BTreeMap::new();
    hist_from_counts(&mut hist, &counts);
    for v in hist.values_mut() {
        *v *= ctx.order() - 1;
    }
    Ok(spectrum_from_hist(n, hist))
}

/// Uniformity ≤ 2; dispatches to the monomial fast path when f is one term.
pub fn is_apn(f: &UPoly) -> Result<bool> {
    let nonzero = f.c.iter().filter(|&&c| c != 0).count();
    let spectrum = if nonzero == 1 && f.deg() >= 1 {
        diff_spectrum_monomial(f.ctx, f.deg() as u32)?
    } else {
        diff_spectrum(f)?
    };
    Ok(spectrum.is_apn())
}

/// Outcome of the Rodier surface check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RodierReport {
    pub holds: bool,
    /// First (by sorted order) rational zero off the surface, if any.
    pub witness: Option<[u64; 3]>,
}

/// All rational points of f(x)+f(y)+f(z)+f(x+y+z) = 0 on the surface
/// (x+y)(x+z)(y+z) = 0? Equivalent to APN for any f. The defining sum is
/// symmetric and off-surface points have pairwise distinct coordinates, so
/// scanning the wedge x < y < z is exhaustive.
pub fn rodier_report(f: &UPoly) -> Result<RodierReport> {
    let n = f.ctx.degree();
    if n > MAX_RODIER_N {
        return Err(Error::CapacityExceeded {
            needed: n,
            context: "rodier_check enumerates triples; n ≤ 8",
        });
    }
    let size = f.ctx.order() as usize;
    let table = eval_table(f);
    for x in 0..size {
        for y in x + 1..size {
            let fxy = table[x] ^ table[y];
            for z in y + 1..size {
                if fxy ^ table[z] ^ table[x ^ y ^ z] == 0 {
                    return Ok(RodierReport { holds: false, witness: Some([x as u64, y as u64, z as u64]) });
                }
            }
        }
    }
    Ok(RodierReport { holds: true, witness: None })
}

pub fn rodier_check(f: &UPoly) -> Result<bool> {
    Ok(rodier_report(f)?.holds)
}

/// One row of an exceptional-evidence scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub n: u32,
    pub uniformity: u32,
    pub is_apn: bool,
}

/// Per-extension APN verdicts for f with GF(2) coefficients. Finite evidence
/// only: a scan can never certify exceptionality.
pub fn exceptional_scan(f: &UPoly, n_list: &[u32]) -> Result<Vec<ScanRow>> {
    if f.ctx.degree() != 1 {
        return Err(Error::InvalidInput(
            "exceptional_scan expects coefficients in GF(2)".into(),
        ));
    }
    let nonzero = f.c.iter().filter(|&&c| c != 0).count();
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let ctx = FieldCtx::new(n, None)?;
        let spectrum = if nonzero == 1 && f.deg() >= 1 {
            diff_spectrum_monomial(ctx, f.deg() as u32)?
        } else {
            let lifted = UPoly::from_coeffs(ctx, f.c.clone());
            diff_spectrum(&lifted)?
        };
        rows.push(ScanRow { n, uniformity: spectrum.uniformity, is_apn: spectrum.is_apn() });
    }
    Ok(rows)
}
