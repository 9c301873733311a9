//! Bivariate factorization engine: evaluation line, multifactor ŷ-adic
//! Hensel lifting on a factor tree, subset recombination by trial division.
//!
//! Polynomials are handled dense in the main variable x as `Vec<UPoly>`
//! (index = x-degree, entries = coefficients in ŷ = y + y₀). Base fields too
//! small to offer a squarefree evaluation line escalate to an extension and
//! descend through Frobenius-orbit products.

use super::univar;
use crate::error::{Error, Result};
use crate::gf2m::{Embedding, FieldCtx};
use crate::mpoly::{MPoly, Var};
use crate::upoly::UPoly;

/// Knobs for the factor engine; `seed` drives only equal-degree splitting,
/// so the canonical output is identical for every seed.
#[derive(Debug, Clone, Copy)]
pub struct FactorConfig {
    pub seed: u64,
    pub work_budget: u64,
    pub line_candidates: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { seed: 0, work_budget: 1 << 24, line_candidates: 8 }
    }
}

// ---- dense-in-x helpers ----

fn up_trunc(p: &UPoly, sigma: usize) -> UPoly {
    if p.deg() < sigma as isize {
        p.clone()
    } else {
        UPoly::from_coeffs(p.ctx, p.c[..sigma].to_vec())
    }
}

fn bp_trim(v: &mut Vec<UPoly>) {
    while v.last().map_or(false, |p| p.is_zero()) {
        v.pop();
    }
}

fn bp_deg_y(v: &[UPoly]) -> isize {
    v.iter().map(|p| p.deg()).max().unwrap_or(-1)
}

fn bp_is_zero(v: &[UPoly]) -> bool {
    v.iter().all(|p| p.is_zero())
}

fn bp_add(a: &[UPoly], b: &[UPoly], ctx: FieldCtx) -> Vec<UPoly> {
    let n = a.len().max(b.len());
    let zero = UPoly::zero(ctx);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).unwrap_or(&zero).add(b.get(i).unwrap_or(&zero)));
    }
    bp_trim(&mut out);
    out
}

/// Convolution in x; entries reduced mod ŷ^sigma when sigma < usize::MAX.
fn bp_mul(a: &[UPoly], b: &[UPoly], ctx: FieldCtx, sigma: usize) -> Vec<UPoly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![UPoly::zero(ctx); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let mut t = p.mul(q);
            if sigma != usize::MAX {
                t = up_trunc(&t, sigma);
            }
            out[i + j] = out[i + j].add(&t);
        }
    }
    bp_trim(&mut out);
    out
}

/// Product with an x-polynomial of scalar coefficients, shifted by ŷ^c.
fn bp_mul_xpoly_shift(a: &[UPoly], xp: &UPoly, c: usize, ctx: FieldCtx, sigma: usize) -> Vec<UPoly> {
    if xp.is_zero() || a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![UPoly::zero(ctx); a.len() + xp.c.len() - 1];
    for (i, s) in xp.c.iter().enumerate() {
        if *s == 0 {
            continue;
        }
        for (j, q) in a.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let t = up_trunc(&q.mul_scalar(*s).shift(c), sigma);
            out[i + j] = out[i + j].add(&t);
        }
    }
    bp_trim(&mut out);
    out
}

/// Long division in x by a divisor whose x-leading coefficient is a nonzero
/// constant; exact over GF(q)[ŷ], no truncation.
fn bp_divrem(f: &[UPoly], g: &[UPoly], ctx: FieldCtx) -> (Vec<UPoly>, Vec<UPoly>) {
    let dg = g.len() - 1;
    let lc = g.last().expect("nonzero divisor");
    assert!(lc.deg() == 0, "divisor must be x-monic up to a constant");
    let lc_inv = ctx.inv(lc.coeff(0));
    let mut r: Vec<UPoly> = f.to_vec();
    bp_trim(&mut r);
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let mut q = vec![UPoly::zero(ctx); r.len() - dg];
    while r.len() > dg {
        let top = r.len() - 1;
        let qc = r[top].mul_scalar(lc_inv);
        for j in 0..=dg {
            let t = qc.mul(&g[j]);
            r[top - dg + j] = r[top - dg + j].add(&t);
        }
        debug_assert!(r[top].is_zero());
        q[top - dg] = qc;
        bp_trim(&mut r);
    }
    (q, r)
}

fn bp_eval_y(f: &[UPoly], ctx: FieldCtx, y0: u64) -> UPoly {
    UPoly::from_coeffs(ctx, f.iter().map(|p| p.eval(y0)).collect())
}

/// x-polynomial formed by the ŷ^c coefficient of every entry.
fn bp_coeff_y(f: &[UPoly], ctx: FieldCtx, c: usize) -> UPoly {
    UPoly::from_coeffs(ctx, f.iter().map(|p| p.coeff(c)).collect())
}

fn bp_from_upoly(u: &UPoly, ctx: FieldCtx) -> Vec<UPoly> {
    u.c.iter().map(|&s| UPoly::constant(ctx, s)).collect()
}

// ---- Hensel lifting ----

/// Lifts F ≡ g0·h0 (mod ŷ) with gcd(g0,h0)=1 to F ≡ G·H (mod ŷ^sigma),
/// linearly: each step kills the lowest error coefficient via the Bezout
/// pair of the modular images.
fn hensel_pair(f: &[UPoly], g0: &UPoly, h0: &UPoly, sigma: usize) -> (Vec<UPoly>, Vec<UPoly>) {
    let ctx = g0.ctx;
    let (one, s, t) = g0.xgcd(h0);
    assert!(one.is_one(), "Hensel blocks must be coprime");
    let mut big_g = bp_from_upoly(g0, ctx);
    let mut big_h = bp_from_upoly(h0, ctx);
    let ft: Vec<UPoly> = f.iter().map(|p| up_trunc(p, sigma)).collect();
    // err = F - G·H, carried mod ŷ^sigma (subtraction is xor)
    let mut err = bp_add(&ft, &bp_mul(&big_g, &big_h, ctx, sigma), ctx);
    for c in 1..sigma {
        let ec = bp_coeff_y(&err, ctx, c);
        if ec.is_zero() {
            continue;
        }
        let dg = t.mul(&ec).rem(g0);
        let dh = s.mul(&ec).rem(h0);
        // err -= ŷ^c(dG·H + dH·G) + ŷ^{2c}(dG·dH), with the pre-update G, H
        err = bp_add(&err, &bp_mul_xpoly_shift(&big_h, &dg, c, ctx, sigma), ctx);
        err = bp_add(&err, &bp_mul_xpoly_shift(&big_g, &dh, c, ctx, sigma), ctx);
        if 2 * c < sigma {
            let cross = bp_mul_xpoly_shift(&bp_from_upoly(&dh, ctx), &dg, 2 * c, ctx, sigma);
            err = bp_add(&err, &cross, ctx);
        }
        for (i, &v) in dg.c.iter().enumerate() {
            if v != 0 {
                big_g[i] = big_g[i].add(&UPoly::monomial(ctx, v, c));
            }
        }
        for (i, &v) in dh.c.iter().enumerate() {
            if v != 0 {
                big_h[i] = big_h[i].add(&UPoly::monomial(ctx, v, c));
            }
        }
        debug_assert!(bp_coeff_y(&err, ctx, c).is_zero());
    }
    assert!(bp_is_zero(&err), "Hensel lift failed to converge");
    (big_g, big_h)
}

/// Lifts a list of pairwise-coprime monic blocks along a factor tree.
pub(crate) fn hensel_tree(f: &[UPoly], blocks: &[UPoly], sigma: usize) -> Vec<Vec<UPoly>> {
    if blocks.len() == 1 {
        return vec![f.iter().map(|p| up_trunc(p, sigma)).collect()];
    }
    let ctx = blocks[0].ctx;
    let mid = blocks.len() / 2;
    let prod = |bs: &[UPoly]| bs.iter().fold(UPoly::one(ctx), |a, b| a.mul(b));
    let g0 = prod(&blocks[..mid]);
    let h0 = prod(&blocks[mid..]);
    let (g, h) = hensel_pair(f, &g0, &h0, sigma);
    let mut out = hensel_tree(&g, &blocks[..mid], sigma);
    out.extend(hensel_tree(&h, &blocks[mid..], sigma));
    out
}

// ---- degree sieve ----

/// Evaluation lines the degree sieve consumes before giving up.
const SIEVE_LINES: usize = 24;

/// Bitmask of sums reachable by sub-multisets of `degs` (degree, multiplicity
/// pairs), as a 0/1 knapsack repeated per multiplicity.
fn subset_sums(degs: &[(usize, u32)], d: usize) -> Vec<bool> {
    let mut mask = vec![false; d + 1];
    mask[0] = true;
    for &(di, e) in degs {
        for _ in 0..e {
            for s in (di..=d).rev() {
                if mask[s - di] {
                    mask[s] = true;
                }
            }
        }
    }
    mask
}

/// X-degree constraint on the factors of f, primitive in x. Any factor
/// specializes with exact x-degree along a line where lc_x(f) is nonzero, so
/// its degree is a subset sum of that line's modular degree pattern; the
/// intersection over many lines leaves a mask of admissible degrees. Lines
/// are taken in an extension large enough to have plenty of them, which is
/// sound because the coefficient field embeds in it. A mask of {0, deg_x}
/// alone certifies irreducibility without any lifting.
fn degree_sieve(f: &MPoly, cfg: &FactorConfig) -> Vec<bool> {
    let ctx = f.ctx;
    let dx = f.degree_in(Var::X) as usize;
    let dy = f.degree_in(Var::Y).max(0) as u64;
    let mut inter = vec![true; dx + 1];
    let mut t = ctx.degree();
    while t + ctx.degree() <= 32 && (1u64 << t) <= (dy + SIEVE_LINES as u64).max(63) {
        t += ctx.degree();
    }
    let (work, wctx) = if t == ctx.degree() {
        (f.clone(), ctx)
    } else {
        let (sup, emb) = match FieldCtx::new(t, None).and_then(|s| Ok((s, Embedding::new(ctx, s)?))) {
            Ok(pair) => pair,
            Err(_) => return inter,
        };
        (embed_mpoly(f, &emb, sup), sup)
    };
    let fb = work.to_bipoly(Var::X, Var::Y);
    let lc = fb.last().unwrap().clone();
    let mut used = 0usize;
    for y0 in wctx.elements() {
        if lc.eval(y0) == 0 {
            continue;
        }
        let u = bp_eval_y(&fb, wctx, y0);
        debug_assert_eq!(u.deg(), dx as isize);
        let degs: Vec<(usize, u32)> = univar::factor_monic(&u.monic(), cfg.seed)
            .into_iter()
            .map(|(p, e)| (p.deg() as usize, e))
            .collect();
        for (a, b) in inter.iter_mut().zip(subset_sums(&degs, dx)) {
            *a = *a && b;
        }
        used += 1;
        if sieve_conclusive(&inter) || used >= SIEVE_LINES {
            break;
        }
    }
    inter
}

fn sieve_conclusive(mask: &[bool]) -> bool {
    mask[1..mask.len() - 1].iter().all(|b| !b)
}

// ---- recombination ----

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let s = c.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if c[i] < n - (s - i) {
            c[i] += 1;
            for j in i + 1..s {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Finds the true factors of F as subset products of the lifted blocks.
/// Subsets are tried in increasing size; each candidate costs one budget
/// unit. Once sizes below s are exhausted they never recur, so every
/// extracted cofactor of size ≤ s is irreducible. A `plausible` degree mask
/// skips trial division for subsets whose x-degree cannot be a factor's.
fn recombine(
    f: &[UPoly],
    lifted: Vec<Vec<UPoly>>,
    ctx: FieldCtx,
    sigma: usize,
    plausible: Option<&[bool]>,
    budget: u64,
    spent: &mut u64,
) -> Result<Vec<Vec<UPoly>>> {
    let mut active: Vec<usize> = (0..lifted.len()).collect();
    let mut found: Vec<Vec<UPoly>> = Vec::new();
    let mut cur: Vec<UPoly> = f.to_vec();
    let mut s = 1usize;
    while 2 * s <= active.len() {
        let mut combo: Vec<usize> = (0..s).collect();
        'subsets: loop {
            *spent += 1;
            if *spent > budget {
                return Err(Error::BudgetExhausted {
                    spent: *spent,
                    budget,
                    partial: format!(
                        "{} factors extracted, {} modular factors unresolved",
                        found.len(),
                        active.len()
                    ),
                });
            }
            let admissible = plausible.map_or(true, |pl| {
                let d: usize = combo.iter().map(|&i| lifted[active[i]].len() - 1).sum();
                d < pl.len() && pl[d]
            });
            if admissible {
                let mut cand = vec![UPoly::one(ctx)];
                for &i in &combo {
                    cand = bp_mul(&cand, &lifted[active[i]], ctx, sigma);
                }
                let (q, r) = bp_divrem(&cur, &cand, ctx);
                if bp_is_zero(&r) {
                    for &i in combo.iter().rev() {
                        active.remove(i);
                    }
                    found.push(cand);
                    cur = q;
                    if 2 * s > active.len() {
                        break 'subsets;
                    }
                    combo = (0..s).collect();
                    continue 'subsets;
                }
            }
            if !next_combination(&mut combo, active.len()) {
                break 'subsets;
            }
        }
        s += 1;
    }
    if cur.len() > 1 {
        found.push(cur);
    } else {
        assert!(cur.len() == 1 && cur[0].is_one(), "leftover unit after recombination");
    }
    Ok(found)
}

/// d/dx of a dense-in-x polynomial; characteristic 2 keeps odd exponents.
fn bp_dx(g: &[UPoly], ctx: FieldCtx) -> Vec<UPoly> {
    let mut out: Vec<UPoly> = (1..g.len())
        .map(|a| if a % 2 == 1 { g[a].clone() } else { UPoly::zero(ctx) })
        .collect();
    bp_trim(&mut out);
    out
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    for (w, &x) in row.iter().enumerate() {
        if x != 0 {
            return Some(w * 64 + x.trailing_zeros() as usize);
        }
    }
    None
}

/// Recombination by linear algebra instead of subset search. For a true
/// factor G = Π_{i∈S} g_i, the polynomial ∂x(G)·(F/G) = Σ_{i∈S} ∂x(g_i)·
/// (F/g_i) has y-degree ≤ deg_y F, so its ŷ-coefficients past that vanish;
/// with the blocks lifted beyond deg_y F those are F_2-linear conditions on
/// the subset indicator. Columns of the solution kernel agree exactly on the
/// blocks of one factor, so the kernel's column classes are the candidate
/// factors. The conditions are only necessary, hence the trial-division
/// check (None falls back to enumeration); a kernel of dimension 1 certifies
/// irreducibility outright at any precision.
fn recombine_linear(
    f: &[UPoly],
    lifted: &[Vec<UPoly>],
    ctx: FieldCtx,
    nf: usize,
    sigma: usize,
) -> Option<Vec<Vec<UPoly>>> {
    let r = lifted.len();
    let words = r.div_ceil(64);
    let one = vec![UPoly::one(ctx)];
    let mut pre: Vec<Vec<UPoly>> = Vec::with_capacity(r + 1);
    pre.push(one.clone());
    for g in lifted {
        pre.push(bp_mul(pre.last().unwrap(), g, ctx, sigma));
    }
    let mut suf: Vec<Vec<UPoly>> = vec![one; r + 1];
    for i in (0..r).rev() {
        suf[i] = bp_mul(&suf[i + 1], &lifted[i], ctx, sigma);
    }
    let m = ctx.degree() as usize;
    let tail = sigma - nf - 1;
    let dx = f.len() - 1;
    let mut rows = vec![vec![0u64; words]; dx * tail * m];
    for i in 0..r {
        let cof = bp_mul(&pre[i], &suf[i + 1], ctx, sigma);
        let v = bp_mul(&bp_dx(&lifted[i], ctx), &cof, ctx, sigma);
        debug_assert!(v.len() <= dx);
        for (a, p) in v.iter().enumerate() {
            for j in 0..tail {
                let c = p.coeff(nf + 1 + j);
                for b in 0..m {
                    if (c >> b) & 1 == 1 {
                        rows[(a * tail + j) * m + b][i / 64] |= 1u64 << (i % 64);
                    }
                }
            }
        }
    }
    // reduced echelon basis over F_2, lowest set bit as pivot
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for mut row in rows {
        for (p, b) in &basis {
            if (row[p / 64] >> (p % 64)) & 1 == 1 {
                for (x, y) in row.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        if let Some(p) = lowest_bit(&row) {
            basis.push((p, row));
        }
    }
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            let pj = basis[j].0;
            if (basis[i].1[pj / 64] >> (pj % 64)) & 1 == 1 {
                let rowj = basis[j].1.clone();
                for (x, y) in basis[i].1.iter_mut().zip(&rowj) {
                    *x ^= y;
                }
            }
        }
    }
    // kernel basis: one vector per free column
    let mut is_pivot = vec![false; r];
    for (p, _) in &basis {
        is_pivot[*p] = true;
    }
    let kernel: Vec<Vec<u64>> = (0..r)
        .filter(|c| !is_pivot[*c])
        .map(|c| {
            let mut k = vec![0u64; words];
            k[c / 64] |= 1 << (c % 64);
            for (p, row) in &basis {
                if (row[c / 64] >> (c % 64)) & 1 == 1 {
                    k[p / 64] |= 1 << (p % 64);
                }
            }
            k
        })
        .collect();
    debug_assert!(!kernel.is_empty(), "the all-blocks vector always solves the system");
    if kernel.len() == 1 {
        let mut whole = f.to_vec();
        bp_trim(&mut whole);
        return Some(vec![whole]);
    }
    let mut class_of: Vec<usize> = vec![0; r];
    let mut sigs: Vec<Vec<bool>> = Vec::new();
    for i in 0..r {
        let sig: Vec<bool> = kernel.iter().map(|k| (k[i / 64] >> (i % 64)) & 1 == 1).collect();
        class_of[i] = sigs.iter().position(|s| *s == sig).unwrap_or_else(|| {
            sigs.push(sig.clone());
            sigs.len() - 1
        });
    }
    let mut parts: Vec<Vec<UPoly>> = Vec::new();
    let mut cur: Vec<UPoly> = f.to_vec();
    bp_trim(&mut cur);
    for cid in 0..sigs.len() {
        let mut prod = vec![UPoly::one(ctx)];
        for i in 0..r {
            if class_of[i] == cid {
                prod = bp_mul(&prod, &lifted[i], ctx, sigma);
            }
        }
        let (q, rem) = bp_divrem(&cur, &prod, ctx);
        if !bp_is_zero(&rem) {
            return None;
        }
        cur = q;
        parts.push(prod);
    }
    if !(cur.len() == 1 && cur[0].is_one()) {
        return None;
    }
    Some(parts)
}

// ---- field moves ----

pub(crate) fn embed_mpoly(f: &MPoly, emb: &Embedding, sup: FieldCtx) -> MPoly {
    f.map_coeffs(sup, |c| emb.map(c))
}

pub(crate) fn section_mpoly(f: &MPoly, emb: &Embedding, sub: FieldCtx) -> Option<MPoly> {
    f.try_map_coeffs(sub, |c| emb.section(c))
}

/// Coefficientwise relative Frobenius c ↦ c^q over the working field.
fn frobenius_mpoly(f: &MPoly, q: u64) -> MPoly {
    let ctx = f.ctx;
    f.map_coeffs(ctx, |c| ctx.pow(c, q))
}

// ---- the engine ----

/// One prepared working frame: polynomial made x-monic, with the record of
/// how to undo the transformation.
struct Frame {
    poly: MPoly,
    swapped: bool,
    shear: Option<u64>,
}

fn lc_x_constant(f: &MPoly) -> Option<u64> {
    if f.degree_in(Var::X) < 0 {
        return None;
    }
    let coeffs = f.to_bipoly(Var::X, Var::Y);
    let lc = coeffs.last().unwrap();
    if lc.deg() == 0 {
        Some(lc.coeff(0))
    } else {
        None
    }
}

/// Candidate frames in deterministic order: as-is, swapped, then sheared by
/// y ↦ y + λx with λ swept in field order. A squarefree f has at most
/// 2·deg bad λ (x-leading form roots plus inseparability directions), so the
/// sweep is capped and escalation handles fields with no usable λ.
fn frames(f: &MPoly) -> impl Iterator<Item = Frame> + '_ {
    let ctx = f.ctx;
    let cap = (2 * f.total_degree().max(0) as u64 + 1).min(ctx.order() - 1);
    let plain = lc_x_constant(f).map(|c| Frame {
        poly: f.mul_scalar(ctx.inv(c)),
        swapped: false,
        shear: None,
    });
    let sw = f.swap_xy();
    let swapped = lc_x_constant(&sw).map(|c| Frame {
        poly: sw.mul_scalar(ctx.inv(c)),
        swapped: true,
        shear: None,
    });
    let sheared = ctx.elements().skip(1).take(cap as usize).filter_map(move |lam| {
        let x = MPoly::var(ctx, Var::X);
        let y = MPoly::var(ctx, Var::Y);
        let g = f.substitute(Var::Y, &y.add(&x.mul_scalar(lam)));
        lc_x_constant(&g).map(|c| Frame {
            poly: g.mul_scalar(ctx.inv(c)),
            swapped: false,
            shear: Some(lam),
        })
    });
    plain.into_iter().chain(swapped).chain(sheared)
}

struct Line {
    y0: u64,
    blocks: Vec<UPoly>,
}

/// Sweeps y₀ in field order; keeps squarefree full-degree specializations
/// and returns the one splitting into the fewest modular factors.
fn choose_line(fb: &[UPoly], ctx: FieldCtx, cfg: &FactorConfig) -> Option<Line> {
    let mut best: Option<Line> = None;
    let mut seen = 0usize;
    for y0 in ctx.elements() {
        let u = bp_eval_y(fb, ctx, y0);
        debug_assert!(u.is_monic());
        let d = u.deriv();
        if d.is_zero() || !u.gcd(&d).is_one() {
            continue;
        }
        let fs = univar::factor_monic(&u, cfg.seed);
        debug_assert!(fs.iter().all(|(_, e)| *e == 1));
        let mut blocks: Vec<UPoly> = fs.into_iter().map(|(p, _)| p).collect();
        blocks.sort_by_key(|p| (p.deg(), p.to_sparse_string()));
        if best.as_ref().map_or(true, |b| blocks.len() < b.blocks.len()) {
            best = Some(Line { y0, blocks });
        }
        seen += 1;
        if seen >= cfg.line_candidates || best.as_ref().unwrap().blocks.len() == 1 {
            break;
        }
    }
    best
}

/// Factors a squarefree x-monic polynomial along one evaluation line; the
/// returned factors are mapped out of the ŷ shift but still in the frame.
fn factor_frame(
    f: &MPoly,
    line: &Line,
    plausible: Option<&[bool]>,
    cfg: &FactorConfig,
    spent: &mut u64,
) -> Result<Vec<MPoly>> {
    let ctx = f.ctx;
    let y = MPoly::var(ctx, Var::Y);
    let shift = |g: &MPoly| -> MPoly {
        if line.y0 == 0 {
            g.clone()
        } else {
            // the shift is its own inverse in characteristic 2
            g.substitute(Var::Y, &y.add(&MPoly::constant(ctx, line.y0)))
        }
    };
    let fb = shift(f).to_bipoly(Var::X, Var::Y);
    let nf = bp_deg_y(&fb).max(0) as usize;
    let parts = if line.blocks.len() > 8 {
        // too many blocks to enumerate subsets; lift past deg_y to expose
        // the linear tail conditions, enumerate only if they fall short
        let sigma = 2 * nf + 3;
        let lifted = hensel_tree(&fb, &line.blocks, sigma);
        *spent += line.blocks.len() as u64;
        match recombine_linear(&fb, &lifted, ctx, nf, sigma) {
            Some(parts) => parts,
            None => recombine(&fb, lifted, ctx, sigma, plausible, cfg.work_budget, spent)?,
        }
    } else {
        let sigma = nf + 1;
        let lifted = hensel_tree(&fb, &line.blocks, sigma);
        recombine(&fb, lifted, ctx, sigma, plausible, cfg.work_budget, spent)?
    };
    Ok(parts
        .into_iter()
        .map(|p| shift(&MPoly::from_bipoly(ctx, &p, Var::X, Var::Y)))
        .collect())
}

fn unframe(factors: Vec<MPoly>, frame: &Frame, ctx: FieldCtx) -> Vec<MPoly> {
    let x = MPoly::var(ctx, Var::X);
    let y = MPoly::var(ctx, Var::Y);
    factors
        .into_iter()
        .map(|p| {
            let mut q = p;
            if let Some(lam) = frame.shear {
                // y ↦ y + λx is an involution in characteristic 2
                q = q.substitute(Var::Y, &y.add(&x.mul_scalar(lam)));
            }
            if frame.swapped {
                q = q.swap_xy();
            }
            q.monic_graded_lex()
        })
        .collect()
}

/// Irreducible factors (each multiplicity 1) of a squarefree polynomial in
/// x, y; monic graded-lex normalized, unsorted.
pub(crate) fn engine_squarefree(f: &MPoly, cfg: &FactorConfig, spent: &mut u64) -> Result<Vec<MPoly>> {
    let ctx = f.ctx;
    debug_assert!(!f.uses_var(Var::Z) && !f.is_constant());

    // pure univariate inputs go straight to the univariate pipeline
    for v in [Var::X, Var::Y] {
        let other = if v == Var::X { Var::Y } else { Var::X };
        if f.degree_in(other) <= 0 && f.degree_in(v) > 0 {
            let u = f.to_univar(v)?;
            return Ok(univar::factor_monic(&u.monic(), cfg.seed)
                .into_iter()
                .map(|(p, e)| {
                    debug_assert_eq!(e, 1);
                    MPoly::from_univar(&p, v)
                })
                .collect());
        }
    }

    // content in the x-main direction = factors living in y alone
    let cs = f.to_bipoly(Var::X, Var::Y);
    let content = cs.iter().fold(UPoly::zero(ctx), |a, b| a.gcd(b));
    if content.deg() > 0 {
        let mut out: Vec<MPoly> = univar::factor_monic(&content.monic(), cfg.seed)
            .into_iter()
            .map(|(p, _)| MPoly::from_univar(&p, Var::Y))
            .collect();
        let prim: Vec<UPoly> = cs
            .iter()
            .map(|p| p.divide_exact(&content).expect("content divides"))
            .collect();
        let fp = MPoly::from_bipoly(ctx, &prim, Var::X, Var::Y);
        if !fp.is_constant() {
            out.extend(engine_squarefree(&fp, cfg, spent)?);
        }
        return Ok(out);
    }

    // the degree sieve often certifies irreducibility outright; otherwise
    // its mask prunes the recombination search below
    let sieve = degree_sieve(f, cfg);
    if sieve_conclusive(&sieve) {
        return Ok(vec![f.monic_graded_lex()]);
    }

    // escalate through extensions until some frame has a squarefree line
    let mut level = 1u32;
    loop {
        let (work, emb) = if level == 1 {
            (f.clone(), None)
        } else {
            let m = ctx.degree() * level;
            if m > 32 {
                return Err(Error::CapacityExceeded {
                    needed: m,
                    context: "no squarefree evaluation line below the extension capacity",
                });
            }
            let sup = FieldCtx::new(m, None)?;
            let e = Embedding::new(ctx, sup)?;
            (embed_mpoly(f, &e, sup), Some(e))
        };
        let wctx = work.ctx;
        let mut hit = None;
        for frame in frames(&work) {
            let fb = frame.poly.to_bipoly(Var::X, Var::Y);
            if let Some(line) = choose_line(&fb, wctx, cfg) {
                hit = Some((frame, line));
                break;
            }
        }
        if let Some((frame, line)) = hit {
            // the sieve mask tracks base-field x-degrees, which only the
            // unswapped unsheared base-level frame preserves
            let plausible = (level == 1 && !frame.swapped && frame.shear.is_none())
                .then_some(sieve.as_slice());
            let parts = factor_frame(&frame.poly, &line, plausible, cfg, spent)?;
            let factors = unframe(parts, &frame, wctx);
            return Ok(match emb {
                None => factors,
                Some(e) => descend_orbits(factors, &e, ctx),
            });
        }
        level += 1;
    }
}

/// Groups extension-field factors into Frobenius orbits; each orbit product
/// is rational over the base field and irreducible there.
fn descend_orbits(mut factors: Vec<MPoly>, emb: &Embedding, base: FieldCtx) -> Vec<MPoly> {
    let q = base.order();
    let mut out = Vec::new();
    while let Some(start) = factors.pop() {
        let mut orbit = vec![start.clone()];
        let mut cur = frobenius_mpoly(&start, q).monic_graded_lex();
        while cur != start {
            let pos = factors
                .iter()
                .position(|g| *g == cur)
                .expect("Frobenius must permute the factors of a rational polynomial");
            orbit.push(factors.swap_remove(pos));
            cur = frobenius_mpoly(&cur, q).monic_graded_lex();
        }
        let prod = orbit.iter().fold(MPoly::one(start.ctx), |a, b| a.mul(b));
        let down = section_mpoly(&prod, emb, base)
            .expect("orbit product must have base-field coefficients");
        out.push(down.monic_graded_lex());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: u32) -> FieldCtx {
        FieldCtx::new(m, None).unwrap()
    }

    fn mp(m: u32, s: &str) -> MPoly {
        MPoly::parse(ctx(m), s).unwrap()
    }

    fn run(f: &MPoly) -> Vec<MPoly> {
        let cfg = FactorConfig::default();
        let mut spent = 0;
        let mut fs = engine_squarefree(f, &cfg, &mut spent).unwrap();
        fs.sort_by_key(|p| (p.total_degree(), p.to_string()));
        fs
    }

    #[test]
    fn bp_divrem_roundtrip() {
        let c = ctx(2);
        let f = mp(2, "x^3*y + x^2 + x*y^2 + y + 1").to_bipoly(Var::X, Var::Y);
        let g = mp(2, "x + y").to_bipoly(Var::X, Var::Y);
        let (q, r) = bp_divrem(&f, &g, c);
        let back = bp_add(&bp_mul(&q, &g, c, usize::MAX), &r, c);
        assert_eq!(back, f);
        assert!(r.len() < g.len());
    }

    #[test]
    fn hensel_pair_recovers_constructed_factors() {
        let c = ctx(2);
        // f = (x^2 + x + wy + w)(x + y + 1): blocks at y = 0 are coprime
        let a = mp(2, "x^2 + x + 2*y + 2");
        let b = mp(2, "x + y + 1");
        let fb = a.mul(&b).to_bipoly(Var::X, Var::Y);
        let g0 = UPoly::parse_sparse(c, "2:1,1:1,0:2").unwrap();
        let h0 = UPoly::parse_sparse(c, "1:1,0:1").unwrap();
        let (g, h) = hensel_pair(&fb, &g0, &h0, 4);
        assert_eq!(MPoly::from_bipoly(c, &g, Var::X, Var::Y), a);
        assert_eq!(MPoly::from_bipoly(c, &h, Var::X, Var::Y), b);
    }

    #[test]
    fn splits_constructed_product() {
        let fs = run(&mp(1, "x + y").mul(&mp(1, "x + y + 1")));
        assert_eq!(fs, vec![mp(1, "x + y"), mp(1, "x + y + 1")]);
    }

    #[test]
    fn splits_three_distinct_factors() {
        let a = mp(2, "x + 2*y + 1");
        let b = mp(2, "x^2 + x*y + y^2 + 1");
        let c = mp(2, "x + 3");
        let fs = run(&a.mul(&b).mul(&c));
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&a) && fs.contains(&b) && fs.contains(&c));
    }

    #[test]
    fn irreducible_stays_whole() {
        // y + x^2 needs the swapped frame: every x-specialization is a square
        let f = mp(1, "y + x^2");
        assert_eq!(run(&f), vec![f.clone()]);
        // x^2 + xy + y^2 is irreducible over GF(2)
        let g = mp(1, "x^2 + x*y + y^2");
        assert_eq!(run(&g), vec![g.clone()]);
    }

    #[test]
    fn content_factors_split_off() {
        // f = y (x + y)(x + y + 1): the y content comes out first
        let f = mp(1, "y").mul(&mp(1, "x + y")).mul(&mp(1, "x + y + 1"));
        let fs = run(&f);
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&mp(1, "y")));
        assert!(fs.contains(&mp(1, "x + y")));
    }

    #[test]
    fn binary_quadratic_form_splits_over_gf4() {
        let f = mp(2, "x^2 + x*y + y^2");
        let fs = run(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].mul(&fs[1]), f);
        assert!(fs.iter().all(|p| p.total_degree() == 1));
    }

    #[test]
    fn frobenius_descent_keeps_rational_factor_whole() {
        // norm of x + wy + w^2 down to GF(2): irreducible there, splits over GF(4)
        let sup = ctx(2);
        let base = ctx(1);
        let emb = Embedding::new(base, sup).unwrap();
        let a = mp(2, "x + 2*y + 3");
        let b = frobenius_mpoly(&a, 2);
        let f = a.mul(&b);
        let down = section_mpoly(&f, &emb, base).unwrap();
        assert_eq!(run(&down), vec![down.clone()]);
        // and over GF(4) the same polynomial splits into the conjugate pair
        let up = embed_mpoly(&down, &emb, sup);
        let fs = run(&up);
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&a));
    }

    #[test]
    fn budget_exhaustion_reports_partial_state() {
        let f = mp(1, "x + y").mul(&mp(1, "x + y + 1")).mul(&mp(1, "x + 1")).mul(&mp(1, "x"));
        let cfg = FactorConfig { work_budget: 0, ..Default::default() };
        let mut spent = 0;
        match engine_squarefree(&f, &cfg, &mut spent) {
            Err(Error::BudgetExhausted { budget: 0, partial, .. }) => {
                assert!(partial.contains("unresolved"), "{partial}");
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn shear_frame_handles_non_monic_inputs() {
        // xy + 1 has no constant leading coefficient in either variable
        let f = mp(2, "x*y + 1");
        assert_eq!(run(&f), vec![f.clone()]);
        let g = f.mul(&mp(2, "x + y"));
        let gs = run(&g);
        assert_eq!(gs.len(), 2);
        assert!(gs.contains(&f) && gs.contains(&mp(2, "x + y")));
    }

    #[test]
    fn escalation_needed_over_gf2() {
        // (x+y)(x+y+1)x(x+1): no squarefree line or shear exists over GF(2)
        let f = mp(1, "x + y")
            .mul(&mp(1, "x + y + 1"))
            .mul(&mp(1, "x"))
            .mul(&mp(1, "x + 1"));
        let fs = run(&f);
        assert_eq!(fs.len(), 4);
        assert!(fs.contains(&mp(1, "x")) && fs.contains(&mp(1, "x + y + 1")));
    }
}
