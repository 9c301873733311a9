//! Univariate factorization over GF(2^m): squarefree split, distinct-degree
//! split, then seeded equal-degree splitting by GF(2)-trace maps.

use crate::gf2m::FieldCtx;
use crate::upoly::UPoly;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Monic irreducible factors with multiplicities; order unspecified here,
/// callers sort canonically.
pub fn factor_monic(f: &UPoly, seed: u64) -> Vec<(UPoly, u32)> {
    debug_assert!(f.is_monic());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(UPoly, u32)> = Vec::new();
    let mut f = f.clone();
    // m is the multiplicity carried by sqrt descents: f = g^2 has each
    // factor of g at doubled multiplicity.
    let mut m = 1u32;
    while f.deg() > 0 {
        let d = f.deriv();
        if d.is_zero() {
            // every exponent even, so f is the square of its coefficientwise sqrt
            f = f.sqrt_even();
            m *= 2;
            continue;
        }
        // w collects each odd-multiplicity prime exactly once; even-multiplicity
        // primes and the prime powers stay in f for the sqrt branch
        let w = f.divide_exact(&f.gcd(&d)).expect("gcd divides f");
        debug_assert!(w.deg() > 0, "odd-multiplicity part is nonconstant when f' != 0");
        for p in factor_squarefree(&w, &mut rng) {
            let mut e = 0u32;
            while let Ok(q) = f.divide_exact(&p) {
                f = q;
                e += 1;
            }
            debug_assert!(e % 2 == 1);
            out.push((p, e * m));
        }
    }
    out
}

/// Distinct-degree then equal-degree splitting; f squarefree monic.
fn factor_squarefree(f: &UPoly, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    let ctx = f.ctx;
    let mut out = Vec::new();
    let mut r = f.clone();
    let mut h = UPoly::x(ctx);
    let mut d = 0usize;
    while r.deg() >= 2 * (d as isize + 1) {
        d += 1;
        // h = h^q mod r via m squarings
        for _ in 0..ctx.degree() {
            h = h.mul(&h).rem(&r);
        }
        // x^(q^d) - x accumulates exactly the irreducibles of degree dividing d
        let g = h.add(&UPoly::x(ctx)).gcd(&r);
        if g.deg() > 0 {
            equal_degree(&g, d, rng, &mut out);
            r = r.divide_exact(&g).expect("gcd divides r");
            h = h.rem(&r);
        }
    }
    if r.deg() > 0 {
        out.push(r);
    }
    out
}

fn random_upoly(ctx: FieldCtx, deg_below: usize, rng: &mut ChaCha8Rng) -> UPoly {
    let mask = if ctx.degree() == 64 { u64::MAX } else { (1u64 << ctx.degree()) - 1 };
    let c = (0..deg_below).map(|_| rng.next_u64() & mask).collect();
    UPoly::from_coeffs(ctx, c)
}

/// Splits a product of irreducibles all of degree d. The absolute trace
/// T(u) = u + u^2 + ... + u^{2^(md-1)} is 0 or 1 in each residue field
/// GF(2^(md)), so gcd(T(u), g) separates the factors for about half of all u.
fn equal_degree(g: &UPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UPoly>) {
    if g.deg() == d as isize {
        out.push(g.monic());
        return;
    }
    let md = g.ctx.degree() as usize * d;
    loop {
        let u = random_upoly(g.ctx, g.deg() as usize, rng);
        let mut h = u.rem(g);
        let mut t = h.clone();
        for _ in 1..md {
            h = h.mul(&h).rem(g);
            t = t.add(&h);
        }
        let a = t.gcd(g);
        if a.deg() > 0 && a.deg() < g.deg() {
            let b = g.divide_exact(&a).expect("gcd divides g");
            equal_degree(&a, d, rng, out);
            equal_degree(&b, d, rng, out);
            return;
        }
    }
}

/// True iff f is irreducible over its coefficient field (degree ≥ 1).
#[cfg(test)]
pub fn upoly_irreducible(f: &UPoly, seed: u64) -> bool {
    if f.deg() < 1 {
        return false;
    }
    let fs = factor_monic(&f.monic(), seed);
    fs.len() == 1 && fs[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2m::gf2_irreducible;

    fn ctx(m: u32) -> FieldCtx {
        FieldCtx::new(m, None).unwrap()
    }

    fn reassemble(fs: &[(UPoly, u32)], field: FieldCtx) -> UPoly {
        let mut p = UPoly::one(field);
        for (f, e) in fs {
            for _ in 0..*e {
                p = p.mul(f);
            }
        }
        p
    }

    /// Oracle: trial division by every monic polynomial of degree 1..=3,
    /// ascending by (degree, coefficient bits).
    fn trial_division_oracle(f: &UPoly) -> Vec<(UPoly, u32)> {
        let ctx = f.ctx;
        let q = ctx.order();
        let mut f = f.monic();
        let mut out = Vec::new();
        for d in 1..=3usize {
            for bits in 0..q.pow(d as u32) {
                let mut c: Vec<u64> = (0..d as u32).map(|i| (bits >> (i * ctx.degree())) & (q - 1)).collect();
                c.push(1);
                let p = UPoly::from_coeffs(ctx, c);
                let mut e = 0;
                while let Ok(g) = f.divide_exact(&p) {
                    f = g;
                    e += 1;
                }
                if e > 0 {
                    out.push((p, e));
                }
            }
        }
        assert!(f.is_one(), "oracle only handles inputs splitting below degree 4");
        out
    }

    fn sort_canonical(fs: &mut Vec<(UPoly, u32)>) {
        fs.sort_by_key(|(p, _)| (p.deg(), p.to_sparse_string()));
    }

    #[test]
    fn splits_x2_plus_x_over_gf2() {
        let f = UPoly::parse_sparse(ctx(1), "2:1,1:1").unwrap();
        let mut fs = factor_monic(&f, 0);
        sort_canonical(&mut fs);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0.to_sparse_string(), "1:1");
        assert_eq!(fs[1].0.to_sparse_string(), "1:1,0:1");
    }

    #[test]
    fn splits_cyclotomic_over_gf4() {
        // x^2+x+1 = (x+w)(x+w^2) over GF(4)
        let f = UPoly::parse_sparse(ctx(2), "2:1,1:1,0:1").unwrap();
        let mut fs = factor_monic(&f, 0);
        sort_canonical(&mut fs);
        let roots: Vec<u64> = fs.iter().map(|(p, _)| p.coeff(0)).collect();
        assert_eq!(roots, vec![2, 3]);
        assert!(fs.iter().all(|(p, e)| p.deg() == 1 && *e == 1));
    }

    #[test]
    fn matches_trial_division_oracle() {
        // fixed LCG-generated inputs of degree <= 8 made from small factors
        for m in [1u32, 2] {
            let c = ctx(m);
            let q = c.order();
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..25 {
                let mut f = UPoly::one(c);
                for _ in 0..4 {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let d = 1 + (state >> 33) as usize % 2;
                    let coeffs: Vec<u64> = (0..=d as u32)
                        .map(|i| (state >> (7 * i)) & (q - 1))
                        .collect();
                    let mut p = UPoly::from_coeffs(c, coeffs);
                    if p.deg() < 1 {
                        p = UPoly::x(c);
                    }
                    f = f.mul(&p.monic());
                }
                let mut got = factor_monic(&f, 7);
                let mut want = trial_division_oracle(&f);
                sort_canonical(&mut got);
                sort_canonical(&mut want);
                assert_eq!(got, want);
                assert_eq!(reassemble(&got, c), f.monic());
            }
        }
    }

    #[test]
    fn factors_are_irreducible_and_reassemble() {
        let c = ctx(3);
        // (x^2 + wx + 1)^2 * x^3 * (x + w)
        let a = UPoly::parse_sparse(c, "2:1,1:2,0:1").unwrap();
        let f = a.mul(&a).mul(&UPoly::monomial(c, 1, 3)).mul(&UPoly::parse_sparse(c, "1:1,0:2").unwrap());
        let fs = factor_monic(&f, 3);
        assert_eq!(reassemble(&fs, c), f);
        for (p, _) in &fs {
            assert!(upoly_irreducible(p, 11), "{}", p.to_sparse_string());
        }
        let x_mult = fs.iter().find(|(p, _)| p.to_sparse_string() == "1:1").unwrap().1;
        assert_eq!(x_mult, 3);
    }

    #[test]
    fn high_even_multiplicities() {
        let c = ctx(2);
        // (x+1)^8 * (x^2+x+w)^2
        let lin = UPoly::parse_sparse(c, "1:1,0:1").unwrap();
        let quad = UPoly::parse_sparse(c, "2:1,1:1,0:2").unwrap();
        let mut f = UPoly::one(c);
        for _ in 0..8 {
            f = f.mul(&lin);
        }
        f = f.mul(&quad).mul(&quad);
        let mut fs = factor_monic(&f, 0);
        sort_canonical(&mut fs);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], (lin, 8));
        assert_eq!(fs[1], (quad, 2));
    }

    #[test]
    fn irreducibility_agrees_with_bit_level_oracle() {
        // degree-m binary polynomials: upoly_irreducible over GF(2) vs the
        // Rabin test used for modulus validation
        let c = ctx(1);
        for bits in 2u64..128 {
            let coeffs: Vec<u64> = (0..64 - bits.leading_zeros()).map(|i| (bits >> i) & 1).collect();
            let f = UPoly::from_coeffs(c, coeffs);
            assert_eq!(
                upoly_irreducible(&f, 5),
                gf2_irreducible(bits),
                "bits {bits:#b}"
            );
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let c = ctx(3);
        // product of all monic linears: x^8 + x
        let f = UPoly::parse_sparse(c, "8:1,1:1").unwrap();
        let a = factor_monic(&f, 42);
        let b = factor_monic(&f, 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
    }
}
