//! Seeded property suites: algebraic axioms, construction cross-checks, and
//! engine invariants on randomized inputs. Everything derives from fixed
//! ChaCha8 seeds, so failures reproduce exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fermat_apn::factor;
use fermat_apn::gf2m::Embedding;
use fermat_apn::mpoly::gcd_bivariate;
use fermat_apn::phi;
use fermat_apn::singular;
use fermat_apn::{FieldCtx, MPoly, UPoly, Var};

fn ctx(m: u32) -> FieldCtx {
    FieldCtx::new(m, None).unwrap()
}

fn rand_elt(rng: &mut ChaCha8Rng, f: FieldCtx) -> u64 {
    rng.gen_range(0..f.order())
}

fn rand_mpoly(rng: &mut ChaCha8Rng, f: FieldCtx, max_deg: u32, terms: usize) -> MPoly {
    let mut p = MPoly::zero(f);
    for _ in 0..terms {
        let e = [rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg), 0];
        let c = rand_elt(rng, f);
        let mono = MPoly::var(f, Var::X)
            .pow(e[0])
            .mul(&MPoly::var(f, Var::Y).pow(e[1]))
            .mul_scalar(c);
        p = p.add(&mono);
    }
    p
}

#[test]
fn field_axioms_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for m in [1u32, 2, 3, 5, 8, 11, 16, 23, 32] {
        let f = ctx(m);
        for _ in 0..200 {
            let (a, b, c) = (rand_elt(&mut rng, f), rand_elt(&mut rng, f), rand_elt(&mut rng, f));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.add(a, a), 0, "characteristic 2");
            let sq = f.mul(f.add(a, b), f.add(a, b));
            assert_eq!(sq, f.add(f.mul(a, a), f.mul(b, b)), "Frobenius is additive");
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.pow(a, f.order() - 1), 1, "Lagrange");
            }
            assert_eq!(f.sqrt(f.mul(a, a)), a, "sqrt inverts squaring");
        }
    }
}

#[test]
fn mpoly_ring_axioms_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = ctx(2);
    for _ in 0..25 {
        let a = rand_mpoly(&mut rng, f, 4, 5);
        let b = rand_mpoly(&mut rng, f, 4, 5);
        let c = rand_mpoly(&mut rng, f, 4, 5);
        assert_eq!(a.add(&b), b.add(&a));
        assert_eq!(a.add(&a), MPoly::zero(f));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }
}

#[test]
fn divide_exact_roundtrip_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = ctx(3);
    for _ in 0..40 {
        let a = rand_mpoly(&mut rng, f, 3, 4);
        let b = rand_mpoly(&mut rng, f, 3, 4);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        assert_eq!(a.mul(&b).divide_exact(&b).unwrap(), a);
    }
}

#[test]
fn gcd_divides_both_and_catches_common_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f = ctx(2);
    for _ in 0..15 {
        let h = rand_mpoly(&mut rng, f, 2, 3);
        let a = rand_mpoly(&mut rng, f, 2, 3);
        let b = rand_mpoly(&mut rng, f, 2, 3);
        if h.is_zero() || a.is_zero() || b.is_zero() {
            continue;
        }
        let g = gcd_bivariate(&a.mul(&h), &b.mul(&h)).unwrap();
        assert!(a.mul(&h).divide_exact(&g).is_ok(), "gcd divides lhs");
        assert!(b.mul(&h).divide_exact(&g).is_ok(), "gcd divides rhs");
        assert!(g.divide_exact(&h.monic_graded_lex()).is_ok(), "gcd contains the planted factor");
    }
}

#[test]
fn factorization_reconstructs_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for m in [1u32, 2] {
        let f = ctx(m);
        for round in 0..12 {
            let k = rng.gen_range(1..=3);
            let mut product = MPoly::one(f);
            for _ in 0..k {
                let piece = rand_mpoly(&mut rng, f, 2, 3);
                if piece.is_zero() || piece.is_constant() {
                    continue;
                }
                product = product.mul(&piece);
            }
            if product.is_constant() {
                continue;
            }
            let fz = factor::bivar_factor(&product, round as u64).unwrap();
            assert_eq!(fz.reconstruct(), product);
            for (p, _) in &fz.factors {
                let refz = factor::bivar_factor(p, round as u64).unwrap();
                assert!(refz.is_irreducible(), "{p} came back reducible");
            }
        }
    }
}

#[test]
fn univar_factors_reconstruct_and_stay_irreducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let f = ctx(4);
    for round in 0..10 {
        let deg = rng.gen_range(2..=9);
        let mut c: Vec<u64> = (0..deg).map(|_| rand_elt(&mut rng, f)).collect();
        c.push(1);
        let u = UPoly::from_coeffs(f, c);
        let fz = factor::univar_factor(&u, round).unwrap();
        let back = fz.reconstruct().to_univar(Var::X).unwrap();
        assert_eq!(back, u);
    }
}

#[test]
fn phi_construction_paths_agree() {
    // build_phi_f asserts the Eq.(2) quotient against the Eq.(4) sum
    // internally; drive it across random sparse f.
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for m in [1u32, 2, 3] {
        let f = ctx(m);
        for _ in 0..6 {
            let mut c = vec![0u64; rng.gen_range(4..=24)];
            for _ in 0..3 {
                let d = rng.gen_range(3..c.len());
                c[d] = rand_elt(&mut rng, f);
            }
            let u = UPoly::from_coeffs(f, c);
            if u.deg() < 3 {
                continue;
            }
            let p = phi::build_phi_f(f, &u).unwrap();
            let den = phi::denominator(f);
            // re-multiplying must recover the numerator sum exactly
            let back = p.mul(&den);
            let mut num = MPoly::zero(f);
            for (j, &a) in u.c.iter().enumerate() {
                if j >= 3 && a != 0 {
                    num = num.add(&phi::numerator_j(f, j as u32).unwrap().mul_scalar(a));
                }
            }
            assert_eq!(back, num);
        }
    }
}

#[test]
fn doubling_identity_squares_numerator() {
    let f = ctx(1);
    for j in 3u32..=20 {
        let n = phi::numerator_j(f, j).unwrap();
        let n2 = phi::numerator_j(f, 2 * j).unwrap();
        assert_eq!(n2, n.mul(&n), "numerator(2j) = numerator(j)^2 at j = {j}");
    }
}

#[test]
fn frobenius_orbits_partition_the_field() {
    for m in [2u32, 3, 4, 6] {
        let f = ctx(m);
        let mut seen = vec![false; f.order() as usize];
        let mut total = 0u64;
        for a in f.elements() {
            if seen[a as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = a;
            loop {
                seen[x as usize] = true;
                orbit.push(x);
                x = f.mul(x, x);
                if x == a {
                    break;
                }
            }
            assert_eq!(m % orbit.len() as u32, 0, "orbit length divides m");
            // the orbit product of (x + beta) descends to GF(2)
            let prod = orbit.iter().fold(UPoly::one(f), |acc, &b| {
                acc.mul(&UPoly::from_coeffs(f, vec![b, 1]))
            });
            assert!(prod.c.iter().all(|&c| c <= 1), "orbit polynomial is rational");
            total += orbit.len() as u64;
        }
        assert_eq!(total, f.order());
    }
}

#[test]
fn embedding_is_a_field_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for (m, r) in [(1u32, 3u32), (2, 2), (2, 3), (3, 2), (4, 2)] {
        let sub = ctx(m);
        let sup = ctx(m * r);
        let emb = Embedding::new(sub, sup).unwrap();
        for _ in 0..100 {
            let a = rand_elt(&mut rng, sub);
            let b = rand_elt(&mut rng, sub);
            assert_eq!(emb.map(sub.add(a, b)), sup.add(emb.map(a), emb.map(b)));
            assert_eq!(emb.map(sub.mul(a, b)), sup.mul(emb.map(a), emb.map(b)));
            assert_eq!(emb.section(emb.map(a)), Some(a));
        }
        assert_eq!(emb.map(0), 0);
        assert_eq!(emb.map(1), 1);
    }
}

#[test]
fn multiplicity_additive_on_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let f = ctx(2);
    for _ in 0..20 {
        let a = rand_mpoly(&mut rng, f, 3, 4);
        let b = rand_mpoly(&mut rng, f, 3, 4);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let p = [rand_elt(&mut rng, f), rand_elt(&mut rng, f)];
        let ma = singular::multiplicity_at(&a, p).unwrap().multiplicity;
        let mb = singular::multiplicity_at(&b, p).unwrap().multiplicity;
        let mab = singular::multiplicity_at(&a.mul(&b), p).unwrap().multiplicity;
        assert_eq!(mab, ma + mb);
    }
}

#[test]
fn spectrum_brute_force_agreement_random() {
    use fermat_apn::apn;
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let f = ctx(4);
    for _ in 0..10 {
        let deg = rng.gen_range(1..=8);
        let mut c: Vec<u64> = (0..=deg).map(|_| rand_elt(&mut rng, f)).collect();
        if c[deg] == 0 {
            c[deg] = 1;
        }
        let u = UPoly::from_coeffs(f, c);
        let s = apn::diff_spectrum(&u).unwrap();
        // oracle: direct nested loops over (a, b, x)
        let mut max = 0u32;
        for a in 1..f.order() {
            for b in f.elements() {
                let n = f
                    .elements()
                    .filter(|&x| f.add(u.eval(f.add(x, a)), u.eval(x)) == b)
                    .count() as u32;
                max = max.max(n);
            }
        }
        assert_eq!(s.uniformity, max);
    }
}
