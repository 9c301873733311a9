//! Local analysis at curve points: multiplicity and tangent cone after a
//! shift to the origin, tangent-line splitting, ED-term parity, the Q/Q'
//! conjugate groupings, and the transversality check at (1,1).

use crate::error::{Error, Result};
use crate::factor::{self, Factorization};
use crate::gf2m::{Embedding, FieldCtx};
use crate::mpoly::{MPoly, Var};
use crate::phi;
use crate::upoly::UPoly;

/// Multiplicity and tangent data of a curve at an affine point.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    pub point: [u64; 2],
    /// 0 iff the point is off the curve; 1 iff simple.
    pub multiplicity: u32,
    /// Least nonzero homogeneous part after shifting the point to the
    /// origin; homogeneous of degree = multiplicity.
    pub tangent_cone: MPoly,
    /// Field over which the cone splits into linear forms.
    pub splitting_field: FieldCtx,
    /// Linear forms over the splitting field with multiplicities.
    pub tangent_lines: Vec<(MPoly, u32)>,
    pub distinct_lines: bool,
}

fn lcm(a: u32, b: u32) -> u32 {
    let gcd = |mut x: u32, mut y: u32| {
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    a / gcd(a, b) * b
}

/// Shifts p to the origin and reads off the least nonzero homogeneous part;
/// tangent lines come from factoring the binary form as a univariate in the
/// slope, over the smallest extension where it splits.
pub fn multiplicity_at(f: &MPoly, p: [u64; 2]) -> Result<SingularityReport> {
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial has no multiplicity".into()));
    }
    if f.uses_var(Var::Z) {
        return Err(Error::InvalidInput("multiplicity_at handles curves in x, y".into()));
    }
    let ctx = f.ctx;
    let x = MPoly::var(ctx, Var::X);
    let y = MPoly::var(ctx, Var::Y);
    let shifted = f
        .substitute(Var::X, &x.add(&MPoly::constant(ctx, p[0])))
        .substitute(Var::Y, &y.add(&MPoly::constant(ctx, p[1])));
    let parts = shifted.homogeneous_parts();
    let (multiplicity, cone) = parts.parts.last().expect("nonzero polynomial").clone();
    if multiplicity == 0 {
        return Ok(SingularityReport {
            point: p,
            multiplicity: 0,
            tangent_cone: cone,
            splitting_field: ctx,
            tangent_lines: Vec::new(),
            distinct_lines: true,
        });
    }

    // cone = c · y^j · Π (x + s y)^{e_s}: the slope polynomial u(s) = cone(s, 1)
    let u = cone.substitute(Var::Y, &MPoly::one(ctx)).to_univar(Var::X)?;
    let y_mult = multiplicity - u.deg().max(0) as u32;
    let base_factors = if u.deg() > 0 {
        factor::univar_factor(&u, 0)?.factors
    } else {
        Vec::new()
    };
    let ext: u32 = base_factors
        .iter()
        .map(|(g, _)| g.total_degree() as u32)
        .fold(1, lcm);
    let split_m = ctx.degree() * ext;
    if split_m > 32 {
        return Err(Error::CapacityExceeded {
            needed: split_m,
            context: "tangent cone splits only beyond the extension capacity",
        });
    }
    let sup = FieldCtx::new(split_m, None)?;
    let emb = Embedding::new(ctx, sup)?;
    let xs = MPoly::var(sup, Var::X);
    let ys = MPoly::var(sup, Var::Y);
    let mut tangent_lines: Vec<(MPoly, u32)> = Vec::new();
    if y_mult > 0 {
        tangent_lines.push((ys.clone(), y_mult));
    }
    for (g, e) in &base_factors {
        let gu = g.to_univar(Var::X)?;
        let lifted = UPoly::from_coeffs(sup, gu.c.iter().map(|&c| emb.map(c)).collect());
        let roots = lifted.roots();
        assert_eq!(roots.len() as isize, lifted.deg(), "irreducible factor must split");
        for s in roots {
            tangent_lines.push((xs.add(&ys.mul_scalar(s)), *e));
        }
    }
    tangent_lines.sort_by_key(|(l, _)| l.to_string());
    let total: u32 = tangent_lines.iter().map(|(_, e)| e).sum();
    assert_eq!(total, multiplicity, "tangent lines must account for the full cone");
    let distinct_lines = tangent_lines.iter().all(|(_, e)| *e == 1);
    Ok(SingularityReport {
        point: p,
        multiplicity,
        tangent_cone: cone,
        splitting_field: sup,
        tangent_lines,
        distinct_lines,
    })
}

/// Counts terms x^m y^m with m ≥ 1 ("equal degree" terms); returns
/// (count, is_odd).
pub fn ed_term_count(f: &MPoly) -> (usize, bool) {
    let count = f
        .iter_terms()
        .filter(|(m, _)| m.e[0] == m.e[1] && m.e[0] >= 1 && m.e[2] == 0)
        .count();
    (count, count % 2 == 1)
}

/// One conjugacy-class factor of φ_t over GF(2): Q_α is the product of the
/// P_β over a Frobenius orbit of α; Q'_α pairs Q_α with its mirror when
/// asymmetric.
#[derive(Debug, Clone)]
pub struct QGroup {
    /// Orbit of α under squaring, ascending.
    pub orbit: Vec<u64>,
    pub q: MPoly,
    pub symmetric: bool,
    /// Orbit whose Q is the mirror of this one; None when Q is symmetric.
    pub mirror_orbit: Option<Vec<u64>>,
    /// Q itself when symmetric, otherwise Q times its mirror (shared with
    /// the partner orbit).
    pub q_prime: MPoly,
}

fn alpha_of_factor(p: &MPoly, e: u32) -> u64 {
    // P_alpha(x,0) = (x+alpha)^e with e odd, so the x^{e-1} coefficient is alpha
    p.coeff([e - 1, 0, 0])
}

/// Groups the Kasami factors into Q_α (per Frobenius orbit of α, descended
/// to GF(2)) and Q'_α (symmetric closure); verifies Π Q'_α = φ_t.
pub fn group_q_factors(k: u32) -> Result<Vec<QGroup>> {
    let fz = factor::kasami_lift_factor(k)?;
    let ctx = fz.field;
    let gf2 = FieldCtx::gf2();
    let e = (1u32 << k) + 1;
    let mut by_alpha: std::collections::BTreeMap<u64, MPoly> = fz
        .factors
        .iter()
        .map(|(p, _)| (alpha_of_factor(p, e), p.clone()))
        .collect();
    assert_eq!(by_alpha.len(), (1usize << k) - 2, "one factor per alpha");

    let mut qs: Vec<(Vec<u64>, MPoly)> = Vec::new();
    while let Some((&a0, _)) = by_alpha.iter().next() {
        let mut orbit = Vec::new();
        let mut a = a0;
        let mut q = MPoly::one(ctx);
        loop {
            let p = by_alpha.remove(&a).expect("orbit stays within the factor set");
            orbit.push(a);
            q = q.mul(&p);
            a = ctx.mul(a, a);
            if a == a0 {
                break;
            }
        }
        orbit.sort();
        // Eq. (6) bookkeeping: the orbit product must be rational over GF(2)
        let q2 = q
            .try_map_coeffs(gf2, |c| if c <= 1 { Some(c) } else { None })
            .unwrap_or_else(|| panic!("Q for orbit {orbit:?} has a non-GF(2) coefficient"));
        qs.push((orbit, q2));
    }
    qs.sort_by_key(|(orbit, _)| orbit[0]);

    let mut groups: Vec<QGroup> = Vec::new();
    for (orbit, q) in &qs {
        let symmetric = q.is_symmetric()?;
        let (mirror_orbit, q_prime) = if symmetric {
            (None, q.clone())
        } else {
            let mirror = q.swap_xy();
            let partner = qs
                .iter()
                .find(|(o, cand)| o != orbit && *cand == mirror)
                .expect("mirror of a Q factor must be another Q factor");
            (Some(partner.0.clone()), q.mul(&mirror))
        };
        groups.push(QGroup { orbit: orbit.clone(), q: q.clone(), symmetric, mirror_orbit, q_prime });
    }

    // Each mirror pair contributes its shared Q' once.
    let product = groups
        .iter()
        .filter(|g| match &g.mirror_orbit {
            None => true,
            Some(o) => g.orbit[0] < o[0],
        })
        .fold(MPoly::one(gf2), |a, g| a.mul(&g.q_prime));
    let t = phi::kasami_exponent(k);
    let phi_gf2 = phi::phi_j_affine(gf2, t)?;
    assert_eq!(product, phi_gf2, "product of Q' groups must reconstruct phi_t");
    Ok(groups)
}

/// Per-component record of the transversality check at (1,1).
#[derive(Debug, Clone)]
pub struct TransversalComponent {
    pub factor: MPoly,
    pub multiplicity: u32,
    pub tangent: MPoly,
}

/// Outcome of checking that the P_α meet transversally at (1,1).
#[derive(Debug, Clone)]
pub struct TransversalCheck {
    pub k: u32,
    pub components: Vec<TransversalComponent>,
    pub phi_multiplicity: u32,
    pub distinct_tangents: bool,
    pub failures: Vec<String>,
}

impl TransversalCheck {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Each P_α must contain (1,1) as a simple point, the 2^k−2 tangent lines
/// must be pairwise distinct, and the multiplicities must sum to
/// m_p(φ_t) = 2^k−2.
pub fn transversality_check(k: u32) -> Result<TransversalCheck> {
    if k < 2 {
        return Err(Error::InvalidInput(
            "transversality needs k >= 2: F_2 - F_2 is empty, there are no components".into(),
        ));
    }
    let fz: Factorization = factor::kasami_lift_factor(k)?;
    let expected = (1u32 << k) - 2;
    let mut failures = Vec::new();
    let mut components = Vec::new();
    for (p, _) in &fz.factors {
        let rep = multiplicity_at(p, [1, 1])?;
        if rep.multiplicity == 0 {
            failures.push(format!("(1,1) is not on the component {p}"));
        } else if rep.multiplicity != 1 {
            failures.push(format!(
                "(1,1) has multiplicity {} on {p}, expected a simple point",
                rep.multiplicity
            ));
        }
        components.push(TransversalComponent {
            factor: p.clone(),
            multiplicity: rep.multiplicity,
            tangent: rep.tangent_cone.monic_graded_lex(),
        });
    }
    let mut tangents: Vec<String> = components.iter().map(|c| c.tangent.to_string()).collect();
    tangents.sort();
    let before = tangents.len();
    tangents.dedup();
    let distinct_tangents = tangents.len() == before;
    if !distinct_tangents {
        failures.push("tangent lines are not pairwise distinct".into());
    }
    let t = phi::kasami_exponent(k);
    let phi_t = phi::phi_j_affine(fz.field, t)?;
    let phi_mult = multiplicity_at(&phi_t, [1, 1])?.multiplicity;
    if phi_mult != expected {
        failures.push(format!("m_p(phi_t) = {phi_mult}, expected {expected}"));
    }
    let total: u32 = components.iter().map(|c| c.multiplicity).sum();
    if total != phi_mult {
        failures.push(format!(
            "component multiplicities sum to {total}, but m_p(phi_t) = {phi_mult}"
        ));
    }
    Ok(TransversalCheck { k, components, phi_multiplicity: phi_mult, distinct_tangents, failures })
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

    fn mp(m: u32, s: &str) -> MPoly {
        MPoly::parse(ctx(m), s).unwrap()
    }

    #[test]
    fn phi13_has_double_point_with_distinct_tangents() {
        let rep = multiplicity_at(&phi_affine(2, 13), [1, 1]).unwrap();
        assert_eq!(rep.multiplicity, 2);
        assert!(rep.tangent_cone.is_homogeneous());
        assert_eq!(rep.tangent_cone.total_degree(), 2);
        assert_eq!(rep.tangent_lines.len(), 2);
        assert!(rep.distinct_lines);
    }

    #[test]
    fn phi7_misses_the_point() {
        let rep = multiplicity_at(&phi_affine(1, 7), [1, 1]).unwrap();
        assert_eq!(rep.multiplicity, 0);
        assert!(rep.tangent_lines.is_empty());
    }

    #[test]
    fn phi21_has_double_point() {
        let rep = multiplicity_at(&phi_affine(1, 21), [1, 1]).unwrap();
        assert_eq!(rep.multiplicity, 2);
    }

    #[test]
    fn hernando_mcguire_formula_small_sweep() {
        // m_(1,1)(phi_d) = 2^i - 2 where d = 2^i l + 1, l odd
        for d in (5u32..=29).step_by(2) {
            let i = (d - 1).trailing_zeros();
            let want = (1u32 << i) - 2;
            let rep = multiplicity_at(&phi_affine(1, d), [1, 1]).unwrap();
            assert_eq!(rep.multiplicity, want, "d={d}");
        }
    }

    #[test]
    fn multiplicity_is_additive_on_products() {
        let cases = [
            ("x + y", "x + y + 1", [0u64, 0u64]),
            ("x^2 + x*y + y^2", "x", [0, 0]),
            ("x + y", "x + y", [0, 0]),
            ("x*y + x + y + 1", "y + x^2", [1, 1]),
        ];
        for (a, b, p) in cases {
            let fa = mp(1, a);
            let fb = mp(1, b);
            let ma = multiplicity_at(&fa, p).unwrap().multiplicity;
            let mb = multiplicity_at(&fb, p).unwrap().multiplicity;
            let mab = multiplicity_at(&fa.mul(&fb), p).unwrap().multiplicity;
            assert_eq!(mab, ma + mb, "({a})({b}) at {p:?}");
        }
    }

    #[test]
    fn cone_of_product_is_product_of_cones() {
        let fa = mp(1, "x + y");
        let fb = mp(1, "x^2 + x*y + y^2");
        let ra = multiplicity_at(&fa, [0, 0]).unwrap();
        let rb = multiplicity_at(&fb, [0, 0]).unwrap();
        let rab = multiplicity_at(&fa.mul(&fb), [0, 0]).unwrap();
        assert_eq!(rab.tangent_cone, ra.tangent_cone.mul(&rb.tangent_cone));
    }

    #[test]
    fn repeated_tangents_are_flagged() {
        // (x+y)^2 has a single tangent line of multiplicity 2
        let f = mp(1, "x + y").mul(&mp(1, "x + y"));
        let rep = multiplicity_at(&f, [0, 0]).unwrap();
        assert_eq!(rep.multiplicity, 2);
        assert!(!rep.distinct_lines);
        assert_eq!(rep.tangent_lines.len(), 1);
        assert_eq!(rep.tangent_lines[0].1, 2);
    }

    #[test]
    fn cone_splitting_over_extension() {
        // x^2 + xy + y^2 splits only over GF(4): lines x + wy, x + w^2 y
        let rep = multiplicity_at(&mp(1, "x^2 + x*y + y^2"), [0, 0]).unwrap();
        assert_eq!(rep.multiplicity, 2);
        assert_eq!(rep.splitting_field.degree(), 2);
        assert_eq!(rep.tangent_lines.len(), 2);
        assert!(rep.distinct_lines);
    }

    #[test]
    fn ed_term_counts() {
        assert_eq!(ed_term_count(&mp(1, "x*y + 1")), (1, true));
        assert_eq!(ed_term_count(&mp(1, "x^2*y^2 + x*y + x + y")), (2, false));
        let (n, odd) = ed_term_count(&phi_affine(1, 13));
        assert!(odd, "phi_13 has {n} ED terms, expected odd");
    }

    #[test]
    fn q_grouping_k2_is_phi13_symmetric() {
        let groups = group_q_factors(2).unwrap();
        assert_eq!(groups.len(), 1);
        let g = &groups[0];
        assert_eq!(g.orbit, vec![2, 3]);
        assert!(g.symmetric);
        assert!(g.mirror_orbit.is_none());
        assert_eq!(g.q, g.q_prime);
        assert_eq!(g.q, phi_affine(1, 13));
        assert_eq!(g.q_prime.coeff([0, 0, 0]), 1, "constant term 1");
    }

    #[test]
    fn q_grouping_k3_two_orbits() {
        let groups = group_q_factors(3).unwrap();
        let degs: Vec<isize> = groups.iter().map(|g| g.q.total_degree()).collect();
        assert_eq!(degs, vec![27, 27]);
        assert_eq!(groups[0].mirror_orbit.as_ref(), Some(&groups[1].orbit));
        assert_eq!(groups[0].q_prime, groups[1].q_prime);
        for g in &groups {
            assert_eq!(g.orbit.len(), 3);
            assert!(!g.symmetric);
            assert_eq!(g.q_prime.coeff([0, 0, 0]), 1, "constant term 1");
            let (_, odd) = ed_term_count(&g.q_prime);
            assert!(odd, "Lemma 1 parity for orbit {:?}", g.orbit);
        }
    }

    #[test]
    fn transversality_k2_and_k3() {
        let t2 = transversality_check(2).unwrap();
        assert!(t2.pass(), "{:?}", t2.failures);
        assert_eq!(t2.components.len(), 2);
        assert_eq!(t2.phi_multiplicity, 2);
        assert!(t2.distinct_tangents);

        let t3 = transversality_check(3).unwrap();
        assert!(t3.pass(), "{:?}", t3.failures);
        assert_eq!(t3.components.len(), 6);
        assert_eq!(t3.phi_multiplicity, 6);
    }

    #[test]
    fn transversality_rejects_k1() {
        assert!(transversality_check(1).is_err());
    }
}
