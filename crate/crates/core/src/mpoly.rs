//! Sparse polynomials over a [`FieldCtx`] in the variables x, y, z.
//!
//! Terms live in a BTreeMap keyed by exponent triple under the graded
//! lexicographic order (total degree first, then x > y > z), so iteration,
//! printing, and leading-term extraction are all canonical. No stored
//! coefficient is zero; the zero polynomial has an empty term map.

use crate::error::{Error, Result};
use crate::gf2m::FieldCtx;
use crate::upoly::UPoly;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Per-variable exponent ceiling (φ_t for k ≤ 4 needs only 238).
pub const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    #[inline]
    pub fn idx(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Result<Var> {
        match s {
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            "z" => Ok(Var::Z),
            _ => Err(Error::Parse(format!("unknown variable {s:?}"))),
        }
    }
}

/// Exponent triple (e_x, e_y, e_z) ordered graded-lex with x > y > z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono {
    pub e: [u32; 3],
}

impl Mono {
    pub const ONE: Mono = Mono { e: [0, 0, 0] };

    #[inline]
    pub fn total(&self) -> u32 {
        self.e[0] + self.e[1] + self.e[2]
    }

    #[inline]
    fn mul(&self, rhs: &Mono) -> Mono {
        Mono { e: [self.e[0] + rhs.e[0], self.e[1] + rhs.e[1], self.e[2] + rhs.e[2]] }
    }

    /// Componentwise difference; None when rhs does not divide self.
    #[inline]
    fn div(&self, rhs: &Mono) -> Option<Mono> {
        let mut e = [0u32; 3];
        for i in 0..3 {
            e[i] = self.e[i].checked_sub(rhs.e[i])?;
        }
        Some(Mono { e })
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then(self.e[0].cmp(&other.e[0]))
            .then(self.e[1].cmp(&other.e[1]))
            .then(self.e[2].cmp(&other.e[2]))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub ctx: FieldCtx,
    terms: BTreeMap<Mono, u64>,
}

/// Homogeneous components listed by descending degree; empty degrees omitted.
#[derive(Debug, Clone)]
pub struct HomogeneousDecomposition {
    pub parts: Vec<(u32, MPoly)>,
}

impl HomogeneousDecomposition {
    /// The component of one degree, or zero.
    pub fn part(&self, ctx: FieldCtx, degree: u32) -> MPoly {
        self.parts
            .iter()
            .find(|(d, _)| *d == degree)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| MPoly::zero(ctx))
    }
}

impl MPoly {
    // ---- Constructors ----

    pub fn zero(ctx: FieldCtx) -> Self {
        MPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: FieldCtx, v: u64) -> Self {
        let mut p = Self::zero(ctx);
        if v != 0 {
            p.terms.insert(Mono::ONE, v);
        }
        p
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn var(ctx: FieldCtx, v: Var) -> Self {
        Self::monomial(ctx, 1, {
            let mut e = [0u32; 3];
            e[v.idx()] = 1;
            e
        })
    }

    pub fn monomial(ctx: FieldCtx, coeff: u64, e: [u32; 3]) -> Self {
        let mut p = Self::zero(ctx);
        if coeff != 0 {
            p.terms.insert(Mono { e }, coeff);
        }
        p
    }

    pub fn from_univar(u: &UPoly, v: Var) -> Self {
        let mut p = Self::zero(u.ctx);
        for (i, &a) in u.c.iter().enumerate() {
            if a != 0 {
                let mut e = [0u32; 3];
                e[v.idx()] = i as u32;
                p.terms.insert(Mono { e }, a);
            }
        }
        p
    }

    // ---- Inspection ----

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::ONE) == Some(&1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| *m == Mono::ONE)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Mono, &u64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: [u32; 3]) -> u64 {
        self.terms.get(&Mono { e }).copied().unwrap_or(0)
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn total_degree(&self) -> isize {
        self.terms.keys().map(|m| m.total() as isize).max().unwrap_or(-1)
    }

    pub fn degree_in(&self, v: Var) -> isize {
        self.terms.keys().map(|m| m.e[v.idx()] as isize).max().unwrap_or(-1)
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.e[v.idx()] > 0)
    }

    /// Greatest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(Mono, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (*m, c))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    // ---- Arithmetic ----

    #[inline]
    fn insert_term(&mut self, m: Mono, c: u64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = *e.get() ^ c; // addition is xor coefficient-wise
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let mut out = self.clone();
        for (&m, &c) in &rhs.terms {
            out.insert_term(m, c);
        }
        out
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let mut out = MPoly::zero(self.ctx);
        let (small, big) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        for (ms, &cs) in &small.terms {
            for (mb, &cb) in &big.terms {
                out.insert_term(ms.mul(mb), self.ctx.mul(cs, cb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, s: u64) -> MPoly {
        let mut out = MPoly::zero(self.ctx);
        for (&m, &c) in &self.terms {
            out.insert_term(m, self.ctx.mul(c, s));
        }
        out
    }

    /// Frobenius shortcut: squaring doubles exponents and squares coefficients.
    pub fn sqr(&self) -> MPoly {
        let mut out = MPoly::zero(self.ctx);
        for (m, &c) in &self.terms {
            let e = [m.e[0] * 2, m.e[1] * 2, m.e[2] * 2];
            out.terms.insert(Mono { e }, self.ctx.sqr(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e != 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e != 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Exact quotient; the error carries the nonzero remainder reached, the
    /// correctness tripwire for φ construction.
    pub fn divide_exact(&self, g: &MPoly) -> Result<MPoly> {
        debug_assert_eq!(self.ctx, g.ctx);
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = self.ctx;
        let (gm, gc) = g.leading_term().expect("nonzero divisor");
        let gc_inv = ctx.inv(gc);
        let mut r = self.clone();
        let mut q = MPoly::zero(ctx);
        // each step cancels the current leading term, which strictly
        // decreases in graded-lex order, so the loop terminates
        while let Some((rm, rc)) = r.leading_term() {
            let qm = match rm.div(&gm) {
                Some(m) => m,
                None => {
                    return Err(Error::InexactDivision(format!(
                        "remainder {}",
                        r.display_truncated(8)
                    )))
                }
            };
            let qc = ctx.mul(rc, gc_inv);
            q.insert_term(qm, qc);
            for (m, &c) in &g.terms {
                r.insert_term(qm.mul(m), ctx.mul(qc, c));
            }
        }
        Ok(q)
    }

    /// Substitution var ↦ expr; powers of expr are cached ascending.
    pub fn substitute(&self, v: Var, expr: &MPoly) -> MPoly {
        debug_assert_eq!(self.ctx, expr.ctx);
        let vi = v.idx();
        // group terms by the substituted exponent, ascending
        let mut groups: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut e = m.e;
            let k = e[vi];
            e[vi] = 0;
            groups
                .entry(k)
                .or_insert_with(|| MPoly::zero(self.ctx))
                .insert_term(Mono { e }, c);
        }
        let mut out = MPoly::zero(self.ctx);
        let mut cur_pow = MPoly::one(self.ctx);
        let mut cur_exp = 0u32;
        for (k, rest) in groups {
            cur_pow = cur_pow.mul(&expr.pow(k - cur_exp));
            cur_exp = k;
            out = out.add(&rest.mul(&cur_pow));
        }
        out
    }

    pub fn eval(&self, point: [u64; 3]) -> u64 {
        let ctx = self.ctx;
        let mut maxes = [0u32; 3];
        for m in self.terms.keys() {
            for i in 0..3 {
                maxes[i] = maxes[i].max(m.e[i]);
            }
        }
        let pows: Vec<Vec<u64>> = (0..3)
            .map(|i| {
                let mut v = Vec::with_capacity(maxes[i] as usize + 1);
                let mut p = 1u64;
                for _ in 0..=maxes[i] {
                    v.push(p);
                    p = ctx.mul(p, point[i]);
                }
                v
            })
            .collect();
        let mut acc = 0u64;
        for (m, &c) in &self.terms {
            let t = ctx.mul(
                ctx.mul(pows[0][m.e[0] as usize], pows[1][m.e[1] as usize]),
                pows[2][m.e[2] as usize],
            );
            acc ^= ctx.mul(c, t);
        }
        acc
    }

    pub fn homogeneous_parts(&self) -> HomogeneousDecomposition {
        let mut by_deg: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (&m, &c) in &self.terms {
            by_deg
                .entry(m.total())
                .or_insert_with(|| MPoly::zero(self.ctx))
                .insert_term(m, c);
        }
        let parts = by_deg.into_iter().rev().collect();
        HomogeneousDecomposition { parts }
    }

    /// Rebuilds the polynomial over `ctx` with every coefficient passed
    /// through `f`; used to move between a field and its extensions.
    pub fn map_coeffs(&self, ctx: FieldCtx, mut f: impl FnMut(u64) -> u64) -> MPoly {
        let mut out = MPoly::zero(ctx);
        for (&m, &c) in &self.terms {
            out.insert_term(m, f(c));
        }
        out
    }

    /// As map_coeffs but fails when any coefficient is rejected (e.g. lies
    /// outside a subfield's image).
    pub fn try_map_coeffs(
        &self,
        ctx: FieldCtx,
        mut f: impl FnMut(u64) -> Option<u64>,
    ) -> Option<MPoly> {
        let mut out = MPoly::zero(ctx);
        for (&m, &c) in &self.terms {
            out.insert_term(m, f(c)?);
        }
        Some(out)
    }

    /// Formal partial derivative; in characteristic 2 only odd exponents
    /// survive.
    pub fn deriv(&self, v: Var) -> MPoly {
        let i = v.idx();
        let mut out = MPoly::zero(self.ctx);
        for (m, &c) in &self.terms {
            if m.e[i] % 2 == 1 {
                let mut e = m.e;
                e[i] -= 1;
                out.insert_term(Mono { e }, c);
            }
        }
        out
    }

    /// Inverse of sqr: valid only when every exponent is even (then f is the
    /// square of the returned polynomial, since squaring is the Frobenius).
    pub fn sqrt_even(&self) -> MPoly {
        let mut out = MPoly::zero(self.ctx);
        for (m, &c) in &self.terms {
            debug_assert!(m.e.iter().all(|&e| e % 2 == 0));
            let e = [m.e[0] / 2, m.e[1] / 2, m.e[2] / 2];
            out.insert_term(Mono { e }, self.ctx.sqrt(c));
        }
        out
    }

    /// Relabels variables: the exponent of `Var::ALL[i]` moves to `to[i]`.
    pub fn permute(&self, to: [Var; 3]) -> MPoly {
        let mut out = MPoly::zero(self.ctx);
        for (m, &c) in &self.terms {
            let mut e = [0u32; 3];
            for i in 0..3 {
                e[to[i].idx()] = m.e[i];
            }
            out.insert_term(Mono { e }, c);
        }
        out
    }

    pub fn swap_xy(&self) -> MPoly {
        self.permute([Var::Y, Var::X, Var::Z])
    }

    /// f(x,y) = f(y,x); inputs must not involve z.
    pub fn is_symmetric(&self) -> Result<bool> {
        if self.uses_var(Var::Z) {
            return Err(Error::InvalidInput("is_symmetric expects a polynomial in x, y".into()));
        }
        Ok(*self == self.swap_xy())
    }

    /// Scales so the graded-lex leading coefficient is 1.
    pub fn monic_graded_lex(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) if c == 1 => self.clone(),
            Some((_, c)) => self.mul_scalar(self.ctx.inv(c)),
        }
    }

    // ---- Univariate and bivariate views ----

    pub fn to_univar(&self, v: Var) -> Result<UPoly> {
        let mut c = vec![0u64; (self.degree_in(v).max(0) as usize) + 1];
        for (m, &coeff) in &self.terms {
            for w in Var::ALL {
                if w != v && m.e[w.idx()] > 0 {
                    return Err(Error::InvalidInput(format!(
                        "not univariate in {}: term uses {}",
                        v.name(),
                        w.name()
                    )));
                }
            }
            c[m.e[v.idx()] as usize] = coeff;
        }
        Ok(UPoly::from_coeffs(self.ctx, c))
    }

    /// Coefficient list along `main`: entry i is the polynomial in `sec`
    /// multiplying main^i. The remaining variable must be absent.
    pub(crate) fn to_bipoly(&self, main: Var, sec: Var) -> Vec<UPoly> {
        debug_assert_ne!(main, sec);
        let other = Var::ALL.into_iter().find(|v| *v != main && *v != sec).unwrap();
        assert!(
            !self.uses_var(other),
            "bivariate view requires {} absent",
            other.name()
        );
        let n = (self.degree_in(main).max(-1) + 1) as usize;
        let mut cols: Vec<Vec<u64>> = vec![Vec::new(); n];
        for (m, &c) in &self.terms {
            let i = m.e[main.idx()] as usize;
            let j = m.e[sec.idx()] as usize;
            if cols[i].len() <= j {
                cols[i].resize(j + 1, 0);
            }
            cols[i][j] = c;
        }
        cols.into_iter().map(|v| UPoly::from_coeffs(self.ctx, v)).collect()
    }

    pub(crate) fn from_bipoly(ctx: FieldCtx, coeffs: &[UPoly], main: Var, sec: Var) -> MPoly {
        let mut out = MPoly::zero(ctx);
        for (i, u) in coeffs.iter().enumerate() {
            for (j, &c) in u.c.iter().enumerate() {
                if c != 0 {
                    let mut e = [0u32; 3];
                    e[main.idx()] = i as u32;
                    e[sec.idx()] = j as u32;
                    out.insert_term(Mono { e }, c);
                }
            }
        }
        out
    }

    // ---- Serialization ----

    fn display_term(m: &Mono, c: u64) -> String {
        let mut parts: Vec<String> = Vec::new();
        if c != 1 || m.total() == 0 {
            parts.push(format!("{c:x}"));
        }
        for v in Var::ALL {
            match m.e[v.idx()] {
                0 => {}
                1 => parts.push(v.name().to_string()),
                e => parts.push(format!("{}^{}", v.name(), e)),
            }
        }
        parts.join("*")
    }

    fn display_truncated(&self, max_terms: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .take(max_terms)
            .map(|(m, &c)| Self::display_term(m, c))
            .collect();
        if self.terms.len() > max_terms {
            parts.push("...".to_string());
        }
        parts.join("+")
    }

    /// Parses the printed grammar: terms joined by '+', factors joined by
    /// '*', each factor a hex coefficient or var^exp; whitespace allowed.
    pub fn parse(ctx: FieldCtx, s: &str) -> Result<MPoly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = MPoly::zero(ctx);
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let mut coeff = 1u64;
            let mut e = [0u32; 3];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in term {term:?}")));
                }
                let (head, exp) = match factor.split_once('^') {
                    Some((h, x)) => {
                        let exp: u32 = x
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                        (h, exp)
                    }
                    None => (factor, 1),
                };
                if exp > MAX_EXPONENT {
                    return Err(Error::DegreeLimit(format!("exponent {exp} exceeds 2^16")));
                }
                match head {
                    "x" | "y" | "z" => e[Var::parse(head)?.idx()] += exp,
                    _ => {
                        if exp != 1 {
                            return Err(Error::Parse(format!("coefficient with exponent: {factor:?}")));
                        }
                        coeff = ctx.mul(coeff, ctx.parse_elt(head)?);
                    }
                }
            }
            out.insert_term(Mono { e }, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| Self::display_term(m, c))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

// ---- Bivariate gcd ----

/// Content of a y-main coefficient list: monic gcd of the UPoly coefficients.
fn content(coeffs: &[UPoly], ctx: FieldCtx) -> UPoly {
    let mut g = UPoly::zero(ctx);
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(coeffs: &[UPoly], cont: &UPoly) -> Vec<UPoly> {
    coeffs
        .iter()
        .map(|c| c.divide_exact(cont).expect("content divides"))
        .collect()
}

fn bip_trim(v: &mut Vec<UPoly>) {
    while v.last().is_some_and(|u| u.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of a by b (both y-main, b nonzero): each step replaces
/// r by lc(b)·r + lr·y^(dr−db)·b, which cancels the leading coefficient and
/// keeps the arithmetic fraction-free.
fn pseudo_rem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lcb = b.last().unwrap();
    let mut r = a.to_vec();
    loop {
        bip_trim(&mut r);
        if r.len() <= db {
            return r;
        }
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] = r[dr - db + j].add(&lr.mul(bc));
        }
        debug_assert!(r.last().unwrap().is_zero());
    }
}

/// A gcd of bivariate polynomials in x, y, normalized so the graded-lex
/// leading coefficient is 1. Inputs are viewed as univariate in y over
/// GF(q)[x]; a primitive pseudo-remainder sequence handles the general case,
/// after a fast certificate pass: if some specialization x = x₀ that
/// preserves the y-degree has coprime images, the gcd is the content gcd.
pub fn gcd_bivariate(f: &MPoly, g: &MPoly) -> Result<MPoly> {
    debug_assert_eq!(f.ctx, g.ctx);
    let ctx = f.ctx;
    for p in [f, g] {
        if p.uses_var(Var::Z) {
            return Err(Error::InvalidInput("gcd_bivariate expects polynomials in x, y".into()));
        }
    }
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidInput("gcd(0, 0) is undefined".into()));
    }
    if f.is_zero() {
        return Ok(g.monic_graded_lex());
    }
    if g.is_zero() {
        return Ok(f.monic_graded_lex());
    }

    let a = f.to_bipoly(Var::Y, Var::X);
    let b = g.to_bipoly(Var::Y, Var::X);
    let cont_a = content(&a, ctx);
    let cont_b = content(&b, ctx);
    let cont_gcd = cont_a.gcd(&cont_b);

    // y-degree-0 inputs reduce to univariate content gcds
    if a.len() == 1 || b.len() == 1 {
        let out = if a.len() == 1 { cont_a.gcd(&content(&b, ctx)) } else { cont_b.gcd(&content(&a, ctx)) };
        return Ok(MPoly::from_univar(&out, Var::X).monic_graded_lex());
    }

    // certificate pass: x₀ with lc_y(f)(x₀) ≠ 0 and coprime specializations
    // forces the gcd down into the contents
    let lc = a.last().unwrap();
    let mut tried = 0;
    for x0 in ctx.elements() {
        if tried >= 8 {
            break;
        }
        if lc.eval(x0) == 0 {
            continue;
        }
        tried += 1;
        let fa = UPoly::from_coeffs(ctx, a.iter().map(|c| c.eval(x0)).collect());
        let fb = UPoly::from_coeffs(ctx, b.iter().map(|c| c.eval(x0)).collect());
        if fa.gcd(&fb).deg() == 0 {
            return Ok(MPoly::from_univar(&cont_gcd, Var::X).monic_graded_lex());
        }
    }

    // primitive PRS on the primitive parts
    let mut pa = primitive_part(&a, &cont_a);
    let mut pb = primitive_part(&b, &cont_b);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = pseudo_rem(&pa, &pb);
        if r.is_empty() {
            break;
        }
        let cont_r = content(&r, ctx);
        pa = pb;
        pb = primitive_part(&r, &cont_r);
    }
    // gcd = gcd(contents) * primitive gcd
    let prim = MPoly::from_bipoly(ctx, &pb, Var::Y, Var::X);
    let full = prim.mul(&MPoly::from_univar(&cont_gcd, Var::X));
    Ok(full.monic_graded_lex())
}
