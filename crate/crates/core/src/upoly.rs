//! Dense univariate polynomials over a [`FieldCtx`].
//!
//! Coefficient `c[i]` multiplies `x^i`; the vector never has trailing zeros,
//! so the zero polynomial is the empty vector. These are the workhorses of
//! specialization, Hensel lifting, and root finding; degrees stay small
//! (a few hundred), so schoolbook algorithms are deliberate choices.

use crate::error::{Error, Result};
use crate::gf2m::FieldCtx;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    pub ctx: FieldCtx,
    pub c: Vec<u64>,
}

impl UPoly {
    // ---- Constructors ----

    pub fn zero(ctx: FieldCtx) -> Self {
        UPoly { ctx, c: Vec::new() }
    }

    pub fn constant(ctx: FieldCtx, v: u64) -> Self {
        let mut p = UPoly { ctx, c: vec![v] };
        p.trim();
        p
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn x(ctx: FieldCtx) -> Self {
        UPoly { ctx, c: vec![0, 1] }
    }

    pub fn monomial(ctx: FieldCtx, coeff: u64, deg: usize) -> Self {
        if coeff == 0 {
            return Self::zero(ctx);
        }
        let mut c = vec![0; deg + 1];
        c[deg] = coeff;
        UPoly { ctx, c }
    }

    pub fn from_coeffs(ctx: FieldCtx, c: Vec<u64>) -> Self {
        let mut p = UPoly { ctx, c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    // ---- Inspection ----

    /// Degree with deg 0 = -1.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    // ---- Ring operations ----

    pub fn add(&self, rhs: &UPoly) -> UPoly {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let mut c = vec![0u64; self.c.len().max(rhs.c.len())];
        for (i, v) in self.c.iter().enumerate() {
            c[i] ^= v;
        }
        for (i, v) in rhs.c.iter().enumerate() {
            c[i] ^= v;
        }
        UPoly::from_coeffs(self.ctx, c)
    }

    pub fn mul(&self, rhs: &UPoly) -> UPoly {
        debug_assert_eq!(self.ctx, rhs.ctx);
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(self.ctx);
        }
        let mut c = vec![0u64; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                if b != 0 {
                    c[i + j] ^= self.ctx.mul(a, b);
                }
            }
        }
        UPoly::from_coeffs(self.ctx, c)
    }

    pub fn mul_scalar(&self, s: u64) -> UPoly {
        UPoly::from_coeffs(self.ctx, self.c.iter().map(|&a| self.ctx.mul(a, s)).collect())
    }

    /// Multiplication by x^k.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0u64; k];
        c.extend_from_slice(&self.c);
        UPoly { ctx: self.ctx, c }
    }

    /// Long division; panics on zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.deg() < d.deg() {
            return (UPoly::zero(self.ctx), self.clone());
        }
        let ctx = self.ctx;
        let lead_inv = ctx.inv(d.leading_coeff());
        let dd = d.deg() as usize;
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i] == 0 {
                continue;
            }
            let f = ctx.mul(r[i], lead_inv);
            q[i - dd] = f;
            for (j, &dc) in d.c.iter().enumerate() {
                if dc != 0 {
                    r[i - dd + j] ^= ctx.mul(f, dc);
                }
            }
        }
        (UPoly::from_coeffs(ctx, q), UPoly::from_coeffs(ctx, r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    pub fn divide_exact(&self, d: &UPoly) -> Result<UPoly> {
        let (q, r) = self.div_rem(d);
        if !r.is_zero() {
            return Err(Error::InexactDivision("univariate remainder nonzero".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.mul_scalar(self.ctx.inv(self.leading_coeff()))
    }

    pub fn gcd(&self, rhs: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: (g, s, t) with s*self + t*rhs = g, g monic.
    pub fn xgcd(&self, rhs: &UPoly) -> (UPoly, UPoly, UPoly) {
        let ctx = self.ctx;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (UPoly::one(ctx), UPoly::zero(ctx));
        let (mut t0, mut t1) = (UPoly::zero(ctx), UPoly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.add(&q.mul(&s1));
            let t = t0.add(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() || r0.is_monic() {
            return (r0, s0, t0);
        }
        let u = ctx.inv(r0.leading_coeff());
        (r0.mul_scalar(u), s0.mul_scalar(u), t0.mul_scalar(u))
    }

    pub fn powmod(&self, mut e: u64, modulus: &UPoly) -> UPoly {
        let mut base = self.rem(modulus);
        let mut acc = UPoly::one(self.ctx);
        while e != 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, at: u64) -> u64 {
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = self.ctx.mul(acc, at) ^ a;
        }
        acc
    }

    /// Formal derivative; in characteristic 2 only odd-degree terms survive.
    pub fn deriv(&self) -> UPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| if i % 2 == 1 { a } else { 0 })
            .collect();
        UPoly::from_coeffs(self.ctx, c)
    }

    /// For f with only even exponents, the unique g with g^2 = f.
    pub fn sqrt_even(&self) -> UPoly {
        debug_assert!(self.c.iter().skip(1).step_by(2).all(|&a| a == 0));
        let c = self.c.iter().step_by(2).map(|&a| self.ctx.sqrt(a)).collect();
        UPoly::from_coeffs(self.ctx, c)
    }

    /// Composition self(g(x)); Horner in the outer polynomial.
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero(self.ctx);
        for &a in self.c.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(self.ctx, a));
        }
        acc
    }

    // ---- Root finding ----

    /// All distinct roots in the coefficient field, ascending. Deterministic:
    /// trace-map splitting sweeps multipliers in canonical field order.
    pub fn roots(&self) -> Vec<u64> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        if self.deg() < 1 {
            return Vec::new();
        }
        let ctx = self.ctx;
        // isolate the distinct linear part: gcd(f, x^q - x)
        let xq = UPoly::x(ctx).powmod(ctx.order(), self);
        let linear_part = self.gcd(&xq.add(&UPoly::x(ctx)));
        let mut out = Vec::new();
        let mut stack = vec![linear_part];
        while let Some(g) = stack.pop() {
            if g.deg() < 1 {
                continue;
            }
            if g.deg() == 1 {
                // monic x + r has root r in characteristic 2
                out.push(g.coeff(0));
                continue;
            }
            // some u has tr(u*a) != tr(u*b) for distinct roots a, b
            let mut split = None;
            for u in 1..ctx.order() {
                let ux = UPoly::from_coeffs(ctx, vec![0, u]).rem(&g);
                let mut acc = ux.clone();
                let mut t = ux;
                for _ in 1..ctx.degree() {
                    t = t.mul(&t).rem(&g);
                    acc = acc.add(&t);
                }
                let h = g.gcd(&acc);
                if h.deg() >= 1 && h.deg() < g.deg() {
                    split = Some(h);
                    break;
                }
            }
            let h = split.expect("trace splitting exhausts multipliers only on non-squarefree input");
            let rest = g.divide_exact(&h).expect("gcd divides");
            stack.push(h);
            stack.push(rest);
        }
        out.sort_unstable();
        out
    }

    // ---- Serialization ("d:coeff-hex,..." sparse map) ----

    /// Parses the sparse map grammar, e.g. "13:1,7:1,0:a".
    pub fn parse_sparse(ctx: FieldCtx, s: &str) -> Result<UPoly> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(UPoly::zero(ctx));
        }
        let mut c: Vec<u64> = Vec::new();
        for part in s.split(',') {
            let (d_str, v_str) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("term {part:?} is not d:coeff-hex")))?;
            let d: usize = d_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree {d_str:?}")))?;
            if d > 1 << 16 {
                return Err(Error::DegreeLimit(format!("exponent {d} exceeds 2^16")));
            }
            let v = ctx.parse_elt(v_str)?;
            if c.len() <= d {
                c.resize(d + 1, 0);
            }
            c[d] ^= v; // repeated degrees accumulate in characteristic 2
        }
        Ok(UPoly::from_coeffs(ctx, c))
    }

    /// Sparse map form, highest degree first.
    pub fn to_sparse_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &v)| v != 0)
            .map(|(d, &v)| format!("{d}:{v:x}"))
            .collect();
        terms.join(",")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sparse_string())
    }
}
