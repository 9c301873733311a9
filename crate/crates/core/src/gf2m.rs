//! Arithmetic in GF(2^m) for 1 <= m <= 32.
//!
//! Elements are residues in the polynomial basis, packed into a `u64` with
//! bit `i` holding the coefficient of `x^i`. A [`FieldCtx`] is the pair
//! (degree, irreducible modulus); its methods operate on raw `u64` values so
//! the exhaustive APN loops stay allocation-free. [`FFElt`] wraps an element
//! together with its context for checked, operator-based use at boundaries.

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported extension degree; elements fit a single machine word.
pub const MAX_DEGREE: u32 = 32;

// ---- GF(2)[x] helpers on bit-packed polynomials ----

/// Degree of a bit-packed GF(2) polynomial; deg 0 = -1.
#[inline]
fn poly_deg(f: u64) -> i32 {
    63 - f.leading_zeros() as i32
}

/// Carryless product. Caller guarantees deg a + deg b < 64.
#[inline]
fn clmul(mut a: u64, mut b: u64) -> u64 {
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

fn gf2_mod(mut a: u64, f: u64) -> u64 {
    let df = poly_deg(f);
    debug_assert!(df >= 0);
    while poly_deg(a) >= df {
        a ^= f << (poly_deg(a) - df);
    }
    a
}

fn gf2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = gf2_mod(a, b);
        a = b;
        b = r;
    }
    a
}

fn gf2_mulmod(a: u64, b: u64, f: u64) -> u64 {
    gf2_mod(clmul(a, b), f)
}

pub(crate) fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

/// Irreducibility over GF(2): x^(2^d) = x mod f, and x^(2^(d/p)) - x is
/// coprime to f for every prime p | d (Rabin's test).
pub fn gf2_irreducible(f: u64) -> bool {
    let d = poly_deg(f);
    if d < 1 {
        return false;
    }
    if d == 1 {
        return true;
    }
    if f & 1 == 0 {
        return false; // divisible by x
    }
    let x = gf2_mod(0b10, f);
    let mut pow = x; // x^(2^i) mod f
    let mut checkpoints = vec![false; d as usize + 1];
    for p in prime_divisors(d as u32) {
        checkpoints[(d as u32 / p) as usize] = true;
    }
    for i in 1..=d as u32 {
        pow = gf2_mulmod(pow, pow, f);
        if checkpoints[i as usize] && gf2_gcd(pow ^ x, f) != 1 {
            return false;
        }
    }
    pow == x
}

/// Least irreducible of degree m in integer-encoding order.
pub fn default_modulus(m: u32) -> u64 {
    debug_assert!((1..=MAX_DEGREE).contains(&m));
    let mut f = (1u64 << m) | 1;
    loop {
        if gf2_irreducible(f) {
            return f;
        }
        f += 2; // constant term must stay 1
    }
}

// ---- Field context ----

/// An explicit model of GF(2^m): the degree and the irreducible modulus.
/// Two contexts with equal fields behave identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    m: u32,
    modulus: u64,
}

impl FieldCtx {
    /// Builds GF(2^m). With `modulus: None` the least irreducible of degree
    /// m (in integer encoding order) is chosen, so results are reproducible.
    pub fn new(m: u32, modulus: Option<u64>) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(m));
        }
        let modulus = match modulus {
            Some(f) => {
                if poly_deg(f) != m as i32 {
                    return Err(Error::InvalidModulus { m, modulus: f, reason: "degree mismatch" });
                }
                if f & 1 == 0 {
                    return Err(Error::InvalidModulus { m, modulus: f, reason: "constant term is zero" });
                }
                if !gf2_irreducible(f) {
                    return Err(Error::InvalidModulus { m, modulus: f, reason: "reducible over GF(2)" });
                }
                f
            }
            None => default_modulus(m),
        };
        Ok(FieldCtx { m, modulus })
    }

    /// GF(2) with its canonical modulus.
    pub fn gf2() -> Self {
        FieldCtx { m: 1, modulus: 0b11 }
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, 2^m.
    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    /// All elements in integer order of the coefficient bit-vector.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }

    /// Parses "gf2^m/modulus-hex"; plain "gf2" is accepted for the prime field.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "gf2" {
            return Ok(Self::gf2());
        }
        let rest = s
            .strip_prefix("gf2^")
            .ok_or_else(|| Error::Parse(format!("field must look like gf2^m/modulus-hex, got {s:?}")))?;
        let (m_str, mod_str) = match rest.split_once('/') {
            Some(pair) => pair,
            None => (rest, ""),
        };
        let m: u32 = m_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad field degree {m_str:?}")))?;
        if mod_str.is_empty() {
            return FieldCtx::new(m, None);
        }
        let modulus = u64::from_str_radix(mod_str, 16)
            .map_err(|_| Error::Parse(format!("bad modulus hex {mod_str:?}")))?;
        FieldCtx::new(m, Some(modulus))
    }

    // ---- Element arithmetic on raw u64 values ----

    #[inline]
    fn reduce(&self, mut t: u64) -> u64 {
        let m = self.m as i32;
        let mut d = poly_deg(t);
        while d >= m {
            t ^= self.modulus << (d - m);
            d = poly_deg(t);
        }
        t
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(clmul(a, b))
    }

    #[inline]
    pub fn sqr(&self, a: u64) -> u64 {
        self.reduce(clmul(a, a))
    }

    /// Square-and-multiply; pow(0, 0) = 1 by the empty-product convention.
    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.sqr(base);
            e >>= 1;
        }
        acc
    }

    /// a^(2^k), k-fold Frobenius.
    pub fn pow2k(&self, a: u64, k: u32) -> u64 {
        let mut r = a;
        for _ in 0..k {
            r = self.sqr(r);
        }
        r
    }

    /// Multiplicative inverse; panics on zero (checked entry points live on
    /// [`FFElt`]).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inversion of zero in {self}");
        // the unit group has order 2^m - 1
        self.pow(a, self.order() - 2)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// Unique square root: squaring is an automorphism, inverse a^(2^(m-1)).
    pub fn sqrt(&self, a: u64) -> u64 {
        self.pow2k(a, self.m - 1)
    }

    /// Absolute trace to GF(2); returns 0 or 1.
    pub fn trace(&self, a: u64) -> u64 {
        let mut acc = 0u64;
        let mut c = a;
        for _ in 0..self.m {
            acc ^= c;
            c = self.sqr(c);
        }
        debug_assert!(acc <= 1);
        acc
    }

    #[inline]
    pub fn frobenius(&self, a: u64) -> u64 {
        self.sqr(a)
    }

    /// [a, a^2, a^4, ...] without repetition; length divides m.
    pub fn frobenius_orbit(&self, a: u64) -> Vec<u64> {
        let mut orbit = vec![a];
        let mut c = self.sqr(a);
        while c != a {
            orbit.push(c);
            c = self.sqr(c);
        }
        debug_assert_eq!(self.m % orbit.len() as u32, 0);
        orbit
    }

    /// Wraps a raw value, range-checked against the field.
    pub fn elt(&self, v: u64) -> Result<FFElt> {
        if v >> self.m != 0 {
            return Err(Error::InvalidInput(format!("element {v:#x} out of range for {self}")));
        }
        Ok(FFElt { ctx: *self, v })
    }

    /// Parses a lowercase-hex coefficient bit-vector.
    pub fn parse_elt(&self, s: &str) -> Result<u64> {
        let v = u64::from_str_radix(s.trim(), 16)
            .map_err(|_| Error::Parse(format!("bad element hex {s:?}")))?;
        if v >> self.m != 0 {
            return Err(Error::Parse(format!("element {s:?} out of range for {self}")));
        }
        Ok(v)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf2^{}/{:x}", self.m, self.modulus)
    }
}

/// Hex form of an element's coefficient bit-vector.
pub fn elt_hex(v: u64) -> String {
    format!("{v:x}")
}

// ---- Checked element wrapper ----

/// A field element tagged with its owning context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FFElt {
    pub ctx: FieldCtx,
    pub v: u64,
}

impl FFElt {
    fn same_ctx(self, rhs: FFElt) -> Result<()> {
        if self.ctx != rhs.ctx {
            return Err(Error::FieldMismatch(self.ctx.to_string(), rhs.ctx.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(self, rhs: FFElt) -> Result<FFElt> {
        self.same_ctx(rhs)?;
        Ok(FFElt { ctx: self.ctx, v: self.ctx.add(self.v, rhs.v) })
    }

    pub fn checked_mul(self, rhs: FFElt) -> Result<FFElt> {
        self.same_ctx(rhs)?;
        Ok(FFElt { ctx: self.ctx, v: self.ctx.mul(self.v, rhs.v) })
    }

    pub fn checked_inv(self) -> Result<FFElt> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FFElt { ctx: self.ctx, v: self.ctx.inv(self.v) })
    }

    pub fn checked_pow(self, e: u64) -> Result<FFElt> {
        Ok(FFElt { ctx: self.ctx, v: self.ctx.pow(self.v, e) })
    }
}

impl std::ops::Add for FFElt {
    type Output = FFElt;
    fn add(self, rhs: FFElt) -> FFElt {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl std::ops::Mul for FFElt {
    type Output = FFElt;
    fn mul(self, rhs: FFElt) -> FFElt {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl fmt::Display for FFElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.v)
    }
}

// ---- Subfield embeddings ----

/// Key for the lexicographic order on coefficient vectors (a_0, a_1, ...):
/// smaller key = lexicographically smaller vector.
fn lex_key(v: u64, m: u32) -> u64 {
    v.reverse_bits() >> (64 - m)
}

/// The injective morphism GF(2^k) -> GF(2^n) (k | n) sending the class of x
/// to the root of the sub modulus with lexicographically least coefficient
/// vector. `section` inverts it on the image.
#[derive(Debug, Clone)]
pub struct Embedding {
    sub: FieldCtx,
    sup: FieldCtx,
    rho: u64,
    /// Rows (pivot, vector, combo) with pivot = highest set bit of vector,
    /// sorted by descending pivot; combo records the rho-power combination.
    rows: Vec<(u32, u64, u64)>,
}

impl Embedding {
    pub fn new(sub: FieldCtx, sup: FieldCtx) -> Result<Self> {
        if sup.degree() % sub.degree() != 0 {
            return Err(Error::InvalidInput(format!(
                "no embedding {sub} -> {sup}: {} does not divide {}",
                sub.degree(),
                sup.degree()
            )));
        }
        // sub.modulus splits into deg(sub) distinct roots inside sup
        let lifted = crate::upoly::UPoly::from_coeffs(
            sup,
            (0..=sub.degree()).map(|i| (sub.modulus >> i) & 1).collect(),
        );
        let mut roots = lifted.roots();
        debug_assert_eq!(roots.len(), sub.degree() as usize);
        roots.sort_by_key(|&r| lex_key(r, sup.degree()));
        let rho = roots[0];

        let mut rows: Vec<(u32, u64, u64)> = Vec::with_capacity(sub.degree() as usize);
        let mut pw = 1u64; // rho^j
        for j in 0..sub.degree() {
            let mut v = pw;
            let mut combo = 1u64 << j;
            for &(p, bv, bc) in &rows {
                if (v >> p) & 1 == 1 {
                    v ^= bv;
                    combo ^= bc;
                }
            }
            // rho powers are linearly independent over GF(2)
            assert!(v != 0, "dependent embedding basis");
            let pivot = poly_deg(v) as u32;
            rows.push((pivot, v, combo));
            rows.sort_by(|a, b| b.0.cmp(&a.0));
            pw = sup.mul(pw, rho);
        }
        Ok(Embedding { sub, sup, rho, rows })
    }

    pub fn sub(&self) -> FieldCtx {
        self.sub
    }

    pub fn sup(&self) -> FieldCtx {
        self.sup
    }

    /// Image of the class of x.
    pub fn rho(&self) -> u64 {
        self.rho
    }

    /// Evaluates the element's coordinate polynomial at rho.
    pub fn map(&self, e: u64) -> u64 {
        debug_assert!(e >> self.sub.degree() == 0);
        let mut acc = 0u64;
        for j in (0..self.sub.degree()).rev() {
            acc = self.sup.mul(acc, self.rho);
            if (e >> j) & 1 == 1 {
                acc ^= 1;
            }
        }
        acc
    }

    /// Partial inverse: Some(e) with map(e) = s when s lies in the image.
    pub fn section(&self, s: u64) -> Option<u64> {
        let mut rem = s;
        let mut combo = 0u64;
        for &(p, bv, bc) in &self.rows {
            if (rem >> p) & 1 == 1 {
                rem ^= bv;
                combo ^= bc;
            }
        }
        if rem == 0 {
            Some(combo)
        } else {
            None
        }
    }
}
