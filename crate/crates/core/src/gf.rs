//! Arithmetic in GF(p^m) with Frobenius-power automorphisms.
//!
//! Elements use the polynomial basis over GF(p): the element with coordinates
//! `(c_0, ..., c_{m-1})` is stored as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
//! The modulus must be primitive, so the class of `x` is the fixed generator
//! `a` and every nonzero element is `a^k` for a unique `0 <= k < q-1`.
//! Multiplication, inversion and the automorphisms all go through the
//! log/antilog tables built once per field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Identity of a field, derived from `(p, m, modulus)`.
pub type FieldId = u32;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// Default moduli for the small non-prime fields, ascending coefficients.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
];

/// An element of some [`FieldCtx`].
///
/// The element only carries the id of its field; all arithmetic goes through
/// the context, which rejects elements of other fields.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gf {
    field: FieldId,
    value: u16,
}

impl Gf {
    /// Integer encoding of the polynomial-basis coordinates.
    pub fn value(self) -> u16 {
        self.value
    }

    pub fn field_id(self) -> FieldId {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

/// How elements are rendered as text.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum ElementStyle {
    /// `0`, `1`, `a`, `a^k`.
    #[default]
    Power,
    /// `c0+c1*a+c2*a^2+...` in the polynomial basis.
    Additive,
}

/// The automorphism `c -> c^(p^s)` of GF(p^m).
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism {
    s: u32,
    m: u32,
}

impl Automorphism {
    /// Frobenius exponent, `0 <= s < m`.
    pub fn exponent(self) -> u32 {
        self.s
    }

    /// The order `|θ| = m / gcd(m, s)`.
    pub fn order(self) -> u32 {
        self.m / gcd(self.m, self.s)
    }

    /// Frobenius exponent of `θ^power`, reduced mod `m`.
    pub fn frobenius_exponent(self, power: i64) -> u32 {
        (self.s as i64 * power).rem_euclid(self.m as i64) as u32
    }

    pub fn is_identity(self) -> bool {
        self.s == 0
    }
}

/// Arithmetic operations accepted by [`FieldCtx::arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(i64),
}

/// A concrete finite field GF(p^m).
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    id: FieldId,
    exp: Vec<u16>,
    log: Vec<u32>,
    frob_mult: Vec<u64>,
    add_table: Option<Vec<u16>>,
    neg_table: Vec<u16>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// Builds GF(p^m), validating the modulus. Without a modulus the built-in
/// default is used (a primitive root for prime fields, a fixed table for
/// q in {4, 8, 9, 16, 25, 27, 32}, a search for the first primitive
/// polynomial otherwise).
pub fn make_field(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Arc<FieldCtx>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    let q = (p as u64)
        .checked_pow(m)
        .filter(|&q| q <= MAX_FIELD_SIZE as u64)
        .ok_or_else(|| Error::InvalidField(format!("{p}^{m} exceeds {MAX_FIELD_SIZE}")))?
        as u32;
    let modulus = match modulus {
        Some(c) => {
            if c.len() != m as usize + 1 {
                return Err(Error::InvalidField(format!(
                    "modulus must have {} coefficients, got {}",
                    m + 1,
                    c.len()
                )));
            }
            if let Some(&bad) = c.iter().find(|&&v| v >= p) {
                return Err(Error::InvalidField(format!("coefficient {bad} not in [0, {p})")));
            }
            if c[m as usize] != 1 {
                return Err(Error::InvalidField("modulus must be monic".into()));
            }
            c.to_vec()
        }
        None => default_modulus(p, m),
    };
    if !fp_poly::is_irreducible(&modulus, p) {
        return Err(Error::ReducibleModulus(fp_poly::show(&modulus), p));
    }
    FieldCtx::build(p, m, q, modulus)
}

/// Looks up GF(q) with the default modulus.
pub fn field_of_size(q: u32) -> Result<Arc<FieldCtx>> {
    let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
    make_field(p, m, None)
}

fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    if let Some((_, _, c)) = DEFAULT_MODULI.iter().find(|(pp, mm, _)| *pp == p && *mm == m) {
        return c.to_vec();
    }
    if m == 1 {
        let g = (1..p).find(|&g| is_primitive_root(g, p)).unwrap_or(1);
        return vec![(p - g) % p, 1];
    }
    // first primitive polynomial in counting order of the lower coefficients
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut c: Vec<u32> = (0..m).map(|i| ((idx / (p as u64).pow(i)) % p as u64) as u32).collect();
        c.push(1);
        if c[0] != 0 && fp_poly::is_irreducible(&c, p) && fp_poly::root_is_primitive(&c, p) {
            return c;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

impl FieldCtx {
    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Result<Arc<FieldCtx>> {
        let order = (q - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for k in 0..order {
            let v = encode(&cur, p);
            if k > 0 && v == 1 {
                return Err(Error::NonPrimitiveModulus(fp_poly::show(&modulus)));
            }
            exp.push(v as u16);
            log[v as usize] = k as u32;
            fp_poly::times_x_mod(&mut cur, &modulus, p);
        }
        if encode(&cur, p) != 1 {
            return Err(Error::NonPrimitiveModulus(fp_poly::show(&modulus)));
        }
        let frob_mult = (0..m)
            .map(|e| (p as u64).pow(e) % (q as u64 - 1).max(1))
            .collect();
        let neg_table = (0..q)
            .map(|v| {
                let d = decode(v, p, m);
                encode(&d.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p) as u16
            })
            .collect();
        let mut ctx = FieldCtx {
            p,
            m,
            q,
            id: field_id(p, m, &modulus),
            modulus,
            exp,
            log,
            frob_mult,
            add_table: None,
            neg_table,
        };
        if p != 2 && q <= 256 {
            let mut t = vec![0u16; (q * q) as usize];
            for x in 0..q {
                for y in 0..q {
                    t[(x * q + y) as usize] = ctx.add_digits(x as u16, y as u16);
                }
            }
            ctx.add_table = Some(t);
        }
        Ok(Arc::new(ctx))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    /// Short description such as `GF(2^3) mod x^3+x+1`.
    pub fn describe(&self) -> String {
        if self.m == 1 {
            format!("GF({})", self.p)
        } else {
            format!("GF({}^{}) mod {}", self.p, self.m, fp_poly::show(&self.modulus))
        }
    }

    #[inline]
    fn check(&self, x: Gf) {
        assert_eq!(x.field, self.id, "element of another field passed to {}", self.describe());
    }

    #[inline]
    fn mk(&self, v: u16) -> Gf {
        Gf { field: self.id, value: v }
    }

    pub fn zero(&self) -> Gf {
        self.mk(0)
    }

    pub fn one(&self) -> Gf {
        self.mk(1)
    }

    /// The fixed primitive element `a` (the class of `x` modulo the modulus).
    pub fn generator(&self) -> Gf {
        self.mk(self.exp[1 % self.exp.len()])
    }

    /// Element from its integer encoding.
    pub fn element(&self, value: u32) -> Result<Gf> {
        if value >= self.q {
            return Err(Error::ElementOutOfRange(value, self.q));
        }
        Ok(self.mk(value as u16))
    }

    /// Element from polynomial-basis coordinates `c_0..c_{m-1}`.
    pub fn from_coords(&self, coords: &[u32]) -> Result<Gf> {
        if coords.len() > self.m as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!("bad coordinates {coords:?}")));
        }
        Ok(self.mk(encode(coords, self.p) as u16))
    }

    pub fn coords(&self, x: Gf) -> Vec<u32> {
        self.check(x);
        decode(x.value as u32, self.p, self.m)
    }

    /// Image of the integer `c` in the prime subfield.
    pub fn from_int(&self, c: i64) -> Gf {
        self.mk(c.rem_euclid(self.p as i64) as u16)
    }

    /// `a^k` for any integer `k`.
    pub fn gen_pow(&self, k: i64) -> Gf {
        let order = self.q as i64 - 1;
        self.mk(self.exp[k.rem_euclid(order) as usize])
    }

    /// Discrete logarithm to base `a`; `None` for zero.
    pub fn log(&self, x: Gf) -> Option<u32> {
        self.check(x);
        (x.value != 0).then(|| self.log[x.value as usize])
    }

    /// All elements, ordered `0, 1, a, a^2, ...`.
    pub fn elements(&self) -> Vec<Gf> {
        std::iter::once(self.zero()).chain(self.nonzero_elements()).collect()
    }

    /// `a^0, a^1, ..., a^{q-2}`.
    pub fn nonzero_elements(&self) -> Vec<Gf> {
        self.exp.iter().map(|&v| self.mk(v)).collect()
    }

    fn add_digits(&self, x: u16, y: u16) -> u16 {
        let (mut x, mut y) = (x as u32, y as u32);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out as u16
    }

    #[inline]
    pub fn add(&self, x: Gf, y: Gf) -> Gf {
        self.check(x);
        self.check(y);
        let v = if self.p == 2 {
            x.value ^ y.value
        } else if let Some(t) = &self.add_table {
            t[x.value as usize * self.q as usize + y.value as usize]
        } else {
            self.add_digits(x.value, y.value)
        };
        self.mk(v)
    }

    #[inline]
    pub fn neg(&self, x: Gf) -> Gf {
        self.check(x);
        self.mk(self.neg_table[x.value as usize])
    }

    #[inline]
    pub fn sub(&self, x: Gf, y: Gf) -> Gf {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Gf, y: Gf) -> Gf {
        self.check(x);
        self.check(y);
        if x.value == 0 || y.value == 0 {
            return self.zero();
        }
        let s = self.log[x.value as usize] as usize + self.log[y.value as usize] as usize;
        self.mk(self.exp[s % self.exp.len()])
    }

    pub fn inv(&self, x: Gf) -> Result<Gf> {
        self.check(x);
        if x.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.exp.len();
        let l = self.log[x.value as usize] as usize;
        Ok(self.mk(self.exp[(order - l) % order]))
    }

    pub fn div(&self, x: Gf, y: Gf) -> Result<Gf> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`; negative exponents require `x != 0`.
    pub fn pow(&self, x: Gf, e: i64) -> Result<Gf> {
        self.check(x);
        if x.value == 0 {
            return match e {
                0 => Ok(self.one()),
                e if e > 0 => Ok(self.zero()),
                _ => Err(Error::DivisionByZero),
            };
        }
        let order = self.exp.len() as i64;
        let l = self.log[x.value as usize] as i64;
        Ok(self.mk(self.exp[(l * e.rem_euclid(order)).rem_euclid(order) as usize]))
    }

    /// Checked binary operation; mixing fields is reported, not panicked on.
    /// The second operand is ignored by `Inv` and `Pow`.
    pub fn arith(&self, op: FieldOp, x: Gf, y: Gf) -> Result<Gf> {
        if x.field != self.id || (!matches!(op, FieldOp::Inv | FieldOp::Pow(_)) && y.field != self.id) {
            return Err(Error::FieldMismatch);
        }
        match op {
            FieldOp::Add => Ok(self.add(x, y)),
            FieldOp::Sub => Ok(self.sub(x, y)),
            FieldOp::Mul => Ok(self.mul(x, y)),
            FieldOp::Div => self.div(x, y),
            FieldOp::Inv => self.inv(x),
            FieldOp::Pow(e) => self.pow(x, e),
        }
    }

    /// The automorphism `c -> c^(p^s)`, with `s` taken mod `m`.
    pub fn automorphism(&self, s: i64) -> Automorphism {
        Automorphism {
            s: s.rem_euclid(self.m as i64) as u32,
            m: self.m,
        }
    }

    /// `x -> x^(p^e)` for `0 <= e < m`.
    #[inline]
    pub fn frobenius(&self, x: Gf, e: u32) -> Gf {
        self.check(x);
        if x.value == 0 || e == 0 {
            return x;
        }
        let l = self.log[x.value as usize] as u64;
        let order = self.exp.len() as u64;
        self.mk(self.exp[((l * self.frob_mult[e as usize]) % order) as usize])
    }

    /// `θ^power(x)`; negative powers apply the inverse automorphism.
    #[inline]
    pub fn apply_aut(&self, theta: Automorphism, x: Gf, power: i64) -> Gf {
        debug_assert_eq!(theta.m, self.m);
        self.frobenius(x, theta.frobenius_exponent(power))
    }

    /// `{x : θ^power(x) = x}`, ordered as in [`FieldCtx::elements`].
    pub fn fixed_field(&self, theta: Automorphism, power: i64) -> Vec<Gf> {
        self.elements()
            .into_iter()
            .filter(|&x| self.apply_aut(theta, x, power) == x)
            .collect()
    }

    /// `ϑ(b) = b θ^n(b^{-1})`.
    pub fn vartheta(&self, theta: Automorphism, n: i64, b: Gf) -> Result<Gf> {
        let binv = self.inv(b)?;
        Ok(self.mul(b, self.apply_aut(theta, binv, n)))
    }

    /// Image of `ϑ` and the partition of F* into its cosets.
    pub fn vartheta_image(&self, theta: Automorphism, n: i64) -> VarthetaImage {
        let mut image: Vec<Gf> = self
            .nonzero_elements()
            .into_iter()
            .map(|b| self.vartheta(theta, n, b).expect("nonzero"))
            .collect();
        image.sort_by_key(|&x| self.log[x.value as usize]);
        image.dedup();
        let mut seen = vec![false; self.q as usize];
        let mut cosets = Vec::new();
        for a in self.nonzero_elements() {
            if seen[a.value as usize] {
                continue;
            }
            let mut coset: Vec<Gf> = image.iter().map(|&t| self.mul(a, t)).collect();
            coset.sort_by_key(|&x| self.log[x.value as usize]);
            for x in &coset {
                seen[x.value as usize] = true;
            }
            cosets.push(coset);
        }
        VarthetaImage { image, cosets }
    }

    /// Renders an element.
    pub fn format(&self, x: Gf, style: ElementStyle) -> String {
        self.check(x);
        match style {
            ElementStyle::Power => match x.value {
                0 => "0".into(),
                1 => "1".into(),
                v => match self.log[v as usize] {
                    1 => "a".into(),
                    k => format!("a^{k}"),
                },
            },
            ElementStyle::Additive => {
                let terms: Vec<String> = decode(x.value as u32, self.p, self.m)
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "a".into(),
                        (1, c) => format!("{c}*a"),
                        (i, 1) => format!("a^{i}"),
                        (i, c) => format!("{c}*a^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }

    /// Power-form rendering.
    pub fn show(&self, x: Gf) -> String {
        self.format(x, ElementStyle::Power)
    }
}

/// Result of [`FieldCtx::vartheta_image`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarthetaImage {
    pub image: Vec<Gf>,
    pub cosets: Vec<Vec<Gf>>,
}

impl VarthetaImage {
    /// The coset containing `a`.
    pub fn coset_of(&self, a: Gf) -> Option<&[Gf]> {
        self.cosets.iter().find(|c| c.contains(&a)).map(|c| c.as_slice())
    }
}

fn encode(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

fn field_id(p: u32, m: u32, modulus: &[u32]) -> FieldId {
    // FNV-1a
    let mut h: u32 = 0x811c_9dc5;
    for w in [p, m].iter().chain(modulus) {
        for b in w.to_le_bytes() {
            h ^= b as u32;
            h = h.wrapping_mul(0x0100_0193);
        }
    }
    h
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut m = 0;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

fn is_primitive_root(g: u32, p: u32) -> bool {
    let mut x = 1u64;
    for k in 1..p {
        x = x * g as u64 % p as u64;
        if x == 1 {
            return k == p - 1;
        }
    }
    false
}

/// Dense polynomials over GF(p) as ascending `u32` coefficient vectors.
pub(crate) mod fp_poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(x: u32, p: u32) -> u32 {
        (1..p).find(|&y| (x as u64 * y as u64) % p as u64 == 1).expect("nonzero mod p")
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &bi) in b.iter().enumerate() {
                let t = (c as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            trim(&mut r);
        }
        r
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g: Vec<u32> = (0..d)
                    .map(|i| ((idx / (p as u64).pow(i as u32)) % p as u64) as u32)
                    .collect();
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Multiplies `cur` (degree < m) by `x` modulo the monic `modulus`.
    pub fn times_x_mod(cur: &mut [u32], modulus: &[u32], p: u32) {
        let m = cur.len();
        let top = cur[m - 1];
        for i in (1..m).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for i in 0..m {
            let t = (top as u64 * modulus[i] as u64 % p as u64) as u32;
            cur[i] = (cur[i] + p - t) % p;
        }
    }

    pub fn root_is_primitive(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        let order = (p as u64).pow(m as u32) - 1;
        let mut cur = vec![0u32; m];
        cur[0] = 1;
        for k in 1..=order {
            times_x_mod(&mut cur, f, p);
            if cur[0] == 1 && cur[1..].iter().all(|&c| c == 0) {
                return k == order;
            }
        }
        false
    }

    /// Descending rendering in `x`, e.g. `x^3+x+1`.
    pub fn show(f: &[u32]) -> String {
        let terms: Vec<String> = f
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}
