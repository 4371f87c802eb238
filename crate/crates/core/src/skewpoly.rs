//! The skew-polynomial ring `F[x;θ]`.
//!
//! Polynomials are stored with left coefficients in ascending order,
//! `f = Σ f_i x^i`, and multiply under the rule `x c = θ(c) x`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Automorphism, ElementStyle, FieldCtx, Gf};

/// `F[x;θ]` for a fixed field and automorphism.
#[derive(Debug)]
pub struct SkewRing {
    field: Arc<FieldCtx>,
    theta: Automorphism,
}

impl PartialEq for SkewRing {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id() && self.theta == other.theta
    }
}

impl Eq for SkewRing {}

impl SkewRing {
    /// The ring over `field` twisted by `θ = Frobenius^s`.
    pub fn new(field: Arc<FieldCtx>, s: i64) -> Arc<SkewRing> {
        let theta = field.automorphism(s);
        Arc::new(SkewRing { field, theta })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn theta(&self) -> Automorphism {
        self.theta
    }

    /// `θ^power(c)`.
    #[inline]
    pub fn aut(&self, c: Gf, power: i64) -> Gf {
        self.field.apply_aut(self.theta, c, power)
    }
}

/// Ring-level constructors; they need the `Arc` to hand out to polynomials.
pub trait RingExt {
    fn zero(&self) -> SkewPoly;
    fn one(&self) -> SkewPoly;
    fn x(&self) -> SkewPoly;
    fn constant(&self, c: Gf) -> SkewPoly;
    fn monomial(&self, c: Gf, k: usize) -> SkewPoly;
    fn x_pow(&self, k: usize) -> SkewPoly;
    fn poly(&self, coeffs: Vec<Gf>) -> SkewPoly;
    /// `x^n - a`.
    fn x_n_minus(&self, n: usize, a: Gf) -> SkewPoly;
}

impl RingExt for Arc<SkewRing> {
    fn zero(&self) -> SkewPoly {
        SkewPoly { ring: self.clone(), coeffs: Vec::new() }
    }

    fn one(&self) -> SkewPoly {
        self.constant(self.field.one())
    }

    fn x(&self) -> SkewPoly {
        self.x_pow(1)
    }

    fn constant(&self, c: Gf) -> SkewPoly {
        self.poly(vec![c])
    }

    fn monomial(&self, c: Gf, k: usize) -> SkewPoly {
        let mut coeffs = vec![self.field.zero(); k + 1];
        coeffs[k] = c;
        self.poly(coeffs)
    }

    fn x_pow(&self, k: usize) -> SkewPoly {
        self.monomial(self.field.one(), k)
    }

    fn poly(&self, coeffs: Vec<Gf>) -> SkewPoly {
        for c in &coeffs {
            assert_eq!(c.field_id(), self.field.id(), "coefficient from another field");
        }
        let mut p = SkewPoly { ring: self.clone(), coeffs };
        p.trim();
        p
    }

    fn x_n_minus(&self, n: usize, a: Gf) -> SkewPoly {
        let mut coeffs = vec![self.field.zero(); n + 1];
        coeffs[n] = self.field.one();
        coeffs[0] = self.field.sub(coeffs[0], a);
        self.poly(coeffs)
    }
}

/// Degree of a skew polynomial; the zero polynomial has degree `-∞`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An element of `F[x;θ]`.
#[derive(Clone)]
pub struct SkewPoly {
    ring: Arc<SkewRing>,
    coeffs: Vec<Gf>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.ring == *other.ring
    }
}

impl Eq for SkewPoly {}

impl Hash for SkewPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

/// Ascending coefficient array of element strings.
impl Serialize for SkewPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let f = &self.ring.field;
        serializer.collect_seq(self.coeffs.iter().map(|&c| f.show(c)))
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(ElementStyle::Power))
    }
}

/// Result of [`SkewPoly::gcrd`]: `d = u f1 + v f2` with `d` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gcrd {
    pub d: SkewPoly,
    pub u: SkewPoly,
    pub v: SkewPoly,
}

struct Euclid {
    d: SkewPoly,
    u: SkewPoly,
    v: SkewPoly,
    // u_next f1 + v_next f2 = 0
    u_next: SkewPoly,
}

impl SkewPoly {
    pub fn ring(&self) -> &Arc<SkewRing> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.ring.field
    }

    /// Left coefficients, ascending; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    /// `f_i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn deg(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            l => Degree::Finite(l - 1),
        }
    }

    /// Degree as an option, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Gf> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.ring.field.one())
    }

    pub fn constant_term(&self) -> Gf {
        self.coeff(0)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn same_ring(&self, other: &SkewPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<Gf>) -> SkewPoly {
        let mut p = SkewPoly { ring: self.ring.clone(), coeffs };
        p.trim();
        p
    }

    pub fn try_add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(other)?;
        let f = &self.ring.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Ok(self.with_coeffs((0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn try_sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.try_add(&-other)
    }

    /// Product under `x c = θ(c) x`.
    pub fn try_mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let f = &self.ring.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, &gj) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(fi, self.ring.aut(gj, i as i64)));
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// `c f`.
    pub fn scale_left(&self, c: Gf) -> SkewPoly {
        let f = &self.ring.field;
        self.with_coeffs(self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    /// `f c = Σ f_i θ^i(c) x^i`.
    pub fn scale_right(&self, c: Gf) -> SkewPoly {
        let f = &self.ring.field;
        self.with_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &x)| f.mul(x, self.ring.aut(c, i as i64)))
                .collect(),
        )
    }

    /// `x^k f`.
    pub fn shift_left_by_x(&self, k: usize) -> SkewPoly {
        let f = &self.ring.field;
        let mut coeffs = vec![f.zero(); k];
        coeffs.extend(self.coeffs.iter().map(|&c| self.ring.aut(c, k as i64)));
        self.with_coeffs(coeffs)
    }

    /// Left scaling by the inverse leading coefficient.
    pub fn monic(&self) -> Result<SkewPoly> {
        let lc = self.leading().ok_or(Error::DivisionByZero)?;
        Ok(self.scale_left(self.ring.field.inv(lc)?))
    }

    /// `(s, r)` with `self = s g + r` and `deg r < deg g`.
    pub fn right_divmod(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.same_ring(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.ring.field;
        let mut r = self.coeffs.clone();
        let mut s = vec![f.zero(); r.len().saturating_sub(dg)];
        let lead = g.coeffs[dg];
        while r.len() > dg {
            let d = r.len() - 1 - dg;
            let top = r[r.len() - 1];
            if !top.is_zero() {
                let c = f.div(top, self.ring.aut(lead, d as i64))?;
                s[d] = c;
                for (i, &gi) in g.coeffs.iter().enumerate() {
                    r[i + d] = f.sub(r[i + d], f.mul(c, self.ring.aut(gi, d as i64)));
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((self.with_coeffs(s), self.with_coeffs(r)))
    }

    /// `(s, r)` with `self = g s + r` and `deg r < deg g`.
    pub fn left_divmod(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.same_ring(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.ring.field;
        let mut r = self.coeffs.clone();
        let mut s = vec![f.zero(); r.len().saturating_sub(dg)];
        let lead_inv = f.inv(g.coeffs[dg])?;
        while r.len() > dg {
            let d = r.len() - 1 - dg;
            let top = r[r.len() - 1];
            if !top.is_zero() {
                let c = self.ring.aut(f.mul(lead_inv, top), -(dg as i64));
                s[d] = c;
                for (i, &gi) in g.coeffs.iter().enumerate() {
                    r[i + d] = f.sub(r[i + d], f.mul(gi, self.ring.aut(c, i as i64)));
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((self.with_coeffs(s), self.with_coeffs(r)))
    }

    /// Remainder of right division by `g`.
    pub fn right_rem(&self, g: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.right_divmod(g)?.1)
    }

    /// `self |_r f`.
    pub fn right_divides(&self, f: &SkewPoly) -> bool {
        f.right_divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// `self |_l f`, i.e. `f = self s` for some `s`.
    pub fn left_divides(&self, f: &SkewPoly) -> bool {
        f.left_divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    fn euclid(&self, other: &SkewPoly) -> Result<Euclid> {
        self.same_ring(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidArgument("gcrd of two zero polynomials".into()));
        }
        let ring = &self.ring;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (ring.one(), ring.zero());
        let (mut v0, mut v1) = (ring.zero(), ring.one());
        while !r1.is_zero() {
            let (q, r) = r0.right_divmod(&r1)?;
            let u2 = &u0 - &(&q * &u1);
            let v2 = &v0 - &(&q * &v1);
            (r0, r1) = (r1, r);
            (u0, u1) = (u1, u2);
            (v0, v1) = (v1, v2);
        }
        let inv = ring.field.inv(r0.leading().expect("nonzero remainder"))?;
        Ok(Euclid {
            d: r0.scale_left(inv),
            u: u0.scale_left(inv),
            v: v0.scale_left(inv),
            u_next: u1,
        })
    }

    /// Greatest common right divisor with right Bezout cofactors.
    pub fn gcrd(&self, other: &SkewPoly) -> Result<Gcrd> {
        let e = self.euclid(other)?;
        Ok(Gcrd { d: e.d, u: e.u, v: e.v })
    }

    /// Least common left multiple, monic.
    pub fn lclm(&self, other: &SkewPoly) -> Result<SkewPoly> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::InvalidArgument("lclm of a zero polynomial".into()));
        }
        let e = self.euclid(other)?;
        let l = (&e.u_next * self).monic()?;
        debug_assert_eq!(
            e.d.degree().unwrap() + l.degree().unwrap(),
            self.degree().unwrap() + other.degree().unwrap()
        );
        Ok(l)
    }

    /// Coefficientwise `θ^power`.
    pub fn theta(&self, power: i64) -> SkewPoly {
        self.with_coeffs(self.coeffs.iter().map(|&c| self.ring.aut(c, power)).collect())
    }

    /// Left reciprocal `Σ θ^i(f_{t-i}) x^i`, `t = deg f`.
    pub fn rho_l(&self) -> SkewPoly {
        let Some(t) = self.degree() else {
            return self.clone();
        };
        self.with_coeffs((0..=t).map(|i| self.ring.aut(self.coeffs[t - i], i as i64)).collect())
    }

    /// Right reciprocal `Σ θ^{i-t}(f_{t-i}) x^i`, `t = deg f`.
    pub fn rho_r(&self) -> SkewPoly {
        let Some(t) = self.degree() else {
            return self.clone();
        };
        self.with_coeffs(
            (0..=t)
                .map(|i| self.ring.aut(self.coeffs[t - i], i as i64 - t as i64))
                .collect(),
        )
    }

    /// Membership in the center `Fix(θ)[x^|θ|]`.
    pub fn is_central(&self) -> bool {
        let order = self.ring.theta.order() as usize;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .all(|(i, &c)| i % order == 0 && self.ring.aut(c, 1) == c)
    }

    /// Whether `f = c x^t f0` with `f0` central.
    pub fn is_twosided(&self) -> bool {
        let Some(t) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return true;
        };
        let f = &self.ring.field;
        let cinv = f.inv(self.coeffs[t]).expect("nonzero");
        let order = self.ring.theta.order() as usize;
        self.coeffs[t..]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .all(|(j, &c)| {
                let r = f.mul(cinv, c);
                j % order == 0 && self.ring.aut(r, 1) == r
            })
    }

    /// Canonical ordering: degree first, then coefficients from the top,
    /// comparing elements as `0 < 1 < a < a^2 < ...`.
    pub fn canonical_cmp(&self, other: &SkewPoly) -> Ordering {
        let f = &self.ring.field;
        let key = |c: Gf| f.log(c).map_or(0, |l| l + 1);
        self.deg().cmp(&other.deg()).then_with(|| {
            self.coeffs
                .iter()
                .rev()
                .map(|&c| key(c))
                .cmp(other.coeffs.iter().rev().map(|&c| key(c)))
        })
    }

    /// Descending rendering, e.g. `x^3+a^4*x^2+1`.
    pub fn display_with(&self, style: ElementStyle) -> String {
        let f = &self.ring.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format(c, style);
            let xs = match i {
                0 => String::new(),
                1 => "x".to_string(),
                i => format!("x^{i}"),
            };
            terms.push(match (i, cs.as_str()) {
                (0, _) => cs.clone(),
                (_, "1") => xs,
                (_, s) if s.contains('+') => format!("({s})*{xs}"),
                (_, s) => format!("{s}*{xs}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl Add for &SkewPoly {
    type Output = SkewPoly;
    fn add(self, rhs: &SkewPoly) -> SkewPoly {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &SkewPoly {
    type Output = SkewPoly;
    fn sub(self, rhs: &SkewPoly) -> SkewPoly {
        self.try_add(&-rhs).expect("ring mismatch")
    }
}

impl Neg for &SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        let f = &self.ring.field;
        self.with_coeffs(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &SkewPoly {
    type Output = SkewPoly;
    fn mul(self, rhs: &SkewPoly) -> SkewPoly {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SkewPoly {
            type Output = SkewPoly;
            fn $m(self, rhs: SkewPoly) -> SkewPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&SkewPoly> for SkewPoly {
            type Output = SkewPoly;
            fn $m(self, rhs: &SkewPoly) -> SkewPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<SkewPoly> for &SkewPoly {
            type Output = SkewPoly;
            fn $m(self, rhs: SkewPoly) -> SkewPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        -&self
    }
}
