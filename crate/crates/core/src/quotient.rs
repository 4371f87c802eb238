//! The left module `S_a = R/⟨x^n - a⟩`, coordinates, and the identities
//! attached to a factorization `x^n - a = h g`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Automorphism, FieldCtx, Gf};
use crate::report::Report;
use crate::skewpoly::{RingExt, SkewPoly, SkewRing};

/// The modulus `x^n - a` over a fixed skew ring.
#[derive(Clone, Debug)]
pub struct ModulusSpec {
    ring: Arc<SkewRing>,
    n: usize,
    a: Gf,
}

impl PartialEq for ModulusSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.a == other.a && *self.ring == *other.ring
    }
}

impl Eq for ModulusSpec {}

impl ModulusSpec {
    pub fn new(ring: Arc<SkewRing>, n: usize, a: Gf) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("length n must be at least 1".into()));
        }
        if a.field_id() != ring.field().id() {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() {
            return Err(Error::InvalidArgument("a must be nonzero".into()));
        }
        Ok(ModulusSpec { ring, n, a })
    }

    pub fn ring(&self) -> &Arc<SkewRing> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.ring.field()
    }

    pub fn theta(&self) -> Automorphism {
        self.ring.theta()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> Gf {
        self.a
    }

    /// Same ring and length, different constant.
    pub fn with_a(&self, a: Gf) -> Result<Self> {
        ModulusSpec::new(self.ring.clone(), self.n, a)
    }

    /// `x^n - a`.
    pub fn poly(&self) -> SkewPoly {
        self.ring.x_n_minus(self.n, self.a)
    }

    /// `θ^power(c)`.
    pub fn aut(&self, c: Gf, power: i64) -> Gf {
        self.ring.aut(c, power)
    }

    /// Whether `x^n - a` is central: `θ^n = id` and `θ(a) = a`.
    pub fn is_central(&self) -> bool {
        self.theta().frobenius_exponent(self.n as i64) == 0 && self.aut(self.a, 1) == self.a
    }

    pub fn reduce(&self, f: &SkewPoly) -> Coset {
        let rep = f.right_rem(&self.poly()).expect("x^n - a is nonzero");
        Coset { rep, modulus: self.clone() }
    }

    /// `⟦c x^e⟧` from the closed form `⟦x^{tn+j}⟧ = (Π_{l<t} θ^{ln+j}(a)) ⟦x^j⟧`.
    pub fn reduce_monomial(&self, c: Gf, e: usize) -> Coset {
        let f = self.field();
        let (t, j) = (e / self.n, e % self.n);
        let coeff = (0..t).fold(c, |acc, l| f.mul(acc, self.aut(self.a, (l * self.n + j) as i64)));
        Coset { rep: self.ring.monomial(coeff, j), modulus: self.clone() }
    }

    /// `p_a`: the coset `⟦Σ w_i x^i⟧`.
    pub fn pa(&self, word: &[Gf]) -> Result<Coset> {
        if word.len() != self.n {
            return Err(Error::WrongLength { expected: self.n, got: word.len() });
        }
        Ok(Coset { rep: self.ring.poly(word.to_vec()), modulus: self.clone() })
    }

    pub fn zero(&self) -> Coset {
        Coset { rep: self.ring.zero(), modulus: self.clone() }
    }

    /// `γ(a, g) = a g_0^{-1} θ^n(g_0)`.
    pub fn gamma(&self, g: &SkewPoly) -> Result<Gf> {
        let g0 = g.constant_term();
        if g0.is_zero() {
            return Err(Error::ZeroConstantTerm(g.to_string()));
        }
        let f = self.field();
        Ok(f.mul(f.div(self.a, g0)?, self.aut(g0, self.n as i64)))
    }

    /// Errors unless `h g = x^n - a`.
    pub fn check_factorization(&self, h: &SkewPoly, g: &SkewPoly) -> Result<()> {
        let product = h.try_mul(g)?;
        if product == self.poly() {
            Ok(())
        } else {
            Err(Error::NotFactorization { product: product.to_string(), expected: self.poly().to_string() })
        }
    }

    /// The unique monic right divisor of `x^n - a` generating `R⟦f⟧`;
    /// the zero module is generated by `x^n - a` itself.
    pub fn canonical_generator(&self, f: &SkewPoly) -> Result<SkewPoly> {
        let rep = self.reduce(f).rep;
        if rep.is_zero() {
            return Ok(self.poly());
        }
        Ok(rep.gcrd(&self.poly())?.d)
    }

    /// Checks the equivalent forms of `x^n - a = h g` and the identities that
    /// follow from it.
    pub fn factor_equiv_suite(&self, h: &SkewPoly, g: &SkewPoly) -> Report {
        let mut rep = Report::new(format!("factorization h = {h}, g = {g}"));
        let f = self.field();
        let n = self.n as i64;
        let holds1 = h * g == self.poly();
        rep.record("x^n-a = hg", holds1, || {
            vec![("hg".into(), (h * g).to_string()), ("x^n-a".into(), self.poly().to_string())]
        });
        let c = match self.gamma(g) {
            Ok(c) => c,
            Err(_) => {
                rep.skip("remaining identities", "g has zero constant term");
                return rep;
            }
        };
        let ring = &self.ring;
        let lhs2 = &g.theta(n) * h;
        let lhs3 = g * &h.theta(-n);
        let holds2 = lhs2 == ring.x_n_minus(self.n, c);
        let holds3 = lhs3 == ring.x_n_minus(self.n, self.aut(c, -n));
        rep.record("x^n-a = hg iff x^n-c = theta^n(g)h", holds1 == holds2, || {
            vec![("theta^n(g)h".into(), lhs2.to_string()), ("c".into(), f.show(c))]
        });
        rep.record("x^n-a = hg iff x^n-theta^-n(c) = g theta^-n(h)", holds1 == holds3, || {
            vec![("g theta^-n(h)".into(), lhs3.to_string()), ("c".into(), f.show(c))]
        });
        if !holds1 {
            rep.skip("conditional identities", "not a factorization");
            return rep;
        }
        let l = g.theta(n).scale_right(self.a);
        let r = g.scale_left(c);
        rep.record("theta^n(g) a = c g", l == r, || {
            vec![("lhs".into(), l.to_string()), ("rhs".into(), r.to_string())]
        });
        let l = h.theta(-n).scale_left(self.a);
        let r = h.scale_right(self.aut(c, -n));
        rep.record("a theta^-n(h) = h theta^-n(c)", l == r, || {
            vec![("lhs".into(), l.to_string()), ("rhs".into(), r.to_string())]
        });
        let bad_g: Vec<usize> = (0..g.coeffs().len())
            .filter(|&t| {
                let gt = g.coeff(t);
                f.mul(c, gt) != f.mul(self.aut(self.a, t as i64), self.aut(gt, n))
            })
            .collect();
        rep.record("c g_t = theta^t(a) theta^n(g_t) for all t", bad_g.is_empty(), || {
            vec![("t".into(), format!("{bad_g:?}"))]
        });
        let bad_h: Vec<usize> = (0..h.coeffs().len())
            .filter(|&t| {
                let ht = h.coeff(t);
                f.mul(self.a, self.aut(ht, -n)) != f.mul(ht, self.aut(c, t as i64 - n))
            })
            .collect();
        rep.record("a theta^-n(h_t) = h_t theta^(t-n)(c) for all t", bad_h.is_empty(), || {
            vec![("t".into(), format!("{bad_h:?}"))]
        });
        rep
    }

    /// `(ĥ^l, ĝ^r) = (ρ_l(θ^{-n}(h)), ρ_r(θ^n(g)))` with the report of the
    /// three identities relating them to `x^n - c`, `x^n - θ^k(c^{-1})` and
    /// `x^n - a^{-1}`.
    pub fn hats(&self, h: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly, Report)> {
        self.check_factorization(h, g)?;
        let f = self.field();
        let ring = &self.ring;
        let n = self.n as i64;
        let k = h.degree().expect("nonzero factor") as i64;
        let c = self.gamma(g)?;
        let cinv = f.inv(c)?;
        let ainv = f.inv(self.a)?;
        let hl = h.theta(-n).rho_l();
        let gr = g.theta(n).rho_r();
        let mut rep = Report::new(format!("hats h = {h}, g = {g}"));

        let l = &g.scale_right(ainv) * h;
        let r = ring.x_n_minus(self.n, c).scale_left(cinv);
        rep.record("g a^-1 h = c^-1 (x^n-c)", l == r, || {
            vec![("lhs".into(), l.to_string()), ("rhs".into(), r.to_string())]
        });

        let tk = self.aut(cinv, k);
        let u = f.neg(f.mul(self.aut(cinv, k - n), tk));
        let l = &hl.scale_left(u) * &gr.scale_left(self.a);
        let r = ring.x_n_minus(self.n, tk);
        rep.record("-theta^(k-n)(c^-1) theta^k(c^-1) hl a gr = x^n - theta^k(c^-1)", l == r, || {
            vec![("lhs".into(), l.to_string()), ("rhs".into(), r.to_string())]
        });

        let l = &gr.scale_right(f.neg(self.aut(cinv, k - n))) * &hl;
        let r = ring.x_n_minus(self.n, ainv);
        rep.record("-gr theta^(k-n)(c^-1) hl = x^n - a^-1", l == r, || {
            vec![("lhs".into(), l.to_string()), ("rhs".into(), r.to_string())]
        });

        if g.is_monic() && h.is_monic() {
            let expected = self.aut(ainv, n);
            rep.record("monic factors: theta^k(c^-1) = theta^n(a^-1)", tk == expected, || {
                vec![("theta^k(c^-1)".into(), f.show(tk)), ("theta^n(a^-1)".into(), f.show(expected))]
            });
        }
        Ok((hl, gr, rep))
    }
}

impl fmt::Display for ModulusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly())
    }
}

/// An element of `S_a`, stored as its representative of degree `< n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    rep: SkewPoly,
    modulus: ModulusSpec,
}

impl Coset {
    pub fn rep(&self) -> &SkewPoly {
        &self.rep
    }

    pub fn modulus(&self) -> &ModulusSpec {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// `v_a`: the length-`n` coordinate vector.
    pub fn va(&self) -> Vec<Gf> {
        (0..self.modulus.n).map(|i| self.rep.coeff(i)).collect()
    }

    /// `t ⟦f⟧ = ⟦t f⟧`.
    pub fn mul_left(&self, t: &SkewPoly) -> Coset {
        self.modulus.reduce(&(t * &self.rep))
    }

    /// `x ⟦f⟧`, the skew shift of the coordinates.
    pub fn shift(&self) -> Coset {
        let m = &self.modulus;
        let w = self.va();
        let f = m.field();
        let mut out = Vec::with_capacity(m.n);
        out.push(f.mul(m.a, m.aut(w[m.n - 1], 1)));
        out.extend(w[..m.n - 1].iter().map(|&c| m.aut(c, 1)));
        Coset { rep: m.ring.poly(out), modulus: m.clone() }
    }

    pub fn add(&self, other: &Coset) -> Coset {
        assert_eq!(self.modulus, other.modulus, "cosets of different modules");
        Coset { rep: &self.rep + &other.rep, modulus: self.modulus.clone() }
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_field, parse_poly};

    fn f8_mod(n: usize, k: i64) -> ModulusSpec {
        let ring = SkewRing::new(parse_field("gf(8)").unwrap(), 1);
        let a = ring.field().gen_pow(k);
        ModulusSpec::new(ring, n, a).unwrap()
    }

    fn p(m: &ModulusSpec, s: &str) -> SkewPoly {
        parse_poly(m.ring(), s).unwrap()
    }

    #[test]
    fn reduction() {
        let m = f8_mod(7, 1);
        assert_eq!(m.reduce(&p(&m, "x^7")).rep(), &p(&m, "a"));
        assert_eq!(m.reduce(&p(&m, "x^9")).rep(), &p(&m, "a^4*x^2"));
        assert_eq!(m.reduce_monomial(m.field().one(), 9).rep(), &p(&m, "a^4*x^2"));
        let f = p(&m, "x^5+a*x+1");
        assert_eq!(m.reduce(&f).rep(), &f);
        for e in 0..28 {
            let c = m.field().gen_pow(e as i64 % 5);
            assert_eq!(m.reduce_monomial(c, e), m.reduce(&m.ring().monomial(c, e)), "e = {e}");
        }
    }

    #[test]
    fn coordinates() {
        let m = f8_mod(7, 1);
        let f = m.field().clone();
        let mut w = vec![f.zero(); 7];
        w[0] = f.one();
        assert_eq!(m.pa(&w).unwrap().rep(), &m.ring().one());
        w[0] = f.generator();
        w[1] = f.one();
        assert_eq!(m.pa(&w).unwrap().rep(), &p(&m, "x+a"));
        assert_eq!(m.pa(&w).unwrap().va(), w);
        assert_eq!(m.pa(&w[..3]).unwrap_err(), Error::WrongLength { expected: 7, got: 3 });
        let c = m.pa(&w).unwrap();
        assert_eq!(c.shift(), c.mul_left(&m.ring().x()));
    }

    #[test]
    fn gamma_values() {
        let m = f8_mod(7, 1);
        assert_eq!(m.gamma(&p(&m, "x+a")).unwrap(), m.field().gen_pow(2));
        assert!(m.gamma(&p(&m, "x")).is_err());
        let central = f8_mod(6, 1);
        assert_eq!(central.gamma(&p(&central, "x+a^3")).unwrap(), central.a());
    }

    #[test]
    fn factorization_identities() {
        let m = f8_mod(7, 1);
        let g = p(&m, "x+a");
        let h = m.poly().right_divmod(&g).unwrap().0;
        let rep = m.factor_equiv_suite(&h, &g);
        assert!(rep.all_passed(), "{rep}");
        assert_eq!(rep.skipped(), 0);
        let (_, _, rep) = m.hats(&h, &g).unwrap();
        assert!(rep.all_passed(), "{rep}");
        assert_eq!(rep.checks.len(), 4);

        let rep = m.factor_equiv_suite(&m.poly(), &m.ring().one());
        assert!(rep.all_passed(), "{rep}");

        let bad = &h + &m.ring().one();
        let rep = m.factor_equiv_suite(&bad, &g);
        assert_eq!(rep.failed(), 1);
        assert_eq!(rep.skipped(), 1);
        assert!(matches!(m.hats(&bad, &g), Err(Error::NotFactorization { .. })));
    }

    #[test]
    fn canonical_generators() {
        let m = f8_mod(7, 1);
        let g = p(&m, "x+a");
        assert_eq!(m.canonical_generator(&g).unwrap(), g);
        assert_eq!(m.canonical_generator(&p(&m, "a^5")).unwrap(), m.ring().one());
        let f = &p(&m, "x+a^3") * &g;
        assert_eq!(m.canonical_generator(&f).unwrap(), g);
        assert_eq!(m.canonical_generator(&m.ring().zero()).unwrap(), m.poly());
    }

    #[test]
    fn centrality() {
        assert!(!f8_mod(7, 1).is_central());
        assert!(!f8_mod(6, 1).is_central());
        assert!(f8_mod(6, 0).is_central());
    }
}
