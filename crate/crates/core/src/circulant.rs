//! `(θ,a)`-circulant matrices: construction, recognition, and the identities
//! they satisfy for factorizations `x^n - a = h g`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::matrix::Matrix;
use crate::quotient::{Coset, ModulusSpec};
use crate::report::Report;
use crate::skewpoly::{RingExt, SkewPoly, SkewRing};

/// `M_a(⟦f⟧)` together with the coset it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circulant {
    matrix: Matrix,
    source: Coset,
}

impl Circulant {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source(&self) -> &Coset {
        &self.source
    }

    pub fn modulus(&self) -> &ModulusSpec {
        self.source.modulus()
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }
}

/// Row `i` is `v_a(x^i ⟦f⟧)`.
pub fn circulant_of(c: &Coset) -> Circulant {
    let m = c.modulus();
    let mut rows = Vec::with_capacity(m.n());
    let mut cur = c.clone();
    for _ in 0..m.n() {
        rows.push(cur.va());
        cur = cur.shift();
    }
    let matrix = Matrix::from_rows(m.field(), m.n(), &rows).expect("n x n");
    debug_assert_eq!(matrix, closed_form(c));
    Circulant { matrix, source: c.clone() }
}

/// `M_a(⟦f⟧)` for any `f`, reduced into `S_a` first.
pub fn circulant_matrix(m: &ModulusSpec, f: &SkewPoly) -> Matrix {
    circulant_of(&m.reduce(f)).into_matrix()
}

/// Entrywise formula: `θ^i(f_{j-i})` on and above the diagonal,
/// `θ^j(a) θ^i(f_{n+j-i})` below it.
pub fn closed_form(c: &Coset) -> Matrix {
    entrywise(c.modulus().ring(), c.modulus().n(), c.modulus().a(), c.rep())
}

fn entrywise(ring: &Arc<SkewRing>, n: usize, b: Gf, s: &SkewPoly) -> Matrix {
    let f = ring.field();
    let mut out = Matrix::zero(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i <= j {
                ring.aut(s.coeff(j - i), i as i64)
            } else {
                f.mul(ring.aut(b, j as i64), ring.aut(s.coeff(n + j - i), i as i64))
            };
            out.set(i, j, v);
        }
    }
    out
}

/// A matrix recognized as `M_b(⟦s⟧)`; `base` is `None` when every nonzero
/// `b` fits, which happens exactly when `s` is a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognized {
    pub base: Option<Gf>,
    pub s: SkewPoly,
}

/// Decides whether `a` equals `M_b(⟦s⟧)` over `ring` for some `b ≠ 0`.
pub fn recognize_circulant(a: &Matrix, ring: &Arc<SkewRing>) -> Result<Option<Recognized>> {
    let n = a.rows();
    if a.cols() != n || n == 0 {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    let f = ring.field();
    let s = ring.poly(a.row(0).to_vec());
    let mut base = None;
    'search: for i in 1..n {
        for j in 0..i {
            let sc = s.coeff(n + j - i);
            if !sc.is_zero() {
                let t = f.div(a.get(i, j), ring.aut(sc, i as i64))?;
                base = Some(ring.aut(t, -(j as i64)));
                break 'search;
            }
        }
    }
    let b = base.unwrap_or_else(|| f.one());
    if b.is_zero() || entrywise(ring, n, b, &s) != *a {
        return Ok(None);
    }
    Ok(Some(Recognized { base, s }))
}

fn witness(pairs: &[(&str, &Matrix)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, m)| (k.to_string(), format!("\n{m}"))).collect()
}

/// `M_a(⟦fg⟧) = M_c(⟦f⟧) M_a(⟦g⟧)` with `c = γ(a, g)`.
pub fn prod_formula_check(m: &ModulusSpec, f: &SkewPoly, g: &SkewPoly) -> Report {
    let mut rep = Report::new(format!("product formula f = {f}, g = {g}"));
    let name = "M_a(fg) = M_c(f) M_a(g)";
    if !g.right_divides(&m.poly()) {
        rep.skip(name, "g is not a right divisor of x^n-a");
        return rep;
    }
    let c = m.gamma(g).expect("right divisors have a nonzero constant term");
    let mc = m.with_a(c).expect("c is nonzero");
    let lhs = circulant_matrix(m, &(f * g));
    let rhs = circulant_matrix(&mc, f).mul(&circulant_matrix(m, g)).expect("n x n");
    rep.record(name, lhs == rhs, || witness(&[("lhs", &lhs), ("rhs", &rhs)]));
    rep
}

/// All `(b, s)` with `M_a(⟦xh⟧) = M_b(⟦s⟧) M_a(⟦h⟧)`. When `M_a(⟦h⟧)` is
/// invertible the candidate matrix is unique; otherwise every `b` and every
/// reduced `s` is tried, subject to `budget` candidates.
pub fn single_shift_solutions(m: &ModulusSpec, h: &SkewPoly, budget: u128) -> Result<Vec<(Gf, SkewPoly)>> {
    let ring = m.ring();
    let f = m.field();
    let mh = circulant_matrix(m, h);
    let target = circulant_matrix(m, &(&ring.x() * h));
    let bases = f.nonzero_elements();
    if let Ok(inv) = mh.inverse() {
        let x = target.mul(&inv)?;
        return Ok(match recognize_circulant(&x, ring)? {
            None => Vec::new(),
            Some(Recognized { base: Some(b), s }) => vec![(b, s)],
            Some(Recognized { base: None, s }) => bases.into_iter().map(|b| (b, s.clone())).collect(),
        });
    }
    let q = f.size() as u128;
    let needed = (q - 1).saturating_mul(q.saturating_pow(m.n() as u32));
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    let mut out = Vec::new();
    let elems = f.elements();
    for b in bases {
        let mb = m.with_a(b)?;
        let mut idx = vec![0usize; m.n()];
        loop {
            let s = ring.poly(idx.iter().map(|&i| elems[i]).collect());
            if circulant_matrix(&mb, &s).mul(&mh)? == target {
                out.push((b, s));
            }
            if !odometer(&mut idx, elems.len()) {
                break;
            }
        }
    }
    Ok(out)
}

/// Advances a base-`radix` counter; false once it wraps around.
pub(crate) fn odometer(idx: &mut [usize], radix: usize) -> bool {
    for d in idx.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// The three transpose identities for `x^n - a = h g`, plus
/// `M_b(⟦x^i⟧)^T M_{b^{-1}}(⟦x^i⟧) = I`.
pub fn transpose_theorems(m: &ModulusSpec, h: &SkewPoly, g: &SkewPoly) -> Result<Report> {
    let (hl, gr, _) = m.hats(h, g)?;
    let f = m.field();
    let ring = m.ring();
    let n = m.n() as i64;
    let k = h.degree().expect("nonzero") as i64;
    let a = m.a();
    let c = m.gamma(g)?;
    let cinv = f.inv(c)?;
    let ainv = f.inv(a)?;
    let mut rep = Report::new(format!("transpose h = {h}, g = {g}"));

    let mg = circulant_matrix(m, g);
    let g0 = g.constant_term();
    let gsharp = &(&gr.scale_left(a) * &ring.x_pow(k as usize))
        - &ring.x_n_minus(m.n(), cinv).scale_left(f.mul(c, g0));
    let m_cinv = m.with_a(cinv)?;
    let lhs = mg.transpose();
    let rhs = circulant_matrix(&m_cinv, &gsharp);
    rep.record("M_a(g)^T = M_{c^-1}(g#)", lhs == rhs, || witness(&[("lhs", &lhs), ("rhs", &rhs)]));

    let m_c = m.with_a(c)?;
    let lhs = circulant_matrix(&m_c, &ring.x_pow(k as usize)).mul(&mg)?;
    let rhs = circulant_matrix(&m.with_a(m.aut(cinv, k))?, &gr.scale_left(a)).transpose();
    rep.record("M_c(x^k) M_a(g) = M_{theta^k(c^-1)}(a gr)^T", lhs == rhs, || {
        witness(&[("lhs", &lhs), ("rhs", &rhs)])
    });

    let m_u = m.with_a(m.aut(cinv, k - n))?;
    let m_ainv = m.with_a(ainv)?;
    let lhs = circulant_matrix(&m_u, &ring.x_pow((n - k) as usize)).mul(&circulant_matrix(&m_ainv, &hl))?;
    let rhs = circulant_matrix(&m_c, &h.scale_left(ainv)).transpose();
    rep.record("M_{theta^(k-n)(c^-1)}(x^(n-k)) M_{a^-1}(hl) = M_c(a^-1 h)^T", lhs == rhs, || {
        witness(&[("lhs", &lhs), ("rhs", &rhs)])
    });

    let bases = if f.size() - 1 <= 64 { f.nonzero_elements() } else { vec![a, c, ainv] };
    let id = Matrix::identity(f, m.n());
    let mut bad = Vec::new();
    for &b in &bases {
        let mb = m.with_a(b)?;
        let mbinv = m.with_a(f.inv(b)?)?;
        for i in 0..m.n() {
            let xi = ring.x_pow(i);
            let prod = circulant_matrix(&mb, &xi).transpose().mul(&circulant_matrix(&mbinv, &xi))?;
            if prod != id {
                bad.push(format!("b = {}, i = {i}", f.show(b)));
            }
        }
    }
    rep.record("M_b(x^i)^T M_{b^-1}(x^i) = I", bad.is_empty(), || vec![("cases".into(), bad.join("; "))]);
    Ok(rep)
}

/// `M_a(⟦g⟧) M_c(⟦a^{-1}h⟧) = M_a(⟦g⟧) M_{a^{-1}}(⟦ĥ^l⟧)^T = 0`, and in the
/// central case also `M(⟦g⟧)M(⟦h⟧) = M(⟦h⟧)M(⟦g⟧) = 0`.
pub fn annihilation_check(m: &ModulusSpec, h: &SkewPoly, g: &SkewPoly) -> Result<Report> {
    let (hl, _, _) = m.hats(h, g)?;
    let f = m.field();
    let ainv = f.inv(m.a())?;
    let c = m.gamma(g)?;
    let mut rep = Report::new(format!("annihilation h = {h}, g = {g}"));
    let mg = circulant_matrix(m, g);
    let p1 = mg.mul(&circulant_matrix(&m.with_a(c)?, &h.scale_left(ainv)))?;
    rep.record("M_a(g) M_c(a^-1 h) = 0", p1.is_zero(), || witness(&[("product", &p1)]));
    let p2 = mg.mul(&circulant_matrix(&m.with_a(ainv)?, &hl).transpose())?;
    rep.record("M_a(g) M_{a^-1}(hl)^T = 0", p2.is_zero(), || witness(&[("product", &p2)]));
    if m.is_central() {
        let mh = circulant_matrix(m, h);
        let gh = mg.mul(&mh)?;
        let hg = mh.mul(&mg)?;
        rep.record("central: M(g) M(h) = 0", gh.is_zero(), || witness(&[("product", &gh)]));
        rep.record("central: M(h) M(g) = 0", hg.is_zero(), || witness(&[("product", &hg)]));
    }
    Ok(rep)
}
