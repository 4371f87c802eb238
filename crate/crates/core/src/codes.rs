//! Skew-constacyclic codes: generator data, duals, syndromes, scaling and
//! weight enumeration.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circulant::circulant_matrix;
use crate::divisors::enumerate_right_divisors;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf};
use crate::matrix::Matrix;
use crate::quotient::{Coset, ModulusSpec};
use crate::report::Report;
use crate::skewpoly::{RingExt, SkewPoly};

/// Default cap on the number of codewords enumerated for distances.
pub const DEFAULT_DISTANCE_BUDGET: u128 = 1 << 24;

/// Cap on `q^n` below which module identities are checked exhaustively.
pub const EXHAUSTIVE_COSETS: u128 = 1 << 20;

/// The code `im M_a(⟦g⟧)` for a monic right divisor `g` of `x^n - a`.
#[derive(Clone, Debug)]
pub struct CodeHandle {
    modulus: ModulusSpec,
    g: SkewPoly,
    h: SkewPoly,
    k: usize,
    generator: Matrix,
    basis: Matrix,
}

impl PartialEq for CodeHandle {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.g == other.g
    }
}

impl Eq for CodeHandle {}

impl CodeHandle {
    /// Validates `g` and builds the `k x n` generator matrix with rows
    /// `v_a(⟦x^i g⟧)`.
    pub fn from_generator(m: &ModulusSpec, g: &SkewPoly) -> Result<CodeHandle> {
        if !g.is_monic() {
            return Err(Error::NotMonic(g.to_string()));
        }
        let (h, r) = m.poly().right_divmod(g)?;
        if !r.is_zero() {
            return Err(Error::NotRightDivisor {
                divisor: g.to_string(),
                dividend: m.poly().to_string(),
                remainder: r.to_string(),
            });
        }
        let k = m.n() - g.degree().expect("monic");
        let full = circulant_matrix(m, g);
        let rows: Vec<Vec<Gf>> = (0..k).map(|i| full.row(i).to_vec()).collect();
        let generator = Matrix::from_rows(m.field(), m.n(), &rows)?;
        let basis = generator.row_basis();
        debug_assert_eq!(basis.rows(), k);
        Ok(CodeHandle { modulus: m.clone(), g: g.clone(), h, k, generator, basis })
    }

    pub fn modulus(&self) -> &ModulusSpec {
        &self.modulus
    }

    pub fn field(&self) -> &std::sync::Arc<FieldCtx> {
        self.modulus.field()
    }

    pub fn g(&self) -> &SkewPoly {
        &self.g
    }

    /// The monic cofactor with `x^n - a = h g`.
    pub fn h(&self) -> &SkewPoly {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.modulus.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator_matrix(&self) -> &Matrix {
        &self.generator
    }

    /// Row-reduced basis of the code.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, word: &[Gf]) -> Result<bool> {
        let w = Matrix::from_rows(self.field(), self.n(), &[word.to_vec()])?;
        self.basis.row_space_contains(&w)
    }

    /// `γ(a, g)`.
    pub fn gamma(&self) -> Gf {
        self.modulus.gamma(&self.g).expect("divisors have nonzero constant term")
    }

    /// The check polynomial `θ^{-n}(h)`.
    pub fn check_poly(&self) -> SkewPoly {
        self.h.theta(-(self.n() as i64))
    }

    /// The modulus `x^n - θ^{-n}(c)` in which syndromes live.
    pub fn check_modulus(&self) -> ModulusSpec {
        let c = self.modulus.aut(self.gamma(), -(self.n() as i64));
        self.modulus.with_a(c).expect("c is nonzero")
    }

    /// `⟦p_a(w) θ^{-n}(h)⟧`, zero exactly for codewords.
    pub fn syndrome(&self, word: &[Gf]) -> Result<Coset> {
        let f = self.modulus.pa(word)?;
        Ok(self.check_modulus().reduce(&(f.rep() * &self.check_poly())))
    }

    /// `δ_a(g) = θ^{-deg g}(-a^{-1} g_0) ĥ^l`, a monic right divisor of
    /// `x^n - a^{-1}`.
    pub fn dual_generator(&self) -> SkewPoly {
        dual_generator(&self.modulus, &self.g).expect("valid code")
    }

    /// The dual code, which is `(θ, a^{-1})`-constacyclic.
    pub fn dual(&self) -> Result<CodeHandle> {
        let m = self.modulus.with_a(self.field().inv(self.modulus.a())?)?;
        CodeHandle::from_generator(&m, &self.dual_generator())
    }

    /// Exhaustive weight distribution over all `q^k` codewords.
    pub fn weight_enumerator(&self, budget: u128) -> Result<WeightEnumerator> {
        weight_enumerator(&self.generator, budget)
    }

    /// The code over `x^n - â`, `â = a b θ^n(b^{-1})`, generated by `g b`.
    pub fn scale_equivalent(&self, b: Gf) -> Result<CodeHandle> {
        let f = self.field();
        if b.is_zero() {
            return Err(Error::InvalidArgument("scaling factor must be nonzero".into()));
        }
        let n = self.n() as i64;
        let ahat = f.mul(f.mul(self.modulus.a(), b), self.modulus.aut(f.inv(b)?, n));
        let m = self.modulus.with_a(ahat)?;
        CodeHandle::from_generator(&m, &self.g.scale_right(b).monic()?)
    }

    /// Checks `M_â(⟦gb⟧) = M_a(⟦g⟧) M_â(⟦b⟧)` and, within `budget`, that the
    /// weight enumerators agree.
    pub fn scale_equivalence_check(&self, b: Gf, budget: u128) -> Result<Report> {
        let other = self.scale_equivalent(b)?;
        let mut rep = Report::new(format!("scaling by {}", self.field().show(b)));
        let gb = self.g.scale_right(b);
        let mhat = other.modulus();
        let lhs = circulant_matrix(mhat, &gb);
        let rhs = circulant_matrix(&self.modulus, &self.g).mul(&circulant_matrix(mhat, &mhat.ring().constant(b)))?;
        rep.record("M_ahat(gb) = M_a(g) M_ahat(b)", lhs == rhs, || {
            vec![("lhs".into(), format!("\n{lhs}")), ("rhs".into(), format!("\n{rhs}"))]
        });
        match (self.weight_enumerator(budget), other.weight_enumerator(budget)) {
            (Ok(w1), Ok(w2)) => {
                rep.record("equal weight enumerators", w1 == w2, || {
                    vec![("original".into(), format!("{:?}", w1.counts)), ("scaled".into(), format!("{:?}", w2.counts))]
                });
            }
            _ => rep.skip("equal weight enumerators", "over the enumeration budget"),
        }
        Ok(rep)
    }

    /// Whether the code equals its dual as a subspace.
    pub fn is_self_dual(&self) -> bool {
        2 * self.k == self.n()
            && self.generator.mul(&self.generator.transpose()).expect("k x n").is_zero()
    }

    /// JSON-ready summary; distance data is computed within `budget`.
    pub fn report(&self, budget: u128) -> Result<CodeReport> {
        let f = self.field();
        let we = self.weight_enumerator(budget)?;
        let d = we.min_distance();
        let dual = self.dual()?;
        let check = self.check_modulus();
        Ok(CodeReport {
            field: f.describe(),
            theta: self.modulus.theta().exponent(),
            n: self.n(),
            a: f.show(self.modulus.a()),
            g: self.g.clone(),
            h: self.h.clone(),
            k: self.k,
            d,
            defect: d.map(|d| (self.n() + 1 - self.k) as i64 - d as i64),
            weight_enumerator: we.counts,
            dual_g: dual.g.clone(),
            dual_a: f.show(dual.modulus.a()),
            generator_matrix: self.generator.to_strings(Default::default()),
            check_poly: self.check_poly(),
            check_modulus: check.poly(),
        })
    }
}

/// Serializable code summary.
#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub field: String,
    pub theta: u32,
    pub n: usize,
    pub a: String,
    pub g: SkewPoly,
    pub h: SkewPoly,
    pub k: usize,
    pub d: Option<usize>,
    pub defect: Option<i64>,
    pub weight_enumerator: Vec<u64>,
    pub dual_g: SkewPoly,
    pub dual_a: String,
    pub generator_matrix: Vec<Vec<String>>,
    pub check_poly: SkewPoly,
    pub check_modulus: SkewPoly,
}

/// `δ_a(g)` for a monic right divisor `g` of `x^n - a`.
pub fn dual_generator(m: &ModulusSpec, g: &SkewPoly) -> Result<SkewPoly> {
    let (h, r) = m.poly().right_divmod(g)?;
    if !r.is_zero() {
        return Err(Error::NotRightDivisor {
            divisor: g.to_string(),
            dividend: m.poly().to_string(),
            remainder: r.to_string(),
        });
    }
    let f = m.field();
    let n = m.n() as i64;
    let hl = h.theta(-n).rho_l();
    let unit = f.neg(f.div(g.constant_term(), m.a())?);
    let unit = m.aut(unit, -(g.degree().expect("nonzero") as i64));
    let delta = hl.scale_left(unit);
    debug_assert!(!g.is_monic() || delta.is_monic());
    Ok(delta)
}

/// `(aθ(w_{n-1}), θ(w_0), ..., θ(w_{n-2}))`.
pub fn skew_shift(m: &ModulusSpec, w: &[Gf]) -> Result<Vec<Gf>> {
    Ok(m.pa(w)?.shift().va())
}

/// If the span of `basis` is `(θ,a)`-constacyclic, its code with the
/// canonical (minimal-degree monic) generator.
pub fn is_skew_constacyclic(m: &ModulusSpec, basis: &[Vec<Gf>]) -> Result<Option<CodeHandle>> {
    let n = m.n();
    let span = Matrix::from_rows(m.field(), n, basis)?.row_basis();
    if span.rows() == 0 {
        return CodeHandle::from_generator(m, &m.poly()).map(Some);
    }
    let shifted: Vec<Vec<Gf>> =
        (0..span.rows()).map(|i| skew_shift(m, span.row(i))).collect::<Result<_>>()?;
    if !span.row_space_contains(&Matrix::from_rows(m.field(), n, &shifted)?)? {
        return Ok(None);
    }
    let reversed: Vec<Vec<Gf>> = span.row_vecs().into_iter().map(|r| r.into_iter().rev().collect()).collect();
    let rr = Matrix::from_rows(m.field(), n, &reversed)?.row_basis();
    let last: Vec<Gf> = rr.row(rr.rows() - 1).iter().rev().copied().collect();
    let g = m.ring().poly(last);
    let code = CodeHandle::from_generator(m, &g)?;
    debug_assert!(code.basis == span);
    Ok(Some(code))
}

/// Counts `A_0..A_n` of codewords by Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEnumerator {
    pub counts: Vec<u64>,
}

impl WeightEnumerator {
    /// Smallest nonzero weight, `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Enumerates all `u G`, `u ∈ F^k`, splitting on the first coordinate.
pub fn weight_enumerator(gen: &Matrix, budget: u128) -> Result<WeightEnumerator> {
    let f = gen.field();
    let (k, n) = (gen.rows(), gen.cols());
    let q = f.size() as u128;
    let needed = q.checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    if k == 0 {
        let mut counts = vec![0; n + 1];
        counts[0] = 1;
        return Ok(WeightEnumerator { counts });
    }
    let elems = f.elements();
    let scaled: Vec<Vec<Vec<Gf>>> = (0..k)
        .map(|i| elems.iter().map(|&e| gen.row(i).iter().map(|&x| f.mul(e, x)).collect()).collect())
        .collect();
    let counts = (0..elems.len())
        .into_par_iter()
        .map(|first| {
            let mut counts = vec![0u64; n + 1];
            let mut stack = vec![vec![f.zero(); n]; k];
            stack[0].clone_from(&scaled[0][first]);
            descend(f, &scaled, 1, &mut stack, &mut counts);
            counts
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(WeightEnumerator { counts })
}

fn descend(f: &FieldCtx, scaled: &[Vec<Vec<Gf>>], level: usize, stack: &mut [Vec<Gf>], counts: &mut [u64]) {
    if level == scaled.len() {
        counts[stack[level - 1].iter().filter(|c| !c.is_zero()).count()] += 1;
        return;
    }
    for row in &scaled[level] {
        let (done, rest) = stack.split_at_mut(level);
        let prev = &done[level - 1];
        for ((dst, &x), &y) in rest[0].iter_mut().zip(prev).zip(row) {
            *dst = f.add(x, y);
        }
        descend(f, scaled, level + 1, stack, counts);
    }
}

/// A self-dual code found by [`self_dual_scan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualHit {
    pub a: Gf,
    pub g: SkewPoly,
}

/// All self-dual `(θ,a)`-constacyclic codes of length `n`, over every `a ≠ 0`.
pub fn self_dual_scan(ring: &std::sync::Arc<crate::skewpoly::SkewRing>, n: usize, budget: u128) -> Result<Vec<SelfDualHit>> {
    let mut hits = Vec::new();
    for a in ring.field().nonzero_elements() {
        let m = ModulusSpec::new(ring.clone(), n, a)?;
        for fac in enumerate_right_divisors(&m, budget)? {
            if 2 * fac.g.degree().unwrap_or(0) != n {
                continue;
            }
            if CodeHandle::from_generator(&m, &fac.g)?.is_self_dual() {
                hits.push(SelfDualHit { a, g: fac.g });
            }
        }
    }
    Ok(hits)
}

/// In the central case, the kernels of `f ↦ fh`, `f ↦ fg`, `f ↦ hf`,
/// `f ↦ gf` against the corresponding one-sided ideals and annihilators.
/// All cosets are visited when `q^n ≤ 2^20`; otherwise `samples` random
/// cosets and `samples` random ideal elements are used.
pub fn right_module_maps_check<R: Rng>(c: &CodeHandle, samples: usize, rng: &mut R) -> Report {
    let m = c.modulus();
    let mut rep = Report::new(format!("module maps g = {}, h = {}", c.g(), c.h()));
    let names = [
        "ker(f -> fh) = Rg = ann_l(hS)",
        "ker(f -> fg) = Rh = ann_l(gS)",
        "ker(f -> hf) = gR = ann_r(Sh)",
        "ker(f -> gf) = hR = ann_r(Sg)",
    ];
    if !m.is_central() {
        for name in names {
            rep.skip(name, "not central");
        }
        return rep;
    }
    let ring = m.ring();
    let f = m.field();
    let (g, h) = (c.g().clone(), c.h().clone());
    debug_assert_eq!(&g * &h, m.poly());
    let spanning: Vec<SkewPoly> = (0..f.degree() as i64)
        .flat_map(|i| (0..m.n()).map(move |j| (i, j)))
        .map(|(i, j)| ring.monomial(f.gen_pow(i), j))
        .collect();
    let q = f.size() as u128;
    let exhaustive = q.checked_pow(m.n() as u32).is_some_and(|t| t <= EXHAUSTIVE_COSETS);
    let elems = f.elements();
    let mut cosets: Vec<SkewPoly> = Vec::new();
    if exhaustive {
        let mut idx = vec![0usize; m.n()];
        loop {
            cosets.push(ring.poly(idx.iter().map(|&i| elems[i]).collect()));
            if !crate::circulant::odometer(&mut idx, elems.len()) {
                break;
            }
        }
    } else {
        let random = |rng: &mut R| ring.poly((0..m.n()).map(|_| elems[rng.gen_range(0..elems.len())]).collect());
        for _ in 0..samples {
            cosets.push(random(rng));
            let s = random(rng);
            for p in [&s * &g, &s * &h, &g * &s, &h * &s] {
                cosets.push(m.reduce(&p).rep().clone());
            }
        }
    }
    let zero = |p: &SkewPoly| m.reduce(p).is_zero();
    type Cond<'a> = Box<dyn Fn(&SkewPoly) -> [bool; 3] + 'a>;
    let conds: [Cond; 4] = [
        Box::new(|p| [zero(&(p * &h)), g.right_divides(p), spanning.iter().all(|t| zero(&(&(p * &h) * t)))]),
        Box::new(|p| [zero(&(p * &g)), h.right_divides(p), spanning.iter().all(|t| zero(&(&(p * &g) * t)))]),
        Box::new(|p| [zero(&(&h * p)), g.left_divides(p), spanning.iter().all(|t| zero(&(&(t * &h) * p)))]),
        Box::new(|p| [zero(&(&g * p)), h.left_divides(p), spanning.iter().all(|t| zero(&(&(t * &g) * p)))]),
    ];
    for (name, cond) in names.iter().zip(conds.iter()) {
        let bad = cosets.iter().find(|p| {
            let r = cond(p);
            r[0] != r[1] || r[1] != r[2]
        });
        rep.record(*name, bad.is_none(), || {
            let p = bad.unwrap();
            let r = cond(p);
            vec![("f".into(), p.to_string()), ("kernel, ideal, annihilator".into(), format!("{r:?}"))]
        });
    }
    rep
}

/// Some `b` with `a b θ^n(b^{-1}) = target`, if one exists.
pub fn scaling_to(m: &ModulusSpec, target: Gf) -> Option<Gf> {
    let f = m.field();
    let n = m.n() as i64;
    f.nonzero_elements().into_iter().find(|&b| {
        let ahat = f.mul(f.mul(m.a(), b), m.aut(f.inv(b).expect("nonzero"), n));
        ahat == target
    })
}
