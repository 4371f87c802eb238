//! Helpers shared by the integration tests, including naive reference
//! implementations that work on raw coefficient vectors and use only the
//! field operations `+`, `*`, `pow` and `inv`.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use skewcirc::divisors::enumerate_right_divisors;
use skewcirc::parse::{parse_field, parse_poly};
use skewcirc::quotient::ModulusSpec;
use skewcirc::{FieldCtx, Gf, RingExt, SkewPoly, SkewRing};

pub fn ring(q: u32, s: i64) -> Arc<SkewRing> {
    SkewRing::new(parse_field(&format!("gf({q})")).unwrap(), s)
}

pub fn modulus(q: u32, n: usize, a: &str) -> ModulusSpec {
    let r = ring(q, 1);
    let a = skewcirc::parse::parse_element(r.field(), a).unwrap();
    ModulusSpec::new(r, n, a).unwrap()
}

pub fn poly(m: &ModulusSpec, s: &str) -> SkewPoly {
    parse_poly(m.ring(), s).unwrap()
}

pub fn polys(m: &ModulusSpec, list: &[&str]) -> Vec<SkewPoly> {
    list.iter().map(|s| poly(m, s)).collect()
}

/// Reference arithmetic in `F[x;θ]` with `θ(c) = c^(p^s)`.
pub struct Naive {
    pub field: Arc<FieldCtx>,
    s: u32,
    /// `powers[e][v]` is `c^(p^e)` for the element `c` with value `v`.
    powers: Vec<Vec<Gf>>,
}

impl Naive {
    pub fn new(ring: &Arc<SkewRing>) -> Naive {
        let f = ring.field().clone();
        let p = f.characteristic() as i64;
        let powers = (0..f.degree())
            .map(|e| {
                (0..f.size())
                    .map(|v| f.pow(f.element(v).unwrap(), p.pow(e)).unwrap())
                    .collect()
            })
            .collect();
        Naive { field: f, s: ring.theta().exponent(), powers }
    }

    /// `θ^k(c) = c^(p^(s k mod m))`.
    pub fn theta(&self, c: Gf, k: i64) -> Gf {
        let m = self.field.degree() as i64;
        let e = (self.s as i64 * k).rem_euclid(m) as usize;
        self.powers[e][c.value() as usize]
    }

    fn trim(&self, mut v: Vec<Gf>) -> Vec<Gf> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    pub fn mul(&self, f: &[Gf], g: &[Gf]) -> Vec<Gf> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let fl = &self.field;
        let mut out = vec![fl.zero(); f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = fl.add(out[i + j], fl.mul(a, self.theta(b, i as i64)));
            }
        }
        self.trim(out)
    }

    /// Remainder of right division: `f = s g + r`, `deg r < deg g`.
    pub fn right_rem(&self, f: &[Gf], g: &[Gf]) -> Vec<Gf> {
        let fl = &self.field;
        let dg = g.len() - 1;
        let lead_inv: Vec<Gf> = (0..f.len().max(1)).map(|k| fl.inv(self.theta(g[dg], k as i64)).unwrap()).collect();
        let mut r = self.trim(f.to_vec());
        while r.len() > dg {
            let k = r.len() - 1 - dg;
            let c = fl.mul(r[r.len() - 1], lead_inv[k]);
            for (i, &gi) in g.iter().enumerate() {
                r[i + k] = fl.sub(r[i + k], fl.mul(c, self.theta(gi, k as i64)));
            }
            r = self.trim(r);
        }
        r
    }

    pub fn right_divides(&self, g: &[Gf], f: &[Gf]) -> bool {
        self.right_rem(f, g).is_empty()
    }

    /// All monic polynomials of degree `d`.
    pub fn monic_of_degree(&self, d: usize) -> Vec<Vec<Gf>> {
        let elems = self.field.elements();
        let q = elems.len();
        let total = q.pow(d as u32);
        (0..total)
            .map(|mut idx| {
                let mut v: Vec<Gf> = (0..d)
                    .map(|_| {
                        let c = elems[idx % q];
                        idx /= q;
                        c
                    })
                    .collect();
                v.push(self.field.one());
                v
            })
            .collect()
    }

    pub fn monic_up_to(&self, d: usize) -> Vec<Vec<Gf>> {
        (0..=d).flat_map(|k| self.monic_of_degree(k)).collect()
    }

    /// Every monic right divisor of `x^n - a`, by trying all monic
    /// polynomials of every degree `0..=n`.
    pub fn right_divisors(&self, n: usize, a: Gf) -> BTreeSet<Vec<u16>> {
        let fl = &self.field;
        let mut target = vec![fl.zero(); n + 1];
        target[0] = fl.neg(a);
        target[n] = fl.one();
        (0..=n)
            .into_par_iter()
            .flat_map_iter(|d| {
                self.monic_of_degree(d)
                    .into_iter()
                    .filter(|g| self.right_divides(g, &target))
                    .map(|g| key(&g))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// The monic common right divisor of largest degree.
    pub fn gcrd(&self, f: &[Gf], g: &[Gf]) -> Vec<Gf> {
        let d = (f.len().min(g.len())) - 1;
        let mut best: Option<Vec<Gf>> = None;
        for cand in self.monic_up_to(d) {
            let longer = best.as_ref().is_none_or(|b| cand.len() > b.len());
            if longer && self.right_divides(&cand, f) && self.right_divides(&cand, g) {
                best = Some(cand);
            }
        }
        best.unwrap()
    }

    /// The monic common left multiple of smallest degree, as `s f` with `s`
    /// monic of least degree such that `g |_r s f`.
    pub fn lclm(&self, f: &[Gf], g: &[Gf]) -> Vec<Gf> {
        let fl = &self.field;
        let dg = g.len() - 1;
        for d in 0..=dg {
            for s in self.monic_of_degree(d) {
                let sf = self.mul(&s, f);
                if self.right_divides(g, &sf) {
                    let c = fl.inv(self.theta(*f.last().unwrap(), d as i64)).unwrap();
                    return self.mul(&[c], &sf);
                }
            }
        }
        unreachable!("a common left multiple of degree deg f + deg g exists")
    }
}

pub fn key(v: &[Gf]) -> Vec<u16> {
    v.iter().map(|c| c.value()).collect()
}

pub fn keys(ps: &[SkewPoly]) -> BTreeSet<Vec<u16>> {
    ps.iter().map(|p| key(p.coeffs())).collect()
}

pub fn to_poly(ring: &Arc<SkewRing>, v: &[Gf]) -> SkewPoly {
    ring.poly(v.to_vec())
}

pub const FIELDS: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

/// Compares [`enumerate_right_divisors`] with [`Naive::right_divisors`] for
/// every field in [`FIELDS`], every `θ`, every `a ≠ 0` and every `n` with
/// `q^n <= max_cosets`. Returns the number of instances.
pub fn divisor_sweep(max_cosets: u64) -> Result<usize, String> {
    let mut count = 0;
    for q in FIELDS {
        let m_deg = ring(q, 0).field().degree() as i64;
        for s in 0..m_deg {
            let r = ring(q, s);
            let naive = Naive::new(&r);
            let mut n = 1;
            while (q as u64).pow(n as u32) <= max_cosets {
                for a in r.field().nonzero_elements() {
                    let m = ModulusSpec::new(r.clone(), n, a).unwrap();
                    let fast: Vec<_> = enumerate_right_divisors(&m, u128::MAX)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .map(|d| d.g)
                        .collect();
                    if keys(&fast) != naive.right_divisors(n, a) {
                        return Err(format!("q={q} s={s} n={n} a={}", r.field().show(a)));
                    }
                    count += 1;
                }
                n += 1;
            }
        }
    }
    Ok(count)
}

fn gcrd_lclm_agree(naive: &Naive, r: &Arc<SkewRing>, f: &[Gf], g: &[Gf]) -> Result<(), String> {
    let (pf, pg) = (r.poly(f.to_vec()), r.poly(g.to_vec()));
    let d = pf.gcrd(&pg).map_err(|e| e.to_string())?.d;
    if key(d.coeffs()) != key(&naive.gcrd(f, g)) {
        return Err(format!("gcrd({pf}, {pg}) = {d}"));
    }
    let l = pf.lclm(&pg).map_err(|e| e.to_string())?;
    if key(l.coeffs()) != key(&naive.lclm(f, g)) {
        return Err(format!("lclm({pf}, {pg}) = {l}"));
    }
    Ok(())
}

/// gcrd and lclm against brute force over F4 for every pair of nonzero
/// polynomials of degree at most 3 (the second one scaled by a varying
/// constant). Returns the number of pairs.
pub fn gcrd_lclm_f4() -> Result<usize, String> {
    let r = ring(4, 1);
    let naive = Naive::new(&r);
    let f = r.field();
    let all = naive.monic_up_to(3);
    let scales = f.nonzero_elements();
    let pairs: Vec<(Vec<Gf>, Vec<Gf>)> = all
        .iter()
        .flat_map(|p1| {
            all.iter().map(|p2| {
                let c = scales[(p1.len() + 2 * p2.len() + p2[0].value() as usize) % scales.len()];
                (p1.clone(), p2.iter().map(|&x| f.mul(c, x)).collect())
            })
        })
        .collect();
    pairs.par_iter().try_for_each(|(p1, p2)| gcrd_lclm_agree(&naive, &r, p1, p2))?;
    Ok(pairs.len())
}

/// As [`gcrd_lclm_f4`] over F8, on `samples` random pairs plus `samples / 4`
/// pairs sharing a random right factor.
pub fn gcrd_lclm_f8(samples: usize, seed: u64) -> Result<usize, String> {
    let r = ring(8, 1);
    let naive = Naive::new(&r);
    let f = r.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng, lo: usize, hi: usize| -> Vec<Gf> {
        let d = rng.gen_range(lo..=hi);
        let mut v: Vec<_> = (0..d).map(|_| f.element(rng.gen_range(0..8)).unwrap()).collect();
        v.push(f.element(rng.gen_range(1..8)).unwrap());
        v
    };
    let mut pairs: Vec<_> = (0..samples).map(|_| (random(&mut rng, 0, 3), random(&mut rng, 0, 3))).collect();
    for _ in 0..samples / 4 {
        let w = random(&mut rng, 1, 2);
        let rest = 4 - w.len();
        let (u, v) = (random(&mut rng, 0, rest), random(&mut rng, 0, rest));
        pairs.push((naive.mul(&u, &w), naive.mul(&v, &w)));
    }
    pairs.par_iter().try_for_each(|(p1, p2)| gcrd_lclm_agree(&naive, &r, p1, p2))?;
    Ok(pairs.len())
}
