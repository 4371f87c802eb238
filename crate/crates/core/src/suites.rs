//! Verification suites over every factorization of `x^n - a`, plus random
//! trials, used by the `verify` command.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circulant::{
    annihilation_check, circulant_matrix, closed_form, prod_formula_check, recognize_circulant,
    single_shift_solutions, transpose_theorems,
};
use crate::codes::{is_skew_constacyclic, right_module_maps_check, CodeHandle, EXHAUSTIVE_COSETS};
use crate::divisors::{build_lattice, dual_lattice, enumerate_right_divisors, transfer_divisors, Factorization};
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::quotient::ModulusSpec;
use crate::report::Report;
use crate::skewpoly::{RingExt, SkewPoly, SkewRing};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    Prelim,
    Factors,
    Circulant,
    Transpose,
    Duality,
    Central,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "prelim" => Suite::Prelim,
            "factors" => Suite::Factors,
            "circulant" => Suite::Circulant,
            "transpose" => Suite::Transpose,
            "duality" => Suite::Duality,
            "central" => Suite::Central,
            "all" => Suite::All,
            other => return Err(Error::InvalidArgument(format!("unknown suite '{other}'"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Random trials per property (and random `f` per divisor).
    pub trials: usize,
    pub seed: u64,
    /// Cap on divisor-search candidates.
    pub budget: u128,
    /// Cap on codewords enumerated for weight comparisons.
    pub distance_budget: u128,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { trials: 50, seed: 0x5eed, budget: 1 << 26, distance_budget: 1 << 16 }
    }
}

/// A random polynomial of degree at most `max_deg`, never zero.
pub fn random_poly<R: Rng>(ring: &Arc<SkewRing>, rng: &mut R, max_deg: usize) -> SkewPoly {
    let f = ring.field();
    let q = f.size();
    let d = rng.gen_range(0..=max_deg);
    let mut coeffs: Vec<Gf> = (0..d).map(|_| f.element(rng.gen_range(0..q)).unwrap()).collect();
    coeffs.push(f.element(rng.gen_range(1..q)).unwrap());
    ring.poly(coeffs)
}

fn random_nonzero<R: Rng>(ring: &Arc<SkewRing>, rng: &mut R) -> Gf {
    let f = ring.field();
    f.element(rng.gen_range(1..f.size())).unwrap()
}

fn random_word<R: Rng>(m: &ModulusSpec, rng: &mut R) -> Vec<Gf> {
    let f = m.field();
    (0..m.n()).map(|_| f.element(rng.gen_range(0..f.size())).unwrap()).collect()
}

fn show2(a: &SkewPoly, b: &SkewPoly) -> Vec<(String, String)> {
    vec![("f".into(), a.to_string()), ("g".into(), b.to_string())]
}

/// Runs `suite` on `m`; the report is raw, one check per instance.
pub fn run_suite(m: &ModulusSpec, suite: Suite, cfg: &SuiteConfig) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let needs_divisors = suite != Suite::Prelim;
    let divisors = if needs_divisors { enumerate_right_divisors(m, cfg.budget)? } else { Vec::new() };
    let mut rep = Report::new(format!("verify {suite:?} on {m}").to_lowercase());
    let suites = match suite {
        Suite::All => vec![Suite::Prelim, Suite::Factors, Suite::Circulant, Suite::Transpose, Suite::Duality, Suite::Central],
        s => vec![s],
    };
    for s in suites {
        let part = match s {
            Suite::Prelim => prelim(m, cfg, &mut rng)?,
            Suite::Factors => factors(m, &divisors, cfg, &mut rng)?,
            Suite::Circulant => circulant(m, &divisors, cfg, &mut rng)?,
            Suite::Transpose => transpose(m, &divisors)?,
            Suite::Duality => duality(m, &divisors, cfg, &mut rng)?,
            Suite::Central => central(m, &divisors, cfg, &mut rng)?,
            Suite::All => unreachable!(),
        };
        rep.merge(part);
    }
    Ok(rep)
}

/// Laurent polynomials `Σ c_i x^i`, `i ∈ Z`, as a sparse map.
type Laurent = BTreeMap<i64, Gf>;

fn laurent_add(ring: &SkewRing, x: &Laurent, y: &Laurent) -> Laurent {
    let f = ring.field();
    let mut out = x.clone();
    for (&e, &c) in y {
        let v = f.add(out.get(&e).copied().unwrap_or_else(|| f.zero()), c);
        out.insert(e, v);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn laurent_mul(ring: &SkewRing, x: &Laurent, y: &Laurent) -> Laurent {
    let f = ring.field();
    let mut out = Laurent::new();
    for (&i, &c) in x {
        for (&j, &d) in y {
            let t = f.mul(c, ring.aut(d, i));
            let v = f.add(out.get(&(i + j)).copied().unwrap_or_else(|| f.zero()), t);
            out.insert(i + j, v);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `Σ a_i x^i ↦ Σ x^{-i} a_i = Σ θ^{-i}(a_i) x^{-i}`.
fn laurent_phi(ring: &SkewRing, x: &Laurent) -> Laurent {
    x.iter().map(|(&i, &c)| (-i, ring.aut(c, -i))).collect()
}

fn random_laurent<R: Rng>(ring: &Arc<SkewRing>, rng: &mut R) -> Laurent {
    let low = rng.gen_range(-4..=4);
    let p = random_poly(ring, rng, 5);
    p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (low + i as i64, c)).collect()
}

fn prelim<R: Rng>(m: &ModulusSpec, cfg: &SuiteConfig, rng: &mut R) -> Result<Report> {
    let ring = m.ring();
    let n = m.n();
    let mut rep = Report::new("preliminaries");
    let maxd = n + 2;
    for _ in 0..cfg.trials {
        let f = random_poly(ring, rng, maxd);
        let g = random_poly(ring, rng, maxd);
        let (kf, kg) = (f.degree().unwrap() as i64, g.degree().unwrap() as i64);

        let ok = (&f + &g).theta(1) == &f.theta(1) + &g.theta(1) && (&f * &g).theta(1) == &f.theta(1) * &g.theta(1);
        rep.record("theta is a ring automorphism of R", ok, || show2(&f, &g));

        let (lf, lg) = (random_laurent(ring, rng), random_laurent(ring, rng));
        let ok = laurent_phi(ring, &laurent_mul(ring, &lf, &lg))
            == laurent_mul(ring, &laurent_phi(ring, &lg), &laurent_phi(ring, &lf))
            && laurent_phi(ring, &laurent_add(ring, &lf, &lg))
                == laurent_add(ring, &laurent_phi(ring, &lf), &laurent_phi(ring, &lg));
        rep.record("phi is a ring anti-automorphism of F[x,x^-1;theta]", ok, || {
            vec![("f".into(), format!("{lf:?}")), ("g".into(), format!("{lg:?}"))]
        });

        let c = ring.constant(random_nonzero(ring, rng));
        rep.record("rho_l and rho_r fix constants", c.rho_l() == c && c.rho_r() == c, Vec::new);

        rep.record("rho_l(f) = theta^deg(f)(rho_r(f))", f.rho_l() == f.rho_r().theta(kf), || show2(&f, &g));

        let ok = f.rho_l().theta(1) == f.theta(1).rho_l() && f.rho_r().theta(1) == f.theta(1).rho_r();
        rep.record("theta commutes with rho_l and rho_r", ok, || show2(&f, &g));

        let mut fz = f.coeffs().to_vec();
        fz[0] = random_nonzero(ring, rng);
        let fz = ring.poly(fz);
        let kz = fz.degree().unwrap() as i64;
        let ok = fz.rho_l().rho_l() == fz.theta(kz) && fz.rho_r().rho_r() == fz.theta(-kz);
        rep.record("rho_l(rho_l(f)) = theta^deg(f)(f), rho_r(rho_r(f)) = theta^-deg(f)(f)", ok, || show2(&fz, &g));
        rep.record("rho_r(rho_l(f)) = rho_l(rho_r(f)) = f", fz.rho_l().rho_r() == fz && fz.rho_r().rho_l() == fz, || {
            show2(&fz, &g)
        });

        let fg = &f * &g;
        let ok = fg.rho_l() == &g.rho_l().theta(kf) * &f.rho_l()
            && fg.rho_r() == &g.rho_r() * &f.rho_r().theta(-kg);
        rep.record("rho_l(fg) = theta^deg(f)(rho_l(g)) rho_l(f), rho_r(fg) = rho_r(g) theta^-deg(g)(rho_r(f))", ok, || {
            show2(&f, &g)
        });

        rep.record("x f = theta(f) x", &ring.x() * &f == &f.theta(1) * &ring.x(), || show2(&f, &g));
        rep.record("deg(fg) = deg f + deg g", fg.degree() == Some((kf + kg) as usize), || show2(&f, &g));

        let (s, r) = f.right_divmod(&g)?;
        let ok = &(&s * &g) + &r == f && r.degree().is_none_or(|d| (d as i64) < kg);
        rep.record("right division f = s g + r", ok, || show2(&f, &g));
        let (s, r) = f.left_divmod(&g)?;
        let ok = &(&g * &s) + &r == f && r.degree().is_none_or(|d| (d as i64) < kg);
        rep.record("left division f = g s + r", ok, || show2(&f, &g));

        let gc = f.gcrd(&g)?;
        let ok = gc.d.is_monic()
            && gc.d.right_divides(&f)
            && gc.d.right_divides(&g)
            && &(&gc.u * &f) + &(&gc.v * &g) == gc.d;
        rep.record("gcrd is a monic common right divisor with d = u f + v g", ok, || show2(&f, &g));
        let l = f.lclm(&g)?;
        let ok = l.is_monic()
            && f.right_divides(&l)
            && g.right_divides(&l)
            && gc.d.degree().unwrap() + l.degree().unwrap() == (kf + kg) as usize;
        rep.record("lclm is a common left multiple with deg gcrd + deg lclm = deg f + deg g", ok, || show2(&f, &g));

        let fr = m.reduce(&f);
        let mf = circulant_matrix(m, &f);
        let rows_ok = (0..n).all(|i| mf.row(i) == m.reduce(&(&ring.x_pow(i) * &f)).va().as_slice());
        rep.record("row i of M_a(f) is v_a(x^i f)", rows_ok && mf == closed_form(&fr), || show2(&f, &g));

        let u = random_word(m, rng);
        let lhs = m.pa(&mf.vec_mul(&u)?)?;
        let rhs = m.pa(&u)?.rep() * fr.rep();
        rep.record("p_a(u M_a(f)) = p_a(u) [f]", lhs == m.reduce(&rhs), || show2(&f, &g));

        let cg = m.canonical_generator(&f)?;
        let code = CodeHandle::from_generator(m, &cg)?;
        let ok = if code.k() == 0 { mf.is_zero() } else { mf.row_space_equal(code.generator_matrix()) };
        rep.record("im M_a(f) is the code of gcrd(f, x^n-a)", ok, || show2(&f, &cg));
    }
    let f = m.field();
    let mut bad = Vec::new();
    for e in 0..4 * n {
        let c = f.gen_pow(e as i64);
        if m.reduce_monomial(c, e) != m.reduce(&ring.monomial(c, e)) {
            bad.push(e);
        }
    }
    rep.record("reduction of x^(tn+j) matches the closed form", bad.is_empty(), || {
        vec![("exponents".into(), format!("{bad:?}"))]
    });
    Ok(rep)
}

fn factors<R: Rng>(m: &ModulusSpec, divisors: &[Factorization], cfg: &SuiteConfig, rng: &mut R) -> Result<Report> {
    let mut rep = Report::new("factorizations");
    let f = m.field();
    for fac in divisors {
        rep.merge(m.factor_equiv_suite(&fac.h, &fac.g));
        rep.merge(m.hats(&fac.h, &fac.g)?.2);
        let k = fac.h.degree().unwrap() as i64;
        let c = m.gamma(&fac.g)?;
        let expected = m.aut(m.a(), m.n() as i64 - k);
        rep.record("monic factors: c = theta^(n-k)(a)", c == expected, || {
            vec![("g".into(), fac.g.to_string()), ("c".into(), f.show(c))]
        });
    }
    let b = random_nonzero(m.ring(), rng);
    let gs: Vec<SkewPoly> = divisors.iter().map(|d| d.g.clone()).collect();
    let (mhat, moved) = transfer_divisors(m, &gs, b)?;
    match enumerate_right_divisors(&mhat, cfg.budget) {
        Ok(direct) => {
            let direct: Vec<SkewPoly> = direct.into_iter().map(|d| d.g).collect();
            rep.record("g |_r x^n-a iff gb |_r x^n-ahat", moved == direct, || {
                vec![("b".into(), f.show(b)), ("ahat".into(), f.show(mhat.a()))]
            });
        }
        Err(_) => rep.skip("g |_r x^n-a iff gb |_r x^n-ahat", "over the search budget"),
    }
    Ok(rep)
}

fn circulant<R: Rng>(m: &ModulusSpec, divisors: &[Factorization], cfg: &SuiteConfig, rng: &mut R) -> Result<Report> {
    let ring = m.ring();
    let n = m.n();
    let mut rep = Report::new("circulants");
    for fac in divisors {
        for _ in 0..cfg.trials {
            let f = random_poly(ring, rng, 2 * n);
            rep.merge(prod_formula_check(m, &f, &fac.g));
        }
        let mg = circulant_matrix(m, &fac.g);
        let k = n - fac.g.degree().unwrap();
        rep.record("rank M_a(g) = n - deg g", mg.rank() == k, || vec![("g".into(), fac.g.to_string())]);
        let code = CodeHandle::from_generator(m, &fac.g)?;
        rep.record("the first n - deg g rows of M_a(g) are independent", code.generator_matrix().rank() == k, Vec::new);

        let b = random_nonzero(ring, rng);
        match code.scale_equivalence_check(b, cfg.distance_budget) {
            Ok(r) => rep.merge(r),
            Err(e) => rep.skip("scale equivalence", e.to_string()),
        }
    }
    for x in divisors {
        for y in divisors {
            let (mx, my) = (circulant_matrix(m, &x.g), circulant_matrix(m, &y.g));
            let inside = my.row_space_contains(&mx)?;
            rep.record("im M(f) in im M(g) iff g |_r f", inside == y.g.right_divides(&x.g), || show2(&x.g, &y.g));
        }
    }
    for _ in 0..cfg.trials {
        let p = random_poly(ring, rng, 2 * n);
        let p2 = random_poly(ring, rng, 2 * n);
        let c = random_nonzero(ring, rng);
        let b = m.with_a(random_nonzero(ring, rng))?;
        let lhs = circulant_matrix(m, &p.scale_left(c));
        let rhs = circulant_matrix(&b, &ring.constant(c)).mul(&circulant_matrix(m, &p))?;
        rep.record("M_a(c f) = M_b(c) M_a(f)", lhs == rhs, || show2(&p, &ring.constant(c)));
        let sum = circulant_matrix(m, &p).add(&circulant_matrix(m, &p2))?;
        rep.record("M_a(f + f') = M_a(f) + M_a(f')", circulant_matrix(m, &(&p + &p2)) == sum, || show2(&p, &p2));
    }
    // cofactors that are not right divisors, the setting of the failed product rule
    for fac in divisors {
        if fac.h.right_divides(&m.poly()) {
            continue;
        }
        let mh = circulant_matrix(m, &fac.h);
        let transposed = recognize_circulant(&mh.transpose(), ring)?.is_some();
        let shift = if mh.inverse().is_ok() {
            match single_shift_solutions(m, &fac.h, 0)?.len() {
                0 => "no single-shift identity".to_string(),
                k => format!("{k} single-shift identities"),
            }
        } else {
            "M(h) singular, single shift not probed".to_string()
        };
        rep.note(format!(
            "h = {} (not a right divisor): M(h)^T {} a circulant; {shift}",
            fac.h,
            if transposed { "is" } else { "is not" }
        ));
    }
    Ok(rep)
}

fn transpose(m: &ModulusSpec, divisors: &[Factorization]) -> Result<Report> {
    let mut rep = Report::new("transposes");
    for fac in divisors {
        rep.merge(transpose_theorems(m, &fac.h, &fac.g)?);
    }
    Ok(rep)
}

fn duality<R: Rng>(m: &ModulusSpec, divisors: &[Factorization], cfg: &SuiteConfig, rng: &mut R) -> Result<Report> {
    let f = m.field();
    let n = m.n();
    let mut rep = Report::new("duality");
    let q = f.size() as u128;
    let exhaustive = q.checked_pow(n as u32).is_some_and(|t| t <= EXHAUSTIVE_COSETS);
    let ainv = f.inv(m.a())?;
    for fac in divisors {
        let code = CodeHandle::from_generator(m, &fac.g)?;
        let dg = code.dual_generator();
        let md = m.with_a(ainv)?;
        rep.record("delta_a(g) is a monic right divisor of x^n - a^-1", dg.is_monic() && dg.right_divides(&md.poly()), || {
            vec![("g".into(), fac.g.to_string()), ("delta".into(), dg.to_string())]
        });
        let dual = code.dual()?;
        let ortho = code.generator_matrix().mul(&dual.generator_matrix().transpose())?.is_zero();
        rep.record("G G_dual^T = 0", ortho, || vec![("g".into(), fac.g.to_string())]);
        rep.record("k + k_dual = n", code.k() + dual.k() == n, || vec![("g".into(), fac.g.to_string())]);
        rep.merge(annihilation_check(m, &fac.h, &fac.g)?);

        let words: Vec<Vec<Gf>> = if exhaustive {
            let elems = f.elements();
            let mut idx = vec![0usize; n];
            let mut out = Vec::new();
            loop {
                out.push(idx.iter().map(|&i| elems[i]).collect());
                if !crate::circulant::odometer(&mut idx, elems.len()) {
                    break out;
                }
            }
        } else {
            let g = code.generator_matrix();
            (0..cfg.trials)
                .flat_map(|_| {
                    let w = random_word(m, rng);
                    let u: Vec<Gf> = (0..code.k()).map(|_| f.element(rng.gen_range(0..f.size())).unwrap()).collect();
                    let cw = if code.k() == 0 { vec![f.zero(); n] } else { g.vec_mul(&u).unwrap() };
                    [w, cw]
                })
                .collect()
        };
        let bad = words.iter().find(|w| code.syndrome(w).map(|s| s.is_zero()).ok() != code.contains(w).ok());
        rep.record("syndrome is zero iff the word is a codeword", bad.is_none(), || {
            vec![("g".into(), fac.g.to_string()), ("word".into(), format!("{:?}", bad.unwrap()))]
        });

        let rows = code.generator_matrix().row_vecs();
        let found = is_skew_constacyclic(m, &rows)?;
        rep.record("shift closure recovers g", found.as_ref().map(|c| c.g()) == Some(&fac.g), || {
            vec![("g".into(), fac.g.to_string())]
        });
        if code.k() > 0 && code.k() < n {
            let others = f
                .nonzero_elements()
                .into_iter()
                .filter(|&b| b != m.a())
                .filter(|&b| is_skew_constacyclic(&m.with_a(b).unwrap(), &rows).unwrap().is_some())
                .count();
            rep.record("a proper code is constacyclic for a single a", others == 0, || {
                vec![("g".into(), fac.g.to_string())]
            });
        }
    }
    let lat = build_lattice(m, divisors, None)?;
    rep.merge(dual_lattice(&lat, cfg.budget)?.1);
    Ok(rep)
}

fn central<R: Rng>(m: &ModulusSpec, divisors: &[Factorization], cfg: &SuiteConfig, rng: &mut R) -> Result<Report> {
    let mut rep = Report::new("central case");
    if !m.is_central() {
        rep.skip("central identities", "x^n - a is not central");
        return Ok(rep);
    }
    let ring = m.ring();
    let n = m.n();
    for _ in 0..cfg.trials {
        let f = random_poly(ring, rng, n - 1);
        let g = random_poly(ring, rng, n - 1);
        let lhs = circulant_matrix(m, &(&f * &g));
        let rhs = circulant_matrix(m, &f).mul(&circulant_matrix(m, &g))?;
        rep.record("M(fg) = M(f) M(g)", lhs == rhs, || show2(&f, &g));
        rep.record("M(f) = 0 only for [f] = 0", !circulant_matrix(m, &f).is_zero(), || show2(&f, &g));
    }
    for fac in divisors {
        let (g, h) = (&fac.g, &fac.h);
        rep.record("x^n - a = g h", g * h == m.poly(), || show2(g, h));
        rep.merge(annihilation_check(m, h, g)?);
        let code = CodeHandle::from_generator(m, g)?;
        rep.merge(right_module_maps_check(&code, cfg.trials, rng));
    }
    Ok(rep)
}
