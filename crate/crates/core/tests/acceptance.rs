//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{keys, modulus, poly, polys};
use skewcirc::circulant::{circulant_matrix, recognize_circulant, single_shift_solutions};
use skewcirc::codes::{right_module_maps_check, scaling_to, self_dual_scan, CodeHandle};
use skewcirc::divisors::{enumerate_right_divisors, noncommutation_probe, transfer_divisors};
use skewcirc::matrix::Matrix;
use skewcirc::quotient::ModulusSpec;
use skewcirc::report::Report;
use skewcirc::suites::{random_poly, run_suite, Suite, SuiteConfig};
use skewcirc::{Gf, RingExt, SkewPoly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const F8_DIVISORS: [&str; 8] = [
    "1",
    "x+a",
    "x^3+a^4*x^2+1",
    "x^3+a^6*x+1",
    "x^4+a*x^3+a^5*x^2+a",
    "x^4+a^5*x^2+x+a",
    "x^6+a^4*x^5+a^6*x^4+x^3+a^4*x^2+a^6*x+1",
    "x^7+a",
];

const F8_DUALS: [&str; 8] = [
    "x^7+a^6",
    "x^6+a^3*x^5+a*x^4+x^3+a^3*x^2+a*x+1",
    "x^4+a^2*x^2+x+a^6",
    "x^4+a^6*x^3+a^2*x^2+a^6",
    "x^3+a*x+1",
    "x^3+a^3*x^2+1",
    "x+a^6",
    "1",
];

fn f8_x7() -> ModulusSpec {
    modulus(8, 7, "a")
}

fn timed(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:.2?}, limit {limit:?}");
    Ok(t)
}

fn no_failures(rep: &Report) -> Result<(), String> {
    match rep.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{} failed: {:?}", c.name, c.witness)),
    }
}

fn passes(rep: &Report, name: &str) -> usize {
    rep.checks.iter().filter(|c| c.name == name && c.outcome == skewcirc::report::Outcome::Pass).count()
}

fn divisor_census() -> Outcome {
    let start = Instant::now();
    let m = f8_x7();
    let divs = enumerate_right_divisors(&m, u128::MAX).map_err(|e| e.to_string())?;
    let expected = polys(&m, &F8_DIVISORS);
    let found: Vec<SkewPoly> = divs.iter().map(|d| d.g.clone()).collect();
    ensure!(keys(&found) == keys(&expected), "divisors differ: {found:?}");
    let not_left: BTreeSet<Vec<u16>> = keys(&divs.iter().filter(|d| !d.left_divisor).map(|d| d.g.clone()).collect::<Vec<_>>());
    ensure!(not_left == keys(&[expected[2].clone(), expected[3].clone(), expected[6].clone()]), "left-divisor flags differ");
    let t = timed(Duration::from_secs(5), start)?;
    Ok(format!("8 divisors, g(2), g(3), g(6) not left divisors, {t:.2?}"))
}

fn count(m: &ModulusSpec) -> Result<Vec<SkewPoly>, String> {
    Ok(enumerate_right_divisors(m, u128::MAX).map_err(|e| e.to_string())?.into_iter().map(|d| d.g).collect())
}

fn divisor_counts() -> Outcome {
    let start = Instant::now();
    let base = modulus(16, 6, "1");
    let base_divs = count(&base)?;
    ensure!(base_divs.len() == 35, "x^6-1 over F16: {}", base_divs.len());
    let f = base.field().clone();
    for i in 1..=4 {
        let target = f.gen_pow(3 * i);
        let m = base.with_a(target).map_err(|e| e.to_string())?;
        let direct = count(&m)?;
        let b = scaling_to(&base, target).ok_or(format!("no scaling to a^{}", 3 * i))?;
        let (mhat, moved) = transfer_divisors(&base, &base_divs, b).map_err(|e| e.to_string())?;
        ensure!(mhat.a() == target, "transfer lands on {}", f.show(mhat.a()));
        ensure!(direct.len() == 35, "x^6-a^{}: {} divisors", 3 * i, direct.len());
        ensure!(keys(&direct) == keys(&moved), "x^6-a^{}: transfer and enumeration differ", 3 * i);
    }
    for k in [1, -1] {
        let m = base.with_a(f.gen_pow(k)).map_err(|e| e.to_string())?;
        let divs = count(&m)?;
        let degrees: Vec<usize> = divs.iter().map(|g| g.degree().unwrap()).collect();
        ensure!(degrees == [0, 6], "x^6-a^{k}: degrees {degrees:?}");
    }
    let n9a = count(&modulus(9, 4, "1"))?.len();
    let n9b = count(&modulus(9, 4, "2"))?.len();
    ensure!(n9a == 12 && n9b == 36, "F9: x^4-1 has {n9a} divisors (expected 12), x^4-2 has {n9b} (expected 36)");
    let t = timed(Duration::from_secs(60), start)?;
    Ok(format!("35 / 35 x4 / trivial / 12 / 36, {t:.2?}"))
}

fn dual_census() -> Outcome {
    let m = f8_x7();
    let gs = polys(&m, &F8_DIVISORS);
    let md = m.with_a(m.field().gen_pow(6)).map_err(|e| e.to_string())?;
    let expected = polys(&md, &F8_DUALS);
    for (i, (g, want)) in gs.iter().zip(&expected).enumerate() {
        let code = CodeHandle::from_generator(&m, g).map_err(|e| e.to_string())?;
        let dual = code.dual().map_err(|e| e.to_string())?;
        ensure!(dual.g() == want, "delta(g({i})) = {}, expected {want}", dual.g());
        ensure!(dual.modulus().a() == md.a(), "dual modulus for g({i})");
        let prod = code.generator_matrix().mul(&dual.generator_matrix().transpose()).map_err(|e| e.to_string())?;
        ensure!(prod.is_zero(), "G Gd^T != 0 for g({i})");
        ensure!(code.k() + dual.k() == 7, "k + k_dual != 7 for g({i})");
    }
    Ok("8 dual generators verbatim, orthogonal, dimensions sum to 7".into())
}

/// Minimum weight of a nonzero codeword, by listing every `u G`.
fn naive_distance(g: &Matrix) -> Option<usize> {
    let f = g.field().clone();
    let elems = f.elements();
    let k = g.rows();
    if k == 0 {
        return None;
    }
    let mut idx = vec![0usize; k];
    let mut best = None;
    loop {
        let mut i = 0;
        while i < k && idx[i] + 1 == elems.len() {
            idx[i] = 0;
            i += 1;
        }
        if i == k {
            return best;
        }
        idx[i] += 1;
        let u: Vec<Gf> = idx.iter().map(|&j| elems[j]).collect();
        let w = g.vec_mul(&u).unwrap().iter().filter(|c| !c.is_zero()).count();
        best = Some(best.map_or(w, |b: usize| b.min(w)));
    }
}

fn distances() -> Outcome {
    let start = Instant::now();
    let m = f8_x7();
    let gs = polys(&m, &F8_DIVISORS);
    let mut summary = Vec::new();
    for (i, g) in gs.iter().enumerate().take(7).skip(1) {
        let code = CodeHandle::from_generator(&m, g).map_err(|e| e.to_string())?;
        let dual = code.dual().map_err(|e| e.to_string())?;
        for (label, c) in [("C", &code), ("dual C", &dual)] {
            let d = c.weight_enumerator(8u128.pow(6)).map_err(|e| e.to_string())?.min_distance();
            let oracle = naive_distance(c.generator_matrix());
            ensure!(d == oracle, "{label}({i}): enumerator gives {d:?}, oracle {oracle:?}");
            let d = d.unwrap();
            let defect = 7 + 1 - c.k() - d;
            match (i, label) {
                (1, "C") => ensure!(d == 2, "C(1) has d = {d}"),
                (6, "C") => ensure!(d == 7, "C(6) has d = {d}"),
                (2..=5, _) => ensure!(defect == 1, "{label}({i}) has defect {defect}"),
                _ => {}
            }
            if label == "C" {
                summary.push(format!("[7,{},{d}]", c.k()));
            }
        }
    }
    let t = timed(Duration::from_secs(30), start)?;
    Ok(format!("{}, {t:.2?}", summary.join(" ")))
}

fn theorem_suites() -> Outcome {
    let instances = [modulus(8, 7, "a"), modulus(16, 6, "1"), modulus(9, 4, "1"), modulus(9, 4, "2")];
    let cfg = SuiteConfig { trials: 50, ..SuiteConfig::default() };
    let mut total = 0;
    for m in &instances {
        let divisors = count(m)?.len();
        let mut rep = Report::new(m.to_string());
        for s in [Suite::Factors, Suite::Circulant, Suite::Transpose, Suite::Duality] {
            rep.merge(run_suite(m, s, &cfg).map_err(|e| format!("{m}: {e}"))?);
        }
        no_failures(&rep).map_err(|e| format!("{m}: {e}"))?;
        for (name, per_divisor) in [
            ("x^n-a = hg iff x^n-c = theta^n(g)h", 1),
            ("c g_t = theta^t(a) theta^n(g_t) for all t", 1),
            ("g a^-1 h = c^-1 (x^n-c)", 1),
            ("-gr theta^(k-n)(c^-1) hl = x^n - a^-1", 1),
            ("M_a(fg) = M_c(f) M_a(g)", 50),
            ("M_a(g)^T = M_{c^-1}(g#)", 1),
            ("M_c(x^k) M_a(g) = M_{theta^k(c^-1)}(a gr)^T", 1),
            ("M_{theta^(k-n)(c^-1)}(x^(n-k)) M_{a^-1}(hl) = M_c(a^-1 h)^T", 1),
            ("M_b(x^i)^T M_{b^-1}(x^i) = I", 1),
            ("M_a(g) M_c(a^-1 h) = 0", 1),
            ("M_a(g) M_{a^-1}(hl)^T = 0", 1),
        ] {
            let got = passes(&rep, name);
            ensure!(got >= divisors * per_divisor, "{m}: '{name}' passed {got} times for {divisors} divisors");
        }
        total += rep.passed();
    }
    Ok(format!("{total} checks passed on 4 moduli"))
}

/// Every `(b, s)` with `M_a(x h) = M_b(s) M_a(h)`, by exhaustive search.
fn shift_identities_naive(m: &ModulusSpec, h: &SkewPoly) -> Result<usize, String> {
    let r = m.ring();
    let target = circulant_matrix(m, &(&r.x() * h));
    let mh = circulant_matrix(m, h);
    let naive = common::Naive::new(r);
    let mut found = 0;
    for b in m.field().nonzero_elements() {
        let mb = m.with_a(b).map_err(|e| e.to_string())?;
        for d in 0..m.n() {
            for s in naive.monic_of_degree(d) {
                for c in m.field().nonzero_elements() {
                    let s = r.poly(s.clone()).scale_left(c);
                    if circulant_matrix(&mb, &s).mul(&mh).unwrap() == target {
                        found += 1;
                    }
                }
            }
        }
    }
    Ok(found)
}

/// Whether `t` equals `M_b(s)` for some `b ≠ 0` and `deg s < n`, by
/// exhaustive search.
fn is_circulant_naive(m: &ModulusSpec, t: &Matrix) -> bool {
    let r = m.ring();
    let naive = common::Naive::new(r);
    let n = m.n();
    let zero = Matrix::zero(m.field(), n, n);
    if *t == zero {
        return true;
    }
    m.field().nonzero_elements().into_iter().any(|b| {
        let mb = m.with_a(b).unwrap();
        (0..n).any(|d| {
            naive.monic_of_degree(d).into_iter().any(|s| {
                m.field().nonzero_elements().into_iter().any(|c| circulant_matrix(&mb, &r.poly(s.clone()).scale_left(c)) == *t)
            })
        })
    })
}

fn negative_controls() -> Outcome {
    let m = modulus(8, 5, "a^2");
    let h = poly(&m, "x^4+a^6*x^3+a^2*x^2+x+a^6");
    let f = m.poly();
    ensure!(h.left_divides(&f) && !h.right_divides(&f), "h must be a left but not a right divisor");
    let mh = circulant_matrix(&m, &h);
    ensure!(mh.inverse().is_ok(), "M(h) is not invertible");
    let rec = recognize_circulant(&mh.transpose(), m.ring()).map_err(|e| e.to_string())?;
    ensure!(rec.is_none(), "M(h)^T recognized as {rec:?}");
    ensure!(!is_circulant_naive(&m, &mh.transpose()), "M(h)^T is a circulant by exhaustive search");
    let sols = single_shift_solutions(&m, &h, u128::MAX).map_err(|e| e.to_string())?;
    ensure!(sols.is_empty(), "single-shift solutions {sols:?}");
    let naive = shift_identities_naive(&m, &h)?;
    ensure!(naive == 0, "exhaustive search found {naive} single-shift identities");

    let m = modulus(8, 5, "a");
    let g = poly(&m, "x+a^5");
    let (hh, r) = m.poly().right_divmod(&g).map_err(|e| e.to_string())?;
    ensure!(r.is_zero(), "x+a^5 does not right-divide x^5-a");
    let prod = circulant_matrix(&m, &hh).mul(&circulant_matrix(&m, &g)).map_err(|e| e.to_string())?;
    ensure!(!prod.is_zero(), "M(h) M(g) = 0 for g = x+a^5");
    Ok("no circulant transpose, no single-shift identity, M(h)M(g) != 0".into())
}

fn central_case() -> Outcome {
    let m = modulus(4, 4, "1");
    ensure!(m.is_central(), "x^4-1 over F4 not central");
    let r = m.ring().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let f = random_poly(&r, &mut rng, 3);
        let g = random_poly(&r, &mut rng, 3);
        let lhs = circulant_matrix(&m, &(&f * &g));
        let rhs = circulant_matrix(&m, &f).mul(&circulant_matrix(&m, &g)).unwrap();
        ensure!(lhs == rhs, "M(fg) != M(f)M(g) for f = {f}, g = {g}");
    }
    let (g, h) = (poly(&m, "x^2+a*x+a^2"), poly(&m, "x^2+a*x+a"));
    ensure!(&g * &h == m.poly(), "(x^2+ax+a^2)(x^2+ax+a) != x^4-1");
    ensure!(&h * &g == m.poly(), "the factors do not commute");
    ensure!(!g.is_twosided() && !h.is_twosided(), "a factor is two-sided");

    let m6 = modulus(4, 6, "1");
    let factors = polys(&m6, &["a*x^3+a*x^2+x+1", "a^2*x^2+1", "x+1"]);
    let forward = &(&factors[2] * &factors[1]) * &factors[0];
    let backward = &(&factors[0] * &factors[1]) * &factors[2];
    ensure!(forward == m6.poly(), "(x+1)(a^2x^2+1)(ax^3+ax^2+x+1) = {forward}");
    ensure!(backward != m6.poly(), "reversed product equals x^6-1");
    let probe = noncommutation_probe(&m6, &[factors[2].clone(), factors[1].clone(), factors[0].clone()])
        .map_err(|e| e.to_string())?;
    ensure!(probe.holds(&[2, 1, 0]) == Some(false), "probe disagrees on the reversed order");

    let mut kernels = 0;
    for mm in [&m, &m6] {
        for fac in enumerate_right_divisors(mm, u128::MAX).map_err(|e| e.to_string())? {
            let code = CodeHandle::from_generator(mm, &fac.g).map_err(|e| e.to_string())?;
            let rep = right_module_maps_check(&code, 0, &mut rng);
            no_failures(&rep)?;
            ensure!(rep.skipped() == 0, "kernel checks skipped for {}", fac.g);
            kernels += rep.passed();
        }
    }
    Ok(format!("100 products, commuting non-two-sided pair, triple order, {kernels} kernel identities"))
}

fn oracle_equivalence() -> Outcome {
    let instances = common::divisor_sweep(1 << 20)?;
    let f4 = common::gcrd_lclm_f4()?;
    let f8 = common::gcrd_lclm_f8(2000, 88)?;
    let cfg = SuiteConfig { trials: 1000, ..SuiteConfig::default() };
    for (q, n, a) in [(4, 4, "a"), (8, 7, "a"), (9, 4, "2"), (16, 6, "a^3")] {
        let m = modulus(q, n, a);
        let rep = run_suite(&m, Suite::Prelim, &cfg).map_err(|e| e.to_string())?;
        no_failures(&rep).map_err(|e| format!("GF({q}): {e}"))?;
        for name in [
            "theta is a ring automorphism of R",
            "phi is a ring anti-automorphism of F[x,x^-1;theta]",
            "rho_l and rho_r fix constants",
            "rho_l(f) = theta^deg(f)(rho_r(f))",
            "theta commutes with rho_l and rho_r",
            "rho_l(rho_l(f)) = theta^deg(f)(f), rho_r(rho_r(f)) = theta^-deg(f)(f)",
            "rho_r(rho_l(f)) = rho_l(rho_r(f)) = f",
            "rho_l(fg) = theta^deg(f)(rho_l(g)) rho_l(f), rho_r(fg) = rho_r(g) theta^-deg(g)(rho_r(f))",
        ] {
            ensure!(passes(&rep, name) == 1000, "GF({q}): '{name}' passed {} times", passes(&rep, name));
        }
    }
    Ok(format!("{instances} divisor instances, {f4} + {f8} gcrd/lclm pairs, 4 x 8 x 1000 basic identities"))
}

fn self_dual() -> Outcome {
    let mut hits = Vec::new();
    for q in [8, 9] {
        let r = common::ring(q, 1);
        let one = r.field().one();
        let minus_one = r.field().neg(one);
        for n in 3..=7 {
            let found = self_dual_scan(&r, n, u128::MAX).map_err(|e| e.to_string())?;
            for hit in &found {
                ensure!(n % 2 == 0, "GF({q}) n={n}: self-dual code {} for odd n", hit.g);
                ensure!(hit.a == one || hit.a == minus_one, "GF({q}) n={n}: a = {}", r.field().show(hit.a));
            }
            hits.push(format!("GF({q}),n={n}:{}", found.len()));
        }
    }
    Ok(format!("hits {}", hits.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("divisor census over GF(8)", divisor_census),
        ("divisor counts", divisor_counts),
        ("dual census", dual_census),
        ("distances", distances),
        ("theorem suites", theorem_suites),
        ("negative controls", negative_controls),
        ("central case", central_case),
        ("oracle equivalence", oracle_equivalence),
        ("self-dual scan", self_dual),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

