//! Monic right divisors of `x^n - a`, their lattice, and its dual.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{dual_generator, CodeHandle};
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::quotient::ModulusSpec;
use crate::report::Report;
use crate::skewpoly::{RingExt, SkewPoly};

/// Default cap on the number of candidate polynomials tried.
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 26;

/// `x^n - a = h g` with `g`, `h` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub g: SkewPoly,
    pub h: SkewPoly,
    /// Whether `g` also divides `x^n - a` from the left.
    pub left_divisor: bool,
}

/// Monic polynomials of degree `d` with nonzero constant term.
fn candidate_count(q: u128, d: usize) -> u128 {
    if d == 0 {
        1
    } else {
        (q - 1).saturating_mul(q.saturating_pow(d as u32 - 1))
    }
}

/// Number of candidates [`enumerate_right_divisors`] tries for `(q, n)`.
pub fn search_size(q: u32, n: usize) -> u128 {
    let q = q as u128;
    let low = n / 2;
    let right: u128 = (0..=low).map(|d| candidate_count(q, d)).sum();
    let left: u128 = (0..n - low).map(|e| candidate_count(q, e)).sum();
    right.saturating_add(left)
}

/// The `index`-th monic candidate of degree `d` with nonzero constant term.
fn candidate(m: &ModulusSpec, elems: &[Gf], d: usize, mut index: u128) -> SkewPoly {
    let f = m.field();
    let q = elems.len() as u128;
    let mut coeffs = Vec::with_capacity(d + 1);
    if d > 0 {
        coeffs.push(elems[1 + (index % (q - 1)) as usize]);
        index /= q - 1;
        for _ in 1..d {
            coeffs.push(elems[(index % q) as usize]);
            index /= q;
        }
    }
    coeffs.push(f.one());
    m.ring().poly(coeffs)
}

/// All monic right divisors of `x^n - a`, sorted by degree and then by
/// coefficients. Divisors of degree at most `n/2` are found by right
/// division; the others as right cofactors of monic left divisors of
/// small degree.
pub fn enumerate_right_divisors(m: &ModulusSpec, budget: u128) -> Result<Vec<Factorization>> {
    let f = m.field();
    let n = m.n();
    let needed = search_size(f.size(), n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    let target = m.poly();
    let elems = f.elements();
    let q = f.size() as u128;
    let low = n / 2;
    let mut found: Vec<SkewPoly> = (0..=low)
        .flat_map(|d| (0..candidate_count(q, d)).map(move |i| (d, i)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|(d, i)| {
            let g = candidate(m, &elems, d, i);
            g.right_divides(&target).then_some(g)
        })
        .collect();
    let high: Vec<SkewPoly> = (0..n - low)
        .flat_map(|e| (0..candidate_count(q, e)).map(move |i| (e, i)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|(e, i)| {
            let h = candidate(m, &elems, e, i);
            let (s, r) = target.left_divmod(&h).ok()?;
            if r.is_zero() {
                s.monic().ok()
            } else {
                None
            }
        })
        .collect();
    found.extend(high);
    found.sort_by(|x, y| x.canonical_cmp(y));
    found.dedup();
    Ok(found
        .into_iter()
        .map(|g| {
            let h = target.right_divmod(&g).expect("nonzero").0;
            let left_divisor = g.left_divides(&target);
            Factorization { g, h, left_divisor }
        })
        .collect())
}

/// Maps divisors of `x^n - a` to divisors of `x^n - â`,
/// `â = a b θ^n(b^{-1})`, by `g ↦ monic(g b)`.
pub fn transfer_divisors(m: &ModulusSpec, divisors: &[SkewPoly], b: Gf) -> Result<(ModulusSpec, Vec<SkewPoly>)> {
    let f = m.field();
    if b.is_zero() {
        return Err(Error::InvalidArgument("scaling factor must be nonzero".into()));
    }
    let ahat = f.mul(f.mul(m.a(), b), m.aut(f.inv(b)?, m.n() as i64));
    let mhat = m.with_a(ahat)?;
    let mut out: Vec<SkewPoly> = divisors.iter().map(|g| g.scale_right(b).monic()).collect::<Result<_>>()?;
    out.sort_by(|x, y| x.canonical_cmp(y));
    Ok((mhat, out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeNode {
    pub g: SkewPoly,
    pub h: SkewPoly,
    pub left_divisor: bool,
    /// Dimension `n - deg g` of the code generated by `g`.
    pub k: usize,
    pub d: Option<usize>,
}

/// Monic right divisors ordered by right divisibility.
#[derive(Clone, Debug)]
pub struct DivisorLattice {
    pub modulus: ModulusSpec,
    pub nodes: Vec<LatticeNode>,
    /// Covering pairs `(i, j)`: `g_i` right-divides `g_j` with nothing between.
    pub edges: Vec<(usize, usize)>,
    /// `order[i][j]` iff `g_i` right-divides `g_j`.
    pub order: Vec<Vec<bool>>,
}

/// Builds the lattice; distances are filled in when `distance_budget` is set.
pub fn build_lattice(m: &ModulusSpec, divisors: &[Factorization], distance_budget: Option<u128>) -> Result<DivisorLattice> {
    let nodes: Vec<LatticeNode> = divisors
        .iter()
        .map(|fac| {
            let k = m.n() - fac.g.degree().expect("nonzero");
            let d = match distance_budget {
                Some(b) => CodeHandle::from_generator(m, &fac.g)?.weight_enumerator(b)?.min_distance(),
                None => None,
            };
            Ok(LatticeNode { g: fac.g.clone(), h: fac.h.clone(), left_divisor: fac.left_divisor, k, d })
        })
        .collect::<Result<_>>()?;
    let order: Vec<Vec<bool>> = nodes
        .iter()
        .map(|x| nodes.iter().map(|y| x.g.right_divides(&y.g)).collect())
        .collect();
    let len = nodes.len();
    let mut edges = Vec::new();
    for i in 0..len {
        for j in 0..len {
            if i != j && order[i][j] && !(0..len).any(|t| t != i && t != j && order[i][t] && order[t][j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(DivisorLattice { modulus: m.clone(), nodes, edges, order })
}

impl DivisorLattice {
    pub fn position(&self, g: &SkewPoly) -> Option<usize> {
        self.nodes.iter().position(|nd| nd.g == *g)
    }

    pub fn entries(&self) -> Vec<DivisorEntry> {
        self.nodes
            .iter()
            .map(|nd| DivisorEntry {
                degree: nd.g.degree().unwrap_or(0),
                poly: nd.g.clone(),
                cofactor: nd.h.clone(),
                k: nd.k,
                d: nd.d,
                left_divisor: nd.left_divisor,
            })
            .collect()
    }

    /// Graphviz rendering. `Divisors` draws `g -> g'` for covering pairs
    /// `g |_r g'`; `Codes` reverses the edges and labels nodes `[n,k,d]`.
    pub fn to_dot(&self, mode: DotMode) -> String {
        let n = self.modulus.n();
        let mut out = String::new();
        let name = match mode {
            DotMode::Divisors => "divisors",
            DotMode::Codes => "codes",
        };
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box];").unwrap();
        for (i, nd) in self.nodes.iter().enumerate() {
            let label = match mode {
                DotMode::Divisors => nd.g.to_string(),
                DotMode::Codes => {
                    let d = nd.d.map_or("-".to_string(), |d| d.to_string());
                    format!("[{n},{},{d}]\\n{}", nd.k, nd.g)
                }
            };
            writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
        }
        for &(i, j) in &self.edges {
            match mode {
                DotMode::Divisors => writeln!(out, "  n{i} -> n{j};").unwrap(),
                DotMode::Codes => writeln!(out, "  n{j} -> n{i};").unwrap(),
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DotMode {
    Divisors,
    Codes,
}

/// JSON row for one divisor.
#[derive(Clone, Debug, Serialize)]
pub struct DivisorEntry {
    pub degree: usize,
    pub poly: SkewPoly,
    pub cofactor: SkewPoly,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub left_divisor: bool,
}

/// The image of `lat` under `δ_a`, as a lattice over `x^n - a^{-1}`, with a
/// report on edge reversal, the duality of the codes at each node, and
/// agreement with a direct enumeration for `a^{-1}` (when within `budget`).
pub fn dual_lattice(lat: &DivisorLattice, budget: u128) -> Result<(DivisorLattice, Report)> {
    let m = &lat.modulus;
    let f = m.field();
    let md = m.with_a(f.inv(m.a())?)?;
    let images: Vec<SkewPoly> = lat.nodes.iter().map(|nd| dual_generator(m, &nd.g)).collect::<Result<_>>()?;
    let mut facs: Vec<Factorization> = images
        .iter()
        .map(|g| {
            let h = md.poly().right_divmod(g).expect("nonzero").0;
            Factorization { g: g.clone(), h, left_divisor: g.left_divides(&md.poly()) }
        })
        .collect();
    facs.sort_by(|x, y| x.g.canonical_cmp(&y.g));
    let dual = build_lattice(&md, &facs, None)?;
    let mut rep = Report::new("dual lattice");
    let idx: Vec<usize> = images.iter().map(|g| dual.position(g).expect("image")).collect();
    let distinct: BTreeSet<usize> = idx.iter().copied().collect();
    rep.record("delta is injective", distinct.len() == idx.len(), Vec::new);
    let reversed = lat.nodes.len() == dual.nodes.len()
        && (0..lat.nodes.len()).all(|i| (0..lat.nodes.len()).all(|j| lat.order[i][j] == dual.order[idx[j]][idx[i]]));
    rep.record("g |_r g' iff delta(g') |_r delta(g)", reversed, Vec::new);
    let mut bad = Vec::new();
    for (nd, img) in lat.nodes.iter().zip(&images) {
        let c = CodeHandle::from_generator(m, &nd.g)?;
        let cd = CodeHandle::from_generator(&md, img)?;
        let perp = c.generator_matrix().right_kernel();
        let ok = if cd.k() == 0 || perp.rows() == 0 {
            cd.k() == perp.rows()
        } else {
            cd.basis().row_space_equal(&perp)
        };
        if !ok {
            bad.push(nd.g.to_string());
        }
    }
    rep.record("code of delta(g) is the dual of the code of g", bad.is_empty(), || {
        vec![("g".into(), bad.join(", "))]
    });
    match enumerate_right_divisors(&md, budget) {
        Ok(direct) => {
            let same = direct.len() == dual.nodes.len() && direct.iter().zip(&dual.nodes).all(|(x, y)| x.g == y.g);
            rep.record("image equals the divisors of x^n - a^-1", same, || {
                vec![("direct count".into(), direct.len().to_string())]
            });
        }
        Err(_) => rep.skip("image equals the divisors of x^n - a^-1", "over the search budget"),
    }
    Ok((dual, rep))
}

/// Which orderings of `factors` multiply to `x^n - a`.
#[derive(Clone, Debug)]
pub struct ProbeResult {
    /// Each permutation of factor indices with whether its product is `x^n - a`.
    pub orders: Vec<(Vec<usize>, bool)>,
    pub two_sided: Vec<bool>,
}

impl ProbeResult {
    pub fn holds(&self, order: &[usize]) -> Option<bool> {
        self.orders.iter().find(|(o, _)| o == order).map(|(_, b)| *b)
    }
}

/// Tries every ordering of a factorization of `x^n - a`.
pub fn noncommutation_probe(m: &ModulusSpec, factors: &[SkewPoly]) -> Result<ProbeResult> {
    let product = |order: &[usize]| order.iter().fold(m.ring().one(), |acc, &i| &acc * &factors[i]);
    let ident: Vec<usize> = (0..factors.len()).collect();
    let p = product(&ident);
    if p != m.poly() {
        return Err(Error::NotFactorization { product: p.to_string(), expected: m.poly().to_string() });
    }
    let orders = permutations(factors.len())
        .into_iter()
        .map(|o| {
            let ok = product(&o) == m.poly();
            (o, ok)
        })
        .collect();
    Ok(ProbeResult { orders, two_sided: factors.iter().map(SkewPoly::is_twosided).collect() })
}

/// All permutations of `0..len` in lexicographic order.
fn permutations(len: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..len).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..len).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..len).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
