mod common;

use proptest::prelude::*;
use skewcirc::circulant::{circulant_matrix, prod_formula_check};
use skewcirc::codes::{skew_shift, CodeHandle};
use skewcirc::quotient::ModulusSpec;
use skewcirc::{Gf, RingExt, SkewPoly};

const QS: [u32; 5] = [4, 8, 9, 16, 25];

/// A field size, a Frobenius exponent and raw coefficient values.
#[derive(Clone, Debug)]
struct Setup {
    q: u32,
    s: i64,
    polys: Vec<Vec<u32>>,
}

fn setup(count: usize, max_len: usize) -> impl Strategy<Value = Setup> {
    (0..QS.len(), 0i64..4).prop_flat_map(move |(i, s)| {
        let q = QS[i];
        prop::collection::vec(prop::collection::vec(0..q, 1..=max_len), count)
            .prop_map(move |polys| Setup { q, s, polys })
    })
}

impl Setup {
    fn ring(&self) -> std::sync::Arc<skewcirc::SkewRing> {
        common::ring(self.q, self.s)
    }

    fn polys(&self) -> Vec<SkewPoly> {
        let r = self.ring();
        let f = r.field().clone();
        self.polys.iter().map(|v| r.poly(v.iter().map(|&c| f.element(c).unwrap()).collect())).collect()
    }

    fn nonzero(&self, v: u32) -> Gf {
        let f = self.ring().field().clone();
        f.element(1 + v % (f.size() - 1)).unwrap()
    }
}

fn modulus(st: &Setup, n: usize, a: u32) -> ModulusSpec {
    ModulusSpec::new(st.ring(), n, st.nonzero(a)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms(st in setup(3, 7)) {
        let p = st.polys();
        let (f, g, h) = (&p[0], &p[1], &p[2]);
        prop_assert_eq!(&(f * g) * h, f * &(g * h));
        prop_assert_eq!(f * &(g + h), &(f * g) + &(f * h));
        prop_assert_eq!(&(f + g) * h, &(f * h) + &(g * h));
    }

    #[test]
    fn division(st in setup(2, 9)) {
        let p = st.polys();
        let (f, g) = (&p[0], &p[1]);
        prop_assume!(!g.is_zero());
        let (s, r) = f.right_divmod(g).unwrap();
        prop_assert_eq!(&(&s * g) + &r, f.clone());
        prop_assert!(r.deg() < g.deg());
        let (s, r) = f.left_divmod(g).unwrap();
        prop_assert_eq!(&(g * &s) + &r, f.clone());
        prop_assert!(r.deg() < g.deg());
    }

    #[test]
    fn gcrd_and_lclm(st in setup(3, 5)) {
        let p = st.polys();
        prop_assume!(!p[0].is_zero() && !p[1].is_zero() && !p[2].is_zero());
        // a shared right factor makes the gcrd nontrivial
        let (f, g) = (&p[0] * &p[2], &p[1] * &p[2]);
        let res = f.gcrd(&g).unwrap();
        prop_assert!(res.d.is_monic());
        prop_assert!(res.d.right_divides(&f) && res.d.right_divides(&g));
        prop_assert!(p[2].right_divides(&res.d));
        prop_assert_eq!(&(&res.u * &f) + &(&res.v * &g), res.d.clone());
        let l = f.lclm(&g).unwrap();
        prop_assert!(f.right_divides(&l) && g.right_divides(&l));
        prop_assert_eq!(res.d.degree().unwrap() + l.degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
    }

    #[test]
    fn reciprocals(st in setup(2, 7)) {
        let p = st.polys();
        let (f, g) = (&p[0], &p[1]);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (kf, kg) = (f.degree().unwrap() as i64, g.degree().unwrap() as i64);
        prop_assert_eq!((f * g).rho_l(), &g.rho_l().theta(kf) * &f.rho_l());
        prop_assert_eq!((f * g).rho_r(), &g.rho_r() * &f.rho_r().theta(-kg));
        if !f.constant_term().is_zero() {
            prop_assert_eq!(f.rho_l().rho_r(), f.clone());
            prop_assert_eq!(f.rho_l().rho_l(), f.theta(kf));
        }
    }

    #[test]
    fn cosets_and_circulants(st in setup(2, 12), n in 1usize..6, a in 0u32..64, word in prop::collection::vec(0u32..64, 5)) {
        let m = modulus(&st, n, a);
        let p = st.polys();
        let f = &p[0];
        let fr = m.reduce(f);
        prop_assert_eq!(fr.shift(), m.reduce(&(&m.ring().x() * f)));
        let field = m.field().clone();
        let u: Vec<Gf> = word.iter().take(n).map(|&c| field.element(c % field.size()).unwrap()).collect();
        let u = if u.len() < n { vec![field.zero(); n] } else { u };
        let lhs = m.pa(&circulant_matrix(&m, f).vec_mul(&u).unwrap()).unwrap();
        prop_assert_eq!(lhs, m.reduce(&(m.pa(&u).unwrap().rep() * f)));
        let sum = circulant_matrix(&m, f).add(&circulant_matrix(&m, &p[1])).unwrap();
        prop_assert_eq!(circulant_matrix(&m, &(f + &p[1])), sum);
    }

    #[test]
    fn product_formula_for_divisors(st in setup(2, 8), n in 1usize..6, a in 0u32..64) {
        let m = modulus(&st, n, a);
        let p = st.polys();
        prop_assume!(!p[1].is_zero());
        let g = m.canonical_generator(&p[1]).unwrap();
        prop_assert!(g.right_divides(&m.poly()));
        let rep = prod_formula_check(&m, &p[0], &g);
        prop_assert!(rep.all_passed(), "{}", rep);
    }

    #[test]
    fn codes_and_duals(st in setup(2, 8), n in 1usize..6, a in 0u32..64) {
        let m = modulus(&st, n, a);
        let p = st.polys();
        prop_assume!(!p[0].is_zero());
        let g = m.canonical_generator(&p[0]).unwrap();
        let code = CodeHandle::from_generator(&m, &g).unwrap();
        let dual = code.dual().unwrap();
        prop_assert_eq!(code.k() + dual.k(), n);
        let back = dual.dual().unwrap();
        prop_assert_eq!(back.g(), &g);
        prop_assert!(code.generator_matrix().mul(&dual.generator_matrix().transpose()).unwrap().is_zero());
        // codewords are closed under the twisted shift and have zero syndrome
        let word = m.reduce(&(&p[1] * &g)).va();
        prop_assert!(code.contains(&word).unwrap());
        prop_assert!(code.contains(&skew_shift(&m, &word).unwrap()).unwrap());
        prop_assert!(code.syndrome(&word).unwrap().is_zero());
        let other = m.reduce(&p[1]).va();
        prop_assert_eq!(code.contains(&other).unwrap(), code.syndrome(&other).unwrap().is_zero());
    }

    #[test]
    fn scale_equivalence_preserves_weights(st in setup(1, 6), n in 1usize..5, a in 0u32..64, b in 0u32..64) {
        let m = modulus(&st, n, a);
        let p = st.polys();
        prop_assume!(!p[0].is_zero());
        let g = m.canonical_generator(&p[0]).unwrap();
        let code = CodeHandle::from_generator(&m, &g).unwrap();
        let rep = code.scale_equivalence_check(st.nonzero(b), 1 << 16).unwrap();
        prop_assert!(rep.all_passed(), "{}", rep);
    }
}
