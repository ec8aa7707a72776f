use proptest::prelude::*;

use starfield::symalg::{
    commutator, contract, format_element, lemma1_check, parse_element, poisson, poisson_correspondence,
    project_pi, star, star_iterated, sym_mul, AlgebraElement, GaussRational, HPoly, ModeSpace, Monomial,
    PairingForm, Scalar,
};
use starfield::testkit::{
    injection_oracle, random_complex_pairing, random_element, random_element_with, random_monomial,
    random_pairing, ElementShape, RandomStream,
};

type El = AlgebraElement<GaussRational>;

const N: usize = 4;

fn q(p: i64, d: i64) -> GaussRational {
    GaussRational::ratio(p, d)
}

fn gen(i: usize) -> El {
    AlgebraElement::generator(N, i)
}

fn mono(e: &[u32]) -> El {
    AlgebraElement::term(Monomial::from_exponents(e.to_vec()), HPoly::constant(GaussRational::one()))
}

fn sample(seed: u64, deg: u32, hdeg: u32) -> (El, El, El, PairingForm<GaussRational>) {
    let mut s = RandomStream::new(seed);
    let a = random_element(&mut s, N, deg, hdeg);
    let b = random_element(&mut s, N, deg, hdeg);
    let c = random_element(&mut s, N, deg, hdeg);
    (a, b, c, random_pairing(&mut s, N))
}

fn pure_degree(a: &El) -> Option<u32> {
    let mut degs = a.terms().map(|(m, _)| m.degree());
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws(seed in any::<u64>()) {
        let mut s = RandomStream::new(seed);
        let (x, y) = (s.small_gaussian(), s.small_gaussian());
        prop_assert_eq!(x.clone() + y.clone() - y.clone(), x.clone());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
        let inv = x.inv().unwrap();
        prop_assert_eq!(x * inv, GaussRational::one());
        prop_assert!(GaussRational::zero().inv().is_none());
    }

    #[test]
    fn hpoly_ring_laws(seed in any::<u64>()) {
        let mut s = RandomStream::new(seed);
        let poly = |s: &mut RandomStream| {
            let mut p = HPoly::zero();
            for k in 0..3 {
                p.add_term(k, s.small_rational());
            }
            p
        };
        let (a, b, c) = (poly(&mut s), poly(&mut s), poly(&mut s));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        let h = s.small_rational();
        prop_assert_eq!(a.mul(&b).evaluate(&h), a.evaluate(&h) * b.evaluate(&h));
    }

    #[test]
    fn sum_and_symmetric_product_laws(seed in any::<u64>()) {
        let (a, b, c, _) = sample(seed, 3, 1);
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(sym_mul(&a, &b).unwrap(), sym_mul(&b, &a).unwrap());
        prop_assert_eq!(
            sym_mul(&sym_mul(&a, &b).unwrap(), &c).unwrap(),
            sym_mul(&a, &sym_mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn unit_and_oracle(seed in any::<u64>()) {
        let (a, b, _, form) = sample(seed, 3, 1);
        let one = AlgebraElement::one(N);
        prop_assert_eq!(star(&form, &one, &a).unwrap(), a.clone());
        prop_assert_eq!(star(&form, &a, &one).unwrap(), a.clone());
        prop_assert_eq!(star(&form, &a, &b).unwrap(), star_iterated(&form, &a, &b).unwrap());
    }

    #[test]
    fn injection_oracle_matches_closed_form(seed in any::<u64>()) {
        let mut s = RandomStream::new(seed);
        let form = random_complex_pairing(&mut s, N);
        let ma = random_monomial(&mut s, N, 3, None);
        let mb = random_monomial(&mut s, N, 3, None);
        let a = AlgebraElement::term(ma.clone(), HPoly::constant(GaussRational::one()));
        let b = AlgebraElement::term(mb.clone(), HPoly::constant(GaussRational::one()));
        prop_assert_eq!(injection_oracle(&form, &ma, &mb).unwrap(), star(&form, &a, &b).unwrap());
    }

    #[test]
    fn projection_is_a_morphism(seed in any::<u64>()) {
        let (a, b, _, form) = sample(seed, 3, 2);
        prop_assert_eq!(
            project_pi(&star(&form, &a, &b).unwrap()),
            sym_mul(&project_pi(&a), &project_pi(&b)).unwrap()
        );
    }

    #[test]
    fn grading(seed in any::<u64>()) {
        let mut s = RandomStream::new(seed);
        let form = random_pairing(&mut s, N);
        let ma = random_monomial(&mut s, N, 4, None);
        let mb = random_monomial(&mut s, N, 4, None);
        let (k, l) = (ma.degree(), mb.degree());
        let a = AlgebraElement::term(ma, HPoly::constant(s.small_rational()));
        let b = AlgebraElement::term(mb, HPoly::constant(s.small_rational()));
        let prod = star(&form, &a, &b).unwrap();
        for p in 0..=k.min(l) + 2 {
            let part = prod.hbar_coeff(p);
            if p > k.min(l) {
                prop_assert!(part.is_zero());
            } else if !part.is_zero() {
                prop_assert_eq!(pure_degree(&part), Some(k + l - 2 * p));
            }
        }
        prop_assert!(prod.hbar_degree().unwrap_or(0) <= k.min(l));
    }

    #[test]
    fn polynomial_closure(seed in any::<u64>()) {
        let (a, b, _, form) = sample(seed, 3, 2);
        let prod = star(&form, &a, &b).unwrap();
        if let (Some(ha), Some(hb), Some(ka), Some(kb)) = (a.hbar_degree(), b.hbar_degree(), a.degree(), b.degree()) {
            prop_assert!(prod.hbar_degree().unwrap_or(0) <= ka.min(kb) + ha + hb);
        }
    }

    #[test]
    fn poisson_correspondence_and_leibniz(seed in any::<u64>()) {
        let (a, b, c, form) = sample(seed, 3, 0);
        let bracket = poisson(&form, &a, &b).unwrap();
        prop_assert_eq!(poisson_correspondence(&form, &a, &b).unwrap(), bracket.clone());
        let comm = commutator(&form, &a, &b).unwrap();
        prop_assert!(comm.hbar_coeff(0).is_zero());
        prop_assert_eq!(comm.hbar_coeff(1), bracket);
        let lhs = poisson(&form, &a, &sym_mul(&b, &c).unwrap()).unwrap();
        let rhs = sym_mul(&poisson(&form, &a, &b).unwrap(), &c)
            .unwrap()
            .add(&sym_mul(&b, &poisson(&form, &a, &c).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi(seed in any::<u64>()) {
        let (a, b, c, form) = sample(seed, 3, 0);
        let br = |x: &El, y: &El| poisson(&form, x, y).unwrap();
        let total = br(&a, &br(&b, &c)).add(&br(&b, &br(&c, &a))).unwrap().add(&br(&c, &br(&a, &b))).unwrap();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn contraction_distribution(seed in any::<u64>(), k in 0usize..3) {
        let mut s = RandomStream::new(seed);
        let a = random_element(&mut s, N, 3, 1);
        let b = random_element(&mut s, N, 3, 1);
        let z: Vec<usize> = (0..k).map(|_| rand::Rng::gen_range(&mut s, 0..N)).collect();
        prop_assert!(lemma1_check(k, &z, &a, &b));
    }

    #[test]
    fn contractions_commute(seed in any::<u64>()) {
        let (a, _, _, _) = sample(seed, 4, 1);
        for r in 0..N {
            for t in 0..N {
                let rt = contract(r, &contract(t, &a).unwrap()).unwrap();
                let tr = contract(t, &contract(r, &a).unwrap()).unwrap();
                prop_assert_eq!(rt, tr);
            }
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let space = ModeSpace::new(["u", "v", "w", "x"]).unwrap();
        let mut s = RandomStream::new(seed);
        let a = random_element_with(&mut s, &ElementShape::new(N, 4, 2).complex());
        let text = format_element(&a, &space);
        let back: El = parse_element(&text, &space).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(format_element(&back, &space), text);
    }
}

#[test]
fn symmetric_product_examples() {
    let (u, v) = (gen(0), gen(1));
    assert_eq!(sym_mul(&u, &v).unwrap(), mono(&[1, 1, 0, 0]));
    assert_eq!(sym_mul(&u, &u).unwrap(), mono(&[2, 0, 0, 0]));
    let u_plus_h = u.add(&AlgebraElement::hbar(N)).unwrap();
    let expect = mono(&[1, 1, 0, 0]).add(&v.shift_hbar(1)).unwrap();
    assert_eq!(sym_mul(&u_plus_h, &v).unwrap(), expect);
    assert!(sym_mul(&u, &AlgebraElement::generator(3, 0)).is_err());
}

#[test]
fn contraction_examples() {
    assert_eq!(contract(0, &mono(&[2, 1, 0, 0])).unwrap(), mono(&[1, 1, 0, 0]).scale(&q(2, 1)));
    assert!(contract(0, &AlgebraElement::<GaussRational>::one(N)).unwrap().is_zero());
    assert!(contract(0, &mono(&[0, 3, 0, 0])).unwrap().is_zero());
    assert!(contract(N, &gen(0)).is_err());
}

#[test]
fn star_examples() {
    let form = PairingForm::from_fn("b", N, |r, s| q(r as i64 + 2 * s as i64 + 1, 3));
    let b_uv = q(3, 3);
    let b_vu = q(2, 3);
    let (u, v) = (gen(0), gen(1));
    let uv = mono(&[1, 1, 0, 0]);
    let hb = |c: GaussRational, m: El| m.scale(&c).shift_hbar(1);

    assert_eq!(star(&form, &u, &v).unwrap(), uv.add(&hb(b_uv.clone(), AlgebraElement::one(N))).unwrap());

    let u2 = mono(&[2, 0, 0, 0]);
    let expect = mono(&[2, 1, 0, 0]).add(&hb(q(2, 1) * b_uv.clone(), u.clone())).unwrap();
    assert_eq!(star(&form, &u2, &v).unwrap(), expect);

    let v2 = mono(&[0, 2, 0, 0]);
    let p2 = star_iterated(&form, &u2, &v2).unwrap().hbar_coeff(2);
    assert_eq!(p2, AlgebraElement::constant(N, q(2, 1) * b_uv.clone() * b_uv.clone()));

    let comm = commutator(&form, &u, &v).unwrap();
    assert_eq!(comm, hb(b_uv.clone() - b_vu.clone(), AlgebraElement::one(N)));
    assert!(commutator(&form, &u2, &u2).unwrap().is_zero());
    assert_eq!(commutator(&form, &u2, &v).unwrap(), hb(q(2, 1) * (b_uv.clone() - b_vu.clone()), u.clone()));

    assert_eq!(poisson(&form, &u, &v).unwrap(), AlgebraElement::constant(N, b_uv - b_vu));
}

#[test]
fn lemma_examples() {
    let u = gen(0);
    assert!(lemma1_check(0, &[], &u, &gen(1)));
    assert!(lemma1_check(1, &[0], &u, &u));
    assert!(!lemma1_check(1, &[N], &u, &u));
}

#[test]
fn projection_examples() {
    let x = mono(&[1, 1, 0, 0]).add(&AlgebraElement::hbar(N)).unwrap();
    assert_eq!(project_pi(&x), mono(&[1, 1, 0, 0]));
    assert!(project_pi(&AlgebraElement::<GaussRational>::zero(N)).is_zero());
}

#[test]
fn empty_mode_space() {
    let space = ModeSpace::new(Vec::<String>::new()).unwrap();
    assert_eq!(space.dim(), 0);
    let form = PairingForm::<GaussRational>::zero("empty", 0);
    let a = AlgebraElement::constant(0, q(3, 2)).add(&AlgebraElement::hbar(0)).unwrap();
    let b = AlgebraElement::hbar(0).scale(&q(-1, 5));
    let prod = star(&form, &a, &b).unwrap();
    assert_eq!(prod, sym_mul(&a, &b).unwrap());
    assert_eq!(prod, star_iterated(&form, &a, &b).unwrap());
    assert!(commutator(&form, &a, &b).unwrap().is_zero());
    let text = format_element(&prod, &space);
    assert_eq!(parse_element::<GaussRational>(&text, &space).unwrap(), prod);
}

#[test]
fn zero_element() {
    let form = PairingForm::from_fn("b", N, |_, _| q(1, 1));
    let z = AlgebraElement::<GaussRational>::zero(N);
    assert!(star(&form, &z, &gen(0)).unwrap().is_zero());
    assert!(poisson(&form, &gen(1), &z).unwrap().is_zero());
}

#[test]
fn dimension_errors() {
    let form = PairingForm::from_fn("b", N, |_, _| q(1, 1));
    let other = AlgebraElement::<GaussRational>::generator(N + 1, 0);
    assert!(star(&form, &gen(0), &other).is_err());
    assert!(star(&form, &other, &other).is_err());
}
