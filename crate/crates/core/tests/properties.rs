use mzv_lab::cli::{parse_poly, ExprContext};
use mzv_lab::hopf::{check_axioms, infinitesimal_coproduct, QuasiShuffleHopf, Transferred};
use mzv_lab::linear::{ratio, rational};
use mzv_lab::maps::{
    derivation, ihara_s, ihara_s_inv, map_u, map_u_inv, map_v, map_v_inv, tau, tau_tilde,
    Isomorphism,
};
use mzv_lab::products::{
    ooz_explicit_poly, ooz_quasi_shuffle, quasi_shuffle, quasi_shuffle_lambda, shuffle,
    shuffle_lambda_pdy, shuffle_lambda_py, transferred_product, ProductKind,
};
use mzv_lab::qseries::{rota_baxter_eval_ooz, zeta_ooz, Evaluator, ModelTag, QPoly};
use mzv_lab::words::{block_map, normalize, z_decode, z_encode};
use mzv_lab::{Alphabet, Composition, Letter, Poly, Rational, Subspace, Word};
use proptest::prelude::*;

fn word_of(alphabet: Alphabet, max_len: usize) -> impl Strategy<Value = Word> {
    let letters = alphabet.letters().to_vec();
    prop::collection::vec(prop::sample::select(letters), 0..=max_len)
        .prop_map(move |ls| normalize(&ls, alphabet).unwrap())
}

/// `{p,y}` or `{x0,x1}` word with the given z-parts.
fn z_word(alphabet: Alphabet, parts: Vec<i64>) -> Word {
    z_encode(&Composition::new(parts), alphabet).unwrap()
}

/// Nonempty words of `H0` from compositions with leading part ≥ 1.
fn h0_word(max_blocks: usize, max_part: i64) -> impl Strategy<Value = Word> {
    (
        1..=max_part,
        prop::collection::vec(0..=max_part, 0..max_blocks),
    )
        .prop_map(|(first, rest)| {
            let mut parts = vec![first];
            parts.extend(rest);
            z_word(Alphabet::PY, parts)
        })
}

/// Words of `H1` (empty or ending in `y`).
fn h1_word(max_blocks: usize, max_part: i64) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..=max_part, 0..=max_blocks)
        .prop_map(|parts| z_word(Alphabet::PY, parts))
}

fn classical_h1(max_blocks: usize, max_part: i64) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=max_part, 0..=max_blocks)
        .prop_map(|parts| z_word(Alphabet::H2, parts))
}

fn poly_of(alphabet: Alphabet, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((word_of(alphabet, max_len), -5i64..=5, 1i64..=4), 0..5).prop_map(
        move |terms| {
            Poly::from_terms(
                alphabet,
                terms.into_iter().map(|(w, n, d)| (w, ratio(n, d))),
            )
        },
    )
}

fn lambda() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![rational(1), rational(-1), rational(2), ratio(-1, 3)])
}

fn p(w: &Word) -> Poly {
    Poly::word(w.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shuffle_is_commutative_and_associative(
        u in word_of(Alphabet::H2, 4), v in word_of(Alphabet::H2, 4), w in word_of(Alphabet::H2, 3)
    ) {
        let (pu, pv, pw) = (p(&u), p(&v), p(&w));
        prop_assert_eq!(shuffle(&pu, &pv).unwrap(), shuffle(&pv, &pu).unwrap());
        prop_assert_eq!(
            shuffle(&shuffle(&pu, &pv).unwrap(), &pw).unwrap(),
            shuffle(&pu, &shuffle(&pv, &pw).unwrap()).unwrap()
        );
        prop_assert_eq!(shuffle(&Poly::one(Alphabet::H2), &pu).unwrap(), pu);
    }

    #[test]
    fn quasi_shuffles_are_commutative_and_associative(
        u in h1_word(3, 3), v in h1_word(3, 3), w in h1_word(2, 3), l in lambda()
    ) {
        let (pu, pv, pw) = (p(&u), p(&v), p(&w));
        let m = |a: &Poly, b: &Poly| quasi_shuffle_lambda(a, b, &l).unwrap();
        prop_assert_eq!(m(&pu, &pv), m(&pv, &pu));
        prop_assert_eq!(m(&m(&pu, &pv), &pw), m(&pu, &m(&pv, &pw)));
        prop_assert_eq!(m(&Poly::one(Alphabet::PY), &pu), pu);
    }

    #[test]
    fn classical_quasi_shuffle_is_associative(
        u in classical_h1(3, 3), v in classical_h1(3, 3), w in classical_h1(2, 3)
    ) {
        let (pu, pv, pw) = (p(&u), p(&v), p(&w));
        let m = |a: &Poly, b: &Poly| quasi_shuffle(a, b).unwrap();
        prop_assert_eq!(m(&pu, &pv), m(&pv, &pu));
        prop_assert_eq!(m(&m(&pu, &pv), &pw), m(&pu, &m(&pv, &pw)));
    }

    #[test]
    fn lambda_shuffles_are_commutative_and_associative(
        u in word_of(Alphabet::PY, 4), v in word_of(Alphabet::PY, 3), w in word_of(Alphabet::PY, 3),
        a in word_of(Alphabet::PDY, 4), b in word_of(Alphabet::PDY, 3), c in word_of(Alphabet::PDY, 3),
        l in lambda()
    ) {
        let m = |x: &Poly, y: &Poly| shuffle_lambda_py(x, y, &l).unwrap();
        let (pu, pv, pw) = (p(&u), p(&v), p(&w));
        prop_assert_eq!(m(&pu, &pv), m(&pv, &pu));
        prop_assert_eq!(m(&m(&pu, &pv), &pw), m(&pu, &m(&pv, &pw)));
        let n = |x: &Poly, y: &Poly| shuffle_lambda_pdy(x, y, &l).unwrap();
        let (pa, pb, pc) = (p(&a), p(&b), p(&c));
        prop_assert_eq!(n(&pa, &pb), n(&pb, &pa));
        prop_assert_eq!(n(&n(&pa, &pb), &pc), n(&pa, &n(&pb, &pc)));
        prop_assert_eq!(n(&Poly::one(Alphabet::PDY), &pa), pa);
    }

    #[test]
    fn dualities_are_involutive_anti_automorphisms(
        u in word_of(Alphabet::H2, 6), v in word_of(Alphabet::H2, 6),
        s in word_of(Alphabet::PY, 6), t in word_of(Alphabet::PY, 6)
    ) {
        prop_assert_eq!(tau(&tau(&u).unwrap()).unwrap(), u.clone());
        prop_assert_eq!(tau(&u.concat(&v)).unwrap(), tau(&v).unwrap().concat(&tau(&u).unwrap()));
        prop_assert_eq!(tau(&u).unwrap().weight(), u.weight());
        prop_assert_eq!(tau_tilde(&tau_tilde(&s).unwrap()).unwrap(), s.clone());
        prop_assert_eq!(
            tau_tilde(&s.concat(&t)).unwrap(),
            tau_tilde(&t).unwrap().concat(&tau_tilde(&s).unwrap())
        );
    }

    #[test]
    fn z_codec_round_trips(parts in prop::collection::vec(0i64..6, 0..6), classical in prop::collection::vec(1i64..6, 0..6)) {
        let w = z_word(Alphabet::PY, parts.clone());
        prop_assert_eq!(z_decode(&w).unwrap().0, parts.clone());
        prop_assert_eq!(w.weight(), parts.iter().sum::<i64>());
        prop_assert_eq!(w.depth(), parts.len());
        let h = z_word(Alphabet::H2, classical.clone());
        prop_assert_eq!(z_decode(&h).unwrap().0, classical.clone());
        let py = z_word(Alphabet::PY, classical.clone());
        prop_assert_eq!(block_map(&py).unwrap(), h);
    }

    #[test]
    fn cancelling_pairs_do_not_change_a_word(w in word_of(Alphabet::PDY, 6), at in 0usize..7, dp in any::<bool>()) {
        let at = at.min(w.len());
        let mut raw = w.letters()[..at].to_vec();
        raw.extend(if dp { [Letter::D, Letter::P] } else { [Letter::P, Letter::D] });
        raw.extend_from_slice(&w.letters()[at..]);
        prop_assert_eq!(normalize(&raw, Alphabet::PDY).unwrap(), w);
    }

    #[test]
    fn square_lambda_is_lambda_shuffle(u in h0_word(3, 2), v in h0_word(3, 2), sign in prop::bool::ANY) {
        let l = if sign { rational(1) } else { rational(-1) };
        let base = ProductKind::QuasiShuffleLambda(l.clone());
        let lhs = transferred_product(&base, &Isomorphism::tau_tilde(), &p(&u), &p(&v)).unwrap();
        prop_assert_eq!(lhs, shuffle_lambda_py(&p(&u), &p(&v), &l).unwrap());
    }

    #[test]
    fn binomial_and_ihara_maps_invert(w in h0_word(4, 3), c in classical_h1(4, 4)) {
        let pw = p(&w);
        prop_assert_eq!(map_v_inv(&map_v(&pw).unwrap()).unwrap(), pw.clone());
        prop_assert_eq!(map_v(&map_v_inv(&pw).unwrap()).unwrap(), pw.clone());
        prop_assert_eq!(ihara_s(&ihara_s_inv(&pw).unwrap()).unwrap(), pw.clone());
        if c.first() == Some(Letter::X0) {
            let pc = p(&c);
            prop_assert_eq!(map_u_inv(&map_u(&pc).unwrap()).unwrap(), pc.clone());
            prop_assert_eq!(map_u(&map_u_inv(&pc).unwrap()).unwrap(), pc);
        }
    }

    #[test]
    fn derivations_raise_weight(c in classical_h1(4, 3), n in 1i64..4) {
        let d = derivation(&p(&c), n).unwrap();
        prop_assert!(d.words().all(|w| w.weight() == c.weight() + n));
    }

    #[test]
    fn infinitesimal_coproduct_is_a_derivation_rule(u in word_of(Alphabet::PDY, 4), v in word_of(Alphabet::PDY, 4)) {
        let uv = u.concat(&v);
        let mut rhs = infinitesimal_coproduct(&v).unwrap().left_concat(&u);
        rhs.add_scaled(&infinitesimal_coproduct(&u).unwrap().right_concat(&v), &rational(1));
        rhs.add_term(u.clone(), v.clone(), rational(-1));
        prop_assert_eq!(infinitesimal_coproduct(&uv).unwrap(), rhs);
    }

    #[test]
    fn explicit_ooz_product_matches_recursion(u in h0_word(3, 3), v in h0_word(3, 3)) {
        prop_assert_eq!(
            ooz_explicit_poly(&p(&u), &p(&v)).unwrap(),
            ooz_quasi_shuffle(&p(&u), &p(&v)).unwrap()
        );
    }

    #[test]
    fn q_models_are_characters(u in h0_word(2, 2), v in h0_word(2, 2)) {
        let ev = Evaluator::new(12).unwrap();
        let (pu, pv) = (p(&u), p(&v));
        let prod = |m: ModelTag| &*ev.eval_word(m, &u).unwrap() * &*ev.eval_word(m, &v).unwrap();
        let one = rational(1);
        prop_assert_eq!(ev.eval(ModelTag::SZ, &quasi_shuffle_lambda(&pu, &pv, &one).unwrap()).unwrap(), prod(ModelTag::SZ));
        prop_assert_eq!(ev.eval(ModelTag::SZ, &shuffle_lambda_py(&pu, &pv, &one).unwrap()).unwrap(), prod(ModelTag::SZ));
        prop_assert_eq!(ev.eval(ModelTag::OOZ, &ooz_quasi_shuffle(&pu, &pv).unwrap()).unwrap(), prod(ModelTag::OOZ));
        prop_assert_eq!(
            ev.eval(ModelTag::SZstar, &quasi_shuffle_lambda(&pu, &pv, &rational(-1)).unwrap()).unwrap(),
            prod(ModelTag::SZstar)
        );
    }

    #[test]
    fn rota_baxter_agrees_with_nested_sums(parts in prop::collection::vec(0i64..4, 1..4)) {
        let c = Composition::new(parts);
        prop_assert_eq!(rota_baxter_eval_ooz(&c, 10).unwrap(), zeta_ooz(&c, 10).unwrap());
    }

    #[test]
    fn truncated_series_form_a_commutative_ring(
        a in prop::collection::vec(-9i64..9, 1..8), b in prop::collection::vec(-9i64..9, 1..8), c in prop::collection::vec(-9i64..9, 1..8)
    ) {
        let q = |v: &[i64]| QPoly::new(7, v.iter().map(|&x| rational(x))).unwrap();
        let (a, b, c) = (q(&a), q(&b), q(&c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(QPoly::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn format_then_parse_is_identity(
        h in poly_of(Alphabet::H2, 5), y in poly_of(Alphabet::PY, 5), d in poly_of(Alphabet::PDY, 5)
    ) {
        for poly in [h, y, d] {
            let ctx = ExprContext { alphabet: Some(poly.alphabet()), ..ExprContext::default() };
            prop_assert_eq!(parse_poly(&poly.to_string(), &ctx).unwrap(), poly.clone());
            prop_assert_eq!(parse_poly(&poly.display_z(), &ctx).unwrap(), poly);
        }
    }

    #[test]
    fn hopf_axioms_on_random_words(w in h1_word(3, 2), l in lambda()) {
        let h = QuasiShuffleHopf::new(Alphabet::PY, l.clone()).unwrap();
        prop_assert!(check_axioms(&h, std::slice::from_ref(&w)).unwrap().is_empty());
        let t = Transferred::new(Box::new(QuasiShuffleHopf::new(Alphabet::PY, l).unwrap()), Isomorphism::tau_tilde()).unwrap();
        let dual = tau_tilde(&w).unwrap();
        prop_assert!(check_axioms(&t, &[dual]).unwrap().is_empty());
    }
}

#[test]
fn convergent_words_stay_convergent_under_products() {
    let u = Word::parse(Alphabet::PY, "ppyy").unwrap();
    let v = Word::parse(Alphabet::PY, "pypy").unwrap();
    let prod = shuffle_lambda_py(&p(&u), &p(&v), &rational(1)).unwrap();
    assert!(prod.all_in(Subspace::BigH0));
}
