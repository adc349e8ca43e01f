//! Exhaustive unit, commutativity and associativity checks for every product
//! kind on its natural domain.

use mzv_lab::linear::rational;
use mzv_lab::maps::Isomorphism;
use mzv_lab::products::ProductKind;
use mzv_lab::words::enumerate::{all_words, words_in};
use mzv_lab::{Alphabet, Poly, Subspace, Word};

fn laws(kind: &ProductKind, space: Subspace, max_total: usize) {
    check(kind, &words_in(space, max_total), max_total);
}

fn check(kind: &ProductKind, words: &[Word], max_total: usize) {
    let unit = Poly::one(kind.alphabet());
    let m = |a: &Poly, b: &Poly| {
        kind.multiply(a, b)
            .unwrap_or_else(|e| panic!("{kind}: {a} , {b}: {e}"))
    };
    for u in words {
        let pu = Poly::word(u.clone());
        assert_eq!(m(&unit, &pu), pu, "{kind}: 1·{u}");
        assert_eq!(m(&pu, &unit), pu, "{kind}: {u}·1");
        for v in words.iter().filter(|v| u.len() + v.len() <= max_total) {
            let pv = Poly::word(v.clone());
            let uv = m(&pu, &pv);
            assert_eq!(uv, m(&pv, &pu), "{kind}: {u}·{v}");
            for w in words
                .iter()
                .filter(|w| u.len() + v.len() + w.len() <= max_total)
            {
                let pw = Poly::word(w.clone());
                assert_eq!(m(&uv, &pw), m(&pu, &m(&pv, &pw)), "{kind}: ({u}·{v})·{w}");
            }
        }
    }
}

#[test]
fn classical_products() {
    laws(&ProductKind::Shuffle, Subspace::SmallH1, 7);
    laws(&ProductKind::QuasiShuffle, Subspace::SmallH1, 7);
    laws(&ProductKind::ShuffleStar, Subspace::SmallH1, 7);
    laws(
        &ProductKind::Transferred(Box::new(ProductKind::QuasiShuffle), Isomorphism::tau()),
        Subspace::SmallH0,
        7,
    );
}

#[test]
fn deformed_products() {
    for l in [1, -1, 2] {
        let lambda = rational(l);
        laws(
            &ProductKind::QuasiShuffleLambda(lambda.clone()),
            Subspace::BigH1,
            7,
        );
        laws(
            &ProductKind::ShuffleLambdaPy(lambda.clone()),
            Subspace::BigH1,
            7,
        );
        check(
            &ProductKind::ShuffleLambdaPdy(lambda.clone()),
            &all_words(Alphabet::PDY, 6),
            6,
        );
    }
    for l in [1, -1] {
        laws(
            &ProductKind::Transferred(
                Box::new(ProductKind::QuasiShuffleLambda(rational(l))),
                Isomorphism::tau_tilde(),
            ),
            Subspace::BigH0,
            7,
        );
    }
}

#[test]
fn ooz_products() {
    laws(&ProductKind::OozQuasiShuffle, Subspace::BigH0, 7);
    laws(&ProductKind::OozExplicit, Subspace::BigH0, 7);
    laws(&ProductKind::OozSquare, Subspace::BigH0, 7);
}
