//! Deterministic enumeration of words, in canonical order.

use super::{Alphabet, Letter, Subspace, Word};

/// All normalized words of length at most `max_len`.
pub fn all_words(alphabet: Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::unit(alphabet)];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for letters in &layer {
            for &l in alphabet.letters() {
                let cancels = matches!(
                    (letters.last(), l),
                    (Some(Letter::P), Letter::D) | (Some(Letter::D), Letter::P)
                );
                if cancels {
                    continue;
                }
                let mut grown = letters.clone();
                grown.push(l);
                next.push(grown);
            }
        }
        out.extend(
            next.iter()
                .map(|ls| Word::from_normalized(alphabet, ls.clone())),
        );
        layer = next;
    }
    out.sort();
    out
}

/// Words of a subspace with at most `max_len` letters.
pub fn words_in(space: Subspace, max_len: usize) -> Vec<Word> {
    all_words(space.alphabet(), max_len)
        .into_iter()
        .filter(|w| w.in_space(space))
        .collect()
}

/// Classical words of a subspace with weight at most `max_weight`.
pub fn classical_words(space: Subspace, max_weight: usize) -> Vec<Word> {
    debug_assert_eq!(space.alphabet(), Alphabet::H2);
    words_in(space, max_weight)
}

/// `{p,y}` words of a subspace with at most `max_p` letters `p` and at most
/// `max_y` letters `y`. The family is stable under swapping the roles of
/// `p` and `y` when the bounds agree.
pub fn py_words(space: Subspace, max_p: usize, max_y: usize) -> Vec<Word> {
    debug_assert_eq!(space.alphabet(), Alphabet::PY);
    all_words(Alphabet::PY, max_p + max_y)
        .into_iter()
        .filter(|w| {
            let ps = w.letters().iter().filter(|&&l| l == Letter::P).count();
            ps <= max_p && w.len() - ps <= max_y && w.in_space(space)
        })
        .collect()
}

/// `{p,y}` words of a subspace with at most `max_blocks` z-letters, each
/// block `p^k y` having `k <= max_part`.
pub fn z_words(space: Subspace, max_blocks: usize, max_part: usize) -> Vec<Word> {
    let mut out = vec![Word::unit(Alphabet::PY)];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_blocks {
        let mut next = Vec::new();
        for letters in &layer {
            for k in 0..=max_part {
                let mut grown = letters.clone();
                grown.extend(std::iter::repeat_n(Letter::P, k));
                grown.push(Letter::Y);
                next.push(grown);
            }
        }
        out.extend(
            next.iter()
                .map(|ls| Word::from_normalized(Alphabet::PY, ls.clone())),
        );
        layer = next;
    }
    out.retain(|w| w.in_space(space));
    out.sort();
    out
}

/// Ordered pairs `(u, v)` from `words` whose lengths sum to at most `max_total`.
pub fn pairs_up_to(words: &[Word], max_total: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for u in words {
        for v in words {
            if u.len() + v.len() <= max_total {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_words(Alphabet::H2, 3).len(), 1 + 2 + 4 + 8);
        assert_eq!(all_words(Alphabet::PDY, 2).len(), 1 + 3 + 7);
        assert_eq!(words_in(Subspace::SmallH0, 3).len(), 1 + 1 + 2);
        assert_eq!(py_words(Subspace::BigH0, 2, 2).len(), 1 + 1 + 2 + 2);
        assert_eq!(z_words(Subspace::BigH1, 2, 1).len(), 1 + 2 + 4);
    }

    #[test]
    fn canonical_and_unique() {
        let words = all_words(Alphabet::PDY, 4);
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(words, sorted);
    }
}
