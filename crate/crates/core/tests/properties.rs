use proptest::prelude::*;

use logfano::divisor::{default_m, schubert_boundary};
use logfano::weyl::reflection_along;
use logfano::*;

const TYPES: &[&str] = &["A2", "A3", "B3", "C3", "G2", "D4", "F4", "A1~", "A2~"];

fn gcm_named(name: &str) -> GeneralizedCartanMatrix {
    if name == "H" {
        GeneralizedCartanMatrix::new(&[vec![2, -3], vec![-3, 2]]).unwrap()
    } else {
        GeneralizedCartanMatrix::builtin(name).unwrap()
    }
}

fn any_gcm() -> impl Strategy<Value = GeneralizedCartanMatrix> {
    prop::sample::select([TYPES, &["H"]].concat()).prop_map(gcm_named)
}

fn gcm_and_word(max_len: usize) -> impl Strategy<Value = (GeneralizedCartanMatrix, Word)> {
    any_gcm().prop_flat_map(move |g| {
        let n = g.rank();
        (
            Just(g),
            prop::collection::vec(1..=n, 0..=max_len).prop_map(Word::new),
        )
    })
}

/// `<beta, gamma^vee> = sum_jk n_j m_k A[k][j]`.
fn pairing(g: &GeneralizedCartanMatrix, root: &RootVector, coroot: &CorootVector) -> i64 {
    let n = g.rank();
    let mut s = 0;
    for j in 0..n {
        for k in 0..n {
            s += root.0[j] * coroot.0[k] * g.entry(k, j);
        }
    }
    s
}

fn reduce(g: &GeneralizedCartanMatrix, w: &Word) -> Word {
    canonical_reduced_word(g, &element_of(g, w).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflections_are_involutions(g in any_gcm(), seed in prop::collection::vec(-20i64..20, 8), i in 1usize..=8) {
        let n = g.rank();
        let i = (i - 1) % n + 1;
        let beta = RootVector(seed[..n].to_vec());
        prop_assert_eq!(reflect_root(&g, i, &reflect_root(&g, i, &beta).unwrap()).unwrap(), beta.clone());
        let co = CorootVector(seed[..n].to_vec());
        prop_assert_eq!(reflect_coroot(&g, i, &reflect_coroot(&g, i, &co).unwrap()).unwrap(), co);
    }

    #[test]
    fn pairing_is_reflection_invariant(
        g in any_gcm(),
        a in prop::collection::vec(-9i64..9, 8),
        b in prop::collection::vec(-9i64..9, 8),
        i in 1usize..=8,
    ) {
        let n = g.rank();
        let i = (i - 1) % n + 1;
        let root = RootVector(a[..n].to_vec());
        let coroot = CorootVector(b[..n].to_vec());
        let lhs = pairing(&g, &reflect_root(&g, i, &root).unwrap(), &coroot);
        let rhs = pairing(&g, &root, &reflect_coroot(&g, i, &coroot).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn deleting_a_letter_multiplies_by_the_gamma_reflection((g, word) in gcm_and_word(9)) {
        let w = element_of(&g, &word).unwrap();
        for pos in 1..=word.len() {
            let u = Word::new(word.letters()[pos..].iter().rev().copied().collect::<Vec<_>>());
            let refl = reflection_along(&g, &u, word.letters()[pos - 1]).unwrap();
            prop_assert_eq!(element_of(&g, &word.omit(pos)).unwrap(), w.mul(&refl).unwrap());
        }
    }

    #[test]
    fn length_bounded_by_word_with_equality_iff_reduced((g, word) in gcm_and_word(10)) {
        let l = length(&g, &element_of(&g, &word).unwrap()).unwrap();
        prop_assert!(l <= word.len());
        prop_assert_eq!(l == word.len(), is_reduced(&g, &word).unwrap());
        prop_assert_eq!((word.len() - l) % 2, 0);
    }

    #[test]
    fn exchange_on_appending((g, word) in gcm_and_word(8), letter in 1usize..=8) {
        let word = reduce(&g, &word);
        let letter = (letter - 1) % g.rank() + 1;
        let mut longer = word.0.clone();
        longer.push(letter);
        let longer = Word::new(longer);
        let l = length(&g, &element_of(&g, &longer).unwrap()).unwrap();
        if is_reduced(&g, &longer).unwrap() {
            prop_assert_eq!(l, word.len() + 1);
        } else {
            prop_assert_eq!(l + 1, word.len());
        }
    }

    #[test]
    fn reduced_words_have_distinct_positive_gammas((g, word) in gcm_and_word(10)) {
        let word = reduce(&g, &word);
        let gammas = gamma_sequence(&g, &word).unwrap();
        prop_assert!(gammas.iter().all(RootVector::is_positive));
        prop_assert_eq!(inversions(&g, &word).unwrap().len(), word.len());
        prop_assert!(bs_boundary(&g, &word).unwrap().b.iter().all(|&b| b >= 1));
    }

    #[test]
    fn certificates_hold_for_every_reduced_word((g, word) in gcm_and_word(9), extra in 0i64..5) {
        let word = reduce(&g, &word);
        let sb = schubert_boundary(&g, &word).unwrap();
        let m = default_m(&sb) + extra;
        let cert = log_fano_certificate(&g, &word, Some(m)).unwrap();
        prop_assert!(cert.overall, "{:?}", cert.checks.failed());
        // Only divisors of M appear as denominators.
        for c in cert.delta.iter().chain(&cert.delta_tilde) {
            prop_assert_eq!(m % c.denom(), 0);
        }
        prop_assert_eq!(sb.divisors.len() + sb.collapsed.len(), word.len());
    }

    #[test]
    fn braid_move_preserves_schubert_divisors((g, word) in gcm_and_word(8)) {
        // Canonical word against the lexicographically last reduced word.
        let w = element_of(&g, &word).unwrap();
        let canonical = canonical_reduced_word(&g, &w).unwrap();
        let Ok(all) = all_reduced_words(&g, &w, 2000) else { return Ok(()); };
        let last = all.last().unwrap();
        let sig = |x: &Word| {
            let mut v: Vec<(Word, i64)> = schubert_boundary(&g, x).unwrap().divisors.into_iter().map(|d| (d.label, d.a)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(sig(&canonical), sig(last));
    }

    #[test]
    fn classification_is_permutation_invariant(name in prop::sample::select(TYPES), seed in any::<u64>()) {
        let g = gcm_named(name);
        let n = g.rank();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for k in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (s >> 33) as usize % (k + 1));
        }
        prop_assert_eq!(g.permuted(&perm).unwrap().classify(), g.classify());
    }
}

#[test]
fn indefinite_matrix_is_classified() {
    assert_eq!(gcm_named("H").classify(), CartanClass::Indefinite);
}
