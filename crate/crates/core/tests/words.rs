use palindroma_core::freegroup::{free_reduce, random_generator_product, Letter, Word};
use proptest::prelude::*;

fn letters(rank: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1..=rank, any::<bool>()), 0..40)
        .prop_map(|v| v.into_iter().map(|(i, p)| if p { Letter::pos(i) } else { Letter::neg(i) }).collect())
}

proptest! {
    #[test]
    fn reduction_is_idempotent(ls in letters(3)) {
        let once = free_reduce(ls);
        prop_assert_eq!(free_reduce(once.clone()), once);
    }

    #[test]
    fn inversion_is_an_involution(ls in letters(4)) {
        let w = Word::from_letters(4, ls).unwrap();
        prop_assert_eq!(w.invert().invert(), w.clone());
        prop_assert!(w.concat(&w.invert()).unwrap().is_empty());
    }

    #[test]
    fn palindromes_are_reversal_fixed(ls in letters(3)) {
        let w = Word::from_letters(3, ls).unwrap();
        let reversed: Vec<Letter> = w.letters().iter().rev().copied().collect();
        prop_assert_eq!(w.is_palindrome(), reversed == w.letters());
        prop_assert_eq!(w.invert().is_palindrome(), w.is_palindrome());
        // w·rev(w) is always a palindrome once reduced
        let doubled = Word::from_letters(3, w.letters().iter().chain(reversed.iter()).copied().collect()).unwrap();
        prop_assert!(doubled.is_palindrome());
    }

    #[test]
    fn display_round_trips(ls in letters(5)) {
        let w = Word::from_letters(5, ls).unwrap();
        prop_assert_eq!(Word::parse(&w.to_string(), 5).unwrap(), w);
    }

    #[test]
    fn generator_products_are_palindromic(seed in any::<u64>(), len in 1usize..=10, n in 2usize..=4) {
        prop_assert!(random_generator_product(n, seed, len).is_palindromic());
    }

    #[test]
    fn composition_is_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let f = random_generator_product(3, s1, 3);
        let g = random_generator_product(3, s2, 3);
        let h = random_generator_product(3, s3, 3);
        prop_assert_eq!(f.compose(&g.compose(&h).unwrap()).unwrap(), f.compose(&g).unwrap().compose(&h).unwrap());
    }
}
