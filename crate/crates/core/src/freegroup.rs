//! Freely reduced words in the free group `F_n` and endomorphisms given by
//! the images of the basis letters.
//!
//! Words are stored letter by letter (exponents expanded), so reversal and
//! palindrome checks work directly on the stored sequence. Exponent grouping
//! only happens when a word is displayed.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Upper bound on the number of letters any word may hold. Images grow
/// exponentially under composition, so every producing operation checks it.
pub const MAX_WORD_LEN: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A basis letter `a_index` or its inverse. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    index: usize,
    sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Letter {
        assert!(index >= 1, "letter indices are 1-based");
        Letter { index, sign }
    }

    pub fn pos(index: usize) -> Letter {
        Letter::new(index, Sign::Plus)
    }

    pub fn neg(index: usize) -> Letter {
        Letter::new(index, Sign::Minus)
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter { index: self.index, sign: self.sign.flip() }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

/// A freely reduced word of `F_rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

fn check_len(len: usize) -> Result<()> {
    if len > MAX_WORD_LEN {
        return Err(Error::WordTooLong { len, limit: MAX_WORD_LEN });
    }
    Ok(())
}

fn check_rank(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::RankMismatch { left, right });
    }
    Ok(())
}

impl Word {
    pub fn empty(rank: usize) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// The one-letter word `a_index`.
    pub fn generator(rank: usize, index: usize) -> Result<Word> {
        Word::from_letters(rank, vec![Letter::pos(index)])
    }

    /// Builds a word from an arbitrary letter sequence, freely reducing it.
    pub fn from_letters(rank: usize, letters: Vec<Letter>) -> Result<Word> {
        check_len(letters.len())?;
        if let Some(bad) = letters.iter().find(|l| l.index > rank) {
            return Err(Error::IndexOutOfRange { index: bad.index, rank });
        }
        Ok(Word { rank, letters: free_reduce(letters) })
    }

    /// Parses whitespace-separated tokens `a<k>` or `a<k>^<e>`. The empty
    /// string and the token `1` denote the identity.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (index, exp) = parse_token(token)?;
            if index == 0 || index > rank {
                return Err(Error::IndexOutOfRange { index, rank });
            }
            let count = exp.unsigned_abs() as usize;
            check_len(letters.len().saturating_add(count))?;
            let letter = if exp > 0 { Letter::pos(index) } else { Letter::neg(index) };
            letters.extend(std::iter::repeat_n(letter, count));
        }
        Ok(Word { rank, letters: free_reduce(letters) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reverses the letter order and flips every sign.
    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_rank(self.rank, other.rank)?;
        check_len(self.len() + other.len())?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { rank: self.rank, letters: free_reduce(letters) })
    }

    /// True iff the letter sequence reads the same in both directions.
    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|k| self.letters[k] == self.letters[n - 1 - k])
    }

    /// Signed exponent sum of each generator, indexed from 0.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank];
        for l in &self.letters {
            sums[l.index - 1] += l.sign.as_i64();
        }
        sums
    }

    /// Runs of equal letters as `(index, exponent)` pairs.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((idx, e)) if *idx == l.index && (*e > 0) == (l.sign == Sign::Plus) => {
                    *e += l.sign.as_i64();
                }
                _ => out.push((l.index, l.sign.as_i64())),
            }
        }
        out
    }
}

/// Stack-based free reduction; the result is the unique reduced form.
pub fn free_reduce(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

fn parse_token(token: &str) -> Result<(usize, i64)> {
    let malformed = |reason: &str| Error::MalformedToken {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let body = token.strip_prefix('a').ok_or_else(|| malformed("expected `a<k>` or `a<k>^<e>`"))?;
    let (index_part, exp_part) = match body.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (body, None),
    };
    let index_part = index_part.trim_start_matches('_');
    if index_part.is_empty() || !index_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed("generator index must be a positive integer"));
    }
    let index: usize = index_part.parse().map_err(|_| malformed("generator index too large"))?;
    let exp = match exp_part {
        None => 1,
        Some(e) => {
            let e = e.trim_start_matches('{').trim_end_matches('}');
            e.parse::<i64>().map_err(|_| malformed("exponent must be an integer"))?
        }
    };
    if exp == 0 {
        return Err(Error::ZeroExponent(token.to_string()));
    }
    Ok((index, exp))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .syllables()
            .into_iter()
            .map(|(i, e)| if e == 1 { format!("a{i}") } else { format!("a{i}^{e}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A permutation of `{1..n}` stored in one-line form: `images[i-1] = ρ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..{n}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(123)`, `(12)(3)`, `(1 3)` or `()`.
    /// Cycles of single digits may be written without separators.
    pub fn from_cycles(n: usize, text: &str) -> Result<Permutation> {
        let bad = |why: &str| Error::InvalidPermutation(format!("`{text}`: {why}"));
        let mut images: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let points: Vec<usize> = if body.contains(|c: char| c == ',' || c.is_whitespace()) {
                body.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| bad("non-numeric point")))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("non-numeric point")))
                    .collect::<Result<_>>()?
            };
            for &p in &points {
                if p == 0 || p > n {
                    return Err(bad("point out of range"));
                }
                if used[p - 1] {
                    return Err(bad("cycles are not disjoint"));
                }
                used[p - 1] = true;
            }
            for k in 0..points.len() {
                images[points[k] - 1] = points[(k + 1) % points.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// ρ(i) for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// All permutations of `{1..n}` in lexicographic order of their one-line form.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: current.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

/// An endomorphism of `F_rank` given by the images of `a_1, …, a_rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EndoMap {
    rank: usize,
    images: Vec<Word>,
}

impl EndoMap {
    pub fn new(rank: usize, images: Vec<Word>) -> Result<EndoMap> {
        if images.len() != rank {
            return Err(Error::ImageCount { expected: rank, found: images.len() });
        }
        for w in &images {
            check_rank(rank, w.rank)?;
        }
        Ok(EndoMap { rank, images })
    }

    pub fn identity(rank: usize) -> EndoMap {
        let images = (1..=rank).map(|i| Word { rank, letters: vec![Letter::pos(i)] }).collect();
        EndoMap { rank, images }
    }

    /// Parses the endomorphism file format: one image per non-blank line,
    /// `#` starts a comment. The rank is the number of images.
    pub fn parse(text: &str) -> Result<EndoMap> {
        let lines: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        let rank = lines.len();
        let images = lines.iter().map(|l| Word::parse(l, rank)).collect::<Result<Vec<_>>>()?;
        EndoMap::new(rank, images)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of `a_i`, 1-based.
    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    /// Substitutes `f(a_i)^{±1}` for every letter of `w` and reduces.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        check_rank(self.rank, w.rank)?;
        let inverses: Vec<Word> = self.images.iter().map(Word::invert).collect();
        let mut out: Vec<Letter> = Vec::new();
        for l in &w.letters {
            let img = match l.sign {
                Sign::Plus => &self.images[l.index - 1],
                Sign::Minus => &inverses[l.index - 1],
            };
            for &x in &img.letters {
                match out.last() {
                    Some(&top) if top.cancels(x) => {
                        out.pop();
                    }
                    _ => {
                        out.push(x);
                        check_len(out.len())?;
                    }
                }
            }
        }
        Ok(Word { rank: self.rank, letters: out })
    }

    /// `self ∘ other` as left actions: `a_i ↦ self(other(a_i))`.
    pub fn compose(&self, other: &EndoMap) -> Result<EndoMap> {
        check_rank(self.rank, other.rank)?;
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<Vec<_>>>()?;
        Ok(EndoMap { rank: self.rank, images })
    }

    /// True iff every generator image is a palindrome.
    pub fn is_palindromic(&self) -> bool {
        self.images.iter().all(Word::is_palindrome)
    }

    /// Renders the endomorphism file format.
    pub fn to_file_format(&self) -> String {
        let mut s = String::new();
        for w in &self.images {
            s.push_str(&w.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "a{} ↦ {}", i + 1, w)?;
        }
        Ok(())
    }
}

impl FromStr for EndoMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<EndoMap> {
        EndoMap::parse(s)
    }
}

/// `A_ij`: `a_i ↦ a_j a_i a_j`, all other generators fixed.
pub fn gen_aij(n: usize, i: usize, j: usize) -> Result<EndoMap> {
    for k in [i, j] {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, rank: n });
        }
    }
    if i == j {
        return Err(Error::EqualIndices(i));
    }
    let mut f = EndoMap::identity(n);
    f.images[i - 1] = Word {
        rank: n,
        letters: vec![Letter::pos(j), Letter::pos(i), Letter::pos(j)],
    };
    Ok(f)
}

/// `σ_{a_i}`: `a_i ↦ a_i^{-1}`, all other generators fixed.
pub fn gen_sigma(n: usize, i: usize) -> Result<EndoMap> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let mut f = EndoMap::identity(n);
    f.images[i - 1] = Word { rank: n, letters: vec![Letter::neg(i)] };
    Ok(f)
}

/// The permutation automorphism `τ_ρ` whose abelianization is the
/// permutation matrix of ρ (column `j` is `e_{ρ(j)}`). On letters this is
/// `a_i ↦ a_{ρ⁻¹(i)}`; for involutions the two readings coincide.
pub fn gen_tau(n: usize, rho: &Permutation) -> Result<EndoMap> {
    if rho.degree() != n {
        return Err(Error::InvalidPermutation(format!(
            "permutation of degree {} used with rank {n}",
            rho.degree()
        )));
    }
    let inv = rho.inverse();
    let images = (1..=n).map(|i| Word { rank: n, letters: vec![Letter::pos(inv.apply(i))] }).collect();
    Ok(EndoMap { rank: n, images })
}

/// The standard generators of the palindromic automorphism group of
/// `F_n`: every `A_ij`, every `σ_i`, and `τ_ρ` for the adjacent
/// transpositions and the cycle `(1 2 … n)`.
pub fn palindromic_generators(n: usize) -> Vec<EndoMap> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            out.push(gen_aij(n, i, j).expect("valid indices"));
        }
    }
    out.extend((1..=n).map(|i| gen_sigma(n, i).expect("valid index")));
    for i in 1..n {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        out.push(gen_tau(n, &Permutation::from_images(images).expect("transposition")).expect("degree n"));
    }
    if n >= 3 {
        let cycle: Vec<usize> = (1..=n).map(|k| k % n + 1).collect();
        out.push(gen_tau(n, &Permutation::from_images(cycle).expect("cycle")).expect("degree n"));
    }
    out
}

/// Composite of `length` generators drawn uniformly with a seeded RNG.
pub fn random_generator_product(n: usize, seed: u64, length: usize) -> EndoMap {
    use rand::{Rng, SeedableRng};
    let gens = palindromic_generators(n);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut f = EndoMap::identity(n);
    for _ in 0..length {
        let g = &gens[rng.gen_range(0..gens.len())];
        f = f.compose(g).expect("word lengths stay small");
    }
    f
}
