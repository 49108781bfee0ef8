//! Words in simple reflections and their faithful action on the root and
//! coroot lattices.
//!
//! Letters are 1-based node indices. A [`WeylElement`] is stored as its
//! integer matrix on the root lattice (columns are images of simple roots)
//! together with the matrix of its inverse, so equality and descent tests are
//! plain integer linear algebra in any Kac-Moody type.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::GeneralizedCartanMatrix;
use crate::error::{Error, Result};

/// A finite sequence of simple-reflection indices, not necessarily reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: impl Into<Vec<usize>>) -> Self {
        Word(letters.into())
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// The word with the 1-based position `pos` deleted.
    pub fn omit(&self, pos: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(pos - 1);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn check(&self, gcm: &GeneralizedCartanMatrix) -> Result<()> {
        let rank = gcm.rank();
        match self.0.iter().find(|&&i| i == 0 || i > rank) {
            Some(&index) => Err(Error::IndexOutOfRange { index, rank }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Comma-separated 1-based indices; brackets and spaces are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')']);
        if body.trim().is_empty() {
            return Ok(Word::empty());
        }
        body.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad word letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    Mixed,
}

fn sign_of(coeffs: &[i64]) -> Sign {
    let pos = coeffs.iter().any(|&c| c > 0);
    let neg = coeffs.iter().any(|&c| c < 0);
    match (pos, neg) {
        (true, false) => Sign::Positive,
        (false, true) => Sign::Negative,
        (false, false) => Sign::Zero,
        (true, true) => Sign::Mixed,
    }
}

fn fmt_combination(coeffs: &[i64], suffix: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut out = String::new();
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&format!("a{}{}", j + 1, suffix));
    }
    if out.is_empty() {
        out.push('0');
    }
    f.write_str(&out)
}

macro_rules! lattice_vector {
    ($name:ident, $suffix:expr) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            /// The `i`-th simple vector, `i` 1-based.
            pub fn simple(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i - 1] = 1;
                $name(v)
            }

            pub fn coeffs(&self) -> &[i64] {
                &self.0
            }

            pub fn sign(&self) -> Sign {
                sign_of(&self.0)
            }

            pub fn is_positive(&self) -> bool {
                self.sign() == Sign::Positive
            }

            /// Coordinate sum in the simple basis.
            pub fn height(&self) -> i64 {
                self.0.iter().sum()
            }

            pub fn negated(&self) -> Self {
                $name(self.0.iter().map(|c| -c).collect())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_combination(&self.0, $suffix, f)
            }
        }
    };
}

lattice_vector!(RootVector, "");
lattice_vector!(CorootVector, "v");

/// A weight in fundamental-weight coordinates: `coords[j] = <lambda, alpha_j^vee>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    /// Sum of the fundamental weights.
    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// `<lambda, beta^vee>`.
    pub fn pair(&self, coroot: &CorootVector) -> i64 {
        self.0.iter().zip(&coroot.0).map(|(a, b)| a * b).sum()
    }
}

/// Which lattice a reflection acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lattice {
    Root,
    Coroot,
}

/// Coefficient `c` in `s_i(e_j) = e_j - c e_i`.
#[inline]
fn reflection_coeff(gcm: &GeneralizedCartanMatrix, lattice: Lattice, i: usize, j: usize) -> i64 {
    match lattice {
        Lattice::Root => gcm.entry(i, j),
        Lattice::Coroot => gcm.entry(j, i),
    }
}

fn check_node(gcm: &GeneralizedCartanMatrix, i: usize) -> Result<usize> {
    if i == 0 || i > gcm.rank() {
        Err(Error::IndexOutOfRange {
            index: i,
            rank: gcm.rank(),
        })
    } else {
        Ok(i - 1)
    }
}

fn reflect_vec(
    gcm: &GeneralizedCartanMatrix,
    lattice: Lattice,
    i: usize,
    v: &[i64],
) -> Result<Vec<i64>> {
    let i = check_node(gcm, i)?;
    if v.len() != gcm.rank() {
        return Err(Error::LengthMismatch {
            expected: gcm.rank(),
            got: v.len(),
        });
    }
    let mut pairing = 0i64;
    for (j, &c) in v.iter().enumerate() {
        pairing = pairing
            .checked_add(
                c.checked_mul(reflection_coeff(gcm, lattice, i, j))
                    .ok_or(Error::Overflow)?,
            )
            .ok_or(Error::Overflow)?;
    }
    let mut out = v.to_vec();
    out[i] = out[i].checked_sub(pairing).ok_or(Error::Overflow)?;
    Ok(out)
}

/// `s_i(beta) = beta - (sum_j beta_j A[i][j]) alpha_i`.
pub fn reflect_root(
    gcm: &GeneralizedCartanMatrix,
    i: usize,
    beta: &RootVector,
) -> Result<RootVector> {
    reflect_vec(gcm, Lattice::Root, i, &beta.0).map(RootVector)
}

/// Contragredient action: `s_i(beta^vee) = beta^vee - (sum_j beta_j A[j][i]) alpha_i^vee`.
pub fn reflect_coroot(
    gcm: &GeneralizedCartanMatrix,
    i: usize,
    coroot: &CorootVector,
) -> Result<CorootVector> {
    reflect_vec(gcm, Lattice::Coroot, i, &coroot.0).map(CorootVector)
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    fn column(&self, c: usize) -> Vec<i64> {
        (0..self.n).map(|r| self.get(r, c)).collect()
    }

    /// `self * s_i`: column j gains `-c_ij` times column i.
    fn mul_reflection_right(
        &mut self,
        gcm: &GeneralizedCartanMatrix,
        lattice: Lattice,
        i: usize,
    ) -> Result<()> {
        let n = self.n;
        let col_i = self.column(i);
        for j in 0..n {
            let c = reflection_coeff(gcm, lattice, i, j);
            if c == 0 {
                continue;
            }
            for (r, &x) in col_i.iter().enumerate() {
                let cell = &mut self.data[r * n + j];
                *cell = cell
                    .checked_sub(c.checked_mul(x).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(())
    }

    /// `s_i * self`: row i becomes `row_i - sum_j c_ij row_j`.
    fn mul_reflection_left(
        &mut self,
        gcm: &GeneralizedCartanMatrix,
        lattice: Lattice,
        i: usize,
    ) -> Result<()> {
        let n = self.n;
        let mut row: Vec<i64> = self.data[i * n..(i + 1) * n].to_vec();
        for j in 0..n {
            let c = reflection_coeff(gcm, lattice, i, j);
            if c == 0 {
                continue;
            }
            for (k, cell) in row.iter_mut().enumerate() {
                *cell = cell
                    .checked_sub(c.checked_mul(self.get(j, k)).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
            }
        }
        self.data[i * n..(i + 1) * n].copy_from_slice(&row);
        Ok(())
    }

    fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    let cell = &mut data[r * n + c];
                    *cell = cell
                        .checked_add(a.checked_mul(other.get(k, c)).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(IntMatrix { n, data })
    }

    fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        (0..self.n)
            .map(|r| {
                v.iter().enumerate().try_fold(0i64, |acc, (c, &x)| {
                    acc.checked_add(self.get(r, c).checked_mul(x).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }
}

/// A Weyl group element, faithfully represented by its action on the root lattice.
///
/// Equality and hashing look at the matrix only. `word_bound` is an upper
/// bound on the length, carried along from the words the element was built
/// from, and caps the descent loop in [`length`].
#[derive(Debug, Clone)]
pub struct WeylElement {
    matrix: IntMatrix,
    inverse: IntMatrix,
    word_bound: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            matrix: IntMatrix::identity(rank),
            inverse: IntMatrix::identity(rank),
            word_bound: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.n
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.matrix.n)
    }

    /// Rows of the action matrix; column `j` is the image of `alpha_j`.
    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        self.matrix
            .data
            .chunks(self.matrix.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
            word_bound: self.word_bound,
        }
    }

    pub fn mul(&self, other: &WeylElement) -> Result<WeylElement> {
        Ok(WeylElement {
            matrix: self.matrix.mul(&other.matrix)?,
            inverse: other.inverse.mul(&self.inverse)?,
            word_bound: self.word_bound + other.word_bound,
        })
    }

    /// `self * s_i`, `i` 1-based.
    pub fn mul_simple_right(&self, gcm: &GeneralizedCartanMatrix, i: usize) -> Result<WeylElement> {
        let k = check_node(gcm, i)?;
        let mut out = self.clone();
        out.matrix.mul_reflection_right(gcm, Lattice::Root, k)?;
        out.inverse.mul_reflection_left(gcm, Lattice::Root, k)?;
        out.word_bound += 1;
        Ok(out)
    }

    /// `s_i * self`, `i` 1-based.
    pub fn mul_simple_left(&self, gcm: &GeneralizedCartanMatrix, i: usize) -> Result<WeylElement> {
        let k = check_node(gcm, i)?;
        let mut out = self.clone();
        out.matrix.mul_reflection_left(gcm, Lattice::Root, k)?;
        out.inverse.mul_reflection_right(gcm, Lattice::Root, k)?;
        out.word_bound += 1;
        Ok(out)
    }

    pub fn apply(&self, beta: &RootVector) -> Result<RootVector> {
        self.matrix.apply(&beta.0).map(RootVector)
    }

    pub fn apply_inverse(&self, beta: &RootVector) -> Result<RootVector> {
        self.inverse.apply(&beta.0).map(RootVector)
    }

    /// Whether `s_i` is a left descent, i.e. `w^{-1}(alpha_i) < 0`.
    pub fn has_left_descent(&self, i: usize) -> Result<bool> {
        root_is_negative(RootVector(self.inverse.column(i - 1)))
    }

    /// Whether `s_i` is a right descent, i.e. `w(alpha_i) < 0`.
    pub fn has_right_descent(&self, i: usize) -> Result<bool> {
        root_is_negative(RootVector(self.matrix.column(i - 1)))
    }
}

fn root_is_negative(root: RootVector) -> Result<bool> {
    match root.sign() {
        Sign::Negative => Ok(true),
        Sign::Positive => Ok(false),
        Sign::Zero | Sign::Mixed => Err(Error::Internal(format!(
            "image of a simple root is not a root: {root}"
        ))),
    }
}

/// Product of the simple-reflection matrices in word order.
pub fn element_of(gcm: &GeneralizedCartanMatrix, word: &Word) -> Result<WeylElement> {
    word.check(gcm)?;
    let mut w = WeylElement::identity(gcm.rank());
    for &i in word.letters() {
        w = w.mul_simple_right(gcm, i)?;
    }
    Ok(w)
}

/// The reflection along the real root `u(alpha_i)`: `u s_i u^{-1}`.
pub fn reflection_along(gcm: &GeneralizedCartanMatrix, u: &Word, i: usize) -> Result<WeylElement> {
    let u = element_of(gcm, u)?;
    u.mul_simple_right(gcm, i)?.mul(&u.inverse())
}

fn checked_root(v: Vec<i64>) -> Result<Vec<i64>> {
    match sign_of(&v) {
        Sign::Mixed | Sign::Zero => Err(Error::Internal(format!(
            "reflection arithmetic produced a non-root {v:?}"
        ))),
        _ => Ok(v),
    }
}

fn gamma_vectors(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
    lattice: Lattice,
) -> Result<Vec<Vec<i64>>> {
    word.check(gcm)?;
    let letters = word.letters();
    let mut prod = IntMatrix::identity(gcm.rank());
    let mut out = vec![Vec::new(); letters.len()];
    for (pos, &i) in letters.iter().enumerate().rev() {
        out[pos] = checked_root(prod.column(i - 1))?;
        prod.mul_reflection_right(gcm, lattice, i - 1)?;
    }
    Ok(out)
}

/// `gamma_i = s_l s_{l-1} ... s_{i+1}(alpha_{letter i})` for every position.
pub fn gamma_sequence(gcm: &GeneralizedCartanMatrix, word: &Word) -> Result<Vec<RootVector>> {
    Ok(gamma_vectors(gcm, word, Lattice::Root)?
        .into_iter()
        .map(RootVector)
        .collect())
}

/// The coroot sequence `gamma_i^vee = s_l ... s_{i+1}(alpha_{letter i}^vee)`.
pub fn gamma_coroot_sequence(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
) -> Result<Vec<CorootVector>> {
    Ok(gamma_vectors(gcm, word, Lattice::Coroot)?
        .into_iter()
        .map(CorootVector)
        .collect())
}

/// A word is reduced iff every `gamma_i` is a positive root.
pub fn is_reduced(gcm: &GeneralizedCartanMatrix, word: &Word) -> Result<bool> {
    Ok(gamma_sequence(gcm, word)?
        .iter()
        .all(RootVector::is_positive))
}

/// Greedy left-descent factorization, always taking the smallest descent.
/// Returns the lexicographically first reduced word of `element`.
pub fn canonical_reduced_word(
    gcm: &GeneralizedCartanMatrix,
    element: &WeylElement,
) -> Result<Word> {
    let mut w = element.clone();
    let mut letters = Vec::new();
    while !w.is_identity() {
        if letters.len() >= element.word_bound {
            return Err(Error::Internal(format!(
                "descent did not terminate within {} steps",
                element.word_bound
            )));
        }
        let mut descent = None;
        for i in 1..=gcm.rank() {
            if w.has_left_descent(i)? {
                descent = Some(i);
                break;
            }
        }
        let i = descent
            .ok_or_else(|| Error::Internal("non-identity element without descent".into()))?;
        w = w.mul_simple_left(gcm, i)?;
        letters.push(i);
    }
    Ok(Word(letters))
}

pub fn length(gcm: &GeneralizedCartanMatrix, element: &WeylElement) -> Result<usize> {
    canonical_reduced_word(gcm, element).map(|w| w.len())
}

/// The inversion roots `{gamma_1, ..., gamma_l}` of a reduced word.
pub fn inversions(gcm: &GeneralizedCartanMatrix, word: &Word) -> Result<BTreeSet<RootVector>> {
    let gammas = gamma_sequence(gcm, word)?;
    if !gammas.iter().all(RootVector::is_positive) {
        return Err(Error::NotReduced(word.0.clone()));
    }
    let set: BTreeSet<RootVector> = gammas.into_iter().collect();
    if set.len() != word.len() {
        return Err(Error::Internal(format!(
            "repeated inversion root in {word}"
        )));
    }
    Ok(set)
}
