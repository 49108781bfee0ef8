//! Generalized Cartan matrices: validation, the standard tables and an exact
//! finite/affine/indefinite classification.
//!
//! Entry `A[i][j]` is the pairing `<alpha_j, alpha_i^vee>`, so the simple
//! reflection acts by `s_i(alpha_j) = alpha_j - A[i][j] alpha_i` on roots and by
//! `s_i(alpha_j^vee) = alpha_j^vee - A[j][i] alpha_i^vee` on coroots.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated generalized Cartan matrix together with an optional type label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedCartanMatrix {
    rank: usize,
    entries: Vec<i64>,
    label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanClass {
    Finite,
    Affine,
    Indefinite,
    NotSymmetrizable,
}

impl fmt::Display for CartanClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanClass::Finite => "finite",
            CartanClass::Affine => "affine",
            CartanClass::Indefinite => "indefinite",
            CartanClass::NotSymmetrizable => "not symmetrizable",
        };
        f.write_str(s)
    }
}

/// On-disk form: `{"rank": n, "cartan": [[...], ...]}` with an optional `"name"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GcmFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
}

impl GeneralizedCartanMatrix {
    /// Checks the three defining conditions. No normalization is applied.
    pub fn new(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NonSquare);
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 2 {
                return Err(Error::DiagonalNotTwo {
                    i: i + 1,
                    value: row[i],
                });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if value > 0 {
                    return Err(Error::PositiveOffDiagonal {
                        i: i + 1,
                        j: j + 1,
                        value,
                    });
                }
                if (value == 0) != (rows[j][i] == 0) {
                    let (i, j) = if value == 0 { (i, j) } else { (j, i) };
                    return Err(Error::AsymmetricZeroPattern { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(Self {
            rank: n,
            entries: rows.iter().flatten().copied().collect(),
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The standard matrix for a type label such as `A3`, `G2`, `E8` or `A1~`.
    pub fn builtin(type_name: &str) -> Result<Self> {
        type_name.parse()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GcmFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.rank != file.cartan.len() {
            return Err(Error::Parse(format!(
                "rank {} does not match {} matrix rows",
                file.rank,
                file.cartan.len()
            )));
        }
        let gcm = Self::new(&file.cartan)?;
        Ok(match file.name {
            Some(name) => gcm.with_label(name),
            None => gcm,
        })
    }

    pub fn to_json(&self) -> String {
        let file = GcmFile {
            name: self.label.clone(),
            rank: self.rank,
            cartan: self.rows(),
        };
        serde_json::to_string(&file).expect("gcm serializes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Type label, `"custom"` for matrices read without a name.
    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or("custom")
    }

    /// Zero-based access to `A[i][j]`.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    /// Zero-based neighbours of node `i` in the Dynkin graph.
    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&j| j != i && self.entry(i, j) != 0)
    }

    /// Returns the matrix with rows and columns relabelled by `perm`
    /// (new node `k` is old node `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let rows: Vec<Vec<i64>> = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.entry(i, j)).collect())
            .collect();
        Self::new(&rows)
    }

    /// A positive diagonal `D` with `D A` symmetric, found by propagating
    /// `D_i A[i][j] = D_j A[j][i]` along the Dynkin graph.
    pub fn symmetrizer(&self) -> Option<Vec<Ratio<i64>>> {
        let n = self.rank;
        let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
        for root in 0..n {
            if d[root].is_some() {
                continue;
            }
            d[root] = Some(Ratio::one());
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                let di = d[i].expect("visited");
                for j in self.neighbours(i) {
                    let want = di * Ratio::new(self.entry(i, j), self.entry(j, i));
                    match d[j] {
                        Some(dj) if dj != want => return None,
                        Some(_) => {}
                        None => {
                            d[j] = Some(want);
                            stack.push(j);
                        }
                    }
                }
            }
        }
        Some(
            d.into_iter()
                .map(|x| x.expect("all nodes visited"))
                .collect(),
        )
    }

    /// Integer symmetrized matrix `D A` with `D` cleared of denominators.
    fn symmetrized(&self) -> Option<Vec<Vec<i128>>> {
        let d = self.symmetrizer()?;
        let lcm = d
            .iter()
            .fold(1i64, |acc, x| num_integer_lcm(acc, *x.denom()));
        let scale: Vec<i128> = d
            .iter()
            .map(|x| (*x.numer() as i128) * (lcm / *x.denom()) as i128)
            .collect();
        let n = self.rank;
        Some(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| scale[i] * self.entry(i, j) as i128)
                        .collect()
                })
                .collect(),
        )
    }

    /// Finite when the symmetrized matrix is positive definite, affine when it
    /// is positive semidefinite of corank one, indefinite otherwise.
    pub fn classify(&self) -> CartanClass {
        let Some(b) = self.symmetrized() else {
            return CartanClass::NotSymmetrizable;
        };
        let n = self.rank;
        let leading_positive = (1..=n).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            matches!(principal_minor(&b, &idx), Some(v) if v > 0)
        });
        if leading_positive {
            return CartanClass::Finite;
        }
        // Positive semidefinite iff every principal minor is nonnegative.
        let mut corank_one = false;
        for mask in 1u64..(1u64 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            match principal_minor(&b, &idx) {
                Some(v) if v < 0 => return CartanClass::Indefinite,
                Some(v) => {
                    if idx.len() == n - 1 && v != 0 {
                        corank_one = true;
                    }
                }
                None => return CartanClass::Indefinite,
            }
        }
        let det_zero = principal_minor(&b, &(0..n).collect::<Vec<_>>()) == Some(0);
        if det_zero && (corank_one || n == 1) {
            CartanClass::Affine
        } else {
            CartanClass::Indefinite
        }
    }
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(mut a: i64, mut b: i64) -> i64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    }
    a / gcd(a, b) * b
}

/// Bareiss fraction-free determinant of the principal submatrix on `idx`.
/// `None` on overflow.
fn principal_minor(b: &[Vec<i128>], idx: &[usize]) -> Option<i128> {
    let k = idx.len();
    if k == 0 {
        return Some(1);
    }
    let mut m: Vec<Vec<i128>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| b[i][j]).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..k - 1 {
        if m[p][p].is_zero() {
            let Some(swap) = (p + 1..k).find(|&r| m[r][p] != 0) else {
                return Some(0);
            };
            m.swap(p, swap);
            sign = -sign;
        }
        for r in p + 1..k {
            for c in p + 1..k {
                let num = m[r][c]
                    .checked_mul(m[p][p])?
                    .checked_sub(m[r][p].checked_mul(m[p][c])?)?;
                m[r][c] = num / prev;
            }
        }
        prev = m[p][p];
    }
    Some(sign * m[k - 1][k - 1])
}

impl FromStr for GeneralizedCartanMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let name = s.trim();
        let (body, affine) = match name.strip_suffix('~') {
            Some(b) => (b, true),
            None => (name, false),
        };
        let mut chars = body.chars();
        let family = chars
            .next()
            .ok_or_else(|| Error::UnknownType(name.to_string()))?
            .to_ascii_uppercase();
        let rank_str = chars.as_str().trim_start_matches('_');
        let rank: usize = rank_str
            .parse()
            .map_err(|_| Error::UnknownType(name.to_string()))?;
        let invalid = || Error::InvalidRank {
            family: format!("{family}{}", if affine { "~" } else { "" }),
            rank,
        };
        let rows = if affine {
            match family {
                'A' if rank >= 1 => affine_a(rank),
                'A' => return Err(invalid()),
                _ => return Err(Error::UnknownType(name.to_string())),
            }
        } else {
            match family {
                'A' if rank >= 1 => chain(rank),
                'B' if rank >= 2 => {
                    let mut m = chain(rank);
                    m[rank - 1][rank - 2] = -2;
                    m
                }
                'C' if rank >= 2 => {
                    let mut m = chain(rank);
                    m[rank - 2][rank - 1] = -2;
                    m
                }
                'D' if rank >= 4 => {
                    let mut m = chain(rank);
                    link(&mut m, rank - 2, rank - 1, 0);
                    link(&mut m, rank - 3, rank - 1, -1);
                    m
                }
                'E' if (6..=8).contains(&rank) => {
                    let mut m = identity2(rank);
                    link(&mut m, 0, 2, -1);
                    link(&mut m, 1, 3, -1);
                    for i in 2..rank - 1 {
                        link(&mut m, i, i + 1, -1);
                    }
                    m
                }
                'F' if rank == 4 => {
                    let mut m = chain(4);
                    m[2][1] = -2;
                    m
                }
                'G' if rank == 2 => vec![vec![2, -3], vec![-1, 2]],
                'A' | 'B' | 'C' | 'D' | 'E' | 'F' | 'G' => return Err(invalid()),
                _ => return Err(Error::UnknownType(name.to_string())),
            }
        };
        let label = format!("{family}{rank}{}", if affine { "~" } else { "" });
        Ok(Self::new(&rows)?.with_label(label))
    }
}

fn identity2(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect())
        .collect()
}

fn link(m: &mut [Vec<i64>], i: usize, j: usize, v: i64) {
    m[i][j] = v;
    m[j][i] = v;
}

fn chain(n: usize) -> Vec<Vec<i64>> {
    let mut m = identity2(n);
    for i in 0..n.saturating_sub(1) {
        link(&mut m, i, i + 1, -1);
    }
    m
}

/// Affine A_n on nodes 1..n+1 arranged in a cycle; A1~ is the 2x2 matrix with -2.
fn affine_a(n: usize) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![2, -2], vec![-2, 2]];
    }
    let mut m = chain(n + 1);
    link(&mut m, 0, n, -1);
    m
}
