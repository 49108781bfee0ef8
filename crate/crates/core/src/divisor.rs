//! Boundary divisors of Bott-Samelson and Schubert varieties as exact
//! coefficient vectors, and the log Fano certificate assembled from them.
//!
//! On the Bott-Samelson side divisors are indexed by word positions
//! `1..=l`; on the Schubert side by the canonical reduced word of the
//! covered element `v_j`. The `rho`-section coefficients are
//! `b_i = <rho, gamma_i^vee>` and `a_j = b_{i(j)}`, where `i(j)` is the
//! unique position whose omission gives a reduced word for `v_j`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cartan::GeneralizedCartanMatrix;
use crate::error::{Error, Result};
use crate::weyl::{
    canonical_reduced_word, element_of, gamma_coroot_sequence, gamma_sequence, is_reduced,
    reflect_coroot, reflect_root, CorootVector, RootVector, Weight, Word,
};

pub type Rational = Ratio<i64>;

/// Serializes rationals as `"p/q"` strings (integers as `"p"`).
pub fn serialize_rationals<S: Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Coefficients `b_i` of the pulled-back `rho`-section on `sum b_i d~_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsBoundary {
    pub word: Word,
    pub gamma: Vec<RootVector>,
    pub gamma_coroot: Vec<CorootVector>,
    pub b: Vec<i64>,
}

impl BsBoundary {
    /// Root heights of the `gamma_i`; they differ from `b` outside simply-laced types.
    pub fn root_heights(&self) -> Vec<i64> {
        self.gamma.iter().map(RootVector::height).collect()
    }

    /// Positions (1-based) with `b_i <= 0`; only non-reduced words have any.
    pub fn non_positive_positions(&self) -> Vec<usize> {
        (1..=self.b.len()).filter(|&i| self.b[i - 1] <= 0).collect()
    }
}

pub fn bs_boundary(gcm: &GeneralizedCartanMatrix, word: &Word) -> Result<BsBoundary> {
    let gamma = gamma_sequence(gcm, word)?;
    let gamma_coroot = gamma_coroot_sequence(gcm, word)?;
    let b = gamma_coroot.iter().map(CorootVector::height).collect();
    Ok(BsBoundary {
        word: word.clone(),
        gamma,
        gamma_coroot,
        b,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SchubertDivisor {
    /// Canonical reduced word of the covered element.
    pub label: Word,
    /// Position `i(j)` in the ambient word, 1-based.
    pub position: usize,
    pub a: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertBoundary {
    pub word: Word,
    pub divisors: Vec<SchubertDivisor>,
    /// Positions whose divisor is contracted by the resolution.
    pub collapsed: Vec<usize>,
}

impl SchubertBoundary {
    pub fn labels(&self) -> Vec<Word> {
        self.divisors.iter().map(|d| d.label.clone()).collect()
    }

    pub fn a(&self) -> Vec<i64> {
        self.divisors.iter().map(|d| d.a).collect()
    }

    pub fn max_a(&self) -> i64 {
        self.divisors.iter().map(|d| d.a).max().unwrap_or(0)
    }

    /// Coefficient of `d_j` is the coefficient of `d~_{i(j)}`; collapsed positions drop out.
    pub fn pushforward(&self, divisor: &RationalDivisor) -> Result<RationalDivisor> {
        if divisor.space != DivisorSpace::BottSamelson {
            return Err(Error::Parse(
                "pushforward expects a Bott-Samelson divisor".into(),
            ));
        }
        if divisor.coefficients.len() != self.word.len() {
            return Err(Error::LengthMismatch {
                expected: self.word.len(),
                got: divisor.coefficients.len(),
            });
        }
        Ok(RationalDivisor::schubert(
            self.labels(),
            self.divisors
                .iter()
                .map(|d| divisor.coefficients[d.position - 1])
                .collect(),
        ))
    }
}

fn require_reduced(gcm: &GeneralizedCartanMatrix, word: &Word) -> Result<()> {
    if is_reduced(gcm, word)? {
        Ok(())
    } else {
        Err(Error::NotReduced(word.0.clone()))
    }
}

pub fn schubert_boundary(gcm: &GeneralizedCartanMatrix, word: &Word) -> Result<SchubertBoundary> {
    require_reduced(gcm, word)?;
    let bs = bs_boundary(gcm, word)?;
    schubert_from_bs(gcm, &bs)
}

fn schubert_from_bs(gcm: &GeneralizedCartanMatrix, bs: &BsBoundary) -> Result<SchubertBoundary> {
    let word = &bs.word;
    let mut divisors = Vec::new();
    let mut collapsed = Vec::new();
    let mut seen = HashSet::new();
    for pos in 1..=word.len() {
        let sub = word.omit(pos);
        if !is_reduced(gcm, &sub)? {
            collapsed.push(pos);
            continue;
        }
        let label = canonical_reduced_word(gcm, &element_of(gcm, &sub)?)?;
        if !seen.insert(label.clone()) {
            return Err(Error::Internal(format!(
                "two positions of {word} cover the same element {label}"
            )));
        }
        divisors.push(SchubertDivisor {
            label,
            position: pos,
            a: bs.b[pos - 1],
        });
    }
    Ok(SchubertBoundary {
        word: word.clone(),
        divisors,
        collapsed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorSpace {
    BottSamelson,
    Schubert(Vec<Word>),
}

/// An exact rational combination of boundary divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDivisor {
    pub space: DivisorSpace,
    pub coefficients: Vec<Rational>,
}

impl RationalDivisor {
    pub fn bott_samelson(coefficients: Vec<Rational>) -> Self {
        RationalDivisor {
            space: DivisorSpace::BottSamelson,
            coefficients,
        }
    }

    pub fn schubert(labels: Vec<Word>, coefficients: Vec<Rational>) -> Self {
        debug_assert_eq!(labels.len(), coefficients.len());
        RationalDivisor {
            space: DivisorSpace::Schubert(labels),
            coefficients,
        }
    }

    pub fn from_integers(space: DivisorSpace, coeffs: &[i64]) -> Self {
        RationalDivisor {
            space,
            coefficients: coeffs.iter().map(|&c| int(c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn scaled(&self, factor: Rational) -> Self {
        RationalDivisor {
            space: self.space.clone(),
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-Rational::one())
    }

    /// Coefficient-wise sum; both divisors must live on the same space.
    pub fn add(&self, other: &RationalDivisor) -> Result<Self> {
        if self.space != other.space || self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(RationalDivisor {
            space: self.space.clone(),
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(Ratio::is_integer)
    }
}

impl fmt::Display for RationalDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `K = -sum (b_i + 1) d~_i`; valid for non-reduced words too.
pub fn canonical_divisor_bs(gcm: &GeneralizedCartanMatrix, word: &Word) -> Result<RationalDivisor> {
    let bs = bs_boundary(gcm, word)?;
    Ok(canonical_bs_from(&bs))
}

fn canonical_bs_from(bs: &BsBoundary) -> RationalDivisor {
    RationalDivisor::bott_samelson(bs.b.iter().map(|&b| int(-(b + 1))).collect())
}

/// `-K = sum (<rho, gamma_i^vee> + 1) d~_i`.
pub fn anticanonical_divisor_bs(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
) -> Result<RationalDivisor> {
    canonical_divisor_bs(gcm, word).map(|k| k.negated())
}

pub fn canonical_divisor_schubert(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
) -> Result<RationalDivisor> {
    let sb = schubert_boundary(gcm, word)?;
    Ok(canonical_schubert_from(&sb))
}

fn canonical_schubert_from(sb: &SchubertBoundary) -> RationalDivisor {
    RationalDivisor::schubert(
        sb.labels(),
        sb.divisors.iter().map(|d| int(-(d.a + 1))).collect(),
    )
}

/// `M` must exceed every `a_j` (and be positive when there are none).
pub fn check_m(max_a: i64, m: i64) -> Result<()> {
    if m <= max_a || m <= 0 {
        Err(Error::MTooSmall { m, max_a })
    } else {
        Ok(())
    }
}

/// The smallest admissible `M`.
pub fn default_m(sb: &SchubertBoundary) -> i64 {
    sb.max_a() + 1
}

fn deltas_from(
    bs: &BsBoundary,
    sb: &SchubertBoundary,
    m: i64,
) -> (RationalDivisor, RationalDivisor) {
    let c = |x: i64| Rational::one() - Rational::new(x, m);
    let delta =
        RationalDivisor::schubert(sb.labels(), sb.divisors.iter().map(|d| c(d.a)).collect());
    let delta_tilde = RationalDivisor::bott_samelson(bs.b.iter().map(|&b| c(b)).collect());
    (delta, delta_tilde)
}

/// `Delta` with `c_j = 1 - a_j/M` and `Delta~` with `c~_i = 1 - b_i/M`.
pub fn boundary_delta(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
    m: i64,
) -> Result<(RationalDivisor, RationalDivisor)> {
    let sb = schubert_boundary(gcm, word)?;
    check_m(sb.max_a(), m)?;
    let bs = bs_boundary(gcm, word)?;
    Ok(deltas_from(&bs, &sb, m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackCheck {
    /// `((M+1)/M) * (-b_i)` per position.
    pub lhs: Vec<Rational>,
    /// `-(b_i + 1) + (1 - b_i/M)` per position.
    pub rhs: Vec<Rational>,
    pub residuals: Vec<Rational>,
    pub holds: bool,
}

fn pullback_from(
    k_bs: &RationalDivisor,
    delta_tilde: &RationalDivisor,
    b: &[i64],
    m: i64,
) -> PullbackCheck {
    let factor = Rational::new(m + 1, m);
    let lhs: Vec<Rational> = b.iter().map(|&b| factor * int(-b)).collect();
    let rhs: Vec<Rational> = k_bs
        .coefficients
        .iter()
        .zip(&delta_tilde.coefficients)
        .map(|(k, d)| k + d)
        .collect();
    let residuals: Vec<Rational> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
    let holds = lhs.len() == rhs.len() && residuals.iter().all(Zero::is_zero);
    PullbackCheck {
        lhs,
        rhs,
        residuals,
        holds,
    }
}

/// Checks `phi^*(K + Delta) = K~ + Delta~` position by position.
pub fn pullback_identity_check(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
    m: i64,
) -> Result<PullbackCheck> {
    let (_, delta_tilde) = boundary_delta(gcm, word, m)?;
    let bs = bs_boundary(gcm, word)?;
    Ok(pullback_from(
        &canonical_bs_from(&bs),
        &delta_tilde,
        &bs.b,
        m,
    ))
}

/// `floor(c~_i) <= 0` for all `i`, i.e. every coefficient is below one.
pub fn floor_condition(divisor: &RationalDivisor) -> bool {
    divisor
        .coefficients
        .iter()
        .all(|c| c.floor() <= Rational::zero())
}

pub fn pushforward(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
    divisor: &RationalDivisor,
) -> Result<RationalDivisor> {
    schubert_boundary(gcm, word)?.pushforward(divisor)
}

/// A real root written as `u(alpha_node)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    pub u: Word,
    pub node: usize,
}

impl RealRoot {
    pub fn simple(node: usize) -> Self {
        RealRoot {
            u: Word::empty(),
            node,
        }
    }

    /// `gamma_pos` of `word` as `s_l ... s_{pos+1}(alpha_{letter pos})`.
    pub fn gamma(word: &Word, pos: usize) -> Self {
        RealRoot {
            u: Word::new(
                word.letters()[pos..]
                    .iter()
                    .rev()
                    .copied()
                    .collect::<Vec<_>>(),
            ),
            node: word.letters()[pos - 1],
        }
    }

    /// Applies the letters of `u` right to left, one reflection at a time.
    pub fn root(&self, gcm: &GeneralizedCartanMatrix) -> Result<RootVector> {
        self.u.check(gcm)?;
        let mut beta = RootVector::simple(gcm.rank(), self.node);
        for &i in self.u.letters().iter().rev() {
            beta = reflect_root(gcm, i, &beta)?;
        }
        Ok(beta)
    }

    pub fn coroot(&self, gcm: &GeneralizedCartanMatrix) -> Result<CorootVector> {
        self.u.check(gcm)?;
        let mut beta = CorootVector::simple(gcm.rank(), self.node);
        for &i in self.u.letters().iter().rev() {
            beta = reflect_coroot(gcm, i, &beta)?;
        }
        Ok(beta)
    }
}

/// Degree `<lambda, beta^vee>` of the line bundle of `lambda` on the
/// invariant curve joining `e` and `s_beta`.
pub fn curve_intersection(
    gcm: &GeneralizedCartanMatrix,
    lambda: &Weight,
    beta: &RealRoot,
) -> Result<i64> {
    if beta.node == 0 || beta.node > gcm.rank() {
        return Err(Error::IndexOutOfRange {
            index: beta.node,
            rank: gcm.rank(),
        });
    }
    let root = beta.root(gcm)?;
    if !root.is_positive() {
        return Err(Error::NotPositiveRoot(root.to_string()));
    }
    curve_degree(lambda, &beta.coroot(gcm)?)
}

/// Same degree from a coroot supplied directly.
pub fn curve_degree(lambda: &Weight, coroot: &CorootVector) -> Result<i64> {
    if !coroot.is_positive() {
        return Err(Error::NotPositiveRoot(coroot.to_string()));
    }
    if lambda.0.len() != coroot.0.len() {
        return Err(Error::LengthMismatch {
            expected: coroot.0.len(),
            got: lambda.0.len(),
        });
    }
    Ok(lambda.pair(coroot))
}

/// Torus-fixed-point picture of the curve `C_i` in a Bott-Samelson variety of
/// a length-`l` word. Fixed points are subsets `I` of `[l]`, and `p(I)` lies
/// on `d~_j` exactly when `j` is not in `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceModel {
    pub length: usize,
    pub curve: usize,
    pub endpoints: [BTreeSet<usize>; 2],
    /// For each divisor `j` (1-based), the endpoints of `C_i` lying on it.
    pub meets: Vec<Vec<BTreeSet<usize>>>,
}

impl IncidenceModel {
    pub fn on_divisor(point: &BTreeSet<usize>, j: usize) -> bool {
        !point.contains(&j)
    }

    /// Number of points of `C_i` on `d~_j`.
    pub fn count(&self, j: usize) -> usize {
        self.meets[j - 1].len()
    }
}

pub fn bs_incidence_model(length: usize, curve: usize) -> Result<IncidenceModel> {
    if curve == 0 || curve > length {
        return Err(Error::IndexOutOfRange {
            index: curve,
            rank: length,
        });
    }
    let full: BTreeSet<usize> = (1..=length).collect();
    let mut punctured = full.clone();
    punctured.remove(&curve);
    let endpoints = [full, punctured];
    let meets = (1..=length)
        .map(|j| {
            endpoints
                .iter()
                .filter(|p| IncidenceModel::on_divisor(p, j))
                .cloned()
                .collect()
        })
        .collect();
    Ok(IncidenceModel {
        length,
        curve,
        endpoints,
        meets,
    })
}

/// `incidence[i][j] = #(C_{i+1} meets d~_{j+1})`.
pub fn incidence_matrix(length: usize) -> Vec<Vec<usize>> {
    (1..=length)
        .map(|i| {
            let model = bs_incidence_model(length, i).expect("curve index in range");
            (1..=length).map(|j| model.count(j)).collect()
        })
        .collect()
}

/// Degree of `sum_j coeffs_j d~_j` on `C_i`, read off the incidence model.
pub fn degree_on_curve(coeffs: &[i64], curve: usize) -> Result<i64> {
    let model = bs_incidence_model(coeffs.len(), curve)?;
    Ok((1..=coeffs.len())
        .map(|j| coeffs[j - 1] * model.count(j) as i64)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CertificateChecks {
    pub lemma_positive_b: bool,
    pub gammas_positive: bool,
    pub gammas_distinct: bool,
    pub pullback_identity: bool,
    pub floor_condition: bool,
    pub pushforward_match: bool,
    pub delta_effective_subunit: bool,
    pub anti_ample_coefficients: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.failed().is_empty()
    }

    pub fn failed(&self) -> Vec<&'static str> {
        [
            ("lemma_positive_b", self.lemma_positive_b),
            ("gammas_positive", self.gammas_positive),
            ("gammas_distinct", self.gammas_distinct),
            ("pullback_identity", self.pullback_identity),
            ("floor_condition", self.floor_condition),
            ("pushforward_match", self.pushforward_match),
            ("delta_effective_subunit", self.delta_effective_subunit),
            ("anti_ample_coefficients", self.anti_ample_coefficients),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

/// Every checkable identity behind the log Fano statement for one reduced
/// word. Ampleness and klt appear only through the coefficient conditions
/// they reduce to (positivity of `-(K + Delta)`, floor of `Delta~` at the
/// Bott-Samelson resolution).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogFanoCertificate {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub word: Word,
    #[serde(rename = "M")]
    pub m: i64,
    pub gamma: Vec<RootVector>,
    pub b: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_height: Option<Vec<i64>>,
    pub divisors: Vec<SchubertDivisor>,
    pub collapsed: Vec<usize>,
    #[serde(rename = "K_bs", serialize_with = "serialize_rationals")]
    pub k_bs: Vec<Rational>,
    #[serde(rename = "K_schubert", serialize_with = "serialize_rationals")]
    pub k_schubert: Vec<Rational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub delta: Vec<Rational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub delta_tilde: Vec<Rational>,
    pub checks: CertificateChecks,
    pub overall: bool,
}

impl LogFanoCertificate {
    pub fn a(&self) -> Vec<i64> {
        self.divisors.iter().map(|d| d.a).collect()
    }
}

pub fn log_fano_certificate(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
    m: Option<i64>,
) -> Result<LogFanoCertificate> {
    let bs = bs_boundary(gcm, word)?;
    if !bs.gamma.iter().all(RootVector::is_positive) {
        return Err(Error::NotReduced(word.0.clone()));
    }
    let sb = schubert_from_bs(gcm, &bs)?;
    let m = match m {
        Some(m) => {
            check_m(sb.max_a(), m)?;
            m
        }
        None => default_m(&sb),
    };

    let k_bs = canonical_bs_from(&bs);
    let k_sch = canonical_schubert_from(&sb);
    let (delta, delta_tilde) = deltas_from(&bs, &sb, m);

    let gammas_positive = bs.gamma.iter().all(RootVector::is_positive);
    let gammas_distinct = bs.gamma.iter().collect::<HashSet<_>>().len() == bs.gamma.len();
    let lemma_positive_b = bs.b.iter().all(|&b| b >= 1);

    let pullback = pullback_from(&k_bs, &delta_tilde, &bs.b, m);

    let rho_bs = RationalDivisor::from_integers(DivisorSpace::BottSamelson, &bs.b);
    let rho_sch = RationalDivisor::from_integers(DivisorSpace::Schubert(sb.labels()), &sb.a());
    let pushforward_match = sb.pushforward(&delta_tilde)? == delta
        && sb.pushforward(&k_bs)? == k_sch
        && sb.pushforward(&rho_bs)? == rho_sch
        && sb.divisors.iter().all(|d| d.a == bs.b[d.position - 1]);

    let delta_effective_subunit = delta
        .coefficients
        .iter()
        .all(|c| *c > Rational::zero() && *c < Rational::one());

    let minus_k_delta = k_sch.add(&delta)?.negated();
    let factor = Rational::new(m + 1, m);
    let anti_ample_coefficients = minus_k_delta
        .coefficients
        .iter()
        .zip(&sb.divisors)
        .all(|(c, d)| *c == factor * int(d.a) && *c > Rational::zero());

    let checks = CertificateChecks {
        lemma_positive_b,
        gammas_positive,
        gammas_distinct,
        pullback_identity: pullback.holds,
        floor_condition: floor_condition(&delta_tilde),
        pushforward_match,
        delta_effective_subunit,
        anti_ample_coefficients,
    };
    let heights = bs.root_heights();
    Ok(LogFanoCertificate {
        cartan_type: gcm.label().to_string(),
        word: word.clone(),
        m,
        root_height: (heights != bs.b).then_some(heights),
        gamma: bs.gamma,
        b: bs.b,
        divisors: sb.divisors,
        collapsed: sb.collapsed,
        k_bs: k_bs.coefficients,
        k_schubert: k_sch.coefficients,
        delta: delta.coefficients,
        delta_tilde: delta_tilde.coefficients,
        overall: checks.all(),
        checks,
    })
}
