//! Brute-force machinery used to cross-check the divisor calculus: Cayley
//! graph enumeration, Bruhat order through the subword property, reduced
//! word listings, and exhaustive certificate sweeps.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::rc::Rc;

use serde::Serialize;

use crate::cartan::{CartanClass, GeneralizedCartanMatrix};
use crate::divisor::{
    bs_boundary, curve_intersection, degree_on_curve, log_fano_certificate, RealRoot,
};
use crate::error::{Error, Result};
use crate::weyl::{
    canonical_reduced_word, element_of, inversions, is_reduced, length, Weight, WeylElement, Word,
};

/// Element cap applied to non-finite types when none is given.
pub const DEFAULT_CAP: usize = 10_000;

/// Weyl group elements reached by breadth-first search from the identity.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub elements: Vec<WeylElement>,
    /// BFS depth of each element.
    pub lengths: Vec<usize>,
    pub canonical_words: Vec<Word>,
    /// `right[k][i]` is the index of `elements[k] * s_{i+1}`, if enumerated.
    pub right: Vec<Vec<Option<usize>>>,
    /// `left[k][i]` is the index of `s_{i+1} * elements[k]`, if enumerated.
    pub left: Vec<Vec<Option<usize>>>,
    index: HashMap<WeylElement, usize>,
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, element: &WeylElement) -> Option<usize> {
        self.index.get(element).copied()
    }

    pub fn max_length(&self) -> usize {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    /// Covers of the element of `word_w`: table elements one shorter that
    /// lie below it in Bruhat order.
    pub fn covers(&self, gcm: &GeneralizedCartanMatrix, word_w: &Word) -> Result<Vec<WeylElement>> {
        let ideal = lower_ideal(gcm, word_w)?;
        let target = word_w.len().checked_sub(1);
        let mut out: Vec<(Word, WeylElement)> = self
            .elements
            .iter()
            .enumerate()
            .filter(|(k, e)| Some(self.lengths[*k]) == target && ideal.contains_key(*e))
            .map(|(k, e)| (self.canonical_words[k].clone(), e.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out.into_iter().map(|(_, e)| e).collect())
    }
}

/// Breadth-first enumeration by right multiplication. Non-finite types need
/// an explicit `cap`; `max_length` truncates the search to a ball.
pub fn enumerate_group(
    gcm: &GeneralizedCartanMatrix,
    cap: Option<usize>,
    max_length: Option<usize>,
) -> Result<GroupTable> {
    if cap.is_none() && gcm.classify() != CartanClass::Finite {
        return Err(Error::NotFiniteType);
    }
    let n = gcm.rank();
    let id = WeylElement::identity(n);
    let mut elements = vec![id.clone()];
    let mut lengths = vec![0usize];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut right = vec![vec![None; n]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        if max_length.is_some_and(|m| lengths[k] >= m) {
            continue;
        }
        for i in 1..=n {
            let next = elements[k].mul_simple_right(gcm, i)?;
            let idx = match index.get(&next) {
                Some(&idx) => idx,
                None => {
                    if cap.is_some_and(|c| elements.len() >= c) {
                        return Err(Error::CapExceeded(cap.unwrap_or_default()));
                    }
                    let idx = elements.len();
                    index.insert(next.clone(), idx);
                    elements.push(next);
                    lengths.push(lengths[k] + 1);
                    right.push(vec![None; n]);
                    queue.push_back(idx);
                    idx
                }
            };
            right[k][i - 1] = Some(idx);
        }
    }
    let left = elements
        .iter()
        .map(|e| {
            (1..=n)
                .map(|i| Ok(index.get(&e.mul_simple_left(gcm, i)?).copied()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let canonical_words = elements
        .iter()
        .map(|e| canonical_reduced_word(gcm, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupTable {
        elements,
        lengths,
        canonical_words,
        right,
        left,
        index,
    })
}

/// Every element with a reduced subword of `word`, with its length.
///
/// Built position by position: `x` extends to `x s` whenever `s` is a right
/// ascent of `x`, so every stored element comes from a reduced subword.
pub fn lower_ideal(
    gcm: &GeneralizedCartanMatrix,
    word: &Word,
) -> Result<HashMap<WeylElement, usize>> {
    if !is_reduced(gcm, word)? {
        return Err(Error::NotReduced(word.0.clone()));
    }
    let mut ideal = HashMap::from([(WeylElement::identity(gcm.rank()), 0usize)]);
    for &s in word.letters() {
        let mut grown = Vec::new();
        for (x, &l) in &ideal {
            if !x.has_right_descent(s)? {
                grown.push((x.mul_simple_right(gcm, s)?, l + 1));
            }
        }
        for (x, l) in grown {
            ideal.entry(x).or_insert(l);
        }
    }
    Ok(ideal)
}

/// Subword criterion: `u <= w` iff some subword of a reduced word of `w` is
/// a reduced word of `u`.
pub fn bruhat_leq(
    gcm: &GeneralizedCartanMatrix,
    u: &WeylElement,
    w: &WeylElement,
    word_w: &Word,
) -> Result<bool> {
    if &element_of(gcm, word_w)? != w {
        return Err(Error::Parse(format!(
            "{word_w} is not a word for the given element"
        )));
    }
    Ok(lower_ideal(gcm, word_w)?.contains_key(u))
}

/// Covers computed from reduced subwords alone, ordered by canonical word.
pub fn bruhat_covers(gcm: &GeneralizedCartanMatrix, word_w: &Word) -> Result<Vec<WeylElement>> {
    let Some(target) = word_w.len().checked_sub(1) else {
        return Ok(Vec::new());
    };
    let mut out = lower_ideal(gcm, word_w)?
        .into_iter()
        .filter(|(_, l)| *l == target)
        .map(|(e, _)| Ok((canonical_reduced_word(gcm, &e)?, e)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, e)| e).collect())
}

/// All reduced words of `element`, sorted lexicographically.
pub fn all_reduced_words(
    gcm: &GeneralizedCartanMatrix,
    element: &WeylElement,
    cap: usize,
) -> Result<Vec<Word>> {
    let mut memo = HashMap::new();
    let words = reduced_words_rec(gcm, element, cap, &mut memo)?;
    Ok(words.iter().map(|w| Word::new(w.clone())).collect())
}

fn reduced_words_rec(
    gcm: &GeneralizedCartanMatrix,
    x: &WeylElement,
    cap: usize,
    memo: &mut HashMap<WeylElement, Rc<Vec<Vec<usize>>>>,
) -> Result<Rc<Vec<Vec<usize>>>> {
    if let Some(hit) = memo.get(x) {
        return Ok(hit.clone());
    }
    let out = if x.is_identity() {
        vec![Vec::new()]
    } else {
        let mut out = Vec::new();
        for i in 1..=gcm.rank() {
            if !x.has_left_descent(i)? {
                continue;
            }
            let rest = reduced_words_rec(gcm, &x.mul_simple_left(gcm, i)?, cap, memo)?;
            for tail in rest.iter() {
                if out.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                let mut word = Vec::with_capacity(tail.len() + 1);
                word.push(i);
                word.extend_from_slice(tail);
                out.push(word);
            }
        }
        out
    };
    let out = Rc::new(out);
    memo.insert(x.clone(), out.clone());
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MPolicy {
    /// `M = max a_j + 1`.
    Minimal,
    /// `M = max a_j + k` with `k >= 1`.
    Offset(i64),
    Fixed(i64),
}

impl MPolicy {
    fn choose(self, max_a: i64) -> Option<i64> {
        match self {
            MPolicy::Minimal => None,
            MPolicy::Offset(k) => Some(max_a + k),
            MPolicy::Fixed(m) => Some(m),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub max_length: usize,
    /// Check every reduced word regardless of length.
    pub all_words: bool,
    /// Below this length every reduced word is checked anyway.
    pub all_words_up_to: usize,
    pub m_policy: MPolicy,
    /// Element cap for the group table; required for non-finite types.
    pub cap: Option<usize>,
    /// Cap on the number of reduced words listed per element.
    pub word_cap: usize,
}

impl SweepOptions {
    pub fn new(max_length: usize) -> Self {
        SweepOptions {
            max_length,
            all_words: false,
            all_words_up_to: 6,
            m_policy: MPolicy::Minimal,
            cap: None,
            word_cap: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub word: Word,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub elements_checked: usize,
    pub words_checked: usize,
    pub failures: Vec<SweepFailure>,
    /// Smallest `b_i` seen over all checked words, if any word was nonempty.
    #[serde(skip)]
    pub min_b: Option<i64>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct ElementOutcome {
    words: usize,
    failures: Vec<SweepFailure>,
    min_b: Option<i64>,
}

fn fail(word: &Word, check: &str, detail: impl Into<String>) -> SweepFailure {
    SweepFailure {
        word: word.clone(),
        check: check.to_string(),
        detail: detail.into(),
    }
}

fn check_word(
    gcm: &GeneralizedCartanMatrix,
    table: &GroupTable,
    k: usize,
    word: &Word,
    policy: MPolicy,
    out: &mut ElementOutcome,
) -> Result<Option<Vec<(Word, i64)>>> {
    let ell = word.len();
    let bs = bs_boundary(gcm, word)?;
    if let Some(&m) = bs.b.iter().min() {
        out.min_b = Some(out.min_b.map_or(m, |x| x.min(m)));
    }
    let preview = crate::divisor::schubert_boundary(gcm, word)?;
    let m = policy.choose(preview.max_a());
    let cert = match log_fano_certificate(gcm, word, m) {
        Ok(c) => c,
        Err(e @ Error::MTooSmall { .. }) => {
            out.failures.push(fail(word, "m_too_small", e.to_string()));
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    for name in cert.checks.failed() {
        out.failures.push(fail(
            word,
            name,
            format!("b = {:?}, a = {:?}", cert.b, cert.a()),
        ));
    }

    // Cover correspondence against the subword oracle.
    let labels: Vec<WeylElement> = cert
        .divisors
        .iter()
        .map(|d| element_of(gcm, &d.label))
        .collect::<Result<_>>()?;
    let covers = table.covers(gcm, word)?;
    let mut sorted_labels: Vec<usize> = labels.iter().filter_map(|e| table.index_of(e)).collect();
    let mut sorted_covers: Vec<usize> = covers.iter().filter_map(|e| table.index_of(e)).collect();
    sorted_labels.sort_unstable();
    sorted_covers.sort_unstable();
    if labels.len() != covers.len()
        || sorted_labels != sorted_covers
        || sorted_labels.len() != labels.len()
    {
        out.failures.push(fail(
            word,
            "cover_correspondence",
            format!("{} divisors vs {} covers", labels.len(), covers.len()),
        ));
    }

    // Two computations of b_i.
    let rho = Weight::rho(gcm.rank());
    for pos in 1..=ell {
        let via_curve = curve_intersection(gcm, &rho, &RealRoot::gamma(word, pos))?;
        let via_incidence = degree_on_curve(&bs.b, pos)?;
        if via_curve != bs.b[pos - 1] || via_incidence != bs.b[pos - 1] {
            out.failures.push(fail(
                word,
                "curve_intersection",
                format!(
                    "position {pos}: b = {}, curve = {via_curve}, incidence = {via_incidence}",
                    bs.b[pos - 1]
                ),
            ));
        }
    }

    let inv = inversions(gcm, word)?;
    if inv.len() != ell || table.lengths[k] != ell {
        out.failures.push(fail(
            word,
            "inversion_count",
            format!(
                "{} inversions, table length {}, word length {ell}",
                inv.len(),
                table.lengths[k]
            ),
        ));
    }

    let mut signature: Vec<(Word, i64)> = cert
        .divisors
        .iter()
        .map(|d| (d.label.clone(), d.a))
        .collect();
    signature.sort();
    Ok(Some(signature))
}

fn check_element(
    gcm: &GeneralizedCartanMatrix,
    table: &GroupTable,
    k: usize,
    opts: &SweepOptions,
) -> Result<ElementOutcome> {
    let mut out = ElementOutcome::default();
    let element = &table.elements[k];
    let canonical = &table.canonical_words[k];
    let greedy = length(gcm, element)?;
    if greedy != table.lengths[k] {
        out.failures.push(fail(
            canonical,
            "length_mismatch",
            format!("bfs {} vs greedy {greedy}", table.lengths[k]),
        ));
    }
    let words = if opts.all_words || table.lengths[k] <= opts.all_words_up_to {
        all_reduced_words(gcm, element, opts.word_cap)?
    } else {
        vec![canonical.clone()]
    };
    let mut signatures: BTreeMap<Vec<(Word, i64)>, Word> = BTreeMap::new();
    for word in &words {
        out.words += 1;
        if let Some(sig) = check_word(gcm, table, k, word, opts.m_policy, &mut out)? {
            signatures.entry(sig).or_insert_with(|| word.clone());
        }
    }
    if signatures.len() > 1 {
        out.failures.push(fail(
            canonical,
            "reduced_word_independence",
            format!("{} distinct divisor signatures", signatures.len()),
        ));
    }
    Ok(out)
}

/// Runs the certificate and every cross-check over all elements of length at
/// most `max_length`. Elements are visited in (length, canonical word) order
/// and failures are reported in that order.
pub fn sweep_certificates(
    gcm: &GeneralizedCartanMatrix,
    opts: &SweepOptions,
) -> Result<SweepReport> {
    let cap = match (opts.cap, gcm.classify()) {
        (Some(c), _) => Some(c),
        (None, CartanClass::Finite) => None,
        (None, _) => Some(DEFAULT_CAP),
    };
    let table = enumerate_group(gcm, cap, Some(opts.max_length))?;
    let mut order: Vec<usize> = (0..table.len()).collect();
    order.sort_by(|&x, &y| {
        (table.lengths[x], &table.canonical_words[x])
            .cmp(&(table.lengths[y], &table.canonical_words[y]))
    });

    let outcomes = map_elements(&order, |k| check_element(gcm, &table, k, opts))?;

    let mut report = SweepReport {
        cartan_type: gcm.label().to_string(),
        elements_checked: order.len(),
        words_checked: 0,
        failures: Vec::new(),
        min_b: None,
    };
    for o in outcomes {
        report.words_checked += o.words;
        report.failures.extend(o.failures);
        if let Some(m) = o.min_b {
            report.min_b = Some(report.min_b.map_or(m, |x| x.min(m)));
        }
    }
    Ok(report)
}

#[cfg(feature = "parallel")]
fn map_elements<F>(order: &[usize], f: F) -> Result<Vec<ElementOutcome>>
where
    F: Fn(usize) -> Result<ElementOutcome> + Sync,
{
    use rayon::prelude::*;
    order.par_iter().map(|&k| f(k)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_elements<F>(order: &[usize], f: F) -> Result<Vec<ElementOutcome>>
where
    F: Fn(usize) -> Result<ElementOutcome>,
{
    order.iter().map(|&k| f(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> GeneralizedCartanMatrix {
        GeneralizedCartanMatrix::builtin(name).unwrap()
    }

    fn w(letters: &[usize]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn group_orders() {
        for (name, order, top) in [
            ("A2", 6, 3),
            ("A3", 24, 6),
            ("B2", 8, 4),
            ("B3", 48, 9),
            ("G2", 12, 6),
        ] {
            let t = enumerate_group(&g(name), None, None).unwrap();
            assert_eq!(t.len(), order, "{name}");
            assert_eq!(t.max_length(), top, "{name}");
        }
        let b2 = enumerate_group(&g("B2"), None, None).unwrap();
        let w0 = element_of(&g("B2"), &w(&[1, 2, 1, 2])).unwrap();
        assert_eq!(b2.lengths[b2.index_of(&w0).unwrap()], 4);
    }

    #[test]
    fn cayley_adjacency_is_consistent() {
        let gcm = g("A3");
        let t = enumerate_group(&gcm, None, None).unwrap();
        for k in 0..t.len() {
            for i in 0..3 {
                let r = t.right[k][i].unwrap();
                assert_eq!(t.right[r][i], Some(k));
                let l = t.left[k][i].unwrap();
                assert_eq!(t.left[l][i], Some(k));
                assert_eq!(t.lengths[r].abs_diff(t.lengths[k]), 1);
            }
        }
    }

    #[test]
    fn infinite_groups_need_a_cap() {
        let aff = g("A1~");
        assert_eq!(
            enumerate_group(&aff, None, None).unwrap_err(),
            Error::NotFiniteType
        );
        assert_eq!(
            enumerate_group(&aff, Some(10), None).unwrap_err(),
            Error::CapExceeded(10)
        );
        let ball = enumerate_group(&aff, Some(100), Some(8)).unwrap();
        assert_eq!(ball.len(), 17);
    }

    #[test]
    fn bruhat_order_examples() {
        let a2 = g("A2");
        let w0w = w(&[1, 2, 1]);
        let w0 = element_of(&a2, &w0w).unwrap();
        let e = WeylElement::identity(2);
        assert!(bruhat_leq(&a2, &e, &w0, &w0w).unwrap());
        let s1s2 = element_of(&a2, &w(&[1, 2])).unwrap();
        assert!(bruhat_leq(&a2, &s1s2, &w0, &w0w).unwrap());
        let s1 = element_of(&a2, &w(&[1])).unwrap();
        assert!(!bruhat_leq(&a2, &w0, &s1, &w(&[1])).unwrap());
        let s2 = element_of(&a2, &w(&[2])).unwrap();
        assert!(!bruhat_leq(&a2, &s2, &s1, &w(&[1])).unwrap());
        assert!(matches!(
            bruhat_leq(&a2, &e, &e, &w(&[1, 1])),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn cover_examples() {
        let a2 = g("A2");
        let covers = bruhat_covers(&a2, &w(&[1, 2, 1])).unwrap();
        assert_eq!(
            covers,
            vec![
                element_of(&a2, &w(&[1, 2])).unwrap(),
                element_of(&a2, &w(&[2, 1])).unwrap()
            ]
        );
        assert_eq!(
            bruhat_covers(&g("G2"), &w(&[2])).unwrap(),
            vec![WeylElement::identity(2)]
        );
        assert_eq!(bruhat_covers(&g("B2"), &w(&[1, 2, 1, 2])).unwrap().len(), 2);
        let table = enumerate_group(&a2, None, None).unwrap();
        assert_eq!(table.covers(&a2, &w(&[1, 2, 1])).unwrap(), covers);
    }

    #[test]
    fn reduced_word_listings() {
        let a2 = g("A2");
        let w0 = element_of(&a2, &w(&[1, 2, 1])).unwrap();
        assert_eq!(
            all_reduced_words(&a2, &w0, 100).unwrap(),
            vec![w(&[1, 2, 1]), w(&[2, 1, 2])]
        );
        assert_eq!(
            all_reduced_words(&a2, &WeylElement::identity(2), 100).unwrap(),
            vec![Word::empty()]
        );
        let a3 = g("A3");
        let w0 = element_of(&a3, &w(&[1, 2, 1, 3, 2, 1])).unwrap();
        let words = all_reduced_words(&a3, &w0, 100).unwrap();
        assert_eq!(words.len(), 16);
        for word in &words {
            assert!(is_reduced(&a3, word).unwrap());
            assert_eq!(element_of(&a3, word).unwrap(), w0);
        }
        assert_eq!(
            all_reduced_words(&a3, &w0, 10).unwrap_err(),
            Error::CapExceeded(10)
        );
    }

    #[test]
    fn braid_closure() {
        // Any single braid move on a listed word gives another listed word.
        let gcm = g("B3");
        let w0 = enumerate_group(&gcm, None, None)
            .unwrap()
            .elements
            .into_iter()
            .find(|e| length(&gcm, e).unwrap() == 9)
            .unwrap();
        let words = all_reduced_words(&gcm, &w0, 10_000).unwrap();
        let set: std::collections::HashSet<_> = words.iter().cloned().collect();
        let m = |i: usize, j: usize| match gcm.entry(i - 1, j - 1) * gcm.entry(j - 1, i - 1) {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => 6,
        };
        for word in &words {
            let l = word.letters();
            for start in 0..l.len() {
                let (i, j) = (l[start], *l.get(start + 1).unwrap_or(&0));
                if j == 0 || i == j {
                    continue;
                }
                let k = m(i, j);
                if start + k > l.len() {
                    continue;
                }
                let alternating = (0..k).all(|t| l[start + t] == if t % 2 == 0 { i } else { j });
                if !alternating {
                    continue;
                }
                let mut moved = l.to_vec();
                for t in 0..k {
                    moved[start + t] = if t % 2 == 0 { j } else { i };
                }
                assert!(set.contains(&Word::new(moved)), "{word}");
            }
        }
    }

    #[test]
    fn small_sweeps_pass() {
        let a2 = sweep_certificates(&g("A2"), &SweepOptions::new(3)).unwrap();
        assert!(a2.passed(), "{:?}", a2.failures);
        assert_eq!(a2.elements_checked, 6);
        assert_eq!(a2.words_checked, 1 + 1 + 1 + 1 + 1 + 2);
        assert_eq!(a2.min_b, Some(1));

        let mut opts = SweepOptions::new(8);
        opts.m_policy = MPolicy::Offset(3);
        let aff = sweep_certificates(&g("A1~"), &opts).unwrap();
        assert!(aff.passed());
        assert_eq!(aff.elements_checked, 17);
    }

    #[test]
    fn fixed_m_too_small_is_a_failure() {
        let mut opts = SweepOptions::new(3);
        opts.m_policy = MPolicy::Fixed(2);
        let report = sweep_certificates(&g("A1~"), &opts).unwrap();
        assert!(report.failures.iter().any(|f| f.check == "m_too_small"));
    }
}
