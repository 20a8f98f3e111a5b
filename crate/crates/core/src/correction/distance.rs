//! Minimum weight of an undetectable, nontrivial error.
//!
//! A violation is a nonzero `v` on the sender's qubits with zero syndrome that lies outside
//! `⟨S_Q,I, S_C,I⟩`. Short searches enumerate candidates directly. Long searches pair up errors
//! of weight at most `h = ⌈W/2⌉`: every violation of weight `w ≤ 2h` splits into two disjoint
//! halves of weight at most `h` with equal syndromes.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::enumerate::{count_up_to, error_from_terms, SyndromeMap};
use crate::code::EacqCode;
use crate::error::{Error, Result};
use crate::gf2::SympVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Enumerate when the candidate count is small, otherwise collide.
    #[default]
    Auto,
    Enumerate,
    Collision,
}

/// Above this many candidates `Auto` switches to the collision search.
const ENUMERATION_LIMIT: u128 = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceOptions {
    pub max_weight: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub strategy: Strategy,
}

impl DistanceOptions {
    pub fn new(max_weight: usize) -> Self {
        Self {
            max_weight,
            threads: None,
            strategy: Strategy::Auto,
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    /// No violation of weight below this exists.
    pub verified_floor: usize,
    /// A violation of weight `verified_floor`, when one was found.
    pub witness: Option<SympVec>,
    /// Every vector of weight at most `searched_weight` was examined.
    pub exhaustive: bool,
    pub searched_weight: usize,
}

impl DistanceReport {
    /// The distance, when the search pinned it down.
    pub fn exact(&self) -> Option<usize> {
        (self.exhaustive && self.witness.is_some()).then_some(self.verified_floor)
    }
}

impl fmt::Display for DistanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.witness, self.exhaustive) {
            (Some(_), true) => write!(f, "d = {} (exhaustive)", self.verified_floor),
            (Some(_), false) => write!(f, "d <= {} (witness found)", self.verified_floor),
            (None, true) => write!(
                f,
                "d >= {} (exhaustive up to weight {})",
                self.verified_floor, self.searched_weight
            ),
            (None, false) => write!(f, "d >= {}", self.verified_floor),
        }
    }
}

/// Distance search with default options.
pub fn distance(code: &EacqCode, max_weight: usize) -> Result<DistanceReport> {
    distance_with(code, &DistanceOptions::new(max_weight))
}

pub fn distance_with(code: &EacqCode, opts: &DistanceOptions) -> Result<DistanceReport> {
    let n = code.n();
    if opts.max_weight > n {
        return Err(Error::InvalidArgument(format!(
            "max weight {} exceeds n = {n}",
            opts.max_weight
        )));
    }
    let strategy = match opts.strategy {
        Strategy::Auto if count_up_to(n, opts.max_weight) <= ENUMERATION_LIMIT => {
            Strategy::Enumerate
        }
        Strategy::Auto => Strategy::Collision,
        s => s,
    };
    let run = || match strategy {
        Strategy::Collision => collide(code, opts.max_weight),
        _ => enumerate(code, opts.max_weight),
    };
    match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn canonical_cmp(a: &SympVec, b: &SympVec) -> Ordering {
    a.weight().cmp(&b.weight()).then_with(|| a.lex_cmp(b))
}

fn keep_min(best: Option<SympVec>, v: SympVec) -> Option<SympVec> {
    match best {
        Some(b) if canonical_cmp(&b, &v) != Ordering::Greater => Some(b),
        _ => Some(v),
    }
}

fn merge_min(a: Option<SympVec>, b: Option<SympVec>) -> Option<SympVec> {
    match b {
        Some(b) => keep_min(a, b),
        None => a,
    }
}

fn enumerate(code: &EacqCode, max_weight: usize) -> Result<DistanceReport> {
    let map = SyndromeMap::new(code);
    let n = code.n();
    for w in 1..=max_weight {
        let found = (0..n)
            .into_par_iter()
            .map(|first| {
                let mut best = None;
                map.walk_from(w, first, &mut |terms, syn| {
                    if syn.iter().all(|x| *x == 0) {
                        let v = error_from_terms(n, terms);
                        if !code.radical_contains(&v) {
                            best = keep_min(best.take(), v);
                        }
                    }
                });
                best
            })
            .reduce(|| None, merge_min);
        if let Some(v) = found {
            return Ok(DistanceReport {
                verified_floor: w,
                witness: Some(v),
                exhaustive: true,
                searched_weight: w,
            });
        }
    }
    Ok(DistanceReport {
        verified_floor: max_weight + 1,
        witness: None,
        exhaustive: true,
        searched_weight: max_weight,
    })
}

/// 64-bit key of a syndrome; exact when the syndrome fits in one word.
#[inline]
fn key_of(syn: &[u64]) -> u64 {
    if syn.len() == 1 {
        return syn[0];
    }
    syn.iter().fold(0xcbf2_9ce4_8422_2325, |h, w| {
        (h ^ w).wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(31)
    })
}

/// Runs `visit` over every error of weight `0..=h`, split into parallel jobs by weight and
/// lowest qubit, and concatenates the per-job results in job order.
fn par_collect<T, F>(map: &SyndromeMap, h: usize, visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[(usize, u8)], &[u64], &mut Vec<T>) + Sync,
{
    let mut jobs: Vec<(usize, usize)> = vec![(0, 0)];
    for w in 1..=h {
        jobs.extend((0..map.n()).map(|first| (w, first)));
    }
    let parts: Vec<Vec<T>> = jobs
        .into_par_iter()
        .map(|(w, first)| {
            let mut out = Vec::new();
            if w == 0 {
                visit(&[], &vec![0u64; map.width()], &mut out);
            } else {
                map.walk_from(w, first, &mut |terms, syn| visit(terms, syn, &mut out));
            }
            out
        })
        .collect();
    parts.into_iter().flatten().collect()
}

fn collide(code: &EacqCode, max_weight: usize) -> Result<DistanceReport> {
    let map = SyndromeMap::new(code);
    let n = code.n();
    let h = max_weight.div_ceil(2);
    let coverage = (2 * h).min(n);

    // Pass 1: keys that occur more than once.
    let mut keys: Vec<u64> = par_collect(&map, h, |_, syn, out| out.push(key_of(syn)));
    keys.par_sort_unstable();
    let mut repeated: Vec<u64> = keys
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .collect();
    drop(keys);
    repeated.dedup();

    // Pass 2: materialize only the colliding errors, grouped by exact syndrome.
    let hits: Vec<(Vec<u64>, SympVec)> = par_collect(&map, h, |terms, syn, out| {
        if repeated.binary_search(&key_of(syn)).is_ok() {
            out.push((syn.to_vec(), error_from_terms(n, terms)));
        }
    });
    let mut groups: HashMap<Vec<u64>, Vec<SympVec>> = HashMap::new();
    for (syn, e) in hits {
        groups.entry(syn).or_default().push(e);
    }
    let mut groups: Vec<Vec<SympVec>> = groups.into_values().collect();
    groups.sort_by(|a, b| canonical_cmp(&a[0], &b[0]));

    let best = groups
        .par_iter()
        .map(|group| best_in_group(code, group))
        .reduce(|| None, merge_min);

    Ok(match best {
        Some(v) => DistanceReport {
            verified_floor: v.weight(),
            witness: Some(v),
            exhaustive: true,
            searched_weight: coverage,
        },
        None => DistanceReport {
            verified_floor: coverage + 1,
            witness: None,
            exhaustive: true,
            searched_weight: coverage,
        },
    })
}

/// Smallest `a + b` over pairs of one syndrome class lying in different radical cosets.
fn best_in_group(code: &EacqCode, group: &[SympVec]) -> Option<SympVec> {
    let mut cosets: Vec<(Vec<u64>, Vec<&SympVec>)> = Vec::new();
    for e in group {
        let class = code.radical_class(e);
        match cosets.iter_mut().find(|(c, _)| *c == class) {
            Some((_, members)) => members.push(e),
            None => cosets.push((class, vec![e])),
        }
    }
    let mut best = None;
    for i in 0..cosets.len() {
        for j in i + 1..cosets.len() {
            for a in &cosets[i].1 {
                for b in &cosets[j].1 {
                    best = keep_min(best, *a + *b);
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::correction::syndrome;
    use crate::gf2::SympMat;

    fn is_violation(code: &EacqCode, v: &SympVec) -> bool {
        !v.is_zero() && syndrome(code, v).unwrap().is_zero() && !code.radical_contains(v)
    }

    #[test]
    fn small_catalog_distances() {
        let cases = [
            (catalog::shor_9_1_3(), 3),
            (catalog::eaqecc_8_1_3_1(), 3),
            // Y₆Y₉ and Y₂Y₇ commute with S_Q and lie outside ⟨S_Q,I, S_C,I⟩.
            (catalog::eacq_9_1_3(), 2),
            (catalog::eacq_8_1_3_1(), 2),
        ];
        for (named, d) in cases {
            for strategy in [Strategy::Enumerate, Strategy::Collision] {
                let opts = DistanceOptions::new(3).strategy(strategy);
                let r = distance_with(&named.code, &opts).unwrap();
                assert_eq!(r.exact(), Some(d), "{} {strategy:?}", named.name);
                let w = r.witness.unwrap();
                assert_eq!(w.weight(), d);
                assert!(is_violation(&named.code, &w));
            }
        }
    }

    #[test]
    fn floors_without_witness() {
        let code = catalog::shor_code();
        let r = distance(&code, 2).unwrap();
        assert_eq!(
            (r.verified_floor, r.exhaustive, &r.witness),
            (3, true, &None)
        );
        assert_eq!(r.to_string(), "d >= 3 (exhaustive up to weight 2)");
        let r = distance_with(
            &code,
            &DistanceOptions::new(1).strategy(Strategy::Collision),
        )
        .unwrap();
        assert_eq!((r.verified_floor, r.searched_weight), (3, 2));
        assert!(distance(&code, 10).is_err());
    }

    #[test]
    fn strategies_agree_on_witness() {
        let code = catalog::eaqecc_8_1_3_1().code;
        let a = distance_with(
            &code,
            &DistanceOptions::new(4).strategy(Strategy::Enumerate),
        );
        let b = distance_with(
            &code,
            &DistanceOptions::new(4).strategy(Strategy::Collision),
        );
        let (a, b) = (a.unwrap(), b.unwrap());
        assert_eq!(
            (a.verified_floor, &a.witness),
            (b.verified_floor, &b.witness)
        );
        let c = distance_with(&code, &DistanceOptions::new(4).threads(2)).unwrap();
        assert_eq!(c.to_string(), "d = 3 (exhaustive)");
    }

    #[test]
    fn witness_is_canonical_minimum() {
        // Repetition-style code on 3 qubits: X errors of weight 3 are logical.
        let hq = SympMat::from_strs(3, &["110|000", "011|000"]).unwrap();
        let code = EacqCode::eaqecc(hq).unwrap();
        let r = distance(&code, 3).unwrap();
        assert_eq!(r.verified_floor, 1);
        let w = r.witness.unwrap();
        assert!(is_violation(&code, &w));
        for q in 0..3 {
            for (z, x) in [(true, false), (false, true), (true, true)] {
                let v = SympVec::single(3, q, z, x);
                if is_violation(&code, &v) {
                    assert_ne!(canonical_cmp(&v, &w), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn code_without_logicals_has_no_violation() {
        let hq = SympMat::from_strs(1, &["1|0", "0|1"]).unwrap();
        let code = EacqCode::eaqecc(hq).unwrap();
        let r = distance(&code, 1).unwrap();
        assert_eq!((r.verified_floor, r.witness), (2, None));
    }

    #[test]
    fn key_is_exact_for_single_words() {
        assert_eq!(key_of(&[42]), 42);
        assert_ne!(key_of(&[1, 0]), key_of(&[0, 1]));
    }
}
