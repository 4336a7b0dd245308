//! Exhaustive searches over freely reduced words in `A, B, C` and their inverses.
//!
//! Letters are numbered `0..6` as `A, A^-1, B, B^-1, C, C^-1`, so the inverse of
//! letter `l` is `l ^ 1`. Subtrees below every word of length 2 are searched
//! independently and merged in a fixed order, so reports do not depend on
//! scheduling.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::moebius::{Gen, Matrix, Word};
use crate::scalar::Rational;

use super::arith::{Ball, Bounded, IntMatrix};
use super::{Finding, JorgensenViolation, OracleError, SearchOptions, SearchReport};

/// Longest words [`enumerate_words`](super::enumerate_words) accepts.
pub const ENUMERATION_CAP: usize = 12;
/// Largest total length `|w1| + |w2|` accepted by the Jørgensen scan.
pub const JORGENSEN_CAP: usize = 6;

const PREFIX: usize = 2;

struct Letters {
    float: [Bounded; 6],
    exact: [IntMatrix; 6],
}

impl Letters {
    fn new(gens: &[Matrix<Rational>; 3]) -> Letters {
        let six: [Matrix<Rational>; 6] = std::array::from_fn(|l| {
            let g = &gens[l / 2];
            if l % 2 == 0 {
                g.clone()
            } else {
                g.inverse()
            }
        });
        Letters {
            float: std::array::from_fn(|l| Bounded::from_exact(&six[l])),
            exact: six.map(|m| IntMatrix::from_exact(&m)),
        }
    }

    fn float_of(&self, letters: &[u8]) -> Bounded {
        let mut m = self.float[letters[0] as usize];
        for &l in &letters[1..] {
            m = m.mul(&self.float[l as usize]);
        }
        m
    }

    fn exact_of(&self, letters: &[u8]) -> IntMatrix {
        let mut m = self.exact[letters[0] as usize].clone();
        for &l in &letters[1..] {
            m = m.mul(&self.exact[l as usize]);
        }
        m
    }
}

pub(crate) fn to_word(letters: &[u8]) -> Word {
    Word::from_syllables(letters.iter().map(|&l| {
        let g = Gen::from_index(l as usize / 2).expect("letter index");
        (g, if l % 2 == 0 { 1 } else { -1 })
    }))
}

/// Freely reduced words of length exactly `n`, in lexicographic letter order.
fn words_of_length(n: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * 5);
        for w in &out {
            for l in 0..6u8 {
                if w.last().is_some_and(|&p| p == l ^ 1) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[derive(Default)]
struct Partial {
    counts: Vec<u64>,
    elliptic: Vec<Finding>,
    relations: Vec<Word>,
    elliptic_count: u64,
    relation_count: u64,
    exact_evaluations: u64,
}

struct Walker<'a> {
    letters: &'a Letters,
    limit: usize,
    max_len: usize,
    out: Partial,
    path: Vec<u8>,
    /// Exact products of the prefixes of `path`, filled on demand.
    exact: Vec<Option<IntMatrix>>,
}

impl<'a> Walker<'a> {
    fn new(letters: &'a Letters, limit: usize, max_len: usize) -> Self {
        Walker {
            letters,
            limit,
            max_len,
            out: Partial { counts: vec![0; max_len], ..Partial::default() },
            path: Vec::with_capacity(max_len),
            exact: Vec::with_capacity(max_len),
        }
    }

    fn exact_here(&mut self) -> IntMatrix {
        let depth = self.path.len();
        let mut start = depth;
        while start > 0 && self.exact[start - 1].is_none() {
            start -= 1;
        }
        for i in start..depth {
            let letter = &self.letters.exact[self.path[i] as usize];
            let m = if i == 0 { letter.clone() } else { self.exact[i - 1].as_ref().expect("filled").mul(letter) };
            self.exact[i] = Some(m);
        }
        self.out.exact_evaluations += (depth - start) as u64;
        self.exact[depth - 1].clone().expect("filled")
    }

    fn record_elliptic(&mut self, exact: Option<IntMatrix>) {
        self.out.elliptic_count += 1;
        if self.out.elliptic.len() < self.limit {
            let m = exact.unwrap_or_else(|| self.exact_here());
            self.out.elliptic.push(Finding { word: to_word(&self.path), trace: m.trace() });
        }
    }

    /// Examines the word on `path`, whose float product is `m`.
    fn examine(&mut self, m: &Bounded) {
        self.out.counts[self.path.len() - 1] += 1;
        match m.trace().abs().cmp_f64(2.0) {
            Some(Ordering::Less) => self.record_elliptic(None),
            Some(_) => {}
            None => {
                let e = self.exact_here();
                match e.cmp_abs_trace_two() {
                    Ordering::Less => self.record_elliptic(Some(e)),
                    Ordering::Equal if e.is_pm_identity() => {
                        self.out.relation_count += 1;
                        if self.out.relations.len() < self.limit {
                            self.out.relations.push(to_word(&self.path));
                        }
                    }
                    _ => {}
                }
            }
        }
    }

    fn descend(&mut self, m: Bounded) {
        self.examine(&m);
        if self.path.len() == self.max_len {
            return;
        }
        let last = *self.path.last().expect("nonempty");
        for l in 0..6u8 {
            if l == last ^ 1 {
                continue;
            }
            let child = m.mul(&self.letters.float[l as usize]);
            self.path.push(l);
            self.exact.push(None);
            self.descend(child);
            self.path.pop();
            self.exact.pop();
        }
    }

    fn start(&mut self, prefix: &[u8], subtree: bool) {
        self.path.extend_from_slice(prefix);
        self.exact.resize(prefix.len(), None);
        let m = self.letters.float_of(prefix);
        if subtree {
            self.descend(m);
        } else {
            self.examine(&m);
        }
    }
}

fn merge_findings<T: Clone>(parts: impl Iterator<Item = Vec<T>>, limit: usize, len: impl Fn(&T) -> u64) -> Vec<T> {
    let mut all: Vec<T> = parts.flatten().collect();
    all.sort_by_key(|f| len(f));
    all.truncate(limit);
    all
}

pub(crate) fn enumerate(gens: &[Matrix<Rational>; 3], opts: &SearchOptions) -> Result<SearchReport, OracleError> {
    let max_len = opts.max_length;
    if max_len == 0 {
        return Err(OracleError::ZeroLength);
    }
    if max_len > ENUMERATION_CAP {
        return Err(OracleError::CapExceeded { requested: max_len, cap: ENUMERATION_CAP });
    }
    let letters = Letters::new(gens);
    let prefix = PREFIX.min(max_len);
    let mut tasks: Vec<(Vec<u8>, bool)> = Vec::new();
    for n in 1..prefix {
        tasks.extend(words_of_length(n).into_iter().map(|w| (w, false)));
    }
    tasks.extend(words_of_length(prefix).into_iter().map(|w| (w, true)));

    let run = |(w, subtree): &(Vec<u8>, bool)| {
        let mut walker = Walker::new(&letters, opts.findings_limit, max_len);
        walker.start(w, *subtree);
        walker.out
    };
    let parts: Vec<Partial> =
        if opts.parallel { tasks.par_iter().map(run).collect() } else { tasks.iter().map(run).collect() };

    let mut counts = vec![0u64; max_len];
    let (mut elliptic_count, mut relation_count, mut exact_evaluations) = (0, 0, 0);
    for p in &parts {
        for (c, n) in counts.iter_mut().zip(&p.counts) {
            *c += n;
        }
        elliptic_count += p.elliptic_count;
        relation_count += p.relation_count;
        exact_evaluations += p.exact_evaluations;
    }
    let mut parts = parts;
    let elliptic =
        merge_findings(parts.iter_mut().map(|p| std::mem::take(&mut p.elliptic)), opts.findings_limit, |f| {
            f.word.letter_length()
        });
    let relations =
        merge_findings(parts.iter_mut().map(|p| std::mem::take(&mut p.relations)), opts.findings_limit, |w| {
            w.letter_length()
        });
    let truncated = elliptic_count > elliptic.len() as u64 || relation_count > relations.len() as u64;
    Ok(SearchReport {
        max_word_length: max_len,
        words_by_length: counts,
        elliptic,
        relations,
        jorgensen: Vec::new(),
        elliptic_count,
        relation_count,
        jorgensen_count: 0,
        pairs_examined: 0,
        pairs_skipped: 0,
        exact_evaluations,
        truncated,
    })
}

struct Entry {
    letters: Vec<u8>,
    float: Bounded,
}

/// `|Tr(w1)^2 - 4| + |Tr[w1, w2] - 2|` from the traces of `w1`, `w2`, `w1 w2`.
fn jorgensen_ball(t1: Ball, t2: Ball, t12: Ball) -> (Ball, Ball) {
    let comm = t1.mul(t1).add(t2.mul(t2)).add(t12.mul(t12)).sub(t1.mul(t2).mul(t12)).sub(Ball::exact(2.0));
    let sum = t1.mul(t1).sub(Ball::exact(4.0)).abs().add(comm.sub(Ball::exact(2.0)).abs());
    (sum, comm)
}

fn jorgensen_exact(t1: &Rational, t2: &Rational, t12: &Rational) -> (Rational, Rational) {
    use num_traits::Signed;
    let two = Rational::from_integer(2.into());
    let comm = t1 * t1 + t2 * t2 + t12 * t12 - t1 * t2 * t12 - &two;
    let sum = (t1 * t1 - &two * &two).abs() + (&comm - &two).abs();
    (sum, comm)
}

pub(crate) fn jorgensen(gens: &[Matrix<Rational>; 3], opts: &SearchOptions) -> Result<SearchReport, OracleError> {
    let max_len = opts.max_length;
    if max_len < 2 {
        return Err(OracleError::ZeroLength);
    }
    if max_len > JORGENSEN_CAP {
        return Err(OracleError::CapExceeded { requested: max_len, cap: JORGENSEN_CAP });
    }
    let letters = Letters::new(gens);
    let mut entries = Vec::new();
    let mut counts = vec![0u64; max_len];
    for n in 1..max_len {
        for w in words_of_length(n) {
            counts[n - 1] += 1;
            entries.push(Entry { float: letters.float_of(&w), letters: w });
        }
    }
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    let scan = |i: usize| {
        let first = &entries[i];
        let mut found = Vec::new();
        let (mut count, mut examined, mut skipped, mut exact) = (0u64, 0u64, 0u64, 0u64);
        for (j, second) in entries.iter().enumerate() {
            if i == j || first.letters.len() + second.letters.len() > max_len {
                continue;
            }
            let (sum, comm) =
                jorgensen_ball(first.float.trace(), second.float.trace(), first.float.mul(&second.float).trace());
            let settled_clean = sum.cmp_f64(1.0) == Some(Ordering::Greater);
            let settled_nonelementary = comm.cmp_f64(2.0).is_some_and(|o| o != Ordering::Equal);
            if settled_clean && settled_nonelementary {
                examined += 1;
                continue;
            }
            // Either side is in doubt: decide exactly.
            exact += 1;
            let m1 = letters.exact_of(&first.letters);
            let m2 = letters.exact_of(&second.letters);
            let (t1, t2, t12) = (m1.trace(), m2.trace(), m1.mul(&m2).trace());
            let (value, comm) = jorgensen_exact(&t1, &t2, &t12);
            if comm == two {
                skipped += 1;
                continue;
            }
            examined += 1;
            if value < one {
                count += 1;
                if found.len() < opts.findings_limit {
                    found.push(JorgensenViolation {
                        first: to_word(&first.letters),
                        second: to_word(&second.letters),
                        value,
                    });
                }
            }
        }
        (found, count, examined, skipped, exact)
    };
    let idx: Vec<usize> = (0..entries.len()).collect();
    let parts: Vec<_> =
        if opts.parallel { idx.par_iter().map(|&i| scan(i)).collect() } else { idx.iter().map(|&i| scan(i)).collect() };

    let (mut count, mut examined, mut skipped, mut exact) = (0, 0, 0, 0);
    for p in &parts {
        count += p.1;
        examined += p.2;
        skipped += p.3;
        exact += p.4;
    }
    let jorgensen = merge_findings(parts.into_iter().map(|p| p.0), opts.findings_limit, |v: &JorgensenViolation| {
        v.first.letter_length() + v.second.letter_length()
    });
    Ok(SearchReport {
        max_word_length: max_len,
        words_by_length: counts,
        elliptic: Vec::new(),
        relations: Vec::new(),
        truncated: count > jorgensen.len() as u64,
        jorgensen,
        elliptic_count: 0,
        relation_count: 0,
        jorgensen_count: count,
        pairs_examined: examined,
        pairs_skipped: skipped,
        exact_evaluations: exact,
    })
}
