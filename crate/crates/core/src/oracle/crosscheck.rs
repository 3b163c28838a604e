use std::fmt;

use rayon::prelude::*;

use crate::alphabet::{show, words_up_to, Word};
use crate::error::{Error, Result};
use crate::semigroups::WordProblemObject;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub left: Word,
    pub right: Word,
    pub recognizer: bool,
    pub oracle: bool,
}

/// Outcome of comparing recognizer and oracle on every pair within bounds.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub max_left: usize,
    pub max_right: usize,
    pub total: usize,
    pub accepted: usize,
    pub mismatch_count: usize,
    /// The first 20 mismatches in enumeration order.
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn ok(&self) -> bool {
        self.mismatch_count == 0
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bounds: |u| <= {}, |v| <= {}", self.max_left, self.max_right)?;
        writeln!(f, "queries: {}", self.total)?;
        writeln!(f, "accepted: {}", self.accepted)?;
        writeln!(f, "mismatches: {}", self.mismatch_count)?;
        for m in &self.mismatches {
            writeln!(
                f,
                "  u = {}, v = {}: recognizer {}, oracle {}",
                show(&m.left),
                show(&m.right),
                if m.recognizer { "accepts" } else { "rejects" },
                if m.oracle { "equal" } else { "different" }
            )?;
        }
        Ok(())
    }
}

const KEEP: usize = 20;

/// Compares `accepts(u # v^rev)` with the oracle for all `u`, `v` within the
/// bounds, in length-lexicographic order. Semigroup objects skip empty sides.
/// `jobs` bounds the worker threads; the report does not depend on it.
pub fn cross_check(w: &WordProblemObject, max_left: usize, max_right: usize, jobs: usize) -> Result<CrossCheckReport> {
    let rec = w.require_recognizer()?;
    rec.prepare();
    let keep = |x: &Word| w.is_monoid() || !x.is_empty();
    let lefts: Vec<Word> = words_up_to(w.alphabet().names(), max_left).into_iter().filter(keep).collect();
    let rights: Vec<Word> = words_up_to(w.alphabet().names(), max_right).into_iter().filter(keep).collect();
    let row = |u: &Word| -> Result<(usize, Vec<Mismatch>, usize)> {
        let mut acc = 0;
        let mut ms = Vec::new();
        let mut count = 0;
        for v in &rights {
            let r = w.accepts_pair(u, v)?;
            let o = w.oracle_equal(u, v)?;
            acc += r as usize;
            if r != o {
                count += 1;
                if ms.len() < KEEP {
                    ms.push(Mismatch { left: u.clone(), right: v.clone(), recognizer: r, oracle: o });
                }
            }
        }
        Ok((acc, ms, count))
    };
    let rows: Vec<Result<(usize, Vec<Mismatch>, usize)>> = if jobs <= 1 {
        lefts.iter().map(row).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::internal(format!("thread pool: {e}")))?;
        pool.install(|| lefts.par_iter().map(row).collect())
    };
    let mut report = CrossCheckReport {
        max_left,
        max_right,
        total: lefts.len() * rights.len(),
        accepted: 0,
        mismatch_count: 0,
        mismatches: Vec::new(),
    };
    for r in rows {
        let (acc, ms, count) = r?;
        report.accepted += acc;
        report.mismatch_count += count;
        for m in ms {
            if report.mismatches.len() < KEEP {
                report.mismatches.push(m);
            }
        }
    }
    Ok(report)
}
