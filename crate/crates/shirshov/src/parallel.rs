//! Multi-threaded driver for the avoider search.
//!
//! The prefix tree is cut at a fixed depth; every frontier word becomes an
//! independent task and the partial reports are merged in frontier order,
//! so the result does not depend on the number of workers.

use rayon::prelude::*;
use shirshov_core::search::{explore_subtree, split_frontier, AvoiderQuery, SearchReport};

use crate::error::Result;

pub const DEFAULT_SPLIT_DEPTH: usize = 4;

pub fn search(q: &AvoiderQuery, workers: usize, split_depth: usize) -> Result<SearchReport> {
    let (head, frontier) = split_frontier(q, split_depth)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
    let parts: Vec<_> = pool.install(|| frontier.par_iter().map(|prefix| explore_subtree(q, prefix)).collect());
    let mut report = head;
    for part in parts {
        report = report.merge(&part?);
    }
    Ok(report)
}
