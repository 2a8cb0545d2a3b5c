//! Rayon drivers for the enumeration and the mutation search.
//!
//! Both produce exactly what the sequential core functions produce: the
//! enumeration is sorted afterwards, and the BFS expands a whole level in
//! parallel but merges it in frontier order.

use excoll_core::cohomology::CzTable;
use excoll_core::collection::Enumerator;
use excoll_core::mutation::{self, neighbors, FullnessCertificate, NotFound, SearchTree};
use excoll_core::{Collection, VarietyDescriptor};
use rayon::prelude::*;

/// Normalized exceptional collections of length `length` in `[-radius, radius]^2`.
pub fn enumerate(cz: &CzTable, radius: i64, length: usize) -> Vec<Collection> {
    let e = Enumerator::new(cz, radius, length);
    if length <= 1 {
        return e.run();
    }
    let mut out: Vec<Collection> = e
        .seeds()
        .par_iter()
        .flat_map_iter(|s| e.complete(s))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn enumerate_maximal(v: &VarietyDescriptor, radius: i64) -> Vec<Collection> {
    let cz = CzTable::new(v, 2 * radius);
    enumerate(&cz, radius, v.max_length)
}

/// Same contract as [`excoll_core::mutation::search`].
pub fn search(
    cz: &CzTable,
    sources: &[Collection],
    radius: i64,
    budget: usize,
    goal: impl Fn(&Collection) -> bool + Sync,
) -> Result<(SearchTree, usize), (SearchTree, NotFound)> {
    let mut tree = SearchTree::with_sources(sources);
    if let Some(k) = (0..tree.len()).find(|&k| goal(&tree.states[k])) {
        return Ok((tree, k));
    }
    let mut lo = 0;
    while lo < tree.len() {
        let hi = tree.len();
        let expanded: Vec<_> = tree.states[lo..hi]
            .par_iter()
            .map(|s| neighbors(cz, s, radius))
            .collect();
        for (off, edges) in expanded.into_iter().enumerate() {
            for e in edges {
                if let Some(k) = tree.insert(lo + off, e) {
                    if goal(&tree.states[k]) {
                        return Ok((tree, k));
                    }
                    if tree.len() >= budget {
                        let explored = tree.len();
                        return Err((
                            tree,
                            NotFound {
                                explored,
                                budget_exhausted: true,
                            },
                        ));
                    }
                }
            }
        }
        lo = hi;
    }
    let explored = tree.len();
    Err((
        tree,
        NotFound {
            explored,
            budget_exhausted: false,
        },
    ))
}

pub fn explore(cz: &CzTable, sources: &[Collection], radius: i64, budget: usize) -> SearchTree {
    match search(cz, sources, radius, budget, |_| false) {
        Ok((t, _)) | Err((t, _)) => t,
    }
}

/// Parallel form of [`excoll_core::mutation::verify_fullness`].
pub fn verify_fullness(
    cz: &CzTable,
    target: &Collection,
    radius: i64,
    budget: usize,
) -> Result<Result<FullnessCertificate, NotFound>, excoll_core::Error> {
    let v = cz.variety();
    if !excoll_core::collection::is_exceptional(cz, &target.members) || target.len() != v.max_length
    {
        return Err(excoll_core::Error::NotExceptional);
    }
    let goal = target.normalized();
    let seeds = mutation::orlov_seeds(v, radius);
    Ok(match search(cz, &seeds, radius, budget, |c| *c == goal) {
        Ok((tree, _)) => Ok(tree
            .certificate(v, target)
            .expect("goal state is in the tree")),
        Err((_, nf)) => Err(nf),
    })
}
