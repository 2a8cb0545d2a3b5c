//! Mutation moves on line-bundle collections, Orlov seeds and BFS certificates.
//!
//! Only moves that stay among line bundles are modelled: transposition of an
//! orthogonal pair, helix rotation, tensoring by a line bundle and
//! replacement of a single member (both collections full or neither is).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cohomology::{CzOracle, CzTable};
use crate::collection::is_exceptional;
use crate::divisor::{Collection, Divisor};
use crate::error::Error;
use crate::variety::{Fibration, VarietyDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum MutationMove {
    /// Transpose members `index` and `index + 1`.
    SwapAt {
        index: usize,
    },
    /// `(A_1, ..., A_n) -> (A_2, ..., A_n, A_1 - K)`.
    HelixLeft,
    /// `(A_1, ..., A_n) -> (A_n + K, A_1, ..., A_{n-1})`.
    HelixRight,
    Tensor {
        divisor: Divisor,
    },
    ReplaceAt {
        index: usize,
        divisor: Divisor,
    },
}

fn refuse(why: String) -> Error {
    Error::MoveNotAdmissible(why)
}

/// Applies `m`, checking admissibility before and exceptionality after.
pub fn apply_move(cz: &CzTable, c: &Collection, m: MutationMove) -> Result<Collection, Error> {
    if !is_exceptional(cz, &c.members) {
        return Err(Error::NotExceptional);
    }
    let k = cz.variety().canonical;
    let mut out = c.members.clone();
    let n = out.len();
    match m {
        MutationMove::SwapAt { index: i } => {
            if i + 1 >= n {
                return Err(refuse(alloc::format!("swap index {} out of range", i)));
            }
            // c is exceptional so out[i] - out[i+1] is CZ; the swap also needs the reverse
            if !cz.is_cz(out[i + 1] - out[i]) {
                return Err(refuse(alloc::format!(
                    "members {} and {} are not orthogonal",
                    i,
                    i + 1
                )));
            }
            out.swap(i, i + 1);
        }
        MutationMove::HelixLeft => {
            if n > 0 {
                let first = out.remove(0);
                out.push(first - k);
            }
        }
        MutationMove::HelixRight => {
            if let Some(last) = out.pop() {
                out.insert(0, last + k);
            }
        }
        MutationMove::Tensor { divisor } => {
            for d in out.iter_mut() {
                *d += divisor;
            }
        }
        MutationMove::ReplaceAt { index, divisor } => {
            if index >= n {
                return Err(refuse(alloc::format!(
                    "replace index {} out of range",
                    index
                )));
            }
            out[index] = divisor;
        }
    }
    if !is_exceptional(cz, &out) {
        return Err(refuse(alloc::format!(
            "{:?} does not give an exceptional collection",
            m
        )));
    }
    Ok(Collection::new(out))
}

fn fibration_member(f: &Fibration, h: i64, d: i64) -> Divisor {
    if f.swapped {
        Divisor::new(d, h)
    } else {
        Divisor::new(h, d)
    }
}

/// Block `j` of the Orlov decomposition twisted by `t_j`: `(t_j + i)H + jD`, `i = 0..=n`.
fn orlov_instance(f: &Fibration, t: &[i64]) -> Collection {
    let mut out = Vec::new();
    for (j, &tj) in t.iter().enumerate() {
        for i in 0..=f.base_dim as i64 {
            out.push(fibration_member(f, tj + i, j as i64));
        }
    }
    Collection::new(out)
}

/// Normalized Orlov collections with all members in `[-radius, radius]^2`,
/// for every bundle structure of `v` (both factors of a product).
pub fn orlov_seeds(v: &VarietyDescriptor, radius: i64) -> Vec<Collection> {
    let mut out = Vec::new();
    for f in &v.fibrations {
        let blocks = f.twists.len();
        let mut t = alloc::vec![0i64; blocks];
        // t_0 = 0; the remaining twists range over the box
        fn go(f: &Fibration, k: usize, t: &mut Vec<i64>, radius: i64, out: &mut Vec<Collection>) {
            if k == t.len() {
                let c = orlov_instance(f, t);
                if c.in_box(radius) {
                    out.push(c);
                }
                return;
            }
            for x in -radius..=radius {
                t[k] = x;
                go(f, k + 1, t, radius, out);
            }
        }
        go(f, 1, &mut t, radius, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// True when `c` is an Orlov collection of some bundle structure, up to a tensor twist.
pub fn is_orlov_seed(v: &VarietyDescriptor, c: &Collection) -> bool {
    let Some(&first) = c.members.first() else {
        return false;
    };
    v.fibrations.iter().any(|f| {
        let n = f.base_dim as usize + 1;
        if c.len() != n * f.twists.len() {
            return false;
        }
        let m: Vec<Divisor> = c
            .members
            .iter()
            .map(|&d| {
                if f.swapped {
                    (d - first).swap()
                } else {
                    d - first
                }
            })
            .collect();
        let t: Vec<i64> = (0..f.twists.len()).map(|j| m[j * n].a).collect();
        m == orlov_instance(
            &Fibration {
                swapped: false,
                ..f.clone()
            },
            &t,
        )
        .members
    })
}

/// Seed, replayable moves and the collection they reach.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FullnessCertificate {
    pub variety: String,
    pub seed: Collection,
    pub moves: Vec<MutationMove>,
    pub target: Collection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CertificateCheck {
    pub ok: bool,
    /// Index of the first failing move; `None` for seed or target failures.
    pub first_failure: Option<usize>,
    pub reason: Option<String>,
}

/// Replays `cert` without any search.
pub fn check_certificate(cz: &CzTable, cert: &FullnessCertificate) -> CertificateCheck {
    let v = cz.variety();
    let fail = |i: Option<usize>, why: String| CertificateCheck {
        ok: false,
        first_failure: i,
        reason: Some(why),
    };
    if cert.variety != v.id {
        return fail(None, alloc::format!("certificate is for {}", cert.variety));
    }
    if cert.seed.len() != v.max_length || !is_orlov_seed(v, &cert.seed) {
        return fail(None, "seed is not an Orlov collection".into());
    }
    let mut cur = cert.seed.clone();
    for (i, &m) in cert.moves.iter().enumerate() {
        match apply_move(cz, &cur, m) {
            Ok(next) => cur = next,
            Err(e) => return fail(Some(i), alloc::format!("{}", e)),
        }
    }
    if cur != cert.target {
        return fail(None, "replay does not end at the target".into());
    }
    CertificateCheck {
        ok: true,
        first_failure: None,
        reason: None,
    }
}

/// One BFS edge: the moves taken (a move, then a normalizing tensor if needed)
/// and the normalized collection reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub moves: Vec<MutationMove>,
    pub to: Collection,
}

fn push_edge(cz: &CzTable, from: &Collection, m: MutationMove, radius: i64, out: &mut Vec<Edge>) {
    if let Ok(next) = apply_move(cz, from, m) {
        let first = next.members[0];
        let norm = next.shifted(-first);
        if norm.in_box(radius) && norm != *from {
            let mut moves = alloc::vec![m];
            if first != Divisor::ZERO {
                moves.push(MutationMove::Tensor { divisor: -first });
            }
            out.push(Edge { moves, to: norm });
        }
    }
}

/// Out-edges of a normalized in-box state in the fixed order
/// swaps, helix left, helix right, replacements (lexicographic within each kind).
pub fn neighbors(cz: &CzTable, state: &Collection, radius: i64) -> Vec<Edge> {
    let mut out = Vec::new();
    let m = &state.members;
    let n = m.len();
    for i in 0..n.saturating_sub(1) {
        if cz.is_cz(m[i + 1] - m[i]) {
            push_edge(
                cz,
                state,
                MutationMove::SwapAt { index: i },
                radius,
                &mut out,
            );
        }
    }
    push_edge(cz, state, MutationMove::HelixLeft, radius, &mut out);
    push_edge(cz, state, MutationMove::HelixRight, radius, &mut out);
    // Replacements. Members after the first must stay in the box; a new first
    // member may leave it as long as the renormalized collection does not.
    for i in 0..n {
        let r = if i == 0 { 2 * radius } else { radius };
        for a in -r..=r {
            for b in -r..=r {
                let d = Divisor::new(a, b);
                if d == m[i] {
                    continue;
                }
                if i == 0 && !m[1..].iter().all(|&x| (x - d).in_box(radius)) {
                    continue;
                }
                let ok =
                    (0..i).all(|j| cz.is_cz(m[j] - d)) && (i + 1..n).all(|j| cz.is_cz(d - m[j]));
                if ok {
                    push_edge(
                        cz,
                        state,
                        MutationMove::ReplaceAt {
                            index: i,
                            divisor: d,
                        },
                        radius,
                        &mut out,
                    );
                }
            }
        }
    }
    out
}

/// Breadth-first exploration tree over normalized in-box states.
#[derive(Clone, Debug, Default)]
pub struct SearchTree {
    pub states: Vec<Collection>,
    /// `(parent index, moves from parent)`; `None` for sources.
    pub parent: Vec<Option<(usize, Vec<MutationMove>)>>,
    pub index: BTreeMap<Collection, usize>,
    /// Source collection each state descends from.
    pub root: Vec<usize>,
}

impl SearchTree {
    pub fn with_sources(sources: &[Collection]) -> SearchTree {
        let mut t = SearchTree::default();
        for s in sources {
            let s = s.normalized();
            if !t.index.contains_key(&s) {
                let k = t.states.len();
                t.index.insert(s.clone(), k);
                t.states.push(s);
                t.parent.push(None);
                t.root.push(k);
            }
        }
        t
    }

    /// Records `to` as reached from state `from`; returns its index if new.
    pub fn insert(&mut self, from: usize, e: Edge) -> Option<usize> {
        if self.index.contains_key(&e.to) {
            return None;
        }
        let k = self.states.len();
        self.index.insert(e.to.clone(), k);
        self.states.push(e.to);
        self.parent.push(Some((from, e.moves)));
        self.root.push(self.root[from]);
        Some(k)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Source and moves leading to state `k`.
    pub fn path_to(&self, k: usize) -> (Collection, Vec<MutationMove>) {
        let mut chunks = Vec::new();
        let mut cur = k;
        while let Some((p, ms)) = &self.parent[cur] {
            chunks.push(ms.clone());
            cur = *p;
        }
        chunks.reverse();
        (
            self.states[cur].clone(),
            chunks.into_iter().flatten().collect(),
        )
    }

    /// Certificate reaching `target` (any tensor twist of a reached state).
    pub fn certificate(
        &self,
        v: &VarietyDescriptor,
        target: &Collection,
    ) -> Option<FullnessCertificate> {
        let k = *self.index.get(&target.normalized())?;
        let (seed, mut moves) = self.path_to(k);
        if let Some(&first) = target.members.first() {
            if first != Divisor::ZERO {
                moves.push(MutationMove::Tensor { divisor: first });
            }
        }
        Some(FullnessCertificate {
            variety: v.id.clone(),
            seed,
            moves,
            target: target.clone(),
        })
    }
}

/// Why a search stopped without reaching its goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotFound {
    pub explored: usize,
    pub budget_exhausted: bool,
}

/// Level-by-level BFS from `sources` until `goal` holds or `budget` states are stored.
pub fn search(
    cz: &CzTable,
    sources: &[Collection],
    radius: i64,
    budget: usize,
    goal: impl Fn(&Collection) -> bool,
) -> Result<(SearchTree, usize), (SearchTree, NotFound)> {
    let mut tree = SearchTree::with_sources(sources);
    if let Some(k) = (0..tree.len()).find(|&k| goal(&tree.states[k])) {
        return Ok((tree, k));
    }
    let mut head = 0;
    while head < tree.len() {
        let cur = tree.states[head].clone();
        for e in neighbors(cz, &cur, radius) {
            if let Some(k) = tree.insert(head, e) {
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
        head += 1;
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

/// Exhaustive BFS (bounded by `budget`) returning the whole tree.
pub fn explore(cz: &CzTable, sources: &[Collection], radius: i64, budget: usize) -> SearchTree {
    match search(cz, sources, radius, budget, |_| false) {
        Ok((t, _)) | Err((t, _)) => t,
    }
}

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Certificate from an Orlov seed to `target`, or the number of states explored.
pub fn verify_fullness(
    cz: &CzTable,
    target: &Collection,
    radius: i64,
    budget: usize,
) -> Result<Result<FullnessCertificate, NotFound>, Error> {
    let v = cz.variety();
    if !is_exceptional(cz, &target.members) || target.len() != v.max_length {
        return Err(Error::NotExceptional);
    }
    let goal = target.normalized();
    let seeds = orlov_seeds(v, radius);
    Ok(match search(cz, &seeds, radius, budget, |c| *c == goal) {
        Ok((tree, _)) => Ok(tree
            .certificate(v, target)
            .expect("goal state is in the tree")),
        Err((_, nf)) => Err(nf),
    })
}
