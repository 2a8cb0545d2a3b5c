//! Exceptionality and the pruned enumeration of normalized collections.

use alloc::vec::Vec;

use crate::cohomology::{CzOracle, CzTable};
use crate::divisor::{Collection, Divisor};
use crate::variety::VarietyDescriptor;

/// Ordering convention: `O(D_1), ..., O(D_L)` is exceptional iff
/// `D_j - D_i` (earlier minus later) is cohomologically zero for all `j < i`,
/// i.e. `Ext^*(O(D_i), O(D_j)) = H^*(O(D_j - D_i)) = 0`.
pub fn is_exceptional<O: CzOracle + ?Sized>(cz: &O, members: &[Divisor]) -> bool {
    (0..members.len()).all(|i| (0..i).all(|j| cz.is_cz(members[j] - members[i])))
}

pub fn is_exceptional_collection(v: &VarietyDescriptor, c: &Collection) -> bool {
    is_exceptional(v, &c.members)
}

/// Depth-first enumeration of normalized exceptional collections in a box.
pub struct Enumerator<'a> {
    cz: &'a CzTable,
    radius: i64,
    length: usize,
    /// In-box `x` with `-x` CZ: the possible members after `O`.
    candidates: Vec<Divisor>,
}

impl<'a> Enumerator<'a> {
    pub fn new(cz: &'a CzTable, radius: i64, length: usize) -> Self {
        let mut candidates = Vec::new();
        for a in -radius..=radius {
            for b in -radius..=radius {
                let x = Divisor::new(a, b);
                if cz.is_cz(-x) {
                    candidates.push(x);
                }
            }
        }
        Enumerator {
            cz,
            radius,
            length,
            candidates,
        }
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Valid two-member prefixes `(O, D_2)`; the unit of parallel work.
    pub fn seeds(&self) -> Vec<Collection> {
        if self.length < 2 {
            return Vec::new();
        }
        self.candidates
            .iter()
            .map(|&x| Collection::new(alloc::vec![Divisor::ZERO, x]))
            .collect()
    }

    /// All completions of `prefix` to the target length.
    pub fn complete(&self, prefix: &Collection) -> Vec<Collection> {
        let mut out = Vec::new();
        if !is_exceptional(self.cz, &prefix.members) {
            return out;
        }
        if prefix.len() >= self.length {
            if prefix.len() == self.length {
                out.push(prefix.clone());
            }
            return out;
        }
        let live: Vec<Divisor> = self
            .candidates
            .iter()
            .copied()
            .filter(|&x| prefix.members.iter().all(|&m| self.cz.is_cz(m - x)))
            .collect();
        let mut stack = prefix.members.clone();
        self.dfs(&mut stack, &live, &mut out);
        out
    }

    fn dfs(&self, stack: &mut Vec<Divisor>, live: &[Divisor], out: &mut Vec<Collection>) {
        if stack.len() == self.length {
            out.push(Collection::new(stack.clone()));
            return;
        }
        let need = self.length - stack.len();
        if live.len() < need {
            return;
        }
        for &x in live {
            let next: Vec<Divisor> = live
                .iter()
                .copied()
                .filter(|&y| self.cz.is_cz(x - y))
                .collect();
            if next.len() + 1 < need {
                continue;
            }
            stack.push(x);
            self.dfs(stack, &next, out);
            stack.pop();
        }
    }

    /// Every normalized collection of the target length, sorted.
    pub fn run(&self) -> Vec<Collection> {
        let mut out = if self.length <= 1 {
            self.complete(&Collection::new(alloc::vec![Divisor::ZERO]))
        } else {
            self.seeds().iter().flat_map(|s| self.complete(s)).collect()
        };
        out.sort();
        out.dedup();
        out
    }
}

/// Normalized exceptional collections of length `max_length` in `[-radius, radius]^2`.
pub fn enumerate_maximal(v: &VarietyDescriptor, radius: i64) -> Vec<Collection> {
    let t = CzTable::new(v, 2 * radius);
    Enumerator::new(&t, radius, v.max_length).run()
}

/// Reference enumeration without pruning: every sequence of distinct in-box
/// divisors after `O`, tested for exceptionality only once complete.
pub fn brute_force<O: CzOracle + ?Sized>(cz: &O, radius: i64, length: usize) -> Vec<Collection> {
    let mut pts = Vec::new();
    for a in -radius..=radius {
        for b in -radius..=radius {
            let d = Divisor::new(a, b);
            if d != Divisor::ZERO {
                pts.push(d);
            }
        }
    }
    let mut out = Vec::new();
    let mut seq = alloc::vec![Divisor::ZERO];
    let mut used = alloc::vec![false; pts.len()];
    fn go<O: CzOracle + ?Sized>(
        cz: &O,
        pts: &[Divisor],
        used: &mut [bool],
        seq: &mut Vec<Divisor>,
        length: usize,
        out: &mut Vec<Collection>,
    ) {
        if seq.len() == length {
            if is_exceptional(cz, seq) {
                out.push(Collection::new(seq.clone()));
            }
            return;
        }
        for k in 0..pts.len() {
            if !used[k] {
                used[k] = true;
                seq.push(pts[k]);
                go(cz, pts, used, seq, length, out);
                seq.pop();
                used[k] = false;
            }
        }
    }
    if length >= 1 {
        go(cz, &pts, &mut used, &mut seq, length, &mut out);
    }
    out.sort();
    out
}
