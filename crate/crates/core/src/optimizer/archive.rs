use rand::Rng;

use crate::error::{Error, Result};
use crate::problem::{dominates, ObjectiveVector, SolutionVector};

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub solution: SolutionVector,
    pub objectives: ObjectiveVector,
}

/// Bounded set of mutually non-dominated solutions.
///
/// Candidates dominated by (or objective-identical to) a stored entry are
/// rejected; accepted candidates evict the entries they dominate. When the set
/// outgrows its capacity the most crowded entries are dropped one at a time,
/// with the extremes of each objective carrying infinite crowding distance.
#[derive(Debug, Clone)]
pub struct ParetoArchive {
    entries: Vec<ArchiveEntry>,
    capacity: usize,
    comparisons: u64,
}

impl ParetoArchive {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1);
        Self {
            entries: Vec::new(),
            capacity,
            comparisons: 0,
        }
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<ArchiveEntry> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Dominance checks performed so far.
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    pub fn objectives(&self) -> Vec<ObjectiveVector> {
        self.entries.iter().map(|e| e.objectives).collect()
    }

    /// Offers one candidate without truncating. Returns whether it was kept.
    pub fn offer(&mut self, candidate: ArchiveEntry) -> bool {
        let c = &candidate.objectives;
        for e in &self.entries {
            self.comparisons += 1;
            if dominates(&e.objectives, c) || e.objectives == *c {
                return false;
            }
        }
        let before = self.entries.len() as u64;
        self.entries.retain(|e| !dominates(c, &e.objectives));
        self.comparisons += before;
        self.entries.push(candidate);
        true
    }

    /// Offers every candidate, then truncates to capacity.
    pub fn update(&mut self, candidates: impl IntoIterator<Item = ArchiveEntry>) {
        for c in candidates {
            self.offer(c);
        }
        self.truncate();
    }

    fn truncate(&mut self) {
        while self.entries.len() > self.capacity {
            let objs = self.objectives();
            let crowd = crowding_distances(&objs);
            let min = crowd.iter().cloned().fold(f64::INFINITY, f64::min);
            let ties: Vec<usize> = (0..crowd.len()).filter(|&i| crowd[i] == min).collect();
            let best = best_holders(&objs);
            let victim = ties
                .iter()
                .copied()
                .find(|i| !best.contains(i))
                .unwrap_or(ties[0]);
            self.entries.remove(victim);
        }
    }

    /// Crowding distance of every entry.
    pub fn crowding(&self) -> Vec<f64> {
        crowding_distances(&self.objectives())
    }

    /// Samples an entry with probability proportional to its crowding
    /// distance, favoring sparse regions of the front.
    pub fn roulette_elite<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<&ArchiveEntry> {
        if self.entries.is_empty() {
            return Err(Error::EmptyArchive);
        }
        let idx = roulette_index(&self.crowding(), rng);
        Ok(&self.entries[idx])
    }

    /// True when no stored entry dominates another.
    pub fn is_mutually_non_dominated(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, a)| {
            self.entries
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !dominates(&a.objectives, &b.objectives))
        })
    }
}

/// Indices holding the best value of some minimized objective.
fn best_holders(objs: &[ObjectiveVector]) -> Vec<usize> {
    (0..3)
        .filter_map(|m| {
            (0..objs.len()).min_by(|&a, &b| {
                objs[a].minimized()[m]
                    .partial_cmp(&objs[b].minimized()[m])
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        })
        .collect()
}

/// Crowding distance over the minimized objectives `(-f1, f2, f3)`.
/// Boundary points of every objective get `f64::INFINITY`; an objective with
/// zero extent contributes nothing.
pub fn crowding_distances(objs: &[ObjectiveVector]) -> Vec<f64> {
    let n = objs.len();
    let mut dist = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let vals: Vec<[f64; 3]> = objs.iter().map(|o| o.minimized()).collect();
    for m in 0..3 {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            vals[a][m]
                .partial_cmp(&vals[b][m])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let lo = vals[order[0]][m];
        let hi = vals[order[n - 1]][m];
        let extent = hi - lo;
        if !(extent > 0.0) {
            continue;
        }
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        for w in 1..n - 1 {
            let i = order[w];
            if dist[i].is_finite() {
                dist[i] += (vals[order[w + 1]][m] - vals[order[w - 1]][m]) / extent;
            }
        }
    }
    dist
}

/// Roulette-wheel index for non-negative weights. Infinite weights are
/// clamped to twice the largest finite weight (or 1 when none is positive);
/// an all-zero wheel degenerates to uniform selection.
pub fn roulette_index<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    assert!(!weights.is_empty());
    let max_finite = weights
        .iter()
        .filter(|w| w.is_finite())
        .cloned()
        .fold(0.0f64, f64::max);
    let cap = if max_finite > 0.0 { 2.0 * max_finite } else { 1.0 };
    let clamped: Vec<f64> = weights
        .iter()
        .map(|&w| if w.is_finite() { w.max(0.0) } else { cap })
        .collect();
    let total: f64 = clamped.iter().sum();
    if !(total > 0.0) {
        return rng.random_range(0..weights.len());
    }
    let mut target = rng.random::<f64>() * total;
    for (i, w) in clamped.iter().enumerate() {
        if target < *w {
            return i;
        }
        target -= w;
    }
    clamped.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}
