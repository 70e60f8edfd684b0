//! Measure G: a game in which the holder of subsystem `k` tries to imitate
//! the spectrum of her reduced state by grouping the global eigenvalues into
//! `d_k` equal-size blocks and summing each block.
//!
//! `F_k` is the smallest achievable `|H(mimic) - H(reduced spectrum)|` over
//! all groupings and `G = max_k F_k`. The minimum is exact: every canonical
//! grouping is visited (blocks listed by their smallest index, indices
//! ascending inside a block), so the result is deterministic.
//!
//! Global spectra of interesting states are highly degenerate, and swapping
//! two equal eigenvalues between blocks cannot change the block sums. The
//! pruned search skips such swaps: at each choice point it tries only the
//! first of a run of equal values. It still reaches the lexicographically
//! smallest grouping of every equivalence class, so pruned and exhaustive
//! searches return the same value and the same best grouping.

use alloc::vec;
use alloc::vec::Vec;

use crate::entropy::{shannon_bits, ProbabilityVector};
use crate::linalg::{DensityMatrix, Spectrum};
use crate::{Error, Result};

/// Eigenvalues closer than this are treated as one degenerate level.
pub const DEGENERACY_TOL: f64 = 1e-12;
pub const DEFAULT_PARTITION_BUDGET: u128 = 100_000_000;

/// A grouping of indices `0..n` into equal-size blocks, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionAssignment {
    blocks: Vec<Vec<usize>>,
}

impl PartitionAssignment {
    /// Validates and canonicalizes: blocks must be nonempty, equal in size,
    /// disjoint and cover `0..n` for some `n`.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let size = blocks.first().map_or(0, Vec::len);
        if size == 0 || blocks.iter().any(|b| b.len() != size) {
            return Err(Error::IndivisibleBlocks {
                items: blocks.iter().map(Vec::len).sum(),
                blocks: blocks.len(),
            });
        }
        let n = size * blocks.len();
        let mut seen = vec![false; n];
        for &i in blocks.iter().flatten() {
            if i >= n || seen[i] {
                return Err(Error::InvalidDims("blocks must be disjoint and cover 0..n"));
            }
            seen[i] = true;
        }
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_items(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    fn from_flat(flat: &[usize], block: usize) -> Self {
        Self {
            blocks: flat.chunks(block).map(<[usize]>::to_vec).collect(),
        }
    }
}

fn check_divides(n: usize, k: usize) -> Result<usize> {
    if k == 0 || n == 0 || n % k != 0 {
        return Err(Error::IndivisibleBlocks { items: n, blocks: k });
    }
    Ok(n / k)
}

/// Number of canonical groupings of `n` items into `k` blocks of `n/k`:
/// `n! / ((n/k)!^k k!)`. Saturates at `u128::MAX`.
pub fn partition_count(n: usize, k: usize) -> Result<u128> {
    let size = check_divides(n, k)?;
    // Fix the smallest remaining item as the block's first member and choose
    // the other size-1 members: prod_j C(n - j*size - 1, size - 1).
    let mut count: u128 = 1;
    for j in 0..k {
        let remaining = n - j * size - 1;
        count = match binomial(remaining, size - 1).and_then(|c| count.checked_mul(c)) {
            Some(c) => c,
            None => return Ok(u128::MAX),
        };
    }
    Ok(count)
}

fn binomial(n: usize, r: usize) -> Option<u128> {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Every canonical grouping of `0..n` into `k` equal blocks, in
/// lexicographic order of the flattened block list.
pub fn enumerate_partitions(n: usize, k: usize) -> Result<PartitionIter> {
    let size = check_divides(n, k)?;
    let mut it = PartitionIter {
        size,
        levels: Vec::with_capacity(k),
        done: false,
    };
    it.rebuild_from(0, (0..n).collect());
    Ok(it)
}

#[derive(Debug, Clone)]
struct Level {
    /// Items still free when this block starts; `pool[0]` is forced.
    pool: Vec<usize>,
    /// Positions in `pool[1..]` of the other members.
    choice: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PartitionIter {
    size: usize,
    levels: Vec<Level>,
    done: bool,
}

impl PartitionIter {
    fn rebuild_from(&mut self, level: usize, mut pool: Vec<usize>) {
        self.levels.truncate(level);
        while !pool.is_empty() {
            let choice: Vec<usize> = (0..self.size - 1).collect();
            let rest = remove_block(&pool, &choice);
            self.levels.push(Level { pool, choice });
            pool = rest;
        }
    }

    fn current(&self) -> PartitionAssignment {
        PartitionAssignment {
            blocks: self
                .levels
                .iter()
                .map(|l| {
                    let mut b = Vec::with_capacity(self.size);
                    b.push(l.pool[0]);
                    b.extend(l.choice.iter().map(|&c| l.pool[c + 1]));
                    b
                })
                .collect(),
        }
    }

    fn advance(&mut self) -> bool {
        for li in (0..self.levels.len()).rev() {
            let free = self.levels[li].pool.len() - 1;
            if next_combination(&mut self.levels[li].choice, free) {
                let rest = remove_block(&self.levels[li].pool, &self.levels[li].choice);
                self.rebuild_from(li + 1, rest);
                return true;
            }
        }
        false
    }
}

impl Iterator for PartitionIter {
    type Item = PartitionAssignment;

    fn next(&mut self) -> Option<PartitionAssignment> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.done = !self.advance();
        Some(out)
    }
}

fn remove_block(pool: &[usize], choice: &[usize]) -> Vec<usize> {
    let mut taken = vec![false; pool.len()];
    taken[0] = true;
    for &c in choice {
        taken[c + 1] = true;
    }
    pool.iter().zip(taken).filter(|(_, t)| !t).map(|(&i, _)| i).collect()
}

/// Advances an ascending r-combination of `0..m` to its lexicographic
/// successor.
fn next_combination(c: &mut [usize], m: usize) -> bool {
    let r = c.len();
    for t in (0..r).rev() {
        if c[t] < m - (r - t) {
            c[t] += 1;
            for u in t + 1..r {
                c[u] = c[u - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Block sums of `spectrum` under `partition`.
pub fn mimic_spectrum(spectrum: &Spectrum, partition: &PartitionAssignment) -> Result<ProbabilityVector> {
    if partition.num_items() != spectrum.len() {
        return Err(Error::DimensionMismatch {
            expected: spectrum.len(),
            actual: partition.num_items(),
        });
    }
    let v = spectrum.values();
    ProbabilityVector::new(
        partition
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&i| v[i]).sum())
            .collect(),
    )
}

/// Merges runs of eigenvalues closer than [`DEGENERACY_TOL`] (in a
/// descending list) into their mean.
pub fn merge_degenerate(values: &mut [f64]) {
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end - 1] - values[end] <= DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            let mean = values[start..end].iter().sum::<f64>() / (end - start) as f64;
            values[start..end].fill(mean);
        }
        start = end;
    }
}

/// Smallest `|H(block sums) - target|` over canonical groupings of `values`
/// (sorted descending) into `blocks` equal blocks, with the lexicographically
/// first grouping attaining it.
pub fn min_entropy_gap(values: &[f64], blocks: usize, target: f64, prune: bool) -> Result<(f64, PartitionAssignment)> {
    let size = check_divides(values.len(), blocks)?;
    if values.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidProbabilities("values must be sorted descending"));
    }
    let mut search = GapSearch {
        values,
        size,
        blocks,
        target,
        prune,
        used: vec![false; values.len()],
        flat: Vec::with_capacity(values.len()),
        sums: vec![0.0; blocks],
        sorted: vec![0.0; blocks],
        best_gap: f64::INFINITY,
        best: Vec::new(),
    };
    search.start_block(0);
    Ok((search.best_gap, PartitionAssignment::from_flat(&search.best, size)))
}

struct GapSearch<'a> {
    values: &'a [f64],
    size: usize,
    blocks: usize,
    target: f64,
    prune: bool,
    used: Vec<bool>,
    flat: Vec<usize>,
    sums: Vec<f64>,
    sorted: Vec<f64>,
    best_gap: f64,
    best: Vec<usize>,
}

impl GapSearch<'_> {
    fn start_block(&mut self, block: usize) {
        if block == self.blocks {
            self.evaluate();
            return;
        }
        let first = match self.used.iter().position(|u| !u) {
            Some(i) => i,
            None => return,
        };
        self.used[first] = true;
        self.flat.push(first);
        self.extend(block, first, 1, self.values[first]);
        self.flat.pop();
        self.used[first] = false;
    }

    fn extend(&mut self, block: usize, last: usize, count: usize, sum: f64) {
        if count == self.size {
            self.sums[block] = sum;
            self.start_block(block + 1);
            return;
        }
        let mut tried: Option<f64> = None;
        for c in last + 1..self.values.len() {
            if self.used[c] {
                continue;
            }
            let v = self.values[c];
            if self.prune && tried == Some(v) {
                continue;
            }
            tried = Some(v);
            self.used[c] = true;
            self.flat.push(c);
            self.extend(block, c, count + 1, sum + v);
            self.flat.pop();
            self.used[c] = false;
        }
    }

    fn evaluate(&mut self) {
        // Sort so that equivalent groupings give bit-identical entropies.
        self.sorted.copy_from_slice(&self.sums);
        self.sorted.sort_unstable_by(|a, b| b.total_cmp(a));
        let gap = (shannon_bits(&self.sorted) - self.target).abs();
        if gap < self.best_gap {
            self.best_gap = gap;
            self.best.clear();
            self.best.extend_from_slice(&self.flat);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GOptions {
    /// Refuse subsystems whose canonical grouping count exceeds this.
    pub partition_budget: u128,
    pub prune: bool,
}

impl Default for GOptions {
    fn default() -> Self {
        Self {
            partition_budget: DEFAULT_PARTITION_BUDGET,
            prune: true,
        }
    }
}

/// `F_k` for one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsystemScore {
    pub value: f64,
    pub best_partition: PartitionAssignment,
    /// Entropy of the reduced state's spectrum.
    pub reduced_entropy: f64,
    /// Entropy of the best mimic spectrum.
    pub mimic_entropy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GResult {
    pub value: f64,
    pub per_subsystem: Vec<SubsystemScore>,
    /// Lowest index attaining the maximum.
    pub argmax_subsystem: usize,
}

fn prepared_spectrum(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let mut values = rho.spectrum()?.into_vec();
    merge_degenerate(&mut values);
    Ok(values)
}

fn score(rho: &DensityMatrix, values: &[f64], k: usize, opts: &GOptions) -> Result<SubsystemScore> {
    let m = rho.num_subsystems();
    if k >= m {
        return Err(Error::SubsystemOutOfRange { index: k, count: m });
    }
    let blocks = rho.dims()[k];
    let count = partition_count(values.len(), blocks)?;
    if count > opts.partition_budget {
        return Err(Error::PartitionBudgetExceeded {
            count,
            budget: opts.partition_budget,
        });
    }
    let reduced_entropy = shannon_bits(rho.partial_trace(&[k])?.spectrum()?.values());
    let (value, best_partition) = min_entropy_gap(values, blocks, reduced_entropy, opts.prune)?;
    let mimic: Vec<f64> = best_partition
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&i| values[i]).sum())
        .collect();
    Ok(SubsystemScore {
        value,
        best_partition,
        reduced_entropy,
        mimic_entropy: shannon_bits(&mimic),
    })
}

/// `F_k` with default options.
pub fn f_k(rho: &DensityMatrix, k: usize) -> Result<SubsystemScore> {
    score(rho, &prepared_spectrum(rho)?, k, &GOptions::default())
}

pub fn compute_g(rho: &DensityMatrix) -> Result<GResult> {
    compute_g_with(rho, &GOptions::default())
}

pub fn compute_g_with(rho: &DensityMatrix, opts: &GOptions) -> Result<GResult> {
    let m = rho.num_subsystems();
    if m < 2 {
        return Err(Error::TooFewSubsystems { required: 2, actual: m });
    }
    let values = prepared_spectrum(rho)?;
    let per_subsystem = (0..m)
        .map(|k| score(rho, &values, k, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut argmax_subsystem = 0;
    for (k, s) in per_subsystem.iter().enumerate() {
        if s.value > per_subsystem[argmax_subsystem].value {
            argmax_subsystem = k;
        }
    }
    Ok(GResult {
        value: per_subsystem[argmax_subsystem].value,
        per_subsystem,
        argmax_subsystem,
    })
}
