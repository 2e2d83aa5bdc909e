//! Partitions, multipartitions, charges, and the abacus combinatorics
//! (cores, quotients, contents, residues) underlying everything else.

use std::fmt;
use std::str::FromStr;

use num::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing and positive, got {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("`{0}` is not a valid partition literal")]
    Parse(String),
    #[error("core component is not a {0}-core")]
    NotACore(usize),
}

/// A partition: weakly decreasing sequence of positive integers.
/// The empty sequence is the unique partition of 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(PartitionError::NotDecreasing(parts))
        }
    }

    /// Builds a partition from arbitrary nonnegative entries by sorting
    /// and dropping zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts, `l(lambda)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|lambda|`, the number being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The `i`-th part with 0-based `i`, zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The transposed partition `lambda'`.
    pub fn conjugate(&self) -> Partition {
        let mut cols = Vec::new();
        if let Some(&first) = self.parts.first() {
            for j in 1..=first {
                cols.push(self.parts.iter().take_while(|&&p| p >= j).count() as u32);
            }
        }
        Partition { parts: cols }
    }

    /// `m*lambda`: every part multiplied by `m`.
    pub fn dilate(&self, m: u32) -> Partition {
        assert!(m >= 1, "dilation factor must be positive");
        Partition {
            parts: self.parts.iter().map(|&p| p * m).collect(),
        }
    }

    /// `z_lambda = prod_i i^{m_i} m_i!` where `m_i` is the multiplicity of `i`.
    pub fn z_value(&self) -> BigInt {
        let mut z = BigInt::from(1);
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut mult = 0u32;
            while i < self.parts.len() && self.parts[i] == part {
                mult += 1;
                i += 1;
            }
            for _ in 0..mult {
                z *= BigInt::from(part);
            }
            for k in 1..=mult {
                z *= BigInt::from(k);
            }
        }
        z
    }

    /// Multiset of contents `j - i` over the nodes of the diagram,
    /// sorted ascending. Encodes the content polynomial `prod (X + c)`.
    pub fn contents(&self) -> Vec<i64> {
        let mut cs = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 1..=row {
                cs.push(j as i64 - (i as i64 + 1));
            }
        }
        cs.sort_unstable();
        cs
    }

    /// Rows `i` (1-based) whose last cell `(i, lambda_i)` can be removed.
    pub fn removable_cells(&self) -> Vec<(u32, u32)> {
        let mut cells = Vec::new();
        for i in 0..self.parts.len() {
            if self.parts[i] > self.part(i + 1) {
                cells.push((i as u32 + 1, self.parts[i]));
            }
        }
        cells
    }

    /// Cells `(i, lambda_i + 1)` (1-based) that can be added keeping a partition shape.
    pub fn addable_cells(&self) -> Vec<(u32, u32)> {
        let mut cells = vec![(1, self.part(0) + 1)];
        for i in 1..=self.parts.len() {
            if self.part(i) < self.parts[i - 1] {
                cells.push((i as u32 + 1, self.part(i) + 1));
            }
        }
        cells
    }

    pub fn with_cell_added(&self, row: u32, col: u32) -> Partition {
        let i = (row - 1) as usize;
        let mut parts = self.parts.clone();
        if i == parts.len() {
            parts.push(0);
        }
        debug_assert_eq!(parts[i] + 1, col);
        parts[i] += 1;
        Partition { parts }
    }

    pub fn with_cell_removed(&self, row: u32, col: u32) -> Partition {
        let i = (row - 1) as usize;
        let mut parts = self.parts.clone();
        debug_assert_eq!(parts[i], col);
        parts[i] -= 1;
        if parts[i] == 0 {
            parts.remove(i);
        }
        Partition { parts }
    }

    /// Beta numbers `lambda_k - k + window` for `k = 1..=window`, a set of
    /// distinct nonnegative integers when `window >= len`.
    pub fn beta_numbers(&self, window: usize) -> Vec<i64> {
        assert!(window >= self.len());
        (1..=window)
            .map(|k| self.part(k - 1) as i64 - k as i64 + window as i64)
            .collect()
    }

    /// Reconstructs the partition from a set of distinct nonnegative beta numbers.
    pub fn from_beta_numbers(mut betas: Vec<i64>) -> Partition {
        betas.sort_unstable_by(|a, b| b.cmp(a));
        let window = betas.len() as i64;
        let parts = betas
            .iter()
            .enumerate()
            .map(|(idx, &b)| {
                let k = idx as i64 + 1;
                let p = b + k - window;
                debug_assert!(p >= 0, "beta numbers not a valid bead set");
                p as u32
            })
            .collect::<Vec<_>>();
        Partition::from_unsorted(parts)
    }

    /// True if the partition has no hook of length `ell`.
    pub fn is_core(&self, ell: usize) -> bool {
        self.core_quotient(ell).quotient.size() == 0
    }

    /// The abacus decomposition into an `ell`-core and `ell`-quotient.
    ///
    /// Convention: window `L = 0 mod ell`, beads at `beta_k = lambda_k - k + L`,
    /// runner `p` collects the beads with `beta = p mod ell`. Quotient
    /// component `p` is read off runner `p`; the core is obtained by pushing
    /// every runner's beads down.
    pub fn core_quotient(&self, ell: usize) -> CoreQuotient {
        assert!(ell >= 1);
        let window = self.len().div_ceil(ell).max(1) * ell;
        let betas = self.beta_numbers(window);
        let mut runners: Vec<Vec<i64>> = vec![Vec::new(); ell];
        for &b in &betas {
            let p = (b.rem_euclid(ell as i64)) as usize;
            runners[p].push((b - p as i64) / ell as i64);
        }
        let quotient = Multipartition::new(
            runners
                .iter()
                .map(|r| Partition::from_beta_padded(r))
                .collect(),
        );
        let mut core_betas = Vec::with_capacity(window);
        for (p, runner) in runners.iter().enumerate() {
            for t in 0..runner.len() {
                core_betas.push(p as i64 + (t as i64) * ell as i64);
            }
        }
        let core = Partition::from_beta_numbers(core_betas);
        CoreQuotient { core, quotient }
    }

    // Partition from the bead positions of a single runner, any count.
    fn from_beta_padded(positions: &[i64]) -> Partition {
        if positions.is_empty() {
            return Partition::empty();
        }
        let mut pos = positions.to_vec();
        pos.sort_unstable_by(|a, b| b.cmp(a));
        let n = pos.len() as i64;
        Partition::from_unsorted(
            pos.iter()
                .enumerate()
                .map(|(idx, &b)| {
                    let p = b + idx as i64 + 1 - n;
                    debug_assert!(p >= 0);
                    p as u32
                })
                .collect(),
        )
    }

    /// All partitions of `n`, sorted in the canonical (`Ord`) order used for
    /// every basis enumeration in this crate.
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn rec(remaining: u32, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: stack.clone(),
                });
                return;
            }
            for next in (1..=remaining.min(max)).rev() {
                stack.push(next);
                rec(remaining - next, next, stack, out);
                stack.pop();
            }
        }
        rec(n, n.max(1), &mut stack, &mut out);
        out.sort();
        out
    }

    /// Number of partitions of `n`.
    pub fn count(n: u32) -> u64 {
        count_table(n, 1)[n as usize]
    }
}

/// Partition-counting table: `p_ell(0..=n)` where `p_ell` counts
/// `ell`-multipartitions.
pub fn count_table(n: u32, ell: usize) -> Vec<u64> {
    // p(n) by the Euler recurrence, then `ell`-fold convolution.
    let n = n as usize;
    let mut p1 = vec![0u64; n + 1];
    p1[0] = 1;
    for i in 1..=n {
        let mut acc: i128 = 0;
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 as usize > i && g2 as usize > i {
                break;
            }
            let sign = if k % 2 == 1 { 1i128 } else { -1i128 };
            if g1 as usize <= i {
                acc += sign * p1[i - g1 as usize] as i128;
            }
            if g2 as usize <= i {
                acc += sign * p1[i - g2 as usize] as i128;
            }
            k += 1;
        }
        p1[i] = acc as u64;
    }
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for _ in 0..ell {
        let mut next = vec![0u64; n + 1];
        for i in 0..=n {
            for j in 0..=i {
                next[i] += table[i - j] * p1[j];
            }
        }
        std::mem::swap(&mut table, &mut next);
    }
    table
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts).map_err(|_| PartitionError::Parse(s.to_string()))
    }
}

/// An `ell`-tuple of partitions indexed by `Z_ell` (components 0-based).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Multipartition {
    components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(!components.is_empty(), "need at least one component");
        Multipartition { components }
    }

    pub fn empty(ell: usize) -> Self {
        Multipartition::new(vec![Partition::empty(); ell])
    }

    pub fn ell(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, p: usize) -> &Partition {
        &self.components[p]
    }

    pub fn size(&self) -> u32 {
        self.components.iter().map(|c| c.size()).sum()
    }

    pub fn with_component(&self, p: usize, part: Partition) -> Multipartition {
        let mut components = self.components.clone();
        components[p] = part;
        Multipartition { components }
    }

    /// All `ell`-partitions of `n`, sorted canonically.
    pub fn all(n: u32, ell: usize) -> Vec<Multipartition> {
        fn rec(n: u32, ell: usize, acc: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
            if ell == 1 {
                for p in Partition::all(n) {
                    acc.push(p);
                    out.push(Multipartition::new(acc.clone()));
                    acc.pop();
                }
                return;
            }
            for k in 0..=n {
                for p in Partition::all(k) {
                    acc.push(p);
                    rec(n - k, ell - 1, acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, ell, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in self.components.iter().enumerate() {
            if p > 0 {
                write!(f, "|")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Multipartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let components = s
            .split('|')
            .map(Partition::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        if components.is_empty() {
            return Err(PartitionError::Parse(s.to_string()));
        }
        Ok(Multipartition::new(components))
    }
}

/// An `ell`-charge `s = (s_1, ..., s_ell)`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Charge {
    entries: Vec<i64>,
}

impl Charge {
    pub fn new(entries: Vec<i64>) -> Self {
        assert!(!entries.is_empty(), "charge needs at least one entry");
        Charge { entries }
    }

    pub fn zero(ell: usize) -> Self {
        Charge::new(vec![0; ell])
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn entry(&self, p: usize) -> i64 {
        self.entries[p]
    }

    /// The weight `d = sum_p s_p`.
    pub fn weight(&self) -> i64 {
        self.entries.iter().sum()
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A node of a multipartition: component `comp` (0-based), cell `(row, col)`
/// (1-based) in that component's diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Node {
    pub comp: usize,
    pub row: u32,
    pub col: u32,
}

impl Node {
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }

    /// Residue `s_p + j - i mod m`.
    pub fn residue(&self, charge: &Charge, m: u32) -> u32 {
        (charge.entry(self.comp) + self.content()).rem_euclid(m as i64) as u32
    }
}

/// Counts `n_q` of `q`-nodes of the charged multipartition, `q in Z_m`.
pub fn nodes_with_residue(mp: &Multipartition, charge: &Charge, m: u32) -> Vec<u64> {
    assert_eq!(
        mp.ell(),
        charge.len(),
        "charge length must match the number of components"
    );
    let mut counts = vec![0u64; m as usize];
    for (p, comp) in mp.components().iter().enumerate() {
        let s = charge.entry(p);
        for c in comp.contents() {
            counts[(s + c).rem_euclid(m as i64) as usize] += 1;
        }
    }
    counts
}

/// Addable and removable nodes of residue `q`, each list sorted by
/// (component, then content descending).
pub fn addable_removable(
    mp: &Multipartition,
    charge: &Charge,
    m: u32,
    q: u32,
) -> (Vec<Node>, Vec<Node>) {
    assert_eq!(mp.ell(), charge.len());
    let mut addable = Vec::new();
    let mut removable = Vec::new();
    for (p, comp) in mp.components().iter().enumerate() {
        for (row, col) in comp.addable_cells() {
            let node = Node { comp: p, row, col };
            if node.residue(charge, m) == q {
                addable.push(node);
            }
        }
        for (row, col) in comp.removable_cells() {
            let node = Node { comp: p, row, col };
            if node.residue(charge, m) == q {
                removable.push(node);
            }
        }
    }
    let key = |n: &Node| (n.comp, -n.content());
    addable.sort_by_key(key);
    removable.sort_by_key(key);
    (addable, removable)
}

/// The `ell`-core together with the `ell`-quotient of a partition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoreQuotient {
    pub core: Partition,
    pub quotient: Multipartition,
}

/// Inverse of [`Partition::core_quotient`]: reassembles the partition whose
/// core and quotient are the given ones.
pub fn rebuild_from_core_quotient(
    cq: &CoreQuotient,
    ell: usize,
) -> Result<Partition, PartitionError> {
    assert!(ell >= 1);
    assert_eq!(cq.quotient.ell(), ell, "quotient must have {ell} components");
    if !cq.core.is_core(ell) {
        return Err(PartitionError::NotACore(ell));
    }
    // Bead counts per runner from the core, enlarged uniformly so every
    // runner can hold its quotient component, then raise beads per the
    // quotient. A uniform surplus keeps the window a multiple of ell.
    let core_counts = runner_counts(&cq.core, ell);
    let surplus = cq
        .quotient
        .components()
        .iter()
        .map(|c| c.len())
        .max()
        .unwrap_or(0)
        + 1;
    let mut betas = Vec::new();
    for p in 0..ell {
        let count = core_counts[p] + surplus;
        for pos in runner_positions(cq.quotient.component(p), count) {
            betas.push(p as i64 + pos * ell as i64);
        }
    }
    Ok(Partition::from_beta_numbers(betas))
}

// Bead count per runner for a fixed window that is a multiple of ell.
fn runner_counts(p: &Partition, ell: usize) -> Vec<usize> {
    let window = p.len().div_ceil(ell).max(1) * ell;
    let mut counts = vec![0usize; ell];
    for b in p.beta_numbers(window) {
        counts[(b.rem_euclid(ell as i64)) as usize] += 1;
    }
    counts
}

// Bead positions on a single runner encoding `comp` with `count` beads.
fn runner_positions(comp: &Partition, count: usize) -> Vec<i64> {
    assert!(count >= comp.len());
    (1..=count)
        .map(|k| comp.part(k - 1) as i64 - k as i64 + count as i64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn conjugate_is_involutive() {
        for n in 0..=10 {
            for lam in Partition::all(n) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn dilate_examples() {
        assert_eq!(p(&[2, 1]).dilate(2), p(&[4, 2]));
        assert_eq!(Partition::empty().dilate(3), Partition::empty());
        assert_eq!(p(&[5, 5]).dilate(1), p(&[5, 5]));
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[1, 1]).z_value(), BigInt::from(2));
        assert_eq!(p(&[2, 1]).z_value(), BigInt::from(2));
        assert_eq!(p(&[3, 3, 1]).z_value(), BigInt::from(18));
        assert_eq!(Partition::empty().z_value(), BigInt::from(1));
    }

    #[test]
    fn contents_examples() {
        assert_eq!(p(&[2, 1]).contents(), vec![-1, 0, 1]);
        assert_eq!(Partition::empty().contents(), Vec::<i64>::new());
        assert_eq!(p(&[3]).contents(), vec![0, 1, 2]);
    }

    #[test]
    fn residue_counts() {
        let s0 = Charge::zero(1);
        let counts = nodes_with_residue(&Multipartition::new(vec![p(&[1])]), &s0, 2);
        assert_eq!(counts, vec![1, 0]);
        let counts = nodes_with_residue(&Multipartition::new(vec![p(&[2, 1])]), &s0, 2);
        assert_eq!(counts, vec![1, 2]);
        let counts = nodes_with_residue(&Multipartition::empty(2), &Charge::new(vec![3, -1]), 4);
        assert_eq!(counts, vec![0, 0, 0, 0]);
    }

    #[test]
    fn residue_counts_sum_to_size() {
        for n in 0..=6 {
            for mp in Multipartition::all(n, 2) {
                for m in 2..=4 {
                    let counts = nodes_with_residue(&mp, &Charge::new(vec![1, -1]), m);
                    assert_eq!(counts.iter().sum::<u64>(), mp.size() as u64);
                }
            }
        }
    }

    #[test]
    fn addable_removable_examples() {
        let (add, rem) = addable_removable(&Multipartition::empty(1), &Charge::zero(1), 2, 0);
        assert_eq!(
            add,
            vec![Node {
                comp: 0,
                row: 1,
                col: 1
            }]
        );
        assert!(rem.is_empty());

        let mp = Multipartition::new(vec![p(&[2, 1])]);
        let (add, rem) = addable_removable(&mp, &Charge::zero(1), 2, 1);
        assert!(add.is_empty());
        assert_eq!(
            rem,
            vec![
                Node {
                    comp: 0,
                    row: 1,
                    col: 2
                },
                Node {
                    comp: 0,
                    row: 2,
                    col: 1
                }
            ]
        );

        let mp = Multipartition::new(vec![p(&[1]), Partition::empty()]);
        let (add, _) = addable_removable(&mp, &Charge::new(vec![0, 1]), 2, 1);
        assert!(add.contains(&Node {
            comp: 0,
            row: 1,
            col: 2
        }));
        assert!(add.contains(&Node {
            comp: 1,
            row: 1,
            col: 1
        }));
    }

    // Independent oracle: strip ell-ribbons greedily. The resulting core does
    // not depend on the removal order.
    fn core_by_ribbon_stripping(lam: &Partition, ell: usize) -> Partition {
        let mut betas = lam.beta_numbers(lam.len().max(1) + ell);
        loop {
            let mut moved = false;
            for i in 0..betas.len() {
                let lower = betas[i] - ell as i64;
                if lower >= 0 && !betas.contains(&lower) {
                    betas[i] = lower;
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        Partition::from_beta_numbers(betas)
    }

    #[test]
    fn core_quotient_examples() {
        for lam in Partition::all(5) {
            let cq = lam.core_quotient(1);
            assert_eq!(cq.core, Partition::empty());
            assert_eq!(cq.quotient.component(0), &lam);
        }
        let cq = Partition::empty().core_quotient(3);
        assert_eq!(cq.core, Partition::empty());
        assert_eq!(cq.quotient.size(), 0);

        let cq = p(&[2]).core_quotient(2);
        assert_eq!(cq.core, Partition::empty());
        assert_eq!(cq.quotient.size(), 1);
        assert_eq!(core_by_ribbon_stripping(&p(&[2]), 2), Partition::empty());
    }

    #[test]
    fn core_quotient_size_identity_and_core_oracle() {
        for n in 0..=10 {
            for lam in Partition::all(n) {
                for ell in 2..=4usize {
                    let cq = lam.core_quotient(ell);
                    assert_eq!(
                        lam.size(),
                        cq.core.size() + ell as u32 * cq.quotient.size()
                    );
                    assert!(cq.core.is_core(ell));
                    assert_eq!(cq.core, core_by_ribbon_stripping(&lam, ell));
                }
            }
        }
    }

    #[test]
    fn content_congruence_mod_ell() {
        // contents(lam) mod ell == contents(core) mod ell + each class |quotient| times
        for n in 0..=10 {
            for lam in Partition::all(n) {
                for ell in 2..=4usize {
                    let cq = lam.core_quotient(ell);
                    let reduce = |v: Vec<i64>| {
                        let mut counts = vec![0u64; ell];
                        for c in v {
                            counts[c.rem_euclid(ell as i64) as usize] += 1;
                        }
                        counts
                    };
                    let lhs = reduce(lam.contents());
                    let mut rhs = reduce(cq.core.contents());
                    for r in rhs.iter_mut() {
                        *r += cq.quotient.size() as u64;
                    }
                    assert_eq!(lhs, rhs, "lambda={lam} ell={ell}");
                }
            }
        }
    }

    #[test]
    fn rebuild_round_trips() {
        for n in 0..=8 {
            for lam in Partition::all(n) {
                for ell in [2usize, 3] {
                    let cq = lam.core_quotient(ell);
                    assert_eq!(rebuild_from_core_quotient(&cq, ell).unwrap(), lam);
                }
            }
        }
        // ell = 1 rebuild
        for lam in Partition::all(6) {
            let cq = CoreQuotient {
                core: Partition::empty(),
                quotient: Multipartition::new(vec![lam.clone()]),
            };
            assert_eq!(rebuild_from_core_quotient(&cq, 1).unwrap(), lam);
        }
    }

    #[test]
    fn rebuild_rejects_non_core() {
        let cq = CoreQuotient {
            core: p(&[2]), // has a 2-hook
            quotient: Multipartition::empty(2),
        };
        assert_eq!(
            rebuild_from_core_quotient(&cq, 2),
            Err(PartitionError::NotACore(2))
        );
    }

    #[test]
    fn parse_and_display() {
        for s in ["[]", "[1]", "[3,1,1]"] {
            let lam: Partition = s.parse().unwrap();
            assert_eq!(lam.to_string(), s);
        }
        let mp: Multipartition = "[2,1]|[]".parse().unwrap();
        assert_eq!(mp.ell(), 2);
        assert_eq!(mp.to_string(), "[2,1]|[]");
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("nope".parse::<Partition>().is_err());
    }

    #[test]
    fn enumeration_matches_count_table() {
        for n in 0..=8u32 {
            assert_eq!(Partition::all(n).len() as u64, Partition::count(n));
            for ell in 1..=3usize {
                assert_eq!(
                    Multipartition::all(n, ell).len() as u64,
                    count_table(n, ell)[n as usize]
                );
            }
        }
    }
}
