//! Connected components of the move graph on `M_p`.
//!
//! The main path is a union-find over surface node ids; a breadth-first search
//! over the same node table is kept for single-component queries and for
//! cross-checking.

use std::collections::VecDeque;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::primes_in_range;
use crate::markoff::{apply_raw, MarkoffTriple, Move, Surface, SurfaceOptions};

pub const DEFAULT_MEMORY_CEILING: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphConfig {
    /// Largest prime whose surface may be fully materialized.
    pub memory_ceiling: u64,
    pub surface: SurfaceOptions,
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig { memory_ceiling: DEFAULT_MEMORY_CEILING, surface: SurfaceOptions::default() }
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Partition of `M_p` into components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub p: u64,
    pub surface_count: u64,
    /// Descending; ties ordered by representative.
    pub component_sizes: Vec<u64>,
    /// Smallest-key triple of each component, aligned with `component_sizes`.
    pub representatives: Vec<MarkoffTriple>,
    pub exceptional_count: u64,
    pub connected: bool,
}

/// A report together with the per-node labels it was derived from.
#[derive(Debug, Clone)]
pub struct Components {
    pub surface: Surface,
    /// `labels[id]` indexes `report.component_sizes`; label 0 is the giant component.
    pub labels: Vec<u32>,
    pub report: ComponentReport,
}

impl Components {
    /// Every triple outside the largest component, ascending by key.
    pub fn exceptional_set(&self) -> Vec<MarkoffTriple> {
        self.labels.iter().enumerate().filter(|(_, &l)| l != 0).map(|(id, _)| self.surface.triple(id)).collect()
    }

    pub fn component_of(&self, t: &MarkoffTriple) -> Option<u32> {
        let [x, y, z] = t.coords();
        self.surface.index_of(x, y, z).map(|id| self.labels[id])
    }

    pub fn members(&self, label: u32) -> Vec<MarkoffTriple> {
        self.labels.iter().enumerate().filter(|(_, &l)| l == label).map(|(id, _)| self.surface.triple(id)).collect()
    }
}

fn check_ceiling(p: u64, config: &GraphConfig) -> Result<()> {
    if p > config.memory_ceiling {
        return Err(Error::MemoryCeiling { p, ceiling: config.memory_ceiling });
    }
    Ok(())
}

/// Order raw roots into labels: larger components first, then smaller
/// representative id.
fn finalize(surface: Surface, root_of: Vec<usize>) -> Components {
    let n = root_of.len();
    let mut first_seen: Vec<Option<(usize, u64)>> = vec![None; n];
    for (id, &r) in root_of.iter().enumerate() {
        match &mut first_seen[r] {
            Some((_, c)) => *c += 1,
            slot @ None => *slot = Some((id, 1)),
        }
    }
    let mut comps: Vec<(usize, usize, u64)> =
        first_seen.iter().enumerate().filter_map(|(r, s)| s.map(|(rep, c)| (r, rep, c))).collect();
    comps.sort_by(|a, b| b.2.cmp(&a.2).then(a.1.cmp(&b.1)));
    let mut label_of_root = vec![u32::MAX; n];
    for (label, &(r, _, _)) in comps.iter().enumerate() {
        label_of_root[r] = label as u32;
    }
    let labels: Vec<u32> = root_of.iter().map(|&r| label_of_root[r]).collect();
    let component_sizes: Vec<u64> = comps.iter().map(|c| c.2).collect();
    let representatives = comps.iter().map(|c| surface.triple(c.1)).collect();
    let surface_count = n as u64;
    let exceptional_count = surface_count - component_sizes.first().copied().unwrap_or(0);
    let report = ComponentReport {
        p: surface.p(),
        surface_count,
        component_sizes,
        representatives,
        exceptional_count,
        connected: exceptional_count == 0,
    };
    Components { surface, labels, report }
}

/// Union-find partition of a prebuilt surface, joining each node to its
/// images under [`Move::SPANNING`].
pub fn components_of_surface(surface: Surface) -> Components {
    let mut uf = UnionFind::new(surface.len());
    let p = surface.p();
    for (id, coords) in surface.iter_coords() {
        for m in Move::SPANNING {
            let [a, b, c] = apply_raw(m, coords, p);
            if let Some(j) = surface.index_of(a, b, c) {
                if j > id {
                    uf.union(id, j);
                }
            }
        }
    }
    let root_of: Vec<usize> = (0..surface.len()).map(|i| uf.find(i)).collect();
    finalize(surface, root_of)
}

/// Same partition computed by repeated breadth-first search.
pub fn components_by_bfs(surface: Surface) -> Components {
    let n = surface.len();
    let mut root_of = vec![usize::MAX; n];
    for start in 0..n {
        if root_of[start] != usize::MAX {
            continue;
        }
        for id in bfs_from(&surface, start) {
            root_of[id] = start;
        }
    }
    finalize(surface, root_of)
}

/// Node ids reachable from `start`, in visit order.
pub fn bfs_from(surface: &Surface, start: usize) -> Vec<usize> {
    let mut seen = vec![false; surface.len()];
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut nb = Vec::with_capacity(9);
    while let Some(id) = queue.pop_front() {
        surface.neighbor_ids(id, surface.coords_of(id), &mut nb);
        for &j in &nb {
            if !seen[j] {
                seen[j] = true;
                order.push(j);
                queue.push_back(j);
            }
        }
    }
    order
}

pub fn analyze(p: u64, config: &GraphConfig) -> Result<Components> {
    check_ceiling(p, config)?;
    Ok(components_of_surface(Surface::build(p, config.surface)?))
}

/// Exact component partition of `M_p`.
pub fn components(p: u64) -> Result<ComponentReport> {
    Ok(analyze(p, &GraphConfig::default())?.report)
}

/// Triples outside the largest component of `M_p`.
pub fn exceptional_set(p: u64) -> Result<Vec<MarkoffTriple>> {
    Ok(analyze(p, &GraphConfig::default())?.exceptional_set())
}

/// One persisted row of a connectivity scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub p: u64,
    pub surface_count: u64,
    pub component_sizes: Vec<u64>,
    pub exceptional_count: u64,
    pub seconds: f64,
}

impl ScanRow {
    pub fn from_report(report: &ComponentReport, seconds: f64) -> Self {
        ScanRow {
            p: report.p,
            surface_count: report.surface_count,
            component_sizes: report.component_sizes.clone(),
            exceptional_count: report.exceptional_count,
            seconds,
        }
    }
}

/// Connectivity scan over the primes in `[p_min, p_max]`.
///
/// Primes for which `skip` returns true are not recomputed. Primes are processed
/// in parallel batches of `batch` and handed to `sink` in increasing order, so
/// an interrupted scan leaves a prefix of rows behind. Returns the exceptional
/// sets of any prime whose graph was not connected.
pub fn conjecture_scan<S, F>(
    p_min: u64,
    p_max: u64,
    config: &GraphConfig,
    batch: usize,
    skip: S,
    mut sink: F,
) -> Result<Vec<(u64, Vec<MarkoffTriple>)>>
where
    S: Fn(u64) -> bool,
    F: FnMut(&ScanRow) -> Result<()>,
{
    let lo = p_min.max(3);
    if p_max < lo {
        return Ok(Vec::new());
    }
    check_ceiling(p_max, config)?;
    let todo: Vec<u64> = primes_in_range(lo, p_max).into_iter().filter(|&p| !skip(p)).collect();
    let mut violations = Vec::new();
    for chunk in todo.chunks(batch.max(1)) {
        let results: Vec<Result<(ScanRow, Vec<MarkoffTriple>)>> = chunk
            .par_iter()
            .map(|&p| {
                let start = Instant::now();
                let comps = analyze(p, config)?;
                let row = ScanRow::from_report(&comps.report, start.elapsed().as_secs_f64());
                let exceptional = if comps.report.connected { Vec::new() } else { comps.exceptional_set() };
                Ok((row, exceptional))
            })
            .collect();
        for r in results {
            let (row, exceptional) = r?;
            sink(&row)?;
            if !exceptional.is_empty() {
                violations.push((row.p, exceptional));
            }
        }
    }
    Ok(violations)
}
