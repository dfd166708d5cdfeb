//! Constructive lower bounds on component sizes.
//!
//! The certifier walks recurrence orbits inside one component and counts only
//! triples it has looked up in that component, so the certified bound never
//! exceeds the true size. Three strategies are tried, in order:
//!
//! 1. a first coordinate `x` with `t(x) > (log p)^(7/9)`: count its `T0`-orbit;
//! 2. an `x0` with `t(x0)` inside the window `[(log p)^a, (log p)^b]`: pick
//!    `y`'s of large order on its orbit, then disjoint sets `W(y)` of large-order
//!    values on their orbits, and count the `T0`-orbits of every `z` in them;
//! 3. otherwise the same two-level walk from the `x1` of largest order.
//!
//! When nothing can be certified the exact component size is returned.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_from, GraphConfig};
use crate::markoff::{apply_raw, MarkoffTriple, Move, Surface};
use crate::orbits::{orbit_raw, OrderContext};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifierConfig {
    /// Scale of the order threshold `c (log p)^(1/2) t^(-1/2)`.
    pub c: f64,
    /// Scale of `s = c0 theta^(1/3)` in the window case.
    pub c0: f64,
    /// Scale of `s = c1 (log p)^(1/9)` in the no-window case.
    pub c1: f64,
    /// Window exponents for `t(x0)`.
    pub window: (f64, f64),
    /// Skip strategy 1, to exercise the two-level construction at small `p`.
    pub skip_large_order: bool,
    pub graph: GraphConfig,
}

impl Default for CertifierConfig {
    fn default() -> Self {
        CertifierConfig {
            c: 1.0,
            c0: 1.0,
            c1: 1.0,
            window: (0.15, 1.0 / 3.0),
            skip_large_order: false,
            graph: GraphConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateCase {
    LargeOrder,
    Window,
    NoWindow,
    Exact,
}

/// One `y_i` of the construction and its disjoint set `W(y_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessLevel {
    pub y: u64,
    pub t_y: u64,
    pub threshold: f64,
    /// Size of `Z(y)` before removing values used by earlier levels.
    pub z_count: u64,
    /// `W(y)` as `(z, verified T0-orbit size of z)`.
    pub w: Vec<(u64, u64)>,
    pub contribution: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeCertificate {
    pub p: u64,
    pub seed: MarkoffTriple,
    pub case: CertificateCase,
    pub certified_lower_bound: u64,
    pub component_size: u64,
    /// `x1` (or `x0`) the construction started from.
    pub root_x: Option<u64>,
    pub root_t: Option<u64>,
    /// `theta(x0)` in the window case.
    pub theta: Option<f64>,
    pub levels: Vec<WitnessLevel>,
}

impl SizeCertificate {
    /// `certified_lower_bound / (log p)^(7/9)`.
    pub fn ratio_to_log_power(&self) -> f64 {
        self.certified_lower_bound as f64 / (self.p as f64).ln().powf(7.0 / 9.0)
    }
}

struct Component<'a> {
    surface: &'a Surface,
    member: Vec<bool>,
    /// First coordinate -> some member triple with it.
    by_first: BTreeMap<u64, [u64; 3]>,
    size: u64,
}

impl Component<'_> {
    fn contains(&self, c: [u64; 3]) -> bool {
        self.surface.index_of(c[0], c[1], c[2]).is_some_and(|id| self.member[id])
    }

    /// Distinct member triples `(x, u_n, u_(n+1))` on the `T0`-orbit of `start`.
    fn t0_orbit_size(&self, start: [u64; 3]) -> u64 {
        let p = self.surface.p();
        let mut seen = HashSet::new();
        let mut cur = start;
        loop {
            if self.contains(cur) {
                seen.insert(cur);
            }
            cur = apply_raw(Move::T0, cur, p);
            if cur == start {
                break;
            }
        }
        seen.len() as u64
    }
}

/// Certify a lower bound for the size of the component containing `seed`.
pub fn certify_component_size(seed: &MarkoffTriple, config: &CertifierConfig) -> Result<SizeCertificate> {
    let p = seed.p();
    if p > config.graph.memory_ceiling {
        return Err(Error::MemoryCeiling { p, ceiling: config.graph.memory_ceiling });
    }
    let ctx = OrderContext::new(p)?;
    let surface = Surface::build(p, config.graph.surface)?;
    let [sx, sy, sz] = seed.coords();
    let start = surface
        .index_of(sx, sy, sz)
        .ok_or(Error::InvalidArgument(format!("seed {seed} is excluded by the surface options")))?;
    let ids = bfs_from(&surface, start);
    let mut member = vec![false; surface.len()];
    let mut by_first = BTreeMap::new();
    for &id in &ids {
        member[id] = true;
        let c = surface.coords_of(id);
        by_first.entry(c[0]).or_insert(c);
    }
    let comp = Component { surface: &surface, member, by_first, size: ids.len() as u64 };
    let table = ctx.table();
    let t = |v: u64| table[v as usize];
    let log_p = (p as f64).ln();

    let mut cert = SizeCertificate {
        p,
        seed: *seed,
        case: CertificateCase::Exact,
        certified_lower_bound: comp.size,
        component_size: comp.size,
        root_x: None,
        root_t: None,
        theta: None,
        levels: Vec::new(),
    };

    // strategy 1
    let (&x_max, &c_max) =
        comp.by_first.iter().max_by(|a, b| t(*a.0).cmp(&t(*b.0)).then(b.0.cmp(a.0))).expect("component is nonempty");
    if !config.skip_large_order && t(x_max) as f64 > log_p.powf(7.0 / 9.0) {
        let bound = comp.t0_orbit_size(c_max);
        if bound > 0 {
            cert.case = CertificateCase::LargeOrder;
            cert.certified_lower_bound = bound;
            cert.root_x = Some(x_max);
            cert.root_t = Some(t(x_max));
            return Ok(cert);
        }
    }

    let (lo, hi) = (log_p.powf(config.window.0), log_p.powf(config.window.1));
    let window_root = comp.by_first.iter().find(|(&x, _)| (lo..=hi).contains(&(t(x) as f64)));
    let (case, root, root_c, theta, y_threshold, s) = match window_root {
        Some((&x0, &c0)) => {
            let theta = config.c * log_p.sqrt() / (t(x0) as f64).sqrt();
            let s = (config.c0 * theta.cbrt()).floor();
            (CertificateCase::Window, x0, c0, Some(theta), theta, s)
        }
        None => {
            let s = (config.c1 * log_p.powf(1.0 / 9.0)).floor();
            // strictly above (log p)^(1/3); nudge so >= works below
            (CertificateCase::NoWindow, x_max, c_max, None, log_p.cbrt() + f64::EPSILON, s)
        }
    };

    // orbit of the root: triples (root, u_j, u_(j+1)) in the component
    let orbit = orbit_raw(root, root_c[1], root_c[2], p).values;
    let period = orbit.len();
    let mut next_of: BTreeMap<u64, u64> = BTreeMap::new();
    for j in 0..period {
        let (u, v) = (orbit[j], orbit[(j + 1) % period]);
        if comp.contains([root, u, v]) {
            next_of.entry(u).or_insert(v);
        }
    }
    let mut ys: Vec<u64> = next_of.keys().copied().filter(|&y| t(y) as f64 >= y_threshold).collect();
    ys.sort_by(|a, b| t(*b).cmp(&t(*a)).then(a.cmp(b)));
    let s = (s.max(1.0) as usize).min(ys.len());
    ys.truncate(s);
    ys.sort_by(|a, b| t(*a).cmp(&t(*b)).then(a.cmp(b)));

    let mut used: HashSet<u64> = HashSet::new();
    let mut levels = Vec::new();
    for y in ys {
        // (root, y, v) in C  =>  (y, root, v) in C, orbit seeded v_1 = root, v_2 = v
        let v = next_of[&y];
        let threshold = config.c * log_p.sqrt() / (t(y) as f64).sqrt();
        let inner = orbit_raw(y, root, v, p).values;
        let n = inner.len();
        let mut z_vals: Vec<(u64, u64)> = Vec::new();
        let mut z_seen = HashSet::new();
        for k in 0..n {
            let (z, w) = (inner[k], inner[(k + 1) % n]);
            if t(z) as f64 >= threshold && comp.contains([y, z, w]) && z_seen.insert(z) {
                z_vals.push((z, w));
            }
        }
        let z_count = z_vals.len() as u64;
        let mut w_set = Vec::new();
        for (z, w) in z_vals {
            if used.insert(z) {
                // (y, z, w) in C  =>  (z, y, w) in C
                let size = comp.t0_orbit_size([z, y, w]);
                w_set.push((z, size));
            }
        }
        let contribution = w_set.iter().map(|&(_, s)| s).sum();
        levels.push(WitnessLevel { y, t_y: t(y), threshold, z_count, w: w_set, contribution });
    }
    let bound: u64 = levels.iter().map(|l| l.contribution).sum();
    if bound > 0 {
        cert.case = case;
        cert.certified_lower_bound = bound;
        cert.root_x = Some(root);
        cert.root_t = Some(t(root));
        cert.theta = theta;
        cert.levels = levels;
    }
    Ok(cert)
}
