//! Zeros of bivariate polynomial families on `G x G` for a multiplicative
//! subgroup `G`, the invariants entering the zero-count bound, and a sweep that
//! compares exact counts with `12 m n g h^(2/3) t^(2/3)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{primes_in_range, subgroup_of_order, Ambient, PrimeField, QuadExtElement, SubgroupSpec};
use crate::orbits::OrbitValueSet;
use crate::poly::BivariatePoly;

pub const DEFAULT_WORK_CEILING: u64 = 200_000_000;
/// Above this subgroup order independence is tested on a random sample of pairs.
pub const EXHAUSTIVE_INDEPENDENCE_LIMIT: u64 = 10_000;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `gcd { i1 + j1 - i2 - j2 }` over pairs of monomials; 0 for homogeneous `P`.
pub fn exponent_gcd(poly: &BivariatePoly) -> Result<u64> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d0 = poly.min_total_degree() as u64;
    // every difference is a difference of offsets from the minimum
    Ok(poly.terms().keys().fold(0, |g, &(i, j)| gcd(g, (i + j) as u64 - d0)))
}

/// The monomials of minimal total degree.
pub fn sharp_part(poly: &BivariatePoly) -> Result<BivariatePoly> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = poly.min_total_degree();
    Ok(BivariatePoly::new(*poly.quad(), poly.terms().iter().filter(|(k, _)| k.0 + k.1 == d).map(|(&k, &c)| (k, c))))
}

/// The zero-count bound needs `P^sharp` to have at least two monomials.
pub fn sharp_has_two_monomials(poly: &BivariatePoly) -> Result<bool> {
    Ok(sharp_part(poly)?.monomial_count() >= 2)
}

/// Where to look for points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointField {
    Base,
    Extension,
}

pub fn field_points(field: &PrimeField, which: PointField) -> Vec<QuadExtElement> {
    let q = field.quad();
    let p = field.p();
    match which {
        PointField::Base => (0..p).map(|a| q.elem(a, 0)).collect(),
        PointField::Extension => (0..p).flat_map(|b| (0..p).map(move |a| q.elem(a, b))).collect(),
    }
}

/// Curve points with `XY = 0`, or where `P` and `dP/dY` vanish together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLocus {
    /// Sorted by coordinates.
    pub points: Vec<(QuadExtElement, QuadExtElement)>,
    pub cardinality: usize,
    /// `(m + n)^2`.
    pub bound: u64,
}

pub(crate) fn point_key(pt: &(QuadExtElement, QuadExtElement)) -> (u64, u64, u64, u64) {
    (pt.0.a, pt.0.b, pt.1.a, pt.1.b)
}

/// Singular locus by elimination along fibres: for each `x`, the common roots of
/// `P(x, Y)` and `dP/dY(x, Y)` are the roots of their gcd, so only fibres with
/// a nonconstant gcd (at most `(m+n)(m+n-1)` of them) are scanned for roots.
/// The caller asserts irreducibility; cheap necessary checks are applied.
pub fn singular_locus(poly: &BivariatePoly, which: PointField) -> Result<SingularLocus> {
    if poly.n() == 0 {
        return Err(if poly.is_zero() { Error::ZeroPolynomial } else { Error::ConstantInY });
    }
    poly.check_plausibly_irreducible()?;
    let field = PrimeField::new(poly.p())?;
    let pts = field_points(&field, which);
    let dy = poly.partial_y();
    let zero = poly.quad().zero();
    let mut points = Vec::new();
    for &x in &pts {
        let f = poly.at_x(x);
        if f.is_zero() {
            return Err(Error::InvalidArgument(format!("{poly} vanishes on the line X = {x}; not irreducible")));
        }
        if x.is_zero() {
            points.extend(f.roots_in(&pts).map(|y| (x, y)));
            continue;
        }
        if f.coeff(0).is_none_or(|c| c.is_zero()) {
            points.push((x, zero));
        }
        let g = f.gcd(&dy.at_x(x));
        if g.degree().unwrap_or(0) >= 1 {
            points.extend(g.roots_in(&pts).filter(|y| !y.is_zero()).map(|y| (x, y)));
        }
    }
    points.sort_by_key(point_key);
    points.dedup();
    let mn = (poly.m() + poly.n()) as u64;
    Ok(SingularLocus { cardinality: points.len(), points, bound: mn * mn })
}

/// Outcome of a `G`-independence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// `P(X, Y) = gamma Q(uX, vY)`.
    Dependent {
        u: QuadExtElement,
        v: QuadExtElement,
        gamma: QuadExtElement,
    },
    /// No witness found among `samples` random pairs.
    ProbablyIndependent {
        samples: u64,
    },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        !matches!(self, Independence::Dependent { .. })
    }
}

/// If `P = gamma Q(uX, vY)` return `gamma`. Supports must already agree.
fn match_scaling(
    p: &BivariatePoly,
    q: &BivariatePoly,
    u_pows: &[QuadExtElement],
    v_pows: &[QuadExtElement],
) -> Option<QuadExtElement> {
    let mut pairs = p.terms().iter().zip(q.terms().iter());
    let ((&(i0, j0), &a0), (_, &b0)) = pairs.next()?;
    let s0 = b0 * u_pows[i0 as usize] * v_pows[j0 as usize];
    for ((&(i, j), &a), (_, &b)) in pairs {
        // a / (b u^i v^j) == a0 / s0, cross-multiplied
        if a * s0 != a0 * (b * u_pows[i as usize] * v_pows[j as usize]) {
            return None;
        }
    }
    Some(a0 * s0.inv().ok()?)
}

fn powers(x: QuadExtElement, up_to: u32) -> Vec<QuadExtElement> {
    let mut out = Vec::with_capacity(up_to as usize + 1);
    let mut cur = x.with_base(1);
    for _ in 0..=up_to {
        out.push(cur);
        cur = cur * x;
    }
    out
}

/// Exhaustive over `G^2` up to [`EXHAUSTIVE_INDEPENDENCE_LIMIT`]; beyond it,
/// `samples` random pairs drawn with `seed`.
pub fn g_independence(p: &BivariatePoly, q: &BivariatePoly, g: &SubgroupSpec, samples: u64, seed: u64) -> Independence {
    assert_eq!(p.p(), q.p(), "mixed moduli");
    if p.terms().keys().ne(q.terms().keys()) {
        return Independence::Independent;
    }
    let (m, n) = (p.m(), p.n());
    let test = |u: QuadExtElement, v: QuadExtElement| {
        match_scaling(p, q, &powers(u, m), &powers(v, n)).map(|gamma| Independence::Dependent { u, v, gamma })
    };
    if g.order <= EXHAUSTIVE_INDEPENDENCE_LIMIT {
        let v_pows: Vec<Vec<QuadExtElement>> = g.elements.iter().map(|&v| powers(v, n)).collect();
        for &u in &g.elements {
            let u_pows = powers(u, m);
            for (k, vp) in v_pows.iter().enumerate() {
                if let Some(gamma) = match_scaling(p, q, &u_pows, vp) {
                    return Independence::Dependent { u, v: g.elements[k], gamma };
                }
            }
        }
        Independence::Independent
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = g.elements.len();
        for _ in 0..samples {
            let (u, v) = (g.elements[rng.gen_range(0..t)], g.elements[rng.gen_range(0..t)]);
            if let Some(dep) = test(u, v) {
                return dep;
            }
        }
        Independence::ProbablyIndependent { samples }
    }
}

pub fn is_g_independent(p: &BivariatePoly, q: &BivariatePoly, g: &SubgroupSpec) -> bool {
    g_independence(p, q, g, 100_000, 0).is_independent()
}

/// `P_k(X, Y) = P(lambda_k X, mu_k Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily {
    pub base: BivariatePoly,
    pub scalings: Vec<(QuadExtElement, QuadExtElement)>,
}

impl PolyFamily {
    pub fn members(&self) -> Vec<BivariatePoly> {
        self.scalings.iter().map(|&(l, m)| self.base.scaled(l, m)).collect()
    }

    pub fn h(&self) -> usize {
        self.scalings.len()
    }

    /// Every pair of members is `G`-independent.
    pub fn pairwise_independent(&self, g: &SubgroupSpec) -> bool {
        let members = self.members();
        (0..members.len()).all(|i| (i + 1..members.len()).all(|j| is_g_independent(&members[i], &members[j], g)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCount {
    #[serde(rename = "N_h")]
    pub n_h: u64,
    pub per_member: Vec<u64>,
}

/// Zeros of one polynomial on `G^2`. `G` is cyclic with `elements[k] = g^k`,
/// so `u^i v^j` for `u = g^a, v = g^b` is `elements[(i a + j b) mod t]`.
fn zeros_on_grid(poly: &BivariatePoly, g: &SubgroupSpec) -> u64 {
    let t = g.order as usize;
    let terms: Vec<(usize, usize, QuadExtElement)> =
        poly.terms().iter().map(|(&(i, j), &c)| (i as usize % t, j as usize % t, c)).collect();
    let zero = poly.quad().zero();
    (0..t)
        .into_par_iter()
        .map(|a| {
            let mut count = 0u64;
            for b in 0..t {
                let mut acc = zero;
                for &(i, j, c) in &terms {
                    acc = acc + c * g.elements[(i * a + j * b) % t];
                }
                if acc.is_zero() {
                    count += 1;
                }
            }
            count
        })
        .sum()
}

/// Exact total number of zeros of the family members on `G^2`.
pub fn count_zeros(family: &PolyFamily, g: &SubgroupSpec, work_ceiling: u64) -> Result<ZeroCount> {
    let work = g.order.saturating_mul(g.order).saturating_mul(family.h() as u64);
    if work > work_ceiling {
        return Err(Error::WorkCeiling { work, ceiling: work_ceiling });
    }
    let per_member: Vec<u64> = family.members().iter().map(|m| zeros_on_grid(m, g)).collect();
    Ok(ZeroCount { n_h: per_member.iter().sum(), per_member })
}

/// `12 m n g h^(2/3) t^(2/3)`.
pub fn theorem_bound(m: u64, n: u64, g: u64, h: u64, t: u64) -> Result<f64> {
    if g == 0 {
        return Err(Error::Homogeneous);
    }
    if m == 0 || n == 0 || h == 0 || t == 0 {
        return Err(Error::InvalidArgument("m, n, h, t must be positive".into()));
    }
    Ok(12.0 * (m * n * g) as f64 * ((h * h) as f64).cbrt() * ((t * t) as f64).cbrt())
}

/// Upper end of the admissible range of `t`: `p^(3/4) h^(-1/4) / 2`.
pub fn window_upper(p: u64, h: u64) -> f64 {
    0.5 * (p as f64).powf(0.75) * (h as f64).powf(-0.25)
}

/// `t >= h^2` and `t <= p^(3/4) h^(-1/4) / 2`; the unspecified `c0(m, n)` is
/// not part of the test.
pub fn in_window(p: u64, t: u64, h: u64) -> bool {
    t >= h * h && (t as f64) <= window_upper(p, h)
}

/// `a^2 b X^2 Y - a b^2 X Y^2 - a s X + b r Y`: the relation between values
/// `a u + r/(a u)` and `b v + s/(b v)` of two orbits, cleared of denominators.
pub fn orbit_pair_poly(a: QuadExtElement, r: QuadExtElement, b: QuadExtElement, s: QuadExtElement) -> BivariatePoly {
    let q = crate::field::PrimeField::new(a.p).expect("valid modulus").quad();
    BivariatePoly::new(q, [((2, 1), a * a * b), ((1, 2), -(a * b * b)), ((1, 0), -(a * s)), ((0, 1), b * r)])
}

/// The pair polynomial for two parametrized orbit value sets.
pub fn pair_polynomial(z1: &OrbitValueSet, z2: &OrbitValueSet) -> BivariatePoly {
    orbit_pair_poly(z1.alpha, z1.r, z2.alpha, z2.r)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundSweepConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub hs: Vec<u64>,
    /// Only subgroup orders with `t >= h^2` are used when set.
    pub require_t_at_least_h2: bool,
    /// Draw parameters and scalings from `F_{p^2}^*` instead of `F_p^*`.
    pub extension_params: bool,
    pub seed: u64,
    /// Attempts at drawing a pairwise independent family before giving up.
    pub max_attempts: u32,
    pub work_ceiling: u64,
}

impl Default for BoundSweepConfig {
    fn default() -> Self {
        BoundSweepConfig {
            p_min: 101,
            p_max: 499,
            hs: vec![1, 2, 3],
            require_t_at_least_h2: true,
            extension_params: false,
            seed: 0,
            max_attempts: 64,
            work_ceiling: DEFAULT_WORK_CEILING,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub p: u64,
    pub t: u64,
    pub h: u64,
    pub m: u64,
    pub n: u64,
    pub g: u64,
    #[serde(rename = "N_h")]
    pub n_h: u64,
    pub bound: f64,
    pub ratio: f64,
    pub in_window: bool,
}

impl BoundRow {
    pub fn is_violation(&self) -> bool {
        self.in_window && self.ratio > 1.0
    }
}

/// A generated family together with the subgroup it was drawn against.
#[derive(Debug, Clone)]
pub struct SweepCase {
    pub family: PolyFamily,
    pub subgroup: SubgroupSpec,
    pub row: BoundRow,
}

fn draw_unit(rng: &mut ChaCha8Rng, field: &PrimeField, ext: bool) -> QuadExtElement {
    let p = field.p();
    let q = field.quad();
    loop {
        let e = if ext { q.elem(rng.gen_range(0..p), rng.gen_range(0..p)) } else { q.elem(rng.gen_range(1..p), 0) };
        if !e.is_zero() {
            return e;
        }
    }
}

fn case_seed(seed: u64, p: u64, h: u64, t: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (p << 32) ^ (h << 24) ^ t
}

/// Draw a random family of the orbit-pair shape with `h` pairwise
/// `G`-independent members, or `None` after `max_attempts` failures.
pub fn random_family(
    field: &PrimeField,
    g: &SubgroupSpec,
    h: u64,
    ext: bool,
    rng: &mut ChaCha8Rng,
    max_attempts: u32,
) -> Option<PolyFamily> {
    for _ in 0..max_attempts {
        let [a, r, b, s] = [0; 4].map(|_| draw_unit(rng, field, ext));
        let base = orbit_pair_poly(a, r, b, s);
        let scalings = (0..h).map(|_| (draw_unit(rng, field, ext), draw_unit(rng, field, ext))).collect();
        let family = PolyFamily { base, scalings };
        if family.pairwise_independent(g) {
            return Some(family);
        }
    }
    None
}

/// One sweep cell: subgroup of order `t` in `F_p^*`, family of size `h`.
pub fn sweep_case(field: &PrimeField, t: u64, h: u64, config: &BoundSweepConfig) -> Result<Option<SweepCase>> {
    let p = field.p();
    let g = subgroup_of_order(t, Ambient::Base, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(config.seed, p, h, t));
    let Some(family) = random_family(field, &g, h, config.extension_params, &mut rng, config.max_attempts) else {
        return Ok(None);
    };
    let count = count_zeros(&family, &g, config.work_ceiling)?;
    let base = &family.base;
    let (m, n) = (base.m() as u64, base.n() as u64);
    let gg = exponent_gcd(base)?;
    let bound = theorem_bound(m, n, gg, h, t)?;
    let row = BoundRow {
        p,
        t,
        h,
        m,
        n,
        g: gg,
        n_h: count.n_h,
        bound,
        ratio: count.n_h as f64 / bound,
        in_window: in_window(p, t, h),
    };
    Ok(Some(SweepCase { family, subgroup: g, row }))
}

/// Every prime in range, every `h`, every `t | p - 1` (with `t >= h^2` when
/// configured). Rows are ordered by `(p, h, t)`.
pub fn bound_experiment(config: &BoundSweepConfig) -> Result<Vec<BoundRow>> {
    Ok(bound_cases(config)?.into_iter().map(|c| c.row).collect())
}

pub fn bound_cases(config: &BoundSweepConfig) -> Result<Vec<SweepCase>> {
    let mut jobs = Vec::new();
    for p in primes_in_range(config.p_min.max(5), config.p_max) {
        let field = PrimeField::new(p)?;
        for &h in &config.hs {
            for t in field.base_group_order().divisors() {
                if !config.require_t_at_least_h2 || t >= h * h {
                    jobs.push((field, h, t));
                }
            }
        }
    }
    let cases: Vec<Result<Option<SweepCase>>> =
        jobs.par_iter().map(|(field, h, t)| sweep_case(field, *t, *h, config)).collect();
    let mut out = Vec::new();
    for c in cases {
        if let Some(c) = c? {
            out.push(c);
        }
    }
    Ok(out)
}
