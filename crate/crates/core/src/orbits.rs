//! The order map `t(x)`, the recurrence `u_{n+2} = 3x u_{n+1} - u_n` and its
//! value sets, and pairwise orbit intersections.
//!
//! For `x` in `F_p`, `xi` is a root of `Z^2 - 3xZ + 1` in `F_{p^2}` and `t(x)` is
//! its multiplicative order. Both roots are mutually inverse, so the order does
//! not depend on the choice. The formula is applied at `x = 0` too.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{
    element_order, legendre_raw, mul_mod, sub_mod, subgroup_of_order, Ambient, Factorization, FieldElement, PrimeField,
    QuadExtElement, QuadField,
};
use crate::markoff::{on_surface_raw, MarkoffTriple, Surface, SurfaceOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Split {
    /// `9x^2 - 4` is a square: `xi` lies in `F_p`.
    InBaseField,
    InExtension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderRecord {
    pub x: FieldElement,
    pub xi: QuadExtElement,
    pub t: u64,
    pub split: Split,
}

/// Per-prime context: field, extension and the group-order factorizations,
/// built once and shared read-only.
#[derive(Debug, Clone)]
pub struct OrderContext {
    field: PrimeField,
    quad: QuadField,
    base_order: Factorization,
    ext_order: Factorization,
}

impl OrderContext {
    pub fn new(p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Ok(OrderContext {
            quad: field.quad(),
            base_order: field.base_group_order(),
            ext_order: field.ext_group_order(),
            field,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn quad(&self) -> &QuadField {
        &self.quad
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// The root `(3x + sqrt(9x^2 - 4)) / 2` with the canonical square root.
    pub fn xi(&self, x: u64) -> (QuadExtElement, Split) {
        let p = self.p();
        let three_x = mul_mod(3, x % p, p);
        let disc = sub_mod(mul_mod(three_x, three_x, p), 4, p);
        let split = if legendre_raw(disc, p) >= 0 { Split::InBaseField } else { Split::InExtension };
        let root = self.quad.sqrt_of_base(disc);
        let inv2 = p.div_ceil(2);
        let xi = (self.quad.elem(three_x, 0) + root).scale(inv2);
        (xi, split)
    }

    pub fn t_of(&self, x: FieldElement) -> Result<OrderRecord> {
        if x.modulus != self.p() {
            return Err(Error::ModulusMismatch(x.modulus, self.p()));
        }
        let (xi, split) = self.xi(x.value);
        let fact = match split {
            Split::InBaseField => &self.base_order,
            Split::InExtension => &self.ext_order,
        };
        let t = element_order(&xi, fact)?;
        Ok(OrderRecord { x, xi, t, split })
    }

    pub fn t(&self, x: u64) -> u64 {
        self.t_of(self.field.elem(x)).expect("xi is a unit").t
    }

    /// `t(x)` for every `x` in `F_p`, indexed by residue.
    pub fn table(&self) -> Vec<u64> {
        (0..self.p()).map(|x| self.t(x)).collect()
    }
}

/// `t(x)` with a fresh context; prefer [`OrderContext`] in loops.
pub fn t_of(x: FieldElement) -> Result<OrderRecord> {
    OrderContext::new(x.modulus)?.t_of(x)
}

/// One period of a recurrence orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSequence {
    pub x: u64,
    pub u1: u64,
    pub u2: u64,
    /// `u_1, ..., u_period`.
    pub values: Vec<u64>,
    pub period: u64,
}

/// Iterate `u_{n+2} = 3x u_{n+1} - u_n` until the state `(u_n, u_{n+1})`
/// returns to `(u1, u2)`. The step is invertible, so it always does.
pub fn orbit_sequence(x: FieldElement, u1: FieldElement, u2: FieldElement) -> Result<OrbitSequence> {
    x.same_modulus(&u1)?;
    x.same_modulus(&u2)?;
    if u1.is_zero() && u2.is_zero() {
        return Err(Error::ZeroInitialState);
    }
    Ok(orbit_raw(x.value, u1.value, u2.value, x.modulus))
}

pub(crate) fn orbit_raw(x: u64, u1: u64, u2: u64, p: u64) -> OrbitSequence {
    let k = mul_mod(3, x, p);
    let mut values = Vec::new();
    let (mut a, mut b) = (u1, u2);
    loop {
        values.push(a);
        let c = sub_mod(mul_mod(k, b, p), a, p);
        a = b;
        b = c;
        if (a, b) == (u1, u2) {
            break;
        }
    }
    let period = values.len() as u64;
    OrbitSequence { x, u1, u2, values, period }
}

/// The value set of the orbit through a surface triple, both as computed from
/// the closed form and by direct iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitValueSet {
    pub x: u64,
    pub t: u64,
    /// Coefficient of `xi^n` in `u_n = alpha xi^n + beta xi^-n`.
    pub alpha: QuadExtElement,
    pub beta: QuadExtElement,
    /// `(xi^2 + 1)^2 / (9 (xi^2 - 1)^2)`.
    pub r: QuadExtElement,
    /// True when `alpha * beta == r`, i.e. the closed form was used.
    pub parametrized: bool,
    /// Sorted distinct values.
    pub elements: Vec<u64>,
}

/// `r(x)` from a root `xi` with `xi^2 != 1`.
pub fn r_of_xi(xi: &QuadExtElement) -> Result<QuadExtElement> {
    let one = xi.with_base(1);
    let xi2 = xi.square();
    let num = (xi2 + one).square();
    let den = (xi2 - one).square().scale(9);
    Ok(num * den.inv()?)
}

/// `Z(x)` for the orbit through `(x, y, z)`, seeded with `u_1 = y`, `u_2 = z`.
pub fn orbit_value_set(ctx: &OrderContext, x: u64, y: u64, z: u64) -> Result<OrbitValueSet> {
    let p = ctx.p();
    if !on_surface_raw(x, y, z, p) {
        return Err(Error::NotOnSurface { p, x, y, z });
    }
    let rec = ctx.t_of(ctx.field.elem(x))?;
    let xi = rec.xi;
    let one = ctx.quad.one();
    let xi2 = xi.square();
    if xi2 == one {
        return Err(Error::DegenerateOrder(x));
    }
    let r = r_of_xi(&xi)?;
    let xi_inv = xi.inv()?;
    let (u1, u2) = (ctx.quad.elem(y, 0), ctx.quad.elem(z, 0));
    // u2 - u1/xi = alpha (xi^2 - 1)
    let alpha = (u2 - u1 * xi_inv) * (xi2 - one).inv()?;
    let beta = (u1 - alpha * xi) * xi;

    let iterated: BTreeSet<u64> = orbit_raw(x, y, z, p).values.into_iter().collect();
    let parametrized = alpha * beta == r;
    if !parametrized {
        return Ok(OrbitValueSet {
            x,
            t: rec.t,
            alpha,
            beta,
            r,
            parametrized,
            elements: iterated.into_iter().collect(),
        });
    }
    let h = subgroup_of_order(rec.t, Ambient::Extension, &ctx.field)?;
    let closed: BTreeSet<u64> = h
        .elements
        .iter()
        .map(|&u| alpha * u + beta * u.inv().expect("subgroup element is a unit"))
        .filter_map(|v| v.to_base().map(|f| f.value))
        .collect();
    if closed != iterated {
        return Err(Error::ParametrizationMismatch(x));
    }
    Ok(OrbitValueSet { x, t: rec.t, alpha, beta, r, parametrized, elements: closed.into_iter().collect() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub p: u64,
    pub x1: u64,
    pub x2: u64,
    pub t1: u64,
    pub t2: u64,
    pub intersection: u64,
    /// `intersection / (t1 t2 / p + (t1 t2)^(1/3))`.
    pub lemma_ratio: f64,
}

pub fn lemma_denominator(t1: u64, t2: u64, p: u64) -> f64 {
    let prod = (t1 * t2) as f64;
    prod / p as f64 + prod.cbrt()
}

/// `#(Z(x1) & Z(x2))` for the orbits seeded with `seed1` and `seed2`.
pub fn intersection_size(
    ctx: &OrderContext,
    x1: u64,
    seed1: (u64, u64),
    x2: u64,
    seed2: (u64, u64),
) -> Result<IntersectionReport> {
    let p = ctx.p();
    let (x1, x2) = (x1 % p, x2 % p);
    if x1 == x2 || (x1 + x2) % p == 0 {
        return Err(Error::CoincidentOrbits(x1, x2));
    }
    let f = |v: u64| ctx.field.elem(v);
    let a = orbit_sequence(f(x1), f(seed1.0), f(seed1.1))?;
    let b = orbit_sequence(f(x2), f(seed2.0), f(seed2.1))?;
    let za: BTreeSet<u64> = a.values.into_iter().collect();
    let zb: BTreeSet<u64> = b.values.into_iter().collect();
    let size = za.intersection(&zb).count() as u64;
    let (t1, t2) = (ctx.t(x1), ctx.t(x2));
    Ok(IntersectionReport {
        p,
        x1,
        x2,
        t1,
        t2,
        intersection: size,
        lemma_ratio: size as f64 / lemma_denominator(t1, t2, p),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinOrderProduct {
    pub p: u64,
    pub min_product: u64,
    pub ratio_to_log_p: f64,
    pub witness: MarkoffTriple,
}

/// Minimum of `t(x) t(y) t(z)` over `M_p`; the witness is the smallest key
/// attaining it.
pub fn min_order_product(p: u64) -> Result<MinOrderProduct> {
    let ctx = OrderContext::new(p)?;
    let table = ctx.table();
    let surface = Surface::build(p, SurfaceOptions::default())?;
    let (min_product, [x, y, z]) = surface
        .iter_coords()
        .map(|(_, c)| (table[c[0] as usize] * table[c[1] as usize] * table[c[2] as usize], c))
        .min_by_key(|&(prod, _)| prod)
        .expect("M_p is nonempty");
    Ok(MinOrderProduct {
        p,
        min_product,
        ratio_to_log_p: min_product as f64 / (p as f64).ln(),
        witness: MarkoffTriple::from_raw_unchecked(p, x, y, z),
    })
}

/// `x` with the recurrence seed `(u_1, u_2)`.
pub type OrbitSeed = (u64, (u64, u64));

/// `count` pairs of orbits through random surface triples `(x, y, z)`, with
/// `x1 != +-x2`, drawn reproducibly from `seed`.
pub fn random_admissible_pairs(p: u64, count: usize, seed: u64) -> Result<Vec<(OrbitSeed, OrbitSeed)>> {
    let surface = Surface::build(p, SurfaceOptions::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.rotate_left(32));
    let mut draw = || {
        let [x, y, z] = surface.coords_of(rng.gen_range(0..surface.len()));
        (x, (y, z))
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = draw();
        let b = draw();
        if a.0 != b.0 && (a.0 + b.0) % p != 0 {
            out.push((a, b));
        }
    }
    Ok(out)
}

/// Intersection reports for [`random_admissible_pairs`].
pub fn intersection_sweep(p: u64, count: usize, seed: u64) -> Result<Vec<IntersectionReport>> {
    let ctx = OrderContext::new(p)?;
    random_admissible_pairs(p, count, seed)?
        .into_iter()
        .map(|((x1, s1), (x2, s2))| intersection_size(&ctx, x1, s1, x2, s2))
        .collect()
}
