//! The Markoff surface `x^2 + y^2 + z^2 = 3xyz` over `F_p`, its Vieta moves and
//! coordinate permutations, and full enumeration of the nonzero solutions.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{add_mod, mul_mod, FieldElement, PrimeField};

/// Largest modulus for which packed keys `(x*p + y)*p + z` fit in 63 bits.
pub const MAX_PACKED_PRIME: u64 = (1 << 21) - 1;

#[inline]
pub(crate) fn surface_residual(x: u64, y: u64, z: u64, p: u64) -> (u64, u64) {
    let lhs = add_mod(add_mod(mul_mod(x, x, p), mul_mod(y, y, p), p), mul_mod(z, z, p), p);
    let rhs = mul_mod(3 % p, mul_mod(x, mul_mod(y, z, p), p), p);
    (lhs, rhs)
}

#[inline]
pub(crate) fn on_surface_raw(x: u64, y: u64, z: u64, p: u64) -> bool {
    let (lhs, rhs) = surface_residual(x, y, z, p);
    lhs == rhs && (x, y, z) != (0, 0, 0)
}

/// Membership test for `M_p`. The all-zero triple is excluded.
pub fn is_on_surface(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<bool> {
    x.same_modulus(&y)?;
    x.same_modulus(&z)?;
    Ok(on_surface_raw(x.value, y.value, z.value, x.modulus))
}

/// A point of `M_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkoffTriple {
    p: u32,
    x: u32,
    y: u32,
    z: u32,
}

impl fmt::Display for MarkoffTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl MarkoffTriple {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self> {
        if is_on_surface(x, y, z)? {
            Ok(Self::from_raw_unchecked(x.modulus, x.value, y.value, z.value))
        } else {
            Err(Error::NotOnSurface { p: x.modulus, x: x.value, y: y.value, z: z.value })
        }
    }

    /// Reduces the coordinates and checks membership.
    pub fn from_residues(field: &PrimeField, x: u64, y: u64, z: u64) -> Result<Self> {
        Self::new(field.elem(x), field.elem(y), field.elem(z))
    }

    pub(crate) fn from_raw_unchecked(p: u64, x: u64, y: u64, z: u64) -> Self {
        debug_assert!(on_surface_raw(x, y, z, p));
        MarkoffTriple { p: p as u32, x: x as u32, y: y as u32, z: z as u32 }
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn coords(&self) -> [u64; 3] {
        [self.x as u64, self.y as u64, self.z as u64]
    }

    pub fn x(&self) -> FieldElement {
        FieldElement { value: self.x as u64, modulus: self.p() }
    }

    pub fn y(&self) -> FieldElement {
        FieldElement { value: self.y as u64, modulus: self.p() }
    }

    pub fn z(&self) -> FieldElement {
        FieldElement { value: self.z as u64, modulus: self.p() }
    }

    pub fn has_zero_coord(&self) -> bool {
        self.x == 0 || self.y == 0 || self.z == 0
    }

    /// `(x*p + y)*p + z`; ordering by key is lexicographic in `(x, y, z)`.
    pub fn packed_key(&self) -> u64 {
        pack(self.p(), self.x as u64, self.y as u64, self.z as u64)
    }

    pub fn from_packed_key(p: u64, key: u64) -> Self {
        let z = key % p;
        let y = (key / p) % p;
        let x = key / (p * p);
        Self::from_raw_unchecked(p, x, y, z)
    }

    pub fn apply(&self, m: Move) -> MarkoffTriple {
        let [x, y, z] = apply_raw(m, self.coords(), self.p());
        Self::from_raw_unchecked(self.p(), x, y, z)
    }

    /// Images under the nine generators `R1, R2, R3` and `S_3`, deduplicated
    /// and sorted, with the triple itself removed.
    pub fn neighbors(&self) -> Vec<MarkoffTriple> {
        let mut out: Vec<MarkoffTriple> =
            Move::GENERATORS.iter().map(|&m| self.apply(m)).filter(|t| t != self).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[inline]
pub(crate) fn pack(p: u64, x: u64, y: u64, z: u64) -> u64 {
    (x * p + y) * p + z
}

/// A permutation of the three coordinates: `(t[s0], t[s1], t[s2])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm(pub [u8; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2]);
    /// `(x, y, z) -> (x, z, y)`.
    pub const SWAP_YZ: Perm = Perm([0, 2, 1]);

    pub const ALL: [Perm; 6] =
        [Perm([0, 1, 2]), Perm([0, 2, 1]), Perm([1, 0, 2]), Perm([1, 2, 0]), Perm([2, 0, 1]), Perm([2, 1, 0])];

    pub fn apply<T: Copy>(&self, t: [T; 3]) -> [T; 3] {
        [t[self.0[0] as usize], t[self.0[1] as usize], t[self.0[2] as usize]]
    }

    /// `self` after `other`: `compose(a, b).apply(t) == a.apply(b.apply(t))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let idx = self.apply(other.0);
        Perm(idx)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = [0u8; 3];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s as usize] = i as u8;
        }
        Perm(inv)
    }
}

/// A move on the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// `(x, y, z) -> (3yz - x, y, z)`
    R1,
    /// `(x, y, z) -> (x, 3xz - y, z)`
    R2,
    /// `(x, y, z) -> (x, y, 3xy - z)`
    R3,
    Perm(Perm),
    /// `(x, y, z) -> (x, z, 3xz - y)`, the swap of `y, z` after `R2`.
    T0,
}

impl Move {
    pub const GENERATORS: [Move; 9] = [
        Move::R1,
        Move::R2,
        Move::R3,
        Move::Perm(Perm::ALL[0]),
        Move::Perm(Perm::ALL[1]),
        Move::Perm(Perm::ALL[2]),
        Move::Perm(Perm::ALL[3]),
        Move::Perm(Perm::ALL[4]),
        Move::Perm(Perm::ALL[5]),
    ];

    /// `R1` and two transpositions generate the same group as [`Move::GENERATORS`],
    /// hence the same components.
    pub const SPANNING: [Move; 3] = [Move::R1, Move::Perm(Perm::SWAP_YZ), Move::Perm(Perm([1, 0, 2]))];
}

#[inline]
fn vieta(a: u64, b: u64, c: u64, p: u64) -> u64 {
    // a, b, c < p < 2^32, so nothing below overflows
    let t = 3 * (a * b % p) % p;
    if t >= c {
        t - c
    } else {
        t + p - c
    }
}

#[inline]
pub(crate) fn apply_raw(m: Move, [x, y, z]: [u64; 3], p: u64) -> [u64; 3] {
    match m {
        Move::R1 => [vieta(y, z, x, p), y, z],
        Move::R2 => [x, vieta(x, z, y, p), z],
        Move::R3 => [x, y, vieta(x, y, z, p)],
        Move::Perm(s) => s.apply([x, y, z]),
        Move::T0 => [x, z, vieta(x, z, y, p)],
    }
}

/// Which solutions to keep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceOptions {
    /// Drop every triple with a zero coordinate (stricter reading of `M_p`).
    pub exclude_zero_coords: bool,
}

impl SurfaceOptions {
    #[inline]
    pub(crate) fn keeps(&self, x: u64, y: u64, z: u64) -> bool {
        !self.exclude_zero_coords || (x != 0 && y != 0 && z != 0)
    }
}

/// All of `M_p`, sorted by packed key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceEnumeration {
    pub p: u64,
    pub triples: Vec<MarkoffTriple>,
    pub count: usize,
}

/// Compact node table: nodes are numbered in packed-key order and grouped by
/// the `(x, y)` pair, which carries at most two `z` values.
#[derive(Debug, Clone)]
pub struct Surface {
    p: u64,
    options: SurfaceOptions,
    /// `offsets[x*p + y] .. offsets[x*p + y + 1]` index into `zs`.
    offsets: Vec<u32>,
    zs: Vec<u32>,
}

fn sqrt_table(p: u64) -> Vec<i64> {
    let mut table = vec![-1i64; p as usize];
    for r in 0..=p / 2 {
        table[mul_mod(r, r, p) as usize] = r as i64;
    }
    table
}

fn check_enumerable(p: u64) -> Result<PrimeField> {
    let field = PrimeField::including_three(p)?;
    if p > MAX_PACKED_PRIME {
        return Err(Error::ModulusTooLarge(p));
    }
    Ok(field)
}

impl Surface {
    /// Enumerate `M_p` in `O(p^2)`: for each `(x, y)` solve
    /// `z^2 - 3xy z + (x^2 + y^2) = 0` through its discriminant.
    pub fn build(p: u64, options: SurfaceOptions) -> Result<Self> {
        check_enumerable(p)?;
        let sq = sqrt_table(p);
        let inv2 = p.div_ceil(2);
        let three = 3 % p;
        let per_x: Vec<(Vec<u32>, Vec<u32>)> = (0..p)
            .into_par_iter()
            .map(|x| {
                let mut counts = Vec::with_capacity(p as usize);
                let mut zs = Vec::new();
                // p < 2^21 keeps every product below 2^64
                let xx = x * x % p;
                for y in 0..p {
                    let before = zs.len();
                    if x != 0 || y != 0 {
                        let b = three * (x * y % p) % p;
                        let c = (xx + y * y) % p;
                        let disc = (b * b + 4 * (p - c)) % p;
                        let r = sq[disc as usize];
                        if r >= 0 {
                            let r = r as u64;
                            let z1 = (b + p - r) * inv2 % p;
                            let z2 = (b + r) * inv2 % p;
                            let (lo, hi) = (z1.min(z2), z1.max(z2));
                            if options.keeps(x, y, lo) {
                                zs.push(lo as u32);
                            }
                            if hi != lo && options.keeps(x, y, hi) {
                                zs.push(hi as u32);
                            }
                        }
                    }
                    counts.push((zs.len() - before) as u32);
                }
                (counts, zs)
            })
            .collect();
        let mut offsets = Vec::with_capacity((p * p + 1) as usize);
        let mut zs = Vec::new();
        offsets.push(0u32);
        for (counts, xz) in per_x {
            let mut acc = *offsets.last().unwrap();
            for c in counts {
                acc += c;
                offsets.push(acc);
            }
            zs.extend(xz);
        }
        Ok(Surface { p, options, offsets, zs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn options(&self) -> SurfaceOptions {
        self.options
    }

    pub fn len(&self) -> usize {
        self.zs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zs.is_empty()
    }

    /// Node id of `(x, y, z)`, or `None` when it is not a kept surface point.
    #[inline]
    pub fn index_of(&self, x: u64, y: u64, z: u64) -> Option<usize> {
        let pair = (x * self.p + y) as usize;
        let (lo, hi) = (self.offsets[pair] as usize, self.offsets[pair + 1] as usize);
        (lo..hi).find(|&i| self.zs[i] as u64 == z)
    }

    /// Coordinates of every node, in id order, produced by walking the pair table.
    pub fn iter_coords(&self) -> impl Iterator<Item = (usize, [u64; 3])> + '_ {
        let p = self.p;
        (0..(p * p) as usize).flat_map(move |pair| {
            let (lo, hi) = (self.offsets[pair] as usize, self.offsets[pair + 1] as usize);
            let (x, y) = (pair as u64 / p, pair as u64 % p);
            (lo..hi).map(move |i| (i, [x, y, self.zs[i] as u64]))
        })
    }

    pub fn coords_of(&self, id: usize) -> [u64; 3] {
        // first pair whose end offset exceeds id
        let pair = self.offsets.partition_point(|&o| o as usize <= id) - 1;
        let p = self.p;
        [pair as u64 / p, pair as u64 % p, self.zs[id] as u64]
    }

    pub fn triple(&self, id: usize) -> MarkoffTriple {
        let [x, y, z] = self.coords_of(id);
        MarkoffTriple::from_raw_unchecked(self.p, x, y, z)
    }

    pub fn contains(&self, t: &MarkoffTriple) -> bool {
        let [x, y, z] = t.coords();
        t.p() == self.p && self.index_of(x, y, z).is_some()
    }

    /// Node ids of the distinct generator images of `id`, excluding itself and
    /// images dropped by the surface options.
    pub fn neighbor_ids(&self, id: usize, coords: [u64; 3], out: &mut Vec<usize>) {
        out.clear();
        for m in Move::GENERATORS {
            let [a, b, c] = apply_raw(m, coords, self.p);
            if let Some(j) = self.index_of(a, b, c) {
                if j != id && !out.contains(&j) {
                    out.push(j);
                }
            }
        }
    }

    pub fn to_enumeration(&self) -> SurfaceEnumeration {
        let triples: Vec<MarkoffTriple> =
            self.iter_coords().map(|(_, [x, y, z])| MarkoffTriple::from_raw_unchecked(self.p, x, y, z)).collect();
        SurfaceEnumeration { p: self.p, count: triples.len(), triples }
    }
}

/// `M_p` as a sorted list.
pub fn enumerate_surface(p: u64) -> Result<SurfaceEnumeration> {
    enumerate_surface_with(p, SurfaceOptions::default())
}

pub fn enumerate_surface_with(p: u64, options: SurfaceOptions) -> Result<SurfaceEnumeration> {
    Ok(Surface::build(p, options)?.to_enumeration())
}
