//! Arithmetic in `F_p` and `F_{p^2}`, square roots, integer factorization and
//! multiplicative orders.
//!
//! `F_{p^2}` is modelled as `F_p[w]/(w^2 - e)` where `e` is the least positive
//! quadratic non-residue mod `p`, so every run picks the same representation.
//!
//! Moduli are limited to `p < 2^32`, which keeps `p^2 - 1` inside a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest modulus accepted by [`PrimeField::new`].
pub const MIN_PRIME: u64 = 5;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes in `[lo, hi]`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
    /// The factored integer.
    pub product: u64,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(q, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= q;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Brent's variant of Pollard rho with a fixed starting point, so repeated
/// runs walk the same sequence. `n` must be odd and composite.
fn rho_split(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| add_mod(mul_mod(x, x, n), c, n);
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut g, mut x, mut ys) = (1u64, 0u64, 0u64);
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn collect_prime_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho_split(n);
    collect_prime_factors(d, out);
    collect_prime_factors(n / d, out);
}

/// Factor `n >= 1`: trial division up to `10^6`, then Pollard rho.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let mut big = Vec::new();
        collect_prime_factors(rest, &mut big);
        big.sort_unstable();
        for q in big {
            match factors.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => factors.push((q, 1)),
            }
        }
    }
    Factorization { factors, product: n }
}

/// Legendre symbol of `a` modulo an odd prime `p`: -1, 0 or 1.
pub fn legendre_raw(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| legendre_raw(a, p) == -1).expect("odd prime has a non-residue")
}

/// Tonelli-Shanks. Returns the root in `[0, p/2]`; `None` for non-residues.
pub fn sqrt_raw(a: u64, p: u64, nonresidue: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre_raw(a, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut m = s;
    let mut c = pow_mod(nonresidue, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Validated prime modulus with cached non-residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    nonresidue: u64,
}

impl PrimeField {
    /// Accepts primes `5 <= p < 2^32`.
    pub fn new(p: u64) -> Result<Self> {
        Self::with_min(p, MIN_PRIME)
    }

    /// Like [`PrimeField::new`] but also accepts `p = 3`, for the surface
    /// enumeration and connectivity code which handles it explicitly.
    pub fn including_three(p: u64) -> Result<Self> {
        Self::with_min(p, 3)
    }

    fn with_min(p: u64, min: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < min {
            return Err(Error::UnsupportedModulus(p, min));
        }
        if p >= 1 << 32 {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(PrimeField { p, nonresidue: least_nonresidue(p) })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The least positive quadratic non-residue, `e` in `w^2 = e`.
    #[inline]
    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    pub fn elem(&self, v: u64) -> FieldElement {
        FieldElement { value: v % self.p, modulus: self.p }
    }

    /// Reduce a signed integer.
    pub fn elem_i64(&self, v: i64) -> FieldElement {
        self.elem(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.p).map(|v| self.elem(v))
    }

    pub fn quad(&self) -> QuadField {
        QuadField { p: self.p, eps: self.nonresidue }
    }

    /// `p - 1` factored.
    pub fn base_group_order(&self) -> Factorization {
        factorize(self.p - 1)
    }

    /// `p^2 - 1` factored, from the factorizations of `p - 1` and `p + 1`.
    pub fn ext_group_order(&self) -> Factorization {
        let a = factorize(self.p - 1);
        let b = factorize(self.p + 1);
        let mut merged: Vec<(u64, u32)> = a.factors;
        for (q, e) in b.factors {
            match merged.iter_mut().find(|(r, _)| *r == q) {
                Some((_, f)) => *f += e,
                None => merged.push((q, e)),
            }
        }
        merged.sort_unstable();
        Factorization { factors: merged, product: self.p * self.p - 1 }
    }

    /// Least primitive root mod `p`.
    pub fn primitive_root(&self) -> FieldElement {
        let fact = self.base_group_order();
        (2..self.p)
            .map(|g| self.elem(g))
            .find(|g| fact.primes().all(|q| g.pow((self.p - 1) / q).value != 1))
            .expect("cyclic group has a generator")
    }
}

/// A residue modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    pub value: u64,
    pub modulus: u64,
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    #[inline]
    fn check(&self, other: &FieldElement) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }

    pub fn same_modulus(&self, other: &FieldElement) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement { value: pow_mod(self.value, e, self.modulus), modulus: self.modulus }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.modulus - 2))
    }

    pub fn legendre(&self) -> i8 {
        legendre_raw(self.value, self.modulus)
    }

    /// Both square roots `{r, p - r}` with `r <= p - r`; `{0, 0}` for zero.
    pub fn sqrt(&self) -> Result<(FieldElement, FieldElement)> {
        let p = self.modulus;
        let r = sqrt_raw(self.value, p, least_nonresidue(p)).ok_or(Error::NonResidue(self.value, p))?;
        let e = |v| FieldElement { value: v, modulus: p };
        Ok((e(r), e((p - r) % p)))
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        FieldElement { value: add_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        FieldElement { value: sub_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        FieldElement { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        FieldElement { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

/// Context for `F_{p^2} = F_p[w]/(w^2 - eps)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadField {
    p: u64,
    eps: u64,
}

impl QuadField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn eps(&self) -> u64 {
        self.eps
    }

    pub fn elem(&self, a: u64, b: u64) -> QuadExtElement {
        QuadExtElement { a: a % self.p, b: b % self.p, p: self.p, eps: self.eps }
    }

    pub fn embed(&self, x: FieldElement) -> QuadExtElement {
        assert_eq!(x.modulus, self.p, "mixed moduli");
        self.elem(x.value, 0)
    }

    pub fn zero(&self) -> QuadExtElement {
        self.elem(0, 0)
    }

    pub fn one(&self) -> QuadExtElement {
        self.elem(1, 0)
    }

    /// A square root of any base-field value; lands in `F_p` when `v` is a
    /// residue, otherwise in `F_p * w`.
    pub fn sqrt_of_base(&self, v: u64) -> QuadExtElement {
        let p = self.p;
        match sqrt_raw(v, p, self.eps) {
            Some(r) => self.elem(r, 0),
            None => {
                // v / eps is a residue when v is not
                let eps_inv = pow_mod(self.eps, p - 2, p);
                let r = sqrt_raw(mul_mod(v, eps_inv, p), p, self.eps).expect("v/eps is a square");
                self.elem(0, r)
            }
        }
    }

    /// Deterministic generator of `F_{p^2}^*`: the first `a + b w` with
    /// `b >= 1` (scanning `b`, then `a`, upward) of order `p^2 - 1`.
    pub fn generator(&self) -> QuadExtElement {
        let fact = PrimeField { p: self.p, nonresidue: self.eps }.ext_group_order();
        let n = fact.product;
        for b in 1..self.p {
            for a in 0..self.p {
                let g = self.elem(a, b);
                if fact.primes().all(|q| !g.pow(n / q).is_one()) {
                    return g;
                }
            }
        }
        unreachable!("F_(p^2)^* is cyclic")
    }
}

/// An element `a + b w` of `F_{p^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadExtElement {
    pub a: u64,
    pub b: u64,
    pub p: u64,
    pub eps: u64,
}

impl fmt::Display for QuadExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

impl QuadExtElement {
    #[inline]
    fn check(&self, other: &QuadExtElement) {
        assert_eq!((self.p, self.eps), (other.p, other.eps), "mixed moduli");
    }

    fn with(&self, a: u64, b: u64) -> QuadExtElement {
        QuadExtElement { a, b, p: self.p, eps: self.eps }
    }

    /// The base-field value `a` in the same extension.
    pub fn with_base(&self, a: u64) -> QuadExtElement {
        self.with(a % self.p, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    /// True when the element lies in the base field.
    pub fn is_base(&self) -> bool {
        self.b == 0
    }

    pub fn to_base(&self) -> Option<FieldElement> {
        self.is_base().then_some(FieldElement { value: self.a, modulus: self.p })
    }

    pub fn conj(&self) -> QuadExtElement {
        self.with(self.a, (self.p - self.b) % self.p)
    }

    /// `a^2 - eps b^2`, the product with the conjugate.
    pub fn norm(&self) -> FieldElement {
        let p = self.p;
        let v = sub_mod(mul_mod(self.a, self.a, p), mul_mod(self.eps, mul_mod(self.b, self.b, p), p), p);
        FieldElement { value: v, modulus: p }
    }

    pub fn scale(&self, k: u64) -> QuadExtElement {
        self.with(mul_mod(self.a, k, self.p), mul_mod(self.b, k, self.p))
    }

    pub fn square(&self) -> QuadExtElement {
        *self * *self
    }

    pub fn pow(&self, mut e: u64) -> QuadExtElement {
        let mut acc = self.with(1, 0);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<QuadExtElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n_inv = self.norm().inv()?;
        Ok(self.conj().scale(n_inv.value))
    }
}

impl Add for QuadExtElement {
    type Output = QuadExtElement;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        self.with((self.a + rhs.a) % self.p, (self.b + rhs.b) % self.p)
    }
}

impl Sub for QuadExtElement {
    type Output = QuadExtElement;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        self.with(sub_mod(self.a, rhs.a, self.p), sub_mod(self.b, rhs.b, self.p))
    }
}

impl Mul for QuadExtElement {
    type Output = QuadExtElement;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.p;
        // (a + bw)(c + dw) = (ac + bd eps) + (ad + bc) w; p < 2^32 keeps each product in a u64
        let ac = self.a * rhs.a % p;
        let bd = self.b * rhs.b % p * self.eps % p;
        let ad = self.a * rhs.b % p;
        let bc = self.b * rhs.a % p;
        self.with((ac + bd) % p, (ad + bc) % p)
    }
}

impl Neg for QuadExtElement {
    type Output = QuadExtElement;
    fn neg(self) -> Self {
        self.with((self.p - self.a) % self.p, (self.p - self.b) % self.p)
    }
}

/// Elements of a finite multiplicative group, for order computations.
pub trait GroupElement: Copy {
    fn is_identity(&self) -> bool;
    fn is_zero_elem(&self) -> bool;
    fn power(&self, e: u64) -> Self;
}

impl GroupElement for FieldElement {
    fn is_identity(&self) -> bool {
        self.value == 1
    }
    fn is_zero_elem(&self) -> bool {
        self.value == 0
    }
    fn power(&self, e: u64) -> Self {
        self.pow(e)
    }
}

impl GroupElement for QuadExtElement {
    fn is_identity(&self) -> bool {
        self.is_one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn power(&self, e: u64) -> Self {
        self.pow(e)
    }
}

/// Multiplicative order of `x`, given the factorization of a multiple of it.
/// Divides out prime factors one at a time; never scans.
pub fn element_order<E: GroupElement>(x: &E, group_order: &Factorization) -> Result<u64> {
    if x.is_zero_elem() {
        return Err(Error::ZeroOrder);
    }
    let mut t = group_order.product;
    debug_assert!(x.power(t).is_identity(), "group order is not a multiple of ord(x)");
    for &(q, _) in &group_order.factors {
        while t.is_multiple_of(q) && x.power(t / q).is_identity() {
            t /= q;
        }
    }
    Ok(t)
}

/// Which cyclic group a subgroup lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// `F_p^*`, order `p - 1`.
    Base,
    /// `F_{p^2}^*`, order `p^2 - 1`.
    Extension,
}

/// The unique subgroup of a given order in `F_p^*` or `F_{p^2}^*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub order: u64,
    pub ambient: Ambient,
    pub generator: QuadExtElement,
    /// `generator^0, ..., generator^(order-1)`.
    pub elements: Vec<QuadExtElement>,
}

impl SubgroupSpec {
    pub fn contains(&self, x: &QuadExtElement) -> bool {
        !x.is_zero() && x.pow(self.order).is_one()
    }

    /// Element values as base-field residues, when the subgroup lies in `F_p^*`.
    pub fn base_values(&self) -> Option<Vec<u64>> {
        self.elements.iter().map(|e| e.is_base().then_some(e.a)).collect()
    }
}

/// Build the subgroup of order `t` as `h^(N/t)` for the canonical generator `h`
/// of the ambient group of order `N`.
pub fn subgroup_of_order(t: u64, ambient: Ambient, field: &PrimeField) -> Result<SubgroupSpec> {
    let qf = field.quad();
    let p = field.p();
    let n = match ambient {
        Ambient::Base => p - 1,
        Ambient::Extension => p * p - 1,
    };
    if t == 0 || n % t != 0 {
        return Err(Error::NotADivisor { order: t, ambient: n });
    }
    let h = match ambient {
        Ambient::Base => qf.embed(field.primitive_root()),
        Ambient::Extension => qf.generator(),
    };
    let generator = h.pow(n / t);
    let mut elements = Vec::with_capacity(t as usize);
    let mut cur = qf.one();
    for _ in 0..t {
        elements.push(cur);
        cur = cur * generator;
    }
    Ok(SubgroupSpec { order: t, ambient, generator, elements })
}
