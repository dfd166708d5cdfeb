//! Sparse bivariate and dense univariate polynomials over `F_{p^2}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{PrimeField, QuadExtElement, QuadField};

/// `sum a_ij X^i Y^j`, zero coefficients never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    quad: QuadField,
    terms: BTreeMap<(u32, u32), QuadExtElement>,
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mut s = format!("{c}");
                if i > 0 {
                    s += &format!("*X^{i}");
                }
                if j > 0 {
                    s += &format!("*Y^{j}");
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl BivariatePoly {
    pub fn new(quad: QuadField, terms: impl IntoIterator<Item = ((u32, u32), QuadExtElement)>) -> Self {
        let mut map: BTreeMap<(u32, u32), QuadExtElement> = BTreeMap::new();
        for (k, c) in terms {
            let e = map.entry(k).or_insert_with(|| quad.zero());
            *e = *e + c;
        }
        map.retain(|_, c| !c.is_zero());
        BivariatePoly { quad, terms: map }
    }

    /// Integer coefficients reduced mod `p`: `(i, j, a_ij)`.
    pub fn from_integers(field: &PrimeField, terms: &[(u32, u32, i64)]) -> Self {
        let q = field.quad();
        Self::new(q, terms.iter().map(|&(i, j, c)| ((i, j), q.embed(field.elem_i64(c)))))
    }

    pub fn quad(&self) -> &QuadField {
        &self.quad
    }

    pub fn p(&self) -> u64 {
        self.quad.p()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), QuadExtElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    /// `deg_X`.
    pub fn m(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// `deg_Y`.
    pub fn n(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    /// `min { i + j : a_ij != 0 }`.
    pub fn min_total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).min().unwrap_or(0)
    }

    pub fn has_base_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_base())
    }

    pub fn eval(&self, x: QuadExtElement, y: QuadExtElement) -> QuadExtElement {
        self.terms.iter().fold(self.quad.zero(), |acc, (&(i, j), &c)| acc + c * x.pow(i as u64) * y.pow(j as u64))
    }

    /// `P(lambda X, mu Y)`.
    pub fn scaled(&self, lambda: QuadExtElement, mu: QuadExtElement) -> BivariatePoly {
        Self::new(
            self.quad,
            self.terms.iter().map(|(&(i, j), &c)| ((i, j), c * lambda.pow(i as u64) * mu.pow(j as u64))),
        )
    }

    pub fn scale_coeffs(&self, gamma: QuadExtElement) -> BivariatePoly {
        Self::new(self.quad, self.terms.iter().map(|(&k, &c)| (k, c * gamma)))
    }

    pub fn partial_y(&self) -> BivariatePoly {
        Self::new(
            self.quad,
            self.terms.iter().filter(|(k, _)| k.1 > 0).map(|(&(i, j), &c)| ((i, j - 1), c.scale(j as u64))),
        )
    }

    /// `P(x, Y)` as a dense polynomial in `Y`.
    pub fn at_x(&self, x: QuadExtElement) -> UniPoly {
        let mut coeffs = vec![self.quad.zero(); self.n() as usize + 1];
        for (&(i, j), &c) in &self.terms {
            coeffs[j as usize] = coeffs[j as usize] + c * x.pow(i as u64);
        }
        UniPoly::new(coeffs)
    }

    /// `P(X, y)` as a dense polynomial in `X`.
    pub fn at_y(&self, y: QuadExtElement) -> UniPoly {
        let mut coeffs = vec![self.quad.zero(); self.m() as usize + 1];
        for (&(i, j), &c) in &self.terms {
            coeffs[i as usize] = coeffs[i as usize] + c * y.pow(j as u64);
        }
        UniPoly::new(coeffs)
    }

    /// Cheap necessary conditions for irreducibility: nonzero, not a monomial
    /// (other than `cX` or `cY`), not divisible by `X` or `Y`.
    pub fn check_plausibly_irreducible(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let reducible = |why: &str| Err(Error::InvalidArgument(format!("{self} is reducible: {why}")));
        if self.monomial_count() == 1 {
            let (&(i, j), _) = self.terms.iter().next().unwrap();
            if i + j != 1 {
                return reducible("monomial");
            }
            return Ok(());
        }
        if self.terms.keys().all(|k| k.0 > 0) {
            return reducible("divisible by X");
        }
        if self.terms.keys().all(|k| k.1 > 0) {
            return reducible("divisible by Y");
        }
        Ok(())
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<QuadExtElement>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<QuadExtElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<&QuadExtElement> {
        self.coeffs.get(k)
    }

    pub fn eval(&self, x: QuadExtElement) -> QuadExtElement {
        let mut acc = x.with_base(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + *c;
        }
        acc
    }

    fn rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let k = r.len() - 1;
            let q = r[k] * lead_inv;
            if !q.is_zero() {
                for (i, &c) in d.coeffs.iter().enumerate() {
                    r[k - dd + i] = r[k - dd + i] - q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Greatest common divisor (up to a unit); `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Roots among `candidates`; zero polynomial vanishes everywhere.
    pub fn roots_in<'a>(&'a self, candidates: &'a [QuadExtElement]) -> impl Iterator<Item = QuadExtElement> + 'a {
        candidates.iter().copied().filter(move |&c| self.eval(c).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_derivative() {
        let f = PrimeField::new(13).unwrap();
        let p = BivariatePoly::from_integers(&f, &[(2, 1, 1), (1, 2, -1), (1, 0, -3), (0, 1, 2)]);
        assert_eq!((p.m(), p.n(), p.total_degree(), p.min_total_degree()), (2, 2, 3, 1));
        let py = p.partial_y();
        let expect = BivariatePoly::from_integers(&f, &[(2, 0, 1), (1, 1, -2), (0, 0, 2)]);
        assert_eq!(py, expect);
        assert!(BivariatePoly::from_integers(&f, &[(1, 1, 13)]).is_zero());
    }

    #[test]
    fn gcd_finds_common_root() {
        let f = PrimeField::new(11).unwrap();
        let q = f.quad();
        let e = |v: i64| q.embed(f.elem_i64(v));
        // (y - 2)(y - 3) and (y - 2)(y + 1)
        let a = UniPoly::new(vec![e(6), e(-5), e(1)]);
        let b = UniPoly::new(vec![e(-2), e(-1), e(1)]);
        let g = a.gcd(&b);
        assert_eq!(g.degree(), Some(1));
        let all: Vec<QuadExtElement> = (0..11).map(|v| q.elem(v, 0)).collect();
        let roots: Vec<u64> = g.roots_in(&all).map(|r| r.a).collect();
        assert_eq!(roots, vec![2]);
    }

    #[test]
    fn irreducibility_screen() {
        let f = PrimeField::new(7).unwrap();
        assert!(BivariatePoly::from_integers(&f, &[(1, 1, 1), (0, 0, -1)]).check_plausibly_irreducible().is_ok());
        assert!(BivariatePoly::from_integers(&f, &[(2, 1, 1)]).check_plausibly_irreducible().is_err());
        assert!(BivariatePoly::from_integers(&f, &[(2, 1, 1), (1, 0, 1)]).check_plausibly_irreducible().is_err());
        assert_eq!(BivariatePoly::from_integers(&f, &[]).check_plausibly_irreducible(), Err(Error::ZeroPolynomial));
    }
}
