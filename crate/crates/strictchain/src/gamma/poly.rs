//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{int, Rational};

/// Exponent vector; trailing zeros are always trimmed so equal monomials compare equal.
pub type Exponents = Vec<u32>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

/// A polynomial in variables `x_0, x_1, …`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(e: Exponents, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(&trim(e.to_vec())).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if let Some(&k) = e.get(i) {
                if k > 0 {
                    let mut e2 = e.clone();
                    e2[i] -= 1;
                    out.add_term(e2, c * int(k as i64));
                }
            }
        }
        out
    }

    /// Highest index of a variable that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|e| e.len().checked_sub(1)).max()
    }

    pub fn term_degree(e: &[u32], weight: impl Fn(usize) -> usize) -> usize {
        e.iter().enumerate().map(|(i, &k)| k as usize * weight(i)).sum()
    }

    /// Weighted degree; `None` for the zero polynomial.
    pub fn degree(&self, weight: impl Fn(usize) -> usize + Copy) -> Option<usize> {
        self.terms.keys().map(|e| Self::term_degree(e, weight)).max()
    }

    /// Terms of weighted degree exactly `d`.
    pub fn homogeneous_part(&self, d: usize, weight: impl Fn(usize) -> usize + Copy) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::term_degree(e, weight) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, values: impl Fn(usize) -> Rational) -> Rational {
        let mut cache: Vec<Rational> = Vec::new();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache.len() <= i {
                    cache.push(values(cache.len()));
                }
                t *= num_traits::pow(cache[i].clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    /// Replaces each variable `x_i` by the polynomial `images(i)`.
    pub fn substitute(&self, images: impl Fn(usize) -> MPoly) -> MPoly {
        let mut cache: Vec<MPoly> = Vec::new();
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache.len() <= i {
                    cache.push(images(cache.len()));
                }
                t = &t * &cache[i].pow(k);
            }
            out = &out + &t;
        }
        out
    }

    /// Renames monomials; terms mapping to the same monomial are added.
    pub fn map_monomials(&self, f: impl Fn(&Exponents) -> Exponents) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e: Exponents =
                    (0..n).map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0)).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// Arithmetic and conversions for newtypes wrapping [`MPoly`].
macro_rules! mpoly_newtype {
    ($name:ident) => {
        impl $name {
            pub fn from_mpoly(p: $crate::gamma::poly::MPoly) -> Self {
                $name(p)
            }

            pub fn as_mpoly(&self) -> &$crate::gamma::poly::MPoly {
                &self.0
            }

            pub fn zero() -> Self {
                $name($crate::gamma::poly::MPoly::zero())
            }

            pub fn one() -> Self {
                $name($crate::gamma::poly::MPoly::one())
            }

            pub fn constant(c: $crate::rational::Rational) -> Self {
                $name($crate::gamma::poly::MPoly::constant(c))
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn scale(&self, c: &$crate::rational::Rational) -> Self {
                $name(self.0.scale(c))
            }

            pub fn pow(&self, k: u32) -> Self {
                $name(self.0.pow(k))
            }

            /// Weighted degree; `None` for zero.
            pub fn degree(&self) -> Option<usize> {
                self.0.degree(Self::generator_degree)
            }

            /// `true` when the degree is at most `bound`; the zero polynomial passes every bound.
            pub fn degree_at_most(&self, bound: i64) -> bool {
                self.degree().map_or(true, |d| d as i64 <= bound)
            }

            pub fn homogeneous_part(&self, d: usize) -> Self {
                $name(self.0.homogeneous_part(d, Self::generator_degree))
            }

            /// The top-degree homogeneous component.
            pub fn leading_part(&self) -> Self {
                match self.degree() {
                    Some(d) => self.homogeneous_part(d),
                    None => Self::zero(),
                }
            }
        }

        impl std::ops::Add for &$name {
            type Output = $name;
            fn add(self, o: &$name) -> $name {
                $name(&self.0 + &o.0)
            }
        }

        impl std::ops::Sub for &$name {
            type Output = $name;
            fn sub(self, o: &$name) -> $name {
                $name(&self.0 - &o.0)
            }
        }

        impl std::ops::Mul for &$name {
            type Output = $name;
            fn mul(self, o: &$name) -> $name {
                $name(&self.0 * &o.0)
            }
        }

        impl std::ops::Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(-&self.0)
            }
        }
    };
}

pub(crate) use mpoly_newtype;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn ring_operations() {
        let x = MPoly::var(0);
        let y = MPoly::var(2);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert!((&p - &p).is_zero());
        assert_eq!(p.coeff(&[2]), int(1));
        assert_eq!(p.coeff(&[0, 0, 2]), int(-1));
        assert_eq!(p.derivative(2), y.scale(&int(-2)));
        assert_eq!(p.degree(|i| 2 * i + 1), Some(10));
        assert_eq!(p.homogeneous_part(2, |i| 2 * i + 1), x.pow(2));
        assert_eq!(p.eval(|i| int(i as i64 + 1)), int(1 - 9));
        let sub = p.substitute(|i| if i == 0 { MPoly::constant(ratio(1, 2)) } else { MPoly::var(i) });
        assert_eq!(sub, &MPoly::constant(ratio(1, 4)) - &y.pow(2));
        assert_eq!(MPoly::monomial(vec![1, 0, 0], int(3)), MPoly::monomial(vec![1], int(3)));
    }
}
