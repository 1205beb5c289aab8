use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::numtheory::{gcd, lcm};
use super::poly::cyclotomic_poly;
use super::{format_rational, Rational};

/// An element `sum_j coeffs[j] * zeta_n^j` of the `n`-th cyclotomic field.
///
/// The coefficient map is not canonical (the `zeta_n^j` are linearly
/// dependent), so equality goes through reduction modulo `Phi_n`.
#[derive(Clone, Debug)]
pub struct CycloValue {
    order: u64,
    coeffs: BTreeMap<u64, Rational>,
}

impl CycloValue {
    /// Builds a value of the given order; exponents are reduced mod `order`.
    pub fn new(order: u64, coeffs: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        for (j, c) in coeffs {
            *map.entry(j % order).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        CycloValue { order, coeffs: map }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(1, [(0, q)])
    }

    pub fn zero() -> Self {
        Self::new(1, [])
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// `zeta_n^j`.
    pub fn root(order: u64, exponent: u64) -> Self {
        Self::new(order, [(exponent, Rational::one())])
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, Rational> {
        &self.coeffs
    }

    /// Re-expresses the value at order `m`, a multiple of the current order.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "order {} does not divide {m}", self.order);
        let s = m / self.order;
        Self::new(m, self.coeffs.iter().map(|(j, c)| (j * s, c.clone())))
    }

    /// Complex conjugation, `j -> -j mod n`.
    pub fn conj(&self) -> Self {
        self.twist(self.order - 1)
    }

    /// The Galois automorphism `zeta_n -> zeta_n^a`; `a` must be a unit mod n.
    pub fn twist(&self, a: u64) -> Self {
        assert_eq!(gcd(a % self.order, self.order), 1, "twist by non-unit {a}");
        let n = self.order;
        Self::new(n, self.coeffs.iter().map(|(j, c)| (j * (a % n) % n, c.clone())))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|(j, c)| (*j, c * q)))
    }

    /// Coordinates in the power basis `1, zeta, ..., zeta^(phi(n)-1)`,
    /// obtained by reducing modulo `Phi_n`.
    pub fn reduced(&self) -> Vec<Rational> {
        let phi = cyclotomic_poly(self.order);
        let deg = phi.degree().unwrap();
        let n = self.order as usize;
        let mut poly = vec![Rational::zero(); n.max(deg)];
        for (j, c) in &self.coeffs {
            poly[*j as usize] += c;
        }
        let phi: Vec<Rational> = phi
            .coeffs()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        for top in (deg..poly.len()).rev() {
            if poly[top].is_zero() {
                continue;
            }
            let lead = poly[top].clone();
            for (i, p) in phi.iter().enumerate() {
                poly[top - deg + i] -= &lead * p;
            }
        }
        poly.truncate(deg);
        poly
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(Zero::is_zero)
    }

    /// The rational number this value equals, or `None` if it is irrational.
    pub fn rational_part(&self) -> Option<Rational> {
        let r = self.reduced();
        if r[1..].iter().all(Zero::is_zero) {
            Some(r[0].clone())
        } else {
            None
        }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.order, other.order);
        (self.lift(m), other.lift(m))
    }
}

/// Free-function form of [`CycloValue::rational_part`].
pub fn cyclo_rational_part(v: &CycloValue) -> Option<Rational> {
    v.rational_part()
}

impl PartialEq for CycloValue {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Add for &CycloValue {
    type Output = CycloValue;
    fn add(self, rhs: &CycloValue) -> CycloValue {
        let (a, b) = self.common(rhs);
        CycloValue::new(a.order, a.coeffs.into_iter().chain(b.coeffs))
    }
}

impl Neg for &CycloValue {
    type Output = CycloValue;
    fn neg(self) -> CycloValue {
        CycloValue::new(self.order, self.coeffs.iter().map(|(j, c)| (*j, -c)))
    }
}

impl Sub for &CycloValue {
    type Output = CycloValue;
    fn sub(self, rhs: &CycloValue) -> CycloValue {
        self + &(-rhs)
    }
}

impl Mul for &CycloValue {
    type Output = CycloValue;
    fn mul(self, rhs: &CycloValue) -> CycloValue {
        let (a, b) = self.common(rhs);
        let n = a.order;
        let mut terms = Vec::with_capacity(a.coeffs.len() * b.coeffs.len());
        for (i, x) in &a.coeffs {
            for (j, y) in &b.coeffs {
                terms.push(((i + j) % n, x * y));
            }
        }
        CycloValue::new(n, terms)
    }
}

impl fmt::Display for CycloValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.rational_part() {
            return write!(f, "{}", format_rational(&q));
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(j, c)| format!("{}*z{}^{}", format_rational(c), self.order, j))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
