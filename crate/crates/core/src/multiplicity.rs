//! Multiplicities of irreducible characters in `M_k(Gamma_1)` and
//! `S_k(Gamma_1)`.
//!
//! For a cyclic `C <= G`, the `C`-invariants of `M_k(Gamma_1)` are
//! `M_k(Gamma_C)`, so `<Ind_C 1, rho_k> = dim M_k(Gamma_C)`. Writing a
//! rational character as `sum_C q_C Ind_C 1` turns its multiplicity into
//! `sum_C q_C dim M_k(Gamma_C)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{format_rational, lcm, solve_linear_exact_with_order, Rational};
use crate::characters::{rational_characters, CharacterTable, Parity, RationalCharacter};
use crate::dims::{dim, quasi_period, FormKind};
use crate::error::{Error, Result};
use crate::group::{CyclicSubgroup, QuotientGroup};
use crate::pair::QuotientPair;
use crate::signature::Signature;

/// `pi_C(g)` = number of cosets `xC` fixed by `g`, for each class representative.
pub fn permutation_character(g: &QuotientGroup, c: &CyclicSubgroup) -> Vec<i64> {
    let n = g.order();
    let mut in_c = vec![false; n];
    for &x in &c.elements {
        in_c[x] = true;
    }
    // one representative x per left coset xC
    let mut covered = vec![false; n];
    let mut coset_reps = Vec::with_capacity(n / c.elements.len());
    for x in 0..n {
        if covered[x] {
            continue;
        }
        coset_reps.push(x);
        for &y in &c.elements {
            covered[g.mul(x, y)] = true;
        }
    }
    g.classes()
        .iter()
        .map(|class| {
            coset_reps
                .iter()
                .filter(|&&x| in_c[g.mul(g.mul(g.inv(x), class.rep), x)])
                .count() as i64
        })
        .collect()
}

/// Coefficients `q_C` with `sum_C q_C pi_C = target`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArtinDecomposition {
    pub target: String,
    pub coeffs: Vec<Rational>,
}

impl ArtinDecomposition {
    /// Multiplicity at weight `k`, given the signatures of the `Gamma_C` in column order.
    pub fn evaluate(&self, sigs: &[Signature], k: i64, kind: FormKind) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (q, s) in self.coeffs.iter().zip(sigs) {
            if !q.is_zero() {
                acc += q * Rational::from_integer(BigInt::from(dim(s, k, kind)?));
            }
        }
        Ok(acc)
    }

    /// Lcm of the quasi-periods of the subgroups with nonzero coefficient.
    pub fn period(&self, sigs: &[Signature]) -> u64 {
        self.coeffs
            .iter()
            .zip(sigs)
            .filter(|(q, _)| !q.is_zero())
            .fold(12, |acc, (_, s)| lcm(acc, quasi_period(s)))
    }
}

/// Solves the Artin system with pivot columns tried in `col_order`.
pub fn artin_decompose_with_order(
    target: &RationalCharacter,
    perm_chars: &[Vec<i64>],
    col_order: &[usize],
) -> Result<ArtinDecomposition> {
    let rows = target.values.len();
    let a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| perm_chars.iter().map(|p| Rational::from_integer(p[r].into())).collect())
        .collect();
    let coeffs = solve_linear_exact_with_order(&a, &target.values, col_order)?;
    Ok(ArtinDecomposition { target: target.label(), coeffs })
}

pub fn artin_decompose(target: &RationalCharacter, pair: &QuotientPair) -> Result<ArtinDecomposition> {
    let order: Vec<usize> = (0..pair.subgroups().len()).collect();
    artin_decompose_with_order(target, pair.permutation_characters(), &order)
}

/// Weights over which a representation can occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ParityClass {
    Even,
    Odd,
    All,
}

impl ParityClass {
    pub fn contains(self, k: i64) -> bool {
        match self {
            ParityClass::All => true,
            ParityClass::Even => k % 2 == 0,
            ParityClass::Odd => k % 2 != 0,
        }
    }

    /// No `-I` in `Gamma`: all weights. `-I` in `Gamma_1`: even weights.
    /// Otherwise the parity of the representation.
    pub fn of(g: &QuotientGroup, parity: Parity) -> Self {
        match (g.iota(), parity) {
            (None, _) => ParityClass::All,
            (Some(_), _) if g.iota_trivial() => ParityClass::Even,
            (Some(_), Parity::Odd) => ParityClass::Odd,
            (Some(_), _) => ParityClass::Even,
        }
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `k -> <rep, rho_k>` (kind M) or `<rep, sigma_k>` (kind S).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicitySeries {
    pub rep: String,
    pub kind: FormKind,
    pub parity_class: ParityClass,
    /// Number of irreducible characters this series counts together.
    pub members: usize,
    /// Degree of each of those characters.
    pub degree_each: u64,
    pub entries: BTreeMap<i64, u64>,
}

impl MultiplicitySeries {
    /// `members * degree_each`; the multiplicity grows like `c` times this.
    pub fn aggregate_degree(&self) -> u64 {
        self.members as u64 * self.degree_each
    }

    pub fn get(&self, k: i64) -> Option<u64> {
        self.entries.get(&k).copied()
    }

    /// Weights outside the parity class with nonzero multiplicity.
    pub fn parity_violations(&self) -> Vec<i64> {
        self.entries
            .iter()
            .filter(|&(&k, &v)| !self.parity_class.contains(k) && v != 0)
            .map(|(&k, _)| k)
            .collect()
    }

    /// Splits an orbit total equally among its members; every entry must divide exactly.
    pub fn split(&self, names: &[String]) -> Result<Vec<MultiplicitySeries>> {
        assert_eq!(names.len(), self.members, "one name per orbit member");
        let size = self.members as u64;
        let mut each = BTreeMap::new();
        for (&k, &total) in &self.entries {
            if total % size != 0 {
                return Err(Error::IndivisibleOrbitTotal {
                    rep: self.rep.clone(),
                    k,
                    total,
                    size: self.members,
                });
            }
            each.insert(k, total / size);
        }
        Ok(names
            .iter()
            .map(|name| MultiplicitySeries {
                rep: name.clone(),
                members: 1,
                entries: each.clone(),
                ..self.clone()
            })
            .collect())
    }
}

/// A pair with a validated character table and the Artin decomposition of
/// every rational character.
#[derive(Clone, Debug)]
pub struct MultiplicityEngine {
    pub pair: QuotientPair,
    pub table: CharacterTable,
    pub rational: Vec<RationalCharacter>,
    pub decompositions: Vec<ArtinDecomposition>,
}

impl MultiplicityEngine {
    pub fn new(pair: QuotientPair, table: CharacterTable) -> Result<Self> {
        let rational = rational_characters(&table)?;
        let decompositions = rational
            .iter()
            .map(|r| artin_decompose(r, &pair))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiplicityEngine { pair, table, rational, decompositions })
    }

    /// Uses the pair's built-in table.
    pub fn with_builtin_table(pair: QuotientPair) -> Result<Self> {
        let table = pair.builtin_table()?;
        Self::new(pair, table)
    }

    pub fn parity_class(&self, orbit: usize) -> ParityClass {
        ParityClass::of(self.pair.group(), self.rational[orbit].parity)
    }

    /// Index of the orbit containing the named character, or whose label matches.
    pub fn find_orbit(&self, name: &str) -> Result<usize> {
        self.rational
            .iter()
            .position(|r| r.label() == name || r.orbit.iter().any(|m| m == name))
            .ok_or_else(|| Error::UnknownRepresentation(name.to_string()))
    }

    /// Orbit-total multiplicity at one weight.
    pub fn orbit_multiplicity(&self, orbit: usize, k: i64, kind: FormKind) -> Result<u64> {
        if k == 1 {
            return Err(Error::WeightOneUnsupported);
        }
        let q = self.decompositions[orbit].evaluate(self.pair.subgroup_signatures(), k, kind)?;
        let rep = &self.rational[orbit];
        if !q.is_integer() || q < Rational::zero() {
            return Err(Error::NonIntegralMultiplicity { rep: rep.label(), k, value: format_rational(&q) });
        }
        q.to_integer().to_u64().ok_or(Error::Overflow)
    }

    /// Orbit totals over `weights`.
    pub fn orbit_series(&self, orbit: usize, kind: FormKind, weights: &[i64]) -> Result<MultiplicitySeries> {
        if weights.contains(&1) {
            return Err(Error::WeightOneUnsupported);
        }
        let rep = &self.rational[orbit];
        let entries = weights
            .iter()
            .map(|&k| Ok((k, self.orbit_multiplicity(orbit, k, kind)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(MultiplicitySeries {
            rep: rep.label(),
            kind,
            parity_class: self.parity_class(orbit),
            members: rep.size(),
            degree_each: rep.orbit_degree_each,
            entries,
        })
    }

    /// Series for every orbit; with `split`, one series per irreducible
    /// character instead (orbit totals divided exactly by orbit size).
    pub fn all_series(&self, kind: FormKind, weights: &[i64], split: bool) -> Result<Vec<MultiplicitySeries>> {
        let mut out = Vec::new();
        for (i, rep) in self.rational.iter().enumerate() {
            let total = self.orbit_series(i, kind, weights)?;
            if split && rep.size() > 1 {
                out.extend(total.split(&rep.orbit)?);
            } else {
                out.push(total);
            }
        }
        Ok(out)
    }

    /// Quasi-period of an orbit's series.
    pub fn period(&self, orbit: usize) -> u64 {
        self.decompositions[orbit].period(self.pair.subgroup_signatures())
    }
}
