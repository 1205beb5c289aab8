//! Character tables of the quotient group and their rational (Galois-orbit)
//! sums.

mod abelian;
mod file;
mod rational;

pub use abelian::abelian_character_table;
pub use file::{builtin_s3_table, load_character_table, parse_character_table, TableFile};
pub use rational::{rational_characters, RationalCharacter};

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{format_rational, Rational, CycloValue};
use crate::error::{Error, Result};
use crate::group::QuotientGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    BuiltinAbelian,
    BuiltinS3,
    UserFile,
}

#[derive(Clone, Debug)]
pub struct Character {
    pub name: String,
    pub degree: u64,
    /// One value per conjugacy class, in the group's class order.
    pub values: Vec<CycloValue>,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group_order: usize,
    class_sizes: Vec<usize>,
    /// Class of the image of `-I`, if present in the ambient group.
    iota_class: Option<usize>,
    pub characters: Vec<Character>,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
    Unconstrained,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl CharacterTable {
    /// Builds and validates a table for `g`: row orthogonality, degrees
    /// matching values at the identity, and the degree-square sum.
    pub fn new(g: &QuotientGroup, characters: Vec<Character>, provenance: Provenance) -> Result<Self> {
        let table = CharacterTable {
            group_order: g.order(),
            class_sizes: g.classes().iter().map(|c| c.size).collect(),
            iota_class: g.iota().map(|i| g.class_of(i)),
            characters,
            provenance,
        };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        let nc = self.class_sizes.len();
        for ch in &self.characters {
            if ch.values.len() != nc {
                return Err(Error::Schema(format!(
                    "{} has {} values for {} classes",
                    ch.name,
                    ch.values.len(),
                    nc
                )));
            }
            if ch.values[0].rational_part() != Some(Rational::from_integer(ch.degree.into())) {
                return Err(Error::Schema(format!("{}: value at identity is not its degree", ch.name)));
            }
        }
        for (i, a) in self.characters.iter().enumerate() {
            for (j, b) in self.characters.iter().enumerate().skip(i) {
                let ip = self.inner_product(&a.values, &b.values)?;
                let want = if i == j { Rational::one() } else { Rational::zero() };
                if ip != want {
                    return Err(Error::OrthogonalityFailure(format!(
                        "<{}, {}> = {}",
                        a.name,
                        b.name,
                        format_rational(&ip)
                    )));
                }
            }
        }
        let sq: u64 = self.characters.iter().map(|c| c.degree * c.degree).sum();
        if sq != self.group_order as u64 {
            return Err(Error::Schema(format!(
                "degree squares sum to {sq}, group order is {}",
                self.group_order
            )));
        }
        for ch in &self.characters {
            self.character_parity(ch)?;
        }
        Ok(())
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// `(1/|G|) sum_c |c| a(c) conj(b(c))`, which must be rational.
    pub fn inner_product(&self, a: &[CycloValue], b: &[CycloValue]) -> Result<Rational> {
        let mut acc = CycloValue::zero();
        for ((x, y), &size) in a.iter().zip(b).zip(&self.class_sizes) {
            let term = (x * &y.conj()).scale(&Rational::from_integer(size.into()));
            acc = &acc + &term;
        }
        let q = acc
            .rational_part()
            .ok_or_else(|| Error::OrthogonalityFailure("inner product is not rational".into()))?;
        Ok(q / Rational::from_integer(self.group_order.into()))
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.characters.iter().position(|c| c.name == name)
    }

    /// Parity from the Schur scalar `chi(iota) / chi(1)`.
    pub fn character_parity(&self, ch: &Character) -> Result<Parity> {
        let Some(ic) = self.iota_class else {
            return Ok(Parity::Unconstrained);
        };
        let scalar = ch.values[ic]
            .rational_part()
            .map(|v| v / Rational::from_integer(ch.degree.into()));
        match scalar {
            Some(s) if s.is_one() => Ok(Parity::Even),
            Some(s) if s == -Rational::one() => Ok(Parity::Odd),
            _ => Err(Error::Schema(format!("{}: value at -I is not +-degree", ch.name))),
        }
    }
}

/// Parity of a character of `g`; a character of a group where `-I` maps to
/// the identity is always even.
pub fn parity(table: &CharacterTable, index: usize, g: &QuotientGroup) -> Result<Parity> {
    if g.iota().is_none() {
        return Ok(Parity::Unconstrained);
    }
    if g.iota_trivial() {
        return Ok(Parity::Even);
    }
    table.character_parity(&table.characters[index])
}
