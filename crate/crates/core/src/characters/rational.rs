use std::collections::BTreeSet;

use crate::arith::{gcd, lcm, CycloValue, Rational};
use crate::error::{Error, Result};

use super::{CharacterTable, Parity};

/// The sum over one Galois orbit of irreducible characters.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCharacter {
    /// Member names, in table order.
    pub orbit: Vec<String>,
    /// Member indices into the table.
    pub members: Vec<usize>,
    pub values: Vec<Rational>,
    pub orbit_degree_each: u64,
    pub parity: Parity,
}

impl RationalCharacter {
    pub fn label(&self) -> String {
        if self.orbit.len() == 1 {
            self.orbit[0].clone()
        } else {
            format!("{{{}}}", self.orbit.join(","))
        }
    }

    pub fn size(&self) -> usize {
        self.orbit.len()
    }
}

/// Partitions the table into Galois orbits and sums each orbit.
pub fn rational_characters(table: &CharacterTable) -> Result<Vec<RationalCharacter>> {
    let n = table
        .characters
        .iter()
        .flat_map(|c| c.values.iter().map(CycloValue::order))
        .fold(1, lcm);
    let units: Vec<u64> = (1..=n).filter(|&a| gcd(a, n) == 1).collect();
    let chars = &table.characters;
    let mut orbit_of = vec![usize::MAX; chars.len()];
    let mut out = Vec::new();
    for i in 0..chars.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let lifted: Vec<CycloValue> = chars[i].values.iter().map(|v| v.lift(n)).collect();
        let mut members = BTreeSet::new();
        for &a in &units {
            let twisted: Vec<CycloValue> = lifted.iter().map(|v| v.twist(a)).collect();
            let j = (0..chars.len())
                .find(|&j| chars[j].values == twisted)
                .ok_or_else(|| {
                    Error::Schema(format!("Galois twist of {} is not in the table", chars[i].name))
                })?;
            members.insert(j);
        }
        let members: Vec<usize> = members.into_iter().collect();
        let degree = chars[i].degree;
        let parity = table.character_parity(&chars[i])?;
        for &j in &members {
            if chars[j].degree != degree || table.character_parity(&chars[j])? != parity {
                return Err(Error::Schema(format!(
                    "Galois orbit of {} mixes degrees or parities",
                    chars[i].name
                )));
            }
            orbit_of[j] = out.len();
        }
        let label = chars[i].name.clone();
        let values = (0..table.class_sizes().len())
            .map(|c| {
                let sum = members
                    .iter()
                    .fold(CycloValue::zero(), |acc, &j| &acc + &chars[j].values[c]);
                sum.rational_part()
                    .ok_or_else(|| Error::NotRationalAfterSum(label.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(RationalCharacter {
            orbit: members.iter().map(|&j| chars[j].name.clone()).collect(),
            members,
            values,
            orbit_degree_each: degree,
            parity,
        });
    }
    Ok(out)
}
