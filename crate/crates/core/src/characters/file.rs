use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, CycloValue};
use crate::error::{Error, Result};
use crate::group::{ModMatrix, QuotientGroup};

use super::{Character, CharacterTable, Provenance};

const S3_TABLE: &str = include_str!("../../data/s3.json");

/// On-disk character table. Class representatives are integer matrices,
/// reduced modulo the level of the pair; coefficients are `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub classes: Vec<ClassEntry>,
    pub characters: Vec<CharacterEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub rep: [i64; 4],
    pub size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterEntry {
    pub name: String,
    pub degree: u64,
    pub values: Vec<ValueEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueEntry {
    pub order: u64,
    pub coeffs: BTreeMap<String, String>,
}

impl ValueEntry {
    fn parse(&self) -> Result<CycloValue> {
        if self.order == 0 {
            return Err(Error::Schema("cyclotomic order 0".into()));
        }
        let mut terms = Vec::new();
        for (k, v) in &self.coeffs {
            let j: u64 = k
                .trim()
                .parse()
                .map_err(|_| Error::Schema(format!("bad exponent {k:?}")))?;
            if j >= self.order {
                return Err(Error::Schema(format!("exponent {j} out of range for order {}", self.order)));
            }
            let q = parse_rational(v).ok_or_else(|| Error::Schema(format!("bad rational {v:?}")))?;
            terms.push((j, q));
        }
        Ok(CycloValue::new(self.order, terms))
    }
}

pub fn load_character_table(path: impl AsRef<Path>, g: &QuotientGroup) -> Result<CharacterTable> {
    let text = std::fs::read_to_string(path)?;
    parse_character_table(&text, g, Provenance::UserFile)
}

/// The `S3 = SL2(Z/2)` table, for the pair `(SL2(Z), Gamma(2))`.
pub fn builtin_s3_table(g: &QuotientGroup) -> Result<CharacterTable> {
    parse_character_table(S3_TABLE, g, Provenance::BuiltinS3)
}

pub fn parse_character_table(text: &str, g: &QuotientGroup, provenance: Provenance) -> Result<CharacterTable> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let level = g.level();
    let nc = g.classes().len();
    if file.classes.len() != nc {
        return Err(Error::ClassMismatch(format!(
            "file lists {} classes, group has {nc}",
            file.classes.len()
        )));
    }
    // file class position -> group class index
    let mut perm = Vec::with_capacity(nc);
    for entry in &file.classes {
        let [a, b, c, d] = entry.rep;
        let m = ModMatrix::new(level, a, b, c, d)
            .ok_or_else(|| Error::ClassMismatch(format!("{:?} has determinant != 1 mod {level}", entry.rep)))?;
        let x = g
            .coset_of_matrix(&m)
            .ok_or_else(|| Error::ClassMismatch(format!("{m} is not in the ambient group")))?;
        let ci = g.class_of(x);
        if perm.contains(&ci) {
            return Err(Error::ClassMismatch(format!("{m} repeats an earlier class")));
        }
        if g.classes()[ci].size != entry.size {
            return Err(Error::ClassMismatch(format!(
                "class of {m} has size {}, file says {}",
                g.classes()[ci].size,
                entry.size
            )));
        }
        perm.push(ci);
    }
    let mut characters = Vec::with_capacity(file.characters.len());
    for ce in &file.characters {
        if ce.values.len() != nc {
            return Err(Error::Schema(format!("{} has {} values, expected {nc}", ce.name, ce.values.len())));
        }
        let mut values = vec![CycloValue::zero(); nc];
        for (pos, v) in ce.values.iter().enumerate() {
            values[perm[pos]] = v.parse()?;
        }
        characters.push(Character { name: ce.name.clone(), degree: ce.degree, values });
    }
    let mut names: Vec<&str> = characters.iter().map(|c| c.name.as_str()).collect();
    names.sort_unstable();
    if names.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Schema("duplicate character names".into()));
    }
    CharacterTable::new(g, characters, provenance)
}
