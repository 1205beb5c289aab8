use std::collections::HashSet;
use std::fmt;

use crate::arith::factorize;
use crate::error::{Error, Result};

use super::ModMatrix;

/// Default cap on the level of any enumerated group.
pub const DEFAULT_MAX_LEVEL: u32 = 30;

/// Named congruence conditions beyond the standard families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CongruencePredicate {
    /// `c = 0`, `a = d = +-1`.
    PlusMinusGamma1,
    /// `b = 0`.
    UpperGamma0,
}

impl CongruencePredicate {
    fn holds(self, m: &ModMatrix) -> bool {
        let [a, b, c, d] = m.entries();
        let n = m.level();
        match self {
            CongruencePredicate::PlusMinusGamma1 => {
                c == 0 && a == d && (a == 1 % n || a == (n - 1) % n)
            }
            CongruencePredicate::UpperGamma0 => b == 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupKind {
    Full,
    Gamma0,
    Gamma1,
    /// The principal congruence subgroup `Gamma(N)`.
    GammaFull,
    Custom(Vec<ModMatrix>),
    Predicate(CongruencePredicate),
}

/// A subgroup of `SL2(Z)` containing `Gamma(level)`, described by its image mod `level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupSpec {
    pub level: u32,
    pub kind: SubgroupKind,
}

impl SubgroupSpec {
    pub fn new(level: u32, kind: SubgroupKind) -> Self {
        SubgroupSpec { level, kind }
    }

    pub fn sl2z() -> Self {
        Self::new(1, SubgroupKind::Full)
    }

    pub fn gamma0(n: u32) -> Self {
        Self::new(n, SubgroupKind::Gamma0)
    }

    pub fn gamma1(n: u32) -> Self {
        Self::new(n, SubgroupKind::Gamma1)
    }

    pub fn gamma(n: u32) -> Self {
        Self::new(n, SubgroupKind::GammaFull)
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SubgroupKind::Full if self.level == 1 => write!(f, "SL2Z"),
            SubgroupKind::Full => write!(f, "full:{}", self.level),
            SubgroupKind::Gamma0 => write!(f, "gamma0:{}", self.level),
            SubgroupKind::Gamma1 => write!(f, "gamma1:{}", self.level),
            SubgroupKind::GammaFull => write!(f, "gamma:{}", self.level),
            SubgroupKind::Custom(g) => write!(f, "custom[{} generators]:{}", g.len(), self.level),
            SubgroupKind::Predicate(p) => write!(f, "{p:?}:{}", self.level),
        }
    }
}

/// A subgroup of `SL2(Z/N)` stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubgroup {
    level: u32,
    elements: Vec<ModMatrix>,
    contains_minus_i: bool,
}

/// `|SL2(Z/N)| = N^3 prod_{p | N} (1 - 1/p^2)`.
pub fn sl2_order(level: u32) -> u64 {
    let n = level as u64;
    factorize(n)
        .into_iter()
        .fold(n * n * n, |acc, (p, _)| acc / (p * p) * (p * p - 1))
}

fn check_level(level: u32, max_level: u32) -> Result<()> {
    if level == 0 {
        return Err(Error::InvalidSpec("level 0".into()));
    }
    if level > max_level {
        return Err(Error::LevelTooLarge { level, max: max_level });
    }
    Ok(())
}

/// All of `SL2(Z/N)`, in canonical order.
pub fn enumerate_sl2(level: u32) -> Result<FiniteSubgroup> {
    enumerate_sl2_with_limit(level, DEFAULT_MAX_LEVEL)
}

pub fn enumerate_sl2_with_limit(level: u32, max_level: u32) -> Result<FiniteSubgroup> {
    check_level(level, max_level)?;
    Ok(FiniteSubgroup::trusted(level, sl2_elements(level)))
}

fn sl2_elements(n: u32) -> Vec<ModMatrix> {
    let mut out = Vec::with_capacity(sl2_order(n) as usize);
    let one = 1 % n;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let det = (a as u64 * d as u64 + (n as u64) * (n as u64) - b as u64 * c as u64)
                        % n as u64;
                    if det == one as u64 {
                        out.push(ModMatrix::from_residues(n, a, b, c, d));
                    }
                }
            }
        }
    }
    out
}

/// The mod-`level` image of the group described by `spec`.
pub fn realize(spec: &SubgroupSpec) -> Result<FiniteSubgroup> {
    realize_with_limit(spec, DEFAULT_MAX_LEVEL)
}

pub fn realize_with_limit(spec: &SubgroupSpec, max_level: u32) -> Result<FiniteSubgroup> {
    let n = spec.level;
    check_level(n, max_level)?;
    let filter = |pred: &dyn Fn(&ModMatrix) -> bool| {
        sl2_elements(n).into_iter().filter(|m| pred(m)).collect::<Vec<_>>()
    };
    let one = 1 % n;
    let elements = match &spec.kind {
        SubgroupKind::Full => sl2_elements(n),
        SubgroupKind::Gamma0 => filter(&|m| m.entries()[2] == 0),
        SubgroupKind::Gamma1 => filter(&|m| {
            let [a, _, c, d] = m.entries();
            c == 0 && a == one && d == one
        }),
        SubgroupKind::GammaFull => vec![ModMatrix::identity(n)],
        SubgroupKind::Predicate(p) => filter(&|m| p.holds(m)),
        SubgroupKind::Custom(gens) => {
            if let Some(g) = gens.iter().find(|g| g.level() != n) {
                return Err(Error::NotAGroup(format!(
                    "generator {g} is not at level {n}"
                )));
            }
            closure(n, gens)
        }
    };
    FiniteSubgroup::from_elements(n, elements)
}

/// The subgroup generated by `gens`.
pub fn closure(level: u32, gens: &[ModMatrix]) -> Vec<ModMatrix> {
    let id = ModMatrix::identity(level);
    let mut seen: HashSet<ModMatrix> = HashSet::from([id]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x * *g;
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

impl FiniteSubgroup {
    fn trusted(level: u32, mut elements: Vec<ModMatrix>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let contains_minus_i = elements.binary_search(&ModMatrix::minus_identity(level)).is_ok();
        FiniteSubgroup { level, elements, contains_minus_i }
    }

    /// Validates that `elements` is a subgroup of `SL2(Z/level)`.
    pub fn from_elements(level: u32, elements: Vec<ModMatrix>) -> Result<Self> {
        if let Some(m) = elements.iter().find(|m| m.level() != level) {
            return Err(Error::NotAGroup(format!("element {m} is not at level {level}")));
        }
        let h = Self::trusted(level, elements);
        if !h.contains(&ModMatrix::identity(level)) {
            return Err(Error::NotAGroup("identity missing".into()));
        }
        // H is a group iff the closure of a generating set drawn from H is H itself.
        let gens = h.generators();
        if closure(level, &gens) != h.elements {
            return Err(Error::NotAGroup("not closed under multiplication".into()));
        }
        Ok(h)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn elements(&self) -> &[ModMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains_minus_i(&self) -> bool {
        self.contains_minus_i
    }

    pub fn contains(&self, m: &ModMatrix) -> bool {
        self.position(m).is_some()
    }

    /// Index of `m` in the canonical element list.
    pub fn position(&self, m: &ModMatrix) -> Option<usize> {
        self.elements.binary_search(m).ok()
    }

    /// Index in `SL2(Z/N)`.
    pub fn index_in_sl2(&self) -> u64 {
        sl2_order(self.level) / self.order() as u64
    }

    /// A small generating set, chosen greedily in canonical element order.
    ///
    /// Only meaningful when the element list is closed; on a non-group it
    /// still returns elements whose closure covers the list.
    pub fn generators(&self) -> Vec<ModMatrix> {
        let mut gens = Vec::new();
        let mut span: HashSet<ModMatrix> = HashSet::from([ModMatrix::identity(self.level)]);
        for m in &self.elements {
            if !span.contains(m) {
                gens.push(*m);
                span = closure(self.level, &gens).into_iter().collect();
            }
        }
        gens
    }

    pub fn is_subgroup_of(&self, other: &FiniteSubgroup) -> bool {
        self.level == other.level && self.elements.iter().all(|m| other.contains(m))
    }

    /// Whether `self` is normalised by every element of `ambient`.
    pub fn is_normal_in(&self, ambient: &FiniteSubgroup) -> bool {
        let mine = self.generators();
        ambient.generators().iter().all(|g| {
            let gi = g.inverse();
            mine.iter().all(|n| self.contains(&(*g * *n * gi)))
        })
    }

    /// Preimage in `SL2(Z/level)` under reduction, for a multiple `level` of the current level.
    pub fn lift_to(&self, level: u32) -> FiniteSubgroup {
        assert!(level % self.level == 0, "{level} is not a multiple of {}", self.level);
        if level == self.level {
            return self.clone();
        }
        let elements = sl2_elements(level)
            .into_iter()
            .filter(|m| self.contains(&m.reduce(self.level)))
            .collect();
        Self::trusted(level, elements)
    }

    /// `K` together with `-K`.
    pub fn with_minus_i(&self) -> FiniteSubgroup {
        if self.contains_minus_i {
            return self.clone();
        }
        let mut els = self.elements.clone();
        els.extend(self.elements.iter().map(ModMatrix::neg));
        Self::trusted(self.level, els)
    }
}
