//! The pair `(Gamma, Gamma_1)` realised at a common level, with everything the
//! multiplicity engine needs precomputed: the quotient, cyclic subgroups up to
//! conjugacy, their permutation characters and the signatures of their
//! preimages.

use rayon::prelude::*;

use crate::arith::{lcm, Rational};
use crate::characters::{abelian_character_table, builtin_s3_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{
    quotient, realize_with_limit, CyclicSubgroup, FiniteSubgroup, QuotientGroup, SubgroupSpec,
    DEFAULT_MAX_LEVEL,
};
use crate::multiplicity::permutation_character;
use crate::signature::{area_constant_c, signature_of, Signature};

#[derive(Clone, Debug)]
pub struct QuotientPair {
    pub gamma: SubgroupSpec,
    pub gamma1: SubgroupSpec,
    group: QuotientGroup,
    sig_gamma: Signature,
    sig_gamma1: Signature,
    c: Rational,
    subgroups: Vec<CyclicSubgroup>,
    perm_chars: Vec<Vec<i64>>,
    sub_sigs: Vec<Signature>,
}

impl QuotientPair {
    pub fn new(gamma: SubgroupSpec, gamma1: SubgroupSpec) -> Result<Self> {
        Self::with_limit(gamma, gamma1, DEFAULT_MAX_LEVEL)
    }

    /// Realises both groups at `lcm` of their levels, which must not exceed `max_level`.
    pub fn with_limit(gamma: SubgroupSpec, gamma1: SubgroupSpec, max_level: u32) -> Result<Self> {
        let level = lcm(gamma.level as u64, gamma1.level as u64);
        if level > max_level as u64 {
            return Err(Error::LevelTooLarge { level: level.min(u32::MAX as u64) as u32, max: max_level });
        }
        let level = level as u32;
        let big = realize_with_limit(&gamma, max_level)?.lift_to(level);
        let small = realize_with_limit(&gamma1, max_level)?.lift_to(level);
        let group = quotient(&big, &small)?;
        let sig_gamma = signature_of(&big)?;
        let sig_gamma1 = signature_of(&small)?;
        let c = area_constant_c(&sig_gamma)?;
        let subgroups = group.cyclic_subgroups_up_to_conjugacy();
        let perm_chars = subgroups
            .par_iter()
            .map(|s| permutation_character(&group, s))
            .collect();
        let sub_sigs = subgroups
            .par_iter()
            .map(|s| signature_of(&preimage(&group, &s.elements)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientPair { gamma, gamma1, group, sig_gamma, sig_gamma1, c, subgroups, perm_chars, sub_sigs })
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.gamma, self.gamma1)
    }

    pub fn group(&self) -> &QuotientGroup {
        &self.group
    }

    pub fn signature_gamma(&self) -> &Signature {
        &self.sig_gamma
    }

    pub fn signature_gamma1(&self) -> &Signature {
        &self.sig_gamma1
    }

    /// `area(Gamma \ H) / 4 pi`.
    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn subgroups(&self) -> &[CyclicSubgroup] {
        &self.subgroups
    }

    /// Permutation character of `G / C` for each cyclic subgroup, by class.
    pub fn permutation_characters(&self) -> &[Vec<i64>] {
        &self.perm_chars
    }

    /// Signature of the preimage `Gamma_C` of each cyclic subgroup.
    pub fn subgroup_signatures(&self) -> &[Signature] {
        &self.sub_sigs
    }

    /// The built-in character table for this quotient: the linear characters
    /// when it is abelian, the `S3` table for `(SL2(Z), Gamma(2))`.
    pub fn builtin_table(&self) -> Result<CharacterTable> {
        let g = &self.group;
        if g.is_abelian() {
            return abelian_character_table(g);
        }
        if g.level() == 2 && g.order() == 6 {
            return builtin_s3_table(g);
        }
        Err(Error::NoCharacterTable)
    }
}

/// Preimage in the ambient group of a set of quotient elements.
pub fn preimage(g: &QuotientGroup, elements: &[usize]) -> Result<FiniteSubgroup> {
    let mut wanted = vec![false; g.order()];
    for &e in elements {
        wanted[e] = true;
    }
    let members = g
        .ambient()
        .elements()
        .iter()
        .zip(g.coset_map())
        .filter(|(_, &c)| wanted[c as usize])
        .map(|(m, _)| *m)
        .collect();
    FiniteSubgroup::from_elements(g.level(), members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn mixed_levels_are_lifted() {
        let p = QuotientPair::new(SubgroupSpec::sl2z(), SubgroupSpec::gamma(2)).unwrap();
        assert_eq!(p.group().level(), 2);
        assert_eq!(p.group().order(), 6);
        assert_eq!(*p.c(), rat(1, 12));
        assert_eq!(p.subgroups().len(), 3);
        assert_eq!(p.label(), "SL2Z/gamma:2");
    }

    #[test]
    fn preimages_of_trivial_and_whole_group() {
        let p = QuotientPair::new(SubgroupSpec::gamma0(5), SubgroupSpec::gamma1(5)).unwrap();
        let sigs = p.subgroup_signatures();
        // trivial subgroup first: its preimage is Gamma_1 itself
        assert_eq!(sigs[0], *p.signature_gamma1());
        let whole = (0..p.subgroups().len())
            .find(|&i| p.subgroups()[i].elements.len() == p.group().order())
            .unwrap();
        assert_eq!(sigs[whole], *p.signature_gamma());
    }

    #[test]
    fn level_cap_applies_to_the_common_level() {
        let r = QuotientPair::with_limit(SubgroupSpec::gamma0(4), SubgroupSpec::gamma1(12), 10);
        assert!(matches!(r, Err(Error::LevelTooLarge { level: 12, max: 10 })));
    }

    #[test]
    fn builtin_tables() {
        let p = QuotientPair::new(SubgroupSpec::sl2z(), SubgroupSpec::gamma(3)).unwrap();
        assert!(matches!(p.builtin_table(), Err(Error::NoCharacterTable)));
    }
}
