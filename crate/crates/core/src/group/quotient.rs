use std::collections::{BTreeSet, VecDeque};

use crate::arith::gcd;
use crate::error::{Error, Result};

use super::{FiniteSubgroup, ModMatrix};

/// Quotients up to this order carry a precomputed multiplication table.
const TABLE_LIMIT: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    /// Smallest element index in the class.
    pub rep: usize,
    pub size: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroup {
    pub generator: usize,
    /// Sorted element indices.
    pub elements: Vec<usize>,
}

/// The finite group `ambient / normal`, elements indexed `0..order` with the
/// identity at index 0 and the rest ordered by smallest coset member.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    ambient: FiniteSubgroup,
    normal: FiniteSubgroup,
    reps: Vec<ModMatrix>,
    /// Coset index of each ambient element, parallel to `ambient.elements()`.
    coset_of: Vec<u32>,
    table: Option<Vec<u32>>,
    inverse: Vec<usize>,
    element_order: Vec<u64>,
    generators: Vec<usize>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    iota: Option<usize>,
    iota_trivial: bool,
}

/// Builds `gamma / gamma1`; `gamma1` must be a normal subgroup at the same level.
pub fn quotient(gamma: &FiniteSubgroup, gamma1: &FiniteSubgroup) -> Result<QuotientGroup> {
    if gamma.level() != gamma1.level() {
        return Err(Error::NotASubgroup(format!(
            "levels differ ({} vs {})",
            gamma.level(),
            gamma1.level()
        )));
    }
    if !gamma1.is_subgroup_of(gamma) {
        return Err(Error::NotASubgroup("second group is not contained in the first".into()));
    }
    if !gamma1.is_normal_in(gamma) {
        return Err(Error::NotNormal);
    }
    Ok(QuotientGroup::build(gamma.clone(), gamma1.clone()))
}

impl QuotientGroup {
    fn build(ambient: FiniteSubgroup, normal: FiniteSubgroup) -> Self {
        let level = ambient.level();
        let id = ModMatrix::identity(level);
        let mut coset_of = vec![u32::MAX; ambient.order()];
        let mut reps = Vec::new();
        let assign = |g: ModMatrix, coset_of: &mut Vec<u32>, reps: &mut Vec<ModMatrix>| {
            let idx = reps.len() as u32;
            reps.push(g);
            for n in normal.elements() {
                let p = ambient.position(&(*n * g)).expect("normal subgroup inside ambient");
                coset_of[p] = idx;
            }
        };
        assign(id, &mut coset_of, &mut reps);
        for (i, g) in ambient.elements().iter().enumerate() {
            if coset_of[i] == u32::MAX {
                assign(*g, &mut coset_of, &mut reps);
            }
        }

        let mut q = QuotientGroup {
            generators: Vec::new(),
            inverse: Vec::new(),
            element_order: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            iota: None,
            iota_trivial: false,
            table: None,
            ambient,
            normal,
            reps,
            coset_of,
        };
        let n = q.order();
        if n <= TABLE_LIMIT {
            let mut t = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    t.push(q.mul_slow(i, j) as u32);
                }
            }
            q.table = Some(t);
        }
        q.inverse = (0..n)
            .map(|i| q.coset_of_matrix(&q.reps[i].inverse()).unwrap())
            .collect();
        q.element_order = (0..n).map(|i| q.compute_order(i)).collect();
        let mut gens: Vec<usize> = q
            .ambient
            .generators()
            .iter()
            .map(|g| q.coset_of_matrix(g).unwrap())
            .filter(|&g| g != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        q.generators = gens;
        q.compute_classes();
        if q.ambient.contains_minus_i() {
            q.iota = q.coset_of_matrix(&ModMatrix::minus_identity(level));
            q.iota_trivial = q.normal.contains_minus_i();
        }
        q
    }

    fn mul_slow(&self, i: usize, j: usize) -> usize {
        self.coset_of_matrix(&(self.reps[i] * self.reps[j])).unwrap()
    }

    fn compute_order(&self, i: usize) -> u64 {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members = vec![start];
            class_of[start] = idx;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in &self.generators {
                    let y = self.conjugate(x, g);
                    if class_of[y] == usize::MAX {
                        class_of[y] = idx;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass { rep: start, size: members.len(), members });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn ambient(&self) -> &FiniteSubgroup {
        &self.ambient
    }

    pub fn normal(&self) -> &FiniteSubgroup {
        &self.normal
    }

    pub fn level(&self) -> u32 {
        self.ambient.level()
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Coset representative matrix of element `i`.
    pub fn rep(&self, i: usize) -> ModMatrix {
        self.reps[i]
    }

    /// Element index of the coset containing `m`, if `m` lies in the ambient group.
    pub fn coset_of_matrix(&self, m: &ModMatrix) -> Option<usize> {
        self.ambient.position(m).map(|p| self.coset_of[p] as usize)
    }

    /// Coset index for every ambient element, parallel to `ambient().elements()`.
    pub fn coset_map(&self) -> &[u32] {
        &self.coset_of
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.mul_slow(i, j),
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn pow(&self, x: usize, e: u64) -> usize {
        let e = e % self.element_order[x];
        (0..e).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.element_order[i]
    }

    pub fn exponent(&self) -> u64 {
        self.element_order.iter().fold(1, |acc, &o| crate::arith::lcm(acc, o))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Element index of the coset of `-I`, when `-I` lies in the ambient group.
    pub fn iota(&self) -> Option<usize> {
        self.iota
    }

    /// `-I` lies in the normal subgroup.
    pub fn iota_trivial(&self) -> bool {
        self.iota_trivial
    }

    /// `[Gamma : Gamma_1]`.
    pub fn mu_sl(&self) -> usize {
        self.order()
    }

    /// `[Gamma-bar : Gamma_1-bar]`, the index of the images in `PSL2(Z)`.
    pub fn mu_proj(&self) -> usize {
        match self.iota {
            Some(i) if i != 0 => self.order() / 2,
            _ => self.order(),
        }
    }

    /// Elements of `<x>` in ascending index order.
    pub fn cyclic_span(&self, x: usize) -> Vec<usize> {
        let mut v = Vec::new();
        let mut y = 0;
        loop {
            v.push(y);
            y = self.mul(y, x);
            if y == 0 {
                break;
            }
        }
        v.sort_unstable();
        v
    }

    /// Class indices of the generators of `<x>`.
    fn generator_classes(&self, x: usize) -> BTreeSet<usize> {
        let o = self.element_order[x];
        (1..=o)
            .filter(|&a| gcd(a, o) == 1)
            .map(|a| self.class_of[self.pow(x, a)])
            .collect()
    }

    /// One representative cyclic subgroup from each conjugacy class of
    /// cyclic subgroups, trivial subgroup first.
    pub fn cyclic_subgroups_up_to_conjugacy(&self) -> Vec<CyclicSubgroup> {
        let mut seen: Vec<BTreeSet<usize>> = Vec::new();
        let mut out = Vec::new();
        for class in &self.classes {
            let key = self.generator_classes(class.rep);
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            out.push(CyclicSubgroup {
                generator: class.rep,
                elements: self.cyclic_span(class.rep),
            });
        }
        out
    }

    /// Partition of the conjugacy classes under the power maps `g -> g^a`,
    /// `a` a unit mod the exponent.
    pub fn galois_class_orbits(&self) -> Vec<Vec<usize>> {
        let e = self.exponent();
        let mut cell_of = vec![usize::MAX; self.classes.len()];
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for (ci, class) in self.classes.iter().enumerate() {
            if cell_of[ci] != usize::MAX {
                continue;
            }
            let orbit: BTreeSet<usize> = (1..=e)
                .filter(|&a| gcd(a, e) == 1)
                .map(|a| self.class_of[self.pow(class.rep, a)])
                .collect();
            for &c in &orbit {
                cell_of[c] = cells.len();
            }
            cells.push(orbit.into_iter().collect());
        }
        cells
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_sl2, realize, SubgroupSpec};

    fn diamond(n: u32) -> QuotientGroup {
        quotient(
            &realize(&SubgroupSpec::gamma0(n)).unwrap(),
            &realize(&SubgroupSpec::gamma1(n)).unwrap(),
        )
        .unwrap()
    }

    fn s3() -> QuotientGroup {
        quotient(&enumerate_sl2(2).unwrap(), &realize(&SubgroupSpec::gamma(2)).unwrap()).unwrap()
    }

    #[test]
    fn diamond_five_is_cyclic_of_order_four() {
        let g = diamond(5);
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!((0..4).any(|x| g.element_order(x) == 4));
        let iota = g.iota().unwrap();
        assert_ne!(iota, 0);
        assert!(!g.iota_trivial());
        assert_eq!(g.rep(iota).entries()[3], 4);
        assert_eq!(g.mu_sl(), 4);
        assert_eq!(g.mu_proj(), 2);
    }

    #[test]
    fn sl2_mod_2_is_s3() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let mut sizes: Vec<usize> = g.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes[0], 1);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.iota(), Some(0));
        assert!(g.iota_trivial());
        assert!(!g.is_abelian());
        assert_eq!(g.mu_proj(), 6);
    }

    #[test]
    fn diamond_eight_has_exponent_two() {
        let g = diamond(8);
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn diamond_is_units_via_d_entry() {
        for n in 1..=25u32 {
            let g = diamond(n);
            let units: Vec<u32> = (0..n).filter(|&d| gcd(d as u64, n as u64) == 1).collect();
            assert_eq!(g.order(), units.len().max(1), "n = {n}");
            let d_of = |i: usize| g.rep(i).entries()[3];
            let mut ds: Vec<u32> = (0..g.order()).map(d_of).collect();
            ds.sort_unstable();
            ds.dedup();
            assert_eq!(ds.len(), g.order());
            for i in 0..g.order() {
                for j in 0..g.order() {
                    assert_eq!(d_of(g.mul(i, j)), d_of(i) * d_of(j) % n.max(1), "n = {n}");
                }
            }
        }
    }

    #[test]
    fn structural_invariants() {
        let groups = [
            diamond(5),
            diamond(12),
            diamond(21),
            s3(),
            quotient(&enumerate_sl2(3).unwrap(), &realize(&SubgroupSpec::gamma(3)).unwrap()).unwrap(),
            quotient(&enumerate_sl2(4).unwrap(), &realize(&SubgroupSpec::gamma(4)).unwrap()).unwrap(),
        ];
        for g in &groups {
            let n = g.order();
            assert_eq!(g.classes().iter().map(|c| c.size).sum::<usize>(), n);
            assert_eq!(g.ambient().order() / g.normal().order(), n);
            for x in 0..n {
                assert_eq!(g.pow(x, n as u64), 0);
                // every class is closed under conjugation by every element
                for y in 0..n {
                    assert_eq!(g.class_of(g.conjugate(x, y)), g.class_of(x));
                }
            }
            if let Some(i) = g.iota() {
                assert_eq!(g.mul(i, i), 0);
            }
        }
    }

    #[test]
    fn cyclic_subgroup_classes() {
        let orders = |g: &QuotientGroup| {
            let mut v: Vec<usize> = g
                .cyclic_subgroups_up_to_conjugacy()
                .iter()
                .map(|c| c.elements.len())
                .collect();
            v.sort_unstable();
            v
        };
        assert_eq!(orders(&diamond(5)), vec![1, 2, 4]);
        assert_eq!(orders(&s3()), vec![1, 2, 3]);
        assert_eq!(orders(&diamond(8)), vec![1, 2, 2, 2]);
        let sl23 = quotient(&enumerate_sl2(3).unwrap(), &realize(&SubgroupSpec::gamma(3)).unwrap()).unwrap();
        assert_eq!(orders(&sl23), vec![1, 2, 3, 4, 6]);
        assert_eq!(diamond(5).cyclic_subgroups_up_to_conjugacy()[0].elements, vec![0]);
    }

    #[test]
    fn every_cyclic_subgroup_is_covered_once() {
        let g = quotient(&enumerate_sl2(4).unwrap(), &realize(&SubgroupSpec::gamma(4)).unwrap()).unwrap();
        let reps = g.cyclic_subgroups_up_to_conjugacy();
        let conj_set = |s: &[usize], y: usize| {
            let mut v: Vec<usize> = s.iter().map(|&x| g.conjugate(x, y)).collect();
            v.sort_unstable();
            v
        };
        for x in 0..g.order() {
            let span = g.cyclic_span(x);
            let hits = reps
                .iter()
                .filter(|c| (0..g.order()).any(|y| conj_set(&c.elements, y) == span))
                .count();
            assert_eq!(hits, 1, "element {x}");
        }
    }

    #[test]
    fn galois_orbits() {
        let c4 = diamond(5);
        let cells = c4.galois_class_orbits();
        assert_eq!(cells.len(), 3);
        let gen = (0..4).find(|&x| c4.element_order(x) == 4).unwrap();
        let pair = cells.iter().find(|c| c.len() == 2).unwrap();
        assert!(pair.contains(&c4.class_of(gen)) && pair.contains(&c4.class_of(c4.inv(gen))));
        assert_eq!(s3().galois_class_orbits().len(), 3);
        assert!(s3().galois_class_orbits().iter().all(|c| c.len() == 1));
        assert_eq!(diamond(8).galois_class_orbits().len(), 4);
    }

    #[test]
    fn rejects_bad_pairs() {
        let g0 = realize(&SubgroupSpec::gamma0(4)).unwrap();
        let full = enumerate_sl2(4).unwrap();
        assert!(matches!(quotient(&full, &g0), Err(Error::NotNormal)));
        assert!(matches!(quotient(&g0, &full), Err(Error::NotASubgroup(_))));
        let g5 = realize(&SubgroupSpec::gamma0(5)).unwrap();
        assert!(matches!(quotient(&g5, &g0), Err(Error::NotASubgroup(_))));
    }
}
