//! Congruence subgroups of `SL2(Z)` realised as subgroups of `SL2(Z/N)`, and
//! the finite quotients `Gamma / Gamma_1` built from them.

mod matrix;
mod quotient;
mod subgroup;

pub use matrix::ModMatrix;
pub use quotient::{quotient, ConjClass, CyclicSubgroup, QuotientGroup};
pub use subgroup::{
    closure, enumerate_sl2, enumerate_sl2_with_limit, realize, realize_with_limit, sl2_order,
    CongruencePredicate, FiniteSubgroup, SubgroupKind, SubgroupSpec, DEFAULT_MAX_LEVEL,
};
