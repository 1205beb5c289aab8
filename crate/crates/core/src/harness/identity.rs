use serde::Serialize;

use crate::dims::{dim, FormKind};
use crate::error::{Error, Result};
use crate::multiplicity::MultiplicityEngine;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub k: i64,
    /// `sum over orbits of degree * orbit total`.
    pub lhs: u64,
    /// `dim(Gamma_1, k)`.
    pub rhs: u64,
    pub holds: bool,
}

/// `sum_rho dim(rho) <rho, rho_k> = dim M_k(Gamma_1)` (or `S_k`) at each weight.
///
/// Fails with [`Error::IdentityViolation`] at the first weight where it does not hold.
pub fn check_decomposition_identity(
    engine: &MultiplicityEngine,
    kind: FormKind,
    weights: &[i64],
) -> Result<Vec<IdentityCheck>> {
    let sig1 = engine.pair.signature_gamma1();
    let mut out = Vec::with_capacity(weights.len());
    for &k in weights {
        let mut lhs = 0;
        for (i, r) in engine.rational.iter().enumerate() {
            lhs += r.orbit_degree_each * engine.orbit_multiplicity(i, k, kind)?;
        }
        let rhs = dim(sig1, k, kind)?;
        if lhs != rhs {
            return Err(Error::IdentityViolation { k, lhs, rhs });
        }
        out.push(IdentityCheck { k, lhs, rhs, holds: true });
    }
    Ok(out)
}
