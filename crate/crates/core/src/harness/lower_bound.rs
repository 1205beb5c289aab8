use serde::Serialize;

use crate::dims::{dim, FormKind};
use crate::error::{Error, Result};
use crate::multiplicity::MultiplicitySeries;
use crate::signature::Signature;

/// Smallest even offset `n0` with
/// `mult_k >= deg * dim M_{k - (k mod 2) - n0}(Gamma)` for every in-class
/// weight `k` in `[n0 + 4, K]`.
///
/// The comparison weight is always even, so the bound stays non-trivial for
/// odd representations when `-I` lies in `Gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub rep: String,
    pub kind: FormKind,
    pub offset_bound: u64,
    pub kmax: i64,
    /// `None` when no offset up to the bound works.
    pub offset: Option<u64>,
    /// Number of weights checked at the reported offset.
    pub weights_checked: usize,
}

pub fn monitor_lower_bound(
    series: &MultiplicitySeries,
    sig_gamma: &Signature,
    offset_bound: u64,
    kmax: i64,
) -> Result<LowerBoundReport> {
    if offset_bound % 2 != 0 {
        return Err(Error::Config(format!("offset bound {offset_bound} must be even")));
    }
    let deg = series.aggregate_degree();
    let mut found = None;
    for n0 in (0..=offset_bound).step_by(2) {
        let ks: Vec<i64> = (n0 as i64 + 4..=kmax)
            .filter(|&k| series.parity_class.contains(k) && series.get(k).is_some())
            .collect();
        if ks.is_empty() {
            continue;
        }
        let mut holds = true;
        for &k in &ks {
            let w = k - k.rem_euclid(2) - n0 as i64;
            if series.get(k).unwrap() < deg * dim(sig_gamma, w, FormKind::M)? {
                holds = false;
                break;
            }
        }
        if holds {
            found = Some((n0, ks.len()));
            break;
        }
    }
    Ok(LowerBoundReport {
        rep: series.rep.clone(),
        kind: series.kind,
        offset_bound,
        kmax,
        offset: found.map(|f| f.0),
        weights_checked: found.map_or(0, |f| f.1),
    })
}
