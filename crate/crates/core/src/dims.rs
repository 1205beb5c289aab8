//! Dimensions of `M_k` and `S_k` from a signature (Riemann-Roch).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{floor, lcm, rat, Rational};
use crate::error::{Error, Result};
use crate::signature::Signature;

/// Modular forms or cusp forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FormKind {
    M,
    S,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormKind::M => "M",
            FormKind::S => "S",
        })
    }
}

impl FromStr for FormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(FormKind::M),
            "S" | "s" => Ok(FormKind::S),
            _ => Err(Error::Config(format!("kind must be M or S, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimResult {
    pub dim_m: u64,
    pub dim_s: u64,
}

impl DimResult {
    pub fn get(&self, kind: FormKind) -> u64 {
        match kind {
            FormKind::M => self.dim_m,
            FormKind::S => self.dim_s,
        }
    }
}

fn to_dim(q: &Rational) -> Result<u64> {
    if !q.is_integer() {
        return Err(Error::InvalidSignature(format!("non-integral dimension {q}")));
    }
    if q.numer() < &BigInt::from(0) {
        return Err(Error::InvalidSignature(format!("negative dimension {q}")));
    }
    q.numer().to_u64().ok_or(Error::Overflow)
}

/// `sum_i floor(k (e_i - 1) / (2 e_i))`.
fn elliptic_term(sig: &Signature, k: i64) -> Rational {
    let total: BigInt = sig
        .elliptic_orders
        .iter()
        .map(|&e| floor(&rat(k * (e as i64 - 1), 2 * e as i64)))
        .sum();
    Rational::from_integer(total)
}

/// Dimensions of `M_k` and `S_k` for a group with signature `sig`.
pub fn dims(sig: &Signature, k: i64) -> Result<DimResult> {
    if k == 1 {
        return Err(Error::WeightOneUnsupported);
    }
    if k < 0 {
        return Ok(DimResult { dim_m: 0, dim_s: 0 });
    }
    if k == 0 {
        return Ok(DimResult { dim_m: 1, dim_s: 0 });
    }
    let g = rat(sig.genus as i64, 1);
    let one = rat(1, 1);
    let t = sig.cusp_count() as i64;
    let kr = rat(k, 1);
    if k % 2 == 1 {
        if sig.minus_i {
            return Ok(DimResult { dim_m: 0, dim_s: 0 });
        }
        if sig.elliptic_orders.iter().any(|e| e % 2 == 0) {
            return Err(Error::OddOrderViolation);
        }
        let reg = rat(sig.regular_cusps() as i64, 1);
        let irr = rat(sig.irregular_cusps() as i64, 1);
        let s = (&kr - &one) * (&g - &one)
            + elliptic_term(sig, k)
            + rat(k - 2, 2) * &reg
            + rat(k - 1, 2) * irr;
        let m = &s + reg;
        return Ok(DimResult { dim_m: to_dim(&m)?, dim_s: to_dim(&s)? });
    }
    if k == 2 {
        let gi = sig.genus;
        let m = if t > 0 { gi + t as u64 - 1 } else { gi };
        return Ok(DimResult { dim_m: m, dim_s: gi });
    }
    let s = (&kr - &one) * (&g - one) + elliptic_term(sig, k) + rat(k / 2 - 1, 1) * rat(t, 1);
    let m = &s + rat(t, 1);
    Ok(DimResult { dim_m: to_dim(&m)?, dim_s: to_dim(&s)? })
}

pub fn dim(sig: &Signature, k: i64, kind: FormKind) -> Result<u64> {
    dims(sig, k).map(|d| d.get(kind))
}

/// `lcm({2 e_i} + {2, 12})`; dimensions on each weight parity are linear
/// plus a periodic term of this period.
pub fn quasi_period(sig: &Signature) -> u64 {
    sig.elliptic_orders.iter().fold(12, |acc, &e| lcm(acc, 2 * e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{realize, SubgroupSpec};
    use crate::signature::{area_constant_c, signature_of, CuspDatum};

    fn sig(spec: SubgroupSpec) -> Signature {
        signature_of(&realize(&spec).unwrap()).unwrap()
    }

    fn d(s: &Signature, k: i64) -> (u64, u64) {
        let r = dims(s, k).unwrap();
        (r.dim_m, r.dim_s)
    }

    fn gamma1_3_like() -> Signature {
        let reg = CuspDatum { width: None, regular: true };
        Signature::general(0, vec![3], vec![reg.clone(), reg], false).unwrap()
    }

    #[test]
    fn anchors() {
        assert_eq!(d(&sig(SubgroupSpec::sl2z()), 12), (2, 1));
        assert_eq!(d(&sig(SubgroupSpec::gamma(2)), 4), (3, 0));
        assert_eq!(d(&sig(SubgroupSpec::gamma1(4)), 3), (2, 0));
        assert_eq!(d(&gamma1_3_like(), 5), (2, 0));
        assert_eq!(d(&sig(SubgroupSpec::gamma1(7)), 3).1, 1);
        assert_eq!(d(&sig(SubgroupSpec::gamma0(11)), 2), (2, 1));
        assert_eq!(d(&sig(SubgroupSpec::gamma0(5)), 7), (0, 0));
    }

    #[test]
    fn gamma1_3_pipeline_matches_hand_signature() {
        let s = sig(SubgroupSpec::gamma1(3));
        assert_eq!(s.elliptic_orders, vec![3]);
        assert_eq!(s.regular_cusps(), 2);
        for k in 2..40 {
            assert_eq!(dims(&s, k).unwrap(), dims(&gamma1_3_like(), k).unwrap());
        }
    }

    #[test]
    fn sl2z_matches_classical_formula() {
        let s = sig(SubgroupSpec::sl2z());
        for k in (4..200).step_by(2) {
            let m = if k % 12 == 2 { k / 12 } else { k / 12 + 1 };
            assert_eq!(d(&s, k).0, m as u64, "k = {k}");
        }
    }

    #[test]
    fn gamma0_5_even_weights() {
        let s = sig(SubgroupSpec::gamma0(5));
        for k in (4..100).step_by(2) {
            assert_eq!(d(&s, k).0, 2 * (k as u64 / 4) + 1);
        }
    }

    #[test]
    fn low_and_special_weights() {
        let s = sig(SubgroupSpec::gamma0(11));
        assert!(matches!(dims(&s, 1), Err(Error::WeightOneUnsupported)));
        assert_eq!(d(&s, 0), (1, 0));
        assert_eq!(d(&s, -4), (0, 0));
        let compact = Signature::general(2, vec![], vec![], false).unwrap();
        assert_eq!(d(&compact, 2), (2, 2));
        assert_eq!(d(&compact, 4), (3, 3));
        let even_elliptic = Signature::general(0, vec![2, 3], vec![CuspDatum { width: None, regular: true }; 2], false).unwrap();
        assert!(matches!(dims(&even_elliptic, 5), Err(Error::OddOrderViolation)));
    }

    #[test]
    fn quasi_periods() {
        assert_eq!(quasi_period(&sig(SubgroupSpec::sl2z())), 12);
        assert_eq!(quasi_period(&sig(SubgroupSpec::gamma1(5))), 12);
        let s = Signature::general(0, vec![5, 5, 5], vec![], true).unwrap();
        assert_eq!(quasi_period(&s), 60);
    }

    #[test]
    fn slopes_and_gaps_over_builtin_groups() {
        for n in 1..=25u32 {
            for spec in [SubgroupSpec::gamma0(n), SubgroupSpec::gamma1(n), SubgroupSpec::gamma(n.min(12))] {
                let s = sig(spec);
                let c = area_constant_c(&s).unwrap();
                let p = quasi_period(&s) as i64;
                let t = s.cusp_count() as u64;
                for k in (0..=200).filter(|&k| k != 1) {
                    let r = dims(&s, k).unwrap();
                    assert!(r.dim_s <= r.dim_m);
                    let gap = r.dim_m - r.dim_s;
                    let expected = match k {
                        0 => 1,
                        2 => t.saturating_sub(1),
                        _ if k % 2 == 1 && s.minus_i => 0,
                        _ if k % 2 == 1 => s.regular_cusps() as u64,
                        _ => t,
                    };
                    assert_eq!(gap, expected);
                }
                for k in 4..=100 {
                    if k % 2 == 1 && s.minus_i {
                        continue;
                    }
                    for kind in [FormKind::M, FormKind::S] {
                        let a = dim(&s, k, kind).unwrap() as i64;
                        let b = dim(&s, k + p, kind).unwrap() as i64;
                        assert_eq!(rat(b - a, p), c, "level {n}, k = {k}");
                    }
                }
            }
        }
    }
}
