//! Fuchsian signatures of congruence subgroups, read off from the action of
//! `S` and `T` on cosets, and the area constant `c`.

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, rat, Rational};
use crate::error::{Error, Result};
use crate::group::{enumerate_sl2_with_limit, FiniteSubgroup, ModMatrix};

/// Right multiplication by `S` and `T` on the cosets of `K`.
///
/// Cosets are indexed by their smallest element in canonical order. The
/// SL-level data is only kept when `-I` is not in `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    pub size: usize,
    pub sigma_s: Vec<usize>,
    pub sigma_t: Vec<usize>,
    pub sl_sigma_t: Option<Vec<usize>>,
    /// For each projective coset, one SL-level coset lying over it.
    pub sl_over_proj: Option<Vec<usize>>,
}

impl PermutationAction {
    /// `sigma_ST`: first `S`, then `T`.
    pub fn sigma_st(&self) -> Vec<usize> {
        self.sigma_s.iter().map(|&i| self.sigma_t[i]).collect()
    }
}

fn coset_ids(full: &FiniteSubgroup, k: &FiniteSubgroup) -> (Vec<u32>, Vec<ModMatrix>) {
    let mut ids = vec![u32::MAX; full.order()];
    let mut reps = Vec::new();
    for (i, g) in full.elements().iter().enumerate() {
        if ids[i] != u32::MAX {
            continue;
        }
        let idx = reps.len() as u32;
        reps.push(*g);
        for h in k.elements() {
            ids[full.position(&(*h * *g)).unwrap()] = idx;
        }
    }
    (ids, reps)
}

fn right_action(full: &FiniteSubgroup, ids: &[u32], reps: &[ModMatrix], x: ModMatrix) -> Vec<usize> {
    reps.iter()
        .map(|r| ids[full.position(&(*r * x)).unwrap()] as usize)
        .collect()
}

pub fn coset_action(k: &FiniteSubgroup) -> PermutationAction {
    let level = k.level();
    let full = enumerate_sl2_with_limit(level, level).expect("level already validated");
    let s = ModMatrix::s(level);
    let t = ModMatrix::t(level);
    let (proj_ids, proj_reps) = coset_ids(&full, &k.with_minus_i());
    let sigma_s = right_action(&full, &proj_ids, &proj_reps, s);
    let sigma_t = right_action(&full, &proj_ids, &proj_reps, t);
    let (sl_sigma_t, sl_over_proj) = if k.contains_minus_i() {
        (None, None)
    } else {
        let (sl_ids, sl_reps) = coset_ids(&full, k);
        let over = proj_reps
            .iter()
            .map(|r| sl_ids[full.position(r).unwrap()] as usize)
            .collect();
        (Some(right_action(&full, &sl_ids, &sl_reps, t)), Some(over))
    };
    PermutationAction { size: proj_reps.len(), sigma_s, sigma_t, sl_sigma_t, sl_over_proj }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspDatum {
    /// Width of the cusp; unknown for some user-supplied signatures.
    pub width: Option<u64>,
    pub regular: bool,
}

/// Genus, elliptic orders, cusps, indices and the `-I` flag of a Fuchsian
/// group of the first kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub genus: u64,
    /// Sorted ascending.
    pub elliptic_orders: Vec<u64>,
    pub cusps: Vec<CuspDatum>,
    /// Index of the image in `PSL2(Z)`; absent for groups not given as subgroups of `SL2(Z)`.
    pub mu_proj: Option<u64>,
    pub mu_sl: Option<u64>,
    pub minus_i: bool,
}

impl Signature {
    /// A signature given directly rather than computed from cosets.
    ///
    /// Cusps of a group containing `-I` are forced regular.
    pub fn general(genus: u64, mut elliptic_orders: Vec<u64>, mut cusps: Vec<CuspDatum>, minus_i: bool) -> Result<Self> {
        if elliptic_orders.iter().any(|&e| e < 2) {
            return Err(Error::InvalidSignature("elliptic orders must be at least 2".into()));
        }
        elliptic_orders.sort_unstable();
        if minus_i {
            for c in &mut cusps {
                c.regular = true;
            }
        }
        cusps.sort_unstable();
        let sig = Signature { genus, elliptic_orders, cusps, mu_proj: None, mu_sl: None, minus_i };
        area_constant_c(&sig)?;
        Ok(sig)
    }

    pub fn nu(&self, e: u64) -> usize {
        self.elliptic_orders.iter().filter(|&&x| x == e).count()
    }

    pub fn cusp_count(&self) -> usize {
        self.cusps.len()
    }

    pub fn regular_cusps(&self) -> usize {
        self.cusps.iter().filter(|c| c.regular).count()
    }

    pub fn irregular_cusps(&self) -> usize {
        self.cusp_count() - self.regular_cusps()
    }

    pub fn record(&self) -> Result<SignatureRecord> {
        Ok(SignatureRecord {
            genus: self.genus,
            nu2: self.nu(2),
            nu3: self.nu(3),
            elliptic_orders: self.elliptic_orders.clone(),
            cusps: self.cusps.clone(),
            mu_proj: self.mu_proj,
            mu_sl: self.mu_sl,
            minus_i: self.minus_i,
            c: format_rational(&area_constant_c(self)?),
        })
    }
}

/// Machine-readable form of a [`Signature`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureRecord {
    pub genus: u64,
    pub nu2: usize,
    pub nu3: usize,
    pub elliptic_orders: Vec<u64>,
    pub cusps: Vec<CuspDatum>,
    pub mu_proj: Option<u64>,
    pub mu_sl: Option<u64>,
    #[serde(rename = "minus_I")]
    pub minus_i: bool,
    pub c: String,
}

fn fixed_points(p: &[usize]) -> usize {
    p.iter().enumerate().filter(|&(i, &j)| i == j).count()
}

/// Cycles of a permutation, each starting at its smallest point, ordered by that point.
fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push(cyc);
    }
    out
}

pub fn signature_from_action(act: &PermutationAction, k: &FiniteSubgroup) -> Result<Signature> {
    let mu = act.size as i64;
    let nu2 = fixed_points(&act.sigma_s);
    let nu3 = fixed_points(&act.sigma_st());
    let mut cusps: Vec<CuspDatum> = cycles(&act.sigma_t)
        .into_iter()
        .map(|cyc| {
            let h = cyc.len();
            let regular = match (&act.sl_sigma_t, &act.sl_over_proj) {
                (Some(sl_t), Some(over)) => {
                    // regular iff T^h fixes an SL coset over the cycle
                    let s = over[cyc[0]];
                    (0..h).fold(s, |x, _| sl_t[x]) == s
                }
                _ => true,
            };
            CuspDatum { width: Some(h as u64), regular }
        })
        .collect();
    cusps.sort_unstable();
    let t = cusps.len() as i64;
    let twelve_g_minus_12 = mu - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * t;
    if twelve_g_minus_12 % 12 != 0 || twelve_g_minus_12 < -12 {
        return Err(Error::NonIntegralGenus(format_rational(&(rat(twelve_g_minus_12, 12) + rat(1, 1)))));
    }
    let mut elliptic_orders = vec![2; nu2];
    elliptic_orders.extend(std::iter::repeat_n(3, nu3));
    Ok(Signature {
        genus: (1 + twelve_g_minus_12 / 12) as u64,
        elliptic_orders,
        cusps,
        mu_proj: Some(act.size as u64),
        mu_sl: Some(k.index_in_sl2()),
        minus_i: k.contains_minus_i(),
    })
}

/// Signature of the preimage of `k` in `SL2(Z)`.
pub fn signature_of(k: &FiniteSubgroup) -> Result<Signature> {
    signature_from_action(&coset_action(k), k)
}

/// `area / 4 pi = (2g - 2 + t + sum (1 - 1/e)) / 2`.
pub fn area_constant_c(sig: &Signature) -> Result<Rational> {
    let mut x = rat(2 * sig.genus as i64 - 2 + sig.cusp_count() as i64, 1);
    for &e in &sig.elliptic_orders {
        x += rat(e as i64 - 1, e as i64);
    }
    let c = x / rat(2, 1);
    if c <= rat(0, 1) {
        return Err(Error::NonPositiveArea);
    }
    Ok(c)
}
