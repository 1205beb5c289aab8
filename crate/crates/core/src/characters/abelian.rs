use crate::arith::CycloValue;
use crate::error::{Error, Result};
use crate::group::QuotientGroup;

use super::{Character, CharacterTable, Provenance};

/// All linear characters of an abelian quotient.
///
/// Generators are taken greedily by decreasing element order; a character is
/// named `chi` followed by the exponents `x_i` (joined by `.`) with
/// `chi(g_i) = zeta_e^x_i`, `e` the group exponent.
pub fn abelian_character_table(g: &QuotientGroup) -> Result<CharacterTable> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = g.order();
    let e = g.exponent();

    let mut candidates: Vec<usize> = (0..n).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));

    // Elements of the subgroup built so far, and each character's values on
    // them as exponents of zeta_e.
    let mut span: Vec<usize> = vec![0];
    let mut in_span = vec![false; n];
    in_span[0] = true;
    let mut chars: Vec<(Vec<u64>, Vec<u64>)> = vec![(Vec::new(), vec![0])];

    for &x in &candidates {
        if in_span[x] {
            continue;
        }
        // relative order of x modulo the current span
        let mut m = 1u64;
        let mut xm = x;
        while !in_span[xm] {
            xm = g.mul(xm, x);
            m += 1;
        }
        let pos_xm = span.iter().position(|&h| h == xm).unwrap();
        let mut new_span = Vec::with_capacity(span.len() * m as usize);
        let mut xj = 0;
        for _ in 0..m {
            new_span.extend(span.iter().map(|&h| g.mul(h, xj)));
            xj = g.mul(xj, x);
        }
        let mut new_chars = Vec::new();
        for (name, vals) in &chars {
            let y = vals[pos_xm];
            for v in (0..e).filter(|&v| (m * v) % e == y) {
                let mut ext = Vec::with_capacity(new_span.len());
                for j in 0..m {
                    ext.extend(vals.iter().map(|&w| (w + j * v) % e));
                }
                let mut nm = name.clone();
                nm.push(v);
                new_chars.push((nm, ext));
            }
        }
        debug_assert_eq!(new_chars.len(), chars.len() * m as usize);
        for &h in &new_span {
            in_span[h] = true;
        }
        span = new_span;
        chars = new_chars;
    }
    debug_assert_eq!(span.len(), n);

    let mut pos = vec![0; n];
    for (i, &h) in span.iter().enumerate() {
        pos[h] = i;
    }
    let characters = chars
        .into_iter()
        .map(|(exps, vals)| {
            let name = if exps.is_empty() {
                "chi0".to_string()
            } else {
                format!("chi{}", exps.iter().map(u64::to_string).collect::<Vec<_>>().join("."))
            };
            let values = g
                .classes()
                .iter()
                .map(|c| CycloValue::root(e, vals[pos[c.rep]]))
                .collect();
            Character { name, degree: 1, values }
        })
        .collect();
    CharacterTable::new(g, characters, Provenance::BuiltinAbelian)
}
