//! Text syntax for groups and pairs: `SL2Z`, `gamma0:N`, `gamma1:N`,
//! `gamma:N`, `custom:<path>`; a pair is two of these joined by `/`.
//!
//! A custom file holds a `level N` line and one generator per line as four
//! integers `a b c d`; `#` starts a comment.

use std::path::Path;

use crate::error::{Error, Result};
use crate::group::{ModMatrix, SubgroupKind, SubgroupSpec};

pub fn parse_group_spec(s: &str) -> Result<SubgroupSpec> {
    let s = s.trim();
    if s == "SL2Z" {
        return Ok(SubgroupSpec::sl2z());
    }
    let bad = || Error::InvalidSpec(s.to_string());
    let (head, arg) = s.split_once(':').ok_or_else(bad)?;
    let level = || -> Result<u32> {
        match arg.parse::<u32>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(bad()),
        }
    };
    match head {
        "gamma0" => Ok(SubgroupSpec::gamma0(level()?)),
        "gamma1" => Ok(SubgroupSpec::gamma1(level()?)),
        "gamma" => Ok(SubgroupSpec::gamma(level()?)),
        "custom" if !arg.is_empty() => load_custom(arg),
        _ => Err(bad()),
    }
}

/// Splits `<spec>/<spec>` at the first `/` where both sides parse.
pub fn parse_pair_spec(s: &str) -> Result<(SubgroupSpec, SubgroupSpec)> {
    let mut last_err = Error::InvalidSpec(s.to_string());
    for (i, _) in s.match_indices('/') {
        let (a, b) = (&s[..i], &s[i + 1..]);
        match (parse_group_spec(a), parse_group_spec(b)) {
            (Ok(x), Ok(y)) => return Ok((x, y)),
            (Err(e @ Error::Io(_)), _) | (_, Err(e @ Error::Io(_))) => last_err = e,
            _ => {}
        }
    }
    Err(last_err)
}

/// `a..b`, inclusive on both ends.
pub fn parse_weight_range(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::InvalidSpec(format!("weight range {s:?}"));
    let (a, b) = s.trim().split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b || a < 0 {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

pub fn load_custom(path: impl AsRef<Path>) -> Result<SubgroupSpec> {
    parse_custom(&std::fs::read_to_string(path)?)
}

pub fn parse_custom(text: &str) -> Result<SubgroupSpec> {
    let mut level = None;
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("level") {
            let n: u32 = rest
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad level line {line:?}")))?;
            if n == 0 {
                return Err(Error::InvalidSpec("level 0".into()));
            }
            level = Some(n);
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(str::parse::<i64>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidSpec(format!("bad generator line {line:?}")))?;
        let [a, b, c, d] = nums[..] else {
            return Err(Error::InvalidSpec(format!("expected four integers, got {line:?}")));
        };
        rows.push([a, b, c, d]);
    }
    let level = level.ok_or_else(|| Error::InvalidSpec("custom group file has no level line".into()))?;
    let gens = rows
        .into_iter()
        .map(|[a, b, c, d]| {
            ModMatrix::new(level, a, b, c, d)
                .ok_or_else(|| Error::NotAGroup(format!("[{a} {b}; {c} {d}] has determinant != 1 mod {level}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubgroupSpec::new(level, SubgroupKind::Custom(gens)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn builtin_specs() {
        assert_eq!(parse_group_spec("SL2Z").unwrap(), SubgroupSpec::sl2z());
        assert_eq!(parse_group_spec("gamma0:11").unwrap(), SubgroupSpec::gamma0(11));
        assert_eq!(parse_group_spec("gamma1:4").unwrap(), SubgroupSpec::gamma1(4));
        assert_eq!(parse_group_spec("gamma:2").unwrap(), SubgroupSpec::gamma(2));
        for bad in ["", "gamma0", "gamma0:0", "gamma0:x", "delta:3", "custom:"] {
            assert!(parse_group_spec(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn pairs() {
        let (a, b) = parse_pair_spec("SL2Z/gamma:2").unwrap();
        assert_eq!((a, b), (SubgroupSpec::sl2z(), SubgroupSpec::gamma(2)));
        assert!(parse_pair_spec("gamma0:5").is_err());
    }

    #[test]
    fn custom_files() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# plus-minus T\nlevel 5\n1 1 0 1\n-1 0 0 -1  # -I").unwrap();
        let path = f.path().to_str().unwrap().to_string();
        let spec = parse_group_spec(&format!("custom:{path}")).unwrap();
        assert_eq!(spec.level, 5);
        let (a, b) = parse_pair_spec(&format!("gamma0:5/custom:{path}")).unwrap();
        assert_eq!(a, SubgroupSpec::gamma0(5));
        assert_eq!(b, spec);
        assert!(matches!(parse_custom("level 5\n2 0 0 2"), Err(Error::NotAGroup(_))));
        assert!(parse_custom("1 1 0 1").is_err());
        assert!(parse_custom("level 5\n1 1 0").is_err());
    }

    #[test]
    fn weight_ranges() {
        assert_eq!(parse_weight_range("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_weight_range("7..7").unwrap(), vec![7]);
        for bad in ["5..2", "2-5", "a..3", "-1..3"] {
            assert!(parse_weight_range(bad).is_err(), "{bad}");
        }
    }
}
