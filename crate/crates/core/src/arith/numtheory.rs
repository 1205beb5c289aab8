//! Elementary number-theoretic helpers on machine integers.

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorisation by trial division, ascending primes with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Ascending list of the positive divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Möbius function.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius(0) is undefined");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi(0) is undefined");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius_brute(n: u64) -> i8 {
        // sum_{d|n} mu(d) = [n == 1], inverted recursively
        if n == 1 {
            return 1;
        }
        -(1..n).filter(|d| n % d == 0).map(mobius_brute).sum::<i8>()
    }

    fn phi_brute(n: u64) -> u64 {
        (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        for n in 1..=120 {
            assert_eq!(mobius(n), mobius_brute(n), "n = {n}");
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(7), 6);
        for n in 1..=200 {
            assert_eq!(euler_phi(n), phi_brute(n), "n = {n}");
        }
    }

    #[test]
    fn divisor_sums() {
        for n in 1..=300u64 {
            let ds = divisors(n);
            assert_eq!(ds, (1..=n).filter(|d| n % d == 0).collect::<Vec<_>>());
            let mu_sum: i64 = ds.iter().map(|&d| mobius(d) as i64).sum();
            assert_eq!(mu_sum, if n == 1 { 1 } else { 0 });
            assert_eq!(ds.iter().map(|&d| euler_phi(d)).sum::<u64>(), n);
        }
    }

    #[test]
    fn lcm_gcd() {
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(lcm(0, 6), 0);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }
}
