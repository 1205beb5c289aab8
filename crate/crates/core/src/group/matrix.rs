use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

/// A 2x2 matrix over `Z/N` with determinant one.
///
/// Field order gives the lexicographic `(a, b, c, d)` ordering used as the
/// canonical element order everywhere in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModMatrix {
    level: u32,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
}

impl ModMatrix {
    /// Reduces integer entries mod `level`; `None` if the determinant is not 1 mod `level`.
    pub fn new(level: u32, a: i64, b: i64, c: i64, d: i64) -> Option<Self> {
        assert!(level >= 1, "level must be positive");
        let n = level as i64;
        let r = |x: i64| x.rem_euclid(n) as u32;
        let m = ModMatrix { level, a: r(a), b: r(b), c: r(c), d: r(d) };
        (m.det() == 1 % level).then_some(m)
    }

    pub(crate) fn from_residues(level: u32, a: u32, b: u32, c: u32, d: u32) -> Self {
        ModMatrix { level, a, b, c, d }
    }

    pub fn identity(level: u32) -> Self {
        Self::new(level, 1, 0, 0, 1).unwrap()
    }

    pub fn minus_identity(level: u32) -> Self {
        Self::new(level, -1, 0, 0, -1).unwrap()
    }

    /// `S = [[0, -1], [1, 0]]`.
    pub fn s(level: u32) -> Self {
        Self::new(level, 0, -1, 1, 0).unwrap()
    }

    /// `T = [[1, 1], [0, 1]]`.
    pub fn t(level: u32) -> Self {
        Self::new(level, 1, 1, 0, 1).unwrap()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> [u32; 4] {
        [self.a, self.b, self.c, self.d]
    }

    fn det(&self) -> u32 {
        let n = self.level as u64;
        let ad = self.a as u64 * self.d as u64 % n;
        let bc = self.b as u64 * self.c as u64 % n;
        ((ad + n - bc) % n) as u32
    }

    pub fn inverse(&self) -> Self {
        let n = self.level;
        let neg = |x: u32| (n - x) % n;
        ModMatrix { level: n, a: self.d, b: neg(self.b), c: neg(self.c), d: self.a }
    }

    pub fn neg(&self) -> Self {
        let n = self.level;
        let neg = |x: u32| (n - x) % n;
        ModMatrix { level: n, a: neg(self.a), b: neg(self.b), c: neg(self.c), d: neg(self.d) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.level)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut x = *self;
        while !x.is_identity() {
            x = x * *self;
            k += 1;
        }
        k
    }

    /// Image under reduction to a level dividing this one.
    pub fn reduce(&self, level: u32) -> Self {
        assert!(self.level % level == 0, "level {level} does not divide {}", self.level);
        ModMatrix {
            level,
            a: self.a % level,
            b: self.b % level,
            c: self.c % level,
            d: self.d % level,
        }
    }
}

impl Mul for ModMatrix {
    type Output = ModMatrix;

    fn mul(self, rhs: ModMatrix) -> ModMatrix {
        debug_assert_eq!(self.level, rhs.level);
        let n = self.level as u64;
        let f = |x: u32, y: u32, z: u32, w: u32| {
            ((x as u64 * y as u64 + z as u64 * w as u64) % n) as u32
        };
        ModMatrix {
            level: self.level,
            a: f(self.a, rhs.a, self.b, rhs.c),
            b: f(self.a, rhs.b, self.b, rhs.d),
            c: f(self.c, rhs.a, self.d, rhs.c),
            d: f(self.c, rhs.b, self.d, rhs.d),
        }
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}] mod {}", self.a, self.b, self.c, self.d, self.level)
    }
}
