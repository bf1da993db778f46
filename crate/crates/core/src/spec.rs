//! The input data `(n1, n2, I, d1, d2)` of a twisted Milnor hypersurface.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A smooth hypersurface Poincaré dual to `d1 u + d2 v` in the projective
/// bundle `CP(η^{i_1} ⊕ ... ⊕ η^{i_{n2}} ⊕ C)` over `CP^{n1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistSpec {
    n1: u32,
    n2: u32,
    twist: Vec<i64>,
    d1: i64,
    d2: i64,
}

impl TwistSpec {
    pub fn new(n1: u32, n2: u32, twist: Vec<i64>, d1: i64, d2: i64) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::Dimension { n1, n2 });
        }
        if twist.len() != n2 as usize {
            return Err(Error::TwistLength {
                expected: n2 as usize,
                got: twist.len(),
            });
        }
        Ok(TwistSpec {
            n1,
            n2,
            twist,
            d1,
            d2,
        })
    }

    /// The untwisted Milnor-type spec `I = 0`.
    pub fn untwisted(n1: u32, n2: u32, d1: i64, d2: i64) -> Result<Self> {
        Self::new(n1, n2, vec![0; n2 as usize], d1, d2)
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn n2(&self) -> u32 {
        self.n2
    }

    pub fn twist(&self) -> &[i64] {
        &self.twist
    }

    pub fn d1(&self) -> i64 {
        self.d1
    }

    pub fn d2(&self) -> i64 {
        self.d2
    }

    /// Same bundle, hypersurface class `-(d1 u + d2 v)`.
    pub fn negated_degrees(&self) -> Self {
        TwistSpec {
            d1: -self.d1,
            d2: -self.d2,
            ..self.clone()
        }
    }

    /// Real dimension `2(n1 + n2) - 2` of the hypersurface.
    pub fn dim_real(&self) -> u64 {
        2 * (u64::from(self.n1) + u64::from(self.n2)) - 2
    }

    /// `σ_1 = Σ i_j`.
    pub fn sigma1(&self) -> BigInt {
        self.twist.iter().map(|&i| BigInt::from(i)).sum()
    }

    /// `σ_2 = Σ_{j<k} i_j i_k`.
    pub fn sigma2(&self) -> BigInt {
        let mut prefix = BigInt::zero();
        let mut acc = BigInt::zero();
        for &i in &self.twist {
            let i = BigInt::from(i);
            acc += &prefix * &i;
            prefix += i;
        }
        acc
    }
}

impl fmt::Display for TwistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let twist: Vec<String> = self.twist.iter().map(i64::to_string).collect();
        write!(
            f,
            "H^({})_{{{},{}}}({},{})",
            twist.join(","),
            self.n1,
            self.n2,
            self.d1,
            self.d2
        )
    }
}
