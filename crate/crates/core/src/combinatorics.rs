//! Exact binomial coefficients, the numbers `A(n, l)` and their classical
//! relatives, and the mod-2 binomial machinery (dyadic digits, Lucas, and the
//! base-4 reductions).
//!
//! Everything here is exact. Integers are [`BigInt`]/[`BigUint`] and
//! rationals are [`BigRational`], always kept in lowest terms.

use std::cell::RefCell;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Ordinary binomial coefficient `C(n, k)` for `0 <= k`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// Generalised binomial coefficient `x (x - 1) ... (x - n + 1) / n!` for a
/// rational upper argument.
pub fn binom_general(x: &BigRational, n: u64) -> BigRational {
    if x.is_integer() {
        // C(x, n) = C(n + k, n) with k = x - n
        let k = x.to_integer() - BigInt::from(n);
        return BigRational::from_integer(binom_nk(n, &k));
    }
    // With x = p/q the falling factorial is prod (p - i q) / q^n.
    let p = x.numer();
    let q = x.denom();
    let mut numer = BigInt::one();
    let mut offset = BigInt::zero();
    for _ in 0..n {
        numer *= p - &offset;
        offset += q;
    }
    let denom = num_traits::pow(q.clone(), n as usize) * factorial(n);
    BigRational::new(numer, denom)
}

/// `C(n + k, n)` for any integer `k`, which is always an integer.
///
/// Zero on the band `-n <= k <= -1`, where one of the factors vanishes.
pub fn binom_nk(n: u64, k: &BigInt) -> BigInt {
    // C(k + i, i) = C(k + i - 1, i - 1) * (k + i) / i is integral at every step.
    let mut acc = BigInt::one();
    for i in 1..=n {
        let top = k + BigInt::from(i);
        if top.is_zero() {
            return BigInt::zero();
        }
        acc = acc * top / BigInt::from(i);
    }
    acc
}

/// Base-2 digits of a non-negative integer, least significant first.
///
/// The expansion of zero is empty; otherwise the last digit is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DyadicExpansion {
    bits: Vec<u8>,
}

impl DyadicExpansion {
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The digit `a_i(n)`; zero past the top bit.
    pub fn digit(&self, i: usize) -> u8 {
        self.bits.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn value(&self) -> BigUint {
        self.bits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &b| (acc << 1u32) + BigUint::from(b))
    }

    /// True iff no position carries a 1 in both expansions, i.e.
    /// `a_i(self) + a_i(other) <= 1` for every `i`.
    pub fn disjoint(&self, other: &DyadicExpansion) -> bool {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .all(|(a, b)| a + b <= 1)
    }
}

impl From<u64> for DyadicExpansion {
    fn from(n: u64) -> Self {
        dyadic(&BigUint::from(n))
    }
}

/// Dyadic expansion of `n`.
pub fn dyadic(n: &BigUint) -> DyadicExpansion {
    let bits = (0..n.bits()).map(|i| u8::from(n.bit(i))).collect();
    DyadicExpansion { bits }
}

fn dyadic_of_nonneg(n: &BigInt) -> DyadicExpansion {
    dyadic(&n.to_biguint().expect("non-negative integer"))
}

/// `C(top, bottom) mod 2` by Lucas: the product of the digit binomials
/// `C(a_i(top), a_i(bottom))`, each of which is 0 only for `C(0, 1)`.
fn lucas_digits(top: &DyadicExpansion, bottom: &DyadicExpansion) -> u8 {
    let width = top.len().max(bottom.len());
    (0..width)
        .map(|i| u8::from(!(top.digit(i) == 0 && bottom.digit(i) == 1)))
        .product()
}

/// `C(n + k, n) mod 2` via the dyadic digits of the arguments.
pub fn binom_mod2_lucas(n: u64, k: &BigInt) -> u8 {
    let bottom = DyadicExpansion::from(n);
    let n_big = BigInt::from(n);
    if !k.is_negative() {
        return lucas_digits(&dyadic_of_nonneg(&(&n_big + k)), &bottom);
    }
    if *k >= -&n_big {
        return 0;
    }
    // C(n + k, n) = (-1)^n C(-k - 1, n); the sign is invisible mod 2.
    let reflected = -k - BigInt::one();
    lucas_digits(&dyadic_of_nonneg(&reflected), &bottom)
}

/// Whether `C(n + k, n)` is odd, decided by digit disjointness:
/// `a_i(n) + a_i(k) <= 1` for `k >= 0`, `a_i(-k - 1 - n) + a_i(n) <= 1`
/// for `k < -n`, and never on the zero band in between.
pub fn binom_odd_iff(n: u64, k: &BigInt) -> bool {
    let n_digits = DyadicExpansion::from(n);
    let n_big = BigInt::from(n);
    if !k.is_negative() {
        return n_digits.disjoint(&dyadic_of_nonneg(k));
    }
    if *k >= -&n_big {
        return false;
    }
    let rest = -k - BigInt::one() - n_big;
    dyadic_of_nonneg(&rest).disjoint(&n_digits)
}

/// `C(m + n, n) mod 2` by repeated base-4 reduction: zero if `n m` or
/// `[n/2][m/2]` is odd, otherwise the same question for `([m/4], [n/4])`.
pub fn binom_mod2_reduced(m: u64, n: u64) -> u8 {
    let (mut m, mut n) = (m, n);
    loop {
        if (n & m & 1) == 1 || ((n >> 1) & (m >> 1) & 1) == 1 {
            return 0;
        }
        if m == 0 || n == 0 {
            return 1;
        }
        m >>= 2;
        n >>= 2;
    }
}

/// Right-hand side of `C(4m + n, 4m) ≡ C(m + [n/4], m) (mod 2)`.
pub fn binom_mod2_4m(m: u64, n: u64) -> u8 {
    binom_mod2_lucas(m, &BigInt::from(n / 4))
}

/// Right-hand side of the reduction for `C(4m + 1 + n, 4m + 1) mod 2`:
/// zero for odd `n`, else `C(m + [n/4], m) mod 2`.
pub fn binom_mod2_4m_plus_1(m: u64, n: u64) -> u8 {
    if n % 2 == 1 {
        0
    } else {
        binom_mod2_lucas(m, &BigInt::from(n / 4))
    }
}

/// Row-major memo of `A(n, l)` grown by the recurrence
/// `A(n, l) = l/n (A(n-1, l) + A(n-1, l-1))`, `A(0, 0) = 1`.
#[derive(Clone, Debug)]
pub struct ATable {
    rows: Vec<Vec<BigRational>>,
}

impl Default for ATable {
    fn default() -> Self {
        Self::new()
    }
}

impl ATable {
    pub fn new() -> Self {
        ATable {
            rows: vec![vec![BigRational::one()]],
        }
    }

    fn grow_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len();
            let prev = &self.rows[m - 1];
            let m_big = BigInt::from(m);
            let row = (0..=m)
                .map(|l| {
                    let here = prev.get(l).cloned().unwrap_or_else(BigRational::zero);
                    let left = if l == 0 {
                        BigRational::zero()
                    } else {
                        prev[l - 1].clone()
                    };
                    (here + left) * BigRational::new(BigInt::from(l), m_big.clone())
                })
                .collect();
            self.rows.push(row);
        }
    }

    pub fn get(&mut self, n: u64, l: i64) -> BigRational {
        if l < 0 || l as u64 > n {
            return BigRational::zero();
        }
        self.grow_to(n as usize);
        self.rows[n as usize][l as usize].clone()
    }
}

thread_local! {
    static A_TABLE: RefCell<ATable> = RefCell::new(ATable::new());
}

/// `A(n, l) = l!/n! S(n, l)`; zero outside `0 <= l <= n`.
pub fn a_number(n: u64, l: i64) -> BigRational {
    A_TABLE.with(|t| t.borrow_mut().get(n, l))
}

/// `A(n, l)` from its defining alternating sum
/// `1/n! sum_m (-1)^(l-m) C(l, m) m^n`. Slow; kept as a cross-check of
/// [`a_number`].
pub fn a_number_explicit(n: u64, l: i64) -> BigRational {
    if l < 0 || l as u64 > n {
        return BigRational::zero();
    }
    BigRational::new(alternating_power_sum(n, l as u64), factorial(n))
}

/// `sum_{m=0}^{l} (-1)^(l-m) C(l, m) m^n`, with `0^0 = 1`.
fn alternating_power_sum(n: u64, l: u64) -> BigInt {
    (0..=l).fold(BigInt::zero(), |acc, m| {
        let term = binomial(l, m) * num_traits::pow(BigInt::from(m), n as usize);
        if (l - m).is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Stirling numbers of the second kind, rows `0..=n`, from
/// `S(n, l) = l S(n-1, l) + S(n-1, l-1)`.
pub fn stirling2_rows(n: u64) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for m in 1..=n as usize {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|l| {
                let here = prev.get(l).cloned().unwrap_or_else(BigInt::zero);
                let left = if l == 0 {
                    BigInt::zero()
                } else {
                    prev[l - 1].clone()
                };
                here * BigInt::from(l) + left
            })
            .collect();
        rows.push(row);
    }
    rows
}

pub fn stirling2(n: u64, l: u64) -> BigInt {
    if l > n {
        return BigInt::zero();
    }
    stirling2_rows(n)[n as usize][l as usize].clone()
}

/// Bell number as the Stirling row sum.
pub fn bell(n: u64) -> BigInt {
    stirling2_rows(n)[n as usize].iter().sum()
}

/// `B_n(0)`, the Bernoulli numbers of `x/(e^x - 1)`, as
/// `sum_l (-1)^l n!/(l+1) A(n, l)`.
pub fn bernoulli0(n: u64) -> BigRational {
    let n_fact = BigRational::from_integer(factorial(n));
    (0..=n as i64).fold(BigRational::zero(), |acc, l| {
        let term = a_number(n, l) * &n_fact / BigRational::from_integer(BigInt::from(l + 1));
        if l % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// The `l`-th divided difference of `x^n` at the nodes `0, 1, ..., l`,
/// `1/l! sum_m (-1)^(l-m) C(l, m) m^n`.
pub fn divided_difference_power(n: u64, l: u64) -> BigRational {
    BigRational::new(alternating_power_sum(n, l), factorial(l))
}

/// Parity of an integer-valued rational as 0/1, or `None` if it is not an
/// integer.
pub fn parity(x: &BigRational) -> Option<u8> {
    x.is_integer().then(|| u8::from(x.to_integer().is_odd()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Parity of C(n + k, n) from the signed falling-factorial product,
    /// computed without any shortcut.
    fn product_parity(n: u64, k: i64) -> u8 {
        let mut num = BigInt::one();
        for i in 1..=n as i64 {
            num *= BigInt::from(k + i);
        }
        let v = num / factorial(n);
        u8::from(v.is_odd())
    }

    #[test]
    fn generalised_binomial_examples() {
        assert_eq!(binom_general(&q(5, 1), 3), q(10, 1));
        assert_eq!(binom_general(&q(-2, 1), 2), q(3, 1));
        assert_eq!(binom_general(&q(1, 2), 1), q(1, 2));
        assert_eq!(binom_general(&q(7, 3), 0), q(1, 1));
        // C(1/2, 2) = (1/2)(-1/2)/2
        assert_eq!(binom_general(&q(1, 2), 2), q(-1, 8));
    }

    #[test]
    fn binom_nk_examples() {
        assert_eq!(binom_nk(3, &int(2)), int(10));
        assert_eq!(binom_nk(3, &int(-2)), int(0));
        assert_eq!(binom_nk(2, &int(-4)), int(3));
        // reflection: C(n + k, n) = (-1)^n C(-k - 1, n)
        assert_eq!(binom_nk(2, &int(-4)), binomial(3, 2));
        assert_eq!(binom_nk(0, &int(-7)), int(1));
    }

    #[test]
    fn binom_nk_zero_band() {
        for n in 1..12u64 {
            for k in -(n as i64)..=-1 {
                assert!(binom_nk(n, &int(k)).is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn dyadic_examples() {
        assert!(DyadicExpansion::from(0).is_empty());
        assert_eq!(DyadicExpansion::from(6).bits(), &[0, 1, 1]);
        assert_eq!(DyadicExpansion::from(11).bits(), &[1, 1, 0, 1]);
        assert_eq!(DyadicExpansion::from(11).value(), BigUint::from(11u32));
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binom_mod2_lucas(4, &int(1)), 1);
        assert_eq!(binom_mod2_lucas(4, &int(2)), 1);
        assert_eq!(binom_mod2_lucas(4, &int(-6)), 1);
        assert_eq!(binom_mod2_lucas(4, &int(-3)), 0);
    }

    #[test]
    fn odd_iff_examples() {
        assert!(binom_odd_iff(4, &int(2)));
        assert!(!binom_odd_iff(3, &int(1)));
        for n in 0..40 {
            assert!(binom_odd_iff(n, &int(0)));
        }
        // k = -n - 1: C(-1, n) = (-1)^n
        assert!(binom_odd_iff(5, &int(-6)));
    }

    #[test]
    fn reduced_examples() {
        assert_eq!(binom_mod2_reduced(1, 1), 0);
        assert_eq!(binom_mod2_reduced(4, 4), 0);
        assert_eq!(binom_mod2_reduced(8, 4), 1);
        assert_eq!(binom_mod2_reduced(0, 0), 1);
    }

    #[test]
    fn prop_checks_examples() {
        assert_eq!(binom_mod2_4m(1, 4), 0);
        assert_eq!(binomial(8, 4), int(70));
        assert_eq!(binom_mod2_4m_plus_1(1, 3), 0);
        assert_eq!(binom_mod2_4m_plus_1(1, 4), 0);
        assert_eq!(binomial(9, 5), int(126));
    }

    #[test]
    fn a_number_examples() {
        assert_eq!(a_number(2, 1), q(1, 2));
        assert_eq!(a_number(2, 2), q(1, 1));
        assert_eq!(a_number(5, 2), q(1, 4));
        assert_eq!(a_number(0, 0), q(1, 1));
        assert_eq!(a_number(3, -1), q(0, 1));
        assert_eq!(a_number(3, 4), q(0, 1));
    }

    #[test]
    fn a_number_three_routes_agree() {
        for n in 0..=14u64 {
            for l in 0..=n {
                let rec = a_number(n, l as i64);
                assert_eq!(rec, a_number_explicit(n, l as i64), "n={n} l={l}");
                let via_s = BigRational::new(factorial(l) * stirling2(n, l), factorial(n));
                assert_eq!(rec, via_s, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn stirling_bell_bernoulli_examples() {
        assert_eq!(stirling2(4, 2), int(7));
        assert_eq!(bell(4), int(15));
        assert_eq!(bernoulli0(0), q(1, 1));
        assert_eq!(bernoulli0(1), q(-1, 2));
        assert_eq!(bernoulli0(2), q(1, 6));
        assert_eq!(bernoulli0(3), q(0, 1));
        assert_eq!(bernoulli0(4), q(-1, 30));
    }

    /// Number of set partitions of {0..n} into exactly l blocks, by
    /// enumerating restricted growth strings.
    fn brute_partitions(n: usize, l: usize) -> u64 {
        fn go(i: usize, n: usize, max: usize, l: usize) -> u64 {
            if i == n {
                return u64::from(max == l);
            }
            (0..=max.min(l.saturating_sub(1)))
                .map(|b| go(i + 1, n, max.max(b + 1), l))
                .sum()
        }
        if n == 0 {
            return u64::from(l == 0);
        }
        go(0, n, 0, l)
    }

    #[test]
    fn stirling_matches_enumeration() {
        for n in 0..=8usize {
            for l in 0..=n {
                assert_eq!(
                    stirling2(n as u64, l as u64),
                    BigInt::from(brute_partitions(n, l)),
                    "n={n} l={l}"
                );
            }
        }
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(divided_difference_power(3, 3), q(1, 1));
        assert_eq!(divided_difference_power(3, 4), q(0, 1));
        assert_eq!(divided_difference_power(3, 2), q(3, 1));
    }

    /// Newton's divided-difference table on nodes 0..=l for x^n.
    fn newton_divided_difference(n: u64, l: usize) -> BigRational {
        let mut col: Vec<BigRational> = (0..=l)
            .map(|x| BigRational::from_integer(num_traits::pow(BigInt::from(x), n as usize)))
            .collect();
        for width in 1..=l {
            col = (0..col.len() - 1)
                .map(|i| (&col[i + 1] - &col[i]) / BigRational::from_integer(BigInt::from(width)))
                .collect();
        }
        col[0].clone()
    }

    #[test]
    fn divided_difference_matches_newton_table() {
        for n in 0..=10u64 {
            for l in 0..=12usize {
                assert_eq!(
                    divided_difference_power(n, l as u64),
                    newton_divided_difference(n, l),
                    "n={n} l={l}"
                );
            }
        }
    }

    #[test]
    fn lucas_matches_product_parity_small() {
        for n in 0..40u64 {
            for k in -80..80i64 {
                assert_eq!(
                    binom_mod2_lucas(n, &int(k)),
                    product_parity(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn binom_general_integer_tops_are_integral() {
        for x in -20..20i64 {
            for n in 0..10u64 {
                assert!(binom_general(&q(x, 1), n).is_integer());
            }
        }
    }

    #[test]
    fn parity_of_rationals() {
        assert_eq!(parity(&q(3, 1)), Some(1));
        assert_eq!(parity(&q(-4, 1)), Some(0));
        assert_eq!(parity(&q(1, 2)), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn dyadic_reconstructs(n in any::<u64>()) {
                let d = DyadicExpansion::from(n);
                prop_assert_eq!(d.value(), BigUint::from(n));
                prop_assert!(d.bits().iter().all(|&b| b <= 1));
                if n > 0 {
                    prop_assert_eq!(*d.bits().last().unwrap(), 1);
                }
            }

            #[test]
            fn reduced_matches_lucas(m in 0u64..5000, n in 0u64..5000) {
                prop_assert_eq!(binom_mod2_reduced(m, n), binom_mod2_lucas(n, &BigInt::from(m)));
            }

            #[test]
            fn odd_iff_matches_lucas(n in 0u64..2000, k in -5000i64..5000) {
                let k = BigInt::from(k);
                prop_assert_eq!(binom_odd_iff(n, &k), binom_mod2_lucas(n, &k) == 1);
            }

            #[test]
            fn binom_general_matches_binom_nk(n in 0u64..12, k in -30i64..30) {
                let x = BigRational::from_integer(BigInt::from(n as i64 + k));
                prop_assert_eq!(
                    binom_general(&x, n),
                    BigRational::from_integer(binom_nk(n, &BigInt::from(k)))
                );
            }
        }
    }
}
