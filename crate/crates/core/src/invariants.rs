//! Spin condition, the closed-form sum `F_{n1,n2,I}(d1, d2)`, the Â-genus,
//! the α-invariant, PSC verdicts and the circle-action obstruction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{binom_general, binom_nk, binomial, dyadic, DyadicExpansion};
use crate::error::{Error, Result};
use crate::spec::TwistSpec;

/// Whether the hypersurface carries the spin structure induced from the
/// spin^c structure of the ambient bundle, and if so the integers `k1, k2`
/// with `d1 = 2 k1 + n1 + 1 - σ_1`, `d2 = 2 k2 + n2 + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpinData {
    Spin { k1: BigInt, k2: BigInt },
    NotSpin,
}

impl SpinData {
    pub fn is_spin(&self) -> bool {
        matches!(self, SpinData::Spin { .. })
    }

    pub fn ks(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            SpinData::Spin { k1, k2 } => Some((k1, k2)),
            SpinData::NotSpin => None,
        }
    }
}

pub fn spin_check(spec: &TwistSpec) -> SpinData {
    let e1: BigInt = BigInt::from(spec.d1()) - BigInt::from(spec.n1()) - 1 + spec.sigma1();
    let e2: BigInt = BigInt::from(spec.d2()) - BigInt::from(spec.n2()) - 1;
    if e1.is_even() && e2.is_even() {
        SpinData::Spin {
            k1: e1 / 2,
            k2: e2 / 2,
        }
    } else {
        SpinData::NotSpin
    }
}

fn spin_ks(spec: &TwistSpec) -> Result<(BigInt, BigInt)> {
    match spin_check(spec) {
        SpinData::Spin { k1, k2 } => Ok((k1, k2)),
        SpinData::NotSpin => Err(Error::NotSpin {
            d1: spec.d1(),
            d2: spec.d2(),
        }),
    }
}

/// `l_1, ..., l_r >= 1` with `Σ l_j <= total`, in lexicographic order.
fn compositions(r: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(r: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in 1..=total.saturating_sub(r as u32 - 1) {
            prefix.push(first);
            go(r - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(r, total, &mut Vec::with_capacity(r), &mut out);
    out
}

/// `r`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == r {
            out.push(prefix.clone());
            return;
        }
        for i in start..n {
            prefix.push(i);
            go(i + 1, n, r, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// `Σ_m (-1)^{Σ m_j} Π C(l_j, m_j) C(top1 - Σ s_j m_j, n1)` over
/// `0 <= m_j <= l_j`.
fn alternating_m_sum(top1: &BigRational, n1: u64, weights: &[i64], ls: &[u32]) -> BigRational {
    let mut total = BigRational::zero();
    let mut ms = vec![0u32; ls.len()];
    loop {
        let mut coeff = BigInt::one();
        let mut shift = BigInt::zero();
        for ((&m, &l), &w) in ms.iter().zip(ls).zip(weights) {
            coeff *= binomial(u64::from(l), u64::from(m));
            shift += BigInt::from(w) * BigInt::from(m);
        }
        if ms.iter().map(|&m| u64::from(m)).sum::<u64>() % 2 == 1 {
            coeff = -coeff;
        }
        let top = top1 - BigRational::from_integer(shift);
        total += binom_general(&top, n1) * BigRational::from_integer(coeff);

        // odometer over the box Π [0, l_j]
        let mut i = 0;
        while i < ms.len() && ms[i] == ls[i] {
            ms[i] = 0;
            i += 1;
        }
        if i == ms.len() {
            return total;
        }
        ms[i] += 1;
    }
}

/// The closed-form sum over subsets of twist indices, compositions
/// `l_j >= 1` with `Σ l_j <= n1`, and `0 <= m_j <= l_j`, of
///
/// ```text
/// (-1)^{Σ m_j} C(l, m) C((d1+n1-1+σ1)/2 - Σ i_{s_j} m_j, n1) C((d2+n2-1)/2 + Σ l_j - r, n2 + Σ l_j)
/// ```
///
/// Tops may be half-integers. Subsets touching a zero twist contribute
/// nothing (their `m`-sum is an alternating binomial sum), so only nonzero
/// twists are enumerated.
pub fn f_closed(spec: &TwistSpec) -> BigRational {
    let nonzero: Vec<i64> = spec.twist().iter().copied().filter(|&i| i != 0).collect();
    f_closed_over(spec, &nonzero)
}

/// [`f_closed`] with subsets drawn from the given twist entries.
fn f_closed_over(spec: &TwistSpec, entries: &[i64]) -> BigRational {
    let n1 = spec.n1();
    let n2 = u64::from(spec.n2());
    let top1 = BigRational::new(
        BigInt::from(spec.d1()) + BigInt::from(n1) - 1 + spec.sigma1(),
        BigInt::from(2),
    );
    let top2 = BigRational::new(
        BigInt::from(spec.d2()) + BigInt::from(n2) - 1,
        BigInt::from(2),
    );

    let mut total = BigRational::zero();
    for r in 0..=entries.len().min(n1 as usize) {
        let subs = subsets(entries.len(), r);
        for ls in compositions(r, n1) {
            let big_l: u32 = ls.iter().sum();
            // depends only on (r, Σ l_j): evaluated once per composition
            let shift = BigRational::from_integer(BigInt::from(i64::from(big_l) - r as i64));
            let b2 = binom_general(&(&top2 + shift), n2 + u64::from(big_l));
            if b2.is_zero() {
                continue;
            }
            for sub in &subs {
                let weights: Vec<i64> = sub.iter().map(|&j| entries[j]).collect();
                total += alternating_m_sum(&top1, u64::from(n1), &weights, &ls) * &b2;
            }
        }
    }
    total
}

/// Whether `n1 + n2` is odd, i.e. the real dimension is divisible by 4.
fn dim_divisible_by_4(spec: &TwistSpec) -> bool {
    (spec.n1() + spec.n2()) % 2 == 1
}

/// The Â-genus.
///
/// In real dimension `4m` this is `F(d1, d2) - F(-d1, -d2)`; otherwise it is
/// 0 by convention. For spin hypersurfaces the value is an integer and a
/// non-integral result is reported as [`Error::IntegralityViolation`]. For
/// non-spin hypersurfaces the Â-number can be a genuine fraction (the
/// hyperplane `H_{1,2}(1,0) = CP^2` gives `-1/8`), so it is returned as a
/// rational.
pub fn a_hat(spec: &TwistSpec) -> Result<BigRational> {
    if !dim_divisible_by_4(spec) {
        return Ok(BigRational::zero());
    }
    let value = f_closed(spec) - f_closed(&spec.negated_degrees());
    if spin_check(spec).is_spin() && !value.is_integer() {
        return Err(Error::IntegralityViolation {
            context: "Â-genus of a spin hypersurface",
            value,
        });
    }
    Ok(value)
}

/// `F(d1, d2) - F(-d1, -d2)` regardless of dimension. Outside dimensions
/// divisible by 4 it is not the Â-genus and carries no claim.
pub fn f_difference(spec: &TwistSpec) -> BigRational {
    f_closed(spec) - f_closed(&spec.negated_degrees())
}

/// `KO_n(pt)` for `n mod 8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KoGroup {
    Z,
    Z2,
    Trivial,
}

impl KoGroup {
    pub fn for_degree(n_mod_8: u8) -> Self {
        match n_mod_8 % 8 {
            0 | 4 => KoGroup::Z,
            1 | 2 => KoGroup::Z2,
            _ => KoGroup::Trivial,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KoGroup::Z => "Z",
            KoGroup::Z2 => "Z2",
            KoGroup::Trivial => "0",
        }
    }
}

impl fmt::Display for KoGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KoValue {
    Integer(BigInt),
    Bit(u8),
    Trivial,
}

/// An element of `KO_n(pt)`, tagged with `n mod 8`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KoClass {
    n_mod_8: u8,
    value: KoValue,
}

impl KoClass {
    /// Pairs a value with its degree, rejecting values of the wrong group.
    pub fn new(n_mod_8: u8, value: KoValue) -> Option<Self> {
        let n_mod_8 = n_mod_8 % 8;
        let ok = matches!(
            (KoGroup::for_degree(n_mod_8), &value),
            (KoGroup::Z, KoValue::Integer(_))
                | (KoGroup::Z2, KoValue::Bit(0 | 1))
                | (KoGroup::Trivial, KoValue::Trivial)
        );
        ok.then_some(KoClass { n_mod_8, value })
    }

    pub fn n_mod_8(&self) -> u8 {
        self.n_mod_8
    }

    pub fn group(&self) -> KoGroup {
        KoGroup::for_degree(self.n_mod_8)
    }

    pub fn value(&self) -> &KoValue {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            KoValue::Integer(v) => v.is_zero(),
            KoValue::Bit(b) => *b == 0,
            KoValue::Trivial => true,
        }
    }

    /// The value as a decimal string; `None` for the trivial group.
    pub fn value_string(&self) -> Option<String> {
        match &self.value {
            KoValue::Integer(v) => Some(v.to_string()),
            KoValue::Bit(b) => Some(b.to_string()),
            KoValue::Trivial => None,
        }
    }
}

fn expect_integer(context: &'static str, value: BigRational) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::IntegralityViolation { context, value })
    }
}

/// The α-invariant of a spin hypersurface, computed from Â in dimensions
/// `0, 4 mod 8` and from `F(d1, d2) mod 2` in dimension `2 mod 8`.
pub fn alpha(spec: &TwistSpec) -> Result<KoClass> {
    spin_ks(spec)?;
    let n_mod_8 = (spec.dim_real() % 8) as u8;
    let value = match n_mod_8 {
        0 => KoValue::Integer(expect_integer("Â-genus", a_hat(spec)?)?),
        4 => {
            let a = expect_integer("Â-genus", a_hat(spec)?)?;
            if a.is_odd() {
                return Err(Error::IntegralityViolation {
                    context: "Â/2 in dimension 4 mod 8",
                    value: BigRational::new(a, BigInt::from(2)),
                });
            }
            KoValue::Integer(a / 2)
        }
        2 => {
            let f = expect_integer("F(d1, d2) of a spin hypersurface", f_closed(spec))?;
            KoValue::Bit(u8::from(f.is_odd()))
        }
        _ => KoValue::Trivial,
    };
    Ok(KoClass { n_mod_8, value })
}

fn bit(x: &BigInt) -> u8 {
    u8::from(x.is_odd())
}

/// Exact half of an integer known to be even.
fn half(x: BigInt) -> BigInt {
    debug_assert!(x.is_even(), "{x} is odd");
    x / 2
}

fn check_shape(spec: &TwistSpec, n1: u32, n2_mod_4: u32) -> Result<()> {
    if spec.n1() != n1 || spec.n2() % 4 != n2_mod_4 {
        return Err(Error::WrongShape(format!(
            "needs n1 = {n1} and n2 ≡ {n2_mod_4} mod 4, got n1 = {}, n2 = {}",
            spec.n1(),
            spec.n2()
        )));
    }
    Ok(())
}

/// α mod 2 for `n1 = 1`, `n2 ≡ 1 mod 4`:
/// `(k1 + 1) C(n2+k2, n2) + σ1 C(n2+k2, n2+1)`.
pub fn alpha_closed_n1_1(spec: &TwistSpec) -> Result<u8> {
    check_shape(spec, 1, 1)?;
    let (k1, k2) = spin_ks(spec)?;
    let n2 = u64::from(spec.n2());
    let km1 = &k2 - 1;
    let v = (&k1 + 1) * binom_nk(n2, &k2) + spec.sigma1() * binom_nk(n2 + 1, &km1);
    Ok(bit(&v))
}

/// α mod 2 for `n1 = 2`, `n2 ≡ 0 mod 4`. With `p = σ1² - 2σ2` and
/// `c = ((2k1 + 3)σ1 - p)/2` (always integral):
/// `C(k1+2, 2) C(n2+k2, n2) + c C(n2+k2, n2+1) + p C(n2+k2+1, n2+2) + σ2 C(n2+k2, n2+2)`.
pub fn alpha_closed_n1_2(spec: &TwistSpec) -> Result<u8> {
    check_shape(spec, 2, 0)?;
    let (k1, k2) = spin_ks(spec)?;
    let n2 = u64::from(spec.n2());
    let s1 = spec.sigma1();
    let s2 = spec.sigma2();
    let p = &s1 * &s1 - 2 * &s2;
    let c = half((2 * &k1 + 3) * &s1 - &p);
    let (km1, km2) = (&k2 - 1, &k2 - 2);
    let v = binom_nk(2, &k1) * binom_nk(n2, &k2)
        + c * binom_nk(n2 + 1, &km1)
        + p * binom_nk(n2 + 2, &km1)
        + s2 * binom_nk(n2 + 2, &km2);
    Ok(bit(&v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PscVerdict {
    Exists,
    Obstructed,
    /// Not spin, or of dimension below 5.
    Inapplicable,
}

impl PscVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            PscVerdict::Exists => "exists",
            PscVerdict::Obstructed => "obstructed",
            PscVerdict::Inapplicable => "inapplicable",
        }
    }
}

impl fmt::Display for PscVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// PSC by Stolz' criterion, assuming simple connectivity: for spin
/// hypersurfaces of dimension at least 5 a metric exists iff α vanishes.
pub fn psc_verdict(spec: &TwistSpec) -> Result<PscVerdict> {
    if !spin_check(spec).is_spin() || spec.dim_real() < 5 {
        return Ok(PscVerdict::Inapplicable);
    }
    Ok(if alpha(spec)?.is_zero() {
        PscVerdict::Exists
    } else {
        PscVerdict::Obstructed
    })
}

/// `a_i(x) + a_i(y) <= 1` for all `i`.
fn digits_disjoint(x: &BigInt, y: u64) -> bool {
    let x = x.to_biguint().expect("non-negative");
    dyadic(&x).disjoint(&DyadicExpansion::from(y))
}

fn residue4(x: &BigInt) -> u8 {
    x.mod_floor(&BigInt::from(4))
        .to_u8()
        .expect("residue below 4")
}

fn check_psc_shape(spec: &TwistSpec, n1: u32) -> Result<(BigInt, BigInt)> {
    if spec.n1() != n1 || (spec.n1() + spec.n2()) % 4 != 2 {
        return Err(Error::WrongShape(format!(
            "needs n1 = {n1} and n1 + n2 ≡ 2 mod 4, got n1 = {}, n2 = {}",
            spec.n1(),
            spec.n2()
        )));
    }
    spin_ks(spec)
}

/// True iff the hypersurface admits no PSC metric, for `n1 = 1`,
/// `n2 ≡ 1 mod 4`, decided from residues and dyadic digits only.
pub fn psc_dyadic_n1_1(spec: &TwistSpec) -> Result<bool> {
    let (k1, k2) = check_psc_shape(spec, 1)?;
    let n2 = u64::from(spec.n2());
    let s1 = spec.sigma1();
    let q = n2 / 4;
    let k1_even = k1.is_even();
    let s1_odd = s1.is_odd();
    let sum_even = (&k1 + &s1).is_even();

    if !k2.is_negative() {
        let t = digits_disjoint(&k2.div_floor(&BigInt::from(4)), q);
        return Ok(t
            && match residue4(&k2) {
                0 => k1_even,
                1 => s1_odd,
                2 => sum_even,
                _ => false,
            });
    }
    let neg = -&k2;
    if neg > BigInt::from(n2) {
        let rest: BigInt = &neg - 1 - BigInt::from(n2);
        let t = digits_disjoint(&rest.div_floor(&BigInt::from(4)), q);
        return Ok(t
            && match residue4(&neg) {
                0 => k1_even,
                2 => sum_even,
                3 => s1_odd,
                _ => false,
            });
    }
    // -n2 <= k2 < 0: every binomial in α vanishes
    Ok(false)
}

/// True iff the hypersurface admits no PSC metric, for `n1 = 2`,
/// `n2 ≡ 0 mod 4`, decided from residues and dyadic digits only.
pub fn psc_dyadic_n1_2(spec: &TwistSpec) -> Result<bool> {
    let (k1, k2) = check_psc_shape(spec, 2)?;
    let n2 = u64::from(spec.n2());
    let s1 = spec.sigma1();
    let s2 = spec.sigma2();
    let q = n2 / 4;
    let b = binom_nk(2, &k1);
    let k1_low = residue4(&k1) <= 1;
    let odd = |x: BigInt| x.is_odd();

    if !k2.is_negative() {
        let t = digits_disjoint(&k2.div_floor(&BigInt::from(4)), q);
        let c = match residue4(&k2) {
            0 => k1_low,
            1 => odd(&b + half(&s1 * &s1 - 2 * &s2 + (2 * &k1 + 3) * &s1)),
            2 => odd(&b + &s1 * &s1 - &s2),
            _ => odd(&b + half(&s1 * (2 * &k1 + 3 - &s1))),
        };
        return Ok(c && t);
    }
    let neg = -&k2;
    let n2_big = BigInt::from(n2);
    if neg == &n2_big + 1 {
        return Ok(odd(
            half((&k1 + 1) * (&k1 + 2)) + half(&s1 * (&s1 - 2 * &k1 - 3))
        ));
    }
    if neg > &n2_big + 1 {
        let rest: BigInt = &neg - 1 - &n2_big;
        let t = digits_disjoint(&rest.div_floor(&BigInt::from(4)), q);
        let c = match residue4(&neg) {
            0 => k1_low,
            1 => odd(&b + half(&s1 * (&s1 - 2 * &k1 - 3))),
            2 => odd(&b + &s1 * &s1 - &s2),
            _ => odd(&b + half((2 * &k1 + 3 + &s1) * &s1) - &s2),
        };
        return Ok(c && t);
    }
    Ok(false)
}

/// True when no nontrivial circle action can exist: the hypersurface is spin
/// with nonzero Â. `false` means "not obstructed by Â", not "an action
/// exists".
pub fn circle_action_obstruction(spec: &TwistSpec) -> Result<bool> {
    Ok(spin_check(spec).is_spin() && !a_hat(spec)?.is_zero())
}

/// Hypotheses the PSC verdict depends on but which are not decided here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Assumptions {
    /// Simple connectivity is assumed, never verified.
    pub simply_connected_assumed: bool,
    pub dim_ge_5: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub spec: TwistSpec,
    pub dim_real: u64,
    pub spin: SpinData,
    pub sigma1: BigInt,
    pub sigma2: BigInt,
    pub a_hat: BigRational,
    /// `None` when the hypersurface is not spin.
    pub alpha: Option<KoClass>,
    pub psc: PscVerdict,
    pub no_circle_action: bool,
    pub assumptions: Assumptions,
}

pub fn report(spec: &TwistSpec) -> Result<InvariantReport> {
    let spin = spin_check(spec);
    let a_hat = a_hat(spec)?;
    let alpha = if spin.is_spin() {
        Some(alpha(spec)?)
    } else {
        None
    };
    let dim_real = spec.dim_real();
    let psc = match &alpha {
        Some(a) if dim_real >= 5 => {
            if a.is_zero() {
                PscVerdict::Exists
            } else {
                PscVerdict::Obstructed
            }
        }
        _ => PscVerdict::Inapplicable,
    };
    let no_circle_action = spin.is_spin() && !a_hat.is_zero();
    Ok(InvariantReport {
        spec: spec.clone(),
        dim_real,
        sigma1: spec.sigma1(),
        sigma2: spec.sigma2(),
        spin,
        a_hat,
        alpha,
        psc,
        no_circle_action,
        assumptions: Assumptions {
            simply_connected_assumed: true,
            dim_ge_5: dim_real >= 5,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{genus_pairing, ExpSign};

    fn spec(n1: u32, n2: u32, twist: &[i64], d1: i64, d2: i64) -> TwistSpec {
        TwistSpec::new(n1, n2, twist.to_vec(), d1, d2).unwrap()
    }

    /// The spin spec with given `k1, k2`.
    fn spin_spec(n1: u32, n2: u32, twist: &[i64], k1: i64, k2: i64) -> TwistSpec {
        let s1: i64 = twist.iter().sum();
        spec(
            n1,
            n2,
            twist,
            2 * k1 + i64::from(n1) + 1 - s1,
            2 * k2 + i64::from(n2) + 1,
        )
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Twist vectors of length `n2` with at most `max_nonzero` nonzero
    /// entries drawn from `[-bound, bound]`.
    fn twists(n2: usize, max_nonzero: usize, bound: i64) -> Vec<Vec<i64>> {
        let values: Vec<i64> = (-bound..=bound).filter(|&v| v != 0).collect();
        let mut out = Vec::new();
        for nz in 0..=max_nonzero.min(n2) {
            for pos in subsets(n2, nz) {
                let mut idx = vec![0usize; nz];
                loop {
                    let mut t = vec![0i64; n2];
                    for (p, &i) in pos.iter().zip(&idx) {
                        t[*p] = values[i];
                    }
                    out.push(t);
                    let mut j = 0;
                    while j < nz && idx[j] + 1 == values.len() {
                        idx[j] = 0;
                        j += 1;
                    }
                    if j == nz {
                        break;
                    }
                    idx[j] += 1;
                }
            }
        }
        out
    }

    #[test]
    fn compositions_and_subsets_are_lexicographic() {
        assert_eq!(compositions(2, 3), vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(0, 3), vec![Vec::<u32>::new()]);
        assert!(compositions(3, 2).is_empty());
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn twist_generator_counts() {
        // 1 + 4·4 + C(4,2)·16
        assert_eq!(twists(4, 2, 2).len(), 113);
        assert_eq!(twists(1, 2, 2).len(), 5);
    }

    #[test]
    fn spin_examples() {
        assert_eq!(
            spin_check(&spec(1, 1, &[0], 2, 2)),
            SpinData::Spin {
                k1: 0.into(),
                k2: 0.into()
            }
        );
        assert_eq!(spin_check(&spec(1, 1, &[0], 1, 1)), SpinData::NotSpin);
        assert_eq!(
            spin_check(&spec(2, 3, &[2, 0, 0], 1, 4)),
            SpinData::Spin {
                k1: 0.into(),
                k2: 0.into()
            }
        );
    }

    #[test]
    fn f_closed_examples() {
        assert_eq!(f_closed(&spec(1, 1, &[0], 2, 2)), int(1));
        let s = spec(2, 3, &[2, 0, 0], 1, 4);
        assert_eq!(f_closed(&s), genus_pairing(&s, ExpSign::Plus));
        for n1 in 1..=3 {
            for twist in twists(2, 2, 2).into_iter().chain(twists(4, 2, 1)) {
                let n2 = twist.len() as u32;
                let s1: i64 = twist.iter().sum();
                for k1 in -2..=2 {
                    let d1 = 2 * k1 + i64::from(n1) + 1 - s1;
                    assert!(f_closed(&spec(n1, n2, &twist, d1, 1)).is_zero());
                }
            }
        }
    }

    #[test]
    fn pruning_zero_twists_changes_nothing() {
        for n1 in 1..=3 {
            for twist in [vec![0, 2, 0], vec![1, 0, -2], vec![0, 0, 0], vec![-1, 1, 2]] {
                for (d1, d2) in [(1, 4), (0, 0), (-3, 2), (2, -5)] {
                    let s = spec(n1, 3, &twist, d1, d2);
                    assert_eq!(f_closed(&s), f_closed_over(&s, s.twist()), "{s}");
                }
            }
        }
    }

    #[test]
    fn f_closed_matches_pairing_on_small_grid() {
        for n1 in 1..=2 {
            for n2 in 1..=3 {
                for twist in twists(n2 as usize, 2, 1) {
                    for (d1, d2) in [(1, 1), (0, 3), (-2, 1), (3, -2), (2, 2)] {
                        let s = spec(n1, n2, &twist, d1, d2);
                        assert_eq!(f_closed(&s), genus_pairing(&s, ExpSign::Plus), "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn f_closed_is_permutation_invariant() {
        let base = [2i64, -1, 0, 1];
        let perms = [[2, -1, 0, 1], [1, 0, -1, 2], [0, 2, 1, -1], [-1, 1, 2, 0]];
        for (d1, d2) in [(1, 5), (0, 0), (3, -1), (-2, 2)] {
            let reference = f_closed(&spec(3, 4, &base, d1, d2));
            for p in perms {
                assert_eq!(f_closed(&spec(3, 4, &p, d1, d2)), reference);
            }
        }
    }

    #[test]
    fn untwisted_f_factorises() {
        for n1 in 1..=3u32 {
            for n2 in 1..=4u32 {
                for k1 in -3..=3i64 {
                    for k2 in -3..=3i64 {
                        let s = spin_spec(n1, n2, &vec![0; n2 as usize], k1, k2);
                        let want =
                            binom_nk(n1.into(), &k1.into()) * binom_nk(n2.into(), &k2.into());
                        assert_eq!(f_closed(&s), BigRational::from_integer(want), "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn a_hat_examples() {
        assert_eq!(a_hat(&spec(1, 2, &[0, 0], 1, 1)).unwrap(), int(0));
        assert_eq!(a_hat(&spec(2, 3, &[2, 0, 0], 1, 4)).unwrap(), int(2));
        assert_eq!(a_hat(&spec(1, 2, &[0, 0], 4, 7)).unwrap(), int(24));
        // degree (1, 0) in CP^1 x CP^2 is CP^2: not spin, and Â is fractional
        assert_eq!(
            a_hat(&spec(1, 2, &[0, 0], 1, 0)).unwrap(),
            BigRational::new((-1).into(), 8.into())
        );
        // n1 + n2 even: zero by convention
        assert_eq!(a_hat(&spec(1, 1, &[0], 2, 2)).unwrap(), int(0));
    }

    #[test]
    fn a_hat_untwisted_doubles_the_product() {
        for (n1, n2) in [(1u32, 2u32), (2, 1), (2, 3), (3, 2), (1, 4)] {
            for k1 in -4..=4i64 {
                for k2 in -4..=4i64 {
                    let s = spin_spec(n1, n2, &vec![0; n2 as usize], k1, k2);
                    let want =
                        binom_nk(n1.into(), &k1.into()) * binom_nk(n2.into(), &k2.into()) * 2;
                    assert_eq!(a_hat(&s).unwrap(), BigRational::from_integer(want), "{s}");
                }
            }
        }
    }

    #[test]
    fn a_hat_single_twist_family() {
        for n2 in [1u32, 3, 5] {
            for j in (-6..=6i64).step_by(2) {
                let mut twist = vec![0; n2 as usize];
                twist[0] = j;
                let s = spec(2, n2, &twist, 1, i64::from(n2) + 1);
                assert_eq!(a_hat(&s).unwrap(), int((j / 2) * (j / 2 + 1)), "{s}");
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let a = alpha(&spec(1, 1, &[0], 2, 2)).unwrap();
        assert_eq!(
            (a.n_mod_8(), a.group(), a.value()),
            (2, KoGroup::Z2, &KoValue::Bit(1))
        );

        let a = alpha(&spec(2, 3, &[2, 0, 0], 1, 4)).unwrap();
        assert_eq!(a.group(), KoGroup::Z);
        assert_eq!(a.value(), &KoValue::Integer(2.into()));

        let a = alpha(&spin_spec(2, 2, &[0, 0], 1, 0)).unwrap();
        assert_eq!((a.n_mod_8(), a.group()), (6, KoGroup::Trivial));
        assert!(a.is_zero());

        assert_eq!(
            alpha(&spec(1, 1, &[0], 1, 1)),
            Err(Error::NotSpin { d1: 1, d2: 1 })
        );

        let s = spin_spec(1, 5, &[1, 0, 0, 0, 0], 1, 2);
        let a = alpha(&s).unwrap();
        assert_eq!(a.value(), &KoValue::Bit(alpha_closed_n1_1(&s).unwrap()));
    }

    #[test]
    fn alpha_in_dimension_4_mod_8_halves_a_hat() {
        // n1 + n2 = 3: dimension 4
        let s = spin_spec(1, 2, &[0, 0], 1, 2);
        let a = alpha(&s).unwrap();
        assert_eq!(a.n_mod_8(), 4);
        assert_eq!(
            BigRational::from_integer(match a.value() {
                KoValue::Integer(v) => v * 2,
                other => panic!("{other:?}"),
            }),
            a_hat(&s).unwrap()
        );
    }

    #[test]
    fn ko_class_rejects_mismatched_groups() {
        assert!(KoClass::new(2, KoValue::Integer(1.into())).is_none());
        assert!(KoClass::new(0, KoValue::Bit(1)).is_none());
        assert!(KoClass::new(1, KoValue::Bit(2)).is_none());
        assert!(KoClass::new(6, KoValue::Trivial).is_some());
        assert_eq!(
            KoClass::new(12, KoValue::Integer(3.into()))
                .unwrap()
                .n_mod_8(),
            4
        );
    }

    #[test]
    fn closed_alpha_examples() {
        assert_eq!(alpha_closed_n1_1(&spec(1, 5, &[0; 5], 2, 6)).unwrap(), 1);
        assert_eq!(
            alpha_closed_n1_1(&spin_spec(1, 5, &[0; 5], 1, 0)).unwrap(),
            0
        );
        assert_eq!(
            alpha_closed_n1_2(&spin_spec(2, 4, &[0; 4], 0, 0)).unwrap(),
            1
        );
        assert!(matches!(
            alpha_closed_n1_1(&spec(1, 4, &[0; 4], 2, 5)),
            Err(Error::WrongShape(_))
        ));
        assert!(matches!(
            alpha_closed_n1_2(&spec(2, 4, &[0; 4], 2, 5)),
            Err(Error::NotSpin { .. })
        ));
    }

    #[test]
    fn closed_alpha_and_dyadic_psc_agree_with_direct_alpha() {
        for (n1, n2) in [(1u32, 5u32), (2, 4)] {
            // k2 reaches every residue class on both sides of the zero band
            for twist in twists(n2 as usize, 2, 1) {
                for k1 in -4..=4 {
                    for k2 in -(i64::from(n2) + 6)..=4 {
                        let s = spin_spec(n1, n2, &twist, k1, k2);
                        let direct = match alpha(&s).unwrap().value() {
                            KoValue::Bit(b) => *b,
                            other => panic!("{other:?}"),
                        };
                        let (closed, dyadic) = if n1 == 1 {
                            (alpha_closed_n1_1(&s).unwrap(), psc_dyadic_n1_1(&s).unwrap())
                        } else {
                            (alpha_closed_n1_2(&s).unwrap(), psc_dyadic_n1_2(&s).unwrap())
                        };
                        assert_eq!(closed, direct, "{s}");
                        assert_eq!(dyadic, direct == 1, "{s}");
                        assert_eq!(
                            psc_verdict(&s).unwrap() == PscVerdict::Obstructed,
                            direct == 1
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn psc_examples() {
        assert_eq!(
            psc_verdict(&spec(1, 1, &[0], 2, 2)).unwrap(),
            PscVerdict::Inapplicable
        );
        assert_eq!(
            psc_verdict(&spec(1, 5, &[0; 5], 2, 6)).unwrap(),
            PscVerdict::Obstructed
        );
        assert_eq!(
            psc_verdict(&spec(1, 2, &[0, 0], 1, 1)).unwrap(),
            PscVerdict::Inapplicable
        );
        // degree (1, 1) spin hypersurfaces of dimension >= 5 always admit PSC
        for (n1, n2) in [(1u32, 4u32), (2, 3), (3, 4), (4, 1), (1, 6)] {
            for twist in twists(n2 as usize, 2, 2) {
                let s = spec(n1, n2, &twist, 1, 1);
                if spin_check(&s).is_spin() {
                    assert_eq!(psc_verdict(&s).unwrap(), PscVerdict::Exists, "{s}");
                }
            }
        }
    }

    #[test]
    fn dyadic_psc_examples() {
        for k2 in -5..0 {
            assert!(!psc_dyadic_n1_1(&spin_spec(1, 5, &[0; 5], 0, k2)).unwrap());
        }
        assert!(psc_dyadic_n1_1(&spin_spec(1, 5, &[0; 5], 2, 0)).unwrap());
        assert!(!psc_dyadic_n1_2(&spin_spec(2, 4, &[0; 4], 2, 0)).unwrap());
        // -k2 ≡ 3 mod 4 below the zero band with σ1 odd: the σ1-term is
        // (2k1 + 3 + σ1)σ1/2, and α vanishes here
        let s = spin_spec(2, 4, &[-1, 0, 0, 0], -4, -7);
        assert_eq!(alpha(&s).unwrap().value(), &KoValue::Bit(0));
        assert!(!psc_dyadic_n1_2(&s).unwrap());
        assert!(matches!(
            psc_dyadic_n1_2(&spin_spec(2, 5, &[0; 5], 0, 0)),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn circle_action_examples() {
        assert!(circle_action_obstruction(&spec(2, 3, &[2, 0, 0], 1, 4)).unwrap());
        assert!(!circle_action_obstruction(&spec(1, 2, &[0, 0], 1, 1)).unwrap());
        for twist in twists(2, 2, 2) {
            for d1 in -5..=5 {
                assert!(!circle_action_obstruction(&spec(3, 2, &twist, d1, 1)).unwrap());
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = report(&spec(1, 2, &[0, 0], 1, 1)).unwrap();
        assert!(!r.spin.is_spin());
        assert_eq!(r.a_hat, int(0));
        assert_eq!(r.alpha, None);
        assert_eq!(r.psc, PscVerdict::Inapplicable);
        assert!(!r.no_circle_action);

        let r = report(&spec(2, 3, &[2, 0, 0], 1, 4)).unwrap();
        assert_eq!(r.dim_real, 8);
        assert_eq!(r.spin.ks(), Some((&0.into(), &0.into())));
        assert_eq!(r.a_hat, int(2));
        assert_eq!(
            r.alpha.as_ref().unwrap().value(),
            &KoValue::Integer(2.into())
        );
        assert_eq!(r.psc, PscVerdict::Obstructed);
        assert!(r.no_circle_action);
        assert!(r.assumptions.dim_ge_5);

        let r = report(&spec(1, 1, &[0], 2, 2)).unwrap();
        assert_eq!(r.psc, PscVerdict::Inapplicable);
        assert_eq!(r.alpha.as_ref().unwrap().value(), &KoValue::Bit(1));
        assert!(!r.assumptions.dim_ge_5);
    }

    #[test]
    fn report_consistency_on_grid() {
        for n1 in 1..=3u32 {
            for n2 in 1..=3u32 {
                for twist in twists(n2 as usize, 1, 2) {
                    for d1 in -3..=3 {
                        for d2 in -3..=3 {
                            let r = report(&spec(n1, n2, &twist, d1, d2)).unwrap();
                            if r.psc == PscVerdict::Obstructed {
                                assert!(r.spin.is_spin());
                                assert!(!r.alpha.as_ref().unwrap().is_zero());
                            }
                            if r.no_circle_action {
                                assert!(r.spin.is_spin() && !r.a_hat.is_zero());
                            }
                            assert_eq!(r.psc, psc_verdict(&r.spec).unwrap());
                        }
                    }
                }
            }
        }
    }
}
