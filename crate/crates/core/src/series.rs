//! Truncated power series over the rationals and the pairing against the
//! fundamental class of `V = CP(η^{i_1} ⊕ ... ⊕ η^{i_{n2}} ⊕ C)`.
//!
//! Cohomology classes of `V` are represented by unreduced polynomials in
//! `u, v`. Since `u^{n1+1} = 0` and only total degree `n1 + n2` is read by
//! the pairing, every bivariate series here is truncated to u-degree `<= n1`
//! and total degree `<= n1 + n2`; no reduction modulo `v Π (v - i_j u)` is
//! needed because [`pair`] evaluates `u^a v^b` directly through `β_{n1-a}`.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::factorial;
use crate::spec::TwistSpec;

/// `c_0 + c_1 x + ... + c_D x^D + O(x^{D+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<BigRational>,
}

impl UniSeries {
    pub fn zero(degree: usize) -> Self {
        UniSeries {
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Build from coefficients `c_0..=c_D`; the truncation degree is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        UniSeries { coeffs }
    }

    /// `e^{c x}` to degree `D`.
    pub fn exp_linear(c: &BigRational, degree: usize) -> Self {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut term = BigRational::one();
        coeffs.push(term.clone());
        for k in 1..=degree {
            term = term * c / BigRational::from_integer(BigInt::from(k));
            coeffs.push(term.clone());
        }
        UniSeries { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Truncated product; the result keeps the smaller truncation degree.
    pub fn mul(&self, other: &UniSeries) -> UniSeries {
        let degree = self.degree().min(other.degree());
        let mut out = Self::zero(degree);
        for (i, a) in self.coeffs.iter().enumerate().take(degree + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(degree + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Multiplicative inverse, `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<UniSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let c0_inv = c0.recip();
        let mut out = Self::zero(self.degree());
        out.coeffs[0] = c0_inv.clone();
        for n in 1..=self.degree() {
            let s: BigRational = (1..=n).map(|k| &self.coeffs[k] * &out.coeffs[n - k]).sum();
            out.coeffs[n] = -s * &c0_inv;
        }
        Some(out)
    }

    pub fn pow(&self, e: u32) -> UniSeries {
        (0..e).fold(Self::one(self.degree()), |acc, _| acc.mul(self))
    }
}

/// `(1 - e^{-x})/x = Σ (-1)^k x^k / (k+1)!` to degree `D`.
pub fn one_minus_exp_neg_over_x(degree: usize) -> UniSeries {
    UniSeries::from_coeffs(
        (0..=degree as u64)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                BigRational::new(BigInt::from(sign), factorial(k + 1))
            })
            .collect(),
    )
}

/// Todd series `T(x) = x / (1 - e^{-x})`, whose `m`-th coefficient is
/// `B_m(1)/m!`.
pub fn todd_series(degree: usize) -> UniSeries {
    one_minus_exp_neg_over_x(degree)
        .inverse()
        .expect("constant term is 1")
}

/// The Â-series `Q(x) = e^{-x/2} T(x) = (x/2)/sinh(x/2)`.
pub fn q_series(degree: usize) -> UniSeries {
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    UniSeries::exp_linear(&half, degree).mul(&todd_series(degree))
}

thread_local! {
    static Q_CACHE: RefCell<HashMap<usize, UniSeries>> = RefCell::new(HashMap::new());
}

/// [`q_series`] memoised per thread; the expansion depends only on `D`.
pub fn q_series_cached(degree: usize) -> UniSeries {
    Q_CACHE.with(|c| {
        c.borrow_mut()
            .entry(degree)
            .or_insert_with(|| q_series(degree))
            .clone()
    })
}

/// `j(x) = sinh(x/2)/(x/2) = Σ x^{2k} / (4^k (2k+1)!)`.
pub fn j_series(degree: usize) -> UniSeries {
    UniSeries::from_coeffs(
        (0..=degree as u64)
            .map(|m| {
                if m % 2 == 1 {
                    BigRational::zero()
                } else {
                    let k = m / 2;
                    BigRational::new(
                        BigInt::one(),
                        num_traits::pow(BigInt::from(4), k as usize) * factorial(2 * k + 1),
                    )
                }
            })
            .collect(),
    )
}

/// Truncation caps of a [`BiSeries`]: u-degree `<= u_max`, total degree
/// `<= total_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Caps {
    pub u_max: usize,
    pub total_max: usize,
}

impl Caps {
    /// The caps needed to pair against `[V]`: `u^{n1+1} = 0` and total
    /// degree `n1 + n2`.
    pub fn for_pairing(n1: u32, n2: u32) -> Self {
        Caps {
            u_max: n1 as usize,
            total_max: (n1 + n2) as usize,
        }
    }

    pub fn admits(&self, a: usize, b: usize) -> bool {
        a <= self.u_max && a + b <= self.total_max
    }
}

/// Truncated polynomial in `u, v` with rational coefficients, stored densely
/// on the rectangle `a <= u_max`, `b <= total_max`; cells with
/// `a + b > total_max` are always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    caps: Caps,
    coeffs: Vec<BigRational>,
}

impl BiSeries {
    pub fn zero(caps: Caps) -> Self {
        BiSeries {
            caps,
            coeffs: vec![BigRational::zero(); (caps.u_max + 1) * (caps.total_max + 1)],
        }
    }

    pub fn one(caps: Caps) -> Self {
        Self::monomial(caps, 0, 0, BigRational::one())
    }

    /// `c u^a v^b`, or zero if the monomial lies beyond the caps.
    pub fn monomial(caps: Caps, a: usize, b: usize, c: BigRational) -> Self {
        let mut s = Self::zero(caps);
        s.add_to(a, b, c);
        s
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    fn index(&self, a: usize, b: usize) -> usize {
        a * (self.caps.total_max + 1) + b
    }

    /// Coefficient of `u^a v^b`; zero beyond the caps.
    pub fn coeff(&self, a: usize, b: usize) -> BigRational {
        if self.caps.admits(a, b) {
            self.coeffs[self.index(a, b)].clone()
        } else {
            BigRational::zero()
        }
    }

    /// Adds `c` to the coefficient of `u^a v^b`, dropping it beyond the caps.
    pub fn add_to(&mut self, a: usize, b: usize, c: BigRational) {
        if self.caps.admits(a, b) {
            let i = self.index(a, b);
            self.coeffs[i] += c;
        }
    }

    /// Nonzero terms `(a, b, c)` in order of increasing `a`, then `b`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        let width = self.caps.total_max + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i / width, i % width, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        assert_eq!(self.caps, other.caps, "mismatched truncation caps");
        BiSeries {
            caps: self.caps,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> BiSeries {
        BiSeries {
            caps: self.caps,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Coefficients as integer numerators over one common denominator, with
    /// the zero terms dropped.
    fn integer_terms(&self) -> (Vec<(usize, usize, BigInt)>, BigInt) {
        let denom = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = self
            .terms()
            .map(|(a, b, c)| (a, b, c.numer() * (&denom / c.denom())))
            .collect();
        (terms, denom)
    }

    /// Truncated product.
    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        assert_eq!(self.caps, other.caps, "mismatched truncation caps");
        let caps = self.caps;
        // Accumulate in integers and normalise once per output coefficient;
        // reducing every partial product dominates the cost otherwise.
        let (lhs, dl) = self.integer_terms();
        let (rhs, dr) = other.integer_terms();
        let mut acc = vec![BigInt::zero(); self.coeffs.len()];
        for (a, b, x) in &lhs {
            for (c, d, y) in &rhs {
                if caps.admits(a + c, b + d) {
                    acc[self.index(a + c, b + d)] += x * y;
                }
            }
        }
        let denom = dl * dr;
        BiSeries {
            caps,
            coeffs: acc
                .into_iter()
                .map(|n| BigRational::new(n, denom.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiSeries {
        let mut acc = Self::one(self.caps);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The `v = 0` slice as a univariate series in `u`.
    pub fn restrict_v_zero(&self) -> UniSeries {
        UniSeries::from_coeffs((0..=self.caps.u_max).map(|a| self.coeff(a, 0)).collect())
    }
}

/// `s(cu·u + cv·v)`, truncated to `caps`, by expanding each power of the
/// linear form with the binomial theorem.
pub fn substitute_linear(
    s: &UniSeries,
    cu: &BigRational,
    cv: &BigRational,
    caps: Caps,
) -> BiSeries {
    let top = s.degree().min(caps.total_max);
    // Each cell (a, b) receives exactly one term, from k = a + b; build it
    // from integer parts so it is normalised once.
    let pu = int_powers(cu.numer(), top);
    let qu = int_powers(cu.denom(), top);
    let pv = int_powers(cv.numer(), top);
    let qv = int_powers(cv.denom(), top);
    let mut out = BiSeries::zero(caps);
    let mut row = vec![BigInt::one()];
    for k in 0..=top {
        if k > 0 {
            // Pascal row k from row k - 1
            let mut next = Vec::with_capacity(k + 1);
            next.push(BigInt::one());
            next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
            next.push(BigInt::one());
            row = next;
        }
        let ck = s.coeff(k);
        if ck.is_zero() {
            continue;
        }
        for a in 0..=k.min(caps.u_max) {
            let b = k - a;
            let numer = ck.numer() * &row[a] * &pu[a] * &pv[b];
            if numer.is_zero() {
                continue;
            }
            let denom = ck.denom() * &qu[a] * &qv[b];
            out.add_to(a, b, BigRational::new(numer, denom));
        }
    }
    out
}

fn int_powers(x: &BigInt, n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for i in 1..=n {
        out.push(&out[i - 1] * x);
    }
    out
}

/// `β_k = h_k(i_1, ..., i_{n2})`, the complete homogeneous symmetric
/// polynomial, by the one-variable-at-a-time recurrence
/// `h_j(x_1..x_t) = h_j(x_1..x_{t-1}) + x_t h_{j-1}(x_1..x_t)`.
pub fn beta(k: usize, twist: &[i64]) -> BigInt {
    betas(k, twist).pop().expect("k + 1 entries")
}

/// `β_0..=β_k` in one pass.
pub fn betas(k: usize, twist: &[i64]) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); k + 1];
    h[0] = BigInt::one();
    for &x in twist {
        let x = BigInt::from(x);
        for j in 1..=k {
            let prev = &h[j - 1] * &x;
            h[j] += prev;
        }
    }
    h
}

/// Elementary symmetric polynomial `σ_k(i_1, ..., i_{n2})`.
pub fn elementary_symmetric(k: usize, twist: &[i64]) -> BigInt {
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    for &x in twist {
        let x = BigInt::from(x);
        for j in (1..=k).rev() {
            let prev = &e[j - 1] * &x;
            e[j] += prev;
        }
    }
    e[k].clone()
}

/// `<p, [V]>`: the sum of `coeff(u^a v^{n1+n2-a}) · β_{n1-a}` over
/// `0 <= a <= n1`. Terms of any other total degree do not contribute.
pub fn pair(p: &BiSeries, n1: u32, n2: u32, twist: &[i64]) -> BigRational {
    let n1 = n1 as usize;
    let top = n1 + n2 as usize;
    let b = betas(n1, twist);
    (0..=n1)
        .map(|a| p.coeff(a, top - a) * BigRational::from_integer(b[n1 - a].clone()))
        .sum()
}

/// Sign of the exponential factor `e^{±(d1 u + d2 v)/2}` in
/// [`genus_pairing`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpSign {
    Plus,
    Minus,
}

impl ExpSign {
    fn as_i64(self) -> i64 {
        match self {
            ExpSign::Plus => 1,
            ExpSign::Minus => -1,
        }
    }
}

/// `<Q(u)^{n1+1} Q(v) Π_j Q(v - i_j u) e^{±(d1 u + d2 v)/2}, [V]>`,
/// evaluated by multiplying truncated series and pairing.
pub fn genus_pairing(spec: &TwistSpec, sign: ExpSign) -> BigRational {
    let caps = Caps::for_pairing(spec.n1(), spec.n2());
    let q = q_series_cached(caps.total_max);
    let one = BigRational::one();
    let zero = BigRational::zero();

    let q_u = substitute_linear(&q, &one, &zero, caps);
    let mut product = q_u.pow(spec.n1() + 1);
    product = product.mul(&substitute_linear(&q, &zero, &one, caps));
    for &i in spec.twist() {
        let cu = BigRational::from_integer(BigInt::from(-i));
        product = product.mul(&substitute_linear(&q, &cu, &one, caps));
    }

    let s = sign.as_i64();
    let exp = UniSeries::exp_linear(&one, caps.total_max);
    let cu = BigRational::new(BigInt::from(s * spec.d1()), BigInt::from(2));
    let cv = BigRational::new(BigInt::from(s * spec.d2()), BigInt::from(2));
    product = product.mul(&substitute_linear(&exp, &cu, &cv, caps));

    pair(&product, spec.n1(), spec.n2(), spec.twist())
}

/// First Chern class and Euler characteristic of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    /// Coefficient of `u` in `c_1(V)`, `n1 + 1 - σ_1`.
    pub c1_u: BigInt,
    /// Coefficient of `v` in `c_1(V)`, `n2 + 1`.
    pub c1_v: BigInt,
    /// `χ(V) = (n1 + 1)(n2 + 1)`.
    pub euler: BigInt,
}

pub fn chern_and_euler(n1: u32, n2: u32, twist: &[i64]) -> ChernData {
    let sigma1: BigInt = twist.iter().map(|&i| BigInt::from(i)).sum();
    ChernData {
        c1_u: BigInt::from(n1 + 1) - sigma1,
        c1_v: BigInt::from(n2 + 1),
        euler: BigInt::from(n1 + 1) * BigInt::from(n2 + 1),
    }
}

/// Total Chern class `c(V) = (1 + u)^{n1+1} (1 + v) Π_j (1 + v - i_j u)`,
/// truncated for pairing.
pub fn total_chern_class(n1: u32, n2: u32, twist: &[i64]) -> BiSeries {
    let caps = Caps::for_pairing(n1, n2);
    let one = BigRational::one();
    let linear = |cu: BigRational, cv: BigRational| {
        BiSeries::one(caps)
            .add(&BiSeries::monomial(caps, 1, 0, cu))
            .add(&BiSeries::monomial(caps, 0, 1, cv))
    };
    let mut c = linear(one.clone(), BigRational::zero()).pow(n1 + 1);
    c = c.mul(&linear(BigRational::zero(), one.clone()));
    for &i in twist {
        c = c.mul(&linear(
            BigRational::from_integer(BigInt::from(-i)),
            one.clone(),
        ));
    }
    c
}
