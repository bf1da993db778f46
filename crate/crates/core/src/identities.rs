//! Self-checks of the combinatorial identities behind `A(n, l)` and the
//! mod-2 binomial reductions, each against an independent computation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{
    a_number, a_number_explicit, bell, bernoulli0, binom_mod2_4m, binom_mod2_4m_plus_1,
    binom_mod2_lucas, binom_mod2_reduced, binom_odd_iff, divided_difference_power, factorial,
    stirling2,
};
use crate::series::UniSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl IdentityCheck {
    fn new(name: &'static str) -> Self {
        IdentityCheck {
            name,
            checked: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} {:<34} checked {:>7}, failures {}",
            if self.passed() { "ok" } else { "FAIL" },
            self.name,
            self.checked,
            self.failures
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, " (first: {first})")?;
        }
        Ok(())
    }
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Identities for `A(n, l)`, Stirling, Bell and Bernoulli numbers and
/// divided differences, for `n <= depth`.
pub fn a_number_identities(depth: u64) -> Vec<IdentityCheck> {
    let mut rec = IdentityCheck::new("A(n,l) recurrence == explicit sum");
    let mut stir = IdentityCheck::new("A(n,l) == l!/n! S(n,l)");
    let mut gf = IdentityCheck::new("(e^x - 1)^l == sum A(n,l) x^n");
    let mut bells = IdentityCheck::new("Bell(n) == sum n!/l! A(n,l)");
    let mut bern = IdentityCheck::new("B_n(0) == series inverse");
    let mut dd = IdentityCheck::new("divided difference == n!/l! A(n,l)");

    for n in 0..=depth {
        for l in 0..=n {
            let a = a_number(n, l as i64);
            rec.record(a == a_number_explicit(n, l as i64), || {
                format!("n={n}, l={l}")
            });
            let via_s = ratio(factorial(l) * stirling2(n, l), factorial(n));
            stir.record(a == via_s, || format!("n={n}, l={l}"));
        }
        let via_a: BigRational = (0..=n)
            .map(|l| ratio(factorial(n), factorial(l)) * a_number(n, l as i64))
            .sum();
        bells.record(via_a == BigRational::from_integer(bell(n)), || {
            format!("n={n}")
        });
        for l in 0..=n + 2 {
            let want = ratio(factorial(n), factorial(l)) * a_number(n, l as i64);
            dd.record(divided_difference_power(n, l) == want, || {
                format!("n={n}, l={l}")
            });
        }
    }

    let d = depth as usize;
    let e_minus_1 = {
        let mut c = UniSeries::exp_linear(&BigRational::one(), d)
            .coeffs()
            .to_vec();
        c[0] = BigRational::zero();
        UniSeries::from_coeffs(c)
    };
    for l in 0..=depth.min(6) {
        let p = e_minus_1.pow(l as u32);
        for n in 0..=depth {
            gf.record(*p.coeff(n as usize) == a_number(n, l as i64), || {
                format!("l={l}, degree {n}")
            });
        }
    }

    // x / (e^x - 1) as the inverse of (e^x - 1)/x = Σ x^k/(k+1)!
    let quotient = UniSeries::from_coeffs(
        (0..=depth)
            .map(|k| ratio(BigInt::one(), factorial(k + 1)))
            .collect(),
    );
    let inv = quotient.inverse().expect("constant term 1");
    for n in 0..=depth {
        let want = inv.coeff(n as usize) * BigRational::from_integer(factorial(n));
        bern.record(bernoulli0(n) == want, || format!("n={n}"));
    }

    vec![rec, stir, gf, bells, bern, dd]
}

/// Parities of `C(base + j, base)` for `j = 0..=len`, by exact big-integer
/// products `C(base + j, base) = C(base + j - 1, base) (base + j) / j`.
fn parity_row(base: u64, len: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(len as usize + 1);
    let mut acc = BigInt::one();
    out.push(1);
    for j in 1..=len {
        acc = acc * BigInt::from(base + j) / BigInt::from(j);
        out.push(u8::from(acc.is_odd()));
    }
    out
}

/// Mod-2 binomial identities: Lucas, the base-4 reduction and its two
/// special cases, and the digit-disjointness test.
///
/// `lucas_bound` and `bound` cap the arguments of the Lucas check and of the
/// reductions respectively.
pub fn parity_identities(lucas_bound: u64, bound: u64) -> Vec<IdentityCheck> {
    let mut lucas = IdentityCheck::new("Lucas == big-integer parity");
    let mut reduced = IdentityCheck::new("base-4 reduction == parity");
    let mut four_m = IdentityCheck::new("C(4m+n,4m) reduction");
    let mut four_m_plus_1 = IdentityCheck::new("C(4m+1+n,4m+1) reduction");
    let mut odd = IdentityCheck::new("digit disjointness == Lucas");

    for n in 0..=lucas_bound {
        let row = parity_row(n, lucas_bound);
        for m in 0..=lucas_bound {
            let got = binom_mod2_lucas(n, &BigInt::from(m));
            lucas.record(got == row[m as usize], || format!("n={n}, k={m}"));
        }
    }
    for n in 0..=bound {
        let row = parity_row(n, bound);
        for m in 0..=bound {
            reduced.record(binom_mod2_reduced(m, n) == row[m as usize], || {
                format!("m={m}, n={n}")
            });
        }
    }
    for m in 0..=bound {
        let row_4m = parity_row(4 * m, bound);
        let row_4m1 = parity_row(4 * m + 1, bound);
        for n in 0..=bound {
            four_m.record(binom_mod2_4m(m, n) == row_4m[n as usize], || {
                format!("m={m}, n={n}")
            });
            four_m_plus_1.record(binom_mod2_4m_plus_1(m, n) == row_4m1[n as usize], || {
                format!("m={m}, n={n}")
            });
        }
    }
    for n in 0..=bound.min(128) {
        for k in -300i64..=300 {
            let k = BigInt::from(k);
            let agree = binom_odd_iff(n, &k) == (binom_mod2_lucas(n, &k) == 1);
            odd.record(agree, || format!("n={n}, k={k}"));
        }
    }
    vec![lucas, reduced, four_m, four_m_plus_1, odd]
}
