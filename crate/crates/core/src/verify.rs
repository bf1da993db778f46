//! Agreement of the closed-form sum with the power-series pairing over a
//! parameter grid.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::invariants::{f_closed, spin_check};
use crate::series::{genus_pairing, ExpSign};
use crate::spec::TwistSpec;
use crate::sweep::{twist_vectors, with_jobs};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyBounds {
    pub max_n1: u32,
    pub max_n2: u32,
    /// Bound on `|i_j|`.
    pub max_twist: i64,
    /// Bound on `|k1|`, `|k2|` for the spin part of the grid.
    pub max_k: i64,
    pub max_nonzero: usize,
    /// Number of extra non-spin specs drawn at random.
    pub random_nonspin: usize,
    pub seed: u64,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        VerifyBounds {
            max_n1: 3,
            max_n2: 4,
            max_twist: 2,
            max_k: 3,
            max_nonzero: 2,
            random_nonspin: 200,
            seed: 0,
        }
    }
}

/// The spin specs of the grid: every admissible twist and every
/// `|k1|, |k2| <= max_k`, in ascending order.
pub fn spin_grid(b: &VerifyBounds) -> Vec<TwistSpec> {
    let mut out = Vec::new();
    for n1 in 1..=b.max_n1 {
        for n2 in 1..=b.max_n2 {
            for twist in twist_vectors(n2 as usize, b.max_nonzero, b.max_twist) {
                let s1: i64 = twist.iter().sum();
                for k1 in -b.max_k..=b.max_k {
                    for k2 in -b.max_k..=b.max_k {
                        let d1 = 2 * k1 + i64::from(n1) + 1 - s1;
                        let d2 = 2 * k2 + i64::from(n2) + 1;
                        out.push(TwistSpec::new(n1, n2, twist.clone(), d1, d2).expect("valid"));
                    }
                }
            }
        }
    }
    out
}

/// `count` distinct non-spin specs drawn from the same shapes and twists,
/// with `|d1|, |d2| <= 2 max_k + n1 + n2 + 1`, deterministic in `seed`.
/// Returns fewer only if the space is exhausted.
pub fn random_nonspin(b: &VerifyBounds, count: usize) -> Vec<TwistSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let shapes: Vec<(u32, u32, Vec<Vec<i64>>)> = (1..=b.max_n1)
        .flat_map(|n1| (1..=b.max_n2).map(move |n2| (n1, n2)))
        .map(|(n1, n2)| {
            (
                n1,
                n2,
                twist_vectors(n2 as usize, b.max_nonzero, b.max_twist),
            )
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut attempts = 0usize;
    while seen.len() < count && attempts < count.saturating_mul(1000).max(1000) {
        attempts += 1;
        let (n1, n2, twists) = shapes.choose(&mut rng).expect("at least one shape");
        let twist = twists.choose(&mut rng).expect("at least one twist").clone();
        let d_max = 2 * b.max_k + i64::from(*n1 + *n2) + 1;
        let d1 = rng.gen_range(-d_max..=d_max);
        let d2 = rng.gen_range(-d_max..=d_max);
        let spec = TwistSpec::new(*n1, *n2, twist, d1, d2).expect("valid");
        if !spin_check(&spec).is_spin() {
            seen.insert(spec);
        }
    }
    seen.into_iter().collect()
}

/// The full verification set: the spin grid followed by the random
/// non-spin sample.
pub fn verification_specs(b: &VerifyBounds) -> Vec<TwistSpec> {
    let mut specs = spin_grid(b);
    specs.extend(random_nonspin(b, b.random_nonspin));
    specs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub spec: TwistSpec,
    pub closed: BigRational,
    pub oracle: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub checked: usize,
    pub failed: usize,
    /// The earliest failing spec in input order.
    pub first_counterexample: Option<Counterexample>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Compares `closed` against `oracle` on every spec.
pub fn run_with<C, O>(
    specs: &[TwistSpec],
    closed: C,
    oracle: O,
    jobs: Option<usize>,
) -> VerifyOutcome
where
    C: Fn(&TwistSpec) -> BigRational + Sync,
    O: Fn(&TwistSpec) -> BigRational + Sync,
{
    let failures: Vec<Option<Counterexample>> = with_jobs(jobs, || {
        specs
            .par_iter()
            .map(|s| {
                let (c, o) = (closed(s), oracle(s));
                (c != o).then(|| Counterexample {
                    spec: s.clone(),
                    closed: c,
                    oracle: o,
                })
            })
            .collect()
    });
    let mut failed = failures.iter().flatten();
    VerifyOutcome {
        checked: specs.len(),
        failed: failed.clone().count(),
        first_counterexample: failed.next().cloned(),
    }
}

pub fn run(specs: &[TwistSpec], jobs: Option<usize>) -> VerifyOutcome {
    run_with(specs, f_closed, |s| genus_pairing(s, ExpSign::Plus), jobs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn small() -> VerifyBounds {
        VerifyBounds {
            max_n1: 1,
            max_n2: 2,
            max_twist: 1,
            max_k: 1,
            max_nonzero: 1,
            random_nonspin: 10,
            seed: 7,
        }
    }

    #[test]
    fn grid_is_all_spin() {
        let g = spin_grid(&small());
        // n2 = 1: 3 twists, n2 = 2: 5 twists; 9 (k1, k2) pairs each
        assert_eq!(g.len(), (3 + 5) * 9);
        assert!(g.iter().all(|s| spin_check(s).is_spin()));
    }

    #[test]
    fn random_sample_is_deterministic_distinct_and_non_spin() {
        let b = VerifyBounds::default();
        let a = random_nonspin(&b, 200);
        assert_eq!(a.len(), 200);
        assert_eq!(a, random_nonspin(&b, 200));
        assert!(a.iter().all(|s| !spin_check(s).is_spin()));
        let other = random_nonspin(&VerifyBounds { seed: 1, ..b }, 200);
        assert_ne!(a, other);
    }

    #[test]
    fn small_grid_passes() {
        let specs = verification_specs(&small());
        let out = run(&specs, Some(2));
        assert_eq!(out.checked, specs.len());
        assert!(out.passed(), "{:?}", out.first_counterexample);
    }

    #[test]
    fn corrupted_closed_form_is_caught() {
        let specs = verification_specs(&small());
        let out = run_with(
            &specs,
            |s| {
                let f = f_closed(s);
                if s.twist().iter().any(|&i| i != 0) {
                    f + BigRational::one()
                } else {
                    f
                }
            },
            |s| genus_pairing(s, ExpSign::Plus),
            None,
        );
        assert!(!out.passed());
        let cx = out.first_counterexample.unwrap();
        assert!(cx.spec.twist().iter().any(|&i| i != 0));
        assert_eq!(&cx.closed - &cx.oracle, BigRational::one());
        let first_bad = specs
            .iter()
            .position(|s| s.twist().iter().any(|&i| i != 0))
            .unwrap();
        assert_eq!(cx.spec, specs[first_bad]);
    }
}
