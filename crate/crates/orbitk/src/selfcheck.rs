//! Seeded randomized invariant checks for the installed binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use orbitk_core::cluster::cluster_k0;
use orbitk_core::exactla::{cokernel_presentation, snf};
use orbitk_core::orbit_triangle::{fundamental_split, integral_degree, InvariantSpec, SpecFlags};
use orbitk_core::{FgAbGroup, IntMatrix, Quiver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Index of the first failing case.
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Summary {
    pub fn first_failure(&self) -> Option<&'static str> {
        self.checks.iter().find(|c| c.failures > 0).map(|c| c.name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("seed {}\n", self.seed);
        for c in &self.checks {
            let status = if c.failures == 0 { "ok" } else { "FAILED" };
            let _ = writeln!(out, "{:<24} {:>5} cases  {status}", c.name, c.cases);
        }
        out
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let entries = (0..m * n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
    IntMatrix::new(m, n, entries).expect("shape matches")
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(0..6) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            m.add_row_multiple(i, j, &BigInt::from(rng.gen_range(-2i64..=2)));
        }
    }
    m
}

fn snf_holds(a: &IntMatrix) -> bool {
    let s = snf(a);
    let product = s.u.checked_mul(a).and_then(|ua| ua.checked_mul(&s.v));
    let diag = s.invariant_factors();
    product.as_ref() == Ok(&s.d)
        && s.u.is_unimodular()
        && s.v.is_unimodular()
        && diag.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0))
}

fn transpose_torsion_holds(a: &IntMatrix) -> bool {
    cokernel_presentation(a).torsion() == cokernel_presentation(&a.transpose()).torsion()
}

fn split_holds(rng: &mut ChaCha8Rng) -> bool {
    let mut degrees = BTreeMap::new();
    let mut groups = BTreeMap::new();
    for n in 0..3i64 {
        let orders: Vec<BigInt> = (0..rng.gen_range(0..3))
            .map(|_| BigInt::from(rng.gen_range(2i64..7)))
            .collect();
        let g = FgAbGroup::from_orders(rng.gen_range(0..3), &orders);
        let auto = if g.is_free() && g.rank() > 0 {
            random_unimodular(rng, g.rank())
        } else {
            IntMatrix::identity(g.presentation().generators())
        };
        let Ok(data) = integral_degree(&g, auto) else { return false };
        degrees.insert(n, data);
        groups.insert(n, g);
    }
    let flags = SpecFlags { connective: true, ..Default::default() };
    let Ok(spec) = InvariantSpec::new(degrees, flags, None) else { return false };
    let Ok(results) = fundamental_split(&spec) else { return false };
    let zero = FgAbGroup::trivial();
    results.iter().all(|r| {
        let here = groups.get(&r.degree).unwrap_or(&zero);
        let below = groups.get(&(r.degree - 1)).unwrap_or(&zero);
        r.resolved.as_ref() == Some(&here.direct_sum(below))
    })
}

fn cluster_parity_holds(rng: &mut ChaCha8Rng) -> bool {
    let v = rng.gen_range(1..=5);
    let names: Vec<String> = (0..v).map(|i| format!("v{i}")).collect();
    let mut arrows = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            for _ in 0..rng.gen_range(0..2) {
                arrows.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let Ok(q) = Quiver::new(&names, &arrows) else { return false };
    let (a, b) = (rng.gen_range(1u64..6), rng.gen_range(1u64..6));
    (a % 2 != b % 2) || cluster_k0(&q, a).group == cluster_k0(&q, b).group
}

fn check(name: &'static str, cases: usize, mut f: impl FnMut() -> bool) -> CheckResult {
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        if !f() {
            failures += 1;
            first_failure.get_or_insert(i);
        }
    }
    CheckResult { name, cases, failures, first_failure }
}

/// Runs every check `cases` times from one ChaCha stream.
pub fn run(seed: u64, cases: usize) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        check("snf", cases, || snf_holds(&random_matrix(&mut rng))),
        check("cokernel-transpose", cases, || transpose_torsion_holds(&random_matrix(&mut rng))),
        check("identity-split", cases, || split_holds(&mut rng)),
        check("cluster-parity", cases, || cluster_parity_holds(&mut rng)),
    ];
    Summary { seed, checks }
}
