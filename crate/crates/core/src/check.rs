//! Self-check suite: every cross-route identity, run over a user-chosen
//! `(n, z)` window, plus a comparison against the vendored reference b-files.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact::{binomial, factorial, integer, rational};
use crate::gamma::verify_tn_gamma;
use crate::oeis::{compare, generate, parse_bfile, SequenceId, SequenceTable};
use crate::polynomial::{expansion_coefficients_at, tn_polynomial};
use crate::sequences::{
    egf_derangement_coefficients, subfactorial, tn_at, tn_direct, tn_power_sum, tn_recurrence,
    tn_shifted_sum_with, DerangementCache, SubfactorialMethod,
};

/// Relative tolerance for the floating-point Gamma identity.
pub const GAMMA_TOLERANCE: f64 = 1e-10;

/// Largest `z + n` handed to the numeric Gamma route by the check suite.
pub const GAMMA_MAX_ARGUMENT: i64 = 40;

pub const REFERENCE_A000166: &str = include_str!("../fixtures/b000166.txt");
pub const REFERENCE_A001865: &str = include_str!("../fixtures/b001865.txt");
pub const REFERENCE_A001863: &str = include_str!("../fixtures/b001863.txt");
pub const REFERENCE_A129137: &str = include_str!("../fixtures/b129137.txt");

/// Vendored reference text for `id`.
pub fn reference_text(id: SequenceId) -> &'static str {
    match id {
        SequenceId::A000166 => REFERENCE_A000166,
        SequenceId::A001865 => REFERENCE_A001865,
        SequenceId::A001863 => REFERENCE_A001863,
        SequenceId::A129137 => REFERENCE_A129137,
    }
}

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub n_max: u32,
    pub z_min: i64,
    pub z_max: i64,
    /// Replaces the vendored derangement reference when set.
    pub derangement_reference: Option<SequenceTable>,
}

impl CheckConfig {
    pub fn new(n_max: u32, z_min: i64, z_max: i64) -> Self {
        CheckConfig {
            n_max,
            z_min,
            z_max,
            derangement_reference: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cells: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            cells: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cells += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<20} {}/{} cells",
            self.name,
            self.cells - self.failures.len(),
            self.cells
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub suites: Vec<SuiteResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn total_cells(&self) -> usize {
        self.suites.iter().map(|s| s.cells).sum()
    }

    pub fn total_failures(&self) -> usize {
        self.suites.iter().map(|s| s.failures.len()).sum()
    }
}

pub fn run_checks(config: &CheckConfig) -> CheckReport {
    let suites = vec![
        four_routes(config),
        x_independence(config),
        polynomial_bases(config),
        anchors(config),
        derangement_routes(config),
        gamma_identity(config),
        reference_sequences(config),
    ];
    CheckReport { suites }
}

fn z_values(config: &CheckConfig) -> impl Iterator<Item = i64> {
    config.z_min..=config.z_max
}

fn four_routes(config: &CheckConfig) -> SuiteResult {
    let mut suite = SuiteResult::new("four-routes");
    let cache = DerangementCache::new(config.n_max);
    let zero = integer(0);
    for n in 0..=config.n_max {
        for z in z_values(config) {
            let z = integer(z);
            let direct = tn_direct(n, &zero, &z);
            let rec = tn_recurrence(n, &z);
            let power = tn_power_sum(n, &z);
            let shifted = tn_shifted_sum_with(n, &z, &cache);
            suite.record(direct == rec && rec == power && power == shifted, || {
                format!("n={n} z={z}: direct={direct} rec={rec} power={power} shifted={shifted}")
            });
        }
    }
    suite
}

fn x_independence(config: &CheckConfig) -> SuiteResult {
    let mut suite = SuiteResult::new("x-independence");
    for n in 0..=config.n_max {
        for z in z_values(config) {
            let zq = integer(z);
            let xs = [
                integer(0),
                integer(1),
                zq.clone(),
                rational(-3, 2),
                rational(z, 2),
            ];
            let reference = tn_at(n, &zq, &xs[0]);
            for x in &xs[1..] {
                let value = tn_at(n, &zq, x);
                suite.record(value == reference, || {
                    format!("n={n} z={z} x={x}: {value} != {reference}")
                });
            }
        }
    }
    suite
}

fn polynomial_bases(config: &CheckConfig) -> SuiteResult {
    let mut suite = SuiteResult::new("polynomial-bases");
    let cache = DerangementCache::new(config.n_max);
    for n in 0..=config.n_max {
        let n_i = i64::from(n);
        for center in [integer(0), integer(-n_i), integer(-n_i - 1)] {
            let poly = tn_polynomial(n, &center);
            let derived = expansion_coefficients_at(n, &center);
            suite.record(poly.coeffs() == derived.as_slice(), || {
                format!("n={n} c={center}: Taylor shift and derivative routes differ")
            });
            for z in z_values(config) {
                let z = integer(z);
                let (lhs, rhs) = (poly.evaluate(&z), tn_power_sum(n, &z));
                suite.record(lhs == rhs, || {
                    format!("n={n} c={center} z={z}: {lhs} != {rhs}")
                });
            }
        }
        let shifted = tn_polynomial(n, &integer(-n_i - 1));
        for k in 0..=n {
            let expected = BigRational::from_integer(binomial(n, i64::from(k)) * cache.get(n - k));
            let actual = &shifted.coeffs()[k as usize];
            suite.record(*actual == expected, || {
                format!("n={n} k={k}: a_k={actual}, C(n,k) d(n-k)={expected}")
            });
        }
    }
    suite
}

fn anchors(config: &CheckConfig) -> SuiteResult {
    let mut suite = SuiteResult::new("factorial-anchors");
    let cache = DerangementCache::new(config.n_max);
    for n in 0..=config.n_max {
        let n_i = i64::from(n);
        let fact = tn_power_sum(n, &integer(-n_i));
        suite.record(fact == BigRational::from_integer(factorial(n)), || {
            format!("T_{n}(-{n}) = {fact}, expected {n}!")
        });
        let der = tn_power_sum(n, &integer(-n_i - 1));
        suite.record(
            der == BigRational::from_integer(cache.get(n).clone()),
            || format!("T_{n}(-{n}-1) = {der}, expected d_{n}"),
        );
    }
    suite
}

fn derangement_routes(config: &CheckConfig) -> SuiteResult {
    let mut suite = SuiteResult::new("derangement-routes");
    let egf = egf_derangement_coefficients(config.n_max as usize + 1);
    for n in 0..=config.n_max {
        let values: Vec<BigInt> = SubfactorialMethod::ALL
            .iter()
            .map(|&m| subfactorial(n, m))
            .collect();
        let from_egf = &egf[n as usize];
        suite.record(values.iter().all(|v| v == from_egf), || {
            format!("d_{n}: methods {values:?} vs egf {from_egf}")
        });
    }
    suite
}

fn gamma_identity(config: &CheckConfig) -> SuiteResult {
    let mut suite = SuiteResult::new("gamma-identity");
    for n in 0..=config.n_max {
        for z in z_values(config) {
            if z + i64::from(n) > GAMMA_MAX_ARGUMENT {
                continue;
            }
            let outcome = verify_tn_gamma(n, &integer(z));
            let ok = matches!(outcome, Ok(err) if err <= GAMMA_TOLERANCE);
            suite.record(ok, || format!("n={n} z={z}: {outcome:?}"));
        }
    }
    suite
}

fn reference_sequences(config: &CheckConfig) -> SuiteResult {
    let mut suite = SuiteResult::new("reference-bfiles");
    for id in SequenceId::ALL {
        let reference = match (&config.derangement_reference, id) {
            (Some(table), SequenceId::A000166) => table.clone(),
            _ => match parse_bfile(reference_text(id)) {
                Ok(table) => table,
                Err(err) => {
                    suite.record(false, || {
                        format!("{id}: vendored fixture unreadable: {err}")
                    });
                    continue;
                }
            },
        };
        let generated = generate(id, reference.terms.len() + reference.offset.max(0) as usize);
        match compare(&generated, &reference) {
            Ok(report) => {
                suite.cells += report.compared;
                for m in report.mismatches {
                    suite.failures.push(format!(
                        "{id} index {}: generated {} reference {}",
                        m.index, m.generated, m.reference
                    ));
                }
            }
            Err(err) => suite.record(false, || format!("{id}: {err}")),
        }
    }
    suite
}
