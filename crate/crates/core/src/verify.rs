//! Cross-checks between the independent computation routes.
//!
//! [`run`] produces a [`VerifyReport`]: one [`CheckResult`] per (check, k, n)
//! cell plus informational [`Finding`]s about stated values that direct
//! computation contradicts.

use std::thread;

use num_bigint::{BigInt, BigUint};

use crate::algebra::{QPolynomial, RationalGF, XPolynomial};
use crate::genfunc::{closed_form_gf, gkcon_gf, kcon_gf, kcon_total_gf, scaled_square_gf, transfer_distribution};
use crate::linsys::{
    build_system_matrix, cramer_numerators, det_closed_form, det_cofactor, implicit_relation_lhs, term_sum,
    partial_sum_mismatches, poly_det, solve_conditional_gfs, stated_discrepancies, term_permutation,
};
use crate::totals::{floor_sum_identity, gkcon_total, kcon_total};
use crate::word::{brute_distribution_capped, ConnectorKind, ConnectorStat, DEFAULT_ENUM_CAP};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub kmax: u32,
    pub nmax: usize,
    /// Upper `k` for the determinant and Cramer checks.
    pub det_kmax: u32,
    /// Upper `n` for totals read off generating-function series.
    pub series_nmax: usize,
    /// Upper `k` for the floor-sum identities.
    pub floor_kmax: u32,
    /// Largest `k` for which the implicit relation is also checked by exact
    /// cross-multiplication (series agreement is always checked).
    pub exact_identity_kmax: u32,
    pub enum_cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            kmax: 6,
            nmax: 8,
            det_kmax: 14,
            series_nmax: 50,
            floor_kmax: 100,
            exact_identity_kmax: 6,
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

impl VerifyConfig {
    pub fn new(kmax: u32, nmax: usize) -> Self {
        VerifyConfig { kmax, nmax, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// Not run, e.g. the brute-force cell exceeds the enumeration cap.
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub check: &'static str,
    pub k: Option<u32>,
    pub n: Option<usize>,
    pub stat: Option<&'static str>,
    pub outcome: Outcome,
}

impl CheckResult {
    fn new(check: &'static str, k: Option<u32>, n: Option<usize>, ok: bool, detail: impl FnOnce() -> String) -> Self {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail(detail()) };
        CheckResult { check, k, n, stat: None, outcome }
    }

    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Fail(_))
    }

    pub fn location(&self) -> String {
        let mut parts = vec![self.check.to_string()];
        if let Some(s) = self.stat {
            parts.push(s.to_string());
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        parts.join(" ")
    }
}

/// Informational note; does not affect pass/fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub topic: &'static str,
    pub k: Option<u32>,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub findings: Vec<Finding>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn count(&self, check: &str) -> (usize, usize) {
        let cells: Vec<_> = self.checks.iter().filter(|c| c.check == check).collect();
        (cells.iter().filter(|c| c.outcome == Outcome::Pass).count(), cells.len())
    }

    /// Distinct check names in first-run order.
    pub fn check_names(&self) -> Vec<&'static str> {
        let mut names: Vec<&'static str> = Vec::new();
        for c in &self.checks {
            if !names.contains(&c.check) {
                names.push(c.check);
            }
        }
        names
    }
}

fn stat_name(kind: ConnectorKind) -> &'static str {
    match kind {
        ConnectorKind::SumEquals => "kcon",
        ConnectorKind::SumGreater => "gkcon",
    }
}

/// Sum of the statistic over all words: the derivative of the distribution at 1.
pub fn total_from_distribution(p: &QPolynomial) -> BigInt {
    p.derivative().eval_one()
}

/// Brute force, transfer matrix, and closed-form series for one `(k, stat)`
/// over `n = 0..=nmax`.
fn distribution_cells(k: u32, kind: ConnectorKind, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let stat = match kind {
        ConnectorKind::SumEquals => ConnectorStat::kcon(k),
        ConnectorKind::SumGreater => ConnectorStat::gkcon(k),
    };
    let gf = closed_form_gf(k, stat).expect("natural threshold");
    let series = gf.series_coefficients(cfg.nmax);
    let mut out = Vec::new();
    for (n, from_gf) in series.iter().enumerate() {
        let from_transfer = transfer_distribution(n, k, stat);
        let mut cell = CheckResult::new("distribution", Some(k), Some(n), true, String::new);
        cell.stat = Some(stat_name(kind));
        let brute = brute_distribution_capped(n, k, stat, cfg.enum_cap);
        cell.outcome = match &brute {
            Ok(brute) if *brute == from_transfer && brute == from_gf => Outcome::Pass,
            Ok(brute) => Outcome::Fail(format!("brute {brute}, transfer {from_transfer}, gf {from_gf}")),
            Err(e) if from_transfer == *from_gf => Outcome::Skipped(format!("brute force: {e}")),
            Err(_) => Outcome::Fail(format!("transfer {from_transfer}, gf {from_gf}")),
        };
        out.push(cell);

        let expected = match kind {
            ConnectorKind::SumEquals => kcon_total(n, k),
            ConnectorKind::SumGreater => gkcon_total(n, k),
        };
        let from_dp = total_from_distribution(&from_transfer);
        let mut tcell = CheckResult::new("total-vs-enumeration", Some(k), Some(n), true, String::new);
        tcell.stat = Some(stat_name(kind));
        tcell.outcome = match &brute {
            Ok(brute) => {
                let from_brute = total_from_distribution(brute);
                if BigInt::from(expected.clone()) == from_brute && from_brute == from_dp {
                    Outcome::Pass
                } else {
                    Outcome::Fail(format!("formula {expected}, brute {from_brute}, transfer {from_dp}"))
                }
            }
            Err(e) if BigInt::from(expected.clone()) == from_dp => Outcome::Skipped(format!("brute force: {e}")),
            Err(_) => Outcome::Fail(format!("formula {expected}, transfer {from_dp}")),
        };
        out.push(tcell);
    }
    out
}

fn determinant_cells(cfg: &VerifyConfig, report: &mut VerifyReport) {
    for k in 1..=cfg.det_kmax {
        let a = build_system_matrix(k);
        let det = poly_det(&a);
        let closed = det_closed_form(k);
        let ok = det.as_ref() == Ok(&closed);
        report.checks.push(CheckResult::new("det-closed-form", Some(k), None, ok, || {
            format!("elimination {det:?}, closed form {closed}")
        }));
        if k <= 6 {
            let cof = det_cofactor(&a);
            let ok = det.as_ref() == Ok(&cof);
            report.checks.push(CheckResult::new("det-cofactor", Some(k), None, ok, || {
                format!("elimination {det:?}, cofactor {cof}")
            }));
        }
        let numerators = cramer_numerators(k);
        let sum: crate::algebra::BPolynomial = numerators.iter().sum();
        let terms = term_sum(k);
        report.checks.push(CheckResult::new("cramer-sum", Some(k), None, sum == terms, || {
            format!("sum of numerators {sum}, term sum {terms}")
        }));
        let sigma = term_permutation(k);
        report.checks.push(CheckResult::new("cramer-multiset", Some(k), None, sigma.is_some(), || {
            "numerators are not a permutation of the terms".to_string()
        }));
        if let Some(sigma) = sigma {
            let pairs: Vec<String> = sigma.iter().enumerate().map(|(l, j)| format!("{}->t{}", l + 1, j)).collect();
            report.findings.push(Finding {
                topic: "cramer-permutation",
                k: Some(k),
                message: format!("det A_l = a * t_sigma(l): {}", pairs.join(" ")),
            });
        }
        let mism = partial_sum_mismatches(k);
        if !mism.is_empty() {
            report.findings.push(Finding {
                topic: "running-sum-form",
                k: Some(k),
                message: format!(
                    "det A_l = a * (t_0 + ... + t_(l-1)) fails at l = {:?}; only the total over l is used",
                    mism
                ),
            });
        }
    }
}

fn generating_function_cells(cfg: &VerifyConfig, report: &mut VerifyReport) {
    for k in 1..=cfg.kmax {
        let all_words = RationalGF::all_words(k);
        for (name, gf) in [("kcon", kcon_gf(k)), ("gkcon", gkcon_gf(k))] {
            let (n1, d1) = gf.at_q_one();
            let (an, ad) = all_words.at_q_one();
            let ok = &n1 * &ad == &an * &d1;
            let mut c = CheckResult::new("q-one-specialization", Some(k), None, ok, || format!("{n1} / {d1}"));
            c.stat = Some(name);
            report.checks.push(c);
        }

        let gk = gkcon_gf(k);
        let reconstructed = {
            use crate::algebra::substitute_b;
            let num = substitute_b(&poly_det(&build_system_matrix(k)).expect("exact in Z[b]"));
            let den = &num - &substitute_b(&term_sum(k)).shift_x(1);
            RationalGF::new(num, den).expect("constant term is 1")
        };
        report.checks.push(CheckResult::new("gf-reconstruction", Some(k), None, reconstructed.same_function(&gk), || {
            "det A / (det A - x * term sum) differs from the closed form".into()
        }));

        let conditional = solve_conditional_gfs(k);
        let mut sum = RationalGF::one();
        for g in &conditional {
            sum = &sum + g;
        }
        report.checks.push(CheckResult::new("conditional-sum", Some(k), None, sum.same_function(&gk), || {
            "1 + sum of last-letter GFs differs from the whole GF".into()
        }));

        let lhs = implicit_relation_lhs(k, &conditional);
        let series = lhs.series_coefficients(cfg.nmax);
        let series_ok = series.iter().enumerate().all(|(n, c)| if n == 0 { *c == QPolynomial::one() } else { c.is_zero() });
        report.checks.push(CheckResult::new("implicit-relation-series", Some(k), Some(cfg.nmax), series_ok, || {
            format!("series {:?}", series.iter().map(ToString::to_string).collect::<Vec<_>>())
        }));
        if k <= cfg.exact_identity_kmax {
            let exact = lhs.same_function(&RationalGF::one());
            report.checks.push(CheckResult::new("implicit-relation-exact", Some(k), None, exact, || {
                "cross-multiplied identity does not reduce to 1".into()
            }));
        }

        let dk = kcon_gf(k).derivative_q_at_1();
        let ok = dk.same_function(&kcon_total_gf(k));
        report.checks.push(CheckResult::new("kcon-derivative", Some(k), None, ok, || {
            "d/dq C_k at q=1 differs from (k-1)x^2/(1-kx)^2".into()
        }));
        let dg = gk.derivative_q_at_1();
        let c: BigInt = BigInt::from(k) * BigInt::from(k + 1) / BigInt::from(2);
        let ok = dg.same_function(&scaled_square_gf(c.clone(), k));
        report.checks.push(CheckResult::new("gkcon-derivative", Some(k), None, ok, || {
            format!("d/dq GC_k at q=1 differs from {c} x^2/(1-kx)^2")
        }));

        let ks = dk.series_coefficients(cfg.series_nmax);
        let gs = dg.series_coefficients(cfg.series_nmax);
        let mut ok = true;
        let mut detail = String::new();
        for n in 0..=cfg.series_nmax {
            let kc = big(&kcon_total(n, k));
            let gc = big(&gkcon_total(n, k));
            if ks[n] != kc || gs[n] != gc {
                ok = false;
                detail = format!("n={n}: kcon series {} vs {}, gkcon series {} vs {}", ks[n], kc, gs[n], gc);
                break;
            }
        }
        report.checks.push(CheckResult::new("total-vs-series", Some(k), Some(cfg.series_nmax), ok, || detail));
    }
}

fn big(n: &BigUint) -> QPolynomial {
    QPolynomial::constant(BigInt::from(n.clone()))
}

fn floor_sum_cells(cfg: &VerifyConfig, report: &mut VerifyReport) {
    let mut bad = None;
    for k in 1..=cfg.floor_kmax {
        let (first, second) = floor_sum_identity(k);
        let ok = if k % 2 == 0 { first == i64::from(k / 2) } else { second == 0 };
        if !ok {
            bad = Some((k, first, second));
            break;
        }
    }
    report.checks.push(CheckResult::new("floor-sum", Some(cfg.floor_kmax), None, bad.is_none(), || {
        let (k, a, b) = bad.unwrap();
        format!("k={k}: sums ({a}, {b})")
    }));
}

fn stated_value_findings(report: &mut VerifyReport) {
    for d in stated_discrepancies() {
        report.findings.push(Finding {
            topic: "erratum",
            k: Some(d.stated.k),
            message: format!(
                "{} stated as {:?}, direct evaluation gives {}",
                d.stated.label(),
                d.stated.text,
                if d.stated.column.is_some() { format!("a({})", d.computed) } else { d.computed.to_string() },
            ),
        });
    }
    report.findings.push(Finding {
        topic: "erratum",
        k: Some(1),
        message: "A for k=1 is stated as 1; the pair (1,1) sums to 2 > 1, so A = [1 - b], \
                  which enumeration confirms (1^n has n - 1 gk-connectors)"
            .to_string(),
    });
}

/// Runs every cross-check. Distribution cells for different `k` run on
/// separate threads; results are merged in `k` order.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::default();
    let cells: Vec<Vec<CheckResult>> = thread::scope(|scope| {
        let handles: Vec<_> = (1..=cfg.kmax)
            .flat_map(|k| [ConnectorKind::SumEquals, ConnectorKind::SumGreater].map(|kind| (k, kind)))
            .map(|(k, kind)| scope.spawn(move || distribution_cells(k, kind, cfg)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verify worker panicked")).collect()
    });
    report.checks.extend(cells.into_iter().flatten());
    generating_function_cells(cfg, &mut report);
    determinant_cells(cfg, &mut report);
    floor_sum_cells(cfg, &mut report);
    stated_value_findings(&mut report);
    report
}

/// Rational function of `x` alone with the given integer coefficients.
pub fn x_rational(num: &[i64], den: &[i64]) -> RationalGF {
    use crate::algebra::BivariatePolynomial;
    RationalGF::new(
        BivariatePolynomial::from_x_poly(&XPolynomial::from_i64s(num)),
        BivariatePolynomial::from_x_poly(&XPolynomial::from_i64s(den)),
    )
    .expect("unit constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn smallest_instance_passes() {
        let report = run(&VerifyConfig::new(1, 3));
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn small_instance_passes_and_reports_findings() {
        let cfg = VerifyConfig { det_kmax: 6, series_nmax: 20, ..VerifyConfig::new(3, 5) };
        let report = run(&cfg);
        assert!(report.passed(), "{:?}", report.first_failure());
        assert!(report.findings.iter().any(|f| f.topic == "erratum" && f.message.contains("a(-b+1)")));
        assert!(report.findings.iter().any(|f| f.topic == "cramer-permutation" && f.k == Some(4)));
        assert_eq!(report.count("distribution"), (36, 36));
    }

    #[test]
    fn cap_skips_brute_force_without_failing() {
        let cfg = VerifyConfig { enum_cap: 10, det_kmax: 2, series_nmax: 5, floor_kmax: 4, ..VerifyConfig::new(2, 4) };
        let report = run(&cfg);
        assert!(report.passed());
        assert!(report.checks.iter().any(|c| matches!(c.outcome, Outcome::Skipped(_))));
    }

    #[test]
    fn derivative_examples() {
        assert!(kcon_gf(2).derivative_q_at_1().same_function(&x_rational(&[0, 0, 1], &[1, -4, 4])));
        assert!(gkcon_gf(3).derivative_q_at_1().same_function(&x_rational(&[0, 0, 6], &[1, -6, 9])));
    }

    #[test]
    fn total_from_distribution_example() {
        // 5 + 2q + q^2: two words with one connector, one with two.
        assert_eq!(total_from_distribution(&QPolynomial::from_i64s(&[5, 2, 1])), BigInt::from(4));
        assert!(total_from_distribution(&QPolynomial::one()).is_zero());
    }
}
