//! Acceptance suite: every shipped claim, one test per criterion, each at
//! its stated tolerance and sample count. Prints one pass/fail line per
//! criterion.

use ejalab::report::CheckResult;
use ejalab::suites::{self, SuiteConfig};

const SEED: u64 = 0xACCE;

fn cfg() -> SuiteConfig {
    // 1000 samples is the stated default; criteria that specify smaller
    // counts (500/200/100) clamp internally
    SuiteConfig::new(SEED)
}

fn report_line(number: u32, title: &str, checks: &[CheckResult]) {
    let failed: Vec<&CheckResult> = checks.iter().filter(|c| !c.passed()).collect();
    let worst = checks
        .iter()
        .filter_map(|c| c.residual)
        .fold(0.0f64, f64::max);
    if failed.is_empty() {
        println!("criterion {number:02} [{title}]: PASS ({} checks, worst residual {worst:.3e})", checks.len());
    } else {
        println!("criterion {number:02} [{title}]: FAIL");
        for c in &failed {
            println!("  ✗ {} (residual {:?} tol {:?}) {}", c.name, c.residual, c.tolerance, c.detail.clone().unwrap_or_default());
        }
    }
    assert!(failed.is_empty(), "criterion {number:02} failed");
}

#[test]
fn criterion_01_jordan_axioms() {
    let checks = suites::criterion01_jordan_axioms(&cfg());
    // every family and size in scope is present
    assert_eq!(checks.len(), 5 + 5 + 5 + 4 + 8);
    report_line(1, "Jordan axioms, 1000 triples per family", &checks);
}

#[test]
fn criterion_02_spectral_reconstruction_and_uniqueness() {
    let checks = suites::criterion02_spectral_uniqueness(&cfg());
    report_line(2, "spectral reconstruction and canonical uniqueness", &checks);
}

#[test]
fn criterion_03_self_duality() {
    let checks = suites::criterion03_self_duality(&cfg());
    report_line(3, "self-duality, easy and witnessed hard directions", &checks);
}

#[test]
fn criterion_04_homogeneity() {
    let checks = suites::criterion04_homogeneity(&cfg());
    report_line(4, "homogeneity via quadratic transport", &checks);
}

#[test]
fn criterion_05_conjugate_conditions() {
    let checks = suites::criterion05_conjugates(&cfg());
    // correlator conditions per family plus the explicit entangled-state
    // contraction for the complex family at n = 2,3,4
    assert!(checks.iter().any(|c| c.name.contains("epr_contraction")));
    report_line(5, "conjugate correlator and entangled-pairing oracle", &checks);
}

#[test]
fn criterion_06_filters() {
    let checks = suites::criterion06_filters(&cfg());
    report_line(6, "filter action, symmetry, preparation, reversibility", &checks);
}

#[test]
fn criterion_07_bit_ball() {
    let checks = suites::criterion07_bit_ball(&cfg());
    assert_eq!(checks.len(), 4);
    report_line(7, "bit balls: radius 1/√2, dimensions 2/3/5/4", &checks);
}

#[test]
fn criterion_08_diamond_cone_gap() {
    let checks = suites::criterion08_cone_gap(&cfg());
    report_line(8, "diamond-bit cone gap with LP certificates", &checks);
}

#[test]
fn criterion_09_symmetrized_sharpening() {
    let checks = suites::criterion09_sharpening(&cfg());
    report_line(9, "square bit sharpens to the diamond bit", &checks);
}

#[test]
fn criterion_10_nonsignaling_box() {
    let checks = suites::criterion10_pr_box(&cfg());
    report_line(10, "non-signaling box reproduced and verified", &checks);
}

#[test]
fn criterion_11_dagger_compactness() {
    let checks = suites::criterion11_category(&cfg());
    assert!(checks.iter().any(|c| c.name.contains("local_tomography")));
    report_line(11, "snake equations, daggers, local tomography", &checks);
}

#[test]
fn criterion_12_determinism() {
    let checks = suites::criterion12_determinism(&cfg());
    report_line(12, "byte-identical seeded reruns (probe subset)", &checks);
    // strong form: the full battery serializes identically across runs
    let one = suites::acceptance_report(&cfg()).to_json();
    let two = suites::acceptance_report(&cfg()).to_json();
    assert_eq!(one, two, "full acceptance report must be byte-identical");
    println!("criterion 12 [full-report determinism]: PASS ({} bytes)", one.len());
}
