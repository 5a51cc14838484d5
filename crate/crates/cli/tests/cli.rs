//! End-to-end tests of the `probclone` binary: real process spawns, real
//! files, and the exit-code contract (0 success, 1 usage/parse, 2 domain,
//! 3 verification failure).

use std::path::{Path, PathBuf};
use std::process::Output;

use probclone_cli::formats::{MachineFile, StateFile};
use probclone_cli::report::{ReportPayload, RunReport};
use tempfile::TempDir;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_probclone")
}

fn run(args: &[&str]) -> Output {
    std::process::Command::new(binary())
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_report(output: &Output) -> RunReport {
    assert!(
        output.status.success(),
        "command failed: stdout `{}`, stderr `{}`",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout parses as a run report")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process exits normally")
}

fn write_state(dir: &Path, name: &str, amplitudes: &[[f64; 2]]) -> PathBuf {
    let path = dir.join(name);
    let file = StateFile {
        dim: amplitudes.len(),
        amplitudes: amplitudes.to_vec(),
    };
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    path
}

/// The two-level example pair with overlap 1/3: |0> and
/// (1/3)|0> + (sqrt(8)/3)|1>.
fn example_pair(dir: &Path) -> (PathBuf, PathBuf) {
    let root8_over_3 = 8.0_f64.sqrt() / 3.0;
    let psi0 = write_state(dir, "psi0.json", &[[1.0, 0.0], [0.0, 0.0]]);
    let psi1 = write_state(dir, "psi1.json", &[[1.0 / 3.0, 0.0], [root8_over_3, 0.0]]);
    (psi0, psi1)
}

fn build_example_machine(dir: &Path) -> PathBuf {
    let (psi0, psi1) = example_pair(dir);
    let machine = dir.join("machine.json");
    let output = run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        psi1.to_str().unwrap(),
        "--out",
        machine.to_str().unwrap(),
    ]);
    stdout_report(&output);
    machine
}

#[test]
fn filter_demo_reports_the_documented_values_and_repeats_exactly() {
    let first = run(&["filter-demo"]);
    let report = stdout_report(&first);
    assert_eq!(report.command, "filter-demo");
    assert_eq!(report.generator_id, "splitmix64-counter/v1");
    let ReportPayload::FilterDemo(demo) = &report.results else {
        panic!("expected a filter-demo payload");
    };
    assert!((demo.fidelity_before - 0.5).abs() <= 1e-12);
    assert!(demo.fidelity_after.abs() <= 1e-12);
    assert!((demo.keep_probability_psi0 - 0.5).abs() <= 1e-12);
    assert!((demo.keep_probability_psi1 - 0.5).abs() <= 1e-12);
    assert!(demo.monotonicity_violated);

    let second = run(&["filter-demo"]);
    assert_eq!(first.stdout, second.stdout, "repeated runs must match");
}

#[test]
fn build_writes_a_machine_and_reports_eta_three_quarters() {
    let dir = TempDir::new().unwrap();
    let (psi0, psi1) = example_pair(dir.path());
    let machine_path = dir.path().join("machine.json");
    let output = run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        psi1.to_str().unwrap(),
        "--out",
        machine_path.to_str().unwrap(),
    ]);
    let report = stdout_report(&output);
    let ReportPayload::Machine(summary) = &report.results else {
        panic!("expected a machine summary");
    };
    assert!((summary.eta - 0.75).abs() <= 1e-9, "eta = {}", summary.eta);
    assert!(summary.unitarity_residual <= 1e-10);
    assert!((summary.overlap_s - 1.0 / 3.0).abs() <= 1e-9);
    assert_eq!(summary.rephase_angle, 0.0);

    let text = std::fs::read_to_string(&machine_path).unwrap();
    let file: MachineFile = serde_json::from_str(&text).unwrap();
    assert_eq!(file.dim, 2);
    assert_eq!(file.unitary.rows, 8);
    file.to_machine().expect("written machine loads strictly");
}

#[test]
fn build_of_orthogonal_pair_reports_unit_eta() {
    let dir = TempDir::new().unwrap();
    let psi0 = write_state(dir.path(), "a.json", &[[1.0, 0.0], [0.0, 0.0]]);
    let psi1 = write_state(dir.path(), "b.json", &[[0.0, 0.0], [1.0, 0.0]]);
    let out = dir.path().join("m.json");
    let output = run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        psi1.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let report = stdout_report(&output);
    let ReportPayload::Machine(summary) = &report.results else {
        panic!("expected a machine summary");
    };
    assert_eq!(summary.eta, 1.0);
    assert_eq!(summary.overlap_s, 0.0);
}

#[test]
fn build_records_the_removed_phase_without_changing_eta() {
    let dir = TempDir::new().unwrap();
    let angle = std::f64::consts::FRAC_PI_4;
    let (sin_a, cos_a) = angle.sin_cos();
    let root8_over_3 = 8.0_f64.sqrt() / 3.0;
    let psi0 = write_state(dir.path(), "a.json", &[[1.0, 0.0], [0.0, 0.0]]);
    let psi1 = write_state(
        dir.path(),
        "b.json",
        &[
            [cos_a / 3.0, sin_a / 3.0],
            [cos_a * root8_over_3, sin_a * root8_over_3],
        ],
    );
    let out = dir.path().join("m.json");
    let output = run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        psi1.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let report = stdout_report(&output);
    let ReportPayload::Machine(summary) = &report.results else {
        panic!("expected a machine summary");
    };
    assert!((summary.rephase_angle - angle).abs() <= 1e-9);
    assert!((summary.eta - 0.75).abs() <= 1e-9);
}

#[test]
fn build_failure_modes_have_distinct_codes_and_messages() {
    let dir = TempDir::new().unwrap();
    let (psi0, _) = example_pair(dir.path());
    let out = dir.path().join("m.json");

    // Missing file: usage/parse, exit 1.
    let missing = run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        dir.path().join("nope.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&missing), 1);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("cannot read"));

    // Unparseable file: usage/parse, exit 1.
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{не json").unwrap();
    let parse = run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        garbled.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&parse), 1);
    assert!(String::from_utf8_lossy(&parse.stderr).contains("cannot parse"));

    // Near-identical states: domain, exit 2.
    let twin = write_state(dir.path(), "twin.json", &[[1.0, 0.0], [0.0, 0.0]]);
    let identical = run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        twin.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&identical), 2);
    assert!(String::from_utf8_lossy(&identical.stderr).contains("identical"));

    // Dimension mismatch: domain, exit 2, different message.
    let three = write_state(
        dir.path(),
        "three.json",
        &[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
    );
    let mismatch = run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        three.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&mismatch), 2);
    let message = String::from_utf8_lossy(&mismatch.stderr).to_string();
    assert!(message.contains("dimension"), "stderr: {message}");
    assert!(!message.contains("identical"), "messages must be distinct");
}

#[test]
fn build_renormalizes_slightly_off_states_with_a_warning() {
    let dir = TempDir::new().unwrap();
    let psi0 = write_state(dir.path(), "a.json", &[[1.0 + 1e-8, 0.0], [0.0, 0.0]]);
    let psi1 = write_state(dir.path(), "b.json", &[[0.0, 0.0], [1.0, 0.0]]);
    let out = dir.path().join("m.json");
    let output = run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        psi1.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    stdout_report(&output);
    assert!(String::from_utf8_lossy(&output.stderr).contains("renormalized"));

    // Far off unity: domain error.
    let bad = write_state(dir.path(), "bad.json", &[[0.5, 0.0], [0.0, 0.0]]);
    let rejected = run(&[
        "build",
        "--psi0",
        bad.to_str().unwrap(),
        "--psi1",
        psi1.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&rejected), 2);
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("norm"));
}

#[test]
fn clone_simulates_with_reproducible_statistics() {
    let dir = TempDir::new().unwrap();
    let machine = build_example_machine(dir.path());
    let args = [
        "clone",
        "--machine",
        machine.to_str().unwrap(),
        "--input",
        "1",
        "--shots",
        "90000",
        "--seed",
        "42",
    ];
    let first = run(&args);
    let report = stdout_report(&first);
    let ReportPayload::Simulation(sim) = &report.results else {
        panic!("expected a simulation payload");
    };
    assert_eq!(sim.shots, 90_000);
    assert_eq!(sim.seed, 42);
    assert_eq!(sim.input_label, 1);
    assert!((sim.analytic_eta - 0.75).abs() <= 1e-9);
    assert!(sim.z_score.abs() <= 3.0, "z = {}", sim.z_score);
    assert!(sim.mean_clone_fidelity >= 1.0 - 1e-9);
    assert!((sim.empirical_eta - sim.successes as f64 / 90_000.0).abs() == 0.0);

    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "same seed must reproduce");
}

#[test]
fn clone_of_a_deterministic_machine_always_succeeds() {
    let dir = TempDir::new().unwrap();
    let psi0 = write_state(dir.path(), "a.json", &[[1.0, 0.0], [0.0, 0.0]]);
    let psi1 = write_state(dir.path(), "b.json", &[[0.0, 0.0], [1.0, 0.0]]);
    let machine = dir.path().join("m.json");
    stdout_report(&run(&[
        "build",
        "--psi0",
        psi0.to_str().unwrap(),
        "--psi1",
        psi1.to_str().unwrap(),
        "--out",
        machine.to_str().unwrap(),
    ]));
    let output = run(&[
        "clone",
        "--machine",
        machine.to_str().unwrap(),
        "--input",
        "0",
        "--shots",
        "1",
        "--seed",
        "5",
    ]);
    let report = stdout_report(&output);
    let ReportPayload::Simulation(sim) = &report.results else {
        panic!("expected a simulation payload");
    };
    assert_eq!(sim.successes, 1);
}

#[test]
fn clone_rejects_corrupt_machines_and_bad_flags() {
    let dir = TempDir::new().unwrap();
    let machine = build_example_machine(dir.path());

    // Perturb one unitary entry: strict load must fail with exit 2.
    let text = std::fs::read_to_string(&machine).unwrap();
    let mut file: MachineFile = serde_json::from_str(&text).unwrap();
    file.unitary.entries[3][0] += 1e-3;
    std::fs::write(&machine, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let corrupt = run(&[
        "clone",
        "--machine",
        machine.to_str().unwrap(),
        "--input",
        "0",
        "--shots",
        "10",
    ]);
    assert_eq!(exit_code(&corrupt), 2);
    assert!(String::from_utf8_lossy(&corrupt.stderr).contains("corrupt machine file"));

    // Flags outside their ranges: exit 1 from the parser.
    let bad_input = run(&[
        "clone",
        "--machine",
        machine.to_str().unwrap(),
        "--input",
        "2",
        "--shots",
        "10",
    ]);
    assert_eq!(exit_code(&bad_input), 1);
    let zero_shots = run(&[
        "clone",
        "--machine",
        machine.to_str().unwrap(),
        "--input",
        "0",
        "--shots",
        "0",
    ]);
    assert_eq!(exit_code(&zero_shots), 1);
}

#[test]
fn bound_evaluates_the_closed_forms() {
    let half = run(&["bound", "--overlap", "0.5"]);
    let report = stdout_report(&half);
    let ReportPayload::Bound(bound) = &report.results else {
        panic!("expected a bound payload");
    };
    assert!((bound.universal_bound - 2.0 / 3.0).abs() <= 1e-12);
    assert!(bound.mean_efficiency_bound.is_none());

    let zero = run(&["bound", "--overlap", "0"]);
    let report = stdout_report(&zero);
    let ReportPayload::Bound(bound) = &report.results else {
        panic!("expected a bound payload");
    };
    assert_eq!(bound.universal_bound, 1.0);

    let flagged = run(&["bound", "--overlap", "0.5", "--flag-overlap", "0"]);
    let report = stdout_report(&flagged);
    let ReportPayload::Bound(bound) = &report.results else {
        panic!("expected a bound payload");
    };
    assert!((bound.mean_efficiency_bound.unwrap() - 0.5).abs() <= 1e-12);

    let out_of_range = run(&["bound", "--overlap", "1.5"]);
    assert_eq!(exit_code(&out_of_range), 2);
}

#[test]
fn verify_passes_fresh_machines_and_fails_perturbed_ones() {
    let dir = TempDir::new().unwrap();
    let machine = build_example_machine(dir.path());

    let good = run(&["verify", "--machine", machine.to_str().unwrap()]);
    let report = stdout_report(&good);
    let ReportPayload::Verification(outcome) = &report.results else {
        panic!("expected a verification payload");
    };
    assert!(outcome.passed);
    assert!(outcome.failures.is_empty());
    assert!(outcome.unitarity_residual <= 1e-10);
    assert!(outcome.mapping_residual0 <= 1e-9);
    assert!(outcome.mapping_residual1 <= 1e-9);
    let analysis = outcome.analysis.as_ref().unwrap();
    assert!(analysis.saturated);
    assert!((analysis.eta0 - 0.75).abs() <= 1e-9);
    assert!((analysis.eta1 - 0.75).abs() <= 1e-9);
    assert_eq!(analysis.flag_overlap, [1.0, 0.0]);

    let text = std::fs::read_to_string(&machine).unwrap();
    let mut file: MachineFile = serde_json::from_str(&text).unwrap();
    file.unitary.entries[5][0] += 1e-3;
    std::fs::write(&machine, serde_json::to_string_pretty(&file).unwrap()).unwrap();

    let bad = run(&["verify", "--machine", machine.to_str().unwrap()]);
    assert_eq!(exit_code(&bad), 3);
    let report: RunReport = serde_json::from_slice(&bad.stdout).unwrap();
    let ReportPayload::Verification(outcome) = &report.results else {
        panic!("expected a verification payload");
    };
    assert!(!outcome.passed);
    assert!(outcome
        .failures
        .iter()
        .any(|f| f.contains("unitarity_residual")));
    assert!(outcome.analysis.is_none());
}

#[test]
fn verify_tolerance_flags_change_the_verdict() {
    let dir = TempDir::new().unwrap();
    let machine = build_example_machine(dir.path());
    // Absurdly strict unitarity demand: even a fresh machine fails.
    let strict = run(&[
        "verify",
        "--machine",
        machine.to_str().unwrap(),
        "--unitary-tol",
        "1e-18",
    ]);
    assert_eq!(exit_code(&strict), 3);
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let output = run(&[
        "bound",
        "--overlap",
        "0.25",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    assert!(output.stdout.is_empty(), "report goes to the file only");
    let text = std::fs::read_to_string(&path).unwrap();
    let report: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.command, "bound");
    assert_eq!(report.schema_version, 1);
    assert!(!report.tool_version.is_empty());
}

#[test]
fn usage_errors_and_help_have_their_own_codes() {
    let none = run(&[]);
    assert_eq!(exit_code(&none), 1);
    let help = run(&["--help"]);
    assert_eq!(exit_code(&help), 0);
    assert!(String::from_utf8_lossy(&help.stdout).contains("filter-demo"));
    let unknown = run(&["frobnicate"]);
    assert_eq!(exit_code(&unknown), 1);
}
