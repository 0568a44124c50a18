use affine_frt::config::{ConfigError, RunConfig, SuiteName};
use affine_frt::report::{diff_reports, Report, Verdict};
use affine_frt::suite;

fn small(seed: u64) -> RunConfig {
    RunConfig { seed, suites: vec![SuiteName::Ybe], ybe_samples: 6, gamma_samples: 10, ..RunConfig::default() }
}

#[test]
fn unknown_keys_are_rejected_with_a_position() {
    let err = RunConfig::from_toml_str("seed = 3\nprobe_depth = 2\n").unwrap_err();
    match err {
        ConfigError::Parse { line, .. } => assert_eq!(line, 2),
        other => panic!("{other}"),
    }
    assert!(RunConfig::from_toml_str("seed = 3\nq = \"5/2\"\nsuites = [\"ybe\"]\n").is_ok());
}

#[test]
fn resolution_validates_q_and_ranges() {
    let bad_q = RunConfig { q: Some("1".into()), ..RunConfig::default() };
    assert!(bad_q.resolve().is_err());
    let gaussian_in_rational = RunConfig { q: Some("i".into()), ..RunConfig::default() };
    assert!(gaussian_in_rational.resolve().is_err());
    let cap = RunConfig { degree_cap: 9, ..RunConfig::default() };
    assert!(cap.resolve().is_err());
    let fixed = RunConfig { q: Some("7/3".into()), ..RunConfig::default() }.resolve().unwrap();
    assert_eq!(fixed.echo()["q"], "7/3");
    // an absent q is drawn from the seed, the same way every time
    assert_eq!(RunConfig::default().resolve().unwrap().echo(), RunConfig::default().resolve().unwrap().echo());
}

#[test]
fn same_seed_same_bytes() {
    let a = suite::run(&small(4)).unwrap().to_json();
    let b = suite::run(&small(4)).unwrap().to_json();
    assert_eq!(a, b);
    let back = Report::from_json(&a).unwrap();
    assert_eq!(back.to_json(), a);
}

#[test]
fn diffs_between_runs() {
    let a = suite::run(&small(4)).unwrap();
    let b = suite::run(&small(5)).unwrap();
    let d = diff_reports(&a, &b).unwrap();
    // all YBE checks pass for any seed
    assert!(d.is_empty(), "{d:?}");
    assert_eq!(d.unchanged, a.checks.len());
    let mut c = b.clone();
    c.checks[0].verdict = Verdict::Fail;
    let d = diff_reports(&a, &c).unwrap();
    assert_eq!(d.changed.len(), 1);
    assert_eq!(d.changed[0].after, Verdict::Fail);
}

#[test]
fn markdown_lists_every_check() {
    let r = suite::run(&small(2)).unwrap();
    let md = r.to_markdown();
    for c in &r.checks {
        assert!(md.contains(&c.id), "{}", c.id);
    }
    assert!(r.passed());
    assert_eq!(r.exit_code(), 0);
}
