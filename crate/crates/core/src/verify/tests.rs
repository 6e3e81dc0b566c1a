use super::*;

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[test]
fn table_up_to_nine() {
    let r = verify("table", &params(&[("n_max", 9)])).unwrap();
    assert_eq!(r.status, Status::Verified, "{r}");
    let odd: Vec<BigInt> = r.details.iter().filter(|d| !d.expected.is_zero_value()).map(|d| d.actual.clone()).collect();
    let want: Vec<BigInt> = [-1, 3, -26, 646].into_iter().map(BigInt::from).collect();
    assert_eq!(odd, want);
}

trait ZeroValue {
    fn is_zero_value(&self) -> bool;
}

impl ZeroValue for BigInt {
    fn is_zero_value(&self) -> bool {
        *self == BigInt::from(0)
    }
}

#[test]
fn signed_dd_grid_verifies() {
    let r = verify("theorem1", &params(&[("max_entry", 4), ("max_len", 4)])).unwrap();
    assert_eq!(r.status, Status::Verified, "{r}");
    assert!(r.details.len() > 50);
}

#[test]
fn odd_staircase_small() {
    let r = verify("conjecture", &params(&[("m_max", 3)])).unwrap();
    assert_eq!(r.status, Status::Verified, "{r}");
    assert_eq!(r.details[2].actual, BigInt::from(-26));
    assert_eq!(r.details[2].expected, BigInt::from(-26));
}

#[test]
fn vanishing_at_four() {
    let r = verify("vanishing", &params(&[("n", 4)])).unwrap();
    assert_eq!(r.status, Status::Verified, "{r}");
    assert!(!r.details.is_empty());
}

#[test]
fn unknown_identity_is_an_error() {
    assert!(matches!(verify("nope", &BTreeMap::new()), Err(Error::InvalidInput(_))));
}

#[test]
fn unsupported_parameters_skip() {
    let r = verify("table", &params(&[("n_max", 40)])).unwrap();
    assert_eq!(r.status, Status::Skipped);
    assert!(r.note.is_some());
    let r = verify("table", &params(&[("n_max", 11)])).unwrap();
    assert_eq!(r.status, Status::Skipped);
    let r = verify("wni", &params(&[("bogus", 1)])).unwrap();
    assert_eq!(r.status, Status::Skipped);
}

#[test]
fn failed_detail_means_failed_status() {
    let d = Detail::new("x", 1, 2);
    assert!(!d.holds());
    let r = VerificationReport {
        identity_id: "x".into(),
        parameters: BTreeMap::new(),
        status: Status::Failed,
        details: vec![d],
        elapsed_ms: 0,
        note: None,
    };
    assert_eq!(r.failures().count(), 1);
    assert!(r.to_string().contains("FAIL"));
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = verify("lemma2", &params(&[("seed", 7)])).unwrap();
    let b = verify("lemma2", &params(&[("seed", 7)])).unwrap();
    assert_eq!(a.status, Status::Verified, "{a}");
    assert_eq!(a.details, b.details);
    assert_eq!(a.details.len(), 30);
}
