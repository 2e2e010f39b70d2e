use hall_core::families::{corpus, pell_agreement, verify_entry, verify_record, FamilyRecord};
use hall_core::numeric::{ratio_report, scan_family, specialize, specialize_entry, WitnessLine};
use hall_core::{build_cubic, build_cubic_via_pell, Error, HallWitness, IntPoly};
use num_bigint::BigInt;

#[test]
fn pell_route_agrees_with_direct_construction() {
    for k in (3..=41).step_by(2) {
        let direct = build_cubic(k).unwrap();
        let via = build_cubic_via_pell(k).unwrap();
        assert_eq!(direct.x(), via.x(), "k = {k}");
        assert_eq!(direct.d(), via.d(), "k = {k}");
        // y is determined up to sign by x and d.
        assert!(direct.y() == via.y() || direct.y() == &-via.y(), "k = {k}");
        let a = pell_agreement(k).unwrap();
        assert!(a.x_agrees && a.d_agrees, "k = {k}");
    }
    assert!(build_cubic(4).is_err());
    assert!(build_cubic_via_pell(1).is_err());
}

#[test]
fn scan_is_ordered_and_matches_specialize() {
    let inst = build_cubic(5).unwrap();
    let ws = scan_family(&inst, -40, 40).unwrap();
    let ts: Vec<i64> = ws.iter().map(|w| i64::try_from(w.t().unwrap()).unwrap()).collect();
    assert!(ts.windows(2).all(|p| p[0] < p[1]));
    for w in &ws {
        let again = specialize(&inst, w.t().unwrap()).unwrap();
        assert_eq!(&again, w);
        assert_eq!(w.x().pow(3) - w.y().pow(2), *w.d());
    }
    assert_eq!(scan_family(&inst, -40, 40).unwrap(), ws);
}

#[test]
fn witness_lines_round_trip() {
    let inst = build_cubic(9).unwrap();
    let w = specialize(&inst, &BigInt::from(123)).unwrap();
    let text = serde_json::to_string(&w).unwrap();
    let line: WitnessLine = serde_json::from_str(&text).unwrap();
    assert_eq!(HallWitness::from_line(&line).unwrap(), w);
    assert_eq!(line.ratio, ratio_report(&w, 6));

    let mut bad = line.clone();
    bad.y = "1".into();
    assert!(matches!(HallWitness::from_line(&bad), Err(Error::InvariantViolated(_))));
    bad.x = "01".into();
    assert!(matches!(HallWitness::from_line(&bad), Err(Error::Parse(_))));
}

#[test]
fn corpus_entries_specialize_where_integral() {
    let entries = corpus().unwrap();
    let bchs = entries.iter().find(|e| e.name == "bchs").unwrap();
    for t0 in [3, 9, -3, 27] {
        let w = specialize_entry(bchs, &BigInt::from(t0)).unwrap();
        assert!(w.x() > &BigInt::from(0));
    }
    assert!(matches!(specialize_entry(bchs, &BigInt::from(4)), Err(Error::DegenerateWitness(_))));
}

#[test]
fn tampered_corpus_entry_is_named() {
    let mut bchs = corpus().unwrap().into_iter().find(|e| e.name == "bchs").unwrap();
    let mut coeffs = bchs.y.num().coeffs().to_vec();
    coeffs[15] += 1;
    bchs.y = hall_core::RatPoly::new(IntPoly::from_coeffs(coeffs), bchs.y.den().clone()).unwrap();
    match verify_entry(&bchs) {
        Err(Error::CorpusCorrupted { entry, detail }) => {
            assert_eq!(entry, "bchs");
            assert!(detail.starts_with("coefficient of t^"), "{detail}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn records_from_other_k_are_rejected() {
    let mut rec = FamilyRecord::from(&build_cubic(5).unwrap());
    assert!(verify_record(&rec).verified);
    rec.k = 7;
    rec.delta = 6;
    let report = verify_record(&rec);
    assert!(!report.verified);
    assert!(report.failures().any(|c| c.label == "matches construction"));
}
