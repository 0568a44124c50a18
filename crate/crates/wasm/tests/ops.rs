use affrt_wasm::{classify, reducibility, sample_gamma, ybe};

#[test]
fn ybe_on_sampled_points() {
    for seed in 0..5 {
        let r = ybe(&sample_gamma(seed), &sample_gamma(seed + 100)).unwrap();
        assert_eq!(r["pass"], true);
    }
    assert!(ybe("[]", &sample_gamma(1)).is_err());
}

#[test]
fn classify_identity_and_degenerate() {
    let x = r#"{"a1":"1","a2":"1","b1":"0","b2":"0","c1":"1","c2":"1"}"#;
    let y = r#"{"a1":"0","a2":"0","b1":"2","b2":"3","c1":"3","c2":"2"}"#;
    let c = classify(x, y).unwrap();
    assert_eq!(c["id"], "aff.classify.both_zero");
    assert_eq!(c["witness"]["composition_factors"], serde_json::json!([1, 2, 1]));
    let c = classify(&sample_gamma(3), &sample_gamma(4)).unwrap();
    assert_eq!(c["id"], "aff.classify.invertible");
    assert_eq!(c["verdict"], "PASS");
}

#[test]
fn reducibility_at_and_off_the_predicted_ratios() {
    let r = reducibility(1, 1, "3", "9").unwrap();
    assert_eq!(r["verdict"], "reducible");
    assert_eq!(r["witness_dim"], 3);
    let r = reducibility(1, 1, "3", "5/2").unwrap();
    assert_eq!(r["verdict"], "irreducible");
    assert_eq!(r["predicted_reducible"], false);
    assert!(reducibility(3, 3, "3", "2").is_err());
    assert!(reducibility(1, 1, "1", "2").is_err());
}
