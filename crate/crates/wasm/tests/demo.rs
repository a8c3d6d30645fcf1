use sobolex_wasm::{basis_view, gram_report, sample_grid, triangle_basis};

#[test]
fn auto_family_follows_last_parameter() {
    let u = triangle_basis(2, "0,0,-1", "auto", "").unwrap();
    let r = triangle_basis(2, "0,0,0", "auto", "").unwrap();
    assert_eq!(u.len(), 3);
    assert_eq!(r.len(), 3);
    assert_ne!(u.polys(), r.polys());
}

#[test]
fn basis_view_lists_every_element() {
    let v: serde_json::Value = serde_json::from_str(&basis_view(3, "1/2,0,1", "rodrigue", "").unwrap()).unwrap();
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 4);
    assert_eq!(v["family"]["kind"], "rodrigue");
    assert!(elements.iter().all(|e| e["display"].as_str().is_some_and(|s| !s.is_empty())));
}

#[test]
fn grid_is_nan_outside_the_triangle() {
    let res = 16;
    let g = sample_grid(2, "0,0,0", "rodrigue", "", 1, res).unwrap();
    assert_eq!(g.len(), res * res);
    // Top-right cell lies outside, bottom-left inside.
    assert!(g[res - 1].is_nan());
    assert!(g[(res - 1) * res].is_finite());
}

#[test]
fn constant_element_samples_constant() {
    let g = sample_grid(0, "0,0,0", "rodrigue", "", 0, 8).unwrap();
    let inside: Vec<f64> = g.into_iter().filter(|v| !v.is_nan()).collect();
    assert!(!inside.is_empty());
    assert!(inside.iter().all(|v| (v - inside[0]).abs() < 1e-12));
}

#[test]
fn classical_gram_is_positive_and_lower_orthogonal() {
    // Elements of equal degree need not be mutually orthogonal.
    let same = gram_report(3, "0,1/2,0", "rodrigue", "", "same").unwrap();
    assert_eq!(same.positive_definite, Some(true));
    let lower = gram_report(3, "0,1/2,0", "rodrigue", "", "lower").unwrap();
    assert_eq!(lower.orthogonal_to_lower_degree, Some(true));
}

#[test]
fn sobolev_space_is_orthogonal_to_lower_degree() {
    for gamma in ["0,0,-1", "1/2,-1,-1", "-1,-1,-1"] {
        let r = gram_report(3, gamma, "u", r#"{"main":"2"}"#, "lower").unwrap();
        assert_eq!(r.orthogonal_to_lower_degree, Some(true), "{gamma}");
    }
}

#[test]
fn bad_input_is_an_error() {
    assert!(triangle_basis(2, "0,0", "auto", "").is_err());
    assert!(triangle_basis(2, "0,0,0", "u", "").is_err());
    assert!(triangle_basis(2, "0,0,0", "nope", "").is_err());
    assert!(sample_grid(1, "0,0,0", "rodrigue", "", 9, 4).is_err());
    assert!(gram_report(0, "0,0,0", "rodrigue", "", "lower").is_err());
    assert!(gram_report(2, "-1,0,0", "rodrigue", "", "same").is_err());
}
