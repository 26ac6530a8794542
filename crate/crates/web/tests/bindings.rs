use dcm_web::{classify_json, enumerate_json, neighbors_json};
use serde_json::Value;

#[test]
fn enumerate_lists_matchings() {
    let v: Value = serde_json::from_str(&enumerate_json(3).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(v[0], "1-2,3-4,5-6");
    assert!(enumerate_json(0).is_err());
    assert!(enumerate_json(10).is_err());
}

#[test]
fn classify_reports_class_and_degree() {
    let v: Value = serde_json::from_str(&classify_json(4, "1-8,2-3,4-7,5-6").unwrap()).unwrap();
    assert_eq!(v["class"], "Pair-DB");
    assert_eq!(v["degree"], 1);
    assert_eq!(v["edges"][0], serde_json::json!([1, 8]));
    assert!(classify_json(3, "1-3,2-4,5-6").unwrap_err().contains("cross"));
}

#[test]
fn neighbors_of_a_ring() {
    let v: Value = serde_json::from_str(&neighbors_json(4, "1-2,3-4,5-6,7-8").unwrap()).unwrap();
    assert_eq!(v["neighbors"].as_array().unwrap().len(), 3);
}
