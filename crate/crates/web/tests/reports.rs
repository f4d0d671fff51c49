use ybx_web::{basel_report, colored_report, enumerate_report, map_report};

#[test]
fn colored_grid_is_flat() {
    let v = colored_report(2.0, 9).unwrap();
    assert_eq!(v["residuals"].as_array().unwrap().len(), 81);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-9);
    assert!(v["euler"].as_f64().unwrap() < 1e-9);
    assert!(colored_report(0.0, 9).is_err());
}

#[test]
fn basel_curve_rows() {
    let v = basel_report(50).unwrap();
    assert_eq!(v["holds"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 50);
    assert_eq!(rows[1][1].as_f64().unwrap(), 1.25);
}

#[test]
fn map_checks() {
    let twist = [0, 0, 1, 0, 0, 1, 1, 1];
    assert_eq!(map_report(2, &twist, "braid").unwrap()["passed"], true);
    let constant_swap = [1, 0, 1, 0, 1, 0, 1, 0];
    assert_eq!(map_report(2, &constant_swap, "braid").unwrap()["passed"], false);
    assert!(map_report(2, &twist[..6], "braid").is_err());
    assert!(map_report(2, &twist, "sideways").is_err());
}

#[test]
fn enumeration_counts_agree() {
    let all = enumerate_report(2, "braid", false).unwrap();
    let reps = enumerate_report(2, "braid", true).unwrap();
    assert_eq!(all["count"], all["count_all"]);
    assert_eq!(reps["count"], reps["count_up_to_iso"]);
    assert_eq!(all["count_all"], reps["count_all"]);
}
