//! Sweep tables as written to disk: shape claims over whole ranges, and
//! every row recomputed from its printed prices.

use std::collections::HashMap;

use usage_pricing::harness::{sweep, PartialConfig, RunConfig};
use usage_pricing::model::{utilities_duopoly, utilities_multiclass, utilities_two_player};
use usage_pricing::{ClassParams, MarketParams, StickinessKind, Transfers};

type Row = HashMap<String, String>;

fn table(toml: &str) -> Vec<Row> {
    let config = RunConfig::from_partial(PartialConfig::from_toml_str(toml).unwrap()).unwrap();
    let mut buf = Vec::new();
    sweep(&config).unwrap().write(&mut buf).unwrap();
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(buf.as_slice());
    let header = reader.headers().unwrap().clone();
    reader
        .records()
        .map(|r| header.iter().map(String::from).zip(r.unwrap().iter().map(String::from)).collect())
        .collect()
}

fn num(row: &Row, key: &str) -> f64 {
    row[key].parse().unwrap_or_else(|_| panic!("{key} = `{}` is not a number", row[key]))
}

fn close(recorded: f64, recomputed: f64) -> bool {
    // 12 significant digits on disk, Umax = 1
    (recorded - recomputed).abs() <= 1e-9
}

#[test]
fn competition_cp_out_earns_isp_over_gamma() {
    let rows = table("scenario = \"multiclass-competition\"\nsweep = \"gamma:0.1:10:0.1\"\n");
    assert_eq!(rows.len(), 100);
    let params = MarketParams::default();
    for r in &rows {
        assert!(num(r, "u2") >= num(r, "u1"), "{r:?}");
        let class = ClassParams::new(num(r, "x")).unwrap();
        let (u1, u2) = utilities_multiclass(&params, &class, num(r, "pl"), num(r, "ph"), num(r, "p2")).unwrap();
        assert!(close(num(r, "u1"), u1) && close(num(r, "u2"), u2), "{r:?} vs ({u1}, {u2})");
    }
}

#[test]
fn duopoly_payments_shift_revenue_to_the_cps() {
    let rows = table("scenario = \"duopoly-side-payment\"\nsweep = \"eta:0:0.3:0.01\"\n");
    assert_eq!(rows.len(), 31);
    for w in rows.windows(2) {
        assert!(num(&w[1], "u1") <= num(&w[0], "u1"));
        assert!(num(&w[1], "u2") >= num(&w[0], "u2"));
    }
}

#[test]
fn unstable_branch_pays_the_isp_more() {
    let rows = table("scenario = \"duopoly-side-payment\"\nsweep = \"eta:-0.037:-0.001:0.001\"\n");
    let mut by_x: HashMap<String, Vec<&Row>> = HashMap::new();
    for r in &rows {
        by_x.entry(r["x"].clone()).or_default().push(r);
    }
    assert_eq!(by_x.len(), 37);
    for pair in by_x.values() {
        let stable = pair.iter().find(|r| r["stability"] == "Stable").expect("stable root");
        let unstable = pair.iter().find(|r| r["stability"] == "Unstable").expect("unstable root");
        assert!(num(unstable, "u1") > num(stable, "u1"));
    }
}

#[test]
fn rows_recompute_from_their_prices() {
    let params = MarketParams::default();
    for r in table("scenario = \"side-payment\"\nsweep = \"ps:-0.9:0.9:0.05\"\n") {
        let t = Transfers::side_payment(num(&r, "x")).unwrap();
        let (u1, u2) = utilities_two_player(&params, &t, num(&r, "p1"), num(&r, "p2")).unwrap();
        assert!(close(num(&r, "u1"), u1) && close(num(&r, "u2"), u2), "{r:?}");
    }
    for r in table("scenario = \"ad-competition\"\nsweep = \"pa:0:0.5:0.05\"\n") {
        let t = Transfers::new(0.0, num(&r, "x")).unwrap();
        let (u1, u2) = utilities_two_player(&params, &t, num(&r, "p1"), num(&r, "p2")).unwrap();
        assert!(close(num(&r, "u1"), u1) && close(num(&r, "u2"), u2), "{r:?}");
    }
    for r in table("scenario = \"duopoly-side-payment\"\nsweep = \"eta:-0.05:0.3:0.01\"\n") {
        let (p1, p2, p3) = (num(&r, "p1"), num(&r, "p2"), num(&r, "p3"));
        let (u1, u2, u3) = utilities_duopoly(&params, StickinessKind::Reciprocal, num(&r, "x"), p1, p2, p3).unwrap();
        assert!(close(num(&r, "u1"), u1) && close(num(&r, "u2"), u2) && close(num(&r, "u3"), u3), "{r:?}");
    }
}
