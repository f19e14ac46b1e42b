use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use ssgl2::classno::{census_types, CensusReport};

pub const SCHEMA_VERSION: &str = "1.0";

pub fn ratio(report: &CensusReport) -> Option<BigRational> {
    let total = report.total?;
    let pp = BigInt::from(report.p) * BigInt::from(report.p);
    Some(BigRational::new(BigInt::from(total) * 9, pp))
}

/// Rounds half up to six decimals, e.g. `6.979592`.
pub fn decimal6(r: &BigRational) -> String {
    let scale = BigInt::from(1_000_000);
    let scaled: BigInt = r.numer() * &scale * 2 + r.denom();
    let n = scaled.div_floor(&(r.denom() * 2));
    let (int, frac) = n.div_mod_floor(&scale);
    format!("{int}.{frac:0>6}")
}

pub fn to_json(report: &CensusReport) -> Value {
    let mut terms = Map::new();
    for (t, v) in &report.terms {
        terms.insert(t.key(), v.map_or(Value::Null, Value::from));
    }
    json!({
        "schema_version": SCHEMA_VERSION,
        "p": report.p,
        "assumptions_ok": report.assumptions_ok,
        "terms": terms,
        "total": report.total,
        "ratio": ratio(report).map(|r| r.to_string()),
        "notes": report.notes,
    })
}

fn column_name(key: &str) -> String {
    format!("o{}", key.replace(',', "_"))
}

pub fn csv_header() -> String {
    let mut cols = vec!["p".to_string()];
    cols.extend(census_types().iter().map(|t| column_name(&t.key())));
    cols.push("total".into());
    cols.push("ratio".into());
    cols.join(",")
}

pub fn csv_row(report: &CensusReport) -> String {
    let mut cols = vec![report.p.to_string()];
    for t in census_types() {
        cols.push(report.terms[&t].map_or(String::new(), |v| v.to_string()));
    }
    cols.push(report.total.map_or(String::new(), |v| v.to_string()));
    cols.push(ratio(report).map_or(String::new(), |r| decimal6(&r)));
    cols.join(",")
}

pub fn text(report: &CensusReport) -> String {
    let mut out = format!("p = {}\nassumptions_ok = {}\n", report.p, report.assumptions_ok);
    for (t, v) in &report.terms {
        let v = v.map_or("deferred".to_string(), |v| v.to_string());
        out.push_str(&format!("o{t} = {v}\n"));
    }
    match (report.total, ratio(report)) {
        (Some(total), Some(r)) => {
            out.push_str(&format!("total = {total}\nratio = {r} ({})\n", decimal6(&r)));
        }
        _ => out.push_str("total = unavailable\n"),
    }
    for n in &report.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rounding() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(decimal6(&r(342, 49)), "6.979592");
        assert_eq!(decimal6(&r(1, 1)), "1.000000");
        assert_eq!(decimal6(&r(1, 3)), "0.333333");
        assert_eq!(decimal6(&r(2, 3)), "0.666667");
        assert_eq!(decimal6(&r(1, 2_000_000)), "0.000001");
    }

    #[test]
    fn csv_and_json_agree() {
        for p in [5u64, 7, 13, 101] {
            let rep = ssgl2::classno::census(p).unwrap();
            let j = to_json(&rep);
            let row = csv_row(&rep);
            let fields: Vec<&str> = row.split(',').collect();
            assert_eq!(fields.len(), csv_header().split(',').count());
            for (i, t) in census_types().iter().enumerate() {
                let from_json = &j["terms"][t.key()];
                let from_csv = fields[i + 1];
                match from_json.as_u64() {
                    Some(v) => assert_eq!(from_csv, v.to_string()),
                    None => assert_eq!(from_csv, ""),
                }
            }
        }
    }
}
