//! CSV and JSON renderings. Decimals carry exactly 12 fractional digits;
//! integers are written in full.

use serde_json::{Map, Value};

use crate::freecalc::DepthReport;
use crate::growth::{GrowthEstimate, GrowthTable};
use crate::hp::Fixed;
use crate::topology::ApproximationTable;

pub const GROWTH_HEADER: &str = "n,sphere,gamma,naive,upper";
pub const COMMUTATOR_HEADER: &str = "i,set_size,depth,f_i,equal";
pub const APPROXIMATION_HEADER: &str = "i,conv_radius,gamma_i_m,gamma_lim_m,upper_i_m";

pub fn decimal(x: &Fixed) -> String {
    x.to_decimal(12)
}

/// A JSON number written verbatim from its decimal text.
pub fn number(text: &str) -> Value {
    Value::Number(text.parse().expect("numeric literal"))
}

/// Row `n` of the growth table; `naive` and `upper` are undefined at 0.
fn growth_fields(t: &GrowthTable, est: Option<&GrowthEstimate>, n: usize) -> [String; 5] {
    let (naive, upper) = match est {
        Some(e) if n >= 1 => (decimal(e.naive(n)), decimal(e.upper(n))),
        _ => (String::new(), String::new()),
    };
    [n.to_string(), t.sphere(n).to_string(), t.gamma(n).to_string(), naive, upper]
}

pub fn growth_csv(t: &GrowthTable, est: Option<&GrowthEstimate>) -> String {
    let mut s = format!("{GROWTH_HEADER}\n");
    for n in 0..=t.radius() {
        s.push_str(&growth_fields(t, est, n).join(","));
        s.push('\n');
    }
    s
}

pub fn growth_json(t: &GrowthTable, est: Option<&GrowthEstimate>) -> Value {
    let rows = (0..=t.radius())
        .map(|n| {
            let [n_, sphere, gamma, naive, upper] = growth_fields(t, est, n);
            let opt = |x: String| if x.is_empty() { Value::Null } else { number(&x) };
            let mut row = Map::new();
            row.insert("n".into(), number(&n_));
            row.insert("sphere".into(), number(&sphere));
            row.insert("gamma".into(), number(&gamma));
            row.insert("naive".into(), opt(naive));
            row.insert("upper".into(), opt(upper));
            Value::Object(row)
        })
        .collect();
    Value::Array(rows)
}

pub fn commutators_csv(rep: &DepthReport) -> String {
    let mut s = format!("{COMMUTATOR_HEADER}\n");
    for r in &rep.rows {
        let depth = r.depth.map(|d| d.to_string()).unwrap_or_default();
        s.push_str(&format!("{},{},{},{},{}\n", r.i, r.set_size, depth, r.f_i, r.equal));
    }
    s
}

pub fn approximation_csv(t: &ApproximationTable) -> String {
    let mut s = format!("{APPROXIMATION_HEADER}\n");
    for r in &t.rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            r.i, r.conv_radius, r.gamma_i_m, r.gamma_lim_m, r.upper_i_m
        ));
    }
    s
}

pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
