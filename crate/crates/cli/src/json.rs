//! JSON encodings. Exact values are written as `"n/d"` strings in the power basis of
//! `Q(ζ_order)`; `--numeric` adds a `[re, im]` rendering.

use galoisk::gaussjacobi::EquivariantValue;
use galoisk::relk::{IdeleCharFn, RelKRep};
use galoisk::CycNum;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, Default)]
pub struct Style {
    pub numeric: bool,
}

pub fn rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        format!("{}/1", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn cyc(x: &CycNum, style: Style) -> Value {
    let coeffs: Vec<String> = x.coeffs().iter().map(rational).collect();
    let mut v = json!({ "order": x.order(), "coeffs": coeffs });
    if style.numeric {
        let z = x.complex_value();
        v["numeric"] = json!([z.re, z.im]);
    }
    v
}

pub fn equivariant(group: &str, x: &EquivariantValue, style: Style) -> Value {
    json!({
        "group": group,
        "entries": x.values.iter().enumerate()
            .map(|(i, v)| json!({ "char_index": i, "value": cyc(v, style) }))
            .collect::<Vec<_>>(),
    })
}

pub fn idele(f: &IdeleCharFn, style: Style) -> Value {
    Value::Array(
        f.iter()
            .map(|(l, x)| json!({ "prime": l, "values": x.values.iter().map(|v| cyc(v, style)).collect::<Vec<_>>() }))
            .collect(),
    )
}

pub fn relk_rep(r: &RelKRep, style: Style) -> Value {
    json!({
        "first": idele(&r.first, style),
        "second": r.second.values.iter().map(|v| cyc(v, style)).collect::<Vec<_>>(),
    })
}

/// Parse `"order:c0,c1,..."` with coefficients in the power basis (`"n"` or `"n/d"`).
pub fn parse_cyc(s: &str) -> anyhow::Result<CycNum> {
    let (order, rest) = s.split_once(':').ok_or_else(|| anyhow::anyhow!("element must look like order:c0,c1,..."))?;
    let order: u64 = order.trim().parse()?;
    let mut acc = CycNum::zero(order);
    for (k, c) in rest.split(',').enumerate() {
        let c = c.trim();
        if c.is_empty() {
            continue;
        }
        let r: BigRational = match c.split_once('/') {
            Some((n, d)) => BigRational::new(n.trim().parse()?, d.trim().parse()?),
            None => BigRational::from_integer(c.parse()?),
        };
        acc = &acc + &CycNum::zeta(order, k as i64).scale(&r);
    }
    Ok(acc)
}

/// Read an exact value from `{order, coeffs}`.
pub fn cyc_from_json(v: &Value) -> anyhow::Result<CycNum> {
    let order = v["order"].as_u64().ok_or_else(|| anyhow::anyhow!("missing order"))?;
    let coeffs = v["coeffs"].as_array().ok_or_else(|| anyhow::anyhow!("missing coeffs"))?;
    let joined: Vec<String> = coeffs
        .iter()
        .map(|c| c.as_str().map(str::to_owned).or_else(|| c.as_i64().map(|i| i.to_string())))
        .collect::<Option<_>>()
        .ok_or_else(|| anyhow::anyhow!("coefficients must be strings or integers"))?;
    parse_cyc(&format!("{order}:{}", joined.join(",")))
}
