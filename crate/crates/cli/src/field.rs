//! Field specifications: `"m"` is `Q(ζ_m)`, `"m:d"` its unique degree-`d` subfield, and
//! `"a+b"` the compositum of two such fields.

use anyhow::{bail, Context};
use galoisk::gaussjacobi::AbelianField;

pub fn parse_field(spec: &str) -> anyhow::Result<AbelianField> {
    let mut parts = spec.split('+');
    let first = parts.next().context("empty field spec")?;
    let mut field = parse_simple(first)?;
    for p in parts {
        field = field.compositum(&parse_simple(p)?)?;
    }
    Ok(field)
}

fn parse_simple(s: &str) -> anyhow::Result<AbelianField> {
    let s = s.trim();
    let (m, d) = match s.split_once(':') {
        Some((m, d)) => (m.trim().parse::<u64>()?, Some(d.trim().parse::<u64>()?)),
        None => (s.parse::<u64>().with_context(|| format!("bad field spec {s:?}"))?, None),
    };
    if m < 2 {
        bail!("conductor must be at least 2");
    }
    Ok(match d {
        Some(d) => AbelianField::subfield_of_degree(m, d)?,
        None => AbelianField::full(m)?,
    })
}
