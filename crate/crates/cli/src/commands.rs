use anyhow::{bail, Context};
use galoisk::arith;
use galoisk::classgroups::{betti_closed_form, betti_second_component, key_diagram_check};
use galoisk::gaussjacobi::{
    galois_jacobi, gauss_sum, jacobi_sum, local_galois_gauss, verify_label_product, AbelianField, DirichletChar,
    EquivariantValue, LocalAbelianChar, LocalBase, ReciprocityEntry, ReciprocityTable,
};
use galoisk::groups::{build_group, irr_table, GroupSpec, IrrTable};
use galoisk::relk::{self, AmbientLatticeSpec, IdeleCharFn, RelKRep, Verdict};
use galoisk::weakram::{enumerate_l2p, enumerate_p3, ExtClass};
use galoisk::CycNum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::Path;

use crate::field::parse_field;
use crate::json::{cyc, cyc_from_json, equivariant, parse_cyc, relk_rep, Style};
use crate::scenario::Scenario;

/// A command result: the JSON document and whether every check in it passed.
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Outcome {
        Outcome { value, ok: true }
    }
}

pub fn table_for(spec: &str) -> anyhow::Result<IrrTable> {
    let g = build_group(&GroupSpec::parse(spec)?)?;
    Ok(irr_table(&g)?)
}

pub fn chartable(group: &str, style: Style) -> anyhow::Result<Outcome> {
    let t = table_for(group)?;
    let classes: Vec<Value> =
        t.classes().iter().map(|c| json!({ "representative": c.rep, "size": c.size, "order": c.order })).collect();
    let chars: Vec<Value> = (0..t.num_chars())
        .map(|i| {
            json!({
                "index": i,
                "degree": t.degree(i),
                "fs_indicator": t.fs_indicator(i),
                "values": t.values(i).iter().map(|v| cyc(v, style)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({
        "group": group,
        "order": t.group().size(),
        "exponent": t.exponent(),
        "degrees": t.degrees(),
        "classes": classes,
        "characters": chars,
    })))
}

fn field_group_label(f: &AbelianField) -> String {
    format!("Gal(L/Q), L in Q(zeta_{}) of degree {}", f.conductor_modulus(), f.degree())
}

pub struct GaussArgs<'a> {
    pub modulus: Option<u64>,
    pub field: Option<&'a str>,
    pub index: Option<usize>,
    pub local_degree: u32,
    pub frobenius: Option<&'a str>,
    pub reciprocity_table: Option<&'a Path>,
    pub group: Option<&'a str>,
    pub character: Option<usize>,
}

fn load_reciprocity(path: &Path) -> anyhow::Result<ReciprocityTable> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text)?;
    let p = v["p"].as_u64().context("reciprocity table needs p")?;
    let entries = v["entries"]
        .as_array()
        .context("reciprocity table needs entries")?
        .iter()
        .map(|e| {
            Ok(ReciprocityEntry {
                residue: e["residue"].as_u64().context("entry needs residue")?,
                group_element: e["group_element"].as_u64().context("entry needs group_element")? as usize,
                additive: cyc_from_json(&e["additive"])?,
            })
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(ReciprocityTable { p, entries })
}

pub fn gauss(a: GaussArgs<'_>, style: Style) -> anyhow::Result<Outcome> {
    if let Some(path) = a.reciprocity_table {
        let rec = load_reciprocity(path)?;
        let t = table_for(a.group.context("--group is required with a reciprocity table")?)?;
        let i = a.character.context("--char is required with a reciprocity table")?;
        if i >= t.num_chars() || t.degree(i) != 1 {
            bail!("--char must index a linear character");
        }
        let v = rec.local_gauss(|g| t.value_at(i, g).clone());
        return Ok(Outcome::ok(json!({ "prime": rec.p, "char_index": i, "local_gauss": cyc(&v, style) })));
    }
    if let Some(f) = a.field {
        if a.local_degree != 1 || a.frobenius.is_some() {
            bail!("--local-degree and --frobenius apply to local sums, not to --field");
        }
        let field = parse_field(f)?;
        let pk = field.packages()?;
        let label = field_group_label(&field);
        return Ok(Outcome::ok(json!({
            "field": f,
            "tau": equivariant(&label, &pk.tau, style),
            "tau_prime": equivariant(&label, &pk.tau_prime, style),
            "tau_dagger": equivariant(&label, &pk.tau_dagger, style),
            "y": equivariant(&label, &pk.y, style),
        })));
    }
    let m = a.modulus.context("one of --modulus, --field or --reciprocity-table is required")?;
    let chars = DirichletChar::all(m)?;
    if a.local_degree != 1 || a.frobenius.is_some() {
        let factors = arith::factor_u64(m);
        let [(p, _)] = factors.as_slice() else { bail!("local sums need a prime-power modulus") };
        let i = a.index.context("--index is required for a local sum")?;
        let chi = chars.get(i).context("character index out of range")?.clone();
        let fv = match a.frobenius {
            Some(s) => parse_cyc(s)?,
            None => CycNum::one(),
        };
        let phi = LocalAbelianChar { p: *p, ramified: chi, frobenius_value: fv };
        let v = local_galois_gauss(&phi, &LocalBase { p: *p, degree: a.local_degree })?;
        return Ok(Outcome::ok(json!({ "prime": p, "index": i, "local_gauss": cyc(&v, style) })));
    }
    let list: Vec<Value> = chars
        .iter()
        .enumerate()
        .filter(|(i, _)| a.index.is_none_or(|j| j == *i))
        .map(|(i, c)| {
            json!({
                "index": i,
                "order": c.value_order(),
                "conductor": c.conductor(),
                "parity": c.parity(),
                "gauss_sum": cyc(&gauss_sum(c), style),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({ "modulus": m, "characters": list })))
}

pub fn jacobi(m: u64, a: usize, b: usize, style: Style) -> anyhow::Result<Outcome> {
    let chars = DirichletChar::all(m)?;
    let (x, y) =
        (chars.get(a).context("first index out of range")?, chars.get(b).context("second index out of range")?);
    let j = jacobi_sum(x, y)?;
    Ok(Outcome::ok(json!({ "modulus": m, "a": a, "b": b, "jacobi_sum": cyc(&j, style) })))
}

pub fn galois_jacobi_cmd(f: &str, k: i64, style: Style) -> anyhow::Result<Outcome> {
    let field = parse_field(f)?;
    let (j, rational) = galois_jacobi(&field.tau(), field.table(), k)?;
    Ok(Outcome {
        value: json!({
            "field": f,
            "k": k,
            "values": equivariant(&field_group_label(&field), &j, style),
            "rational": rational,
        }),
        ok: rational,
    })
}

fn ramification_json(field: &AbelianField) -> Vec<Value> {
    let g = field.group();
    field
        .ramification_data()
        .into_iter()
        .map(|(p, d)| {
            json!({
                "prime": p,
                "inertia_order": d.inertia.len(),
                "frobenius_order": g.order_of(d.frobenius),
                "weakly_ramified": d.weakly_ramified,
                "tame": d.is_tame(g, p),
            })
        })
        .collect()
}

pub fn ychar(f: &str, style: Style) -> anyhow::Result<Outcome> {
    let field = parse_field(f)?;
    Ok(Outcome::ok(json!({
        "field": f,
        "ramification": ramification_json(&field),
        "y": equivariant(&field_group_label(&field), &field.y(), style),
    })))
}

pub fn cchar(f: &str, style: Style) -> anyhow::Result<Outcome> {
    let field = parse_field(f)?;
    let c = relk::c_global(&field)?;
    let t = relk::rep_triviality(&c, field.table())?;
    Ok(Outcome::ok(json!({
        "field": f,
        "ramification": ramification_json(&field),
        "c": relk_rep(&c, style),
        "trivial": t.holds(),
        "reason": t.describe(),
    })))
}

pub fn resolvent(f: &str, element: Option<&str>, style: Style) -> anyhow::Result<Outcome> {
    let field = parse_field(f)?;
    let b = match element {
        Some(s) => parse_cyc(s)?,
        None => relk::find_global_generator(&field)?,
    };
    if !field.contains(&b) {
        bail!("element does not lie in the field");
    }
    let r = field.resolvents(&b)?;
    let dsq = relk::group_determinant_sq(&field, &b)?;
    Ok(Outcome::ok(json!({
        "field": f,
        "element": cyc(&b, style),
        "resolvents": equivariant(&field_group_label(&field), &r, style),
        "group_determinant_squared": crate::json::rational(&dsq),
        "generator": !num_traits::Zero::is_zero(&dsq),
    })))
}

pub fn assemble_a(f: &str, ideal_exponent: Option<i64>, scalar: i64, style: Style) -> anyhow::Result<Outcome> {
    let field = parse_field(f)?;
    let n = match ideal_exponent {
        Some(n) => n,
        None => relk::inverse_different_root_exponent(&field)?,
    };
    let spec = AmbientLatticeSpec::search(field.clone(), n, scalar)?;
    let lattice = relk::assemble_lattice_rep(&spec)?;
    let a = relk::assemble_a(&spec)?;
    let c = relk::c_global(&field)?;
    let t = relk::rep_triviality(&a.sub(&c)?, field.table())?;
    Ok(Outcome {
        value: json!({
            "field": f,
            "ideal_exponent": n,
            "scalar": scalar,
            "global_generator": cyc(&spec.global_generator, style),
            "lattice": relk_rep(&lattice, style),
            "a": relk_rep(&a, style),
            "c": relk_rep(&c, style),
            "a_equals_c": t.holds(),
            "reason": t.describe(),
        }),
        ok: t.holds(),
    })
}

pub fn betti(group: &str, base_degree: usize) -> anyhow::Result<Outcome> {
    let t = table_for(group)?;
    let rows: Vec<(usize, f64, f64)> = (0..t.num_chars())
        .into_par_iter()
        .map(|phi| {
            let v = betti_second_component(&t, base_degree, phi)?;
            Ok((phi, v, betti_closed_form(t.group().size(), base_degree, t.degree(phi))))
        })
        .collect::<galoisk::Result<_>>()?;
    let ok = rows.iter().all(|(_, v, cf)| (v / cf - 1.0).abs() < 1e-6);
    let list: Vec<Value> = rows
        .into_iter()
        .map(|(phi, v, cf)| json!({ "phi": phi, "computed": v, "closed_form": cf, "rel_err": (v / cf - 1.0).abs() }))
        .collect();
    Ok(Outcome { value: json!({ "group": group, "base_degree": base_degree, "characters": list }), ok })
}

/// Random representatives with small rational values at a few primes.
pub fn random_reps(table: &IrrTable, samples: usize, seed: u64) -> Vec<RelKRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = table.num_chars();
    let e = table.exponent();
    let primes = [2u64, 3, 5, 7, 11, 13];
    let value = |rng: &mut ChaCha8Rng| -> CycNum {
        let base = CycNum::from_int(rng.gen_range(1..20));
        &base + &CycNum::zeta(e, rng.gen_range(0..e as i64)).mul_int(rng.gen_range(-3..4))
    };
    (0..samples)
        .map(|_| {
            let mut first = IdeleCharFn::one();
            for _ in 0..rng.gen_range(0..3) {
                let p = primes[rng.gen_range(0..primes.len())];
                let f = EquivariantValue::new((0..n).map(|_| value(&mut rng)).collect());
                if f.check_invertible().is_ok() {
                    first = first.mul(&IdeleCharFn::single(p, f));
                }
            }
            let mut second = EquivariantValue::new((0..n).map(|_| value(&mut rng)).collect());
            if second.check_invertible().is_err() {
                second = EquivariantValue::one(n);
            }
            RelKRep { first, second }
        })
        .collect()
}

pub fn diagram(group: &str, samples: usize, seed: u64) -> anyhow::Result<Outcome> {
    let t = table_for(group)?;
    let reps = random_reps(&t, samples, seed);
    let holds = key_diagram_check(&reps, &t);
    Ok(Outcome { value: json!({ "group": group, "samples": samples, "seed": seed, "commutes": holds }), ok: holds })
}

fn verdict_json(tag: &str, v: &Verdict) -> Value {
    json!({ "identity": tag, "holds": v.holds, "witness": v.witness })
}

pub fn verify(tag: &str, s: &Scenario) -> anyhow::Result<Outcome> {
    let field = || -> anyhow::Result<AbelianField> { parse_field(&Scenario::need(&s.field, "field")?) };
    let verdict = match tag {
        "label_product" => {
            let f = field()?;
            let pk = f.packages()?;
            let ok = verify_label_product(&pk.tau, &pk.tau_prime, &pk.tau_dagger, &pk.y, &pk.tau_kg, f.table())?;
            Verdict { holds: ok, witness: (!ok).then(|| "componentwise mismatch".into()) }
        }
        "tame_theorem" => relk::verify_tame_theorem(Scenario::need(&s.p, "p")?, Scenario::need(&s.k, "k")?)?,
        "prepare_proof" => {
            relk::verify_prepare_proof(&field()?, s.ideal_exponent.unwrap_or(0), Scenario::need(&s.scalar, "scalar")?)?
        }
        "eq112" => {
            let t = table_for(&Scenario::need(&s.group, "group")?)?;
            let order = Scenario::need(&s.subgroup_order, "subgroup_order")?;
            let g = t.group();
            let elems = g
                .all_subgroups()
                .into_iter()
                .find(|h| h.len() == order)
                .with_context(|| format!("no subgroup of order {order}"))?;
            let sub = g.subgroup(&elems)?;
            let jt = irr_table(&sub.group)?;
            relk::verify_eq112(&t, &jt, &sub, &CycNum::from_int(s.t.unwrap_or(2)))?
        }
        "a_equals_c" => relk::verify_a_equals_c(&field()?)?,
        "cwr_vanish" => relk::verify_cwr_vanish(&field()?)?,
        "key_diagram" => {
            let t = table_for(&Scenario::need(&s.group, "group")?)?;
            let reps = random_reps(&t, s.samples.unwrap_or(100), s.seed.unwrap_or(0));
            let ok = key_diagram_check(&reps, &t);
            Verdict { holds: ok, witness: (!ok).then(|| "composites disagree".into()) }
        }
        other => bail!("unknown identity {other:?}"),
    };
    Ok(Outcome { value: verdict_json(tag, &verdict), ok: verdict.holds })
}

fn ext_json(c: &ExtClass) -> Value {
    json!({
        "label": c.label,
        "is_ramified": c.is_ramified,
        "exponent": c.exponent,
        "abelian": c.abelian,
        "distinguished_subfield": c.distinguished_subfield,
    })
}

pub fn enumerate_local(family: &str, l: Option<u64>, p: u64) -> anyhow::Result<Outcome> {
    let (classes, extra) = match family {
        "p3" => (enumerate_p3(p)?, json!(null)),
        "l2p" => {
            let l = l.context("--l is required for the l2p family")?;
            let list = enumerate_l2p(l, p)?;
            (list, json!(galoisk::weakram::quotient_module_check(l, p)?))
        }
        other => bail!("unknown family {other:?} (expected p3 or l2p)"),
    };
    let mut v = json!({
        "family": family,
        "p": p,
        "count": classes.len(),
        "classes": classes.iter().map(ext_json).collect::<Vec<_>>(),
    });
    if let Some(l) = l.filter(|_| family == "l2p") {
        v["l"] = json!(l);
        v["quotient_module_check"] = extra;
    }
    let ok = v.get("quotient_module_check").is_none_or(|q| q.as_bool() == Some(true));
    Ok(Outcome { value: v, ok })
}
