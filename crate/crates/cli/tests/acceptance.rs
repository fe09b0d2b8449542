//! Acceptance battery: one PASS/FAIL line per criterion with its runtime and budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use galoisk::classgroups::{betti_closed_form, betti_second_component, key_diagram_check};
use galoisk::gaussjacobi::{galois_jacobi, gauss_sum, jacobi_sum, verify_label_product, AbelianField, DirichletChar};
use galoisk::groups::{build_group, irr_table, GroupRingElt, GroupSpec, IrrTable};
use galoisk::relk::{self, IdeleCharFn, RelKRep};
use galoisk::weakram::{enumerate_l2p, enumerate_p3, quotient_module_check};
use galoisk::CycNum;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn table(spec: &str) -> Result<IrrTable, String> {
    let g = build_group(&GroupSpec::parse(spec).map_err(err)?).map_err(err)?;
    irr_table(&g).map_err(err)
}

fn character_tables() -> Check {
    for spec in ["heisenberg:3", "modular:3"] {
        let t = table(spec)?;
        let linear = t.degrees().iter().filter(|&&d| d == 1).count();
        let cubic = t.degrees().iter().filter(|&&d| d == 3).count();
        ensure(linear == 9 && cubic == 2 && t.num_chars() == 11, || format!("{spec}: degrees {:?}", t.degrees()))?;
        for i in 0..t.num_chars() {
            for j in 0..t.num_chars() {
                let ip = t.inner_product(t.values(i), t.values(j));
                let expect = if i == j { CycNum::one() } else { CycNum::zero(1) };
                ensure(ip == expect, || format!("{spec}: <chi_{i}, chi_{j}> = {ip:?}"))?;
            }
        }
    }
    Ok(())
}

fn gauss_battery() -> Check {
    for f in 3..=50u64 {
        if f % 4 == 2 {
            continue;
        }
        for chi in DirichletChar::all(f).map_err(err)? {
            if chi.conductor() != f {
                continue;
            }
            let tau = gauss_sum(&chi);
            let n = tau.complex_value().norm_sqr();
            ensure((n - f as f64).abs() <= 1e-9 * f as f64, || format!("|tau|^2 = {n} for conductor {f}"))?;
            let prod = &tau * &gauss_sum(&chi.conj());
            let expect = CycNum::from_int(chi.parity() * f as i64);
            ensure(prod == expect, || format!("tau(chi) tau(chi-bar) != chi(-1) f at conductor {f}"))?;
        }
    }
    for p in (3..=31u64).filter(|&p| galoisk::arith::is_prime(p)) {
        let chars = DirichletChar::all(p).map_err(err)?;
        let taus: Vec<CycNum> = chars.iter().map(gauss_sum).collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate().skip(i) {
                let ab = a.mul(b);
                if a.is_trivial() || b.is_trivial() || ab.is_trivial() {
                    continue;
                }
                let k = chars.iter().position(|c| *c == ab).ok_or("product character not listed")?;
                let rhs = (&taus[i] * &taus[j]).div(&taus[k]).map_err(err)?;
                ensure(jacobi_sum(a, b).map_err(err)? == rhs, || format!("Gauss-Jacobi relation at p = {p}"))?;
            }
        }
    }
    Ok(())
}

fn jacobi_rationality() -> Check {
    let mut count = 0;
    for m in 3..=63u64 {
        if m % 4 == 2 {
            continue;
        }
        for field in AbelianField::odd_degree_subfields(m).map_err(err)? {
            let t = field.table();
            let (j, ok) = galois_jacobi(&field.tau(), t, 2).map_err(err)?;
            ensure(ok, || format!("J_2 not rational for a degree-{} field of conductor {m}", field.degree()))?;
            let mut bad = j.clone();
            let i = t.trivial_index();
            bad.values[i] = &bad.values[i] * &CycNum::zeta(3, 1);
            ensure(!galoisk::gaussjacobi::is_rational(&bad, t), || format!("perturbed package accepted at {m}"))?;
            count += 1;
        }
    }
    ensure(count > 60, || format!("only {count} packages checked"))
}

fn label_product() -> Check {
    for spec in ["7:3", "11:5", "29:7", "9:3"] {
        let (m, d) = spec.split_once(':').unwrap();
        let f = AbelianField::subfield_of_degree(m.parse().unwrap(), d.parse().unwrap()).map_err(err)?;
        let pk = f.packages().map_err(err)?;
        let ok =
            verify_label_product(&pk.tau, &pk.tau_prime, &pk.tau_dagger, &pk.y, &pk.tau_kg, f.table()).map_err(err)?;
        ensure(ok, || format!("label product fails for {spec}"))?;
    }
    Ok(())
}

fn tame_theorem() -> Check {
    let v = relk::verify_tame_theorem(7, 5).map_err(err)?;
    ensure(v.holds, || format!("{:?}", v.witness))
}

fn a_equals_c() -> Check {
    for (m, d) in [(7, 3), (9, 3)] {
        let f = AbelianField::subfield_of_degree(m, d).map_err(err)?;
        let v = relk::verify_a_equals_c(&f).map_err(err)?;
        ensure(v.holds, || format!("conductor {m}: {:?}", v.witness))?;
    }
    // The same pipeline through the command-line front end.
    let scenario = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/zeta9_cubic.json");
    let out = Command::new(env!("CARGO_BIN_EXE_galoisk"))
        .args(["verify", "--identity", "a_equals_c", "--scenario", scenario])
        .output()
        .map_err(err)?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(err)?;
    ensure(out.status.success() && v["holds"] == true, || format!("cli: {v}"))
}

fn enumeration_counts() -> Check {
    for p in [3u64, 5, 7] {
        let v = enumerate_p3(p).map_err(err)?;
        let exp_p = v.iter().filter(|c| c.exponent == Some(p)).count();
        ensure(v.len() as u64 == p && exp_p == 1, || format!("p3 at {p}: {} classes, {exp_p} of exponent p", v.len()))?;
    }
    for (l, p) in [(3u64, 7u64), (3, 13), (5, 11)] {
        let v = enumerate_l2p(l, p).map_err(err)?;
        ensure(v.len() as u64 == l, || format!("l2p at ({l},{p}): {} classes", v.len()))?;
        ensure(quotient_module_check(l, p).map_err(err)?, || format!("quotient module check at ({l},{p})"))?;
    }
    Ok(())
}

fn betti() -> Check {
    for spec in ["cyclic:3", "cyclic:5", "cyclic:7", "cyclic:9", "product:3x3", "heisenberg:3"] {
        let t = table(spec)?;
        for phi in 0..t.num_chars() {
            let v = betti_second_component(&t, 1, phi).map_err(err)?;
            let cf = betti_closed_form(t.group().size(), 1, t.degree(phi));
            ensure((v / cf - 1.0).abs() < 1e-6, || format!("{spec} phi={phi}: {v} vs {cf}"))?;
        }
    }
    Ok(())
}

fn diagram() -> Check {
    let t = table("heisenberg:3")?;
    let n = t.num_chars();
    let g = t.group();
    // Deterministic pseudo-random representatives built from group-ring determinants.
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = move |k: u64| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % k
    };
    let mut reps = Vec::new();
    for _ in 0..100 {
        let mut elt = || {
            let terms =
                (0..3).map(|_| (next(g.size() as u64) as usize, CycNum::from_int(next(7) as i64 - 3))).collect();
            GroupRingElt::from_terms(terms)
        };
        let (a, b) = (elt(), elt());
        let det = |x: &GroupRingElt| -> Result<galoisk::gaussjacobi::EquivariantValue, String> {
            Ok(galoisk::gaussjacobi::EquivariantValue::new(
                (0..n).map(|i| t.det_of(x, i)).collect::<Result<_, _>>().map_err(err)?,
            ))
        };
        let p = [2u64, 3, 5, 7][next(4) as usize];
        reps.push(RelKRep { first: IdeleCharFn::single(p, det(&a)?), second: det(&b)? });
    }
    ensure(key_diagram_check(&reps, &t), || "composites disagree".into())
}

fn c_projections() -> Check {
    let cubic9 = AbelianField::subfield_of_degree(9, 3).map_err(err)?;
    let cubic7 = AbelianField::subfield_of_degree(7, 3).map_err(err)?;
    let comp = cubic9.compositum(&cubic7).map_err(err)?;
    for (name, f) in [("conductor 9", &cubic9), ("conductor 63", &comp)] {
        let v = relk::verify_cwr_vanish(f).map_err(err)?;
        ensure(v.holds, || format!("{name}: {:?}", v.witness))?;
    }
    let c = relk::c_global(&comp).map_err(err)?;
    let t = relk::rep_triviality(&c, comp.table()).map_err(err)?;
    ensure(!t.holds(), || "c of the conductor-63 compositum was certified zero".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 character tables of order 27", character_tables, 5),
        ("2 Gauss-sum battery", gauss_battery, 30),
        ("3 Galois-Jacobi rationality", jacobi_rationality, 30),
        ("4 label-product identity", label_product, 10),
        ("5 tame theorem for Q(zeta_7), k = 5", tame_theorem, 60),
        ("6 a = c for two cubic fields", a_equals_c, 120),
        ("7 local enumeration counts", enumeration_counts, 10),
        ("8 Betti metric class", betti, 10),
        ("9 diagram commutativity", diagram, 10),
        ("10 projections of c", c_projections, 30),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (name, check, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(budget);
        let pass = result.is_ok() && in_budget;
        let detail = match (&result, in_budget) {
            (Err(e), _) => format!(" ({e})"),
            (Ok(()), false) => " (over budget)".to_string(),
            _ => String::new(),
        };
        println!(
            "{} criterion {name}: {:.3}s (budget {budget}s){detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !pass {
            failures += 1;
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
