//! A1–A11 on the desk-scale grid N ∈ 3..=8, n ∈ 2..=5. Every tolerance is exact
//! equality; nothing here compares floats.

use std::process::Command;

use qtorus::braid_image::{image_order, Mode, DEFAULT_BUDGET};
use qtorus::cyclo::HalfInt;
use qtorus::fusion::bratteli_dims;
use qtorus::gaussian::trace_formula_check;
use qtorus::nso::{centralizer_dim, spectrum_candidates, Variant};
use qtorus::verma::{b2_spectrum, simple_quotient_at, simple_quotient_generic, unitarity_check};
use qtorus_cli::{run_verify, Check, Report, Status, VerifyConfig};

const GRID_N: [u32; 6] = [3, 4, 5, 6, 7, 8];
const N_MAX: usize = 5;

fn verify(checks: &[Check], n_list: &[u32], n_max: usize) -> Report {
    let cfg = VerifyConfig { n_list: n_list.to_vec(), n_max, checks: checks.to_vec(), ..Default::default() };
    run_verify(&cfg).expect("valid config")
}

fn failures(report: &Report) -> Vec<String> {
    report
        .records
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{} {} {}", r.check_id, r.parameters, r.status))
        .collect()
}

struct Outcome {
    id: &'static str,
    name: &'static str,
    ok: bool,
    detail: String,
}

fn outcome(id: &'static str, name: &'static str, bad: Vec<String>, checked: usize) -> Outcome {
    let ok = bad.is_empty() && checked > 0;
    let detail = if ok { format!("{checked} cases, exact") } else { format!("{checked} cases; failing: {}", bad.join(", ")) };
    Outcome { id, name, ok, detail }
}

fn grid_records(id: &'static str, name: &'static str, check: Check, n_list: &[u32], n_max: usize) -> Outcome {
    let r = verify(&[check], n_list, n_max);
    outcome(id, name, failures(&r), r.records.len())
}

fn a2() -> Outcome {
    let r = verify(&[Check::Qserre], &GRID_N, N_MAX);
    let bad = failures(&r);
    let nontrivial = r.records.iter().filter(|x| x.parameters["n"].as_u64().unwrap() >= 3).count();
    outcome("A2", "q-Serre, four variants", bad, nontrivial)
}

fn a3() -> Outcome {
    let mut bad = failures(&verify(&[Check::Spectra], &GRID_N, N_MAX));
    for n_cap in GRID_N {
        for v in Variant::ALL {
            let c: Vec<_> = spectrum_candidates(n_cap, v).into_iter().map(|(_, x)| x).collect();
            let distinct = (0..c.len()).all(|i| (i + 1..c.len()).all(|j| c[i] != c[j]));
            if !distinct {
                bad.push(format!("N={n_cap} {} candidates collide", v.name()));
            }
        }
    }
    outcome("A3", "spectra and multiplicities", bad, GRID_N.len() * (N_MAX - 1))
}

fn a6() -> Outcome {
    let r = verify(&[Check::Eigs], &GRID_N, 2);
    let mut bad = failures(&r);
    for rec in &r.records {
        if rec.payload["ratio_constant"] != serde_json::json!(true) {
            bad.push(format!("{} ratio not constant", rec.parameters));
        }
    }
    outcome("A6", "eigenvalue identification", bad, r.records.len())
}

fn a7() -> Outcome {
    let mut bad = Vec::new();
    for n_cap in [4u32, 6, 8] {
        match trace_formula_check(n_cap) {
            Ok(t) if t.holds => {}
            Ok(t) => bad.push(format!("N={n_cap}: {} ≠ {}", t.weighted_sum, t.expected)),
            Err(e) => bad.push(format!("N={n_cap}: {e}")),
        }
    }
    let eta = trace_formula_check(4).map(|t| t.eta).unwrap_or_default();
    let signs_ok = eta.len() == 5 && eta[0] == -1 && eta[1] == -1 && eta[4] == -1 && eta[2] == eta[3];
    if !signs_ok {
        bad.push(format!("N=4 signs {eta:?}"));
    }
    outcome("A7", "trace formula", bad, 4)
}

fn a8() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for t in 0..=8i64 {
        let lambda = HalfInt::halves(t);
        checked += 1;
        match simple_quotient_generic(lambda).and_then(|m| Ok((m.dim, b2_spectrum(&m)?))) {
            Ok((dim, mult)) if dim as i64 == t + 1 && mult.iter().all(|&k| k == 1) => {}
            other => bad.push(format!("generic 2λ={t}: {:?}", other.map(|x| x.1))),
        }
    }
    // ℓ = 1 puts q at −1, where the module degenerates.
    for ell in 2..=8u32 {
        for t in 0..=ell as i64 {
            let lambda = HalfInt::halves(t);
            checked += 1;
            let unit = unitarity_check(lambda, ell).map(|u| u.passed());
            let spec = simple_quotient_at(lambda, ell)
                .and_then(|m| b2_spectrum(&m).map(|s| m.dim as i64 == t + 1 && s.iter().all(|&k| k == 1)));
            if !matches!((&unit, &spec), (Ok(true), Ok(true))) {
                bad.push(format!("ℓ={ell} 2λ={t}: {unit:?} {spec:?}"));
            }
        }
    }
    outcome("A8", "so3 Verma quotients and unitarity", bad, checked)
}

fn a9() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for n_cap in GRID_N {
        let d = match bratteli_dims(n_cap, N_MAX) {
            Ok(d) => d,
            Err(e) => {
                bad.push(format!("N={n_cap}: {e}"));
                continue;
            }
        };
        let d2 = if n_cap % 2 == 1 { (n_cap as u128 + 1) / 2 } else { n_cap as u128 + 1 };
        if d[1] != d2 {
            bad.push(format!("N={n_cap}: d_2 = {} ≠ {d2}", d[1]));
        }
        for n in 2..=N_MAX {
            checked += 1;
            match centralizer_dim(n_cap, n) {
                Ok(c) if c.dim as u128 == d[n - 1] => {}
                Ok(c) => bad.push(format!("N={n_cap} n={n}: fusion {} vs torus {}", d[n - 1], c.dim)),
                Err(e) => bad.push(format!("N={n_cap} n={n}: {e}")),
            }
        }
    }
    outcome("A9", "centralizer dimensions, fusion vs torus", bad, checked)
}

fn a10() -> Outcome {
    let mut bad = Vec::new();
    let mut orders = Vec::new();
    let cases = [(3u32, 2usize), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2), (5, 3)];
    for (n_cap, n) in cases {
        match image_order(n_cap, n, Mode::Projective, DEFAULT_BUDGET) {
            Ok(r) if r.terminated => orders.push(format!("({n_cap},{n})={}", r.order.unwrap_or(0))),
            Ok(r) => bad.push(format!("({n_cap},{n}) stopped at {}", r.element_count_at_stop)),
            Err(e) => bad.push(format!("({n_cap},{n}): {e}")),
        }
    }
    let mut o = outcome("A10", "finite projective image", bad, cases.len());
    if o.ok {
        o.detail = format!("orders {}", orders.join(" "));
    }
    o
}

fn a11() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_qtorus"))
            .args(["verify", "--N", "3,4", "--n-max", "3", "--checks", "all", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let mut bad = Vec::new();
    if !a.status.success() {
        bad.push(format!("exit {:?}", a.status.code()));
    }
    if a.stdout.is_empty() || a.stdout != b.stdout {
        bad.push("outputs differ".into());
    }
    outcome("A11", "byte-identical JSON across runs", bad, 2)
}

fn main() {
    let results = vec![
        grid_records("A1", "torus presentation", Check::Torus, &GRID_N, N_MAX),
        a2(),
        a3(),
        grid_records("A4", "Gauss sums", Check::Gauss, &GRID_N, 2),
        grid_records("A5", "braid relations and unitarity", Check::Braid, &GRID_N, N_MAX),
        a6(),
        a7(),
        a8(),
        a9(),
        a10(),
        a11(),
    ];
    for r in &results {
        println!("{} {} {}: {}", r.id, if r.ok { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.ok).map(|r| r.id).collect();
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}

