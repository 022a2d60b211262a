//! Acceptance gate: one PASS/FAIL line per criterion, exact equality
//! throughout, each with its wall-clock budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qcoinv_cli::{run, RunConfig, SuiteKind};
use qcoinv_core::setting::Setting;
use qcoinv_core::theorems::structure::*;
use qcoinv_core::theorems::*;

type Outcome = Result<(), String>;

fn all_pass(records: &[ComponentRecord]) -> Outcome {
    match records.iter().find(|c| !c.verdict.is_pass()) {
        None => Ok(()),
        Some(c) => Err(format!("{}: {}", c.index, c.witness.clone().unwrap_or_default())),
    }
}

fn report_pass(r: &VerificationReport) -> Outcome {
    all_pass(&r.components).map_err(|e| format!("{} {e}", r.name))
}

fn dim(r: &VerificationReport, index: &str, key: &str) -> Result<usize, String> {
    r.components
        .iter()
        .find(|c| c.index == index)
        .and_then(|c| c.dims.get(key).copied())
        .ok_or_else(|| format!("{} has no {key} for {index}", r.name))
}

fn expect_dim(r: &VerificationReport, index: &str, key: &str, want: usize) -> Outcome {
    let got = dim(r, index, key)?;
    if got == want {
        Ok(())
    } else {
        Err(format!("{} {index} {key} = {got}, expected {want}", r.name))
    }
}

fn pairs_with_sum(max_sum: usize) -> Vec<(usize, usize)> {
    (0..=max_sum).flat_map(|i| (0..=max_sum - i).map(move |j| (i, j))).collect()
}

fn square(max: usize) -> Vec<(usize, usize)> {
    (0..=max).flat_map(|i| (0..=max).map(move |j| (i, j))).collect()
}

fn opts() -> SuiteOptions {
    SuiteOptions { seed: 7, ..SuiteOptions::default() }
}

fn hopf() -> Outcome {
    for t in 1..=3 {
        all_pass(&hopf_axioms(t))?;
    }
    Ok(())
}

fn minor_coproduct() -> Outcome {
    all_pass(&[minor_comultiplication(3)])
}

fn laplace() -> Outcome {
    all_pass(&[laplace_agreement(3)])
}

fn sft() -> Outcome {
    let o = opts();
    let r = verify_sft(&Setting::new(2, 1, 2), 4, &o).map_err(|e| e.to_string())?;
    report_pass(&r)?;
    expect_dim(&r, "d=2", "ker", 1)?;
    expect_dim(&r, "d=2", "ideal", 1)?;
    for (m, t, n) in [(3, 1, 3), (3, 2, 3)] {
        report_pass(&verify_sft(&Setting::new(m, t, n), 3, &o).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn fft() -> Outcome {
    let o = opts();
    let r = verify_fft(&Setting::new(2, 1, 2), &square(3), &o).map_err(|e| e.to_string())?;
    report_pass(&r)?;
    expect_dim(&r, "(1,1)", "coinvariants", 4)?;
    expect_dim(&r, "(1,1)", "image", 4)?;
    for (m, t, n) in [(2, 1, 3), (3, 2, 2)] {
        report_pass(&verify_fft(&Setting::new(m, t, n), &square(2), &o).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn sl_fft() -> Outcome {
    let o = opts();
    let s2 = pairs_with_sum(4);
    let r = verify_sl_fft(&Setting::new(2, 2, 2), &s2, &o).map_err(|e| e.to_string())?;
    report_pass(&r)?;
    expect_dim(&r, "(2,0)", "semi", 1)?;
    expect_dim(&r, "(2,0)", "generated", 1)?;
    for (i, j) in s2.iter().filter(|(i, j)| (*i as i64 - *j as i64) % 2 != 0) {
        let idx = format!("({i},{j})");
        expect_dim(&r, &idx, "semi", 0)?;
        expect_dim(&r, &idx, "generated", 0)?;
    }
    report_pass(&verify_sl_fft(&Setting::new(2, 1, 2), &pairs_with_sum(3), &o).map_err(|e| e.to_string())?)
}

fn preimage_dx() -> Outcome {
    report_pass(&verify_preimage_dx(2, 1, 4, &opts()).map_err(|e| e.to_string())?)
}

fn preimage_p() -> Outcome {
    for s in [1, 2] {
        let r = verify_preimage_p(2, 1, s, 4, &opts()).map_err(|e| e.to_string())?;
        report_pass(&r)?;
        for side in ["P1", "P2"] {
            if !r.components.iter().any(|c| c.index.starts_with(side)) {
                return Err(format!("no {side} components"));
            }
        }
    }
    Ok(())
}

fn i_after_j() -> Outcome {
    for (n, t) in [(2, 1), (3, 2)] {
        let recs = localization_properties(n, t, 20, 7).map_err(|e| e.to_string())?;
        let wanted: Vec<ComponentRecord> = recs.into_iter().filter(|c| c.index.starts_with("i*∘j*")).collect();
        if wanted.len() != 2 || wanted[1].dims["checked"] != 20 {
            return Err(format!("unexpected records for ({n},{t})"));
        }
        all_pass(&wanted)?;
    }
    Ok(())
}

fn closure_and_xi() -> Outcome {
    let o = opts();
    for (s, bound) in [(Setting::new(2, 1, 2), 3), (Setting::new(2, 1, 3), 2), (Setting::new(3, 2, 2), 2)] {
        all_pass(&[coinvariant_closure(&s, bound, &o).map_err(|e| e.to_string())?])?;
    }
    for (n, t) in [(2, 1), (3, 2)] {
        let rec = xi_coinvariants(n, t, 50, 7);
        if rec.dims["checked"] != 100 {
            return Err(format!("ξ* check ran {} cases", rec.dims["checked"]));
        }
        all_pass(&[rec])?;
    }
    Ok(())
}

fn normal() -> Outcome {
    all_pass(&[normality(3, 2)])
}

fn torus() -> Outcome {
    let shapes = [Setting::new(2, 1, 2), Setting::new(2, 1, 3), Setting::new(3, 2, 2)];
    let rec = torus_weights(&shapes, 100, 2, 7);
    if rec.dims["checked"] != 100 {
        return Err("expected 100 samples".into());
    }
    all_pass(&[rec])
}

fn determinism() -> Outcome {
    let mut cfg = RunConfig::new(2, 1, 2, 3);
    cfg.seed = 11;
    cfg.suites = SuiteKind::ALL.to_vec();
    let a = run(&cfg).map_err(|e| e.to_string())?.to_json(false);
    let b = run(&cfg).map_err(|e| e.to_string())?.to_json(false);
    if a != b {
        return Err("reports differ".into());
    }
    if a.contains("timing_ms") {
        return Err("timing leaked into the comparable report".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, u64, fn() -> Outcome)> = vec![
        ("Hopf axioms for t = 1, 2, 3", 120, hopf),
        ("minor comultiplication in O_q(M_3)", 60, minor_coproduct),
        ("quantum minor = Laplace expansion up to 3x3", 30, laplace),
        ("ker θ* = I_{t+1} for (2,2,1) d≤4, (3,3,1) d≤3, (3,3,2) d≤3", 600, sft),
        ("γ*-coinvariants = θ*-image for (2,1,2) i,j≤3, (2,1,3) and (3,2,2) i,j≤2", 600, fft),
        ("SL semi-coinvariants = minor products · image for (2,2,2) i+j≤4, (2,1,2) i+j≤3", 600, sl_fft),
        ("θ*^-1⟨d_Y⊗d_Z⟩ = ⟨d_x⟩ for (n,t) = (2,1), d≤4", 300, preimage_dx),
        ("θ*^-1⟨d_Y^s⊗1⟩ = P_1^s and the P_2 side for (2,1), s = 1, 2, d≤4", 300, preimage_p),
        ("i*∘j* = id for (n,t) = (2,1), (3,2)", 300, i_after_j),
        ("products of coinvariants; ξ*-coinvariants are M⊗1", 300, closure_and_xi),
        ("normality of d_X, d_Y, d_Z, d_T for m,n≤3, t≤2", 60, normal),
        ("torus weights on 100 seeded basis tensors", 60, torus),
        ("identical config and seed give byte-identical reports", 600, determinism),
    ];
    let mut failed = 0;
    for (k, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = outcome.and_then(|_| {
            if took > Duration::from_secs(*budget) {
                Err(format!("over budget of {budget} s"))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("PASS criterion {:>2}: {name} ({:.2} s)", k + 1, took.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({:.2} s): {e}", k + 1, took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
