//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use encell::berger;
use encell::homology::{homology, HomologyGroups, ToChainComplex};
use encell::verify::{run_suite, SuiteOptions};
use encell::xi::{build_model, enumerate_cells, Bound};
use encell::Int;

type Outcome = Result<(), String>;

const CONFIG_CASES: [(usize, usize); 8] = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4)];

/// Coefficients of ∏_{i=1}^{k-1} (1 + i·t^{n-1}).
fn poincare(n: usize, k: usize) -> Vec<usize> {
    let mut p = vec![1usize];
    for i in 1..k {
        let mut next = vec![0usize; p.len() + n - 1];
        for (d, &c) in p.iter().enumerate() {
            next[d] += c;
            next[d + n - 1] += i * c;
        }
        p = next;
    }
    trim(p)
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn xi_homology(n: usize, k: usize) -> Result<HomologyGroups, String> {
    homology(&build_model(n, k, 0).chain_complex()).map_err(|e| e.to_string())
}

fn nerve_homology(n: usize, k: usize) -> Result<HomologyGroups, String> {
    let nerve = berger::order_complex(&berger::enumerate(n, k)).map_err(|e| e.to_string())?;
    homology(&nerve.chain_complex()).map_err(|e| e.to_string())
}

fn torsion_free(h: &HomologyGroups) -> bool {
    h.torsion.iter().all(|t| t.is_empty())
}

fn same_homology(a: &HomologyGroups, b: &HomologyGroups) -> bool {
    let len = a.betti.len().max(b.betti.len());
    let none: Vec<Int> = Vec::new();
    (0..len).all(|d| {
        a.betti.get(d).copied().unwrap_or(0) == b.betti.get(d).copied().unwrap_or(0)
            && a.torsion.get(d).unwrap_or(&none) == b.torsion.get(d).unwrap_or(&none)
    })
}

fn configuration_homology() -> Outcome {
    for (n, k) in CONFIG_CASES {
        let h = xi_homology(n, k)?;
        let want = poincare(n, k);
        if trim(h.betti.clone()) != want || !torsion_free(&h) {
            return Err(format!("(n,k)=({n},{k}): betti {:?} torsion {:?}, expected {want:?}", h.betti, h.torsion));
        }
    }
    Ok(())
}

fn cross_oracle() -> Outcome {
    for (n, k) in CONFIG_CASES {
        let a = xi_homology(n, k)?;
        let b = nerve_homology(n, k)?;
        if !same_homology(&a, &b) {
            return Err(format!("(n,k)=({n},{k}): diagram model {a:?}, poset nerve {b:?}"));
        }
    }
    Ok(())
}

fn spheres_and_points() -> Outcome {
    for n in 1..=4 {
        let cells = enumerate_cells(Bound::Finite(n), 2, 0, None).map_err(|e| e.to_string())?;
        let mut per_dim = vec![0usize; n];
        for c in &cells {
            if c.dim >= n {
                return Err(format!("n={n}: cell of dimension {}", c.dim));
            }
            per_dim[c.dim] += 1;
        }
        if per_dim.iter().any(|&c| c != 2) {
            return Err(format!("n={n}, k=2: cells per dimension {per_dim:?}"));
        }
        let h = xi_homology(n, 2)?;
        let mut sphere = vec![0usize; n];
        sphere[0] += 1;
        sphere[n - 1] += 1;
        if trim(h.betti.clone()) != sphere || !torsion_free(&h) {
            return Err(format!("n={n}, k=2: homology {h:?}, expected a sphere of dimension {}", n - 1));
        }
    }
    for k in 1..=5 {
        let points: usize = (1..=k).product();
        let cells = enumerate_cells(Bound::Finite(1), k, 0, None).map_err(|e| e.to_string())?;
        let h = xi_homology(1, k)?;
        if cells.len() != points || cells.iter().any(|c| c.dim != 0) || trim(h.betti.clone()) != vec![points] {
            return Err(format!("n=1, k={k}: {} cells, betti {:?}, expected {points} points", cells.len(), h.betti));
        }
    }
    Ok(())
}

fn suites(names: &[&str]) -> Outcome {
    let opts = SuiteOptions::default();
    for name in names {
        let report = run_suite(name, &opts).map_err(|e| e.to_string())?;
        if let Some(bad) = report.checks.iter().find(|c| !c.passed()) {
            return Err(format!(
                "{name}/{}: {} of {} cases failed; first: {}",
                bad.name,
                bad.failures,
                bad.cases,
                bad.first_failure.as_deref().unwrap_or("-")
            ));
        }
        if report.checks.iter().all(|c| c.cases == 0) {
            return Err(format!("{name}: no cases were run"));
        }
    }
    Ok(())
}

fn run_cli(args: &[&str], threads: usize) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_encell"))
        .args(args)
        .args(["--threads", &threads.to_string()])
        .env_remove("ENCELL_CACHE_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let invocations: [&[&str]; 7] = [
        &["cells", "--n", "2", "--k", "3", "--s", "1"],
        &["homology", "--model", "xi", "--n", "2", "--k", "3"],
        &["nerve", "--n", "2", "--k", "3"],
        &["export", "--model", "xi", "--n", "3", "--k", "3"],
        &["check", "--suite", "prism", "--seed", "7", "--cases", "300"],
        &["check", "--suite", "normalform-oracle"],
        &["cochain-demo", "--name", "rp2", "--seed", "3"],
    ];
    for args in invocations {
        let reference = run_cli(args, 1)?;
        if !reference.ends_with(b"\n") || std::str::from_utf8(&reference).is_err() {
            return Err(format!("{args:?}: output is not newline-terminated UTF-8"));
        }
        for threads in [1, 4, 8] {
            if run_cli(args, threads)? != reference {
                return Err(format!("{args:?}: output with {threads} threads differs from the single-thread run"));
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("configuration-space homology of the diagram model", configuration_homology),
        ("poset nerve homology equals diagram model homology", cross_oracle),
        ("two cells per dimension for k=2 and k! points for n=1", spheres_and_points),
        ("acyclicity of the filtration pieces", || suites(&["acyclicity"])),
        ("operad axioms", || suites(&["operad-axioms"])),
        ("normal-form oracle", || suites(&["normalform-oracle"])),
        ("cochain identities and the wedge lemma", || suites(&["cochain", "new6"])),
        ("brace dictionary", || suites(&["brace"])),
        ("exact prism geometry", || suites(&["prism"])),
        ("CLI determinism across thread counts", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
