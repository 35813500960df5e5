use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use encell::berger;
use encell::cochains::{self, Cochain, Ring};
use encell::homology::{self, ChainComplex, ToChainComplex};
use encell::verify::{self, SuiteOptions, SUITES};
use encell::xi::{self, Bound};

use crate::cache;
use crate::{Cases, Global, Model, RingArg};

/// A document to print and whether the command counts as passing.
pub type Outcome = (Value, bool);

pub fn emit(g: &Global, doc: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    match &g.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn require_arity(g: &Global) -> Result<()> {
    if g.k() == 0 {
        bail!("--k must be at least 1");
    }
    Ok(())
}

/// Complexity bound and truncation for the diagram model.
fn xi_params(g: &Global) -> Result<(Bound, Option<usize>)> {
    require_arity(g)?;
    match g.n() {
        Bound::Finite(0) => bail!("--n must be at least 1"),
        Bound::Unbounded if g.trunc.is_none() => bail!("--n inf needs --trunc D"),
        b => Ok((b, g.trunc)),
    }
}

fn berger_n(g: &Global) -> Result<usize> {
    require_arity(g)?;
    match g.n() {
        Bound::Finite(0) => bail!("--n must be at least 1"),
        Bound::Finite(n) => Ok(n),
        Bound::Unbounded => bail!("the poset model needs a finite --n"),
    }
}

fn xi_key(what: &str, g: &Global) -> String {
    let trunc = g.trunc.map_or("none".to_string(), |t| t.to_string());
    format!("{what}|xi|n={}|k={}|s={}|trunc={trunc}", g.n(), g.k(), g.s)
}

fn build_xi(g: &Global) -> Result<xi::XiModel> {
    let (bound, trunc) = xi_params(g)?;
    Ok(xi::build_model_bounded(bound, g.k(), g.s, trunc)?)
}

fn header(g: &Global) -> Value {
    json!({"n": g.n(), "k": g.k(), "s": g.s, "trunc": g.trunc})
}

pub fn cells(g: &Global) -> Result<Outcome> {
    let (bound, trunc) = xi_params(g)?;
    let doc = cache::cached(&xi_key("cells", g), || {
        let cells = xi::enumerate_cells(bound, g.k(), g.s, trunc)?;
        let top = cells.iter().map(|c| c.dim + 1).max().unwrap_or(0);
        let mut counts = vec![0usize; top];
        for c in &cells {
            counts[c.dim] += 1;
        }
        let mut doc = header(g);
        doc["counts"] = json!(counts);
        doc["total"] = json!(cells.len());
        doc["cells"] = serde_json::to_value(&cells)?;
        Ok(doc)
    })?;
    Ok((doc, true))
}

/// The chain complex of the selected model, with a cache key when the model
/// is determined by the parameters alone.
fn complex(
    g: &Global,
    model: Model,
    name: Option<&str>,
    input: Option<&Path>,
) -> Result<(ChainComplex, Value, Option<String>)> {
    match model {
        Model::Xi => {
            let m = build_xi(g)?;
            let mut desc = header(g);
            desc["model"] = json!("xi");
            Ok((m.chain_complex(), desc, Some(xi_key("complex", g))))
        }
        Model::Berger => {
            let n = berger_n(g)?;
            let nerve = berger::order_complex(&berger::enumerate(n, g.k()))?;
            let desc = json!({"model": "berger", "n": n, "k": g.k(), "vertices": nerve.vertices.len()});
            Ok((nerve.chain_complex(), desc, Some(format!("complex|berger|n={n}|k={}", g.k()))))
        }
        Model::Fixture => {
            let name = name.ok_or_else(|| {
                anyhow!("--model fixture needs --name (one of {})", cochains::FIXTURE_NAMES.join(", "))
            })?;
            let space = cochains::fixture(name)?;
            Ok((space.chain_complex(), json!({"model": "fixture", "name": name}), None))
        }
        Model::Json => {
            let path = input.ok_or_else(|| anyhow!("--model json needs --input FILE"))?;
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            let cc = ChainComplex::from_json(&v)?;
            Ok((cc, json!({"model": "json", "input": path.display().to_string()}), None))
        }
    }
}

fn homology_doc(cc: &ChainComplex, mut desc: Value) -> Result<Value> {
    let h = homology::homology(cc)?;
    desc["generators"] = json!(cc.generators());
    desc["euler_characteristic"] = json!(cc.euler_characteristic());
    desc["homology"] = h.to_json();
    Ok(desc)
}

pub fn homology(g: &Global, model: Model, name: Option<&str>, input: Option<&Path>) -> Result<Outcome> {
    // the cache key is known before the model is built
    let key = match model {
        Model::Xi => Some(xi_key("homology", g)),
        Model::Berger => Some(format!("homology|berger|n={}|k={}", berger_n(g)?, g.k())),
        _ => None,
    };
    if let Some(v) = key.as_deref().and_then(cache::load) {
        return Ok((v, true));
    }
    let (cc, desc, _) = complex(g, model, name, input)?;
    let doc = homology_doc(&cc, desc)?;
    if let Some(k) = key {
        cache::store(&k, &doc);
    }
    Ok((doc, true))
}

pub fn nerve(g: &Global) -> Result<Outcome> {
    let n = berger_n(g)?;
    let doc = cache::cached(&format!("nerve|n={n}|k={}", g.k()), || {
        let nerve = berger::order_complex(&berger::enumerate(n, g.k()))?;
        let cc = nerve.chain_complex();
        let desc = json!({"n": n, "k": g.k(), "vertices": nerve.vertices.len(), "chains": nerve.counts()});
        homology_doc(&cc, desc)
    })?;
    Ok((doc, true))
}

pub fn export(g: &Global, model: Model, name: Option<&str>, input: Option<&Path>) -> Result<Outcome> {
    if g.out.is_none() {
        eprintln!("note: no --out given, writing the complex to standard output");
    }
    let (cc, _, key) = complex(g, model, name, input)?;
    let doc = match key {
        Some(k) => cache::cached(&format!("export|{k}"), || Ok(cc.to_json()))?,
        None => cc.to_json(),
    };
    Ok((doc, true))
}

fn suite_options(g: &Global) -> SuiteOptions {
    SuiteOptions {
        seed: g.seed,
        cases: match g.cases {
            None | Some(Cases::All) => None,
            Some(Cases::Count(c)) => Some(c),
        },
        // without `--n`/`--k` each suite keeps its own range
        n: match g.n_arg {
            Some(Bound::Finite(n)) => Some(n),
            _ => None,
        },
        k: g.k_arg,
    }
}

pub fn check(g: &Global, suite: &str) -> Result<Outcome> {
    let opts = suite_options(g);
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut reports = Vec::new();
    let mut ok = true;
    for name in names {
        let r = verify::run_suite(name, &opts)?;
        ok &= r.passed();
        reports.push(r.to_json());
    }
    let doc =
        if reports.len() == 1 { reports.pop().expect("one report") } else { json!({"suites": reports, "passed": ok}) };
    Ok((doc, ok))
}

fn support_json(c: &Cochain) -> Value {
    let entries: Vec<Value> =
        c.support().filter(|(s, _)| !s.is_degenerate()).map(|(s, v)| json!({"simplex": s, "value": v})).collect();
    json!({"degree": c.degree(), "nondegenerate_support": entries})
}

pub fn cochain_demo(g: &Global, name: &str, ring: RingArg, p: usize, q: usize) -> Result<Outcome> {
    use rand::SeedableRng;
    let space = Arc::new(cochains::fixture(name)?);
    let ring = match ring {
        RingArg::Z => Ring::Integers,
        RingArg::Z2 => Ring::Modulo(2),
        RingArg::Z3 => Ring::Modulo(3),
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(g.seed);
    let x = Cochain::random(&space, ring, p as isize, &mut rng)?;
    let y = Cochain::random(&space, ring, q as isize, &mut rng)?;
    let cup = cochains::cup(&x, &y)?;
    let join = cochains::sqcup(&x, &y)?;
    // x ⌣ y is the codegeneracy of x ⊔ y that identifies the two middle vertices
    let through_join = join.codegeneracy(p)?;
    // x ⊔ y agrees with the cup product with the middle vertex skipped
    let through_cup = cochains::cup(&x, &y.coface(0)?)?;
    let checks = json!({
        "cup-is-codegeneracy-of-join": cup == through_join,
        "join-is-cup-with-coface": join == through_cup,
    });
    let ok = cup == through_join && join == through_cup;
    let ring_name = match ring {
        Ring::Integers => "Z".to_string(),
        Ring::Modulo(m) => format!("Z/{m}"),
    };
    let doc = json!({
        "space": name,
        "ring": ring_name,
        "seed": g.seed,
        "x": support_json(&x),
        "y": support_json(&y),
        "cup": support_json(&cup),
        "join": support_json(&join),
        "checks": checks,
    });
    Ok((doc, ok))
}
