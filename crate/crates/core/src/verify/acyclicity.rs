//! Every sub-model cut out by an element of the poset is contractible, and
//! these sub-models cover the model.

use super::{ok, run_cases, CheckResult, SuiteOptions};
use crate::berger::{self, q_membership, BergerElem};
use crate::error::Result;
use crate::homology::{homology, ToChainComplex};
use crate::xi::{build_model, restrict_to_bt};

pub fn run(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let params: Vec<(usize, usize)> = match (opts.n, opts.k) {
        (Some(n), Some(k)) => vec![(n, k)],
        (Some(n), None) => (1..=3).map(|k| (n, k)).collect(),
        (None, Some(k)) => (1..=2).map(|n| (n, k)).collect(),
        (None, None) => (1..=2).flat_map(|n| (1..=3).map(move |k| (n, k))).collect(),
    };
    let mut out = Vec::new();
    for (n, k) in params {
        let model = build_model(n, k, 0);
        let elems: Vec<BergerElem> = berger::enumerate(n, k);
        out.push(run_cases(&format!("point-n{n}-k{k}"), &elems, |_, x| {
            let sub = ok(restrict_to_bt(&model, x))?;
            let h = ok(homology(&sub.chain_complex()))?;
            if h.is_point() {
                Ok(())
            } else {
                Err(format!("sub-model of {x:?} has homology {}", h.to_json()))
            }
        }));
        let cells = model.cells().to_vec();
        out.push(run_cases(&format!("cover-n{n}-k{k}"), &cells, |_, c| {
            for x in &elems {
                if ok(q_membership(c.diagram.f(), x))? {
                    return Ok(());
                }
            }
            Err(format!("cell {:?} lies in no sub-model", c.diagram))
        }));
    }
    Ok(out)
}
