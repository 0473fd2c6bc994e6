//! Cross-checks of the whole pipeline: brute-force comparisons, zero residuals of
//! every system, and the counting identities.

use num_bigint::BigInt;

use crate::error::Result;
use crate::graphs::GraphSeries;
use crate::maps3c::factorial;
use crate::oracle::{self, Check};
use crate::pipeline::{CoreStage, Timings};
use crate::simple_maps::SimpleMapSeries;
use crate::solve::Residual;

/// Default largest edge count for the rooted-map census.
pub const DEFAULT_MAX_EDGES: usize = 6;

/// Largest vertex count for the labelled-graph brute force.
pub const LABELLED_MAX: usize = 8;

/// Every residual line of every system solved for `stage`.
pub fn residual_groups(
    stage: &CoreStage,
    graphs: &GraphSeries,
    simple_maps: &SimpleMapSeries,
) -> Result<Vec<(&'static str, Vec<Residual>)>> {
    Ok(vec![
        ("simple quadrangulations", stage.simple.residuals()?),
        ("arbitrary quadrangulations", stage.quads.residuals()?),
        ("map decomposition", stage.maps.residuals(&stage.core)?),
        (
            "change of variables",
            stage.core.reversion_residuals(&stage.maps)?,
        ),
        ("graph networks", graphs.networks.residuals(&graphs.core)?),
        (
            "simple map networks",
            simple_maps.networks.residuals(&simple_maps.core)?,
        ),
    ])
}

fn residual_check(system: &str, lines: &[Residual]) -> Check {
    let failing: Vec<String> = lines
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.line.clone())
        .collect();
    Check {
        name: format!("residuals: {system}"),
        passed: failing.is_empty(),
        detail: if failing.is_empty() {
            format!("{} equation lines vanish", lines.len())
        } else {
            format!("nonzero: {}", failing.join(", "))
        },
    }
}

/// `8 n t_n = n! T_n` for every `n` in range.
pub fn rooting_identity(stage: &CoreStage) -> Check {
    let counts = &stage.counts;
    let failing: Vec<String> = (1..counts.t_n.len())
        .filter(|&n| BigInt::from(8 * n) * &counts.t_n[n] != factorial(n as u32) * &counts.t_n0[n])
        .map(|n| n.to_string())
        .collect();
    Check {
        name: "rooting identity 8 n t_n = n! T_n".into(),
        passed: failing.is_empty(),
        detail: if failing.is_empty() {
            format!("n <= {}", counts.t_n.len() - 1)
        } else {
            format!("fails for n = {}", failing.join(", "))
        },
    }
}

/// `G' = C' G`.
pub fn exponential_identity(graphs: &GraphSeries) -> Result<Check> {
    let defect = graphs.exp_identity_defect()?;
    Ok(Check {
        name: "exponential formula G' = C' G".into(),
        passed: defect.is_zero(),
        detail: format!("to x^{}", defect.bound()),
    })
}

/// Run every check with a census of rooted maps up to `max_edges` edges.
pub fn verify(max_edges: usize, slack: u32, timings: &mut Timings) -> Result<Vec<Check>> {
    let target = max_edges.max(LABELLED_MAX) as u32;
    let stage = CoreStage::run(target, slack, timings)?;
    let graphs = stage.graphs(timings)?;
    let simple_maps = stage.simple_maps(timings)?;
    let census = timings.time("rooted map census", || {
        oracle::rooted_census(max_edges, max_edges)
    })?;

    let mut checks = vec![oracle::check_rooted_totals(&census)];
    checks.extend(oracle::check_quadrangulations(&census, &stage.quads));
    checks.extend(oracle::check_four_regular(&census, &stage.maps));
    let g = graphs.counts()?.g;
    timings.time("labelled brute force", || {
        for (n, expected) in g.iter().enumerate().take(LABELLED_MAX + 1).skip(6) {
            checks.push(oracle::check_labelled(n, expected));
        }
        Ok(())
    })?;
    for (system, lines) in residual_groups(&stage, &graphs, &simple_maps)? {
        checks.push(residual_check(system, &lines));
    }
    checks.push(rooting_identity(&stage));
    checks.push(exponential_identity(&graphs)?);
    Ok(checks)
}
