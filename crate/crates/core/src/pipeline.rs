//! End-to-end pipeline with degree budgets and per-stage timings.

use std::time::{Duration, Instant};

use crate::error::{Error, Result, StageContext};
use crate::graphs::{graph_series, GraphCounts, GraphSeries};
use crate::maps3c::{
    compute_t, extract_counts, maps_from_quads, MapSeries, ThreeConnCounts, ThreeConnected,
};
use crate::quad_general::{solve_arbitrary_quads, ArbitraryQuads};
use crate::quad_simple::{solve_simple_quads, SimpleQuads};
use crate::simple_maps::{simple_map_series, SimpleMapSeries};

/// Default number of extra quadrangulation degrees: the `/q^2`, `/q` and `/w`
/// divisions in the map stage consume three, one more guards the reversion.
pub const DEFAULT_SLACK: u32 = 4;

/// Wall-clock time of each completed stage, in order.
#[derive(Debug, Clone, Default)]
pub struct Timings {
    pub stages: Vec<(String, Duration)>,
}

impl Timings {
    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f();
        self.stages.push((stage.to_string(), start.elapsed()));
        out
    }
}

/// Everything up to the 3-connected core, with `T` known to at least `target`.
#[derive(Debug, Clone)]
pub struct CoreStage {
    pub target: u32,
    pub simple: SimpleQuads,
    pub quads: ArbitraryQuads,
    pub maps: MapSeries,
    pub core: ThreeConnected,
    pub counts: ThreeConnCounts,
}

impl CoreStage {
    /// Solve all stages with quadrangulations to `target + slack` faces.
    pub fn run(target: u32, slack: u32, timings: &mut Timings) -> Result<CoreStage> {
        let z_bound = target + slack;
        let simple = timings.time("simple quadrangulations", || solve_simple_quads(z_bound))?;
        let quads = timings.time("arbitrary quadrangulations", || {
            solve_arbitrary_quads(&simple)
        })?;
        let maps = timings.time("map decomposition", || maps_from_quads(&quads))?;
        let core = timings.time("reversion", || compute_t(&maps))?;
        if core.bound() < target {
            return Err(Error::PrecisionExhausted {
                needed: target,
                available: core.bound(),
            })
            .stage("3-connected core: increase the truncation slack");
        }
        let counts = timings.time("3-connected counts", || extract_counts(&core.t))?;
        Ok(CoreStage {
            target,
            simple,
            quads,
            maps,
            core,
            counts,
        })
    }

    pub fn graphs(&self, timings: &mut Timings) -> Result<GraphSeries> {
        timings.time("graph networks", || graph_series(&self.core.t, self.target))
    }

    pub fn simple_maps(&self, timings: &mut Timings) -> Result<SimpleMapSeries> {
        timings.time("simple map networks", || {
            simple_map_series(&self.core.t, self.target)
        })
    }
}

/// Labelled counts `g_n, c_n, t_n` for `n <= target`.
pub fn graph_table(
    stage: &CoreStage,
    timings: &mut Timings,
) -> Result<(GraphCounts, ThreeConnCounts)> {
    let gs = stage.graphs(timings)?;
    Ok((gs.counts()?, stage.counts.clone()))
}
