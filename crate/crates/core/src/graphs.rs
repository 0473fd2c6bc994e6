//! Labelled 4-regular planar graphs: connected graphs from the network system, all
//! graphs through the exponential formula `G = exp(C)`.

use num_bigint::BigInt;

use crate::error::{Result, StageContext};
use crate::networks::{egf_counts, solve_networks, Core, Flavor, Networks};
use crate::series::{rat, Series};

/// Exponential generating functions of labelled graphs in `x`.
#[derive(Debug, Clone)]
pub struct GraphSeries {
    pub core: Core,
    pub networks: Networks,
    /// `C' = (D - L - L^2 - F - x^2 D^2 / 2) / (4x)`.
    pub c_prime: Series,
    /// Connected graphs.
    pub c: Series,
    /// All graphs.
    pub g: Series,
}

/// Solve the graph network system over the core `t` and derive `C` and `G`.
pub fn graph_series(t: &Series, bound: u32) -> Result<GraphSeries> {
    let core = Core::new(Flavor::Graphs, t);
    let networks = solve_networks(&core, bound)?;
    let x = Series::var(networks.d.vars(), "x", bound)?;
    let (d, l, f) = (&networks.d, &networks.l, &networks.f);
    let rooted = d - l - l * l - f - (&x * &x * d * d).scale(&rat(1, 2));
    let c_prime = rooted
        .div_exact_monomial("x", 1)
        .stage("connected graphs: C'")?
        .scale(&rat(1, 4));
    let c = c_prime.integrate("x")?;
    let g = c.exp().stage("all graphs: exp(C)")?;
    Ok(GraphSeries {
        core,
        networks,
        c_prime,
        c,
        g,
    })
}

/// Labelled counts for `n = 0..=bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCounts {
    pub bound: u32,
    /// All 4-regular planar graphs.
    pub g: Vec<BigInt>,
    /// Connected ones.
    pub c: Vec<BigInt>,
}

impl GraphSeries {
    pub fn bound(&self) -> u32 {
        self.g.bound()
    }

    pub fn counts(&self) -> Result<GraphCounts> {
        Ok(GraphCounts {
            bound: self.bound(),
            g: egf_counts(&self.g, "g").stage("graph counts")?,
            c: egf_counts(&self.c, "c").stage("graph counts")?,
        })
    }

    /// `G' - C' G`, zero when `G = exp(C)`.
    pub fn exp_identity_defect(&self) -> Result<Series> {
        let g_prime = self.g.differentiate("x")?;
        g_prime.checked_sub(&(&self.c_prime * &self.g))
    }
}
