//! Independent brute-force counts used to cross-check the generating-function pipeline.

mod enumerate;
mod graphs;
mod map;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::maps3c::MapSeries;
use crate::quad_general::ArbitraryQuads;
use crate::quad_simple::at_w_one;
use crate::series::{Coefficient, Series};

pub use enumerate::{count_rooted_maps, visit_rooted_maps};
pub use graphs::count_labelled_four_regular;
pub use map::{
    classify_four_regular, classify_quadrangulation, Classified, FourRegularClass, MapStats,
    RootClass, RootedMap,
};

/// Brute-force census of rooted planar maps and the structures derived from them.
#[derive(Debug, Clone, Default)]
pub struct RootedCensus {
    /// Largest edge count with full statistics.
    pub stats_edges: usize,
    /// `planar[m]` rooted planar maps with `m` edges, for every enumerated `m`.
    pub planar: Vec<u64>,
    /// Quadrangulations keyed by `(class, faces, isolated 2-vertices)`.
    pub quads: BTreeMap<(RootClass, usize, usize), u64>,
    /// 4-regular maps keyed by `(class, half ordinary edges, 2-faces)`.
    pub four_regular: BTreeMap<(RootClass, usize, usize), u64>,
}

/// Enumerate rooted planar maps with up to `total_edges` edges, classifying the
/// quadrangulation and medial map of those with at most `stats_edges` edges.
pub fn rooted_census(stats_edges: usize, total_edges: usize) -> Result<RootedCensus> {
    let mut census = RootedCensus {
        stats_edges,
        planar: vec![0; total_edges.max(stats_edges) + 1],
        ..Default::default()
    };
    let mut failure = None;
    for m in 1..census.planar.len() {
        let mut count = 0;
        visit_rooted_maps(m, true, &mut |map| {
            count += 1;
            if m > stats_edges || failure.is_some() {
                return;
            }
            if let Err(e) = census.record(map) {
                failure = Some(e);
            }
        });
        census.planar[m] = count;
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(census),
    }
}

impl RootedCensus {
    fn record(&mut self, map: &RootedMap) -> Result<()> {
        let quad = map.quadrangulation();
        let q = classify_quadrangulation(&quad)
            .filter(|_| quad.is_planar())
            .ok_or_else(|| {
                Error::Inconsistent("quadrangulation of a planar map is malformed".into())
            })?;
        *self
            .quads
            .entry((q.class, q.size, q.two_cells))
            .or_default() += 1;
        let medial = quad.dual();
        let r = classify_four_regular(&medial)
            .ok_or_else(|| Error::Inconsistent("medial map is not 4-regular".into()))?;
        let c = r.classified;
        *self
            .four_regular
            .entry((c.class, r.ordinary_edges / 2, c.two_cells))
            .or_default() += 1;
        Ok(())
    }
}

/// Outcome of one brute-force comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from_mismatches(name: &str, compared: usize, mismatches: Vec<String>) -> Check {
        let passed = mismatches.is_empty();
        let detail = if passed {
            format!("{compared} coefficients agree")
        } else {
            mismatches.join("; ")
        };
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

fn compare_class(
    name: &str,
    series: &Series,
    class: RootClass,
    census: &BTreeMap<(RootClass, usize, usize), u64>,
    max_degree: usize,
    exponents: impl Fn(usize, usize) -> [u32; 2],
) -> Check {
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for size in 1..=max_degree {
        for j in 0..=size {
            let e = exponents(size, j);
            let expected = census.get(&(class, e[0] as usize, j)).copied().unwrap_or(0);
            let got = series.coeff(&e);
            compared += 1;
            if got != Coefficient::from_integer(BigInt::from(expected)) {
                mismatches.push(format!(
                    "coefficient of {e:?}: series {got}, brute force {expected}"
                ));
            }
        }
    }
    Check::from_mismatches(name, compared, mismatches)
}

/// Rooted planar maps with `m` edges: `2 * 3^m * binom(2m, m) / ((m + 1)(m + 2))`.
pub fn rooted_planar_maps(m: u32) -> BigInt {
    let binom = (0..m).fold(BigInt::from(1), |acc, i| acc * (2 * m - i) / (i + 1));
    BigInt::from(2) * BigInt::from(3).pow(m) * binom / ((m + 1) * (m + 2))
}

/// Compare the enumerated totals with the closed formula.
pub fn check_rooted_totals(census: &RootedCensus) -> Check {
    let mismatches = census
        .planar
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(m, &got)| BigInt::from(got) != rooted_planar_maps(m as u32))
        .map(|(m, got)| {
            format!(
                "{m} edges: enumerated {got}, formula {}",
                rooted_planar_maps(m as u32)
            )
        })
        .collect();
    Check::from_mismatches(
        "rooted planar map totals",
        census.planar.len() - 1,
        mismatches,
    )
}

/// Labelled 4-regular planar graphs on `n` vertices against the pipeline value.
pub fn check_labelled(n: usize, expected: &BigInt) -> Check {
    let (all, planar) = count_labelled_four_regular(n);
    let passed = BigInt::from(planar) == *expected;
    Check {
        name: format!("labelled 4-regular planar graphs, n = {n}"),
        passed,
        detail: format!(
            "{planar} planar of {all} labelled 4-regular graphs, series gives {expected}"
        ),
    }
}

/// Compare the quadrangulation series `B0, B1, B0*` with the census.
pub fn check_quadrangulations(census: &RootedCensus, quads: &ArbitraryQuads) -> Vec<Check> {
    let n = census.stats_edges;
    let mut checks = vec![
        compare_class(
            "quadrangulations, root class 0",
            &quads.b0,
            RootClass::Zero,
            &census.quads,
            n,
            |s, j| [s as u32, j as u32],
        ),
        compare_class(
            "quadrangulations, root class 1",
            &quads.b1,
            RootClass::One,
            &census.quads,
            n,
            |s, j| [s as u32, j as u32],
        ),
        compare_class(
            "quadrangulations, root class 0*",
            &quads.b0_star,
            RootClass::ZeroStar,
            &census.quads,
            n,
            |s, j| [s as u32, j as u32],
        ),
    ];
    let totals = at_w_one(&quads.b_total());
    let mut mismatches = Vec::new();
    for (m, &expected) in census.planar.iter().enumerate().skip(1) {
        match totals.get(m) {
            Some(got) if *got == Coefficient::from_integer(BigInt::from(expected)) => {}
            got => mismatches.push(format!("{m} faces: series {got:?}, brute force {expected}")),
        }
    }
    checks.push(Check::from_mismatches(
        "quadrangulation totals",
        census.planar.len() - 1,
        mismatches,
    ));
    checks
}

/// Compare the 4-regular map series `M0, M1, M0*` with the census.
pub fn check_four_regular(census: &RootedCensus, maps: &MapSeries) -> Vec<Check> {
    let n = census.stats_edges;
    let by_degree = |s: usize, j: usize| [(s - j) as u32, j as u32];
    vec![
        compare_class(
            "4-regular maps, root class 0",
            &maps.m0,
            RootClass::Zero,
            &census.four_regular,
            n,
            by_degree,
        ),
        compare_class(
            "4-regular maps, root class 1",
            &maps.m1,
            RootClass::One,
            &census.four_regular,
            n,
            by_degree,
        ),
        compare_class(
            "4-regular maps, root class 0*",
            &maps.m0_star,
            RootClass::ZeroStar,
            &census.four_regular,
            n,
            by_degree,
        ),
    ]
}
