//! Rooted simple 4-regular maps, counted by vertices.

use num_bigint::BigInt;

use crate::error::{Result, StageContext};
use crate::networks::{count, solve_networks, Core, Flavor, Networks};
use crate::series::Series;

#[derive(Debug, Clone)]
pub struct SimpleMapSeries {
    pub core: Core,
    pub networks: Networks,
    /// `M = D - L - L^2 - 3x^2 D^2 - 2F`.
    pub m: Series,
}

pub fn simple_map_series(t: &Series, bound: u32) -> Result<SimpleMapSeries> {
    let core = Core::new(Flavor::SimpleMaps, t);
    let networks = solve_networks(&core, bound)?;
    let x = Series::var(networks.d.vars(), "x", bound)?;
    let (d, l, f) = (&networks.d, &networks.l, &networks.f);
    let m = d - l - l * l - &x * &x * d * d * 3 - f * 2;
    Ok(SimpleMapSeries { core, networks, m })
}

impl SimpleMapSeries {
    /// `M_n = [x^n] M` for `n = 0..=bound`.
    pub fn counts(&self) -> Result<Vec<BigInt>> {
        (0..=self.m.bound())
            .map(|n| count(self.m.coeff(&[n]), &format!("M_{n}")).stage("simple map counts"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps3c::{compute_t, maps_from_quads};
    use crate::quad_general::solve_arbitrary_quads;
    use crate::quad_simple::solve_simple_quads;
    use crate::series::int;
    use crate::solve::Residual;

    #[test]
    fn simple_maps_low_order() {
        let quads = solve_arbitrary_quads(&solve_simple_quads(14).unwrap()).unwrap();
        let core = compute_t(&maps_from_quads(&quads).unwrap()).unwrap();
        let sm = simple_map_series(&core.t, 11).unwrap();
        let expected = [0, 0, 0, 0, 0, 0, 1, 0, 4, 6, 29, 88];
        assert_eq!(
            sm.counts().unwrap(),
            expected
                .iter()
                .map(|x| BigInt::from(*x))
                .collect::<Vec<_>>()
        );
        assert!(sm
            .networks
            .residuals(&sm.core)
            .unwrap()
            .iter()
            .all(Residual::is_zero));
        for (_, s) in sm.networks.all() {
            assert!(s.is_nonnegative());
        }
        // Twice the face-constrained double-edge series: either edge of a double edge
        // can carry the root.
        let doubled = core.t2.scale(&int(2));
        assert!(sm.core.t2.agrees_with(&doubled));
    }
}
