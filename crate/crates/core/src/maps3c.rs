//! From quadrangulations to 4-regular maps by duality, then to the 3-connected core
//! series `T(u, v)` and `T2(u, v)` by inverting the change of variables
//! `u = q(1+D)^2`, `v = w + q(2D + D^2) + F`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result, StageContext};
use crate::quad_general::ArbitraryQuads;
use crate::series::{int, rat, Coefficient, Exponents, Series, VarSet};
use crate::solve::{solve_linear_unit, FixedPointSystem, Residual};

/// Ring of 4-regular maps: `q` half the ordinary edges, `w` the 2-faces.
pub fn qw_ring() -> Arc<VarSet> {
    VarSet::total_degree(&["q", "w"]).expect("valid ring")
}

/// Ring of 3-connected cores: `u` half the simple edges, `v` the double edges.
pub fn uv_ring() -> Arc<VarSet> {
    VarSet::total_degree(&["u", "v"]).expect("valid ring")
}

/// Send a quadrangulation series to its dual: `z^n w^j -> q^(n-j) w^j`.
pub fn dualize(b: &Series) -> Result<Series> {
    let v = qw_ring();
    let mut terms = Vec::with_capacity(b.len());
    for (e, c) in b.terms() {
        let (n, j) = (e.get(0), e.get(1));
        if j > n {
            return Err(Error::InexactDivision {
                divisor: format!("q^{j}"),
                monomial: b.vars().format_monomial(e),
            });
        }
        terms.push((Exponents::from_slice(&[n - j, j]), c.clone()));
    }
    Ok(Series::from_terms(&v, b.bound(), terms))
}

/// Series of the map decomposition, in `(q, w)`.
#[derive(Debug, Clone)]
pub struct MapSeries {
    pub m0: Series,
    pub m1: Series,
    pub m0_star: Series,
    pub d: Series,
    pub l: Series,
    pub s0: Series,
    pub s1: Series,
    pub p0: Series,
    pub p1: Series,
    pub f: Series,
    pub h: Series,
    pub s2: Series,
    pub h2: Series,
}

/// `D = M0 + (q/w) M1 + (w/q) M0*`.
fn d_from_classes(m0: &Series, m1: &Series, m0_star: &Series) -> Result<Series> {
    let m1_part = m1.div_exact_monomial("w", 1)?.mul_monomial("q", 1)?;
    let star_part = m0_star.div_exact_monomial("q", 1)?.mul_monomial("w", 1)?;
    Ok(m0 + m1_part + star_part)
}

/// `V = w + q(2D + D^2) + F`, the second coordinate of the change of variables.
fn v_coordinate(d: &Series, f: &Series) -> Result<Series> {
    let w = Series::var(d.vars(), "w", d.bound())?;
    let q = Series::var(d.vars(), "q", d.bound())?;
    Ok(w + q * (d * 2 + d * d) + f)
}

/// Solve the map decomposition sequentially from the three root classes.
pub fn solve_map_system(m0: &Series, m1: &Series, m0_star: &Series) -> Result<MapSeries> {
    let half = rat(1, 2);
    let d = m0_star
        .div_exact_monomial("q", 2)
        .stage("D = M0*/(2q^2)")?
        .scale(&half);
    let d_alt = d_from_classes(m0, m1, m0_star).stage("D line")?;
    if !d.agrees_with(&d_alt) {
        return Err(Error::Inconsistent(
            "the two expressions for D disagree".into(),
        ))
        .stage("map decomposition: D line");
    }
    let v = d.vars().clone();
    let b = d.bound();
    let q = Series::var(&v, "q", b)?;
    let w = Series::var(&v, "w", b)?;

    let l = solve_linear_unit(&(&q - &w + 1), &(&q * 2 * (&d + 1)))
        .stage("map decomposition: L line")?;
    let s1 = (&l * &l).scale(&half);
    let p1 = &q * &q * &d * &d * 2;
    let m1_part = m1
        .div_exact_monomial("w", 1)
        .stage("map decomposition: F, M1/w")?
        .mul_monomial("q", 1)?;
    let f = (m1_part - &s1 - &p1)
        .div_exact_monomial("q", 1)
        .stage("map decomposition: F, division by q")?
        .scale(&half);
    let s0 = solve_linear_unit(&(&d + 1), &(&d * &d - &d * &s1 - (&l * &l).scale(&half)))
        .stage("map decomposition: S0 line")?;
    let p0 = &q * &q * (&d + 1 + &d * &d + &d * &d * &d) + &q * &d * &f * 2;
    let h = m0 - &s0 - &p0 - &l;

    let big_v = v_coordinate(&d, &f)?;
    let s2 = solve_linear_unit(&(&big_v + 1), &(&big_v * &big_v)).stage("2-face split: S2 line")?;
    let h2 = &f - &s2;
    Ok(MapSeries {
        m0: m0.clone(),
        m1: m1.clone(),
        m0_star: m0_star.clone(),
        d,
        l,
        s0,
        s1,
        p0,
        p1,
        f,
        h,
        s2,
        h2,
    })
}

/// Dualize the root classes and solve the map decomposition.
pub fn maps_from_quads(quads: &ArbitraryQuads) -> Result<MapSeries> {
    let m0 = dualize(&quads.b0).stage("dualize B0")?;
    let m1 = dualize(&quads.b1).stage("dualize B1")?;
    let m0_star = dualize(&quads.b0_star).stage("dualize B0*")?;
    solve_map_system(&m0, &m1, &m0_star)
}

/// Inverse change of variables `(q, w) = (a(u,v), b(u,v))`, solved as the fixed point
/// `a = u/(1+D(a,b))^2`, `b = v - a(2D(a,b) + D(a,b)^2) - F(a,b)`.
pub fn invert_change_of_vars(d: &Series, f: &Series) -> Result<(Series, Series)> {
    let v = uv_ring();
    let bound = d.bound().min(f.bound());
    let sys = FixedPointSystem::new(&["a", "b"], &v, bound, |y, p| {
        let u = Series::var(&v, "u", p)?;
        let vv = Series::var(&v, "v", p)?;
        let da = d.truncate_to(p).compose(&[&y[0], &y[1]])?;
        let fa = f.truncate_to(p).compose(&[&y[0], &y[1]])?;
        let a = u.div_unit(&(&da + 1).pow(2))?;
        let b = vv - &a * (&da * 2 + &da * &da) - fa;
        Ok(vec![a, b])
    });
    let mut sol = sys.solve().stage("reversion")?;
    let b = sol.pop().expect("two unknowns");
    let a = sol.pop().expect("two unknowns");
    Ok((a, b))
}

/// The 3-connected core series with the inverse change of variables.
#[derive(Debug, Clone)]
pub struct ThreeConnected {
    /// Rooted at a simple edge.
    pub t: Series,
    /// Rooted at a double edge, with the 2-face to the right of the root.
    pub t2: Series,
    pub a: Series,
    pub b: Series,
}

/// `T = (1+D(a,b)) H(a,b)` and `T2 = v H2(a,b)`.
pub fn compute_t(maps: &MapSeries) -> Result<ThreeConnected> {
    let (a, b) = invert_change_of_vars(&maps.d, &maps.f)?;
    let at = |s: &Series, what: &str| s.compose(&[&a, &b]).stage(what);
    let t = (at(&maps.d, "D(a,b)")? + 1) * at(&maps.h, "H(a,b)")?;
    let v = Series::var(a.vars(), "v", a.bound())?;
    let t2 = v * at(&maps.h2, "H2(a,b)")?;
    Ok(ThreeConnected { t, t2, a, b })
}

impl MapSeries {
    pub fn bound(&self) -> u32 {
        self.h.bound()
    }

    /// Residuals of the decomposition lines, checking `H` and `H2` against `T` and `T2`.
    pub fn residuals(&self, core: &ThreeConnected) -> Result<Vec<Residual>> {
        let v = self.d.vars().clone();
        let b = self.d.bound();
        let q = Series::var(&v, "q", b)?;
        let w = Series::var(&v, "w", b)?;
        let (d, l, f) = (&self.d, &self.l, &self.f);
        let half = rat(1, 2);
        let big_v = v_coordinate(d, f)?;
        let big_u = &q * (d + 1).pow(2);
        let t_fwd = core
            .t
            .compose(&[&big_u, &big_v])
            .stage("T(u(q,w), v(q,w))")?;
        let t2_fwd = core
            .t2
            .compose(&[&big_u, &big_v])
            .stage("T2(u(q,w), v(q,w))")?;
        let m1_rhs = (&self.s1 + &self.p1 + &q * f * 2)
            .div_exact_monomial("q", 1)?
            .mul_monomial("w", 1)?;
        Ok(vec![
            Residual::new(
                "map decomposition: M0",
                &self.m0,
                &(&self.s0 + &self.p0 + l + &self.h),
            )?,
            Residual::new("map decomposition: M1", &self.m1, &m1_rhs)?,
            Residual::new("map decomposition: M0*", &self.m0_star, &(&q * &q * d * 2))?,
            Residual::new(
                "map decomposition: D",
                d,
                &d_from_classes(&self.m0, &self.m1, &self.m0_star)?,
            )?,
            Residual::new(
                "map decomposition: L",
                l,
                &(&q * 2 * (d + 1 - l) + l * (&w + &q)),
            )?,
            Residual::new(
                "map decomposition: S0",
                &self.s0,
                &(d * (d - &self.s0 - &self.s1) - (l * l).scale(&half)),
            )?,
            Residual::new("map decomposition: S1", &self.s1, &(l * l).scale(&half))?,
            Residual::new(
                "map decomposition: P0",
                &self.p0,
                &(&q * &q * (d + 1 + d * d + d * d * d) + &q * d * f * 2),
            )?,
            Residual::new("map decomposition: P1", &self.p1, &(&q * &q * d * d * 2))?,
            Residual::new("map decomposition: H", &(&self.h * (d + 1)), &t_fwd)?,
            Residual::new("2-face split: F", f, &(&self.s2 + &self.h2))?,
            Residual::new(
                "2-face split: S2",
                &self.s2,
                &(&big_v * (&big_v - &self.s2)),
            )?,
            Residual::new("2-face split: H2", &(&self.h2 * &big_v), &t2_fwd)?,
        ])
    }
}

impl ThreeConnected {
    pub fn bound(&self) -> u32 {
        self.t.bound()
    }

    /// `u - a(1+D(a,b))^2` and `v - (b + a(2D(a,b) + D(a,b)^2) + F(a,b))`; both vanish.
    pub fn reversion_residuals(&self, maps: &MapSeries) -> Result<Vec<Residual>> {
        let da = maps.d.compose(&[&self.a, &self.b])?;
        let fa = maps.f.compose(&[&self.a, &self.b])?;
        let bound = self.a.bound();
        let u = Series::var(self.a.vars(), "u", bound)?;
        let v = Series::var(self.a.vars(), "v", bound)?;
        let u_fwd = &self.a * (&da + 1).pow(2);
        let v_fwd = &self.b + &self.a * (&da * 2 + &da * &da) + fa;
        Ok(vec![
            Residual::new("reversion: u", &u, &u_fwd)?,
            Residual::new("reversion: v", &v, &v_fwd)?,
        ])
    }
}

/// Integer counts of 3-connected 4-regular maps and graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeConnCounts {
    /// `(u-degree, bound)` validity: entries with `k + l <= bound` are exact.
    pub bound: u32,
    /// Rooted 3-connected maps with `2k` simple and `l` double edges, keyed `(k, l)`.
    pub t_kl: BTreeMap<(u32, u32), BigInt>,
    /// `T_n = [u^n v^0] T`, rooted simple 3-connected 4-regular maps on `n` vertices.
    pub t_n0: Vec<BigInt>,
    /// Labelled 3-connected 4-regular planar graphs, `t_n = (n-1)! T_n / 8`.
    pub t_n: Vec<BigInt>,
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Read the integer arrays off `T`, checking integrality and the double-counting
/// identity `8 n t_n = n! T_n`.
pub fn extract_counts(t: &Series) -> Result<ThreeConnCounts> {
    let raw = t.integer_coeffs("T").stage("3-connected counts")?;
    let mut t_kl = BTreeMap::new();
    for (e, c) in raw {
        if c.is_negative() {
            return Err(Error::NegativeCount {
                what: format!("t_{{{},{}}}", e.get(0), e.get(1)),
                value: c.to_string(),
            });
        }
        t_kl.insert((e.get(0), e.get(1)), c);
    }
    let bound = t.bound();
    let t_n0: Vec<BigInt> = (0..=bound)
        .map(|n| t_kl.get(&(n, 0)).cloned().unwrap_or_else(BigInt::zero))
        .collect();
    let mut t_n = Vec::with_capacity(t_n0.len());
    for (n, tn0) in t_n0.iter().enumerate() {
        let n = n as u32;
        if n == 0 {
            t_n.push(BigInt::zero());
            continue;
        }
        let scaled = Coefficient::from_integer(factorial(n - 1) * tn0) / int(8);
        if !scaled.is_integer() {
            return Err(Error::NonIntegralCount {
                what: format!("t_{n}"),
                value: scaled.to_string(),
            });
        }
        t_n.push(scaled.to_integer());
    }
    Ok(ThreeConnCounts {
        bound,
        t_kl,
        t_n0,
        t_n,
    })
}

impl ThreeConnCounts {
    pub fn t(&self, k: u32, l: u32) -> BigInt {
        self.t_kl.get(&(k, l)).cloned().unwrap_or_else(BigInt::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad_general::solve_arbitrary_quads;
    use crate::quad_simple::solve_simple_quads;

    fn pipeline(bound: u32) -> (MapSeries, ThreeConnected) {
        let quads = solve_arbitrary_quads(&solve_simple_quads(bound).unwrap()).unwrap();
        let maps = maps_from_quads(&quads).unwrap();
        let core = compute_t(&maps).unwrap();
        (maps, core)
    }

    #[test]
    fn dualize_moves_two_vertices_to_two_faces() {
        let zw = crate::quad_simple::zw_ring();
        let b = Series::monomial(&zw, &[("z", 3), ("w", 1)], int(5), 4).unwrap();
        let m = dualize(&b).unwrap();
        assert_eq!(m.coeff(&[2, 1]), int(5));
        let bad = Series::monomial(&zw, &[("z", 1), ("w", 2)], int(1), 4).unwrap();
        assert!(matches!(dualize(&bad), Err(Error::InexactDivision { .. })));
    }

    #[test]
    fn table_heads() {
        let (maps, core) = pipeline(11);
        assert_eq!(maps.l.coeff(&[1, 0]), int(2));
        assert_eq!(core.a.coeff(&[1, 0]), int(1));
        assert_eq!(core.b.coeff(&[0, 1]), int(1));
        let counts = extract_counts(&core.t).unwrap();
        assert!(counts.bound >= 8);
        assert_eq!(counts.t(6, 0), BigInt::from(1));
        assert_eq!(counts.t(2, 2), BigInt::from(2));
        assert_eq!(counts.t(4, 3), BigInt::from(56));
        assert_eq!(counts.t(6, 1), BigInt::from(12));
        assert_eq!(counts.t_n[6], BigInt::from(15));
        assert!(counts.t_kl.keys().all(|(k, _)| *k >= 2));
        assert!(core.t2.div_exact_monomial("v", 1).is_ok());
        for r in maps
            .residuals(&core)
            .unwrap()
            .iter()
            .chain(&core.reversion_residuals(&maps).unwrap())
        {
            assert!(r.is_zero(), "{} = {}", r.line, r.value);
        }
    }

    #[test]
    fn t2_counts_double_edge_rootings() {
        // 2k T2_{k,l} = l t_{k,l}: T2 roots at one of the l double edges with its 2-face
        // on the right, T at one of the 2k simple edges in either direction.
        let (_, core) = pipeline(10);
        let counts = extract_counts(&core.t).unwrap();
        for (e, c) in core.t2.terms() {
            let (k, l) = (e.get(0), e.get(1));
            assert_eq!(
                c * int(2 * i64::from(k)),
                Coefficient::from_integer(counts.t(k, l) * l)
            );
        }
        assert_eq!(core.t2.coeff(&[2, 2]), int(1));
    }
}
