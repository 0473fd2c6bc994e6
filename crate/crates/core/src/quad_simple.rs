//! Simple quadrangulations: the Catalan-type series `U`, the 3-connected core series
//! `S`, and the joint system for `Q, R, N0, N1, N2` in `z` (internal faces) and `w`
//! (isolated 2-vertices).

use std::sync::Arc;

use crate::error::{Result, StageContext};
use crate::series::{int, rat, Series, VarSet};
use crate::solve::{FixedPointSystem, Residual};

/// Univariate ring in `z`.
pub fn z_ring() -> Arc<VarSet> {
    VarSet::total_degree(&["z"]).expect("valid ring")
}

/// Quadrangulation ring: truncation by the number of faces `z`, with `w` as a
/// weight-zero parameter (the number of 2-vertices never exceeds faces plus one).
pub fn zw_ring() -> Arc<VarSet> {
    VarSet::new([("z", 1), ("w", 0)]).expect("valid ring")
}

/// `U = z (1 + U)^2`.
pub fn u_series(bound: u32) -> Result<Series> {
    let v = z_ring();
    let sys = FixedPointSystem::new(&["U"], &v, bound, |y, p| {
        let z = Series::var(&v, "z", p)?;
        Ok(vec![z * (&y[0] + 1).pow(2)])
    });
    Ok(sys.solve().stage("U")?.remove(0))
}

/// `S = 2z/(1+z) - z - U^2 / (z (1+2U)^3)`; lowest term `z^5` (the cube).
pub fn s_series(bound: u32) -> Result<Series> {
    let v = z_ring();
    let u = u_series(bound + 1)?;
    let z = Series::var(&v, "z", bound + 1)?;
    let core = (&u * &u).div_unit(&(&u * 2 + 1).pow(3)).stage("S")?;
    let core = core.div_exact_monomial("z", 1).stage("S: division by z")?;
    let head = (&z * 2).div_unit(&(&z + 1))? - &z;
    Ok((head - core).truncate_to(bound))
}

/// Solution of the simple-quadrangulation system.
#[derive(Debug, Clone)]
pub struct SimpleQuads {
    pub s: Series,
    pub q: Series,
    pub r: Series,
    pub n0: Series,
    pub n1: Series,
    pub n2: Series,
}

struct Unknowns<'a> {
    n0: &'a Series,
    n1: &'a Series,
    n2: &'a Series,
    r: &'a Series,
}

/// `Ñ = N0 + N1/w + N2/w^2`.
fn n_tilde(n0: &Series, n1: &Series, n2: &Series) -> Result<Series> {
    let n1w = n1.div_exact_monomial("w", 1).stage("N1/w")?;
    let n2w = n2.div_exact_monomial("w", 2).stage("N2/w^2")?;
    Ok(n0 + n1w + n2w)
}

/// Right-hand sides `[N0, N1, N2, R]`.
fn rhs(s: &Series, y: &Unknowns<'_>, p: u32) -> Result<Vec<Series>> {
    let v = zw_ring();
    let z = Series::var(&v, "z", p)?;
    let w = Series::var(&v, "w", p)?;
    let half = rat(1, 2);
    let nt = n_tilde(y.n0, y.n1, y.n2)?;
    let ntr = &nt + y.r;
    let n1w = y.n1.div_exact_monomial("w", 1)?;

    let r = s
        .truncate_to(p)
        .compose(&[&(&z + &nt * 2 + y.r), &w])
        .stage("R line")?;
    let n0 = &ntr * &(&ntr + y.n0 + n1w.scale(&half));
    let zw = &z * &w;
    let n1 = &zw * 2 * (&ntr + y.n0 + y.n1.scale(&half));
    let n2 =
        Series::monomial(&v, &[("z", 2), ("w", 3)], int(1), p)? + &zw * (y.n1.scale(&half) + y.n2);
    Ok(vec![n0, n1, n2, r])
}

/// Solve for `Q, R, N0, N1, N2` to `bound` faces.
pub fn solve_simple_quads(bound: u32) -> Result<SimpleQuads> {
    let v = zw_ring();
    let s = s_series(bound)
        .stage("simple quadrangulations")?
        .embed(&v)?;
    let sys = FixedPointSystem::new(&["N0", "N1", "N2", "R"], &v, bound, |y, p| {
        rhs(
            &s,
            &Unknowns {
                n0: &y[0],
                n1: &y[1],
                n2: &y[2],
                r: &y[3],
            },
            p,
        )
    });
    let solution = sys.solve().stage("simple quadrangulations")?;
    drop(sys);
    let mut sol = solution.into_iter();
    let mut next = || sol.next().expect("four unknowns");
    let (n0, n1, n2, r) = (next(), next(), next(), next());
    let z = Series::var(&v, "z", bound)?;
    let q = z + (&n0 + &n1 + &n2) * 2 + &r;
    Ok(SimpleQuads {
        s,
        q,
        r,
        n0,
        n1,
        n2,
    })
}

impl SimpleQuads {
    pub fn bound(&self) -> u32 {
        self.q.bound()
    }

    pub fn n_tilde(&self) -> Result<Series> {
        n_tilde(&self.n0, &self.n1, &self.n2)
    }

    /// Residuals of the five defining equations.
    pub fn residuals(&self) -> Result<Vec<Residual>> {
        let y = Unknowns {
            n0: &self.n0,
            n1: &self.n1,
            n2: &self.n2,
            r: &self.r,
        };
        let image = rhs(&self.s, &y, self.bound())?;
        let z = Series::var(self.q.vars(), "z", self.bound())?;
        let q_rhs = z + (&self.n0 + &self.n1 + &self.n2) * 2 + &self.r;
        Ok(vec![
            Residual::new("simple quadrangulations: N0", &self.n0, &image[0])?,
            Residual::new("simple quadrangulations: N1", &self.n1, &image[1])?,
            Residual::new("simple quadrangulations: N2", &self.n2, &image[2])?,
            Residual::new("simple quadrangulations: R", &self.r, &image[3])?,
            Residual::new("simple quadrangulations: Q", &self.q, &q_rhs)?,
        ])
    }
}

/// Sum of coefficients of `z^n w^j` over `j`, for `n = 0..=bound`.
pub fn at_w_one(s: &Series) -> Vec<crate::series::Coefficient> {
    let mut out = vec![int(0); s.bound() as usize + 1];
    for (e, c) in s.terms() {
        out[e.get(0) as usize] += c;
    }
    out
}
