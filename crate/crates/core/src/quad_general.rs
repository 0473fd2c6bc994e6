//! Arbitrary quadrangulations (multiple edges allowed), obtained from simple ones by
//! substituting 2-cycle quadrangulations into edges.
//!
//! The change of variables `s = (1+Ã)^2`, `t = (w + 2Ã + Ã^2)/s` couples the
//! partition series `Q0, Q1, E` to the 2-cycle series `A0, A1`, so the two are solved as
//! one fixed point over `(A0, A1)`. The root-class series `B0, B1, B0*` follow directly.

use crate::error::{Result, StageContext};
use crate::quad_simple::{zw_ring, SimpleQuads};
use crate::series::Series;
use crate::solve::{FixedPointSystem, Residual};

/// `Â = A0 + A1 + A1/w`.
pub fn a_hat(a0: &Series, a1: &Series) -> Result<Series> {
    Ok(a0 + a1 + a1.div_exact_monomial("w", 1).stage("A1/w")?)
}

/// `Ã = A0 + 2 A1/w`.
pub fn a_tilde(a0: &Series, a1: &Series) -> Result<Series> {
    Ok(a0 + a1.div_exact_monomial("w", 1).stage("A1/w")? * 2)
}

/// Series of simple quadrangulations needed for substitution, in the `N1/w`, `N2/w^2`
/// form so that the division by `t` cancels structurally.
#[derive(Debug, Clone)]
struct Substituted {
    n0: Series,
    n1: Series,
    n1w: Series,
    n2ww: Series,
    r: Series,
}

/// Everything computed from one `(A0, A1)` iterate.
#[derive(Debug, Clone)]
struct Layer {
    a_tilde: Series,
    a_hat: Series,
    s: Series,
    t: Series,
    q0: Series,
    q1: Series,
    e: Series,
}

fn layer(sub: &Substituted, a0: &Series, a1: &Series, p: u32) -> Result<Layer> {
    let v = zw_ring();
    let z = Series::var(&v, "z", p)?;
    let w = Series::var(&v, "w", p)?;
    let at = a_tilde(a0, a1)?;
    let ah = a_hat(a0, a1)?;
    let at2 = &at * &at;
    let s = (&at + 1).pow(2);
    let t = (&w + &at * 2 + &at2)
        .div_unit(&s)
        .stage("t = (w + 2Ã + Ã^2)/s")?;
    let zs = &z * &s;
    let args = [&zs, &t];
    let at_q = |f: &Series, what: &str| f.truncate_to(p).compose(&args).stage(what);

    let q1 = at_q(&sub.n1w, "N1(zs,t)/t")? + &t * at_q(&sub.n2ww, "N2(zs,t)/t")? * 2;
    let q0 = &s
        * (at_q(&sub.n0, "N0(zs,t)")? * 2 + at_q(&sub.n1, "N1(zs,t)")? + at_q(&sub.r, "R(zs,t)")?)
        + (&at * 2 + &at2) * &q1;
    let e = &z * (&at + 1).pow(4) - &z * &at2 * 4 + &z * &w * &at2 * 4;
    Ok(Layer {
        a_tilde: at,
        a_hat: ah,
        s,
        t,
        q0,
        q1,
        e,
    })
}

/// Right-hand sides `[A0, A1]` given the derived layer.
fn a_rhs(l: &Layer, p: u32) -> Result<Vec<Series>> {
    let v = zw_ring();
    let z = Series::var(&v, "z", p)?;
    let w = Series::var(&v, "w", p)?;
    let at2 = &l.a_tilde * &l.a_tilde;
    let a1 = &z * &w * (&l.a_hat + 1);
    let a0 = &z * &l.a_tilde * (&l.a_hat + 1) * 2
        + &z * (&l.q0 + &l.q1 + &l.e + &z * &l.a_tilde * (&w - 1) * 2 - &z * &at2 * (&w - 1) * 2);
    Ok(vec![a0, a1])
}

/// Root-class series `[B0, B1, B0*]` given the layer at the solution.
fn b_series(l: &Layer, a1: &Series, p: u32) -> Result<Vec<Series>> {
    let v = zw_ring();
    let z = Series::var(&v, "z", p)?;
    let w = Series::var(&v, "w", p)?;
    let at2 = &l.a_tilde * &l.a_tilde;
    let ah1 = &l.a_hat + 1;
    let b0 = &z * &ah1 * (&ah1 - a1) * 2
        + &z * (&l.q0 + &l.e - &z * &w * &at2 * 2 - &z * &l.a_tilde * 2);
    let b1 = &z * &ah1 * a1 * 2 + &z * &w * (&l.q1 + &z * &at2 * 2);
    let b0_star = &z * &z * &l.a_tilde * 2;
    Ok(vec![b0, b1, b0_star])
}

/// Solution for arbitrary quadrangulations; `z` counts all faces in the `B` series.
#[derive(Debug, Clone)]
pub struct ArbitraryQuads {
    pub a0: Series,
    pub a1: Series,
    pub q0: Series,
    pub q1: Series,
    pub e: Series,
    pub s: Series,
    pub t: Series,
    pub b0: Series,
    pub b1: Series,
    pub b0_star: Series,
    sub: Substituted,
}

/// Solve for `A0, A1` and evaluate `B0, B1, B0*`, all to the bound of `simple`.
pub fn solve_arbitrary_quads(simple: &SimpleQuads) -> Result<ArbitraryQuads> {
    let bound = simple.bound();
    let sub = Substituted {
        n0: simple.n0.clone(),
        n1: simple.n1.clone(),
        n1w: simple
            .n1
            .div_exact_monomial("w", 1)
            .stage("arbitrary quadrangulations: N1/w")?,
        n2ww: simple
            .n2
            .div_exact_monomial("w", 2)
            .stage("arbitrary quadrangulations: N2/w^2")?,
        r: simple.r.clone(),
    };
    let v = zw_ring();
    let sys = FixedPointSystem::new(&["A0", "A1"], &v, bound, |y, p| {
        a_rhs(&layer(&sub, &y[0], &y[1], p)?, p)
    });
    let sol = sys.solve().stage("arbitrary quadrangulations")?;
    drop(sys);
    let (a0, a1) = (sol[0].clone(), sol[1].clone());
    let l = layer(&sub, &a0, &a1, bound).stage("arbitrary quadrangulations")?;
    let b = b_series(&l, &a1, bound).stage("root classes")?;
    let [b0, b1, b0_star]: [Series; 3] = b.try_into().expect("three root classes");
    Ok(ArbitraryQuads {
        a0,
        a1,
        q0: l.q0,
        q1: l.q1,
        e: l.e,
        s: l.s,
        t: l.t,
        b0,
        b1,
        b0_star,
        sub,
    })
}

impl ArbitraryQuads {
    pub fn bound(&self) -> u32 {
        self.a0.bound()
    }

    pub fn b_total(&self) -> Series {
        &self.b0 + &self.b1 + &self.b0_star
    }

    /// Residuals of the `A` system, the partition series definitions, and the
    /// root-class lines.
    pub fn residuals(&self) -> Result<Vec<Residual>> {
        let p = self.bound();
        let l = layer(&self.sub, &self.a0, &self.a1, p)?;
        let a = a_rhs(&l, p)?;
        let b = b_series(&l, &self.a1, p)?;
        let w = Series::var(self.a0.vars(), "w", p)?;
        let tilde_quadratic = w + &l.a_tilde * 2 + &l.a_tilde * &l.a_tilde;
        Ok(vec![
            Residual::new("2-cycle quadrangulations: A0", &self.a0, &a[0])?,
            Residual::new("2-cycle quadrangulations: A1", &self.a1, &a[1])?,
            Residual::new("partition: Q0", &self.q0, &l.q0)?,
            Residual::new("partition: Q1", &self.q1, &l.q1)?,
            Residual::new("partition: E", &self.e, &l.e)?,
            Residual::new("partition: s", &self.s, &l.s)?,
            Residual::new("partition: t s", &(&self.t * &self.s), &tilde_quadratic)?,
            Residual::new("root classes: B0", &self.b0, &b[0])?,
            Residual::new("root classes: B1", &self.b1, &b[1])?,
            Residual::new("root classes: B0*", &self.b0_star, &b[2])?,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad_simple::{at_w_one, solve_simple_quads};
    use crate::series::int;

    #[test]
    fn hat_and_tilde() {
        let v = zw_ring();
        let a1 = Series::monomial(&v, &[("z", 1), ("w", 1)], int(1), 4).unwrap();
        let a0 = Series::monomial(&v, &[("z", 2)], int(3), 4).unwrap();
        let z = Series::var(&v, "z", 4).unwrap();
        assert_eq!(a_hat(&a0, &a1).unwrap(), &a0 + &a1 + &z);
        assert_eq!(a_tilde(&a0, &a1).unwrap(), &a0 + &z * 2);
        let diff = a_hat(&a0, &a1).unwrap() - a_tilde(&a0, &a1).unwrap();
        assert_eq!(diff, &a1 - &z);
    }

    #[test]
    fn low_order_counts() {
        let aq = solve_arbitrary_quads(&solve_simple_quads(7).unwrap()).unwrap();
        assert_eq!(
            aq.a1.terms().next().map(|(e, c)| (e.to_vec(2), c.clone())),
            Some((vec![1, 1], int(1)))
        );
        assert_eq!(aq.b_total().coeff(&[1, 0]), int(2));
        let rooted_maps: Vec<_> = [0, 2, 9, 54, 378, 2916, 24057, 208494]
            .iter()
            .map(|x| int(*x))
            .collect();
        assert_eq!(at_w_one(&aq.b_total()), rooted_maps);
        for s in [&aq.a0, &aq.a1, &aq.b0, &aq.b1, &aq.b0_star] {
            assert!(s.is_nonnegative());
        }
        assert!(aq.b1.div_exact_monomial("w", 1).is_ok());
        assert!(aq.residuals().unwrap().iter().all(Residual::is_zero));
    }
}
