//! Network decompositions over a 3-connected core, shared by labelled graphs and by
//! rooted simple maps. Both flavors solve the same eight-series system
//! `D, L, S, P, F, S2, H1, H2` in one variable `x` (vertices), differing only in
//! the constants that encode labelling versus embedding.
//!
//! The core enters through two substitutions: `T1(x, u, v) = t1(u^2 x, v x)` for
//! networks rooted at a simple edge and `T2(x, u, v) = t2(u^2 x, v x)` for networks
//! rooted at a double edge. `H2` divides `T2(x, 1+D, W)` by `W`; since `t2` carries an
//! explicit factor `v`, that division is done on `t2` itself.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result, StageContext};
use crate::series::{int, rat, Coefficient, Exponents, Series, VarSet};
use crate::solve::{FixedPointSystem, Residual};

/// Univariate ring in `x`.
pub fn x_ring() -> Arc<VarSet> {
    VarSet::total_degree(&["x"]).expect("valid ring")
}

/// Ring for the literal `T1(x, u, v)`, `T2(x, u, v)`: truncation in `x` only.
pub fn xuv_ring() -> Arc<VarSet> {
    VarSet::new([("x", 1), ("u", 0), ("v", 0)]).expect("valid ring")
}

/// Which objects the networks are glued into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Labelled, unembedded graphs.
    Graphs,
    /// Rooted simple maps.
    SimpleMaps,
}

/// Constants of the system for one flavor.
struct Constants {
    /// `L = loop_c x (D - L)`.
    loop_c: Coefficient,
    /// `P = x^2 (p_d2 D^2 + p_d3 D^3) + p_fd F D`.
    p_d2: Coefficient,
    p_d3: Coefficient,
    p_fd: Coefficient,
    /// `W = w_d D + w_d2 D^2 + F/x^2`.
    w_d: Coefficient,
    w_d2: Coefficient,
    /// `F = S2 + f_h2 H2`.
    f_h2: Coefficient,
    /// `D = L + S + P + H1 + d_f F`.
    d_f: Coefficient,
}

impl Flavor {
    fn constants(self) -> Constants {
        match self {
            Flavor::Graphs => Constants {
                loop_c: rat(1, 2),
                p_d2: rat(1, 2),
                p_d3: rat(1, 6),
                p_fd: int(1),
                w_d: int(1),
                w_d2: rat(1, 2),
                f_h2: int(1),
                d_f: int(1),
            },
            Flavor::SimpleMaps => Constants {
                loop_c: int(2),
                p_d2: int(3),
                p_d3: int(1),
                p_fd: int(2),
                w_d: int(2),
                w_d2: int(1),
                f_h2: rat(1, 2),
                d_f: int(2),
            },
        }
    }

    fn name(self) -> &'static str {
        match self {
            Flavor::Graphs => "graph networks",
            Flavor::SimpleMaps => "simple map networks",
        }
    }
}

/// Multiply each `u^k v^l` coefficient of a `(u, v)` series by `factor * l / k`.
pub fn double_edge_series(t: &Series, factor: &Coefficient) -> Series {
    Series::from_terms(
        t.vars(),
        t.bound(),
        t.terms().filter(|(e, _)| e.get(0) > 0).map(|(e, c)| {
            let (k, l) = (e.get(0), e.get(1));
            (e, c * factor * rat(i64::from(l), i64::from(k)))
        }),
    )
}

/// Core series in the `(u, v)` ring for one flavor.
#[derive(Debug, Clone)]
pub struct Core {
    pub flavor: Flavor,
    /// Rooted at a simple edge.
    pub t1: Series,
    /// Rooted at a double edge; divisible by `v`.
    pub t2: Series,
}

impl Core {
    /// Build both core series from `T(u, v)`.
    ///
    /// Counting directed root edges of each kind gives, for a core with `2k` simple
    /// and `l` double edges, `2k` simple rootings and `l` double-edge rootings (with a
    /// fixed 2-face side), hence `[u^k v^l] t2 = (l / 2k) [u^k v^l] T` up to the
    /// flavor's choice of root face.
    pub fn new(flavor: Flavor, t: &Series) -> Core {
        let (t1, t2) = match flavor {
            Flavor::Graphs => (t.scale(&rat(1, 2)), double_edge_series(t, &rat(1, 4))),
            Flavor::SimpleMaps => (t.clone(), double_edge_series(t, &int(1))),
        };
        Core { flavor, t1, t2 }
    }

    /// `f(u^2 x, v x)` in the `(x, u, v)` ring.
    pub fn trivariate(f: &Series) -> Series {
        let ring = xuv_ring();
        Series::from_terms(
            &ring,
            f.bound(),
            f.terms().map(|(e, c)| {
                let (k, l) = (e.get(0), e.get(1));
                (Exponents::from_slice(&[k + l, 2 * k, l]), c.clone())
            }),
        )
    }
}

/// Solution of a network system.
#[derive(Debug, Clone)]
pub struct Networks {
    pub flavor: Flavor,
    pub d: Series,
    pub l: Series,
    pub s: Series,
    pub p: Series,
    pub f: Series,
    pub s2: Series,
    pub h1: Series,
    pub h2: Series,
}

const UNKNOWNS: [&str; 8] = ["D", "L", "S", "P", "F", "S2", "H1", "H2"];

/// One Gauss-Seidel sweep: `H1, H2, L, S, P, S2` from the current iterate, then `F`
/// and `D` from those fresh values (their lines would not gain a degree otherwise).
fn sweep(core: &Core, t2v: &Series, y: &[Series], p: u32) -> Result<Vec<Series>> {
    let v = x_ring();
    if p == 0 {
        // Every network has a vertex, so nothing lives in degree zero.
        return Ok(vec![Series::zero(&v, 0); UNKNOWNS.len()]);
    }
    let k = core.flavor.constants();
    let x = Series::var(&v, "x", p)?;
    let (d, l, s, f, s2) = (&y[0], &y[1], &y[2], &y[4], &y[5]);
    let d2 = d * d;
    let wpoly = d.scale(&k.w_d) + d2.scale(&k.w_d2);
    let f_over_x = f.div_exact_monomial("x", 1).stage("F/x")?;
    let big_x = &x * (d + 1).pow(2);
    let big_y = &x * &wpoly + f_over_x;
    let args = [&big_x, &big_y];

    let h1 = core
        .t1
        .truncate_to(p)
        .compose(&args)
        .stage("H1 line")?
        .div_unit(&(d + 1))?;
    let h2 = t2v
        .truncate_to(p)
        .compose(&args)
        .stage("H2 line")?
        .mul_monomial("x", 1)?;
    let l_new = (&x * (d - l)).scale(&k.loop_c);
    let s_new = d * (d - s);
    let p_new = &x * &x * (d2.scale(&k.p_d2) + (&d2 * d).scale(&k.p_d3)) + (f * d).scale(&k.p_fd);
    let kk = f + &x * &x * &wpoly;
    let s2_new = kk
        .mul_with_orders(&(&kk - s2))?
        .div_exact_monomial("x", 1)
        .stage("S2 line")?;
    let f_new = &s2_new + h2.scale(&k.f_h2);
    let d_new = &l_new + &s_new + &p_new + &h1 + f_new.scale(&k.d_f);
    Ok(vec![d_new, l_new, s_new, p_new, f_new, s2_new, h1, h2])
}

/// Solve the network system of `core`'s flavor to `bound` vertices.
pub fn solve_networks(core: &Core, bound: u32) -> Result<Networks> {
    let name = core.flavor.name();
    let t2v = core.t2.div_exact_monomial("v", 1).stage(name)?;
    let v = x_ring();
    let sys = FixedPointSystem::new(&UNKNOWNS, &v, bound, |y, p| {
        sweep(core, &t2v, y, p).stage(name)
    });
    let sol = sys.solve().stage(name)?;
    drop(sys);
    let mut it = sol.into_iter();
    let mut next = || it.next().expect("eight unknowns");
    Ok(Networks {
        flavor: core.flavor,
        d: next(),
        l: next(),
        s: next(),
        p: next(),
        f: next(),
        s2: next(),
        h1: next(),
        h2: next(),
    })
}

impl Networks {
    pub fn bound(&self) -> u32 {
        self.d.bound()
    }

    pub fn all(&self) -> [(&'static str, &Series); 8] {
        [
            ("D", &self.d),
            ("L", &self.l),
            ("S", &self.s),
            ("P", &self.p),
            ("F", &self.f),
            ("S2", &self.s2),
            ("H1", &self.h1),
            ("H2", &self.h2),
        ]
    }

    /// Residuals of all eight lines in their literal form, with `H1` and `H2` checked
    /// through the trivariate core series at `(x, 1 + D, W)`.
    pub fn residuals(&self, core: &Core) -> Result<Vec<Residual>> {
        let k = self.flavor.constants();
        let name = self.flavor.name();
        let b = self.bound();
        let x = Series::var(self.d.vars(), "x", b)?;
        let (d, l, s, p, f, s2, h1, h2) = (
            &self.d, &self.l, &self.s, &self.p, &self.f, &self.s2, &self.h1, &self.h2,
        );
        let d2 = d * d;
        let wpoly = d.scale(&k.w_d) + d2.scale(&k.w_d2);
        let kk = f + &x * &x * &wpoly;

        let w = &wpoly + f.div_exact_monomial("x", 2).stage("F/x^2")?;
        let one_d = d + 1;
        let t1_lit = Core::trivariate(&core.t1)
            .compose(&[&x, &one_d, &w])
            .stage("T1(x, 1+D, W)")?;
        let t2_lit = Core::trivariate(&core.t2)
            .compose(&[&x, &one_d, &w])
            .stage("T2(x, 1+D, W)")?;

        let line = |n: &str| format!("{name}: {n}");
        Ok(vec![
            Residual::new(line("D"), d, &(l + s + p + h1 + f.scale(&k.d_f)))?,
            Residual::new(line("L"), l, &(&x * (d - l)).scale(&k.loop_c))?,
            Residual::new(line("S"), s, &(d * (d - s)))?,
            Residual::new(
                line("P"),
                p,
                &(&x * &x * (d2.scale(&k.p_d2) + (&d2 * d).scale(&k.p_d3))
                    + (f * d).scale(&k.p_fd)),
            )?,
            Residual::new(line("F"), f, &(s2 + h2.scale(&k.f_h2)))?,
            Residual::new(line("S2"), &(s2 * &x), &(&kk * (&kk - s2)))?,
            Residual::new(line("H1"), &(h1 * &one_d), &t1_lit)?,
            Residual::new(line("H2"), &(h2 * &w), &t2_lit)?,
        ])
    }
}

/// `n! [x^n] s` for `n = 0..=bound`, checked to be non-negative integers.
pub fn egf_counts(s: &Series, what: &str) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(s.bound() as usize + 1);
    let mut fact = BigInt::from(1);
    for n in 0..=s.bound() {
        if n > 0 {
            fact *= n;
        }
        let c = s.coeff(&[n]) * Coefficient::from_integer(fact.clone());
        out.push(count(c, &format!("{what}_{n}"))?);
    }
    Ok(out)
}

pub(crate) fn count(c: Coefficient, what: &str) -> Result<BigInt> {
    if !c.is_integer() {
        return Err(Error::NonIntegralCount {
            what: what.into(),
            value: c.to_string(),
        });
    }
    let n = c.to_integer();
    if n < BigInt::from(0) {
        return Err(Error::NegativeCount {
            what: what.into(),
            value: n.to_string(),
        });
    }
    Ok(n)
}
