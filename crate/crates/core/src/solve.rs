//! Order-by-order fixed-point solving of power-series equation systems `y = F(y)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::series::{Series, VarSet};

/// Right-hand side evaluator: current unknowns and a working precision to new unknowns.
///
/// The precision is the degree the caller needs; evaluators may truncate parameters to
/// it, and must return series known at least that far.
pub type Rhs<'a> = Box<dyn Fn(&[Series], u32) -> Result<Vec<Series>> + 'a>;

/// A system `y_i = F_i(y)` whose right-hand side raises the order of any error by at
/// least one: inputs correct to degree `d` give outputs correct to degree `d + 1`.
pub struct FixedPointSystem<'a> {
    unknowns: Vec<String>,
    vars: Arc<VarSet>,
    bound: u32,
    rhs: Rhs<'a>,
}

impl fmt::Debug for FixedPointSystem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FixedPointSystem")
            .field("unknowns", &self.unknowns)
            .field("bound", &self.bound)
            .finish_non_exhaustive()
    }
}

impl<'a> FixedPointSystem<'a> {
    pub fn new(
        unknowns: &[&str],
        vars: &Arc<VarSet>,
        bound: u32,
        rhs: impl Fn(&[Series], u32) -> Result<Vec<Series>> + 'a,
    ) -> Self {
        FixedPointSystem {
            unknowns: unknowns.iter().map(|s| s.to_string()).collect(),
            vars: vars.clone(),
            bound,
            rhs: Box::new(rhs),
        }
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    fn evaluate(&self, y: &[Series], precision: u32) -> Result<Vec<Series>> {
        let out = (self.rhs)(y, precision)?;
        if out.len() != self.unknowns.len() {
            return Err(Error::ArityMismatch {
                expected: self.unknowns.len(),
                got: out.len(),
            });
        }
        if let Some(short) = out
            .iter()
            .map(Series::bound)
            .filter(|b| *b < precision)
            .min()
        {
            return Err(Error::Stagnation {
                unknowns: self.unknowns.join(","),
                wanted: precision,
                got: short,
            });
        }
        Ok(out.into_iter().map(|s| s.truncate_to(precision)).collect())
    }

    /// Iterate from `y = 0`, raising the working precision by one degree per step, then
    /// iterate at full precision until two consecutive iterates agree.
    pub fn solve(&self) -> Result<Vec<Series>> {
        let mut y: Vec<Series> = self
            .unknowns
            .iter()
            .map(|_| Series::zero(&self.vars, 0))
            .collect();
        for p in 0..=self.bound {
            let input: Vec<Series> = y.iter().map(|s| s.with_bound(p)).collect();
            y = self.evaluate(&input, p)?;
        }
        let limit = self.bound as usize + 2;
        for _ in 0..limit {
            let next = self.evaluate(&y, self.bound)?;
            if next == y {
                return Ok(y);
            }
            y = next;
        }
        Err(Error::NonConvergence {
            unknowns: self.unknowns.join(","),
            bound: self.bound,
            iterations: limit,
        })
    }

    /// `F(y) - y` for each unknown; all zero at a solution.
    pub fn residuals(&self, y: &[Series]) -> Result<Vec<Series>> {
        let image = self.evaluate(y, self.bound)?;
        image.iter().zip(y).map(|(f, s)| f.checked_sub(s)).collect()
    }
}

/// Difference between the two sides of one named equation, evaluated at a solution.
#[derive(Debug, Clone)]
pub struct Residual {
    pub line: String,
    pub value: Series,
}

impl Residual {
    pub fn new(line: impl Into<String>, lhs: &Series, rhs: &Series) -> Result<Residual> {
        Ok(Residual {
            line: line.into(),
            value: lhs.checked_sub(rhs)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// Solve `a * y = b` for `y` when `a` is a unit.
pub fn solve_linear_unit(a: &Series, b: &Series) -> Result<Series> {
    b.div_unit(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    fn z_ring() -> Arc<VarSet> {
        VarSet::total_degree(&["z"]).unwrap()
    }

    #[test]
    fn catalan_fixed_point() {
        let v = z_ring();
        let sys = FixedPointSystem::new(&["y"], &v, 8, |y, p| {
            let z = Series::var(&v, "z", p)?;
            Ok(vec![&z * &(&y[0] + 1).pow(2)])
        });
        let y = sys.solve().unwrap().remove(0);
        // Catalan numbers by their convolution recurrence.
        let mut cat = vec![1i64];
        for n in 1..=8 {
            cat.push((0..n).map(|i| cat[i] * cat[n - 1 - i]).sum());
        }
        for n in 1..=8u32 {
            assert_eq!(y.coeff(&[n]), int(cat[n as usize]));
        }
        assert!(sys.residuals(&[y]).unwrap()[0].is_zero());
    }

    #[test]
    fn constant_rhs() {
        let v = z_ring();
        let sys = FixedPointSystem::new(&["y"], &v, 5, |_, p| Ok(vec![Series::var(&v, "z", p)?]));
        assert_eq!(sys.solve().unwrap()[0], Series::var(&v, "z", 5).unwrap());
    }

    #[test]
    fn stagnation_is_reported() {
        let v = z_ring();
        let sys = FixedPointSystem::new(&["y"], &v, 5, |y, _| Ok(vec![y[0].truncate_to(1)]));
        assert!(matches!(
            sys.solve(),
            Err(Error::Stagnation {
                wanted: 2,
                got: 1,
                ..
            })
        ));
    }

    #[test]
    fn non_convergence_is_reported() {
        let v = z_ring();
        let sys = FixedPointSystem::new(&["y"], &v, 4, |y, p| {
            Ok(vec![&y[0] + &Series::var(&v, "z", p)?])
        });
        assert!(matches!(sys.solve(), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn loop_equation_linear_solve() {
        // L(1 + q - w) = 2q with D = 0; the rearranged loop equation L = 2q(1-L) + L(w+q).
        let v = VarSet::total_degree(&["q", "w"]).unwrap();
        let q = Series::var(&v, "q", 6).unwrap();
        let w = Series::var(&v, "w", 6).unwrap();
        let a = (&q - &w) + 1;
        let l = solve_linear_unit(&a, &(&q * 2)).unwrap();
        assert_eq!(l.coeff(&[1, 0]), int(2));
        let rhs = &(&q * 2) * &(Series::one(&v, 6) - &l) + &l * &(&w + &q);
        assert_eq!(rhs, l);
        assert!(solve_linear_unit(&q, &a).is_err());
        assert_eq!(solve_linear_unit(&Series::one(&v, 6), &w).unwrap(), w);
    }
}
