use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::arith::product_terms;
use super::{int, Coefficient, Exponents, Series, VarSet};
use crate::error::{Error, Result};

/// Shared state for one substitution: the arguments and their cached powers.
struct Substitution<'a> {
    target: Arc<VarSet>,
    args: &'a [&'a Series],
    ords: Vec<u32>,
    bound: u32,
    powers: Vec<Vec<Series>>,
}

impl Substitution<'_> {
    fn power(&mut self, i: usize, k: u32) -> &Series {
        while self.powers[i].len() <= k as usize {
            let next = match self.powers[i].last() {
                None => Series::one(&self.target, self.bound),
                Some(p) => p.mul_at(self.args[i], self.bound),
            };
            self.powers[i].push(next);
        }
        &self.powers[i][k as usize]
    }

    /// Evaluate `terms` (all sharing exponents before `level`, sorted) at degree `<= need`.
    fn eval(
        &mut self,
        terms: &[(Exponents, &Coefficient)],
        level: usize,
        need: u32,
    ) -> BTreeMap<Exponents, Coefficient> {
        let mut acc: BTreeMap<Exponents, Coefficient> = BTreeMap::new();
        let last = level + 1 == self.args.len();
        let mut start = 0;
        while start < terms.len() {
            let k = terms[start].0.get(level);
            let mut end = start + 1;
            while end < terms.len() && terms[end].0.get(level) == k {
                end += 1;
            }
            let group = &terms[start..end];
            start = end;
            let shift = k * self.ords[level];
            if shift > need {
                continue;
            }
            if last {
                let c = group[0].1.clone();
                let target = self.target.clone();
                for (f, d) in self.power(level, k).terms() {
                    if target.degree(f) <= need {
                        *acc.entry(f).or_insert_with(Coefficient::zero) += &c * d;
                    }
                }
            } else {
                let inner = self.eval(group, level + 1, need - shift);
                let part = if k == 0 {
                    inner
                } else {
                    let target = self.target.clone();
                    product_terms(&target, &self.power(level, k).terms, &inner, need)
                };
                for (f, d) in part {
                    *acc.entry(f).or_insert_with(Coefficient::zero) += d;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }
}

impl Series {
    /// Substitute `args[i]` for variable `i`. All arguments share one target ring.
    ///
    /// Each argument must have order at least the weight of the variable it replaces,
    /// which lets weight-zero variables take arbitrary values. The result bound is the
    /// largest degree at which neither the outer truncation nor any argument's
    /// truncation can reach.
    pub fn compose(&self, args: &[&Series]) -> Result<Series> {
        let n = self.vars.len();
        if args.len() != n || n == 0 {
            return Err(Error::ArityMismatch {
                expected: n,
                got: args.len(),
            });
        }
        for a in &args[1..] {
            args[0].check_compatible(a)?;
        }
        let target = args[0].vars.clone();
        let orders: Vec<Option<u32>> = args.iter().map(|a| a.order()).collect();
        // A zero argument is only known to vanish up to its bound.
        let reach: Vec<u32> = (0..n)
            .map(|i| orders[i].unwrap_or(args[i].bound + 1))
            .collect();

        let mut bound = u32::MAX;
        for i in 0..n {
            let w = self.vars.weight(i);
            if let Some(o) = orders[i] {
                if o < w {
                    return Err(Error::NonNilpotentArgument {
                        var: self.vars.names()[i].clone(),
                        order: o,
                        weight: w,
                    });
                }
            }
            if w > 0 {
                let r = ((u64::from(self.bound) + 1) * u64::from(reach[i]) - 1) / u64::from(w);
                bound = bound.min(r.min(u64::from(u32::MAX)) as u32);
            }
        }
        for (e, _) in self.terms() {
            let base: u32 = (0..n).map(|j| e.get(j) * reach[j]).sum();
            for i in 0..n {
                if e.get(i) > 0 {
                    bound = bound.min(args[i].bound + base - reach[i]);
                }
            }
        }
        let ords = reach;
        let live: Vec<(Exponents, &Coefficient)> = self
            .terms()
            .filter(|(e, _)| (0..n).all(|i| e.get(i) == 0 || orders[i].is_some()))
            .collect();

        if bound == u32::MAX {
            bound = args.iter().map(|a| a.bound).max().unwrap_or(0);
        }
        let mut sub = Substitution {
            target: target.clone(),
            args,
            ords,
            bound,
            powers: vec![Vec::new(); n],
        };
        let terms = sub.eval(&live, 0, bound);
        Ok(Series::from_map(&target, bound, terms))
    }

    /// `exp(self)` for a series without weighted-degree-zero terms.
    pub fn exp(&self) -> Result<Series> {
        let b = self.bound as usize;
        let mut parts: Vec<BTreeMap<Exponents, Coefficient>> = vec![BTreeMap::new(); b + 1];
        for (e, c) in self.terms() {
            let d = self.vars.degree(e);
            if d == 0 {
                return Err(Error::NonNilpotentArgument {
                    var: "exp".into(),
                    order: 0,
                    weight: 1,
                });
            }
            parts[d as usize].insert(e, c.clone());
        }
        let mut g: Vec<BTreeMap<Exponents, Coefficient>> = Vec::with_capacity(b + 1);
        g.push(BTreeMap::from([(Exponents::ZERO, int(1))]));
        for d in 1..=b {
            let mut acc: BTreeMap<Exponents, Coefficient> = BTreeMap::new();
            for k in 1..=d {
                if parts[k].is_empty() {
                    continue;
                }
                let k_c = int(k as i64);
                for (e, c) in product_terms(&self.vars, &parts[k], &g[d - k], d as u32) {
                    *acc.entry(e).or_insert_with(Coefficient::zero) += c * &k_c;
                }
            }
            let inv_d = super::rat(1, d as i64);
            acc.retain(|_, c| !c.is_zero());
            g.push(acc.into_iter().map(|(e, c)| (e, c * &inv_d)).collect());
        }
        Ok(Series::from_map(
            &self.vars,
            self.bound,
            g.into_iter().flatten().collect(),
        ))
    }

    /// Antiderivative in `var` with zero constant of integration.
    pub fn integrate(&self, var: &str) -> Result<Series> {
        let i = self.vars.index_of(var)?;
        let terms = self
            .terms()
            .map(|(e, c)| {
                let k = e.get(i);
                (e.with(i, k + 1), c / int(i64::from(k) + 1))
            })
            .collect();
        Ok(Series::from_map(
            &self.vars,
            self.bound + self.vars.weight(i),
            terms,
        ))
    }

    pub fn differentiate(&self, var: &str) -> Result<Series> {
        let i = self.vars.index_of(var)?;
        let w = self.vars.weight(i);
        if w > self.bound {
            return Err(Error::PrecisionExhausted {
                needed: w,
                available: self.bound,
            });
        }
        let terms = self
            .terms()
            .filter(|(e, _)| e.get(i) > 0)
            .map(|(e, c)| {
                let k = e.get(i);
                (e.with(i, k - 1), c * int(i64::from(k)))
            })
            .collect();
        Ok(Series::from_map(&self.vars, self.bound - w, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;
    use proptest::prelude::*;

    fn z_ring() -> Arc<VarSet> {
        VarSet::total_degree(&["z"]).unwrap()
    }

    fn nilpotent(bound: u32) -> impl Strategy<Value = Series> {
        prop::collection::vec((1u32..6, -5i64..6, 1i64..4), 0..6).prop_map(move |ts| {
            Series::from_exponent_vecs(
                &z_ring(),
                bound,
                ts.into_iter().map(|(k, n, d)| (vec![k], rat(n, d))),
            )
        })
    }

    #[test]
    fn exp_of_z() {
        let z = Series::var(&z_ring(), "z", 6).unwrap();
        let e = z.exp().unwrap();
        let expect: Vec<_> = [1, 1, 2, 6, 24, 120, 720]
            .iter()
            .map(|f| rat(1, *f))
            .collect();
        assert_eq!(e.univariate_coeffs(), expect);
        assert!(matches!(
            (z + 1).exp(),
            Err(Error::NonNilpotentArgument { .. })
        ));
    }

    #[test]
    fn compose_rejects_non_nilpotent() {
        let v = z_ring();
        let f = Series::var(&v, "z", 4).unwrap().pow(2);
        let arg = Series::var(&v, "z", 4).unwrap() + 1;
        assert!(matches!(
            f.compose(&[&arg]),
            Err(Error::NonNilpotentArgument { .. })
        ));
        assert!(matches!(f.compose(&[]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn weight_zero_variable_takes_any_value() {
        let zw = VarSet::new([("z", 1), ("w", 0)]).unwrap();
        // f = z w^2 + z^2 (1 + w), substitute w -> 1.
        let f = Series::from_exponent_vecs(
            &zw,
            3,
            [
                (vec![1, 2], int(1)),
                (vec![2, 0], int(1)),
                (vec![2, 1], int(1)),
            ],
        );
        let z = Series::var(&zw, "z", 3).unwrap();
        let one = Series::one(&zw, 3);
        let g = f.compose(&[&z, &one]).unwrap();
        assert_eq!(g.coeff(&[1, 0]), int(1));
        assert_eq!(g.coeff(&[2, 0]), int(2));
        assert_eq!(g.bound(), 3);
    }

    #[test]
    fn bound_tracks_argument_precision() {
        let v = z_ring();
        let f = Series::var(&v, "z", 10).unwrap().pow(3);
        // arg = z^2 + O(z^5): the cube is z^6 + O(z^9).
        let arg = Series::monomial(&v, &[("z", 2)], int(1), 4).unwrap();
        let g = f.compose(&[&arg]).unwrap();
        assert_eq!(g.bound(), 8);
        assert_eq!(g.coeff(&[6]), int(1));
        // outer z^3 + O(z^4) under z -> z^2 is known below z^8.
        let f = Series::var(&v, "z", 3).unwrap().pow(3);
        let arg = Series::monomial(&v, &[("z", 2)], int(1), 30).unwrap();
        assert_eq!(f.compose(&[&arg]).unwrap().bound(), 7);
    }

    #[test]
    fn zero_argument_is_only_known_to_its_bound() {
        let v = z_ring();
        let f = Series::from_exponent_vecs(&v, 6, [(vec![0], int(1)), (vec![2], int(1))]);
        let g = f.compose(&[&Series::zero(&v, 1)]).unwrap();
        assert_eq!(g.bound(), 3);
        assert_eq!(g.coeff(&[0]), int(1));
    }

    #[test]
    fn integrate_then_differentiate() {
        let zw = VarSet::total_degree(&["z", "w"]).unwrap();
        let s = Series::from_exponent_vecs(&zw, 4, [(vec![1, 2], rat(3, 2)), (vec![0, 0], int(2))]);
        let i = s.integrate("z").unwrap();
        assert_eq!(i.bound(), 5);
        assert_eq!(i.coeff(&[2, 2]), rat(3, 4));
        assert_eq!(i.differentiate("z").unwrap(), s);
    }

    proptest! {
        #[test]
        fn composition_is_associative(f in nilpotent(8), g in nilpotent(8), h in nilpotent(8)) {
            let left = f.compose(&[&g]).unwrap().compose(&[&h]).unwrap();
            let right = f.compose(&[&g.compose(&[&h]).unwrap()]).unwrap();
            prop_assert!(left.agrees_with(&right));
        }

        #[test]
        fn identity_substitution(f in nilpotent(8)) {
            let z = Series::var(&z_ring(), "z", 8).unwrap();
            prop_assert_eq!(f.compose(&[&z]).unwrap(), f);
        }

        #[test]
        fn exp_is_a_homomorphism(a in nilpotent(8), b in nilpotent(8)) {
            prop_assert_eq!((&a + &b).exp().unwrap(), a.exp().unwrap() * b.exp().unwrap());
        }

        #[test]
        fn composition_matches_naive_expansion(f in nilpotent(7), g in nilpotent(7)) {
            let mut naive = Series::zero(&z_ring(), 7);
            for (e, c) in f.terms() {
                naive = naive + g.pow(e.get(0)).scale(c);
            }
            prop_assert!(f.compose(&[&g]).unwrap().agrees_with(&naive));
        }
    }
}
