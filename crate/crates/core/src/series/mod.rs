//! Truncated multivariate formal power series with exact rational coefficients.
//!
//! A [`Series`] lives in a graded ring described by a [`VarSet`]: an ordered list of
//! variable names, each with a non-negative integer weight. The weighted degree of a
//! monomial is `sum(weight_i * exponent_i)`; with all weights equal to one this is the
//! ordinary total degree. Every series carries a truncation `bound` and is exact for
//! all monomials of weighted degree `<= bound`; nothing is known above it.
//!
//! A weight-zero variable behaves as a parameter: its exponent is unbounded by the
//! truncation, so series whose degree-`d` slices are polynomials in that variable
//! (like the quadrangulation series in `w`) stay finite.

mod arith;
mod compose;
mod exponents;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use exponents::{Exponents, MAX_VARS};

/// Exact rational coefficient, always in lowest terms with a positive denominator.
pub type Coefficient = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Coefficient {
    Coefficient::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer coefficient.
pub fn int(n: i64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(n))
}

/// Named, weighted variables of a series ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSet {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<VarSet>> {
        let (names, weights): (Vec<String>, Vec<u32>) =
            vars.into_iter().map(|(n, w)| (n.into(), w)).unzip();
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                max: MAX_VARS,
                got: names.len(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::IncompatibleVars {
                    left: names.join(","),
                    right: format!("duplicate `{n}`"),
                });
            }
        }
        Ok(Arc::new(VarSet { names, weights }))
    }

    /// All weights one: plain total-degree truncation.
    pub fn total_degree(names: &[&str]) -> Result<Arc<VarSet>> {
        VarSet::new(names.iter().map(|n| (*n, 1)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn degree(&self, e: Exponents) -> u32 {
        (0..self.len()).map(|i| self.weights[i] * e.get(i)).sum()
    }

    fn describe(&self) -> String {
        self.names
            .iter()
            .zip(&self.weights)
            .map(|(n, w)| {
                if *w == 1 {
                    n.clone()
                } else {
                    format!("{n}:{w}")
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    pub(crate) fn format_monomial(&self, e: Exponents) -> String {
        let parts: Vec<String> = (0..self.len())
            .filter(|&i| e.get(i) > 0)
            .map(|i| match e.get(i) {
                1 => self.names[i].clone(),
                k => format!("{}^{}", self.names[i], k),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// A truncated formal power series over [`Coefficient`].
///
/// Invariants: no stored coefficient is zero and every stored monomial has weighted
/// degree `<= bound`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    vars: Arc<VarSet>,
    bound: u32,
    terms: BTreeMap<Exponents, Coefficient>,
}

impl Series {
    pub fn zero(vars: &Arc<VarSet>, bound: u32) -> Series {
        Series {
            vars: vars.clone(),
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Coefficient, bound: u32) -> Series {
        Series::from_terms(vars, bound, [(Exponents::ZERO, c)])
    }

    pub fn one(vars: &Arc<VarSet>, bound: u32) -> Series {
        Series::constant(vars, Coefficient::one(), bound)
    }

    /// The series consisting of the single variable `name`.
    pub fn var(vars: &Arc<VarSet>, name: &str, bound: u32) -> Result<Series> {
        Series::monomial(vars, &[(name, 1)], Coefficient::one(), bound)
    }

    pub fn monomial(
        vars: &Arc<VarSet>,
        powers: &[(&str, u32)],
        c: Coefficient,
        bound: u32,
    ) -> Result<Series> {
        let mut e = Exponents::ZERO;
        for &(name, k) in powers {
            let i = vars.index_of(name)?;
            e = e.with(i, e.get(i) + k);
        }
        Ok(Series::from_terms(vars, bound, [(e, c)]))
    }

    /// Build a series from raw terms; zero coefficients and terms above `bound` are
    /// dropped and repeated monomials are summed.
    pub fn from_terms(
        vars: &Arc<VarSet>,
        bound: u32,
        terms: impl IntoIterator<Item = (Exponents, Coefficient)>,
    ) -> Series {
        let mut map: BTreeMap<Exponents, Coefficient> = BTreeMap::new();
        for (e, c) in terms {
            if vars.degree(e) > bound {
                continue;
            }
            let slot = map.entry(e).or_insert_with(Coefficient::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        Series {
            vars: vars.clone(),
            bound,
            terms: map,
        }
    }

    /// Build a series from `(exponent vector, coefficient)` pairs.
    pub fn from_exponent_vecs(
        vars: &Arc<VarSet>,
        bound: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, Coefficient)>,
    ) -> Series {
        Series::from_terms(
            vars,
            bound,
            terms
                .into_iter()
                .map(|(v, c)| (Exponents::from_slice(&v), c)),
        )
    }

    pub(crate) fn from_map(
        vars: &Arc<VarSet>,
        bound: u32,
        terms: BTreeMap<Exponents, Coefficient>,
    ) -> Series {
        debug_assert!(terms
            .iter()
            .all(|(e, c)| !c.is_zero() && vars.degree(*e) <= bound));
        Series {
            vars: vars.clone(),
            bound,
            terms,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &Coefficient)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Lowest weighted degree of a stored term, `None` for the zero series.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.vars.degree(*e)).min()
    }

    pub fn coeff_of(&self, e: Exponents) -> Coefficient {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(Coefficient::zero)
    }

    /// Coefficient at the exponent vector `exps` (one entry per variable).
    pub fn coeff(&self, exps: &[u32]) -> Coefficient {
        self.coeff_of(Exponents::from_slice(exps))
    }

    /// Coefficients `[x^0], ..., [x^bound]` of a univariate series.
    pub fn univariate_coeffs(&self) -> Vec<Coefficient> {
        assert_eq!(
            self.vars.len(),
            1,
            "univariate_coeffs on a multivariate series"
        );
        (0..=self.bound).map(|n| self.coeff(&[n])).collect()
    }

    pub fn same_vars(&self, other: &Series) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    pub(crate) fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.same_vars(other) {
            Ok(())
        } else {
            Err(Error::IncompatibleVars {
                left: self.vars.describe(),
                right: other.vars.describe(),
            })
        }
    }

    /// Drop every term of weighted degree above `k`; the bound becomes `min(bound, k)`.
    pub fn truncate_to(&self, k: u32) -> Series {
        let bound = self.bound.min(k);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| self.vars.degree(**e) <= bound)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        Series {
            vars: self.vars.clone(),
            bound,
            terms,
        }
    }

    /// Relabel the bound, keeping the terms. Raising it asserts that the missing
    /// coefficients are zero, which is how an approximate iterate is fed back in.
    pub fn with_bound(&self, bound: u32) -> Series {
        if bound <= self.bound {
            return self.truncate_to(bound);
        }
        Series {
            vars: self.vars.clone(),
            bound,
            terms: self.terms.clone(),
        }
    }

    /// Equal as truncated series up to `min` of both bounds.
    pub fn agrees_with(&self, other: &Series) -> bool {
        if !self.same_vars(other) {
            return false;
        }
        let k = self.bound.min(other.bound);
        self.truncate_to(k).terms == other.truncate_to(k).terms
    }

    /// Rename variables; names not mentioned are kept.
    pub fn rename_vars(&self, renames: &[(&str, &str)]) -> Result<Series> {
        for (from, _) in renames {
            self.vars.index_of(from)?;
        }
        let names = self.vars.names.iter().map(|n| {
            renames
                .iter()
                .find(|(from, _)| from == n)
                .map(|(_, to)| to.to_string())
                .unwrap_or_else(|| n.clone())
        });
        let vars = VarSet::new(names.zip(self.vars.weights.iter().copied()))?;
        Ok(Series {
            vars,
            bound: self.bound,
            terms: self.terms.clone(),
        })
    }

    /// Lift into a ring containing all of this series' variables (with equal weights).
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Series> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names.iter().enumerate() {
            let j = target.index_of(name)?;
            if target.weight(j) != self.vars.weight(i) {
                return Err(Error::IncompatibleVars {
                    left: self.vars.describe(),
                    right: target.describe(),
                });
            }
            map.push(j);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = Exponents::ZERO;
                for (i, &j) in map.iter().enumerate() {
                    f = f.with(j, e.get(i));
                }
                (f, c.clone())
            })
            .collect();
        Ok(Series {
            vars: target.clone(),
            bound: self.bound,
            terms,
        })
    }

    /// Verify that every coefficient is an integer and return the numerators.
    pub fn integer_coeffs(&self, what: &str) -> Result<BTreeMap<Exponents, BigInt>> {
        self.terms
            .iter()
            .map(|(e, c)| {
                if c.is_integer() {
                    Ok((*e, c.to_integer()))
                } else {
                    Err(Error::NonIntegralCount {
                        what: format!("{what} at {}", self.vars.format_monomial(*e)),
                        value: c.to_string(),
                    })
                }
            })
            .collect()
    }

    /// True when no stored coefficient is negative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for Series {
    /// Monomial list `c * z^a w^b + ... + O(bound+1)`, lowest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (self.vars.degree(**e), std::cmp::Reverse(**e)));
        let mut first = true;
        for (e, c) in terms {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag} * {}", self.vars.format_monomial(*e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", self.bound + 1)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}]({self})", self.vars.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zw() -> Arc<VarSet> {
        VarSet::total_degree(&["z", "w"]).unwrap()
    }

    #[test]
    fn from_terms_drops_zero_and_out_of_bound() {
        let v = zw();
        let s = Series::from_exponent_vecs(
            &v,
            3,
            [
                (vec![1, 0], int(2)),
                (vec![1, 0], int(-2)),
                (vec![2, 2], int(5)),
                (vec![0, 1], int(1)),
            ],
        );
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(&[0, 1]), int(1));
    }

    #[test]
    fn display_lists_monomials() {
        let v = zw();
        let s = Series::from_exponent_vecs(
            &v,
            4,
            [
                (vec![2, 1], rat(3, 2)),
                (vec![0, 0], int(1)),
                (vec![1, 0], int(-2)),
            ],
        );
        assert_eq!(s.to_string(), "1 - 2 * z + 3/2 * z^2 w + O(5)");
        assert_eq!(Series::zero(&v, 2).to_string(), "0 + O(3)");
    }

    #[test]
    fn too_many_variables() {
        let err = VarSet::total_degree(&["a", "b", "c", "d", "e"]).unwrap_err();
        assert!(matches!(err, Error::TooManyVariables { .. }));
    }

    #[test]
    fn embed_lifts_univariate() {
        let z = VarSet::total_degree(&["z"]).unwrap();
        let s = Series::from_exponent_vecs(&z, 5, [(vec![5], int(1))]);
        let lifted = s.embed(&zw()).unwrap();
        assert_eq!(lifted.coeff(&[5, 0]), int(1));
        assert_eq!(lifted.bound(), 5);
        let other = VarSet::new([("z", 1), ("w", 0)]).unwrap();
        assert!(s.embed(&other).is_ok());
        let regraded = VarSet::new([("z", 2)]).unwrap();
        assert!(s.embed(&regraded).is_err());
    }

    #[test]
    fn rename_keeps_terms() {
        let s = Series::var(&zw(), "z", 3).unwrap();
        let r = s.rename_vars(&[("z", "q")]).unwrap();
        assert_eq!(r.vars().names(), &["q".to_string(), "w".to_string()]);
        assert_eq!(r.coeff(&[1, 0]), int(1));
        assert!(s.rename_vars(&[("x", "q")]).is_err());
    }
}
