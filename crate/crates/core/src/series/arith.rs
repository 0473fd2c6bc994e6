use std::collections::{BTreeMap, HashMap};
use std::hash::{BuildHasherDefault, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{int, Coefficient, Exponents, Series, VarSet};
use crate::error::{Error, Result};

/// Multiplicative hash for packed exponent words; SipHash dominates product time otherwise.
#[derive(Default)]
pub(crate) struct MonoHasher(u64);

impl Hasher for MonoHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.write_u64(u64::from(*b));
        }
    }

    fn write_u64(&mut self, x: u64) {
        self.0 = (self.0.rotate_left(5) ^ x).wrapping_mul(0x517c_c1b7_2722_0a95);
    }
}

pub(crate) type MonoMap<V> = HashMap<Exponents, V, BuildHasherDefault<MonoHasher>>;

/// Terms of degree `<= bound` rescaled to integers over a common denominator.
struct Scaled {
    den: BigInt,
    terms: Vec<(Exponents, u32, BigInt)>,
}

impl Scaled {
    fn new(vars: &VarSet, terms: &BTreeMap<Exponents, Coefficient>, bound: u32) -> Scaled {
        let kept: Vec<(Exponents, u32, &Coefficient)> = terms
            .iter()
            .map(|(e, c)| (*e, vars.degree(*e), c))
            .filter(|(_, d, _)| *d <= bound)
            .collect();
        let den = kept
            .iter()
            .fold(BigInt::one(), |acc, (_, _, c)| acc.lcm(c.denom()));
        let terms = kept
            .into_iter()
            .map(|(e, d, c)| (e, d, c.numer() * (&den / c.denom())))
            .collect();
        Scaled { den, terms }
    }

    fn max_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, _, c)| c.bits())
            .max()
            .unwrap_or(0)
    }
}

/// Product of two term maps, keeping only monomials of weighted degree `<= bound`.
pub(crate) fn product_terms(
    vars: &VarSet,
    a: &BTreeMap<Exponents, Coefficient>,
    b: &BTreeMap<Exponents, Coefficient>,
    bound: u32,
) -> BTreeMap<Exponents, Coefficient> {
    let sa = Scaled::new(vars, a, bound);
    let sb = Scaled::new(vars, b, bound);
    if sa.terms.is_empty() || sb.terms.is_empty() {
        return BTreeMap::new();
    }
    let den = &sa.den * &sb.den;
    let pairs = sa.terms.len().min(sb.terms.len()) as u64;
    let bits = sa.max_bits() + sb.max_bits() + u64::from(64 - pairs.leading_zeros()) + 1;

    let mut buckets: Vec<Vec<(Exponents, &BigInt)>> = vec![Vec::new(); bound as usize + 1];
    for (e, d, c) in &sb.terms {
        buckets[*d as usize].push((*e, c));
    }

    let finish = |e: Exponents, s: BigInt| {
        let c = if den.is_one() {
            Coefficient::from_integer(s)
        } else {
            Coefficient::new(s, den.clone())
        };
        (e, c)
    };

    if bits < 127 {
        let small: Vec<Vec<(Exponents, i128)>> = buckets
            .iter()
            .map(|bk| {
                bk.iter()
                    .map(|(e, c)| (*e, c.to_i128().expect("fits by bit count")))
                    .collect()
            })
            .collect();
        let mut acc: MonoMap<i128> = MonoMap::default();
        for (ea, da, ca) in &sa.terms {
            let ca = ca.to_i128().expect("fits by bit count");
            for bucket in &small[..=(bound - da) as usize] {
                for (eb, cb) in bucket {
                    *acc.entry(ea.times(*eb)).or_insert(0) += ca * cb;
                }
            }
        }
        acc.into_iter()
            .filter(|(_, s)| *s != 0)
            .map(|(e, s)| finish(e, BigInt::from(s)))
            .collect()
    } else {
        let mut acc: MonoMap<BigInt> = MonoMap::default();
        for (ea, da, ca) in &sa.terms {
            for bucket in &buckets[..=(bound - da) as usize] {
                for (eb, cb) in bucket {
                    *acc.entry(ea.times(*eb)).or_insert_with(BigInt::zero) += ca * *cb;
                }
            }
        }
        acc.into_iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(e, s)| finish(e, s))
            .collect()
    }
}

impl Series {
    fn combine(&self, other: &Series, sign: i32) -> Result<Series> {
        self.check_compatible(other)?;
        let bound = self.bound.min(other.bound);
        let mut out = self.truncate_to(bound).terms;
        for (e, c) in &other.terms {
            if self.vars.degree(*e) > bound {
                continue;
            }
            let slot = out.entry(*e).or_insert_with(Coefficient::zero);
            if sign > 0 {
                *slot += c;
            } else {
                *slot -= c;
            }
            if slot.is_zero() {
                out.remove(e);
            }
        }
        Ok(Series::from_map(&self.vars, bound, out))
    }

    pub fn checked_add(&self, other: &Series) -> Result<Series> {
        self.combine(other, 1)
    }

    pub fn checked_sub(&self, other: &Series) -> Result<Series> {
        self.combine(other, -1)
    }

    /// Product; the result is known to `min` of the operand bounds.
    pub fn checked_mul(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        Ok(self.mul_at(other, self.bound.min(other.bound)))
    }

    /// Product whose bound also uses the operands' orders: with `a = O(x^oa)` known
    /// to `ba` and `b` likewise, `ab` is known to `min(ba + ob, bb + oa)`.
    pub fn mul_with_orders(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let reach = |s: &Series| s.order().unwrap_or(s.bound + 1);
        let bound = (self.bound + reach(other)).min(other.bound + reach(self));
        Ok(self.mul_at(other, bound))
    }

    /// Raw product truncated at `bound`, ignoring the operands' own bounds.
    pub(crate) fn mul_at(&self, other: &Series, bound: u32) -> Series {
        Series::from_map(
            &self.vars,
            bound,
            product_terms(&self.vars, &self.terms, &other.terms, bound),
        )
    }

    pub fn scale(&self, c: &Coefficient) -> Series {
        if c.is_zero() {
            return Series::zero(&self.vars, self.bound);
        }
        let terms = self.terms.iter().map(|(e, a)| (*e, a * c)).collect();
        Series::from_map(&self.vars, self.bound, terms)
    }

    pub fn add_constant(&self, c: &Coefficient) -> Series {
        let mut terms = self.terms.clone();
        let slot = terms
            .entry(Exponents::ZERO)
            .or_insert_with(Coefficient::zero);
        *slot += c;
        if slot.is_zero() {
            terms.remove(&Exponents::ZERO);
        }
        Series::from_map(&self.vars, self.bound, terms)
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut result = Series::one(&self.vars, self.bound);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiply by `var^k`; the bound grows by `k * weight(var)`.
    pub fn mul_monomial(&self, var: &str, k: u32) -> Result<Series> {
        let i = self.vars.index_of(var)?;
        let shift = Exponents::ZERO.with(i, k);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.times(shift), c.clone()))
            .collect();
        Ok(Series::from_map(
            &self.vars,
            self.bound + k * self.vars.weight(i),
            terms,
        ))
    }

    /// Divide by `var^k` when every term is divisible; the bound drops by `k * weight(var)`.
    pub fn div_exact_monomial(&self, var: &str, k: u32) -> Result<Series> {
        let i = self.vars.index_of(var)?;
        let loss = k * self.vars.weight(i);
        if loss > self.bound {
            return Err(Error::PrecisionExhausted {
                needed: loss,
                available: self.bound,
            });
        }
        let shift = Exponents::ZERO.with(i, k);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let q = e.checked_sub(shift).ok_or_else(|| Error::InexactDivision {
                divisor: self.vars.format_monomial(shift),
                monomial: self.vars.format_monomial(*e),
            })?;
            terms.insert(q, c.clone());
        }
        Ok(Series::from_map(&self.vars, self.bound - loss, terms))
    }

    /// Multiplicative inverse. The weighted-degree-zero part must be a nonzero constant.
    pub fn reciprocal(&self) -> Result<Series> {
        let mut c0 = None;
        for (e, c) in &self.terms {
            if self.vars.degree(*e) == 0 {
                if !e.is_zero() {
                    return Err(Error::NonUnitDivisor);
                }
                c0 = Some(c.clone());
            }
        }
        let c0 = c0.ok_or(Error::NonUnitDivisor)?;
        let mut r = Series::constant(&self.vars, c0.recip(), 0);
        let mut prec = 0;
        while prec < self.bound {
            prec = (2 * prec + 1).min(self.bound);
            let correction = (-self.mul_at(&r, prec)).add_constant(&int(2));
            r = r.mul_at(&correction, prec);
        }
        Ok(r)
    }

    /// `self / divisor` for a divisor with invertible constant term.
    pub fn div_unit(&self, divisor: &Series) -> Result<Series> {
        self.check_compatible(divisor)?;
        let bound = self.bound.min(divisor.bound);
        Ok(self.mul_at(&divisor.truncate_to(bound).reciprocal()?, bound))
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        Series::from_map(&self.vars, self.bound, terms)
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

macro_rules! series_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                self.$checked(rhs)
                    .expect("series operands over different variable sets")
            }
        }
        impl $trait<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                (&self).$method(rhs)
            }
        }
        impl $trait<Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                self.$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, checked_add);
series_binop!(Sub, sub, checked_sub);
series_binop!(Mul, mul, checked_mul);

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<i64> for &Series {
            type Output = Series;
            fn $method(self, rhs: i64) -> Series {
                let f: fn(&Series, i64) -> Series = $body;
                f(self, rhs)
            }
        }
        impl $trait<i64> for Series {
            type Output = Series;
            fn $method(self, rhs: i64) -> Series {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |s, k| s.add_constant(&int(k)));
scalar_binop!(Sub, sub, |s, k| s.add_constant(&int(-k)));
scalar_binop!(Mul, mul, |s, k| s.scale(&int(k)));
