use std::fmt;

/// Maximum number of variables in one series ring.
pub const MAX_VARS: usize = 4;

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;

/// Exponent vector of a monomial, packed four 16-bit fields into one word.
///
/// Variable 0 occupies the most significant field, so the derived ordering is
/// lexicographic in variable order. Monomial multiplication is a single addition.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponents(u64);

impl Exponents {
    pub const ZERO: Exponents = Exponents(0);

    fn shift(i: usize) -> u32 {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        FIELD_BITS * (MAX_VARS - 1 - i) as u32
    }

    pub fn from_slice(exps: &[u32]) -> Exponents {
        exps.iter()
            .enumerate()
            .fold(Exponents::ZERO, |e, (i, &k)| e.with(i, k))
    }

    pub fn get(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & FIELD_MASK) as u32
    }

    pub fn with(self, i: usize, k: u32) -> Exponents {
        assert!(u64::from(k) <= FIELD_MASK, "exponent {k} too large");
        let s = Self::shift(i);
        Exponents((self.0 & !(FIELD_MASK << s)) | (u64::from(k) << s))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Monomial product. Callers keep exponents far below the field width.
    pub fn times(self, other: Exponents) -> Exponents {
        Exponents(self.0 + other.0)
    }

    /// Monomial quotient, `None` when `other` does not divide `self`.
    pub fn checked_sub(self, other: Exponents) -> Option<Exponents> {
        let mut out = Exponents::ZERO;
        for i in 0..MAX_VARS {
            out = out.with(i, self.get(i).checked_sub(other.get(i))?);
        }
        Some(out)
    }

    pub fn to_vec(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec(MAX_VARS))
    }
}
