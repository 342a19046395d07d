//! Factorizations as sparse multisets of atom indices. The map is keyed by
//! atom index with strictly positive multiplicities, so equal multisets
//! compare equal and the derived order is the canonical one used everywhere
//! results are listed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Factorization {
    coeffs: BTreeMap<usize, BigUint>,
}

impl Factorization {
    pub fn empty() -> Self {
        Factorization::default()
    }

    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigUint>,
    {
        let mut f = Factorization::empty();
        for (idx, c) in pairs {
            f.add(idx, c.into());
        }
        f
    }

    pub fn coeff(&self, index: usize) -> BigUint {
        self.coeffs.get(&index).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn add(&mut self, index: usize, amount: BigUint) {
        if amount.is_zero() {
            return;
        }
        *self.coeffs.entry(index).or_insert_with(BigUint::zero) += amount;
    }

    /// Panics if the coefficient would go negative; callers check first.
    pub fn sub(&mut self, index: usize, amount: BigUint) {
        if amount.is_zero() {
            return;
        }
        let c = self.coeffs.get_mut(&index).expect("coefficient underflow");
        assert!(*c >= amount, "coefficient underflow");
        *c -= amount;
        if c.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total number of atoms counted with multiplicity.
    pub fn length(&self) -> BigUint {
        self.coeffs.values().sum()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_index(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    /// Index-wise minimum; the shared part of two factorizations.
    pub fn common(&self, other: &Factorization) -> Factorization {
        let mut out = Factorization::empty();
        for (i, c) in self.iter() {
            let d = other.coeff(i);
            let m = c.clone().min(d);
            out.add(i, m);
        }
        out
    }

    /// Distance used by the catenary degree: max of the two lengths after
    /// removing the shared part.
    pub fn distance(&self, other: &Factorization) -> BigUint {
        let shared = self.common(other).length();
        let a = self.length() - &shared;
        let b = other.length() - &shared;
        a.max(b)
    }

    pub fn supports_intersect(&self, other: &Factorization) -> bool {
        // Walk the shorter map.
        let (small, large) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.support().any(|i| large.coeffs.contains_key(&i))
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, c)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{c}")?;
        }
        write!(f, "}}")
    }
}

/// Enumeration result: the factorizations found plus flags describing how
/// trustworthy the listing is. `complete` means the list is all of Z(x);
/// partial results always say so instead of truncating silently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationSet {
    pub items: Vec<Factorization>,
    pub complete: bool,
    /// Largest atom index the search was allowed to touch.
    pub exp_cap: usize,
    pub len_cap: Option<u64>,
    /// The seed factorization itself violated the caps; items is empty.
    pub cap_too_small: bool,
    /// The node budget ran out before the caps did.
    pub budget_exhausted: bool,
}

impl FactorizationSet {
    pub fn lengths(&self) -> std::collections::BTreeSet<BigUint> {
        self.items.iter().map(|z| z.length()).collect()
    }
}
