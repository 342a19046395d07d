//! Semirings generated by the powers r^k with k ranging over a numerical
//! monoid. Writing r = n/d in lowest terms, the shape of n and d decides
//! everything structural:
//!
//! * d = 1: the semiring is the naturals, single atom 1.
//! * n = 1 < d: no atoms at all.
//! * otherwise atomic, atoms exactly the powers r^{element(k)}.
//!
//! All moves between factorizations of one value are generated by the
//! identity n^g * r^{s} = d^g * r^{s'} for consecutive members s < s' with
//! gap g. `Up` at k trades atoms at k for atoms at k+1, `Down` is the
//! inverse. Saturating these moves in one direction yields the shortest or
//! longest factorization, and both have closed-form digit criteria, which is
//! what `is_extremal` checks and `member` reconstructs.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::factorization::Factorization;
use crate::numonoid::NumericalMonoid;
use crate::rational::{min_power_dividing, mod_inverse, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemiringClass {
    /// r is a natural number; the semiring is the naturals.
    Trivial,
    /// r = 1/d with d > 1; no atoms exist.
    NonAtomic,
    AtomicBelowOne,
    AtomicAboveOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremal {
    Min,
    Max,
}

#[derive(Clone, Debug)]
pub struct Semiring {
    r: Rational,
    monoid: NumericalMonoid,
    class: SemiringClass,
    n: BigUint,
    d: BigUint,
}

impl Semiring {
    pub fn new(r: Rational, monoid: NumericalMonoid) -> Result<Self, Error> {
        if r.is_zero() {
            return Err(Error::InvalidInput("r must be positive".into()));
        }
        let n = r.numer();
        let d = r.denom();
        let class = if d.is_one() {
            SemiringClass::Trivial
        } else if n.is_one() {
            SemiringClass::NonAtomic
        } else if n < d {
            SemiringClass::AtomicBelowOne
        } else {
            SemiringClass::AtomicAboveOne
        };
        Ok(Semiring { r, monoid, class, n, d })
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn monoid(&self) -> &NumericalMonoid {
        &self.monoid
    }

    pub fn class(&self) -> SemiringClass {
        self.class
    }

    pub fn numer(&self) -> &BigUint {
        &self.n
    }

    pub fn denom(&self) -> &BigUint {
        &self.d
    }

    pub fn is_atomic(&self) -> bool {
        !matches!(self.class, SemiringClass::NonAtomic)
    }

    pub(crate) fn npow(&self, exp: u64) -> BigUint {
        self.n.pow(u32::try_from(exp).expect("gap too large"))
    }

    pub(crate) fn dpow(&self, exp: u64) -> BigUint {
        self.d.pow(u32::try_from(exp).expect("gap too large"))
    }

    /// The (index+1)th smallest atom. For the Trivial class the single atom
    /// is 1 and higher indices are rejected.
    pub fn atom(&self, index: usize) -> Result<Rational, Error> {
        match self.class {
            SemiringClass::NonAtomic => Err(Error::NotAtomic),
            SemiringClass::Trivial => {
                if index == 0 {
                    Ok(Rational::one())
                } else {
                    Err(Error::InvalidInput(
                        "the Trivial class has a single atom at index 0".into(),
                    ))
                }
            }
            _ => Ok(self.r.pow(self.monoid.element(index))),
        }
    }

    /// Value of a formal sum: pi(z) = sum of coeff * r^{element(index)}.
    pub fn pi(&self, z: &Factorization) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in z.iter() {
            acc += &self.r.pow(self.monoid.element(i)).scale(c);
        }
        acc
    }

    /// One application of the trade at `index`. Up consumes n^g atoms at
    /// `index` for d^g atoms at `index + 1` where g is the gap between the
    /// corresponding members; Down is the exact inverse. Value is preserved.
    pub fn rewrite(
        &self,
        z: &Factorization,
        index: usize,
        dir: Direction,
    ) -> Result<Factorization, Error> {
        let g = self.monoid.gap(index);
        let np = self.npow(g);
        let dp = self.dpow(g);
        let mut out = z.clone();
        match dir {
            Direction::Up => {
                let have = z.coeff(index);
                if have < np {
                    return Err(Error::InsufficientCoefficient {
                        index,
                        needed: np,
                        available: have,
                    });
                }
                out.sub(index, np);
                out.add(index + 1, dp);
            }
            Direction::Down => {
                let have = z.coeff(index + 1);
                if have < dp {
                    return Err(Error::InsufficientCoefficient {
                        index: index + 1,
                        needed: dp,
                        available: have,
                    });
                }
                out.sub(index + 1, dp);
                out.add(index, np);
            }
        }
        Ok(out)
    }

    /// Digit criterion for being the shortest / longest factorization of its
    /// value. Exactly one factorization per value satisfies the Min
    /// criterion; the Max one can fail to exist when r < 1.
    pub fn is_extremal(&self, z: &Factorization, which: Extremal) -> Result<bool, Error> {
        match self.class {
            SemiringClass::NonAtomic => return Err(Error::NotAtomic),
            SemiringClass::Trivial => {
                // Only the single atom 1 exists, so a genuine factorization
                // has support {0} and is trivially both extremes.
                return Ok(z.max_index().map_or(true, |t| t == 0));
            }
            _ => {}
        }
        let below = matches!(self.class, SemiringClass::AtomicBelowOne);
        let ok = match (which, below) {
            // Shortest for r < 1, longest for r > 1: no Down move applies.
            (Extremal::Min, true) | (Extremal::Max, false) => z
                .iter()
                .filter(|(i, _)| *i >= 1)
                .all(|(i, c)| *c < self.dpow(self.monoid.gap(i - 1))),
            // Longest for r < 1, shortest for r > 1: no Up move applies.
            (Extremal::Max, true) | (Extremal::Min, false) => {
                z.iter().all(|(i, c)| *c < self.npow(self.monoid.gap(i)))
            }
        };
        Ok(ok)
    }

    /// The extremal factorization of pi(z), reached by saturating moves.
    /// Min always exists. Max exists unless r < 1 and the carry survives
    /// past every index, in which case None is returned.
    pub fn extremal(&self, z: &Factorization, which: Extremal) -> Result<Option<Factorization>, Error> {
        match self.class {
            SemiringClass::NonAtomic => return Err(Error::NotAtomic),
            SemiringClass::Trivial => {
                let v = self.pi(z).to_biguint().expect("integer value in the Trivial class");
                let mut out = Factorization::empty();
                out.add(0, v);
                return Ok(Some(out));
            }
            _ => {}
        }
        let below = matches!(self.class, SemiringClass::AtomicBelowOne);
        let out = match (which, below) {
            (Extremal::Min, true) | (Extremal::Max, false) => Some(self.down_sweep(z)),
            (Extremal::Min, false) => Some(self.up_sweep_terminating(z)),
            (Extremal::Max, true) => self.up_sweep_below_one(z),
        };
        Ok(out)
    }

    /// Saturate Down moves from the top. One descending pass suffices since
    /// a move at i only feeds index i - 1.
    fn down_sweep(&self, z: &Factorization) -> Factorization {
        let top = match z.max_index() {
            Some(t) => t,
            None => return Factorization::empty(),
        };
        let mut c = self.to_dense(z, top);
        for i in (1..=top).rev() {
            let g = self.monoid.gap(i - 1);
            let dp = self.dpow(g);
            let q = &c[i] / &dp;
            if !q.is_zero() {
                c[i] -= &q * &dp;
                c[i - 1] += q * self.npow(g);
            }
        }
        Self::from_dense(c)
    }

    /// Saturate Up moves for r > 1. Terminates because each surviving
    /// coefficient is bounded by the value divided by a growing atom.
    fn up_sweep_terminating(&self, z: &Factorization) -> Factorization {
        let mut top = match z.max_index() {
            Some(t) => t,
            None => return Factorization::empty(),
        };
        let mut c = self.to_dense(z, top);
        let mut i = 0;
        while i <= top {
            let g = self.monoid.gap(i);
            let np = self.npow(g);
            let q = &c[i] / &np;
            if !q.is_zero() {
                c[i] -= &q * &np;
                if i + 1 >= c.len() {
                    c.push(BigUint::zero());
                }
                c[i + 1] += q * self.dpow(g);
                top = top.max(i + 1);
            }
            i += 1;
        }
        Self::from_dense(c)
    }

    /// Saturate Up moves for r < 1. Past max(support, conductor index) the
    /// gaps are all 1, so a carry of at least n at the frontier feeds itself
    /// forever: no longest factorization exists and None is returned.
    fn up_sweep_below_one(&self, z: &Factorization) -> Option<Factorization> {
        let m = self.monoid.conductor_index();
        let hi = z.max_index().unwrap_or(0).max(m);
        let mut c = self.to_dense(z, hi + 1);
        for i in 0..=hi {
            let g = self.monoid.gap(i);
            let np = self.npow(g);
            let q = &c[i] / &np;
            if !q.is_zero() {
                c[i] -= &q * &np;
                c[i + 1] += q * self.dpow(g);
            }
        }
        if c[hi + 1] >= self.n {
            return None;
        }
        Some(Self::from_dense(c))
    }

    fn to_dense(&self, z: &Factorization, top: usize) -> Vec<BigUint> {
        let mut c = vec![BigUint::zero(); top + 1];
        for (i, coeff) in z.iter() {
            c[i] = coeff.clone();
        }
        c
    }

    fn from_dense(c: Vec<BigUint>) -> Factorization {
        Factorization::from_pairs(c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()))
    }

    /// Membership test; returns the shortest factorization on success.
    ///
    /// The digits of the shortest form are forced: working from the highest
    /// relevant index down (r < 1) or from index 0 up (r > 1), each
    /// coefficient is the unique residue making the remaining scaled value
    /// divisible by the next block size. Any misfit along the way proves
    /// non-membership. The window of indices that can appear is bounded by
    /// max(t, conductor) where t is the least exponent with
    /// denominator(x) dividing d^t.
    pub fn member(&self, x: &Rational) -> Result<Option<Factorization>, Error> {
        match self.class {
            SemiringClass::NonAtomic => Err(Error::NotAtomic),
            SemiringClass::Trivial => Ok(x.to_biguint().map(|v| {
                let mut z = Factorization::empty();
                z.add(0, v);
                z
            })),
            SemiringClass::AtomicBelowOne => Ok(self.member_below_one(x)),
            SemiringClass::AtomicAboveOne => Ok(self.member_above_one(x)),
        }
    }

    fn member_below_one(&self, x: &Rational) -> Option<Factorization> {
        if x.is_zero() {
            return Some(Factorization::empty());
        }
        let t = min_power_dividing(&x.denom(), &self.d)?;
        let e = t.max(self.monoid.conductor());
        let k = self.monoid.index_of(e).expect("window end is a member");
        // X = x * d^{element(k)}, an exact natural.
        let mut x_int = (x.numer() * self.dpow(e)) / x.denom();
        let mut z = Factorization::empty();
        for j in (1..=k).rev() {
            let g = self.monoid.gap(j - 1);
            let modulus = self.dpow(g);
            let weight = self.npow(self.monoid.element(j));
            let inv = mod_inverse(&(&weight % &modulus), &modulus);
            let c = (&x_int % &modulus) * inv % &modulus;
            let sub = &c * &weight;
            if sub > x_int {
                return None;
            }
            x_int = (x_int - sub) / modulus;
            z.add(j, c);
        }
        z.add(0, x_int);
        debug_assert_eq!(&self.pi(&z), x);
        Some(z)
    }

    fn member_above_one(&self, x: &Rational) -> Option<Factorization> {
        if x.is_zero() {
            return Some(Factorization::empty());
        }
        if x < &Rational::one() {
            return None;
        }
        // Largest index whose atom still fits under x.
        let mut top = 0usize;
        while self.r.pow(self.monoid.element(top + 1)) <= *x {
            top += 1;
        }
        let s_top = self.monoid.element(top);
        let scaled = x.numer() * self.dpow(s_top);
        if (&scaled % x.denom()) != BigUint::zero() {
            return None;
        }
        let mut x_int = scaled / x.denom();
        let mut z = Factorization::empty();
        for j in 0..top {
            let g = self.monoid.gap(j);
            let modulus = self.npow(g);
            let weight = self.dpow(s_top - self.monoid.element(j));
            let inv = mod_inverse(&(&weight % &modulus), &modulus);
            let c = (&x_int % &modulus) * inv % &modulus;
            let sub = &c * &weight;
            if sub > x_int {
                return None;
            }
            x_int = (x_int - sub) / modulus;
            z.add(j, c);
        }
        if x_int >= self.npow(self.monoid.gap(top)) {
            return None;
        }
        z.add(top, x_int);
        debug_assert_eq!(&self.pi(&z), x);
        Some(z)
    }

    /// Divisibility in the semiring: x | y holds when y - x is a member.
    pub fn divides(&self, x: &Rational, y: &Rational) -> Result<bool, Error> {
        match y.checked_sub(x) {
            None => Ok(false),
            Some(diff) => Ok(self.member(&diff)?.is_some()),
        }
    }
}

/// Element expressions: terms `c*r^e`, `r^e`, or a bare rational constant,
/// joined by `+`. Every exponent must be a member of the monoid. A plain
/// rational with no `r` is accepted as-is.
pub fn parse_element(sr: &Semiring, s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty element expression".into()));
    }
    if !s.contains('r') {
        return s.parse::<Rational>();
    }
    let mut total = Rational::zero();
    for term in s.split('+') {
        let term = term.trim();
        if !term.contains('r') {
            total += &term.parse::<Rational>()?;
            continue;
        }
        let (coeff, power) = match term.split_once('*') {
            Some((c, p)) => (c.trim().parse::<Rational>()?, p.trim()),
            None => (Rational::one(), term),
        };
        let exp_str = power
            .strip_prefix("r^")
            .or_else(|| (power == "r").then_some("1"))
            .ok_or_else(|| Error::Parse(format!("expected `r^e` in term `{term}`")))?;
        let e: u64 = exp_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent `{exp_str}`")))?;
        if !sr.monoid().contains(e) {
            return Err(Error::Parse(format!(
                "exponent {e} is not a member of the monoid"
            )));
        }
        total += &(sr.r().pow(e) * coeff);
    }
    Ok(total)
}
