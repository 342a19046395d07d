//! Length sets and the arithmetic structure on top of them.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::enumerate::Caps;
use crate::error::Error;
use crate::rational::Rational;
use crate::semiring::{Extremal, Semiring, SemiringClass};

/// The lengths of the factorizations found for one element, with flags
/// describing how much of the true length set this is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSet {
    pub lengths: BTreeSet<BigUint>,
    pub member: bool,
    pub complete: bool,
    /// When not complete: lengths up to this bound are exactly the true
    /// ones. Every factorization of length l sits within the index cap once
    /// l - |shortest| <= exp_cap - top(shortest), since each lengthening
    /// move raises the top index by at most one.
    pub exact_below: Option<BigUint>,
    pub exp_cap: usize,
    pub len_cap: Option<u64>,
}

pub fn length_set(sr: &Semiring, x: &Rational, caps: &Caps) -> Result<LengthSet, Error> {
    if sr.class() == SemiringClass::Trivial {
        let v = x.to_biguint();
        return Ok(LengthSet {
            lengths: v.iter().cloned().collect(),
            member: v.is_some(),
            complete: true,
            exact_below: None,
            exp_cap: caps.exp_cap,
            len_cap: caps.len_cap,
        });
    }
    let seed = sr.member(x)?;
    let set = sr.factorizations(x, caps)?;
    let exact_below = if set.complete {
        None
    } else {
        match &seed {
            Some(z)
                if sr.class() == SemiringClass::AtomicBelowOne
                    && !set.cap_too_small
                    && !set.budget_exhausted =>
            {
                let top = z.max_index().unwrap_or(0);
                let by_exp = z.length() + BigUint::from((caps.exp_cap - top) as u64);
                Some(match caps.len_cap {
                    Some(l) => by_exp.min(BigUint::from(l)),
                    None => by_exp,
                })
            }
            _ => Some(BigUint::zero()),
        }
    };
    Ok(LengthSet {
        lengths: set.lengths(),
        member: seed.is_some(),
        complete: set.complete,
        exact_below,
        exp_cap: caps.exp_cap,
        len_cap: caps.len_cap,
    })
}

/// Successive gaps of a sorted length set.
pub fn delta_element(lengths: &BTreeSet<BigUint>) -> BTreeSet<BigUint> {
    let v: Vec<&BigUint> = lengths.iter().collect();
    v.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Gaps certain to be gaps of the true length set: both endpoints lie in
/// the region the caps could not have truncated.
pub fn proven_gaps(ls: &LengthSet) -> BTreeSet<BigUint> {
    let v: Vec<&BigUint> = ls.lengths.iter().collect();
    let mut out = BTreeSet::new();
    for w in v.windows(2) {
        let proven = ls.complete || ls.exact_below.as_ref().is_some_and(|b| w[1] <= b);
        if proven {
            out.insert(w[1] - w[0]);
        }
    }
    out
}

/// Decomposition of a set into head + arithmetic core + tail. The core is a
/// maximal run with step d; head and tail are the leftovers and the bound
/// is how far they stray from the core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AapStructure {
    pub y: BigUint,
    pub d: u64,
    /// Number of members in the core, at least 1.
    pub core_len: usize,
    /// Members below y.
    pub head: BTreeSet<BigUint>,
    /// Members above the last core member.
    pub tail: BTreeSet<BigUint>,
    /// max(y - min, max - top of core); 0 for a pure progression.
    pub bound: BigUint,
}

impl AapStructure {
    pub fn core(&self) -> BTreeSet<BigUint> {
        (0..self.core_len)
            .map(|i| &self.y + BigUint::from(i as u64) * BigUint::from(self.d))
            .collect()
    }

    pub fn reassemble(&self) -> BTreeSet<BigUint> {
        let mut out = self.core();
        out.extend(self.head.iter().cloned());
        out.extend(self.tail.iter().cloned());
        out
    }
}

/// Split `lengths` around the run minimizing the bound; ties prefer the
/// longest core, then the smallest offset y.
pub fn aap_decompose(lengths: &BTreeSet<BigUint>, d: u64) -> Result<AapStructure, Error> {
    if d == 0 {
        return Err(Error::InvalidInput("difference must be positive".into()));
    }
    let v: Vec<BigUint> = lengths.iter().cloned().collect();
    if v.is_empty() {
        return Err(Error::InvalidInput("empty length set".into()));
    }
    let dd = BigUint::from(d);
    for w in v.windows(2) {
        if ((&w[1] - &w[0]) % &dd) != BigUint::zero() {
            return Err(Error::MixedResidues { modulus: d });
        }
    }
    // Maximal runs with consecutive difference exactly d.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start = 0usize;
    for i in 1..=v.len() {
        if i == v.len() || (&v[i] - &v[i - 1]) != dd {
            runs.push((start, i - 1));
            start = i;
        }
    }
    let last = v.len() - 1;
    let mut best: Option<(BigUint, usize, usize)> = None; // (bound, run_len, run_idx)
    for (ri, &(a, b)) in runs.iter().enumerate() {
        let bound = (&v[a] - &v[0]).max(&v[last] - &v[b]);
        let run_len = b - a + 1;
        let better = match &best {
            None => true,
            Some((bb, bl, _)) => bound < *bb || (bound == *bb && run_len > *bl),
        };
        if better {
            best = Some((bound, run_len, ri));
        }
    }
    let (bound, core_len, ri) = best.expect("at least one run");
    let (a, b) = runs[ri];
    Ok(AapStructure {
        y: v[a].clone(),
        d,
        core_len,
        head: v[..a].iter().cloned().collect(),
        tail: v[b + 1..].iter().cloned().collect(),
        bound,
    })
}

/// Observed window of U_k: the union of length sets over all sums of k
/// atoms with indices up to the cap. Every collected length genuinely lies
/// in U_k; `complete` says whether each contributing length set was whole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionWindow {
    pub k: u64,
    pub lengths: BTreeSet<BigUint>,
    pub complete: bool,
    /// When not complete: lengths up to the smallest contributing exactness
    /// bound are exactly the window's true lengths.
    pub exact_below: Option<BigUint>,
    pub claimed_difference: BigUint,
    pub atom_index_cap: usize,
}

pub fn union_k(
    sr: &Semiring,
    k: u64,
    atom_index_cap: usize,
    caps: &Caps,
) -> Result<UnionWindow, Error> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let n = sr.numer().clone();
    let d = sr.denom().clone();
    let claimed = if n >= d { &n - &d } else { &d - &n };
    match sr.class() {
        SemiringClass::NonAtomic => Err(Error::NotAtomic),
        SemiringClass::Trivial => Ok(UnionWindow {
            k,
            lengths: [BigUint::from(k)].into_iter().collect(),
            complete: true,
            exact_below: None,
            claimed_difference: claimed,
            atom_index_cap,
        }),
        _ => {
            let mut values: BTreeSet<Rational> = BTreeSet::new();
            collect_sums(sr, 0, atom_index_cap, k, Rational::zero(), &mut values);
            let mut lengths = BTreeSet::new();
            let mut complete = true;
            let mut exact_below: Option<BigUint> = None;
            for x in &values {
                let ls = length_set(sr, x, caps)?;
                complete &= ls.complete;
                if !ls.complete {
                    let b = ls.exact_below.clone().unwrap_or_default();
                    exact_below = Some(match exact_below {
                        Some(prev) => prev.min(b),
                        None => b,
                    });
                }
                lengths.extend(ls.lengths);
            }
            Ok(UnionWindow {
                k,
                lengths,
                complete,
                exact_below,
                claimed_difference: claimed,
                atom_index_cap,
            })
        }
    }
}

fn collect_sums(
    sr: &Semiring,
    start: usize,
    cap: usize,
    left: u64,
    acc: Rational,
    values: &mut BTreeSet<Rational>,
) {
    if left == 0 {
        values.insert(acc);
        return;
    }
    for idx in start..=cap {
        let next = acc.clone() + &sr.r().pow(sr.monoid().element(idx));
        collect_sums(sr, idx, cap, left - 1, next, values);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elasticity {
    Finite(Rational),
    Unbounded,
}

/// Without an element: the semiring-level closed form. With one: the exact
/// ratio of longest to shortest factorization length, using the extremal
/// forms directly; Unbounded exactly when no longest factorization exists.
pub fn elasticity(sr: &Semiring, x: Option<&Rational>) -> Result<Elasticity, Error> {
    match sr.class() {
        SemiringClass::NonAtomic => Err(Error::NotAtomic),
        SemiringClass::Trivial => match x {
            Some(v) if v.to_biguint().is_none() => {
                Err(Error::InvalidInput("element is not a member".into()))
            }
            _ => Ok(Elasticity::Finite(Rational::one())),
        },
        _ => match x {
            None => Ok(Elasticity::Unbounded),
            Some(v) => {
                if v.is_zero() {
                    return Ok(Elasticity::Finite(Rational::one()));
                }
                let zmin = sr
                    .member(v)?
                    .ok_or_else(|| Error::InvalidInput("element is not a member".into()))?;
                match sr.extremal(&zmin, Extremal::Max)? {
                    None => Ok(Elasticity::Unbounded),
                    Some(zmax) => Ok(Elasticity::Finite(
                        Rational::from_biguints(zmax.length(), zmin.length())
                            .expect("shortest length is nonzero"),
                    )),
                }
            }
        },
    }
}
