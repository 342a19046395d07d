//! Semiring-level delta sets, reported as proven members plus enclosing
//! bounds rather than a single truncated guess.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::enumerate::Caps;
use crate::error::Error;
use crate::invariants::lengths::{length_set, proven_gaps};
use crate::rational::Rational;
use crate::semiring::{Semiring, SemiringClass};

/// One sampled element with the gaps of its length set that survive the
/// truncation analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaWitness {
    pub value: Rational,
    pub lengths: BTreeSet<BigUint>,
    pub gaps: BTreeSet<BigUint>,
    pub complete: bool,
}

/// Every member of `proven` is certainly a delta value of the semiring.
/// Every delta value of the semiring lies in [interval_min, interval_max],
/// and lower_family lists the values |n^gap_k - d^gap_k| which always
/// occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub proven: BTreeSet<BigUint>,
    pub lower_family: BTreeSet<BigUint>,
    pub interval_min: BigUint,
    pub interval_max: BigUint,
    pub witnesses: Vec<DeltaWitness>,
}

fn abs_diff(a: BigUint, b: BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Sample length sets of the canonical witnesses (n r^conductor and the
/// non-unique elements n^gap_k r^{s_k} for k up to `index_cap`) and report
/// whatever gaps the caps let us certify.
pub fn delta_semiring(sr: &Semiring, index_cap: usize, caps: &Caps) -> Result<DeltaReport, Error> {
    match sr.class() {
        SemiringClass::NonAtomic => Err(Error::NotAtomic),
        SemiringClass::Trivial => Ok(DeltaReport {
            proven: BTreeSet::new(),
            lower_family: BTreeSet::new(),
            interval_min: BigUint::from(0u32),
            interval_max: BigUint::from(0u32),
            witnesses: Vec::new(),
        }),
        _ => {
            let mut lower_family = BTreeSet::new();
            for k in 0..=index_cap {
                let g = sr.monoid().gap(k);
                lower_family.insert(abs_diff(sr.npow(g), sr.dpow(g)));
            }
            let interval_min = abs_diff(sr.numer().clone(), sr.denom().clone());
            let g0 = sr.monoid().gap(0);
            let interval_max = abs_diff(sr.npow(g0), sr.dpow(g0));

            let mut values = vec![sr.r().pow(sr.monoid().conductor()).scale(sr.numer())];
            for k in 0..=index_cap {
                let g = sr.monoid().gap(k);
                values.push(sr.r().pow(sr.monoid().element(k)).scale(&sr.npow(g)));
            }
            let mut seen = BTreeSet::new();
            let mut proven = BTreeSet::new();
            let mut witnesses = Vec::new();
            for v in values {
                if !seen.insert(v.clone()) {
                    continue;
                }
                let ls = length_set(sr, &v, caps)?;
                let gaps = proven_gaps(&ls);
                proven.extend(gaps.iter().cloned());
                witnesses.push(DeltaWitness {
                    value: v,
                    lengths: ls.lengths,
                    gaps,
                    complete: ls.complete,
                });
            }
            Ok(DeltaReport { proven, lower_family, interval_min, interval_max, witnesses })
        }
    }
}
