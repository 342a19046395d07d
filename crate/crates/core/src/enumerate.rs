//! Enumeration of factorization sets.
//!
//! For r > 1 the atom values grow, so Z(x) is finite and a depth-first
//! search over the value-admissible atom window is exhaustive. For r < 1
//! the set is usually infinite; instead the rewrite closure of the shortest
//! factorization is explored breadth-first inside the caps. Any
//! factorization within the caps is reachable from the seed through
//! intermediate states that also respect the caps (moves toward the seed
//! only shrink length and top index), so the truncation is exactly
//! { z in Z(x) : top(z) <= exp_cap, |z| <= len_cap } and `complete` records
//! whether any move ever left that box.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Error;
use crate::factorization::{Factorization, FactorizationSet};
use crate::rational::Rational;
use crate::semiring::{Semiring, SemiringClass};

/// Search limits shared by every enumeration-backed computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest atom index a search may touch.
    pub exp_cap: usize,
    /// Largest factorization length kept; None lifts the limit.
    pub len_cap: Option<u64>,
    /// Node budget; exceeding it flags the result partial.
    pub budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            exp_cap: 64,
            len_cap: Some(512),
            budget: 10_000_000,
        }
    }
}

impl Semiring {
    /// All factorizations of x within the caps. See the module notes for
    /// which classes give complete answers.
    pub fn factorizations(&self, x: &Rational, caps: &Caps) -> Result<FactorizationSet, Error> {
        match self.class() {
            SemiringClass::NonAtomic => Err(Error::NotAtomic),
            SemiringClass::Trivial => {
                let items = match x.to_biguint() {
                    Some(v) => {
                        let mut z = Factorization::empty();
                        z.add(0, v);
                        vec![z]
                    }
                    None => Vec::new(),
                };
                Ok(FactorizationSet {
                    items,
                    complete: true,
                    exp_cap: caps.exp_cap,
                    len_cap: caps.len_cap,
                    cap_too_small: false,
                    budget_exhausted: false,
                })
            }
            SemiringClass::AtomicBelowOne => Ok(self.closure_below_one(x, caps)),
            SemiringClass::AtomicAboveOne => Ok(self.exhaustive_above_one(x, caps)),
        }
    }

    fn closure_below_one(&self, x: &Rational, caps: &Caps) -> FactorizationSet {
        let empty = |complete: bool, cap_too_small: bool| FactorizationSet {
            items: Vec::new(),
            complete,
            exp_cap: caps.exp_cap,
            len_cap: caps.len_cap,
            cap_too_small,
            budget_exhausted: false,
        };
        let seed = match self.member(x).expect("class checked") {
            Some(z) => z,
            None => return empty(true, false),
        };
        let len_cap = caps.len_cap.map(BigUint::from);
        let seed_len = seed.length();
        if seed.max_index().map_or(false, |t| t > caps.exp_cap)
            || len_cap.as_ref().is_some_and(|l| &seed_len > l)
        {
            return empty(false, true);
        }
        let mut visited: BTreeSet<Factorization> = BTreeSet::new();
        visited.insert(seed.clone());
        let mut queue: VecDeque<(Factorization, BigUint)> = VecDeque::new();
        queue.push_back((seed, seed_len));
        let mut blocked = false;
        let mut budget_exhausted = false;
        let mut nodes: u64 = 0;
        while let Some((z, z_len)) = queue.pop_front() {
            nodes += 1;
            if nodes > caps.budget {
                budget_exhausted = true;
                break;
            }
            let support: Vec<usize> = z.support().collect();
            for &i in &support {
                // Up at i: trade n^g atoms here for d^g atoms one index up.
                let g = self.monoid().gap(i);
                let np = self.npow(g);
                if z.coeff(i) >= np {
                    let dp = self.dpow(g);
                    let new_len = &z_len + &dp - &np;
                    if i + 1 > caps.exp_cap || len_cap.as_ref().is_some_and(|l| &new_len > l) {
                        blocked = true;
                    } else {
                        let mut w = z.clone();
                        w.sub(i, np);
                        w.add(i + 1, dp);
                        if visited.insert(w.clone()) {
                            queue.push_back((w, new_len));
                        }
                    }
                }
                // Down at i-1: the inverse trade, always inside the caps.
                if i >= 1 {
                    let g = self.monoid().gap(i - 1);
                    let dp = self.dpow(g);
                    if z.coeff(i) >= dp {
                        let np = self.npow(g);
                        let new_len = &z_len - &dp + &np;
                        let mut w = z.clone();
                        w.sub(i, dp);
                        w.add(i - 1, np);
                        if visited.insert(w.clone()) {
                            queue.push_back((w, new_len));
                        }
                    }
                }
            }
        }
        FactorizationSet {
            items: visited.into_iter().collect(),
            complete: !blocked && !budget_exhausted,
            exp_cap: caps.exp_cap,
            len_cap: caps.len_cap,
            cap_too_small: false,
            budget_exhausted,
        }
    }

    fn exhaustive_above_one(&self, x: &Rational, caps: &Caps) -> FactorizationSet {
        let mut out = FactorizationSet {
            items: Vec::new(),
            complete: true,
            exp_cap: caps.exp_cap,
            len_cap: caps.len_cap,
            cap_too_small: false,
            budget_exhausted: false,
        };
        if x.is_zero() {
            out.items.push(Factorization::empty());
            return out;
        }
        if x < &Rational::one() {
            // Every nonzero member is at least 1.
            return out;
        }
        // Any factorization of x only uses atoms of value <= x.
        let mut t_max = 0usize;
        while self.r().pow(self.monoid().element(t_max + 1)) <= *x {
            t_max += 1;
        }
        let top = t_max.min(caps.exp_cap);
        if t_max > caps.exp_cap {
            out.complete = false;
        }
        let s_top = self.monoid().element(top);
        let scaled = x.numer() * self.dpow(s_top);
        if (&scaled % x.denom()) != BigUint::zero() {
            // No representation over this window clears the denominator.
            return out;
        }
        let target = scaled / x.denom();
        let weights: Vec<BigUint> = (0..=top)
            .map(|i| self.npow(self.monoid().element(i)) * self.dpow(s_top - self.monoid().element(i)))
            .collect();
        let len_cap = caps.len_cap.map(BigUint::from);
        let mut stack = Factorization::empty();
        let mut nodes: u64 = 0;
        self.dfs_above_one(
            top,
            target,
            BigUint::zero(),
            &weights,
            &len_cap,
            caps.budget,
            &mut stack,
            &mut nodes,
            &mut out,
        );
        out.items.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_above_one(
        &self,
        idx: usize,
        remaining: BigUint,
        used_len: BigUint,
        weights: &[BigUint],
        len_cap: &Option<BigUint>,
        budget: u64,
        stack: &mut Factorization,
        nodes: &mut u64,
        out: &mut FactorizationSet,
    ) {
        if out.budget_exhausted {
            return;
        }
        *nodes += 1;
        if *nodes > budget {
            out.budget_exhausted = true;
            out.complete = false;
            return;
        }
        let w = &weights[idx];
        if idx == 0 {
            // Weight here is d^{s_top}; the leftover must split evenly.
            if (&remaining % w) != BigUint::zero() {
                return;
            }
            let c = remaining / w;
            if len_cap.as_ref().is_some_and(|l| &(&used_len + &c) > l) {
                out.complete = false;
                return;
            }
            let mut z = stack.clone();
            z.add(0, c);
            out.items.push(z);
            return;
        }
        let max_c = &remaining / w;
        let mut c = BigUint::zero();
        while c <= max_c {
            if len_cap.as_ref().is_some_and(|l| &(&used_len + &c) > l) {
                out.complete = false;
                break;
            }
            stack.add(idx, c.clone());
            self.dfs_above_one(
                idx - 1,
                &remaining - &c * w,
                &used_len + &c,
                weights,
                len_cap,
                budget,
                stack,
                nodes,
                out,
            );
            stack.sub(idx, c.clone());
            if out.budget_exhausted {
                return;
            }
            c += 1u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sr(r: &str, nm: &str) -> Semiring {
        Semiring::new(r.parse().unwrap(), nm.parse().unwrap()).unwrap()
    }

    fn z(pairs: &[(usize, u64)]) -> Factorization {
        Factorization::from_pairs(pairs.iter().copied())
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn above_one_complete_pair() {
        let s = sr("5/2", "gens:1");
        let set = s.factorizations(&q("5"), &Caps::default()).unwrap();
        assert_eq!(set.items, vec![z(&[(0, 5)]), z(&[(1, 2)])]);
        assert!(set.complete);
        assert!(!set.budget_exhausted);
    }

    #[test]
    fn below_one_truncated_closure() {
        let s = sr("2/3", "gens:1");
        let caps = Caps { exp_cap: 3, ..Caps::default() };
        let set = s.factorizations(&q("2"), &caps).unwrap();
        assert_eq!(
            set.items,
            vec![
                z(&[(0, 2)]),
                z(&[(1, 1), (2, 1), (3, 3)]),
                z(&[(1, 1), (2, 3)]),
                z(&[(1, 3)]),
            ]
        );
        assert!(!set.complete);
        assert!(!set.cap_too_small);
    }

    #[test]
    fn zero_and_nonmember() {
        let s = sr("2/3", "gens:1");
        let set = s.factorizations(&q("0"), &Caps::default()).unwrap();
        assert_eq!(set.items, vec![Factorization::empty()]);
        assert!(set.complete);

        let set = s.factorizations(&q("1/3"), &Caps::default()).unwrap();
        assert!(set.items.is_empty());
        assert!(set.complete);

        let t = sr("5/2", "gens:1");
        let set = t.factorizations(&q("3/2"), &Caps::default()).unwrap();
        assert!(set.items.is_empty());
        assert!(set.complete);
    }

    #[test]
    fn trivial_class_single_item() {
        let s = sr("4", "gens:1");
        let set = s.factorizations(&q("7"), &Caps::default()).unwrap();
        assert_eq!(set.items, vec![z(&[(0, 7)])]);
        assert!(set.complete);
        assert!(s.factorizations(&q("7/2"), &Caps::default()).unwrap().items.is_empty());
    }

    #[test]
    fn worked_example_closure() {
        let s = sr("2/3", "elems:0,18,19,25,27;cond:36");
        let x = s.pi(&z(&[(1, 2), (3, 4)]));
        let caps = Caps { exp_cap: 40, len_cap: Some(15), budget: 1_000_000 };
        let set = s.factorizations(&x, &caps).unwrap();
        assert!(set.complete);
        let mut lengths: Vec<u64> = set
            .items
            .iter()
            .map(|f| u64::try_from(f.length()).unwrap())
            .collect();
        lengths.sort_unstable();
        lengths.dedup();
        assert_eq!(lengths, vec![6, 7, 11, 12]);
        assert_eq!(set.items.len(), 4);
    }

    #[test]
    fn seed_outside_caps_flagged() {
        let s = sr("2/3", "gens:1");
        // pi = 8/9 forces atom index 2 in the seed.
        let caps = Caps { exp_cap: 1, ..Caps::default() };
        let set = s.factorizations(&q("8/9"), &caps).unwrap();
        assert!(set.cap_too_small);
        assert!(set.items.is_empty());
        assert!(!set.complete);
    }

    #[test]
    fn budget_flags_partial() {
        let s = sr("2/3", "gens:1");
        let caps = Caps { exp_cap: 30, len_cap: Some(100_000), budget: 5 };
        let set = s.factorizations(&q("64"), &caps).unwrap();
        assert!(set.budget_exhausted);
        assert!(!set.complete);
        assert!(!set.items.is_empty());
    }

    #[test]
    fn above_one_with_gaps_matches_hand_count() {
        let s = sr("7/3", "gens:3,4,5");
        let set = s.factorizations(&q("343"), &Caps::default()).unwrap();
        assert!(set.complete);
        assert!(set.items.contains(&z(&[(0, 343)])));
        assert!(set.items.contains(&z(&[(1, 27)])));
        assert!(set.items.contains(&z(&[(1, 6), (2, 2), (3, 3)])));
        // Every item evaluates back to 343 and the shortest has length 11.
        for f in &set.items {
            assert_eq!(s.pi(f), q("343"));
        }
        let min_len = set.items.iter().map(|f| f.length()).min().unwrap();
        assert_eq!(min_len, BigUint::from(11u32));
        let max_len = set.items.iter().map(|f| f.length()).max().unwrap();
        assert_eq!(max_len, BigUint::from(343u32));
    }
}
