//! Brute-force ground truth, deliberately naive. Membership and
//! factorization claims elsewhere in the crate are validated against plain
//! bounded-knapsack search over integerized weights; nothing here reuses the
//! digit-criterion shortcuts.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Error;
use crate::factorization::Factorization;
use crate::rational::Rational;
use crate::semiring::{Semiring, SemiringClass};

/// Cleared-denominator view of "pick coefficients summing to x".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackInstance {
    pub target: BigUint,
    /// weights[i] = n^{s_i} * d^{S - s_i} for the i-th window index, S the
    /// window's largest exponent.
    pub weights: Vec<BigUint>,
    /// Per-position multiplicity caps on top of the value bound.
    pub bounds: Vec<Option<BigUint>>,
}

#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub items: Vec<Factorization>,
    /// False when the node budget ran out before the search space did.
    pub complete: bool,
    pub nodes: u64,
}

/// Integerize "sum over window = x". None when x cannot be cleared to an
/// integer over this window, in which case no representation exists there.
pub fn build_knapsack(
    sr: &Semiring,
    x: &Rational,
    window: &[usize],
    bounds: &[Option<BigUint>],
) -> Option<KnapsackInstance> {
    assert!(!window.is_empty(), "window must be nonempty");
    assert!(window.windows(2).all(|w| w[0] < w[1]), "window must be sorted");
    assert_eq!(window.len(), bounds.len());
    let s_max = sr.monoid().element(*window.last().unwrap());
    let scaled = x.numer() * sr.dpow(s_max);
    if (&scaled % x.denom()) != BigUint::zero() {
        return None;
    }
    let weights = window
        .iter()
        .map(|&i| {
            let s = sr.monoid().element(i);
            sr.npow(s) * sr.dpow(s_max - s)
        })
        .collect();
    Some(KnapsackInstance {
        target: scaled / x.denom(),
        weights,
        bounds: bounds.to_vec(),
    })
}

/// Every coefficient vector over `window` whose value is exactly x, within
/// the given per-index bounds. Exhaustive depth-first search with value
/// pruning only; partial when the budget runs out.
pub fn representations(
    sr: &Semiring,
    x: &Rational,
    window: &[usize],
    bounds: &[Option<BigUint>],
    budget: u64,
) -> OracleOutcome {
    let mut out = OracleOutcome {
        items: Vec::new(),
        complete: true,
        nodes: 0,
    };
    if x.is_zero() {
        out.items.push(Factorization::empty());
        return out;
    }
    let inst = match build_knapsack(sr, x, window, bounds) {
        Some(i) => i,
        None => return out,
    };
    // Search heaviest weight first so the value bound bites early.
    let mut order: Vec<usize> = (0..window.len()).collect();
    order.sort_by(|&a, &b| inst.weights[b].cmp(&inst.weights[a]));
    let mut stack = Factorization::empty();
    rec(sr, &inst, window, &order, 0, inst.target.clone(), budget, &mut stack, &mut out);
    out.items.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    sr: &Semiring,
    inst: &KnapsackInstance,
    window: &[usize],
    order: &[usize],
    depth: usize,
    remaining: BigUint,
    budget: u64,
    stack: &mut Factorization,
    out: &mut OracleOutcome,
) {
    if out.nodes >= budget {
        out.complete = false;
        return;
    }
    out.nodes += 1;
    if depth == order.len() {
        if remaining.is_zero() {
            out.items.push(stack.clone());
        }
        return;
    }
    let pos = order[depth];
    let w = &inst.weights[pos];
    if depth + 1 == order.len() {
        // The final digit is forced: remaining must be an exact multiple.
        if (&remaining % w).is_zero() {
            let c = &remaining / w;
            let within = match &inst.bounds[pos] {
                Some(b) => &c <= b,
                None => true,
            };
            if within {
                stack.add(window[pos], c.clone());
                out.items.push(stack.clone());
                stack.sub(window[pos], c);
            }
        }
        return;
    }
    let mut max_c = &remaining / w;
    if let Some(b) = &inst.bounds[pos] {
        max_c = max_c.min(b.clone());
    }
    let mut c = BigUint::zero();
    while c <= max_c {
        stack.add(window[pos], c.clone());
        rec(sr, inst, window, order, depth + 1, &remaining - &c * w, budget, stack, out);
        stack.sub(window[pos], c.clone());
        if !out.complete {
            return;
        }
        c += 1u32;
    }
}

/// Multisets of atoms whose value the given atom divides, minimal in the
/// sense that removing any single atom breaks divisibility. Search space is
/// indices <= exp_cap and sizes <= size_cap; supersets of a divisible
/// multiset are pruned since they can never be minimal.
pub fn minimal_bouquets(
    sr: &Semiring,
    atom_index: usize,
    size_cap: u64,
    exp_cap: usize,
    budget: u64,
) -> Result<OracleOutcome, Error> {
    if sr.class() != SemiringClass::AtomicAboveOne {
        return Err(Error::InvalidInput(
            "bouquet search needs a class with finite divisibility tests (r > 1)".into(),
        ));
    }
    let atom = sr.atom(atom_index)?;
    let mut out = OracleOutcome {
        items: Vec::new(),
        complete: true,
        nodes: 0,
    };
    let mut stack = Factorization::empty();
    bouquet_rec(sr, &atom, 0, Rational::zero(), size_cap, exp_cap, budget, &mut stack, &mut out)?;
    out.items.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn bouquet_rec(
    sr: &Semiring,
    atom: &Rational,
    start: usize,
    value: Rational,
    size_left: u64,
    exp_cap: usize,
    budget: u64,
    stack: &mut Factorization,
    out: &mut OracleOutcome,
) -> Result<(), Error> {
    if size_left == 0 || !out.complete {
        return Ok(());
    }
    for idx in start..=exp_cap {
        if out.nodes >= budget {
            out.complete = false;
            return Ok(());
        }
        out.nodes += 1;
        stack.add(idx, BigUint::from(1u32));
        let v = value.clone() + &sr.atom(idx)?;
        if sr.divides(atom, &v)? {
            if is_minimal(sr, atom, stack, &v)? {
                out.items.push(stack.clone());
            }
            // Extensions contain this divisible multiset: never minimal.
        } else {
            bouquet_rec(sr, atom, idx, v, size_left - 1, exp_cap, budget, stack, out)?;
        }
        stack.sub(idx, BigUint::from(1u32));
        if !out.complete {
            return Ok(());
        }
    }
    Ok(())
}

fn is_minimal(
    sr: &Semiring,
    atom: &Rational,
    z: &Factorization,
    value: &Rational,
) -> Result<bool, Error> {
    for i in z.support().collect::<Vec<_>>() {
        let reduced = value
            .checked_sub(&sr.atom(i)?)
            .expect("removing a used atom stays nonnegative");
        if sr.divides(atom, &reduced)? {
            return Ok(false);
        }
    }
    Ok(true)
}
