//! The verify command: desk-scale checks of the structural claims the
//! library rests on, run over an instance pool. Each check prints one
//! PASS/FAIL/SKIP line; searches that outgrow their budget are skipped,
//! never silently passed.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::json;

use puiseux_core::invariants::{
    aap_decompose, betti_elements, catenary_element, catenary_semiring, delta_semiring,
    length_set, omega, rclasses, union_k, OmegaStatus,
};
use puiseux_core::{
    oracle, Caps, Direction, Error, Extremal, Factorization, Rational, Semiring, SemiringClass,
};

use crate::render;

pub const DEFAULT_POOL: [(&str, &str); 6] = [
    ("2/3", "gens:1"),
    ("5/2", "gens:1"),
    ("2/3", "elems:0;cond:2"),
    ("2/3", "elems:0,18,19,25,27;cond:36"),
    ("3/5", "gens:2,3"),
    ("7/3", "gens:3,4,5"),
];

/// Pool entries look like `5/2@gens:1`.
pub fn parse_pool_entry(s: &str) -> Result<Semiring, Error> {
    let (r, nm) = s
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("pool entry `{s}` must look like r@monoid")))?;
    Semiring::new(r.trim().parse()?, nm.trim().parse()?)
}

pub fn default_pool() -> Vec<Semiring> {
    DEFAULT_POOL
        .iter()
        .map(|(r, nm)| Semiring::new(r.parse().unwrap(), nm.parse().unwrap()).unwrap())
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

struct Outcome {
    name: &'static str,
    instance: String,
    status: Status,
    detail: String,
}

/// Ok(Ok(())) passes, Ok(Err(w)) fails with witness w, Err maps budget
/// exhaustion to a skip and anything else to a failure.
type CheckResult = Result<Result<(), String>, Error>;

fn record(out: &mut Vec<Outcome>, name: &'static str, instance: &Semiring, res: CheckResult) {
    let (status, detail) = match res {
        Ok(Ok(())) => (Status::Pass, String::new()),
        Ok(Err(w)) => (Status::Fail, w),
        Err(Error::BudgetExceeded { .. }) => (Status::Skip, "search budget exhausted".into()),
        Err(e) => (Status::Fail, e.to_string()),
    };
    out.push(Outcome {
        name,
        instance: format!("r={} N={}", instance.r(), instance.monoid()),
        status,
        detail,
    });
}

fn skip(out: &mut Vec<Outcome>, name: &'static str, instance: &Semiring, why: &str) {
    out.push(Outcome {
        name,
        instance: format!("r={} N={}", instance.r(), instance.monoid()),
        status: Status::Skip,
        detail: why.into(),
    });
}

fn caps(exp_cap: usize, len_cap: Option<u64>, budget: u64) -> Caps {
    Caps { exp_cap, len_cap, budget }
}

fn zf(pairs: &[(usize, u64)]) -> Factorization {
    Factorization::from_pairs(pairs.iter().copied())
}

fn diff_of(s: &Semiring) -> BigUint {
    let (n, d) = (s.numer(), s.denom());
    if n >= d {
        n - d
    } else {
        d - n
    }
}

fn residues_agree(lengths: &BTreeSet<BigUint>, diff: &BigUint) -> bool {
    let mut it = lengths.iter();
    let first = match it.next() {
        Some(f) => f % diff,
        None => return true,
    };
    it.all(|l| l % diff == first)
}

fn value_top(s: &Semiring, x: &Rational) -> usize {
    let mut top = 0usize;
    while s.atom(top + 1).map(|a| a <= *x).unwrap_or(false) {
        top += 1;
    }
    top
}

/// Membership by bounded exhaustive search; below one the digits under the
/// window top are capped by n^gap, which upward carrying makes lossless.
fn search_membership(s: &Semiring, x: &Rational, budget: u64) -> Result<bool, Error> {
    if x.is_zero() {
        return Ok(true);
    }
    let top = if s.class() == SemiringClass::AtomicAboveOne {
        value_top(s, x)
    } else {
        let q = x.denom();
        let mut t = 0u64;
        let mut acc = BigUint::from(1u32);
        while !(&acc % &q).is_zero() && t <= 64 {
            acc *= s.denom();
            t += 1;
        }
        let e = t.max(s.monoid().conductor());
        s.monoid().index_of(e).expect("window end is past the conductor")
    };
    let window: Vec<usize> = (0..=top).collect();
    let bounds: Vec<Option<BigUint>> = (0..=top)
        .map(|k| {
            if k == top || s.class() == SemiringClass::AtomicAboveOne {
                return None;
            }
            let g = u32::try_from(s.monoid().gap(k)).unwrap();
            Some(s.numer().pow(g) - 1u32)
        })
        .collect();
    let out = oracle::representations(s, x, &window, &bounds, budget);
    if !out.items.is_empty() {
        return Ok(true);
    }
    if !out.complete {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(false)
}

fn run_instance(out: &mut Vec<Outcome>, s: &Semiring) {
    let class = s.class();
    let atomic = s.is_atomic();
    let diff = diff_of(s);
    let nontrivial_atomic = matches!(
        class,
        SemiringClass::AtomicBelowOne | SemiringClass::AtomicAboveOne
    );
    let above = class == SemiringClass::AtomicAboveOne;

    if atomic {
        record(out, "atoms-are-shortest-forms", s, (|| {
            let top = if class == SemiringClass::Trivial { 1 } else { 3 };
            for k in 0..top {
                let a = s.atom(k)?;
                let z = s.member(&a)?.ok_or(Error::InvalidInput("atom not a member".into()));
                let z = match z {
                    Ok(z) => z,
                    Err(e) => return Ok(Err(e.to_string())),
                };
                let want = zf(&[(k, 1)]);
                if z != want {
                    return Ok(Err(format!("atom {k} factors as {}", render::fac_text(&z))));
                }
                if !s.is_extremal(&z, Extremal::Min)? {
                    return Ok(Err(format!("atom {k} form is not minimal")));
                }
            }
            Ok(Ok(()))
        })());
    }

    record(out, "rewrites-preserve-value", s, (|| {
        let bulk = u64::try_from(s.numer() + s.denom()).unwrap_or(8);
        let z = zf(&[(0, bulk), (1, bulk), (2, bulk)]);
        let v = s.pi(&z);
        for idx in 0..3 {
            for dir in [Direction::Up, Direction::Down] {
                if let Ok(moved) = s.rewrite(&z, idx, dir) {
                    if s.pi(&moved) != v {
                        return Ok(Err(format!("move at {idx} changed the value")));
                    }
                }
            }
        }
        Ok(Ok(()))
    })());

    if nontrivial_atomic {
        record(out, "lengths-congruent-mod-difference", s, (|| {
            for z in [zf(&[(0, 1), (1, 1)]), zf(&[(0, 2), (2, 1)])] {
                let x = s.pi(&z);
                let ls = length_set(s, &x, &caps(16, Some(40), 200_000))?;
                if !residues_agree(&ls.lengths, &diff) {
                    return Ok(Err(format!("mixed residues in L({x})")));
                }
            }
            Ok(Ok(()))
        })());

        record(out, "delta-minimum-is-difference", s, (|| {
            let idx_cap = if s.monoid().conductor() > 10 { 3 } else { 6 };
            let rep = delta_semiring(s, idx_cap, &caps(20, Some(30), 300_000))?;
            if rep.interval_min != diff {
                return Ok(Err("interval minimum is off".into()));
            }
            if !rep.proven.iter().all(|g| (g % &diff).is_zero() || diff.is_zero()) {
                return Ok(Err(format!("gap not a multiple of {diff}")));
            }
            if let Some(min) = rep.proven.iter().next() {
                if *min != diff {
                    return Ok(Err(format!("smallest proven gap {min}, expected {diff}")));
                }
            }
            if s.monoid().is_nat() && rep.proven != BTreeSet::from([diff.clone()]) {
                return Ok(Err("over the naturals the delta set is the single difference".into()));
            }
            Ok(Ok(()))
        })());

        record(out, "union-window-contains-k", s, (|| {
            for k in 1..=3u64 {
                let u = if above {
                    union_k(s, k, 3, &caps(24, None, 2_000_000))?
                } else {
                    union_k(s, k, 4, &caps(12, Some(k + 14), 300_000))?
                };
                if !u.lengths.contains(&BigUint::from(k)) {
                    return Ok(Err(format!("U_{k} misses {k}")));
                }
                let exact: Vec<&BigUint> = match (u.complete, &u.exact_below) {
                    (true, _) => u.lengths.iter().collect(),
                    (false, Some(b)) => u.lengths.iter().filter(|l| *l <= b).collect(),
                    (false, None) => Vec::new(),
                };
                if !diff.is_zero() {
                    for pair in exact.windows(2) {
                        if !(((pair[1] - pair[0]) % &diff).is_zero()) {
                            return Ok(Err(format!("U_{k} gap not a multiple of {diff}")));
                        }
                    }
                }
            }
            Ok(Ok(()))
        })());

        record(out, "omega-matches-class", s, (|| {
            if above {
                let m = s.monoid().conductor_index();
                let res = omega(s, m, m + 6, 16, 500_000)?;
                let upper = res.upper.ok_or(Error::InvalidInput(
                    "conductor atom carries a closed-form bound".into(),
                ))?;
                match res.status {
                    OmegaStatus::Infinite => Ok(Err("omega infinite above one".into())),
                    OmegaStatus::Finite if res.lower != upper => {
                        Ok(Err(format!("omega {} but bound {}", res.lower, upper)))
                    }
                    OmegaStatus::BoundedEstimate if res.lower > upper => {
                        Ok(Err(format!("lower {} exceeds bound {}", res.lower, upper)))
                    }
                    _ => Ok(Ok(())),
                }
            } else {
                let res = omega(s, 0, 6, 10, 200_000)?;
                if res.status == OmegaStatus::Infinite {
                    Ok(Ok(()))
                } else {
                    Ok(Err("omega finite below one".into()))
                }
            }
        })());
    }

    if above {
        record(out, "catenary-attained-at-betti", s, (|| {
            let closed = catenary_semiring(s);
            let mut seen = BigUint::from(0u32);
            for b in betti_elements(s, 2)? {
                let set = s.factorizations(&b.value, &caps(32, None, 10_000_000))?;
                if !set.complete {
                    return Err(Error::BudgetExceeded { budget: 10_000_000 });
                }
                let c = catenary_element(&set);
                if !c.exact {
                    return Err(Error::BudgetExceeded { budget: 10_000_000 });
                }
                if c.value > closed {
                    return Ok(Err(format!("element catenary {} above closed form {closed}", c.value)));
                }
                seen = seen.max(c.value);
            }
            if seen != closed {
                return Ok(Err(format!("maximum over Betti elements is {seen}, closed form {closed}")));
            }
            Ok(Ok(()))
        })());

        record(out, "betti-elements-split-rclasses", s, (|| {
            for b in betti_elements(s, 2)? {
                let set = s.factorizations(&b.value, &caps(32, None, 10_000_000))?;
                if !set.complete {
                    return Err(Error::BudgetExceeded { budget: 10_000_000 });
                }
                if rclasses(&set).classes.len() < 2 {
                    return Ok(Err(format!("single R-class at {}", b.value)));
                }
            }
            Ok(Ok(()))
        })());

        record(out, "aap-structure-reassembles", s, (|| {
            let step = u64::try_from(&diff).unwrap_or(0);
            if step == 0 {
                return Ok(Ok(()));
            }
            for z in [zf(&[(0, 1), (1, 2)]), zf(&[(0, 2), (1, 1), (2, 1)])] {
                let x = s.pi(&z);
                let ls = length_set(s, &x, &caps(24, None, 2_000_000))?;
                if !ls.complete {
                    return Err(Error::BudgetExceeded { budget: 2_000_000 });
                }
                let st = aap_decompose(&ls.lengths, step)?;
                if st.reassemble() != ls.lengths {
                    return Ok(Err(format!("decomposition of L({x}) does not reassemble")));
                }
            }
            Ok(Ok(()))
        })());

        record(out, "factorizations-match-search", s, (|| {
            for z in [zf(&[(0, 3)]), zf(&[(0, 1), (1, 1)]), zf(&[(1, 2)])] {
                let x = s.pi(&z);
                let mine = s.factorizations(&x, &caps(24, None, 2_000_000))?;
                if !mine.complete {
                    return Err(Error::BudgetExceeded { budget: 2_000_000 });
                }
                let top = value_top(s, &x);
                let window: Vec<usize> = (0..=top).collect();
                let found = oracle::representations(s, &x, &window, &vec![None; top + 1], 5_000_000);
                if !found.complete {
                    return Err(Error::BudgetExceeded { budget: 5_000_000 });
                }
                if mine.items != found.items {
                    return Ok(Err(format!("Z({x}) differs from the exhaustive search")));
                }
            }
            Ok(Ok(()))
        })());
    }

    if class == SemiringClass::AtomicBelowOne {
        if s.monoid().conductor() > 10 {
            skip(out, "membership-matches-search", s, "exponent window too wide at desk scale");
        } else {
            record(out, "membership-matches-search", s, (|| {
                let d = u64::try_from(s.denom()).unwrap_or(u64::MAX);
                for p in [0u64, 1, 2, 3, 5, 7, 11, 17] {
                    for j in 0u32..3 {
                        let x = Rational::new(p, d.pow(j))?;
                        let got = s.member(&x)?.is_some();
                        let want = search_membership(s, &x, 2_000_000)?;
                        if got != want {
                            return Ok(Err(format!("disagreement at {x}")));
                        }
                    }
                }
                Ok(Ok(()))
            })());
        }
    }

    // Pinned worked examples for the two instances that carry them.
    if *s.r() == "2/3".parse().unwrap() {
        let nm = s.monoid().to_string();
        if nm == "elems:0,18,19,25,27;cond:36" {
            record(out, "pinned-length-set", s, (|| {
                let x = puiseux_core::parse_element(s, "2*r^18+4*r^25")?;
                let ls = length_set(s, &x, &caps(40, Some(15), 1_000_000))?;
                let want: BTreeSet<BigUint> =
                    [6u32, 7, 11, 12].iter().map(|&v| BigUint::from(v)).collect();
                if !ls.complete {
                    return Err(Error::BudgetExceeded { budget: 1_000_000 });
                }
                if ls.lengths != want {
                    return Ok(Err(format!("lengths {:?}", ls.lengths)));
                }
                Ok(Ok(()))
            })());
        } else if nm == "elems:0;cond:2" {
            record(out, "pinned-delta-set", s, (|| {
                let rep = delta_semiring(s, 8, &caps(12, Some(14), 500_000))?;
                let want: BTreeSet<BigUint> = [1u32, 5].iter().map(|&v| BigUint::from(v)).collect();
                if rep.proven != want {
                    return Ok(Err(format!("proven {:?}", rep.proven)));
                }
                Ok(Ok(()))
            })());
        }
    }
}

pub fn run(pool: &[Semiring], json: bool) -> (String, i32) {
    let mut outcomes = Vec::new();
    for s in pool {
        run_instance(&mut outcomes, s);
    }
    let passed = outcomes.iter().filter(|o| o.status == Status::Pass).count();
    let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
    let skipped = outcomes.iter().filter(|o| o.status == Status::Skip).count();

    let text = if json {
        let checks: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| {
                json!({
                    "name": o.name,
                    "instance": o.instance,
                    "status": match o.status {
                        Status::Pass => "pass",
                        Status::Fail => "fail",
                        Status::Skip => "skip",
                    },
                    "detail": o.detail,
                })
            })
            .collect();
        render::finish(json!({
            "schema": "1",
            "command": "verify",
            "checks": checks,
            "passed": passed,
            "failed": failed,
            "skipped": skipped,
        }))
    } else {
        let mut lines = String::new();
        for o in &outcomes {
            let tag = match o.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            lines.push_str(&format!("{tag} {} [{}]", o.name, o.instance));
            if !o.detail.is_empty() {
                lines.push_str(&format!(": {}", o.detail));
            }
            lines.push('\n');
        }
        lines.push_str(&format!("verify: {passed} passed, {failed} failed, {skipped} skipped\n"));
        lines
    };
    (text, if failed > 0 { 3 } else { 0 })
}
