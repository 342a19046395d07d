//! Numerical monoids: cofinite additive submonoids of the naturals.
//!
//! A monoid is stored canonically as its membership table up to the
//! conductor. `element(n)` enumerates members in increasing order, so
//! `element(0) = 0` and gaps between consecutive members drive the
//! rewriting moves in the semiring layer.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::Error;

/// Hard cap on the sieve range; generator sets needing more than this are
/// rejected rather than allowed to eat the heap.
const SIEVE_LIMIT: usize = 1 << 26;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalMonoid {
    min_generators: Vec<u64>,
    /// All members `<= conductor`, ascending. Never empty: starts at 0 and
    /// ends at the conductor.
    small_elements: Vec<u64>,
    /// Largest gap, -1 when the monoid is all of the naturals.
    frobenius: i64,
    conductor: u64,
    member_table: Vec<bool>,
}

impl NumericalMonoid {
    pub fn nat() -> Self {
        NumericalMonoid {
            min_generators: vec![1],
            small_elements: vec![0],
            frobenius: -1,
            conductor: 0,
            member_table: vec![true],
        }
    }

    pub fn from_generators(gens: &[u64]) -> Result<Self, Error> {
        if gens.is_empty() {
            return Err(Error::InvalidInput("generator list is empty".into()));
        }
        if gens.contains(&0) {
            return Err(Error::InvalidInput("generators must be positive".into()));
        }
        let mut g = gens.to_vec();
        g.sort_unstable();
        g.dedup();
        let d = g.iter().fold(0u64, |a, &b| a.gcd(&b));
        if d != 1 {
            return Err(Error::NotCofinite { gcd: d });
        }
        let run = g[0] as usize;
        // Grow the reachability table until `run` consecutive members appear;
        // past that point every natural is a member.
        let mut table = vec![false; run + 1];
        table[0] = true;
        let mut streak = 0usize;
        let mut k = 1usize;
        loop {
            if k >= table.len() {
                let next = (table.len() * 2).min(SIEVE_LIMIT + 1);
                if table.len() >= next {
                    return Err(Error::InvalidInput(
                        "generators exceed the supported sieve range".into(),
                    ));
                }
                table.resize(next, false);
            }
            let hit = g
                .iter()
                .take_while(|&&gen| (gen as usize) <= k)
                .any(|&gen| table[k - gen as usize]);
            table[k] = hit;
            streak = if hit { streak + 1 } else { 0 };
            if streak == run {
                break;
            }
            k += 1;
        }
        table.truncate(k + 1);
        Ok(Self::from_membership(table))
    }

    pub fn from_small_elements(elements: &[u64], conductor: u64) -> Result<Self, Error> {
        if elements.is_empty() || elements[0] != 0 {
            return Err(Error::NotAMonoid("0 must be the first element".into()));
        }
        if !elements.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "elements must be strictly increasing".into(),
            ));
        }
        let last = *elements.last().unwrap();
        if last >= conductor && conductor > 0 {
            return Err(Error::InvalidInput(format!(
                "element {last} is not below the conductor {conductor}"
            )));
        }
        if conductor as usize > SIEVE_LIMIT {
            return Err(Error::InvalidInput(
                "conductor exceeds the supported range".into(),
            ));
        }
        let mut table = vec![false; conductor as usize + 1];
        for &e in elements {
            table[e as usize] = true;
        }
        if conductor > 0 {
            table[conductor as usize] = true;
        }
        // Closure check: sums landing below the conductor must be present.
        for (i, &a) in elements.iter().enumerate().skip(1) {
            for &b in &elements[i..] {
                let s = a + b;
                if s < conductor && !table[s as usize] {
                    return Err(Error::NotClosed { a, b });
                }
            }
        }
        Ok(Self::from_membership(table))
    }

    /// Canonicalize from a membership table; everything at or past
    /// `table.len() - 1` is a member.
    fn from_membership(table: Vec<bool>) -> Self {
        let frobenius = table
            .iter()
            .rposition(|&m| !m)
            .map(|p| p as i64)
            .unwrap_or(-1);
        let conductor = (frobenius + 1) as u64;
        let member_table: Vec<bool> = table[..=conductor as usize].to_vec();
        let small_elements: Vec<u64> = member_table
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(k, _)| k as u64)
            .collect();
        let mut nm = NumericalMonoid {
            min_generators: Vec::new(),
            small_elements,
            frobenius,
            conductor,
            member_table,
        };
        nm.min_generators = nm.compute_min_generators();
        nm
    }

    fn compute_min_generators(&self) -> Vec<u64> {
        let m = match self.small_elements.iter().find(|&&e| e > 0) {
            Some(&m) => m,
            None if self.conductor == 0 => 1, // the naturals
            None => unreachable!("nonzero members exist below any positive conductor"),
        };
        // Atoms live in [m, conductor + m - 1]: anything past that splits off m.
        let hi = (self.conductor + m - 1).max(m);
        let mut gens = Vec::new();
        for e in m..=hi {
            if !self.contains(e) {
                continue;
            }
            let decomposable = (m..=e / 2).any(|f| self.contains(f) && self.contains(e - f));
            if !decomposable {
                gens.push(e);
            }
        }
        gens
    }

    pub fn contains(&self, k: u64) -> bool {
        k >= self.conductor || self.member_table[k as usize]
    }

    /// The (n+1)th smallest member; `element(0) = 0`.
    pub fn element(&self, n: usize) -> u64 {
        let len = self.small_elements.len();
        if n < len {
            self.small_elements[n]
        } else {
            self.conductor + (n - (len - 1)) as u64
        }
    }

    /// Gap to the next member: `element(n+1) - element(n)`.
    pub fn gap(&self, n: usize) -> u64 {
        self.element(n + 1) - self.element(n)
    }

    /// Position of `k` in the member enumeration, when `k` is a member.
    pub fn index_of(&self, k: u64) -> Option<usize> {
        if !self.contains(k) {
            return None;
        }
        if k >= self.conductor {
            Some(self.small_elements.len() - 1 + (k - self.conductor) as usize)
        } else {
            self.small_elements.binary_search(&k).ok()
        }
    }

    /// Index m with `element(m) = conductor`; from there on every gap is 1.
    pub fn conductor_index(&self) -> usize {
        self.small_elements.len() - 1
    }

    pub fn min_generators(&self) -> &[u64] {
        &self.min_generators
    }

    pub fn small_elements(&self) -> &[u64] {
        &self.small_elements
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_nat(&self) -> bool {
        self.frobenius == -1
    }
}

impl fmt::Display for NumericalMonoid {
    /// Canonical description string; parses back to an equal monoid.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_nat() {
            return write!(f, "gens:1");
        }
        let elems: Vec<String> = self.small_elements[..self.small_elements.len() - 1]
            .iter()
            .map(|e| e.to_string())
            .collect();
        write!(f, "elems:{};cond:{}", elems.join(","), self.conductor)
    }
}

impl fmt::Debug for NumericalMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericalMonoid({self})")
    }
}

fn parse_u64_list(s: &str, what: &str) -> Result<Vec<u64>, Error> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad {what} entry `{t}`")))
        })
        .collect()
}

impl FromStr for NumericalMonoid {
    type Err = Error;

    /// Two text forms: `gens:a,b,...` and `elems:e1,e2,...;cond:c`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("gens:") {
            let gens = parse_u64_list(body, "generator")?;
            return NumericalMonoid::from_generators(&gens);
        }
        if let Some(body) = s.strip_prefix("elems:") {
            let (elems_part, cond_part) = body
                .split_once(';')
                .ok_or_else(|| Error::Parse("missing `;cond:` section".into()))?;
            let cond_body = cond_part
                .trim()
                .strip_prefix("cond:")
                .ok_or_else(|| Error::Parse("expected `cond:` after `;`".into()))?;
            let elems = parse_u64_list(elems_part, "element")?;
            let conductor = cond_body
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad conductor `{}`", cond_body.trim())))?;
            return NumericalMonoid::from_small_elements(&elems, conductor);
        }
        Err(Error::Parse(format!(
            "monoid description `{s}` must start with `gens:` or `elems:`"
        )))
    }
}
