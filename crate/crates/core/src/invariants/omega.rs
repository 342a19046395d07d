//! Omega primality via minimal-bouquet search, and the closed-form
//! classification flags.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::factorization::Factorization;
use crate::semiring::{Semiring, SemiringClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaStatus {
    Infinite,
    /// The search closed; `lower` is the exact value.
    Finite,
    /// The search was truncated by the caps; `lower` is only a bound.
    BoundedEstimate,
}

/// Outcome of the minimal-bouquet search for one atom. A bouquet is a
/// multiset of atoms whose sum the atom divides while no proper
/// sub-multiset sum is divisible; omega is the supremum of bouquet sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaResult {
    pub status: OmegaStatus,
    /// Largest minimal-bouquet size found.
    pub lower: BigUint,
    /// max(d, sum of n^{s_m - s_i} over i < m), reported for the atom with
    /// exponent F(N) + 1 only.
    pub upper: Option<BigUint>,
    pub witness: Option<Factorization>,
    pub exp_cap: usize,
    pub size_cap: u64,
}

pub fn omega(
    sr: &Semiring,
    atom_index: usize,
    exp_cap: usize,
    size_cap: u64,
    budget: u64,
) -> Result<OmegaResult, Error> {
    if !sr.is_atomic() {
        return Err(Error::NotAtomic);
    }
    let atom = sr.atom(atom_index)?;
    match sr.class() {
        SemiringClass::NonAtomic => unreachable!("atomicity checked above"),
        SemiringClass::AtomicBelowOne => Ok(OmegaResult {
            status: OmegaStatus::Infinite,
            lower: BigUint::from(0u32),
            upper: None,
            witness: None,
            exp_cap,
            size_cap,
        }),
        SemiringClass::Trivial => Ok(OmegaResult {
            // The single atom 1 is prime.
            status: OmegaStatus::Finite,
            lower: BigUint::one(),
            upper: Some(BigUint::one()),
            witness: Some(Factorization::from_pairs([(0usize, 1u32)])),
            exp_cap,
            size_cap,
        }),
        SemiringClass::AtomicAboveOne => {
            let mut search = Search {
                sr,
                atom,
                nodes: 0,
                budget,
                truncated: false,
            };
            search.run(atom_index, exp_cap, size_cap)
        }
    }
}

struct Search<'a> {
    sr: &'a Semiring,
    atom: crate::rational::Rational,
    nodes: u64,
    budget: u64,
    truncated: bool,
}

impl Search<'_> {
    fn spend(&mut self) -> bool {
        if self.nodes >= self.budget {
            self.truncated = true;
            return false;
        }
        self.nodes += 1;
        true
    }

    fn divisible(&mut self, multiple: &Factorization) -> Result<bool, Error> {
        self.sr.divides(&self.atom, &self.sr.pi(multiple))
    }

    fn run(&mut self, k: usize, exp_cap: usize, size_cap: u64) -> Result<OmegaResult, Error> {
        let d = self.sr.denom().clone();
        let m = self.sr.monoid().conductor_index();
        let mut best = BigUint::one();
        let mut witness = Factorization::from_pairs([(k, 1u32)]);
        let mut closed = true;

        if k >= m {
            // Tail atoms settle in closed form. d copies of r^{s_j} walk
            // down one gap-1 step at a time to n^{j-k} r^{s_k}, so each
            // {j: d} is a bouquet; a tail multiset with every multiplicity
            // below d admits no rewriting at all, hence cannot reach an
            // atom of index k; and anything else contains some {j: d}.
            let probe = Factorization::from_pairs([(k + 1, d.clone())]);
            debug_assert!(self.divisible(&probe)?);
            if d > best {
                best = d.clone();
                witness = probe;
            }
        } else {
            // Below the Frobenius gap the tail bound grows with the index,
            // so only a finite window is surveyed and no closure is
            // claimed.
            closed = false;
            for j in (k + 1)..=exp_cap.max(k + 1) {
                if let Some(c) = self.chain_scan(j, size_cap)? {
                    if c > best {
                        best = c.clone();
                        witness = Factorization::from_pairs([(j, c)]);
                    }
                }
                if self.truncated {
                    break;
                }
            }
        }

        // Atoms below r^{s_k}. A multiset holding n^{s_k - s_j} copies of
        // r^{s_j} contains a divisible bundle (push the whole block up one
        // gap at a time), so minimal bouquets are either such a corner or
        // stay strictly inside the box. Pure multiples first, then mixed
        // supports in order of total size.
        let sk = self.sr.monoid().element(k);
        let mut limits: Vec<u64> = Vec::with_capacity(k);
        let mut minimal: Vec<Factorization> = Vec::new();
        for j in 0..k {
            let corner = self.sr.npow(sk - self.sr.monoid().element(j));
            let in_box = &corner - 1u32;
            let scan_to = if in_box <= BigUint::from(size_cap) {
                u64::try_from(&in_box).expect("fits by comparison")
            } else {
                closed = false;
                size_cap
            };
            match self.chain_scan(j, scan_to)? {
                Some(c) => {
                    let limit = u64::try_from(&(&c - 1u32)).unwrap_or(u64::MAX);
                    if c > best {
                        best = c.clone();
                        witness = Factorization::from_pairs([(j, c.clone())]);
                    }
                    minimal.push(Factorization::from_pairs([(j, c)]));
                    limits.push(limit);
                }
                None if in_box == BigUint::from(scan_to) && !self.truncated => {
                    // Box fully scanned clean: the corner itself is the
                    // minimal multiple.
                    if corner > best {
                        best = corner.clone();
                        witness = Factorization::from_pairs([(j, corner.clone())]);
                    }
                    minimal.push(Factorization::from_pairs([(j, corner)]));
                    limits.push(scan_to);
                }
                None => {
                    closed = false;
                    limits.push(scan_to);
                }
            }
            if self.truncated {
                closed = false;
            }
        }

        if k >= 2 && !self.truncated {
            let span: u64 = limits.iter().fold(0u64, |a, &b| a.saturating_add(b));
            let top_size = span.min(size_cap);
            if span > size_cap {
                closed = false;
            }
            let mut current = Factorization::empty();
            for s in 2..=top_size {
                self.mixed_layer(&mut current, 0, s, &limits, &mut minimal, &mut best, &mut witness)?;
                if self.truncated {
                    closed = false;
                    break;
                }
            }
        }

        let upper = (k == m).then(|| {
            let sum: BigUint = (0..m).map(|i| self.sr.npow(sk - self.sr.monoid().element(i))).sum();
            sum.max(d.clone())
        });
        if closed {
            if let Some(u) = &upper {
                debug_assert!(best <= *u);
            }
        }
        Ok(OmegaResult {
            status: if closed { OmegaStatus::Finite } else { OmegaStatus::BoundedEstimate },
            lower: best,
            upper,
            witness: Some(witness),
            exp_cap,
            size_cap,
        })
    }

    /// Smallest c in 1..=scan_to with the atom dividing c r^{s_j}; the
    /// result is a bouquet since smaller multiples were just ruled out.
    fn chain_scan(&mut self, j: usize, scan_to: u64) -> Result<Option<BigUint>, Error> {
        for c in 1..=scan_to {
            if !self.spend() {
                return Ok(None);
            }
            let c = BigUint::from(c);
            if self.divisible(&Factorization::from_pairs([(j, c.clone())]))? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    #[allow(clippy::too_many_arguments)]
    fn mixed_layer(
        &mut self,
        current: &mut Factorization,
        j: usize,
        left: u64,
        limits: &[u64],
        minimal: &mut Vec<Factorization>,
        best: &mut BigUint,
        witness: &mut Factorization,
    ) -> Result<(), Error> {
        if self.truncated {
            return Ok(());
        }
        if j == limits.len() {
            if left != 0 || current.support().count() < 2 {
                return Ok(());
            }
            if !self.spend() {
                return Ok(());
            }
            // Anything at or above a recorded bouquet is not minimal.
            if minimal.iter().any(|z| dominates(current, z)) {
                return Ok(());
            }
            if self.divisible(current)? {
                // Every strict sub-multiset was visited in an earlier
                // layer, so this is minimal.
                let size = current.length();
                if size > *best {
                    *best = size;
                    *witness = current.clone();
                }
                minimal.push(current.clone());
            }
            return Ok(());
        }
        let cap = limits[j].min(left);
        for c in 0..=cap {
            if c > 0 {
                current.add(j, BigUint::from(c) - current.coeff(j));
            }
            self.mixed_layer(current, j + 1, left - c, limits, minimal, best, witness)?;
            if self.truncated {
                break;
            }
        }
        if !current.coeff(j).is_zero() {
            let c = current.coeff(j);
            current.sub(j, c);
        }
        Ok(())
    }
}

fn dominates(z: &Factorization, over: &Factorization) -> bool {
    over.iter().all(|(i, c)| &z.coeff(i) >= c)
}

/// Semiring-level flags, all closed forms in the reduced fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassificationFlags {
    pub atomic: bool,
    pub accp: bool,
    /// Whether every element is known to have finitely many
    /// factorizations; settled for integral r and r > 1.
    pub ffm_known: bool,
    pub locally_tame: bool,
    pub globally_tame: bool,
    pub accp_presentable: bool,
}

pub fn classify(sr: &Semiring) -> ClassificationFlags {
    let class = sr.class();
    let integral = class == SemiringClass::Trivial;
    let at_least_one = matches!(class, SemiringClass::Trivial | SemiringClass::AtomicAboveOne);
    ClassificationFlags {
        atomic: sr.is_atomic(),
        accp: at_least_one,
        ffm_known: at_least_one,
        locally_tame: integral,
        globally_tame: integral,
        accp_presentable: at_least_one,
    }
}
