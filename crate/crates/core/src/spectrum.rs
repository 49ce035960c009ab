//! Prime, strongly prime and hermitian elements.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::Elem;
use crate::quantale::Quantale;

impl Quantale {
    /// `p ≠ ⊤` and `α⋆β ≤ p ⇒ α⋆⊤ ≤ p or ⊤⋆β ≤ p`.
    pub fn is_prime(&self, p: Elem) -> bool {
        let t = self.top();
        p != t
            && self.elements().all(|a| {
                let a_ok = self.leq(self.mul(a, t), p);
                a_ok || self
                    .elements()
                    .all(|b| !self.leq(self.mul(a, b), p) || self.leq(self.mul(t, b), p))
            })
    }

    /// Prime, and `α⋆β ≤ p ⇒ α ∨ (α⋆⊤) ≤ p or β ∨ (⊤⋆β) ≤ p`.
    pub fn is_strongly_prime(&self, p: Elem) -> bool {
        let t = self.top();
        self.is_prime(p)
            && self.elements().all(|a| {
                let a_ok = self.leq(self.join(a, self.mul(a, t)), p);
                a_ok || self.elements().all(|b| {
                    !self.leq(self.mul(a, b), p) || self.leq(self.join(b, self.mul(t, b)), p)
                })
            })
    }

    pub fn spectrum(&self) -> Vec<Elem> {
        self.elements().filter(|&p| self.is_prime(p)).collect()
    }

    pub fn strong_spectrum(&self) -> Vec<Elem> {
        self.elements().filter(|&p| self.is_strongly_prime(p)).collect()
    }

    pub fn hermitian_spectrum(&self) -> Result<Vec<Elem>> {
        let inv = self.involution().ok_or(Error::NoInvolution)?;
        Ok(self.strong_spectrum().into_iter().filter(|&p| inv[p] == p).collect())
    }

    /// Whether every element is the meet of the members of `primes` above it.
    pub fn is_meet_of(&self, primes: &[Elem]) -> bool {
        self.elements()
            .all(|a| self.meet_all(primes.iter().copied().filter(|&p| self.leq(a, p))) == a)
    }

    pub fn is_spatial(&self) -> bool {
        self.is_meet_of(&self.spectrum())
    }

    pub fn is_strongly_spatial(&self) -> bool {
        self.is_meet_of(&self.strong_spectrum())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidedMaxima {
    /// Maximal elements of `𝕃(Q)∖{⊤}`.
    pub left: Vec<Elem>,
    /// Maximal elements of `ℝ(Q)∖{⊤}`.
    pub right: Vec<Elem>,
    /// Members of `left` or `right` that are not prime.
    pub not_prime: Vec<Elem>,
}

fn maximal_below_top(q: &Quantale, set: &[Elem]) -> Vec<Elem> {
    let t = q.top();
    set.iter()
        .copied()
        .filter(|&a| a != t && !set.iter().any(|&b| b != t && q.lt(a, b)))
        .collect()
}

impl Quantale {
    fn lt(&self, a: Elem, b: Elem) -> bool {
        self.lattice().lt(a, b)
    }

    /// The maximal left-sided elements `ML(Q)`, excluding `⊤`.
    pub fn maximal_left_sided(&self) -> Vec<Elem> {
        maximal_below_top(self, &self.left_sided_elements())
    }
}

/// Collects the maximal sided elements of a semi-integral quantale and checks each is prime.
pub fn maximal_sided_primality_check(q: &Quantale) -> Result<SidedMaxima> {
    if !q.is_semi_integral() {
        return Err(Error::NotSemiIntegral);
    }
    let left = q.maximal_left_sided();
    let right = maximal_below_top(q, &q.right_sided_elements());
    let mut not_prime: Vec<Elem> = left.iter().chain(&right).copied().filter(|&p| !q.is_prime(p)).collect();
    not_prime.sort_unstable();
    not_prime.dedup();
    Ok(SidedMaxima { left, right, not_prime })
}
