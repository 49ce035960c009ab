//! Quantales: a finite lattice with an associative multiplication preserving joins in each variable.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{join_violation, Elem, FiniteLattice, SupMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantale {
    name: String,
    lattice: FiniteLattice,
    mult: Vec<Elem>,
    unit: Option<Elem>,
    involution: Option<Vec<Elem>>,
}

impl Quantale {
    /// Validates associativity, then bimorphism, then the unit, then the involution,
    /// and reports the first failure with a witness.
    pub fn new(
        name: impl Into<String>,
        lattice: FiniteLattice,
        mult: Vec<Elem>,
        unit: Option<Elem>,
        involution: Option<Vec<Elem>>,
    ) -> Result<Self> {
        let n = lattice.len();
        if mult.len() != n * n || mult.iter().any(|&x| x >= n) {
            return Err(Error::DomainMismatch);
        }
        let q = Self { name: name.into(), lattice, mult, unit: None, involution: None };
        q.check_associative()?;
        q.check_bimorphic()?;
        q.with_unit(unit)?.with_involution(involution)
    }

    pub fn from_fn(
        name: impl Into<String>,
        lattice: FiniteLattice,
        mul: impl Fn(Elem, Elem) -> Elem,
        unit: Option<Elem>,
        involution: Option<Vec<Elem>>,
    ) -> Result<Self> {
        let n = lattice.len();
        let mult = (0..n * n).map(|i| mul(i / n, i % n)).collect();
        Self::new(name, lattice, mult, unit, involution)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAssociative(self.nm(a), self.nm(b), self.nm(c)));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_bimorphic(&self) -> Result<()> {
        let l = &self.lattice;
        let bot = l.bottom();
        for x in l.elements() {
            if self.mul(bot, x) != bot || self.mul(x, bot) != bot {
                return Err(Error::NotBimorphic(self.nm(bot), self.nm(bot), self.nm(x)));
            }
        }
        for a in l.elements() {
            for b in a + 1..l.len() {
                let ab = l.join(a, b);
                for x in l.elements() {
                    if self.mul(ab, x) != l.join(self.mul(a, x), self.mul(b, x))
                        || self.mul(x, ab) != l.join(self.mul(x, a), self.mul(x, b))
                    {
                        return Err(Error::NotBimorphic(self.nm(a), self.nm(b), self.nm(x)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_unit(mut self, unit: Option<Elem>) -> Result<Self> {
        if let Some(e) = unit {
            if e >= self.len() || self.elements().any(|x| self.mul(e, x) != x || self.mul(x, e) != x) {
                return Err(Error::BadUnit(self.lattice.names().get(e).cloned().unwrap_or_default()));
            }
        }
        self.unit = unit;
        Ok(self)
    }

    pub fn with_involution(mut self, involution: Option<Vec<Elem>>) -> Result<Self> {
        if let Some(inv) = &involution {
            self.involution_violation(inv)?;
        }
        self.involution = involution;
        Ok(self)
    }

    fn involution_violation(&self, inv: &[Elem]) -> Result<()> {
        let l = &self.lattice;
        if inv.len() != self.len() || inv.iter().any(|&x| x >= self.len()) {
            return Err(Error::DomainMismatch);
        }
        match join_violation(l, l, inv) {
            Some(Error::NotJoinPreserving(a, b)) => return Err(Error::BadInvolution(a, b)),
            Some(_) => return Err(Error::BadInvolution(self.nm(l.bottom()), self.nm(l.bottom()))),
            None => {}
        }
        for a in self.elements() {
            if inv[inv[a]] != a {
                return Err(Error::BadInvolution(self.nm(a), self.nm(a)));
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                if inv[self.mul(a, b)] != self.mul(inv[b], inv[a]) {
                    return Err(Error::BadInvolution(self.nm(a), self.nm(b)));
                }
            }
        }
        Ok(())
    }

    /// Whether `inv` would be a valid involution on this quantale.
    pub fn is_involution(&self, inv: &[Elem]) -> bool {
        self.involution_violation(inv).is_ok()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn nm(&self, a: Elem) -> String {
        self.lattice.name(a).to_string()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        self.lattice.elements()
    }

    pub fn elem_name(&self, a: Elem) -> &str {
        self.lattice.name(a)
    }

    pub fn index(&self, name: &str) -> Result<Elem> {
        self.lattice.index(name)
    }

    pub fn el(&self, name: &str) -> Elem {
        self.lattice.el(name)
    }

    pub fn top(&self) -> Elem {
        self.lattice.top()
    }

    pub fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.meet(a, b)
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        self.lattice.join_all(items)
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        self.lattice.meet_all(items)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.len() + b]
    }

    pub fn mul3(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.mul(self.mul(a, b), c)
    }

    pub fn mult_table(&self) -> &[Elem] {
        &self.mult
    }

    pub fn unit(&self) -> Option<Elem> {
        self.unit
    }

    pub fn involution(&self) -> Option<&[Elem]> {
        self.involution.as_deref()
    }

    pub fn involution_map(&self) -> Option<SupMap> {
        self.involution.as_ref().map(|t| SupMap::trusted(t.clone(), self.len()))
    }

    /// `a′`; requires an involution.
    pub fn star(&self, a: Elem) -> Result<Elem> {
        self.involution.as_ref().map(|t| t[a]).ok_or(Error::NoInvolution)
    }

    pub fn is_hermitian(&self, a: Elem) -> Result<bool> {
        Ok(self.star(a)? == a)
    }

    /// Searches for a two-sided unit regardless of whether one was declared.
    pub fn find_unit(&self) -> Option<Elem> {
        self.elements().find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// `α↙β = ⋁{γ : γ⋆β ≤ α}`.
    pub fn left_implication(&self, alpha: Elem, beta: Elem) -> Elem {
        self.join_all(self.elements().filter(|&g| self.leq(self.mul(g, beta), alpha)))
    }

    /// `α↘β = ⋁{γ : α⋆γ ≤ β}`.
    pub fn right_implication(&self, alpha: Elem, beta: Elem) -> Elem {
        self.join_all(self.elements().filter(|&g| self.leq(self.mul(alpha, g), beta)))
    }

    pub fn implications(&self, alpha: Elem, beta: Elem) -> (Elem, Elem) {
        (self.left_implication(alpha, beta), self.right_implication(alpha, beta))
    }

    /// `δ↙(α↘δ) = α = (δ↙α)↘δ` for every `α`.
    pub fn is_dualizing(&self, delta: Elem) -> bool {
        self.elements().all(|a| {
            self.left_implication(delta, self.right_implication(a, delta)) == a
                && self.right_implication(self.left_implication(delta, a), delta) == a
        })
    }

    /// The transposed multiplication; unit and involution carry over.
    pub fn opposite(&self) -> Self {
        let n = self.len();
        let mult = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        Self {
            name: alloc::format!("{}^op", self.name),
            lattice: self.lattice.clone(),
            mult,
            unit: self.unit,
            involution: self.involution.clone(),
        }
    }

    /// Same structure with the involution dropped.
    pub fn without_involution(&self) -> Self {
        Self { involution: None, ..self.clone() }
    }

    /// Rebuilds this quantale with its carrier permuted: element `a` moves to `perm[a]`.
    pub fn relabel(&self, perm: &[Elem], names: Vec<String>) -> Result<Self> {
        let n = self.len();
        let mut inverse = alloc::vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inverse[p] = a;
        }
        let lattice = FiniteLattice::from_fn(names, |i, j| self.leq(inverse[i], inverse[j]))?;
        let mult = (0..n * n).map(|i| perm[self.mul(inverse[i / n], inverse[i % n])]).collect();
        let involution = self.involution.as_ref().map(|t| (0..n).map(|i| perm[t[inverse[i]]]).collect());
        Self::new(self.name.clone(), lattice, mult, self.unit.map(|e| perm[e]), involution)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn broken_q2_cell_gives_associativity_witness() {
        let q = catalog::q2();
        let n = q.len();
        let mut mult = q.mult_table().to_vec();
        let (b, al) = (q.el("b"), q.el("al"));
        mult[b * n + b] = al;
        let err = Quantale::new("broken", q.lattice().clone(), mult, None, None).unwrap_err();
        assert_eq!(err, Error::NotAssociative("b".into(), "b".into(), "b".into()));
    }

    #[test]
    fn trivial_c3_is_valid() {
        let q = catalog::c3trivial();
        assert!(q.elements().all(|a| q.elements().all(|b| q.mul(a, b) == q.bottom())));
    }

    #[test]
    fn implications_in_q2() {
        let q = catalog::q2();
        let (top, c, ar) = (q.top(), q.el("c"), q.el("ar"));
        assert_eq!(q.implications(top, top), (top, top));
        // γ⋆⊤ ≤ c holds for γ ∈ {⊥, b, ar} only, and ar is their join.
        assert_eq!(q.left_implication(c, top), ar);
    }

    #[test]
    fn unital_self_implication_above_unit() {
        let q = catalog::two();
        let e = q.unit().unwrap();
        assert!(q.elements().all(|a| q.leq(e, q.right_implication(a, a))));
    }

    #[test]
    fn dualizing_on_two() {
        let q = catalog::two();
        assert!(q.is_dualizing(q.bottom()));
        assert!(!q.is_dualizing(q.top()));
    }

    #[test]
    fn opposite_of_c3l_is_c3r() {
        let l = catalog::c3l();
        assert_eq!(l.opposite().mult_table(), catalog::c3r().mult_table());
        assert_eq!(l.opposite().opposite().mult_table(), l.mult_table());
        let two = catalog::two();
        assert_eq!(two.opposite().mult_table(), two.mult_table());
    }

    #[test]
    fn bad_unit_and_involution() {
        let q = catalog::q2();
        assert_eq!(q.clone().with_unit(Some(q.top())).unwrap_err(), Error::BadUnit("top".into()));
        let err = q.clone().with_involution(Some((0..6).collect())).unwrap_err();
        assert!(matches!(err, Error::BadInvolution(..)));
    }
}
