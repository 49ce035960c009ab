//! Property predicates, sided subquantales and the checks built directly on them.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice, SupMap};
use crate::quantale::Quantale;

impl Quantale {
    pub fn is_balanced(&self) -> bool {
        self.mul(self.top(), self.top()) == self.top()
    }

    pub fn is_unital(&self) -> bool {
        self.find_unit().is_some()
    }

    pub fn is_semi_unital(&self) -> bool {
        let t = self.top();
        self.elements().all(|a| self.leq(a, self.mul(t, a)) && self.leq(a, self.mul(a, t)))
    }

    pub fn is_semi_integral(&self) -> bool {
        let t = self.top();
        self.elements()
            .all(|a| self.elements().all(|b| self.leq(self.mul3(a, t, b), self.mul(a, b))))
    }

    /// `α⋆β₁⋆β₂⋆γ = α⋆β₂⋆β₁⋆γ`.
    pub fn is_bisymmetric(&self) -> bool {
        for a in self.elements() {
            for b1 in self.elements() {
                for b2 in b1 + 1..self.len() {
                    let x = self.mul3(a, b1, b2);
                    let y = self.mul3(a, b2, b1);
                    if x != y && self.elements().any(|g| self.mul(x, g) != self.mul(y, g)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_idempotent(&self) -> bool {
        self.elements().all(|a| self.mul(a, a) == a)
    }

    pub fn is_pre_idempotent(&self) -> bool {
        self.elements().all(|a| self.leq(a, self.mul(a, a)))
    }

    pub fn is_left_sided_elem(&self, a: Elem) -> bool {
        self.leq(self.mul(self.top(), a), a)
    }

    pub fn is_right_sided_elem(&self, a: Elem) -> bool {
        self.leq(self.mul(a, self.top()), a)
    }

    pub fn is_two_sided_elem(&self, a: Elem) -> bool {
        self.is_left_sided_elem(a) && self.is_right_sided_elem(a)
    }

    pub fn is_left_sided(&self) -> bool {
        self.elements().all(|a| self.is_left_sided_elem(a))
    }

    pub fn is_right_sided(&self) -> bool {
        self.elements().all(|a| self.is_right_sided_elem(a))
    }

    pub fn is_two_sided(&self) -> bool {
        self.is_left_sided() && self.is_right_sided()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| (a + 1..self.len()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn left_sided_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_left_sided_elem(a)).collect()
    }

    pub fn right_sided_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_right_sided_elem(a)).collect()
    }

    pub fn two_sided_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_two_sided_elem(a)).collect()
    }

    pub fn is_factor(&self) -> bool {
        self.two_sided_elements().iter().all(|&a| a == self.bottom() || a == self.top())
    }

    /// Whether `subset` has no zero divisors: `α, β ≠ ⊥ ⇒ α⋆β ≠ ⊥`.
    pub fn zero_divisor_free_on(&self, subset: &[Elem]) -> bool {
        let bot = self.bottom();
        subset.iter().filter(|&&a| a != bot).all(|&a| {
            subset.iter().filter(|&&b| b != bot).all(|&b| self.mul(a, b) != bot)
        })
    }

    pub fn is_zero_divisor_free(&self) -> bool {
        self.zero_divisor_free_on(&self.elements().collect::<Vec<_>>())
    }

    /// Whether some involution exists, declared or not.
    pub fn is_involutive(&self) -> bool {
        self.involution().is_some() || !crate::homs::find_involutions(self).is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PropertyReport {
    pub balanced: bool,
    pub unital: bool,
    pub semi_unital: bool,
    pub semi_integral: bool,
    pub bisymmetric: bool,
    pub idempotent: bool,
    pub pre_idempotent: bool,
    pub left_sided: bool,
    pub right_sided: bool,
    pub two_sided: bool,
    pub commutative: bool,
    pub factor: bool,
    pub zero_divisor_free: bool,
    pub involutive: bool,
    pub spatial: bool,
    pub strongly_spatial: bool,
}

impl PropertyReport {
    pub fn flags(&self) -> [(&'static str, bool); 16] {
        [
            ("balanced", self.balanced),
            ("unital", self.unital),
            ("semi-unital", self.semi_unital),
            ("semi-integral", self.semi_integral),
            ("bisymmetric", self.bisymmetric),
            ("idempotent", self.idempotent),
            ("pre-idempotent", self.pre_idempotent),
            ("left-sided", self.left_sided),
            ("right-sided", self.right_sided),
            ("two-sided", self.two_sided),
            ("commutative", self.commutative),
            ("factor", self.factor),
            ("zero-divisor-free", self.zero_divisor_free),
            ("involutive", self.involutive),
            ("spatial", self.spatial),
            ("strongly-spatial", self.strongly_spatial),
        ]
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.flags().iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    /// The implication arrows between flags that must hold for any quantale.
    /// Returns the first broken arrow.
    pub fn broken_implication(&self) -> Option<&'static str> {
        let arrows = [
            (self.unital, self.semi_unital, "unital => semi-unital"),
            (self.pre_idempotent, self.semi_unital, "pre-idempotent => semi-unital"),
            (self.semi_unital, self.balanced, "semi-unital => balanced"),
            (self.left_sided, self.semi_integral, "left-sided => semi-integral"),
            (self.right_sided, self.semi_integral, "right-sided => semi-integral"),
            (self.strongly_spatial, self.semi_unital && self.pre_idempotent, "strongly-spatial => semi-unital, pre-idempotent"),
            (self.strongly_spatial, self.spatial && self.semi_unital, "strongly-spatial => spatial, semi-unital"),
            (self.spatial && self.semi_unital, self.strongly_spatial, "spatial, semi-unital => strongly-spatial"),
            (self.idempotent, self.pre_idempotent, "idempotent => pre-idempotent"),
            (self.spatial, self.semi_integral && self.bisymmetric, "spatial => semi-integral, bisymmetric"),
        ];
        arrows.iter().find(|(p, q, _)| *p && !*q).map(|&(_, _, s)| s)
    }
}

pub fn property_report(q: &Quantale) -> PropertyReport {
    PropertyReport {
        balanced: q.is_balanced(),
        unital: q.is_unital(),
        semi_unital: q.is_semi_unital(),
        semi_integral: q.is_semi_integral(),
        bisymmetric: q.is_bisymmetric(),
        idempotent: q.is_idempotent(),
        pre_idempotent: q.is_pre_idempotent(),
        left_sided: q.is_left_sided(),
        right_sided: q.is_right_sided(),
        two_sided: q.is_two_sided(),
        commutative: q.is_commutative(),
        factor: q.is_factor(),
        zero_divisor_free: q.is_zero_divisor_free(),
        involutive: q.is_involutive(),
        spatial: q.is_spatial(),
        strongly_spatial: q.is_strongly_spatial(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubRole {
    Left,
    Right,
    TwoSided,
    Custom,
}

/// A subset closed under `⋆` and under joins computed in the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquantale {
    pub role: SubRole,
    pub elements: Vec<Elem>,
    pub quantale: Quantale,
    pub inclusion: SupMap,
}

impl Subquantale {
    /// Position of a parent element inside the subquantale.
    pub fn local(&self, parent_elem: Elem) -> Option<Elem> {
        self.elements.iter().position(|&x| x == parent_elem)
    }

    pub fn parent(&self, local: Elem) -> Elem {
        self.elements[local]
    }
}

impl Quantale {
    /// Extracts `elements` as a subquantale. The involution is inherited when the subset is
    /// closed under it, the unit when it lies in the subset.
    pub fn subquantale(&self, elements: &[Elem], role: SubRole, name: impl Into<String>) -> Result<Subquantale> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let member = |x: Elem| elements.binary_search(&x).ok();
        let closed = |x: Elem| member(x).is_some();
        let witness = |a: Elem, b: Elem| {
            Error::HypothesisFailed(alloc::format!(
                "subset not closed at ({}, {})",
                self.elem_name(a),
                self.elem_name(b)
            ))
        };
        if !closed(self.bottom()) {
            return Err(witness(self.bottom(), self.bottom()));
        }
        for &a in &elements {
            for &b in &elements {
                if !closed(self.join(a, b)) || !closed(self.mul(a, b)) {
                    return Err(witness(a, b));
                }
            }
        }
        let lattice: FiniteLattice = self.lattice().restrict(&elements)?;
        let m = elements.len();
        let mult = (0..m * m)
            .map(|i| member(self.mul(elements[i / m], elements[i % m])).expect("closed"))
            .collect();
        let unit = self.unit().and_then(member);
        let involution = self.involution().and_then(|inv| elements.iter().map(|&a| member(inv[a])).collect());
        let quantale = Quantale::new(name, lattice, mult, unit, involution)?;
        let inclusion = SupMap::trusted(elements.clone(), self.len());
        Ok(Subquantale { role, elements, quantale, inclusion })
    }

    /// `(𝕃(Q), ℝ(Q), 𝕀(Q))`.
    pub fn sided_subquantales(&self) -> (Subquantale, Subquantale, Subquantale) {
        let sub = |els: Vec<Elem>, role, tag: &str| {
            self.subquantale(&els, role, alloc::format!("{}({})", tag, self.name())).expect("sided elements form a subquantale")
        };
        (
            sub(self.left_sided_elements(), SubRole::Left, "L"),
            sub(self.right_sided_elements(), SubRole::Right, "R"),
            sub(self.two_sided_elements(), SubRole::TwoSided, "I"),
        )
    }
}

/// `α⋆γ⋆β = α⋆β` for all `α, β` and all `γ ≠ ⊥`, under its hypotheses.
pub fn lemma1_absorption_check(q: &Quantale) -> Result<bool> {
    if !q.is_semi_unital() {
        return Err(Error::HypothesisFailed("not semi-unital".into()));
    }
    if !q.is_semi_integral() {
        return Err(Error::HypothesisFailed("not semi-integral".into()));
    }
    if !q.is_factor() {
        return Err(Error::HypothesisFailed("not a factor".into()));
    }
    Ok(q.elements().all(|a| {
        q.elements().all(|b| {
            let ab = q.mul(a, b);
            q.elements().filter(|&g| g != q.bottom()).all(|g| q.mul3(a, g, b) == ab)
        })
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroDivisorReport {
    pub two_sided: bool,
    pub left: bool,
    pub right: bool,
    pub whole: bool,
    /// 𝕀 free ⇒ 𝕃 and ℝ free.
    pub part_a: bool,
    /// 𝕃 free ⇒ `α⋆β ≠ ⊥` for `α ≠ ⊥`, `β ∈ 𝕃∖{⊥}`.
    pub part_b: bool,
    /// ℝ free ⇒ `α⋆β ≠ ⊥` for `α ∈ ℝ∖{⊥}`, `β ≠ ⊥`.
    pub part_c: bool,
}

pub fn zero_divisor_checks(q: &Quantale) -> Result<ZeroDivisorReport> {
    if !q.is_semi_unital() {
        return Err(Error::NotSemiUnital);
    }
    let (l, r, i) = (q.left_sided_elements(), q.right_sided_elements(), q.two_sided_elements());
    let all: Vec<Elem> = q.elements().collect();
    let bot = q.bottom();
    let nz = |v: &[Elem]| v.iter().copied().filter(|&x| x != bot).collect::<Vec<_>>();
    let (two_sided, left, right) = (q.zero_divisor_free_on(&i), q.zero_divisor_free_on(&l), q.zero_divisor_free_on(&r));
    let part_b = !left || nz(&all).iter().all(|&a| nz(&l).iter().all(|&b| q.mul(a, b) != bot));
    let part_c = !right || nz(&r).iter().all(|&a| nz(&all).iter().all(|&b| q.mul(a, b) != bot));
    Ok(ZeroDivisorReport {
        two_sided,
        left,
        right,
        whole: q.is_zero_divisor_free(),
        part_a: !two_sided || (left && right),
        part_b,
        part_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn q2_report() {
        let r = property_report(&catalog::q2());
        for f in ["semi-unital", "semi-integral", "pre-idempotent", "bisymmetric", "factor", "involutive"] {
            assert_eq!(r.get(f), Some(true), "{f}");
        }
        assert!(!r.unital && !r.commutative);
        assert_eq!(r.broken_implication(), None);
    }

    #[test]
    fn c3l_report() {
        let r = property_report(&catalog::c3l());
        assert!(r.left_sided && r.idempotent && r.semi_unital && !r.right_sided);
    }

    #[test]
    fn trivial_c3_report() {
        let r = property_report(&catalog::c3trivial());
        assert!(r.spatial && !r.strongly_spatial && !r.semi_unital);
    }

    #[test]
    fn sided_parts_of_q2() {
        let q = catalog::q2();
        let (l, r, i) = q.sided_subquantales();
        let names = |s: &Subquantale| s.elements.iter().map(|&a| q.elem_name(a)).collect::<Vec<_>>();
        assert_eq!(names(&l), ["bot", "al", "top"]);
        assert_eq!(names(&r), ["bot", "ar", "top"]);
        assert_eq!(names(&i), ["bot", "top"]);
        assert!(crate::homs::find_isomorphism(&l.quantale, &catalog::c3l(), false).is_some());
        let frame = catalog::diamond();
        assert_eq!(frame.right_sided_elements().len(), frame.len());
    }

    #[test]
    fn lemma1_instances() {
        assert!(lemma1_absorption_check(&catalog::q2()).unwrap());
        assert!(lemma1_absorption_check(&catalog::c3l()).unwrap());
        assert!(matches!(lemma1_absorption_check(&catalog::diamond()), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn zero_divisors() {
        let r = zero_divisor_checks(&catalog::q2()).unwrap();
        assert!(r.two_sided && r.left && r.right && r.whole && r.part_a && r.part_b && r.part_c);
        let d = zero_divisor_checks(&catalog::diamond()).unwrap();
        assert!(!d.whole && !d.two_sided);
        assert_eq!(zero_divisor_checks(&catalog::c3trivial()).unwrap_err(), Error::NotSemiUnital);
    }
}
