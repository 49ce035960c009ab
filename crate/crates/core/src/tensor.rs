//! Tensor products of finite sup-lattices and quantales.
//!
//! `X⊗Y` is modelled as the lattice of bi-ideals: down-sets of `X×Y` that contain every
//! pair with a `⊥` coordinate and are closed under joins in each coordinate separately.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::homs::{find_involutions, hom_violation, HomKind};
use crate::lattice::{Elem, FiniteLattice, SupMap};
use crate::props::SubRole;
use crate::quantale::Quantale;

pub const DEFAULT_MAX_TENSOR: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLattice {
    left: FiniteLattice,
    right: FiniteLattice,
    ideals: Vec<FixedBitSet>,
    lattice: FiniteLattice,
    elem: Vec<Elem>,
}

impl TensorLattice {
    pub fn new(left: &FiniteLattice, right: &FiniteLattice, cap: usize) -> Result<Self> {
        let (nx, ny) = (left.len(), right.len());
        let pair = |x: Elem, y: Elem| x * ny + y;
        let close = |s: &mut FixedBitSet| {
            for x in left.elements() {
                s.insert(pair(x, right.bottom()));
            }
            for y in right.elements() {
                s.insert(pair(left.bottom(), y));
            }
            loop {
                let before = s.count_ones(..);
                let members: Vec<usize> = s.ones().collect();
                for p in members {
                    let (x, y) = (p / ny, p % ny);
                    for dx in left.down_set(x).ones() {
                        for dy in right.down_set(y).ones() {
                            s.insert(pair(dx, dy));
                        }
                    }
                }
                for y in right.elements() {
                    let j = left.join_all(left.elements().filter(|&x| s.contains(pair(x, y))));
                    s.insert(pair(j, y));
                }
                for x in left.elements() {
                    let j = right.join_all(right.elements().filter(|&y| s.contains(pair(x, y))));
                    s.insert(pair(x, j));
                }
                if s.count_ones(..) == before {
                    break;
                }
            }
        };
        let mut gens: Vec<FixedBitSet> = Vec::with_capacity(nx * ny);
        for x in left.elements() {
            for y in right.elements() {
                let mut s = FixedBitSet::with_capacity(nx * ny);
                s.insert(pair(x, y));
                close(&mut s);
                gens.push(s);
            }
        }
        let mut bottom = FixedBitSet::with_capacity(nx * ny);
        close(&mut bottom);
        let mut distinct: Vec<FixedBitSet> = gens.clone();
        distinct.sort_by_key(|s| s.ones().collect::<Vec<_>>());
        distinct.dedup();
        let mut ideals = vec![bottom];
        let mut k = 0;
        while k < ideals.len() {
            for g in &distinct {
                if g.is_subset(&ideals[k]) {
                    continue;
                }
                let mut s = ideals[k].clone();
                s.union_with(g);
                close(&mut s);
                if !ideals.contains(&s) {
                    if ideals.len() >= cap {
                        return Err(Error::SizeCapExceeded { what: "tensor carrier", limit: cap });
                    }
                    ideals.push(s);
                }
            }
            k += 1;
        }
        ideals.sort_by_cached_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        let names: Vec<String> = ideals.iter().map(|d| ideal_name(left, right, d)).collect();
        let lattice = FiniteLattice::from_fn(names, |i, j| ideals[i].is_subset(&ideals[j]))?;
        let elem = gens.iter().map(|g| ideals.iter().position(|d| d == g).expect("generator is an ideal")).collect();
        Ok(Self { left: left.clone(), right: right.clone(), ideals, lattice, elem })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn factors(&self) -> (&FiniteLattice, &FiniteLattice) {
        (&self.left, &self.right)
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    /// The elementary tensor `x⊗y`.
    pub fn elem(&self, x: Elem, y: Elem) -> Elem {
        self.elem[x * self.right.len() + y]
    }

    /// Pairs `(x, y)` with `x⊗y ≤ d`.
    pub fn members(&self, d: Elem) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let ny = self.right.len();
        self.ideals[d].ones().map(move |p| (p / ny, p % ny))
    }

    /// Maximal members of `d` with no `⊥` coordinate; their tensors join to `d`.
    pub fn generators(&self, d: Elem) -> Vec<(Elem, Elem)> {
        maximal_pairs(&self.left, &self.right, &self.ideals[d])
    }

    /// Extends a bimorphism `X×Y → Z` to the join-preserving map `X⊗Y → Z`.
    pub fn extend(&self, cod: &FiniteLattice, f: impl Fn(Elem, Elem) -> Elem) -> Result<SupMap> {
        let (l, r) = (&self.left, &self.right);
        let bad = |a: String, b: String| Err(Error::InconsistentExtension(format!("{a} / {b}")));
        for x in l.elements() {
            if f(x, r.bottom()) != cod.bottom() {
                return bad(l.name(x).into(), "bot".into());
            }
        }
        for y in r.elements() {
            if f(l.bottom(), y) != cod.bottom() {
                return bad("bot".into(), r.name(y).into());
            }
        }
        for y in r.elements() {
            for x1 in l.elements() {
                for x2 in x1 + 1..l.len() {
                    if f(l.join(x1, x2), y) != cod.join(f(x1, y), f(x2, y)) {
                        return bad(format!("{} v {}", l.name(x1), l.name(x2)), r.name(y).into());
                    }
                }
            }
        }
        for x in l.elements() {
            for y1 in r.elements() {
                for y2 in y1 + 1..r.len() {
                    if f(x, r.join(y1, y2)) != cod.join(f(x, y1), f(x, y2)) {
                        return bad(l.name(x).into(), format!("{} v {}", r.name(y1), r.name(y2)));
                    }
                }
            }
        }
        let table = self.lattice.elements().map(|d| cod.join_all(self.generators(d).into_iter().map(|(x, y)| f(x, y)))).collect();
        Ok(SupMap::trusted(table, cod.len()))
    }

    /// `x⊗y ↦ y⊗x` into `other = Y⊗X`.
    pub fn symmetry(&self, other: &TensorLattice) -> Result<SupMap> {
        if other.left != self.right || other.right != self.left {
            return Err(Error::DomainMismatch);
        }
        self.extend(other.lattice(), |x, y| other.elem(y, x))
    }
}

fn maximal_pairs(l: &FiniteLattice, r: &FiniteLattice, d: &FixedBitSet) -> Vec<(Elem, Elem)> {
    let ny = r.len();
    let pairs: Vec<(Elem, Elem)> =
        d.ones().map(|p| (p / ny, p % ny)).filter(|&(x, y)| x != l.bottom() && y != r.bottom()).collect();
    pairs
        .iter()
        .copied()
        .filter(|&(x, y)| !pairs.iter().any(|&(u, v)| (u, v) != (x, y) && l.leq(x, u) && r.leq(y, v)))
        .collect()
}

fn ideal_name(l: &FiniteLattice, r: &FiniteLattice, d: &FixedBitSet) -> String {
    let gens = maximal_pairs(l, r, d);
    if gens.is_empty() {
        return "bot".into();
    }
    let parts: Vec<String> = gens.iter().map(|&(x, y)| format!("{}⊗{}", l.name(x), r.name(y))).collect();
    parts.join("∨")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorQuantale {
    pub carrier: TensorLattice,
    pub quantale: Quantale,
    pub left: Quantale,
    pub right: Quantale,
}

/// `Q⊗R` with `(α₁⊗β₁)⋆(α₂⊗β₂) = (α₁⋆α₂)⊗(β₁⋆β₂)` extended by joins; the unit is `e⊗e`
/// when both factors are unital.
pub fn tensor_quantale(q: &Quantale, r: &Quantale, cap: usize) -> Result<TensorQuantale> {
    let t = TensorLattice::new(q.lattice(), r.lattice(), cap)?;
    let n = t.len();
    let gens: Vec<Vec<(Elem, Elem)>> = t.lattice().elements().map(|d| t.generators(d)).collect();
    let mut mult = vec![0; n * n];
    for d1 in 0..n {
        for d2 in 0..n {
            mult[d1 * n + d2] = t.lattice().join_all(
                gens[d1].iter().flat_map(|&(a1, b1)| gens[d2].iter().map(move |&(a2, b2)| (a1, b1, a2, b2))).map(|(a1, b1, a2, b2)| t.elem(q.mul(a1, a2), r.mul(b1, b2))),
            );
        }
    }
    for a1 in q.elements() {
        for b1 in r.elements() {
            for a2 in q.elements() {
                for b2 in r.elements() {
                    let lhs = mult[t.elem(a1, b1) * n + t.elem(a2, b2)];
                    if lhs != t.elem(q.mul(a1, a2), r.mul(b1, b2)) {
                        return Err(Error::InconsistentExtension(format!(
                            "({}⊗{})⋆({}⊗{})",
                            q.elem_name(a1),
                            r.elem_name(b1),
                            q.elem_name(a2),
                            r.elem_name(b2)
                        )));
                    }
                }
            }
        }
    }
    let unit = match (q.unit(), r.unit()) {
        (Some(e), Some(f)) => Some(t.elem(e, f)),
        _ => None,
    };
    let quantale = Quantale::new(format!("{}⊗{}", q.name(), r.name()), t.lattice().clone(), mult, unit, None)
        .map_err(|e| Error::InconsistentExtension(format!("{e}")))?;
    Ok(TensorQuantale { carrier: t, quantale, left: q.clone(), right: r.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embeddings {
    /// `α ↦ α⊗⊤`.
    pub left: SupMap,
    /// `β ↦ ⊤⊗β`.
    pub right: SupMap,
    pub left_strong: bool,
    pub right_strong: bool,
}

pub fn canonical_embeddings(t: &TensorQuantale) -> Embeddings {
    let (q, r, c) = (&t.left, &t.right, &t.carrier);
    let left: Vec<Elem> = q.elements().map(|a| c.elem(a, r.top())).collect();
    let right: Vec<Elem> = r.elements().map(|b| c.elem(q.top(), b)).collect();
    let strong = |dom: &Quantale, h: &[Elem]| hom_violation(dom, &t.quantale, h, HomKind::StrongHom).is_ok_and(|w| w.is_none());
    Embeddings {
        left_strong: strong(q, &left),
        right_strong: strong(r, &right),
        left: SupMap::trusted(left, c.len()),
        right: SupMap::trusted(right, c.len()),
    }
}

/// Anti-isomorphisms `θ_Q: Q → R`, `θ_R: R → Q` that invert each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub to_right: Vec<Elem>,
    pub to_left: Vec<Elem>,
}

impl Twist {
    pub fn check(&self, q: &Quantale, r: &Quantale) -> Result<()> {
        let anti = |d: &Quantale, c: &Quantale, h: &[Elem]| hom_violation(d, c, h, HomKind::AntiHom);
        if let Some(w) = anti(q, r, &self.to_right)? {
            return Err(Error::NotAHom(w));
        }
        if let Some(w) = anti(r, q, &self.to_left)? {
            return Err(Error::NotAHom(w));
        }
        if let Some(a) = q.elements().find(|&a| self.to_left[self.to_right[a]] != a) {
            return Err(Error::TwistNotInverse(q.elem_name(a).into()));
        }
        if let Some(b) = r.elements().find(|&b| self.to_right[self.to_left[b]] != b) {
            return Err(Error::TwistNotInverse(r.elem_name(b).into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorInvolution {
    pub table: Vec<Elem>,
    /// `ℓ∘j_Q = j_R∘θ_Q` and `ℓ∘j_R = j_Q∘θ_R`.
    pub diagram_commutes: bool,
    /// Number of involutions making the diagram commute, when uniqueness was checked.
    pub competitors: Option<usize>,
}

/// `ℓ(α⊗β) = θ_R(β)⊗θ_Q(α)` on `Q⊗R`. Uniqueness is checked by exhaustion when `Q` is
/// left-sided, `R` right-sided and both are semi-unital.
pub fn tensor_involution(t: &TensorQuantale, twist: &Twist) -> Result<TensorInvolution> {
    let (q, r, c) = (&t.left, &t.right, &t.carrier);
    twist.check(q, r)?;
    let table = c.extend(c.lattice(), |a, b| c.elem(twist.to_left[b], twist.to_right[a]))?.into_table();
    if !t.quantale.is_involution(&table) {
        let e = t.quantale.clone().with_involution(Some(table)).unwrap_err();
        return Err(Error::InconsistentExtension(format!("{e}")));
    }
    let emb = canonical_embeddings(t);
    let commutes = |l: &[Elem]| {
        q.elements().all(|a| l[emb.left.apply(a)] == emb.right.apply(twist.to_right[a]))
            && r.elements().all(|b| l[emb.right.apply(b)] == emb.left.apply(twist.to_left[b]))
    };
    let diagram_commutes = commutes(&table);
    let competitors = (q.is_left_sided() && r.is_right_sided() && q.is_semi_unital() && r.is_semi_unital())
        .then(|| find_involutions(&t.quantale).iter().filter(|l| commutes(l)).count());
    Ok(TensorInvolution { table, diagram_commutes, competitors })
}

/// `Q⊗R` carrying the involution of [`tensor_involution`].
pub fn involutive_tensor(q: &Quantale, r: &Quantale, twist: &Twist, cap: usize) -> Result<(TensorQuantale, TensorInvolution)> {
    let mut t = tensor_quantale(q, r, cap)?;
    let inv = tensor_involution(&t, twist)?;
    t.quantale = t.quantale.with_involution(Some(inv.table.clone()))?;
    Ok((t, inv))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensoriallyInvolutive {
    pub tensor: TensorQuantale,
    /// Inclusions of `𝕃(Q)` and `ℝ(Q)` into `Q`, as element lists.
    pub left_elements: Vec<Elem>,
    pub right_elements: Vec<Elem>,
    pub semi_unital: bool,
    pub semi_integral: bool,
    /// Pre-idempotence of the tensor agrees with idempotence of `𝕃(Q)`.
    pub pre_idempotent_matches: bool,
    /// Bisymmetry of the tensor agrees with bisymmetry of `𝕃(Q)`.
    pub bisymmetric_matches: bool,
}

/// `𝕃(Q)⊗ℝ(Q)` with `ℓ(α⊗β) = β′⊗α′`.
pub fn tensorially_involutive(q: &Quantale, cap: usize) -> Result<TensoriallyInvolutive> {
    let inv = q.involution().ok_or(Error::NotInvolutive)?;
    if !q.is_semi_unital() {
        return Err(Error::NotSemiUnital);
    }
    let l = q.subquantale(&q.left_sided_elements(), SubRole::Left, format!("L({})", q.name()))?;
    let r = q.subquantale(&q.right_sided_elements(), SubRole::Right, format!("R({})", q.name()))?;
    let to_right = l.elements.iter().map(|&a| r.local(inv[a]).expect("involution swaps sides")).collect();
    let to_left = r.elements.iter().map(|&b| l.local(inv[b]).expect("involution swaps sides")).collect();
    let twist = Twist { to_right, to_left };
    let (tensor, _) = involutive_tensor(&l.quantale, &r.quantale, &twist, cap)?;
    let tq = &tensor.quantale;
    Ok(TensoriallyInvolutive {
        semi_unital: tq.is_semi_unital(),
        semi_integral: tq.is_semi_integral(),
        pre_idempotent_matches: tq.is_pre_idempotent() == l.quantale.is_idempotent(),
        bisymmetric_matches: tq.is_bisymmetric() == l.quantale.is_bisymmetric(),
        left_elements: l.elements,
        right_elements: r.elements,
        tensor,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPrimes {
    /// Primes of `Q⊗R` by exhaustive check.
    pub brute_force: Vec<Elem>,
    /// `(p, q, r)` with `p = (q⊗⊤) ∨ (⊤⊗r)`, for all primes `q`, `r` of the factors.
    pub factored: Vec<(Elem, Elem, Elem)>,
    /// Both lists describe the same set and `(q, r)` is determined by `p`.
    pub agree: bool,
}

pub fn tensor_primes(t: &TensorQuantale) -> Result<TensorPrimes> {
    let (q, r, c) = (&t.left, &t.right, &t.carrier);
    for (ok, what) in [
        (q.is_semi_unital(), "left factor semi-unital"),
        (r.is_semi_unital(), "right factor semi-unital"),
        (q.is_left_sided(), "left factor left-sided"),
        (r.is_right_sided(), "right factor right-sided"),
    ] {
        if !ok {
            return Err(Error::HypothesisFailed(what.into()));
        }
    }
    let brute_force = t.quantale.spectrum();
    let mut factored = Vec::new();
    for &pq in &q.spectrum() {
        for &pr in &r.spectrum() {
            factored.push((c.lattice().join(c.elem(pq, r.top()), c.elem(q.top(), pr)), pq, pr));
        }
    }
    factored.sort_unstable();
    let mut ps: Vec<Elem> = factored.iter().map(|f| f.0).collect();
    let unique = ps.windows(2).all(|w| w[0] != w[1]);
    ps.dedup();
    Ok(TensorPrimes { agree: unique && ps == brute_force, brute_force, factored })
}

/// Whether `q ↦ (q⊗⊤) ∨ (⊤⊗θ(q))` maps `σ(Q)` bijectively onto the hermitian primes of
/// an involutive tensor built with twist `θ`.
pub fn hermitian_prime_bijection(t: &TensorQuantale, twist: &Twist) -> Result<bool> {
    let c = &t.carrier;
    let mut image: Vec<Elem> =
        t.left.spectrum().into_iter().map(|p| c.lattice().join(c.elem(p, t.right.top()), c.elem(t.left.top(), twist.to_right[p]))).collect();
    image.sort_unstable();
    let n = image.len();
    image.dedup();
    let herm: Vec<Elem> = t.quantale.spectrum().into_iter().filter(|&p| t.quantale.is_hermitian(p).unwrap_or(false)).collect();
    if t.quantale.involution().is_none() {
        return Err(Error::NoInvolution);
    }
    Ok(image.len() == n && image == herm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::homs::find_isomorphism;

    fn chain_twist() -> Twist {
        Twist { to_right: vec![0, 1, 2], to_left: vec![0, 1, 2] }
    }

    #[test]
    fn two_is_the_unit() {
        let two = FiniteLattice::chain(&["0", "1"]).unwrap();
        let t = TensorLattice::new(&two, &two, 100).unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn c3_squared_has_six() {
        let c3 = FiniteLattice::chain(&["bot", "a", "top"]).unwrap();
        let t = TensorLattice::new(&c3, &c3, 100).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.lattice().names()[t.elem(1, 2)], "a⊗top");
        assert_eq!(t.elem(0, 2), t.lattice().bottom());
        assert!(matches!(TensorLattice::new(&c3, &c3, 3), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn q2_from_tensor() {
        let (t, inv) = involutive_tensor(&catalog::c3l(), &catalog::c3r(), &chain_twist(), 100).unwrap();
        assert!(inv.diagram_commutes);
        assert_eq!(inv.competitors, Some(1));
        assert!(find_isomorphism(&t.quantale, &catalog::q2(), true).is_some());
        let c = &t.carrier;
        // (a⊗a)⋆(⊤⊗a) = (a⋆⊤)⊗(a⋆a) = ⊤⊗a
        assert_eq!(t.quantale.mul(c.elem(1, 1), c.elem(2, 1)), c.elem(2, 1));
        assert_eq!(inv.table[c.elem(1, 2)], c.elem(2, 1));
        assert!(t.quantale.is_semi_integral());
    }

    #[test]
    fn embeddings_need_balance() {
        let t = tensor_quantale(&catalog::c3l(), &catalog::c3r(), 100).unwrap();
        let e = canonical_embeddings(&t);
        assert!(e.left_strong && e.right_strong);
        let triv = catalog::c3trivial();
        // (⊤⊗⊤)⋆(⊤⊗a) = ⊥⊗a = ⊥ while ⊤⊗(⊤⋆a) = ⊤⊗a.
        let t = tensor_quantale(&triv, &catalog::c3l(), 100).unwrap();
        let e = canonical_embeddings(&t);
        assert!(e.left_strong && !e.right_strong);
        assert_eq!(e.left.apply(0), t.quantale.bottom());
        // With every product ⊥ on both sides nothing can fail.
        let t = tensor_quantale(&triv, &triv, 100).unwrap();
        let e = canonical_embeddings(&t);
        assert!(e.left_strong && e.right_strong);
    }

    #[test]
    fn tensor_primes_of_q2() {
        let t = tensor_quantale(&catalog::c3l(), &catalog::c3r(), 100).unwrap();
        let p = tensor_primes(&t).unwrap();
        assert!(p.agree);
        assert_eq!(p.brute_force.len(), 4);
        let (t, _) = involutive_tensor(&catalog::c3l(), &catalog::c3r(), &chain_twist(), 100).unwrap();
        assert!(hermitian_prime_bijection(&t, &chain_twist()).unwrap());
        assert_eq!(tensor_primes(&tensor_quantale(&catalog::c3r(), &catalog::c3l(), 100).unwrap()).unwrap_err(), Error::HypothesisFailed("left factor left-sided".into()));
    }

    #[test]
    fn tensorially_involutive_q2() {
        let r = tensorially_involutive(&catalog::q2(), 100).unwrap();
        assert!(find_isomorphism(&r.tensor.quantale, &catalog::q2(), true).is_some());
        assert!(r.semi_unital && r.semi_integral && r.pre_idempotent_matches && r.bisymmetric_matches);
        assert_eq!(tensorially_involutive(&catalog::c3l(), 100).unwrap_err(), Error::NotInvolutive);
    }

    #[test]
    fn symmetry_round_trip() {
        let c3 = FiniteLattice::chain(&["bot", "a", "top"]).unwrap();
        let two = FiniteLattice::chain(&["0", "1"]).unwrap();
        let xy = TensorLattice::new(&c3, &two, 100).unwrap();
        let yx = TensorLattice::new(&two, &c3, 100).unwrap();
        let s = xy.symmetry(&yx).unwrap();
        let back = yx.symmetry(&xy).unwrap();
        assert_eq!(back.compose(&s).unwrap(), SupMap::identity(xy.lattice()));
    }
}
