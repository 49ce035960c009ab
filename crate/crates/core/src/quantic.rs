//! Quantic frames and the pushout construction of involutive spectra.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::homs::{hom_violation, HomKind};
use crate::lattice::{Elem, SupMap};
use crate::nucleus::{
    induce_involution, least_coequalizing_nucleus, nucleus_of_hom, quotient, twisted_coequalizer_check, Nucleus,
    QuotientQuantale, TwistedCoequalizers,
};
use crate::quantale::Quantale;
use crate::tensor::{involutive_tensor, tensorially_involutive, TensorQuantale, TensoriallyInvolutive, Twist};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuanticFrameReport {
    /// Every left-sided and every right-sided element is idempotent.
    pub cond_a: bool,
    pub cond_a_witness: Option<String>,
    /// Every two-sided element is hermitian.
    pub cond_b: bool,
    pub cond_b_witness: Option<String>,
    /// `Q` is the pushout of `𝕃(Q) ← 𝕀(Q) → ℝ(Q)`.
    pub cond_c: bool,
    pub cond_c_witness: Option<String>,
    /// `𝕀(Q)`.
    pub commutative_part: Vec<Elem>,
    pub tensor: TensoriallyInvolutive,
    /// `α⊗β ↦ β⋆α` on `𝕃(Q)⊗ℝ(Q)`, when it is well defined.
    pub pi_map: Option<SupMap>,
    /// Least nucleus on the tensor identifying `γ⊗⊤` with `⊤⊗γ` for every `γ ∈ 𝕀(Q)`.
    pub coequalizer: Nucleus,
}

impl QuanticFrameReport {
    pub fn is_quantic_frame(&self) -> bool {
        self.cond_a && self.cond_b && self.cond_c
    }

    /// The pairs `(γ⊗⊤, ⊤⊗γ)` over the commutative part, as tensor elements.
    pub fn generic_pairs(&self) -> Vec<(Elem, Elem)> {
        generic_pairs(&self.tensor, &self.commutative_part)
    }
}

fn generic_pairs(ti: &TensoriallyInvolutive, two_sided: &[Elem]) -> Vec<(Elem, Elem)> {
    let t = &ti.tensor;
    let pos = |els: &[Elem], g: Elem| els.iter().position(|&x| x == g).expect("two-sided elements are sided");
    two_sided
        .iter()
        .map(|&g| (t.carrier.elem(pos(&ti.left_elements, g), t.right.top()), t.carrier.elem(t.left.top(), pos(&ti.right_elements, g))))
        .collect()
}

pub fn quantic_frame_check(q: &Quantale, cap: usize) -> Result<QuanticFrameReport> {
    let inv = q.involution().ok_or(Error::PreconditionFailed("involutive".into()))?;
    if !q.is_bisymmetric() {
        return Err(Error::PreconditionFailed("bisymmetric".into()));
    }
    if !q.is_semi_unital() {
        return Err(Error::PreconditionFailed("semi-unital".into()));
    }
    let name = |a: Elem| String::from(q.elem_name(a));
    let sided: Vec<Elem> = q.elements().filter(|&a| q.is_left_sided_elem(a) || q.is_right_sided_elem(a)).collect();
    let cond_a_witness = sided.iter().copied().find(|&a| q.mul(a, a) != a).map(name);
    let commutative_part = q.two_sided_elements();
    let cond_b_witness = commutative_part.iter().copied().find(|&a| inv[a] != a).map(name);

    let ti = tensorially_involutive(q, cap)?;
    let t = &ti.tensor;
    let tq = &t.quantale;
    let pairs = generic_pairs(&ti, &commutative_part);
    let coequalizer = least_coequalizing_nucleus(tq, &pairs)?;
    let pi_map = t.carrier.extend(q.lattice(), |a, b| q.mul(ti.right_elements[b], ti.left_elements[a])).ok();
    let tname = |a: Elem| String::from(tq.elem_name(a));
    let cond_c_witness = match &pi_map {
        None => Some("comparison map is not well defined on elementary tensors".into()),
        Some(u) => {
            let u = u.table();
            if let Some(w) = hom_violation(tq, q, u, HomKind::StrongHom)? {
                Some(format!("comparison map is not a strong homomorphism: {w}"))
            } else if let Some(x) = q.elements().find(|&x| !u.contains(&x)) {
                Some(format!("{} is not in the image of the comparison map", name(x)))
            } else if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| u[a] != u[b]) {
                Some(format!("comparison map separates {} and {}", tname(a), tname(b)))
            } else {
                let f = coequalizer.fixed_points();
                let collapse = f.iter().enumerate().find_map(|(i, &a)| f[i + 1..].iter().find(|&&b| u[a] == u[b]).map(|&b| (a, b)));
                let kernel = nucleus_of_hom(tq, q, u)?;
                if (kernel == coequalizer) != collapse.is_none() {
                    return Err(Error::InconsistentExtension("kernel nucleus disagrees with the collapse search".into()));
                }
                collapse.map(|(a, b)| format!("{} and {} are distinct in the pushout but both map to {}", tname(a), tname(b), name(u[a])))
            }
        }
    };
    Ok(QuanticFrameReport {
        cond_a: cond_a_witness.is_none(),
        cond_a_witness,
        cond_b: cond_b_witness.is_none(),
        cond_b_witness,
        cond_c: cond_c_witness.is_none(),
        cond_c_witness,
        commutative_part,
        pi_map,
        coequalizer,
        tensor: ti,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuanticFrameFacts {
    /// `None` when `𝕀(Q)` has zero divisors, so nothing is claimed.
    pub no_sided_zero_products: Option<bool>,
    /// `π∘ℓ = ℓ∘π` for the tensor involution.
    pub projection_involutive: bool,
    /// `π^⊢` maps `σ_h(Q)` bijectively onto `σ_h(𝕃(Q)⊗ℝ(Q))`.
    pub adjoint_bijection: bool,
    /// `π` maps `σ_h(𝕃(Q)⊗ℝ(Q))` back, inverting `π^⊢`.
    pub projection_inverse: bool,
    pub zero_divisor_free: bool,
    pub commutative_part_zero_divisor_free: bool,
    /// `p ↦ p ∨ p′` on `σ(𝕃(Q))`, in `Q`'s indices.
    pub phi: Vec<(Elem, Elem)>,
    /// `phi` is a bijection onto `σ_h(Q)`.
    pub phi_bijective: bool,
}

impl QuanticFrameFacts {
    pub fn all_hold(&self) -> bool {
        self.no_sided_zero_products != Some(false)
            && self.projection_involutive
            && self.adjoint_bijection
            && self.projection_inverse
            && self.zero_divisor_free == self.commutative_part_zero_divisor_free
            && self.phi_bijective
    }
}

/// Properties of the projection `𝕃(Q)⊗ℝ(Q) → Q` of a certified quantic frame, the
/// zero-divisor transfer from `𝕀(Q)` to `Q`, and the map `σ(𝕃(Q)) → σ_h(Q)`.
pub fn quantic_frame_facts(q: &Quantale, report: &QuanticFrameReport) -> Result<QuanticFrameFacts> {
    let u = match (&report.pi_map, report.is_quantic_frame()) {
        (Some(u), true) => u.table(),
        _ => {
            let why = [&report.cond_a_witness, &report.cond_b_witness, &report.cond_c_witness].into_iter().flatten().next();
            return Err(Error::NotAQuanticFrame(why.cloned().unwrap_or_default()));
        }
    };
    let inv = q.involution().ok_or(Error::NoInvolution)?;
    let ti = &report.tensor;
    let t = &ti.tensor;
    let tq = &t.quantale;
    let tinv = tq.involution().ok_or(Error::NoInvolution)?;

    let center_zdf = q.zero_divisor_free_on(&report.commutative_part);
    let no_sided_zero_products = center_zdf.then(|| {
        let bot = q.bottom();
        t.left.elements().filter(|&a| a != t.left.bottom()).all(|a| t.right.elements().filter(|&b| b != t.right.bottom()).all(|b| u[t.carrier.elem(a, b)] != bot))
    });
    let projection_involutive = tq.elements().all(|x| u[tinv[x]] == inv[u[x]]);

    let radj = SupMap::trusted(u.to_vec(), q.len()).right_adjoint(tq.lattice(), q.lattice());
    let herm_q = q.hermitian_spectrum()?;
    let herm_t = tq.hermitian_spectrum()?;
    let mut image: Vec<Elem> = herm_q.iter().map(|&p| radj[p]).collect();
    image.sort_unstable();
    image.dedup();
    let adjoint_bijection = image.len() == herm_q.len() && image == herm_t;
    let projection_inverse = herm_t.iter().all(|&r| herm_q.contains(&u[r]) && radj[u[r]] == r) && herm_q.iter().all(|&p| u[radj[p]] == p);

    let phi: Vec<(Elem, Elem)> = t.left.spectrum().into_iter().map(|p| ti.left_elements[p]).map(|p| (p, q.join(p, inv[p]))).collect();
    let mut targets: Vec<Elem> = phi.iter().map(|&(_, v)| v).collect();
    targets.sort_unstable();
    targets.dedup();
    let phi_bijective = targets.len() == phi.len() && targets == herm_q;

    Ok(QuanticFrameFacts {
        no_sided_zero_products,
        projection_involutive,
        adjoint_bijection,
        projection_inverse,
        zero_divisor_free: q.is_zero_divisor_free(),
        commutative_part_zero_divisor_free: center_zdf,
        phi,
        phi_bijective,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    /// `L⊗R` with the involution built from the twist.
    pub tensor: TensorQuantale,
    /// The quotient `Ω`, carrying the induced involution.
    pub omega: QuotientQuantale,
    pub twisted: TwistedCoequalizers,
    /// `α ↦ π(α⊗⊤)` is an isomorphism from `L` onto `𝕃(Ω)`, by enumeration.
    pub left_isomorphic: bool,
    /// `p ↦ π(p⊗⊤) ∨ π(p⊗⊤)′` maps `σ(L)` bijectively onto `σ_h(Ω)`.
    pub hermitian_bijection: bool,
}

/// `Ω = (L⊗R)/c₀` for the pair `(j_L∘q_L, j_R∘q_R)` out of `I`, with the involution
/// induced by `ℓ(α⊗β) = θ_R(β)⊗θ_L(α)`.
pub fn spectrum_pushout(l: &Quantale, r: &Quantale, i: &Quantale, q_l: &[Elem], q_r: &[Elem], twist: &Twist, cap: usize) -> Result<Pushout> {
    for (ok, what) in [
        (l.is_left_sided(), "left factor left-sided"),
        (r.is_right_sided(), "right factor right-sided"),
        (l.is_semi_unital(), "left factor semi-unital"),
        (r.is_semi_unital(), "right factor semi-unital"),
    ] {
        if !ok {
            return Err(Error::HypothesisFailed(what.into()));
        }
    }
    for (cod, h) in [(l, q_l), (r, q_r)] {
        if let Some(w) = hom_violation(i, cod, h, HomKind::StrongHom)? {
            return Err(Error::HypothesisFailed(format!("strong homomorphism into {}: {w}", cod.name())));
        }
    }
    twist.check(l, r).map_err(|e| Error::HypothesisFailed(format!("{e}")))?;
    if i.elements().any(|x| twist.to_right[q_l[x]] != q_r[x] || twist.to_left[q_r[x]] != q_l[x]) {
        return Err(Error::HypothesisFailed("twist is compatible with the maps out of the shared quantale".into()));
    }
    let (tensor, _) = involutive_tensor(l, r, twist, cap)?;
    let twisted = twisted_coequalizer_check(&tensor, twist, i, q_l, q_r)?;
    let c = &tensor.carrier;
    let pairs: Vec<(Elem, Elem)> = i.elements().map(|x| (c.elem(q_l[x], r.top()), c.elem(l.top(), q_r[x]))).collect();
    let mut omega = quotient(&tensor.quantale, least_coequalizing_nucleus(&tensor.quantale, &pairs)?)?;
    omega.quotient = induce_involution(&omega)?;
    let w = &omega.quotient;
    let winv = w.involution().expect("just induced");

    let embed: Vec<Elem> = l.elements().map(|a| omega.projection.apply(c.elem(a, r.top()))).collect();
    let mut image = embed.clone();
    image.sort_unstable();
    image.dedup();
    let left_isomorphic = image.len() == l.len()
        && image == w.left_sided_elements()
        && l.elements().all(|a| l.elements().all(|b| embed[l.mul(a, b)] == w.mul(embed[a], embed[b]) && embed[l.join(a, b)] == w.join(embed[a], embed[b])));

    let mut herm: Vec<Elem> = l.spectrum().into_iter().map(|p| w.join(embed[p], winv[embed[p]])).collect();
    let n = herm.len();
    herm.sort_unstable();
    herm.dedup();
    let hermitian_bijection = herm.len() == n && herm == w.hermitian_spectrum()?;

    Ok(Pushout { tensor, omega, twisted, left_isomorphic, hermitian_bijection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, q2::*};
    use crate::homs::is_isomorphic;
    use crate::tensor::DEFAULT_MAX_TENSOR;
    use alloc::vec;

    #[test]
    fn q2_is_a_quantic_frame() {
        let q = catalog::q2();
        let rep = quantic_frame_check(&q, DEFAULT_MAX_TENSOR).unwrap();
        assert!(rep.is_quantic_frame(), "{rep:?}");
        assert_eq!(rep.commutative_part, [BOT, TOP]);
        let facts = quantic_frame_facts(&q, &rep).unwrap();
        assert!(facts.all_hold(), "{facts:?}");
        assert_eq!(facts.phi, [(BOT, BOT), (AL, C)]);
    }

    #[test]
    fn preconditions_are_named() {
        let e = quantic_frame_check(&catalog::c3l(), DEFAULT_MAX_TENSOR).unwrap_err();
        assert_eq!(e, Error::PreconditionFailed("involutive".into()));
    }

    #[test]
    fn frames_are_quantic_frames() {
        for q in [catalog::two(), catalog::diamond(), catalog::chain_frame(4)] {
            let rep = quantic_frame_check(&q, DEFAULT_MAX_TENSOR).unwrap();
            assert!(rep.is_quantic_frame(), "{}: {rep:?}", q.name());
            assert!(quantic_frame_facts(&q, &rep).unwrap().all_hold());
        }
    }

    #[test]
    fn pushout_of_three_chains_is_q2() {
        let (l, r, i) = (catalog::c3l(), catalog::c3r(), catalog::two());
        let twist = Twist { to_right: vec![0, 1, 2], to_left: vec![0, 1, 2] };
        let p = spectrum_pushout(&l, &r, &i, &[0, 2], &[0, 2], &twist, DEFAULT_MAX_TENSOR).unwrap();
        assert!(is_isomorphic(&p.omega.quotient, &catalog::q2(), true));
        assert!(p.left_isomorphic && p.hermitian_bijection);
        assert!(p.twisted.involutive && p.twisted.agree());
    }

    #[test]
    fn pushout_of_a_frame_with_itself() {
        let f = catalog::diamond().without_involution();
        let id: Vec<Elem> = f.elements().collect();
        let twist = Twist { to_right: id.clone(), to_left: id.clone() };
        let p = spectrum_pushout(&f, &f, &f, &id, &id, &twist, DEFAULT_MAX_TENSOR).unwrap();
        assert!(is_isomorphic(&p.omega.quotient, &catalog::diamond(), true));
        assert!(p.left_isomorphic);
    }
}
