//! Topologies on spectra: the spatial representation of a quantale over its strong or
//! hermitian spectrum, strong spatiality through `U_Q`, and the topology a quantic frame
//! induces on the primes of its left-sided part.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::{self, q2};
use crate::error::{Error, Result};
use crate::homs::{find_homs, h_p, hom_violation, is_isomorphic, HomFilter, HomKind};
use crate::lattice::Elem;
use crate::props::SubRole;
use crate::quantale::Quantale;
use crate::quantic::{quantic_frame_check, QuanticFrameReport};
use crate::tensor::tensor_quantale;
use crate::topology::{
    act_left, act_right, generate_topology, is_left_sided, is_right_sided, join_closure, pointwise_join, separation_report,
    Presheaf, QTopology,
};

fn join_all(q: &Quantale, fs: &[&Presheaf], points: usize) -> Presheaf {
    fs.iter().fold(alloc::vec![q.bottom(); points], |acc, f| pointwise_join(q, &acc, f))
}

/// All joins `f₁ ∨ (f₂⋆a_ℓ) ∨ (a_r⋆f₃) ∨ (a_r⋆f₄⋆a_ℓ)` with each `fᵢ` from `gens`.
fn four_term_base(ambient: &Quantale, points: usize, gens: &BTreeSet<Presheaf>) -> BTreeSet<Presheaf> {
    let terms = |f: &dyn Fn(&Presheaf) -> Presheaf| gens.iter().map(f).collect::<BTreeSet<_>>();
    let t1 = gens.clone();
    let t2 = terms(&|f| act_right(ambient, f, q2::AL));
    let t3 = terms(&|f| act_left(ambient, q2::AR, f));
    let t4 = terms(&|f| act_right(ambient, &act_left(ambient, q2::AR, f), q2::AL));
    let mut out = BTreeSet::new();
    for a in &t1 {
        for b in &t2 {
            for c in &t3 {
                for d in &t4 {
                    out.insert(join_all(ambient, &[a, b, c, d], points));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralTopology {
    /// The points, as primes of the quantale.
    pub points: Vec<Elem>,
    /// `A_α(p) = h_p(α)`, one presheaf per element `α`.
    pub a: Vec<Presheaf>,
    pub topology: QTopology,
    /// The displayed base form has the same join-closure as the generated topology.
    pub base_form_generates: bool,
    /// The displayed base form is already the whole set of opens.
    pub base_form_exact: bool,
    /// `α ↦ A_α` is a strong homomorphism into the opens, involutive on the hermitian space.
    pub phi_hom: bool,
}

/// The topology generated by `{A_α}` on `σ_s(Q)`, or on `σ_h(Q)` with the involutive
/// closure when `hermitian`.
pub fn spectral_topology(q: &Quantale, hermitian: bool, ambient: &Quantale, cap: usize) -> Result<SpectralTopology> {
    let points = if hermitian { q.hermitian_spectrum()? } else { q.strong_spectrum() };
    let hs = points.iter().map(|&p| h_p(q, p)).collect::<Result<Vec<_>>>()?;
    let a: Vec<Presheaf> = q.elements().map(|x| hs.iter().map(|h| h.apply(x)).collect()).collect();
    let names = points.iter().map(|&p| String::from(q.elem_name(p))).collect();
    let n = points.len();
    let topology = generate_topology(names, &a, ambient, hermitian, cap)?;
    let gens: BTreeSet<Presheaf> = a.iter().cloned().collect();
    let base: BTreeSet<Presheaf> = if hermitian {
        four_term_base(ambient, n, &gens)
    } else {
        let mut out = BTreeSet::new();
        for x in q.elements() {
            for y in q.right_sided_elements() {
                out.insert(pointwise_join(ambient, &a[x], &act_right(ambient, &a[y], q2::AL)));
            }
        }
        out
    };
    let opens: Vec<Presheaf> = topology.opens().to_vec();
    let base_form_exact = base.iter().cloned().collect::<Vec<_>>() == opens;
    let base_form_generates = join_closure(ambient, n, base) == opens;
    let tq = topology.to_quantale()?;
    let phi: Vec<Elem> = a.iter().map(|f| topology.index_of(f).expect("subbase is open")).collect();
    let kind = if hermitian { HomKind::InvolutiveHom } else { HomKind::Hom };
    let phi_hom = hom_violation(q, &tq, &phi, HomKind::StrongHom)?.is_none() && hom_violation(q, &tq, &phi, kind)?.is_none();
    Ok(SpectralTopology { points, a, topology, base_form_generates, base_form_exact, phi_hom })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongSpatiality {
    /// `U_Q = {(α⊗⊤) ∨ (β⊗a) : β ∈ ℝ(Q), α ≤ β}` inside `Q⊗C₃^ℓ`.
    pub u_elements: Vec<Elem>,
    pub u_subquantale: bool,
    /// Products of the generators follow `((β₁⋆α₂)⊗⊤) ∨ ((β₁⋆β₂)⊗a)`.
    pub product_rule: bool,
    /// `U_Q` is isomorphic to the quantale of opens on `σ_s(Q)`.
    pub isomorphic_to_topology: bool,
    /// Some injective strong homomorphism `Q → U_Q` exists.
    pub embeds: bool,
    /// `α ↦ (α⊗⊤) ∨ ((α⋆⊤)⊗a)` is an injective strong homomorphism into `U_Q`.
    pub canonical_embeds: bool,
    /// `isomorphic_to_topology && embeds`.
    pub criterion: bool,
    /// Every element is a meet of strong primes.
    pub strongly_spatial: bool,
}

impl StrongSpatiality {
    pub fn agree(&self) -> bool {
        self.criterion == self.strongly_spatial
    }
}

/// Decides strong spatiality directly and through `U_Q`.
pub fn strong_spatiality(q: &Quantale, ambient: &Quantale, max_tensor: usize, max_opens: usize) -> Result<StrongSpatiality> {
    let c3 = catalog::c3l();
    let (a, top) = (1, c3.top());
    let t = tensor_quantale(q, &c3, max_tensor)?;
    let c = &t.carrier;
    let tq = &t.quantale;
    let gen = |x: Elem, y: Elem| tq.join(c.elem(x, top), c.elem(y, a));
    let rights = q.right_sided_elements();
    let mut u: Vec<Elem> = Vec::new();
    for &y in &rights {
        for x in q.elements().filter(|&x| q.leq(x, y)) {
            u.push(gen(x, y));
        }
    }
    u.sort_unstable();
    u.dedup();
    let sub = tq.subquantale(&u, SubRole::Custom, format!("U({})", q.name()));
    let mut product_rule = true;
    for &y1 in &rights {
        for x1 in q.elements().filter(|&x| q.leq(x, y1)) {
            for &y2 in &rights {
                for x2 in q.elements().filter(|&x| q.leq(x, y2)) {
                    product_rule &= tq.mul(gen(x1, y1), gen(x2, y2)) == gen(q.mul(y1, x2), q.mul(y1, y2));
                }
            }
        }
    }
    let spectral = spectral_topology(q, false, ambient, max_opens)?;
    let strongly_spatial = q.is_strongly_spatial();
    let Ok(sub) = sub else {
        return Ok(StrongSpatiality {
            u_elements: u,
            u_subquantale: false,
            product_rule,
            isomorphic_to_topology: false,
            embeds: false,
            canonical_embeds: false,
            criterion: false,
            strongly_spatial,
        });
    };
    let isomorphic_to_topology = is_isomorphic(&sub.quantale, &spectral.topology.to_quantale()?, false);
    let embeds = !find_homs(q, &sub.quantale, HomFilter { strong: true, injective: true, limit: Some(1), ..HomFilter::default() }).is_empty();
    let canonical: Option<Vec<Elem>> = q.elements().map(|x| sub.local(gen(x, q.mul(x, q.top())))).collect();
    let canonical_embeds = canonical.is_some_and(|h| {
        let mut s = h.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == h.len() && hom_violation(q, &sub.quantale, &h, HomKind::StrongHom).is_ok_and(|w| w.is_none())
    });
    Ok(StrongSpatiality {
        u_elements: u,
        u_subquantale: true,
        product_rule,
        isomorphic_to_topology,
        embeds,
        canonical_embeds,
        criterion: isomorphic_to_topology && embeds,
        strongly_spatial,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuanticTopologization {
    pub frame: QuanticFrameReport,
    /// `σ(𝕃(Q))`, as elements of `Q`.
    pub points: Vec<Elem>,
    /// `φ(p) = p ∨ p′`, as a point index of the hermitian space.
    pub phi: Vec<usize>,
    pub hermitian: SpectralTopology,
    /// `{f∘φ : f open on σ_h(Q)}`.
    pub topology: QTopology,
    /// `B_{α⊗β}` for `α ∈ 𝕃(Q)`, `β ∈ ℝ(Q)` in local indices, row-major in `α`.
    pub b: Vec<Presheaf>,
    /// The composite `h_{φ(p)}∘π`, the product `h_{p′}(β)⋆h_p(α)` of the case displays and
    /// the five-case formula agree everywhere.
    pub formulas_agree: bool,
    /// Nonzero terms `B`, `B⋆a_ℓ`, `a_r⋆B` and `a_r⋆B⋆a_ℓ` over all `B = B_{α⊗β}`, sorted.
    pub elementary_base: Vec<Presheaf>,
    /// Joins `B₁ ∨ (B₂⋆a_ℓ) ∨ (a_r⋆B₃) ∨ (a_r⋆B₄⋆a_ℓ)` of elementary `B`s generate the topology.
    pub base_generates: bool,
}

impl QuanticTopologization {
    fn right_len(&self) -> usize {
        self.frame.tensor.right_elements.len()
    }

    /// `B_{α⊗β}` for local indices `α ∈ 𝕃(Q)`, `β ∈ ℝ(Q)`.
    pub fn b_of(&self, a: Elem, b: Elem) -> &Presheaf {
        &self.b[a * self.right_len() + b]
    }

    /// Local index in `𝕃(Q)` of an element of `Q`.
    pub fn left_local(&self, a: Elem) -> Option<Elem> {
        self.frame.tensor.left_elements.iter().position(|&x| x == a)
    }

    pub fn right_local(&self, b: Elem) -> Option<Elem> {
        self.frame.tensor.right_elements.iter().position(|&x| x == b)
    }
}

fn h_left(q: &Quantale, p: Elem, a: Elem) -> Elem {
    if q.leq(q.mul(a, q.top()), p) {
        q2::BOT
    } else if q.leq(a, p) {
        q2::AL
    } else {
        q2::TOP
    }
}

fn h_right(q: &Quantale, p_dual: Elem, b: Elem) -> Elem {
    if q.leq(q.mul(q.top(), b), p_dual) {
        q2::BOT
    } else if q.leq(b, p_dual) {
        q2::AR
    } else {
        q2::TOP
    }
}

/// The five cases for `B_{α⊗β}(p)` in terms of `α⋆⊤`, `β′⋆⊤`, `α⋆β′` and `β′⋆α` against `p`.
fn b_by_cases(q: &Quantale, inv: &[Elem], p: Elem, a: Elem, b: Elem) -> Elem {
    let bd = inv[b];
    let le = |x: Elem| q.leq(x, p);
    if le(q.mul(bd, q.top())) || le(q.mul(a, q.top())) {
        return q2::BOT;
    }
    match (le(q.mul(a, bd)), le(q.mul(bd, a))) {
        (true, true) => q2::B,
        (false, true) => q2::AL,
        (true, false) => q2::AR,
        (false, false) => q2::TOP,
    }
}

/// The involutive quantized topology a quantic frame induces on `σ(𝕃(Q))`.
pub fn quantic_frame_topologize(q: &Quantale, ambient: &Quantale, max_tensor: usize, max_opens: usize) -> Result<QuanticTopologization> {
    let frame = quantic_frame_check(q, max_tensor)?;
    if !frame.is_quantic_frame() {
        let why = [&frame.cond_a_witness, &frame.cond_b_witness, &frame.cond_c_witness].into_iter().flatten().next().cloned();
        return Err(Error::NotAQuanticFrame(why.unwrap_or_default()));
    }
    let inv = q.involution().ok_or(Error::NoInvolution)?;
    let ti = &frame.tensor;
    let t = &ti.tensor;
    let u = frame.pi_map.as_ref().expect("certified").table();
    let hermitian = spectral_topology(q, true, ambient, max_opens)?;
    let points: Vec<Elem> = t.left.spectrum().into_iter().map(|p| ti.left_elements[p]).collect();
    let phi = points
        .iter()
        .map(|&p| {
            let v = q.join(p, inv[p]);
            hermitian.points.iter().position(|&h| h == v).ok_or_else(|| Error::InconsistentExtension(format!("{} is not hermitian prime", q.elem_name(v))))
        })
        .collect::<Result<Vec<usize>>>()?;
    let sub = hermitian.topology.subspace(&phi)?;
    let names = points.iter().map(|&p| String::from(q.elem_name(p))).collect();
    let topology = QTopology::from_opens(names, ambient, sub.opens().to_vec(), sub.is_involutive())?;
    let hs = phi.iter().map(|&i| h_p(q, hermitian.points[i])).collect::<Result<Vec<_>>>()?;
    let q2 = catalog::q2();
    let mut b = Vec::new();
    let mut formulas_agree = true;
    for (al, &a) in ti.left_elements.iter().enumerate() {
        for (bl, &bb) in ti.right_elements.iter().enumerate() {
            let f: Presheaf = hs.iter().map(|h| h.apply(u[t.carrier.elem(al, bl)])).collect();
            for (k, &p) in points.iter().enumerate() {
                formulas_agree &= f[k] == q2.mul(h_right(q, inv[p], bb), h_left(q, p, a));
                formulas_agree &= f[k] == b_by_cases(q, inv, p, a, bb);
            }
            formulas_agree &= topology.contains(&f);
            b.push(f);
        }
    }
    let n = points.len();
    let mut terms = BTreeSet::new();
    for f in &b {
        let fr = act_left(ambient, q2::AR, f);
        terms.insert(act_right(ambient, &fr, q2::AL));
        terms.insert(act_right(ambient, f, q2::AL));
        terms.insert(fr);
        terms.insert(f.clone());
    }
    terms.remove(&topology.constant(q2::BOT));
    let elementary_base: Vec<Presheaf> = terms.into_iter().collect();
    let base_generates = join_closure(ambient, n, elementary_base.iter().cloned()) == topology.opens();
    Ok(QuanticTopologization { frame, points, phi, hermitian, topology, b, formulas_agree, elementary_base, base_generates })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftOpensReport {
    /// `B_{α₁⊗β₁} = B_{α₂⊗β₂}` exactly when `β₁′⋆α₁ = β₂′⋆α₂` and `α₁⋆β₁′ = α₂⋆β₂′`.
    pub equality_criterion: bool,
    /// Each left-sided open with every `(α, γ) ∈ 𝕃(Q)×𝕀(Q)`, `α ≤ γ`, such that it equals
    /// `B_{α⊗⊤} ∨ (B_{γ⊗⊤}⋆a_ℓ)`; elements of `Q`.
    pub normal_forms: Vec<(Presheaf, Vec<(Elem, Elem)>)>,
    pub normal_form_unique: bool,
    /// For a factor: the left-sided opens other than the `a_ℓ` constant form a quantale
    /// isomorphic to `𝕃(Q)`.
    pub factor_isomorphism: Option<bool>,
}

/// Left-sided opens of the topology on `σ(𝕃(Q))`, when `𝕃(Q)` is spatial.
pub fn left_opens_report(qt: &QuanticTopologization, q: &Quantale) -> Result<LeftOpensReport> {
    let ti = &qt.frame.tensor;
    let l = &ti.tensor.left;
    if !l.is_spatial() {
        return Err(Error::HypothesisFailed("left-sided part spatial".into()));
    }
    let inv = q.involution().ok_or(Error::NoInvolution)?;
    let amb = qt.topology.ambient();
    let (ls, rs) = (&ti.left_elements, &ti.right_elements);
    let mut equality_criterion = true;
    for a1 in 0..ls.len() {
        for b1 in 0..rs.len() {
            for a2 in 0..ls.len() {
                for b2 in 0..rs.len() {
                    let (x1, y1, x2, y2) = (ls[a1], inv[rs[b1]], ls[a2], inv[rs[b2]]);
                    let same = q.mul(y1, x1) == q.mul(y2, x2) && q.mul(x1, y1) == q.mul(x2, y2);
                    equality_criterion &= same == (qt.b_of(a1, b1) == qt.b_of(a2, b2));
                }
            }
        }
    }
    let rtop = ti.tensor.right.top();
    let two_sided = q.two_sided_elements();
    let lefts: Vec<Presheaf> = qt.topology.opens().iter().filter(|f| is_left_sided(amb, f)).cloned().collect();
    let mut normal_forms: Vec<(Presheaf, Vec<(Elem, Elem)>)> = lefts.iter().map(|f| (f.clone(), Vec::new())).collect();
    for (al, &a) in ls.iter().enumerate() {
        for &g in two_sided.iter().filter(|&&g| q.leq(a, g)) {
            let gl = qt.left_local(g).expect("two-sided elements are left-sided");
            let f = pointwise_join(amb, qt.b_of(al, rtop), &act_right(amb, qt.b_of(gl, rtop), q2::AL));
            if let Some(slot) = normal_forms.iter_mut().find(|(h, _)| *h == f) {
                slot.1.push((a, g));
            }
        }
    }
    let normal_form_unique = normal_forms.iter().all(|(_, v)| v.len() == 1);
    let factor_isomorphism = if q.is_factor() {
        let al_const = qt.topology.constant(q2::AL);
        let idx: Vec<Elem> = lefts.iter().filter(|f| **f != al_const).map(|f| qt.topology.index_of(f).expect("open")).collect();
        let tq = qt.topology.to_quantale()?;
        Some(tq.subquantale(&idx, SubRole::Custom, "L(T)").is_ok_and(|s| is_isomorphic(&s.quantale, l, false)))
    } else {
        None
    };
    Ok(LeftOpensReport { equality_criterion, normal_forms, normal_form_unique, factor_isomorphism })
}

fn meet_in_left(qt: &QuanticTopologization, items: impl Iterator<Item = Elem>) -> Elem {
    let l = &qt.frame.tensor.tensor.left;
    let local = l.meet_all(items.map(|x| qt.left_local(x).expect("left-sided")));
    qt.frame.tensor.left_elements[local]
}

/// `⋀(C∖{α}) ≰ α` for every `α ∈ C`, the meet taken in `𝕃(Q)`.
pub fn is_reduced(qt: &QuanticTopologization, q: &Quantale, c: &[Elem]) -> Option<Elem> {
    c.iter().copied().find(|&a| q.leq(meet_in_left(qt, c.iter().copied().filter(|&x| x != a)), a))
}

/// Every nonempty reduced subset of `ML(Q)`.
pub fn reduced_subsets(qt: &QuanticTopologization, q: &Quantale) -> Vec<Vec<Elem>> {
    let ml = q.maximal_left_sided();
    (1u32..(1 << ml.len()))
        .map(|mask| ml.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &a)| a).collect::<Vec<_>>())
        .filter(|c| is_reduced(qt, q, c).is_none())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSubspace {
    pub topology: QTopology,
    /// For every ordered pair, `f₁ = B_{β₁⊗⊤}` and `f₂ = B_{⊤⊗β₂′}` are open, sided as
    /// required, give `⊤` at the pair and stay below `c` across the subspace.
    pub witnesses_ok: bool,
    pub strong_hausdorff: bool,
}

/// The subspace on a reduced `C ⊆ ML(Q)` and its strong separation.
pub fn reduced_subspace(qt: &QuanticTopologization, q: &Quantale, c: &[Elem]) -> Result<ReducedSubspace> {
    if c.is_empty() {
        return Err(Error::NotReduced("empty subset".into()));
    }
    if let Some(a) = is_reduced(qt, q, c) {
        return Err(Error::NotReduced(q.elem_name(a).into()));
    }
    let inv = q.involution().ok_or(Error::NoInvolution)?;
    let idx = c
        .iter()
        .map(|&a| qt.points.iter().position(|&p| p == a).ok_or_else(|| Error::HypothesisFailed(format!("{} is a prime of the left-sided part", q.elem_name(a)))))
        .collect::<Result<Vec<_>>>()?;
    let topology = qt.topology.subspace(&idx)?;
    let amb = topology.ambient();
    let ti = &qt.frame.tensor;
    let (ltop, rtop) = (ti.tensor.left.top(), ti.tensor.right.top());
    let restrict = |f: &Presheaf| -> Presheaf { idx.iter().map(|&i| f[i]).collect() };
    let mut witnesses_ok = true;
    for (i1, &a1) in c.iter().enumerate() {
        for (i2, &a2) in c.iter().enumerate().filter(|&(_, &a2)| a2 != a1) {
            let b1 = meet_in_left(qt, c.iter().copied().filter(|&x| x != a1));
            let b2 = meet_in_left(qt, c.iter().copied().filter(|&x| x != a2));
            let f1 = restrict(qt.b_of(qt.left_local(b1).expect("left"), rtop));
            let f2 = restrict(qt.b_of(ltop, qt.right_local(inv[b2]).expect("involution swaps sides")));
            let sup = amb.join_all((0..c.len()).map(|z| amb.mul(f2[z], f1[z])));
            witnesses_ok &= topology.contains(&f1)
                && topology.contains(&f2)
                && is_left_sided(amb, &f1)
                && is_right_sided(amb, &f2)
                && amb.mul(f2[i2], f1[i1]) == amb.top()
                && amb.leq(sup, q2::C);
        }
    }
    let strong_hausdorff = separation_report(&topology).strong_hausdorff;
    Ok(ReducedSubspace { topology, witnesses_ok, strong_hausdorff })
}
