//! Nuclei, quotient quantales and coequalizers.
//!
//! A nucleus is stored by its set `F` of fixed points, with `c(a) = ⋀{s ∈ F : a ≤ s}`.
//! Such a set comes from a nucleus exactly when it contains `⊤`, is closed under meets,
//! and contains `α↘s` and `s↙α` for every `s ∈ F` and every `α`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::homs::{find_homs, find_involutions, hom_violation, HomFilter, HomKind};
use crate::lattice::{Elem, SupMap};
use crate::quantale::Quantale;
use crate::tensor::{canonical_embeddings, TensorQuantale, Twist};

/// Nuclei on carriers up to this size get an exhaustive minimality certificate.
pub const DEFAULT_EXHAUSTIVE_MINIMALITY: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    table: Vec<Elem>,
    fixed: Vec<Elem>,
}

struct Implications {
    n: usize,
    right: Vec<Elem>,
    left: Vec<Elem>,
}

impl Implications {
    fn new(q: &Quantale) -> Self {
        let n = q.len();
        let mut right = vec![0; n * n];
        let mut left = vec![0; n * n];
        for a in 0..n {
            for s in 0..n {
                right[a * n + s] = q.right_implication(a, s);
                left[s * n + a] = q.left_implication(s, a);
            }
        }
        Self { n, right, left }
    }

    /// `α↘s` and `s↙α` over all `α`.
    fn of(&self, s: Elem) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n).flat_map(move |a| [self.right[a * self.n + s], self.left[s * self.n + a]])
    }

    fn closed(&self, q: &Quantale, set: &[bool]) -> bool {
        set[q.top()]
            && (0..self.n).filter(|&s| set[s]).all(|s| {
                self.of(s).all(|x| set[x]) && (0..self.n).filter(|&t| set[t]).all(|t| set[q.meet(s, t)])
            })
    }

    /// Smallest superset closed under meets and both implications.
    fn close(&self, q: &Quantale, set: &mut [bool]) {
        set[q.top()] = true;
        loop {
            let mut changed = false;
            for s in 0..self.n {
                if !set[s] {
                    continue;
                }
                for x in self.of(s).chain((0..self.n).filter(|&t| set[t]).map(|t| q.meet(s, t))).collect::<Vec<_>>() {
                    if !set[x] {
                        set[x] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }
}

impl Nucleus {
    /// The nucleus with fixed-point set `fixed`, after checking the closure conditions and
    /// then the nucleus laws pointwise.
    pub fn from_fixed_points(q: &Quantale, fixed: &[Elem]) -> Result<Self> {
        let mut set = vec![false; q.len()];
        for &s in fixed {
            *set.get_mut(s).ok_or(Error::DomainMismatch)? = true;
        }
        let name = |a: Elem| q.elem_name(a);
        if !set[q.top()] {
            return Err(Error::NotANucleus(format!("{} is not fixed", name(q.top()))));
        }
        let imp = Implications::new(q);
        for s in q.elements().filter(|&s| set[s]) {
            if let Some(t) = q.elements().find(|&t| set[t] && !set[q.meet(s, t)]) {
                return Err(Error::NotANucleus(format!("meet of {} and {} is not fixed", name(s), name(t))));
            }
            if let Some(x) = imp.of(s).find(|&x| !set[x]) {
                return Err(Error::NotANucleus(format!("{} is an implication into {} but not fixed", name(x), name(s))));
            }
        }
        let fixed: Vec<Elem> = q.elements().filter(|&s| set[s]).collect();
        let table = q.elements().map(|a| q.meet_all(fixed.iter().copied().filter(|&s| q.leq(a, s)))).collect();
        let c = Self { table, fixed };
        c.check_laws(q)?;
        Ok(c)
    }

    pub fn identity(q: &Quantale) -> Self {
        Self { table: q.elements().collect(), fixed: q.elements().collect() }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// Fixed points in increasing index order.
    pub fn fixed_points(&self) -> &[Elem] {
        &self.fixed
    }

    pub fn is_fixed(&self, a: Elem) -> bool {
        self.table[a] == a
    }

    /// `a ≤ c(a)`, `c(c(a)) = c(a)`, monotonicity and `c(a)⋆c(b) ≤ c(a⋆b)`.
    pub fn check_laws(&self, q: &Quantale) -> Result<()> {
        let c = |a: Elem| self.table[a];
        let name = |a: Elem| q.elem_name(a);
        for a in q.elements() {
            if !q.leq(a, c(a)) || c(c(a)) != c(a) {
                return Err(Error::NotANucleus(format!("not a closure at {}", name(a))));
            }
            for b in q.elements() {
                if q.leq(a, b) && !q.leq(c(a), c(b)) {
                    return Err(Error::NotANucleus(format!("not monotone at {} <= {}", name(a), name(b))));
                }
                if !q.leq(q.mul(c(a), c(b)), c(q.mul(a, b))) {
                    return Err(Error::NotANucleus(format!("not lax at ({}, {})", name(a), name(b))));
                }
            }
        }
        Ok(())
    }
}

/// The nucleus `h^⊢∘h` of a homomorphism.
pub fn nucleus_of_hom(dom: &Quantale, cod: &Quantale, h: &[Elem]) -> Result<Nucleus> {
    if let Some(w) = hom_violation(dom, cod, h, HomKind::Hom)? {
        return Err(Error::NotAHom(w));
    }
    let radj = SupMap::trusted(h.to_vec(), cod.len()).right_adjoint(dom.lattice(), cod.lattice());
    let mut fixed: Vec<Elem> = dom.elements().map(|a| radj[h[a]]).collect();
    fixed.sort_unstable();
    fixed.dedup();
    Nucleus::from_fixed_points(dom, &fixed)
}

/// The first `α` with `c(α)′ ≰ c(α′)`.
fn involutive_witness(q: &Quantale, c: &Nucleus) -> Result<Option<Elem>> {
    let inv = q.involution().ok_or(Error::NoInvolution)?;
    Ok(q.elements().find(|&a| !q.leq(inv[c.apply(a)], c.apply(inv[a]))))
}

/// Whether `c(α)′ ≤ c(α′)` for all `α`, cross-checked against `ℓ∘c∘ℓ = c`.
pub fn is_involutive_nucleus(q: &Quantale, c: &Nucleus) -> Result<bool> {
    let inv = q.involution().ok_or(Error::NoInvolution)?;
    let by_inequality = involutive_witness(q, c)?.is_none();
    let by_conjugation = q.elements().all(|a| inv[c.apply(inv[a])] == c.apply(a));
    if by_inequality != by_conjugation {
        return Err(Error::InconsistentExtension("the two forms of involutivity disagree".into()));
    }
    Ok(by_inequality)
}

/// The least nucleus `c` with `c(u) = c(v)` for every listed pair.
///
/// Starts from the fixed-point candidates `{s : u ≤ s ⇔ v ≤ s for all pairs}` and discards
/// elements whose implications leave the candidate set until nothing changes.
pub fn least_coequalizing_nucleus(q: &Quantale, pairs: &[(Elem, Elem)]) -> Result<Nucleus> {
    let mut keep = admissible(q, pairs);
    let imp = Implications::new(q);
    loop {
        let drop: Vec<Elem> = q.elements().filter(|&s| keep[s] && imp.of(s).any(|x| !keep[x])).collect();
        if drop.is_empty() {
            break;
        }
        for s in drop {
            keep[s] = false;
        }
    }
    let fixed: Vec<Elem> = q.elements().filter(|&s| keep[s]).collect();
    Nucleus::from_fixed_points(q, &fixed)
}

fn admissible(q: &Quantale, pairs: &[(Elem, Elem)]) -> Vec<bool> {
    q.elements().map(|s| pairs.iter().all(|&(u, v)| q.leq(u, s) == q.leq(v, s))).collect()
}

/// `(f(x), g(x))` for every `x` of the domain, after checking both maps are homomorphisms.
pub fn hom_pairs(src: &Quantale, q: &Quantale, f: &[Elem], g: &[Elem]) -> Result<Vec<(Elem, Elem)>> {
    for h in [f, g] {
        if let Some(w) = hom_violation(src, q, h, HomKind::Hom)? {
            return Err(Error::NotAHom(w));
        }
    }
    Ok(f.iter().copied().zip(g.iter().copied()).collect())
}

/// The least nucleus coequalizing two homomorphisms `f, g: S → Q`.
pub fn coequalizing_nucleus(src: &Quantale, q: &Quantale, f: &[Elem], g: &[Elem]) -> Result<Nucleus> {
    least_coequalizing_nucleus(q, &hom_pairs(src, q, f, g)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Minimality {
    /// Every admissible fixed-point set was enumerated, rather than probed one element at a time.
    pub exhaustive: bool,
    pub minimal: bool,
}

/// Confirms no coequalizing nucleus lies strictly below `c`, i.e. no admissible
/// fixed-point set escapes `F`.
pub fn minimality_certificate(q: &Quantale, pairs: &[(Elem, Elem)], c: &Nucleus, exhaustive_up_to: usize) -> Minimality {
    let good = admissible(q, pairs);
    let imp = Implications::new(q);
    let in_f = |s: Elem| c.is_fixed(s);
    let coequalizes = c.fixed_points().iter().all(|&s| good[s]);
    if q.len() <= exhaustive_up_to {
        let cand: Vec<Elem> = q.elements().filter(|&s| good[s]).collect();
        let mut minimal = coequalizes;
        for mask in 0u64..(1u64 << cand.len()) {
            let mut set = vec![false; q.len()];
            for (i, &s) in cand.iter().enumerate() {
                set[s] = mask & (1 << i) != 0;
            }
            if imp.closed(q, &set) && q.elements().any(|s| set[s] && !in_f(s)) {
                minimal = false;
                break;
            }
        }
        return Minimality { exhaustive: true, minimal };
    }
    let minimal = coequalizes
        && q.elements().filter(|&s| good[s] && !in_f(s)).all(|s| {
            let mut set: Vec<bool> = q.elements().map(in_f).collect();
            set[s] = true;
            imp.close(q, &mut set);
            q.elements().any(|x| set[x] && !good[x])
        });
    Minimality { exhaustive: false, minimal }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientQuantale {
    pub source: Quantale,
    pub nucleus: Nucleus,
    /// The fixed points with `a⊛b = c(a⋆b)`.
    pub quotient: Quantale,
    /// `π(a) = c(a)`, as an index into the quotient.
    pub projection: SupMap,
    /// `π^⊢`: each quotient element as a fixed point of the source.
    pub section: Vec<Elem>,
}

pub fn quotient(q: &Quantale, nucleus: Nucleus) -> Result<QuotientQuantale> {
    let fixed = nucleus.fixed_points().to_vec();
    let local = |a: Elem| fixed.binary_search(&nucleus.apply(a)).expect("nucleus values are fixed");
    let lattice = q.lattice().restrict(&fixed)?;
    let m = fixed.len();
    let mult = (0..m * m).map(|i| local(q.mul(fixed[i / m], fixed[i % m]))).collect();
    let unit = q.unit().map(local);
    let quotient = Quantale::new(format!("{}/c", q.name()), lattice, mult, unit, None)?;
    let projection: Vec<Elem> = q.elements().map(local).collect();
    if let Some(w) = hom_violation(q, &quotient, &projection, HomKind::Hom)? {
        return Err(Error::InconsistentExtension(w));
    }
    let projection = SupMap::trusted(projection, m);
    if (0..m).any(|y| projection.apply(fixed[y]) != y) {
        return Err(Error::InconsistentExtension("projection does not split".into()));
    }
    Ok(QuotientQuantale { source: q.clone(), nucleus, quotient, projection, section: fixed })
}

/// The quotient by the least nucleus identifying each pair.
pub fn coequalizer(q: &Quantale, pairs: &[(Elem, Elem)]) -> Result<QuotientQuantale> {
    quotient(q, least_coequalizing_nucleus(q, pairs)?)
}

/// `ℓ_R = π∘ℓ∘π^⊢` on the quotient, which then carries it.
pub fn induce_involution(qq: &QuotientQuantale) -> Result<Quantale> {
    let src = &qq.source;
    let inv = src.involution().ok_or(Error::NoInvolution)?;
    if let Some(a) = involutive_witness(src, &qq.nucleus)? {
        return Err(Error::NucleusNotInvolutive(src.elem_name(a).into()));
    }
    let pi = |a: Elem| qq.projection.apply(a);
    let table: Vec<Elem> = qq.section.iter().map(|&s| pi(inv[s])).collect();
    let out = qq.quotient.clone().with_involution(Some(table.clone()))?;
    if let Some(a) = src.elements().find(|&a| table[pi(a)] != pi(inv[a])) {
        return Err(Error::InconsistentExtension(format!("projection is not involutive at {}", src.elem_name(a))));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvolutionCriterion {
    pub nucleus_involutive: bool,
    /// Some involution on the quotient makes the projection involutive (found by search).
    pub quotient_involution_exists: bool,
}

impl InvolutionCriterion {
    pub fn agree(&self) -> bool {
        self.nucleus_involutive == self.quotient_involution_exists
    }
}

/// Both sides of the criterion for a quotient to inherit an involution.
pub fn involution_criterion(qq: &QuotientQuantale) -> Result<InvolutionCriterion> {
    let inv = qq.source.involution().ok_or(Error::NoInvolution)?;
    let nucleus_involutive = is_involutive_nucleus(&qq.source, &qq.nucleus)?;
    let pi = |a: Elem| qq.projection.apply(a);
    let quotient_involution_exists =
        find_involutions(&qq.quotient).iter().any(|l| qq.source.elements().all(|a| l[pi(a)] == pi(inv[a])));
    Ok(InvolutionCriterion { nucleus_involutive, quotient_involution_exists })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UniversalCheck {
    pub homs: usize,
    /// Homomorphisms out of the source that identify every pair.
    pub equalizing: usize,
    /// Equalizing homomorphisms with exactly one factorization through the projection.
    pub factored_uniquely: usize,
}

impl UniversalCheck {
    pub fn holds(&self) -> bool {
        self.equalizing == self.factored_uniquely
    }
}

/// Every homomorphism `k` from the source into `cod` with `k(u) = k(v)` for all pairs
/// must factor as `φ∘π` for exactly one homomorphism `φ` out of the quotient.
pub fn universal_property_check(qq: &QuotientQuantale, pairs: &[(Elem, Elem)], cod: &Quantale) -> UniversalCheck {
    let out_of_source = find_homs(&qq.source, cod, HomFilter::default());
    let composites: Vec<Vec<Elem>> = find_homs(&qq.quotient, cod, HomFilter::default())
        .iter()
        .map(|phi| qq.source.elements().map(|a| phi[qq.projection.apply(a)]).collect())
        .collect();
    let mut check = UniversalCheck { homs: out_of_source.len(), ..UniversalCheck::default() };
    for k in &out_of_source {
        if pairs.iter().all(|&(u, v)| k[u] == k[v]) {
            check.equalizing += 1;
            if composites.iter().filter(|c| *c == k).count() == 1 {
                check.factored_uniquely += 1;
            }
        }
    }
    check
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistedCoequalizers {
    /// The nucleus `c₀` of the pair `(j_Q∘q_Q, j_R∘q_R)` is involutive.
    pub involutive: bool,
    /// `c₀` equals the nucleus `c̄₀` of `(j_Q∘θ_R∘q_R, j_R∘θ_Q∘q_Q)`.
    pub equal: bool,
}

impl TwistedCoequalizers {
    pub fn agree(&self) -> bool {
        self.involutive == self.equal
    }
}

/// Computes `c₀` and `c̄₀` on an involutive tensor `Q⊗R` for strong homomorphisms
/// `q_Q: S → Q`, `q_R: S → R`, after checking the factors are balanced, the twist maps are
/// anti-homomorphisms and the involution restricts to them on `j_Q` and `j_R`.
pub fn twisted_coequalizer_check(
    t: &TensorQuantale,
    twist: &Twist,
    s: &Quantale,
    q_left: &[Elem],
    q_right: &[Elem],
) -> Result<TwistedCoequalizers> {
    let (q, r, tq) = (&t.left, &t.right, &t.quantale);
    let fail = |w: &str| Err(Error::HypothesisFailed(w.into()));
    if !q.is_balanced() || !r.is_balanced() {
        return fail("factors balanced");
    }
    let inv = tq.involution().ok_or(Error::HypothesisFailed("tensor involutive".into()))?;
    if hom_violation(q, r, &twist.to_right, HomKind::AntiHom)?.is_some() || hom_violation(r, q, &twist.to_left, HomKind::AntiHom)?.is_some() {
        return fail("twist maps are anti-homomorphisms");
    }
    let emb = canonical_embeddings(t);
    let (jl, jr) = (|a: Elem| emb.left.apply(a), |b: Elem| emb.right.apply(b));
    if q.elements().any(|a| inv[jl(a)] != jr(twist.to_right[a])) || r.elements().any(|b| inv[jr(b)] != jl(twist.to_left[b])) {
        return fail("involution restricts to the twist maps");
    }
    if hom_violation(s, q, q_left, HomKind::StrongHom)?.is_some() || hom_violation(s, r, q_right, HomKind::StrongHom)?.is_some() {
        return fail("maps out of the shared quantale are strong homomorphisms");
    }
    let pairs: Vec<(Elem, Elem)> = s.elements().map(|x| (jl(q_left[x]), jr(q_right[x]))).collect();
    let twisted: Vec<(Elem, Elem)> = s.elements().map(|x| (jl(twist.to_left[q_right[x]]), jr(twist.to_right[q_left[x]]))).collect();
    let c0 = least_coequalizing_nucleus(tq, &pairs)?;
    let c0_bar = least_coequalizing_nucleus(tq, &twisted)?;
    Ok(TwistedCoequalizers { involutive: is_involutive_nucleus(tq, &c0)?, equal: c0 == c0_bar })
}
