//! Quantale-valued presheaves and the enriched topologies they form: generation from a
//! subbase, interior, separation, filters with their limits, sobriety and subspaces.
//!
//! Presheaves take values in an ambient unital quantale, normally one of the strictly
//! quantized quantales from [`crate::sq2`], which keep Q₂ at indices `0..6`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::q2;
use crate::error::{Error, Result};
use crate::homs::{find_homs_with, HomFilter};
use crate::lattice::{Elem, FiniteLattice};
use crate::props::SubRole;
use crate::quantale::Quantale;
use crate::sq2::enumerate_strictly_quantized;

pub type Presheaf = Vec<Elem>;

/// Default bound on the number of opens a generated topology may have.
pub const DEFAULT_MAX_OPENS: usize = 4096;

/// Sweeps over every presheaf stop being exhaustive above this many presheaves.
pub const MAX_EXHAUSTIVE_PRESHEAVES: usize = 20_000;

/// The strictly quantized quantale used when none is named.
pub fn default_ambient() -> Quantale {
    enumerate_strictly_quantized().into_iter().next().expect("six strictly quantized quantales")
}

pub fn constant(points: usize, a: Elem) -> Presheaf {
    vec![a; points]
}

pub fn pointwise_join(q: &Quantale, f: &[Elem], g: &[Elem]) -> Presheaf {
    f.iter().zip(g).map(|(&a, &b)| q.join(a, b)).collect()
}

pub fn pointwise_mul(q: &Quantale, f: &[Elem], g: &[Elem]) -> Presheaf {
    f.iter().zip(g).map(|(&a, &b)| q.mul(a, b)).collect()
}

/// `f⋆α`.
pub fn act_right(q: &Quantale, f: &[Elem], a: Elem) -> Presheaf {
    f.iter().map(|&x| q.mul(x, a)).collect()
}

/// `α⋆f`.
pub fn act_left(q: &Quantale, a: Elem, f: &[Elem]) -> Presheaf {
    f.iter().map(|&x| q.mul(a, x)).collect()
}

pub fn pointwise_leq(q: &Quantale, f: &[Elem], g: &[Elem]) -> bool {
    f.iter().zip(g).all(|(&a, &b)| q.leq(a, b))
}

/// `⊤⋆f ≤ f` pointwise.
pub fn is_left_sided(q: &Quantale, f: &[Elem]) -> bool {
    f.iter().all(|&x| q.leq(q.mul(q.top(), x), x))
}

/// `f⋆⊤ ≤ f` pointwise.
pub fn is_right_sided(q: &Quantale, f: &[Elem]) -> bool {
    f.iter().all(|&x| q.leq(q.mul(x, q.top()), x))
}

fn pointwise_inv(inv: &[Elem], f: &[Elem]) -> Presheaf {
    f.iter().map(|&x| inv[x]).collect()
}

/// Closure of `gens` under finite joins, `⊥` included.
pub fn join_closure(q: &Quantale, points: usize, gens: impl IntoIterator<Item = Presheaf>) -> Vec<Presheaf> {
    let gens: BTreeSet<Presheaf> = gens.into_iter().collect();
    let mut out: BTreeSet<Presheaf> = BTreeSet::new();
    out.insert(constant(points, q.bottom()));
    for g in gens {
        let grown: Vec<Presheaf> = out.iter().map(|f| pointwise_join(q, f, &g)).collect();
        out.extend(grown);
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTopology {
    points: Vec<String>,
    ambient: Quantale,
    opens: Vec<Presheaf>,
    involutive: bool,
}

/// The least topology containing `subbase`: closed under joins, right action by every
/// ambient element, pointwise `⋆` and, when `involutive`, the pointwise involution.
pub fn generate_topology(points: Vec<String>, subbase: &[Presheaf], ambient: &Quantale, involutive: bool, cap: usize) -> Result<QTopology> {
    let n = points.len();
    if subbase.iter().any(|f| f.len() != n || f.iter().any(|&x| x >= ambient.len())) {
        return Err(Error::DomainMismatch);
    }
    let inv = if involutive { Some(ambient.involution().ok_or(Error::NoInvolution)?.to_vec()) } else { None };
    let mut seen: BTreeSet<Presheaf> = BTreeSet::new();
    let mut queue: Vec<Presheaf> = Vec::new();
    let mut done: Vec<Presheaf> = Vec::new();
    let seeds = [constant(n, ambient.top()), constant(n, ambient.bottom())];
    for f in seeds.into_iter().chain(subbase.iter().cloned()) {
        if seen.insert(f.clone()) {
            queue.push(f);
        }
    }
    while let Some(f) = queue.pop() {
        let mut fresh: Vec<Presheaf> = ambient.elements().map(|a| act_right(ambient, &f, a)).collect();
        if let Some(inv) = &inv {
            fresh.push(pointwise_inv(inv, &f));
        }
        done.push(f);
        let f = done.last().expect("just pushed");
        for g in &done {
            fresh.push(pointwise_join(ambient, f, g));
            fresh.push(pointwise_mul(ambient, f, g));
            fresh.push(pointwise_mul(ambient, g, f));
        }
        for h in fresh {
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return Err(Error::SizeCapExceeded { what: "opens", limit: cap });
                }
                queue.push(h);
            }
        }
    }
    let t = QTopology { points, ambient: ambient.clone(), opens: seen.into_iter().collect(), involutive };
    t.verify_axioms()?;
    Ok(t)
}

impl QTopology {
    /// A topology given by its opens, which are checked against the axioms.
    pub fn from_opens(points: Vec<String>, ambient: &Quantale, opens: Vec<Presheaf>, involutive: bool) -> Result<Self> {
        let n = points.len();
        if opens.iter().any(|f| f.len() != n || f.iter().any(|&x| x >= ambient.len())) {
            return Err(Error::DomainMismatch);
        }
        let mut opens = opens;
        opens.sort();
        opens.dedup();
        let t = Self { points, ambient: ambient.clone(), opens, involutive };
        t.verify_axioms()?;
        Ok(t)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len_points(&self) -> usize {
        self.points.len()
    }

    pub fn ambient(&self) -> &Quantale {
        &self.ambient
    }

    /// Opens in lexicographic order of their value tuples.
    pub fn opens(&self) -> &[Presheaf] {
        &self.opens
    }

    pub fn is_involutive(&self) -> bool {
        self.involutive
    }

    /// Every open takes values in Q₂.
    pub fn is_quantized(&self) -> bool {
        self.opens.iter().flatten().all(|&x| x < q2::NAMES.len())
    }

    pub fn index_of(&self, f: &[Elem]) -> Option<usize> {
        self.opens.binary_search_by(|g| g.as_slice().cmp(f)).ok()
    }

    pub fn contains(&self, f: &[Elem]) -> bool {
        self.index_of(f).is_some()
    }

    pub fn constant(&self, a: Elem) -> Presheaf {
        constant(self.points.len(), a)
    }

    /// `[v₁,…,vₙ]` with element names in point order.
    pub fn show(&self, f: &[Elem]) -> String {
        let vals: Vec<&str> = f.iter().map(|&x| self.ambient.elem_name(x)).collect();
        format!("[{}]", vals.join(","))
    }

    /// Re-checks every closure condition on the stored opens.
    pub fn verify_axioms(&self) -> Result<()> {
        let q = &self.ambient;
        let n = self.points.len();
        let fail = |what: &str, f: &[Elem]| Err(Error::HypothesisFailed(format!("topology not closed under {what} at {}", self.show(f))));
        for c in [q.top(), q.bottom()] {
            if !self.contains(&constant(n, c)) {
                return fail("constants", &constant(n, c));
            }
        }
        let inv = if self.involutive { Some(q.involution().ok_or(Error::NoInvolution)?) } else { None };
        for f in &self.opens {
            if let Some(a) = q.elements().find(|&a| !self.contains(&act_right(q, f, a))) {
                return fail(&format!("right action by {}", q.elem_name(a)), f);
            }
            if inv.is_some_and(|inv| !self.contains(&pointwise_inv(inv, f))) {
                return fail("involution", f);
            }
            for g in &self.opens {
                if !self.contains(&pointwise_join(q, f, g)) {
                    return fail("joins", f);
                }
                if !self.contains(&pointwise_mul(q, f, g)) {
                    return fail("products", f);
                }
            }
        }
        Ok(())
    }

    /// The opens as a quantale under the pointwise order and product, with the pointwise
    /// involution when the topology is involutive.
    pub fn to_quantale(&self) -> Result<Quantale> {
        let q = &self.ambient;
        let names: Vec<String> = self.opens.iter().map(|f| self.show(f)).collect();
        let lattice = FiniteLattice::from_fn(names, |i, j| pointwise_leq(q, &self.opens[i], &self.opens[j]))?;
        let m = self.opens.len();
        let idx = |f: Presheaf| self.index_of(&f).expect("closed under products");
        let mult = (0..m * m).map(|k| idx(pointwise_mul(q, &self.opens[k / m], &self.opens[k % m]))).collect();
        let inv = if self.involutive {
            let inv = q.involution().ok_or(Error::NoInvolution)?;
            Some(self.opens.iter().map(|f| idx(pointwise_inv(inv, f))).collect())
        } else {
            None
        };
        Quantale::new(format!("T({})", self.points.len()), lattice, mult, None, inv)
    }

    /// Join-irreducible opens: nonzero and not the join of the opens strictly below.
    pub fn base(&self) -> Vec<Presheaf> {
        let q = &self.ambient;
        let bot = self.constant(q.bottom());
        self.opens
            .iter()
            .filter(|f| {
                let below = self.opens.iter().filter(|g| g != f && pointwise_leq(q, g, f)).fold(bot.clone(), |acc, g| pointwise_join(q, &acc, g));
                below != **f
            })
            .cloned()
            .collect()
    }

    /// The largest open below `f`.
    pub fn interior(&self, f: &[Elem]) -> Presheaf {
        let q = &self.ambient;
        self.opens
            .iter()
            .filter(|g| pointwise_leq(q, g, f))
            .fold(self.constant(q.bottom()), |acc, g| pointwise_join(q, &acc, g))
    }

    /// `ν_x(f)`: the value at `x` of the interior of `f`.
    pub fn neighborhood(&self, x: usize, f: &[Elem]) -> Elem {
        self.interior(f)[x]
    }

    /// `{f∘φ : f open}` for an injective `φ` from the new points into the old.
    pub fn subspace(&self, phi: &[usize]) -> Result<QTopology> {
        let mut sorted = phi.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotInjective);
        }
        if phi.iter().any(|&x| x >= self.points.len()) {
            return Err(Error::DomainMismatch);
        }
        let points = phi.iter().map(|&x| self.points[x].clone()).collect();
        let opens = self.opens.iter().map(|f| phi.iter().map(|&x| f[x]).collect()).collect();
        QTopology::from_opens(points, &self.ambient, opens, self.involutive)
    }

    /// Number of presheaves on the points, when small enough to sweep.
    fn universe(&self) -> Result<Universe> {
        Universe::new(self.ambient.len(), self.points.len())
    }
}

#[derive(Clone, Copy, Debug)]
struct Universe {
    base: usize,
    points: usize,
    size: usize,
}

impl Universe {
    fn new(base: usize, points: usize) -> Result<Self> {
        let size = (0..points)
            .try_fold(1usize, |acc, _| acc.checked_mul(base).filter(|&s| s <= MAX_EXHAUSTIVE_PRESHEAVES))
            .ok_or(Error::SizeCapExceeded { what: "presheaves", limit: MAX_EXHAUSTIVE_PRESHEAVES })?;
        Ok(Self { base, points, size })
    }

    fn decode(&self, mut code: usize) -> Presheaf {
        (0..self.points)
            .map(|_| {
                let v = code % self.base;
                code /= self.base;
                v
            })
            .collect()
    }

    fn encode(&self, f: &[Elem]) -> usize {
        f.iter().rev().fold(0, |acc, &v| acc * self.base + v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionCharacterization {
    /// The opens are closed under the pointwise involution.
    pub closed_under_involution: bool,
    /// `I(f)′ ≤ I(f′)` for every presheaf checked.
    pub interior_inequality: bool,
    /// `I(f)′ = I(f′)` for every presheaf checked.
    pub interior_equality: bool,
    /// A presheaf breaking the inequality.
    pub witness: Option<Presheaf>,
    /// Presheaves were sampled rather than enumerated.
    pub sampled: bool,
}

impl InvolutionCharacterization {
    pub fn agree(&self) -> bool {
        self.closed_under_involution == self.interior_inequality && self.interior_inequality == self.interior_equality
    }
}

/// Compares closure of the opens under `′` with the two interior conditions over every
/// presheaf, or over `samples` seeded random ones when there are too many.
pub fn involution_by_interior(t: &QTopology, seed: u64, samples: usize) -> Result<InvolutionCharacterization> {
    let q = &t.ambient;
    let inv = q.involution().ok_or(Error::NoInvolution)?;
    let closed_under_involution = t.opens.iter().all(|f| t.contains(&pointwise_inv(inv, f)));
    let presheaves: Vec<Presheaf> = match t.universe() {
        Ok(u) => (0..u.size).map(|c| u.decode(c)).collect(),
        Err(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (0..t.points.len()).map(|_| rng.next_u64() as usize % q.len()).collect()).collect()
        }
    };
    let sampled = t.universe().is_err();
    let mut witness = None;
    let mut interior_equality = true;
    for f in &presheaves {
        let lhs = pointwise_inv(inv, &t.interior(f));
        let rhs = t.interior(&pointwise_inv(inv, f));
        if witness.is_none() && !pointwise_leq(q, &lhs, &rhs) {
            witness = Some(f.clone());
        }
        interior_equality &= lhs == rhs;
    }
    Ok(InvolutionCharacterization { closed_under_involution, interior_inequality: witness.is_none(), interior_equality, witness, sampled })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparationReport {
    pub t0: bool,
    /// Unordered pairs `x < y` no open tells apart.
    pub t0_failures: Vec<(usize, usize)>,
    pub frechet: bool,
    pub frechet_failures: Vec<(usize, usize)>,
    pub hausdorff: bool,
    pub hausdorff_failures: Vec<(usize, usize)>,
    pub strong_hausdorff: bool,
    /// Ordered pairs `(x, y)` with `f₂(y)⋆f₁(x) ≤ ⋁_z f₂(z)⋆f₁(z)` for every left-sided open
    /// `f₁` and right-sided open `f₂`.
    pub strong_hausdorff_failures: Vec<(usize, usize)>,
}

/// Decides each separation axiom independently by exhaustive search over point pairs and opens.
pub fn separation_report(t: &QTopology) -> SeparationReport {
    let q = &t.ambient;
    let n = t.points.len();
    let opens = &t.opens;
    let sup = |f1: &[Elem], f2: &[Elem]| q.join_all((0..n).map(|z| q.mul(f1[z], f2[z])));
    let mut r = SeparationReport::default();
    for x in 0..n {
        for y in x + 1..n {
            if !opens.iter().any(|f| f[x] != f[y]) {
                r.t0_failures.push((x, y));
            }
            let one = |a: usize, b: usize| opens.iter().any(|f| !q.leq(f[a], f[b]));
            if !(one(x, y) && one(y, x)) {
                r.frechet_failures.push((x, y));
            }
            let t2 = opens.iter().any(|f1| {
                opens.iter().any(|f2| !q.leq(q.mul(f1[x], f2[y]), sup(f1, f2)) || !q.leq(q.mul(f2[y], f1[x]), sup(f2, f1)))
            });
            if !t2 {
                r.hausdorff_failures.push((x, y));
            }
        }
    }
    let lefts: Vec<&Presheaf> = opens.iter().filter(|f| is_left_sided(q, f)).collect();
    let rights: Vec<&Presheaf> = opens.iter().filter(|f| is_right_sided(q, f)).collect();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let separated = lefts.iter().any(|f1| rights.iter().any(|f2| !q.leq(q.mul(f2[y], f1[x]), sup(f2, f1))));
            if !separated {
                r.strong_hausdorff_failures.push((x, y));
            }
        }
    }
    r.t0 = r.t0_failures.is_empty();
    r.frechet = r.frechet_failures.is_empty();
    r.hausdorff = r.hausdorff_failures.is_empty();
    r.strong_hausdorff = r.strong_hausdorff_failures.is_empty();
    r
}

/// A map from all presheaves on the points to the ambient, tabulated by presheaf code
/// (the value at point `x` is digit `x` in base `|ambient|`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFilter {
    pub table: Vec<Elem>,
}

/// Precomputed presheaf universe of a topology, for working with filters.
pub struct FilterSpace<'a> {
    t: &'a QTopology,
    u: Universe,
    presheaves: Vec<Presheaf>,
    /// `⋁_x f(x)`.
    sup: Vec<Elem>,
    /// `ν_x(f)`, indexed `[x][code]`.
    nu: Vec<Vec<Elem>>,
    left: Vec<bool>,
    right: Vec<bool>,
    /// Codes `g` obtained from `f` by raising one value to an upper cover.
    up_steps: Vec<Vec<usize>>,
    /// `f⋆α`, indexed `[code * |Q| + α]`.
    actions: Vec<usize>,
    top: usize,
}

impl<'a> FilterSpace<'a> {
    pub fn new(t: &'a QTopology) -> Result<Self> {
        let q = &t.ambient;
        let u = t.universe()?;
        let presheaves: Vec<Presheaf> = (0..u.size).map(|c| u.decode(c)).collect();
        let interiors: Vec<Presheaf> = presheaves.iter().map(|f| t.interior(f)).collect();
        let nu = (0..u.points).map(|x| interiors.iter().map(|i| i[x]).collect()).collect();
        let mut upper: Vec<Vec<Elem>> = vec![Vec::new(); q.len()];
        for (a, b) in q.lattice().hasse() {
            upper[a].push(b);
        }
        let up_steps = presheaves
            .iter()
            .map(|f| {
                let mut out = Vec::new();
                for x in 0..u.points {
                    for &v in &upper[f[x]] {
                        let mut g = f.clone();
                        g[x] = v;
                        out.push(u.encode(&g));
                    }
                }
                out
            })
            .collect();
        let actions = presheaves.iter().flat_map(|f| q.elements().map(|a| u.encode(&act_right(q, f, a)))).collect();
        Ok(Self {
            actions,
            sup: presheaves.iter().map(|f| q.join_all(f.iter().copied())).collect(),
            left: presheaves.iter().map(|f| is_left_sided(q, f)).collect(),
            right: presheaves.iter().map(|f| is_right_sided(q, f)).collect(),
            top: u.encode(&t.constant(q.top())),
            nu,
            up_steps,
            presheaves,
            u,
            t,
        })
    }

    pub fn len(&self) -> usize {
        self.u.size
    }

    pub fn is_empty(&self) -> bool {
        self.u.size == 0
    }

    pub fn presheaf(&self, code: usize) -> &[Elem] {
        &self.presheaves[code]
    }

    pub fn code(&self, f: &[Elem]) -> usize {
        self.u.encode(f)
    }

    fn q(&self) -> &Quantale {
        &self.t.ambient
    }

    fn mul_code(&self, f: usize, g: usize) -> usize {
        let q = self.q();
        self.presheaves[f].iter().zip(&self.presheaves[g]).rev().fold(0, |acc, (&a, &b)| acc * self.u.base + q.mul(a, b))
    }

    fn act_code(&self, f: usize, a: Elem) -> usize {
        self.actions[f * self.q().len() + a]
    }

    /// Isotone, (F0) `ω(f)⋆α ≤ ω(f⋆α)`, (F1) `ω(⊤) = ⊤`, (F2) `ω(f₁)⋆ω(f₂) ≤ ω(f₁⋆f₂)`
    /// and (F3) `ω(f) ≤ ⋁_x f(x)`.
    pub fn validate(&self, w: &QFilter) -> Result<()> {
        let q = self.q();
        let show = |c: usize| self.t.show(&self.presheaves[c]);
        if w.table.len() != self.u.size || w.table.iter().any(|&v| v >= q.len()) {
            return Err(Error::DomainMismatch);
        }
        for f in 0..self.u.size {
            if let Some(&g) = self.up_steps[f].iter().find(|&&g| !q.leq(w.table[f], w.table[g])) {
                return Err(Error::NotAFilter("isotone", format!("{} <= {}", show(f), show(g))));
            }
            if let Some(a) = q.elements().find(|&a| !q.leq(q.mul(w.table[f], a), w.table[self.act_code(f, a)])) {
                return Err(Error::NotAFilter("F0", format!("{} acted on by {}", show(f), q.elem_name(a))));
            }
            if !q.leq(w.table[f], self.sup[f]) {
                return Err(Error::NotAFilter("F3", show(f)));
            }
        }
        if w.table[self.top] != q.top() {
            return Err(Error::NotAFilter("F1", show(self.top)));
        }
        for f in 0..self.u.size {
            for g in 0..self.u.size {
                if !q.leq(q.mul(w.table[f], w.table[g]), w.table[self.mul_code(f, g)]) {
                    return Err(Error::NotAFilter("F2", format!("{} and {}", show(f), show(g))));
                }
            }
        }
        Ok(())
    }

    /// `(left limits, right limits)`: `x` with `ν_x(f) ≤ ω(f)` for every left-sided
    /// (respectively right-sided) presheaf `f`.
    pub fn limits(&self, w: &QFilter) -> (Vec<usize>, Vec<usize>) {
        let q = self.q();
        let lim = |sided: &[bool]| -> Vec<usize> {
            (0..self.u.points).filter(|&x| (0..self.u.size).all(|f| !sided[f] || q.leq(self.nu[x][f], w.table[f]))).collect()
        };
        (lim(&self.left), lim(&self.right))
    }

    /// `ω(h) = ⋁{g(y)⋆f(x) : f left-sided open, g right-sided open, g⋆f ≤ h}`.
    pub fn separating_filter(&self, x: usize, y: usize) -> QFilter {
        let q = self.q();
        let opens = &self.t.opens;
        let lefts: Vec<&Presheaf> = opens.iter().filter(|f| is_left_sided(q, f)).collect();
        let rights: Vec<&Presheaf> = opens.iter().filter(|f| is_right_sided(q, f)).collect();
        let mut gens: Vec<(Presheaf, Elem)> = Vec::new();
        for f in &lefts {
            for g in &rights {
                gens.push((pointwise_mul(q, g, f), q.mul(g[y], f[x])));
            }
        }
        let table = self
            .presheaves
            .iter()
            .map(|h| q.join_all(gens.iter().filter(|(k, _)| pointwise_leq(q, k, h)).map(|&(_, v)| v)))
            .collect();
        QFilter { table }
    }

    /// Raises `w` to the least table above it that is isotone and satisfies F0, F1, F2.
    fn close(&self, w: &mut [Elem]) {
        let q = self.q();
        let bot = q.bottom();
        w[self.top] = q.top();
        let mut queued: Vec<bool> = w.iter().map(|&v| v != bot).collect();
        let mut queue: Vec<usize> = (0..self.u.size).filter(|&f| queued[f]).collect();
        let raise = |w: &mut [Elem], queue: &mut Vec<usize>, queued: &mut [bool], c: usize, v: Elem| {
            let j = q.join(w[c], v);
            if j != w[c] {
                w[c] = j;
                if !core::mem::replace(&mut queued[c], true) {
                    queue.push(c);
                }
            }
        };
        while let Some(f) = queue.pop() {
            queued[f] = false;
            let wf = w[f];
            for &g in &self.up_steps[f] {
                raise(w, &mut queue, &mut queued, g, wf);
            }
            for a in q.elements() {
                raise(w, &mut queue, &mut queued, self.actions[f * q.len() + a], q.mul(wf, a));
            }
            for g in 0..self.u.size {
                let wg = w[g];
                if wg != bot {
                    raise(w, &mut queue, &mut queued, self.mul_code(f, g), q.mul(wf, wg));
                    raise(w, &mut queue, &mut queued, self.mul_code(g, f), q.mul(wg, w[f]));
                }
            }
        }
    }

    /// The least isotone table with F0–F2 having `x` as a left limit and `y` as a right
    /// limit. Some filter has these limits exactly when this table also satisfies F3.
    pub fn least_with_limits(&self, x: usize, y: usize) -> QFilter {
        let q = self.q();
        let mut w: Vec<Elem> = (0..self.u.size)
            .map(|f| {
                let mut v = q.bottom();
                if self.left[f] {
                    v = q.join(v, self.nu[x][f]);
                }
                if self.right[f] {
                    v = q.join(v, self.nu[y][f]);
                }
                v
            })
            .collect();
        self.close(&mut w);
        QFilter { table: w }
    }

    pub fn satisfies_f3(&self, w: &QFilter) -> bool {
        (0..self.u.size).all(|f| self.q().leq(w.table[f], self.sup[f]))
    }

    /// A filter generated by a few random lower bounds, or `None` if the closure breaks F3.
    pub fn random_filter(&self, rng: &mut ChaCha8Rng) -> Option<QFilter> {
        let q = self.q();
        let mut w = vec![q.bottom(); self.u.size];
        for _ in 0..=(rng.next_u32() % 3) {
            let f = rng.next_u64() as usize % self.u.size;
            let below: Vec<Elem> = q.elements().filter(|&v| q.leq(v, self.sup[f])).collect();
            w[f] = q.join(w[f], below[rng.next_u64() as usize % below.len()]);
        }
        self.close(&mut w);
        let w = QFilter { table: w };
        self.satisfies_f3(&w).then_some(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub strong_hausdorff: bool,
    /// Ordered pairs `x ≠ y` for which some filter has left limit `x` and right limit `y`.
    pub limit_pairs: Vec<(usize, usize)>,
    /// Each pair failing strong separation got a valid separating filter with those limits.
    pub separating_filters_ok: bool,
    /// Random filters drawn, and how many of them were valid.
    pub sampled: usize,
    pub sampled_valid: usize,
    /// Distinct left/right limit pairs met while sampling that the exact search missed.
    pub sampled_unexplained: Vec<(usize, usize)>,
}

impl ConvergenceReport {
    /// Strong separation holds exactly when no filter has distinct left and right limits.
    pub fn holds(&self) -> bool {
        self.strong_hausdorff == self.limit_pairs.is_empty() && self.separating_filters_ok && self.sampled_unexplained.is_empty()
    }
}

/// Compares strong separation with uniqueness of limits. The filter side is decided exactly
/// per point pair through [`FilterSpace::least_with_limits`] and cross-checked on
/// `samples` seeded random filters.
pub fn convergence_check(t: &QTopology, seed: u64, samples: usize) -> Result<ConvergenceReport> {
    let fs = FilterSpace::new(t)?;
    let sep = separation_report(t);
    let n = t.points.len();
    let mut limit_pairs = Vec::new();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            if fs.satisfies_f3(&fs.least_with_limits(x, y)) {
                limit_pairs.push((x, y));
            }
        }
    }
    let separating_filters_ok = sep.strong_hausdorff_failures.iter().all(|&(x, y)| {
        let w = fs.separating_filter(x, y);
        let (l, r) = fs.limits(&w);
        fs.validate(&w).is_ok() && l.contains(&x) && r.contains(&y)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled_valid = 0;
    let mut sampled_unexplained = Vec::new();
    for _ in 0..samples {
        if let Some(w) = fs.random_filter(&mut rng) {
            sampled_valid += 1;
            let (l, r) = fs.limits(&w);
            for &x in &l {
                for &y in r.iter().filter(|&&y| y != x) {
                    if !limit_pairs.contains(&(x, y)) && !sampled_unexplained.contains(&(x, y)) {
                        sampled_unexplained.push((x, y));
                    }
                }
            }
        }
    }
    Ok(ConvergenceReport {
        strong_hausdorff: sep.strong_hausdorff,
        limit_pairs,
        separating_filters_ok,
        sampled: samples,
        sampled_valid,
        sampled_unexplained,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoberReport {
    pub t0: bool,
    /// Strong involutive homomorphisms into `S` that are right-module maps, as `S` values
    /// in the order of the opens.
    pub homs: Vec<Vec<Elem>>,
    /// For each entry of `homs`, the points at which it is evaluation.
    pub representing_points: Vec<Vec<usize>>,
    pub sober: bool,
}

/// Checks that the topology is T0 and every strong involutive homomorphism `K` from the
/// opens into `S` with `K(f⋆α) = K(f)⋆α` is evaluation at a point.
pub fn sober_check(t: &QTopology, s: &[Elem]) -> Result<SoberReport> {
    if !t.involutive {
        return Err(Error::HypothesisFailed("involutive topology".into()));
    }
    let q = &t.ambient;
    let sub = q.subquantale(s, SubRole::Custom, "S")?;
    if sub.quantale.involution().is_none() {
        return Err(Error::HypothesisFailed("S closed under the involution".into()));
    }
    if sub.elements.iter().any(|&x| q.elements().any(|a| sub.local(q.mul(x, a)).is_none())) {
        return Err(Error::HypothesisFailed("S a right submodule of the ambient".into()));
    }
    let tq = t.to_quantale()?;
    let acts: Vec<Vec<usize>> = t.opens.iter().map(|f| q.elements().map(|a| t.index_of(&act_right(q, f, a)).expect("closed")).collect()).collect();
    let found = find_homs_with(&tq, &sub.quantale, HomFilter { strong: true, involutive: true, ..HomFilter::default() }, |k| {
        acts.iter().enumerate().all(|(i, row)| q.elements().all(|a| sub.parent(k[row[a]]) == q.mul(sub.parent(k[i]), a)))
    });
    let homs: Vec<Vec<Elem>> = found.into_iter().map(|k| k.into_iter().map(|v| sub.parent(v)).collect()).collect();
    let representing_points: Vec<Vec<usize>> = homs
        .iter()
        .map(|k| (0..t.points.len()).filter(|&p| t.opens.iter().zip(k).all(|(f, &v)| f[p] == v)).collect())
        .collect();
    let t0 = separation_report(t).t0;
    let sober = t0 && representing_points.iter().all(|p| p.len() == 1);
    Ok(SoberReport { t0, homs, representing_points, sober })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q2Submodule {
    pub elements: Vec<Elem>,
    pub involutive: bool,
    pub subquantale: bool,
}

/// Subsets of Q₂ containing `⊥` and `⊤` that are closed under joins and under right
/// action by every element of `ambient`.
pub fn submodules_of_q2(ambient: &Quantale) -> Vec<Q2Submodule> {
    let n = q2::NAMES.len();
    let inv = ambient.involution();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let has = |x: Elem| x < n && mask & (1 << x) != 0;
        if !has(q2::BOT) || !has(q2::TOP) {
            continue;
        }
        let els: Vec<Elem> = (0..n).filter(|&x| has(x)).collect();
        let closed = els.iter().all(|&a| els.iter().all(|&b| has(ambient.join(a, b))) && ambient.elements().all(|c| has(ambient.mul(a, c))));
        if closed {
            out.push(Q2Submodule {
                involutive: inv.is_some_and(|inv| els.iter().all(|&a| has(inv[a]))),
                subquantale: els.iter().all(|&a| els.iter().all(|&b| has(ambient.mul(a, b)))),
                elements: els,
            });
        }
    }
    out
}
