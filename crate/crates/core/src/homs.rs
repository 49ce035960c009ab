//! Homomorphism checks and searches: morphisms, isomorphisms, involutions, and maps into Q₂.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::{self, q2};
use crate::construct::semi_unitalization;
use crate::error::{Error, Result};
use crate::lattice::{join_violation, Elem, FiniteLattice, JiSearch, SupMap};
use crate::quantale::Quantale;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    Hom,
    /// A homomorphism sending `⊤` to `⊤`.
    StrongHom,
    /// `h(a⋆b) = h(b)⋆h(a)`.
    AntiHom,
    /// A homomorphism commuting with both involutions.
    InvolutiveHom,
}

/// The first law `h` breaks, described with element names, or `None`.
pub fn hom_violation(dom: &Quantale, cod: &Quantale, h: &[Elem], kind: HomKind) -> Result<Option<String>> {
    if h.len() != dom.len() || h.iter().any(|&x| x >= cod.len()) {
        return Err(Error::DomainMismatch);
    }
    if kind == HomKind::InvolutiveHom && (dom.involution().is_none() || cod.involution().is_none()) {
        return Err(Error::StructureMissing("involution"));
    }
    if let Some(e) = join_violation(dom.lattice(), cod.lattice(), h) {
        return Ok(Some(format!("{e}")));
    }
    let n = |a: Elem| dom.elem_name(a);
    for a in dom.elements() {
        for b in dom.elements() {
            let want = match kind {
                HomKind::AntiHom => cod.mul(h[b], h[a]),
                _ => cod.mul(h[a], h[b]),
            };
            if h[dom.mul(a, b)] != want {
                return Ok(Some(format!("product of {} and {}", n(a), n(b))));
            }
        }
    }
    if kind == HomKind::StrongHom && h[dom.top()] != cod.top() {
        return Ok(Some(format!("{} is not sent to the top", n(dom.top()))));
    }
    if kind == HomKind::InvolutiveHom {
        let (di, ci) = (dom.involution().expect("checked"), cod.involution().expect("checked"));
        if let Some(a) = dom.elements().find(|&a| h[di[a]] != ci[h[a]]) {
            return Ok(Some(format!("involution at {}", n(a))));
        }
    }
    Ok(None)
}

pub fn hom_check(dom: &Quantale, cod: &Quantale, h: &[Elem], kind: HomKind) -> Result<bool> {
    Ok(hom_violation(dom, cod, h, kind)?.is_none())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HomFilter {
    pub strong: bool,
    pub involutive: bool,
    pub injective: bool,
    /// Stop after this many results.
    pub limit: Option<usize>,
}

/// Every quantale homomorphism `dom → cod` passing `filter`, in search order.
pub fn find_homs(dom: &Quantale, cod: &Quantale, filter: HomFilter) -> Vec<Vec<Elem>> {
    find_homs_with(dom, cod, filter, |_| true)
}

/// As [`find_homs`], with an extra predicate on complete maps.
pub fn find_homs_with(dom: &Quantale, cod: &Quantale, filter: HomFilter, mut keep: impl FnMut(&[Elem]) -> bool) -> Vec<Vec<Elem>> {
    let search = JiSearch::new(dom.lattice(), cod.lattice());
    let steps = search.steps();
    let mut products = vec![Vec::new(); steps + 1];
    for a in dom.elements() {
        for b in dom.elements() {
            let ab = dom.mul(a, b);
            let k = search.det_step(a).max(search.det_step(b)).max(search.det_step(ab));
            products[k].push((a, b, ab));
        }
    }
    let stars: Vec<Vec<(Elem, Elem)>> = match (filter.involutive, dom.involution(), cod.involution()) {
        (true, Some(di), Some(_)) => {
            let mut v = vec![Vec::new(); steps + 1];
            for a in dom.elements() {
                v[search.det_step(a).max(search.det_step(di[a]))].push((a, di[a]));
            }
            v
        }
        (true, _, _) => return Vec::new(),
        _ => vec![Vec::new(); steps + 1],
    };
    let top_step = search.det_step(dom.top());
    let ci = cod.involution();
    let mut out = Vec::new();
    search.run(
        |k, t| {
            products[k].iter().all(|&(a, b, ab)| t[ab] == cod.mul(t[a], t[b]))
                && (!filter.strong || k != top_step || t[dom.top()] == cod.top())
                && stars[k].iter().all(|&(a, s)| t[s] == ci.expect("involutive filter")[t[a]])
        },
        |t| {
            if (!filter.injective || SupMap::trusted(t.to_vec(), cod.len()).is_injective()) && keep(t) {
                out.push(t.to_vec());
            }
            filter.limit.map_or(true, |l| out.len() < l)
        },
    );
    out
}

fn invariants(l: &FiniteLattice, q: Option<&Quantale>, with_inv: bool) -> Vec<Vec<usize>> {
    l.elements()
        .map(|x| {
            let mut v = vec![
                l.down_set(x).count_ones(..),
                l.up_set(x).count_ones(..),
                l.lower_covers(x).len(),
            ];
            if let Some(q) = q {
                let t = q.top();
                let h = |y: Elem| l.down_set(y).count_ones(..);
                v.extend([
                    h(q.mul(x, x)),
                    h(q.mul(x, t)),
                    h(q.mul(t, x)),
                    q.elements().filter(|&y| q.mul(x, y) == q.bottom()).count(),
                    q.elements().filter(|&y| q.mul(y, x) == q.bottom()).count(),
                    q.elements().filter(|&y| q.mul(x, y) == x).count(),
                    q.elements().filter(|&y| q.mul(y, x) == x).count(),
                ]);
                if with_inv {
                    v.push(usize::from(q.involution().is_some_and(|i| i[x] == x)));
                }
            }
            v
        })
        .collect()
}

struct IsoSearch<'a> {
    la: &'a FiniteLattice,
    lb: &'a FiniteLattice,
    qa: Option<&'a Quantale>,
    qb: Option<&'a Quantale>,
    with_inv: bool,
    order: Vec<Elem>,
    cands: Vec<Vec<Elem>>,
}

impl IsoSearch<'_> {
    fn consistent(&self, f: &[Elem], x: Elem) -> bool {
        let y = f[x];
        let assigned = |z: Elem| f[z] != usize::MAX;
        for z in self.la.elements().filter(|&z| assigned(z)) {
            if self.la.leq(x, z) != self.lb.leq(y, f[z]) || self.la.leq(z, x) != self.lb.leq(f[z], y) {
                return false;
            }
        }
        if let (Some(qa), Some(qb)) = (self.qa, self.qb) {
            for u in qa.elements().filter(|&u| assigned(u)) {
                for v in qa.elements().filter(|&v| assigned(v)) {
                    let uv = qa.mul(u, v);
                    if (u == x || v == x || uv == x) && assigned(uv) && f[uv] != qb.mul(f[u], f[v]) {
                        return false;
                    }
                }
            }
            if self.with_inv {
                let (ia, ib) = (qa.involution().expect("inv"), qb.involution().expect("inv"));
                if assigned(ia[x]) && f[ia[x]] != ib[y] {
                    return false;
                }
                if let Some(z) = qa.elements().find(|&z| ia[z] == x) {
                    if assigned(z) && f[x] != ib[f[z]] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(&self, k: usize, f: &mut Vec<Elem>, used: &mut Vec<bool>, out: &mut Vec<Vec<Elem>>, limit: usize) {
        if k == self.order.len() {
            out.push(f.clone());
            return;
        }
        let x = self.order[k];
        for &y in &self.cands[x] {
            if used[y] {
                continue;
            }
            f[x] = y;
            used[y] = true;
            if self.consistent(f, x) {
                self.go(k + 1, f, used, out, limit);
            }
            used[y] = false;
            f[x] = usize::MAX;
            if out.len() >= limit {
                return;
            }
        }
    }
}

fn isomorphisms_inner(
    la: &FiniteLattice,
    lb: &FiniteLattice,
    qa: Option<&Quantale>,
    qb: Option<&Quantale>,
    with_inv: bool,
    limit: usize,
) -> Vec<Vec<Elem>> {
    if la.len() != lb.len() {
        return Vec::new();
    }
    let (ia, ib) = (invariants(la, qa, with_inv), invariants(lb, qb, with_inv));
    let cands: Vec<Vec<Elem>> = la.elements().map(|x| lb.elements().filter(|&y| ia[x] == ib[y]).collect()).collect();
    if cands.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let s = IsoSearch { la, lb, qa, qb, with_inv, order: la.linear_extension(), cands };
    let mut out = Vec::new();
    s.go(0, &mut vec![usize::MAX; la.len()], &mut vec![false; lb.len()], &mut out, limit);
    out
}

/// Order isomorphisms `a → b` (at most `limit`).
pub fn order_isomorphisms(a: &FiniteLattice, b: &FiniteLattice, limit: usize) -> Vec<Vec<Elem>> {
    isomorphisms_inner(a, b, None, None, false, limit)
}

/// Quantale isomorphisms `a → b`; with `with_involution` they must also commute with
/// the involutions, which both sides must then carry.
pub fn quantale_isomorphisms(a: &Quantale, b: &Quantale, with_involution: bool, limit: usize) -> Vec<Vec<Elem>> {
    if with_involution && (a.involution().is_none() || b.involution().is_none()) {
        return Vec::new();
    }
    isomorphisms_inner(a.lattice(), b.lattice(), Some(a), Some(b), with_involution, limit)
}

pub fn find_isomorphism(a: &Quantale, b: &Quantale, with_involution: bool) -> Option<Vec<Elem>> {
    quantale_isomorphisms(a, b, with_involution, 1).pop()
}

pub fn is_isomorphic(a: &Quantale, b: &Quantale, with_involution: bool) -> bool {
    find_isomorphism(a, b, with_involution).is_some()
}

/// Every involution on `q`, found among the order automorphisms of its lattice.
pub fn find_involutions(q: &Quantale) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = order_isomorphisms(q.lattice(), q.lattice(), usize::MAX)
        .into_iter()
        .filter(|f| q.is_involution(f))
        .collect();
    out.sort();
    out
}

/// The map `Q → Q₂` induced by a prime `p`. A semi-unital `Q` needs `p` prime; otherwise
/// `p` must be strongly prime and the map is the restriction of the one on the
/// semi-unitalization. The target uses the indices of [`catalog::q2`].
pub fn h_p(q: &Quantale, p: Elem) -> Result<SupMap> {
    let table = if q.is_semi_unital() {
        if !q.is_prime(p) {
            return Err(Error::NotPrime(q.elem_name(p).into()));
        }
        h_p_table(q, p)
    } else {
        if !q.is_strongly_prime(p) {
            return Err(Error::NotPrime(q.elem_name(p).into()));
        }
        let hat = semi_unitalization(q);
        let mut t = h_p_table(&hat, p);
        t.truncate(q.len());
        t
    };
    let target = catalog::q2();
    if let Some(w) = hom_violation(q, &target, &table, HomKind::StrongHom)? {
        return Err(Error::NotAHom(w));
    }
    let h = SupMap::trusted(table, target.len());
    if q.join_all(q.elements().filter(|&a| target.leq(h.apply(a), q2::C))) != p {
        return Err(Error::HypothesisFailed(format!("h_p does not recover {}", q.elem_name(p))));
    }
    Ok(h)
}

fn h_p_table(q: &Quantale, p: Elem) -> Vec<Elem> {
    let t = q.top();
    q.elements()
        .map(|a| {
            let (at, ta) = (q.leq(q.mul(a, t), p), q.leq(q.mul(t, a), p));
            if q.leq(q.mul3(t, a, t), p) {
                q2::BOT
            } else if at && ta {
                q2::B
            } else if !at && ta {
                q2::AL
            } else if at && !ta {
                q2::AR
            } else if q.leq(a, p) {
                q2::C
            } else {
                q2::TOP
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongHomsReport {
    /// All strong homomorphisms into Q₂.
    pub homs: Vec<Vec<Elem>>,
    /// `h ↦ h^⊢(c)`, aligned with `homs`.
    pub primes: Vec<Elem>,
    pub strong_spectrum: Vec<Elem>,
    /// `h ↦ h^⊢(c)` is a bijection onto `σ_s(Q)` inverted by `p ↦ h_p`.
    pub bijective: bool,
    /// Primes of the involutive homs, when `Q` carries an involution.
    pub involutive_primes: Option<Vec<Elem>>,
}

pub fn strong_homs_to_q2(q: &Quantale) -> StrongHomsReport {
    let target = catalog::q2();
    let homs = find_homs(q, &target, HomFilter { strong: true, ..HomFilter::default() });
    let primes: Vec<Elem> = homs
        .iter()
        .map(|h| q.join_all(q.elements().filter(|&a| target.leq(h[a], q2::C))))
        .collect();
    let strong_spectrum = q.strong_spectrum();
    let mut sorted = primes.clone();
    sorted.sort_unstable();
    let round_trip = homs
        .iter()
        .zip(&primes)
        .all(|(h, &p)| h_p(q, p).is_ok_and(|m| m.table() == h.as_slice()));
    let bijective = sorted == strong_spectrum && round_trip;
    let involutive_primes = q.involution().map(|_| {
        let mut v: Vec<Elem> = homs
            .iter()
            .zip(&primes)
            .filter(|(h, _)| hom_check(q, &target, h, HomKind::InvolutiveHom).unwrap_or(false))
            .map(|(_, &p)| p)
            .collect();
        v.sort_unstable();
        v
    });
    StrongHomsReport { homs, primes, strong_spectrum, bijective, involutive_primes }
}
