//! Unital quantales generated by Q₂ and a unit `e`, up to isomorphism.
//!
//! Every element of such a quantale is `z` or `z ∨ e` with `z ∈ Q₂`. A candidate is fixed
//! by the closure `z ↦ ⋁{u ∈ Q₂ : u ≤ z ∨ e}` on Q₂ (given by its closed sets) and the
//! up-set `U = {u ∈ Q₂ : e ≤ u}`. The new elements are `v ∨ e` for closed `v ∉ U`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::{self, q2};
use crate::homs::is_isomorphic;
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;

const TILDE_NAMES: [(Elem, &str); 5] = [(q2::BOT, "e"), (q2::B, "b~"), (q2::AL, "al~"), (q2::AR, "ar~"), (q2::C, "c~")];

struct Shape {
    closure: [Elem; 6],
    up: [bool; 6],
}

fn moore_families(q: &Quantale) -> Vec<[Elem; 6]> {
    let mut out = Vec::new();
    for mask in 0u32..64 {
        let has = |x: Elem| mask & (1 << x) != 0;
        if !has(q2::TOP) || !(0..6).all(|a| (0..6).all(|b| !has(a) || !has(b) || has(q.meet(a, b)))) {
            continue;
        }
        let mut c = [0; 6];
        for (z, slot) in c.iter_mut().enumerate() {
            *slot = q.meet_all((0..6).filter(|&u| has(u) && q.leq(z, u)));
        }
        out.push(c);
    }
    out
}

fn build(q: &Quantale, s: &Shape) -> Option<Quantale> {
    let closed: Vec<Elem> = (0..6).filter(|&v| s.closure[v] == v && !s.up[v]).collect();
    let mut reps: Vec<(Elem, bool)> = (0..6).map(|u| (u, false)).collect();
    reps.extend(closed.iter().map(|&v| (v, true)));
    let mut names: Vec<String> = q2::NAMES.iter().map(|&n| n.into()).collect();
    for &v in &closed {
        let z = (0..5).find(|&z| s.closure[TILDE_NAMES[z].0] == v)?;
        names.push(TILDE_NAMES[z].1.into());
    }
    let leq = |i: Elem, j: Elem| {
        let ((u, f), (w, g)) = (reps[i], reps[j]);
        q.leq(u, w) && (!f || g || s.up[w])
    };
    let lattice = FiniteLattice::from_fn(names, leq).ok()?;
    if lattice.top() != q2::TOP || (0..6).any(|a| (0..6).any(|b| lattice.join(a, b) != q.join(a, b))) {
        return None;
    }
    let norm = |z: Elem, with_e: bool| {
        if !with_e {
            return z;
        }
        let v = s.closure[z];
        if s.up[v] {
            v
        } else {
            6 + closed.iter().position(|&c| c == v).expect("closed")
        }
    };
    let e = norm(q2::BOT, true);
    let mul = |i: Elem, j: Elem| {
        let ((z1, e1), (z2, e2)) = (reps[i], reps[j]);
        let mut acc = q.mul(z1, z2);
        if e2 {
            acc = lattice.join(acc, z1);
        }
        if e1 {
            acc = lattice.join(acc, z2);
        }
        if e1 && e2 {
            acc = lattice.join(acc, e);
        }
        acc
    };
    let inv = q.involution().expect("q2 is involutive");
    let ext: Vec<Elem> = reps.iter().map(|&(z, f)| norm(inv[z], f)).collect();
    let name = format!("sq2[{}]", lattice.len());
    let base = Quantale::from_fn(name, lattice.clone(), mul, Some(e), None).ok()?;
    Some(base.clone().with_involution(Some(ext)).unwrap_or(base))
}

/// All strictly quantized unital quantales, one per isomorphism class, sorted by size.
/// Each carries the extension `(z ∨ e)′ = z′ ∨ e` of the involution of Q₂.
pub fn enumerate_strictly_quantized() -> Vec<Quantale> {
    let q = catalog::q2();
    let mut found: Vec<Quantale> = Vec::new();
    for closure in moore_families(&q) {
        for umask in 0u32..64 {
            let up: [bool; 6] = core::array::from_fn(|x| umask & (1 << x) != 0);
            let upward = (0..6).all(|a| (0..6).all(|b| !up[a] || !q.leq(a, b) || up[b]));
            if !up[q2::TOP] || !upward || (0..6).any(|u| up[u] && closure[u] != u) {
                continue;
            }
            if let Some(cand) = build(&q, &Shape { closure, up }) {
                if !found.iter().any(|f| is_isomorphic(f, &cand, false)) {
                    found.push(cand);
                }
            }
        }
    }
    found.sort_by_key(Quantale::len);
    found.into_iter().enumerate().map(|(i, f)| f.with_name(format!("sq2-{}", i + 1))).collect()
}
