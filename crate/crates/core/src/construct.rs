//! Quantales built from other data: the semi-unitalization and `[L, L]`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{all_supmaps, Elem, FiniteLattice};
use crate::quantale::Quantale;

/// Name of the element added by [`semi_unitalization`].
pub const HAT_TOP: &str = "top^";

/// Adjoins an idempotent top `⊤̂` with `α⋆⊤̂ = α ∨ α⋆⊤` and `⊤̂⋆α = α ∨ ⊤⋆α`.
/// The new top has index `q.len()`; an involution extends by fixing it.
pub fn semi_unitalization(q: &Quantale) -> Quantale {
    let n = q.len();
    let mut names: Vec<String> = q.lattice().names().to_vec();
    names.push(HAT_TOP.into());
    let lattice = FiniteLattice::from_fn(names, |a, b| b == n || (a < n && q.leq(a, b))).expect("adjoining a top keeps a lattice");
    let t = q.top();
    let mul = |a: Elem, b: Elem| match (a == n, b == n) {
        (true, true) => n,
        (false, true) => q.join(a, q.mul(a, t)),
        (true, false) => q.join(b, q.mul(t, b)),
        (false, false) => q.mul(a, b),
    };
    let inv = q.involution().map(|i| i.iter().copied().chain([n]).collect());
    Quantale::from_fn(format!("{}^", q.name()), lattice, mul, None, inv).expect("semi-unitalization is a quantale")
}

/// The quantale of join-preserving self-maps of `l`, ordered pointwise, with
/// `f⋆g = f∘g` and the identity as unit. Fails once more than `cap` maps exist.
pub fn endomorphism_quantale(l: &FiniteLattice, cap: usize) -> Result<Quantale> {
    let mut maps = all_supmaps(l, l, cap).ok_or(Error::SizeCapExceeded { what: "join-preserving self-maps", limit: cap })?;
    maps.sort();
    let names: Vec<String> = maps
        .iter()
        .map(|f| {
            let vals: Vec<&str> = f.table().iter().map(|&x| l.name(x)).collect();
            format!("<{}>", vals.join(","))
        })
        .collect();
    let lattice = FiniteLattice::from_fn(names, |i, j| l.elements().all(|x| l.leq(maps[i].apply(x), maps[j].apply(x))))?;
    let find = |table: &[Elem]| maps.iter().position(|m| m.table() == table).expect("composites of join-preserving maps are join-preserving");
    let k = maps.len();
    let mult: Vec<Elem> = (0..k * k)
        .map(|i| {
            let (f, g) = (&maps[i / k], &maps[i % k]);
            find(f.compose(g).expect("same lattice").table())
        })
        .collect();
    let ident: Vec<Elem> = l.elements().collect();
    let unit = find(&ident);
    Quantale::new(format!("[{0},{0}]", l.len()), lattice, mult, Some(unit), None)
}
