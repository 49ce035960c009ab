//! Built-in quantales.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;

/// Element indices of [`q2`].
pub mod q2 {
    use crate::lattice::Elem;
    pub const BOT: Elem = 0;
    pub const B: Elem = 1;
    pub const AL: Elem = 2;
    pub const AR: Elem = 3;
    pub const C: Elem = 4;
    pub const TOP: Elem = 5;
    pub const NAMES: [&str; 6] = ["bot", "b", "al", "ar", "c", "top"];
}

/// Names accepted by [`catalog`], in listing order.
pub const NAMES: &[&str] = &[
    "two", "c3l", "c3r", "c3trivial", "q2", "c3frame", "diamond", "diamond-l", "diamond-r", "diamond-q", "sq2-1", "sq2-2", "sq2-3",
    "sq2-4", "sq2-5", "sq2-6",
];

pub fn catalog(name: &str) -> Result<Quantale> {
    let q = match name {
        "two" => two(),
        "c3l" => c3l(),
        "c3r" => c3r(),
        "c3trivial" => c3trivial(),
        "q2" => q2(),
        "c3frame" => chain_frame(3),
        "diamond" => diamond(),
        "diamond-l" => diamond_left(),
        "diamond-r" => diamond_left().opposite().with_name("diamond-r"),
        "diamond-q" => diamond_pushout(),
        _ => {
            let k: usize = name
                .strip_prefix("sq2-")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| Error::UnknownName(name.into()))?;
            let mut all = crate::sq2::enumerate_strictly_quantized();
            if k == 0 || k > all.len() {
                return Err(Error::UnknownName(name.into()));
            }
            all.swap_remove(k - 1)
        }
    };
    Ok(q)
}

fn c3_lattice() -> FiniteLattice {
    FiniteLattice::chain(&["bot", "a", "top"]).expect("chain")
}

fn build(name: &str, l: FiniteLattice, mul: impl Fn(Elem, Elem) -> Elem, unit: Option<Elem>, inv: Option<Vec<Elem>>) -> Quantale {
    Quantale::from_fn(name, l, mul, unit, inv).expect("built-in quantale is valid")
}

/// The two-element frame.
pub fn two() -> Quantale {
    chain_frame(2).with_name("two")
}

/// The `n`-chain with `⋆ = ∧`.
pub fn chain_frame(n: usize) -> Quantale {
    let names: Vec<String> = match n {
        2 => vec!["bot".into(), "top".into()],
        _ => (0..n)
            .map(|i| match i {
                0 => "bot".into(),
                i if i == n - 1 => "top".into(),
                i => format!("a{i}"),
            })
            .collect(),
    };
    let l = FiniteLattice::chain(&names).expect("chain");
    let top = l.top();
    build(&format!("c{n}frame"), l, |a, b| a.min(b), Some(top), Some((0..n).collect()))
}

/// `a⋆a = a, a⋆⊤ = ⊤, ⊤⋆a = a, ⊤⋆⊤ = ⊤` on the 3-chain.
pub fn c3l() -> Quantale {
    build("c3l", c3_lattice(), |x, y| if x == 0 { 0 } else { y }, None, None)
}

/// The transpose of [`c3l`].
pub fn c3r() -> Quantale {
    build("c3r", c3_lattice(), |x, y| if y == 0 { 0 } else { x }, None, None)
}

/// The 3-chain with every product equal to `⊥`.
pub fn c3trivial() -> Quantale {
    build("c3trivial", c3_lattice(), |_, _| 0, None, Some(vec![0, 1, 2]))
}

/// The six-element quantization of the two-element frame.
pub fn q2() -> Quantale {
    use self::q2::*;
    let l = FiniteLattice::from_pairs(
        &NAMES,
        &[("bot", "b"), ("b", "al"), ("b", "ar"), ("al", "c"), ("ar", "c"), ("c", "top")],
    )
    .expect("q2 lattice");
    let rows: [[Elem; 5]; 5] = [
        [B, B, AR, AR, AR],
        [AL, AL, TOP, TOP, TOP],
        [B, B, AR, AR, AR],
        [AL, AL, TOP, TOP, TOP],
        [AL, AL, TOP, TOP, TOP],
    ];
    let inv = vec![BOT, B, AR, AL, C, TOP];
    build("q2", l, |x, y| if x == BOT || y == BOT { BOT } else { rows[x - 1][y - 1] }, None, Some(inv))
}

fn diamond_lattice() -> FiniteLattice {
    FiniteLattice::from_pairs(&["bot", "x", "y", "top"], &[("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")])
        .expect("diamond")
}

/// The four-element Boolean algebra with `⋆ = ∧`.
pub fn diamond() -> Quantale {
    let l = diamond_lattice();
    let top = l.top();
    let m = l.clone();
    build("diamond", l, move |a, b| m.meet(a, b), Some(top), Some((0..4).collect()))
}

/// The four-element Boolean algebra with `α⋆β = β` for `α ≠ ⊥`: left-sided, idempotent,
/// with two incomparable maximal left-sided elements.
pub fn diamond_left() -> Quantale {
    build("diamond-l", diamond_lattice(), |a, b| if a == 0 { 0 } else { b }, None, None)
}

/// The pushout of [`diamond_left`] and its opposite over [`two`], with the involution
/// swapping the factors. A 16-element quantic frame.
pub fn diamond_pushout() -> Quantale {
    let l = diamond_left();
    let r = l.opposite().with_name("diamond-r");
    let id: Vec<Elem> = l.elements().collect();
    let twist = crate::tensor::Twist { to_right: id.clone(), to_left: id };
    let p = crate::quantic::spectrum_pushout(&l, &r, &two(), &[0, 3], &[0, 3], &twist, crate::tensor::DEFAULT_MAX_TENSOR)
        .expect("diamond pushout");
    p.omega.quotient.with_name("diamond-q")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q2_golden_products() {
        let q = q2();
        let get = |a: &str, b: &str| q.elem_name(q.mul(q.el(a), q.el(b)));
        assert_eq!(get("b", "ar"), "ar");
        assert_eq!(get("al", "ar"), "top");
        assert_eq!(get("ar", "al"), "b");
        assert_eq!(get("top", "b"), "al");
        assert_eq!(q.star(q.el("al")).unwrap(), q.el("ar"));
    }

    #[test]
    fn c3_tables() {
        let l = c3l();
        let (a, t) = (l.el("a"), l.top());
        assert_eq!([l.mul(a, a), l.mul(a, t), l.mul(t, a), l.mul(t, t)], [a, t, a, t]);
        let r = c3r();
        assert_eq!([r.mul(a, a), r.mul(a, t), r.mul(t, a), r.mul(t, t)], [a, a, t, t]);
    }

    #[test]
    fn every_name_resolves() {
        for name in NAMES {
            assert!(catalog(name).is_ok(), "{name}");
        }
        assert_eq!(catalog("nope").unwrap_err(), Error::UnknownName("nope".into()));
        assert!(catalog("sq2-7").is_err());
    }
}
