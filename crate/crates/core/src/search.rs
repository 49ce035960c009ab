//! Seeded random search for small quantales.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;

/// Every lattice with 2 to 5 elements, up to isomorphism.
pub fn small_lattices() -> Vec<FiniteLattice> {
    let named = |edges: &[(&str, &str)]| {
        let mut names: Vec<&str> = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if !names.contains(x) {
                    names.push(x);
                }
            }
        }
        FiniteLattice::from_pairs(&names, edges).expect("small lattice")
    };
    let mut out: Vec<FiniteLattice> = (2..=5)
        .map(|n| {
            let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            FiniteLattice::chain(&names).expect("chain")
        })
        .collect();
    out.push(named(&[("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")]));
    out.push(named(&[("bot", "x"), ("bot", "y"), ("bot", "z"), ("x", "top"), ("y", "top"), ("z", "top")]));
    out.push(named(&[("bot", "x"), ("x", "y"), ("bot", "z"), ("y", "top"), ("z", "top")]));
    out.push(named(&[("bot", "x"), ("bot", "y"), ("x", "m"), ("y", "m"), ("m", "top")]));
    out.push(named(&[("bot", "m"), ("m", "x"), ("m", "y"), ("x", "top"), ("y", "top")]));
    out
}

fn below(l: &FiniteLattice, y: Elem) -> Vec<Elem> {
    l.elements().filter(|&x| l.leq(x, y)).collect()
}

/// A multiplication with `x⋆y ≤ y` chosen at random on join-irreducibles and extended by joins.
fn candidate(l: &FiniteLattice, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let js = l.join_irreducibles();
    let n = l.len();
    let mut on_j = alloc::vec![l.bottom(); n * n];
    for &x in &js {
        for &y in &js {
            let opts = below(l, y);
            on_j[x * n + y] = opts[rng.next_u32() as usize % opts.len()];
        }
    }
    let mut mult = alloc::vec![l.bottom(); n * n];
    for a in l.elements() {
        for b in l.elements() {
            let terms = js.iter().filter(|&&x| l.leq(x, a)).flat_map(|&x| js.iter().filter(move |&&y| l.leq(y, b)).map(move |&y| (x, y)));
            mult[a * n + b] = l.join_all(terms.map(|(x, y)| on_j[x * n + y]).collect::<Vec<_>>());
        }
    }
    mult
}

/// Seeded random left-sided semi-unital quantales with at most `max_elements` elements.
/// Candidates are drawn until `count` are valid or `max_attempts` is spent.
pub fn random_left_sided(seed: u64, count: usize, max_elements: usize, max_attempts: usize) -> Vec<Quantale> {
    let lattices: Vec<FiniteLattice> = small_lattices().into_iter().filter(|l| l.len() <= max_elements).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if lattices.is_empty() {
        return out;
    }
    for attempt in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let l = &lattices[rng.next_u32() as usize % lattices.len()];
        let mult = candidate(l, &mut rng);
        let Ok(q) = Quantale::new(format!("rand-{seed}-{attempt}"), l.clone(), mult, None, None) else {
            continue;
        };
        if q.is_left_sided() && q.is_semi_unital() {
            out.push(q);
        }
    }
    out
}
