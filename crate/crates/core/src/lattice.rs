//! Finite complete lattices and join-preserving maps.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Index of an element in a carrier. The carrier order is the input order.
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    /// Builds a lattice from element names and a generating relation `a <= b`
    /// (Hasse edges suffice; the reflexive-transitive closure is taken).
    pub fn from_pairs<S: AsRef<str>, T: AsRef<str>>(carrier: &[S], pairs: &[(T, T)]) -> Result<Self> {
        let names: Vec<String> = carrier.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        let lookup = |s: &str| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut rel = vec![FixedBitSet::with_capacity(n); n];
        for (a, b) in pairs {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            rel[a].insert(b);
        }
        Self::from_relation(names, rel)
    }

    /// Builds a lattice from names and a predicate that already is (or generates) the order.
    pub fn from_fn(names: Vec<String>, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        let n = names.len();
        let mut rel = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in rel.iter_mut().enumerate() {
            for b in 0..n {
                if leq(a, b) {
                    row.insert(b);
                }
            }
        }
        Self::from_relation(names, rel)
    }

    /// `rel[a]` holds every `b` with `a <= b`.
    pub fn from_relation(names: Vec<String>, mut rel: Vec<FixedBitSet>) -> Result<Self> {
        let n = names.len();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateElement(a.clone()));
            }
        }
        if n == 0 {
            return Err(Error::NoBounds);
        }
        for (i, row) in rel.iter_mut().enumerate() {
            row.grow(n);
            row.insert(i);
        }
        for k in 0..n {
            let rk = rel[k].clone();
            for row in rel.iter_mut() {
                if row.contains(k) {
                    row.union_with(&rk);
                }
            }
        }
        for a in 0..n {
            for b in rel[a].ones().filter(|&b| b > a) {
                if rel[b].contains(a) {
                    return Err(Error::NotAPoset(names[a].clone(), names[b].clone()));
                }
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in rel.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        let height: Vec<usize> = down.iter().map(|d| d.count_ones(..)).collect();
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let mut ub = rel[a].clone();
                ub.intersect_with(&rel[b]);
                let j = ub
                    .ones()
                    .min_by_key(|&u| height[u])
                    .filter(|&u| ub.is_subset(&rel[u]))
                    .ok_or_else(|| Error::NotALattice(names[a].clone(), names[b].clone()))?;
                let mut lb = down[a].clone();
                lb.intersect_with(&down[b]);
                let m = lb
                    .ones()
                    .max_by_key(|&u| height[u])
                    .filter(|&u| lb.is_subset(&down[u]))
                    .ok_or_else(|| Error::NotALattice(names[a].clone(), names[b].clone()))?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        Ok(Self { names, up: rel, down, join, meet, bottom, top })
    }

    /// Chain `names[0] < names[1] < ...`.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0].as_ref(), w[1].as_ref())).collect();
        Self::from_pairs(names, &pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn index(&self, name: &str) -> Result<Elem> {
        self.names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Like [`index`](Self::index) but panics on a missing name; meant for fixed built-ins.
    pub fn el(&self, name: &str) -> Elem {
        self.index(name).unwrap_or_else(|_| panic!("no element named {name}"))
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn up_set(&self, a: Elem) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: Elem) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_names(&self, subset: &[&str]) -> Result<Elem> {
        let idx = subset.iter().map(|s| self.index(s)).collect::<Result<Vec<_>>>()?;
        Ok(self.join_all(idx))
    }

    pub fn meet_names(&self, subset: &[&str]) -> Result<Elem> {
        let idx = subset.iter().map(|s| self.index(s)).collect::<Result<Vec<_>>>()?;
        Ok(self.meet_all(idx))
    }

    /// Elements sorted so that `a < b` implies `a` comes first.
    pub fn linear_extension(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.elements().collect();
        v.sort_by_key(|&a| self.down[a].count_ones(..));
        v
    }

    pub fn lower_covers(&self, b: Elem) -> Vec<Elem> {
        self.down[b]
            .ones()
            .filter(|&a| a != b)
            .filter(|&a| !self.down[b].ones().any(|c| c != b && c != a && self.lt(a, c)))
            .collect()
    }

    /// Covering pairs `(a, b)`, in carrier order.
    pub fn hasse(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for b in self.elements() {
            for a in self.lower_covers(b) {
                out.push((a, b));
            }
        }
        out.sort();
        out
    }

    pub fn is_join_irreducible(&self, a: Elem) -> bool {
        a != self.bottom && self.lower_covers(a).len() == 1
    }

    /// Join-irreducible elements in linear-extension order.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.linear_extension().into_iter().filter(|&a| self.is_join_irreducible(a)).collect()
    }

    /// The restriction of the order to `subset`, which must itself be a lattice.
    pub fn restrict(&self, subset: &[Elem]) -> Result<Self> {
        let names = subset.iter().map(|&a| self.names[a].clone()).collect();
        Self::from_fn(names, |i, j| self.leq(subset[i], subset[j]))
    }

    /// Checks completeness over every subset, not just pairs. Exponential; small carriers only.
    pub fn verify_all_subsets(&self) -> bool {
        let n = self.len();
        if n > 16 {
            return false;
        }
        for mask in 0u32..(1 << n) {
            let members: Vec<Elem> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let j = self.join_all(members.iter().copied());
            let m = self.meet_all(members.iter().copied());
            for u in self.elements() {
                let upper = members.iter().all(|&x| self.leq(x, u));
                let lower = members.iter().all(|&x| self.leq(u, x));
                if upper != self.leq(j, u) || lower != self.leq(u, m) {
                    return false;
                }
            }
        }
        true
    }
}

/// A join-preserving map, stored as a table over the domain carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupMap {
    table: Vec<Elem>,
    cod_len: usize,
}

impl SupMap {
    pub fn new(dom: &FiniteLattice, cod: &FiniteLattice, table: Vec<Elem>) -> Result<Self> {
        if table.len() != dom.len() || table.iter().any(|&x| x >= cod.len()) {
            return Err(Error::DomainMismatch);
        }
        if let Some(e) = join_violation(dom, cod, &table) {
            return Err(e);
        }
        Ok(Self { table, cod_len: cod.len() })
    }

    /// Wraps a table that is already known to preserve joins.
    pub(crate) fn trusted(table: Vec<Elem>, cod_len: usize) -> Self {
        Self { table, cod_len }
    }

    pub fn identity(l: &FiniteLattice) -> Self {
        Self { table: l.elements().collect(), cod_len: l.len() }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn into_table(self) -> Vec<Elem> {
        self.table
    }

    pub fn dom_len(&self) -> usize {
        self.table.len()
    }

    pub fn cod_len(&self) -> usize {
        self.cod_len
    }

    /// `b ↦ ⋁{a : f(a) ≤ b}`.
    pub fn right_adjoint(&self, dom: &FiniteLattice, cod: &FiniteLattice) -> Vec<Elem> {
        cod.elements()
            .map(|b| dom.join_all(dom.elements().filter(|&a| cod.leq(self.table[a], b))))
            .collect()
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &SupMap) -> Result<SupMap> {
        if g.cod_len != self.dom_len() {
            return Err(Error::DomainMismatch);
        }
        Ok(SupMap { table: g.table.iter().map(|&x| self.table[x]).collect(), cod_len: self.cod_len })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.cod_len);
        self.table.iter().all(|&x| !seen.put(x))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.cod_len);
        self.table.iter().for_each(|&x| seen.insert(x));
        seen.count_ones(..) == self.cod_len
    }

    pub fn inverse(&self) -> Option<Vec<Elem>> {
        if self.dom_len() != self.cod_len || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.cod_len];
        for (a, &b) in self.table.iter().enumerate() {
            inv[b] = a;
        }
        Some(inv)
    }

    pub fn is_isomorphism(&self, dom: &FiniteLattice, cod: &FiniteLattice) -> bool {
        self.inverse().is_some_and(|inv| join_violation(cod, dom, &inv).is_none())
    }
}

/// First failure of `f(⊥) = ⊥` or `f(a ∨ b) = f(a) ∨ f(b)`.
pub fn join_violation(dom: &FiniteLattice, cod: &FiniteLattice, f: &[Elem]) -> Option<Error> {
    if f[dom.bottom()] != cod.bottom() {
        return Some(Error::BottomNotPreserved);
    }
    for a in dom.elements() {
        for b in a + 1..dom.len() {
            if f[dom.join(a, b)] != cod.join(f[a], f[b]) {
                return Some(Error::NotJoinPreserving(dom.name(a).to_string(), dom.name(b).to_string()));
            }
        }
    }
    None
}

/// Backtracking over join-preserving maps `dom → cod`, one join-irreducible at a time.
///
/// After `k` irreducibles are assigned, every element whose irreducibles are among
/// them has a known value; joins among known elements are checked immediately.
pub struct JiSearch<'a> {
    dom: &'a FiniteLattice,
    cod: &'a FiniteLattice,
    jis: Vec<Elem>,
    below: Vec<Vec<usize>>,
    det: Vec<usize>,
    fresh: Vec<Vec<Elem>>,
    join_pairs: Vec<Vec<(Elem, Elem)>>,
}

impl<'a> JiSearch<'a> {
    pub fn new(dom: &'a FiniteLattice, cod: &'a FiniteLattice) -> Self {
        let jis = dom.join_irreducibles();
        let below: Vec<Vec<usize>> = dom
            .elements()
            .map(|x| (0..jis.len()).filter(|&i| dom.leq(jis[i], x)).collect())
            .collect();
        let det: Vec<usize> = below.iter().map(|b| b.iter().max().map_or(0, |m| m + 1)).collect();
        let mut fresh = vec![Vec::new(); jis.len() + 1];
        for x in dom.elements() {
            fresh[det[x]].push(x);
        }
        let mut join_pairs = vec![Vec::new(); dom.len()];
        for a in dom.elements() {
            for b in a + 1..dom.len() {
                let z = dom.join(a, b);
                if z != a && z != b {
                    join_pairs[z].push((a, b));
                }
            }
        }
        Self { dom, cod, jis, below, det, fresh, join_pairs }
    }

    pub fn irreducibles(&self) -> &[Elem] {
        &self.jis
    }

    /// Number of irreducibles that must be assigned before `x` has a value.
    pub fn det_step(&self, x: Elem) -> usize {
        self.det[x]
    }

    pub fn steps(&self) -> usize {
        self.jis.len()
    }

    /// Runs the search. `prune(k, table)` is called once the first `k` irreducibles are
    /// assigned (undetermined slots hold `usize::MAX`) and may reject the branch;
    /// `leaf(table)` receives each complete join-preserving map and returns whether to go on.
    pub fn run(&self, mut prune: impl FnMut(usize, &[Elem]) -> bool, mut leaf: impl FnMut(&[Elem]) -> bool) {
        let mut table = vec![usize::MAX; self.dom.len()];
        table[self.dom.bottom()] = self.cod.bottom();
        if !prune(0, &table) {
            return;
        }
        if self.jis.is_empty() {
            leaf(&table);
            return;
        }
        self.step(0, &mut table, &mut prune, &mut leaf);
    }

    fn step(
        &self,
        k: usize,
        table: &mut Vec<Elem>,
        prune: &mut impl FnMut(usize, &[Elem]) -> bool,
        leaf: &mut impl FnMut(&[Elem]) -> bool,
    ) -> bool {
        let j = self.jis[k];
        let floor = self.cod.join_all(self.below[j].iter().filter(|&&i| i < k).map(|&i| table[self.jis[i]]));
        for v in self.cod.up_set(floor).ones() {
            table[j] = v;
            let mut ok = true;
            for &x in &self.fresh[k + 1] {
                if x != j {
                    table[x] = self.cod.join_all(self.below[x].iter().map(|&i| table[self.jis[i]]));
                }
            }
            for &x in &self.fresh[k + 1] {
                if self.join_pairs[x].iter().any(|&(a, b)| self.cod.join(table[a], table[b]) != table[x]) {
                    ok = false;
                    break;
                }
            }
            if ok && prune(k + 1, table) {
                let go_on = if k + 1 == self.jis.len() { leaf(table) } else { self.step(k + 1, table, prune, leaf) };
                if !go_on {
                    return false;
                }
            }
            for &x in &self.fresh[k + 1] {
                table[x] = usize::MAX;
            }
        }
        true
    }
}

/// Every join-preserving map `dom → cod`, in search order. `None` when more than `cap` exist.
pub fn all_supmaps(dom: &FiniteLattice, cod: &FiniteLattice, cap: usize) -> Option<Vec<SupMap>> {
    let mut out = Vec::new();
    let mut overflow = false;
    JiSearch::new(dom, cod).run(
        |_, _| true,
        |t| {
            if out.len() == cap {
                overflow = true;
                return false;
            }
            out.push(SupMap::trusted(t.to_vec(), cod.len()));
            true
        },
    );
    (!overflow).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> FiniteLattice {
        FiniteLattice::chain(&["bot", "a", "top"]).unwrap()
    }

    fn q2_lattice() -> FiniteLattice {
        FiniteLattice::from_pairs(
            &["bot", "b", "al", "ar", "c", "top"],
            &[("bot", "b"), ("b", "al"), ("b", "ar"), ("al", "c"), ("ar", "c"), ("c", "top")],
        )
        .unwrap()
    }

    #[test]
    fn two_chain_bounds() {
        let l = FiniteLattice::chain(&["0", "1"]).unwrap();
        assert_eq!(l.name(l.bottom()), "0");
        assert_eq!(l.name(l.top()), "1");
    }

    #[test]
    fn n_poset_is_rejected() {
        let err = FiniteLattice::from_pairs(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]).unwrap_err();
        assert!(matches!(err, Error::NotALattice(..)));
        let bowtie = FiniteLattice::from_pairs(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]);
        assert!(matches!(bowtie, Err(Error::NotALattice(..))));
    }

    #[test]
    fn cycles_and_unknowns() {
        assert!(matches!(FiniteLattice::from_pairs(&["x", "y"], &[("x", "y"), ("y", "x")]), Err(Error::NotAPoset(..))));
        assert_eq!(
            FiniteLattice::from_pairs(&["x"], &[("x", "z")]).unwrap_err(),
            Error::UnknownElement("z".into())
        );
        assert_eq!(FiniteLattice::from_pairs::<&str, &str>(&[], &[]).unwrap_err(), Error::NoBounds);
    }

    #[test]
    fn named_joins_and_meets() {
        let l = q2_lattice();
        assert_eq!(l.join_names(&[]).unwrap(), l.bottom());
        assert_eq!(l.meet_names(&[]).unwrap(), l.top());
        assert_eq!(l.name(l.join_names(&["al", "ar"]).unwrap()), "c");
        assert_eq!(l.name(l.meet_names(&["al", "ar"]).unwrap()), "b");
        assert!(l.join_names(&["zz"]).is_err());
        assert_eq!(c3().join_all([]), 0);
    }

    #[test]
    fn hasse_recovers_input_edges() {
        let l = q2_lattice();
        assert_eq!(l.hasse(), vec![(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)]);
        let ji: Vec<&str> = l.join_irreducibles().iter().map(|&a| l.name(a)).collect();
        assert_eq!(ji, ["b", "al", "ar", "top"]);
        assert!(l.verify_all_subsets());
    }

    #[test]
    fn supmap_validation() {
        let l = q2_lattice();
        assert!(SupMap::new(&l, &l, (0..6).collect()).is_ok());
        let inv = SupMap::new(&l, &l, vec![0, 1, 3, 2, 4, 5]).unwrap();
        assert_eq!(inv.right_adjoint(&l, &l), inv.table());
        assert_eq!(inv.compose(&inv).unwrap(), SupMap::identity(&l));
        assert!(inv.is_isomorphism(&l, &l));
        let bot = SupMap::new(&l, &l, vec![0; 6]).unwrap();
        assert!(!bot.is_isomorphism(&l, &l));

        let c = c3();
        let err = SupMap::new(&c, &c, vec![0, 2, 1]).unwrap_err();
        assert!(matches!(err, Error::NotJoinPreserving(..)));
        assert_eq!(SupMap::new(&c, &c, vec![1, 1, 2]).unwrap_err(), Error::BottomNotPreserved);
    }

    #[test]
    fn compose_checks_shapes() {
        let two = FiniteLattice::chain(&["0", "1"]).unwrap();
        let c = c3();
        let f = SupMap::new(&two, &c, vec![0, 2]).unwrap();
        assert_eq!(f.compose(&f).unwrap_err(), Error::DomainMismatch);
        let g = SupMap::new(&c, &two, vec![0, 0, 1]).unwrap();
        assert_eq!(g.compose(&f).unwrap().table(), &[0, 1]);
    }

    #[test]
    fn supmaps_on_small_chains() {
        let two = FiniteLattice::chain(&["0", "1"]).unwrap();
        assert_eq!(all_supmaps(&two, &two, 100).unwrap().len(), 2);
        assert_eq!(all_supmaps(&c3(), &c3(), 100).unwrap().len(), 6);
        assert!(all_supmaps(&c3(), &c3(), 3).is_none());
    }
}
