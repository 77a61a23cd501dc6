//! Brute-force ground truth for small instances.
//!
//! Permutations are enumerated in lexicographic order, so the `k`-th
//! permutation visited has Lehmer rank `k` and permutation sets are plain
//! bitsets over ranks.

use crate::error::{Error, Result};
use crate::exclusion::build_exclusion_set;
use crate::graph::DirectedGraph;
use crate::model::{total_inducers, ExclusionSet, Inducer, PermutationMatrix};

/// Largest `n` for cycle enumeration.
pub const CYCLE_LIMIT: usize = 9;
/// Largest `n` for cover tables.
pub const TABLE_LIMIT: usize = 8;
/// Largest `n` for [`check_theory`].
pub const THEORY_LIMIT: usize = 7;

fn budget(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::OracleBudget { n, limit })
    } else {
        Ok(())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Visits every permutation of `0..n` in lexicographic order.
fn for_each_permutation(n: usize, mut f: impl FnMut(usize, &[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    loop {
        f(rank, &a);
        rank += 1;
        // next lexicographic successor
        let Some(i) = (1..n).rev().find(|&i| a[i - 1] < a[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| a[j] > a[i - 1]).expect("successor exists");
        a.swap(i - 1, j);
        a[i..].reverse();
    }
}

fn to_matrix(a: &[usize]) -> PermutationMatrix {
    PermutationMatrix::new(a.iter().map(|&k| k + 1).collect()).expect("bijection")
}

/// Lexicographic rank of a permutation.
pub fn lehmer_rank(p: &PermutationMatrix) -> usize {
    let s = p.as_slice();
    let n = s.len();
    let mut rank = 0;
    for k in 0..n {
        let smaller = s[k + 1..].iter().filter(|&&x| x < s[k]).count();
        rank += smaller * factorial(n - 1 - k);
    }
    rank
}

/// A set of permutations of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSet {
    n: usize,
    bits: Vec<u64>,
}

impl PermSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; factorial(n).div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for r in 0..factorial(n) {
            s.insert_rank(r);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn insert_rank(&mut self, r: usize) {
        self.bits[r / 64] |= 1 << (r % 64);
    }

    fn has_rank(&self, r: usize) -> bool {
        self.bits[r / 64] >> (r % 64) & 1 == 1
    }

    pub fn insert(&mut self, p: &PermutationMatrix) {
        self.insert_rank(lehmer_rank(p));
    }

    pub fn contains(&self, p: &PermutationMatrix) -> bool {
        p.n() == self.n && self.has_rank(lehmer_rank(p))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> Self {
        let mut s = Self::empty(self.n);
        for r in (0..factorial(self.n)).filter(|&r| !self.has_rank(r)) {
            s.insert_rank(r);
        }
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Members in lexicographic order.
    pub fn to_vec(&self) -> Vec<PermutationMatrix> {
        let mut out = Vec::new();
        for_each_permutation(self.n, |r, a| {
            if self.has_rank(r) {
                out.push(to_matrix(a));
            }
        });
        out
    }
}

/// Permutations whose cycle `n+1 -> ... -> n+1` lies in `g`.
pub fn enumerate_hamilton_cycles(g: &DirectedGraph) -> Result<PermSet> {
    let n = g.model_size();
    budget(n, CYCLE_LIMIT)?;
    let start = g.start_vertex();
    let mut set = PermSet::empty(n);
    let mut order = vec![0; n];
    for_each_permutation(n, |r, a| {
        for (u, &k) in a.iter().enumerate() {
            order[k] = u + 1;
        }
        let ok = g.has_arc(start, order[0])
            && g.has_arc(order[n - 1], start)
            && order.windows(2).all(|w| g.has_arc(w[0], w[1]));
        if ok {
            set.insert_rank(r);
        }
    });
    Ok(set)
}

/// Dense membership over `(u, i, v, j)` with 0-based labels.
struct InducerTable {
    n: usize,
    bits: Vec<bool>,
}

impl InducerTable {
    fn new(e: &ExclusionSet, n: usize) -> Self {
        let mut t = Self {
            n,
            bits: vec![false; n.pow(4)],
        };
        for ind in e {
            let (a, b) = (ind.u - 1, ind.i - 1);
            let (c, d) = (ind.v - 1, ind.j - 1);
            let slot = t.slot(a, b, c, d);
            t.bits[slot] = true;
            let slot = t.slot(c, d, a, b);
            t.bits[slot] = true;
        }
        t
    }

    fn slot(&self, u: usize, i: usize, v: usize, j: usize) -> usize {
        ((u * self.n + i) * self.n + v) * self.n + j
    }

    /// True when some inducer of the cover of `a` is a member.
    fn induces(&self, a: &[usize]) -> bool {
        (0..self.n).any(|u| (u + 1..self.n).any(|v| self.bits[self.slot(u, a[u], v, a[v])]))
    }
}

/// Union of `Perm(ι)` over the members of `e`.
pub fn perm_of(e: &ExclusionSet, n: usize) -> Result<PermSet> {
    budget(n, TABLE_LIMIT)?;
    let table = InducerTable::new(e, n);
    let mut set = PermSet::empty(n);
    for_each_permutation(n, |r, a| {
        if table.induces(a) {
            set.insert_rank(r);
        }
    });
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub e_bar: ExclusionSet,
    pub e_bar_complement: ExclusionSet,
    /// Number of permutations not induced by the set.
    pub perm_complement_size: usize,
}

/// `Ē`: every inducer all of whose permutations are already induced by `e`.
/// Equivalently, the inducers outside every cover of a permutation that `e`
/// does not induce.
pub fn exact_closure(e: &ExclusionSet, n: usize) -> Result<ClosureResult> {
    let induced = perm_of(e, n)?;
    let mut complement = ExclusionSet::new();
    let mut outside = 0;
    for_each_permutation(n, |r, a| {
        if !induced.has_rank(r) {
            outside += 1;
            complement.extend(to_matrix(a).inducers());
        }
    });
    let e_bar = ExclusionSet::all(n)
        .iter()
        .filter(|ind| !complement.contains(ind))
        .copied()
        .collect();
    Ok(ClosureResult {
        e_bar,
        e_bar_complement: complement,
        perm_complement_size: outside,
    })
}

/// The exclusion set built only from single missing arcs, including arcs
/// into and out of the start vertex.
pub fn arc_exclusion_set(g: &DirectedGraph) -> ExclusionSet {
    let n = g.model_size();
    let start = g.start_vertex();
    let mut e = ExclusionSet::new();
    let pin_all = |e: &mut ExclusionSet, u: usize, i: usize| {
        for v in (1..=n).filter(|&v| v != u) {
            for j in (1..=n).filter(|&j| j != i) {
                e.insert(Inducer::new(u, i, v, j).expect("distinct"));
            }
        }
    };
    for u in 1..=n {
        if !g.has_arc(start, u) {
            pin_all(&mut e, u, 1);
        }
        if !g.has_arc(u, start) {
            pin_all(&mut e, u, n);
        }
        for v in (1..=n).filter(|&v| v != u && !g.has_arc(u, v)) {
            for l in 1..n {
                e.insert(Inducer::new(u, l, v, l + 1).expect("distinct"));
            }
        }
    }
    e
}

/// Outcome of each structural check; every field should be true.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TheoryChecks {
    pub hamilton_cycles: usize,
    pub e_bar_size: usize,
    pub e_bar_complement_size: usize,
    /// `Perm(E)` is exactly the set of extraneous permutations.
    pub exclusion_sound: bool,
    /// Hamiltonian iff `Ē` is a proper subset of all inducers.
    pub closure_decides: bool,
    /// Hamiltonian iff `Perm^C(Ē)` is nonempty iff `Ē^C` is nonempty.
    pub complement_nonempty: bool,
    /// A permutation avoids `Perm(Ē)` iff its cover lies in `Ē^C`, and every
    /// inducer of `Ē^C` lies in such a cover.
    pub complement_covers: bool,
    /// The closure is the same when computed from an equivalent set, and
    /// closing `Ē` again changes nothing.
    pub closure_unique: bool,
    /// One cycle iff `|Ē^C| = n(n-1)/2`; several iff larger.
    pub cycle_count_rule: bool,
}

impl TheoryChecks {
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    /// Every check by name.
    pub fn checks(&self) -> [(&'static str, bool); 6] {
        [
            ("exclusion_sound", self.exclusion_sound),
            ("closure_decides", self.closure_decides),
            ("complement_nonempty", self.complement_nonempty),
            ("complement_covers", self.complement_covers),
            ("closure_unique", self.closure_unique),
            ("cycle_count_rule", self.cycle_count_rule),
        ]
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks()
            .into_iter()
            .filter(|&(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect()
    }
}

pub fn check_theory(g: &DirectedGraph) -> Result<TheoryChecks> {
    let n = g.model_size();
    budget(n, THEORY_LIMIT)?;
    let cycles = enumerate_hamilton_cycles(g)?;
    let e = build_exclusion_set(g);
    let induced = perm_of(&e, n)?;
    let closure = exact_closure(&e, n)?;
    let total = total_inducers(n);
    let hamiltonian = !cycles.is_empty();

    let exclusion_sound = induced == cycles.complement();
    let closure_decides = hamiltonian == (closure.e_bar.len() < total);

    let perm_c = perm_of(&closure.e_bar, n)?.complement();
    let complement_nonempty = hamiltonian == !perm_c.is_empty() && hamiltonian == !closure.e_bar_complement.is_empty();

    let mut covered = ExclusionSet::new();
    let mut each_covered = true;
    for_each_permutation(n, |r, a| {
        let p = to_matrix(a);
        let cover = p.inducers();
        let inside = cover.iter().all(|ind| closure.e_bar_complement.contains(ind));
        each_covered &= perm_c.has_rank(r) == inside;
        if perm_c.has_rank(r) {
            covered.extend(cover);
        }
    });
    let complement_covers = each_covered && covered == closure.e_bar_complement;

    let arc_only = arc_exclusion_set(g);
    let from_arcs = exact_closure(&arc_only, n)?;
    let again = exact_closure(&closure.e_bar, n)?;
    let closure_unique = perm_of(&arc_only, n)? == induced
        && from_arcs.e_bar == closure.e_bar
        && again.e_bar == closure.e_bar
        && e.is_subset(&closure.e_bar);

    let one = n * (n - 1) / 2;
    let size_c = closure.e_bar_complement.len();
    let cycle_count_rule = match cycles.len() {
        0 => size_c == 0,
        1 => size_c == one,
        _ => size_c > one,
    };

    Ok(TheoryChecks {
        hamilton_cycles: cycles.len(),
        e_bar_size: closure.e_bar.len(),
        e_bar_complement_size: size_c,
        exclusion_sound,
        closure_decides,
        complement_nonempty,
        complement_covers,
        closure_unique,
        cycle_count_rule,
    })
}

/// A vertex map carrying `g` onto `h`, found by trying every permutation.
pub fn find_isomorphism(g: &[Vec<bool>], h: &[Vec<bool>]) -> Result<Option<PermutationMatrix>> {
    let n = g.len();
    if h.len() != n {
        return Ok(None);
    }
    budget(n, TABLE_LIMIT)?;
    let mut found = None;
    for_each_permutation(n, |_, a| {
        if found.is_none() && (0..n).all(|u| (0..n).all(|v| g[u][v] == h[a[u]][a[v]])) {
            found = Some(to_matrix(a));
        }
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builtin_graph, parse_edge_list, Builtin};

    #[test]
    fn lexicographic_ranks() {
        let mut seen = Vec::new();
        for_each_permutation(4, |r, a| {
            assert_eq!(lehmer_rank(&to_matrix(a)), r);
            seen.push(a.to_vec());
        });
        assert_eq!(seen.len(), 24);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cycle_enumeration() {
        let k4 = builtin_graph(Builtin::Complete(4)).unwrap();
        assert_eq!(enumerate_hamilton_cycles(&k4).unwrap().len(), 6);
        let c4 = builtin_graph(Builtin::Cycle(4)).unwrap();
        let one = enumerate_hamilton_cycles(&c4).unwrap();
        assert_eq!(one.to_vec(), vec![PermutationMatrix::identity(3)]);
        let petersen = builtin_graph(Builtin::Petersen).unwrap();
        assert!(enumerate_hamilton_cycles(&petersen).unwrap().is_empty());
        let big = builtin_graph(Builtin::Complete(11)).unwrap();
        assert_eq!(
            enumerate_hamilton_cycles(&big).unwrap_err(),
            Error::OracleBudget { n: 10, limit: 9 }
        );
    }

    #[test]
    fn perm_of_examples() {
        assert!(perm_of(&ExclusionSet::new(), 3).unwrap().is_empty());
        let single: ExclusionSet = [Inducer::new(1, 1, 2, 2).unwrap()].into_iter().collect();
        assert_eq!(perm_of(&single, 3).unwrap().len(), 1);
        assert_eq!(perm_of(&single, 5).unwrap().len(), 6);
        assert_eq!(perm_of(&ExclusionSet::all(3), 3).unwrap().len(), 6);
    }

    #[test]
    fn closure_examples() {
        let all = exact_closure(&ExclusionSet::all(3), 3).unwrap();
        assert_eq!(all.e_bar.len(), 18);
        assert!(all.e_bar_complement.is_empty());
        let none = exact_closure(&ExclusionSet::new(), 3).unwrap();
        assert!(none.e_bar.is_empty());
        assert_eq!(none.perm_complement_size, 6);
    }

    #[test]
    fn theory_on_small_graphs() {
        let k4 = check_theory(&builtin_graph(Builtin::Complete(4)).unwrap()).unwrap();
        assert!(k4.all_pass(), "{:?}", k4.failures());
        assert_eq!(k4.e_bar_size, 0);

        let c4 = check_theory(&builtin_graph(Builtin::Cycle(4)).unwrap()).unwrap();
        assert!(c4.all_pass(), "{:?}", c4.failures());
        assert_eq!(c4.e_bar_complement_size, 3);

        // two directed triangles sharing vertex 1
        let bowtie = parse_edge_list("5\n1 2\n2 3\n3 1\n1 4\n4 5\n5 1", true).unwrap();
        let t = check_theory(&bowtie).unwrap();
        assert!(t.all_pass(), "{:?}", t.failures());
        assert_eq!(t.hamilton_cycles, 0);
        assert_eq!(t.e_bar_size, total_inducers(4));
    }

    #[test]
    fn brute_force_isomorphism() {
        let mut g = vec![vec![false; 3]; 3];
        g[0][1] = true;
        let mut h = vec![vec![false; 3]; 3];
        h[1][2] = true;
        let p = find_isomorphism(&g, &h).unwrap().unwrap();
        assert!(crate::exclusion::is_isomorphism(&p, &g, &h));
        h[2][1] = true;
        assert!(find_isomorphism(&g, &h).unwrap().is_none());
    }
}
