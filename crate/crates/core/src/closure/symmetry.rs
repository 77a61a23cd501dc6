//! Exact orbit reduction for work-queue sweeps.
//!
//! Relabelling vertices or reversing positions maps every propagation rule
//! and the matching test onto themselves. A state fixed by such a map
//! therefore answers a probe and its image identically, so a sweep over a
//! fixed state tests one cell per orbit and commits deductions orbit-wide.
//! Candidate maps come from twin vertices (identical neighbourhoods) and
//! from position reversal on symmetric graphs. Every candidate is checked
//! against the lattice before use; a map that does not fix the state is
//! dropped, so the reduction never depends on the graph being what we
//! think it is.

use crate::graph::DirectedGraph;
use crate::model::{Geometry, VarLattice};

/// A vertex relabelling, optionally composed with position reversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CellMap {
    sigma: Vec<usize>,
    reverse: bool,
}

impl CellMap {
    fn transposition(n: usize, a: usize, b: usize, reverse: bool) -> Self {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.swap(a, b);
        Self { sigma, reverse }
    }

    #[inline]
    fn image_p(&self, n: usize, a: usize) -> usize {
        let (x, k) = (a / n, a % n);
        let k = if self.reverse { n - 1 - k } else { k };
        self.sigma[x] * n + k
    }

    #[inline]
    fn image_q(&self, geo: &Geometry, q: usize) -> usize {
        let n = geo.n;
        let (x, k, y, l) = geo.decode(q);
        geo.q_between(self.image_p(n, x * n + k), self.image_p(n, y * n + l))
    }

    fn fixes_cell(&self, geo: &Geometry, q: usize) -> bool {
        self.image_q(geo, q) == q
    }

    fn fixes_state(&self, lat: &VarLattice) -> bool {
        let geo = &lat.geo;
        let np = geo.np;
        (0..np).all(|a| lat.cells[a] == lat.cells[self.image_p(geo.n, a)])
            && (0..geo.nq).all(|q| lat.cells[np + q] == lat.cells[np + self.image_q(geo, q)])
    }
}

/// Candidate symmetries of a graph's exclusion-coded lattice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Symmetry {
    /// Twin classes of lattice vertices (0-based), each of size at least 2.
    classes: Vec<Vec<usize>>,
    reversal: bool,
}

impl Symmetry {
    pub fn none() -> Self {
        Self::default()
    }

    /// Twin classes among the non-start vertices, plus reversal when every
    /// arc has its counter-directed partner.
    pub fn of_graph(g: &DirectedGraph) -> Self {
        let n = g.model_size();
        let order = g.order();
        let twins = |u: usize, w: usize| {
            g.has_arc(u, w) == g.has_arc(w, u)
                && (1..=order)
                    .filter(|&z| z != u && z != w)
                    .all(|z| g.has_arc(u, z) == g.has_arc(w, z) && g.has_arc(z, u) == g.has_arc(z, w))
        };
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for u in 1..=n {
            match classes.iter_mut().find(|c| twins(c[0] + 1, u)) {
                Some(c) => c.push(u - 1),
                None => classes.push(vec![u - 1]),
            }
        }
        classes.retain(|c| c.len() > 1);
        Self {
            classes,
            reversal: g.is_symmetric(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.is_empty() && !self.reversal
    }

    /// Candidate generators, restricted to maps fixing q cell `fixed`.
    fn candidates(&self, geo: &Geometry, fixed: Option<usize>) -> Vec<CellMap> {
        let n = geo.n;
        let pinned: Vec<usize> = fixed.map_or(Vec::new(), |q| {
            let (x, _, y, _) = geo.decode(q);
            vec![x, y]
        });
        let mut out = Vec::new();
        for class in &self.classes {
            let free: Vec<usize> = class.iter().copied().filter(|v| !pinned.contains(v)).collect();
            for w in free.windows(2) {
                out.push(CellMap::transposition(n, w[0], w[1], false));
            }
        }
        if self.reversal {
            out.push(CellMap {
                sigma: (0..n).collect(),
                reverse: true,
            });
            if let [x, y] = pinned[..] {
                out.push(CellMap::transposition(n, x, y, true));
            }
        }
        if let Some(q) = fixed {
            out.retain(|m| m.fixes_cell(geo, q));
        }
        out
    }

    /// Orbits of q cells under the candidates that fix `lat`, or `None`
    /// when no candidate does.
    pub(crate) fn orbits(&self, lat: &VarLattice, fixed: Option<usize>) -> Option<Orbits> {
        if self.is_trivial() {
            return None;
        }
        let geo = &lat.geo;
        let gens: Vec<CellMap> = self
            .candidates(geo, fixed)
            .into_iter()
            .filter(|m| m.fixes_state(lat))
            .collect();
        if gens.is_empty() {
            return None;
        }
        Some(Orbits::generated(geo, &gens))
    }
}

/// Partition of q cells into orbits, each named by its lexicographically
/// first member.
#[derive(Debug, Clone)]
pub(crate) struct Orbits {
    rep: Vec<u32>,
    start: Vec<u32>,
    members: Vec<u32>,
}

impl Orbits {
    fn generated(geo: &Geometry, gens: &[CellMap]) -> Self {
        let nq = geo.nq;
        let mut parent: Vec<u32> = (0..nq as u32).collect();
        fn find(parent: &mut [u32], mut a: u32) -> u32 {
            while parent[a as usize] != a {
                let up = parent[parent[a as usize] as usize];
                parent[a as usize] = up;
                a = up;
            }
            a
        }
        for m in gens {
            for q in 0..nq {
                let (a, b) = (find(&mut parent, q as u32), find(&mut parent, m.image_q(geo, q) as u32));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        // name each orbit by its first member in sweep order
        let mut name = vec![u32::MAX; nq];
        let mut rep = vec![0u32; nq];
        for &q in &geo.lex {
            let root = find(&mut parent, q) as usize;
            if name[root] == u32::MAX {
                name[root] = q;
            }
            rep[q as usize] = name[root];
        }
        let mut start = vec![0u32; nq + 1];
        for &r in &rep {
            start[r as usize + 1] += 1;
        }
        for i in 0..nq {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut members = vec![0u32; nq];
        for (q, &r) in rep.iter().enumerate() {
            members[fill[r as usize] as usize] = q as u32;
            fill[r as usize] += 1;
        }
        Self { rep, start, members }
    }

    #[inline]
    pub(crate) fn rep(&self, q: usize) -> usize {
        self.rep[q] as usize
    }

    pub(crate) fn members(&self, rep: usize) -> &[u32] {
        &self.members[self.start[rep] as usize..self.start[rep + 1] as usize]
    }

    #[cfg(test)]
    pub(crate) fn count(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(q, &r)| q == r as usize).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exclusion::{apply_exclusion, build_exclusion_set};
    use crate::graph::{builtin_graph, Builtin};

    fn coded(g: &DirectedGraph) -> VarLattice {
        let mut lat = VarLattice::new(g.model_size()).unwrap();
        apply_exclusion(&build_exclusion_set(g), &mut lat).unwrap();
        assert!(lat.run_queue(None));
        lat
    }

    #[test]
    fn complete_graph_is_one_twin_class() {
        let g = builtin_graph(Builtin::Complete(5)).unwrap();
        let sym = Symmetry::of_graph(&g);
        assert_eq!(sym.classes, vec![vec![0, 1, 2, 3]]);
        assert!(sym.reversal);
    }

    #[test]
    fn petersen_has_no_twins() {
        let sym = Symmetry::of_graph(&builtin_graph(Builtin::Petersen).unwrap());
        assert!(sym.classes.is_empty());
    }

    #[test]
    fn orbits_partition_the_cells() {
        let g = builtin_graph(Builtin::Complete(5)).unwrap();
        let lat = coded(&g);
        let orbits = Symmetry::of_graph(&g).orbits(&lat, None).unwrap();
        let total: usize = (0..lat.geo.nq)
            .filter(|&q| orbits.rep(q) == q)
            .map(|q| orbits.members(q).len())
            .sum();
        assert_eq!(total, lat.geo.nq);
        // with every vertex relabelling and reversal, an orbit is fixed by
        // the unordered pair of positions up to reversal
        let n = 4;
        let classes: std::collections::BTreeSet<(usize, usize)> = (0..n)
            .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
            .map(|(k, l)| (k, l).min((n - 1 - l, n - 1 - k)))
            .collect();
        assert_eq!(orbits.count(), classes.len());
    }

    #[test]
    fn maps_that_move_the_state_are_dropped() {
        let g = builtin_graph(Builtin::Complete(5)).unwrap();
        let mut lat = coded(&g);
        let q = lat.geo.q_index(0, 0, 1, 1);
        lat.set(lat.geo.np + q, crate::model::VarState::Zero);
        let sym = Symmetry::of_graph(&g);
        let orbits = sym.orbits(&lat, Some(q)).unwrap();
        assert_eq!(orbits.members(orbits.rep(q)), &[q as u32]);
        for m in sym.candidates(&lat.geo, None) {
            if !m.fixes_cell(&lat.geo, q) {
                assert!(!m.fixes_state(&lat));
            }
        }
    }
}
