//! Finite directed multigraphs and the line-digraph operator.
//!
//! A [`Digraph`] is an immutable value: vertices are `0..n`, arcs are an
//! ordered multiset of `(tail, head)` pairs, loops and parallel arcs are
//! allowed. The arc order is part of the value: arc `i` of `g` becomes
//! vertex `i` of `g.line()`, which keeps iterated line digraphs and their
//! labels reproducible.

mod iso;
mod scc;
mod text;

use std::collections::HashSet;

pub use iso::{isomorphism, Fingerprint, IsoVerdict, MAX_EXACT_ISO_ORDER};
pub use scc::SccDecomposition;
pub use text::{parse_text, to_text};

use crate::error::{Error, Result};

/// Default cap on the order of any intermediate iterate.
pub const DEFAULT_MAX_ORDER: usize = 10_000_000;
/// Default cap on the number of arcs held by any intermediate iterate.
pub const DEFAULT_MAX_ARCS: usize = 40_000_000;

pub type Arc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
    labels: Option<Vec<String>>,
    name: Option<String>,
}

/// Resource caps for line iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterLimits {
    pub max_order: usize,
    pub max_arcs: usize,
}

impl Default for IterLimits {
    fn default() -> Self {
        IterLimits {
            max_order: DEFAULT_MAX_ORDER,
            max_arcs: DEFAULT_MAX_ARCS,
        }
    }
}

impl IterLimits {
    pub fn with_max_order(max_order: usize) -> Self {
        IterLimits {
            max_order,
            ..Default::default()
        }
    }
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<Arc>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(&(u, v)) = arcs.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::IndexOutOfRange {
                index: if u >= n { u } else { v },
                n,
            });
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::LabelCountMismatch {
                    expected: n,
                    got: labels.len(),
                });
            }
            let mut seen = HashSet::with_capacity(n);
            for label in labels {
                if !seen.insert(label.as_str()) {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
            }
        }
        Ok(Digraph {
            n,
            arcs,
            labels,
            name: None,
        })
    }

    pub fn from_arcs(n: usize, arcs: Vec<Arc>) -> Result<Self> {
        Self::new(n, arcs, None)
    }

    /// The digraph with no vertices.
    pub fn empty() -> Self {
        Digraph {
            n: 0,
            arcs: Vec::new(),
            labels: None,
            name: None,
        }
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`; `n = 1` is a single loop.
    pub fn cycle(n: usize) -> Self {
        let arcs = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Digraph {
            n,
            arcs,
            labels: None,
            name: Some(format!("C{n}")),
        }
    }

    /// Directed path `0 -> 1 -> ... -> n-1`.
    pub fn path(n: usize) -> Self {
        let arcs = (1..n).map(|i| (i - 1, i)).collect();
        Digraph {
            n,
            arcs,
            labels: None,
            name: Some(format!("P{n}")),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Index of the vertex carrying `label`, if labelled.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, _) in &self.arcs {
            deg[u] += 1;
        }
        deg
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(_, v) in &self.arcs {
            deg[v] += 1;
        }
        deg
    }

    /// Heads of the out-arcs of each vertex, in arc order (with repetition).
    pub fn out_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            adj[u].push(v);
        }
        adj
    }

    pub fn in_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            adj[v].push(u);
        }
        adj
    }

    /// Indices of the arcs leaving each vertex, in arc order.
    pub fn out_arc_ids(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (i, &(u, _)) in self.arcs.iter().enumerate() {
            out[u].push(i);
        }
        out
    }

    pub fn has_loop(&self) -> bool {
        self.arcs.iter().any(|&(u, v)| u == v)
    }

    /// Number of arcs of the line digraph, `sum_v indeg(v) * outdeg(v)`.
    pub fn line_size(&self) -> usize {
        self.in_degrees()
            .iter()
            .zip(self.out_degrees())
            .map(|(i, o)| i * o)
            .sum()
    }

    /// The line digraph: one vertex per arc (in arc order), and an arc from
    /// `a = (u, v)` to `b = (v, z)` for every pair of consecutive arcs.
    pub fn line(&self) -> Digraph {
        let out = self.out_arc_ids();
        let mut arcs = Vec::with_capacity(self.line_size());
        for (a, &(_, v)) in self.arcs.iter().enumerate() {
            arcs.extend(out[v].iter().map(|&b| (a, b)));
        }
        let labels = self.line_labels();
        let name = self.name.as_ref().map(|name| format!("L({name})"));
        Digraph {
            n: self.arcs.len(),
            arcs,
            labels,
            name,
        }
    }

    fn line_labels(&self) -> Option<Vec<String>> {
        let labels = self.labels.as_ref()?;
        if self.labels_overlap() {
            return Some(
                self.arcs
                    .iter()
                    .map(|&(u, v)| {
                        let mut word = labels[u].clone();
                        word.push(labels[v].chars().last().expect("overlap labels are nonempty"));
                        word
                    })
                    .collect(),
            );
        }
        let joined: Vec<String> = self
            .arcs
            .iter()
            .map(|&(u, v)| format!("{}|{}", labels[u], labels[v]))
            .collect();
        // parallel arcs would share a joined label
        let distinct: HashSet<&str> = joined.iter().map(String::as_str).collect();
        (distinct.len() == joined.len()).then_some(joined)
    }

    /// True when all labels are words of one length `l` and every arc joins
    /// words overlapping in `l - 1` letters (and no arc is repeated).
    pub fn labels_overlap(&self) -> bool {
        let Some(labels) = &self.labels else {
            return false;
        };
        let chars: Vec<Vec<char>> = labels.iter().map(|l| l.chars().collect()).collect();
        let Some(len) = chars.first().map(Vec::len) else {
            return true;
        };
        if len == 0 || chars.iter().any(|c| c.len() != len) {
            return false;
        }
        if self.arcs.iter().any(|&(u, v)| chars[u][1..] != chars[v][..len - 1]) {
            return false;
        }
        let distinct: HashSet<&Arc> = self.arcs.iter().collect();
        distinct.len() == self.arcs.len()
    }

    /// `L^k(self)` with the default [`IterLimits`].
    pub fn line_iterate(&self, k: usize) -> Result<(Digraph, Vec<usize>)> {
        self.line_iterate_with(k, IterLimits::default())
    }

    /// `L^k(self)` together with the orders `n_0, ..., n_k` of all iterates.
    pub fn line_iterate_with(&self, k: usize, limits: IterLimits) -> Result<(Digraph, Vec<usize>)> {
        let mut current = self.clone();
        let mut orders = Vec::with_capacity(k + 1);
        orders.push(current.order());
        for _ in 0..k {
            current = current.checked_line(limits)?;
            orders.push(current.order());
        }
        Ok((current, orders))
    }

    /// The line digraph, refusing to build it past `limits`.
    pub fn checked_line(&self, limits: IterLimits) -> Result<Digraph> {
        if self.size() > limits.max_order {
            return Err(Error::ResourceLimit {
                order: self.size(),
                limit: limits.max_order,
            });
        }
        let line_size = self.line_size();
        if line_size > limits.max_arcs {
            return Err(Error::ResourceLimit {
                order: line_size,
                limit: limits.max_arcs,
            });
        }
        Ok(self.line())
    }

    /// Same vertices, every arc reversed.
    pub fn converse(&self) -> Digraph {
        Digraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
            labels: self.labels.clone(),
            name: self.name.as_ref().map(|name| format!("converse({name})")),
        }
    }

    /// Subdigraph induced by the vertices satisfying `keep`; vertex and arc
    /// order are preserved.
    pub fn induced_subdigraph(&self, mut keep: impl FnMut(usize) -> bool) -> Digraph {
        let mut index = vec![usize::MAX; self.n];
        let mut kept = 0;
        for (v, slot) in index.iter_mut().enumerate() {
            if keep(v) {
                *slot = kept;
                kept += 1;
            }
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        let labels = self.labels.as_ref().map(|labels| {
            labels
                .iter()
                .enumerate()
                .filter(|&(v, _)| index[v] != usize::MAX)
                .map(|(_, l)| l.clone())
                .collect()
        });
        Digraph {
            n: kept,
            arcs,
            labels,
            name: self.name.clone(),
        }
    }

    pub fn scc(&self) -> SccDecomposition {
        SccDecomposition::new(self)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n > 0 && self.scc().len() == 1
    }

    /// True iff the digraph is a single directed cycle through all vertices
    /// (a lone loop counts as `C_1`).
    pub fn is_directed_cycle(&self) -> bool {
        self.n > 0
            && self.arcs.len() == self.n
            && self.out_degrees().iter().all(|&d| d == 1)
            && self.in_degrees().iter().all(|&d| d == 1)
            && self.is_strongly_connected()
    }

    /// Number of arcs on a longest directed path. Requires an acyclic digraph.
    pub fn longest_path_length(&self) -> Result<usize> {
        if self.has_loop() {
            return Err(Error::NotAcyclic);
        }
        let mut indeg = self.in_degrees();
        let out = self.out_neighbors();
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut longest = vec![0usize; self.n];
        let mut visited = 0;
        while let Some(u) = stack.pop() {
            visited += 1;
            for &v in &out[u] {
                longest[v] = longest[v].max(longest[u] + 1);
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        if visited != self.n {
            return Err(Error::NotAcyclic);
        }
        Ok(longest.into_iter().max().unwrap_or(0))
    }

    /// Adjacency multiplicities as a dense row-major `n x n` table.
    pub fn multiplicity_table(&self) -> Vec<u32> {
        let mut table = vec![0u32; self.n * self.n];
        for &(u, v) in &self.arcs {
            table[u * self.n + v] += 1;
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_uvwx() -> Digraph {
        Digraph::from_arcs(4, vec![(0, 1), (1, 2), (2, 3), (1, 0), (2, 0), (3, 0)]).unwrap()
    }

    #[test]
    fn build_validates() {
        assert!(Digraph::from_arcs(1, vec![(0, 0)]).is_ok());
        assert!(matches!(
            Digraph::from_arcs(2, vec![(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        ));
        assert!(matches!(
            Digraph::new(2, vec![], Some(vec!["a".into(), "a".into()])),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            Digraph::new(2, vec![], Some(vec!["a".into()])),
            Err(Error::LabelCountMismatch { expected: 2, got: 1 })
        ));
        let g = example_uvwx();
        assert_eq!(g.arcs()[3], (1, 0));
        assert_eq!((g.order(), g.size()), (4, 6));
    }

    #[test]
    fn line_of_cycle_is_cycle() {
        let l = Digraph::cycle(3).line();
        assert_eq!((l.order(), l.size()), (3, 3));
        assert!(l.is_directed_cycle());
    }

    #[test]
    fn line_of_single_arc() {
        let l = Digraph::from_arcs(2, vec![(0, 1)]).unwrap().line();
        assert_eq!((l.order(), l.size()), (1, 0));
    }

    #[test]
    fn loops_and_parallel_arcs() {
        // a loop yields a loop; parallel arcs are distinct line vertices
        let g = Digraph::from_arcs(1, vec![(0, 0), (0, 0)]).unwrap();
        let l = g.line();
        assert_eq!(l.order(), 2);
        assert_eq!(l.arcs(), &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let g = Digraph::from_arcs(2, vec![(0, 1), (0, 1), (1, 0)]).unwrap();
        let l = g.line();
        assert_eq!(l.arcs(), &[(0, 2), (1, 2), (2, 0), (2, 1)]);
    }

    #[test]
    fn iterate_orders() {
        let (_, orders) = Digraph::cycle(3).line_iterate(5).unwrap();
        assert_eq!(orders, vec![3; 6]);
        let (last, orders) = Digraph::path(3).line_iterate(3).unwrap();
        assert_eq!(orders, vec![3, 2, 1, 0]);
        assert!(last.is_empty());
    }

    #[test]
    fn iterate_respects_limit() {
        let g = Digraph::from_arcs(1, vec![(0, 0), (0, 0)]).unwrap();
        let err = g.line_iterate_with(20, IterLimits::with_max_order(1000)).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { order: 1024, limit: 1000 }));
    }

    #[test]
    fn converse_reverses() {
        let g = Digraph::from_arcs(2, vec![(0, 1)]).unwrap();
        assert_eq!(g.converse().arcs(), &[(1, 0)]);
        assert_eq!(g.converse().converse(), g);
        assert!(Digraph::cycle(3).converse().is_directed_cycle());
    }

    #[test]
    fn overlap_labels_extend_words() {
        let labels = ["01", "10", "11"].map(String::from).to_vec();
        let g = Digraph::new(3, vec![(0, 1), (1, 0), (0, 2), (2, 2), (2, 1)], Some(labels)).unwrap();
        assert!(g.labels_overlap());
        let l = g.line();
        assert_eq!(l.labels().unwrap(), &["010", "101", "011", "111", "110"]);
    }

    #[test]
    fn non_overlap_labels_join() {
        let labels = ["a", "bb"].map(String::from).to_vec();
        let g = Digraph::new(2, vec![(0, 1), (1, 0)], Some(labels)).unwrap();
        assert_eq!(g.line().labels().unwrap(), &["a|bb", "bb|a"]);
        // parallel arcs cannot carry distinct joined labels
        let labels = ["a", "bb"].map(String::from).to_vec();
        let g = Digraph::new(2, vec![(0, 1), (0, 1)], Some(labels)).unwrap();
        assert!(g.line().labels().is_none());
    }

    #[test]
    fn longest_paths() {
        assert_eq!(Digraph::path(3).longest_path_length().unwrap(), 2);
        assert_eq!(Digraph::from_arcs(4, vec![]).unwrap().longest_path_length().unwrap(), 0);
        let star = Digraph::from_arcs(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.longest_path_length().unwrap(), 1);
        assert!(matches!(Digraph::cycle(3).longest_path_length(), Err(Error::NotAcyclic)));
        let looped = Digraph::from_arcs(2, vec![(0, 1), (1, 1)]).unwrap();
        assert!(matches!(looped.longest_path_length(), Err(Error::NotAcyclic)));
    }

    #[test]
    fn induced_keeps_order() {
        let g = example_uvwx();
        let h = g.induced_subdigraph(|v| v != 3);
        assert_eq!(h.arcs(), &[(0, 1), (1, 2), (1, 0), (2, 0)]);
    }

    #[test]
    fn directed_cycle_detection() {
        assert!(Digraph::cycle(1).is_directed_cycle());
        assert!(Digraph::cycle(5).is_directed_cycle());
        assert!(!Digraph::from_arcs(1, vec![(0, 0), (0, 0)]).unwrap().is_directed_cycle());
        assert!(!Digraph::path(2).is_directed_cycle());
        let two_cycles = Digraph::from_arcs(4, vec![(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        assert!(!two_cycles.is_directed_cycle());
    }
}
