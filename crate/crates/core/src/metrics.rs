//! Distances and inner metric parameters.
//!
//! Inner parameters only look at finite distances: the inner out-eccentricity
//! of `u` is the largest finite `dist(u, v)`, the inner diameter the largest
//! finite distance overall, and the radii are minima of the eccentricities.
//! A vertex that reaches nothing but itself has eccentricity 0.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::digraph::{Digraph, IterLimits};
use crate::error::{Error, Result};

/// All-pairs shortest path lengths; `None` marks an unreachable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    entries: Vec<Option<u32>>,
}

impl DistanceTable {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        self.entries[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Option<u32>] {
        &self.entries[u * self.n..(u + 1) * self.n]
    }
}

/// Breadth-first distances from `source`, reusing the caller's buffers.
fn bfs_row(adj: &[Vec<usize>], source: usize, dist: &mut [Option<u32>], queue: &mut VecDeque<usize>) {
    dist.fill(None);
    dist[source] = Some(0);
    queue.clear();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u].map(|d| d + 1);
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
}

/// Visit every BFS row in source order without storing the whole table.
fn for_each_row(g: &Digraph, mut visit: impl FnMut(usize, &[Option<u32>])) {
    let adj = g.out_neighbors();
    let mut dist = vec![None; g.order()];
    let mut queue = VecDeque::new();
    for u in 0..g.order() {
        bfs_row(&adj, u, &mut dist, &mut queue);
        visit(u, &dist);
    }
}

pub fn distances(g: &Digraph) -> DistanceTable {
    let n = g.order();
    let mut entries = Vec::with_capacity(n * n);
    for_each_row(g, |_, row| entries.extend_from_slice(row));
    DistanceTable { n, entries }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    pub inner_diameter: u32,
    pub inner_out_radius: u32,
    pub inner_in_radius: u32,
    pub out_eccentricities: Vec<u32>,
    pub in_eccentricities: Vec<u32>,
    /// Mean over all ordered pairs at finite distance, diagonal included.
    pub mean_inner_distance: Ratio<u64>,
    pub strongly_connected: bool,
    pub is_directed_cycle: bool,
    /// Ordinary diameter; `None` when some pair is unreachable.
    pub standard_diameter: Option<u32>,
}

impl Serialize for MetricReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MetricReport", 7)?;
        s.serialize_field("inner_diameter", &self.inner_diameter)?;
        s.serialize_field("inner_out_radius", &self.inner_out_radius)?;
        s.serialize_field("inner_in_radius", &self.inner_in_radius)?;
        let mean = format!("{}/{}", self.mean_inner_distance.numer(), self.mean_inner_distance.denom());
        s.serialize_field("mean_inner_distance", &mean)?;
        s.serialize_field("strongly_connected", &self.strongly_connected)?;
        s.serialize_field("is_directed_cycle", &self.is_directed_cycle)?;
        s.serialize_field("standard_diameter", &self.standard_diameter)?;
        s.end()
    }
}

/// Running sums collected while streaming BFS rows.
struct Accumulator {
    ecc_out: Vec<u32>,
    ecc_in: Vec<u32>,
    pairs: u64,
    total: u64,
    off_diagonal_pairs: u64,
    all_reachable: bool,
}

fn accumulate(g: &Digraph) -> Accumulator {
    let n = g.order();
    let mut acc = Accumulator {
        ecc_out: vec![0; n],
        ecc_in: vec![0; n],
        pairs: 0,
        total: 0,
        off_diagonal_pairs: 0,
        all_reachable: true,
    };
    for_each_row(g, |u, row| {
        for (v, d) in row.iter().enumerate() {
            match *d {
                Some(d) => {
                    acc.pairs += 1;
                    acc.total += u64::from(d);
                    if u != v {
                        acc.off_diagonal_pairs += 1;
                    }
                    acc.ecc_out[u] = acc.ecc_out[u].max(d);
                    acc.ecc_in[v] = acc.ecc_in[v].max(d);
                }
                None => acc.all_reachable = false,
            }
        }
    });
    acc
}

/// All inner parameters of a nonempty digraph. Memory use is linear in the
/// order: rows of the distance table are streamed, never stored.
pub fn metric_report(g: &Digraph) -> Result<MetricReport> {
    if g.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    let acc = accumulate(g);
    let inner_diameter = acc.ecc_out.iter().copied().max().unwrap_or(0);
    Ok(MetricReport {
        inner_diameter,
        inner_out_radius: acc.ecc_out.iter().copied().min().unwrap_or(0),
        inner_in_radius: acc.ecc_in.iter().copied().min().unwrap_or(0),
        mean_inner_distance: Ratio::new(acc.total, acc.pairs),
        strongly_connected: acc.all_reachable,
        is_directed_cycle: g.is_directed_cycle(),
        standard_diameter: acc.all_reachable.then_some(inner_diameter),
        out_eccentricities: acc.ecc_out,
        in_eccentricities: acc.ecc_in,
    })
}

/// Largest finite distance; `None` for the digraph with no vertices.
pub fn inner_diameter(g: &Digraph) -> Option<u32> {
    if g.is_empty() {
        return None;
    }
    let mut best = 0;
    for_each_row(g, |_, row| {
        best = row.iter().flatten().copied().fold(best, u32::max);
    });
    Some(best)
}

pub fn mean_inner_distance(g: &Digraph) -> Result<Ratio<u64>> {
    mean_inner_distance_with(g, true).map(|m| m.expect("diagonal pairs are always finite"))
}

/// Mean inner distance, optionally leaving out the zero-distance diagonal.
/// Without the diagonal the mean is undefined (`None`) when no vertex
/// reaches another.
pub fn mean_inner_distance_with(g: &Digraph, include_diagonal: bool) -> Result<Option<Ratio<u64>>> {
    if g.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    let acc = accumulate(g);
    let pairs = if include_diagonal {
        acc.pairs
    } else {
        acc.off_diagonal_pairs
    };
    Ok((pairs > 0).then(|| Ratio::new(acc.total, pairs)))
}

/// Inner diameters of `L^0 g, L^1 g, ...`; stops early at an empty iterate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterSequence {
    pub values: Vec<u32>,
    /// Index of the first empty iterate, when one occurs within range.
    pub empty_from: Option<usize>,
}

pub fn inner_diameter_sequence(g: &Digraph, k: usize) -> Result<DiameterSequence> {
    inner_diameter_sequence_with(g, k, IterLimits::default())
}

pub fn inner_diameter_sequence_with(g: &Digraph, k: usize, limits: IterLimits) -> Result<DiameterSequence> {
    let mut values = Vec::with_capacity(k + 1);
    let mut current = g.clone();
    for i in 0..=k {
        match inner_diameter(&current) {
            Some(d) => values.push(d),
            None => {
                return Ok(DiameterSequence {
                    values,
                    empty_from: Some(i),
                })
            }
        }
        if i < k {
            current = current.checked_line(limits)?;
        }
    }
    Ok(DiameterSequence {
        values,
        empty_from: None,
    })
}

/// Long-run behaviour of the iterated line digraphs of a digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", content = "at")]
pub enum Behavior {
    /// Acyclic: `L^h` is edgeless (`h` = longest path length), later iterates empty.
    VanishesAt(usize),
    /// Every cycle is an isolated directed cycle: sequences become periodic.
    EventuallyPeriodic,
    /// Orders and inner diameters grow without bound.
    Unbounded,
}

/// Classify from the SCC structure.
///
/// Beyond a non-cycle strong component, a directed path from one cyclic
/// component to another also forces unbounded growth: the walk that winds
/// `k` times round the first cycle is at distance at least `k + 1` from the
/// one winding round the second in `L^k`.
pub fn classify_behavior(g: &Digraph) -> Result<Behavior> {
    if g.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    let scc = g.scc();
    let cyclic: Vec<usize> = scc.nontrivial().collect();
    if cyclic.is_empty() {
        return Ok(Behavior::VanishesAt(g.longest_path_length()?));
    }
    if cyclic.iter().any(|&c| !scc.is_directed_cycle[c]) {
        return Ok(Behavior::Unbounded);
    }
    for &c in &cyclic {
        let reach = scc.reachable_from(c);
        if cyclic.iter().any(|&o| o != c && reach[o]) {
            return Ok(Behavior::Unbounded);
        }
    }
    Ok(Behavior::EventuallyPeriodic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_uvwx() -> Digraph {
        Digraph::from_arcs(4, vec![(0, 1), (1, 2), (2, 3), (1, 0), (2, 0), (3, 0)]).unwrap()
    }

    #[test]
    fn cycle_distances() {
        let t = distances(&Digraph::cycle(3));
        assert_eq!(t.get(0, 1), Some(1));
        assert_eq!(t.get(0, 2), Some(2));
        assert_eq!(t.get(0, 0), Some(0));
    }

    #[test]
    fn path_unreachable() {
        let t = distances(&Digraph::path(3));
        assert_eq!(t.get(2, 0), None);
        assert_eq!(t.get(0, 2), Some(2));
    }

    #[test]
    fn example_distances_by_hand() {
        // u=0, v=1, w=2, x=3: u->v->w->x and x->u
        let t = distances(&example_uvwx());
        assert_eq!(t.get(0, 3), Some(3));
        assert_eq!(t.get(3, 0), Some(1));
    }

    #[test]
    fn example_radii() {
        let r = metric_report(&example_uvwx()).unwrap();
        assert_eq!((r.inner_out_radius, r.inner_in_radius), (2, 1));
        assert_eq!(r.out_eccentricities[1], 2);
        assert_eq!(r.in_eccentricities[0], 1);
        assert!(r.strongly_connected);
        assert_eq!(r.standard_diameter, Some(r.inner_diameter));
        // converse swaps the radii
        let c = metric_report(&example_uvwx().converse()).unwrap();
        assert_eq!((c.inner_out_radius, c.inner_in_radius), (1, 2));
    }

    #[test]
    fn cycle_report() {
        let r = metric_report(&Digraph::cycle(5)).unwrap();
        assert_eq!((r.inner_diameter, r.inner_out_radius, r.inner_in_radius), (4, 4, 4));
        assert!(r.strongly_connected && r.is_directed_cycle);
    }

    #[test]
    fn means() {
        assert_eq!(mean_inner_distance(&Digraph::cycle(3)).unwrap(), Ratio::new(1, 1));
        let arc = Digraph::path(2);
        assert_eq!(mean_inner_distance(&arc).unwrap(), Ratio::new(1, 3));
        assert_eq!(mean_inner_distance_with(&arc, false).unwrap(), Some(Ratio::new(1, 1)));
        let isolated = Digraph::from_arcs(2, vec![]).unwrap();
        assert_eq!(mean_inner_distance_with(&isolated, false).unwrap(), None);
        assert!(matches!(mean_inner_distance(&Digraph::empty()), Err(Error::EmptyDigraph)));
    }

    #[test]
    fn edgeless_and_empty() {
        let g = Digraph::from_arcs(3, vec![]).unwrap();
        let r = metric_report(&g).unwrap();
        assert_eq!(r.inner_diameter, 0);
        assert!(!r.strongly_connected);
        assert_eq!(r.standard_diameter, None);
        assert_eq!(inner_diameter(&Digraph::empty()), None);
        assert!(matches!(metric_report(&Digraph::empty()), Err(Error::EmptyDigraph)));
    }

    #[test]
    fn report_json_keys() {
        let r = metric_report(&Digraph::path(2)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"inner_diameter":1,"inner_out_radius":0,"inner_in_radius":0,"mean_inner_distance":"1/3","strongly_connected":false,"is_directed_cycle":false,"standard_diameter":null}"#
        );
    }

    #[test]
    fn path_diameter_sequence_vanishes() {
        let s = inner_diameter_sequence(&Digraph::path(3), 5).unwrap();
        assert_eq!(s.values, vec![2, 1, 0]);
        assert_eq!(s.empty_from, Some(3));
    }

    #[test]
    fn behaviors() {
        assert_eq!(classify_behavior(&Digraph::path(3)).unwrap(), Behavior::VanishesAt(2));
        assert_eq!(classify_behavior(&Digraph::cycle(4)).unwrap(), Behavior::EventuallyPeriodic);
        let chord = Digraph::from_arcs(3, vec![(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
        assert_eq!(classify_behavior(&chord).unwrap(), Behavior::Unbounded);
        // loop -> path -> loop: two cycles joined by a path
        let joined = Digraph::from_arcs(3, vec![(0, 0), (0, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(classify_behavior(&joined).unwrap(), Behavior::Unbounded);
        let disjoint = Digraph::from_arcs(4, vec![(0, 0), (0, 1), (3, 3), (2, 3)]).unwrap();
        assert_eq!(classify_behavior(&disjoint).unwrap(), Behavior::EventuallyPeriodic);
        assert!(matches!(classify_behavior(&Digraph::empty()), Err(Error::EmptyDigraph)));
    }

    #[test]
    fn joined_cycles_grow() {
        let joined = Digraph::from_arcs(3, vec![(0, 0), (0, 1), (1, 2), (2, 2)]).unwrap();
        let s = inner_diameter_sequence(&joined, 6).unwrap();
        assert!(s.values.windows(2).all(|w| w[1] > w[0]), "{:?}", s.values);
    }
}
