use super::Digraph;

/// Largest order for which [`isomorphism`] searches exhaustively.
pub const MAX_EXACT_ISO_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// Too large for the exhaustive search, but every invariant agrees.
    FingerprintsMatch,
}

/// Cheap isomorphism invariants: order, size, degree multiset, SCC profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub size: usize,
    pub degrees: Vec<(usize, usize, usize)>,
    pub scc_profile: Vec<(usize, bool)>,
}

impl Fingerprint {
    pub fn of(g: &Digraph) -> Self {
        let (ins, outs) = (g.in_degrees(), g.out_degrees());
        let mut loops = vec![0; g.order()];
        for &(u, v) in g.arcs() {
            if u == v {
                loops[u] += 1;
            }
        }
        let mut degrees: Vec<_> = (0..g.order()).map(|v| (ins[v], outs[v], loops[v])).collect();
        degrees.sort_unstable();
        let scc = g.scc();
        let mut scc_profile: Vec<_> = (0..scc.len())
            .map(|c| (scc.components[c].len(), scc.is_directed_cycle[c]))
            .collect();
        scc_profile.sort_unstable();
        Fingerprint {
            order: g.order(),
            size: g.size(),
            degrees,
            scc_profile,
        }
    }
}

/// Decide isomorphism exactly up to [`MAX_EXACT_ISO_ORDER`] vertices by
/// backtracking over degree-compatible bijections; beyond that only the
/// fingerprints are compared.
pub fn isomorphism(g: &Digraph, h: &Digraph) -> IsoVerdict {
    let (fg, fh) = (Fingerprint::of(g), Fingerprint::of(h));
    if fg != fh {
        return IsoVerdict::NotIsomorphic;
    }
    if g.order() > MAX_EXACT_ISO_ORDER {
        return IsoVerdict::FingerprintsMatch;
    }
    let search = Search::new(g, h);
    if search.run() {
        IsoVerdict::Isomorphic
    } else {
        IsoVerdict::NotIsomorphic
    }
}

struct Search {
    n: usize,
    a: Vec<u32>,
    b: Vec<u32>,
    deg_g: Vec<(usize, usize)>,
    deg_h: Vec<(usize, usize)>,
}

impl Search {
    fn new(g: &Digraph, h: &Digraph) -> Self {
        let zip = |d: &Digraph| d.in_degrees().into_iter().zip(d.out_degrees()).collect();
        Search {
            n: g.order(),
            a: g.multiplicity_table(),
            b: h.multiplicity_table(),
            deg_g: zip(g),
            deg_h: zip(h),
        }
    }

    fn run(&self) -> bool {
        let mut image = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        self.extend(&mut image, &mut used)
    }

    fn extend(&self, image: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = image.len();
        if i == self.n {
            return true;
        }
        let n = self.n;
        for cand in 0..n {
            if used[cand] || self.deg_g[i] != self.deg_h[cand] {
                continue;
            }
            if self.a[i * n + i] != self.b[cand * n + cand] {
                continue;
            }
            let consistent = image.iter().enumerate().all(|(j, &pj)| {
                self.a[i * n + j] == self.b[cand * n + pj] && self.a[j * n + i] == self.b[pj * n + cand]
            });
            if !consistent {
                continue;
            }
            used[cand] = true;
            image.push(cand);
            if self.extend(image, used) {
                return true;
            }
            image.pop();
            used[cand] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_cycle() {
        let g = Digraph::cycle(4);
        let h = Digraph::from_arcs(4, vec![(2, 0), (0, 3), (3, 1), (1, 2)]).unwrap();
        assert_eq!(isomorphism(&g, &h), IsoVerdict::Isomorphic);
        assert_eq!(isomorphism(&g, &g.converse()), IsoVerdict::Isomorphic);
    }

    #[test]
    fn same_degrees_different_structure() {
        // C6 versus two disjoint triangles
        let g = Digraph::cycle(6);
        let h = Digraph::from_arcs(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(isomorphism(&g, &h), IsoVerdict::NotIsomorphic);
        // a branching vertex in different positions
        let p = Digraph::from_arcs(4, vec![(0, 1), (1, 2), (1, 3)]).unwrap();
        let q = Digraph::from_arcs(4, vec![(0, 1), (0, 2), (2, 3)]).unwrap();
        assert_eq!(isomorphism(&p, &q), IsoVerdict::NotIsomorphic);
    }

    #[test]
    fn large_instances_fall_back() {
        let g = Digraph::cycle(12);
        assert_eq!(isomorphism(&g, &g.line()), IsoVerdict::FingerprintsMatch);
        assert_eq!(isomorphism(&g, &Digraph::path(12)), IsoVerdict::NotIsomorphic);
    }
}
