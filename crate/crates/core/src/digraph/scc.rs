use super::Digraph;

/// Strongly connected components, numbered in topological order of the
/// condensation (a component only has arcs into components with larger ids).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    /// Single vertex without a loop.
    pub is_trivial: Vec<bool>,
    /// The component's internal arcs form exactly one directed cycle.
    pub is_directed_cycle: Vec<bool>,
    condensation: Vec<Vec<usize>>,
}

impl SccDecomposition {
    pub(super) fn new(g: &Digraph) -> Self {
        let n = g.order();
        let adj = g.out_neighbors();
        let raw = tarjan(n, &adj);
        // Tarjan emits components in reverse topological order.
        let count = raw.iter().copied().max().map_or(0, |m| m + 1);
        let component_of: Vec<usize> = raw.iter().map(|&c| count - 1 - c).collect();
        let mut components = vec![Vec::new(); count];
        for (v, &c) in component_of.iter().enumerate() {
            components[c].push(v);
        }

        let mut internal_arcs = vec![0usize; count];
        let mut internal_out = vec![0usize; n];
        let mut internal_in = vec![0usize; n];
        let mut condensation = vec![Vec::new(); count];
        for &(u, v) in g.arcs() {
            let (cu, cv) = (component_of[u], component_of[v]);
            if cu == cv {
                internal_arcs[cu] += 1;
                internal_out[u] += 1;
                internal_in[v] += 1;
            } else {
                condensation[cu].push(cv);
            }
        }
        for succ in &mut condensation {
            succ.sort_unstable();
            succ.dedup();
        }
        let is_trivial = (0..count)
            .map(|c| components[c].len() == 1 && internal_arcs[c] == 0)
            .collect();
        let is_directed_cycle = (0..count)
            .map(|c| {
                internal_arcs[c] == components[c].len()
                    && components[c]
                        .iter()
                        .all(|&v| internal_out[v] == 1 && internal_in[v] == 1)
            })
            .collect();
        SccDecomposition {
            component_of,
            components,
            is_trivial,
            is_directed_cycle,
            condensation,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Ids of the components that contain at least one arc.
    pub fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&c| !self.is_trivial[c])
    }

    /// Distinct successor components of each component.
    pub fn condensation(&self) -> &[Vec<usize>] {
        &self.condensation
    }

    /// Components reachable from `c` (including `c`).
    pub fn reachable_from(&self, c: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[c] = true;
        // ids are topologically sorted, so one forward sweep suffices
        for x in c..self.len() {
            if seen[x] {
                for &y in &self.condensation[x] {
                    seen[y] = true;
                }
            }
        }
        seen
    }
}

/// Iterative Tarjan; returns the component index of every vertex.
fn tarjan(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (vertex, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                while let Some(w) = stack.pop() {
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}
