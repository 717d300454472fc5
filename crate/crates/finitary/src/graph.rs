//! Plain digraph helpers: reachability, SCCs and lasso search.

use std::collections::VecDeque;

/// Adjacency-list digraph.
#[derive(Clone, Debug, Default)]
pub struct Digraph {
    pub succ: Vec<Vec<usize>>,
}

/// A lasso `stem · cycle^ω` over graph nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeLasso {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Digraph {
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    /// BFS through nodes satisfying `ok`. Returns parent links; roots map to themselves.
    pub fn bfs(&self, roots: &[usize], ok: &dyn Fn(usize) -> bool) -> Vec<Option<usize>> {
        self.bfs_order(roots, ok).0
    }

    /// Like [`Digraph::bfs`], also returning the discovery order.
    pub fn bfs_order(&self, roots: &[usize], ok: &dyn Fn(usize) -> bool) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent = vec![None; self.len()];
        let mut order = Vec::new();
        for &r in roots {
            if ok(r) && parent[r].is_none() {
                parent[r] = Some(r);
                order.push(r);
            }
        }
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.succ[u] {
                if ok(w) && parent[w].is_none() {
                    parent[w] = Some(u);
                    order.push(w);
                }
            }
        }
        (parent, order)
    }

    /// Path from a root to `target` following BFS parents, `target` excluded.
    pub fn path_to(parent: &[Option<usize>], target: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = target;
        while let Some(p) = parent[cur] {
            if p == cur {
                break;
            }
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Shortest path from `from` to `to` inside `ok`, both ends included.
    /// `from == to` asks for a cycle of positive length; it is returned
    /// without repeating the end node.
    pub fn path_within(&self, from: usize, to: usize, ok: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
        const FIRST: usize = usize::MAX;
        let mut parent: Vec<Option<usize>> = vec![None; self.len()];
        let mut q = VecDeque::new();
        for &w in &self.succ[from] {
            if ok(w) && parent[w].is_none() {
                parent[w] = Some(FIRST);
                q.push_back(w);
            }
        }
        while let Some(u) = q.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while let Some(p) = parent[cur] {
                    if p == FIRST {
                        break;
                    }
                    path.push(p);
                    cur = p;
                }
                if from != to {
                    path.push(from);
                }
                path.reverse();
                if from == to {
                    // rotate so the cycle starts at `from`
                    path.rotate_right(1);
                }
                return Some(path);
            }
            for &w in &self.succ[u] {
                if ok(w) && parent[w].is_none() {
                    parent[w] = Some(u);
                    q.push_back(w);
                }
            }
        }
        None
    }

    /// Strongly connected components of the subgraph induced by `ok`.
    /// Returns the component id per node (`usize::MAX` outside `ok`) and the count.
    pub fn sccs(&self, ok: &dyn Fn(usize) -> bool) -> (Vec<usize>, usize) {
        let n = self.len();
        const NONE: usize = usize::MAX;
        let mut index = vec![NONE; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![NONE; n];
        let mut stack = Vec::new();
        let mut next_index = 0;
        let mut count = 0;
        for s in 0..n {
            if !ok(s) || index[s] != NONE {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(s, 0)];
            index[s] = next_index;
            low[s] = next_index;
            next_index += 1;
            stack.push(s);
            on_stack[s] = true;
            while let Some(&mut (u, ref mut i)) = call.last_mut() {
                if *i < self.succ[u].len() {
                    let w = self.succ[u][*i];
                    *i += 1;
                    if !ok(w) {
                        continue;
                    }
                    if index[w] == NONE {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[u] = low[u].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(p, _)) = call.last() {
                        low[p] = low[p].min(low[u]);
                    }
                    if low[u] == index[u] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = count;
                            if w == u {
                                break;
                            }
                        }
                        count += 1;
                    }
                }
            }
        }
        (comp, count)
    }

    /// A lasso whose stem stays in `stem_ok`, whose cycle stays in `cyc_ok`
    /// and passes through a node satisfying `must`. Prefers short stems.
    pub fn find_lasso(
        &self,
        roots: &[usize],
        stem_ok: &dyn Fn(usize) -> bool,
        cyc_ok: &dyn Fn(usize) -> bool,
        must: &dyn Fn(usize) -> bool,
    ) -> Option<NodeLasso> {
        let (parent, order) = self.bfs_order(roots, stem_ok);
        let (comp, count) = self.sccs(cyc_ok);
        let mut size = vec![0usize; count];
        for &c in &comp {
            if c != usize::MAX {
                size[c] += 1;
            }
        }
        for x in order {
            if !cyc_ok(x) || !must(x) {
                continue;
            }
            let c = comp[x];
            if size[c] == 1 && !self.succ[x].contains(&x) {
                continue;
            }
            let same = |u: usize| comp[u] == c;
            let cycle = self.path_within(x, x, &same).expect("nontrivial component");
            let stem = Self::path_to(&parent, x);
            return Some(NodeLasso { stem, cycle });
        }
        None
    }

    /// Any lasso starting with the path to `target` (reached inside `stem_ok`)
    /// and continuing arbitrarily.
    pub fn lasso_through(
        &self,
        roots: &[usize],
        stem_ok: &dyn Fn(usize) -> bool,
        target: &dyn Fn(usize) -> bool,
    ) -> Option<NodeLasso> {
        let parent = self.bfs(roots, stem_ok);
        let x = (0..self.len()).find(|&u| parent[u].is_some() && target(u))?;
        let mut stem = Self::path_to(&parent, x);
        // walk on from x until a node repeats
        let mut seen = vec![usize::MAX; self.len()];
        let mut walk = Vec::new();
        let mut cur = x;
        loop {
            if seen[cur] != usize::MAX {
                let at = seen[cur];
                let cycle = walk[at..].to_vec();
                stem.extend_from_slice(&walk[..at]);
                return Some(NodeLasso { stem, cycle });
            }
            seen[cur] = walk.len();
            walk.push(cur);
            cur = *self.succ[cur].first()?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(succ: Vec<Vec<usize>>) -> Digraph {
        Digraph { succ }
    }

    #[test]
    fn scc_basic() {
        let d = g(vec![vec![1], vec![0, 2], vec![2], vec![0]]);
        let (comp, count) = d.sccs(&|_| true);
        assert_eq!(count, 3);
        assert_eq!(comp[0], comp[1]);
        assert_ne!(comp[2], comp[0]);
    }

    #[test]
    fn cycles_found() {
        let d = g(vec![vec![1], vec![0, 2], vec![2]]);
        assert_eq!(d.path_within(2, 2, &|_| true), Some(vec![2]));
        assert_eq!(d.path_within(0, 0, &|_| true), Some(vec![0, 1]));
        assert_eq!(d.path_within(0, 2, &|_| true), Some(vec![0, 1, 2]));
        let l = d.find_lasso(&[0], &|_| true, &|_| true, &|u| u == 2).unwrap();
        assert_eq!(l.stem, vec![0, 1]);
        assert_eq!(l.cycle, vec![2]);
        assert!(d.find_lasso(&[0], &|_| true, &|u| u != 2, &|u| u == 2).is_none());
        let l = d.lasso_through(&[0], &|_| true, &|u| u == 1).unwrap();
        assert_eq!(l.stem, vec![0]);
        assert_eq!(l.cycle, vec![1, 0]);
    }
}
