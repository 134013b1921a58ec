// SPDX-License-Identifier: Apache-2.0

//! Exact maximum clique by branch and bound over bitsets, with greedy
//! colouring bounds.

#[derive(Debug, Clone)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn empty(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    fn and_not_assign(&mut self, other: &Bits) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
    }

    /// Keeps only vertices greater than `v`.
    pub fn above(&self, v: usize) -> Bits {
        let mut b = self.clone();
        for (i, w) in b.words.iter_mut().enumerate() {
            let lo = i * 64;
            if lo + 63 <= v {
                *w = 0;
            } else if lo <= v {
                *w &= !0u64 << (v - lo + 1);
            }
        }
        b
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

pub(crate) struct Graph {
    pub adj: Vec<Bits>,
}

pub(crate) struct Search<'g> {
    graph: &'g Graph,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    pub exhausted: bool,
}

impl<'g> Search<'g> {
    pub fn new(graph: &'g Graph, budget: u64) -> Self {
        Search { graph, best: Vec::new(), nodes: 0, budget, exhausted: false }
    }

    /// Largest clique inside `cand`.
    pub fn maximum(&mut self, cand: &Bits) -> Vec<usize> {
        self.best.clear();
        self.expand(&mut Vec::new(), cand.clone());
        self.best.clone()
    }

    /// Some clique of size `k` inside `cand`, if one exists.
    pub fn find(&mut self, cand: &Bits, k: usize) -> Option<Vec<usize>> {
        if k == 0 {
            return Some(Vec::new());
        }
        self.best.clear();
        self.expand_goal(&mut Vec::new(), cand.clone(), k);
        (self.best.len() >= k).then(|| self.best.clone())
    }

    /// Greedy sequential colouring: vertices in colour order with the
    /// running colour count as an upper bound on clique size.
    fn colour(&self, cand: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count());
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut uncoloured = cand.clone();
        let mut k = 0;
        while !uncoloured.is_empty() {
            k += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.and_not_assign(&self.graph.adj[v]);
                uncoloured.remove(v);
                order.push(v);
                bounds.push(k);
            }
        }
        (order, bounds)
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: Bits) {
        if self.tick() {
            return;
        }
        let (order, bounds) = self.colour(&cand);
        for i in (0..order.len()).rev() {
            if current.len() + bounds[i] <= self.best.len() || self.exhausted {
                return;
            }
            let v = order[i];
            current.push(v);
            let next = cand.and(&self.graph.adj[v]);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            cand.remove(v);
        }
    }

    fn expand_goal(&mut self, current: &mut Vec<usize>, mut cand: Bits, k: usize) {
        if self.tick() {
            return;
        }
        let (order, bounds) = self.colour(&cand);
        for i in (0..order.len()).rev() {
            if current.len() + bounds[i] < k || self.exhausted || self.best.len() >= k {
                return;
            }
            let v = order[i];
            current.push(v);
            if current.len() >= k {
                self.best = current.clone();
                current.pop();
                return;
            }
            let next = cand.and(&self.graph.adj[v]);
            if !next.is_empty() {
                self.expand_goal(current, next, k);
            }
            current.pop();
            cand.remove(v);
        }
    }
}

/// Lexicographically smallest maximum clique (sorted vertex lists compared
/// element by element). Returns the clique and whether the search finished
/// within `budget` nodes; an unfinished search returns the best clique seen.
pub(crate) fn lex_max_clique(graph: &Graph, budget: u64) -> (Vec<usize>, bool) {
    let n = graph.adj.len();
    let mut search = Search::new(graph, budget);
    let all = Bits::full(n);
    let best = search.maximum(&all);
    if search.exhausted {
        let mut best = best;
        best.sort_unstable();
        return (best, false);
    }
    let omega = best.len();
    // Fix members one at a time, smallest feasible vertex first.
    let mut chosen = Vec::with_capacity(omega);
    let mut cand = all;
    while chosen.len() < omega {
        let need = omega - chosen.len() - 1;
        let mut picked = None;
        for v in cand.iter().collect::<Vec<_>>() {
            let rest = cand.and(&graph.adj[v]).above(v);
            if rest.count() < need {
                continue;
            }
            match search.find(&rest, need) {
                Some(_) => {
                    picked = Some((v, rest));
                    break;
                }
                None if search.exhausted => {
                    let mut best = best;
                    best.sort_unstable();
                    return (best, false);
                }
                None => {}
            }
        }
        let (v, rest) = picked.expect("a maximum clique exists through some vertex");
        chosen.push(v);
        cand = rest;
    }
    (chosen, true)
}
