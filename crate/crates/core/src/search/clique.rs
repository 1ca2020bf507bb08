//! Maximal clique enumeration (Bron–Kerbosch with Tomita pivoting) over
//! bitset adjacency rows.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn intersection_len(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BitSet::new(n); n],
        }
    }

    /// Builds the graph from a symmetric predicate, evaluated once per pair.
    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let rows: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|u| (u + 1..n).filter(|&v| edge(u, v)).collect())
            .collect();
        let mut g = Graph::new(n);
        for (u, row) in rows.into_iter().enumerate() {
            for v in row {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }
}

/// Sizes of all maximal cliques with the lexicographically smallest sorted
/// vertex list per size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliqueSpectrum {
    pub witnesses: BTreeMap<usize, Vec<usize>>,
    pub maximal_cliques: u64,
    /// False when the deadline cut the enumeration short.
    pub complete: bool,
}

impl CliqueSpectrum {
    fn record(&mut self, clique: &[usize]) {
        self.maximal_cliques += 1;
        let mut sorted = clique.to_vec();
        sorted.sort_unstable();
        match self.witnesses.get_mut(&sorted.len()) {
            Some(w) if *w <= sorted => {}
            Some(w) => *w = sorted,
            None => {
                self.witnesses.insert(sorted.len(), sorted);
            }
        }
    }

    fn merge(mut self, other: CliqueSpectrum) -> CliqueSpectrum {
        self.maximal_cliques += other.maximal_cliques;
        self.complete &= other.complete;
        for (size, w) in other.witnesses {
            match self.witnesses.get_mut(&size) {
                Some(cur) if *cur <= w => {}
                Some(cur) => *cur = w,
                None => {
                    self.witnesses.insert(size, w);
                }
            }
        }
        self
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.witnesses.keys().copied().collect()
    }
}

struct Search<'a> {
    graph: &'a Graph,
    deadline: Option<Instant>,
    aborted: &'a AtomicBool,
    calls: u64,
    out: CliqueSpectrum,
}

impl Search<'_> {
    fn expired(&mut self) -> bool {
        self.calls += 1;
        if self.aborted.load(Ordering::Relaxed) {
            return true;
        }
        if self.calls % 1024 == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet) {
        if self.expired() {
            return;
        }
        if p.is_empty() {
            if x.is_empty() {
                self.out.record(r);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| {
                (
                    p.intersection_len(self.graph.neighbors(u)),
                    std::cmp::Reverse(u),
                )
            })
            .expect("P is non-empty");
        let branch: Vec<usize> = p.difference(self.graph.neighbors(pivot)).iter().collect();
        for v in branch {
            let nv = self.graph.neighbors(v);
            r.push(v);
            self.expand(r, p.intersection(nv), x.intersection(nv));
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }
}

/// Enumerates every maximal clique of `graph`. The top level splits on the
/// lowest vertex of each clique and runs those branches in parallel; the
/// result does not depend on scheduling.
pub fn maximal_clique_spectrum(graph: &Graph, deadline: Option<Instant>) -> CliqueSpectrum {
    let n = graph.len();
    let aborted = AtomicBool::new(false);
    if n == 0 {
        let mut out = CliqueSpectrum {
            complete: true,
            ..Default::default()
        };
        out.record(&[]);
        return out;
    }
    let merged = (0..n)
        .into_par_iter()
        .map(|v| {
            let nv = graph.neighbors(v);
            let mut later = BitSet::new(n);
            let mut earlier = BitSet::new(n);
            for u in nv.iter() {
                if u > v {
                    later.insert(u);
                } else {
                    earlier.insert(u);
                }
            }
            let mut s = Search {
                graph,
                deadline,
                aborted: &aborted,
                calls: 0,
                out: CliqueSpectrum {
                    complete: true,
                    ..Default::default()
                },
            };
            s.expand(&mut vec![v], later, earlier);
            s.out
        })
        .reduce(
            || CliqueSpectrum {
                complete: true,
                ..Default::default()
            },
            CliqueSpectrum::merge,
        );
    CliqueSpectrum {
        complete: !aborted.load(Ordering::Relaxed),
        ..merged
    }
}
