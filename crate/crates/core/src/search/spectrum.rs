//! Sizes of all maximal constant rank-distance sets.
//!
//! Adjoining 0 to a constant rank-distance k set never breaks the property,
//! so every maximal set contains 0 and is `{0} ∪ C` for a maximal clique `C`
//! of the graph on rank-k matrices with `A ~ B ⇔ rank(A − B) = k`.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hermitian::{HermMatrix, HermitianSpace, RankSet, DEFAULT_ENUMERATION_BUDGET};
use crate::scheme::valency;

use super::clique::{maximal_clique_spectrum, Graph};

/// The rank-k graph on a list of hermitian matrices.
#[derive(Clone, Debug)]
pub struct RankGraph {
    field: Arc<FieldSpec>,
    n: usize,
    k: usize,
    vertices: Vec<HermMatrix>,
    graph: Graph,
}

impl RankGraph {
    pub fn new(field: Arc<FieldSpec>, n: usize, k: usize, vertices: Vec<HermMatrix>) -> Self {
        let f = &*field;
        let graph = Graph::from_fn(vertices.len(), |u, v| {
            vertices[u].rank_distance(&vertices[v], f) == k
        });
        RankGraph {
            field,
            n,
            k,
            vertices,
            graph,
        }
    }

    /// The rank-k matrices in enumeration order, with their rank-k graph.
    pub fn neighborhood_of_zero(
        field: Arc<FieldSpec>,
        n: usize,
        k: usize,
        budget: u64,
    ) -> Result<Self> {
        use rayon::prelude::*;
        let space = HermitianSpace::new(&field, n);
        let count = space.check_budget(budget)?;
        let vertices: Vec<HermMatrix> = (0..count)
            .into_par_iter()
            .filter_map(|i| {
                let h = space.get(i);
                (h.rank(&field) == k).then_some(h)
            })
            .collect();
        Ok(Self::new(field, n, k, vertices))
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[HermMatrix] {
        &self.vertices
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Largest neighbourhood of 0 the search accepts.
    pub max_vertices: u64,
    /// Wall-clock ceiling; exceeding it yields an incomplete result.
    pub time_limit: Option<Duration>,
    /// Largest `q^{n²}` the vertex enumeration may scan.
    pub enumeration: u64,
    /// Restrict to cliques through the first vertex. Sound because the
    /// congruences `X ↦ P·X·conj(P)ᵀ` fix 0 and act transitively on rank-k
    /// matrices, so every maximal set is equivalent to one containing it.
    pub anchored: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 4096,
            time_limit: None,
            enumeration: DEFAULT_ENUMERATION_BUDGET,
            anchored: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    /// Sorted distinct sizes of maximal sets found.
    pub sizes: Vec<usize>,
    /// One witness per size, containing 0; the lexicographically smallest
    /// among the cliques explored.
    pub witnesses: BTreeMap<usize, RankSet>,
    pub maximal_cliques: u64,
    pub vertices: usize,
    /// False if the time limit stopped the search; `sizes` is then only a
    /// subset of the spectrum.
    pub complete: bool,
    pub elapsed: Duration,
}

/// All sizes of maximal constant rank-distance `k` sets in H_n(F_{q²}).
pub fn maximal_set_spectrum(
    field: Arc<FieldSpec>,
    n: usize,
    k: usize,
    budget: SearchBudget,
) -> Result<SpectrumResult> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::Usage(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let start = Instant::now();
    let q = field.q() as u64;
    let expected = valency(k, q, n);
    let needed = expected.to_u128().unwrap_or(u128::MAX);
    if needed > budget.max_vertices as u128 {
        return Err(Error::BudgetExceeded {
            required: needed,
            budget: budget.max_vertices,
        });
    }
    let rg = RankGraph::neighborhood_of_zero(field.clone(), n, k, budget.enumeration)?;
    if rg.vertices().len() as u128 != needed {
        return Err(Error::Consistency(format!(
            "found {} rank-{k} matrices, valency formula gives {needed}",
            rg.vertices().len()
        )));
    }
    let deadline = budget.time_limit.map(|t| start + t);

    // Vertex ids into rg.vertices for the graph actually searched, plus the
    // vertices forced into every clique.
    let (ids, forced): (Vec<usize>, Vec<usize>) = if budget.anchored {
        (rg.graph().neighbors(0).iter().collect(), vec![0])
    } else {
        ((0..rg.vertices().len()).collect(), vec![])
    };
    let sub = Graph::from_fn(ids.len(), |u, v| rg.graph().has_edge(ids[u], ids[v]));
    let cliques = maximal_clique_spectrum(&sub, deadline);

    let zero = HermMatrix::zero(n);
    let mut witnesses = BTreeMap::new();
    for clique in cliques.witnesses.values() {
        let mut idx: Vec<usize> = forced
            .iter()
            .copied()
            .chain(clique.iter().map(|&c| ids[c]))
            .collect();
        idx.sort_unstable();
        let members = std::iter::once(zero.clone())
            .chain(idx.into_iter().map(|i| rg.vertices()[i].clone()))
            .collect();
        let set = RankSet::new(field.clone(), n, k, members)?;
        witnesses.insert(set.len(), set);
    }
    Ok(SpectrumResult {
        q,
        n,
        k,
        sizes: witnesses.keys().copied().collect(),
        witnesses,
        maximal_cliques: cliques.maximal_cliques,
        vertices: rg.vertices().len(),
        complete: cliques.complete,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{is_constant_rank_distance, is_maximal};

    #[test]
    fn q2_n2() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let r1 = maximal_set_spectrum(f.clone(), 2, 1, SearchBudget::default()).unwrap();
        assert!(r1.complete);
        assert_eq!(*r1.sizes.last().unwrap(), 2);
        let r2 = maximal_set_spectrum(f.clone(), 2, 2, SearchBudget::default()).unwrap();
        assert!(r2.complete);
        assert_eq!(r2.vertices, 10);
        let max = *r2.sizes.last().unwrap();
        assert!((5..=6).contains(&max));
        for w in r2.witnesses.values() {
            assert!(is_constant_rank_distance(w, 2).holds());
            assert!(is_maximal(w, DEFAULT_ENUMERATION_BUDGET).unwrap());
        }
    }

    #[test]
    fn anchored_matches_full() {
        for (q, n, k) in [(2u64, 2usize, 1usize), (2, 2, 2), (3, 2, 2), (3, 2, 1)] {
            let f = Arc::new(FieldSpec::from_q(q).unwrap());
            let full = maximal_set_spectrum(f.clone(), n, k, SearchBudget::default()).unwrap();
            let anchored = maximal_set_spectrum(
                f,
                n,
                k,
                SearchBudget {
                    anchored: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(full.sizes, anchored.sizes, "q={q} n={n} k={k}");
        }
    }

    #[test]
    fn vertex_budget() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let tight = SearchBudget {
            max_vertices: 9,
            ..Default::default()
        };
        assert!(matches!(
            maximal_set_spectrum(f, 2, 2, tight),
            Err(Error::BudgetExceeded {
                required: 10,
                budget: 9
            })
        ));
    }
}
