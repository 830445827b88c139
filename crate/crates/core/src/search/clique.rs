//! Exact maximum clique by branch and bound over bitsets, with a greedy
//! colouring bound.

use crate::error::{Error, Result};

type Word = u64;
const BITS: usize = Word::BITS as usize;

/// Undirected graph with adjacency rows stored as bitsets.
#[derive(Clone, Debug)]
pub(crate) struct BitGraph {
    order: usize,
    stride: usize,
    rows: Vec<Word>,
}

impl BitGraph {
    pub(crate) fn new(order: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let stride = order.div_ceil(BITS).max(1);
        let mut rows = vec![0; order * stride];
        for u in 0..order {
            for v in u + 1..order {
                if adjacent(u, v) {
                    rows[u * stride + v / BITS] |= 1 << (v % BITS);
                    rows[v * stride + u / BITS] |= 1 << (u % BITS);
                }
            }
        }
        BitGraph {
            order,
            stride,
            rows,
        }
    }

    fn row(&self, v: usize) -> &[Word] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / BITS] >> (v % BITS) & 1 == 1
    }

    /// The same graph with vertices renumbered so that `perm[new] = old`.
    fn permuted(&self, perm: &[usize]) -> BitGraph {
        BitGraph::new(self.order, |a, b| self.is_adjacent(perm[a], perm[b]))
    }
}

fn set(bits: &mut [Word], v: usize) {
    bits[v / BITS] |= 1 << (v % BITS);
}

fn clear(bits: &mut [Word], v: usize) {
    bits[v / BITS] &= !(1 << (v % BITS));
}

fn first(bits: &[Word]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(idx, w)| idx * BITS + w.trailing_zeros() as usize)
}

fn is_empty(bits: &[Word]) -> bool {
    bits.iter().all(|&w| w == 0)
}

fn count(bits: &[Word]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// Smallest-last ordering: repeatedly peel a vertex of minimum remaining
/// degree and place it at the back.
fn smallest_last(graph: &BitGraph) -> Vec<usize> {
    let n = graph.order;
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut order = vec![0; n];
    for slot in (0..n).rev() {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
            .expect("a vertex remains");
        alive[v] = false;
        order[slot] = v;
        for u in 0..n {
            if alive[u] && graph.is_adjacent(u, v) {
                degree[u] -= 1;
            }
        }
    }
    order
}

#[derive(Clone, Debug, Default)]
pub(crate) struct CliqueOptions {
    pub max_nodes: Option<u64>,
    /// A known clique (original labels) used as the starting incumbent.
    pub incumbent: Vec<usize>,
    /// Stop as soon as the incumbent reaches this size.
    pub target: Option<usize>,
    /// Vertex classes closed under a graph automorphism group, processed in
    /// order at the root. Must partition the vertex set.
    pub orbits: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug)]
pub(crate) struct CliqueOutcome {
    pub clique: Vec<usize>,
    pub nodes: u64,
}

struct Solver<'a> {
    graph: &'a BitGraph,
    best: Vec<usize>,
    nodes: u64,
    max_nodes: Option<u64>,
    target: Option<usize>,
}

impl Solver<'_> {
    fn done(&self) -> bool {
        self.target.is_some_and(|t| self.best.len() >= t)
    }

    /// Greedy sequential colouring of `cand`; returns vertices in
    /// non-decreasing colour order along with their colours.
    fn colour(&self, cand: &[Word]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.to_vec();
        let mut order = Vec::with_capacity(count(cand));
        let mut colours = Vec::with_capacity(order.capacity());
        let mut colour = 0;
        let mut class = vec![0; cand.len()];
        while !is_empty(&uncoloured) {
            colour += 1;
            class.copy_from_slice(&uncoloured);
            while let Some(v) = first(&class) {
                clear(&mut class, v);
                clear(&mut uncoloured, v);
                for (c, r) in class.iter_mut().zip(self.graph.row(v)) {
                    *c &= !r;
                }
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, cand: &mut [Word]) -> Result<()> {
        self.nodes += 1;
        if let Some(limit) = self.max_nodes {
            if self.nodes > limit {
                return Err(Error::BudgetExceeded(format!(
                    "node budget of {limit} exhausted"
                )));
            }
        }
        let (order, colours) = self.colour(cand);
        for idx in (0..order.len()).rev() {
            if clique.len() + colours[idx] <= self.best.len() || self.done() {
                return Ok(());
            }
            let v = order[idx];
            clique.push(v);
            let mut next: Vec<Word> = cand
                .iter()
                .zip(self.graph.row(v))
                .map(|(a, b)| a & b)
                .collect();
            if is_empty(&next) {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, &mut next)?;
            }
            clique.pop();
            clear(cand, v);
        }
        Ok(())
    }
}

/// Maximum clique of `graph`. Returned vertices use the caller's labels.
pub(crate) fn max_clique(graph: &BitGraph, opts: &CliqueOptions) -> Result<CliqueOutcome> {
    let n = graph.order;
    if n == 0 {
        return Ok(CliqueOutcome {
            clique: Vec::new(),
            nodes: 0,
        });
    }
    let perm = smallest_last(graph);
    let mut label = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        label[old] = new;
    }
    let relabelled = graph.permuted(&perm);
    let mut solver = Solver {
        graph: &relabelled,
        best: opts.incumbent.iter().map(|&v| label[v]).collect(),
        nodes: 0,
        max_nodes: opts.max_nodes,
        target: opts.target,
    };
    debug_assert!(solver
        .best
        .iter()
        .enumerate()
        .all(|(a, &u)| solver.best[a + 1..]
            .iter()
            .all(|&v| relabelled.is_adjacent(u, v))));

    let stride = relabelled.stride;
    match &opts.orbits {
        None => {
            let mut all = vec![0; stride];
            (0..n).for_each(|v| set(&mut all, v));
            solver.expand(&mut Vec::new(), &mut all)?;
        }
        Some(orbits) => {
            // Any clique meets a first orbit O; an automorphism moves the
            // meeting vertex onto O's representative while keeping earlier
            // orbits disjoint from the image.
            let mut allowed = vec![0; stride];
            (0..n).for_each(|v| set(&mut allowed, v));
            for orbit in orbits {
                if solver.done() {
                    break;
                }
                let Some(&rep) = orbit.first() else { continue };
                let rep = label[rep];
                let mut cand: Vec<Word> = allowed
                    .iter()
                    .zip(relabelled.row(rep))
                    .map(|(a, b)| a & b)
                    .collect();
                let mut clique = vec![rep];
                if 1 + count(&cand) > solver.best.len() {
                    if is_empty(&cand) {
                        solver.best = clique.clone();
                    } else {
                        solver.expand(&mut clique, &mut cand)?;
                    }
                }
                for &v in orbit {
                    clear(&mut allowed, label[v]);
                }
            }
        }
    }
    Ok(CliqueOutcome {
        clique: solver.best.iter().map(|&v| perm[v]).collect(),
        nodes: solver.nodes,
    })
}
