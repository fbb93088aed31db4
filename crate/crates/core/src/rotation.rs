//! Streaming enumeration of rotation pairs `(σ, τ)`.
//!
//! Every vertex contributes `(deg − 1)!` local rotations: the smallest
//! incident label comes first and the remaining labels run through all
//! arrangements in lexicographic order. A pair is addressed by a mixed-radix
//! index whose digits are per-vertex rotation indices, black vertices first
//! and varying fastest, so any index range can be replayed independently.

use std::ops::Range;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::bgraph::BipartiteGraph;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("chunk index {index} out of range for {count} chunks")]
    BadChunk { index: usize, count: usize },
    #[error("rotation pair count {0} does not fit in 64 bits")]
    TooMany(String),
    #[error("{which} is not a product of local rotations: vertex {vertex:?} {why}")]
    NotInFamily {
        which: &'static str,
        vertex: String,
        why: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Black(usize),
    White(usize),
}

/// A cyclic order of the labels at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRotation {
    pub vertex: Vertex,
    pub cycle: Vec<usize>,
}

/// One candidate dessin: black rotations in `sigma`, white in `tau`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationPair {
    pub sigma: Permutation,
    pub tau: Permutation,
}

impl RotationPair {
    pub fn new(sigma: Permutation, tau: Permutation) -> Self {
        RotationPair { sigma, tau }
    }

    pub fn degree(&self) -> usize {
        self.sigma.degree()
    }

    /// `⟨σ, τ⟩` acts transitively on the labels.
    pub fn is_transitive(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return true;
        }
        let (s, t) = (self.sigma.images0(), self.tau.images0());
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in [s[x] as usize, t[x] as usize] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }
}

/// All local rotations at a vertex, in enumeration order.
pub fn local_rotations(graph: &BipartiteGraph, vertex: Vertex) -> Vec<LocalRotation> {
    let labels = match vertex {
        Vertex::Black(i) => graph.black_labels(i),
        Vertex::White(j) => graph.white_labels(j),
    };
    cycles_through(&labels)
        .into_iter()
        .map(|cycle| LocalRotation { vertex, cycle })
        .collect()
}

fn cycles_through(labels: &[usize]) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = labels.split_first() else {
        return vec![Vec::new()];
    };
    let mut rest = rest.to_vec();
    rest.sort_unstable();
    let mut out = Vec::new();
    loop {
        let mut cycle = Vec::with_capacity(labels.len());
        cycle.push(first);
        cycle.extend_from_slice(&rest);
        out.push(cycle);
        if !next_permutation(&mut rest) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Precomputed local rotations of a graph; the index space of all pairs.
#[derive(Debug, Clone)]
pub struct RotationSpace {
    degree: usize,
    alpha: usize,
    /// Per vertex (blacks, then whites): its rotations as 0-based cycles.
    slots: Vec<Vec<Vec<u32>>>,
    total: u64,
}

impl RotationSpace {
    pub fn new(graph: &BipartiteGraph) -> Result<Self, RotationError> {
        let total = graph
            .candidate_count()
            .to_u64()
            .ok_or_else(|| RotationError::TooMany(graph.candidate_count().to_string()))?;
        let zero_based = |labels: Vec<usize>| -> Vec<Vec<u32>> {
            cycles_through(&labels)
                .into_iter()
                .map(|c| c.into_iter().map(|l| (l - 1) as u32).collect())
                .collect()
        };
        let slots = (0..graph.black_count())
            .map(|i| zero_based(graph.black_labels(i)))
            .chain((0..graph.white_count()).map(|j| zero_based(graph.white_labels(j))))
            .collect();
        Ok(RotationSpace {
            degree: graph.edge_count(),
            alpha: graph.black_count(),
            slots,
            total,
        })
    }

    /// Number of pairs, `N(𝒢)`.
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    fn digits(&self, mut index: u64) -> Vec<usize> {
        self.slots
            .iter()
            .map(|s| {
                let r = s.len() as u64;
                let d = (index % r) as usize;
                index /= r;
                d
            })
            .collect()
    }

    fn write_slot(&self, slot: usize, digit: usize, s: &mut [u32], t: &mut [u32]) {
        let cycle = &self.slots[slot][digit];
        let table = if slot < self.alpha { s } else { t };
        for k in 0..cycle.len() {
            table[cycle[k] as usize] = cycle[(k + 1) % cycle.len()];
        }
    }

    /// The pair with the given mixed-radix index.
    pub fn pair_at(&self, index: u64) -> RotationPair {
        assert!(index < self.total, "pair index out of range");
        let mut s: Vec<u32> = (0..self.degree as u32).collect();
        let mut t = s.clone();
        for (slot, d) in self.digits(index).into_iter().enumerate() {
            self.write_slot(slot, d, &mut s, &mut t);
        }
        RotationPair {
            sigma: Permutation::from_images0(s).expect("rotation"),
            tau: Permutation::from_images0(t).expect("rotation"),
        }
    }

    pub fn iter(&self) -> Pairs<'_> {
        self.range(0..self.total)
    }

    /// Pairs with indices in `range`.
    pub fn range(&self, range: Range<u64>) -> Pairs<'_> {
        let end = range.end.min(self.total);
        let start = range.start.min(end);
        let mut s: Vec<u32> = (0..self.degree as u32).collect();
        let mut t = s.clone();
        let digits = if start < end {
            let d = self.digits(start);
            for (slot, &x) in d.iter().enumerate() {
                self.write_slot(slot, x, &mut s, &mut t);
            }
            d
        } else {
            vec![0; self.slots.len()]
        };
        Pairs {
            space: self,
            next: start,
            end,
            digits,
            sigma: s,
            tau: t,
        }
    }

    /// Index range of chunk `index` out of `count` contiguous chunks.
    pub fn chunk_range(&self, index: usize, count: usize) -> Result<Range<u64>, RotationError> {
        if count == 0 || index >= count {
            return Err(RotationError::BadChunk { index, count });
        }
        let n = self.total as u128;
        let start = (n * index as u128 / count as u128) as u64;
        let end = (n * (index as u128 + 1) / count as u128) as u64;
        Ok(start..end)
    }

    pub fn chunk(&self, index: usize, count: usize) -> Result<Pairs<'_>, RotationError> {
        Ok(self.range(self.chunk_range(index, count)?))
    }
}

/// Iterator over a contiguous index range; advances the mixed-radix counter
/// in place.
#[derive(Debug, Clone)]
pub struct Pairs<'a> {
    space: &'a RotationSpace,
    next: u64,
    end: u64,
    digits: Vec<usize>,
    sigma: Vec<u32>,
    tau: Vec<u32>,
}

impl Pairs<'_> {
    /// Current tables without allocating; `None` when exhausted. Call
    /// [`advance`](Self::advance) to move on.
    pub fn peek_tables(&self) -> Option<(&[u32], &[u32])> {
        (self.next < self.end).then_some((&self.sigma[..], &self.tau[..]))
    }

    pub fn advance(&mut self) {
        self.next += 1;
        if self.next >= self.end {
            return;
        }
        for slot in 0..self.digits.len() {
            let radix = self.space.slots[slot].len();
            if radix == 1 {
                continue;
            }
            self.digits[slot] += 1;
            if self.digits[slot] == radix {
                self.digits[slot] = 0;
                self.space
                    .write_slot(slot, 0, &mut self.sigma, &mut self.tau);
            } else {
                self.space
                    .write_slot(slot, self.digits[slot], &mut self.sigma, &mut self.tau);
                break;
            }
        }
    }

    /// Index of the pair [`peek_tables`](Self::peek_tables) returns.
    pub fn position(&self) -> u64 {
        self.next
    }
}

impl Iterator for Pairs<'_> {
    type Item = RotationPair;

    fn next(&mut self) -> Option<RotationPair> {
        let (s, t) = self.peek_tables()?;
        let pair = RotationPair {
            sigma: Permutation::from_images0(s.to_vec()).expect("rotation"),
            tau: Permutation::from_images0(t.to_vec()).expect("rotation"),
        };
        self.advance();
        Some(pair)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

/// All pairs of the graph in enumeration order.
pub fn enumerate_pairs(graph: &BipartiteGraph) -> Result<Vec<RotationPair>, RotationError> {
    Ok(RotationSpace::new(graph)?.iter().collect())
}

/// Checks that `sigma` (resp. `tau`) restricted to the labels of each black
/// (resp. white) vertex is one cycle through all of them.
pub fn check_membership(graph: &BipartiteGraph, pair: &RotationPair) -> Result<(), RotationError> {
    let e = graph.edge_count();
    for (which, perm, count, labels_of, ids) in [
        (
            "sigma",
            &pair.sigma,
            graph.black_count(),
            &(|i| graph.black_labels(i)) as &dyn Fn(usize) -> Vec<usize>,
            graph.black_ids(),
        ),
        (
            "tau",
            &pair.tau,
            graph.white_count(),
            &(|j| graph.white_labels(j)) as &dyn Fn(usize) -> Vec<usize>,
            graph.white_ids(),
        ),
    ] {
        if perm.degree() != e {
            return Err(RotationError::NotInFamily {
                which,
                vertex: String::new(),
                why: format!("degree {} differs from the edge count {e}", perm.degree()),
            });
        }
        for v in 0..count {
            let labels = labels_of(v);
            let mut x = labels[0];
            for step in 1..=labels.len() {
                x = perm.apply(x);
                if !labels.contains(&x) {
                    return Err(RotationError::NotInFamily {
                        which,
                        vertex: ids[v].clone(),
                        why: format!("sends an incident label to {x}"),
                    });
                }
                if x == labels[0] && step < labels.len() {
                    return Err(RotationError::NotInFamily {
                        which,
                        vertex: ids[v].clone(),
                        why: "has more than one cycle on its labels".into(),
                    });
                }
            }
        }
    }
    Ok(())
}
