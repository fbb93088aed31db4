//! Minimum and maximum orientable embedding genus of a plain multigraph.
//!
//! After cleanifying, `τ` is the fixed involution pairing the two halves of
//! every edge, so only `σ` varies. With `e` original edges, `α` vertices and
//! `γ` faces Euler's formula gives `g = 1 + (e − α − γ)/2`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::bgraph::{BipartiteGraph, PlainGraph};
use crate::dessin::{euler_genus, face_count_tables};
use crate::perm::Permutation;
use crate::rotation::{RotationError, RotationPair, RotationSpace};

#[derive(Debug, Error)]
pub enum GenusError {
    #[error("{count} rotation systems exceed the budget of {budget}")]
    Budget { count: BigUint, budget: u64 },
    #[error(transparent)]
    Rotation(#[from] RotationError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusRange {
    pub mu: u32,
    pub nu: u32,
    pub gamma_max: usize,
    pub gamma_min: usize,
    /// `σ` attaining `γ_max`, on the clean graph.
    pub min_witness: Permutation,
    /// `σ` attaining `γ_min`, on the clean graph.
    pub max_witness: Permutation,
    /// The fixed `τ` of the clean graph.
    pub tau: Permutation,
    pub clean: BipartiteGraph,
}

impl GenusRange {
    pub fn min_pair(&self) -> RotationPair {
        RotationPair::new(self.min_witness.clone(), self.tau.clone())
    }

    pub fn max_pair(&self) -> RotationPair {
        RotationPair::new(self.max_witness.clone(), self.tau.clone())
    }
}

/// Full sweep: extremes with their first witnesses, and face-count counts.
#[derive(Debug, Clone)]
struct Sweep {
    max: (usize, u64),
    min: (usize, u64),
    faces: BTreeMap<usize, u64>,
}

impl Sweep {
    fn merge(mut self, other: Sweep) -> Sweep {
        // Ties keep the smaller index so the witness is deterministic.
        if (other.max.0, std::cmp::Reverse(other.max.1))
            > (self.max.0, std::cmp::Reverse(self.max.1))
        {
            self.max = other.max;
        }
        if (other.min.0, other.min.1) < (self.min.0, self.min.1) {
            self.min = other.min;
        }
        for (k, v) in other.faces {
            *self.faces.entry(k).or_insert(0) += v;
        }
        self
    }
}

fn sweep(
    plain: &PlainGraph,
    budget: u64,
) -> Result<(BipartiteGraph, RotationSpace, Sweep), GenusError> {
    let clean = plain.cleanify();
    let count = clean.candidate_count();
    if count > BigUint::from(budget) {
        return Err(GenusError::Budget { count, budget });
    }
    let space = RotationSpace::new(&clean)?;
    let chunks = (rayon::current_num_threads() * 8).clamp(1, space.len().max(1) as usize);
    let parts: Vec<Sweep> = (0..chunks)
        .into_par_iter()
        .map(|i| -> Result<Sweep, RotationError> {
            let mut pairs = space.chunk(i, chunks)?;
            let mut buf = Vec::new();
            let mut acc = Sweep {
                max: (0, u64::MAX),
                min: (usize::MAX, u64::MAX),
                faces: BTreeMap::new(),
            };
            while let Some((s, t)) = pairs.peek_tables() {
                let gamma = face_count_tables(s, t, &mut buf);
                let at = pairs.position();
                if gamma > acc.max.0 {
                    acc.max = (gamma, at);
                }
                if gamma < acc.min.0 {
                    acc.min = (gamma, at);
                }
                *acc.faces.entry(gamma).or_insert(0) += 1;
                pairs.advance();
            }
            Ok(acc)
        })
        .collect::<Result<_, _>>()?;
    let total = parts
        .into_iter()
        .reduce(Sweep::merge)
        .expect("at least one chunk");
    Ok((clean, space, total))
}

fn genus_of(plain: &PlainGraph, gamma: usize) -> u32 {
    // Clean graph: 2e labels, α black vertices, e white vertices.
    let e = plain.edge_count();
    euler_genus(2 * e, plain.vertex_count(), e, gamma).expect("Euler characteristic")
}

pub fn genus_range(plain: &PlainGraph, budget: u64) -> Result<GenusRange, GenusError> {
    let (clean, space, sweep) = sweep(plain, budget)?;
    let min_pair = space.pair_at(sweep.max.1);
    let max_pair = space.pair_at(sweep.min.1);
    Ok(GenusRange {
        mu: genus_of(plain, sweep.max.0),
        nu: genus_of(plain, sweep.min.0),
        gamma_max: sweep.max.0,
        gamma_min: sweep.min.0,
        min_witness: min_pair.sigma,
        max_witness: max_pair.sigma,
        tau: min_pair.tau,
        clean,
    })
}

/// Number of rotation systems of each genus.
pub fn genus_histogram(plain: &PlainGraph, budget: u64) -> Result<BTreeMap<u32, u64>, GenusError> {
    let (_, _, sweep) = sweep(plain, budget)?;
    let mut out = BTreeMap::new();
    for (gamma, n) in sweep.faces {
        *out.entry(genus_of(plain, gamma)).or_insert(0) += n;
    }
    Ok(out)
}
