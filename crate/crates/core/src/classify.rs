//! Orbits of rotation pairs under conjugation by `θ(G_𝒢)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::bgraph::{BipartiteGraph, EdgeActionGroup, GraphError, GraphPassport};
use crate::dessin::{self, DessinError, DessinInvariants};
use crate::perm::Permutation;
use crate::permgroup::{GroupError, PermGroup, DEFAULT_ELEMENT_CAP};
use crate::rotation::{RotationError, RotationPair, RotationSpace};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("{count} rotation pairs exceed the budget of {budget}")]
    Budget { count: BigUint, budget: u64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rotation(#[from] RotationError),
    #[error(transparent)]
    Dessin(#[from] DessinError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Refuse graphs with more rotation pairs than this.
    pub budget: u64,
    /// Largest group that may be enumerated element by element.
    pub element_cap: u64,
    /// Cross-check duality against the brute-force criterion where the
    /// monodromy group is within `element_cap`.
    pub duality_oracle: bool,
    /// Apply `H(r, s)` to every representative and record the target orbit.
    pub wilson: Option<(i64, i64)>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: DEFAULT_BUDGET,
            element_cap: DEFAULT_ELEMENT_CAP,
            duality_oracle: false,
            wilson: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MirrorStatus {
    Reflexive,
    Chiral { partner: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DessinRecord {
    pub orbit_id: usize,
    pub representative: RotationPair,
    pub orbit_length: u64,
    pub aut_order: u64,
    pub aut_generators: Vec<Permutation>,
    pub invariants: DessinInvariants,
    pub mirror: MirrorStatus,
    pub wilson_target: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSummary {
    pub passport: GraphPassport,
    pub edge_count: usize,
    pub black_count: usize,
    pub white_count: usize,
    pub black_degrees: Vec<usize>,
    pub white_degrees: Vec<usize>,
    pub aut_group_order: BigUint,
    pub candidate_count: BigUint,
}

impl GraphSummary {
    pub fn of(graph: &BipartiteGraph, aut_group_order: BigUint) -> Self {
        GraphSummary {
            passport: graph.passport(),
            edge_count: graph.edge_count(),
            black_count: graph.black_count(),
            white_count: graph.white_count(),
            black_degrees: graph.black_degrees(),
            white_degrees: graph.white_degrees(),
            aut_group_order,
            candidate_count: graph.candidate_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub graph: GraphSummary,
    pub wilson: Option<(i64, i64)>,
    pub records: Vec<DessinRecord>,
    pub genus_histogram: BTreeMap<u32, u64>,
    pub dualizable_histogram: BTreeMap<u32, u64>,
}

/// `(θ(φ)⁻¹ σ θ(φ), θ(φ)⁻¹ τ θ(φ))`.
pub fn act(phi_edge: &Permutation, p: &RotationPair) -> RotationPair {
    RotationPair::new(p.sigma.conjugate_by(phi_edge), p.tau.conjugate_by(phi_edge))
}

/// The elements of `θ(G_𝒢)` prepared for fast conjugation.
#[derive(Debug, Clone)]
pub struct Canonicalizer {
    degree: usize,
    elements: Vec<Permutation>,
    /// `(g, g⁻¹)` image tables of the non-identity elements.
    tables: Vec<(Box<[u32]>, Box<[u32]>)>,
}

impl Canonicalizer {
    pub fn new(group: &PermGroup, cap: u64) -> Result<Self, GroupError> {
        let elements = group.elements(cap)?;
        let tables = elements
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| (g.images0().into(), g.inverse().images0().into()))
            .collect();
        Ok(Canonicalizer {
            degree: group.degree(),
            elements,
            tables,
        })
    }

    pub fn group_order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Writes the least `σ' ‖ τ'` image table over the group into `best`.
    ///
    /// Entry `j` of `g⁻¹ p g` is `g[p[g⁻¹[j]]]`, so candidates are produced
    /// in index order and abandoned at the first entry that exceeds `best`.
    pub fn canonical_key_into(&self, sigma: &[u32], tau: &[u32], best: &mut Vec<u32>) {
        let e = self.degree;
        best.clear();
        best.extend_from_slice(sigma);
        best.extend_from_slice(tau);
        for (g, gi) in &self.tables {
            let mut less = false;
            for j in 0..2 * e {
                let v = if j < e {
                    g[sigma[gi[j] as usize] as usize]
                } else {
                    g[tau[gi[j - e] as usize] as usize]
                };
                if less {
                    best[j] = v;
                } else if v < best[j] {
                    less = true;
                    best[j] = v;
                } else if v > best[j] {
                    break;
                }
            }
        }
    }

    pub fn canonical_key(&self, p: &RotationPair) -> Vec<u32> {
        let mut key = Vec::with_capacity(2 * self.degree);
        self.canonical_key_into(p.sigma.images0(), p.tau.images0(), &mut key);
        key
    }

    pub fn canonical_form(&self, p: &RotationPair) -> RotationPair {
        pair_from_key(&self.canonical_key(p))
    }

    /// Elements of the group fixing `p` under conjugation.
    pub fn stabilizer_elements(&self, p: &RotationPair) -> Vec<Permutation> {
        let mut buf = vec![0u32; self.degree];
        self.elements
            .iter()
            .filter(|g| {
                crate::perm::conjugate_into(p.sigma.images0(), g.images0(), &mut buf);
                if buf[..] != *p.sigma.images0() {
                    return false;
                }
                crate::perm::conjugate_into(p.tau.images0(), g.images0(), &mut buf);
                buf[..] == *p.tau.images0()
            })
            .cloned()
            .collect()
    }
}

fn pair_from_key(key: &[u32]) -> RotationPair {
    let e = key.len() / 2;
    RotationPair::new(
        Permutation::from_images0(key[..e].to_vec()).expect("key holds a permutation"),
        Permutation::from_images0(key[e..].to_vec()).expect("key holds a permutation"),
    )
}

/// Least conjugate of `p` under `θ(G_𝒢)`, comparing `σ` then `τ` image
/// tables lexicographically.
pub fn canonical_form(
    p: &RotationPair,
    group: &EdgeActionGroup,
    cap: u64,
) -> Result<RotationPair, GroupError> {
    Ok(Canonicalizer::new(group.theta(), cap)?.canonical_form(p))
}

/// The conjugation stabilizer of `p` in `θ(G_𝒢)`, i.e. `Aut⁺` of the dessin.
pub fn stabilizer(
    p: &RotationPair,
    group: &EdgeActionGroup,
    cap: u64,
) -> Result<PermGroup, GroupError> {
    let elements = Canonicalizer::new(group.theta(), cap)?.stabilizer_elements(p);
    let gens = PermGroup::small_generating_set(&elements, p.degree());
    if gens.is_empty() {
        Ok(PermGroup::trivial(p.degree()))
    } else {
        PermGroup::from_generators(gens)
    }
}

/// Everything known about one pair without classifying the whole family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAnalysis {
    pub invariants: DessinInvariants,
    pub canonical: RotationPair,
    pub orbit_length: u64,
    pub aut_order: u64,
    pub aut_generators: Vec<Permutation>,
    pub reflexive: bool,
}

/// Validates `pair` against `graph` and computes its invariants, stabilizer
/// and mirror status.
pub fn analyze(
    graph: &BipartiteGraph,
    pair: &RotationPair,
    element_cap: u64,
) -> Result<PairAnalysis, ClassifyError> {
    crate::rotation::check_membership(graph, pair)?;
    let group = graph.automorphism_group()?;
    let canon = Canonicalizer::new(group.theta(), element_cap)?;
    let stab = canon.stabilizer_elements(pair);
    let key = canon.canonical_key(pair);
    let reflexive = canon.canonical_key(&dessin::mirror(pair)) == key;
    Ok(PairAnalysis {
        invariants: dessin::invariants(pair)?,
        canonical: pair_from_key(&key),
        orbit_length: canon.group_order() / stab.len() as u64,
        aut_order: stab.len() as u64,
        aut_generators: PermGroup::small_generating_set(&stab, pair.degree()),
        reflexive,
    })
}

/// Orbit counts keyed by canonical `σ ‖ τ` table.
fn count_orbits(
    space: &RotationSpace,
    canon: &Canonicalizer,
) -> Result<BTreeMap<Vec<u32>, u64>, RotationError> {
    let chunks = (rayon::current_num_threads() * 8).clamp(1, space.len().max(1) as usize);
    let partial: Vec<HashMap<Box<[u32]>, u64>> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut counts: HashMap<Box<[u32]>, u64> = HashMap::new();
            let mut key = Vec::new();
            let mut pairs = space.chunk(i, chunks)?;
            while let Some((s, t)) = pairs.peek_tables() {
                canon.canonical_key_into(s, t, &mut key);
                match counts.get_mut(&key[..]) {
                    Some(c) => *c += 1,
                    None => {
                        counts.insert(key.as_slice().into(), 1);
                    }
                }
                pairs.advance();
            }
            Ok(counts)
        })
        .collect::<Result<_, RotationError>>()?;
    let mut merged = BTreeMap::new();
    for counts in partial {
        for (k, c) in counts {
            *merged.entry(k.into_vec()).or_insert(0) += c;
        }
    }
    Ok(merged)
}

struct Draft {
    key: Vec<u32>,
    representative: RotationPair,
    orbit_length: u64,
    aut_order: u64,
    aut_generators: Vec<Permutation>,
    invariants: DessinInvariants,
    mirror_key: Vec<u32>,
    wilson_key: Option<Vec<u32>>,
}

fn draft(
    key: Vec<u32>,
    orbit_length: u64,
    canon: &Canonicalizer,
    options: &ClassifyOptions,
) -> Result<Draft, ClassifyError> {
    let rep = pair_from_key(&key);
    let stab = canon.stabilizer_elements(&rep);
    let aut_order = stab.len() as u64;
    if orbit_length * aut_order != canon.group_order() {
        return Err(ClassifyError::Invariant(format!(
            "orbit of {} has length {orbit_length} and stabilizer order {aut_order}, \
             but the group has order {}",
            rep.sigma,
            canon.group_order()
        )));
    }
    let invariants = dessin::invariants(&rep)?;
    if options.duality_oracle && invariants.monodromy_order <= BigUint::from(options.element_cap) {
        let literal = dessin::dualizable_oracle(&rep, options.element_cap)?;
        if literal != invariants.dualizable {
            return Err(ClassifyError::Invariant(format!(
                "duality colouring says {} but the homomorphism check says {literal} for sigma {}",
                invariants.dualizable, rep.sigma
            )));
        }
    }
    let mirror_key = canon.canonical_key(&dessin::mirror(&rep));
    let wilson_key = match options.wilson {
        Some((r, s)) => Some(canon.canonical_key(&dessin::wilson(&rep, r, s)?)),
        None => None,
    };
    Ok(Draft {
        aut_generators: PermGroup::small_generating_set(&stab, rep.degree()),
        key,
        representative: rep,
        orbit_length,
        aut_order,
        invariants,
        mirror_key,
        wilson_key,
    })
}

/// Splits all rotation pairs of `graph` into isomorphism classes.
///
/// Runs on the current rayon pool; the report does not depend on its size.
pub fn classify(
    graph: &BipartiteGraph,
    options: &ClassifyOptions,
) -> Result<ClassificationReport, ClassifyError> {
    let count = graph.candidate_count();
    if count > BigUint::from(options.budget) {
        return Err(ClassifyError::Budget {
            count,
            budget: options.budget,
        });
    }
    let group = graph.automorphism_group()?;
    let canon = Canonicalizer::new(group.theta(), options.element_cap)?;
    let space = RotationSpace::new(graph)?;
    let orbits = count_orbits(&space, &canon)?;

    let total: u64 = orbits.values().sum();
    if total != space.len() {
        return Err(ClassifyError::Invariant(format!(
            "orbit lengths sum to {total}, expected {}",
            space.len()
        )));
    }

    let mut drafts: Vec<Draft> = orbits
        .into_par_iter()
        .map(|(key, len)| draft(key, len, &canon, options))
        .collect::<Result<_, _>>()?;
    drafts.sort_by(|a, b| {
        (a.invariants.genus, &a.invariants.passport, &a.key).cmp(&(
            b.invariants.genus,
            &b.invariants.passport,
            &b.key,
        ))
    });
    let ids: HashMap<&[u32], usize> = drafts
        .iter()
        .enumerate()
        .map(|(i, d)| (d.key.as_slice(), i))
        .collect();
    let lookup = |key: &[u32], what: &str| -> Result<usize, ClassifyError> {
        ids.get(key).copied().ok_or_else(|| {
            ClassifyError::Invariant(format!("{what} image is not a member of the family"))
        })
    };

    let mut records = Vec::with_capacity(drafts.len());
    for (i, d) in drafts.iter().enumerate() {
        let partner = lookup(&d.mirror_key, "mirror")?;
        let mirror = if partner == i {
            MirrorStatus::Reflexive
        } else {
            MirrorStatus::Chiral { partner }
        };
        let wilson_target = match &d.wilson_key {
            Some(k) => Some(lookup(k, "Wilson")?),
            None => None,
        };
        records.push(DessinRecord {
            orbit_id: i,
            representative: d.representative.clone(),
            orbit_length: d.orbit_length,
            aut_order: d.aut_order,
            aut_generators: d.aut_generators.clone(),
            invariants: d.invariants.clone(),
            mirror,
            wilson_target,
        });
    }

    let mut genus_histogram = BTreeMap::new();
    let mut dualizable_histogram = BTreeMap::new();
    for r in &records {
        *genus_histogram.entry(r.invariants.genus).or_insert(0) += 1;
        let d = dualizable_histogram.entry(r.invariants.genus).or_insert(0);
        *d += u64::from(r.invariants.dualizable);
    }
    let aut_group_order = group.order().clone();
    if aut_group_order.to_u64() != Some(canon.group_order()) {
        return Err(ClassifyError::Invariant(format!(
            "enumerated {} group elements, expected {aut_group_order}",
            canon.group_order()
        )));
    }
    Ok(ClassificationReport {
        graph: GraphSummary::of(graph, aut_group_order),
        wilson: options.wilson,
        records,
        genus_histogram,
        dualizable_histogram,
    })
}
