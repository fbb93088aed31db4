//! Invariants of a single dessin `(σ, τ)`.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{count_cycles, CycleType, Permutation};
use crate::permgroup::{GroupError, PermGroup};
use crate::rotation::RotationPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DessinError {
    #[error("sigma has degree {sigma} but tau has degree {tau}")]
    DegreeMismatch { sigma: usize, tau: usize },
    #[error("<sigma, tau> is not transitive on the edge labels")]
    NotTransitive,
    #[error("exponent {exponent} is not coprime to the {colour} degree {degree}")]
    NotCoprime {
        colour: &'static str,
        exponent: i64,
        degree: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Black, white and face degrees, each ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DessinPassport {
    pub black: CycleType,
    pub white: CycleType,
    pub faces: CycleType,
}

impl fmt::Display for DessinPassport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{};{})", self.black, self.white, self.faces)
    }
}

/// Cheap isomorphism-invariant summary of the monodromy group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonodromyFingerprint {
    #[serde(with = "crate::serde_biguint")]
    pub order: BigUint,
    pub all_even: bool,
    #[serde(with = "crate::serde_biguint")]
    pub point_stabilizer_order: BigUint,
    pub odd_generators: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DessinInvariants {
    pub genus: u32,
    pub passport: DessinPassport,
    pub face_count: usize,
    #[serde(with = "crate::serde_biguint")]
    pub monodromy_order: BigUint,
    pub fingerprint: MonodromyFingerprint,
    pub regular: bool,
    pub uniform: bool,
    pub dualizable: bool,
}

/// `τσ`: apply `τ`, then `σ`. Its cycles are the faces.
pub fn face_permutation(p: &RotationPair) -> Permutation {
    p.tau.then(&p.sigma)
}

/// Genus from Euler's formula; `None` if the parity or sign is off.
pub fn euler_genus(e: usize, alpha: usize, beta: usize, gamma: usize) -> Option<u32> {
    let chi = (alpha + beta + gamma) as i64 - e as i64;
    if chi > 2 || (2 - chi) % 2 != 0 {
        return None;
    }
    Some(((2 - chi) / 2) as u32)
}

fn check_degrees(p: &RotationPair) -> Result<(), DessinError> {
    if p.sigma.degree() != p.tau.degree() {
        return Err(DessinError::DegreeMismatch {
            sigma: p.sigma.degree(),
            tau: p.tau.degree(),
        });
    }
    Ok(())
}

/// Combinatorial invariants only; no group computation.
pub(crate) fn genus_and_passport(p: &RotationPair) -> (u32, DessinPassport) {
    let faces = face_permutation(p);
    let passport = DessinPassport {
        black: p.sigma.cycle_type(),
        white: p.tau.cycle_type(),
        faces: faces.cycle_type(),
    };
    let genus = euler_genus(
        p.degree(),
        passport.black.count(),
        passport.white.count(),
        passport.faces.count(),
    )
    .expect("Euler characteristic of a transitive pair");
    (genus, passport)
}

pub fn invariants(p: &RotationPair) -> Result<DessinInvariants, DessinError> {
    check_degrees(p)?;
    if !p.is_transitive() {
        return Err(DessinError::NotTransitive);
    }
    let e = p.degree();
    let (genus, passport) = genus_and_passport(p);
    let group = PermGroup::from_generators(vec![p.sigma.clone(), p.tau.clone()])?;
    let order = group.order();
    let stab = &order / BigUint::from(e);
    let odd = u8::from(!p.sigma.is_even()) + u8::from(!p.tau.is_even());
    let uniform = [&passport.black, &passport.white, &passport.faces]
        .iter()
        .all(|c| c.is_uniform());
    Ok(DessinInvariants {
        genus,
        face_count: passport.faces.count(),
        passport,
        regular: order == BigUint::from(e),
        fingerprint: MonodromyFingerprint {
            order: order.clone(),
            all_even: odd == 0,
            point_stabilizer_order: stab,
            odd_generators: odd,
        },
        monodromy_order: order,
        uniform,
        dualizable: is_dualizable(p),
    })
}

/// Whether the faces can be 2-coloured.
///
/// Colour each label `i` by `c(i) ∈ ℤ₂` so that `c(σ(i)) = c(τ(i)) = c(i) + 1`;
/// this is a proper 2-colouring of the graph with edges `{i, σ(i)}` and
/// `{i, τ(i)}`. Given such `c`, `ρ(g) = c(1^g) − c(1)` is a homomorphism
/// `M → ℤ₂` with `ρ(σ) = ρ(τ) = 1` that kills `Stab(1)`. Conversely such a
/// `ρ` yields `c(1^g) = ρ(g)`, well defined because `Stab(1) ≤ ker ρ`, and
/// `M` is transitive so every label is reached.
pub fn is_dualizable(p: &RotationPair) -> bool {
    let n = p.degree();
    let (s, t) = (p.sigma.images0(), p.tau.images0());
    let s_inv = p.sigma.inverse();
    let t_inv = p.tau.inverse();
    let (si, ti) = (s_inv.images0(), t_inv.images0());
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            let c = colour[x].unwrap();
            for y in [s[x], t[x], si[x], ti[x]] {
                let y = y as usize;
                match colour[y] {
                    None => {
                        colour[y] = Some(!c);
                        queue.push_back(y);
                    }
                    Some(d) if d == c => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Literal check of the homomorphism criterion by enumerating `M`.
///
/// Elements are reached breadth-first from the identity by right
/// multiplication with `σ` or `τ`; each gets the parity of the first word
/// found. The assignment is accepted if every generator edge respects it and
/// every element fixing label 1 has even parity. Since `ℤ₂` is abelian and
/// `σ, τ` must both map to the generator, this parity map is the only
/// candidate homomorphism.
pub fn dualizable_oracle(p: &RotationPair, cap: u64) -> Result<bool, DessinError> {
    check_degrees(p)?;
    let n = p.degree();
    let group = PermGroup::from_generators(vec![p.sigma.clone(), p.tau.clone()])?;
    let order = group.order();
    if order > BigUint::from(cap) {
        return Err(GroupError::CapExceeded { order, cap }.into());
    }
    let gens = [&p.sigma, &p.tau];
    let mut parity: std::collections::HashMap<Permutation, bool> = Default::default();
    let id = Permutation::identity(n);
    parity.insert(id.clone(), false);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        let pg = parity[&g];
        for s in gens {
            let h = g.then(s);
            match parity.get(&h) {
                None => {
                    parity.insert(h.clone(), !pg);
                    queue.push_back(h);
                }
                Some(&ph) if ph == pg => return Ok(false),
                Some(_) => {}
            }
        }
    }
    Ok(parity.iter().all(|(g, &odd)| g.apply(1) != 1 || !odd))
}

/// `(σ⁻¹, τ⁻¹)`.
pub fn mirror(p: &RotationPair) -> RotationPair {
    RotationPair::new(p.sigma.inverse(), p.tau.inverse())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Wilson's operation `H(r, s)`: `(σʳ, τˢ)`.
pub fn wilson(p: &RotationPair, r: i64, s: i64) -> Result<RotationPair, DessinError> {
    check_degrees(p)?;
    for (colour, exponent, perm) in [("black", r, &p.sigma), ("white", s, &p.tau)] {
        for &d in perm.cycle_type().lengths() {
            if gcd(exponent.unsigned_abs(), d as u64) != 1 {
                return Err(DessinError::NotCoprime {
                    colour,
                    exponent,
                    degree: d,
                });
            }
        }
    }
    Ok(RotationPair::new(p.sigma.pow(r), p.tau.pow(s)))
}

/// Number of faces, computed without allocating a permutation.
pub(crate) fn face_count_tables(sigma: &[u32], tau: &[u32], buf: &mut Vec<u32>) -> usize {
    buf.clear();
    buf.extend(tau.iter().map(|&t| sigma[t as usize]));
    count_cycles(buf)
}
