//! Permutation groups given by generators.
//!
//! Order and membership come from a base and strong generating set built by
//! the deterministic incremental Schreier–Sims algorithm. Base points are the
//! smallest points moved by the element that forces a new level, so the
//! chain (and everything derived from it) is reproducible.
//!
//! Transitive groups of large degree are first tested for being the full
//! alternating or symmetric group with Jordan's criterion: a primitive group
//! of degree `n` that contains a `p`-cycle for a prime `p ≤ n − 3` contains
//! `A_n`. The witnesses are taken from a fixed pseudo-random product
//! replacement sequence; if none is found the chain is built as usual, so the
//! answer never depends on the shortcut succeeding.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::perm::Permutation;

/// Default refusal threshold for [`PermGroup::elements`].
pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;

/// Degrees below this always go through the stabilizer chain.
const GIANT_MIN_DEGREE: usize = 12;
const GIANT_TRIES: usize = 120;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("generators have mixed degrees ({0} and {1})")]
    MixedDegrees(usize, usize),
    #[error("permutation of degree {got} does not act on {expected} points")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("point {point} outside 1..{degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group order {order} exceeds the element enumeration cap {cap}")]
    CapExceeded { order: BigUint, cap: u64 },
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[β]` maps the base point to `β`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
    checked: HashSet<(u32, u32)>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        inverse[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            inverse,
            orbit: vec![base],
            checked: HashSet::new(),
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.gens.push(g);
        let mut k = 0;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            for gi in 0..self.gens.len() {
                let img = self.gens[gi].image0(pt);
                if self.transversal[img].is_none() {
                    let u = self.transversal[pt]
                        .as_ref()
                        .expect("orbit point has a transversal")
                        .then(&self.gens[gi]);
                    self.inverse[img] = Some(u.inverse());
                    self.transversal[img] = Some(u);
                    self.orbit.push(img);
                }
            }
            k += 1;
        }
    }
}

/// Stabilizer chain `G = G₀ ≥ G₁ ≥ … ≥ G_k = 1`.
#[derive(Debug, Clone)]
struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, generators: &[Permutation], base_hint: &[usize]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<&Permutation> = generators.iter().filter(|g| !g.is_identity()).collect();
        if gens.is_empty() {
            return chain;
        }
        // Hinted base points first, then make sure some base point is moved.
        for &b in base_hint {
            if chain.levels.iter().all(|l| l.base != b) {
                chain.levels.push(Level::new(b, degree));
            }
        }
        if !gens
            .iter()
            .any(|g| chain.levels.iter().any(|l| g.image0(l.base) != l.base))
        {
            let b = first_moved(gens[0]).expect("non-identity");
            chain.levels.push(Level::new(b, degree));
        }
        // Each generator joins every level whose earlier base points it fixes.
        for g in gens {
            for i in 0..chain.levels.len() {
                chain.levels[i].add_generator(g.clone());
                if g.image0(chain.levels[i].base) != chain.levels[i].base {
                    break;
                }
            }
        }
        chain.schreier_sims();
        chain
    }

    /// Sifts `h` through levels `start..`; returns the residue and the index
    /// of the level where sifting stopped (`levels.len()` when it went
    /// through).
    fn sift(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for j in start..self.levels.len() {
            let level = &self.levels[j];
            let beta = h.image0(level.base);
            match &level.inverse[beta] {
                None => return (h, j),
                Some(inv) => h = h.then(inv),
            }
        }
        (h, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len() - 1;
        loop {
            match self.check_level(i) {
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let b = first_moved(&residue).expect("non-identity residue");
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in i + 1..=j {
                        self.levels[l].add_generator(residue.clone());
                    }
                    i = j;
                }
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
        // Trivial levels (unused base hints) carry no information.
        self.levels.retain(|l| l.orbit.len() > 1);
    }

    /// Sifts unchecked Schreier generators of level `i`; returns the first
    /// non-trivial residue.
    fn check_level(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            let beta = self.levels[i].orbit[k];
            for gi in 0..self.levels[i].gens.len() {
                if !self.levels[i].checked.insert((beta as u32, gi as u32)) {
                    continue;
                }
                let level = &self.levels[i];
                let x = &level.gens[gi];
                let target = x.image0(beta);
                let u = level.transversal[beta].as_ref().expect("orbit point");
                let h = u
                    .then(x)
                    .then(level.inverse[target].as_ref().expect("orbit point"));
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = self.sift(h, i + 1);
                if !residue.is_identity() {
                    return Some((residue, j));
                }
            }
            k += 1;
        }
        None
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn contains(&self, p: &Permutation) -> bool {
        let (residue, j) = self.sift(p.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }

    fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        // g = t_{k-1} ⋯ t_1 t_0 with t_j from the transversal of level j.
        for level in self.levels.iter().rev() {
            let reps: Vec<&Permutation> = level
                .orbit
                .iter()
                .map(|&b| level.transversal[b].as_ref().expect("orbit point"))
                .collect();
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for g in &out {
                for t in &reps {
                    next.push(g.then(t));
                }
            }
            out = next;
        }
        out
    }
}

fn first_moved(p: &Permutation) -> Option<usize> {
    p.images0()
        .iter()
        .enumerate()
        .find(|&(i, &x)| i != x as usize)
        .map(|(i, _)| i)
}

/// A permutation group on `{1..degree}`.
///
/// Construction is cheap; the stabilizer chain is built on first use and is
/// read-only afterwards, so a group can be queried from several threads.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_hint: Vec<usize>,
    giant: OnceLock<Option<bool>>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::MixedDegrees(degree, bad.degree()));
        }
        Ok(PermGroup {
            degree,
            generators,
            base_hint: Vec::new(),
            giant: OnceLock::new(),
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(vec![Permutation::identity(degree)]).expect("one generator")
    }

    /// Like [`from_generators`](Self::from_generators) but the stabilizer
    /// chain starts with the given 1-based base points and the giant-group
    /// shortcut is disabled.
    pub fn with_base(generators: Vec<Permutation>, base: &[usize]) -> Result<Self, GroupError> {
        let mut g = Self::from_generators(generators)?;
        for &b in base {
            g.check_point(b)?;
        }
        g.base_hint = base.iter().map(|b| b - 1).collect();
        let _ = g.giant.set(None);
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn check_point(&self, point: usize) -> Result<(), GroupError> {
        if point == 0 || point > self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(())
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &self.base_hint))
    }

    /// `Some(true)` for `A_n`, `Some(false)` for `S_n`, `None` when the
    /// shortcut does not apply.
    fn giant(&self) -> Option<bool> {
        *self.giant.get_or_init(|| self.detect_giant())
    }

    fn detect_giant(&self) -> Option<bool> {
        let n = self.degree;
        if n < GIANT_MIN_DEGREE || !self.is_transitive() || !self.is_primitive() {
            return None;
        }
        let mut pr = ProductReplacement::new(&self.generators);
        for _ in 0..GIANT_TRIES {
            if has_isolated_prime_cycle(&pr.next(), n) {
                return Some(self.all_generators_even());
            }
        }
        None
    }

    /// True when the group was recognized as `A_n` or `S_n` without building
    /// a stabilizer chain.
    pub fn is_natural_giant(&self) -> bool {
        self.giant().is_some()
    }

    pub fn order(&self) -> BigUint {
        match self.giant() {
            Some(alternating) => {
                let full = factorial(self.degree);
                if alternating {
                    full / 2u32
                } else {
                    full
                }
            }
            None => self.chain().order(),
        }
    }

    /// Order from the stabilizer chain alone, never using the giant shortcut.
    pub fn order_by_chain(&self) -> BigUint {
        self.chain().order()
    }

    /// Base points of the stabilizer chain (1-based).
    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base + 1).collect()
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        if p.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                got: p.degree(),
            });
        }
        Ok(match self.giant() {
            Some(true) => p.is_even(),
            Some(false) => true,
            None => self.chain().contains(p),
        })
    }

    /// Orbit of a 1-based point, sorted ascending.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>, GroupError> {
        self.check_point(point)?;
        let mut seen = vec![false; self.degree];
        let mut queue = vec![point - 1];
        seen[point - 1] = true;
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = g.image0(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        Ok((0..self.degree)
            .filter(|&i| seen[i])
            .map(|i| i + 1)
            .collect())
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(1).map(|o| o.len()).unwrap_or(0) == self.degree
    }

    /// Transitive and without non-trivial blocks.
    pub fn is_primitive(&self) -> bool {
        let n = self.degree;
        if !self.is_transitive() {
            return false;
        }
        (1..n).all(|x| minimal_block_size(&self.generators, n, x) == n)
    }

    /// `|Stab(point)| = |G| / |point^G|`.
    pub fn point_stabilizer_order(&self, point: usize) -> Result<BigUint, GroupError> {
        let orbit = self.orbit(point)?;
        Ok(self.order() / BigUint::from(orbit.len()))
    }

    /// Every element exactly once, refusing groups larger than `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>, GroupError> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(GroupError::CapExceeded { order, cap });
        }
        Ok(self.chain().elements())
    }

    pub fn all_generators_even(&self) -> bool {
        self.generators.iter().all(Permutation::is_even)
    }

    /// Greedy generating subset of `elements` (taken in the given order):
    /// an element is kept when it is not in the group generated so far.
    pub fn small_generating_set(elements: &[Permutation], degree: usize) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(degree);
        for g in elements {
            if g.is_identity() || current.contains(g).unwrap_or(false) {
                continue;
            }
            gens.push(g.clone());
            current = PermGroup::with_base(gens.clone(), &[]).expect("uniform degree");
        }
        gens
    }
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Size of the smallest block containing points `0` and `x` (0-based).
fn minimal_block_size(gens: &[Permutation], n: usize, x: usize) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut queue = vec![(0usize, x)];
    parent[x] = 0;
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            let (ga, gb) = (g.image0(a), g.image0(b));
            let (ra, rb) = (find(&mut parent, ga), find(&mut parent, gb));
            if ra != rb {
                parent[rb] = ra;
                queue.push((ga, gb));
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..n).filter(|&i| find(&mut parent, i) == root).count()
}

/// Some power of `g` is a cycle of prime length `p ≤ n − 3`.
fn has_isolated_prime_cycle(g: &Permutation, n: usize) -> bool {
    let lengths = g.cycle_type();
    let lengths = lengths.lengths();
    lengths.iter().any(|&p| {
        p >= 2 && p + 3 <= n && is_prime(p) && lengths.iter().filter(|&&l| l % p == 0).count() == 1
    })
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Product replacement with a fixed splitmix64 seed.
struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
    state: u64,
}

impl ProductReplacement {
    fn new(gens: &[Permutation]) -> Self {
        let mut slots: Vec<Permutation> = gens.to_vec();
        while slots.len() < 10 {
            let k = slots.len() % gens.len();
            slots.push(gens[k].clone());
        }
        let acc = Permutation::identity(gens[0].degree());
        let mut pr = ProductReplacement {
            slots,
            acc,
            state: 0x9E37_79B9_7F4A_7C15,
        };
        for _ in 0..40 {
            pr.next();
        }
        pr
    }

    fn rand(&mut self, bound: usize) -> usize {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        (z % bound as u64) as usize
    }

    fn next(&mut self) -> Permutation {
        let k = self.slots.len();
        let s = self.rand(k);
        let mut t = self.rand(k - 1);
        if t >= s {
            t += 1;
        }
        self.slots[s] = if self.rand(2) == 0 {
            self.slots[s].then(&self.slots[t])
        } else {
            self.slots[t].then(&self.slots[s])
        };
        self.acc = self.acc.then(&self.slots[s]);
        self.acc.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn group(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::from_generators(gens.iter().map(|s| p(s, n)).collect()).unwrap()
    }

    /// Closure of the generators under right multiplication.
    fn closure(g: &PermGroup) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(g.degree());
        let mut queue = vec![id.clone()];
        seen.insert(id);
        while let Some(x) = queue.pop() {
            for s in g.generators() {
                let y = x.then(s);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn cyclic_group() {
        let g = group(&["(1,2,3)"], 3);
        assert_eq!(g.order(), BigUint::from(3u32));
        assert!(g.contains(&p("(1,3,2)", 3)).unwrap());
        assert!(!g.contains(&p("(1,2)", 3)).unwrap());
        assert!(g.contains(&Permutation::identity(3)).unwrap());
        assert!(g.all_generators_even());
    }

    #[test]
    fn errors() {
        assert_eq!(
            PermGroup::from_generators(vec![]).unwrap_err(),
            GroupError::NoGenerators
        );
        assert_eq!(
            PermGroup::from_generators(vec![Permutation::identity(2), Permutation::identity(3)])
                .unwrap_err(),
            GroupError::MixedDegrees(2, 3)
        );
        let g = group(&["(1,2)"], 3);
        assert!(matches!(
            g.contains(&Permutation::identity(4)),
            Err(GroupError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            g.point_stabilizer_order(4),
            Err(GroupError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::trivial(9);
        assert_eq!(g.order(), BigUint::one());
        assert_eq!(g.elements(10).unwrap(), vec![Permutation::identity(9)]);
        assert!(!g.is_transitive());
    }

    #[test]
    fn transitivity() {
        assert!(group(&["(1,2)", "(1,2,3)"], 3).is_transitive());
        assert!(!group(&["(1,2)"], 3).is_transitive());
    }

    #[test]
    fn alternating_nine_from_k33() {
        // E₄ = ⟨σ₂, τ₂⟩ for K₃,₃ is A₉.
        let g = group(&["(1,2,3)(4,5,6)(7,9,8)", "(1,4,7)(2,5,8)(3,9,6)"], 9);
        assert_eq!(g.order(), BigUint::from(181_440u32));
        assert!(g.all_generators_even());
    }

    #[test]
    fn regular_action_has_trivial_stabilizer() {
        // E₁ ≅ ℤ₃² acting regularly on 9 labels.
        let g = group(&["(1,2,3)(4,5,6)(7,8,9)", "(1,4,7)(2,5,8)(3,6,9)"], 9);
        assert_eq!(g.order(), BigUint::from(9u32));
        assert_eq!(g.point_stabilizer_order(1).unwrap(), BigUint::one());
    }

    #[test]
    fn symmetric_four_from_tetrahedron() {
        let g = group(
            &[
                "(1,2,3)(4,5,6)(7,8,9)(10,11,12)",
                "(1,4)(8,11)(5,9)(2,12)(3,7)(6,10)",
                "(2,8,9,4)(5,11,12,1)(3,10,6,7)",
            ],
            12,
        );
        assert_eq!(g.order(), BigUint::from(24u32));
        assert_eq!(g.elements(DEFAULT_ELEMENT_CAP).unwrap().len(), 24);
    }

    #[test]
    fn cap_is_a_refusal() {
        let g = group(&["(1,2)", "(1,2,3,4,5,6,7,8,9,10)"], 10);
        assert!(matches!(
            g.elements(1000),
            Err(GroupError::CapExceeded { cap: 1000, .. })
        ));
    }

    #[test]
    fn giant_shortcut_agrees_with_chain() {
        // S_n and A_n on 12..=16 points plus an imprimitive group of degree 12.
        for n in 12..=16 {
            let cycle: Vec<usize> = (1..=n).collect();
            let long = Permutation::from_cycles(n, &[cycle]).unwrap();
            let sym = PermGroup::from_generators(vec![p("(1,2)", n), long.clone()]).unwrap();
            assert!(sym.is_natural_giant());
            assert_eq!(sym.order(), factorial(n));
            assert_eq!(sym.order_by_chain(), factorial(n));

            let alt = PermGroup::from_generators(vec![
                p("(1,2,3)", n),
                p("(1,2,3,4,5,6,7,8,9,10,11)", n),
            ])
            .unwrap();
            let alt_chain = PermGroup::with_base(alt.generators().to_vec(), &[]).unwrap();
            assert_eq!(alt.order(), alt_chain.order());
        }
        let imprimitive = group(&["(1,2,3,4,5,6,7,8,9,10,11,12)", "(1,7)"], 12);
        assert!(!imprimitive.is_primitive());
        assert!(!imprimitive.is_natural_giant());
        // ℤ₂ ≀ C₆ style wreath product: 2^6 · 6 = 384
        assert_eq!(imprimitive.order(), BigUint::from(2u32.pow(6) * 6));
    }

    #[test]
    fn closure_oracle_on_small_groups() {
        let cases: Vec<(Vec<&str>, usize)> = vec![
            (
                vec![
                    "(1,2,3)(4,5,6)(7,8,9)(10,11,12)",
                    "(1,4)(2,5)(3,6)(7,10)(8,11)(9,12)",
                ],
                12,
            ),
            (vec!["(1,2,3,4,5)", "(1,2)"], 5),
            (vec!["(1,2,3,4,5,6)", "(2,6)(3,5)"], 6),
            (vec!["(1,2)(3,4)", "(1,3)(2,4)", "(5,6,7)"], 7),
            (vec!["(1,5,2)(3,9,4,6,8)", "(1,2,3)(4,5,6)(7,8,9)"], 9),
            (vec!["(4,6)(3,7)(1,8)(2,9)", "(1,2)"], 9),
            (vec!["(1,8,6)(2,9,4)(3,7,5)", "(2,3)"], 9),
        ];
        for (gens, n) in cases {
            let g = group(&gens, n);
            let all = closure(&g);
            if all.len() > 5000 {
                continue;
            }
            assert_eq!(g.order(), BigUint::from(all.len()), "{gens:?}");
            let listed: HashSet<Permutation> = g
                .elements(DEFAULT_ELEMENT_CAP)
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(listed, all);
            for x in &all {
                assert!(g.contains(x).unwrap());
            }
            let prod: usize = g.basic_orbit_sizes().iter().product();
            assert_eq!(BigUint::from(prod), g.order());
            let mut rev: Vec<usize> = (1..=n).collect();
            rev.reverse();
            let other = PermGroup::with_base(g.generators().to_vec(), &rev).unwrap();
            assert_eq!(other.order(), g.order());
            for pt in 1..=n {
                let fixing = all.iter().filter(|x| x.apply(pt) == pt).count();
                assert_eq!(g.point_stabilizer_order(pt).unwrap(), BigUint::from(fixing));
                let orbit = g.orbit(pt).unwrap().len();
                assert_eq!(BigUint::from(orbit * fixing), g.order());
            }
        }
    }

    #[test]
    fn membership_probes_against_closure() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = group(&["(1,2,3)(4,5,6)", "(1,4)(2,6)", "(7,8)"], 8);
        let all = closure(&g);
        for _ in 0..200 {
            let mut v: Vec<u32> = (0..8).collect();
            v.shuffle(&mut rng);
            let x = Permutation::from_images0(v).unwrap();
            assert_eq!(g.contains(&x).unwrap(), all.contains(&x));
        }
    }

    #[test]
    fn small_generating_set_generates() {
        let g = group(&["(1,2,3)(4,5,6)(7,8,9)", "(1,4,7)(2,5,8)(3,6,9)"], 9);
        let elems = g.elements(100).unwrap();
        let gens = PermGroup::small_generating_set(&elems, 9);
        assert!(gens.len() <= 2);
        let h = PermGroup::from_generators(gens).unwrap();
        assert_eq!(h.order(), g.order());
    }
}
