//! Permutations of the edge-label set `{1..e}`.
//!
//! Composition is left-to-right: `p.then(&q)` applies `p` first and `q`
//! second, so a product written `pq` in cycle notation maps `i` to `q(p(i))`.
//! Every public interface speaks 1-based labels; the image table is stored
//! 0-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image table is not a bijection of 1..{degree}")]
    NotBijective { degree: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A bijection of `{1..degree}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table.
    pub fn from_images0(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijective { degree: n });
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from a 1-based image table: `images[i-1]` is the
    /// image of label `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let mut table = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(PermError::NotBijective { degree: n });
            }
            table.push((x - 1) as u32);
        }
        Self::from_images0(table)
    }

    /// Builds a permutation of `{1..degree}` from disjoint cycles of 1-based
    /// labels.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut table: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > degree || used[a - 1] {
                    return Err(PermError::NotBijective { degree });
                }
                used[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                if b == 0 || b > degree {
                    return Err(PermError::NotBijective { degree });
                }
                table[a - 1] = (b - 1) as u32;
            }
        }
        Self::from_images0(table)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based label `label`.
    #[inline]
    pub fn apply(&self, label: usize) -> usize {
        self.images[label - 1] as usize + 1
    }

    /// The 0-based image table.
    #[inline]
    pub fn images0(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub(crate) fn image0(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// Left-to-right product: the result maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    /// Infallible [`compose`](Self::compose) for internal hot paths.
    ///
    /// Panics on a degree mismatch.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g⁻¹ · self · g` (left-to-right), i.e. `self` relabeled through `g`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(g)?;
        Ok(self.conjugate_by(g))
    }

    /// Panicking variant of [`conjugate`](Self::conjugate).
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        assert_eq!(self.degree(), g.degree(), "degree mismatch");
        let mut out = vec![0u32; self.degree()];
        conjugate_into(&self.images, &g.images, &mut out);
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `self` raised to an integer power (negative powers invert).
    pub fn pow(&self, exp: i64) -> Permutation {
        let n = self.degree();
        let mut out = vec![0u32; n];
        let mut seen = vec![false; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycle.clear();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x] as usize;
            }
            let len = cycle.len() as i64;
            let shift = exp.rem_euclid(len) as usize;
            for (k, &pt) in cycle.iter().enumerate() {
                out[pt] = cycle[(k + shift) % cycle.len()] as u32;
            }
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// Disjoint cycles in canonical form: each cycle starts at its least
    /// label, cycles are ordered by least label, fixed points are included as
    /// singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn cycle_count(&self) -> usize {
        count_cycles(&self.images)
    }

    /// Parity via `Σ (len − 1)` over disjoint cycles.
    pub fn is_even(&self) -> bool {
        (self.degree() - self.cycle_count()) % 2 == 0
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycle_type()
            .lengths()
            .iter()
            .fold(1u128, |acc, &l| lcm(acc, l as u128))
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; omitted labels are
    /// fixed points and `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
        CycleParser::new(text, degree).parse()
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

/// Writes `g⁻¹ p g` into `out`: `out[g[i]] = g[p[i]]`.
#[inline]
pub(crate) fn conjugate_into(p: &[u32], g: &[u32], out: &mut [u32]) {
    for i in 0..p.len() {
        out[g[i] as usize] = g[p[i] as usize];
    }
}

pub(crate) fn count_cycles(images: &[u32]) -> usize {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
        }
    }
    count
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// Canonical cycle notation; fixed points omitted, identity is `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            wrote = true;
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

/// Serialized as `"<degree>:<cycles>"` so the degree survives the trip.
impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}:{}", self.degree(), self))
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses the `"<degree>:<cycles>"` form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (deg, cycles) = s.split_once(':').ok_or_else(|| PermError::Parse {
            pos: 0,
            msg: "expected <degree>:<cycles>".into(),
        })?;
        let degree = deg.trim().parse().map_err(|_| PermError::Parse {
            pos: 0,
            msg: format!("bad degree {deg:?}"),
        })?;
        Permutation::parse_cycles(cycles, degree)
    }
}

struct CycleParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    degree: usize,
}

impl<'a> CycleParser<'a> {
    fn new(text: &'a str, degree: usize) -> Self {
        CycleParser {
            bytes: text.as_bytes(),
            pos: 0,
            degree,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PermError> {
        Err(PermError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), PermError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn label(&mut self) -> Result<usize, PermError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a label");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or("");
        match text.parse::<usize>() {
            Ok(v) if v >= 1 && v <= self.degree => Ok(v),
            _ => {
                self.pos = start;
                self.err(format!("label {text} out of range 1..{}", self.degree))
            }
        }
    }

    fn parse(mut self) -> Result<Permutation, PermError> {
        let mut table: Vec<u32> = (0..self.degree as u32).collect();
        let mut used = vec![false; self.degree];
        if self.peek().is_none() {
            return self.err("empty input");
        }
        self.expect(b'(')?;
        if self.peek() == Some(b')') {
            self.pos += 1;
            return match self.peek() {
                None => Ok(Permutation::identity(self.degree)),
                Some(_) => self.err("trailing input after ()"),
            };
        }
        loop {
            let mut cycle = Vec::new();
            loop {
                let at = self.pos;
                let x = self.label()?;
                if used[x - 1] {
                    self.pos = at;
                    self.skip_ws();
                    return self.err(format!("label {x} repeated"));
                }
                used[x - 1] = true;
                cycle.push(x - 1);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err("expected ',' or ')'"),
                }
            }
            for k in 0..cycle.len() {
                table[cycle[k]] = cycle[(k + 1) % cycle.len()] as u32;
            }
            match self.peek() {
                None => break,
                Some(b'(') => self.pos += 1,
                Some(_) => return self.err("expected '('"),
            }
        }
        Permutation::from_images0(table)
    }
}

/// Ascending multiset of disjoint-cycle lengths, singletons included.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType {
    lengths: Vec<usize>,
}

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable();
        CycleType { lengths }
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn total(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn count(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_uniform(&self) -> bool {
        self.lengths.windows(2).all(|w| w[0] == w[1])
    }
}

/// Exponent notation, e.g. `1^2,2^2,3`.
impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.lengths.len() {
            let v = self.lengths[i];
            let mut j = i;
            while j < self.lengths.len() && self.lengths[j] == v {
                j += 1;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}
