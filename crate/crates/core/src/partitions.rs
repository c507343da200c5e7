//! Partitions inside the `m x (n-m)` box `P(m,n)`.
//!
//! A [`Partition`] always carries its ambient Grassmannian, and stores all `m`
//! parts including trailing zeros. Duality depends on the box, so two equal
//! part lists in different ambients are different partitions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambient {
    m: usize,
    n: usize,
}

impl Ambient {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::InvalidAmbient { m, n });
        }
        Ok(Ambient { m, n })
    }

    /// Subspace dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Dimension of the ambient vector space.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Codimension `n - m`, i.e. the box width and `dim Q`.
    pub fn c(&self) -> usize {
        self.n - self.m
    }

    /// `dim Gr(m,n) = m (n-m)`.
    pub fn dim(&self) -> usize {
        self.m * self.c()
    }

    /// The ambient `Gr(n-m, n)` holding conjugate partitions.
    pub fn transposed(&self) -> Ambient {
        Ambient { m: self.c(), n: self.n }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gr({},{})", self.m, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ambient: Ambient,
    parts: Vec<usize>,
}

/// Exponential notation `(p_1^{q_1}, ..., p_r^{q_r})` with `p_1 > ... > p_r > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpForm {
    pub pairs: Vec<(usize, usize)>,
    pub zero_count: usize,
}

impl ExpForm {
    /// Number of distinct nonzero parts.
    pub fn r(&self) -> usize {
        self.pairs.len()
    }

    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|&(_, q)| q)
    }

    pub fn reconstruct(&self) -> Vec<usize> {
        let mut parts = Vec::new();
        for &(p, q) in &self.pairs {
            parts.extend(std::iter::repeat_n(p, q));
        }
        parts.extend(std::iter::repeat_n(0, self.zero_count));
        parts
    }
}

impl fmt::Display for ExpForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, q)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *q == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{q}")?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridVariant {
    Plain,
    Dual,
    Conjugate,
}

/// Box-occupancy grid; `grid[row][col]` is true when the box is in the diagram.
pub type YoungGrid = Vec<Vec<bool>>;

impl Partition {
    /// Checks `n-m >= a_1 >= ... >= a_m >= 0` with exactly `m` parts.
    pub fn validate(m: usize, n: usize, parts: &[usize]) -> Result<Self> {
        let ambient = Ambient::new(m, n)?;
        Self::new(ambient, parts.to_vec())
    }

    pub fn new(ambient: Ambient, parts: Vec<usize>) -> Result<Self> {
        if parts.len() != ambient.m {
            return Err(Error::WrongLength { expected: ambient.m, got: parts.len() });
        }
        let bound = ambient.c();
        for (i, &p) in parts.iter().enumerate() {
            if p > bound {
                return Err(Error::BoxViolation { index: i + 1, part: p, bound });
            }
        }
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing { index: i + 2 });
        }
        Ok(Partition { ambient, parts })
    }

    pub fn zero(ambient: Ambient) -> Self {
        Partition { ambient, parts: vec![0; ambient.m] }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `a_i` with 1-based `i`.
    pub fn part(&self, i: usize) -> usize {
        self.parts[i - 1]
    }

    /// `|a|`, the codimension of the Schubert variety.
    pub fn codim(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `|a*| = m(n-m) - |a|`, the dimension of the Schubert variety.
    pub fn dim_sigma(&self) -> usize {
        self.ambient.dim() - self.codim()
    }

    pub fn is_degenerate(&self) -> bool {
        let k = self.codim();
        k == 0 || k == self.ambient.dim()
    }

    pub fn dual(&self) -> Partition {
        let c = self.ambient.c();
        let parts = self.parts.iter().rev().map(|&a| c - a).collect();
        Partition { ambient: self.ambient, parts }
    }

    /// `a'_i = #{ j : a_j >= i }` for `1 <= i <= n-m`, living in `P(n-m, n)`.
    pub fn conjugate(&self) -> Partition {
        let c = self.ambient.c();
        let parts = (1..=c).map(|i| self.parts.iter().filter(|&&a| a >= i).count()).collect();
        Partition { ambient: self.ambient.transposed(), parts }
    }

    pub fn exp_form(&self) -> ExpForm {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut zero_count = 0;
        for &a in &self.parts {
            if a == 0 {
                zero_count += 1;
            } else if let Some(last) = pairs.last_mut().filter(|l| l.0 == a) {
                last.1 += 1;
            } else {
                pairs.push((a, 1));
            }
        }
        ExpForm { pairs, zero_count }
    }

    pub fn young_grid(&self, variant: GridVariant) -> YoungGrid {
        let source = match variant {
            GridVariant::Plain => self.clone(),
            GridVariant::Dual => self.dual(),
            GridVariant::Conjugate => self.conjugate(),
        };
        let width = source.ambient.c();
        source.parts.iter().map(|&a| (0..width).map(|j| j < a).collect()).collect()
    }

    /// Every multiplicity of `a` and of `a'` is at least two.
    pub fn theorem_condition(&self) -> Result<bool> {
        if self.is_degenerate() {
            return Err(Error::DegeneratePartition(self.to_string()));
        }
        let ok = |e: ExpForm| e.multiplicities().all(|q| q >= 2);
        Ok(ok(self.exp_form()) && ok(self.conjugate().exp_form()))
    }

    /// Strips a constant from every part and re-homes the result in `Gr(m, n - shift)`.
    pub(crate) fn shifted_down(&self, shift: usize) -> Result<Partition> {
        let ambient = Ambient::new(self.ambient.m, self.ambient.n - shift)?;
        Partition::new(ambient, self.parts.iter().map(|&a| a - shift).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.ambient)?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.err(format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let rest = &self.text[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected a non-negative integer"));
        }
        let value = rest[..len].parse().map_err(|_| self.err("integer out of range"))?;
        self.pos += len;
        Ok(value)
    }

    fn done(&self) -> bool {
        self.pos == self.text.len()
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `gr(m,n):a1,...,am`. Positions in errors are 0-based byte offsets.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { text: s, pos: 0 };
        cur.expect("gr(")?;
        let m = cur.number()?;
        cur.expect(",")?;
        let n = cur.number()?;
        cur.expect("):")?;
        let ambient = Ambient::new(m, n)?;
        let mut parts = vec![cur.number()?];
        while !cur.done() {
            cur.expect(",")?;
            parts.push(cur.number()?);
        }
        Partition::new(ambient, parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Optional codimension window for [`enumerate_box`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CodimFilter {
    pub min: Option<usize>,
    pub max: Option<usize>,
}

impl CodimFilter {
    pub fn exactly(k: usize) -> Self {
        CodimFilter { min: Some(k), max: Some(k) }
    }

    fn admits(&self, k: usize) -> bool {
        self.min.is_none_or(|lo| k >= lo) && self.max.is_none_or(|hi| k <= hi)
    }
}

/// Iterates `P(m,n)` in lexicographically descending order.
pub struct BoxIter {
    ambient: Ambient,
    next: Option<Vec<usize>>,
    filter: CodimFilter,
}

impl Iterator for BoxIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            let current = self.next.take()?;
            // successor: decrement the rightmost positive part, refill to its right
            if let Some(i) = current.iter().rposition(|&a| a > 0) {
                let mut succ = current.clone();
                succ[i] -= 1;
                let v = succ[i];
                for x in &mut succ[i + 1..] {
                    *x = v;
                }
                self.next = Some(succ);
            }
            if self.filter.admits(current.iter().sum()) {
                return Some(Partition { ambient: self.ambient, parts: current });
            }
        }
    }
}

pub fn enumerate_box(ambient: Ambient, filter: CodimFilter) -> BoxIter {
    BoxIter { ambient, next: Some(vec![ambient.c(); ambient.m]), filter }
}
