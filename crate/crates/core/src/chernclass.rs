//! Chern classes of genuine and virtual bundles over a [`BasedRing`].
//!
//! A [`BundleClass`] is only a rank and a total Chern class. Tensor and Hom
//! constructions go through the Chern character: `ch` is computed from the
//! total class with Newton's identities, multiplied, and converted back.
//! The rational intermediate values must come back integral.

use num_traits::One;
use thiserror::Error;

use crate::basedring::{BasedRing, ProductRing, RingElement, RingError};
use crate::exactnum::{rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("bundle classes live on different rings")]
    RingMismatch,
    #[error("operation needs a nonnegative rank, got {0}")]
    NegativeRank(i64),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: String, found: String },
    #[error("total Chern class {0} is not integral")]
    NotIntegral(String),
    #[error("total Chern class must start with 1, got {0}")]
    InvalidTotalClass(String),
    #[error("line bundle class must be homogeneous of degree 1, got {0}")]
    NotALineClass(String),
    #[error("degree {degree} outside 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `(rank, total Chern class)`; the rank may be negative for virtual classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleClass {
    rank: i64,
    total: RingElement,
}

impl BundleClass {
    pub fn new(rank: i64, total: RingElement) -> Result<Self, ChernError> {
        let ring = total.ring().clone();
        let degree_zero = total.component(0);
        if degree_zero != ring.one() {
            return Err(ChernError::InvalidTotalClass(total.to_string()));
        }
        Ok(BundleClass { rank, total })
    }

    /// Rank-`rank` trivial bundle.
    pub fn trivial(ring: &BasedRing, rank: i64) -> Self {
        BundleClass { rank, total: ring.one() }
    }

    /// Line bundle with first Chern class `c1`.
    pub fn line(c1: &RingElement) -> Result<Self, ChernError> {
        if c1.component(1) != *c1 {
            return Err(ChernError::NotALineClass(c1.to_string()));
        }
        Ok(BundleClass { rank: 1, total: c1.ring().one().add(c1) })
    }

    /// `O(t)` for the line class `h`: first Chern class `t * h`.
    pub fn twisted_line(h: &RingElement, t: i64) -> Result<Self, ChernError> {
        Self::line(&h.scale(&rat(t)))
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn total(&self) -> &RingElement {
        &self.total
    }

    pub fn ring(&self) -> &BasedRing {
        self.total.ring()
    }

    /// `c_k`.
    pub fn chern(&self, k: usize) -> RingElement {
        self.total.component(k)
    }

    pub fn is_integral(&self) -> bool {
        self.total.is_integral()
    }

    fn same_ring(&self, other: &Self) -> Result<(), ChernError> {
        if self.ring() != other.ring() {
            return Err(ChernError::RingMismatch);
        }
        Ok(())
    }

    pub fn whitney_sum(&self, other: &Self) -> Result<Self, ChernError> {
        self.same_ring(other)?;
        Ok(BundleClass { rank: self.rank + other.rank, total: self.total.mul(&other.total) })
    }

    /// `self` summed with itself `copies` times.
    pub fn whitney_power(&self, copies: u64) -> Self {
        BundleClass { rank: self.rank * copies as i64, total: self.total.pow(copies as usize) }
    }

    pub fn dual(&self) -> Self {
        BundleClass { rank: self.rank, total: self.total.graded_sign() }
    }

    /// `ch = rank + sum_k p_k / k!` with power sums `p_k` from Newton's identities.
    pub fn chern_character(&self) -> Result<RingElement, ChernError> {
        if self.rank < 0 {
            return Err(ChernError::NegativeRank(self.rank));
        }
        let ring = self.ring();
        let d = ring.top_degree();
        let e: Vec<RingElement> = (0..=d).map(|k| self.total.component(k)).collect();
        // p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
        let mut p: Vec<RingElement> = vec![ring.one().scale(&rat(self.rank))];
        for k in 1..=d {
            let mut pk = e[k].scale(&rat(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
            for i in 1..k {
                let term = e[i].mul(&p[k - i]);
                pk = if i % 2 == 1 { pk.add(&term) } else { pk.sub(&term) };
            }
            p.push(pk);
        }
        let mut ch = ring.zero();
        let mut factorial = Rational::one();
        for (k, pk) in p.iter().enumerate() {
            if k > 0 {
                factorial *= rat(k as i64);
            }
            ch = ch.add(&pk.scale(&factorial.recip()));
        }
        Ok(ch)
    }

    /// Inverse of [`Self::chern_character`] for a class of the given rank.
    pub fn from_character(ch: &RingElement, rank: i64) -> Result<Self, ChernError> {
        let ring = ch.ring().clone();
        let d = ring.top_degree();
        let degree_zero = ch.component(0);
        if degree_zero != ring.one().scale(&rat(rank)) {
            return Err(ChernError::RankMismatch { expected: rank.to_string(), found: degree_zero.to_string() });
        }
        // p_k = k! ch_k;  k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
        let mut p = vec![ring.zero()];
        let mut factorial = Rational::one();
        for k in 1..=d {
            factorial *= rat(k as i64);
            p.push(ch.component(k).scale(&factorial));
        }
        let mut e = vec![ring.one()];
        for k in 1..=d {
            let mut acc = ring.zero();
            for i in 1..=k {
                let term = e[k - i].mul(&p[i]);
                acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
            }
            e.push(acc.scale(&rat(k as i64).recip()));
        }
        let total = e.iter().fold(ring.zero(), |acc, x| acc.add(x));
        if !total.is_integral() {
            return Err(ChernError::NotIntegral(total.to_string()));
        }
        Ok(BundleClass { rank, total })
    }

    /// `self (x) other` via `ch(a (x) b) = ch(a) ch(b)`.
    pub fn tensor(&self, other: &Self) -> Result<Self, ChernError> {
        self.same_ring(other)?;
        let ch = self.chern_character()?.mul(&other.chern_character()?);
        Self::from_character(&ch, self.rank * other.rank)
    }

    /// `Hom(self, other) = dual(self) (x) other`.
    pub fn hom_bundle(&self, other: &Self) -> Result<Self, ChernError> {
        self.same_ring(other)?;
        self.dual().tensor(other)
    }

    /// `[self] - [other]`: ranks subtract, total classes divide.
    pub fn virtual_difference(&self, other: &Self) -> Result<Self, ChernError> {
        self.same_ring(other)?;
        Ok(BundleClass { rank: self.rank - other.rank, total: self.total.mul(&inverse_unit(&other.total)) })
    }

    /// Degree-`m` Chern class, which must be integral.
    pub fn top_class(&self, m: usize) -> Result<RingElement, ChernError> {
        let top = self.ring().top_degree();
        if m > top {
            return Err(ChernError::DegreeOutOfRange { degree: m, top });
        }
        let c = self.total.component(m);
        if !c.is_integral() {
            return Err(ChernError::NotIntegral(c.to_string()));
        }
        Ok(c)
    }

    /// Pullback along the first projection of `square`.
    pub fn pull_left(&self, square: &ProductRing) -> Result<Self, ChernError> {
        Ok(BundleClass { rank: self.rank, total: square.p1(&self.total)? })
    }

    /// Pullback along the second projection of `square`.
    pub fn pull_right(&self, square: &ProductRing) -> Result<Self, ChernError> {
        Ok(BundleClass { rank: self.rank, total: square.p2(&self.total)? })
    }
}

/// Inverse of `1 + x` with `x` of positive degree: `sum_k (-x)^k`, truncated.
pub fn inverse_unit(c: &RingElement) -> RingElement {
    let ring = c.ring();
    let minus_x = ring.one().sub(c);
    let mut power = ring.one();
    let mut acc = ring.one();
    for _ in 0..ring.top_degree() {
        power = power.mul(&minus_x);
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
    }
    acc
}

/// Sum of a list of classes, the zero class when empty.
pub fn whitney_total(ring: &BasedRing, classes: &[BundleClass]) -> Result<BundleClass, ChernError> {
    classes.iter().try_fold(BundleClass::trivial(ring, 0), |acc, c| acc.whitney_sum(c))
}
