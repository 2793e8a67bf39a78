//! Hilbert functions of graded quotients of `k[x, y]` and the monomial
//! ideals (staircases) that index the cells of the variety `G_T`.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{ExactMatrix, Field, Rational};
use crate::quiverrep::{DimVector, Quiver, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GtError {
    #[error("Hilbert function {0} is not admissible")]
    NotAdmissible(HilbertFunction),
    #[error("Hilbert function {0} must start with t_0 = 1")]
    NonUnitT0(HilbertFunction),
    #[error("staircase heights must be positive and non-increasing: {0:?}")]
    InvalidStaircase(Vec<u64>),
}

/// `T = (t_0, ..., t_q)` with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertFunction(Vec<u64>);

impl HilbertFunction {
    pub fn new(mut t: Vec<u64>) -> Self {
        while t.last() == Some(&0) {
            t.pop();
        }
        HilbertFunction(t)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, n: usize) -> u64 {
        self.0.get(n).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Realizable by a homogeneous ideal of `k[x, y]` with `t_0 = 1`:
    /// `t_n <= n + 1`, and once `t_n <= n` the sequence is non-increasing.
    pub fn is_admissible(&self) -> bool {
        let t = &self.0;
        if t.first() != Some(&1) {
            return false;
        }
        for (n, &tn) in t.iter().enumerate() {
            if tn > n as u64 + 1 {
                return false;
            }
            if tn <= n as u64 && self.get(n + 1) > tn {
                return false;
            }
        }
        true
    }

    fn require_admissible(&self) -> Result<(), GtError> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(GtError::NotAdmissible(self.clone()))
        }
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Monomial ideal with standard monomials `x^a y^b`, `b < heights[a]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Staircase(Vec<u64>);

impl Staircase {
    pub fn new(heights: Vec<u64>) -> Result<Self, GtError> {
        if heights.is_empty() || heights.contains(&0) || heights.windows(2).any(|w| w[0] < w[1]) {
            return Err(GtError::InvalidStaircase(heights));
        }
        Ok(Staircase(heights))
    }

    pub fn heights(&self) -> &[u64] {
        &self.0
    }

    pub fn is_standard(&self, a: u64, b: u64) -> bool {
        self.0.get(a as usize).is_some_and(|&h| b < h)
    }

    /// Standard monomials `(a, b)` of degree `n`, by increasing `a`.
    pub fn standard_in_degree(&self, n: u64) -> Vec<(u64, u64)> {
        (0..=n).filter(|&a| self.is_standard(a, n - a)).map(|a| (a, n - a)).collect()
    }

    /// Minimal generators `x^a y^b` of the ideal, by increasing `a`.
    pub fn generators(&self) -> Vec<(u64, u64)> {
        let h = &self.0;
        let mut gens = Vec::new();
        for a in 0..=h.len() {
            let height = h.get(a).copied().unwrap_or(0);
            if a == 0 || height < h[a - 1] {
                gens.push((a as u64, height));
            }
        }
        gens
    }

    pub fn hilbert_function(&self) -> HilbertFunction {
        let top = self.0.iter().enumerate().map(|(a, &h)| a as u64 + h).max().unwrap_or(0);
        HilbertFunction::new((0..top).map(|n| self.standard_in_degree(n).len() as u64).collect())
    }

    /// `dim Hom(I, S/I)_0`, the tangent space of `G_T` at this monomial ideal.
    ///
    /// Unknowns are the images of the minimal generators; the minimal
    /// syzygies of a two-variable monomial ideal join consecutive generators,
    /// `x^{a'-a} g = y^{b-b'} g'`, and give the linear constraints.
    pub fn tangent_dimension(&self) -> usize {
        let gens = self.generators();
        let targets: Vec<Vec<(u64, u64)>> = gens.iter().map(|&(a, b)| self.standard_in_degree(a + b)).collect();
        let mut offsets = Vec::with_capacity(gens.len());
        let mut unknowns = 0;
        for t in &targets {
            offsets.push(unknowns);
            unknowns += t.len();
        }
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for k in 0..gens.len().saturating_sub(1) {
            let ((a0, b0), (a1, b1)) = (gens[k], gens[k + 1]);
            let (dx, dy) = (a1 - a0, b0 - b1);
            let lcm_degree = a1 + b0;
            for (ma, mb) in self.standard_in_degree(lcm_degree) {
                let mut row = vec![Rational::zero(); unknowns];
                // x^dx * phi(g_k) contributes where x^dx * m lands on (ma, mb)
                for (i, &(sa, sb)) in targets[k].iter().enumerate() {
                    if sa + dx == ma && sb == mb {
                        row[offsets[k] + i] += Rational::from_integer(1.into());
                    }
                }
                for (i, &(sa, sb)) in targets[k + 1].iter().enumerate() {
                    if sa == ma && sb + dy == mb {
                        row[offsets[k + 1] + i] -= Rational::from_integer(1.into());
                    }
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return unknowns;
        }
        let m = ExactMatrix::from_rows(Field::Rational, &rows).expect("equal row lengths");
        unknowns - m.rank()
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All staircases with Hilbert function `t`, in lexicographic order of heights.
pub fn enumerate_staircases(t: &HilbertFunction) -> Result<Vec<Staircase>, GtError> {
    t.require_admissible()?;
    let boxes = t.total();
    let mut out = Vec::new();
    let mut counts = vec![0u64; t.len() + boxes as usize + 1];
    let mut heights = Vec::new();
    extend(t, boxes, &mut heights, &mut counts, &mut out);
    out.sort();
    Ok(out)
}

fn extend(t: &HilbertFunction, remaining: u64, heights: &mut Vec<u64>, counts: &mut [u64], out: &mut Vec<Staircase>) {
    if remaining == 0 {
        if (0..counts.len()).all(|n| counts[n] == t.get(n)) {
            out.push(Staircase(heights.clone()));
        }
        return;
    }
    let a = heights.len();
    let cap = heights.last().copied().unwrap_or(remaining).min(remaining);
    for h in 1..=cap {
        // column a fills degrees a .. a+h-1
        let fits = (a..a + h as usize).all(|n| counts[n] < t.get(n));
        if !fits {
            break;
        }
        for c in &mut counts[a..a + h as usize] {
            *c += 1;
        }
        // degree a receives no more cells from later columns
        if counts[a] == t.get(a) {
            heights.push(h);
            extend(t, remaining - h, heights, counts, out);
            heights.pop();
        }
        for c in &mut counts[a..a + h as usize] {
            *c -= 1;
        }
    }
}

/// `1 - [sum t_i^2 - 2 sum t_i t_{i+1} + sum t_i t_{i+2}]`.
pub fn gt_dimension(t: &HilbertFunction) -> Result<i64, GtError> {
    t.require_admissible()?;
    let v: Vec<i64> = t.values().iter().map(|&x| x as i64).collect();
    let shifted = |k: usize| -> i64 { v.iter().zip(v.iter().skip(k)).map(|(a, b)| a * b).sum() };
    Ok(1 - (shifted(0) - 2 * shifted(1) + shifted(2)))
}

/// Quiver-with-relations presentation of `G_T`: vertices `0..q`, arrows
/// `x_i, y_i : i-1 -> i`, relations `x_i y_{i+1} - y_i x_{i+1}`.
#[derive(Clone, Debug)]
pub struct GtQuiverData {
    pub quiver: Quiver,
    pub relations: Vec<String>,
    pub alpha: DimVector,
    pub theta: Weight,
}

/// Builds the presentation with `theta_i = 1` for `i >= 1` and
/// `theta_0 = -sum_{i>=1} t_i`.
pub fn gt_quiver(t: &HilbertFunction) -> Result<GtQuiverData, GtError> {
    if t.get(0) != 1 {
        return Err(GtError::NonUnitT0(t.clone()));
    }
    t.require_admissible()?;
    let q = t.len() - 1;
    let vertices: Vec<String> = (0..=q).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (1..=q)
        .flat_map(|i| {
            let (tail, head) = ((i - 1).to_string(), i.to_string());
            [(format!("x{i}"), tail.clone(), head.clone()), (format!("y{i}"), tail, head)]
        })
        .collect();
    let quiver = Quiver::new(vertices, arrows).expect("well-formed");
    let relations = (1..q).map(|i| format!("x{i}*y{} - y{i}*x{}", i + 1, i + 1)).collect();
    let rest: i64 = t.values()[1..].iter().map(|&x| x as i64).sum();
    let theta: Vec<i64> = std::iter::once(-rest).chain(std::iter::repeat_n(1, q)).collect();
    Ok(GtQuiverData { quiver, relations, alpha: DimVector(t.values().to_vec()), theta: Weight::from_integers(&theta) })
}
