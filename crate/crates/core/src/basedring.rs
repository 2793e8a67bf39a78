//! Graded commutative rings with a finite integral basis.
//!
//! A [`BasedRing`] is given by explicit structure constants and an integer
//! degree functional on its top-degree part. These stand in for the Chow
//! rings of the test spaces: projective spaces, Grassmannians (Schubert
//! basis, Littlewood-Richardson products) and their products.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::{rat, ExactError, ExactMatrix, Field, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid ring structure: {0}")]
    InvalidStructure(String),
    #[error("pairing in degree {degree} is not unimodular (Smith diagonal {diagonal:?})")]
    NotUnimodular { degree: usize, diagonal: Vec<BigInt> },
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("element {0} has non-integer coefficients")]
    NotIntegral(String),
    #[error("degree {degree} outside 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("unknown basis element {0:?}")]
    UnknownBasisName(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

type Structure = Vec<Vec<Vec<(usize, Rational)>>>;

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    top_degree: usize,
    names: Vec<String>,
    degrees: Vec<usize>,
    table: Structure,
    unit: usize,
    functional: Vec<Rational>,
}

/// Shared handle to an immutable ring; clones are cheap.
#[derive(Clone, Debug)]
pub struct BasedRing(Arc<RingData>);

impl PartialEq for BasedRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for BasedRing {}

fn normalize(terms: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    let mut terms = terms;
    terms.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl BasedRing {
    /// Validates grading, unit, commutativity, associativity on every basis
    /// triple, integrality of the constants, and the degree functional.
    ///
    /// `table[i][j]` is the product `b_i * b_j` as `(index, coefficient)` terms.
    pub fn new(
        top_degree: usize,
        basis: Vec<(String, usize)>,
        table: Vec<Vec<Vec<(usize, BigInt)>>>,
        unit: usize,
        functional: Vec<BigInt>,
    ) -> Result<Self, RingError> {
        let n = basis.len();
        let bad = |msg: String| Err(RingError::InvalidStructure(msg));
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return bad(format!("structure table must be {n}x{n}"));
        }
        if functional.len() != n || unit >= n {
            return bad("functional length or unit index out of range".into());
        }
        let (names, degrees): (Vec<String>, Vec<usize>) = basis.into_iter().unzip();
        for i in 0..n {
            if names[..i].contains(&names[i]) {
                return bad(format!("duplicate basis name {}", names[i]));
            }
            if degrees[i] > top_degree {
                return bad(format!("{} has degree above {top_degree}", names[i]));
            }
        }
        let table: Structure = table
            .into_iter()
            .map(|row| {
                row.into_iter().map(|terms| normalize(terms.into_iter().map(|(k, c)| (k, Rational::from_integer(c))).collect())).collect()
            })
            .collect();
        let functional: Vec<Rational> = functional.into_iter().map(Rational::from_integer).collect();
        let data = RingData { top_degree, names, degrees, table, unit, functional };
        data.validate()?;
        Ok(BasedRing(Arc::new(data)))
    }

    /// The ring of a point, `Z`.
    pub fn point() -> Self {
        Self::projective_space(0)
    }

    /// `Z[h] / h^{n+1}`, basis `1, h, h^2, ..., h^n`.
    pub fn projective_space(n: usize) -> Self {
        let names = (0..=n).map(|i| match i {
            0 => "1".to_string(),
            1 => "h".to_string(),
            _ => format!("h^{i}"),
        });
        let basis: Vec<(String, usize)> = names.zip(0..=n).collect();
        let table = (0..=n).map(|i| (0..=n).map(|j| if i + j <= n { vec![(i + j, BigInt::one())] } else { vec![] }).collect()).collect();
        let functional = (0..=n).map(|i| BigInt::from((i == n) as i64)).collect();
        Self::new(n, basis, table, 0, functional).expect("truncated polynomial ring is valid")
    }

    /// Chow ring of the Grassmannian of `k`-planes in `n`-space.
    ///
    /// Basis: Schubert classes `s[..]` for partitions with at most `k` parts,
    /// each at most `n - k`; products by the Littlewood-Richardson rule.
    pub fn grassmannian(k: usize, n: usize) -> Result<Self, RingError> {
        if k == 0 || k >= n {
            return Err(RingError::InvalidStructure(format!("Gr({k},{n}) needs 0 < k < n")));
        }
        let parts = box_partitions(k, n - k);
        let index_of = |p: &[usize]| parts.iter().position(|q| q.as_slice() == p);
        let table = parts
            .iter()
            .map(|a| {
                parts
                    .iter()
                    .map(|b| {
                        parts
                            .iter()
                            .filter(|c| c.iter().sum::<usize>() == a.iter().sum::<usize>() + b.iter().sum::<usize>())
                            .filter_map(|c| {
                                let coeff = lr_coefficient(a, b, c);
                                (coeff > 0).then(|| (index_of(c).unwrap(), BigInt::from(coeff)))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let full = vec![n - k; k];
        let functional = parts.iter().map(|p| BigInt::from((*p == full) as i64)).collect();
        let basis = parts.iter().map(|p| (schubert_name(p), p.iter().sum())).collect();
        Self::new(k * (n - k), basis, table, 0, functional)
    }

    pub fn rank(&self) -> usize {
        self.0.names.len()
    }

    pub fn top_degree(&self) -> usize {
        self.0.top_degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn degree(&self, i: usize) -> usize {
        self.0.degrees[i]
    }

    pub fn unit_index(&self) -> usize {
        self.0.unit
    }

    pub fn index_of(&self, name: &str) -> Result<usize, RingError> {
        self.0.names.iter().position(|n| n == name).ok_or_else(|| RingError::UnknownBasisName(name.into()))
    }

    /// Indices of basis elements of degree `deg`, in basis order.
    pub fn basis_in_degree(&self, deg: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.0.degrees[i] == deg).collect()
    }

    /// `b_i * b_j` as integer `(index, coefficient)` terms.
    pub fn structure_constants(&self, i: usize, j: usize) -> Vec<(usize, BigInt)> {
        self.0.table[i][j].iter().map(|(k, c)| (*k, c.to_integer())).collect()
    }

    pub fn functional_value(&self, i: usize) -> BigInt {
        self.0.functional[i].to_integer()
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: self.clone(), coeffs: vec![Rational::zero(); self.rank()] }
    }

    pub fn one(&self) -> RingElement {
        self.basis_element(self.0.unit)
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        let mut e = self.zero();
        e.coeffs[i] = Rational::one();
        e
    }

    pub fn element_by_name(&self, name: &str) -> Result<RingElement, RingError> {
        Ok(self.basis_element(self.index_of(name)?))
    }

    /// Element from `(basis name, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, i64)]) -> Result<RingElement, RingError> {
        let mut e = self.zero();
        for (name, c) in terms {
            e.coeffs[self.index_of(name)?] += rat(*c);
        }
        Ok(e)
    }

    pub fn from_coefficients(&self, coeffs: Vec<Rational>) -> Result<RingElement, RingError> {
        if coeffs.len() != self.rank() {
            return Err(RingError::InvalidStructure(format!("{} coefficients for rank {}", coeffs.len(), self.rank())));
        }
        Ok(RingElement { ring: self.clone(), coeffs })
    }

    /// Integer matrix of `(x, y) -> deg(x * y)` between degree `i` and degree `d - i`.
    pub fn pairing_matrix(&self, i: usize) -> Result<ExactMatrix, RingError> {
        let d = self.top_degree();
        if i > d {
            return Err(RingError::DegreeOutOfRange { degree: i, top: d });
        }
        let rows = self.basis_in_degree(i);
        let cols = self.basis_in_degree(d - i);
        let values: Vec<Rational> = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.basis_element(r).mul(&self.basis_element(c)).evaluate())
            .collect();
        Ok(ExactMatrix::new(Field::Rational, rows.len(), cols.len(), &values)?)
    }

    /// `dual[i]` satisfies `deg(b_j * dual[i]) = [i == j]`.
    ///
    /// Fails with `NotUnimodular` if some pairing matrix is not invertible over `Z`.
    pub fn dual_basis(&self) -> Result<Vec<RingElement>, RingError> {
        let d = self.top_degree();
        let mut dual = vec![self.zero(); self.rank()];
        for i in 0..=d {
            let rows = self.basis_in_degree(i);
            let cols = self.basis_in_degree(d - i);
            let pairing = self.pairing_matrix(i)?;
            let snf = pairing.smith_normal_form()?;
            if rows.len() != cols.len() || !snf.is_unimodular() {
                return Err(RingError::NotUnimodular { degree: i, diagonal: snf.diagonal });
            }
            let inverse = pairing.inverse()?;
            for (r, &b) in rows.iter().enumerate() {
                let mut e = self.zero();
                for (k, &c) in cols.iter().enumerate() {
                    e.coeffs[c] = inverse.get(k, r);
                }
                dual[b] = e;
            }
        }
        Ok(dual)
    }
}

impl RingData {
    fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    fn validate(&self) -> Result<(), RingError> {
        let n = self.names.len();
        let bad = |msg: String| Err(RingError::InvalidStructure(msg));
        for i in 0..n {
            for j in 0..n {
                let terms = self.product(i, j);
                let target = self.degrees[i] + self.degrees[j];
                if target > self.top_degree && !terms.is_empty() {
                    return bad(format!("{}*{} is nonzero above the top degree", self.names[i], self.names[j]));
                }
                if let Some((k, _)) = terms.iter().find(|(k, c)| self.degrees[*k] != target || !c.is_integer()) {
                    return bad(format!("{}*{} has a bad term {}", self.names[i], self.names[j], self.names[*k]));
                }
                if terms != self.product(j, i) {
                    return bad(format!("{}*{} is not commutative", self.names[i], self.names[j]));
                }
            }
            if self.product(self.unit, i) != [(i, Rational::one())] {
                return bad(format!("unit does not fix {}", self.names[i]));
            }
        }
        if self.degrees[self.unit] != 0 {
            return bad("unit must have degree 0".into());
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.triple(i, j, k, true) != self.triple(i, j, k, false) {
                        return bad(format!("associativity fails on ({}, {}, {})", self.names[i], self.names[j], self.names[k]));
                    }
                }
            }
        }
        if self.functional.iter().all(Zero::is_zero) {
            return bad("degree functional is zero".into());
        }
        if let Some(i) = (0..n).find(|&i| !self.functional[i].is_zero() && self.degrees[i] != self.top_degree) {
            return bad(format!("degree functional is nonzero on {}", self.names[i]));
        }
        Ok(())
    }

    fn triple(&self, i: usize, j: usize, k: usize, left_first: bool) -> Vec<(usize, Rational)> {
        let (first, outer) = if left_first { (self.product(i, j), k) } else { (self.product(j, k), i) };
        let mut acc = Vec::new();
        for (m, c) in first {
            for (r, c2) in self.product(*m, outer) {
                acc.push((*r, c * c2));
            }
        }
        normalize(acc)
    }
}

/// Element of a [`BasedRing`] with rational coefficients in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: BasedRing,
    coeffs: Vec<Rational>,
}

impl RingElement {
    pub fn ring(&self) -> &BasedRing {
        &self.ring
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coefficient_of(&self, name: &str) -> Result<&Rational, RingError> {
        Ok(&self.coeffs[self.ring.index_of(name)?])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn assert_integral(&self) -> Result<(), RingError> {
        if self.is_integral() {
            Ok(())
        } else {
            Err(RingError::NotIntegral(self.to_string()))
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), RingError> {
        if self.ring != other.ring {
            return Err(RingError::RingMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        Ok(self.mul(other))
    }

    /// Panics if the rings differ; see [`Self::try_add`].
    pub fn add(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "ring mismatch");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        RingElement { ring: self.ring.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RingElement { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Panics if the rings differ; see [`Self::try_mul`].
    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "ring mismatch");
        let data = &self.ring.0;
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in data.product(i, j) {
                    out[k.to_owned()] += &ab * c;
                }
            }
        }
        RingElement { ring: self.ring.clone(), coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(self.ring.one(), |acc, _| acc.mul(self))
    }

    /// Degree-`deg` homogeneous part.
    pub fn component(&self, deg: usize) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(i, c)| if self.ring.degree(i) == deg { c.clone() } else { Rational::zero() }).collect();
        RingElement { ring: self.ring.clone(), coeffs }
    }

    /// Degree functional (integration over the top class).
    pub fn evaluate(&self) -> Rational {
        self.coeffs.iter().zip(&self.ring.0.functional).map(|(c, f)| c * f).sum()
    }

    /// Sign `(-1)^k` on the degree-`k` part.
    pub fn graded_sign(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| if self.ring.degree(i) % 2 == 1 { -c } else { c.clone() }).collect();
        RingElement { ring: self.ring.clone(), coeffs }
    }

    /// Nonzero `(basis name, coefficient)` pairs in basis order.
    pub fn terms(&self) -> Vec<(String, Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.ring.name(i).to_string(), c.clone())).collect()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (name, c)) in terms.iter().enumerate() {
            let magnitude = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if name == "1" {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{magnitude}*{name}")?;
            }
        }
        Ok(())
    }
}

/// `X x Y` with its two pullback embeddings.
///
/// Basis element `(i, j)` sits at index `i * rank(Y) + j`.
#[derive(Clone, Debug)]
pub struct ProductRing {
    ring: BasedRing,
    left: BasedRing,
    right: BasedRing,
}

impl ProductRing {
    /// Kunneth product; basis names are `a*b` with unit factors dropped.
    pub fn new(left: &BasedRing, right: &BasedRing) -> Self {
        Self::build(left, right, |a, b| match (a, b) {
            ("1", "1") => "1".into(),
            ("1", b) => b.into(),
            (a, "1") => a.into(),
            (a, b) => format!("{a}*{b}"),
        })
    }

    /// `X x X` with factors tagged `p1(..)` and `p2(..)`.
    pub fn square(base: &BasedRing) -> Self {
        Self::build(base, base, |a, b| match (a, b) {
            ("1", "1") => "1".into(),
            ("1", b) => format!("p2({b})"),
            (a, "1") => format!("p1({a})"),
            (a, b) => format!("p1({a})*p2({b})"),
        })
    }

    // The factors were validated on construction; the tensor product of
    // valid rings is valid, so the cubic associativity scan is skipped here.
    fn build(left: &BasedRing, right: &BasedRing, name: impl Fn(&str, &str) -> String) -> Self {
        let (l, r) = (&left.0, &right.0);
        let (nl, nr) = (l.names.len(), r.names.len());
        let idx = |i: usize, j: usize| i * nr + j;
        let mut names = Vec::with_capacity(nl * nr);
        let mut degrees = Vec::with_capacity(nl * nr);
        let mut functional = Vec::with_capacity(nl * nr);
        for i in 0..nl {
            for j in 0..nr {
                names.push(name(&l.names[i], &r.names[j]));
                degrees.push(l.degrees[i] + r.degrees[j]);
                functional.push(&l.functional[i] * &r.functional[j]);
            }
        }
        let mut table: Structure = vec![vec![Vec::new(); nl * nr]; nl * nr];
        for (a, b) in (0..nl).flat_map(|a| (0..nr).map(move |b| (a, b))) {
            for (c, e) in (0..nl).flat_map(|c| (0..nr).map(move |e| (c, e))) {
                let mut terms = Vec::new();
                for (m, x) in l.product(a, c) {
                    for (k, y) in r.product(b, e) {
                        terms.push((idx(*m, *k), x * y));
                    }
                }
                table[idx(a, b)][idx(c, e)] = normalize(terms);
            }
        }
        let data = RingData { top_degree: l.top_degree + r.top_degree, names, degrees, table, unit: idx(l.unit, r.unit), functional };
        ProductRing { ring: BasedRing(Arc::new(data)), left: left.clone(), right: right.clone() }
    }

    pub fn ring(&self) -> &BasedRing {
        &self.ring
    }

    pub fn left(&self) -> &BasedRing {
        &self.left
    }

    pub fn right(&self) -> &BasedRing {
        &self.right
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right.rank() + j
    }

    /// Pullback along the first projection, `x -> x (x) 1`.
    pub fn p1(&self, x: &RingElement) -> Result<RingElement, RingError> {
        if x.ring != self.left {
            return Err(RingError::RingMismatch);
        }
        let mut out = self.ring.zero();
        let u = self.right.unit_index();
        for (i, c) in x.coeffs.iter().enumerate() {
            out.coeffs[self.index(i, u)] = c.clone();
        }
        Ok(out)
    }

    /// Pullback along the second projection, `y -> 1 (x) y`.
    pub fn p2(&self, y: &RingElement) -> Result<RingElement, RingError> {
        if y.ring != self.right {
            return Err(RingError::RingMismatch);
        }
        let mut out = self.ring.zero();
        let u = self.left.unit_index();
        for (j, c) in y.coeffs.iter().enumerate() {
            out.coeffs[self.index(u, j)] = c.clone();
        }
        Ok(out)
    }

    /// Exchange of the two factors of a square.
    pub fn swap(&self, z: &RingElement) -> Result<RingElement, RingError> {
        if self.left != self.right || z.ring != self.ring {
            return Err(RingError::RingMismatch);
        }
        let n = self.left.rank();
        let mut out = self.ring.zero();
        for i in 0..n {
            for j in 0..n {
                out.coeffs[self.index(j, i)] = z.coeffs[self.index(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// `sum_i p1(b_i) p2(b_i^dual)`: the diagonal class predicted by the dual-basis decomposition.
    pub fn kunneth_diagonal(&self) -> Result<RingElement, RingError> {
        if self.left != self.right {
            return Err(RingError::RingMismatch);
        }
        let base = &self.left;
        let dual = base.dual_basis()?;
        let mut delta = self.ring.zero();
        for (i, d) in dual.iter().enumerate() {
            delta = delta.add(&self.p1(&base.basis_element(i))?.mul(&self.p2(d)?));
        }
        Ok(delta)
    }
}

/// Partitions with at most `rows` parts, each at most `width`, ordered by
/// size and then reverse-lexicographically (`s[2]` before `s[1,1]`).
pub fn box_partitions(rows: usize, width: usize) -> Vec<Vec<usize>> {
    fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == rows {
            return;
        }
        for part in 1..=max {
            cur.push(part);
            go(rows, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, width, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum::<usize>()).then_with(|| b.cmp(a)));
    out
}

pub fn schubert_name(p: &[usize]) -> String {
    if p.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("s[{}]", parts.join(","))
}

/// Complement of `p` in the `rows x width` box.
pub fn box_complement(p: &[usize], rows: usize, width: usize) -> Vec<usize> {
    let part = |i: usize| p.get(i).copied().unwrap_or(0);
    let mut c: Vec<usize> = (0..rows).map(|i| width - part(rows - 1 - i)).collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// Littlewood-Richardson coefficient `c^outer_{inner, content}`, counted as
/// semistandard fillings of `outer / inner` with the given content whose
/// reverse reading word is a lattice word.
pub fn lr_coefficient(inner: &[usize], content: &[usize], outer: &[usize]) -> u64 {
    let part = |p: &[usize], i: usize| p.get(i).copied().unwrap_or(0);
    if outer.iter().sum::<usize>() != inner.iter().sum::<usize>() + content.iter().sum::<usize>() {
        return 0;
    }
    if (0..inner.len().max(outer.len())).any(|i| part(inner, i) > part(outer, i)) {
        return 0;
    }
    // cells in reverse reading order: rows top to bottom, each right to left
    let cells: Vec<(usize, usize)> = (0..outer.len()).flat_map(|r| (part(inner, r)..outer[r]).rev().map(move |c| (r, c))).collect();
    let mut filling: Vec<Vec<usize>> = outer.iter().map(|&len| vec![0; len]).collect();
    let mut counts = vec![0usize; content.len() + 1];

    fn fill(
        pos: usize,
        cells: &[(usize, usize)],
        inner: &[usize],
        outer: &[usize],
        content: &[usize],
        filling: &mut Vec<Vec<usize>>,
        counts: &mut Vec<usize>,
    ) -> u64 {
        let Some(&(r, c)) = cells.get(pos) else {
            return (content.iter().enumerate().all(|(i, &m)| counts[i + 1] == m)) as u64;
        };
        let inner_len = |row: usize| inner.get(row).copied().unwrap_or(0);
        let mut total = 0;
        for v in 1..=content.len() {
            if c + 1 < outer[r] && v > filling[r][c + 1] {
                continue;
            }
            if r > 0 && c >= inner_len(r - 1) && c < outer[r - 1] && v <= filling[r - 1][c] {
                continue;
            }
            if counts[v] + 1 > content[v - 1] || (v > 1 && counts[v] + 1 > counts[v - 1]) {
                continue;
            }
            counts[v] += 1;
            filling[r][c] = v;
            total += fill(pos + 1, cells, inner, outer, content, filling, counts);
            filling[r][c] = 0;
            counts[v] -= 1;
        }
        total
    }
    fill(0, &cells, inner, outer, content, &mut filling, &mut counts)
}

/// Coefficient as `i64`; panics if it is not an integer.
pub fn integer_coefficient(c: &Rational) -> i64 {
    assert!(c.is_integer(), "non-integral coefficient {c}");
    c.to_integer().to_i64().expect("fits in i64")
}
