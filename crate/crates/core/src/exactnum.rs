//! Exact rational and prime-field linear algebra.
//!
//! Every matrix carries a [`Field`] tag. Entries are always exposed as
//! [`Rational`]s; over `F_p` they are the canonical residues in `[0, p)`.
//! Elimination runs on `u64` residues in the prime case, so brute-force
//! enumerations over small fields stay cheap.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Reduced fraction of arbitrary-precision integers (denominator > 0).
pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`, reduced.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("denominator of {value} is not invertible mod {p}")]
    NotInvertibleModP { value: String, p: u64 },
    #[error("matrix has non-integer entries")]
    NotIntegral,
    #[error("matrix is singular")]
    Singular,
}

/// Coefficient field of an [`ExactMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, ExactError> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(ExactError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// Canonical representative of `x` in this field.
    pub fn reduce(&self, x: &Rational) -> Result<Rational, ExactError> {
        match *self {
            Field::Rational => Ok(x.clone()),
            Field::Prime(p) => Ok(rat(residue(x, p)? as i64)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn residue(x: &Rational, p: u64) -> Result<u64, ExactError> {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_u64().unwrap();
    let den = x.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return Err(ExactError::NotInvertibleModP { value: x.to_string(), p });
    }
    Ok(mul_mod(num, inv_mod(den, p), p))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Field operations used by the shared elimination routine.
trait Arith {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub_mul(&self, a: &Self::E, factor: &Self::E, b: &Self::E) -> Self::E;
    fn div(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

struct QArith;

impl Arith for QArith {
    type E = Rational;
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn sub_mul(&self, a: &Rational, factor: &Rational, b: &Rational) -> Rational {
        a - factor * b
    }
    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        a / b
    }
}

struct FpArith(u64);

impl Arith for FpArith {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub_mul(&self, a: &u64, factor: &u64, b: &u64) -> u64 {
        let p = self.0;
        (a + p - mul_mod(*factor, *b, p)) % p
    }
    fn div(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, inv_mod(*b, self.0), self.0)
    }
}

/// In-place reduced row echelon form; returns pivot columns.
fn rref_in_place<A: Arith>(ar: &A, data: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                data.swap(pr * cols + k, r * cols + k);
            }
        }
        let pivot = data[r * cols + c].clone();
        for k in 0..cols {
            data[r * cols + k] = ar.div(&data[r * cols + k], &pivot);
        }
        for i in 0..rows {
            if i == r || ar.is_zero(&data[i * cols + c]) {
                continue;
            }
            let factor = data[i * cols + c].clone();
            for k in 0..cols {
                data[i * cols + k] = ar.sub_mul(&data[i * cols + k], &factor, &data[r * cols + k]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entries {
    Q(Vec<Rational>),
    Fp(Vec<u64>),
}

/// Dense matrix over `Q` or `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Entries,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        let entries = match field {
            Field::Rational => Entries::Q(vec![Rational::zero(); rows * cols]),
            Field::Prime(_) => Entries::Fp(vec![0; rows * cols]),
        };
        ExactMatrix { rows, cols, field, entries }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set_unchecked(i, i, &Rational::one());
        }
        m
    }

    /// Builds a `rows x cols` matrix from row-major entries, reducing into `field`.
    pub fn new(field: Field, rows: usize, cols: usize, values: &[Rational]) -> Result<Self, ExactError> {
        if values.len() != rows * cols {
            return Err(ExactError::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", values.len())));
        }
        let entries = match field {
            Field::Rational => Entries::Q(values.to_vec()),
            Field::Prime(p) => Entries::Fp(values.iter().map(|v| residue(v, p)).collect::<Result<_, _>>()?),
        };
        Ok(ExactMatrix { rows, cols, field, entries })
    }

    pub fn from_rows(field: Field, rows: &[Vec<Rational>]) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::ShapeMismatch("ragged rows".into()));
        }
        let flat: Vec<Rational> = rows.iter().flatten().cloned().collect();
        Self::new(field, rows.len(), cols, &flat)
    }

    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_rows(field, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        match &self.entries {
            Entries::Q(v) => v[r * self.cols + c].clone(),
            Entries::Fp(v) => rat(v[r * self.cols + c] as i64),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, value: &Rational) -> Result<(), ExactError> {
        let reduced = self.field.reduce(value)?;
        self.set_unchecked(r, c, &reduced);
        Ok(())
    }

    fn set_unchecked(&mut self, r: usize, c: usize, value: &Rational) {
        let idx = r * self.cols + c;
        match &mut self.entries {
            Entries::Q(v) => v[idx] = value.clone(),
            Entries::Fp(v) => v[idx] = value.to_integer().to_u64().expect("reduced residue"),
        }
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Q(v) => v.iter().all(Zero::is_zero),
            Entries::Fp(v) => v.iter().all(|&x| x == 0),
        }
    }

    pub fn is_integral(&self) -> bool {
        match &self.entries {
            Entries::Q(v) => v.iter().all(|x| x.is_integer()),
            Entries::Fp(_) => true,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set_unchecked(c, r, &self.get(r, c));
            }
        }
        t
    }

    fn same_field(&self, other: &Self) -> Result<(), ExactError> {
        if self.field != other.field {
            return Err(ExactError::FieldMismatch { left: self.field, right: other.field });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(ExactError::ShapeMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let entries = match (&self.entries, &other.entries) {
            (Entries::Q(a), Entries::Q(b)) => {
                let mut out = vec![Rational::zero(); n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = &a[i * k + l];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] += x * &b[l * m + j];
                        }
                    }
                }
                Entries::Q(out)
            }
            (Entries::Fp(a), Entries::Fp(b)) => {
                let Field::Prime(p) = self.field else { unreachable!() };
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = a[i * k + l];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] = (out[i * m + j] + mul_mod(x, b[l * m + j], p)) % p;
                        }
                    }
                }
                Entries::Fp(out)
            }
            _ => unreachable!("entries follow the field tag"),
        };
        Ok(ExactMatrix { rows: n, cols: m, field: self.field, entries })
    }

    /// Image of a column vector.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        let col = ExactMatrix::new(self.field, v.len(), 1, v)?;
        Ok(self.mul(&col)?.to_rows().into_iter().map(|mut r| r.remove(0)).collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(ExactError::ShapeMismatch("vstack column counts differ".into()));
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::Q(a), Entries::Q(b)) => Entries::Q(a.iter().chain(b).cloned().collect()),
            (Entries::Fp(a), Entries::Fp(b)) => Entries::Fp(a.iter().chain(b).copied().collect()),
            _ => unreachable!(),
        };
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, entries })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut out = self.clone();
        let pivots = match (&mut out.entries, self.field) {
            (Entries::Q(v), _) => rref_in_place(&QArith, v, self.rows, self.cols),
            (Entries::Fp(v), Field::Prime(p)) => rref_in_place(&FpArith(p), v, self.rows, self.cols),
            _ => unreachable!(),
        };
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.field.reduce(&-reduced.get(r, f)).expect("residue");
                }
                v
            })
            .collect()
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Self {
        let (reduced, pivots) = self.rref();
        let rows: Vec<Vec<Rational>> = (0..pivots.len()).map(|r| reduced.row(r)).collect();
        if rows.is_empty() {
            return Self::zeros(self.field, 0, self.cols);
        }
        Self::from_rows(self.field, &rows).expect("rows of equal length")
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set_unchecked(r, c, &self.get(r, c));
            }
            aug.set_unchecked(r, n + r, &Rational::one());
        }
        let (reduced, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ExactError::Singular);
        }
        let mut inv = Self::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set_unchecked(r, c, &reduced.get(r, n + c));
            }
        }
        Ok(inv)
    }

    /// Smith normal form of an integer matrix over `Q`.
    pub fn smith_normal_form(&self) -> Result<SmithForm, ExactError> {
        if self.field != Field::Rational || !self.is_integral() {
            return Err(ExactError::NotIntegral);
        }
        let a: Vec<Vec<BigInt>> = (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_integer()).collect()).collect();
        Ok(smith(a, self.rows, self.cols))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `left * m * right = diag(diagonal)` with unimodular `left`, `right`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Invariant factors, `d_i | d_{i+1}`, padded with zeros to `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub left: ExactMatrix,
    pub right: ExactMatrix,
}

impl SmithForm {
    pub fn is_unimodular(&self) -> bool {
        self.diagonal.iter().all(One::is_one)
    }
}

fn int_matrix(m: &[Vec<BigInt>], rows: usize, cols: usize) -> ExactMatrix {
    let flat: Vec<Rational> = m.iter().flatten().map(|x| Rational::from_integer(x.clone())).collect();
    ExactMatrix::new(Field::Rational, rows, cols, &flat).expect("shape")
}

fn identity_int(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
}

fn row_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src) {
        *t -= q * s;
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}

fn col_swap(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn smith(mut a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> SmithForm {
    let mut u = identity_int(rows);
    let mut v = identity_int(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut a, t, pj);
            col_swap(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diagonal = (0..steps).map(|i| a[i][i].clone()).collect();
    SmithForm { diagonal, left: int_matrix(&u, rows, rows), right: int_matrix(&v, cols, cols) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(Field::Rational, rows).unwrap()
    }

    fn diag_of(m: &ExactMatrix) -> Vec<i64> {
        m.smith_normal_form().unwrap().diagonal.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(q(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(ExactMatrix::zeros(Field::Rational, 3, 3).rank(), 0);
        assert_eq!(ExactMatrix::identity(Field::Rational, 4).rank(), 4);
    }

    #[test]
    fn kernel_examples() {
        let k = q(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
        assert!(ExactMatrix::identity(Field::Rational, 3).kernel_basis().is_empty());
        let k = q(&[vec![1, 2], vec![2, 4]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * rat(-1), &k[0][1] * rat(2));
    }

    #[test]
    fn smith_examples() {
        assert_eq!(diag_of(&q(&[vec![2, 0], vec![0, 3]])), vec![1, 6]);
        assert_eq!(diag_of(&ExactMatrix::identity(Field::Rational, 3)), vec![1, 1, 1]);
        assert_eq!(diag_of(&q(&[vec![2, 4], vec![6, 8]])), vec![2, 4]);
    }

    #[test]
    fn smith_transforms_reproduce_diagonal() {
        let m = q(&[vec![4, 6, 2], vec![2, 8, 10], vec![6, 0, 9]]);
        let s = m.smith_normal_form().unwrap();
        let d = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                let expected = if r == c { Rational::from_integer(s.diagonal[r].clone()) } else { rat(0) };
                assert_eq!(d.get(r, c), expected);
            }
        }
    }

    #[test]
    fn prime_field_elimination() {
        let f3 = Field::prime(3).unwrap();
        // [[1,2],[2,1]] has determinant -3 = 0 mod 3
        let m = ExactMatrix::from_i64_rows(f3, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
        let kernel = m.kernel_basis();
        assert_eq!(m.apply(&kernel[0]).unwrap(), vec![rat(0), rat(0)]);
        assert_eq!(ExactMatrix::from_i64_rows(Field::Rational, &[vec![1, 2], vec![2, 1]]).unwrap().rank(), 2);
    }

    #[test]
    fn residues_of_fractions() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.reduce(&frac(1, 2)).unwrap(), rat(3));
        assert_eq!(f5.reduce(&rat(-1)).unwrap(), rat(4));
        assert!(f5.reduce(&frac(1, 5)).is_err());
        assert!(Field::prime(6).is_err());
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = ExactMatrix::identity(Field::prime(3).unwrap(), 2);
        let b = ExactMatrix::identity(Field::prime(5).unwrap(), 2);
        assert!(matches!(a.mul(&b), Err(ExactError::FieldMismatch { .. })));
        assert!(a.vstack(&ExactMatrix::identity(Field::Rational, 2)).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = q(&[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(Field::Rational, 2));
        assert_eq!(q(&[vec![1, 2], vec![2, 4]]).inverse(), Err(ExactError::Singular));
    }
}
