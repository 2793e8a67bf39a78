//! Quivers, dimension vectors and representations.
//!
//! `Hom` and `Ext^1` between representations are read off the two-term
//! complex `d_phi : (+)_i Hom(W_i, W'_i) -> (+)_a Hom(W_ta, W'_ha)`,
//! `(d_phi g)_a = phi'_a g_ta - g_ha phi_a`. Path algebras of quivers are
//! hereditary, so nothing beyond `Ext^1` is needed.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{rat, ExactError, ExactMatrix, Field, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("weight pairs to {0} with the dimension vector, expected 0")]
    WeightNotOrthogonal(Rational),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow {0:?}")]
    DuplicateArrow(String),
    #[error("expected {expected} entries (one per vertex), got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("arrow {arrow}: expected a {rows}x{cols} matrix, got {found_rows}x{found_cols}")]
    ShapeMismatch { arrow: String, rows: usize, cols: usize, found_rows: usize, found_cols: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite directed multigraph. Acyclicity is decided once at construction.
#[derive(Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    acyclic: bool,
    paths: OnceLock<Vec<Vec<u64>>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Clone for Quiver {
    fn clone(&self) -> Self {
        Quiver { vertices: self.vertices.clone(), arrows: self.arrows.clone(), acyclic: self.acyclic, paths: OnceLock::new() }
    }
}

impl Quiver {
    /// `arrows` are `(id, tail, head)` triples naming declared vertices.
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        arrows: impl IntoIterator<Item = (S, S, S)>,
    ) -> Result<Self, QuiverError> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut ids = HashSet::new();
        let mut out = Vec::new();
        for (id, tail, head) in arrows {
            let (id, tail, head): (String, String, String) = (id.into(), tail.into(), head.into());
            if !ids.insert(id.clone()) {
                return Err(QuiverError::DuplicateArrow(id));
            }
            let t = *index.get(&tail).ok_or(QuiverError::UnknownVertex(tail))?;
            let h = *index.get(&head).ok_or(QuiverError::UnknownVertex(head))?;
            out.push(Arrow { id, tail: t, head: h });
        }
        let acyclic = is_acyclic(vertices.len(), &out);
        Ok(Quiver { vertices, arrows: out, acyclic, paths: OnceLock::new() })
    }

    /// Two vertices `0 -> 1` joined by `arrows` parallel arrows `a1..an`.
    pub fn kronecker(arrows: usize) -> Self {
        let arrows: Vec<(String, String, String)> = (1..=arrows).map(|i| (format!("a{i}"), "0".to_string(), "1".to_string())).collect();
        Quiver::new(["0".to_string(), "1".to_string()], arrows).expect("well-formed")
    }

    /// `0 -> 1 -> ... -> n-1`.
    pub fn linear(vertices: usize) -> Self {
        let names: Vec<String> = (0..vertices).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..vertices).map(|i| (format!("a{i}"), (i - 1).to_string(), i.to_string())).collect();
        Quiver::new(names, arrows).expect("well-formed")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| QuiverError::UnknownVertex(name.into()))
    }

    /// Number of directed paths `from -> to`, counting the trivial path.
    ///
    /// Equals `dim e_to kQ e_from = dim Hom(kQ e_to, kQ e_from)`.
    pub fn path_count(&self, from: usize, to: usize) -> Result<u64, QuiverError> {
        if !self.acyclic {
            return Err(QuiverError::CyclicQuiver);
        }
        Ok(self.path_table()[from][to])
    }

    fn path_table(&self) -> &Vec<Vec<u64>> {
        self.paths.get_or_init(|| {
            let n = self.vertices.len();
            let mut adjacency = vec![vec![0u64; n]; n];
            for a in &self.arrows {
                adjacency[a.tail][a.head] += 1;
            }
            // sum of A^0 + A^1 + ... ; A^n = 0 for an acyclic quiver
            let mut total: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
            let mut power = total.clone();
            for _ in 1..n.max(1) {
                let mut next = vec![vec![0u64; n]; n];
                for i in 0..n {
                    for k in 0..n {
                        if power[i][k] == 0 {
                            continue;
                        }
                        for j in 0..n {
                            next[i][j] += power[i][k] * adjacency[k][j];
                        }
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        total[i][j] += next[i][j];
                    }
                }
                power = next;
            }
            total
        })
    }

    fn check_len(&self, len: usize) -> Result<(), QuiverError> {
        if len != self.vertices.len() {
            return Err(QuiverError::LengthMismatch { expected: self.vertices.len(), found: len });
        }
        Ok(())
    }

    /// `<a, b> = sum_i a_i b_i - sum_arrows a_ta b_ha`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64, QuiverError> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let diagonal: i64 = (0..a.len()).map(|i| (a[i] * b[i]) as i64).sum();
        let off: i64 = self.arrows.iter().map(|ar| (a[ar.tail] * b[ar.head]) as i64).sum();
        Ok(diagonal - off)
    }

    /// `1 - <a, a>`; the dimension of the moduli space whenever it is nonempty.
    pub fn moduli_dimension(&self, a: &DimVector) -> Result<i64, QuiverError> {
        if !self.acyclic {
            return Err(QuiverError::CyclicQuiver);
        }
        Ok(1 - self.euler_form(a, a)?)
    }
}

fn is_acyclic(n: usize, arrows: &[Arrow]) -> bool {
    let mut indegree = vec![0usize; n];
    for a in arrows {
        indegree[a.head] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for a in arrows.iter().filter(|a| a.tail == v) {
            indegree[a.head] -= 1;
            if indegree[a.head] == 0 {
                queue.push(a.head);
            }
        }
    }
    seen == n
}

/// Dimension vector, indexed like the quiver's vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimVector(pub Vec<u64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
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
}

impl From<Vec<u64>> for DimVector {
    fn from(v: Vec<u64>) -> Self {
        DimVector(v)
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

/// Stability parameter, indexed like the quiver's vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn from_integers(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| rat(x)).collect())
    }

    pub fn pair(&self, d: &DimVector) -> Rational {
        self.0.iter().zip(&d.0).map(|(t, &a)| t * rat(a as i64)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomExt {
    pub hom: usize,
    pub ext1: usize,
}

/// Vector spaces `W_i = k^{dim_i}` with a matrix of shape `dim_ha x dim_ta` per arrow.
#[derive(Clone, Debug)]
pub struct Representation {
    quiver: Arc<Quiver>,
    dim: DimVector,
    field: Field,
    maps: Vec<ExactMatrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, dim: DimVector, field: Field, maps: Vec<ExactMatrix>) -> Result<Self, QuiverError> {
        quiver.check_len(dim.len())?;
        if maps.len() != quiver.arrows.len() {
            return Err(QuiverError::LengthMismatch { expected: quiver.arrows.len(), found: maps.len() });
        }
        for (a, m) in quiver.arrows.iter().zip(&maps) {
            if m.field() != field {
                return Err(QuiverError::FieldMismatch(field, m.field()));
            }
            let (rows, cols) = (dim[a.head] as usize, dim[a.tail] as usize);
            if m.rows() != rows || m.cols() != cols {
                return Err(QuiverError::ShapeMismatch { arrow: a.id.clone(), rows, cols, found_rows: m.rows(), found_cols: m.cols() });
            }
        }
        Ok(Representation { quiver, dim, field, maps })
    }

    /// All arrow maps zero.
    pub fn zero(quiver: Arc<Quiver>, dim: DimVector, field: Field) -> Result<Self, QuiverError> {
        let maps = quiver
            .arrows
            .iter()
            .map(|a| ExactMatrix::zeros(field, *dim.0.get(a.head).unwrap_or(&0) as usize, *dim.0.get(a.tail).unwrap_or(&0) as usize))
            .collect();
        Self::new(quiver, dim, field, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn maps(&self) -> &[ExactMatrix] {
        &self.maps
    }

    /// The same matrices read in `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Self, QuiverError> {
        let field = Field::prime(p)?;
        let maps =
            self.maps.iter().map(|m| ExactMatrix::new(field, m.rows(), m.cols(), &m.to_rows().concat())).collect::<Result<Vec<_>, _>>()?;
        Self::new(self.quiver.clone(), self.dim.clone(), field, maps)
    }

    fn compatible(&self, other: &Self) -> Result<(), QuiverError> {
        if !Arc::ptr_eq(&self.quiver, &other.quiver) && *self.quiver != *other.quiver {
            return Err(QuiverError::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(QuiverError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Matrix of `d_phi` from `(+)_i Hom(W_i, W'_i)` to `(+)_a Hom(W_ta, W'_ha)`.
    pub fn hom_differential(&self, other: &Self) -> Result<ExactMatrix, QuiverError> {
        self.compatible(other)?;
        let q = &self.quiver;
        let (e, f) = (&self.dim, &other.dim);
        // column offsets of gamma_i (f_i x e_i, row-major)
        let mut col_offset = Vec::with_capacity(q.vertex_count());
        let mut cols = 0usize;
        for i in 0..q.vertex_count() {
            col_offset.push(cols);
            cols += (f[i] * e[i]) as usize;
        }
        let rows: usize = q.arrows.iter().map(|a| (f[a.head] * e[a.tail]) as usize).sum();
        let mut d = vec![Rational::zero(); rows * cols];
        let mut row_offset = 0usize;
        for (idx, a) in q.arrows.iter().enumerate() {
            let (t, h) = (a.tail, a.head);
            let (phi_e, phi_f) = (&self.maps[idx], &other.maps[idx]);
            let (fh, et) = (f[h] as usize, e[t] as usize);
            for r in 0..fh {
                for c in 0..et {
                    let row = row_offset + r * et + c;
                    // (phi'_a gamma_t)[r,c] = sum_k phi'_a[r,k] gamma_t[k,c]
                    for k in 0..f[t] as usize {
                        let col = col_offset[t] + k * et + c;
                        d[row * cols + col] += phi_f.get(r, k);
                    }
                    // -(gamma_h phi_a)[r,c] = -sum_k gamma_h[r,k] phi_a[k,c]
                    for k in 0..e[h] as usize {
                        let col = col_offset[h] + r * e[h] as usize + k;
                        d[row * cols + col] -= phi_e.get(k, c);
                    }
                }
            }
            row_offset += fh * et;
        }
        Ok(ExactMatrix::new(self.field, rows, cols, &d)?)
    }

    /// `(dim Hom(self, other), dim Ext^1(self, other))`.
    pub fn hom_ext(&self, other: &Self) -> Result<HomExt, QuiverError> {
        let d = self.hom_differential(other)?;
        let rank = d.rank();
        Ok(HomExt { hom: d.cols() - rank, ext1: d.rows() - rank })
    }

    fn check_weight(&self, theta: &Weight) -> Result<(), QuiverError> {
        self.quiver.check_len(theta.0.len())?;
        let s = theta.pair(&self.dim);
        if !s.is_zero() {
            return Err(QuiverError::WeightNotOrthogonal(s));
        }
        Ok(())
    }

    /// King stability: every proper nonzero subrepresentation has positive weight.
    ///
    /// Uses vertex-subset enumeration when all `dim_i <= 1`, otherwise an
    /// exhaustive subspace search, which needs a prime field.
    pub fn is_theta_stable(&self, theta: &Weight) -> Result<bool, QuiverError> {
        if self.dim.0.iter().all(|&d| d <= 1) {
            self.stable_by_subsets(theta)
        } else if matches!(self.field, Field::Prime(_)) {
            self.stable_by_subspaces(theta)
        } else {
            Err(QuiverError::UnsupportedInstance("stability over Q needs every dimension <= 1; reduce mod a prime instead".into()))
        }
    }

    /// Exact check for thin representations: subrepresentations are the
    /// vertex subsets of the support closed under arrows with nonzero maps.
    pub fn stable_by_subsets(&self, theta: &Weight) -> Result<bool, QuiverError> {
        self.check_weight(theta)?;
        if self.dim.0.iter().any(|&d| d > 1) {
            return Err(QuiverError::UnsupportedInstance("subset checker needs every dimension <= 1".into()));
        }
        let support: Vec<usize> = (0..self.dim.len()).filter(|&i| self.dim[i] == 1).collect();
        let forced: Vec<(usize, usize)> = self
            .quiver
            .arrows
            .iter()
            .zip(&self.maps)
            .filter(|(a, m)| self.dim[a.tail] == 1 && self.dim[a.head] == 1 && !m.is_zero())
            .map(|(a, _)| (a.tail, a.head))
            .collect();
        let k = support.len();
        if k >= 63 {
            return Err(QuiverError::UnsupportedInstance("support too large for subset enumeration".into()));
        }
        let full = (1u64 << k) - 1;
        for mask in 1..full {
            let member = |v: usize| support.iter().position(|&s| s == v).is_some_and(|pos| mask >> pos & 1 == 1);
            if forced.iter().any(|&(t, h)| member(t) && !member(h)) {
                continue;
            }
            let weight: Rational = (0..k).filter(|&pos| mask >> pos & 1 == 1).map(|pos| theta.0[support[pos]].clone()).sum();
            if !weight.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exhaustive check over all tuples of subspaces of `F_p^{dim_i}`.
    pub fn stable_by_subspaces(&self, theta: &Weight) -> Result<bool, QuiverError> {
        self.check_weight(theta)?;
        let Field::Prime(p) = self.field else {
            return Err(QuiverError::UnsupportedInstance("subspace enumeration needs a prime field".into()));
        };
        let candidates: Vec<Vec<ExactMatrix>> = self.dim.0.iter().map(|&d| subspaces(self.field, p, d as usize)).collect();
        let mut chosen: Vec<ExactMatrix> = Vec::with_capacity(self.dim.len());
        Ok(!self.find_destabilizing(theta, &candidates, &mut chosen))
    }

    fn find_destabilizing(&self, theta: &Weight, candidates: &[Vec<ExactMatrix>], chosen: &mut Vec<ExactMatrix>) -> bool {
        let v = chosen.len();
        if v == candidates.len() {
            let dims: Vec<u64> = chosen.iter().map(|s| s.rows() as u64).collect();
            if dims.iter().all(|&d| d == 0) || dims == self.dim.0 {
                return false;
            }
            return !theta.pair(&DimVector(dims)).is_positive();
        }
        for candidate in &candidates[v] {
            chosen.push(candidate.clone());
            if self.closed_so_far(chosen) && self.find_destabilizing(theta, candidates, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Arrows whose endpoints are both chosen map the tail subspace into the head subspace.
    fn closed_so_far(&self, chosen: &[ExactMatrix]) -> bool {
        let last = chosen.len() - 1;
        self.quiver.arrows.iter().zip(&self.maps).all(|(a, m)| {
            if a.tail.max(a.head) != last {
                return true;
            }
            let (src, dst) = (&chosen[a.tail], &chosen[a.head]);
            if src.rows() == 0 {
                return true;
            }
            let images = m.mul(&src.transpose()).expect("field and shape agree").transpose();
            dst.vstack(&images).expect("same field").rank() == dst.rows()
        })
    }

    /// Dimension vector of the smallest subrepresentation containing the seeds.
    ///
    /// `seeds[i]` lists vectors of `W_i`.
    pub fn generated_subrep(&self, seeds: &[Vec<Vec<Rational>>]) -> Result<DimVector, QuiverError> {
        let spans = self.generated_spans(seeds)?;
        Ok(DimVector(spans.iter().map(|s| s.rows() as u64).collect()))
    }

    /// Row bases of the generated subspaces, one per vertex.
    pub fn generated_spans(&self, seeds: &[Vec<Vec<Rational>>]) -> Result<Vec<ExactMatrix>, QuiverError> {
        self.quiver.check_len(seeds.len())?;
        let mut spans = Vec::with_capacity(seeds.len());
        for (i, vectors) in seeds.iter().enumerate() {
            let d = self.dim[i] as usize;
            let mut span = ExactMatrix::zeros(self.field, 0, d);
            for v in vectors {
                if v.len() != d {
                    return Err(QuiverError::LengthMismatch { expected: d, found: v.len() });
                }
                span = span.vstack(&ExactMatrix::new(self.field, 1, d, v)?)?;
            }
            spans.push(span.row_space_basis());
        }
        loop {
            let mut changed = false;
            for (a, m) in self.quiver.arrows.iter().zip(&self.maps) {
                if spans[a.tail].rows() == 0 || m.rows() == 0 {
                    continue;
                }
                let images = m.mul(&spans[a.tail].transpose())?.transpose();
                let grown = spans[a.head].vstack(&images)?.row_space_basis();
                if grown.rows() > spans[a.head].rows() {
                    spans[a.head] = grown;
                    changed = true;
                }
            }
            if !changed {
                return Ok(spans);
            }
        }
    }
}

/// Every subspace of `F_p^n`, each as the row basis in reduced echelon form.
pub fn subspaces(field: Field, p: u64, n: usize) -> Vec<ExactMatrix> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free slots: row r, columns after its pivot that are not pivots
            let free: Vec<(usize, usize)> =
                pivots.iter().enumerate().flat_map(|(r, &pc)| (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c))).collect();
            let count = (p as usize).pow(free.len() as u32);
            for code in 0..count {
                let mut m = ExactMatrix::zeros(field, k, n);
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, pc, &Rational::one()).expect("in range");
                }
                let mut c = code;
                for &(r, col) in &free {
                    m.set(r, col, &rat((c % p as usize) as i64)).expect("in range");
                    c /= p as usize;
                }
                out.push(m);
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
