//! Universal projective resolutions and the diagonal class.
//!
//! A resolution `0 -> (+)_j P_rj (x) E_rj -> ... -> (+)_j P_0j (x) E_0j` is
//! recorded as rows of `(projective, bundle class)` pairs. On `M x M` the
//! Hom complex has terms
//!
//! ```text
//! L^p = (+)_{i' - i = p} (+)_{j, j'} Hom_S(P_ij, P_i'j') (x) p1*E_ij^dual (x) p2*E_i'j'
//! ```
//!
//! and the diagonal is `c_{dim M}(sum_p (-1)^{p+1} [L^p])`. Only the
//! K-theory classes of the terms are modeled.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::basedring::{box_complement, box_partitions, schubert_name, BasedRing, ProductRing, RingElement, RingError};
use crate::chernclass::{whitney_total, BundleClass, ChernError};
use crate::gtcomb::{GtError, HilbertFunction};
use crate::quiverrep::{DimVector, Quiver, QuiverError, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("hom-dimension provider {provider} cannot evaluate tag {tag}")]
    ProviderMismatch { provider: String, tag: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("rank mismatch at {place}: expected {expected}, found {found}")]
    RankMismatch { place: String, expected: i64, found: i64 },
    #[error("bundle classes live on different rings")]
    RingMismatch,
    #[error("resolution rows are inconsistent: {0}")]
    Malformed(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Chern(#[from] ChernError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Gt(#[from] GtError),
}

/// Indecomposable projective appearing in a resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjectiveTag {
    /// `kQ e_v` for a vertex index `v` of the quiver.
    PathIdempotent(usize),
    /// `S(-n)` over `S = k[x, y]`.
    GradedTwist(i64),
    /// `S e_v` in the three-vertex algebra with relations, `v` its vertex label.
    RelationAlgebraIdempotent(usize),
}

impl fmt::Display for ProjectiveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveTag::PathIdempotent(v) => write!(f, "Se{v}"),
            ProjectiveTag::GradedTwist(n) => write!(f, "S({})", -n),
            ProjectiveTag::RelationAlgebraIdempotent(v) => write!(f, "Sē{v}"),
        }
    }
}

/// Rule for `dim Hom_S(P, P')` between tagged projectives.
#[derive(Clone, Debug)]
pub enum HomDimProvider {
    /// `dim Hom(kQ e_i, kQ e_j) = #paths j -> i`.
    AcyclicPathCount(Arc<Quiver>),
    /// `dim Hom(S(-a), S(-b))_0 = dim S_{a-b} = max(0, a - b + 1)`.
    GradedBinary,
    /// Three-vertex algebra with arrows `2 -> 1 -> 0` tripled and the
    /// commutativity relations: paths of length `l` span the degree-`l`
    /// monomials in three variables, so `dim e_i S e_j = C(l + 2, 2)` with
    /// `l = j - i >= 0`.
    SymmetricTripleQuiver,
    /// `table[i][j] = dim Hom(P_i, P_j)` for idempotent tags.
    ExplicitTable(Vec<Vec<u64>>),
}

impl HomDimProvider {
    fn kind(&self) -> &'static str {
        match self {
            HomDimProvider::AcyclicPathCount(_) => "AcyclicPathCount",
            HomDimProvider::GradedBinary => "GradedBinary",
            HomDimProvider::SymmetricTripleQuiver => "SymmetricTripleQuiver",
            HomDimProvider::ExplicitTable(_) => "ExplicitTable",
        }
    }

    pub fn hom_dim(&self, from: ProjectiveTag, to: ProjectiveTag) -> Result<u64, ResolutionError> {
        use ProjectiveTag::*;
        let mismatch = |tag: ProjectiveTag| ResolutionError::ProviderMismatch { provider: self.kind().into(), tag: tag.to_string() };
        match (self, from, to) {
            (HomDimProvider::AcyclicPathCount(q), PathIdempotent(i), PathIdempotent(j)) => {
                if i >= q.vertex_count() || j >= q.vertex_count() {
                    return Err(mismatch(from));
                }
                Ok(q.path_count(j, i)?)
            }
            (HomDimProvider::GradedBinary, GradedTwist(a), GradedTwist(b)) => Ok((a - b + 1).max(0) as u64),
            (HomDimProvider::SymmetricTripleQuiver, RelationAlgebraIdempotent(i), RelationAlgebraIdempotent(j)) => {
                if i > 2 || j > 2 {
                    return Err(mismatch(from));
                }
                Ok(if j >= i { ((j - i + 2) * (j - i + 1) / 2) as u64 } else { 0 })
            }
            (
                HomDimProvider::ExplicitTable(t),
                PathIdempotent(i) | RelationAlgebraIdempotent(i),
                PathIdempotent(j) | RelationAlgebraIdempotent(j),
            ) => t.get(i).and_then(|row| row.get(j)).copied().ok_or_else(|| mismatch(from)),
            (_, tag, _) if !self.accepts(tag) => Err(mismatch(tag)),
            (_, _, tag) => Err(mismatch(tag)),
        }
    }

    fn accepts(&self, tag: ProjectiveTag) -> bool {
        use ProjectiveTag::*;
        matches!(
            (self, tag),
            (HomDimProvider::AcyclicPathCount(_), PathIdempotent(_))
                | (HomDimProvider::GradedBinary, GradedTwist(_))
                | (HomDimProvider::SymmetricTripleQuiver, RelationAlgebraIdempotent(_))
                | (HomDimProvider::ExplicitTable(_), PathIdempotent(_) | RelationAlgebraIdempotent(_))
        )
    }
}

/// One summand `P (x) E` of a resolution term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionEntry {
    pub tag: ProjectiveTag,
    pub bundle: BundleClass,
}

/// `rows[i]` lists the summands of the homological degree-`i` term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalResolution {
    rows: Vec<Vec<ResolutionEntry>>,
}

impl UniversalResolution {
    /// Every class must be genuine (rank >= 0) and all share one ring.
    pub fn new(rows: Vec<Vec<ResolutionEntry>>) -> Result<Self, ResolutionError> {
        let mut ring: Option<&BasedRing> = None;
        for e in rows.iter().flatten() {
            if e.bundle.rank() < 0 {
                return Err(ResolutionError::Malformed(format!("negative rank {} on {}", e.bundle.rank(), e.tag)));
            }
            match ring {
                Some(r) if r != e.bundle.ring() => return Err(ResolutionError::RingMismatch),
                _ => ring = Some(e.bundle.ring()),
            }
        }
        Ok(UniversalResolution { rows })
    }

    pub fn rows(&self) -> &[Vec<ResolutionEntry>] {
        &self.rows
    }

    /// Length `r`: the index of the last term.
    pub fn length(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn base_ring(&self) -> Option<&BasedRing> {
        self.rows.iter().flatten().next().map(|e| e.bundle.ring())
    }

    /// Every bundle replaced by `E (x) line`.
    pub fn twisted(&self, line: &BundleClass) -> Result<Self, ResolutionError> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| Ok(ResolutionEntry { tag: e.tag, bundle: e.bundle.tensor(line)? }))
                    .collect::<Result<Vec<_>, ResolutionError>>()
            })
            .collect::<Result<_, _>>()?;
        Self::new(rows)
    }

    /// Summed rank of each row.
    pub fn row_ranks(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().map(|e| e.bundle.rank()).sum()).collect()
    }
}

/// `0 -> (+)_a S e_ha (x) U_ta -> (+)_i S e_i (x) U_i -> U -> 0`.
pub fn quiver_resolution(q: &Arc<Quiver>, universal: &[BundleClass]) -> Result<UniversalResolution, ResolutionError> {
    if !q.is_acyclic() {
        return Err(QuiverError::CyclicQuiver.into());
    }
    if universal.len() != q.vertex_count() {
        return Err(ResolutionError::Malformed(format!("{} bundles for {} vertices", universal.len(), q.vertex_count())));
    }
    let row0 =
        (0..q.vertex_count()).map(|i| ResolutionEntry { tag: ProjectiveTag::PathIdempotent(i), bundle: universal[i].clone() }).collect();
    let row1 = q
        .arrows()
        .iter()
        .map(|a| ResolutionEntry { tag: ProjectiveTag::PathIdempotent(a.head), bundle: universal[a.tail].clone() })
        .collect();
    UniversalResolution::new(vec![row0, row1])
}

/// `0 -> (+)_n S(-n-2) (x) A_n -> (+)_n S(-n-1)^2 (x) A_n -> (+)_n S(-n) (x) A_n -> A -> 0`.
///
/// `graded[n]` must have rank `t_n`; degrees with `t_n = 0` are skipped.
pub fn gt_resolution(t: &HilbertFunction, graded: &[BundleClass]) -> Result<UniversalResolution, ResolutionError> {
    if graded.len() < t.len() {
        return Err(ResolutionError::Malformed(format!("{} bundles for {} degrees", graded.len(), t.len())));
    }
    let mut rows = vec![Vec::new(), Vec::new(), Vec::new()];
    for (n, bundle) in graded.iter().enumerate() {
        let tn = t.get(n) as i64;
        if bundle.rank() != tn {
            return Err(ResolutionError::RankMismatch { place: format!("A_{n}"), expected: tn, found: bundle.rank() });
        }
        if tn == 0 {
            continue;
        }
        let n = n as i64;
        let entry = |twist: i64| ResolutionEntry { tag: ProjectiveTag::GradedTwist(twist), bundle: bundle.clone() };
        rows[0].push(entry(n));
        rows[1].push(entry(n + 1));
        rows[1].push(entry(n + 1));
        rows[2].push(entry(n + 2));
    }
    UniversalResolution::new(rows)
}

/// Numerical data of the three-vertex quiver model of sheaves on the plane.
///
/// Vertices are labeled `2, 1, 0` from left to right; arrays below are
/// indexed by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Config {
    pub r: i64,
    pub c1: i64,
    pub chi: i64,
    pub m: i64,
    pub n: i64,
    /// `alpha[v]` for vertex label `v`.
    pub alpha: [u64; 3],
    /// `theta[v]` for vertex label `v`.
    pub theta: [i64; 3],
}

impl P2Config {
    pub fn new(r: i64, c1: i64, chi: i64, m: i64) -> Result<Self, ResolutionError> {
        let bad = |msg: String| Err(ResolutionError::InvalidConfig(msg));
        if !(-r < c1 && c1 <= 0) {
            return bad(format!("need -r < c1 <= 0, got r = {r}, c1 = {c1}"));
        }
        if chi > 0 {
            return bad(format!("need chi <= 0, got {chi}"));
        }
        if chi > r + 2 * c1 {
            return bad(format!("need chi <= r + 2 c1 = {}, got {chi}", r + 2 * c1));
        }
        let n = -chi + r + c1;
        let by_label = [n - (r + c1), n, n + c1];
        if let Some(v) = by_label.iter().position(|&a| a < 0) {
            return bad(format!("dimension at vertex {v} is negative ({})", by_label[v]));
        }
        let theta = [-c1 * m + n, (r + 2 * c1) * m - 2 * n + r, -(r + c1) * m + n];
        Ok(P2Config { r, c1, chi, m, n, alpha: by_label.map(|a| a as u64), theta })
    }

    /// Dimension vector in diagram order (vertex 2, 1, 0).
    pub fn alpha_diagram_order(&self) -> [u64; 3] {
        [self.alpha[2], self.alpha[1], self.alpha[0]]
    }

    pub fn theta_diagram_order(&self) -> [i64; 3] {
        [self.theta[2], self.theta[1], self.theta[0]]
    }

    /// The underlying quiver, vertices listed as `2, 1, 0`.
    pub fn quiver(&self) -> Quiver {
        let arrows = [("x1", "2", "1"), ("y1", "2", "1"), ("z1", "2", "1"), ("x2", "1", "0"), ("y2", "1", "0"), ("z2", "1", "0")];
        Quiver::new(["2", "1", "0"], arrows).expect("well-formed")
    }

    /// Commutativity relations between the two arrow triples.
    pub fn relations(&self) -> Vec<String> {
        vec!["x1*y2 - y1*x2".into(), "x1*z2 - z1*x2".into(), "y1*z2 - z1*y2".into()]
    }

    /// `sum alpha_v^2 - 3 alpha_2 alpha_1 - 3 alpha_1 alpha_0 + 3 alpha_2 alpha_0`:
    /// the Euler form corrected by the three relations.
    pub fn relation_euler_form(&self) -> i64 {
        let a = self.alpha.map(|x| x as i64);
        a[0] * a[0] + a[1] * a[1] + a[2] * a[2] - 3 * a[2] * a[1] - 3 * a[1] * a[0] + 3 * a[2] * a[0]
    }

    pub fn moduli_dimension(&self) -> i64 {
        1 - self.relation_euler_form()
    }

    pub fn weight(&self) -> Weight {
        Weight::from_integers(&self.theta_diagram_order())
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.alpha_diagram_order().to_vec())
    }
}

/// Resolution with the extra term `(+)_{3 relations} S e_0 (x) U_2`.
///
/// `universal[v]` is the bundle at vertex label `v` and must have rank `alpha[v]`.
pub fn p2_resolution(cfg: &P2Config, universal: &[BundleClass; 3]) -> Result<UniversalResolution, ResolutionError> {
    for (v, (bundle, &a)) in universal.iter().zip(&cfg.alpha).enumerate() {
        if bundle.rank() != a as i64 {
            return Err(ResolutionError::RankMismatch { place: format!("U_{v}"), expected: a as i64, found: bundle.rank() });
        }
    }
    let entry =
        |v: usize, bundle: &BundleClass| ResolutionEntry { tag: ProjectiveTag::RelationAlgebraIdempotent(v), bundle: bundle.clone() };
    let row0 = (0..3).map(|v| entry(v, &universal[v])).collect();
    let row1 = std::iter::repeat_n(entry(1, &universal[2]), 3).chain(std::iter::repeat_n(entry(0, &universal[1]), 3)).collect();
    let row2 = std::iter::repeat_n(entry(0, &universal[2]), 3).collect();
    UniversalResolution::new(vec![row0, row1, row2])
}

/// `(p, rank L^p)` for `p = -r ..= r`, from ranks and Hom dimensions alone.
pub fn l_ranks(res: &UniversalResolution, provider: &HomDimProvider) -> Result<Vec<(i64, i64)>, ResolutionError> {
    let r = res.length() as i64;
    if res.rows().is_empty() {
        return Ok(Vec::new());
    }
    let mut ranks: Vec<(i64, i64)> = (-r..=r).map(|p| (p, 0)).collect();
    for (i, row) in res.rows().iter().enumerate() {
        for (i2, row2) in res.rows().iter().enumerate() {
            let p = i2 as i64 - i as i64;
            for a in row {
                for b in row2 {
                    let dim = provider.hom_dim(a.tag, b.tag)? as i64;
                    ranks[(p + r) as usize].1 += dim * a.bundle.rank() * b.bundle.rank();
                }
            }
        }
    }
    Ok(ranks)
}

/// `sum_p (-1)^{p+1} rank L^p`.
pub fn virtual_rank(res: &UniversalResolution, provider: &HomDimProvider) -> Result<i64, ResolutionError> {
    Ok(l_ranks(res, provider)?.iter().map(|&(p, rk)| if p % 2 == 0 { -rk } else { rk }).sum())
}

/// Classes of `L^p` on the product ring, `p = -r ..= r`.
pub fn build_l_complex(
    res: &UniversalResolution,
    provider: &HomDimProvider,
    square: &ProductRing,
) -> Result<Vec<(i64, BundleClass)>, ResolutionError> {
    if res.rows().is_empty() {
        return Ok(Vec::new());
    }
    if let Some(base) = res.base_ring() {
        if base != square.left() || base != square.right() {
            return Err(ResolutionError::RingMismatch);
        }
    }
    // distinct bundle classes, pulled back once each
    let mut distinct: Vec<BundleClass> = Vec::new();
    let index: Vec<Vec<usize>> = res
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match distinct.iter().position(|d| *d == e.bundle) {
                    Some(k) => k,
                    None => {
                        distinct.push(e.bundle.clone());
                        distinct.len() - 1
                    }
                })
                .collect()
        })
        .collect();
    let left: Vec<BundleClass> = distinct.iter().map(|b| b.pull_left(square)).collect::<Result<_, _>>()?;
    let right: Vec<BundleClass> = distinct.iter().map(|b| b.pull_right(square)).collect::<Result<_, _>>()?;
    let mut homs: Vec<Vec<Option<BundleClass>>> = vec![vec![None; distinct.len()]; distinct.len()];

    let r = res.length() as i64;
    let ring = square.ring();
    let mut out = Vec::new();
    for p in -r..=r {
        let mut summands = Vec::new();
        for (i, row) in res.rows().iter().enumerate() {
            let i2 = i as i64 + p;
            if i2 < 0 || i2 > r {
                continue;
            }
            let row2 = &res.rows()[i2 as usize];
            for (a, &ka) in row.iter().zip(&index[i]) {
                for (b, &kb) in row2.iter().zip(&index[i2 as usize]) {
                    let dim = provider.hom_dim(a.tag, b.tag)?;
                    if dim == 0 {
                        continue;
                    }
                    if homs[ka][kb].is_none() {
                        homs[ka][kb] = Some(left[ka].hom_bundle(&right[kb])?);
                    }
                    summands.push(homs[ka][kb].as_ref().unwrap().whitney_power(dim));
                }
            }
        }
        out.push((p, whitney_total(ring, &summands)?));
    }
    Ok(out)
}

/// `c_{dim M}(sum_p (-1)^{p+1} [L^p])`, with `dim M` the top degree of the base ring.
pub fn diagonal_class(res: &UniversalResolution, provider: &HomDimProvider, square: &ProductRing) -> Result<RingElement, ResolutionError> {
    let complex = build_l_complex(res, provider, square)?;
    let ring = square.ring();
    let (odd, even): (Vec<_>, Vec<_>) = complex.into_iter().partition(|(p, _)| p % 2 != 0);
    let plus = whitney_total(ring, &odd.into_iter().map(|(_, c)| c).collect::<Vec<_>>())?;
    let minus = whitney_total(ring, &even.into_iter().map(|(_, c)| c).collect::<Vec<_>>())?;
    let virtual_class = plus.virtual_difference(&minus)?;
    let delta = virtual_class.top_class(square.left().top_degree())?;
    delta.assert_integral()?;
    Ok(delta)
}

/// Everything needed to compute and check a diagonal on a test space.
#[derive(Clone, Debug)]
pub struct DiagonalSetup {
    pub label: String,
    pub quiver: Arc<Quiver>,
    pub alpha: DimVector,
    pub base: BasedRing,
    pub square: ProductRing,
    pub resolution: UniversalResolution,
    pub provider: HomDimProvider,
}

impl DiagonalSetup {
    /// `P^n` as thin representations of the Kronecker quiver with `n + 1`
    /// arrows; universal bundles `(O(t), O(1 + t))`.
    pub fn projective_space(n: usize, twist: i64) -> Result<Self, ResolutionError> {
        let base = BasedRing::projective_space(n);
        let quiver = Arc::new(Quiver::kronecker(n + 1));
        let universal = if n == 0 {
            vec![BundleClass::trivial(&base, 1), BundleClass::trivial(&base, 1)]
        } else {
            let h = base.element_by_name("h")?;
            vec![BundleClass::twisted_line(&h, twist)?, BundleClass::twisted_line(&h, 1 + twist)?]
        };
        Self::from_quiver(format!("P^{n}"), quiver, DimVector(vec![1, 1]), base, universal)
    }

    /// `Gr(k, n)` as representations of the Kronecker quiver with `n` arrows
    /// and dimension vector `(1, n - k)`: the `n` images span the fiber, i.e.
    /// a rank `n - k` quotient of the trivial rank `n` bundle. Universal
    /// bundles `(O(t), Q (x) O(t))` with `c_i(Q) = s[i]`.
    pub fn grassmannian(k: usize, n: usize, twist: i64) -> Result<Self, ResolutionError> {
        let base = BasedRing::grassmannian(k, n)?;
        let quiver = Arc::new(Quiver::kronecker(n));
        let quotient_rank = n - k;
        let mut c = base.one();
        for i in 1..=quotient_rank {
            c = c.add(&base.element_by_name(&schubert_name(&[i]))?);
        }
        let quotient = BundleClass::new(quotient_rank as i64, c)?;
        let line = BundleClass::twisted_line(&base.element_by_name("s[1]")?, twist)?;
        let universal = vec![line.clone(), quotient.tensor(&line)?];
        Self::from_quiver(format!("Gr({k},{n})"), quiver, DimVector(vec![1, quotient_rank as u64]), base, universal)
    }

    fn from_quiver(
        label: String,
        quiver: Arc<Quiver>,
        alpha: DimVector,
        base: BasedRing,
        universal: Vec<BundleClass>,
    ) -> Result<Self, ResolutionError> {
        let resolution = quiver_resolution(&quiver, &universal)?;
        let square = ProductRing::square(&base);
        let provider = HomDimProvider::AcyclicPathCount(quiver.clone());
        Ok(DiagonalSetup { label, quiver, alpha, base, square, resolution, provider })
    }

    pub fn moduli_dimension(&self) -> Result<i64, ResolutionError> {
        Ok(self.quiver.moduli_dimension(&self.alpha)?)
    }

    pub fn l_ranks(&self) -> Result<Vec<(i64, i64)>, ResolutionError> {
        l_ranks(&self.resolution, &self.provider)
    }

    pub fn virtual_rank(&self) -> Result<i64, ResolutionError> {
        virtual_rank(&self.resolution, &self.provider)
    }

    pub fn diagonal(&self) -> Result<RingElement, ResolutionError> {
        diagonal_class(&self.resolution, &self.provider, &self.square)
    }

    pub fn oracle(&self) -> Result<RingElement, ResolutionError> {
        Ok(self.square.kunneth_diagonal()?)
    }
}

/// `sum_l p1(s_l) p2(s_{l^c})` over partitions in the `rows x width` box.
pub fn schubert_diagonal(square: &ProductRing, rows: usize, width: usize) -> Result<RingElement, ResolutionError> {
    let base = square.left();
    let mut delta = square.ring().zero();
    for p in box_partitions(rows, width) {
        let a = base.element_by_name(&schubert_name(&p))?;
        let b = base.element_by_name(&schubert_name(&box_complement(&p, rows, width)))?;
        delta = delta.add(&square.p1(&a)?.mul(&square.p2(&b)?));
    }
    Ok(delta)
}

/// `sum_i p1(h^i) p2(h^{n-i})`.
pub fn projective_diagonal(square: &ProductRing, n: usize) -> Result<RingElement, ResolutionError> {
    let base = square.left();
    let h = if n == 0 { base.zero() } else { base.element_by_name("h")? };
    let mut delta = square.ring().zero();
    for i in 0..=n {
        delta = delta.add(&square.p1(&h.pow(i))?.mul(&square.p2(&h.pow(n - i))?));
    }
    Ok(delta)
}

/// Ranks-only data for `G_T`: trivial bundles of rank `t_n` over a point.
pub fn gt_rank_resolution(t: &HilbertFunction) -> Result<UniversalResolution, ResolutionError> {
    let point = BasedRing::point();
    let graded: Vec<BundleClass> = t.values().iter().map(|&tn| BundleClass::trivial(&point, tn as i64)).collect();
    gt_resolution(t, &graded)
}

/// Ranks-only data for the plane-sheaf quiver.
pub fn p2_rank_resolution(cfg: &P2Config) -> Result<UniversalResolution, ResolutionError> {
    let point = BasedRing::point();
    let u = cfg.alpha.map(|a| BundleClass::trivial(&point, a as i64));
    p2_resolution(cfg, &u)
}
