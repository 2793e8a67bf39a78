//! One function per subcommand; each returns inputs, results and verdicts.

use std::collections::BTreeMap;

use chowres::basedring::BasedRing;
use chowres::resolutions::{gt_rank_resolution, l_ranks, p2_rank_resolution, virtual_rank, DiagonalSetup};
use chowres::{
    enumerate_staircases, gt_dimension, gt_quiver, HilbertFunction, HomDimProvider, P2Config, ProductRing, Rational, Representation,
    UniversalResolution, Weight,
};
use serde_json::{json, Value};

use crate::report::{element_value, rational_value, Outcome, Verdict};
use crate::schema::{quiver_value, QuiverDoc};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuiverOp {
    Euler,
    HomExt,
    Stable,
    ModuliDim,
    Paths,
}

impl QuiverOp {
    pub fn name(self) -> &'static str {
        match self {
            QuiverOp::Euler => "euler",
            QuiverOp::HomExt => "homext",
            QuiverOp::Stable => "stable",
            QuiverOp::ModuliDim => "moduli-dim",
            QuiverOp::Paths => "paths",
        }
    }
}

impl std::str::FromStr for QuiverOp {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        [QuiverOp::Euler, QuiverOp::HomExt, QuiverOp::Stable, QuiverOp::ModuliDim, QuiverOp::Paths]
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| CliError::Invalid(format!("unknown quiver subcommand {s:?}")))
    }
}

/// Options shared by the `quiver` subcommands.
#[derive(Clone, Debug, Default)]
pub struct QuiverArgs {
    pub other: Option<String>,
    pub theta: Option<Vec<Rational>>,
    pub from: Option<String>,
    pub to: Option<String>,
}

pub fn quiver(op: QuiverOp, input: &str, args: &QuiverArgs) -> Result<Outcome, CliError> {
    let doc = QuiverDoc::parse(input)?;
    if !doc.relations.is_empty() && op != QuiverOp::Stable {
        return Err(CliError::Unsupported(format!("`quiver {}` works with path algebras; the document carries relations", op.name())));
    }
    let q = doc.quiver()?;
    let other = args.other.as_deref().map(QuiverDoc::parse).transpose()?;
    if let Some(o) = &other {
        if *o.quiver()? != *q {
            return Err(CliError::Invalid("--other describes a different quiver".into()));
        }
    }
    let mut inputs = json!({"vertices": q.vertices(), "arrows": q.arrows().len()});
    let mut verdicts = Vec::new();
    let results = match op {
        QuiverOp::Paths => {
            let names = q.vertices();
            match (&args.from, &args.to) {
                (Some(f), Some(t)) => {
                    inputs["from"] = json!(f);
                    inputs["to"] = json!(t);
                    let count = q.path_count(q.vertex_index(f)?, q.vertex_index(t)?)?;
                    json!({"paths": count})
                }
                (None, None) => {
                    let mut table = Vec::new();
                    for i in 0..names.len() {
                        for j in 0..names.len() {
                            table.push(json!({"from": names[i], "to": names[j], "paths": q.path_count(i, j)?}));
                        }
                    }
                    json!({"acyclic": true, "table": table})
                }
                _ => return Err(CliError::Invalid("give both --from and --to, or neither".into())),
            }
        }
        QuiverOp::ModuliDim => {
            let alpha = doc.dim_vector()?;
            inputs["dim"] = json!(alpha.0);
            let d = q.moduli_dimension(&alpha)?;
            json!({"euler_form": q.euler_form(&alpha, &alpha)?, "moduli_dimension": d,
                   "note": "dimension of the moduli space when it is nonempty"})
        }
        QuiverOp::Euler => {
            let alpha = doc.dim_vector()?;
            let beta = match &other {
                Some(o) => o.dim_vector()?,
                None => alpha.clone(),
            };
            inputs["dim"] = json!(alpha.0);
            inputs["other_dim"] = json!(beta.0);
            if !q.is_acyclic() {
                return Err(chowres::QuiverError::CyclicQuiver.into());
            }
            json!({"euler_form": q.euler_form(&alpha, &beta)?})
        }
        QuiverOp::HomExt => {
            if !q.is_acyclic() {
                return Err(chowres::QuiverError::CyclicQuiver.into());
            }
            let e = doc.representation()?;
            let f = match &other {
                Some(o) => o.representation()?,
                None => e.clone(),
            };
            inputs["dim"] = json!(e.dim().0);
            inputs["other_dim"] = json!(f.dim().0);
            inputs["field"] = json!(e.field().to_string());
            let he = e.hom_ext(&f)?;
            let euler = q.euler_form(e.dim(), f.dim())?;
            let diff = he.hom as i64 - he.ext1 as i64;
            verdicts.push(Verdict::new(
                "hom_minus_ext1_equals_euler_form",
                diff == euler,
                format!("{} - {} = {diff}, euler form {euler}", he.hom, he.ext1),
            ));
            json!({"hom": he.hom, "ext1": he.ext1, "euler_form": euler})
        }
        QuiverOp::Stable => {
            let e = doc.representation()?;
            let theta = match (&args.theta, doc.theta()?) {
                (Some(t), _) => Weight(t.clone()),
                (None, Some(t)) => t,
                (None, None) => return Err(CliError::Invalid("stability needs a weight (--theta or \"theta\")".into())),
            };
            if theta.0.len() != q.vertex_count() {
                return Err(CliError::Invalid(format!("theta has {} entries for {} vertices", theta.0.len(), q.vertex_count())));
            }
            inputs["dim"] = json!(e.dim().0);
            inputs["field"] = json!(e.field().to_string());
            inputs["theta"] = json!(theta.0.iter().map(rational_value).collect::<Vec<_>>());
            let stable = e.is_theta_stable(&theta)?;
            let thin = e.dim().0.iter().all(|&d| d <= 1);
            let checker = if thin { "subsets" } else { "subspaces" };
            if thin && matches!(e.field(), chowres::Field::Prime(_)) {
                let other = e.stable_by_subspaces(&theta)?;
                verdicts.push(Verdict::new(
                    "subset_and_subspace_checkers_agree",
                    other == stable,
                    format!("subsets {stable}, subspaces {other}"),
                ));
            }
            let mut results = json!({"stable": stable, "checker": checker});
            if stable {
                results["endomorphisms"] = json!(e.hom_ext(&e)?.hom);
                verdicts.push(schur_verdict(&e)?);
            }
            results
        }
    };
    Ok(Outcome { inputs, results, verdicts })
}

fn schur_verdict(e: &Representation) -> Result<Verdict, CliError> {
    let hom = e.hom_ext(e)?.hom;
    Ok(Verdict::new("stable_representation_is_a_brick", hom == 1, format!("dim End = {hom}")))
}

fn resolution_value(res: &UniversalResolution, with_classes: bool) -> Value {
    let rows: Vec<Value> = res
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let entries: Vec<Value> = row
                .iter()
                .map(|e| {
                    let mut v = json!({"projective": e.tag.to_string(), "rank": e.bundle.rank()});
                    if with_classes {
                        v["chern"] = json!(e.bundle.total().to_string());
                    }
                    v
                })
                .collect();
            json!({"index": i, "entries": entries})
        })
        .collect();
    json!(rows)
}

fn l_ranks_value(ranks: &[(i64, i64)]) -> Value {
    json!(ranks.iter().map(|(p, r)| json!({"p": p, "rank": r})).collect::<Vec<_>>())
}

fn virtual_rank_verdict(vr: i64, dim: i64) -> Verdict {
    Verdict::new("virtual_rank_equals_dimension_minus_one", vr == dim - 1, format!("virtual rank {vr}, dimension {dim}"))
}

fn diagonal_for_setup(setup: &DiagonalSetup, inputs: Value) -> Result<Outcome, CliError> {
    let delta = setup.diagonal()?;
    let dim = setup.moduli_dimension()?;
    let ranks = setup.l_ranks()?;
    let vr = setup.virtual_rank()?;
    let mut verdicts = Vec::new();
    let oracle = match setup.oracle() {
        Ok(o) => {
            verdicts.push(Verdict::new(
                "diagonal_equals_kunneth_oracle",
                o == delta,
                if o == delta { "exact match".to_string() } else { format!("computed {delta}, oracle {o}") },
            ));
            element_value(&o)
        }
        Err(e) => {
            verdicts.push(Verdict::new("diagonal_equals_kunneth_oracle", false, format!("oracle unavailable: {e}")));
            Value::Null
        }
    };
    verdicts.push(virtual_rank_verdict(vr, dim));
    let chi = delta.mul(&delta).evaluate();
    verdicts.push(Verdict::new(
        "self_intersection_equals_basis_count",
        chi == Rational::from_integer(setup.base.rank().into()),
        format!("deg(delta^2) = {chi}, basis count {}", setup.base.rank()),
    ));
    let results = json!({
        "space": setup.label,
        "dimension": dim,
        "quiver": {"vertices": setup.quiver.vertices(), "arrows": setup.quiver.arrows().len(), "dim": setup.alpha.0},
        "basis": setup.base.names(),
        "resolution": resolution_value(&setup.resolution, true),
        "l_ranks": l_ranks_value(&ranks),
        "virtual_rank": vr,
        "delta": element_value(&delta),
        "oracle": oracle,
    });
    Ok(Outcome { inputs, results, verdicts })
}

pub fn diagonal_pn(n: usize, twist: i64) -> Result<Outcome, CliError> {
    let setup = DiagonalSetup::projective_space(n, twist)?;
    diagonal_for_setup(&setup, json!({"space": "pn", "n": n, "twist": twist}))
}

pub fn diagonal_grass(k: usize, n: usize, twist: i64) -> Result<Outcome, CliError> {
    if k == 0 || k >= n {
        return Err(CliError::Invalid(format!("Gr({k},{n}) needs 0 < k < n")));
    }
    let setup = DiagonalSetup::grassmannian(k, n, twist)?;
    diagonal_for_setup(&setup, json!({"space": "grass", "k": k, "n": n, "twist": twist}))
}

fn hilbert(t: &[u64]) -> Result<HilbertFunction, CliError> {
    let h = HilbertFunction::new(t.to_vec());
    if !h.is_admissible() {
        return Err(CliError::Invalid(format!("Hilbert function {h} is not admissible")));
    }
    Ok(h)
}

pub fn diagonal_gt(t: &[u64]) -> Result<Outcome, CliError> {
    let h = hilbert(t)?;
    let res = gt_rank_resolution(&h)?;
    let ranks = l_ranks(&res, &HomDimProvider::GradedBinary)?;
    let vr = virtual_rank(&res, &HomDimProvider::GradedBinary)?;
    let dim = gt_dimension(&h)?;
    let cells = enumerate_staircases(&h)?;
    let tangent: Vec<usize> = cells.iter().map(|s| s.tangent_dimension()).collect();
    let verdicts = vec![
        virtual_rank_verdict(vr, dim),
        Verdict::new(
            "tangent_dimension_matches_formula",
            tangent.iter().all(|&d| d as i64 == dim),
            format!("tangent dimensions {tangent:?}, formula {dim}"),
        ),
    ];
    let results = json!({
        "dimension": dim,
        "cells": cells.len(),
        "resolution": resolution_value(&res, false),
        "row_ranks": res.row_ranks(),
        "l_ranks": l_ranks_value(&ranks),
        "virtual_rank": vr,
    });
    Ok(Outcome { inputs: json!({"space": "gt", "T": h.values()}), results, verdicts })
}

fn by_label(v: [i64; 3]) -> Value {
    let m: BTreeMap<String, i64> = (0..3).map(|i| (i.to_string(), v[i])).collect();
    json!(m)
}

pub fn diagonal_p2(r: i64, c1: i64, chi: i64, m: i64) -> Result<Outcome, CliError> {
    let cfg = P2Config::new(r, c1, chi, m)?;
    let res = p2_rank_resolution(&cfg)?;
    let ranks = l_ranks(&res, &HomDimProvider::SymmetricTripleQuiver)?;
    let vr = virtual_rank(&res, &HomDimProvider::SymmetricTripleQuiver)?;
    let dim = cfg.moduli_dimension();
    let mut verdicts = vec![virtual_rank_verdict(vr, dim)];
    let pairing: i64 = (0..3).map(|v| cfg.theta[v] * cfg.alpha[v] as i64).sum();
    verdicts.push(Verdict::new("theta_pairs_to_zero", pairing == 0, format!("theta . alpha = {pairing}")));
    if r == 1 && c1 == 0 {
        let points = 1 - chi;
        verdicts.push(Verdict::new("hilbert_scheme_dimension", dim == 2 * points, format!("dimension {dim} for {points} points")));
    }
    let results = json!({
        "n": cfg.n,
        "alpha": by_label(cfg.alpha.map(|a| a as i64)),
        "theta": by_label(cfg.theta),
        "relations": cfg.relations(),
        "dimension": dim,
        "resolution": resolution_value(&res, false),
        "l_ranks": l_ranks_value(&ranks),
        "virtual_rank": vr,
    });
    Ok(Outcome { inputs: json!({"space": "p2", "r": r, "c1": c1, "chi": chi, "m": m}), results, verdicts })
}

fn monomial(a: u64, b: u64) -> String {
    let power = |v: &str, e: u64| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let parts: Vec<String> = [power("x", a), power("y", b)].into_iter().filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn gt_cells(t: &[u64]) -> Result<Outcome, CliError> {
    let h = hilbert(t)?;
    let cells = enumerate_staircases(&h)?;
    let all_match = cells.iter().all(|s| s.hilbert_function() == h);
    let listed: Vec<Value> = cells
        .iter()
        .map(|s| {
            let gens: Vec<String> = s.generators().into_iter().map(|(a, b)| monomial(a, b)).collect();
            json!({"heights": s.heights(), "generators": gens})
        })
        .collect();
    Ok(Outcome {
        inputs: json!({"T": h.values()}),
        results: json!({"count": cells.len(), "staircases": listed}),
        verdicts: vec![Verdict::new("hilbert_functions_match", all_match, format!("{} staircases", cells.len()))],
    })
}

pub fn gt_tangent(t: &[u64]) -> Result<Outcome, CliError> {
    let h = hilbert(t)?;
    let cells = enumerate_staircases(&h)?;
    let dim = gt_dimension(&h)?;
    let per_cell: Vec<Value> = cells.iter().map(|s| json!({"heights": s.heights(), "tangent_dimension": s.tangent_dimension()})).collect();
    let dims: Vec<usize> = cells.iter().map(|s| s.tangent_dimension()).collect();
    let constant = dims.windows(2).all(|w| w[0] == w[1]);
    let verdicts = vec![
        Verdict::new("tangent_dimension_constant", constant, format!("{dims:?}")),
        Verdict::new("tangent_dimension_equals_formula", dims.iter().all(|&d| d as i64 == dim), format!("formula {dim}")),
    ];
    Ok(Outcome { inputs: json!({"T": h.values()}), results: json!({"dimension": dim, "cells": per_cell}), verdicts })
}

pub fn gt_quiver_cmd(t: &[u64]) -> Result<Outcome, CliError> {
    let h = HilbertFunction::new(t.to_vec());
    let data = gt_quiver(&h)?;
    let pairing = data.theta.pair(&data.alpha);
    let verdicts =
        vec![Verdict::new("theta_pairs_to_zero", pairing == Rational::from_integer(0.into()), format!("theta . alpha = {pairing}"))];
    Ok(Outcome {
        inputs: json!({"T": h.values()}),
        results: quiver_value(&data.quiver, &data.alpha, &data.theta, &data.relations),
        verdicts,
    })
}

fn ring_outcome(ring: &BasedRing, label: &str, inputs: Value, constants: bool) -> Result<Outcome, CliError> {
    let basis: Vec<Value> = (0..ring.rank()).map(|i| json!({"name": ring.name(i), "degree": ring.degree(i)})).collect();
    let mut verdicts = Vec::new();
    let mut pairings = Vec::new();
    for d in 0..=ring.top_degree() {
        let snf = ring.pairing_matrix(d)?.smith_normal_form()?;
        let unimodular = snf.is_unimodular() && ring.basis_in_degree(d).len() == ring.basis_in_degree(ring.top_degree() - d).len();
        let diagonal: Vec<String> = snf.diagonal.iter().map(ToString::to_string).collect();
        verdicts.push(Verdict::new(
            &format!("pairing_unimodular_degree_{d}"),
            unimodular,
            format!("Smith diagonal [{}]", diagonal.join(", ")),
        ));
        pairings.push(json!({"degree": d, "smith_diagonal": diagonal}));
    }
    let square = ProductRing::square(ring);
    match square.kunneth_diagonal() {
        Ok(delta) => {
            let chi = delta.mul(&delta).evaluate();
            verdicts.push(Verdict::new(
                "diagonal_self_intersection_equals_basis_count",
                chi == Rational::from_integer(ring.rank().into()),
                format!("deg(delta^2) = {chi}, basis count {}", ring.rank()),
            ));
        }
        Err(e) => verdicts.push(Verdict::new("diagonal_self_intersection_equals_basis_count", false, e.to_string())),
    }
    let mut results = json!({"space": label, "rank": ring.rank(), "top_degree": ring.top_degree(), "basis": basis, "pairings": pairings});
    if constants {
        let mut table = Vec::new();
        for i in 0..ring.rank() {
            for j in i..ring.rank() {
                let product = ring.basis_element(i).mul(&ring.basis_element(j));
                if !product.is_zero() {
                    table.push(json!({"left": ring.name(i), "right": ring.name(j), "product": element_value(&product)}));
                }
            }
        }
        results["constants"] = json!(table);
        let functional: Vec<Value> = (0..ring.rank())
            .filter(|&i| ring.functional_value(i) != 0.into())
            .map(|i| json!({"basis": ring.name(i), "degree_value": ring.functional_value(i).to_string()}))
            .collect();
        results["functional"] = json!(functional);
    }
    Ok(Outcome { inputs, results, verdicts })
}

pub fn ring_pn(n: usize, constants: bool) -> Result<Outcome, CliError> {
    ring_outcome(&BasedRing::projective_space(n), &format!("P^{n}"), json!({"space": "pn", "n": n}), constants)
}

pub fn ring_grass(k: usize, n: usize, constants: bool) -> Result<Outcome, CliError> {
    let ring = BasedRing::grassmannian(k, n).map_err(|e| CliError::Invalid(e.to_string()))?;
    ring_outcome(&ring, &format!("Gr({k},{n})"), json!({"space": "grass", "k": k, "n": n}), constants)
}
