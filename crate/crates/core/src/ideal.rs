//! Ideal center graphs, the base-graph construction, and validators for the
//! walk-count recursions and spectral identities that hold on them.
//!
//! Layout shared by all generators: the planted maximum clique occupies
//! labels `1..=m`, its last label `m` is the center, and every other vertex
//! follows in consecutive blocks.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::{Graph, GraphError, Label};
use crate::spectral::{EigenSystem, DEFAULT_DEGENERACY_TOL};

/// Absolute distance below which a parameter counts as an eigenvalue.
pub const RESONANCE_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum IdealError {
    #[error("invalid first-kind spec m1={m1}, m2={m2}: need 2 <= m2 < m1")]
    FirstKind { m1: usize, m2: usize },
    #[error("invalid second-kind spec m1={m1}, m2={m2}, z={z}: need 2 <= m2 < m1 and z >= 1")]
    SecondKind { m1: usize, m2: usize, z: usize },
    #[error("invalid base-graph spec omega={omega}, q={q}, z={z}: {violated}")]
    BaseGraph {
        omega: usize,
        q: usize,
        z: usize,
        violated: &'static str,
    },
    #[error("resonant parameter: {m_eff} is within {RESONANCE_TOL} of eigenvalue {lambda}")]
    Resonant { m_eff: f64, lambda: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Two cliques of sizes `m1` and `m2` sharing only the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FirstKindSpec {
    pub m1: usize,
    pub m2: usize,
}

/// The `m1`-clique plus a complete `(m2 − 1)`-partite block with `z`
/// vertices per part, both attached only to the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecondKindSpec {
    pub m1: usize,
    pub m2: usize,
    pub z: usize,
}

/// Planted `omega`-clique whose non-center vertices are wired, three at a
/// time, to complete `q`-partite blocks with `z` vertices per part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseGraphSpec {
    pub omega: usize,
    pub q: usize,
    pub z: usize,
}

/// How base-graph blocks attach to the planted clique.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BaseWiring {
    /// Every 3-subset of non-center clique vertices owns a private block and
    /// only those three clique vertices (plus the center) touch it. Cliques
    /// through a block have at most `q + 4 < omega` vertices.
    #[default]
    PerTriple,
    /// One block adjacent to every clique vertex. Compact, but the clique
    /// extends into the block, so the clique number becomes `omega + q`.
    SharedBlock,
}

#[derive(Clone, Debug)]
pub struct IdealGraph {
    pub graph: Graph,
    pub center: Label,
    /// Planted maximum clique, sorted, center included.
    pub planted: Vec<Label>,
}

fn clique_on(g: &mut Graph, positions: &[usize]) {
    for (a, &i) in positions.iter().enumerate() {
        for &j in &positions[a + 1..] {
            g.set_edge(i, j);
        }
    }
}

/// Complete multipartite block on `parts` consecutive groups of `z`
/// positions starting at `first`.
fn multipartite_on(g: &mut Graph, first: usize, parts: usize, z: usize) {
    let size = parts * z;
    for a in 0..size {
        for b in (a + 1)..size {
            if a / z != b / z {
                g.set_edge(first + a, first + b);
            }
        }
    }
}

pub fn gen_first_kind(spec: FirstKindSpec) -> Result<IdealGraph, IdealError> {
    let FirstKindSpec { m1, m2 } = spec;
    if !(2 <= m2 && m2 < m1) {
        return Err(IdealError::FirstKind { m1, m2 });
    }
    gen_second_kind(SecondKindSpec { m1, m2, z: 1 }).map_err(|_| IdealError::FirstKind { m1, m2 })
}

pub fn gen_second_kind(spec: SecondKindSpec) -> Result<IdealGraph, IdealError> {
    let SecondKindSpec { m1, m2, z } = spec;
    if !(2 <= m2 && m2 < m1 && z >= 1) {
        return Err(IdealError::SecondKind { m1, m2, z });
    }
    let block = (m2 - 1) * z;
    let mut g = Graph::empty(m1 + block);
    let center = m1 - 1;
    clique_on(&mut g, &(0..m1).collect::<Vec<_>>());
    multipartite_on(&mut g, m1, m2 - 1, z);
    for b in m1..m1 + block {
        g.set_edge(center, b);
    }
    Ok(IdealGraph {
        graph: g,
        center: m1 as Label,
        planted: (1..=m1 as Label).collect(),
    })
}

impl BaseGraphSpec {
    pub fn validate(&self) -> Result<(), IdealError> {
        let BaseGraphSpec { omega, q, z } = *self;
        let fail = |violated| Err(IdealError::BaseGraph { omega, q, z, violated });
        if q < 2 {
            return fail("q >= 2 (common vertices from at least two parts)");
        }
        if z < 1 {
            return fail("z >= 1");
        }
        if q * z + 3 <= omega {
            return fail("qz > omega-3");
        }
        if q + 4 >= omega {
            return fail("q+4 < omega");
        }
        Ok(())
    }
}

/// 3-subsets of `0..k` in lexicographic order.
pub fn triples(k: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..k {
        for b in (a + 1)..k {
            for c in (b + 1)..k {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub fn gen_base_graph(spec: BaseGraphSpec) -> Result<IdealGraph, IdealError> {
    gen_base_graph_wired(spec, BaseWiring::default())
}

pub fn gen_base_graph_wired(spec: BaseGraphSpec, wiring: BaseWiring) -> Result<IdealGraph, IdealError> {
    spec.validate()?;
    let BaseGraphSpec { omega, q, z } = spec;
    let block = q * z;
    let members = omega - 1;
    let center = omega - 1;
    let blocks = match wiring {
        BaseWiring::PerTriple => triples(members),
        BaseWiring::SharedBlock => vec![[0, 0, 0]],
    };
    let mut g = Graph::empty(omega + blocks.len() * block);
    clique_on(&mut g, &(0..omega).collect::<Vec<_>>());
    for (t, triple) in blocks.iter().enumerate() {
        let first = omega + t * block;
        multipartite_on(&mut g, first, q, z);
        for b in first..first + block {
            g.set_edge(center, b);
            match wiring {
                BaseWiring::PerTriple => {
                    for &m in triple {
                        g.set_edge(m, b);
                    }
                }
                BaseWiring::SharedBlock => {
                    for m in 0..members {
                        g.set_edge(m, b);
                    }
                }
            }
        }
    }
    Ok(IdealGraph {
        graph: g,
        center: omega as Label,
        planted: (1..=omega as Label).collect(),
    })
}

/// Structural facts about a generated base graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGraphAudit {
    /// Every part of every block is an independent set and distinct parts
    /// of a block are fully joined.
    pub multipartite_ok: bool,
    /// Smallest / largest number of block vertices adjacent to all three
    /// vertices of a 3-subset of non-center clique vertices.
    pub min_common: usize,
    pub max_common: usize,
    /// Fewest distinct parts among any 3-subset's common block neighbours.
    pub min_parts_touched: usize,
}

impl BaseGraphAudit {
    pub fn passes(&self, spec: &BaseGraphSpec) -> bool {
        let qz = spec.q * spec.z;
        self.multipartite_ok && self.min_common == qz && self.max_common == qz && self.min_parts_touched >= 2
    }
}

/// Audits `ideal` as produced by [`gen_base_graph_wired`] with `spec`.
pub fn audit_base_graph(ideal: &IdealGraph, spec: &BaseGraphSpec) -> BaseGraphAudit {
    let g = &ideal.graph;
    let BaseGraphSpec { omega, q, z } = *spec;
    let block = q * z;
    let n_blocks = (g.n() - omega) / block;
    let mut multipartite_ok = (g.n() - omega) % block == 0;
    // (block index, part index) for every block vertex
    let part_of = |v: usize| ((v - omega) / block, ((v - omega) % block) / z);
    for t in 0..n_blocks {
        let first = omega + t * block;
        for a in first..first + block {
            for b in (a + 1)..first + block {
                let same_part = part_of(a).1 == part_of(b).1;
                if g.has_edge(a, b) == same_part {
                    multipartite_ok = false;
                }
            }
        }
    }
    let mut min_common = usize::MAX;
    let mut max_common = 0;
    let mut min_parts_touched = usize::MAX;
    for [a, b, c] in triples(omega - 1) {
        let common: Vec<usize> = (omega..g.n())
            .filter(|&v| g.has_edge(a, v) && g.has_edge(b, v) && g.has_edge(c, v))
            .collect();
        let mut parts: Vec<(usize, usize)> = common.iter().map(|&v| part_of(v)).collect();
        parts.sort_unstable();
        parts.dedup();
        min_common = min_common.min(common.len());
        max_common = max_common.max(common.len());
        min_parts_touched = min_parts_touched.min(parts.len());
    }
    BaseGraphAudit {
        multipartite_ok,
        min_common,
        max_common,
        min_parts_touched,
    }
}

/// Walk counts from the center: closed walks `w`, walks to one planted-clique
/// vertex `f`, walks to one other vertex `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCounts {
    pub w: Vec<BigUint>,
    pub f: Vec<BigUint>,
    pub h: Vec<BigUint>,
}

impl WalkCounts {
    pub fn s_max(&self) -> usize {
        self.w.len() - 1
    }
}

fn recursion(m1: usize, m2: usize, z: usize, s_max: usize) -> WalkCounts {
    let mut w = vec![BigUint::from(1u8)];
    let mut f = vec![BigUint::zero()];
    let mut h = vec![BigUint::zero()];
    let big = |x: usize| BigUint::from(x);
    for s in 0..s_max {
        let w_next = big(m1 - 1) * &f[s] + big(z * (m2 - 1)) * &h[s];
        let f_next = &w[s] + big(m1 - 2) * &f[s];
        let h_next = &w[s] + big(z * (m2 - 2)) * &h[s];
        w.push(w_next);
        f.push(f_next);
        h.push(h_next);
    }
    WalkCounts { w, f, h }
}

/// Walk counts of the first-kind graph by recursion, `s = 0..=s_max`.
pub fn recursion_first(spec: FirstKindSpec, s_max: usize) -> WalkCounts {
    recursion(spec.m1, spec.m2, 1, s_max)
}

/// Walk counts of the second-kind graph by recursion, `s = 0..=s_max`.
pub fn recursion_second(spec: SecondKindSpec, s_max: usize) -> WalkCounts {
    recursion(spec.m1, spec.m2, spec.z, s_max)
}

fn center_weights(g: &Graph, center: Label, m_eff: f64) -> Result<(EigenSystem, usize), IdealError> {
    let c = g.index_of(center).ok_or(GraphError::UnknownLabel(center))?;
    let es = EigenSystem::of(g);
    if let Some(&lambda) = es.values().iter().find(|&&l| (m_eff - l).abs() <= RESONANCE_TOL) {
        return Err(IdealError::Resonant { m_eff, lambda });
    }
    Ok((es, c))
}

/// `Σ_n a_n (m^s − λ_n^s) / (m − λ_n)` with `a_n = x_n(center)²`.
pub fn closed_form_value(g: &Graph, center: Label, m_eff: f64, s: u32) -> Result<f64, IdealError> {
    let (es, c) = center_weights(g, center, m_eff)?;
    let ms = m_eff.powi(s as i32);
    Ok((0..es.n())
        .map(|k| {
            let lambda = es.values()[k];
            es.intensity(c, c, k) * (ms - lambda.powi(s as i32)) / (m_eff - lambda)
        })
        .sum())
}

/// Absolute gap between the closed form and the exact walk count.
pub fn closed_form_check(g: &Graph, center: Label, m_eff: f64, s: u32, exact: &BigUint) -> Result<f64, IdealError> {
    use num_traits::ToPrimitive;
    let value = closed_form_value(g, center, m_eff, s)?;
    Ok((value - exact.to_f64().unwrap_or(f64::INFINITY)).abs())
}

/// `|Σ_n a_n / (m − λ_n)|`, which vanishes when `m` is the within-clique
/// degree of an ideal center graph.
pub fn resolvent_identity_check(g: &Graph, center: Label, m_eff: f64) -> Result<f64, IdealError> {
    let (es, c) = center_weights(g, center, m_eff)?;
    Ok((0..es.n())
        .map(|k| es.intensity(c, c, k) / (m_eff - es.values()[k]))
        .sum::<f64>()
        .abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremKind {
    /// Planted-clique members outweigh everyone else at `λ_1`.
    First,
    /// Reversed ordering, claimed when `m1 − 2 < z (m2 − 2)`.
    Second { m1: usize, m2: usize, z: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TheoremOutcome {
    Holds { margin: f64 },
    Violated { margin: f64 },
    PreconditionUnmet,
}

impl TheoremOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, TheoremOutcome::Holds { .. })
    }

    pub fn margin(&self) -> Option<f64> {
        match *self {
            TheoremOutcome::Holds { margin } | TheoremOutcome::Violated { margin } => Some(margin),
            TheoremOutcome::PreconditionUnmet => None,
        }
    }
}

/// Compares grouped principal intensities from `center` between planted
/// clique members and the remaining vertices (center excluded from both).
pub fn theorem_check(g: &Graph, center: Label, planted: &[Label], kind: TheoremKind) -> Result<TheoremOutcome, IdealError> {
    if let TheoremKind::Second { m1, m2, z } = kind {
        if m1 as i64 - 2 >= z as i64 * (m2 as i64 - 2) {
            return Ok(TheoremOutcome::PreconditionUnmet);
        }
    }
    let c = g.index_of(center).ok_or(GraphError::UnknownLabel(center))?;
    for &l in planted {
        g.index_of(l).ok_or(GraphError::UnknownLabel(l))?;
    }
    let iv = EigenSystem::of(g).intensities(c, DEFAULT_DEGENERACY_TOL);
    let (mut in_min, mut in_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut out_min, mut out_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in (0..g.n()).filter(|&v| v != c) {
        let p = iv.principal(v);
        if planted.contains(&g.label(v)) {
            in_min = in_min.min(p);
            in_max = in_max.max(p);
        } else {
            out_min = out_min.min(p);
            out_max = out_max.max(p);
        }
    }
    let margin = match kind {
        TheoremKind::First => in_min - out_max,
        TheoremKind::Second { .. } => out_min - in_max,
    };
    Ok(if margin > 0.0 {
        TheoremOutcome::Holds { margin }
    } else {
        TheoremOutcome::Violated { margin }
    })
}
