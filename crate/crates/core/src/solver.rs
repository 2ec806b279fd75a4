//! Clique heuristics driven by walk intensities.
//!
//! * [`pick_max`] grows a clique greedily from every seed neighbour of the
//!   center, each step moving to the vertex with the largest principal
//!   intensity from the current head.
//! * [`delete_min`] strips the vertex with the smallest principal intensity
//!   from the center until what remains is complete.
//! * [`algorithm_a`] runs both on every center graph and recurses after
//!   deleting the weakest vertex; [`algorithm_b`] swaps its third module for
//!   [`vfsa`], which follows reference vertices across frequencies.
//! * [`algorithm_c`] runs one VFSA walk per vertex without recursion and
//!   reports every maximum-size clique it meets.
//!
//! All comparisons break ties by label (lowest first by default) and treat
//! intensities closer than `tie_tol` as equal, so results and traces are
//! reproducible.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{Clique, Graph, GraphError, Label, Procedure};
use crate::spectral::{EigenSystem, IntensityVector, DEFAULT_DEGENERACY_TOL};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("not a center graph: vertex {0} is not adjacent to every other vertex")]
    NotCenterGraph(Label),
    #[error("reference vertex must differ from the center ({0})")]
    ReferenceIsCenter(Label),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    LowestLabel,
    HighestLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MagnitudeMode {
    /// Signed intensities at the principal frequency, magnitudes elsewhere.
    SignedPrincipal,
    /// Magnitudes at every frequency.
    Absolute,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Relative eigenvalue gap below which frequencies are grouped.
    pub degeneracy_tol: f64,
    /// Intensities closer than this are ties.
    pub tie_tol: f64,
    pub tie_break: TieBreak,
    pub magnitude_mode: MagnitudeMode,
    /// Algorithm C: walk from every vertex with every neighbour as the first
    /// reference, instead of the single reference the selection rule picks.
    /// Costs a factor of `n` more VFSA walks.
    pub sweep_references: bool,
    pub record_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            degeneracy_tol: DEFAULT_DEGENERACY_TOL,
            tie_tol: 1e-10,
            tie_break: TieBreak::LowestLabel,
            magnitude_mode: MagnitudeMode::SignedPrincipal,
            sweep_references: false,
            record_trace: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Top-level center graph `C(v)` being solved.
    Center,
    /// Pick_max seed pair `{center, v}`.
    Seed,
    /// Vertex of largest principal intensity appended to the clique.
    PickMax,
    /// Complete center graph absorbed whole.
    Absorb,
    /// Vertex of smallest principal intensity deleted.
    DeleteMin,
    /// Recursion on the center graph minus the weakest vertex.
    Recurse,
    /// Frequency at which the reference vertex is strongest.
    Frequency,
    /// Next reference vertex chosen at that frequency.
    Reference,
    /// Center added to a VFSA clique.
    VfsaCenter,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceStep {
    pub kind: StepKind,
    pub vertex: Label,
    /// Frequency used for the choice, if any.
    pub frequency: Option<f64>,
    /// Intensity that decided the choice, if any.
    pub intensity: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveTrace {
    pub steps: Vec<TraceStep>,
    /// Deepest recursion reached (vertices deleted from one center graph).
    pub max_depth: usize,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub clique: Clique,
    pub trace: SolveTrace,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct MultiSolution {
    /// Distinct maximum-size cliques, sorted by members.
    pub cliques: Vec<Clique>,
    pub trace: SolveTrace,
    pub elapsed: Duration,
}

impl MultiSolution {
    pub fn size(&self) -> usize {
        self.cliques.first().map_or(0, Clique::size)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ThirdModule {
    PickMax,
    Vfsa,
}

struct Run<'a> {
    cfg: &'a SolverConfig,
    trace: SolveTrace,
}

impl<'a> Run<'a> {
    fn new(cfg: &'a SolverConfig) -> Self {
        Self {
            cfg,
            trace: SolveTrace::default(),
        }
    }

    fn push(&mut self, kind: StepKind, vertex: Label, frequency: Option<f64>, intensity: Option<f64>) {
        if self.cfg.record_trace {
            self.trace.steps.push(TraceStep {
                kind,
                vertex,
                frequency,
                intensity,
            });
        }
    }

    fn log(&mut self, kind: StepKind, vertex: Label, frequency: f64, intensity: f64) {
        self.push(kind, vertex, Some(frequency), Some(intensity));
    }

    fn mark(&mut self, kind: StepKind, vertex: Label) {
        self.push(kind, vertex, None, None);
    }

    fn intensities(&self, es: &EigenSystem, source: usize) -> IntensityVector {
        es.intensities(source, self.cfg.degeneracy_tol)
    }

    fn value(&self, iv: &IntensityVector, l: usize, group: usize) -> f64 {
        let p = iv.grouped(l, group);
        match self.cfg.magnitude_mode {
            MagnitudeMode::SignedPrincipal if group == 0 => p,
            _ => p.abs(),
        }
    }

    /// Best candidate by `score`; near-equal scores resolve by order.
    fn choose(&self, mut candidates: Vec<usize>, score: impl Fn(usize) -> f64, maximize: bool) -> Option<(usize, f64)> {
        if self.cfg.tie_break == TieBreak::HighestLabel {
            candidates.reverse();
        }
        let mut best: Option<(usize, f64)> = None;
        for c in candidates {
            let v = score(c);
            let better = match best {
                None => true,
                Some((_, b)) if maximize => v > b + self.cfg.tie_tol,
                Some((_, b)) => v < b - self.cfg.tie_tol,
            };
            if better {
                best = Some((c, v));
            }
        }
        best
    }

    /// Greedy growth from every seed `{s, v}`; returns the largest clique.
    fn pick_max(&mut self, gs: &Graph, s: usize) -> Vec<Label> {
        let s_label = gs.label(s);
        let rest = gs.delete_at(s);
        let mut best = vec![s_label];
        for seed in 0..rest.n() {
            if best.len() == gs.n() {
                break;
            }
            let seed_label = rest.label(seed);
            self.mark(StepKind::Seed, seed_label);
            let mut clique = vec![s_label, seed_label];
            let mut h = rest.center_subgraph_at(seed);
            let mut head = seed_label;
            while h.n() > 1 {
                let hi = h.index_of(head).unwrap();
                if h.is_complete() {
                    for &l in h.labels().iter().filter(|&&l| l != head) {
                        self.mark(StepKind::Absorb, l);
                        clique.push(l);
                    }
                    break;
                }
                let es = EigenSystem::of(&h);
                let iv = self.intensities(&es, hi);
                let others: Vec<usize> = (0..h.n()).filter(|&v| v != hi).collect();
                let (k, p) = self.choose(others, |v| self.value(&iv, v, 0), true).unwrap();
                let next = h.label(k);
                self.log(StepKind::PickMax, next, es.values()[0], p);
                clique.push(next);
                let without_head = h.delete_at(hi);
                h = without_head.center_subgraph_at(without_head.index_of(next).unwrap());
                head = next;
            }
            if clique.len() > best.len() {
                best = clique;
            }
        }
        best
    }

    /// Weakest non-center vertex at the principal frequency.
    fn weakest(&mut self, g: &Graph, c: usize) -> (usize, EigenSystem, IntensityVector) {
        let es = EigenSystem::of(g);
        let iv = self.intensities(&es, c);
        let others: Vec<usize> = (0..g.n()).filter(|&v| v != c).collect();
        let (v, p) = self.choose(others, |v| self.value(&iv, v, 0), false).unwrap();
        self.log(StepKind::DeleteMin, g.label(v), es.values()[0], p);
        (v, es, iv)
    }

    fn delete_min(&mut self, gs: &Graph, s_label: Label) -> Vec<Label> {
        let mut h = gs.clone();
        while !h.is_complete() {
            let c = h.index_of(s_label).unwrap();
            let (v, _, _) = self.weakest(&h, c);
            h = h.delete_at(v);
        }
        h.labels().to_vec()
    }

    /// Frequency group at which `v` is strongest; ties go to the higher
    /// frequency.
    fn strongest_group(&self, iv: &IntensityVector, v: usize) -> (usize, f64) {
        let mut best = (0, self.value(iv, v, 0));
        for grp in 1..iv.group_count() {
            let val = self.value(iv, v, grp);
            if val > best.1 + self.cfg.tie_tol {
                best = (grp, val);
            }
        }
        best
    }

    /// Reference vertex for a VFSA walk out of `v`: the neighbour of `v`
    /// strongest at the frequency where `v` itself is strongest.
    fn reference(&mut self, g: &Graph, iv: &IntensityVector, v: usize) -> Option<usize> {
        let (freq, f_val) = self.strongest_group(iv, v);
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        let (r, p) = self.choose(nbrs, |k| self.value(iv, k, freq), true)?;
        self.log(StepKind::Frequency, g.label(v), iv.frequency(freq), f_val);
        self.log(StepKind::Reference, g.label(r), iv.frequency(freq), p);
        Some(r)
    }

    fn vfsa(&mut self, g: Graph, s_label: Label, ref_label: Label) -> Vec<Label> {
        let mut g = g;
        let mut s = s_label;
        let mut r = ref_label;
        let mut clique = Vec::new();
        loop {
            if g.is_complete() {
                for &l in g.labels() {
                    self.mark(StepKind::Absorb, l);
                }
                clique.extend_from_slice(g.labels());
                break;
            }
            self.mark(StepKind::VfsaCenter, s);
            clique.push(s);
            let si = g.index_of(s).unwrap();
            let ri = g.index_of(r).unwrap();
            let es = EigenSystem::of(&g);
            let iv = self.intensities(&es, si);
            let (f_ref, f_val) = self.strongest_group(&iv, ri);
            self.log(StepKind::Frequency, r, iv.frequency(f_ref), f_val);
            let nbrs: Vec<usize> = g.neighbors(ri).filter(|&k| k != si).collect();
            let next_ref = self.choose(nbrs, |k| self.value(&iv, k, f_ref), true);
            if let Some((k, p)) = next_ref {
                self.log(StepKind::Reference, g.label(k), iv.frequency(f_ref), p);
            }
            let next_ref = next_ref.map(|(k, _)| g.label(k));
            let rest = g.delete_at(si);
            g = rest.center_subgraph_at(rest.index_of(r).unwrap());
            s = r;
            match next_ref {
                Some(l) => r = l,
                // `s` has no neighbours left; `g` is the single vertex `s`.
                None => debug_assert_eq!(g.n(), 1),
            }
        }
        clique
    }

    /// Four-module search on the center graph `gs` of `s_label`. The
    /// recursion on `D(v_min, G)` is unrolled: every level deletes the vertex
    /// Delete_min would delete next, so Delete_min's answer is the complete
    /// graph the recursion bottoms out in.
    fn center_search(&mut self, gs: Graph, s_label: Label, third: ThirdModule) -> Vec<Label> {
        let mut g = gs;
        let mut depth = 0;
        let mut found: Vec<Vec<Label>> = Vec::new();
        while !g.is_complete() {
            let c = g.index_of(s_label).unwrap();
            found.push(self.pick_max(&g, c));
            let (v_min, _, iv) = self.weakest(&g, c);
            let h = g.center_subgraph_at(v_min);
            let v_label = g.label(v_min);
            let module3 = match third {
                ThirdModule::PickMax => self.pick_max(&h, h.index_of(v_label).unwrap()),
                ThirdModule::Vfsa => {
                    let r = self.reference(&g, &iv, v_min).expect("v_min is adjacent to the center");
                    self.vfsa(h, v_label, g.label(r))
                }
            };
            found.push(module3);
            g = g.delete_at(v_min);
            depth += 1;
            self.mark(StepKind::Recurse, v_label);
        }
        self.trace.max_depth = self.trace.max_depth.max(depth);
        // Delete_min's clique ranks right after the first Pick_max.
        let at = found.len().min(1);
        found.insert(at, g.labels().to_vec());
        let mut best: Vec<Label> = Vec::new();
        for cand in found {
            if cand.len() > best.len() {
                best = cand;
            }
        }
        best
    }

    fn top_level(&mut self, g: &Graph, third: ThirdModule) -> Vec<Label> {
        let mut best: Vec<Label> = Vec::new();
        for i in 0..g.n() {
            // C(v) cannot beat the incumbent when it is no larger.
            if g.degree(i) < best.len() {
                continue;
            }
            self.mark(StepKind::Center, g.label(i));
            let cand = self.center_search(g.center_subgraph_at(i), g.label(i), third);
            if cand.len() > best.len() {
                best = cand;
            }
        }
        best
    }
}

fn center_index(g: &Graph, s: Label) -> Result<usize, SolverError> {
    let i = g.index_of(s).ok_or(GraphError::UnknownLabel(s))?;
    if !g.is_center_at(i) {
        return Err(SolverError::NotCenterGraph(s));
    }
    Ok(i)
}

fn finish(g: &Graph, members: Vec<Label>, source: Procedure, run: Run, started: Instant) -> Solution {
    let clique = Clique::certify(g, members, source).expect("solver produced a non-clique");
    Solution {
        clique,
        trace: run.trace,
        elapsed: started.elapsed(),
    }
}

/// Greedy growth by largest principal intensity from the center `s` of `gs`.
pub fn pick_max(gs: &Graph, s: Label, cfg: &SolverConfig) -> Result<Solution, SolverError> {
    let started = Instant::now();
    let c = center_index(gs, s)?;
    let mut run = Run::new(cfg);
    let members = run.pick_max(gs, c);
    Ok(finish(gs, members, Procedure::PickMax, run, started))
}

/// Deletes the weakest non-center vertex until the graph is complete.
pub fn delete_min(gs: &Graph, s: Label, cfg: &SolverConfig) -> Result<Solution, SolverError> {
    let started = Instant::now();
    center_index(gs, s)?;
    let mut run = Run::new(cfg);
    let members = run.delete_min(gs, s);
    Ok(finish(gs, members, Procedure::DeleteMin, run, started))
}

/// Walk of centers on `g` (a center graph of `s`) guided by reference
/// vertex `v_ref`.
pub fn vfsa(g: &Graph, s: Label, v_ref: Label, cfg: &SolverConfig) -> Result<Solution, SolverError> {
    let started = Instant::now();
    center_index(g, s)?;
    g.index_of(v_ref).ok_or(GraphError::UnknownLabel(v_ref))?;
    if v_ref == s {
        return Err(SolverError::ReferenceIsCenter(s));
    }
    let mut run = Run::new(cfg);
    let members = run.vfsa(g.clone(), s, v_ref);
    Ok(finish(g, members, Procedure::Vfsa, run, started))
}

pub fn algorithm_a(g: &Graph, cfg: &SolverConfig) -> Solution {
    let started = Instant::now();
    let mut run = Run::new(cfg);
    let members = run.top_level(g, ThirdModule::PickMax);
    finish(g, members, Procedure::AlgorithmA, run, started)
}

pub fn algorithm_b(g: &Graph, cfg: &SolverConfig) -> Solution {
    let started = Instant::now();
    let mut run = Run::new(cfg);
    let members = run.top_level(g, ThirdModule::Vfsa);
    finish(g, members, Procedure::AlgorithmB, run, started)
}

/// One VFSA walk from every vertex (one per neighbour with
/// `sweep_references`); returns every distinct clique of the largest size
/// found.
pub fn algorithm_c(g: &Graph, cfg: &SolverConfig) -> MultiSolution {
    let started = Instant::now();
    let mut run = Run::new(cfg);
    let mut found: Vec<Vec<Label>> = Vec::new();
    for i in 0..g.n() {
        let s = g.label(i);
        run.mark(StepKind::Center, s);
        let gs = g.center_subgraph_at(i);
        if gs.is_complete() {
            found.push(gs.labels().to_vec());
        } else if cfg.sweep_references {
            for &r in gs.labels().iter().filter(|&&r| r != s) {
                run.mark(StepKind::Reference, r);
                found.push(run.vfsa(gs.clone(), s, r));
            }
        } else {
            let si = gs.index_of(s).unwrap();
            let es = EigenSystem::of(&gs);
            let iv = run.intensities(&es, si);
            let r = run.reference(&gs, &iv, si).expect("non-complete center graph has neighbours");
            found.push(run.vfsa(gs.clone(), s, gs.label(r)));
        }
    }
    let best = found.iter().map(Vec::len).max().unwrap_or(0);
    let mut cliques: Vec<Clique> = found
        .into_iter()
        .filter(|m| m.len() == best)
        .map(|m| Clique::certify(g, m, Procedure::AlgorithmC).expect("solver produced a non-clique"))
        .collect();
    cliques.sort_by(|a, b| a.members().cmp(b.members()));
    cliques.dedup();
    MultiSolution {
        cliques,
        trace: run.trace,
        elapsed: started.elapsed(),
    }
}
