//! The recursive lower bound on the degree of the area polynomial.
//!
//! A run normalizes (mosquitos first, then subdivisions), then kills a
//! triangle and recurses on the one or two resulting triangulations. Leaves
//! with no killable triangle are linear and count 1. The choice of killed
//! triangle is open; [`StrategyKind`] decides how it is made.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{CanonicalKey, ComplexError, Edge, Linearity, Triangle, Triangulation, VertexId};
use crate::moves::{self, KillOutcome, MoveError, VertexMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegreeError {
    #[error("expected a quadrilateral boundary, found {0} corners")]
    NotAQuadrilateral(usize),
    #[error("condition is separating")]
    NotNonSeparating,
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("no killable triangle, yet neither type D nor type X")]
    Unclassified,
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StrategyKind {
    /// Always kill the first killable triangle.
    GreedyFirst,
    /// Maximum over every choice at every step.
    ExhaustiveMax,
    /// Best of `count` runs with uniformly random choices.
    RandomRestarts { count: u32, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub kind: StrategyKind,
    /// After a kill that enlarges the condition, also try the extended
    /// triangulation with the diagonal of the kill quadrilateral flipped, and
    /// keep the larger value.
    pub use_trick: bool,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Reuse values of isomorphic subproblems (exhaustive search only).
    pub memoize: bool,
}

impl Strategy {
    pub fn new(kind: StrategyKind) -> Self {
        Strategy { kind, use_trick: false, node_budget: None, time_budget: None, memoize: true }
    }

    pub fn exhaustive() -> Self {
        Self::new(StrategyKind::ExhaustiveMax)
    }

    pub fn greedy() -> Self {
        Self::new(StrategyKind::GreedyFirst)
    }

    pub fn with_trick(mut self, on: bool) -> Self {
        self.use_trick = on;
        self
    }

    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn with_time_budget(mut self, limit: Duration) -> Self {
        self.time_budget = Some(limit);
        self
    }

    pub fn with_memo(mut self, on: bool) -> Self {
        self.memoize = on;
        self
    }

    fn check(&self) -> Result<(), DegreeError> {
        if let StrategyKind::RandomRestarts { count: 0, .. } = self.kind {
            return Err(DegreeError::InvalidStrategy("restart count must be at least 1".into()));
        }
        if self.node_budget == Some(0) || self.time_budget == Some(Duration::ZERO) {
            return Err(DegreeError::InvalidStrategy("budgets must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    MosquitoElim {
        vertex: VertexId,
        map: VertexMap,
    },
    SubdivisionDelete {
        triple: [VertexId; 3],
        map: VertexMap,
    },
    /// `edge` and `map` are present when the condition was nonempty; the
    /// children are then the contraction and the extended triangulation.
    Kill {
        triangle: Triangle,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edge: Option<Edge>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        map: Option<VertexMap>,
    },
    Flip {
        quad: [VertexId; 4],
    },
    Linear {
        certificate: Linearity,
    },
    Discarded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTrace {
    #[serde(flatten)]
    pub step: Step,
    pub value: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<DerivationTrace>,
}

impl DerivationTrace {
    fn unary(step: Step, child: DerivationTrace) -> Self {
        DerivationTrace { step, value: child.value, children: vec![child] }
    }

    fn discarded() -> Self {
        DerivationTrace { step: Step::Discarded, value: 0, children: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug)]
pub struct DegreeResult {
    pub value: u64,
    pub trace: DerivationTrace,
    /// False when a budget ran out and part of the search fell back to the
    /// greedy choice.
    pub complete: bool,
    /// Expanded search nodes.
    pub nodes: u64,
}

fn check_input(t: &Triangulation) -> Result<(), DegreeError> {
    let n = t.complex().corner_count();
    if n != 4 {
        return Err(DegreeError::NotAQuadrilateral(n));
    }
    if !t.is_non_separating() {
        return Err(DegreeError::NotNonSeparating);
    }
    Ok(())
}

/// One normalization move, if any applies: the lowest mosquito, else the
/// innermost subdivision.
fn normalize_once(t: &Triangulation) -> Result<Option<(Step, Triangulation)>, DegreeError> {
    if let Some(&v) = t.mosquitos().first() {
        let (next, map) = moves::eliminate_mosquito(t, v)?;
        return Ok(Some((Step::MosquitoElim { vertex: v, map }, next)));
    }
    if let Some(triple) = moves::innermost_subdivision(t) {
        let (next, map) = moves::delete_subdivision(t, triple)?;
        return Ok(Some((Step::SubdivisionDelete { triple, map }, next)));
    }
    Ok(None)
}

fn leaf_certificate(t: &Triangulation) -> Result<Linearity, DegreeError> {
    t.linearity_type()?.ok_or(DegreeError::Unclassified)
}

/// Linearity certificate after normalization.
pub fn is_linear(t: &Triangulation) -> Result<Option<Linearity>, DegreeError> {
    check_input(t)?;
    let mut cur = t.clone();
    while let Some((_, next)) = normalize_once(&cur)? {
        cur = next;
    }
    Ok(cur.linearity_type()?)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Choice {
    First,
    Random,
    Best,
}

struct Search<'s> {
    strategy: &'s Strategy,
    memo: HashMap<CanonicalKey, u64>,
    nodes: u64,
    start: Instant,
    out_of_budget: bool,
    rng: ChaCha8Rng,
}

impl<'s> Search<'s> {
    fn new(strategy: &'s Strategy) -> Self {
        Search {
            strategy,
            memo: HashMap::new(),
            nodes: 0,
            start: Instant::now(),
            out_of_budget: false,
            rng: ChaCha8Rng::seed_from_u64(0),
        }
    }

    fn tick(&mut self) -> bool {
        if self.out_of_budget {
            return false;
        }
        self.nodes += 1;
        let over_nodes = self.strategy.node_budget.is_some_and(|b| self.nodes > b);
        let over_time = self.strategy.time_budget.is_some_and(|b| self.start.elapsed() > b);
        if over_nodes || over_time {
            self.out_of_budget = true;
            return false;
        }
        true
    }

    /// Exhaustive value with completeness flag. Incomplete values are never
    /// memoized.
    fn value(&mut self, t: &Triangulation) -> Result<(u64, bool), DegreeError> {
        let key = self.strategy.memoize.then(|| t.canonical_key());
        if let Some(&v) = key.as_ref().and_then(|k| self.memo.get(k)) {
            return Ok((v, true));
        }
        if !self.tick() {
            return Ok((self.derive(t, Choice::First)?.value, false));
        }
        let result = if let Some((_, next)) = normalize_once(t)? {
            self.value(&next)?
        } else {
            let killable = t.killable_triangles()?;
            if killable.is_empty() {
                leaf_certificate(t)?;
                (1, true)
            } else {
                let mut best = 0;
                let mut complete = true;
                for tri in killable {
                    let (v, c) = self.kill_value(t, tri)?;
                    best = best.max(v);
                    complete &= c;
                }
                (best, complete)
            }
        };
        if let (Some(k), true) = (key, result.1) {
            self.memo.insert(k, result.0);
        }
        Ok(result)
    }

    fn kill_value(&mut self, t: &Triangulation, tri: Triangle) -> Result<(u64, bool), DegreeError> {
        match moves::kill(t, tri)? {
            KillOutcome::Single(next) => self.value(&next),
            KillOutcome::Pair { edge, contracted, extended, discarded, .. } => {
                let (a, ca) = self.value(&contracted)?;
                if discarded {
                    return Ok((a, ca));
                }
                let (b, cb) = self.extended_value(t, tri, edge, &extended)?;
                Ok((a + b, ca && cb))
            }
        }
    }

    fn flipped(
        &self,
        before: &Triangulation,
        tri: Triangle,
        edge: Edge,
        extended: &Triangulation,
    ) -> Option<(Triangulation, [VertexId; 4])> {
        if !self.strategy.use_trick {
            return None;
        }
        let quad = moves::trick_quad(before, tri, edge)?;
        moves::flip_within_condition(extended, quad).ok().map(|f| (f, quad))
    }

    fn extended_value(
        &mut self,
        before: &Triangulation,
        tri: Triangle,
        edge: Edge,
        extended: &Triangulation,
    ) -> Result<(u64, bool), DegreeError> {
        let (plain, cp) = self.value(extended)?;
        match self.flipped(before, tri, edge, extended) {
            Some((f, _)) => {
                let (v, cf) = self.value(&f)?;
                Ok((plain.max(v), cp && cf))
            }
            None => Ok((plain, cp)),
        }
    }

    /// Builds a trace, choosing killed triangles according to `choice`.
    fn derive(&mut self, t: &Triangulation, choice: Choice) -> Result<DerivationTrace, DegreeError> {
        if let Some((step, next)) = normalize_once(t)? {
            let child = self.derive(&next, choice)?;
            return Ok(DerivationTrace::unary(step, child));
        }
        let killable = t.killable_triangles()?;
        if killable.is_empty() {
            let certificate = leaf_certificate(t)?;
            return Ok(DerivationTrace { step: Step::Linear { certificate }, value: 1, children: Vec::new() });
        }
        let tri = match choice {
            Choice::First => killable[0],
            Choice::Random => killable[self.rng.gen_range(0..killable.len())],
            Choice::Best => {
                let mut best: Option<(u64, Triangle)> = None;
                for &k in &killable {
                    let (v, _) = self.kill_value(t, k)?;
                    if best.is_none_or(|(b, _)| v > b) {
                        best = Some((v, k));
                    }
                }
                best.expect("nonempty").1
            }
        };
        match moves::kill(t, tri)? {
            KillOutcome::Single(next) => {
                let child = self.derive(&next, choice)?;
                Ok(DerivationTrace::unary(Step::Kill { triangle: tri, edge: None, map: None }, child))
            }
            KillOutcome::Pair { edge, contracted, map, extended, discarded } => {
                let first = self.derive(&contracted, choice)?;
                let second = if discarded {
                    DerivationTrace::discarded()
                } else {
                    self.derive_extended(t, tri, edge, &extended, choice)?
                };
                Ok(DerivationTrace {
                    step: Step::Kill { triangle: tri, edge: Some(edge), map: Some(map) },
                    value: first.value + second.value,
                    children: vec![first, second],
                })
            }
        }
    }

    fn derive_extended(
        &mut self,
        before: &Triangulation,
        tri: Triangle,
        edge: Edge,
        extended: &Triangulation,
        choice: Choice,
    ) -> Result<DerivationTrace, DegreeError> {
        let Some((f, quad)) = self.flipped(before, tri, edge, extended) else {
            return self.derive(extended, choice);
        };
        if choice == Choice::Best {
            let (plain, _) = self.value(extended)?;
            let (flip, _) = self.value(&f)?;
            return if flip > plain {
                Ok(DerivationTrace::unary(Step::Flip { quad }, self.derive(&f, choice)?))
            } else {
                self.derive(extended, choice)
            };
        }
        let plain = self.derive(extended, choice)?;
        let flip = self.derive(&f, choice)?;
        Ok(if flip.value > plain.value { DerivationTrace::unary(Step::Flip { quad }, flip) } else { plain })
    }
}

/// Runs the degree algorithm under `strategy`. The returned value is the
/// value of the returned trace.
pub fn degree_lower_bound(t: &Triangulation, strategy: &Strategy) -> Result<DegreeResult, DegreeError> {
    check_input(t)?;
    strategy.check()?;
    let mut search = Search::new(strategy);
    let (trace, complete) = match strategy.kind {
        StrategyKind::GreedyFirst => (search.derive(t, Choice::First)?, true),
        StrategyKind::ExhaustiveMax => {
            let (_, complete) = search.value(t)?;
            (search.derive(t, Choice::Best)?, complete)
        }
        StrategyKind::RandomRestarts { count, seed } => {
            let mut best: Option<DerivationTrace> = None;
            let mut complete = true;
            for run in 0..count {
                if run > 0 && !search.tick() {
                    complete = false;
                    break;
                }
                search.rng = ChaCha8Rng::seed_from_u64(seed);
                search.rng.set_stream(run as u64);
                let trace = search.derive(t, Choice::Random)?;
                if best.as_ref().is_none_or(|b| trace.value > b.value) {
                    best = Some(trace);
                }
            }
            (best.expect("at least one run"), complete)
        }
    };
    Ok(DegreeResult { value: trace.value, trace, complete, nodes: search.nodes })
}

/// Re-executes a trace against `t`, checking every move and the value
/// arithmetic. Returns a description of the first mismatch.
pub fn replay(trace: &DerivationTrace, t: &Triangulation) -> Result<(), String> {
    check_input(t).map_err(|e| e.to_string())?;
    replay_node(trace, t, "root")
}

/// Boolean form of [`replay`].
pub fn replays(trace: &DerivationTrace, t: &Triangulation) -> bool {
    replay(trace, t).is_ok()
}

fn only_child<'a>(node: &'a DerivationTrace, path: &str) -> Result<&'a DerivationTrace, String> {
    match node.children.as_slice() {
        [c] if c.value == node.value => Ok(c),
        [c] => Err(format!("{path}: value {} but child has {}", node.value, c.value)),
        _ => Err(format!("{path}: expected one child, found {}", node.children.len())),
    }
}

fn replay_node(node: &DerivationTrace, t: &Triangulation, path: &str) -> Result<(), String> {
    let fail = |msg: String| Err(format!("{path}: {msg}"));
    let mosquitos = t.mosquitos();
    let normal = mosquitos.is_empty() && t.subdivisions().is_empty();
    match &node.step {
        Step::MosquitoElim { vertex, map } => {
            let (next, m) = moves::eliminate_mosquito(t, *vertex).map_err(|e| format!("{path}: {e}"))?;
            if m != *map {
                return fail("vertex map differs".into());
            }
            replay_node(only_child(node, path)?, &next, &format!("{path}/mosquito"))
        }
        Step::SubdivisionDelete { triple, map } => {
            if !mosquitos.is_empty() {
                return fail("subdivision deleted while mosquitos remain".into());
            }
            let (next, m) = moves::delete_subdivision(t, *triple).map_err(|e| format!("{path}: {e}"))?;
            if m != *map {
                return fail("vertex map differs".into());
            }
            replay_node(only_child(node, path)?, &next, &format!("{path}/subdivision"))
        }
        Step::Flip { quad } => {
            let next = moves::flip_within_condition(t, *quad).map_err(|e| format!("{path}: {e}"))?;
            replay_node(only_child(node, path)?, &next, &format!("{path}/flip"))
        }
        Step::Linear { certificate } => {
            if !normal {
                return fail("leaf reached before normalization".into());
            }
            match t.killable_triangles() {
                Ok(k) if k.is_empty() => {}
                Ok(_) => return fail("leaf has a killable triangle".into()),
                Err(e) => return fail(e.to_string()),
            }
            if t.linearity_type().ok().flatten() != Some(*certificate) {
                return fail("certificate does not hold".into());
            }
            if node.value != 1 || !node.children.is_empty() {
                return fail("linear leaf must have value 1 and no children".into());
            }
            Ok(())
        }
        Step::Discarded => fail("discarded node outside a kill".into()),
        Step::Kill { triangle, edge, map } => {
            if !normal {
                return fail("kill before normalization".into());
            }
            match moves::kill(t, *triangle).map_err(|e| format!("{path}: {e}"))? {
                KillOutcome::Single(next) => {
                    if edge.is_some() || map.is_some() {
                        return fail("kill with empty condition records an edge".into());
                    }
                    replay_node(only_child(node, path)?, &next, &format!("{path}/kill"))
                }
                KillOutcome::Pair { edge: e, contracted, map: m, extended, discarded } => {
                    if *edge != Some(e) || map.as_ref() != Some(&m) {
                        return fail("edge or vertex map differs".into());
                    }
                    let [first, second] = node.children.as_slice() else {
                        return fail(format!("expected two children, found {}", node.children.len()));
                    };
                    if first.value + second.value != node.value {
                        return fail(format!("value {} is not {} + {}", node.value, first.value, second.value));
                    }
                    replay_node(first, &contracted, &format!("{path}/contract"))?;
                    match (discarded, &second.step) {
                        (true, Step::Discarded) if second.value == 0 && second.children.is_empty() => Ok(()),
                        (true, _) => fail("extended branch should be discarded".into()),
                        (false, Step::Discarded) => fail("extended branch wrongly discarded".into()),
                        (false, _) => replay_node(second, &extended, &format!("{path}/extend")),
                    }
                }
            }
        }
    }
}
