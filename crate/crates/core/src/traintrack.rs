//! Graph maps on punctured-disk graphs and their train-track certificates:
//! efficiency, irreducibility of the real transition matrix, and the
//! Perron–Frobenius eigenvalue.
//!
//! Edge ids are positive; a signed id is a traversal, negative meaning
//! head-to-tail.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: u32,
    pub tail: u32,
    pub head: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    pub vertices: Vec<u32>,
    pub edges: Vec<Edge>,
    /// Edge ids of the circles around the punctures.
    pub peripheral: Vec<u32>,
}

impl EmbeddedGraph {
    pub fn edge(&self, id: u32) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Start and end vertex of a signed traversal.
    pub fn ends(&self, x: i32) -> Option<(u32, u32)> {
        let e = self.edge(x.unsigned_abs())?;
        Some(if x > 0 { (e.tail, e.head) } else { (e.head, e.tail) })
    }

    pub fn valence(&self, v: u32) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMap {
    pub graph: EmbeddedGraph,
    pub vertex_image: BTreeMap<u32, u32>,
    pub edge_image: BTreeMap<u32, Vec<i32>>,
}

impl GraphMap {
    /// Image walk of a signed traversal.
    pub fn image(&self, x: i32) -> Vec<i32> {
        let w = self.edge_image.get(&x.unsigned_abs()).map_or(&[][..], |w| w.as_slice());
        if x > 0 {
            w.to_vec()
        } else {
            w.iter().rev().map(|y| -y).collect()
        }
    }

    fn image_ref(&self, id: u32) -> &[i32] {
        self.edge_image.get(&id).map_or(&[][..], |w| w.as_slice())
    }

    fn first(&self, x: i32) -> i32 {
        let w = self.image_ref(x.unsigned_abs());
        if x > 0 {
            w[0]
        } else {
            -w[w.len() - 1]
        }
    }

    fn last(&self, x: i32) -> i32 {
        let w = self.image_ref(x.unsigned_abs());
        if x > 0 {
            w[w.len() - 1]
        } else {
            -w[0]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    MissingImage { edge: u32 },
    EmptyImage { edge: u32 },
    UnknownEdge { edge: u32, letter: i32 },
    Disconnected { edge: u32, position: usize },
    EndpointMismatch { edge: u32 },
    MissingVertexImage { vertex: u32 },
    PeripheralNotPreserved { edge: u32 },
    PeripheralNotCovered { edge: u32 },
    LowValence { vertex: u32, valence: usize },
    PeripheralNotDisjoint { vertex: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagnostics {
    pub errors: Vec<Issue>,
    /// Embedding conditions that do not affect the combinatorial certificates.
    pub warnings: Vec<Issue>,
    pub pre_peripheral: Vec<u32>,
    pub real: Vec<u32>,
}

impl Diagnostics {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

pub fn validate(map: &GraphMap) -> Diagnostics {
    let g = &map.graph;
    let mut d = Diagnostics::default();
    for v in &g.vertices {
        if !map.vertex_image.contains_key(v) {
            d.errors.push(Issue::MissingVertexImage { vertex: *v });
        }
    }
    for e in &g.edges {
        let Some(w) = map.edge_image.get(&e.id) else {
            d.errors.push(Issue::MissingImage { edge: e.id });
            continue;
        };
        if w.is_empty() {
            d.errors.push(Issue::EmptyImage { edge: e.id });
            continue;
        }
        let mut ends = Vec::with_capacity(w.len());
        for &x in w {
            match g.ends(x) {
                Some(p) if x != 0 => ends.push(p),
                _ => d.errors.push(Issue::UnknownEdge { edge: e.id, letter: x }),
            }
        }
        if ends.len() != w.len() {
            continue;
        }
        for (i, pair) in ends.windows(2).enumerate() {
            if pair[0].1 != pair[1].0 {
                d.errors.push(Issue::Disconnected { edge: e.id, position: i + 1 });
            }
        }
        let (vt, vh) = (map.vertex_image.get(&e.tail), map.vertex_image.get(&e.head));
        if vt != Some(&ends[0].0) || vh != Some(&ends[ends.len() - 1].1) {
            d.errors.push(Issue::EndpointMismatch { edge: e.id });
        }
    }
    let periph: BTreeSet<u32> = g.peripheral.iter().copied().collect();
    let mut covered = BTreeSet::new();
    for &c in &g.peripheral {
        let w = map.image_ref(c);
        if w.iter().any(|x| !periph.contains(&x.unsigned_abs())) {
            d.errors.push(Issue::PeripheralNotPreserved { edge: c });
        }
        covered.extend(w.iter().map(|x| x.unsigned_abs()));
    }
    for &c in &g.peripheral {
        if !covered.contains(&c) {
            d.errors.push(Issue::PeripheralNotCovered { edge: c });
        }
    }
    for &v in &g.vertices {
        let val = g.valence(v);
        if val == 1 || val == 2 {
            d.warnings.push(Issue::LowValence { vertex: v, valence: val });
        }
        let touching = g
            .edges
            .iter()
            .filter(|e| periph.contains(&e.id) && (e.tail == v || e.head == v))
            .count();
        if touching > 1 {
            d.warnings.push(Issue::PeripheralNotDisjoint { vertex: v });
        }
    }
    if !d.ok() {
        return d;
    }
    // edges whose iterated image eventually lies in the circles
    let mut absorbed = periph.clone();
    loop {
        let mut grew = false;
        for e in &g.edges {
            if absorbed.contains(&e.id) {
                continue;
            }
            if map.image_ref(e.id).iter().all(|x| absorbed.contains(&x.unsigned_abs())) {
                absorbed.insert(e.id);
                d.pre_peripheral.push(e.id);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    d.pre_peripheral.sort_unstable();
    d.real = g
        .edges
        .iter()
        .map(|e| e.id)
        .filter(|id| !absorbed.contains(id))
        .collect();
    d.real.sort_unstable();
    d
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraintrackError {
    #[error("graph map failed validation with {} error(s)", .0.errors.len())]
    Invalid(Diagnostics),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(u32),
    #[error("power iteration did not reach tolerance {tolerance} within {iterations} steps")]
    NoConvergence { tolerance: f64, iterations: usize },
    #[error("matrix is not irreducible")]
    Reducible,
    #[error("matrix is empty or not square")]
    Shape,
}

/// A graph map that passed [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct CheckedMap {
    map: GraphMap,
    diagnostics: Diagnostics,
}

impl CheckedMap {
    pub fn new(map: GraphMap) -> Result<Self, TraintrackError> {
        let diagnostics = validate(&map);
        if !diagnostics.ok() {
            return Err(TraintrackError::Invalid(diagnostics));
        }
        Ok(CheckedMap { map, diagnostics })
    }

    pub fn map(&self) -> &GraphMap {
        &self.map
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.diagnostics
    }

    pub fn real_edges(&self) -> &[u32] {
        &self.diagnostics.real
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeSelector {
    Real,
    All,
    Explicit(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub edges: Vec<u32>,
    /// `entries[i][j]`: occurrences of `edges[i]` in the image of `edges[j]`.
    pub entries: Vec<Vec<u64>>,
}

impl TransitionMatrix {
    pub fn from_rows(entries: Vec<Vec<u64>>) -> Self {
        TransitionMatrix {
            edges: (1..=entries.len() as u32).collect(),
            entries,
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let entries = (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect();
        TransitionMatrix {
            edges: self.edges.clone(),
            entries,
        }
    }

    fn is_square(&self) -> bool {
        self.entries.iter().all(|r| r.len() == self.entries.len())
    }
}

pub fn transition(map: &CheckedMap, selector: &EdgeSelector) -> Result<TransitionMatrix, TraintrackError> {
    let g = &map.map.graph;
    let edges: Vec<u32> = match selector {
        EdgeSelector::Real => map.diagnostics.real.clone(),
        EdgeSelector::All => g.edges.iter().map(|e| e.id).collect(),
        EdgeSelector::Explicit(v) => {
            for &id in v {
                g.edge(id).ok_or(TraintrackError::UnknownEdge(id))?;
            }
            v.clone()
        }
    };
    let index: BTreeMap<u32, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut entries = vec![vec![0u64; edges.len()]; edges.len()];
    for (j, &e) in edges.iter().enumerate() {
        for x in map.map.image_ref(e) {
            if let Some(&i) = index.get(&x.unsigned_abs()) {
                entries[i][j] += 1;
            }
        }
    }
    Ok(TransitionMatrix { edges, entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Backtrack {
    pub m: usize,
    pub edge: u32,
    /// Consecutive traversals `(x, -x)` in `g^m(edge)`.
    pub turn: (i32, i32),
    /// Index of `x` in `g^m(edge)`, when the word is short enough to expand.
    pub position: Option<usize>,
}

const EXPAND_LIMIT: usize = 1 << 20;

fn expand(map: &GraphMap, edge: u32, m: usize) -> Option<Vec<i32>> {
    let mut w = vec![edge as i32];
    for _ in 0..m {
        let mut next = Vec::new();
        for &x in &w {
            next.extend(map.image(x));
            if next.len() > EXPAND_LIMIT {
                return None;
            }
        }
        w = next;
    }
    Some(w)
}

/// Searches `g^m(e)` for a back track, `1 <= m <= bound`, over every edge `e`.
///
/// Works on the set of turns (consecutive pairs) of `g^m(e)`: the turns of
/// `g^{m+1}(e)` are those inside images of its letters plus, for each turn
/// `(a, b)` of `g^m(e)`, the junction `(last g(a), first g(b))`. This set is
/// exactly the turns occurring in the expanded word.
pub fn is_efficient_up_to(map: &CheckedMap, bound: usize) -> Option<Backtrack> {
    let gm = &map.map;
    for e in &gm.graph.edges {
        let mut letters: BTreeSet<i32> = BTreeSet::from([e.id as i32]);
        let mut turns: BTreeSet<(i32, i32)> = BTreeSet::new();
        for m in 1..=bound {
            let mut nl = BTreeSet::new();
            let mut nt = BTreeSet::new();
            for &x in &letters {
                let w = gm.image(x);
                nl.extend(w.iter().copied());
                nt.extend(w.windows(2).map(|p| (p[0], p[1])));
            }
            for &(a, b) in &turns {
                nt.insert((gm.last(a), gm.first(b)));
            }
            letters = nl;
            turns = nt;
            if let Some(&turn) = turns.iter().find(|(a, b)| *a == -*b) {
                let position = expand(gm, e.id, m)
                    .and_then(|w| w.windows(2).position(|p| (p[0], p[1]) == turn));
                return Some(Backtrack {
                    m,
                    edge: e.id,
                    turn,
                    position,
                });
            }
        }
    }
    None
}

/// Strong connectivity of the support digraph.
pub fn is_irreducible(m: &TransitionMatrix) -> bool {
    let n = m.size();
    if n == 0 || !m.is_square() {
        return false;
    }
    if n == 1 {
        return m.entries[0][0] > 0;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                let w = if forward { m.entries[v][u] } else { m.entries[u][v] };
                if w > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfEstimate {
    pub value: f64,
    /// Collatz–Wielandt bracket: `lower <= λ <= upper`.
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

pub const PF_ITERATION_CAP: usize = 1_000_000;

/// Power iteration on `M + I`, which is primitive when `M` is irreducible,
/// stopped once the Collatz–Wielandt bracket is narrower than `tolerance`.
pub fn pf_eigenvalue(m: &TransitionMatrix, tolerance: f64) -> Result<PfEstimate, TraintrackError> {
    let n = m.size();
    if n == 0 || !m.is_square() {
        return Err(TraintrackError::Shape);
    }
    if !is_irreducible(m) {
        return Err(TraintrackError::Reducible);
    }
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m.entries[i][j] as f64 + if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut x = vec![1.0 / n as f64; n];
    for it in 1..=PF_ITERATION_CAP {
        let y: Vec<f64> = a
            .iter()
            .map(|row| row.iter().zip(&x).map(|(r, v)| r * v).sum())
            .collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (yi, xi) in y.iter().zip(&x) {
            let r = yi / xi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        if hi - lo < tolerance {
            return Ok(PfEstimate {
                value: (lo + hi) / 2.0 - 1.0,
                lower: lo - 1.0,
                upper: hi - 1.0,
                iterations: it,
            });
        }
        let s: f64 = y.iter().sum();
        x = y.into_iter().map(|v| v / s).collect();
    }
    Err(TraintrackError::NoConvergence {
        tolerance,
        iterations: PF_ITERATION_CAP,
    })
}

/// Smallest `k` with `M^k` entrywise positive, searched up to the Wielandt
/// bound `(n-1)² + 1`.
pub fn primitive_exponent(m: &TransitionMatrix) -> Option<usize> {
    let n = m.size();
    if n == 0 || !m.is_square() {
        return None;
    }
    let base: Vec<Vec<bool>> = m.entries.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mut p = base.clone();
    for k in 1..=(n - 1) * (n - 1) + 1 {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return Some(k);
        }
        p = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|l| p[i][l] && base[l][j])).collect())
            .collect();
    }
    None
}

/// Smallest `k <= cap` with `trace(M^k) > threshold`.
pub fn trace_exceeds(m: &TransitionMatrix, threshold: u128, cap: usize) -> Option<usize> {
    let n = m.size();
    let base: Vec<Vec<u128>> = m.entries.iter().map(|r| r.iter().map(|&x| x as u128).collect()).collect();
    let mut p = base.clone();
    for k in 1..=cap {
        let tr = (0..n).fold(0u128, |s, i| s.saturating_add(p[i][i]));
        if tr > threshold {
            return Some(k);
        }
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(0u128, |s, l| s.saturating_add(p[i][l].saturating_mul(base[l][j]))))
                    .collect()
            })
            .collect();
    }
    None
}

/// Real edge id `e_i`.
pub fn kn_real(i: usize) -> u32 {
    i as u32
}

/// Circle id `c_j` for a map built by [`kn_map`]`(n)`.
pub fn kn_circle(n: usize, j: usize) -> u32 {
    (2 * n + 2 + j) as u32
}

/// The graph map of the conjugated braid on the `2n`-punctured disk, `n >= 3`.
///
/// Real edges are `e_1..e_{2n+2}`, circles `c_1..c_{2n}`. With
/// `D(j) = e_j c_j ē_j`:
///
/// - `g(e_i) = e_{n+1+i}` and `g(e_{n+i}) = e_i` for `i < n`
/// - `g(e_n) = e_{2n+1} D(n-1)…D(1) e_{2n+2} D(n)…D(2n) e_{n+1}`
/// - `g(e_{2n}) = e_{2n+1}`
/// - `g(e_{2n+1}) = D(n+1)…D(2n-1) e_{2n} c_{n-1} e_{2n+2}`
/// - `g(e_{2n+2}) = D(n) e_{n-1} e_{2n+1} e_n`
/// - circles: `c_i ↦ c_{n+1+i}` (`i < n`), `c_n ↦ c_{n+1}`, `c_{n+i} ↦ c_i`
///
/// Every endpoint collapses to one vertex under the endpoint constraints of
/// these walks, so the graph is a rose.
pub fn kn_map(n: usize) -> Result<CheckedMap, TraintrackError> {
    assert!(n >= 3, "kn_map needs n >= 3");
    let e = |i: usize| kn_real(i) as i32;
    let c = |j: usize| kn_circle(n, j) as i32;
    let d = |j: usize| [e(j), c(j), -e(j)];
    let mut img: BTreeMap<u32, Vec<i32>> = BTreeMap::new();
    for i in 1..n {
        img.insert(kn_real(i), vec![e(n + 1 + i)]);
        img.insert(kn_real(n + i), vec![e(i)]);
    }
    let mut w = vec![e(2 * n + 1)];
    for j in (1..n).rev() {
        w.extend(d(j));
    }
    w.push(e(2 * n + 2));
    for j in n..=2 * n {
        w.extend(d(j));
    }
    w.push(e(n + 1));
    img.insert(kn_real(n), w);
    img.insert(kn_real(2 * n), vec![e(2 * n + 1)]);
    let mut w = Vec::new();
    for j in n + 1..2 * n {
        w.extend(d(j));
    }
    w.extend([e(2 * n), c(n - 1), e(2 * n + 2)]);
    img.insert(kn_real(2 * n + 1), w);
    let mut w = d(n).to_vec();
    w.extend([e(n - 1), e(2 * n + 1), e(n)]);
    img.insert(kn_real(2 * n + 2), w);
    for j in 1..=2 * n {
        let target = if j < n {
            n + 1 + j
        } else if j == n {
            n + 1
        } else {
            j - n
        };
        img.insert(kn_circle(n, j), vec![c(target)]);
    }
    let total = 4 * n + 2;
    let graph = EmbeddedGraph {
        vertices: vec![1],
        edges: (1..=total as u32).map(|id| Edge { id, tail: 1, head: 1 }).collect(),
        peripheral: (1..=2 * n).map(|j| kn_circle(n, j)).collect(),
    };
    CheckedMap::new(GraphMap {
        graph,
        vertex_image: BTreeMap::from([(1, 1)]),
        edge_image: img,
    })
}

/// Letters of `g^k(e)` for `k = 1..=steps`, orientation-blind.
fn letter_orbit(map: &GraphMap, edge: u32, steps: usize) -> Vec<BTreeSet<u32>> {
    let mut cur: BTreeSet<u32> = BTreeSet::from([edge]);
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        cur = cur
            .iter()
            .flat_map(|&x| map.image_ref(x).iter().map(|y| y.unsigned_abs()))
            .collect();
        out.push(cur.clone());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralChecks {
    /// `g(e_n)` traverses every real edge.
    pub en_image_covers_real: bool,
    /// For each real edge, the least `k <= 2n+2` with `e_n` in `g^k(e)`.
    pub reach_en: Vec<(u32, Option<usize>)>,
}

impl StructuralChecks {
    pub fn hold(&self) -> bool {
        self.en_image_covers_real && self.reach_en.iter().all(|(_, k)| k.is_some())
    }
}

pub fn kn_structural_checks(map: &CheckedMap, n: usize) -> StructuralChecks {
    let en = kn_real(n);
    let image: BTreeSet<u32> = map.map.image_ref(en).iter().map(|x| x.unsigned_abs()).collect();
    let en_image_covers_real = map.real_edges().iter().all(|e| image.contains(e));
    let reach_en = map
        .real_edges()
        .iter()
        .map(|&e| {
            let k = letter_orbit(&map.map, e, 2 * n + 2)
                .iter()
                .position(|s| s.contains(&en))
                .map(|i| i + 1);
            (e, k)
        })
        .collect();
    StructuralChecks {
        en_image_covers_real,
        reach_en,
    }
}
