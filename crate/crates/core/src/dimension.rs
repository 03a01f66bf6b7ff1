//! Entropy and Hausdorff dimension of GR(1) ω-languages.
//!
//! For a language accepted by a deterministic automaton with a Muller table,
//! the dimension is the largest entropy of the closed languages of paths
//! confined to an accepting set. Entropy of a closed language is the base-`r`
//! logarithm of the largest spectral radius among its non-trivial SCCs.
//!
//! GR(1) conjunctions have an upward-closed table (`Q'` is accepting iff it
//! meets every fairness set), and the spectral radius is monotone under
//! subgraph inclusion, so the maximum is always attained at a whole reachable
//! SCC. The table is therefore never enumerated.

use serde::{Deserialize, Serialize};

use crate::automaton::{
    apply_init, build_invariant_automaton, prune, restrict, scc, LabeledAutomaton,
    SccDecomposition, StateId,
};
use crate::error::{Error, Result};
use crate::expr::{BoolExpr, VarTable, DEFAULT_VAR_CAP};
use crate::spec::{Gr1Spec, SideSelection};

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MAX_ITERS: usize = 100_000;
pub const MAX_ITERS_ENV: &str = "GR1W_MAX_ITERS";

/// Relative accuracy of every spectral radius.
pub const RADIUS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub max_vars: usize,
    /// Equality tolerance when comparing weakness pairs.
    pub tolerance: f64,
    /// Power-iteration cap per component.
    pub max_iters: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_vars: DEFAULT_VAR_CAP,
            tolerance: DEFAULT_TOLERANCE,
            max_iters: DEFAULT_MAX_ITERS,
        }
    }
}

impl Settings {
    /// Defaults, with the iteration cap taken from `GR1W_MAX_ITERS` when set.
    pub fn from_env() -> Self {
        let max_iters = std::env::var(MAX_ITERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_ITERS);
        Settings {
            max_iters,
            ..Settings::default()
        }
    }
}

/// Square nonnegative integer matrix in row-major sparse form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: Vec<Vec<(u32, u32)>>,
}

impl SparseMatrix {
    /// `rows[i]` lists `(column, weight)` pairs. Panics on an out-of-range column.
    pub fn from_rows(rows: Vec<Vec<(u32, u32)>>) -> Self {
        let n = rows.len() as u32;
        assert!(
            rows.iter().flatten().all(|&(c, _)| c < n),
            "column index out of range"
        );
        SparseMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adjacency matrix of the subgraph of `a` induced by `states`.
    pub fn induced(a: &LabeledAutomaton, states: &[StateId]) -> Self {
        let mut local = std::collections::HashMap::with_capacity(states.len());
        for (i, &q) in states.iter().enumerate() {
            local.insert(q, i as u32);
        }
        let rows = states
            .iter()
            .map(|&q| {
                a.successors(q)
                    .iter()
                    .filter_map(|t| local.get(t).map(|&j| (j, 1)))
                    .collect()
            })
            .collect();
        SparseMatrix { rows }
    }
}

/// Perron root of an irreducible nonnegative matrix.
///
/// Power iteration on `A + I` from the all-ones vector. The shift makes a
/// periodic irreducible matrix primitive without moving the Perron root by
/// anything but 1. Each step brackets the root between the smallest and
/// largest Collatz–Wielandt ratio `((A+I)x)_i / x_i`; iteration stops once
/// the bracket is within [`RADIUS_TOLERANCE`] relative to `ρ(A)`. Matrices
/// with constant row sums therefore converge exactly on the first step.
pub fn spectral_radius(m: &SparseMatrix, max_iters: usize) -> Result<f64> {
    let n = m.dim();
    if n == 0 {
        return Ok(0.0);
    }
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iters.max(1) {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        let mut top = 0.0f64;
        for (i, row) in m.rows.iter().enumerate() {
            let v = x[i]
                + row
                    .iter()
                    .map(|&(j, w)| w as f64 * x[j as usize])
                    .sum::<f64>();
            y[i] = v;
            let ratio = v / x[i];
            lo = lo.min(ratio);
            hi = hi.max(ratio);
            top = top.max(v);
        }
        residual = hi - lo;
        let rho = hi - 1.0;
        if residual <= RADIUS_TOLERANCE * rho.max(f64::MIN_POSITIVE) {
            return Ok((lo + hi) / 2.0 - 1.0);
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / top;
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iters,
        residual,
    })
}

/// A dimension or entropy value in `[0, 1]`, base `r = 2^alphabet_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dimension {
    pub value: f64,
    /// No infinite path contributes: the measured language is empty.
    pub empty: bool,
    pub alphabet_bits: usize,
}

pub type Entropy = Dimension;

impl Dimension {
    fn empty(alphabet_bits: usize) -> Self {
        Dimension {
            value: 0.0,
            empty: true,
            alphabet_bits,
        }
    }

    fn from_radius(rho: f64, alphabet_bits: usize) -> Self {
        Dimension {
            value: log_alphabet(rho, alphabet_bits),
            empty: false,
            alphabet_bits,
        }
    }
}

/// `log_r(x)` with `r = 2^bits`. A one-letter alphabet admits a single
/// ω-word, whose dimension is taken as 0.
fn log_alphabet(x: f64, bits: usize) -> f64 {
    if bits == 0 {
        0.0
    } else {
        (x.log2() / bits as f64).clamp(0.0, 1.0)
    }
}

/// Largest spectral radius over the live components accepted by `accept`.
fn max_component_radius(
    a: &LabeledAutomaton,
    decomposition: &SccDecomposition,
    accept: impl Fn(&[StateId]) -> bool,
    settings: &Settings,
) -> Result<Option<f64>> {
    let mut best: Option<f64> = None;
    for c in decomposition.live() {
        let comp = &decomposition.components[c];
        if !accept(comp) {
            continue;
        }
        let rho = spectral_radius(&SparseMatrix::induced(a, comp), settings.max_iters)?;
        best = Some(best.map_or(rho, |b| b.max(rho)));
    }
    Ok(best)
}

fn meets_all_fair_sets(a: &LabeledAutomaton, comp: &[StateId]) -> bool {
    (0..a.fairness_exprs().len()).all(|i| comp.iter().any(|&q| a.in_fair_set(i, q)))
}

/// Entropy of the closed language of `a` (every state accepting).
pub fn entropy_closed(a: &LabeledAutomaton, settings: &Settings) -> Result<Entropy> {
    let d = scc(a);
    Ok(match max_component_radius(a, &d, |_| true, settings)? {
        Some(rho) => Dimension::from_radius(rho, a.num_vars()),
        None => Dimension::empty(a.num_vars()),
    })
}

/// Automaton of `init ∧ G inv` for the selected units, fairness sets attached, pruned.
pub fn spec_automaton(
    spec: &Gr1Spec,
    side: SideSelection,
    settings: &Settings,
) -> Result<LabeledAutomaton> {
    let n = spec.select(side).normalize();
    let a = build_invariant_automaton(spec.vars(), &n.inv, &n.fairs, settings.max_vars)?;
    apply_init(&a, &n.init)
}

fn d1_of(a: &LabeledAutomaton, d: &SccDecomposition, settings: &Settings) -> Result<Dimension> {
    Ok(
        match max_component_radius(a, d, |c| meets_all_fair_sets(a, c), settings)? {
            Some(rho) => Dimension::from_radius(rho, a.num_vars()),
            None => Dimension::empty(a.num_vars()),
        },
    )
}

/// Dimension of `init ∧ G inv ∧ G ¬B_i`: the automaton restricted to states
/// labelled `¬B_i`, whose initial states are then those satisfying both
/// `init` and `¬B_i`, pruned and measured as a closed language.
fn d2_single(a: &LabeledAutomaton, i: usize, settings: &Settings) -> Result<f64> {
    let fair = a.fairness_exprs()[i].compile();
    let sub = prune(&restrict(a, |s| !fair.eval(s, s)));
    Ok(entropy_closed(&sub, settings)?.value)
}

fn d2_of(a: &LabeledAutomaton, settings: &Settings) -> Result<f64> {
    let mut best = 0.0f64;
    for i in 0..a.fairness_exprs().len() {
        best = best.max(d2_single(a, i, settings)?);
    }
    Ok(best)
}

/// Hausdorff dimension of the selected conjunction.
pub fn d1(spec: &Gr1Spec, side: SideSelection, settings: &Settings) -> Result<Dimension> {
    let a = spec_automaton(spec, side, settings)?;
    d1_of(&a, &scc(&a), settings)
}

/// Dimension of the language the fairness conditions cut out of `init ∧ G inv`:
/// the maximum over conditions of the dimension of `init ∧ G inv ∧ FG ¬B_i`.
/// Zero when there are no fairness conditions.
pub fn d2(spec: &Gr1Spec, side: SideSelection, settings: &Settings) -> Result<f64> {
    let a = spec_automaton(spec, side, settings)?;
    d2_of(&a, settings)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeaknessPair {
    pub d1: f64,
    pub d2: f64,
    pub empty: bool,
    /// Number of fairness conditions behind `d2`.
    pub fairness_count: usize,
}

/// Weakness pair together with the size of the automaton it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub pair: WeaknessPair,
    pub states: usize,
    pub edges: usize,
    pub sccs: usize,
}

pub fn analyze(spec: &Gr1Spec, side: SideSelection, settings: &Settings) -> Result<Analysis> {
    let a = spec_automaton(spec, side, settings)?;
    let d = scc(&a);
    let dim = d1_of(&a, &d, settings)?;
    let fairness_count = a.fairness_exprs().len();
    let pair = if dim.empty {
        WeaknessPair {
            d1: 0.0,
            d2: 0.0,
            empty: true,
            fairness_count,
        }
    } else {
        WeaknessPair {
            d1: dim.value,
            d2: d2_of(&a, settings)?,
            empty: false,
            fairness_count,
        }
    };
    Ok(Analysis {
        pair,
        states: a.num_states(),
        edges: a.num_edges(),
        sccs: d.len(),
    })
}

/// `(d1, d2)` of the selected conjunction. An empty language reports `(0, 0)`.
pub fn weakness(spec: &Gr1Spec, side: SideSelection, settings: &Settings) -> Result<WeaknessPair> {
    Ok(analyze(spec, side, settings)?.pair)
}

/// Closed form for `G B` with next-free `B`: `log_r #B`.
pub fn one_state_dim(b: &BoolExpr, vars: &VarTable) -> Result<Dimension> {
    let count = b.count_sat_single(vars)?;
    Ok(if count == 0 {
        Dimension::empty(vars.len())
    } else {
        Dimension::from_radius(count as f64, vars.len())
    })
}

/// Outcome of comparing the first pair against the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeaknessOrder {
    StrictlyWeaker,
    StrictlyStronger,
    Equal,
    Incomparable,
}

impl WeaknessOrder {
    pub fn reverse(self) -> Self {
        match self {
            WeaknessOrder::StrictlyWeaker => WeaknessOrder::StrictlyStronger,
            WeaknessOrder::StrictlyStronger => WeaknessOrder::StrictlyWeaker,
            other => other,
        }
    }
}

/// Higher `d1` is weaker; on equal `d1`, lower `d2` is weaker. Values within
/// `eps` count as equal. An empty language is only comparable to another
/// empty language.
pub fn compare_weakness(p: &WeaknessPair, q: &WeaknessPair, eps: f64) -> WeaknessOrder {
    let values = [p.d1, p.d2, q.d1, q.d2];
    if values.iter().any(|v| v.is_nan()) {
        return WeaknessOrder::Incomparable;
    }
    match (p.empty, q.empty) {
        (true, true) => return WeaknessOrder::Equal,
        (true, false) | (false, true) => return WeaknessOrder::Incomparable,
        _ => {}
    }
    if (p.d1 - q.d1).abs() > eps {
        return if p.d1 < q.d1 {
            WeaknessOrder::StrictlyStronger
        } else {
            WeaknessOrder::StrictlyWeaker
        };
    }
    if (p.d2 - q.d2).abs() > eps {
        return if p.d2 > q.d2 {
            WeaknessOrder::StrictlyStronger
        } else {
            WeaknessOrder::StrictlyWeaker
        };
    }
    WeaknessOrder::Equal
}
