//! Exact language inclusion between GR(1) conjunctions.
//!
//! `L(φ1) ⊆ L(φ2)` iff `φ1 ∧ ¬φ2` is empty, and `¬φ2` splits into
//! `¬init2 ∨ F ¬inv2 ∨ ⋁_j FG ¬B2_j`. Each disjunct is decided directly on the
//! labelled automaton of `φ1`:
//!
//! * `¬init2`: an initial symbol violating `init2` from which an accepting
//!   SCC of `φ1` is reachable;
//! * `F ¬inv2`: an edge `q_σ → q_τ` with `(σ, τ)` violating `inv2` and an
//!   accepting SCC reachable from `q_τ`;
//! * `FG ¬B2_j`: an SCC of the subgraph labelled `¬B2_j` that meets every
//!   fairness set of `φ1`.
//!
//! An SCC is accepting when it is non-trivial and meets every fairness set.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{restrict, scc, LabeledAutomaton, StateId};
use crate::dimension::{compare_weakness, spec_automaton, weakness, Settings, WeaknessOrder};
use crate::error::{Error, Result};
use crate::expr::{Symbol, VarTable};
use crate::spec::{Gr1Spec, SideSelection};

/// Ultimately periodic word `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lasso {
    pub stem: Vec<Symbol>,
    pub cycle: Vec<Symbol>,
}

impl Lasso {
    /// Every consecutive pair of the infinite word, each listed once.
    fn pairs(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        let word: Vec<Symbol> = self
            .stem
            .iter()
            .chain(&self.cycle)
            .copied()
            .chain(self.cycle.first().copied())
            .collect();
        (0..word.len().saturating_sub(1)).map(move |i| (word[i], word[i + 1]))
    }

    /// Whether the word satisfies the selected units of `spec`.
    pub fn satisfies(&self, spec: &Gr1Spec, side: SideSelection) -> bool {
        let Some(&first) = self.stem.first().or(self.cycle.first()) else {
            return false;
        };
        let n = spec.select(side).normalize();
        n.init.eval_pair(first, first)
            && self.pairs().all(|(s, t)| n.inv.eval_pair(s, t))
            && n.fairs
                .iter()
                .all(|f| self.cycle.iter().any(|&s| f.eval_pair(s, s)))
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> DisplayLasso<'a> {
        DisplayLasso { lasso: self, vars }
    }
}

pub struct DisplayLasso<'a> {
    lasso: &'a Lasso,
    vars: &'a VarTable,
}

impl fmt::Display for DisplayLasso<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.lasso.stem {
            write!(f, "{}", self.vars.format_symbol(s))?;
        }
        write!(f, "(")?;
        for &s in &self.lasso.cycle {
            write!(f, "{}", self.vars.format_symbol(s))?;
        }
        write!(f, ")^w")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionVerdict {
    pub holds: bool,
    /// A word of `L(φ1) \ L(φ2)` when inclusion fails.
    pub witness: Option<Lasso>,
}

struct Search<'a> {
    a: &'a LabeledAutomaton,
    fair_count: usize,
}

impl<'a> Search<'a> {
    /// Shortest path (inclusive at both ends) from any of `sources` to a state
    /// satisfying `target`, moving only through `allowed` states.
    fn shortest_path(
        &self,
        sources: &[StateId],
        allowed: &dyn Fn(StateId) -> bool,
        target: &dyn Fn(StateId) -> bool,
    ) -> Option<Vec<StateId>> {
        let n = self.a.num_states();
        let mut parent = vec![StateId::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if allowed(s) && !seen[s as usize] {
                seen[s as usize] = true;
                queue.push_back(s);
            }
        }
        while let Some(q) = queue.pop_front() {
            if target(q) {
                let mut path = vec![q];
                let mut cur = q;
                while parent[cur as usize] != StateId::MAX {
                    cur = parent[cur as usize];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &t in self.a.successors(q) {
                if allowed(t) && !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = q;
                    queue.push_back(t);
                }
            }
        }
        None
    }

    fn entry_target(&self, region: &[bool], q: StateId) -> bool {
        region[q as usize] && (self.fair_count == 0 || self.a.in_fair_set(0, q))
    }

    /// Cycle from `entry` inside `region` visiting one state of each fairness
    /// set in declaration order, then returning to `entry` in at least one step.
    fn cycle_through(&self, region: &[bool], entry: StateId) -> Vec<StateId> {
        let inside = |q: StateId| region[q as usize];
        let mut cycle = vec![entry];
        let mut cur = entry;
        for i in 0..self.fair_count {
            let leg = self
                .shortest_path(&[cur], &inside, &|q| self.a.in_fair_set(i, q))
                .expect("accepting component misses a fairness set");
            cycle.extend_from_slice(&leg[1..]);
            cur = *cycle.last().unwrap();
        }
        let succ: Vec<StateId> = self
            .a
            .successors(cur)
            .iter()
            .copied()
            .filter(|&t| inside(t))
            .collect();
        let back = self
            .shortest_path(&succ, &inside, &|q| q == entry)
            .expect("component is not strongly connected");
        cycle.extend_from_slice(&back[..back.len() - 1]);
        cycle
    }

    /// Lasso whose stem starts with `prefix` (a path of states), continues to
    /// the nearest entry of `region`, and loops inside `region`.
    fn lasso(&self, prefix: &[StateId], region: &[bool]) -> Option<Lasso> {
        let from = *prefix.last()?;
        let all = |_: StateId| true;
        let to_entry = self.shortest_path(&[from], &all, &|q| self.entry_target(region, q))?;
        let entry = *to_entry.last().unwrap();
        let mut stem_states: Vec<StateId> = prefix[..prefix.len() - 1].to_vec();
        stem_states.extend_from_slice(&to_entry[..to_entry.len() - 1]);
        let cycle = self.cycle_through(region, entry);
        Some(Lasso {
            stem: stem_states.iter().map(|&q| self.a.label(q)).collect(),
            cycle: cycle.iter().map(|&q| self.a.label(q)).collect(),
        })
    }
}

/// Decides `L(φ1) ⊆ L(φ2)` over the selected units of both specs.
pub fn implies(
    phi1: &Gr1Spec,
    phi2: &Gr1Spec,
    side: SideSelection,
    settings: &Settings,
) -> Result<InclusionVerdict> {
    phi1.require_same_vars(phi2)?;
    phi2.vars().check_cap(settings.max_vars)?;
    let a = spec_automaton(phi1, side, settings)?;
    let other = phi2.select(side).normalize();
    let fair_count = a.fairness_exprs().len();
    let search = Search { a: &a, fair_count };
    let holds = InclusionVerdict {
        holds: true,
        witness: None,
    };
    let fails = |w: Option<Lasso>| -> Result<InclusionVerdict> {
        let w = w.ok_or(Error::Precondition("witness construction failed"))?;
        Ok(InclusionVerdict {
            holds: false,
            witness: Some(w),
        })
    };

    let d = scc(&a);
    let accepting: Vec<bool> = (0..d.len())
        .map(|c| {
            !d.is_trivial[c]
                && (0..fair_count).all(|i| d.components[c].iter().any(|&q| a.in_fair_set(i, q)))
        })
        .collect();
    let in_accepting: Vec<bool> = (0..a.num_states())
        .map(|q| accepting[d.component_of[q]])
        .collect();
    if !in_accepting.iter().any(|&x| x) {
        return Ok(holds);
    }
    let pred = a.predecessors();
    let mut live = in_accepting.clone();
    let mut queue: VecDeque<StateId> = (0..a.num_states() as StateId)
        .filter(|&q| live[q as usize])
        .collect();
    while let Some(q) = queue.pop_front() {
        for &p in &pred[q as usize] {
            if !live[p as usize] {
                live[p as usize] = true;
                queue.push_back(p);
            }
        }
    }

    // ¬init2
    let init2 = other.init.compile();
    for &q in a.initial_states() {
        let s = a.label(q);
        if live[q as usize] && !init2.eval(s, s) {
            return fails(search.lasso(&[q], &in_accepting));
        }
    }

    // F ¬inv2
    let inv2 = other.inv.compile();
    for q in 0..a.num_states() as StateId {
        for &t in a.successors(q) {
            if live[t as usize] && !inv2.eval(a.label(q), a.label(t)) {
                let all = |_: StateId| true;
                let mut prefix = search
                    .shortest_path(a.initial_states(), &all, &|x| x == q)
                    .expect("pruned automaton has an unreachable state");
                prefix.push(t);
                return fails(search.lasso(&prefix, &in_accepting));
            }
        }
    }

    // FG ¬B2_j
    for fair in &other.fairs {
        let f = fair.compile();
        let sub = restrict(&a, |s| !f.eval(s, s));
        let sd = scc(&sub);
        for (c, comp) in sd.components.iter().enumerate() {
            let meets_all = (0..fair_count).all(|i| comp.iter().any(|&q| sub.in_fair_set(i, q)));
            if sd.is_trivial[c] || !meets_all {
                continue;
            }
            let mut region = vec![false; a.num_states()];
            for &q in comp {
                let full = a.state_of(sub.label(q)).expect("restriction keeps labels");
                region[full as usize] = true;
            }
            let all = |_: StateId| true;
            let to_entry = search
                .shortest_path(a.initial_states(), &all, &|q| {
                    search.entry_target(&region, q)
                })
                .expect("pruned automaton has an unreachable state");
            return fails(search.lasso(&to_entry, &region));
        }
    }

    Ok(holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrictOrder {
    StrictImplies,
    StrictImpliedBy,
    Equivalent,
    Incomparable,
}

impl StrictOrder {
    pub fn from_verdicts(forward: bool, backward: bool) -> Self {
        match (forward, backward) {
            (true, true) => StrictOrder::Equivalent,
            (true, false) => StrictOrder::StrictImplies,
            (false, true) => StrictOrder::StrictImpliedBy,
            (false, false) => StrictOrder::Incomparable,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(
            self,
            StrictOrder::StrictImplies | StrictOrder::StrictImpliedBy
        )
    }
}

pub fn strict_order(
    phi1: &Gr1Spec,
    phi2: &Gr1Spec,
    side: SideSelection,
    settings: &Settings,
) -> Result<StrictOrder> {
    let forward = implies(phi1, phi2, side, settings)?.holds;
    let backward = implies(phi2, phi1, side, settings)?.holds;
    Ok(StrictOrder::from_verdicts(forward, backward))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationStats {
    pub n_specs: usize,
    pub n_pairs: usize,
    /// Percentage of unordered pairs related by strict implication.
    pub pct_impl: f64,
    /// Percentage of unordered pairs whose weakness pairs differ beyond the tolerance.
    pub pct_weak: f64,
}

pub fn discrimination_stats(
    specs: &[Gr1Spec],
    side: SideSelection,
    settings: &Settings,
) -> Result<DiscriminationStats> {
    if specs.len() < 2 {
        return Err(Error::Precondition("at least two specs are needed"));
    }
    for s in &specs[1..] {
        specs[0].require_same_vars(s)?;
    }
    let pairs: Vec<_> = specs
        .iter()
        .map(|s| weakness(s, side, settings))
        .collect::<Result<_>>()?;
    let mut n_pairs = 0usize;
    let mut n_impl = 0usize;
    let mut n_weak = 0usize;
    for i in 0..specs.len() {
        for j in i + 1..specs.len() {
            n_pairs += 1;
            if strict_order(&specs[i], &specs[j], side, settings)?.is_strict() {
                n_impl += 1;
            }
            if compare_weakness(&pairs[i], &pairs[j], settings.tolerance) != WeaknessOrder::Equal {
                n_weak += 1;
            }
        }
    }
    let pct = |k: usize| 100.0 * k as f64 / n_pairs as f64;
    Ok(DiscriminationStats {
        n_specs: specs.len(),
        n_pairs,
        pct_impl: pct(n_impl),
        pct_weak: pct(n_weak),
    })
}
