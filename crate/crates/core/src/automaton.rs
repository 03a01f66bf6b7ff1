//! Explicit-state labelled automata for conjunctions of GR(1) invariants.
//!
//! Every non-initial state remembers the last symbol read: state `q` carries a
//! distinct label `λ(q)`, and the edge `q_σ → q_τ` exists iff the pair `(σ, τ)`
//! satisfies the invariant. The initial state `q0` is implicit; its successors
//! are listed in `initial`. Fairness expressions are kept alongside so the
//! per-state membership sets can be recomputed after every transformation.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::expr::{BoolExpr, Symbol, VarTable};

pub type StateId = u32;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledAutomaton {
    num_vars: usize,
    /// Ascending, so lookup by symbol is a binary search.
    labels: Vec<Symbol>,
    succ: Vec<Vec<StateId>>,
    initial: Vec<StateId>,
    fairs: Vec<BoolExpr>,
    fair_sets: Vec<Vec<bool>>,
}

impl LabeledAutomaton {
    /// The automaton with no states, accepting nothing.
    pub fn empty(num_vars: usize, fairs: Vec<BoolExpr>) -> Self {
        LabeledAutomaton {
            num_vars,
            labels: Vec::new(),
            succ: Vec::new(),
            initial: Vec::new(),
            fair_sets: vec![Vec::new(); fairs.len()],
            fairs,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, q: StateId) -> Symbol {
        self.labels[q as usize]
    }

    pub fn labels(&self) -> &[Symbol] {
        &self.labels
    }

    pub fn successors(&self, q: StateId) -> &[StateId] {
        &self.succ[q as usize]
    }

    pub fn has_edge(&self, from: StateId, to: StateId) -> bool {
        self.succ[from as usize].binary_search(&to).is_ok()
    }

    pub fn initial_states(&self) -> &[StateId] {
        &self.initial
    }

    /// Symbols enabled from `q0`.
    pub fn initial_symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.initial.iter().map(|&q| self.labels[q as usize])
    }

    pub fn state_of(&self, sym: Symbol) -> Option<StateId> {
        self.labels.binary_search(&sym).ok().map(|i| i as StateId)
    }

    pub fn fairness_exprs(&self) -> &[BoolExpr] {
        &self.fairs
    }

    /// `fair_sets()[i][q]` is true iff `λ(q)` satisfies fairness expression `i`.
    pub fn fair_sets(&self) -> &[Vec<bool>] {
        &self.fair_sets
    }

    pub fn in_fair_set(&self, i: usize, q: StateId) -> bool {
        self.fair_sets[i][q as usize]
    }

    fn from_symbol_graph(
        num_vars: usize,
        labels: Vec<Symbol>,
        succ_syms: Vec<Vec<Symbol>>,
        initial_syms: Vec<Symbol>,
        fairs: Vec<BoolExpr>,
    ) -> Self {
        let index = |s: &Symbol| labels.binary_search(s).expect("edge to unknown label") as StateId;
        let succ = succ_syms
            .iter()
            .map(|targets| targets.iter().map(index).collect())
            .collect();
        let initial = initial_syms.iter().map(index).collect();
        let mut a = LabeledAutomaton {
            num_vars,
            labels,
            succ,
            initial,
            fairs,
            fair_sets: Vec::new(),
        };
        a.refresh_fair_sets();
        a
    }

    fn refresh_fair_sets(&mut self) {
        self.fair_sets = self
            .fairs
            .iter()
            .map(|f| {
                let c = f.compile();
                self.labels.iter().map(|&s| c.eval(s, s)).collect()
            })
            .collect();
    }

    /// Subautomaton on the states flagged in `keep`, with the initial edges
    /// further filtered by `keep_initial`. Indices are renumbered in label order.
    fn induced(&self, keep: &[bool], keep_initial: impl Fn(StateId) -> bool) -> Self {
        let mut remap = vec![StateId::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (q, &k) in keep.iter().enumerate() {
            if k {
                remap[q] = labels.len() as StateId;
                labels.push(self.labels[q]);
            }
        }
        let succ = (0..self.labels.len())
            .filter(|&q| keep[q])
            .map(|q| {
                self.succ[q]
                    .iter()
                    .filter(|&&t| keep[t as usize])
                    .map(|&t| remap[t as usize])
                    .collect()
            })
            .collect();
        let initial = self
            .initial
            .iter()
            .filter(|&&q| keep[q as usize] && keep_initial(q))
            .map(|&q| remap[q as usize])
            .collect();
        let mut a = LabeledAutomaton {
            num_vars: self.num_vars,
            labels,
            succ,
            initial,
            fairs: self.fairs.clone(),
            fair_sets: Vec::new(),
        };
        a.refresh_fair_sets();
        a
    }

    /// States reachable from `q0`.
    pub fn reachable(&self) -> Vec<bool> {
        self.reachable_from(self.initial.iter().copied())
    }

    pub fn reachable_from(&self, sources: impl IntoIterator<Item = StateId>) -> Vec<bool> {
        let mut seen = vec![false; self.labels.len()];
        let mut queue = VecDeque::new();
        for q in sources {
            if !seen[q as usize] {
                seen[q as usize] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &t in &self.succ[q as usize] {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Predecessor lists, each ascending.
    pub fn predecessors(&self) -> Vec<Vec<StateId>> {
        let mut pred = vec![Vec::new(); self.labels.len()];
        for (q, targets) in self.succ.iter().enumerate() {
            for &t in targets {
                pred[t as usize].push(q as StateId);
            }
        }
        pred
    }

    pub fn to_dot(&self, vars: &VarTable) -> String {
        let mut out = String::from("digraph automaton {\n  q0 [shape=point];\n");
        for (q, &sym) in self.labels.iter().enumerate() {
            let fair: Vec<String> = (0..self.fairs.len())
                .filter(|&i| self.fair_sets[i][q])
                .map(|i| format!("F{}", i + 1))
                .collect();
            let mut label = vars.format_symbol(sym);
            if !fair.is_empty() {
                let _ = write!(label, "\\n{}", fair.join(","));
            }
            let _ = writeln!(out, "  s{} [label=\"{}\"];", sym.0, label);
        }
        for &q in &self.initial {
            let _ = writeln!(out, "  q0 -> s{};", self.labels[q as usize].0);
        }
        for (q, targets) in self.succ.iter().enumerate() {
            for &t in targets {
                let _ = writeln!(
                    out,
                    "  s{} -> s{};",
                    self.labels[q].0, self.labels[t as usize].0
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the labelled automaton of `G inv` over `vars`, attaching `fairs`, and prunes it.
pub fn build_invariant_automaton(
    vars: &VarTable,
    inv: &BoolExpr,
    fairs: &[BoolExpr],
    max_vars: usize,
) -> Result<LabeledAutomaton> {
    vars.check_cap(max_vars)?;
    if fairs.iter().any(BoolExpr::uses_next) {
        return Err(Error::Precondition(
            "fairness expressions must not refer to next-step variables",
        ));
    }
    let n = vars.len();
    let r = vars.alphabet_size();
    let compiled = inv.compile();
    let mut succ_by_sym: Vec<Vec<Symbol>> = Vec::with_capacity(r);
    let mut is_state = vec![false; r];
    for cur in vars.symbols() {
        let targets: Vec<Symbol> = vars
            .symbols()
            .filter(|&nxt| compiled.eval(cur, nxt))
            .collect();
        if !targets.is_empty() {
            is_state[cur.0 as usize] = true;
            for t in &targets {
                is_state[t.0 as usize] = true;
            }
        }
        succ_by_sym.push(targets);
    }
    let labels: Vec<Symbol> = vars.symbols().filter(|s| is_state[s.0 as usize]).collect();
    let initial: Vec<Symbol> = labels
        .iter()
        .copied()
        .filter(|s| !succ_by_sym[s.0 as usize].is_empty())
        .collect();
    let succ: Vec<Vec<Symbol>> = labels
        .iter()
        .map(|s| std::mem::take(&mut succ_by_sym[s.0 as usize]))
        .collect();
    let a = LabeledAutomaton::from_symbol_graph(n, labels, succ, initial, fairs.to_vec());
    Ok(prune(&a))
}

/// Drops initial edges whose symbol violates `init`, then everything no longer reachable.
pub fn apply_init(a: &LabeledAutomaton, init: &BoolExpr) -> Result<LabeledAutomaton> {
    if init.uses_next() {
        return Err(Error::Precondition(
            "initial conditions must not refer to next-step variables",
        ));
    }
    let c = init.compile();
    let all = vec![true; a.num_states()];
    let filtered = a.induced(&all, |q| {
        let s = a.label(q);
        c.eval(s, s)
    });
    Ok(prune(&filtered))
}

/// Removes states without successors and states unreachable from `q0`, to a fixpoint.
pub fn prune(a: &LabeledAutomaton) -> LabeledAutomaton {
    let mut current = a.clone();
    loop {
        let n = current.num_states();
        let mut alive = vec![true; n];
        let mut out_deg: Vec<usize> = current.succ.iter().map(Vec::len).collect();
        let pred = current.predecessors();
        let mut queue: VecDeque<StateId> = (0..n as StateId)
            .filter(|&q| out_deg[q as usize] == 0)
            .collect();
        while let Some(q) = queue.pop_front() {
            if !alive[q as usize] {
                continue;
            }
            alive[q as usize] = false;
            for &p in &pred[q as usize] {
                out_deg[p as usize] -= 1;
                if out_deg[p as usize] == 0 && alive[p as usize] {
                    queue.push_back(p);
                }
            }
        }
        let without_dead = current.induced(&alive, |_| true);
        let reach = without_dead.reachable();
        let next = without_dead.induced(&reach, |_| true);
        if next.num_states() == n {
            return next;
        }
        current = next;
    }
}

/// Subgraph on states whose label satisfies `keep`; no pruning.
pub fn restrict(a: &LabeledAutomaton, keep: impl Fn(Symbol) -> bool) -> LabeledAutomaton {
    let flags: Vec<bool> = a.labels.iter().map(|&s| keep(s)).collect();
    a.induced(&flags, |_| true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Each component's states in ascending order; components in reverse topological order.
    pub components: Vec<Vec<StateId>>,
    /// Singleton without a self-loop: supports no infinite path.
    pub is_trivial: Vec<bool>,
    pub reachable: Vec<bool>,
    pub component_of: Vec<usize>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Indices of components that are non-trivial and reachable from `q0`.
    pub fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.components.len()).filter(|&c| !self.is_trivial[c] && self.reachable[c])
    }
}

/// Tarjan's algorithm, iterative so that 2^16-state graphs cannot overflow the stack.
pub fn scc(a: &LabeledAutomaton) -> SccDecomposition {
    const UNVISITED: u32 = u32::MAX;
    let n = a.num_states();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<StateId> = Vec::new();
    let mut components: Vec<Vec<StateId>> = Vec::new();
    let mut next_index = 0u32;
    // (state, position of the next successor to explore)
    let mut call: Vec<(StateId, usize)> = Vec::new();

    for root in 0..n as StateId {
        if index[root as usize] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = a.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w as usize] == UNVISITED {
                    index[w as usize] = next_index;
                    low[w as usize] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, 0));
                } else if on_stack[w as usize] {
                    low[v as usize] = low[v as usize].min(index[w as usize]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent as usize] = low[parent as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w as usize] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }

    let mut component_of = vec![0usize; n];
    for (c, comp) in components.iter().enumerate() {
        for &q in comp {
            component_of[q as usize] = c;
        }
    }
    let is_trivial = components
        .iter()
        .map(|comp| comp.len() == 1 && !a.has_edge(comp[0], comp[0]))
        .collect();
    let reach = a.reachable();
    let reachable = components
        .iter()
        .map(|comp| reach[comp[0] as usize])
        .collect();
    SccDecomposition {
        components,
        is_trivial,
        reachable,
        component_of,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn vars(names: &[&str]) -> VarTable {
        VarTable::new(names.iter().copied()).unwrap()
    }

    fn build(v: &VarTable, inv: &str) -> LabeledAutomaton {
        build_invariant_automaton(v, &parse_expr(inv, v).unwrap(), &[], 16).unwrap()
    }

    fn succ_labels(a: &LabeledAutomaton, s: u32) -> Vec<u32> {
        let q = a.state_of(Symbol(s)).unwrap();
        a.successors(q).iter().map(|&t| a.label(t).0).collect()
    }

    // bit 0 = a, bit 1 = b
    const E: u32 = 0b00;
    const A: u32 = 0b01;
    const B: u32 = 0b10;
    const AB: u32 = 0b11;

    #[test]
    fn a_implies_next_b() {
        let v = vars(&["a", "b"]);
        let a = build(&v, "a -> next(b)");
        assert_eq!(a.num_states(), 4);
        assert_eq!(succ_labels(&a, A), vec![B, AB]);
        assert_eq!(succ_labels(&a, AB), vec![B, AB]);
        assert_eq!(succ_labels(&a, E), vec![E, A, B, AB]);
        assert_eq!(succ_labels(&a, B), vec![E, A, B, AB]);
        assert_eq!(a.initial_states().len(), 4);
        assert_eq!(a.num_edges(), 12);
    }

    #[test]
    fn stop_and_next_stop_single_state() {
        let v = vars(&["stop"]);
        let a = build(&v, "stop & next(stop)");
        assert_eq!(a.labels(), &[Symbol(1)]);
        assert_eq!(succ_labels(&a, 1), vec![1]);
    }

    #[test]
    fn false_invariant_is_empty() {
        let v = vars(&["a"]);
        let a = build(&v, "false");
        assert!(a.is_empty());
        assert!(scc(&a).is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let v = vars(&["a", "b", "c"]);
        assert_eq!(
            build_invariant_automaton(&v, &BoolExpr::Const(true), &[], 2),
            Err(Error::CapExceeded { vars: 3, cap: 2 })
        );
    }

    #[test]
    fn apply_init_cases() {
        let v = vars(&["a", "b"]);
        let a = build(&v, "a -> next(b)");
        assert_eq!(apply_init(&a, &BoolExpr::Const(true)).unwrap(), a);

        let only_a = apply_init(&a, &parse_expr("a & !b", &v).unwrap()).unwrap();
        let init: Vec<Symbol> = only_a.initial_symbols().collect();
        assert_eq!(init, vec![Symbol(A)]);
        // {a} -> {b} -> {} reaches everything
        assert_eq!(only_a.num_states(), 4);

        assert!(apply_init(&a, &BoolExpr::Const(false)).unwrap().is_empty());
        assert!(apply_init(&a, &BoolExpr::NextVar(0)).is_err());
    }

    #[test]
    fn apply_init_drops_unreachable_states() {
        let v = vars(&["stop"]);
        // {stop} is absorbing; from {} anything goes.
        let a = build(&v, "stop -> next(stop)");
        let from_stop = apply_init(&a, &parse_expr("stop", &v).unwrap()).unwrap();
        assert_eq!(from_stop.labels(), &[Symbol(1)]);
    }

    #[test]
    fn prune_removes_dead_ends_transitively() {
        // Chain {} -> {a} -> {b} -> (nothing), plus a live loop on {a,b}.
        let v = vars(&["a", "b"]);
        let raw = LabeledAutomaton::from_symbol_graph(
            2,
            vec![Symbol(E), Symbol(A), Symbol(B), Symbol(AB)],
            vec![vec![Symbol(A)], vec![Symbol(B)], vec![], vec![Symbol(AB)]],
            vec![Symbol(E), Symbol(AB)],
            vec![],
        );
        let pruned = prune(&raw);
        assert_eq!(pruned.labels(), &[Symbol(AB)]);
        assert_eq!(prune(&pruned), pruned);

        let chain = LabeledAutomaton::from_symbol_graph(
            2,
            vec![Symbol(A), Symbol(B)],
            vec![vec![Symbol(B)], vec![]],
            vec![Symbol(A)],
            vec![],
        );
        assert!(prune(&chain).is_empty());

        let full = build(&v, "true");
        assert_eq!(prune(&full), full);
    }

    #[test]
    fn scc_cases() {
        let v = vars(&["a", "b"]);
        let a = build(&v, "a -> next(b)");
        let d = scc(&a);
        assert_eq!(d.len(), 1);
        assert_eq!(d.components[0].len(), 4);
        assert!(!d.is_trivial[0] && d.reachable[0]);

        let s = vars(&["stop"]);
        let d = scc(&build(&s, "stop -> next(stop)"));
        assert_eq!(d.len(), 2);
        assert!(d.components.iter().all(|c| c.len() == 1));
        assert!(d.is_trivial.iter().all(|t| !t));
    }

    #[test]
    fn scc_marks_trivial_singletons() {
        let raw = LabeledAutomaton::from_symbol_graph(
            1,
            vec![Symbol(0), Symbol(1)],
            vec![vec![Symbol(1)], vec![Symbol(1)]],
            vec![Symbol(0)],
            vec![],
        );
        let d = scc(&raw);
        assert_eq!(d.len(), 2);
        let c0 = d.component_of[raw.state_of(Symbol(0)).unwrap() as usize];
        let c1 = d.component_of[raw.state_of(Symbol(1)).unwrap() as usize];
        assert!(d.is_trivial[c0]);
        assert!(!d.is_trivial[c1]);
        assert_eq!(d.live().collect::<Vec<_>>(), vec![c1]);
    }

    #[test]
    fn restrict_cases() {
        let v = vars(&["a", "b"]);
        let a = build(&v, "a -> next(b)");
        let not_a = restrict(&a, |s| !s.get(0));
        assert_eq!(not_a.labels(), &[Symbol(E), Symbol(B)]);
        assert_eq!(not_a.num_edges(), 4);
        assert_eq!(restrict(&a, |_| true), a);
        assert!(restrict(&a, |_| false).is_empty());
    }

    #[test]
    fn fair_sets_follow_labels() {
        let v = vars(&["a", "b"]);
        let fairs = vec![parse_expr("a", &v).unwrap(), parse_expr("b", &v).unwrap()];
        let a = build_invariant_automaton(&v, &parse_expr("a -> next(b)", &v).unwrap(), &fairs, 16)
            .unwrap();
        for q in 0..a.num_states() as StateId {
            let s = a.label(q);
            assert_eq!(a.in_fair_set(0, q), s.get(0));
            assert_eq!(a.in_fair_set(1, q), s.get(1));
        }
        let r = restrict(&a, |s| s.get(1));
        for q in 0..r.num_states() as StateId {
            assert_eq!(r.in_fair_set(0, q), r.label(q).get(0));
        }
        assert!(
            build_invariant_automaton(&v, &BoolExpr::Const(true), &[BoolExpr::NextVar(0)], 16)
                .is_err()
        );
    }

    #[test]
    fn dot_export_mentions_every_edge() {
        let v = vars(&["a", "b"]);
        let a = build(&v, "a -> next(b)");
        let dot = a.to_dot(&v);
        assert!(dot.starts_with("digraph"));
        assert_eq!(
            dot.matches(" -> s").count(),
            a.num_edges() + a.initial_states().len()
        );
    }
}
