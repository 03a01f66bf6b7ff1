//! Random spec generators and automaton-free oracles shared by the
//! acceptance suites. Everything here works on raw symbols and expression
//! trees, never on the library's automata.

#![allow(dead_code)]

use gr1w_core::{BoolExpr, Gr1Spec, Gr1Unit, Side, Symbol, UnitKind, VarTable};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const NAMES: [&str; 3] = ["a", "b", "c"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vars(n: usize) -> VarTable {
    VarTable::new(NAMES[..n].iter().copied()).unwrap()
}

pub fn random_expr(rng: &mut ChaCha8Rng, n: usize, next: bool, depth: u32) -> BoolExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        if rng.gen_ratio(1, 12) {
            return BoolExpr::Const(rng.gen());
        }
        let v = rng.gen_range(0..n);
        return if next && rng.gen_bool(0.5) {
            BoolExpr::NextVar(v)
        } else {
            BoolExpr::Var(v)
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_expr(rng, n, next, depth - 1);
    match rng.gen_range(0..5) {
        0 => sub(rng).negate(),
        1 => sub(rng).and(sub(rng)),
        2 => sub(rng).or(sub(rng)),
        3 => sub(rng).implies(sub(rng)),
        _ => sub(rng).iff(sub(rng)),
    }
}

/// Shape knobs for [`random_spec`].
#[derive(Clone, Copy)]
pub struct Shape {
    pub init: bool,
    pub max_invs: usize,
    pub max_fairs: usize,
}

pub fn random_units(rng: &mut ChaCha8Rng, n: usize, shape: Shape) -> Vec<Gr1Unit> {
    let mut units = Vec::new();
    if shape.init && rng.gen_bool(0.5) {
        units.push(unit(UnitKind::Init, random_expr(rng, n, false, 2)));
    }
    for _ in 0..rng.gen_range(0..=shape.max_invs) {
        units.push(unit(UnitKind::Inv, random_expr(rng, n, true, 3)));
    }
    for _ in 0..rng.gen_range(0..=shape.max_fairs) {
        units.push(unit(UnitKind::Fair, random_expr(rng, n, false, 2)));
    }
    units
}

pub fn random_spec(rng: &mut ChaCha8Rng, n: usize, shape: Shape) -> Gr1Spec {
    let units = random_units(rng, n, shape);
    Gr1Spec::new(vars(n), units).unwrap()
}

pub fn unit(kind: UnitKind, expr: BoolExpr) -> Gr1Unit {
    Gr1Unit::new(kind, Side::Env, expr).unwrap()
}

pub fn spec(n: usize, units: Vec<Gr1Unit>) -> Gr1Spec {
    Gr1Spec::new(vars(n), units).unwrap()
}

/// Hand-written evaluator, independent of the library's compiled form.
pub fn holds(e: &BoolExpr, cur: u32, nxt: u32) -> bool {
    match e {
        BoolExpr::Const(b) => *b,
        BoolExpr::Var(v) => cur >> v & 1 == 1,
        BoolExpr::NextVar(v) => nxt >> v & 1 == 1,
        BoolExpr::Not(x) => !holds(x, cur, nxt),
        BoolExpr::And(l, r) => holds(l, cur, nxt) && holds(r, cur, nxt),
        BoolExpr::Or(l, r) => holds(l, cur, nxt) || holds(r, cur, nxt),
        BoolExpr::Implies(l, r) => !holds(l, cur, nxt) || holds(r, cur, nxt),
        BoolExpr::Iff(l, r) => holds(l, cur, nxt) == holds(r, cur, nxt),
    }
}

/// A spec flattened to its three ingredients.
pub struct Semantics {
    pub n: usize,
    pub init: Vec<BoolExpr>,
    pub inv: Vec<BoolExpr>,
    pub fair: Vec<BoolExpr>,
}

impl Semantics {
    pub fn of(spec: &Gr1Spec) -> Self {
        let mut s = Semantics {
            n: spec.vars().len(),
            init: vec![],
            inv: vec![],
            fair: vec![],
        };
        for u in spec.units() {
            let list = match u.kind {
                UnitKind::Init => &mut s.init,
                UnitKind::Inv => &mut s.inv,
                UnitKind::Fair => &mut s.fair,
            };
            list.push(u.expr.clone());
        }
        s
    }

    pub fn symbols(&self) -> u32 {
        1 << self.n
    }

    pub fn init_ok(&self, s: u32) -> bool {
        self.init.iter().all(|e| holds(e, s, s))
    }

    pub fn step_ok(&self, s: u32, t: u32) -> bool {
        self.inv.iter().all(|e| holds(e, s, t))
    }

    pub fn fair_ok(&self, cycle: &[u32]) -> bool {
        self.fair
            .iter()
            .all(|e| cycle.iter().any(|&s| holds(e, s, s)))
    }

    fn cycle_ok(&self, cycle: &[u32]) -> bool {
        (0..cycle.len()).all(|i| self.step_ok(cycle[i], cycle[(i + 1) % cycle.len()]))
    }

    /// Membership of `stem · cycle^ω`.
    pub fn accepts(&self, stem: &[u32], cycle: &[u32]) -> bool {
        if cycle.is_empty() {
            return false;
        }
        let first = stem.first().copied().unwrap_or(cycle[0]);
        let path_ok = stem
            .iter()
            .chain(cycle.first())
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| self.step_ok(*w[0], *w[1]));
        self.init_ok(first) && path_ok && self.cycle_ok(cycle) && self.fair_ok(cycle)
    }

    pub fn accepts_symbols(&self, stem: &[Symbol], cycle: &[Symbol]) -> bool {
        let s: Vec<u32> = stem.iter().map(|x| x.0).collect();
        let c: Vec<u32> = cycle.iter().map(|x| x.0).collect();
        self.accepts(&s, &c)
    }

    /// Symbols that start some infinite `inv`-respecting word.
    pub fn live(&self) -> Vec<bool> {
        let r = self.symbols();
        let mut live = vec![true; r as usize];
        loop {
            let mut changed = false;
            for s in 0..r {
                if live[s as usize] && !(0..r).any(|t| live[t as usize] && self.step_ok(s, t)) {
                    live[s as usize] = false;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    /// `log_r |A_n|`/n for the prefixes of the closed language `init ∧ G inv`,
    /// by dynamic programming over symbols. `None` when the language is empty.
    pub fn prefix_entropy(&self, n: usize) -> Option<f64> {
        let r = self.symbols() as usize;
        let live = self.live();
        let mut counts: Vec<f64> = (0..r)
            .map(|s| {
                if live[s] && self.init_ok(s as u32) {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        let mut log_scale = 0.0f64;
        for _ in 1..n {
            let mut next = vec![0.0; r];
            for s in 0..r {
                if counts[s] == 0.0 {
                    continue;
                }
                for t in 0..r {
                    if live[t] && self.step_ok(s as u32, t as u32) {
                        next[t] += counts[s];
                    }
                }
            }
            let total: f64 = next.iter().sum();
            if total == 0.0 {
                return None;
            }
            log_scale += total.log2();
            counts = next.iter().map(|c| c / total).collect();
        }
        let first: f64 = counts.iter().sum();
        if first == 0.0 {
            return None;
        }
        Some((log_scale + first.log2()) / (n as f64 * self.n as f64))
    }

    /// Whether any word satisfies the spec, decided by lasso enumeration.
    pub fn nonempty(&self, max_stem: usize, max_cycle: usize) -> bool {
        let cycles = all_cycles(self.symbols(), max_cycle);
        let stems = all_words(self.symbols(), max_stem);
        cycles
            .iter()
            .any(|c| stems.iter().any(|s| self.accepts(s, c)))
    }
}

/// Every word over `r` symbols of length `0..=max`.
pub fn all_words(r: u32, max: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..r {
                let mut x: Vec<u32> = w.clone();
                x.push(s);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every non-empty word of length `1..=max`.
pub fn all_cycles(r: u32, max: usize) -> Vec<Vec<u32>> {
    all_words(r, max)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect()
}

/// Exhaustive lasso search for a word of `L(a) \ L(b)` with stems up to
/// `max_stem` and cycles up to `max_cycle`. The cycle only meets the stem
/// through its first symbol, so cycles are summarised per first symbol and
/// every stem is checked against every summary; this covers exactly the same
/// set of lassos as the nested enumeration.
pub fn lasso_counterexample(
    a: &Semantics,
    b: &Semantics,
    max_stem: usize,
    max_cycle: usize,
) -> Option<(Vec<u32>, Vec<u32>)> {
    let r = a.symbols();
    // Per first symbol: a cycle in L(a)'s loop part, split by whether b also
    // accepts it as a loop.
    let mut in_both: Vec<Option<Vec<u32>>> = vec![None; r as usize];
    let mut a_only: Vec<Option<Vec<u32>>> = vec![None; r as usize];
    for c in all_cycles(r, max_cycle) {
        if !(a.cycle_ok(&c) && a.fair_ok(&c)) {
            continue;
        }
        let slot = if b.cycle_ok(&c) && b.fair_ok(&c) {
            &mut in_both[c[0] as usize]
        } else {
            &mut a_only[c[0] as usize]
        };
        if slot.is_none() {
            *slot = Some(c);
        }
    }
    let prefix_ok = |sem: &Semantics, stem: &[u32]| {
        sem.init_ok(stem[0]) && stem.windows(2).all(|w| sem.step_ok(w[0], w[1]))
    };
    for stem in all_words(r, max_stem) {
        let b_prefix = stem.is_empty() || prefix_ok(b, &stem);
        if !stem.is_empty() && !prefix_ok(a, &stem) {
            continue;
        }
        for s in 0..r {
            let (a_join, b_join) = match stem.last() {
                None => (a.init_ok(s), b.init_ok(s)),
                Some(&l) => (a.step_ok(l, s), b_prefix && b.step_ok(l, s)),
            };
            if !a_join {
                continue;
            }
            let pick = if b_join {
                a_only[s as usize].as_ref()
            } else {
                a_only[s as usize].as_ref().or(in_both[s as usize].as_ref())
            };
            if let Some(cycle) = pick {
                return Some((stem, cycle.clone()));
            }
        }
    }
    None
}

/// Strongly connected with at least one edge, by brute-force reachability
/// over the live symbols of `G inv`.
pub fn live_graph_strongly_connected(sem: &Semantics) -> bool {
    let r = sem.symbols() as usize;
    let live = sem.live();
    let nodes: Vec<usize> = (0..r).filter(|&s| live[s]).collect();
    if nodes.is_empty() {
        return false;
    }
    let reach = |from: usize| {
        let mut seen = vec![false; r];
        let mut stack = vec![from];
        while let Some(s) = stack.pop() {
            for t in 0..r {
                if live[t] && !seen[t] && sem.step_ok(s as u32, t as u32) {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    };
    nodes.iter().all(|&s| {
        let seen = reach(s);
        nodes.iter().all(|&t| seen[t])
    })
}
