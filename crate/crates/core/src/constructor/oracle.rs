//! Exact maximum covering codes for small parameters.
//!
//! A multiset of `k`-subspaces has every `alpha` members spanning at least
//! `k + delta` dimensions exactly when every `(k + delta - 1)`-subspace
//! contains at most `alpha - 1` of them, counted with multiplicity. The search
//! works on that packing form. For `alpha = 2` it is a maximum clique problem
//! and gets a dedicated colouring bound.

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;

use super::{ConstructError, CoveringCode, CoveringCodeParams};
use crate::gf::{grassmannian, Subspace};
use crate::qcombinatorics::gaussian_binomial;

/// Default limit on the number of candidate subspaces.
pub const DEFAULT_ORACLE_CAP: u64 = 2000;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub size: u64,
    pub witness: CoveringCode,
    /// Search nodes visited.
    pub nodes: u64,
}

/// Largest `alpha-(n, k, delta)_q` covering code, with an optimal witness.
///
/// With `multiset_allowed` a codeword may repeat up to `alpha - 1` times.
/// Both the candidate and the constraint Grassmannians must have at most
/// `cap` elements.
///
/// The automorphism group acts transitively on `k`-subspaces, so the search
/// only considers codes containing the first subspace in enumeration order.
pub fn oracle_max_code(
    p: &CoveringCodeParams,
    multiset_allowed: bool,
    cap: u64,
) -> Result<OracleResult, ConstructError> {
    oracle_max_code_within(p, multiset_allowed, cap, u64::MAX)
}

/// [`oracle_max_code`] that gives up after `max_nodes` search nodes with
/// [`ConstructError::SearchBudget`], reporting the best code size found and
/// the bound proved at the root.
pub fn oracle_max_code_within(
    p: &CoveringCodeParams,
    multiset_allowed: bool,
    cap: u64,
    max_nodes: u64,
) -> Result<OracleResult, ConstructError> {
    p.validate()?;
    let (n, k, wdim) = (p.n, p.k, p.k + p.delta - 1);
    for size in [
        gaussian_binomial(n, k, p.q),
        gaussian_binomial(n, wdim, p.q),
    ] {
        if size > BigUint::from(cap) {
            return Err(ConstructError::TooLarge { size, cap });
        }
    }
    let f = p.field();
    let words: Vec<Subspace> = grassmannian(&f, n as usize, k as usize).collect();
    let wcap = p.alpha - 1;
    let ucap = if multiset_allowed { wcap } else { 1 };

    let (x, nodes) = if wcap == 1 {
        let need = (k + p.delta) as usize;
        let mut adj = vec![FixedBitSet::with_capacity(words.len()); words.len()];
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if words[i].sum_dim(&words[j])? >= need {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        let mut s = Clique::new(adj, max_nodes);
        s.run();
        if s.aborted {
            return Err(ConstructError::SearchBudget {
                nodes: s.nodes,
                best: s.best.len() as u64,
                bound: s.root_bound,
            });
        }
        let mut x = vec![0; words.len()];
        for &v in &s.best {
            x[v] = 1;
        }
        (x, s.nodes)
    } else {
        let spaces: Vec<Subspace> = grassmannian(&f, n as usize, wdim as usize).collect();
        let mut inc = vec![Vec::new(); words.len()];
        for (j, w) in spaces.iter().enumerate() {
            for (i, u) in words.iter().enumerate() {
                if u.is_subspace_of(w)? {
                    inc[i].push(j);
                }
            }
        }
        let mut s = Packing::new(inc, spaces.len(), ucap, wcap, max_nodes);
        s.run();
        if s.aborted {
            return Err(ConstructError::SearchBudget {
                nodes: s.nodes,
                best: s.best,
                bound: s.root_bound,
            });
        }
        (s.best_x, s.nodes)
    };

    let witness = CoveringCode::from_multiset(
        *p,
        words.into_iter().zip(x.iter().copied()).filter(|e| e.1 > 0),
    )?;
    Ok(OracleResult {
        size: witness.len(),
        witness,
        nodes,
    })
}

struct Clique {
    adj: Vec<FixedBitSet>,
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
    root_bound: u64,
}

impl Clique {
    fn new(adj: Vec<FixedBitSet>, max_nodes: u64) -> Self {
        Clique {
            adj,
            current: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            max_nodes,
            aborted: false,
            root_bound: 0,
        }
    }

    fn run(&mut self) {
        if self.adj.is_empty() {
            return;
        }
        self.current.push(0);
        let p = self.adj[0].clone();
        self.root_bound = 1 + self.colour(&p).1.last().copied().unwrap_or(0) as u64;
        self.expand(p);
    }

    /// Greedy colouring; returns vertices grouped by colour and the colour
    /// count reached at each position.
    fn colour(&self, p: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
        let mut left = p.clone();
        let (mut order, mut bound) = (Vec::new(), Vec::new());
        let mut colour = 0;
        while !left.is_clear() {
            colour += 1;
            let mut avail = left.clone();
            while let Some(v) = avail.minimum() {
                avail.set(v, false);
                avail.difference_with(&self.adj[v]);
                left.set(v, false);
                order.push(v);
                bound.push(colour);
            }
        }
        (order, bound)
    }

    fn expand(&mut self, mut p: FixedBitSet) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
        }
        if self.aborted {
            return;
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        let (order, bound) = self.colour(&p);
        for idx in (0..order.len()).rev() {
            if self.current.len() + bound[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            let mut next = p.clone();
            next.intersect_with(&self.adj[v]);
            self.current.push(v);
            self.expand(next);
            self.current.pop();
            p.set(v, false);
        }
    }
}

struct Packing {
    /// Constraint spaces containing each candidate.
    inc: Vec<Vec<usize>>,
    /// Candidates inside each constraint space.
    members: Vec<FixedBitSet>,
    /// Number of constraint spaces through every candidate.
    per_word: u64,
    ucap: u64,
    res: Vec<u64>,
    x: Vec<u64>,
    total: u64,
    best: u64,
    best_x: Vec<u64>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
    root_bound: u64,
    // scratch for the bounds
    load: Vec<u64>,
    group_of: Vec<usize>,
}

impl Packing {
    fn new(inc: Vec<Vec<usize>>, spaces: usize, ucap: u64, wcap: u64, max_nodes: u64) -> Self {
        let n = inc.len();
        let mut members = vec![FixedBitSet::with_capacity(n); spaces];
        for (i, ws) in inc.iter().enumerate() {
            for &w in ws {
                members[w].insert(i);
            }
        }
        let per_word = inc.first().map_or(1, |v| v.len() as u64).max(1);
        Packing {
            inc,
            members,
            per_word,
            ucap,
            res: vec![wcap; spaces],
            x: vec![0; n],
            total: 0,
            best: 0,
            best_x: vec![0; n],
            nodes: 0,
            max_nodes,
            aborted: false,
            root_bound: 0,
            load: vec![0; spaces],
            group_of: vec![usize::MAX; spaces],
        }
    }

    fn room(&self, v: usize) -> u64 {
        self.inc[v]
            .iter()
            .map(|&w| self.res[w])
            .min()
            .unwrap_or(0)
            .min(self.ucap)
    }

    fn run(&mut self) {
        if self.x.is_empty() {
            return;
        }
        let mut p = FixedBitSet::with_capacity(self.x.len());
        p.insert_range(..);
        self.root_bound = self
            .counting_bound(&p)
            .min(self.partition(&p).1.last().copied().unwrap_or(0));
        self.greedy(&p);
        p.set(0, false);
        for m in (1..=self.room(0)).rev() {
            let next = self.take(0, m, &p);
            self.expand(next);
            self.give_back(0);
        }
    }

    /// Fills candidates in order as far as capacity allows, as a first
    /// incumbent.
    fn greedy(&mut self, p: &FixedBitSet) {
        for v in p.ones() {
            let m = self.room(v);
            if m > 0 {
                self.take(v, m, p);
            }
        }
        self.record();
        for v in 0..self.x.len() {
            if self.x[v] > 0 {
                self.give_back(v);
            }
        }
    }

    fn record(&mut self) {
        if self.total > self.best {
            self.best = self.total;
            self.best_x.clone_from(&self.x);
        }
    }

    /// Sets `x[v] = m` and returns the candidates still usable afterwards.
    fn take(&mut self, v: usize, m: u64, p: &FixedBitSet) -> FixedBitSet {
        self.x[v] = m;
        self.total += m;
        let mut next = p.clone();
        next.set(v, false);
        for i in 0..self.inc[v].len() {
            let w = self.inc[v][i];
            self.res[w] -= m;
            if self.res[w] == 0 {
                next.difference_with(&self.members[w]);
            }
        }
        next
    }

    fn give_back(&mut self, v: usize) {
        let m = std::mem::take(&mut self.x[v]);
        self.total -= m;
        for &w in &self.inc[v] {
            self.res[w] += m;
        }
    }

    /// Every candidate lies in `per_word` constraint spaces, so the remaining
    /// gain is at most the usable capacity summed over spaces, divided by
    /// `per_word`.
    fn counting_bound(&mut self, p: &FixedBitSet) -> u64 {
        let mut touched = Vec::new();
        for v in p.ones() {
            let r = self.room(v);
            for &w in &self.inc[v] {
                if self.load[w] == 0 {
                    touched.push(w);
                }
                self.load[w] += r;
            }
        }
        let mut sum = 0;
        for w in touched {
            sum += self.load[w].min(self.res[w]);
            self.load[w] = 0;
        }
        sum / self.per_word
    }

    /// Splits the candidates into groups, each inside one constraint space,
    /// and returns them group by group with the bound on the gain from the
    /// prefix ending at each position.
    fn partition(&mut self, p: &FixedBitSet) -> (Vec<usize>, Vec<u64>) {
        // (space, summed room, members)
        let mut groups: Vec<(usize, u64, Vec<usize>)> = Vec::new();
        for v in p.ones() {
            let r = self.room(v);
            let mut choice: Option<(u64, usize)> = None;
            for &w in &self.inc[v] {
                let g = self.group_of[w];
                let gain = if g == usize::MAX {
                    r.min(self.res[w])
                } else {
                    let (_, sum, _) = &groups[g];
                    (sum + r).min(self.res[w]) - (*sum).min(self.res[w])
                };
                // prefer joining an open group on ties
                let better = match choice {
                    None => true,
                    Some((best, bw)) => {
                        gain < best
                            || (gain == best && g != usize::MAX && self.group_of[bw] == usize::MAX)
                    }
                };
                if better {
                    choice = Some((gain, w));
                }
            }
            let (_, w) = choice.expect("every candidate lies in a constraint space");
            if self.group_of[w] == usize::MAX {
                self.group_of[w] = groups.len();
                groups.push((w, 0, Vec::new()));
            }
            let g = &mut groups[self.group_of[w]];
            g.1 += r;
            g.2.push(v);
        }
        let mut order = Vec::with_capacity(p.count_ones(..));
        let mut bound = Vec::with_capacity(order.capacity());
        let mut acc = 0;
        for (w, sum, vs) in groups {
            self.group_of[w] = usize::MAX;
            acc += sum.min(self.res[w]);
            for v in vs {
                order.push(v);
                bound.push(acc);
            }
        }
        (order, bound)
    }

    fn expand(&mut self, mut p: FixedBitSet) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
        }
        if self.aborted {
            return;
        }
        self.record();
        if p.is_clear() || self.total + self.counting_bound(&p) <= self.best {
            return;
        }
        let (order, bound) = self.partition(&p);
        for idx in (0..order.len()).rev() {
            if self.total + bound[idx] <= self.best {
                return;
            }
            let v = order[idx];
            for m in (1..=self.room(v)).rev() {
                let next = self.take(v, m, &p);
                self.expand(next);
                self.give_back(v);
            }
            p.set(v, false);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::check_covering;

    fn oracle(n: u64, k: u64, d: u64, a: u64, q: u64) -> OracleResult {
        let p = CoveringCodeParams::new(n, k, d, a, q).unwrap();
        oracle_max_code(&p, true, DEFAULT_ORACLE_CAP).unwrap()
    }

    #[test]
    fn lines_of_small_planes() {
        assert_eq!(oracle(2, 1, 1, 2, 2).size, 3);
        assert_eq!(oracle(3, 1, 1, 2, 2).size, 7);
        assert_eq!(oracle(2, 1, 1, 2, 3).size, 4);
    }

    #[test]
    fn repeats_double_trivial_codes() {
        assert_eq!(oracle(2, 1, 1, 3, 2).size, 6);
        let p = CoveringCodeParams::new(2, 1, 1, 3, 2).unwrap();
        assert_eq!(oracle_max_code(&p, false, 100).unwrap().size, 3);
    }

    #[test]
    fn spreads() {
        // a line spread of F_2^4 has 5 lines
        assert_eq!(oracle(4, 2, 2, 2, 2).size, 5);
        assert_eq!(oracle(4, 2, 2, 3, 2).size, 10);
    }

    #[test]
    fn caps_in_projective_space() {
        // no three points of PG(3,2) on a line; a doubled point blocks every
        // line through it, so repeats never help
        let r = oracle(4, 1, 2, 3, 2);
        assert_eq!(r.size, 8);
        assert_eq!(check_covering(&r.witness).unwrap(), None);
    }

    #[test]
    fn witnesses_are_valid() {
        for (n, k, d, a) in [(3, 1, 1, 3), (4, 2, 1, 2), (4, 2, 2, 3), (4, 1, 1, 2)] {
            let r = oracle(n, k, d, a, 2);
            assert_eq!(r.witness.len(), r.size);
            assert_eq!(check_covering(&r.witness).unwrap(), None, "{n} {k} {d} {a}");
        }
    }

    #[test]
    fn node_budget() {
        let p = CoveringCodeParams::new(5, 2, 2, 2, 2).unwrap();
        match oracle_max_code_within(&p, true, DEFAULT_ORACLE_CAP, 10) {
            Err(ConstructError::SearchBudget { best, bound, .. }) => {
                assert!(best <= 9 && bound >= 9)
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn cap_guard() {
        let p = CoveringCodeParams::new(6, 3, 1, 2, 2).unwrap();
        assert!(matches!(
            oracle_max_code(&p, true, 100),
            Err(ConstructError::TooLarge { .. })
        ));
    }
}
