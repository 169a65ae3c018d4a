//! Exact minimum hitting sets over a small universe `0..n`.
//!
//! Singleton sets are taken first and the rest is split into independent
//! blocks (sets linked by shared elements); each block is solved by branch and
//! bound with a disjoint-packing lower bound.

/// Drops duplicate sets and sets that contain another set; a set hitting the
/// smaller one hits the larger one too.
fn simplify(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut sorted: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for s in sorted {
        if !kept.iter().any(|k| k.iter().all(|x| s.binary_search(x).is_ok())) {
            kept.push(s);
        }
    }
    kept
}

struct Solver<'a> {
    sets: &'a [Vec<usize>],
    banned: Vec<bool>,
    chosen: Vec<bool>,
}

impl Solver<'_> {
    fn unhit(&self) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&i| !self.sets[i].iter().any(|&x| self.chosen[x]))
            .collect()
    }

    /// Number of pairwise disjoint unhit sets found greedily: every hitting
    /// set needs at least that many more elements.
    fn lower_bound(&self, unhit: &[usize]) -> usize {
        let mut used = vec![false; self.banned.len()];
        let mut count = 0;
        for &i in unhit {
            let s = &self.sets[i];
            if s.iter().all(|&x| !used[x]) {
                count += 1;
                for &x in s {
                    used[x] = true;
                }
            }
        }
        count
    }

    /// Whether the unhit sets can be hit with at most `budget` more allowed
    /// elements.
    fn feasible(&mut self, budget: usize) -> bool {
        let unhit = self.unhit();
        if unhit.is_empty() {
            return true;
        }
        if budget == 0 || self.lower_bound(&unhit) > budget {
            return false;
        }
        let pick = unhit
            .iter()
            .copied()
            .min_by_key(|&i| self.sets[i].iter().filter(|&&x| !self.banned[x]).count())
            .expect("nonempty");
        let options: Vec<usize> = self.sets[pick]
            .iter()
            .copied()
            .filter(|&x| !self.banned[x])
            .collect();
        for x in options {
            self.chosen[x] = true;
            let ok = self.feasible(budget - 1);
            self.chosen[x] = false;
            if ok {
                return true;
            }
        }
        false
    }
}

/// Size of a minimum set of elements of `0..universe` meeting every set.
///
/// Panics if some set is empty (no hitting set exists).
pub fn minimum_size(universe: usize, sets: &[Vec<usize>]) -> usize {
    minimum_set(universe, sets).len()
}

/// Lexicographically smallest minimum hitting set of one block, over the
/// local universe `0..universe`.
fn solve_block(universe: usize, sets: &[Vec<usize>]) -> Vec<usize> {
    let mut solver = Solver {
        sets,
        banned: vec![false; universe],
        chosen: vec![false; universe],
    };
    let all: Vec<usize> = (0..sets.len()).collect();
    let mut k = solver.lower_bound(&all);
    while !solver.feasible(k) {
        k += 1;
    }
    let mut out = Vec::with_capacity(k);
    for x in 0..universe {
        if out.len() == k {
            break;
        }
        solver.chosen[x] = true;
        if solver.feasible(k - out.len() - 1) {
            out.push(x);
        } else {
            solver.chosen[x] = false;
            solver.banned[x] = true;
        }
    }
    out
}

/// The lexicographically smallest (as a sorted list) among the minimum
/// hitting sets.
///
/// Blocks share no elements, so the lexicographically smallest choices per
/// block combine into the overall one.
pub fn minimum_set(universe: usize, sets: &[Vec<usize>]) -> Vec<usize> {
    assert!(sets.iter().all(|s| !s.is_empty()), "empty set cannot be hit");
    let sets = simplify(sets);
    let mut chosen = vec![false; universe];
    for s in sets.iter().filter(|s| s.len() == 1) {
        chosen[s[0]] = true;
    }
    let rest: Vec<&Vec<usize>> = sets.iter().filter(|s| !s.iter().any(|&x| chosen[x])).collect();
    // union-find over elements to split the remaining sets into blocks
    let mut parent: Vec<usize> = (0..universe).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for s in &rest {
        for w in s.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<&Vec<usize>>> = Default::default();
    for s in rest {
        blocks.entry(find(&mut parent, s[0])).or_default().push(s);
    }
    for block in blocks.values() {
        let mut elems: Vec<usize> = block.iter().flat_map(|s| s.iter().copied()).collect();
        elems.sort_unstable();
        elems.dedup();
        let local: Vec<Vec<usize>> = block
            .iter()
            .map(|s| s.iter().map(|x| elems.binary_search(x).expect("in block")).collect())
            .collect();
        for i in solve_block(elems.len(), &local) {
            chosen[elems[i]] = true;
        }
    }
    (0..universe).filter(|&x| chosen[x]).collect()
}
