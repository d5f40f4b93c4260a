//! Exact extremal numbers via the complement formulation: a set `S` is free of
//! a family exactly when its complement meets every placement, so
//! `exc(n, F) = 2^n - tau` where `tau` is the minimum hitting set of the
//! placement hypergraph.
//!
//! The solver is a branch-and-bound over that hypergraph. Branching picks the
//! uncovered edge with the fewest undecided points (ties by edge order), the
//! pruning bound is a greedy packing of pairwise-disjoint uncovered edges, and
//! the host cube's vertex-transitivity lets the root fix one cover vertex.

use crate::config::ConfigurationFamily;
use crate::cube::PointSet;
use crate::density::best_pattern;
use crate::embed::{all_placements, canonicalize, config_orbit, is_family_free, Placement};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Extremal-set enumeration relies on canonical forms, which are enumerated
/// over the full automorphism group; keep the host cube tiny.
pub const ENUMERATE_DIM_MAX: u32 = 5;

// ============================================================================
// Instance and options
// ============================================================================

/// A hitting-set instance over the vertex slots of `V_n`.
#[derive(Clone, Debug)]
pub struct HittingInstance {
    universe: usize,
    edges: Vec<Vec<u32>>,
}

impl HittingInstance {
    /// Builds an instance, dropping duplicate edges (first occurrence kept)
    /// and rejecting empty ones.
    pub fn new(universe: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.is_empty() {
                return Err(Error::EmptyConfiguration);
            }
            e.sort_unstable();
            e.dedup();
            debug_assert!(e.iter().all(|&v| (v as usize) < universe));
            if seen.insert(e.clone()) {
                kept.push(e);
            }
        }
        Ok(HittingInstance {
            universe,
            edges: kept,
        })
    }

    pub fn from_placements(n: u32, placements: &[Placement]) -> Self {
        let edges = placements
            .iter()
            .map(|p| p.points().iter().map(|&b| b as u32).collect())
            .collect();
        HittingInstance {
            universe: 1usize << n,
            edges,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }
}

/// Search budget; whichever limit trips first ends the search.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 100_000_000,
            time_limit: Duration::from_secs(300),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub budget: Budget,
    /// 1 runs single-threaded (fully deterministic including the witness);
    /// any other value explores root branches on the global thread pool.
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: Budget::default(),
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HittingSolution {
    pub size: u64,
    pub cover: Vec<u32>,
    pub optimal: bool,
    pub nodes: u64,
}

// ============================================================================
// Branch and bound
// ============================================================================

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
    best_size: AtomicU64,
    best_cover: Mutex<Vec<u32>>,
    max_nodes: u64,
    deadline: Instant,
}

impl Shared {
    fn publish(&self, cover: &[u32]) {
        let mut guard = self.best_cover.lock().unwrap();
        // Re-check under the lock; only improvements are published.
        if (cover.len() as u64) < self.best_size.load(AtomicOrdering::SeqCst) {
            self.best_size
                .store(cover.len() as u64, AtomicOrdering::SeqCst);
            guard.clear();
            guard.extend_from_slice(cover);
        }
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, AtomicOrdering::Relaxed);
        if n >= self.max_nodes {
            self.exhausted.store(true, AtomicOrdering::SeqCst);
            self.stop.store(true, AtomicOrdering::SeqCst);
            return false;
        }
        if n % 4096 == 0 && Instant::now() > self.deadline {
            self.exhausted.store(true, AtomicOrdering::SeqCst);
            self.stop.store(true, AtomicOrdering::SeqCst);
            return false;
        }
        !self.stop.load(AtomicOrdering::Relaxed)
    }
}

#[derive(Clone)]
struct SearchState {
    chosen: Vec<u32>,
    forbidden: Vec<bool>,
    covered_by: Vec<u32>,
    undecided: Vec<u32>,
    // Epoch-stamped scratch for the packing bound.
    stamp: Vec<u32>,
    epoch: u32,
}

impl SearchState {
    fn new(inst: &HittingInstance) -> Self {
        SearchState {
            chosen: Vec::new(),
            forbidden: vec![false; inst.universe],
            covered_by: vec![0; inst.edges.len()],
            undecided: inst.edges.iter().map(|e| e.len() as u32).collect(),
            stamp: vec![0; inst.universe],
            epoch: 0,
        }
    }
}

struct Searcher<'a> {
    inst: &'a HittingInstance,
    vertex_edges: Vec<Vec<u32>>,
    shared: &'a Shared,
    /// When set, leaves of exactly this size are collected instead of
    /// improving the incumbent (used by extremal-set enumeration).
    collect_exact: Option<u64>,
    collected: Vec<Vec<u32>>,
}

impl<'a> Searcher<'a> {
    fn new(inst: &'a HittingInstance, shared: &'a Shared) -> Self {
        let mut vertex_edges = vec![Vec::new(); inst.universe];
        for (ei, e) in inst.edges.iter().enumerate() {
            for &v in e {
                vertex_edges[v as usize].push(ei as u32);
            }
        }
        Searcher {
            inst,
            vertex_edges,
            shared,
            collect_exact: None,
            collected: Vec::new(),
        }
    }

    fn choose(&self, st: &mut SearchState, v: u32) {
        st.chosen.push(v);
        for &ei in &self.vertex_edges[v as usize] {
            st.covered_by[ei as usize] += 1;
            st.undecided[ei as usize] -= 1;
        }
    }

    fn unchoose(&self, st: &mut SearchState, v: u32) {
        debug_assert_eq!(st.chosen.last(), Some(&v));
        st.chosen.pop();
        for &ei in &self.vertex_edges[v as usize] {
            st.covered_by[ei as usize] -= 1;
            st.undecided[ei as usize] += 1;
        }
    }

    fn forbid(&self, st: &mut SearchState, v: u32) {
        st.forbidden[v as usize] = true;
        for &ei in &self.vertex_edges[v as usize] {
            st.undecided[ei as usize] -= 1;
        }
    }

    fn unforbid(&self, st: &mut SearchState, v: u32) {
        st.forbidden[v as usize] = false;
        for &ei in &self.vertex_edges[v as usize] {
            st.undecided[ei as usize] += 1;
        }
    }

    /// Greedy packing of pairwise-disjoint uncovered edges: each needs its own
    /// cover vertex, so the packing size lower-bounds the remaining work.
    fn packing_bound(&self, st: &mut SearchState) -> u64 {
        st.epoch += 1;
        let epoch = st.epoch;
        let mut bound = 0u64;
        'edges: for (ei, e) in self.inst.edges.iter().enumerate() {
            if st.covered_by[ei] > 0 {
                continue;
            }
            for &v in e {
                if !st.forbidden[v as usize] && st.stamp[v as usize] == epoch {
                    continue 'edges;
                }
            }
            for &v in e {
                if !st.forbidden[v as usize] {
                    st.stamp[v as usize] = epoch;
                }
            }
            bound += 1;
        }
        bound
    }

    /// Uncovered edge with the fewest undecided points, ties by edge order.
    fn select_edge(&self, st: &SearchState) -> Option<(usize, u32)> {
        let mut best: Option<(usize, u32)> = None;
        for ei in 0..self.inst.edges.len() {
            if st.covered_by[ei] > 0 {
                continue;
            }
            let und = st.undecided[ei];
            if best.is_none_or(|(_, b)| und < b) {
                best = Some((ei, und));
                if und == 0 {
                    break;
                }
            }
        }
        best
    }

    fn dfs(&mut self, st: &mut SearchState) {
        if !self.shared.tick() {
            return;
        }
        let limit = match self.collect_exact {
            Some(target) => target + 1, // keep equal-size covers
            None => self.shared.best_size.load(AtomicOrdering::Relaxed),
        };
        if st.chosen.len() as u64 >= limit {
            return;
        }
        let Some((edge, undecided)) = self.select_edge(st) else {
            // Everything covered.
            match self.collect_exact {
                Some(target) => {
                    if st.chosen.len() as u64 == target {
                        let mut cover = st.chosen.clone();
                        cover.sort_unstable();
                        self.collected.push(cover);
                    }
                }
                None => self.shared.publish(&st.chosen),
            }
            return;
        };
        if undecided == 0 {
            return; // dead edge: every point decided against the cover
        }
        if st.chosen.len() as u64 + self.packing_bound(st) >= limit {
            return;
        }
        let members: Vec<u32> = self.inst.edges[edge]
            .iter()
            .copied()
            .filter(|&v| !st.forbidden[v as usize])
            .collect();
        let mut forbidden_here = 0usize;
        for &v in &members {
            self.choose(st, v);
            self.dfs(st);
            self.unchoose(st, v);
            if self.shared.stop.load(AtomicOrdering::Relaxed) {
                break;
            }
            self.forbid(st, v);
            forbidden_here += 1;
        }
        for &v in members.iter().take(forbidden_here) {
            self.unforbid(st, v);
        }
    }
}

fn covers_everything(inst: &HittingInstance, cover: &[u32]) -> bool {
    let mut hit = vec![false; inst.universe];
    for &v in cover {
        hit[v as usize] = true;
    }
    inst.edges
        .iter()
        .all(|e| e.iter().any(|&v| hit[v as usize]))
}

/// Greedy cover by repeatedly taking the vertex on the most uncovered edges.
/// Provides the initial incumbent, so even exhausted runs return a valid cover.
fn greedy_cover(inst: &HittingInstance) -> Vec<u32> {
    let mut covered = vec![false; inst.edges.len()];
    let mut remaining = inst.edges.len();
    let mut cover = Vec::new();
    let mut degree = vec![0u32; inst.universe];
    while remaining > 0 {
        degree.fill(0);
        for (ei, e) in inst.edges.iter().enumerate() {
            if !covered[ei] {
                for &v in e {
                    degree[v as usize] += 1;
                }
            }
        }
        let v = (0..inst.universe)
            .max_by_key(|&v| degree[v])
            .expect("nonempty universe") as u32;
        debug_assert!(degree[v as usize] > 0);
        cover.push(v);
        for (ei, e) in inst.edges.iter().enumerate() {
            if !covered[ei] && e.contains(&v) {
                covered[ei] = true;
                remaining -= 1;
            }
        }
    }
    cover.sort_unstable();
    cover
}

fn solve_internal(
    inst: &HittingInstance,
    opts: &SolveOptions,
    force_vertex: Option<u32>,
    seed_cover: Option<Vec<u32>>,
) -> HittingSolution {
    if inst.edges.is_empty() {
        return HittingSolution {
            size: 0,
            cover: Vec::new(),
            optimal: true,
            nodes: 0,
        };
    }
    let mut initial = greedy_cover(inst);
    if let Some(seed) = seed_cover {
        if seed.len() < initial.len() {
            debug_assert!(covers_everything(inst, &seed));
            initial = seed;
        }
    }
    let shared = Shared {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
        best_size: AtomicU64::new(initial.len() as u64),
        best_cover: Mutex::new(initial),
        max_nodes: opts.budget.max_nodes,
        deadline: Instant::now() + opts.budget.time_limit,
    };
    let mut base = SearchState::new(inst);
    let root_searcher = Searcher::new(inst, &shared);
    if let Some(v) = force_vertex {
        root_searcher.choose(&mut base, v);
    }
    if opts.threads == 1 {
        let mut searcher = root_searcher;
        searcher.dfs(&mut base);
    } else {
        // Split the root branching across the pool; the incumbent is shared
        // monotone state, so the final value is schedule-independent.
        match root_searcher.select_edge(&base) {
            None => shared.publish(&base.chosen),
            Some((edge, _)) => {
                let members: Vec<u32> = inst.edges[edge].to_vec();
                let mut tasks: Vec<SearchState> = Vec::new();
                let mut prefix = base.clone();
                for (i, &v) in members.iter().enumerate() {
                    let mut st = prefix.clone();
                    // Branch i takes v; earlier members stay out of the cover.
                    root_searcher.choose(&mut st, v);
                    tasks.push(st);
                    if i + 1 < members.len() {
                        root_searcher.forbid(&mut prefix, v);
                    }
                }
                rayon::scope(|scope| {
                    for mut st in tasks {
                        let inst_ref = inst;
                        let shared_ref = &shared;
                        scope.spawn(move |_| {
                            let mut worker = Searcher::new(inst_ref, shared_ref);
                            worker.dfs(&mut st);
                        });
                    }
                });
            }
        }
    }
    let cover = shared.best_cover.into_inner().unwrap();
    HittingSolution {
        size: cover.len() as u64,
        cover,
        optimal: !shared.exhausted.load(AtomicOrdering::SeqCst),
        nodes: shared.nodes.load(AtomicOrdering::SeqCst),
    }
}

/// Minimum-cardinality set of vertices meeting every edge. `optimal` is false
/// only when the budget ran out, in which case the cover is still valid.
pub fn minimum_hitting_set(inst: &HittingInstance, opts: &SolveOptions) -> HittingSolution {
    solve_internal(inst, opts, None, None)
}

/// The complement of the best periodic layer construction is a strong starting
/// cover: the construction is free, so its complement meets every placement.
fn construction_seed_cover(n: u32, fam: &ConfigurationFamily) -> Option<Vec<u32>> {
    let (pattern, _) = best_pattern(fam, 8).ok()?;
    let construction = pattern.realize(n).ok()?;
    Some(
        construction
            .complement()
            .iter_bits()
            .map(|b| b as u32)
            .collect(),
    )
}

// ============================================================================
// Extremal numbers
// ============================================================================

#[derive(Clone, Debug)]
pub struct ExtremalResult {
    /// `exc(n, family)` when `optimal`, otherwise the best lower bound found.
    pub value: u64,
    pub witness: PointSet,
    pub optimal: bool,
    pub nodes: u64,
}

fn witness_from_cover(n: u32, cover: &[u32]) -> PointSet {
    let mut s = PointSet::full(n).expect("dim validated by caller");
    for &v in cover {
        s.remove_bits(v as u64);
    }
    s
}

/// Computes `exc(n, family)` exactly (within budget) together with a witness
/// set, which is re-verified to be free before returning.
pub fn extremal_number(
    n: u32,
    fam: &ConfigurationFamily,
    opts: &SolveOptions,
) -> Result<ExtremalResult> {
    let placements = all_placements(n, fam)?;
    let inst = HittingInstance::from_placements(n, &placements);
    // The placement hypergraph is invariant under every automorphism of the
    // host cube and the group is vertex-transitive, so some optimal cover
    // contains the origin; fixing it halves nothing less than the full tree.
    let force = if inst.edges.is_empty() { None } else { Some(0) };
    let sol = solve_internal(&inst, opts, force, construction_seed_cover(n, fam));
    let witness = witness_from_cover(n, &sol.cover);
    assert!(
        is_family_free(&witness, fam)?,
        "solver returned a non-free witness"
    );
    Ok(ExtremalResult {
        value: (1u64 << n) - sol.size,
        witness,
        optimal: sol.optimal,
        nodes: sol.nodes,
    })
}

/// All maximum-size free sets at tiny `n`, reduced to canonical
/// representatives under the automorphism group of the host cube.
pub fn enumerate_extremal_sets(
    n: u32,
    fam: &ConfigurationFamily,
    opts: &SolveOptions,
) -> Result<Vec<PointSet>> {
    if n > ENUMERATE_DIM_MAX {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: ENUMERATE_DIM_MAX,
        });
    }
    let placements = all_placements(n, fam)?;
    let inst = HittingInstance::from_placements(n, &placements);
    if inst.edges.is_empty() {
        return Ok(vec![PointSet::full(n)?]);
    }
    let first = solve_internal(&inst, opts, Some(0), construction_seed_cover(n, fam));
    assert!(first.optimal, "budget too small to enumerate extremal sets");
    let tau = first.size;
    // Second pass: collect every cover of exactly the optimal size.
    let shared = Shared {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
        best_size: AtomicU64::new(u64::MAX),
        best_cover: Mutex::new(Vec::new()),
        max_nodes: opts.budget.max_nodes,
        deadline: Instant::now() + opts.budget.time_limit,
    };
    let mut searcher = Searcher::new(&inst, &shared);
    searcher.collect_exact = Some(tau);
    let mut st = SearchState::new(&inst);
    searcher.dfs(&mut st);
    assert!(
        !shared.exhausted.load(AtomicOrdering::SeqCst),
        "budget too small to enumerate extremal sets"
    );
    let mut classes: Vec<(Vec<u64>, PointSet)> = Vec::new();
    for cover in &searcher.collected {
        let witness = witness_from_cover(n, cover);
        debug_assert!(is_family_free(&witness, fam)?);
        let canon = canonicalize(&witness)?;
        let key: Vec<u64> = canon.iter_bits().collect();
        if !classes.iter().any(|(k, _)| *k == key) {
            classes.push((key, canon));
        }
    }
    classes.sort_by(|(a, _), (b, _)| a.cmp(b));
    Ok(classes.into_iter().map(|(_, s)| s).collect())
}

// ============================================================================
// Local search lower bounds
// ============================================================================

/// Checks whether adding `bits` to the free set `s` creates an embedded copy
/// of a family member through the new point.
fn add_creates_copy(
    s: &PointSet,
    bits: u64,
    orbits: &[(u32, Vec<Vec<u64>>, u32)],
) -> Result<bool> {
    let n = s.dim();
    for (d, masks, min_size) in orbits {
        // Every subcube through the new point: the fixed part is determined
        // by the point outside each varying set.
        for sc in crate::embed::enumerate_subcubes(n, *d)? {
            let varying = sc.varying_mask();
            let fixed = bits & !varying;
            let sc = crate::embed::Subcube::new(n, varying, fixed)?;
            let positions = sc.positions();
            let words = masks[0].len();
            let mut induced = vec![0u64; words];
            let mut count = 0u32;
            for local in 0..1u64 << *d {
                let global = sc.expand(local, &positions);
                if global == bits || s.contains_bits(global) {
                    induced[(local >> 6) as usize] |= 1u64 << (local & 63);
                    count += 1;
                }
            }
            if count < *min_size {
                continue;
            }
            for mask in masks {
                if mask.iter().zip(&induced).all(|(a, b)| a & !b == 0) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Randomized add/kick local search for a large free set, seeded from the best
/// periodic layer construction. The result is verified free and never smaller
/// than the construction it started from.
pub fn local_search_lower_bound(
    n: u32,
    fam: &ConfigurationFamily,
    seed: u64,
    iterations: u64,
) -> Result<PointSet> {
    let (pattern, _) = best_pattern(fam, 8)?;
    let mut current = pattern.realize(n)?;
    debug_assert!(is_family_free(&current, fam)?);
    let mut best = current.clone();
    let orbits: Vec<(u32, Vec<Vec<u64>>, u32)> = fam
        .members()
        .iter()
        .map(|f| {
            let orbit = config_orbit(f)?;
            let masks = orbit.local_masks();
            let min_size = orbit.members().iter().map(|m| m.len() as u32).min().unwrap();
            Ok((f.dim(), masks, min_size))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = 1u64 << n;
    let mut stall = 0u64;
    for _ in 0..iterations {
        let candidate = rng.random_range(0..space);
        if !current.contains_bits(candidate)
            && !add_creates_copy(&current, candidate, &orbits)?
        {
            current.insert_bits(candidate);
            stall = 0;
            if current.len() > best.len() {
                best = current.clone();
            }
            continue;
        }
        stall += 1;
        // Kick: drop a random member after a run of failed insertions.
        if stall >= 64 && !current.is_empty() {
            let idx = rng.random_range(0..current.len()) as usize;
            let victim = current.iter_bits().nth(idx);
            if let Some(bits) = victim {
                current.remove_bits(bits);
            }
            stall = 0;
        }
    }
    assert!(is_family_free(&best, fam)?, "local search corrupted the set");
    Ok(best)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Configuration, Construction};
    use crate::cube::permute_bits;
    use crate::embed::permutations;

    fn fam(configs: Vec<Configuration>) -> ConfigurationFamily {
        ConfigurationFamily::new(configs).unwrap()
    }

    // ------------------------------------------------------------------
    // Definitional oracle: placements via raw map enumeration, independent
    // of the production orbit/subcube machinery.
    // ------------------------------------------------------------------

    fn oracle_placement_masks(n: u32, family: &ConfigurationFamily) -> Vec<u64> {
        assert!(n <= 5);
        let mut masks = std::collections::BTreeSet::new();
        for f in family.members() {
            let d = f.dim();
            for varying in 0u64..1 << n {
                if varying.count_ones() != d {
                    continue;
                }
                let positions: Vec<u32> = (0..n).filter(|&p| varying >> p & 1 == 1).collect();
                for fixed in 0u64..1 << n {
                    if fixed & varying != 0 {
                        continue;
                    }
                    for perm in permutations(d) {
                        for flip in 0..1u64 << d {
                            let mut mask = 0u64;
                            for &p in f.points() {
                                let local = permute_bits(p, &perm) ^ flip;
                                let mut global = fixed;
                                for (j, &pos) in positions.iter().enumerate() {
                                    if local >> j & 1 == 1 {
                                        global |= 1 << pos;
                                    }
                                }
                                mask |= 1u64 << global;
                            }
                            masks.insert(mask);
                        }
                    }
                }
            }
        }
        masks.into_iter().collect()
    }

    fn oracle_exc(n: u32, family: &ConfigurationFamily) -> u64 {
        assert!(n <= 4, "exhaustive oracle only feasible for tiny cubes");
        let masks = oracle_placement_masks(n, family);
        let mut best = 0u64;
        for s in 0u64..1 << (1 << n) {
            if masks.iter().all(|&m| m & s != m) {
                best = best.max(s.count_ones() as u64);
            }
        }
        best
    }

    #[test]
    fn hitting_faces_of_q3() {
        // The six faces of Q_3 are covered by two antipodal vertices.
        let v2 = fam(vec![Configuration::full(2).unwrap()]);
        let placements = all_placements(3, &v2).unwrap();
        let inst = HittingInstance::from_placements(3, &placements);
        let sol = minimum_hitting_set(&inst, &SolveOptions::default());
        assert!(sol.optimal);
        // Exhaustive oracle over all subsets of V_3.
        let face_masks: Vec<u64> = inst
            .edges()
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        let oracle = (0u64..256)
            .filter(|s| face_masks.iter().all(|&f| f & s != 0))
            .map(|s| s.count_ones() as u64)
            .min()
            .unwrap();
        assert_eq!(oracle, 2);
        assert_eq!(sol.size, oracle);
    }

    #[test]
    fn extremal_complements_the_unrestricted_cover() {
        // The root symmetry fix must not change the optimal cover size.
        for family in [
            fam(vec![Configuration::full(2).unwrap()]),
            fam(vec![Configuration::f1(), Configuration::f3()]),
        ] {
            let n = 4u32;
            let placements = all_placements(n, &family).unwrap();
            let inst = HittingInstance::from_placements(n, &placements);
            let plain = minimum_hitting_set(&inst, &SolveOptions::default());
            let fixed = extremal_number(n, &family, &SolveOptions::default()).unwrap();
            assert!(plain.optimal && fixed.optimal);
            assert_eq!(fixed.value, (1u64 << n) - plain.size);
        }
    }

    #[test]
    fn hitting_trivial_instances() {
        let single = HittingInstance::new(4, vec![vec![2]]).unwrap();
        let sol = minimum_hitting_set(&single, &SolveOptions::default());
        assert_eq!(sol.size, 1);
        assert_eq!(sol.cover, vec![2]);

        let none = HittingInstance::new(4, vec![]).unwrap();
        let sol = minimum_hitting_set(&none, &SolveOptions::default());
        assert_eq!(sol.size, 0);
        assert!(sol.optimal);

        assert!(HittingInstance::new(4, vec![vec![]]).is_err());
    }

    #[test]
    fn extremal_matches_exhaustive_oracle() {
        let cases: Vec<(u32, ConfigurationFamily)> = vec![
            (2, fam(vec![Configuration::full(2).unwrap()])),
            (3, fam(vec![Configuration::full(2).unwrap()])),
            (4, fam(vec![Configuration::full(2).unwrap()])),
            (3, fam(vec![Configuration::f3()])),
            (4, fam(vec![Configuration::f3()])),
            (3, fam(vec![Configuration::f1()])),
            (4, fam(vec![Configuration::f1(), Configuration::f2()])),
        ];
        for (n, family) in cases {
            let got = extremal_number(n, &family, &SolveOptions::default()).unwrap();
            assert!(got.optimal);
            assert_eq!(got.value, oracle_exc(n, &family), "n={n}");
            assert_eq!(got.witness.len(), got.value);
        }
    }

    #[test]
    fn extremal_known_square_values() {
        // exc(n, V2) = ceil(2^(n+1) / 3)
        let v2 = fam(vec![Configuration::full(2).unwrap()]);
        for (n, expect) in [(2u32, 3u64), (3, 6), (4, 11), (5, 22)] {
            let got = extremal_number(n, &v2, &SolveOptions::default()).unwrap();
            assert!(got.optimal);
            assert_eq!(got.value, expect, "n={n}");
        }
    }

    #[test]
    fn antipodal_pairs_value() {
        let f3 = fam(vec![Configuration::f3()]);
        let got = extremal_number(3, &f3, &SolveOptions::default()).unwrap();
        assert_eq!(got.value, 4);
    }

    #[test]
    fn parallel_value_matches_sequential() {
        let v2 = fam(vec![Configuration::full(2).unwrap()]);
        let seq = extremal_number(5, &v2, &SolveOptions::default()).unwrap();
        let par = extremal_number(
            5,
            &v2,
            &SolveOptions {
                threads: 4,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        assert_eq!(seq.value, par.value);
        assert!(seq.optimal && par.optimal);
    }

    #[test]
    fn exhausted_budget_returns_valid_lower_bound() {
        let v2 = fam(vec![Configuration::full(2).unwrap()]);
        let opts = SolveOptions {
            budget: Budget {
                max_nodes: 3,
                time_limit: Duration::from_secs(300),
            },
            threads: 1,
        };
        let got = extremal_number(6, &v2, &opts).unwrap();
        assert!(!got.optimal);
        assert!(got.value <= 43); // cannot exceed the true optimum
        assert_eq!(got.witness.len(), got.value);
    }

    #[test]
    fn enumerate_square_extremal_classes() {
        let v2 = fam(vec![Configuration::full(2).unwrap()]);
        // One class at n=2: any three points of the square.
        let classes = enumerate_extremal_sets(2, &v2, &SolveOptions::default()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].len(), 3);

        let classes = enumerate_extremal_sets(3, &v2, &SolveOptions::default()).unwrap();
        assert_eq!(classes.len(), 1);
        let s0 = Construction::kostochka(0).build(3).unwrap();
        assert_eq!(
            classes[0].iter_bits().collect::<Vec<_>>(),
            canonicalize(&s0).unwrap().iter_bits().collect::<Vec<_>>()
        );
    }

    #[test]
    fn local_search_never_loses_the_construction() {
        let v2 = fam(vec![Configuration::full(2).unwrap()]);
        let got = local_search_lower_bound(6, &v2, 42, 300).unwrap();
        assert!(got.len() >= 42); // the two-of-three-layers set at n=6
        assert!(is_family_free(&got, &v2).unwrap());

        let f3 = fam(vec![Configuration::f3()]);
        let got = local_search_lower_bound(3, &f3, 7, 200).unwrap();
        assert!(got.len() >= 4);

        let f12 = fam(vec![Configuration::f1(), Configuration::f2()]);
        let got = local_search_lower_bound(4, &f12, 1, 200).unwrap();
        assert!(got.len() >= 5); // weights {0, 3}
    }
}
