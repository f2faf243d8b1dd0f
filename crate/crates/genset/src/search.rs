//! Exact minimum k-generator and k-base search, optimum enumeration,
//! canonicity checking, and the blown-up Kneser counterexample family.
//!
//! The search is depth-first branch and bound: branch on the numerically
//! smallest uncovered target set, over all of its subsets not yet in the
//! family (any solution extending the current family must add one of them).
//! Singletons are forced automatically, so the first real choice point is
//! the target {1..k+1}; there the candidates are restricted to prefix
//! representatives of the S_n-orbits (sound, because relabeling the ground
//! set maps solutions to solutions of equal size). Optimum enumeration runs
//! without symmetry breaking and deduplicates families reached along
//! different branch orders.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::bits::subsets_of;
use crate::error::{Error, Result};
use crate::setfam::{
    balanced_partition, canonical_generator, canonical_size, counting_lower_bound, GroundPartition,
    SetFamily, SubsetMask,
};

/// Hard cap on the ground size for exact search; beyond this the tree is out
/// of reach regardless of budget.
pub const SEARCH_MAX_N: u32 = 10;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Generator,
    Base,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Complete,
    Capped,
    Timeout,
}

#[derive(Clone, Debug)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
    /// Enumeration stops (status `capped`) once this many optima are held.
    pub optima_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: None,
            max_seconds: None,
            optima_cap: 10_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub n: u32,
    pub k: u32,
    pub mode: SearchMode,
    /// Size of the best family found; the canonical generator seeds it, so
    /// this is always an upper bound on the true minimum and equals it when
    /// status is `complete`.
    pub min_size: u64,
    /// Proven lower bound; equals `min_size` on completed searches.
    pub proven_lower: u64,
    /// All optimum families, when enumeration was requested and stayed
    /// under the cap.
    pub optima: Vec<SetFamily>,
    pub optima_count_exact: bool,
    pub nodes: u64,
    pub status: SearchStatus,
}

/// Coverage bitset over the 2^n subsets, n <= 10.
#[derive(Clone, Copy, PartialEq, Eq)]
struct CoverBits([u64; 16]);

impl CoverBits {
    fn empty() -> Self {
        CoverBits([0u64; 16])
    }

    #[inline]
    fn get(&self, x: u32) -> bool {
        self.0[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, x: u32) {
        self.0[(x >> 6) as usize] |= 1u64 << (x & 63);
    }

    fn count(&self, n: u32) -> u64 {
        let total = 1u64 << n;
        let mut c = 0u64;
        for (wi, w) in self.0.iter().enumerate() {
            let base = wi as u64 * 64;
            if base >= total {
                break;
            }
            c += w.count_ones() as u64;
        }
        c
    }

    fn first_unset(&self, n: u32) -> Option<u32> {
        let total = 1u64 << n;
        for (wi, &w) in self.0.iter().enumerate() {
            let base = wi as u64 * 64;
            if base >= total {
                return None;
            }
            if w != u64::MAX {
                let bit = (!w).trailing_zeros() as u64;
                let x = base + bit;
                if x < total {
                    return Some(x as u32);
                }
            }
        }
        None
    }
}

fn coverage(members: &[u32], k: u32, n: u32, mode: SearchMode) -> CoverBits {
    let full = (1u32 << n) - 1;
    let mut cur = CoverBits::empty();
    cur.set(0);
    for _ in 0..k {
        let mut next = cur;
        for &m in members {
            if m == 0 {
                continue;
            }
            match mode {
                SearchMode::Generator => {
                    let comp = full & !m;
                    for x in subsets_of(comp) {
                        if cur.get(x) {
                            next.set(x | m);
                        }
                    }
                }
                SearchMode::Base => {
                    for x in 0..=full {
                        if cur.get(x) {
                            next.set(x | m);
                        }
                    }
                }
            }
        }
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// Smallest total size m >= current that could cover `uncovered` more sets,
/// by the counting bound: the number of expressions a size-m family adds
/// over a size-c family is at most sum_{i<=k} [C(m,i) - C(c,i)].
fn counting_completion_bound(c: u64, k: u32, uncovered: u64) -> u64 {
    if uncovered == 0 {
        return c;
    }
    let k = k as usize;
    // Pascal row C(m, 0..=k), starting at m = c
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..c {
        for i in (1..=k).rev() {
            row[i] += row[i - 1];
        }
    }
    let base: u128 = row.iter().sum();
    let mut m = c;
    loop {
        let sum: u128 = row.iter().sum();
        if sum - base >= uncovered as u128 {
            return m;
        }
        m += 1;
        for i in (1..=k).rev() {
            row[i] += row[i - 1];
        }
    }
}

struct Searcher {
    n: u32,
    k: u32,
    mode: SearchMode,
    enumerate: bool,
    /// In the min phase: best feasible size found so far. In the enumerate
    /// phase: the fixed optimum size.
    bound: u64,
    best_families: BTreeSet<Vec<u32>>,
    seen: std::collections::HashSet<Vec<u32>>,
    nodes: u64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    optima_cap: usize,
    timed_out: bool,
    capped: bool,
    singleton_prefix: Vec<u32>,
    first_choice_target: u32,
}

impl Searcher {
    fn budget_exceeded(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if let Some(maxn) = self.max_nodes {
            if self.nodes > maxn {
                self.timed_out = true;
                return true;
            }
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.timed_out = true;
                    return true;
                }
            }
        }
        false
    }

    fn dfs(&mut self, family: &mut Vec<u32>) {
        self.nodes += 1;
        if self.budget_exceeded() || self.capped {
            return;
        }
        let cov = coverage(family, self.k, self.n, self.mode);
        match cov.first_unset(self.n) {
            None => {
                let size = family.len() as u64;
                if self.enumerate {
                    debug_assert!(size >= self.bound, "enumeration found a better family");
                    if size == self.bound {
                        let mut key = family.clone();
                        key.sort_unstable();
                        self.best_families.insert(key);
                        if self.best_families.len() > self.optima_cap {
                            self.capped = true;
                        }
                    }
                } else if size < self.bound {
                    self.bound = size;
                }
            }
            Some(target) => {
                let size = family.len() as u64;
                // adding one member must stay within the current goal
                let goal = if self.enumerate { self.bound } else { self.bound - 1 };
                if size + 1 > goal {
                    return;
                }
                let uncovered = (1u64 << self.n) - cov.count(self.n);
                if counting_completion_bound(size, self.k, uncovered) > goal {
                    return;
                }
                let at_root_frontier = !self.enumerate
                    && target == self.first_choice_target
                    && family[..] == self.singleton_prefix[..];
                for s in subsets_of(target) {
                    if s == 0 {
                        continue;
                    }
                    if at_root_frontier {
                        // orbit representative: a prefix set {1..j}
                        if s.count_ones() != s.trailing_ones() {
                            continue;
                        }
                    }
                    if family.binary_search(&s).is_ok() {
                        continue;
                    }
                    let pos = family.binary_search(&s).unwrap_err();
                    family.insert(pos, s);
                    if !self.seen.contains(family) {
                        self.seen.insert(family.clone());
                        self.dfs(family);
                    }
                    family.remove(pos);
                    if self.timed_out || self.capped {
                        return;
                    }
                }
            }
        }
    }
}

/// Exact minimum size of a k-generator (or k-base) of [n], optionally with
/// full enumeration of the optimum families.
pub fn min_generator_size(
    n: u32,
    k: u32,
    mode: SearchMode,
    enumerate_optima: bool,
    budget: &Budget,
) -> Result<SearchResult> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    if n > SEARCH_MAX_N {
        return Err(Error::capacity(format!(
            "exact search caps the ground size at {SEARCH_MAX_N}, got {n}"
        )));
    }
    let canonical = canonical_size(n, k)?;
    let deadline = budget
        .max_seconds
        .map(|s| Instant::now() + std::time::Duration::from_secs_f64(s));
    let singleton_prefix: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
    let first_choice_target = if (k + 1) <= n { (1u32 << (k + 1)) - 1 } else { 0 };

    let mut searcher = Searcher {
        n,
        k,
        mode,
        enumerate: false,
        bound: canonical,
        best_families: BTreeSet::new(),
        seen: std::collections::HashSet::new(),
        nodes: 0,
        max_nodes: budget.max_nodes,
        deadline,
        optima_cap: budget.optima_cap,
        timed_out: false,
        capped: false,
        singleton_prefix,
        first_choice_target,
    };

    let mut family: Vec<u32> = Vec::new();
    searcher.dfs(&mut family);

    if searcher.timed_out {
        return Ok(SearchResult {
            n,
            k,
            mode,
            min_size: searcher.bound,
            proven_lower: counting_lower_bound(n, k),
            optima: Vec::new(),
            optima_count_exact: false,
            nodes: searcher.nodes,
            status: SearchStatus::Timeout,
        });
    }
    let min_size = searcher.bound;

    let mut optima = Vec::new();
    let mut optima_count_exact = true;
    let mut status = SearchStatus::Complete;
    let mut total_nodes = searcher.nodes;
    if enumerate_optima {
        let mut enumerator = Searcher {
            enumerate: true,
            bound: min_size,
            best_families: BTreeSet::new(),
            seen: std::collections::HashSet::new(),
            nodes: 0,
            // the node budget covers both phases
            max_nodes: budget.max_nodes.map(|m| m.saturating_sub(searcher.nodes)),
            timed_out: false,
            capped: false,
            // no symmetry breaking here: enumeration must see every optimum
            singleton_prefix: Vec::new(),
            first_choice_target: 0,
            ..searcher
        };
        let mut family: Vec<u32> = Vec::new();
        enumerator.dfs(&mut family);
        total_nodes += enumerator.nodes;
        if enumerator.timed_out {
            status = SearchStatus::Timeout;
            optima_count_exact = false;
        } else if enumerator.capped {
            status = SearchStatus::Capped;
            optima_count_exact = false;
        }
        for masks in &enumerator.best_families {
            let fam = SetFamily::from_bits(n, masks)?;
            // final pass: every reported optimum must verify independently
            let feasible = match mode {
                SearchMode::Generator => crate::setfam::is_k_generator(&fam, k as usize)?,
                SearchMode::Base => crate::setfam::is_k_base(&fam, k as usize)?,
            };
            debug_assert!(feasible && fam.len() as u64 == min_size);
            if feasible && fam.len() as u64 == min_size {
                optima.push(fam);
            }
        }
    }

    Ok(SearchResult {
        n,
        k,
        mode,
        min_size,
        proven_lower: min_size,
        optima,
        optima_count_exact,
        nodes: total_nodes,
        status,
    })
}

/// Canonicity check: does the family equal the union of the power sets of
/// some balanced k-partition (minus the empty set)?
#[derive(Clone, Debug)]
pub struct CanonicityVerdict {
    pub is_canonical: bool,
    pub witness_partition: Option<GroundPartition>,
}

pub fn is_canonical(f: &SetFamily, k: u32) -> CanonicityVerdict {
    let not = CanonicityVerdict {
        is_canonical: false,
        witness_partition: None,
    };
    let n = f.ground_n();
    if k == 0 || k > n || f.is_empty() {
        return not;
    }
    // candidate blocks: the maximal members
    let members = f.members();
    let maximal: Vec<SubsetMask> = members
        .iter()
        .filter(|m| {
            !members
                .iter()
                .any(|other| other.bits() != m.bits() && m.is_subset_of(other))
        })
        .copied()
        .collect();
    if maximal.len() != k as usize {
        return not;
    }
    let partition = match GroundPartition::new(n, maximal) {
        Ok(p) => p,
        Err(_) => return not,
    };
    // sizes as equal as possible: r blocks of q+1 and k-r of q
    let q = n / k;
    let r = n % k;
    let mut sizes: Vec<u32> = partition.blocks().iter().map(|b| b.cardinality()).collect();
    sizes.sort_unstable();
    let mut want: Vec<u32> = std::iter::repeat_n(q, (k - r) as usize)
        .chain(std::iter::repeat_n(q + 1, r as usize))
        .collect();
    want.sort_unstable();
    if sizes != want {
        return not;
    }
    if canonical_generator(&partition) != *f {
        return not;
    }
    CanonicityVerdict {
        is_canonical: true,
        witness_partition: Some(partition),
    }
}

/// Number of partitions of [n] into k classes of sizes as equal as possible:
/// n! / ((q+1)!^r q!^{k-r} r! (k-r)!).
pub fn balanced_partition_count(n: u32, k: u32) -> Result<u64> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    use num::BigUint;
    let fact = |x: u32| -> num::BigUint {
        let mut acc = BigUint::from(1u32);
        for i in 2..=x {
            acc *= BigUint::from(i);
        }
        acc
    };
    let q = n / k;
    let r = n % k;
    let numer = fact(n);
    let denom = fact(q + 1).pow(r) * fact(q).pow(k - r) * fact(r) * fact(k - r);
    let count = numer / denom;
    count
        .try_into()
        .map_err(|_| Error::capacity("partition count overflows u64"))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub n: u32,
    pub k: u32,
    pub min_size: u64,
    pub canonical_size: u64,
    pub sizes_match: bool,
    pub status: SearchStatus,
    pub nodes: u64,
    /// Set when n > 2k and full enumeration completed.
    pub uniqueness_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optima_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_optima_canonical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced_partition_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts_match: Option<bool>,
}

/// Checks the minimum-size conjecture at one (n, k): the minimum equals the
/// canonical size, and for n > 2k every optimum is canonical with the optima
/// in bijection with the balanced partitions.
pub fn verify_conjecture(n: u32, k: u32, budget: &Budget) -> Result<ConjectureReport> {
    let want_uniqueness = n > 2 * k;
    let result = min_generator_size(n, k, SearchMode::Generator, want_uniqueness, budget)?;
    let canonical = canonical_size(n, k)?;
    let sizes_match = result.status == SearchStatus::Complete && result.min_size == canonical;
    let mut report = ConjectureReport {
        n,
        k,
        min_size: result.min_size,
        canonical_size: canonical,
        sizes_match,
        status: result.status,
        nodes: result.nodes,
        uniqueness_checked: false,
        optima_count: None,
        all_optima_canonical: None,
        balanced_partition_count: None,
        counts_match: None,
    };
    if want_uniqueness && result.status == SearchStatus::Complete && result.optima_count_exact {
        let all_canonical = result.optima.iter().all(|f| is_canonical(f, k).is_canonical);
        let partitions = balanced_partition_count(n, k)?;
        report.uniqueness_checked = true;
        report.optima_count = Some(result.optima.len() as u64);
        report.all_optima_canonical = Some(all_canonical);
        report.balanced_partition_count = Some(partitions);
        report.counts_match = Some(result.optima.len() as u64 == partitions);
    }
    Ok(report)
}

/// The blown-up Kneser counterexample family: partition [n] into six blocks
/// T_1..T_6 of size n/6 and take every subset lying inside some T_i ∪ T_j.
/// The fifteen power sets overlap on single-block subsets, so the
/// deduplicated size is 1 + 6(2^{n/6}-1) + 15(2^{n/6}-1)^2, strictly below
/// 15·2^{n/3}.
pub fn counterexample_family(n: u32) -> Result<SetFamily> {
    if n == 0 || !n.is_multiple_of(6) || n > 18 {
        return Err(Error::invalid(format!(
            "counterexample family needs n a positive multiple of 6, n <= 18, got {n}"
        )));
    }
    let blocks = balanced_partition(n, 6)?;
    let mut masks: Vec<u32> = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let union = blocks.blocks()[i].bits() | blocks.blocks()[j].bits();
            for s in subsets_of(union) {
                masks.push(s);
            }
        }
    }
    SetFamily::from_bits(n, &masks)
}

#[derive(Clone, Debug, Serialize)]
pub struct BlowupVerification {
    pub n: u32,
    pub family_size: u64,
    /// Sizes of the 15 classes, indexed by the pairs {i,j} in lexicographic
    /// order.
    pub class_sizes: Vec<u64>,
    pub min_class_size: u64,
    /// Required class size 2^{n/3 - 2}.
    pub required_class_size: u64,
    /// Every pair of members from classes with disjoint index pairs is
    /// disjoint (the blow-up adjacency), checked exhaustively.
    pub adjacency_ok: bool,
}

/// Exhibits the 2^{n/3}-scale blow-up of the Kneser graph K(6,2) inside the
/// disjointness graph of the counterexample family: class C_{ij} holds the
/// members inside T_i ∪ T_j meeting both blocks, and classes with disjoint
/// index pairs must be completely joined.
pub fn verify_kneser_blowup(n: u32) -> Result<BlowupVerification> {
    if n == 0 || !n.is_multiple_of(6) || n > 12 {
        return Err(Error::capacity(format!(
            "blow-up verification needs n a positive multiple of 6, n <= 12, got {n}"
        )));
    }
    let family = counterexample_family(n)?;
    let blocks = balanced_partition(n, 6)?;
    let block_bits: Vec<u32> = blocks.blocks().iter().map(|b| b.bits()).collect();

    let mut pairs = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            pairs.push((i, j));
        }
    }
    let classes: Vec<Vec<u32>> = pairs
        .iter()
        .map(|&(i, j)| {
            let union = block_bits[i] | block_bits[j];
            family
                .iter()
                .map(|m| m.bits())
                .filter(|&b| b & !union == 0 && b & block_bits[i] != 0 && b & block_bits[j] != 0)
                .collect()
        })
        .collect();

    let class_sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let min_class_size = *class_sizes.iter().min().unwrap();
    let required_class_size = 1u64 << (n / 3 - 2);
    if min_class_size < required_class_size {
        return Ok(BlowupVerification {
            n,
            family_size: family.len() as u64,
            class_sizes,
            min_class_size,
            required_class_size,
            adjacency_ok: false,
        });
    }

    let mut adjacency_ok = true;
    'outer: for (pi, &(i, j)) in pairs.iter().enumerate() {
        for (qi, &(a, b)) in pairs.iter().enumerate() {
            if qi <= pi {
                continue;
            }
            if i == a || i == b || j == a || j == b {
                continue; // index pairs intersect: no adjacency requirement
            }
            for &x in &classes[pi] {
                for &y in &classes[qi] {
                    if x & y != 0 {
                        adjacency_ok = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    Ok(BlowupVerification {
        n,
        family_size: family.len() as u64,
        class_sizes,
        min_class_size,
        required_class_size,
        adjacency_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfam::is_k_generator;

    fn default_budget() -> Budget {
        Budget::default()
    }

    /// Runs the min phase with the root orbit restriction switched off.
    fn min_size_without_symmetry_breaking(n: u32, k: u32, mode: SearchMode) -> u64 {
        let mut searcher = Searcher {
            n,
            k,
            mode,
            enumerate: false,
            bound: canonical_size(n, k).unwrap(),
            best_families: BTreeSet::new(),
            seen: std::collections::HashSet::new(),
            nodes: 0,
            max_nodes: None,
            deadline: None,
            optima_cap: usize::MAX,
            timed_out: false,
            capped: false,
            singleton_prefix: Vec::new(),
            first_choice_target: 0, // never matches a real target
        };
        let mut family = Vec::new();
        searcher.dfs(&mut family);
        assert!(!searcher.timed_out);
        searcher.bound
    }

    #[test]
    fn symmetry_breaking_preserves_the_minimum() {
        for (n, k) in [(3u32, 2u32), (4, 2), (5, 2), (4, 3), (5, 3), (6, 3), (6, 2)] {
            for mode in [SearchMode::Generator, SearchMode::Base] {
                let pruned =
                    min_generator_size(n, k, mode, false, &Budget::default()).unwrap();
                let unpruned = min_size_without_symmetry_breaking(n, k, mode);
                assert_eq!(
                    pruned.min_size, unpruned,
                    "symmetry breaking changed the minimum at (n,k)=({n},{k}) {mode:?}"
                );
            }
        }
    }

    #[test]
    fn search_coverage_agrees_with_setfam_tables() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(321);
        for _ in 0..40 {
            let n = 1 + rng.gen_range(0..6u32);
            let count = rng.gen_range(0..10usize);
            let mut members: Vec<u32> = (0..count)
                .map(|_| rng.gen_range(0..(1u32 << n)))
                .collect();
            members.sort_unstable();
            members.dedup();
            let fam = SetFamily::from_bits(n, &members).unwrap();
            let k = 1 + rng.gen_range(0..3u32);
            let disjoint = coverage(&members, k, n, SearchMode::Generator);
            let overlapping = coverage(&members, k, n, SearchMode::Base);
            let table_d = crate::setfam::enumerate_k_unions(&fam, k as usize).unwrap();
            let table_o =
                crate::setfam::enumerate_k_unions_overlapping(&fam, k as usize).unwrap();
            for x in 0..(1u32 << n) {
                assert_eq!(disjoint.get(x), table_d.covered_bits(x), "disjoint at {x:#b}");
                assert_eq!(overlapping.get(x), table_o.covered_bits(x), "overlap at {x:#b}");
            }
        }
    }

    #[test]
    fn min_size_small_cases() {
        let r = min_generator_size(2, 2, SearchMode::Generator, false, &default_budget()).unwrap();
        assert_eq!(r.min_size, 2);
        assert_eq!(r.status, SearchStatus::Complete);

        let r = min_generator_size(3, 2, SearchMode::Generator, false, &default_budget()).unwrap();
        assert_eq!(r.min_size, 4);

        let r = min_generator_size(4, 2, SearchMode::Generator, false, &default_budget()).unwrap();
        assert_eq!(r.min_size, 6);

        let r = min_generator_size(4, 4, SearchMode::Generator, false, &default_budget()).unwrap();
        assert_eq!(r.min_size, 4);
    }

    #[test]
    fn bound_sandwich_holds() {
        for (n, k) in [(2u32, 2u32), (3, 2), (4, 2), (3, 3), (4, 3), (4, 4)] {
            let r = min_generator_size(n, k, SearchMode::Generator, false, &default_budget()).unwrap();
            assert!(r.min_size >= counting_lower_bound(n, k), "(n,k)=({n},{k})");
            assert!(r.min_size <= canonical_size(n, k).unwrap());
            assert_eq!(r.proven_lower, r.min_size);
        }
    }

    #[test]
    fn optima_are_generators_of_min_size() {
        let r = min_generator_size(4, 2, SearchMode::Generator, true, &default_budget()).unwrap();
        assert!(r.optima_count_exact);
        assert!(!r.optima.is_empty());
        for fam in &r.optima {
            assert_eq!(fam.len() as u64, r.min_size);
            assert!(is_k_generator(fam, 2).unwrap());
        }
    }

    #[test]
    fn five_two_has_ten_canonical_optima() {
        let r = min_generator_size(5, 2, SearchMode::Generator, true, &default_budget()).unwrap();
        assert_eq!(r.min_size, 10);
        assert_eq!(r.status, SearchStatus::Complete);
        assert!(r.optima_count_exact);
        assert_eq!(r.optima.len(), 10);
        for fam in &r.optima {
            let verdict = is_canonical(fam, 2);
            assert!(verdict.is_canonical, "non-canonical optimum {fam:?}");
        }
        // distinct balanced partitions
        let mut partitions: Vec<Vec<u32>> = r
            .optima
            .iter()
            .map(|f| {
                let mut blocks: Vec<u32> = is_canonical(f, 2)
                    .witness_partition
                    .unwrap()
                    .blocks()
                    .iter()
                    .map(|b| b.bits())
                    .collect();
                blocks.sort_unstable();
                blocks
            })
            .collect();
        partitions.sort();
        partitions.dedup();
        assert_eq!(partitions.len(), 10);
        assert_eq!(balanced_partition_count(5, 2).unwrap(), 10);
    }

    #[test]
    fn base_mode_never_needs_more_than_generator_mode() {
        for (n, k) in [(3u32, 2u32), (4, 2), (4, 3), (5, 2)] {
            let g = min_generator_size(n, k, SearchMode::Generator, false, &default_budget()).unwrap();
            let b = min_generator_size(n, k, SearchMode::Base, false, &default_budget()).unwrap();
            assert!(b.min_size <= g.min_size, "(n,k)=({n},{k})");
        }
    }

    #[test]
    fn node_budget_times_out() {
        let budget = Budget {
            max_nodes: Some(3),
            ..Budget::default()
        };
        let r = min_generator_size(5, 2, SearchMode::Generator, false, &budget).unwrap();
        assert_eq!(r.status, SearchStatus::Timeout);
        assert!(r.proven_lower <= r.min_size);
        assert_eq!(r.min_size, canonical_size(5, 2).unwrap());
    }

    #[test]
    fn verify_conjecture_cases() {
        let rep = verify_conjecture(5, 2, &default_budget()).unwrap();
        assert!(rep.sizes_match);
        assert!(rep.uniqueness_checked);
        assert_eq!(rep.optima_count, Some(10));
        assert_eq!(rep.all_optima_canonical, Some(true));
        assert_eq!(rep.counts_match, Some(true));

        let rep = verify_conjecture(4, 2, &default_budget()).unwrap();
        assert!(rep.sizes_match);
        assert!(!rep.uniqueness_checked); // n = 2k

        let rep = verify_conjecture(3, 3, &default_budget()).unwrap();
        assert!(rep.sizes_match);
        assert_eq!(rep.min_size, 3);
    }

    #[test]
    fn canonicity_examples() {
        let f62 = canonical_generator(&balanced_partition(6, 2).unwrap());
        let verdict = is_canonical(&f62, 2);
        assert!(verdict.is_canonical);
        let witness = verdict.witness_partition.unwrap();
        let mut bits: Vec<u32> = witness.blocks().iter().map(|b| b.bits()).collect();
        bits.sort_unstable();
        assert_eq!(bits, vec![0b000111, 0b111000]);

        // remove one member: no longer canonical
        let smaller = SetFamily::from_masks(
            6,
            f62.iter().skip(1).copied().collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(!is_canonical(&smaller, 2).is_canonical);

        // unbalanced blocks {1,2} and {3,4,5,6}
        let mut masks: Vec<u32> = subsets_of(0b000011).filter(|&s| s != 0).collect();
        masks.extend(subsets_of(0b111100).filter(|&s| s != 0));
        let unbalanced = SetFamily::from_bits(6, &masks).unwrap();
        assert!(is_k_generator(&unbalanced, 2).unwrap());
        assert!(!is_canonical(&unbalanced, 2).is_canonical);
    }

    #[test]
    fn counterexample_family_small() {
        let f = counterexample_family(6).unwrap();
        assert_eq!(f.len(), 22); // all subsets of [6] of size <= 2
        assert!(f.iter().all(|m| m.cardinality() <= 2));

        let f12 = counterexample_family(12).unwrap();
        // direct census: sets touching at most 2 of the six 2-blocks
        // 1 + 6·(2^2-1) + 15·(2^2-1)^2 = 1 + 18 + 135
        assert_eq!(f12.len(), 154);
        assert!(counterexample_family(7).is_err());
    }

    #[test]
    fn counterexample_size_by_inclusion_exclusion() {
        // |A| = 1 + 6(2^{n/6}-1) + 15(2^{n/6}-1)^2, by classifying members
        // by the number of blocks they touch
        for n in [6u32, 12, 18] {
            let f = counterexample_family(n).unwrap();
            let w = (1u64 << (n / 6)) - 1;
            assert_eq!(f.len() as u64, 1 + 6 * w + 15 * w * w);
            // strictly below the non-deduplicated 15·2^{n/3}
            assert!((f.len() as u64) < 15 * (1u64 << (n / 3)));
        }
    }

    #[test]
    fn kneser_blowup_verification() {
        let v = verify_kneser_blowup(6).unwrap();
        assert!(v.adjacency_ok);
        assert_eq!(v.min_class_size, 1);
        assert_eq!(v.required_class_size, 1);
        assert_eq!(v.class_sizes.len(), 15);

        let v = verify_kneser_blowup(12).unwrap();
        assert!(v.adjacency_ok);
        assert_eq!(v.required_class_size, 4);
        assert!(v.min_class_size >= 4);
        assert_eq!(v.min_class_size, 9); // (2^{12/6} - 1)^2

        assert!(verify_kneser_blowup(18).is_err());
    }

    #[test]
    fn permutation_invariance_of_optima() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let r = min_generator_size(4, 2, SearchMode::Generator, true, &default_budget()).unwrap();
        assert!(r.optima_count_exact);
        let optima_set: BTreeSet<Vec<u32>> = r
            .optima
            .iter()
            .map(|f| f.iter().map(|m| m.bits()).collect())
            .collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let mut perm: Vec<u32> = (0..4).collect();
            perm.shuffle(&mut rng);
            for fam in &r.optima {
                let mut mapped: Vec<u32> = fam
                    .iter()
                    .map(|m| {
                        let mut out = 0u32;
                        for e in 0..4 {
                            if m.bits() >> e & 1 == 1 {
                                out |= 1 << perm[e as usize];
                            }
                        }
                        out
                    })
                    .collect();
                mapped.sort_unstable();
                assert!(
                    optima_set.contains(&mapped),
                    "permuted optimum missing: {mapped:?}"
                );
            }
        }
    }
}
