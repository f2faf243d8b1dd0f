//! Constructive machinery behind the stability arguments: min-degree
//! pruning, the dangerous/treacherous/good clique classification, extraction
//! of a k-partition with its exact removal bound, exact partization
//! distances for small graphs, and checkers for the entropy and k-partite
//! edge inequalities.
//!
//! Thresholds of the form `count >= sqrt(alpha) * c` are compared exactly by
//! squaring; no floating point enters any verdict.

use num::{BigRational, BigUint, One, Signed, Zero};

use crate::bits::{binom_big, falling, for_each_combination};
use crate::error::{Error, Result};
use crate::kneser::{clique_count, clique_density, has_clique, Graph};
use crate::setfam::{SetFamily, SubsetMask};

/// Cap for the clique-classification pipeline (orders beyond this are out
/// of desk scale for exhaustive clique listing).
pub const STABILITY_MAX_ORDER: usize = 64;
/// Cap for exact max-cut enumeration.
pub const MAXCUT_MAX_ORDER: usize = 24;
/// Cap for exact k-partization with k >= 3.
pub const KPART_MAX_ORDER: usize = 16;

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn binom_rat(n: u64, k: u64) -> BigRational {
    BigRational::from_integer(BigUint::to_owned(&binom_big(n, k)).into())
}

/// Rational upper bound on sqrt(x), within 2^-63 of the true root.
fn sqrt_upper(x: &BigRational) -> BigRational {
    assert!(!x.is_negative());
    let scale = BigUint::one() << 64u32;
    let p = x.numer().to_biguint().expect("nonnegative numerator");
    let q = x.denom().to_biguint().expect("positive denominator");
    let scaled = (&p * (&scale * &scale) + &q - BigUint::one()) / &q;
    let mut s = scaled.sqrt();
    if &s * &s < scaled {
        s += BigUint::one();
    }
    BigRational::new(s.into(), scale.into())
}

/// Exact comparison `value <= a + b*sqrt(alpha)` with rational a, b >= 0,
/// alpha >= 0.
fn le_plus_sqrt(value: &BigRational, a: &BigRational, b: &BigRational, alpha: &BigRational) -> bool {
    let diff = value - a;
    if !diff.is_positive() {
        return true;
    }
    &diff * &diff <= b * b * alpha
}

// ---------------------------------------------------------------------------
// Min-degree pruning
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct PruneStep {
    /// Vertex index in the original graph.
    pub vertex: usize,
    /// Degree inside the surviving subgraph at the moment of deletion.
    pub degree: usize,
    /// Order of the surviving subgraph at the moment of deletion.
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct PruneResult {
    /// The fixed-point induced subgraph.
    pub graph: Graph,
    /// Original indices of the surviving vertices, ascending.
    pub kept: Vec<usize>,
    /// Deletions in the order they happened.
    pub log: Vec<PruneStep>,
}

/// Repeatedly deletes the lowest-index vertex whose degree falls below
/// `(1 - 1/k - sqrt(delta)) * (order - 1)` until none does.
pub fn min_degree_prune(g: &Graph, k: usize, delta: &BigRational) -> Result<PruneResult> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if delta.is_negative() || delta > &BigRational::one() {
        return Err(Error::invalid("delta must lie in [0, 1]"));
    }
    let n = g.order();
    let words = n.div_ceil(64).max(1);
    let mut alive = vec![u64::MAX; words];
    if words * 64 > n {
        alive[words - 1] = if n.is_multiple_of(64) {
            u64::MAX
        } else {
            (1u64 << (n % 64)) - 1
        };
    }
    if n == 0 {
        alive[0] = 0;
    }
    let mut order = n;
    let mut log = Vec::new();
    let one_minus = BigRational::one() - BigRational::new(1.into(), (k as u64).into());
    loop {
        let mut deleted = None;
        for v in 0..n {
            if alive[v / 64] >> (v % 64) & 1 == 0 {
                continue;
            }
            let deg: usize = g
                .row(v)
                .iter()
                .zip(alive.iter())
                .map(|(r, a)| (r & a).count_ones() as usize)
                .sum();
            // deg < (1 - 1/k - sqrt(delta)) (order-1)
            // <=> (1 - 1/k)(order-1) - deg > sqrt(delta) (order-1)
            let slack = &one_minus * rat(order as u64 - 1) - rat(deg as u64);
            let fails = slack.is_positive()
                && &slack * &slack > delta * rat(order as u64 - 1) * rat(order as u64 - 1);
            if fails {
                deleted = Some((v, deg));
                break;
            }
        }
        match deleted {
            Some((v, deg)) => {
                alive[v / 64] &= !(1u64 << (v % 64));
                log.push(PruneStep {
                    vertex: v,
                    degree: deg,
                    order,
                });
                order -= 1;
                if order == 0 {
                    break;
                }
            }
            None => break,
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v / 64] >> (v % 64) & 1 == 1).collect();
    let graph = g.induced(&kept)?;
    Ok(PruneResult { graph, kept, log })
}

// ---------------------------------------------------------------------------
// Clique classification and k-partition extraction
// ---------------------------------------------------------------------------

/// Lists all t-cliques as ascending vertex lists, in lexicographic order.
pub fn list_cliques(g: &Graph, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if t == 0 {
        out.push(Vec::new());
        return out;
    }
    if t > g.order() {
        return out;
    }
    let words = g.order().div_ceil(64).max(1);
    let mut all = vec![u64::MAX; words];
    let excess = words * 64 - g.order();
    if excess > 0 {
        all[words - 1] = u64::MAX >> excess;
    }
    let mut cur = Vec::with_capacity(t);
    fn rec(
        g: &Graph,
        cand: &[u64],
        cur: &mut Vec<usize>,
        need: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if need == 0 {
            out.push(cur.clone());
            return;
        }
        let mut next = vec![0u64; cand.len()];
        for (wi, &w) in cand.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let v = wi * 64 + b;
                next.copy_from_slice(cand);
                for (nw, rw) in next.iter_mut().zip(g.row(v).iter()) {
                    *nw &= rw;
                }
                next[wi] &= crate::bits::above_bit_mask(b);
                for low in next.iter_mut().take(wi) {
                    *low = 0;
                }
                cur.push(v);
                rec(g, &next, cur, need - 1, out);
                cur.pop();
            }
        }
    }
    rec(g, &all, &mut cur, t, &mut out);
    out
}

fn is_clique(g: &Graph, verts: &[usize]) -> bool {
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if u == v || !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

fn common_neighborhood(g: &Graph, verts: &[usize]) -> Vec<u64> {
    let words = g.order().div_ceil(64).max(1);
    let mut acc = vec![u64::MAX; words];
    let excess = words * 64 - g.order();
    if excess > 0 {
        acc[words - 1] = u64::MAX >> excess;
    }
    for &v in verts {
        for (a, r) in acc.iter_mut().zip(g.row(v).iter()) {
            *a &= r;
        }
    }
    acc
}

fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

fn edges_within(g: &Graph, mask: &[u64]) -> u64 {
    let mut total = 0u64;
    for (wi, &w) in mask.iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let v = wi * 64 + b;
            total += g
                .row(v)
                .iter()
                .zip(mask.iter())
                .map(|(r, m)| (r & m).count_ones() as u64)
                .sum::<u64>();
        }
    }
    total / 2
}

/// The dangerous/treacherous/good classification of (k-1)- and k-cliques by
/// how many K_{k+1}'s contain them, with the square-root thresholds taken
/// against the measured K_{k+1}-density alpha.
#[derive(Clone, Debug)]
pub struct CliqueClassification {
    pub k: usize,
    pub order: usize,
    /// Measured K_{k+1}-density.
    pub alpha: BigRational,
    /// (k-1)-cliques contained in at least sqrt(alpha)·C(n-k+1, 2) many
    /// K_{k+1}'s (and in at least one).
    pub dangerous: Vec<Vec<usize>>,
    /// k-cliques contained in at least sqrt(alpha)·(n-k) many K_{k+1}'s
    /// (and in at least one).
    pub treacherous: Vec<Vec<usize>>,
    pub good: Vec<Vec<usize>>,
    pub bad: Vec<Vec<usize>>,
}

impl CliqueClassification {
    /// The double-counting bound D <= sqrt(alpha)·C(n, k-1), checked exactly.
    pub fn dangerous_bound_holds(&self) -> bool {
        let d = rat(self.dangerous.len() as u64);
        let c = binom_rat(self.order as u64, self.k as u64 - 1);
        &d * &d <= &self.alpha * &c * &c
    }

    /// The analogous bound for treacherous sets: at most sqrt(alpha)·C(n, k).
    pub fn treacherous_bound_holds(&self) -> bool {
        let t = rat(self.treacherous.len() as u64);
        let c = binom_rat(self.order as u64, self.k as u64);
        &t * &t <= &self.alpha * &c * &c
    }
}

fn check_stability_order(g: &Graph) -> Result<()> {
    if g.order() > STABILITY_MAX_ORDER {
        return Err(Error::capacity(format!(
            "stability pipeline caps order at {STABILITY_MAX_ORDER}, got {}",
            g.order()
        )));
    }
    Ok(())
}

pub fn classify_cliques(g: &Graph, k: usize) -> Result<CliqueClassification> {
    check_stability_order(g)?;
    if k < 2 {
        return Err(Error::invalid("classification needs k >= 2"));
    }
    let n = g.order();
    if n < k + 1 {
        return Err(Error::invalid(format!(
            "classification needs order >= k+1 = {}, got {n}",
            k + 1
        )));
    }
    if clique_count(g, k) == 0 {
        return Err(Error::EmptyDomain(k));
    }
    let alpha = clique_density(g, k + 1).value;

    // count(T) for a (k-1)-clique T is the number of edges inside N(T);
    // count(S) for a k-clique S is |N(S)|. Thresholds compare by squaring.
    let n_u = n as u64;
    let k_u = k as u64;
    let thr_dangerous = {
        let c = binom_rat(n_u - k_u + 1, 2);
        &alpha * &c * &c
    };
    let thr_treacherous = {
        let c = rat(n_u - k_u);
        &alpha * &c * &c
    };

    let mut dangerous = Vec::new();
    let mut dangerous_facet_lookup: std::collections::HashSet<Vec<usize>> =
        std::collections::HashSet::new();
    for t_set in list_cliques(g, k - 1) {
        let nbhd = common_neighborhood(g, &t_set);
        let count = edges_within(g, &nbhd);
        if count >= 1 {
            let c = rat(count);
            if &c * &c >= thr_dangerous {
                dangerous_facet_lookup.insert(t_set.clone());
                dangerous.push(t_set);
            }
        }
    }

    let mut treacherous = Vec::new();
    let mut good = Vec::new();
    let mut bad = Vec::new();
    for s_set in list_cliques(g, k) {
        let nbhd = common_neighborhood(g, &s_set);
        let count = popcount(&nbhd);
        let mut is_bad = false;
        if count >= 1 {
            let c = rat(count);
            if &c * &c >= thr_treacherous {
                treacherous.push(s_set.clone());
                is_bad = true;
            }
        }
        if !is_bad && !dangerous_facet_lookup.is_empty() {
            let mut facet = Vec::with_capacity(k - 1);
            for skip in 0..k {
                facet.clear();
                facet.extend(s_set.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                if dangerous_facet_lookup.contains(&facet) {
                    is_bad = true;
                    break;
                }
            }
        }
        if is_bad {
            bad.push(s_set);
        } else {
            good.push(s_set);
        }
    }

    Ok(CliqueClassification {
        k,
        order: n,
        alpha,
        dangerous,
        treacherous,
        good,
        bad,
    })
}

/// `f(S) = sum over (k-1)-subsets T of S of |N(T)|` for a k-clique S.
pub fn f_value(g: &Graph, s: &[usize]) -> Result<u64> {
    if s.is_empty() {
        return Err(Error::invalid("empty vertex set"));
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s.len() || sorted.iter().any(|&v| v >= g.order()) {
        return Err(Error::invalid("vertex set has duplicates or out-of-range vertices"));
    }
    if !is_clique(g, &sorted) {
        return Err(Error::invalid("vertex set does not induce a clique"));
    }
    let mut total = 0u64;
    for skip in 0..sorted.len() {
        let facet: Vec<usize> = sorted
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect();
        total += popcount(&common_neighborhood(g, &facet));
    }
    Ok(total)
}

/// Everything the extraction measures and produces: the densities entering
/// the removal bound, the chosen clique, the partition, and the edges that
/// had to go. Densities are exact fractions; `psi` is a rational upper
/// bound on the removal fraction (the only place a square root appears,
/// rounded up by less than 2^-63). `bound_holds` is the exact comparison.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub k: usize,
    pub order: usize,
    pub alpha: BigRational,
    /// Measured from the K_{k-1}-density; may be negative. Clamped to 0 when
    /// the removal bound is evaluated.
    pub beta: BigRational,
    /// Measured from the K_k-density; negative when the graph is denser than
    /// the Turán graph. Also clamped to 0 for the bound (a negative value
    /// still satisfies the density hypothesis at 0).
    pub gamma: BigRational,
    /// Rational upper bound on the removal fraction
    /// `2β + 2γ + (8 k^{k+1} (k+1) / k!) sqrt(α) + 2k/n`.
    pub psi: BigRational,
    pub chosen_clique: Vec<usize>,
    pub f_value_of_chosen: u64,
    pub partition: Vec<Vec<usize>>,
    pub removed_edges: u64,
    pub removed: Vec<(usize, usize)>,
    /// gamma <= 1/2 (a good clique existed, or extraction would have failed).
    pub hypotheses_hold: bool,
    /// removed_edges <= (2β+2γ+(8k^{k+1}(k+1)/k!)√α+2k/n)·C(n,2), exactly.
    pub bound_holds: bool,
}

fn factorial_rat(k: u64) -> BigRational {
    let mut acc = BigUint::one();
    for i in 2..=k {
        acc *= BigUint::from(i);
    }
    BigRational::from_integer(acc.into())
}

fn pow_rat(base: u64, exp: u32) -> BigRational {
    BigRational::from_integer(BigUint::from(base).pow(exp).into())
}

/// Picks the good k-clique S maximizing f(S) (ties: lexicographically
/// smallest), builds W_i = N(T_i) \ N(S) from the facets T_i of S, spreads
/// the leftover vertices onto the smallest classes, and deletes all
/// intra-class edges.
pub fn extract_k_partition(g: &Graph, k: usize) -> Result<StabilityReport> {
    let classification = classify_cliques(g, k)?;
    if classification.good.is_empty() {
        return Err(Error::NoGoodClique {
            alpha: classification.alpha.to_string(),
        });
    }
    let n = g.order();
    let words = n.div_ceil(64).max(1);

    // good cliques come out of list_cliques in lexicographic order, so the
    // first strict maximum is the tie-broken choice
    let mut chosen: &Vec<usize> = &classification.good[0];
    let mut best_f = f_value(g, chosen)?;
    for s in classification.good.iter().skip(1) {
        let f = f_value(g, s)?;
        if f > best_f {
            best_f = f;
            chosen = s;
        }
    }

    let ns = common_neighborhood(g, chosen);
    let mut classes_mask: Vec<Vec<u64>> = Vec::with_capacity(k);
    let mut assigned = vec![0u64; words];
    for skip in 0..k {
        let facet: Vec<usize> = chosen
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect();
        let mut w = common_neighborhood(g, &facet);
        for (wi, nsw) in w.iter_mut().zip(ns.iter()) {
            *wi &= !nsw;
        }
        for (a, b) in w.iter().zip(assigned.iter()) {
            debug_assert_eq!(a & b, 0, "W_i classes must be pairwise disjoint");
        }
        for (a, b) in assigned.iter_mut().zip(w.iter()) {
            *a |= b;
        }
        classes_mask.push(w);
    }

    let mut classes: Vec<Vec<usize>> = classes_mask
        .iter()
        .map(|mask| {
            let mut vs = Vec::new();
            for (wi, &w) in mask.iter().enumerate() {
                let mut rest = w;
                while rest != 0 {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    vs.push(wi * 64 + b);
                }
            }
            vs
        })
        .collect();

    // leftover vertices go to the currently smallest class, ascending order
    for v in 0..n {
        if assigned[v / 64] >> (v % 64) & 1 == 0 {
            let target = (0..k).min_by_key(|&i| (classes[i].len(), i)).unwrap();
            classes[target].push(v);
        }
    }
    for c in classes.iter_mut() {
        c.sort_unstable();
    }

    let mut removed = Vec::new();
    for class in &classes {
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i + 1..] {
                if g.has_edge(u, v) {
                    removed.push((u, v));
                }
            }
        }
    }
    removed.sort_unstable();
    let removed_edges = removed.len() as u64;

    // measured densities relative to the bound's normalizations
    let k_u = k as u64;
    let n_u = n as u64;
    let alpha = classification.alpha.clone();
    let kfact = factorial_rat(k_u);
    let d_km1 = clique_density(g, k - 1).value;
    let beta = d_km1 * pow_rat(k_u, k as u32 - 1) / &kfact - BigRational::one();
    let d_k = clique_density(g, k).value;
    let gamma = BigRational::one() - d_k * pow_rat(k_u, k as u32) / &kfact;

    let clamp = |x: &BigRational| {
        if x.is_negative() {
            BigRational::zero()
        } else {
            x.clone()
        }
    };
    let beta_clamped = clamp(&beta);
    let gamma_clamped = clamp(&gamma);
    let coef = rat(8) * pow_rat(k_u, k as u32 + 1) * rat(k_u + 1) / &kfact;
    let two_k_over_n = BigRational::new((2 * k_u).into(), n_u.into());
    let linear = rat(2) * &beta_clamped + rat(2) * &gamma_clamped + &two_k_over_n;
    let psi = &linear + &coef * sqrt_upper(&alpha);

    let half = BigRational::new(1.into(), 2.into());
    let hypotheses_hold = gamma <= half;
    let choose2 = binom_rat(n_u, 2);
    let bound_holds = le_plus_sqrt(
        &rat(removed_edges),
        &(&linear * &choose2),
        &(&coef * &choose2),
        &alpha,
    );

    Ok(StabilityReport {
        k,
        order: n,
        alpha,
        beta,
        gamma,
        psi,
        chosen_clique: chosen.clone(),
        f_value_of_chosen: best_f,
        partition: classes,
        removed_edges,
        removed,
        hypotheses_hold,
        bound_holds,
    })
}

// ---------------------------------------------------------------------------
// Exact partization distances
// ---------------------------------------------------------------------------

/// Edges that must go to make the graph bipartite: e(g) − maxcut(g), with
/// the max cut found by Gray-code enumeration of the 2^{order-1} splits.
pub fn bipartization_distance_exact(g: &Graph) -> Result<u64> {
    let n = g.order();
    if n > MAXCUT_MAX_ORDER {
        return Err(Error::capacity(format!(
            "exact max-cut caps order at {MAXCUT_MAX_ORDER}, got {n}"
        )));
    }
    let e = g.edge_count();
    if n <= 1 || e == 0 {
        return Ok(0);
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row_u64(v)).collect();
    let degs: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let mut side = 0u64; // bit v set = side B; vertex 0 stays on side A
    let mut cut: i64 = 0;
    let mut best: i64 = 0;
    let steps = 1u64 << (n - 1);
    for c in 1..steps {
        let v = c.trailing_zeros() as usize + 1;
        let on_b = side >> v & 1 == 1;
        let nb_b = (rows[v] & side).count_ones() as i64;
        let nb_a = degs[v] - nb_b;
        // flipping v turns same-side edges into cut edges and back
        let delta = if on_b { nb_b - nb_a } else { nb_a - nb_b };
        cut += delta;
        side ^= 1u64 << v;
        if cut > best {
            best = cut;
        }
    }
    Ok(e - best as u64)
}

/// Minimum number of intra-class edges over all k-partitions, by
/// branch-and-bound over vertex assignments.
pub fn kpartization_distance_exact(g: &Graph, k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let n = g.order();
    let cap = if k >= 3 { KPART_MAX_ORDER } else { MAXCUT_MAX_ORDER };
    if n > cap {
        return Err(Error::capacity(format!(
            "exact {k}-partization caps order at {cap}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    if k >= n {
        return Ok(0);
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row_u64(v)).collect();

    // greedy incumbent: each vertex to the class adding fewest intra edges
    let mut class_masks = vec![0u64; k];
    let mut greedy_cost = 0u64;
    for (v, row) in rows.iter().enumerate() {
        let (best_c, best_add) = (0..k)
            .map(|c| (c, (row & class_masks[c]).count_ones() as u64))
            .min_by_key(|&(c, add)| (add, c))
            .unwrap();
        class_masks[best_c] |= 1u64 << v;
        greedy_cost += best_add;
    }

    struct Search<'a> {
        rows: &'a [u64],
        k: usize,
        best: u64,
    }
    impl Search<'_> {
        fn rec(&mut self, v: usize, class_masks: &mut [u64], used: usize, cost: u64) {
            if cost >= self.best {
                return;
            }
            if v == self.rows.len() {
                self.best = cost;
                return;
            }
            // restricted growth: open at most one new class
            let limit = (used + 1).min(self.k);
            for c in 0..limit {
                let add = (self.rows[v] & class_masks[c]).count_ones() as u64;
                class_masks[c] |= 1u64 << v;
                self.rec(v + 1, class_masks, used.max(c + 1), cost + add);
                class_masks[c] &= !(1u64 << v);
            }
        }
    }
    let mut search = Search {
        rows: &rows,
        k,
        best: greedy_cost,
    };
    let mut masks = vec![0u64; k];
    search.rec(0, &mut masks, 0, 0);
    Ok(search.best)
}

// ---------------------------------------------------------------------------
// Entropy and edge-bound checkers
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ShearerReport {
    pub r: u32,
    pub family_size: usize,
    /// |F|^r
    pub lhs: BigUint,
    /// Product of the projection sizes |F_A| over the cover.
    pub rhs: BigUint,
    pub projection_sizes: Vec<usize>,
    pub holds: bool,
}

/// Projects the family onto every cover set and checks
/// `|F|^r <= prod |F_A|`. The cover must hit every element of `ground` at
/// least `r` times and the family must live inside `ground`.
pub fn shearer_check(
    ground: &SubsetMask,
    cover: &[SubsetMask],
    r: u32,
    fam: &SetFamily,
) -> Result<ShearerReport> {
    if r == 0 {
        return Err(Error::invalid("cover multiplicity r must be at least 1"));
    }
    if fam.ground_n() != ground.ground_n() {
        return Err(Error::invalid("family and ground use different ground sizes"));
    }
    for a in cover {
        if a.ground_n() != ground.ground_n() {
            return Err(Error::invalid("cover set uses a different ground size"));
        }
        if !a.is_subset_of(ground) {
            return Err(Error::invalid(format!("cover set {a} is not inside the ground set")));
        }
    }
    for m in fam.iter() {
        if !m.is_subset_of(ground) {
            return Err(Error::invalid(format!("family member {m} is not inside the ground set")));
        }
    }
    for e in ground.elems() {
        let mult = cover.iter().filter(|a| a.contains(e)).count();
        if (mult as u32) < r {
            return Err(Error::invalid(format!(
                "element {e} lies in only {mult} cover sets, need at least {r}"
            )));
        }
    }
    let mut projection_sizes = Vec::with_capacity(cover.len());
    let mut rhs = BigUint::one();
    for a in cover {
        let mut proj: Vec<u32> = fam.iter().map(|m| m.bits() & a.bits()).collect();
        proj.sort_unstable();
        proj.dedup();
        projection_sizes.push(proj.len());
        rhs *= BigUint::from(proj.len());
    }
    let lhs = BigUint::from(fam.len()).pow(r);
    let holds = lhs <= rhs;
    Ok(ShearerReport {
        r,
        family_size: fam.len(),
        lhs,
        rhs,
        projection_sizes,
        holds,
    })
}

#[derive(Clone, Debug)]
pub struct EdgeBoundReport {
    pub k: usize,
    pub edge_count: u64,
    pub clique_count: BigUint,
    /// e(g)^k
    pub lhs: BigUint,
    /// C(k,2)^k · K_k(g)^2
    pub rhs: BigUint,
    pub holds: bool,
}

/// For a valid k-partite graph, checks `e(g)^k >= C(k,2)^k * K_k(g)^2`
/// (the integer power form of `e >= C(k,2) K_k^{2/k}`).
pub fn kpartite_edge_bound_check(g: &Graph, parts: &[Vec<usize>]) -> Result<EdgeBoundReport> {
    let n = g.order();
    let mut seen = vec![false; n];
    for class in parts {
        for &v in class {
            if v >= n {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
            if seen[v] {
                return Err(Error::invalid(format!("vertex {v} appears in two classes")));
            }
            seen[v] = true;
        }
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i + 1..] {
                if g.has_edge(u, v) {
                    return Err(Error::invalid(format!(
                        "intra-class edge ({u},{v}) violates the k-partition"
                    )));
                }
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::invalid("partition does not cover every vertex"));
    }
    let k = parts.len();
    let e = g.edge_count();
    let kk = clique_count(g, k);
    let kk_big = BigUint::from(kk);
    let lhs = BigUint::from(e).pow(k as u32);
    let rhs = binom_big(k as u64, 2).pow(k as u32) * &kk_big * &kk_big;
    let holds = lhs >= rhs;
    Ok(EdgeBoundReport {
        k,
        edge_count: e,
        clique_count: kk_big,
        lhs,
        rhs,
        holds,
    })
}

#[derive(Clone, Debug)]
pub struct SampledDensityBound {
    pub k: usize,
    pub r: usize,
    pub l: usize,
    /// Fraction of l-subsets whose induced subgraph contains K_{k+1}.
    pub zeta: BigRational,
    /// (1-ζ)·[k(k-1)⋯(k-r+1)/k^r · l^r/(l)_r] + ζ, an upper bound on the
    /// K_r-density.
    pub bound: BigRational,
    pub clique_density: BigRational,
}

/// The sampling decomposition `d_{K_r}(G) = E_U[d_{K_r}(G[U])]` over
/// l-subsets U, evaluated exactly: K_{k+1}-free parts use the Turán-type
/// term, the rest the trivial bound 1.
pub fn sampled_density_bound(g: &Graph, k: usize, r: usize, l: usize) -> Result<SampledDensityBound> {
    let n = g.order();
    if !(1 <= r && r <= k && k < l && l <= n) {
        return Err(Error::invalid(format!(
            "need 1 <= r <= k < l <= order, got r={r} k={k} l={l} order={n}"
        )));
    }
    let total = crate::bits::binom(n as u64, l as u64);
    if total > 2_000_000 {
        return Err(Error::capacity(format!(
            "C({n},{l}) = {total} l-subsets exceed the enumeration cap"
        )));
    }
    let mut with_clique = 0u64;
    for_each_combination(n, l, |subset| {
        let induced = g.induced(subset).expect("induced within caps");
        if has_clique(&induced, k + 1) {
            with_clique += 1;
        }
    });
    let zeta = BigRational::new(
        BigUint::from(with_clique).into(),
        BigUint::from(total).into(),
    );
    let free_term = BigRational::new(
        BigUint::from(falling(k as u64, r as u64)).into(),
        BigUint::from(k as u64).pow(r as u32).into(),
    ) * BigRational::new(
        BigUint::from(l as u64).pow(r as u32).into(),
        BigUint::from(falling(l as u64, r as u64)).into(),
    );
    let bound = (BigRational::one() - &zeta) * free_term + &zeta;
    let d_r = clique_density(g, r).value;
    Ok(SampledDensityBound {
        k,
        r,
        l,
        zeta,
        bound,
        clique_density: d_r,
    })
}
