//! Seeded Monte Carlo estimators for the rare-event densities that drive
//! the probabilistic arguments, plus the exact analytic tail bound they are
//! checked against.
//!
//! Reproducibility protocol: ChaCha8 with the user seed as key and the trial
//! index as stream, so trial i draws the same values no matter how many
//! trials run or in what order. All sampling is with replacement except the
//! subset test, which needs distinct members.

use num::{BigRational, BigUint, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::binom_big;
use crate::error::{Error, Result};
use crate::setfam::SetFamily;

/// A binomial point estimate from seeded trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub mean: f64,
    /// Plug-in binomial standard error sqrt(mean(1-mean)/trials).
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    pub successes: u64,
    /// One-sided 95% upper bound by the rule of three, reported only for
    /// zero-success runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper95: Option<f64>,
}

impl DensityEstimate {
    fn from_successes(successes: u64, trials: u64, seed: u64) -> Self {
        let mean = successes as f64 / trials as f64;
        let std_error = (mean * (1.0 - mean) / trials as f64).sqrt();
        let upper95 = if successes == 0 {
            Some(3.0 / trials as f64)
        } else {
            None
        };
        DensityEstimate {
            mean,
            std_error,
            trials,
            seed,
            successes,
            upper95,
        }
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn check_common(f: &SetFamily, trials: u64) -> Result<()> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    Ok(())
}

fn blowup_trial(f: &SetFamily, parts: usize, t: usize, seed: u64, trial: u64) -> bool {
    let mut rng = trial_rng(seed, trial);
    let members = f.members();
    let mut unions = vec![0u32; parts];
    for u in unions.iter_mut() {
        for _ in 0..t {
            let idx = rng.gen_range(0..members.len());
            *u |= members[idx].bits();
        }
    }
    for i in 0..parts {
        for j in i + 1..parts {
            if unions[i] & unions[j] != 0 {
                return false;
            }
        }
    }
    true
}

/// Estimates the homomorphism density of K_parts ⊗ t in the disjointness
/// graph of `f`: draw parts·t members with replacement, succeed iff the
/// parts unions are pairwise disjoint. (With ∅ in the family the disjoint-
/// unions event can slightly exceed the homomorphism event; the estimator
/// follows the unions, which is the quantity the tail analysis bounds.)
pub fn estimate_blowup_density(
    f: &SetFamily,
    parts: usize,
    t: usize,
    trials: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    check_common(f, trials)?;
    if parts == 0 || t == 0 {
        return Err(Error::invalid("parts and t must be at least 1"));
    }
    let successes = (0..trials)
        .filter(|&trial| blowup_trial(f, parts, t, seed, trial))
        .count() as u64;
    Ok(DensityEstimate::from_successes(successes, trials, seed))
}

fn odd_cycle_trial(f: &SetFamily, cycle_len: usize, t: usize, seed: u64, trial: u64) -> bool {
    let mut rng = trial_rng(seed, trial);
    let members = f.members();
    let mut unions = vec![0u32; cycle_len];
    for u in unions.iter_mut() {
        for _ in 0..t {
            let idx = rng.gen_range(0..members.len());
            *u |= members[idx].bits();
        }
    }
    (0..cycle_len).all(|i| unions[i] & unions[(i + 1) % cycle_len] == 0)
}

/// Estimates the homomorphism density of C_{2l+1} ⊗ t via the cyclic
/// disjointness event U_i ∩ U_{i+1} = ∅.
pub fn estimate_odd_cycle_density(
    f: &SetFamily,
    l: usize,
    t: usize,
    trials: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    check_common(f, trials)?;
    if l == 0 || t == 0 {
        return Err(Error::invalid("l and t must be at least 1"));
    }
    let cycle_len = 2 * l + 1;
    let successes = (0..trials)
        .filter(|&trial| odd_cycle_trial(f, cycle_len, t, seed, trial))
        .count() as u64;
    Ok(DensityEstimate::from_successes(successes, trials, seed))
}

/// The exact tail sum `Σ_{s=0}^{⌊θn⌋} C(n,s) (2^s/m)^t`, an upper bound on
/// the probability that the union of t uniform members of an m-set family
/// over [n] has at most θn elements.
pub fn analytic_tail_bound(n: u32, m: u64, t: u32, theta: &BigRational) -> Result<BigRational> {
    if m == 0 || t == 0 {
        return Err(Error::invalid("need m >= 1 and t >= 1"));
    }
    if theta.is_negative() || theta > &BigRational::one() {
        return Err(Error::invalid("theta must lie in [0, 1]"));
    }
    // floor(theta * n)
    let smax_big = (theta.numer() * n) / theta.denom();
    let smax: u32 = smax_big.try_into().map_err(|_| Error::invalid("theta*n overflow"))?;
    let mut numer = BigUint::zero();
    for s in 0..=smax.min(n) {
        let pow2 = BigUint::one() << (s as u64 * t as u64);
        numer += binom_big(n as u64, s as u64) * pow2;
    }
    let denom = BigUint::from(m).pow(t);
    Ok(BigRational::new(numer.into(), denom.into()))
}

fn union_tail_trial(f: &SetFamily, t: usize, theta: &BigRational, seed: u64, trial: u64) -> bool {
    let mut rng = trial_rng(seed, trial);
    let members = f.members();
    let mut union = 0u32;
    for _ in 0..t {
        let idx = rng.gen_range(0..members.len());
        union |= members[idx].bits();
    }
    // |U| <= theta * n, compared exactly
    let card = BigRational::from_integer(union.count_ones().into());
    card <= theta * BigRational::from_integer(f.ground_n().into())
}

/// Estimates `Pr(|A_1 ∪ ... ∪ A_t| <= θn)` for uniform members with
/// replacement; dominated by `analytic_tail_bound` in expectation.
pub fn empirical_union_tail(
    f: &SetFamily,
    t: usize,
    theta: &BigRational,
    trials: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    check_common(f, trials)?;
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    if theta.is_negative() || theta > &BigRational::one() {
        return Err(Error::invalid("theta must lie in [0, 1]"));
    }
    let successes = (0..trials)
        .filter(|&trial| union_tail_trial(f, t, theta, seed, trial))
        .count() as u64;
    Ok(DensityEstimate::from_successes(successes, trials, seed))
}

/// 2-colorability of the disjointness graph induced on the given masks.
fn masks_bipartite(masks: &[u32]) -> bool {
    let n = masks.len();
    let mut color = vec![u8::MAX; n];
    let mut stack = Vec::new();
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if v != u && masks[u] & masks[v] == 0 {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        stack.push(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn odd_cycle_subset_trial(f: &SetFamily, size: usize, seed: u64, trial: u64) -> bool {
    let mut rng = trial_rng(seed, trial);
    let members = f.members();
    // partial Fisher-Yates: a uniform `size`-subset of member indices
    let mut indices: Vec<usize> = (0..members.len()).collect();
    for i in 0..size {
        let j = rng.gen_range(i..indices.len());
        indices.swap(i, j);
    }
    let chosen: Vec<u32> = indices[..size].iter().map(|&i| members[i].bits()).collect();
    !masks_bipartite(&chosen)
}

/// Estimates the probability that the disjointness graph induced on a
/// uniform random (2s+1)-subset of the family is non-bipartite, i.e.
/// contains an odd cycle.
pub fn odd_cycle_subset_test(
    f: &SetFamily,
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    check_common(f, trials)?;
    if s == 0 {
        return Err(Error::invalid("s must be at least 1"));
    }
    let size = 2 * s + 1;
    if size > f.len() {
        return Err(Error::invalid(format!(
            "family has {} members, need at least {size} for a (2s+1)-subset",
            f.len()
        )));
    }
    let successes = (0..trials)
        .filter(|&trial| odd_cycle_subset_trial(f, size, seed, trial))
        .count() as u64;
    Ok(DensityEstimate::from_successes(successes, trials, seed))
}
