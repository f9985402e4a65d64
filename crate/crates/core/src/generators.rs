//! Seeded tournament generators, exhaustive isomorph-free enumeration, and
//! class sampling.
//!
//! All randomness flows through ChaCha8 seeded from a caller-supplied
//! 64-bit seed, and raw 64-bit words are turned into coins, unit doubles,
//! and bounded integers by the fixed conversions in this module, so a
//! `(parameters, seed)` pair produces the same tournament on every platform
//! and in every release. Pair orientations are always drawn in row-major
//! order of the pair `(i, j)`, `i < j`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::canon::{canonical_code, CanonicalCode};
use crate::centrality::{katz_scores, KatzParams};
use crate::error::{Error, Result};
use crate::tournament::{ordered, Tournament};

pub(crate) fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derives an independent child seed from a master seed, a purpose label,
/// and an index. The label is hashed with FNV-1a, combined with the master
/// seed and the golden-ratio-weighted index, and finalized with a splitmix
/// permutation; the formula is fixed and part of the reproducibility
/// contract.
pub fn child_seed(master: u64, label: &str, index: u64) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for b in label.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x100000001b3);
    }
    mix(master
        ^ h
        ^ index
            .wrapping_mul(0x9e3779b97f4a7c15)
            .wrapping_add(0x632be59bd9b4e019))
}

/// Uniform double in `[0, 1)` from the top 53 bits of one output word.
pub(crate) fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Fair coin from the low bit of one output word.
pub(crate) fn coin(rng: &mut ChaCha8Rng) -> bool {
    rng.next_u64() & 1 == 1
}

/// Unbiased integer in `[0, bound)` by rejection.
pub(crate) fn below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = (u64::MAX / bound) * bound;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

/// Every pair decided by a fair coin: the uniform distribution over all
/// labeled tournaments on `n` players.
pub fn gen_uniform(n: usize, seed: u64) -> Result<Tournament> {
    let mut rng = rng_from(seed);
    Tournament::from_orientations(n, |_, _| coin(&mut rng))
}

/// Noisy transitive tournament: each arc of `ordered(n)` keeps its
/// direction with probability `p` and is reversed otherwise. `p = 1` is the
/// transitive order, `p = 0.5` the uniform distribution.
pub fn gen_condorcet_noise(n: usize, p: f64, seed: u64) -> Result<Tournament> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("agreement probability {p} outside [0, 1]")));
    }
    let mut rng = rng_from(seed);
    Tournament::from_orientations(n, |_, _| unit(&mut rng) < p)
}

/// A player-strength model: `strength(i)` maps the 1-based player index to
/// a nonnegative weight, and stronger players win more often.
#[derive(Debug, Clone, PartialEq)]
pub enum StrengthFunction {
    /// `alpha^i`; steeper than any polynomial for `alpha > 1`.
    Exponential { alpha: f64 },
    /// `i`.
    Linear,
    /// `ln(i)`; the weakest player has strength zero.
    Logarithmic,
    /// `sqrt(i)`.
    Root,
    /// Explicit per-player weights, index 0 holding player 1's weight.
    Custom(Vec<f64>),
}

impl StrengthFunction {
    /// Weight of the 1-based player index `i`.
    pub fn strength(&self, i: usize) -> f64 {
        match self {
            StrengthFunction::Exponential { alpha } => alpha.powi(i as i32),
            StrengthFunction::Linear => i as f64,
            StrengthFunction::Logarithmic => (i as f64).ln(),
            StrengthFunction::Root => (i as f64).sqrt(),
            StrengthFunction::Custom(w) => w[i - 1],
        }
    }

    /// Short label used in entry ids and parameter echoes.
    pub fn label(&self) -> String {
        match self {
            StrengthFunction::Exponential { alpha } => format!("exp_{alpha}"),
            StrengthFunction::Linear => "lin".into(),
            StrengthFunction::Logarithmic => "log".into(),
            StrengthFunction::Root => "root".into(),
            StrengthFunction::Custom(_) => "custom".into(),
        }
    }

    /// Weights must be finite and nonnegative with at most one zero player,
    /// so no game is ever a 0-vs-0 coin toss.
    pub fn validate(&self, n: usize) -> Result<()> {
        if let StrengthFunction::Exponential { alpha } = self {
            if !alpha.is_finite() || *alpha <= 0.0 {
                return Err(Error::Parameter(format!("exponential base {alpha} must be positive")));
            }
        }
        if let StrengthFunction::Custom(w) = self {
            if w.len() != n {
                return Err(Error::Parameter(format!(
                    "custom strengths hold {} players, tournament has {n}",
                    w.len()
                )));
            }
        }
        let mut zeros = 0;
        for i in 1..=n {
            let s = self.strength(i);
            if !s.is_finite() || s < 0.0 {
                return Err(Error::Parameter(format!("strength({i}) = {s} must be finite and nonnegative")));
            }
            if s == 0.0 {
                zeros += 1;
            }
        }
        if zeros > 1 {
            return Err(Error::Parameter("more than one player has zero strength".into()));
        }
        Ok(())
    }
}

/// Strength-model tournament: player `i` beats player `j` with probability
/// `w(i) / (w(i) + w(j))`, where `w` evaluates 1-based indices.
pub fn gen_strength(n: usize, f: &StrengthFunction, seed: u64) -> Result<Tournament> {
    f.validate(n)?;
    let mut rng = rng_from(seed);
    let w: Vec<f64> = (1..=n).map(|i| f.strength(i)).collect();
    Tournament::from_orientations(n, |i, j| {
        let p = w[i] / (w[i] + w[j]);
        unit(&mut rng) < p
    })
}

/// Majority relation over position tables: `prefers[v][i]` is candidate
/// `i`'s rank for voter `v` (0 = top). Exact ties fall to a fair coin,
/// drawn in row-major pair order; the tie count is returned alongside.
pub(crate) fn majority_tournament(
    m: usize,
    prefers: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
) -> Result<(Tournament, usize)> {
    let voters = prefers.len();
    let mut ties = 0usize;
    let t = Tournament::from_orientations(m, |i, j| {
        let above = prefers.iter().filter(|p| p[i] < p[j]).count();
        match (2 * above).cmp(&voters) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => {
                ties += 1;
                coin(rng)
            }
        }
    })?;
    Ok((t, ties))
}

/// Majority tournament of an impartial-culture election: `voters` uniform
/// random rankings of `m` candidates, each pair decided by majority, exact
/// ties broken by a fair coin (drawn in row-major pair order after all
/// rankings).
pub fn gen_impartial_culture(m: usize, voters: usize, seed: u64) -> Result<Tournament> {
    if voters == 0 {
        return Err(Error::Parameter("need at least one voter".into()));
    }
    let mut rng = rng_from(seed);
    // prefers[v][i] = rank position of candidate i for voter v (0 = top).
    let mut prefers = vec![vec![0usize; m]; voters];
    for pref in prefers.iter_mut() {
        let mut perm: Vec<usize> = (0..m).collect();
        for k in (1..m).rev() {
            let j = below(&mut rng, (k + 1) as u64) as usize;
            perm.swap(k, j);
        }
        for (pos, &cand) in perm.iter().enumerate() {
            pref[cand] = pos;
        }
    }
    Ok(majority_tournament(m, &prefers, &mut rng)?.0)
}

/// All isomorphism classes on `n <= 7` players, as canonical
/// representatives in increasing canonical-code order.
///
/// Classes are grown player by player: every class on `s` players arises
/// from some class on `s - 1` players by adding one player with some
/// win/loss pattern, so extending each representative by all `2^(s-1)`
/// patterns and deduplicating codes is exhaustive.
pub fn enumerate_nonisomorphic(n: usize) -> Result<Vec<Tournament>> {
    if n == 0 || n > 7 {
        return Err(Error::PlayerCount {
            n,
            reason: "exhaustive enumeration is supported for 1..=7 players".into(),
        });
    }
    let mut codes: Vec<CanonicalCode> = vec![canonical_code(&ordered(1)?)];
    for s in 2..=n {
        let mut next: BTreeSet<CanonicalCode> = BTreeSet::new();
        for code in &codes {
            let rep = code.to_tournament();
            for pattern in 0u64..1 << (s - 1) {
                let t = Tournament::from_orientations(s, |i, j| {
                    if j == s - 1 {
                        pattern >> i & 1 == 1
                    } else {
                        rep.beats(i, j)
                    }
                })?;
                next.insert(canonical_code(&t));
            }
        }
        codes = next.into_iter().collect();
    }
    Ok(codes.iter().map(CanonicalCode::to_tournament).collect())
}

/// Draws uniform tournaments and keeps the first `k` distinct isomorphism
/// classes, in draw order. For `n <= 7` a `k` beyond the class count is
/// rejected up front; an attempt cap turns a stalled rejection loop into an
/// error instead of a hang.
pub fn sample_nonisomorphic(n: usize, k: usize, seed: u64) -> Result<Vec<Tournament>> {
    if k == 0 {
        return Err(Error::Parameter("need k >= 1 classes".into()));
    }
    if n <= 7 {
        let classes = enumerate_nonisomorphic(n)?.len();
        if k > classes {
            return Err(Error::Parameter(format!(
                "only {classes} classes exist on {n} players, {k} requested"
            )));
        }
    }
    let mut rng = rng_from(seed);
    let mut seen: BTreeSet<CanonicalCode> = BTreeSet::new();
    let mut out = Vec::with_capacity(k);
    let cap = 500 * k as u64 + 100_000;
    for _ in 0..cap {
        let t = Tournament::from_orientations(n, |_, _| coin(&mut rng))?;
        if seen.insert(canonical_code(&t)) {
            out.push(t);
            if out.len() == k {
                return Ok(out);
            }
        }
    }
    Err(Error::Degenerate(format!(
        "collected only {} of {k} classes after {cap} draws",
        out.len()
    )))
}

/// Class sampling with a diversity pass: oversamples `oversample * k`
/// distinct classes, then greedily keeps the `k` that maximize the minimum
/// pairwise Katz profile distance (farthest-point selection seeded with the
/// most distant pair). Output order is selection order.
pub fn sample_nonisomorphic_diverse(
    n: usize,
    k: usize,
    oversample: usize,
    seed: u64,
) -> Result<Vec<Tournament>> {
    if oversample == 0 {
        return Err(Error::Parameter("oversample factor must be >= 1".into()));
    }
    let mut pool_target = k.saturating_mul(oversample);
    if n <= 7 {
        pool_target = pool_target.min(enumerate_nonisomorphic(n)?.len());
    }
    let pool = sample_nonisomorphic(n, pool_target.max(k), seed)?;
    if pool.len() == k {
        return Ok(pool);
    }
    let katz = KatzParams::default();
    let profiles: Vec<Vec<f64>> = pool
        .iter()
        .map(|t| {
            katz_scores(t, &katz).map(|mut s| {
                s.sort_unstable_by(|a, b| b.total_cmp(a));
                s
            })
        })
        .collect::<Result<_>>()?;
    let dist = |a: usize, b: usize| -> f64 {
        profiles[a]
            .iter()
            .zip(&profiles[b])
            .map(|(x, y)| (x - y).abs())
            .sum()
    };
    // Farthest-point greedy, ties resolved toward lower pool indices.
    let m = pool.len();
    let (mut best_a, mut best_b, mut best_d) = (0usize, 1usize, f64::NEG_INFINITY);
    for a in 0..m {
        for b in (a + 1)..m {
            let d = dist(a, b);
            if d > best_d {
                (best_a, best_b, best_d) = (a, b, d);
            }
        }
    }
    let mut selected = vec![best_a, best_b];
    let mut min_dist: Vec<f64> = (0..m)
        .map(|i| dist(i, best_a).min(dist(i, best_b)))
        .collect();
    while selected.len() < k {
        let (mut arg, mut best) = (usize::MAX, f64::NEG_INFINITY);
        for i in 0..m {
            if !selected.contains(&i) && min_dist[i] > best {
                arg = i;
                best = min_dist[i];
            }
        }
        selected.push(arg);
        for i in 0..m {
            min_dist[i] = min_dist[i].min(dist(i, arg));
        }
    }
    selected.truncate(k);
    Ok(selected.into_iter().map(|i| pool[i].clone()).collect())
}
