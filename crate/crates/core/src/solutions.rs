//! Winner determination: Copeland set, top cycle, Slater orders, and
//! single-elimination brackets (simulated and exact possible-winner sets).

use std::time::Instant;

use crate::error::{Error, Result};
use crate::generators::{below, rng_from};
use crate::tournament::{is_permutation, Tournament};

/// Runs of the Slater solver per timing measurement.
pub const SLATER_TIMING_REPEATS: usize = 15;
/// Runs of the knockout possible-winner solver per timing measurement.
pub const KNOCKOUT_TIMING_REPEATS: usize = 5;

const SLATER_MAX_PLAYERS: usize = 25;
const KNOCKOUT_MAX_PLAYERS: usize = 16;

/// Players with maximum outdegree, ascending.
pub fn copeland_winners(t: &Tournament) -> Vec<usize> {
    let n = t.n();
    let best = (0..n).map(|v| t.outdegree(v)).max().unwrap();
    (0..n).filter(|&v| t.outdegree(v) == best).collect()
}

/// Smallest nonempty set whose members beat every player outside it,
/// ascending. Always a prefix of the outdegree-descending player order.
pub fn top_cycle(t: &Tournament) -> Vec<usize> {
    let n = t.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(t.outdegree(v)), v));
    for k in 1..=n {
        let (inside, outside) = order.split_at(k);
        if inside.iter().all(|&v| outside.iter().all(|&u| t.beats(v, u))) {
            let mut set = inside.to_vec();
            set.sort_unstable();
            return set;
        }
    }
    unreachable!("the full player set beats the empty set");
}

/// Subset DP table: slot `s` holds the minimum number of arcs pointing
/// backwards in any linear order of the players in mask `s`. Placing `v`
/// first among `s` costs the arcs into `v` from the rest of `s`.
fn slater_table(t: &Tournament) -> Result<Vec<u16>> {
    let n = t.n();
    if n > SLATER_MAX_PLAYERS {
        return Err(Error::PlayerCount {
            n,
            reason: format!("Slater subset solver handles up to {SLATER_MAX_PLAYERS} players"),
        });
    }
    let beaten_by: Vec<u64> = (0..n)
        .map(|v| (0..n).filter(|&u| t.beats(u, v)).fold(0u64, |m, u| m | 1 << u))
        .collect();
    let mut f = vec![0u16; 1usize << n];
    for s in 1usize..1 << n {
        let mut best = u16::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            let cost = f[without] + (beaten_by[v] & without as u64).count_ones() as u16;
            best = best.min(cost);
        }
        f[s] = best;
    }
    Ok(f)
}

/// Minimum number of disagreements between the tournament and any linear
/// order of its players.
pub fn slater_score(t: &Tournament) -> Result<u32> {
    let f = slater_table(t)?;
    Ok(f[f.len() - 1] as u32)
}

/// Players that head at least one minimum-disagreement linear order,
/// ascending. `v` qualifies exactly when paying `indegree(v)` to put it
/// first leaves an optimal order of the rest.
pub fn slater_winners(t: &Tournament) -> Result<Vec<usize>> {
    let n = t.n();
    let f = slater_table(t)?;
    let full = (1usize << n) - 1;
    let total = f[full] as u32;
    Ok((0..n)
        .filter(|&v| t.indegree(v) as u32 + f[full & !(1 << v)] as u32 == total)
        .collect())
}

/// Leaf counts of the two halves of a bracket over `k` players: the first
/// half takes the extra player when `k` is odd.
pub fn bracket_shape(k: usize) -> (usize, usize) {
    (k.div_ceil(2), k / 2)
}

/// Plays one single-elimination bracket. `order` assigns players to leaves
/// left to right; each round pairs the two half-winners, and odd groups
/// give the extra leaf (and hence a possible bye) to the first half.
pub fn play_bracket(t: &Tournament, order: &[usize]) -> Result<usize> {
    if order.len() != t.n() || !is_permutation(order) {
        return Err(Error::Parameter(
            "bracket order must be a permutation of all players".into(),
        ));
    }
    fn winner(t: &Tournament, leaves: &[usize]) -> usize {
        if leaves.len() == 1 {
            return leaves[0];
        }
        let (first, _) = bracket_shape(leaves.len());
        let a = winner(t, &leaves[..first]);
        let b = winner(t, &leaves[first..]);
        if t.beats(a, b) {
            a
        } else {
            b
        }
    }
    Ok(winner(t, order))
}

/// Counts bracket wins per player over `trials` uniformly seeded brackets.
pub fn simulate_brackets(t: &Tournament, trials: usize, seed: u64) -> Result<Vec<u64>> {
    let n = t.n();
    let mut rng = rng_from(seed);
    let mut counts = vec![0u64; n];
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..trials {
        for k in (1..n).rev() {
            let j = below(&mut rng, (k + 1) as u64) as usize;
            order.swap(k, j);
        }
        counts[play_bracket(t, &order)?] += 1;
    }
    Ok(counts)
}

/// Players that win some single-elimination bracket (any seeding of the
/// half-split shape), ascending. Subset DP: `v` wins a bracket over `s`
/// exactly when some half-split of `s` lets `v` win one side and beat a
/// possible winner of the other.
pub fn knockout_possible_winners(t: &Tournament) -> Result<Vec<usize>> {
    let n = t.n();
    if n > KNOCKOUT_MAX_PLAYERS {
        return Err(Error::PlayerCount {
            n,
            reason: format!("knockout subset solver handles up to {KNOCKOUT_MAX_PLAYERS} players"),
        });
    }
    let rows: Vec<u32> = (0..n).map(|v| t.row_mask(v) as u32).collect();
    let mut pw = vec![0u32; 1usize << n];
    for s in 1u32..1 << n {
        let k = s.count_ones() as usize;
        if k == 1 {
            pw[s as usize] = s;
            continue;
        }
        let (first, _) = bracket_shape(k);
        let mut winners = 0u32;
        // Every strict nonempty submask; size filter keeps the half splits.
        let mut a = (s - 1) & s;
        while a != 0 {
            if a.count_ones() as usize == first {
                let b = s & !a;
                let (wa, wb) = (pw[a as usize], pw[b as usize]);
                let mut side = wa;
                while side != 0 {
                    let v = side.trailing_zeros() as usize;
                    side &= side - 1;
                    if rows[v] & wb != 0 {
                        winners |= 1 << v;
                    }
                }
                let mut side = wb;
                while side != 0 {
                    let v = side.trailing_zeros() as usize;
                    side &= side - 1;
                    if rows[v] & wa != 0 {
                        winners |= 1 << v;
                    }
                }
            }
            a = (a - 1) & s;
        }
        pw[s as usize] = winners;
    }
    let full = pw[(1usize << n) - 1];
    Ok((0..n).filter(|&v| full >> v & 1 == 1).collect())
}

/// Wall-clock statistics over repeated solver runs. One untimed warm-up
/// run precedes the measured ones.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingStats {
    pub mean_ms: f64,
    pub stddev_ms: f64,
    pub repeats: usize,
}

fn measure<R>(mut run: impl FnMut() -> Result<R>, repeats: usize) -> Result<(R, TimingStats)> {
    if repeats == 0 {
        return Err(Error::Parameter("need at least one timed repeat".into()));
    }
    let mut result = run()?;
    let mut samples = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        result = run()?;
        samples.push(start.elapsed().as_secs_f64() * 1e3);
    }
    let mean = samples.iter().sum::<f64>() / repeats as f64;
    let stddev = if repeats > 1 {
        (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (repeats - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok((
        result,
        TimingStats {
            mean_ms: mean,
            stddev_ms: stddev,
            repeats,
        },
    ))
}

/// Slater score with timing over `repeats` runs.
pub fn slater_timing(t: &Tournament, repeats: usize) -> Result<(u32, TimingStats)> {
    measure(|| slater_score(t), repeats)
}

/// Knockout possible winners with timing over `repeats` runs.
pub fn knockout_pw_timing(t: &Tournament, repeats: usize) -> Result<(Vec<usize>, TimingStats)> {
    measure(|| knockout_possible_winners(t), repeats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_uniform;
    use crate::tournament::{ord_rps, ordered, rps, rps_ord};
    use itertools::Itertools;

    #[test]
    fn copeland_picks_maximum_outdegree() {
        assert_eq!(copeland_winners(&ordered(6).unwrap()), vec![0]);
        assert_eq!(copeland_winners(&rps(3).unwrap()), vec![0, 1, 2]);
        assert_eq!(copeland_winners(&ord_rps(7, 4).unwrap()), vec![0]);
        assert_eq!(copeland_winners(&rps(5).unwrap()), vec![0, 1, 2, 3, 4]);
    }

    /// Reachability oracle: a player belongs to the top cycle exactly when
    /// it can reach every other player along arcs.
    fn top_cycle_by_reachability(t: &Tournament) -> Vec<usize> {
        let n = t.n();
        (0..n)
            .filter(|&s| {
                let mut seen = vec![false; n];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(v) = stack.pop() {
                    for u in 0..n {
                        if !seen[u] && t.beats(v, u) {
                            seen[u] = true;
                            stack.push(u);
                        }
                    }
                }
                seen.iter().all(|&x| x)
            })
            .collect()
    }

    #[test]
    fn top_cycle_known_cases() {
        assert_eq!(top_cycle(&ordered(6).unwrap()), vec![0]);
        assert_eq!(top_cycle(&rps(5).unwrap()), vec![0, 1, 2, 3, 4]);
        assert_eq!(top_cycle(&ord_rps(7, 4).unwrap()), vec![0]);
        assert_eq!(top_cycle(&rps_ord(7, 4).unwrap()), vec![4, 5, 6]);
    }

    #[test]
    fn top_cycle_matches_reachability_on_random_instances() {
        for s in 0..50 {
            let t = gen_uniform(9, s).unwrap();
            assert_eq!(top_cycle(&t), top_cycle_by_reachability(&t), "seed {s}");
        }
    }

    /// Exhaustive Slater oracle: try every linear order.
    fn slater_by_enumeration(t: &Tournament) -> (u32, Vec<usize>) {
        let n = t.n();
        let mut best = u32::MAX;
        let mut heads = vec![];
        for perm in (0..n).permutations(n) {
            let mut cost = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if t.beats(perm[j], perm[i]) {
                        cost += 1;
                    }
                }
            }
            if cost < best {
                best = cost;
                heads = vec![perm[0]];
            } else if cost == best && !heads.contains(&perm[0]) {
                heads.push(perm[0]);
            }
        }
        heads.sort_unstable();
        (best, heads)
    }

    #[test]
    fn slater_known_cases() {
        assert_eq!(slater_score(&ordered(10).unwrap()).unwrap(), 0);
        assert_eq!(slater_winners(&ordered(10).unwrap()).unwrap(), vec![0]);
        assert_eq!(slater_score(&rps(3).unwrap()).unwrap(), 1);
        assert_eq!(slater_winners(&rps(3).unwrap()).unwrap(), vec![0, 1, 2]);
        assert_eq!(slater_score(&rps(5).unwrap()).unwrap(), 3);
    }

    #[test]
    fn slater_matches_enumeration_on_random_instances() {
        for s in 0..30 {
            let n = if s % 2 == 0 { 6 } else { 7 };
            let t = gen_uniform(n, 100 + s).unwrap();
            let (score, winners) = slater_by_enumeration(&t);
            assert_eq!(slater_score(&t).unwrap(), score, "seed {s}");
            assert_eq!(slater_winners(&t).unwrap(), winners, "seed {s}");
        }
    }

    #[test]
    fn slater_rejects_oversized_instances() {
        let t = gen_uniform(26, 1).unwrap();
        assert!(matches!(slater_score(&t), Err(Error::PlayerCount { n: 26, .. })));
    }

    #[test]
    fn bracket_shapes_put_the_bye_in_the_first_half() {
        assert_eq!(bracket_shape(2), (1, 1));
        assert_eq!(bracket_shape(3), (2, 1));
        assert_eq!(bracket_shape(7), (4, 3));
        assert_eq!(bracket_shape(12), (6, 6));
    }

    #[test]
    fn bracket_play_follows_the_tree() {
        let t = ordered(8).unwrap();
        assert_eq!(play_bracket(&t, &[7, 6, 5, 4, 3, 2, 1, 0]).unwrap(), 0);
        // rps(3): 0 beats 1, then faces 2 who beats 0.
        let c = rps(3).unwrap();
        assert_eq!(play_bracket(&c, &[0, 1, 2]).unwrap(), 2);
        assert_eq!(play_bracket(&c, &[2, 0, 1]).unwrap(), 1);
        assert!(play_bracket(&c, &[0, 1]).is_err());
        assert!(play_bracket(&c, &[0, 1, 1]).is_err());
    }

    #[test]
    fn simulated_brackets_are_seeded_and_exhaustive_for_a_dominant_player() {
        let t = ordered(8).unwrap();
        let counts = simulate_brackets(&t, 500, 9).unwrap();
        assert_eq!(counts[0], 500);
        assert!(counts[1..].iter().all(|&c| c == 0));
        let c = rps(5).unwrap();
        assert_eq!(
            simulate_brackets(&c, 200, 4).unwrap(),
            simulate_brackets(&c, 200, 4).unwrap()
        );
        let spread = simulate_brackets(&c, 1000, 4).unwrap();
        assert_eq!(spread.iter().sum::<u64>(), 1000);
        assert!(spread.iter().all(|&c| c > 0), "rotational symmetry gives everyone wins");
    }

    /// Exhaustive possible-winner oracle: play every leaf permutation.
    fn possible_winners_by_enumeration(t: &Tournament) -> Vec<usize> {
        let n = t.n();
        let mut winners = std::collections::BTreeSet::new();
        for perm in (0..n).permutations(n) {
            winners.insert(play_bracket(t, &perm).unwrap());
        }
        winners.into_iter().collect()
    }

    #[test]
    fn knockout_possible_winners_known_cases() {
        assert_eq!(knockout_possible_winners(&ordered(9).unwrap()).unwrap(), vec![0]);
        assert_eq!(knockout_possible_winners(&rps(3).unwrap()).unwrap(), vec![0, 1, 2]);
        let t = gen_uniform(17, 0).unwrap();
        assert!(matches!(
            knockout_possible_winners(&t),
            Err(Error::PlayerCount { n: 17, .. })
        ));
    }

    #[test]
    fn knockout_possible_winners_match_enumeration() {
        for s in 0..24 {
            let n = 4 + (s as usize % 3);
            let t = gen_uniform(n, 200 + s).unwrap();
            assert_eq!(
                knockout_possible_winners(&t).unwrap(),
                possible_winners_by_enumeration(&t),
                "seed {s} n {n}"
            );
        }
    }

    #[test]
    fn timing_reports_repeats_and_finite_stats() {
        let t = gen_uniform(10, 5).unwrap();
        let (score, stats) = slater_timing(&t, 3).unwrap();
        assert_eq!(score, slater_score(&t).unwrap());
        assert_eq!(stats.repeats, 3);
        assert!(stats.mean_ms >= 0.0 && stats.mean_ms.is_finite());
        assert!(stats.stddev_ms >= 0.0 && stats.stddev_ms.is_finite());
        let (pw, stats) = knockout_pw_timing(&t, 2).unwrap();
        assert_eq!(pw, knockout_possible_winners(&t).unwrap());
        assert_eq!(stats.repeats, 2);
        assert!(slater_timing(&t, 0).is_err());
    }

    #[test]
    fn single_player_edge_cases() {
        let t = ordered(1).unwrap();
        assert_eq!(copeland_winners(&t), vec![0]);
        assert_eq!(top_cycle(&t), vec![0]);
        assert_eq!(slater_score(&t).unwrap(), 0);
        assert_eq!(knockout_possible_winners(&t).unwrap(), vec![0]);
        assert_eq!(play_bracket(&t, &[0]).unwrap(), 0);
    }
}
