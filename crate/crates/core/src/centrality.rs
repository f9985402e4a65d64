//! Centrality profiles: nine per-player scores, reported as sorted vectors.
//!
//! A profile is the player-score vector sorted nonincreasing, which makes it
//! invariant under relabeling and directly comparable between tournaments of
//! equal size. Directed arcs point winner to loser, and each formula is
//! applied to that digraph as written; measures that move mass along arcs
//! therefore accumulate on pointed-to players.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// Attenuation and base weight for Katz scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KatzParams {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for KatzParams {
    fn default() -> Self {
        KatzParams { alpha: 0.1, beta: 1.0 }
    }
}

/// Damping factor for pagerank.
pub const PAGERANK_DAMPING: f64 = 0.85;
/// Convergence tolerance for the iterative measures, in l1 distance.
pub const ITERATION_TOL: f64 = 1e-10;
/// Iteration cap for the iterative measures.
pub const ITERATION_CAP: usize = 10_000;

/// The nine supported centrality measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Katz,
    Degree,
    Closeness,
    Eigenvector,
    Laplacian,
    Harmonic,
    Pagerank,
    Betweenness,
    Load,
}

impl Measure {
    pub const ALL: [Measure; 9] = [
        Measure::Katz,
        Measure::Degree,
        Measure::Closeness,
        Measure::Eigenvector,
        Measure::Laplacian,
        Measure::Harmonic,
        Measure::Pagerank,
        Measure::Betweenness,
        Measure::Load,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Measure::Katz => "katz",
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Eigenvector => "eigenvector",
            Measure::Laplacian => "laplacian",
            Measure::Harmonic => "harmonic",
            Measure::Pagerank => "pagerank",
            Measure::Betweenness => "betweenness",
            Measure::Load => "load",
        }
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .iter()
            .find(|m| m.name() == s)
            .copied()
            .ok_or_else(|| Error::UnknownMeasure(s.to_string()))
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Computes the profile of `t` under `measure`: per-player scores sorted
/// nonincreasing. `katz` is consulted only by the Katz measure.
pub fn profile(t: &Tournament, measure: Measure, katz: &KatzParams) -> Result<Vec<f64>> {
    let mut scores = match measure {
        Measure::Katz => katz_scores(t, katz)?,
        Measure::Degree => degree_scores(t)?,
        Measure::Closeness => closeness_scores(t),
        Measure::Eigenvector => eigenvector_scores(t)?,
        Measure::Laplacian => laplacian_scores(t)?,
        Measure::Harmonic => harmonic_scores(t),
        Measure::Pagerank => pagerank_scores(t)?,
        Measure::Betweenness => betweenness_scores(t),
        Measure::Load => load_scores(t),
    };
    scores.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(scores)
}

/// Katz scores: the unique solution of `x = alpha * A x + beta * 1`, i.e.
/// each player's score is `beta` plus `alpha` times the scores of the
/// players they beat. Solved exactly; a singular system is an error, never
/// a silent approximation.
pub fn katz_scores(t: &Tournament, params: &KatzParams) -> Result<Vec<f64>> {
    let n = t.n();
    if !(params.alpha.is_finite() && params.beta.is_finite()) || params.alpha < 0.0 {
        return Err(Error::Parameter("katz parameters must be finite, alpha >= 0".into()));
    }
    let m = DMatrix::from_fn(n, n, |i, j| {
        let a = if i != j && t.beats(i, j) { params.alpha } else { 0.0 };
        if i == j {
            1.0
        } else {
            -a
        }
    });
    let rhs = DVector::from_element(n, params.beta);
    let x = m
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("1/alpha is an eigenvalue of the adjacency".into()))?;
    let residual = (&m * &x - &rhs).amax();
    if !residual.is_finite() || residual > 1e-8 * (1.0 + rhs.amax()) {
        return Err(Error::Singular(format!(
            "katz solve residual {residual:.3e} rejects the solution"
        )));
    }
    Ok(x.iter().copied().collect())
}

/// Outdegree divided by `n - 1`.
fn degree_scores(t: &Tournament) -> Result<Vec<f64>> {
    let n = t.n();
    if n < 2 {
        return Err(Error::PlayerCount { n, reason: "degree centrality needs n >= 2".into() });
    }
    Ok((0..n).map(|i| t.outdegree(i) as f64 / (n - 1) as f64).collect())
}

/// Distances `dist[s][t]` (number of arcs on a shortest s-to-t path,
/// `u32::MAX` if unreachable) and shortest-path counts `sigma[s][t]`.
fn shortest_paths(t: &Tournament) -> (Vec<Vec<u32>>, Vec<Vec<u64>>) {
    let n = t.n();
    let mut dist = vec![vec![u32::MAX; n]; n];
    let mut sigma = vec![vec![0u64; n]; n];
    for s in 0..n {
        dist[s][s] = 0;
        sigma[s][s] = 1;
        let mut frontier = vec![s];
        let mut d = 0u32;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for w in 0..n {
                    if v != w && t.beats(v, w) {
                        if dist[s][w] == u32::MAX {
                            dist[s][w] = d;
                            next.push(w);
                        }
                        if dist[s][w] == d {
                            sigma[s][w] += sigma[s][v];
                        }
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
    }
    (dist, sigma)
}

/// Closeness toward each player, with the reachable-share correction:
/// `((r - 1) / (n - 1)) * ((r - 1) / sum_d)` where `r` counts the players
/// that reach the target (itself included) and `sum_d` their distances.
/// A player nobody reaches scores 0.
fn closeness_scores(t: &Tournament) -> Vec<f64> {
    let n = t.n();
    let (dist, _) = shortest_paths(t);
    (0..n)
        .map(|u| {
            let mut r = 0u32;
            let mut sum = 0u64;
            for s in 0..n {
                if dist[s][u] != u32::MAX {
                    r += 1;
                    sum += dist[s][u] as u64;
                }
            }
            if r <= 1 || n == 1 {
                0.0
            } else {
                let reach = (r - 1) as f64;
                (reach / (n - 1) as f64) * (reach / sum as f64)
            }
        })
        .collect()
}

/// Harmonic centrality toward each player: `sum over s != u of 1/d(s, u)`,
/// with unreachable pairs contributing 0.
fn harmonic_scores(t: &Tournament) -> Vec<f64> {
    let n = t.n();
    let (dist, _) = shortest_paths(t);
    (0..n)
        .map(|u| {
            (0..n)
                .filter(|&s| s != u && dist[s][u] != u32::MAX)
                .map(|s| 1.0 / dist[s][u] as f64)
                .sum()
        })
        .collect()
}

/// Left principal eigenvector of the adjacency, by power iteration with a
/// fixed tolerance and iteration cap. On acyclic tournaments the adjacency
/// is nilpotent and the iterate collapses to zero, which is reported as a
/// degenerate instance rather than an arbitrary vector.
fn eigenvector_scores(t: &Tournament) -> Result<Vec<f64>> {
    let n = t.n();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..ITERATION_CAP {
        // y = A^T x accumulates each player's score from the players that
        // beat them, matching lambda c^T = c^T A.
        let mut y = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && t.beats(i, j) {
                    y[j] += x[i];
                }
            }
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::Degenerate(
                "eigenvector centrality collapsed to zero (acyclic tournament)".into(),
            ));
        }
        for v in &mut y {
            *v /= norm;
        }
        let diff: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        if diff < ITERATION_TOL {
            return Ok(x);
        }
    }
    Err(Error::Degenerate("eigenvector power iteration did not converge".into()))
}

/// Pagerank with uniform teleport and dangling mass redistributed uniformly;
/// scores always sum to 1.
fn pagerank_scores(t: &Tournament) -> Result<Vec<f64>> {
    let n = t.n();
    let d = PAGERANK_DAMPING;
    let deg: Vec<usize> = (0..n).map(|i| t.outdegree(i)).collect();
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..ITERATION_CAP {
        let dangling: f64 = (0..n).filter(|&i| deg[i] == 0).map(|i| x[i]).sum();
        let base = (1.0 - d) / n as f64 + d * dangling / n as f64;
        let mut y = vec![base; n];
        for j in 0..n {
            if deg[j] > 0 {
                let share = d * x[j] / deg[j] as f64;
                for i in 0..n {
                    if i != j && t.beats(j, i) {
                        y[i] += share;
                    }
                }
            }
        }
        let diff: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        if diff < ITERATION_TOL {
            return Ok(x);
        }
    }
    Err(Error::Degenerate("pagerank iteration did not converge".into()))
}

/// Betweenness: for each player `v`, the sum over ordered pairs `(s, t)` of
/// the fraction of shortest s-to-t paths passing through `v`. Pairs with no
/// path contribute 0; no normalization is applied.
fn betweenness_scores(t: &Tournament) -> Vec<f64> {
    let n = t.n();
    let (dist, sigma) = shortest_paths(t);
    let mut c = vec![0.0; n];
    for s in 0..n {
        for tt in 0..n {
            if s == tt || sigma[s][tt] == 0 {
                continue;
            }
            for v in 0..n {
                if v == s || v == tt {
                    continue;
                }
                if dist[s][v] != u32::MAX
                    && dist[v][tt] != u32::MAX
                    && dist[s][v] + dist[v][tt] == dist[s][tt]
                {
                    c[v] += (sigma[s][v] * sigma[v][tt]) as f64 / sigma[s][tt] as f64;
                }
            }
        }
    }
    c
}

/// Load: a unit of flow is routed from each `s` to each reachable `t`,
/// splitting equally among the shortest-path successors at every branch;
/// each intermediate player accumulates the flow passing through it.
fn load_scores(t: &Tournament) -> Vec<f64> {
    let n = t.n();
    let (dist, _) = shortest_paths(t);
    let mut c = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for s in 0..n {
        order.sort_unstable_by_key(|&v| dist[s][v]);
        for tt in 0..n {
            if s == tt || dist[s][tt] == u32::MAX || dist[s][tt] < 2 {
                continue;
            }
            let total = dist[s][tt];
            let on_path = |v: usize| {
                dist[s][v] != u32::MAX
                    && dist[v][tt] != u32::MAX
                    && dist[s][v] + dist[v][tt] == total
            };
            let mut flow = vec![0.0; n];
            flow[s] = 1.0;
            for &v in order.iter().filter(|&&v| on_path(v) && v != tt) {
                if flow[v] == 0.0 {
                    continue;
                }
                let succs: Vec<usize> = (0..n)
                    .filter(|&w| w != v && t.beats(v, w) && dist[s][w] == dist[s][v] + 1 && on_path(w))
                    .collect();
                let share = flow[v] / succs.len() as f64;
                for w in succs {
                    flow[w] += share;
                }
            }
            for v in 0..n {
                if v != s && v != tt {
                    c[v] += flow[v];
                }
            }
        }
    }
    c
}

/// Laplacian energy of a tournament: the sum of squared moduli of the
/// (possibly complex) eigenvalues of `L = D_out - A`.
fn laplacian_energy(t: &Tournament, skip: Option<usize>) -> f64 {
    let keep: Vec<usize> = (0..t.n()).filter(|&v| Some(v) != skip).collect();
    let m = keep.len();
    if m == 0 {
        return 0.0;
    }
    let l = DMatrix::from_fn(m, m, |i, j| {
        let (a, b) = (keep[i], keep[j]);
        if i == j {
            keep.iter().filter(|&&c| c != a && t.beats(a, c)).count() as f64
        } else if t.beats(a, b) {
            -1.0
        } else {
            0.0
        }
    });
    l.complex_eigenvalues()
        .iter()
        .map(|ev: &Complex<f64>| ev.norm_sqr())
        .sum()
}

/// Laplacian centrality: the relative drop in Laplacian energy when the
/// player is removed, `(E(G) - E(G - v)) / E(G)`. Subgraph energies are
/// nonnegative, so no score exceeds 1.
fn laplacian_scores(t: &Tournament) -> Result<Vec<f64>> {
    let n = t.n();
    if n < 2 {
        return Err(Error::PlayerCount { n, reason: "laplacian centrality needs n >= 2".into() });
    }
    let full = laplacian_energy(t, None);
    debug_assert!(full > 0.0, "trace of L is n(n-1)/2 > 0");
    Ok((0..n)
        .map(|v| (full - laplacian_energy(t, Some(v))) / full)
        .collect())
}
