//! Distances between tournaments: exact graph edit distance and
//! centrality-profile distances, plus full pairwise matrices.
//!
//! The edit distance between same-size tournaments counts the minimum
//! number of arcs whose direction must be flipped to make one isomorphic to
//! the other, minimized over all player bijections. It is computed exactly
//! by branch and bound; no heuristic shortcut ever replaces the optimum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write as _;
use std::path::Path;

use crate::centrality::{profile, KatzParams, Measure};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::tournament::{ordered, rps, Tournament};

/// Which pairwise distance a matrix holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Ged,
    Profile(Measure),
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Ged => "ged",
            Metric::Profile(m) => m.name(),
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ged" {
            Ok(Metric::Ged)
        } else {
            Ok(Metric::Profile(s.parse()?))
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Knobs for the exact search. A node budget turns pathological instances
/// into explicit errors instead of unbounded runs.
#[derive(Debug, Clone, Copy, Default)]
pub struct GedOptions {
    pub node_budget: Option<u64>,
}

/// Degree-based lower bound: flipping one arc moves two entries of the
/// outdegree multiset by one each, so the edit distance is at least half
/// the l1 distance between sorted outdegree profiles, rounded up.
pub fn ged_lower_bound(t1: &Tournament, t2: &Tournament) -> Result<u32> {
    if t1.n() != t2.n() {
        return Err(Error::Alignment(format!(
            "edit distance needs equal sizes, got {} and {}",
            t1.n(),
            t2.n()
        )));
    }
    let p1 = t1.outdegree_profile();
    let p2 = t2.outdegree_profile();
    let l1: u64 = p1
        .iter()
        .zip(&p2)
        .map(|(&a, &b)| (a as i64 - b as i64).unsigned_abs())
        .sum();
    Ok(((l1 + 1) / 2) as u32)
}

/// Exact graph edit distance with default options.
pub fn ged(t1: &Tournament, t2: &Tournament) -> Result<u32> {
    ged_with(t1, t2, &GedOptions::default())
}

/// Exact graph edit distance. Branches over player assignments in
/// descending outdegree order; a branch is cut when its accumulated
/// mismatch plus an admissible bound (degree bound, per-player minimum
/// cross cost, and an assignment relaxation) cannot beat the incumbent.
pub fn ged_with(t1: &Tournament, t2: &Tournament, opts: &GedOptions) -> Result<u32> {
    if t1.n() != t2.n() {
        return Err(Error::Alignment(format!(
            "edit distance needs equal sizes, got {} and {}",
            t1.n(),
            t2.n()
        )));
    }
    let n = t1.n();
    if n <= 1 {
        return Ok(0);
    }
    let mut search = GedSearch::new(t1, t2, opts.node_budget);
    search.run()
}

struct GedSearch {
    n: usize,
    rows1: Vec<u64>,
    rows2: Vec<u64>,
    /// Branch order over the first tournament: outdegree descending.
    order: Vec<usize>,
    /// cross[u * n + w]: mismatches of mapping u onto w against the prefix.
    cross: Vec<u32>,
    free2: u64,
    best: u32,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl GedSearch {
    fn new(t1: &Tournament, t2: &Tournament, budget: Option<u64>) -> Self {
        let n = t1.n();
        let rows1: Vec<u64> = (0..n).map(|i| t1.row_mask(i)).collect();
        let rows2: Vec<u64> = (0..n).map(|i| t2.row_mask(i)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(rows1[i].count_ones()), i));
        GedSearch {
            n,
            rows1,
            rows2,
            order,
            cross: vec![0; n * n],
            free2: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            best: 0,
            nodes: 0,
            budget: budget.unwrap_or(u64::MAX),
            exhausted: false,
        }
    }

    fn mapping_cost(&self, img: &[usize]) -> u32 {
        let n = self.n;
        let mut cost = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let b1 = self.rows1[i] >> j & 1;
                let b2 = self.rows2[img[i]] >> img[j] & 1;
                cost += (b1 != b2) as u32;
            }
        }
        cost
    }

    /// Greedy upper bound: align sorted outdegrees, then hill-climb with
    /// image swaps until no swap improves.
    fn initial_upper_bound(&self) -> u32 {
        let n = self.n;
        let mut order2: Vec<usize> = (0..n).collect();
        order2.sort_by_key(|&i| (std::cmp::Reverse(self.rows2[i].count_ones()), i));
        let mut img = vec![0usize; n];
        for (k, &u) in self.order.iter().enumerate() {
            img[u] = order2[k];
        }
        let mut cost = self.mapping_cost(&img);
        loop {
            let mut improved = false;
            for a in 0..n {
                for b in (a + 1)..n {
                    img.swap(a, b);
                    let c = self.mapping_cost(&img);
                    if c < cost {
                        cost = c;
                        improved = true;
                    } else {
                        img.swap(a, b);
                    }
                }
            }
            if !improved {
                return cost;
            }
        }
    }

    fn run(&mut self) -> Result<u32> {
        self.best = self.initial_upper_bound();
        let unassigned: Vec<usize> = self.order.clone();
        self.dfs(0, 0, &unassigned)?;
        if self.exhausted {
            return Err(Error::BudgetExceeded { explored: self.nodes });
        }
        Ok(self.best)
    }

    fn dfs(&mut self, depth: usize, g: u32, unassigned: &[usize]) -> Result<()> {
        if self.exhausted {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return Ok(());
        }
        if g >= self.best {
            return Ok(());
        }
        if unassigned.is_empty() {
            self.best = g;
            return Ok(());
        }
        let n = self.n;
        let r = unassigned.len();

        // Internal outdegrees of the unmapped blocks.
        let mask1: u64 = unassigned.iter().fold(0u64, |m, &u| m | 1 << u);
        let d1: Vec<i64> = unassigned
            .iter()
            .map(|&u| (self.rows1[u] & mask1).count_ones() as i64)
            .collect();
        let free: Vec<usize> = (0..n).filter(|&w| self.free2 >> w & 1 == 1).collect();
        let d2: Vec<i64> = free
            .iter()
            .map(|&w| (self.rows2[w] & self.free2).count_ones() as i64)
            .collect();

        // Cheap admissible bound: half the sorted-degree l1 distance inside
        // the unmapped block, plus each player's cheapest cross cost.
        let mut s1 = d1.clone();
        let mut s2 = d2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        let l1: i64 = s1.iter().zip(&s2).map(|(a, b)| (a - b).abs()).sum();
        let rowmin: u32 = unassigned
            .iter()
            .map(|&u| free.iter().map(|&w| self.cross[u * n + w]).min().unwrap_or(0))
            .sum();
        if g + ((l1 + 1) / 2) as u32 + rowmin >= self.best {
            return Ok(());
        }

        // Assignment relaxation: doubled cross cost plus internal degree
        // mismatch per pair is at most twice the true remaining cost.
        if r >= 4 {
            let mut c2 = vec![0i64; r * r];
            for (a, &u) in unassigned.iter().enumerate() {
                for (b, &w) in free.iter().enumerate() {
                    c2[a * r + b] = 2 * self.cross[u * n + w] as i64 + (d1[a] - d2[b]).abs();
                }
            }
            let lap = assignment_min_cost(&c2, r);
            if g + ((lap + 1) / 2) as u32 >= self.best {
                return Ok(());
            }
        }

        let u = unassigned[0];
        let rest = &unassigned[1..];
        let mut candidates: Vec<(u32, usize)> =
            free.iter().map(|&w| (self.cross[u * n + w], w)).collect();
        candidates.sort_unstable();

        for (c_uw, w) in candidates {
            if g + c_uw >= self.best {
                break; // candidates are sorted by immediate cost
            }
            self.free2 &= !(1 << w);
            for &u2 in rest {
                let b1 = self.rows1[u2] >> u & 1;
                for w2 in 0..n {
                    if self.free2 >> w2 & 1 == 1 {
                        let b2 = self.rows2[w2] >> w & 1;
                        self.cross[u2 * n + w2] += (b1 != b2) as u32;
                    }
                }
            }
            self.dfs(depth + 1, g + c_uw, rest)?;
            for &u2 in rest {
                let b1 = self.rows1[u2] >> u & 1;
                for w2 in 0..n {
                    if self.free2 >> w2 & 1 == 1 {
                        let b2 = self.rows2[w2] >> w & 1;
                        self.cross[u2 * n + w2] -= (b1 != b2) as u32;
                    }
                }
            }
            self.free2 |= 1 << w;
        }
        Ok(())
    }
}

/// Minimum-cost perfect assignment on an `r x r` cost matrix (row-major),
/// by the Hungarian algorithm with potentials.
fn assignment_min_cost(a: &[i64], r: usize) -> i64 {
    const INF: i64 = i64::MAX / 4;
    let mut u = vec![0i64; r + 1];
    let mut v = vec![0i64; r + 1];
    let mut p = vec![0usize; r + 1];
    let mut way = vec![0usize; r + 1];
    for i in 1..=r {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; r + 1];
        let mut used = vec![false; r + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=r {
                if !used[j] {
                    let cur = a[(i0 - 1) * r + (j - 1)] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=r {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    -v[0]
}

/// l1 distance between the sorted centrality profiles of two same-size
/// tournaments.
pub fn centrality_distance(
    t1: &Tournament,
    t2: &Tournament,
    measure: Measure,
    katz: &KatzParams,
) -> Result<f64> {
    if t1.n() != t2.n() {
        return Err(Error::Alignment(format!(
            "profile distance needs equal sizes, got {} and {}",
            t1.n(),
            t2.n()
        )));
    }
    let p1 = profile(t1, measure, katz)?;
    let p2 = profile(t2, measure, katz)?;
    Ok(p1.iter().zip(&p2).map(|(a, b)| (a - b).abs()).sum())
}

/// A symmetric pairwise distance matrix aligned with a dataset's entries.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    ids: Vec<String>,
    metric: Metric,
    n: usize,
    normalizer: f64,
    normalized: bool,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixMeta {
    metric: String,
    n: usize,
    normalizer: f64,
    normalized: bool,
}

impl DistanceMatrix {
    /// Wraps precomputed distances (row-major, `ids.len()` square). The
    /// values must be finite, nonnegative, symmetric, and zero on the
    /// diagonal; `n` echoes the player count the distances refer to.
    pub fn from_values(
        ids: Vec<String>,
        metric: Metric,
        n: usize,
        normalizer: f64,
        normalized: bool,
        values: Vec<f64>,
    ) -> Result<Self> {
        let m = ids.len();
        if m == 0 {
            return Err(Error::Parameter("matrix needs at least one entry".into()));
        }
        let mut unique: std::collections::BTreeSet<&str> = std::collections::BTreeSet::new();
        for id in &ids {
            if id.is_empty() || !unique.insert(id) {
                return Err(Error::Parameter(format!("ids must be unique and nonempty, got {id:?}")));
            }
        }
        if values.len() != m * m {
            return Err(Error::Parameter(format!(
                "expected {m}x{m} values, got {}",
                values.len()
            )));
        }
        for i in 0..m {
            if values[i * m + i] != 0.0 {
                return Err(Error::Parameter(format!("nonzero diagonal at entry {i}")));
            }
            for j in (i + 1)..m {
                let (a, b) = (values[i * m + j], values[j * m + i]);
                if !a.is_finite() || a < 0.0 || a != b {
                    return Err(Error::Parameter(format!(
                        "distances must be finite, nonnegative, and symmetric; entries ({i},{j})"
                    )));
                }
            }
        }
        Ok(DistanceMatrix {
            ids,
            metric,
            n,
            normalizer,
            normalized,
            values,
        })
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// Player count of the underlying tournaments.
    pub fn player_count(&self) -> usize {
        self.n
    }

    /// The distance between the characteristic pair (transitive vs
    /// rotational) used as the scale unit.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ids.len() + j]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    /// Writes `<path>` as CSV (id header row and column, cells with nine
    /// decimal digits) and `<path>.meta.json` recording metric, player
    /// count, and normalizer. Byte-deterministic for equal inputs.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let m = self.ids.len();
        for id in &self.ids {
            if id.contains([',', '"', '\n', '\r']) {
                return Err(Error::Parameter(format!("id `{id}` not representable in CSV")));
            }
        }
        let mut out = String::new();
        out.push_str("id");
        for id in &self.ids {
            out.push(',');
            out.push_str(id);
        }
        out.push('\n');
        for i in 0..m {
            out.push_str(&self.ids[i]);
            for j in 0..m {
                out.push_str(&format!(",{:.9}", self.get(i, j)));
            }
            out.push('\n');
        }
        std::fs::write(path, out)?;
        let meta = MatrixMeta {
            metric: self.metric.name().to_string(),
            n: self.n,
            normalizer: self.normalizer,
            normalized: self.normalized,
        };
        let mut f = std::fs::File::create(sidecar_path(path))?;
        writeln!(f, "{}", serde_json::to_string_pretty(&meta)?)?;
        Ok(())
    }

    /// Reads a matrix written by [`DistanceMatrix::write_csv`], sidecar
    /// included.
    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let meta_text = std::fs::read_to_string(sidecar_path(path)).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("matrix sidecar {}: {e}", sidecar_path(path).display()),
            ))
        })?;
        let meta: MatrixMeta = serde_json::from_str(&meta_text)?;
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let mut cols = header.split(',');
        if cols.next() != Some("id") {
            return Err(Error::Parse("matrix header must start with `id`".into()));
        }
        let ids: Vec<String> = cols.map(str::to_string).collect();
        let m = ids.len();
        let mut values = vec![0.0; m * m];
        let mut row_count = 0usize;
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            row_count += 1;
            let mut parts = line.split(',');
            let row_id = parts.next().unwrap_or_default();
            if i >= m || row_id != ids[i] {
                return Err(Error::Parse(format!("matrix row {i} id `{row_id}` out of order")));
            }
            for j in 0..m {
                let cell = parts
                    .next()
                    .ok_or_else(|| Error::Parse(format!("matrix row {i} too short")))?;
                values[i * m + j] = cell
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("matrix cell ({i}, {j}): {e}")))?;
            }
            if parts.next().is_some() {
                return Err(Error::Parse(format!("matrix row {i} too long")));
            }
        }
        if row_count != m {
            return Err(Error::Parse(format!("expected {m} rows, found {row_count}")));
        }
        Ok(DistanceMatrix {
            ids,
            metric: meta.metric.parse()?,
            n: meta.n,
            normalizer: meta.normalizer,
            normalized: meta.normalized,
            values,
        })
    }
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".meta.json");
    std::path::PathBuf::from(os)
}

/// Computes the full pairwise matrix for a dataset under `metric`.
///
/// Distances are divided by the same-metric distance between `ordered(n)`
/// and `rps(n)` when `normalize` is set, so one unit means "as far apart as
/// the two characteristic extremes". The normalizer is recorded either way.
pub fn distance_matrix(
    ds: &Dataset,
    metric: Metric,
    normalize: bool,
    opts: &GedOptions,
) -> Result<DistanceMatrix> {
    let n = ds.player_count()?;
    let katz = KatzParams::default();
    let t_ord = ordered(n)?;
    let t_rps = rps(n)?;
    let normalizer = match metric {
        Metric::Ged => ged_with(&t_ord, &t_rps, opts)? as f64,
        Metric::Profile(m) => centrality_distance(&t_ord, &t_rps, m, &katz)?,
    };
    if normalizer == 0.0 {
        return Err(Error::Degenerate(format!(
            "normalizer {metric} distance between characteristic tournaments is zero"
        )));
    }
    let m = ds.len();
    let mut values = vec![0.0; m * m];
    let pair_values: Vec<f64> = match metric {
        Metric::Ged => {
            let ts: Vec<&Tournament> = ds.entries.iter().map(|e| &e.tournament).collect();
            (0..m * (m - 1) / 2)
                .into_par_iter()
                .map(|k| {
                    let (i, j) = pair_from_index(k, m);
                    ged_with(ts[i], ts[j], opts).map(|d| d as f64)
                })
                .collect::<Result<Vec<f64>>>()?
        }
        Metric::Profile(measure) => {
            let profiles: Vec<Vec<f64>> = ds
                .entries
                .par_iter()
                .map(|e| profile(&e.tournament, measure, &katz))
                .collect::<Result<Vec<_>>>()?;
            (0..m * (m - 1) / 2)
                .into_par_iter()
                .map(|k| {
                    let (i, j) = pair_from_index(k, m);
                    Ok(profiles[i]
                        .iter()
                        .zip(&profiles[j])
                        .map(|(a, b)| (a - b).abs())
                        .sum())
                })
                .collect::<Result<Vec<f64>>>()?
        }
    };
    for (k, v) in pair_values.into_iter().enumerate() {
        let (i, j) = pair_from_index(k, m);
        let v = if normalize { v / normalizer } else { v };
        values[i * m + j] = v;
        values[j * m + i] = v;
    }
    Ok(DistanceMatrix {
        ids: ds.ids(),
        metric,
        n,
        normalizer,
        normalized: normalize,
        values,
    })
}

/// Decodes a flat upper-triangle index into `(i, j)` with `i < j < m`.
fn pair_from_index(k: usize, m: usize) -> (usize, usize) {
    // Row i owns indices [i*m - i*(i+1)/2 - i, ...) of length m - 1 - i.
    let mut i = 0usize;
    let mut base = 0usize;
    loop {
        let row = m - 1 - i;
        if k < base + row {
            return (i, k - base + i + 1);
        }
        base += row;
        i += 1;
    }
}
