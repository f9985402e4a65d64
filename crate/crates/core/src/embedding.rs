//! Planar maps from distance matrices: stress-majorization MDS, embedding
//! distortion, and the correlation sweeps comparing centrality distances
//! against edit distance.

use rayon::prelude::*;

use crate::centrality::{profile, KatzParams, Measure};
use crate::dataset::Dataset;
use crate::distance::{centrality_distance, ged, DistanceMatrix};
use crate::error::{Error, Result};
use crate::generators::{child_seed, gen_uniform, rng_from, unit};
use crate::tournament::ordered;

/// Independent restarts per embedding; the lowest-stress result wins.
pub const MDS_RESTARTS: usize = 4;
/// Default iteration cap per restart.
pub const MDS_MAX_ITER: usize = 300;
/// Default relative stress-improvement stopping threshold.
pub const MDS_TOL: f64 = 1e-6;

/// A 2-D layout of a distance matrix's entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub ids: Vec<String>,
    pub points: Vec<[f64; 2]>,
    /// Raw stress: sum of squared gaps between given and embedded distances.
    pub stress: f64,
    /// Majorization steps used by the winning restart.
    pub iterations: usize,
}

fn euclid(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

fn raw_stress(d: &[f64], m: usize, x: &[[f64; 2]]) -> f64 {
    let mut s = 0.0;
    for i in 0..m {
        for j in (i + 1)..m {
            s += (d[i * m + j] - euclid(x[i], x[j])).powi(2);
        }
    }
    s
}

/// One majorization run. Returns the final configuration and the stress
/// after each step, starting with the initial configuration's stress; the
/// sequence never increases.
fn smacof_run(
    d: &[f64],
    m: usize,
    mut x: Vec<[f64; 2]>,
    max_iter: usize,
    tol: f64,
) -> (Vec<[f64; 2]>, Vec<f64>) {
    let mut stresses = vec![raw_stress(d, m, &x)];
    for _ in 0..max_iter {
        // Guttman transform with unit weights: x'_i is the mean over
        // partners of the pair direction rescaled to its target distance.
        // Coincident points contribute no direction. The update recenters
        // the configuration on the origin as a side effect.
        let mut next = vec![[0.0f64; 2]; m];
        for i in 0..m {
            let mut acc = [0.0f64; 2];
            for j in 0..m {
                if i == j {
                    continue;
                }
                let e = euclid(x[i], x[j]);
                if e > 0.0 {
                    let f = d[i * m + j] / e;
                    acc[0] += f * (x[i][0] - x[j][0]);
                    acc[1] += f * (x[i][1] - x[j][1]);
                }
            }
            next[i] = [acc[0] / m as f64, acc[1] / m as f64];
        }
        x = next;
        let s = raw_stress(d, m, &x);
        let prev = *stresses.last().unwrap();
        stresses.push(s);
        if prev <= 0.0 || (prev - s) / prev < tol {
            break;
        }
    }
    (x, stresses)
}

/// Embeds a distance matrix in the plane by stress majorization: seeded
/// uniform starting configurations in the unit square, `MDS_RESTARTS`
/// restarts keeping the lowest final stress. Stops a restart when the
/// relative stress improvement drops below `tol` or after `max_iter`
/// steps. Identical `(matrix, seed)` input gives identical coordinates.
pub fn mds(dm: &DistanceMatrix, seed: u64, max_iter: usize, tol: f64) -> Result<Embedding> {
    let m = dm.len();
    if m < 3 {
        return Err(Error::Parameter(format!(
            "embedding needs at least 3 entries, got {m}"
        )));
    }
    let d: Vec<f64> = (0..m * m)
        .map(|k| dm.get(k / m, k % m))
        .collect();
    if d.iter().all(|&v| v == 0.0) {
        return Err(Error::Degenerate(
            "all distances are zero; no geometry to embed".into(),
        ));
    }
    let mut best: Option<(Vec<[f64; 2]>, f64, usize)> = None;
    for r in 0..MDS_RESTARTS {
        let mut rng = rng_from(child_seed(seed, "mds_restart", r as u64));
        let init: Vec<[f64; 2]> = (0..m)
            .map(|_| [unit(&mut rng), unit(&mut rng)])
            .collect();
        let (x, stresses) = smacof_run(&d, m, init, max_iter, tol);
        let stress = *stresses.last().unwrap();
        let iterations = stresses.len() - 1;
        if best.as_ref().is_none_or(|(_, s, _)| stress < *s) {
            best = Some((x, stress, iterations));
        }
    }
    let (points, stress, iterations) = best.unwrap();
    Ok(Embedding {
        ids: dm.ids().to_vec(),
        points,
        stress,
        iterations,
    })
}

/// Embedding with the default iteration cap and tolerance.
pub fn mds_default(dm: &DistanceMatrix, seed: u64) -> Result<Embedding> {
    mds(dm, seed, MDS_MAX_ITER, MDS_TOL)
}

impl Embedding {
    /// Applies the rigid motion that puts `left_id` at the origin and
    /// `right_id` on the positive x-axis, then flips across that axis if
    /// most of the layout's mass sits below it. Stress and distortion are
    /// unchanged. Returns false, leaving the layout alone, when either id
    /// is absent or the two points coincide.
    pub fn orient(&mut self, left_id: &str, right_id: &str) -> bool {
        let Some(li) = self.ids.iter().position(|s| s == left_id) else {
            return false;
        };
        let Some(ri) = self.ids.iter().position(|s| s == right_id) else {
            return false;
        };
        if li == ri {
            return false;
        }
        let (l, r) = (self.points[li], self.points[ri]);
        let (dx, dy) = (r[0] - l[0], r[1] - l[1]);
        let len = (dx * dx + dy * dy).sqrt();
        if len == 0.0 {
            return false;
        }
        let (cos, sin) = (dx / len, dy / len);
        for p in &mut self.points {
            let (x, y) = (p[0] - l[0], p[1] - l[1]);
            *p = [x * cos + y * sin, y * cos - x * sin];
        }
        if self.points.iter().map(|p| p[1]).sum::<f64>() < 0.0 {
            for p in &mut self.points {
                p[1] = -p[1];
            }
        }
        true
    }
}

/// Per-entry and global embedding distortion.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionReport {
    /// Average over each entry's partners of
    /// `max(given, embedded) / min(given, embedded)`; 1 is perfect. Entries
    /// with no usable partner report the neutral 1.
    pub per_entry: Vec<f64>,
    /// Mean ratio over all usable unordered pairs.
    pub mean: f64,
    /// Pairs left out because one side's distance is exactly zero.
    pub excluded_pairs: usize,
}

/// Compares given distances with embedded Euclidean ones pair by pair.
/// Pairs where either side is zero carry no ratio; they are counted and
/// skipped.
pub fn distortion(dm: &DistanceMatrix, e: &Embedding) -> Result<DistortionReport> {
    if dm.ids() != &e.ids[..] {
        return Err(Error::Alignment(
            "distance matrix and embedding list different entries".into(),
        ));
    }
    let m = dm.len();
    let mut per_sum = vec![0.0f64; m];
    let mut per_count = vec![0usize; m];
    let mut total = 0.0;
    let mut pairs = 0usize;
    let mut excluded = 0usize;
    for i in 0..m {
        for j in (i + 1)..m {
            let given = dm.get(i, j);
            let embedded = euclid(e.points[i], e.points[j]);
            if given == 0.0 || embedded == 0.0 {
                excluded += 1;
                continue;
            }
            let ratio = given.max(embedded) / given.min(embedded);
            per_sum[i] += ratio;
            per_sum[j] += ratio;
            per_count[i] += 1;
            per_count[j] += 1;
            total += ratio;
            pairs += 1;
        }
    }
    let per_entry = (0..m)
        .map(|i| {
            if per_count[i] == 0 {
                1.0
            } else {
                per_sum[i] / per_count[i] as f64
            }
        })
        .collect();
    Ok(DistortionReport {
        per_entry,
        mean: if pairs == 0 { 1.0 } else { total / pairs as f64 },
        excluded_pairs: excluded,
    })
}

/// Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Parameter(format!(
            "correlation needs two equal-length vectors of at least 2 values, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx).powi(2);
        vy += (y - my).powi(2);
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(Error::ZeroVariance(format!(
            "{} input is constant",
            if vx == 0.0 { "first" } else { "second" }
        )));
    }
    Ok(cov / (vx * vy).sqrt())
}

/// Ranks with ties averaged, 1-based.
fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation: Pearson on average ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Parameter(format!(
            "correlation needs two equal-length vectors of at least 2 values, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    pearson(&average_ranks(xs), &average_ranks(ys))
}

/// One row of the measure-vs-edit-distance comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricAgreement {
    pub measure: Measure,
    pub pearson: f64,
    pub spearman: f64,
    /// Entries this measure could not score (for example the eigenvector
    /// measure on tournaments without cycles); their pairs are left out of
    /// both correlation inputs.
    pub excluded_entries: usize,
}

/// Correlates each centrality-profile distance with precomputed edit
/// distances over all entry pairs, sorted by Pearson coefficient
/// descending (ties by measure name). Entries where a measure reports a
/// degenerate or singular value are dropped for that measure only and
/// counted in its row.
pub fn metric_correlation_table(ds: &Dataset, ged_matrix: &DistanceMatrix) -> Result<Vec<MetricAgreement>> {
    if ged_matrix.ids() != ds.ids() {
        return Err(Error::Alignment(
            "distance matrix entries do not match the dataset".into(),
        ));
    }
    let katz = KatzParams::default();
    let m = ds.len();
    let mut rows = Vec::with_capacity(Measure::ALL.len());
    for measure in Measure::ALL {
        let profiles: Vec<Option<Vec<f64>>> = ds
            .entries
            .par_iter()
            .map(|entry| match profile(&entry.tournament, measure, &katz) {
                Ok(p) => Ok(Some(p)),
                Err(Error::Degenerate(_)) | Err(Error::Singular(_)) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<_>>()?;
        let excluded = profiles.iter().filter(|p| p.is_none()).count();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in 0..m {
            let Some(pi) = &profiles[i] else { continue };
            for j in (i + 1)..m {
                let Some(pj) = &profiles[j] else { continue };
                xs.push(pi.iter().zip(pj).map(|(a, b)| (a - b).abs()).sum());
                ys.push(ged_matrix.get(i, j));
            }
        }
        rows.push(MetricAgreement {
            measure,
            pearson: pearson(&xs, &ys)?,
            spearman: spearman(&xs, &ys)?,
            excluded_entries: excluded,
        });
    }
    rows.sort_by(|a, b| {
        b.pearson
            .total_cmp(&a.pearson)
            .then_with(|| a.measure.name().cmp(b.measure.name()))
    });
    Ok(rows)
}

/// One point of the edit-vs-Katz agreement curve.
#[derive(Debug, Clone, PartialEq)]
pub struct PccPoint {
    pub n: usize,
    pub mean: f64,
    pub stddev: f64,
}

/// For each player count, correlates edit distance and Katz distance from
/// the transitive tournament to freshly sampled uniform tournaments;
/// reports mean and sample standard deviation over `repeats` independent
/// sample sets.
pub fn ged_katz_pcc_by_n(
    n_values: &[usize],
    samples_per_n: usize,
    repeats: usize,
    seed: u64,
) -> Result<Vec<PccPoint>> {
    if samples_per_n < 2 || repeats == 0 {
        return Err(Error::Parameter(
            "need at least 2 samples and 1 repeat".into(),
        ));
    }
    if let Some(&n) = n_values.iter().find(|&&n| n > 12) {
        return Err(Error::PlayerCount {
            n,
            reason: "edit-distance sweeps are limited to 12 players".into(),
        });
    }
    let katz = KatzParams::default();
    let mut curve = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let anchor = ordered(n)?;
        let mut pccs = Vec::with_capacity(repeats);
        for r in 0..repeats {
            let base = child_seed(seed, &format!("pcc_n{n}_rep{r}"), 0);
            let ts: Vec<_> = (0..samples_per_n)
                .map(|i| gen_uniform(n, child_seed(base, "sample", i as u64)))
                .collect::<Result<_>>()?;
            let xs: Vec<f64> = ts
                .par_iter()
                .map(|t| ged(&anchor, t).map(|d| d as f64))
                .collect::<Result<_>>()?;
            let ys: Vec<f64> = ts
                .iter()
                .map(|t| centrality_distance(&anchor, t, Measure::Katz, &katz))
                .collect::<Result<_>>()?;
            pccs.push(pearson(&xs, &ys)?);
        }
        let mean = pccs.iter().sum::<f64>() / repeats as f64;
        let stddev = if repeats > 1 {
            (pccs.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (repeats - 1) as f64).sqrt()
        } else {
            0.0
        };
        curve.push(PccPoint { n, mean, stddev });
    }
    Ok(curve)
}
