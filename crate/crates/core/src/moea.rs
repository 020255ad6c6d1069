//! Archive management, crowding distance, roulette target selection and
//! Monte Carlo hypervolume.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{dominates, EvaluatedSolution};

/// How an over-full archive is cut back to its cap.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrunePolicy {
    /// Remove one most-crowded member at a time, recomputing distances after each removal.
    #[default]
    Dynamic,
    /// Rank by one crowding computation and keep the least crowded.
    Static,
}

/// Crowding distance of each point. Points at either end of some objective
/// get `+inf`; objectives with zero range are skipped.
pub fn crowding_distances(points: &[&[f64]]) -> Vec<f64> {
    let n = points.len();
    let mut dist = vec![0.0; n];
    if n == 0 {
        return dist;
    }
    let m = points[0].len();
    let mut idx: Vec<usize> = (0..n).collect();
    for obj in 0..m {
        idx.sort_by(|&a, &b| points[a][obj].total_cmp(&points[b][obj]).then(a.cmp(&b)));
        let lo = points[idx[0]][obj];
        let hi = points[idx[n - 1]][obj];
        let range = hi - lo;
        if !(range > 0.0) {
            continue;
        }
        dist[idx[0]] = f64::INFINITY;
        dist[idx[n - 1]] = f64::INFINITY;
        for w in idx.windows(3) {
            dist[w[1]] += (points[w[2]][obj] - points[w[0]][obj]) / range;
        }
    }
    dist
}

fn objective_rows(members: &[EvaluatedSolution]) -> Vec<&[f64]> {
    members.iter().map(|m| m.objectives.as_slice()).collect()
}

/// Dynamic elimination: drop one member with the smallest crowding distance
/// (ties broken uniformly at random), recompute, repeat until `cap` remain.
pub fn dcde_prune<R: Rng + ?Sized>(
    mut members: Vec<EvaluatedSolution>,
    cap: usize,
    rng: &mut R,
) -> Vec<EvaluatedSolution> {
    while members.len() > cap {
        let d = crowding_distances(&objective_rows(&members));
        let min = d.iter().copied().fold(f64::INFINITY, f64::min);
        let ties: Vec<usize> = (0..d.len()).filter(|&i| d[i] == min).collect();
        let victim = ties[rng.gen_range(0..ties.len())];
        members.remove(victim);
    }
    members
}

/// One crowding computation, keep the `cap` largest distances (stable).
pub fn static_prune(members: Vec<EvaluatedSolution>, cap: usize) -> Vec<EvaluatedSolution> {
    if members.len() <= cap {
        return members;
    }
    let d = crowding_distances(&objective_rows(&members));
    let mut rank: Vec<usize> = (0..members.len()).collect();
    rank.sort_by(|&a, &b| d[b].total_cmp(&d[a]).then(a.cmp(&b)));
    let mut keep = vec![false; members.len()];
    for &i in &rank[..cap] {
        keep[i] = true;
    }
    members
        .into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect()
}

/// Bounded set of mutually non-dominated solutions.
#[derive(Clone, Debug, PartialEq)]
pub struct Archive {
    members: Vec<EvaluatedSolution>,
    cap: usize,
    policy: PrunePolicy,
}

impl Archive {
    pub fn new(cap: usize, policy: PrunePolicy) -> Self {
        Self {
            members: Vec::new(),
            cap: cap.max(1),
            policy,
        }
    }

    pub fn members(&self) -> &[EvaluatedSolution] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn policy(&self) -> PrunePolicy {
        self.policy
    }

    /// Merges `candidates`, filters dominated and duplicate objective
    /// vectors, then prunes to the cap.
    pub fn update<R: Rng + ?Sized>(&mut self, candidates: Vec<EvaluatedSolution>, rng: &mut R) {
        let mut pool = std::mem::take(&mut self.members);
        pool.extend(candidates);
        let mut kept = non_dominated(pool);
        if kept.len() > self.cap {
            kept = match self.policy {
                PrunePolicy::Dynamic => dcde_prune(kept, self.cap, rng),
                PrunePolicy::Static => static_prune(kept, self.cap),
            };
        }
        self.members = kept;
    }

    /// True when no member dominates another and the cap holds.
    pub fn is_consistent(&self) -> bool {
        self.members.len() <= self.cap
            && self.members.iter().enumerate().all(|(i, a)| {
                self.members
                    .iter()
                    .enumerate()
                    .all(|(j, b)| i == j || !dominates(a, b))
            })
    }
}

/// Members not dominated by any other, first copy of each objective vector kept.
pub fn non_dominated(pool: Vec<EvaluatedSolution>) -> Vec<EvaluatedSolution> {
    let n = pool.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            if dominates(&pool[j], &pool[i]) {
                keep[i] = false;
                break;
            }
        }
    }
    for i in 0..n {
        if !keep[i] {
            continue;
        }
        for j in i + 1..n {
            if keep[j] && pool[j].objectives == pool[i].objectives && pool[j].feasible == pool[i].feasible {
                keep[j] = false;
            }
        }
    }
    pool.into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect()
}

/// Per-objective min/max used to map objectives into the unit cube.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Normalization {
    /// Bounds spanning every point of every front.
    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a [f64]>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut min = first.to_vec();
        let mut max = first.to_vec();
        for p in it {
            for (d, &v) in p.iter().enumerate() {
                min[d] = min[d].min(v);
                max[d] = max[d].max(v);
            }
        }
        Some(Self { min, max })
    }

    /// Min-max scaling; an objective with zero range maps to 0.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        p.iter()
            .enumerate()
            .map(|(d, &v)| {
                let range = self.max[d] - self.min[d];
                if range > 0.0 {
                    (v - self.min[d]) / range
                } else {
                    0.0
                }
            })
            .collect()
    }
}

/// Number of other points within `radius` (Euclidean) of each point.
pub fn neighbor_counts(points: &[Vec<f64>], radius: f64) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            points
                .iter()
                .enumerate()
                .filter(|(j, q)| {
                    *j != i && p.iter().zip(q.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() < radius * radius
                })
                .count()
        })
        .collect()
}

/// Roulette wheel over `1 / (1 + n_i)`.
pub fn roulette_index<R: Rng + ?Sized>(counts: &[usize], rng: &mut R) -> Result<usize> {
    if counts.is_empty() {
        return Err(Error::EmptyArchive);
    }
    let weights: Vec<f64> = counts.iter().map(|&n| 1.0 / (1.0 + n as f64)).collect();
    let total: f64 = weights.iter().sum();
    let mut r = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if r < *w {
            return Ok(i);
        }
        r -= w;
    }
    Ok(counts.len() - 1)
}

/// Picks a target from the archive, favoring sparsely populated regions of
/// the normalized objective space.
pub fn roulette_select_target<'a, R: Rng + ?Sized>(
    archive: &'a Archive,
    radius: f64,
    rng: &mut R,
) -> Result<&'a EvaluatedSolution> {
    let members = archive.members();
    let norm = Normalization::from_points(members.iter().map(|m| m.objectives.as_slice()))
        .ok_or(Error::EmptyArchive)?;
    let pts: Vec<Vec<f64>> = members
        .iter()
        .map(|m| norm.apply(m.objectives.as_slice()))
        .collect();
    let i = roulette_index(&neighbor_counts(&pts, radius), rng)?;
    Ok(&members[i])
}

/// Monte Carlo hypervolume of a normalized front against `reference`,
/// sampling uniformly in the unit cube. An empty front has volume 0.
pub fn hypervolume<R: Rng + ?Sized>(
    front: &[Vec<f64>],
    reference: &[f64],
    n_samples: usize,
    rng: &mut R,
) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::NoDraws);
    }
    if front.is_empty() {
        return Ok(0.0);
    }
    let dim = reference.len();
    if let Some(p) = front.iter().find(|p| p.len() != dim) {
        return Err(Error::Dimension(format!("point of length {} vs reference {dim}", p.len())));
    }
    let useful: Vec<&Vec<f64>> = front
        .iter()
        .filter(|p| p.iter().zip(reference).all(|(a, r)| a < r))
        .collect();
    let mut s = vec![0.0; dim];
    let mut hits = 0usize;
    for _ in 0..n_samples {
        for v in s.iter_mut() {
            *v = rng.gen::<f64>();
        }
        if s.iter().zip(reference).any(|(a, r)| a > r) {
            continue;
        }
        if useful.iter().any(|p| p.iter().zip(&s).all(|(a, b)| a <= b)) {
            hits += 1;
        }
    }
    Ok(hits as f64 / n_samples as f64)
}

/// Hypervolume of `front` after mapping it through `norm`, against the
/// all-ones reference.
pub fn normalized_hypervolume<'a, R: Rng + ?Sized>(
    front: impl IntoIterator<Item = &'a [f64]>,
    norm: &Normalization,
    n_samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let pts: Vec<Vec<f64>> = front.into_iter().map(|p| norm.apply(p)).collect();
    hypervolume(&pts, &vec![1.0; norm.min.len()], n_samples, rng)
}

/// Exact dominated area of a 2D minimization front against `reference`.
pub fn hypervolume_2d(front: &[[f64; 2]], reference: [f64; 2]) -> f64 {
    let mut pts: Vec<[f64; 2]> = front
        .iter()
        .copied()
        .filter(|p| p[0] < reference[0] && p[1] < reference[1])
        .collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut best_y = reference[1];
    for (i, p) in pts.iter().enumerate() {
        if p[1] >= best_y {
            continue;
        }
        let next_x = pts[i + 1..]
            .iter()
            .find(|q| q[1] < p[1])
            .map_or(reference[0], |q| q[0]);
        area += (next_x - p[0]) * (reference[1] - p[1]);
        best_y = p[1];
    }
    area
}
