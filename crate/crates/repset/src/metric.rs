//! Point sets, distance metrics, selection objectives and the exhaustive
//! small-instance oracle.
//!
//! A [`PointSet`] is an immutable N x d matrix of feature coordinates with
//! stable string identifiers. All selection algorithms operate on borrowed
//! point sets and communicate results as index lists ([`Selection`]).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance metric between feature vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Euclidean,
    /// 1 - cosine similarity; lies in [0, 2]. Requires nonzero-norm vectors.
    CosineDistance,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::CosineDistance => "cosine",
        }
    }

    /// Raw distance kernel. Assumes operands are finite, equal-length and
    /// (for cosine) nonzero-norm; callers validate those once up front.
    #[inline]
    pub(crate) fn eval(self, a: &[f64], b: &[f64]) -> f64 {
        if a == b {
            return 0.0;
        }
        match self {
            Metric::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Metric::CosineDistance => {
                let mut dot = 0.0;
                let mut na = 0.0;
                let mut nb = 0.0;
                for (x, y) in a.iter().zip(b) {
                    dot += x * y;
                    na += x * x;
                    nb += y * y;
                }
                (1.0 - dot / (na.sqrt() * nb.sqrt())).clamp(0.0, 2.0)
            }
        }
    }
}

/// Checked single-pair distance.
pub fn distance(a: &[f64], b: &[f64], metric: Metric) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    for (index, v) in a.iter().chain(b.iter()).enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteCoordinate {
                index: index / a.len().max(1),
            });
        }
    }
    if metric == Metric::CosineDistance {
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm(a) == 0.0 || norm(b) == 0.0 {
            return Err(Error::ZeroNormVector);
        }
    }
    Ok(metric.eval(a, b))
}

/// An immutable set of N points in d dimensions with unique string ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    data: Vec<f64>,
    ids: Vec<String>,
    dim: usize,
}

impl PointSet {
    /// Builds a point set from row vectors, validating shape, finiteness and
    /// id uniqueness.
    pub fn new(rows: Vec<Vec<f64>>, ids: Vec<String>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if rows.len() != ids.len() {
            return Err(Error::LengthMismatch {
                expected: rows.len(),
                got: ids.len(),
            });
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        let mut data = Vec::with_capacity(rows.len() * dim);
        for (index, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteCoordinate { index });
            }
            data.extend_from_slice(row);
        }
        let mut seen = std::collections::HashSet::with_capacity(ids.len());
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId { id: id.clone() });
            }
        }
        Ok(PointSet { data, ids, dim })
    }

    /// Convenience constructor that numbers points "0", "1", ... as ids.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let ids = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::new(rows, ids)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    /// Distance between two points of the set.
    #[inline]
    pub fn dist(&self, i: usize, j: usize, metric: Metric) -> f64 {
        metric.eval(self.point(i), self.point(j))
    }

    /// Cosine distance requires every point to have nonzero norm; euclidean
    /// has no extra requirement. Called once at the entry of metric-dependent
    /// operations.
    pub fn validate_for(&self, metric: Metric) -> Result<()> {
        if metric == Metric::CosineDistance {
            for i in 0..self.len() {
                let norm_sq: f64 = self.point(i).iter().map(|v| v * v).sum();
                if norm_sq == 0.0 {
                    return Err(Error::ZeroNorm { index: i });
                }
            }
        }
        Ok(())
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.len()];
        for &i in indices {
            if i >= self.len() {
                return Err(Error::IndexOutOfBounds {
                    index: i,
                    len: self.len(),
                });
            }
            if seen[i] {
                return Err(Error::DuplicateIndex { index: i });
            }
            seen[i] = true;
        }
        Ok(())
    }
}

/// How a selection was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionMethod {
    Greedy,
    GreedyMinimax,
    GreedyMaximin,
    KMedoids,
    Random,
    RandomClassBalanced,
    /// Exhaustive-enumeration oracle; only produced by [`brute_force_optimal`].
    BruteForce,
}

impl SelectionMethod {
    pub fn name(self) -> &'static str {
        match self {
            SelectionMethod::Greedy => "greedy",
            SelectionMethod::GreedyMinimax => "greedy-minimax",
            SelectionMethod::GreedyMaximin => "greedy-maximin",
            SelectionMethod::KMedoids => "kmedoids",
            SelectionMethod::Random => "random",
            SelectionMethod::RandomClassBalanced => "random-class-balanced",
            SelectionMethod::BruteForce => "brute-force",
        }
    }
}

impl std::str::FromStr for SelectionMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "greedy" => Ok(SelectionMethod::Greedy),
            "greedy-minimax" => Ok(SelectionMethod::GreedyMinimax),
            "greedy-maximin" => Ok(SelectionMethod::GreedyMaximin),
            "kmedoids" => Ok(SelectionMethod::KMedoids),
            "random" => Ok(SelectionMethod::Random),
            "random-class-balanced" => Ok(SelectionMethod::RandomClassBalanced),
            other => Err(format!("unknown selection method `{other}`")),
        }
    }
}

/// The three objective values of a selection, recomputable from
/// (point set, indices, metric).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Objectives {
    /// max over points of the distance to the nearest selected point.
    pub minimax: f64,
    /// min pairwise distance among selected points; None for singletons.
    pub maximin: Option<f64>,
    /// sum over points of the distance to the nearest selected point.
    pub kmedoids: f64,
}

impl Objectives {
    pub fn compute(ps: &PointSet, indices: &[usize], metric: Metric) -> Result<Self> {
        Ok(Objectives {
            minimax: objective_minimax(ps, indices, metric)?,
            maximin: if indices.len() >= 2 {
                Some(objective_maximin(ps, indices, metric)?)
            } else {
                None
            },
            kmedoids: objective_kmedoids(ps, indices, metric)?,
        })
    }
}

/// An ordered list of selected point indices plus provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub indices: Vec<usize>,
    pub method: SelectionMethod,
    pub seed: u64,
    pub objectives: Option<Objectives>,
}

impl Selection {
    pub fn new(
        ps: &PointSet,
        indices: Vec<usize>,
        method: SelectionMethod,
        seed: u64,
    ) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptySelection);
        }
        ps.check_indices(&indices)?;
        Ok(Selection {
            indices,
            method,
            seed,
            objectives: None,
        })
    }

    /// Populates the objective record by recomputation over `ps`.
    pub fn with_objectives(mut self, ps: &PointSet, metric: Metric) -> Result<Self> {
        self.objectives = Some(Objectives::compute(ps, &self.indices, metric)?);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Position (within `centers`) and distance of the center nearest to point
/// `p`; ties resolve to the earliest list position.
#[inline]
pub(crate) fn nearest_center(
    ps: &PointSet,
    p: usize,
    centers: &[usize],
    metric: Metric,
) -> (usize, f64) {
    let mut best_pos = 0;
    let mut best = ps.dist(p, centers[0], metric);
    for (pos, &c) in centers.iter().enumerate().skip(1) {
        let d = ps.dist(p, c, metric);
        if d < best {
            best = d;
            best_pos = pos;
        }
    }
    (best_pos, best)
}

fn validate_selection_input(ps: &PointSet, indices: &[usize], metric: Metric) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::EmptySelection);
    }
    ps.check_indices(indices)?;
    ps.validate_for(metric)
}

/// Below this many points, parallel dispatch costs more than the scan.
pub(crate) const PAR_THRESHOLD: usize = 4096;

/// Unchecked nearest-center assignment for validated inputs. Parallel over
/// points for large sets; per-slot writes keep the result identical to the
/// sequential scan.
pub(crate) fn nearest_all(
    ps: &PointSet,
    centers: &[usize],
    metric: Metric,
) -> (Vec<usize>, Vec<f64>) {
    if ps.len() >= PAR_THRESHOLD {
        (0..ps.len())
            .into_par_iter()
            .map(|p| nearest_center(ps, p, centers, metric))
            .unzip()
    } else {
        (0..ps.len())
            .map(|p| nearest_center(ps, p, centers, metric))
            .unzip()
    }
}

/// Lowers `nearest[p]` to the distance from p to `center` where closer.
pub(crate) fn update_nearest(ps: &PointSet, nearest: &mut [f64], center: usize, metric: Metric) {
    if ps.len() >= PAR_THRESHOLD {
        nearest.par_iter_mut().enumerate().for_each(|(p, slot)| {
            let d = ps.dist(p, center, metric);
            if d < *slot {
                *slot = d;
            }
        });
    } else {
        for (p, slot) in nearest.iter_mut().enumerate() {
            let d = ps.dist(p, center, metric);
            if d < *slot {
                *slot = d;
            }
        }
    }
}

/// Position of the largest value; ties break toward the lowest index.
pub(crate) fn argmax_lowest(values: &[f64]) -> usize {
    let seq = |vals: &[f64]| -> (usize, f64) {
        let mut best = 0;
        for (i, &v) in vals.iter().enumerate().skip(1) {
            if v > vals[best] {
                best = i;
            }
        }
        (best, vals[best])
    };
    if values.len() >= PAR_THRESHOLD {
        values
            .par_iter()
            .enumerate()
            .map(|(i, &v)| (i, v))
            .reduce(
                || (usize::MAX, f64::NEG_INFINITY),
                |a, b| {
                    if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                        b
                    } else {
                        a
                    }
                },
            )
            .0
    } else {
        seq(values).0
    }
}

/// Minimum pairwise distance over an index list; tolerates duplicates
/// (yielding 0). Callers validate index bounds.
pub(crate) fn pairwise_min(ps: &PointSet, idxs: &[usize], metric: Metric) -> f64 {
    let mut best = f64::INFINITY;
    for (a, &i) in idxs.iter().enumerate() {
        for &j in &idxs[a + 1..] {
            best = best.min(ps.dist(i, j, metric));
        }
    }
    best
}

/// Assigns every point to its nearest center. Returns per-point positions
/// into `centers` and the corresponding distances. Ties break toward the
/// earliest center in the list.
pub fn assign_voronoi(
    ps: &PointSet,
    centers: &[usize],
    metric: Metric,
) -> Result<(Vec<usize>, Vec<f64>)> {
    validate_selection_input(ps, centers, metric)?;
    Ok(nearest_all(ps, centers, metric))
}

/// phi_mM: max over points of the distance to the nearest selected point.
/// Zero when the selection covers every point.
pub fn objective_minimax(ps: &PointSet, selected: &[usize], metric: Metric) -> Result<f64> {
    validate_selection_input(ps, selected, metric)?;
    let (_, dists) = nearest_all(ps, selected, metric);
    Ok(dists.iter().copied().fold(0.0, f64::max))
}

/// phi_Mm: minimum pairwise distance among the selected points.
pub fn objective_maximin(ps: &PointSet, selected: &[usize], metric: Metric) -> Result<f64> {
    if selected.len() < 2 {
        return Err(Error::TooFewIndices {
            needed: 2,
            got: selected.len(),
        });
    }
    validate_selection_input(ps, selected, metric)?;
    Ok(pairwise_min(ps, selected, metric))
}

/// phi_kmedoids: sum over points of the distance to the nearest selected
/// point.
pub fn objective_kmedoids(ps: &PointSet, selected: &[usize], metric: Metric) -> Result<f64> {
    validate_selection_input(ps, selected, metric)?;
    let (_, dists) = nearest_all(ps, selected, metric);
    // Sequential sum keeps the result independent of the parallel schedule.
    Ok(dists.iter().sum())
}

/// Which objective the brute-force oracle optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveKind {
    Minimax,
    Maximin,
    KMedoids,
}

/// Default cap on the number of subsets the oracle will enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 2_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Exhaustive optimal subset for small instances. Enumerates subsets in
/// lexicographic index order, so ties resolve to the lexicographically
/// smallest index list.
pub fn brute_force_optimal(
    ps: &PointSet,
    n: usize,
    objective: ObjectiveKind,
    metric: Metric,
) -> Result<Selection> {
    brute_force_optimal_with_budget(ps, n, objective, metric, DEFAULT_ENUMERATION_BUDGET)
}

pub fn brute_force_optimal_with_budget(
    ps: &PointSet,
    n: usize,
    objective: ObjectiveKind,
    metric: Metric,
    budget: u64,
) -> Result<Selection> {
    if n < 1 || n > ps.len() {
        return Err(Error::SubsetSizeOutOfRange { n, max: ps.len() });
    }
    if objective == ObjectiveKind::Maximin && n < 2 {
        return Err(Error::TooFewIndices { needed: 2, got: n });
    }
    ps.validate_for(metric)?;
    let combinations = binomial(ps.len(), n);
    if combinations > budget as u128 {
        return Err(Error::EnumerationBudgetExceeded {
            n_points: ps.len(),
            subset: n,
            combinations,
            budget,
        });
    }

    let score = |subset: &[usize]| -> f64 {
        match objective {
            ObjectiveKind::Minimax => objective_minimax(ps, subset, metric).unwrap(),
            ObjectiveKind::Maximin => objective_maximin(ps, subset, metric).unwrap(),
            ObjectiveKind::KMedoids => objective_kmedoids(ps, subset, metric).unwrap(),
        }
    };
    let better = |candidate: f64, incumbent: f64| -> bool {
        match objective {
            ObjectiveKind::Maximin => candidate > incumbent,
            _ => candidate < incumbent,
        }
    };

    let mut subset: Vec<usize> = (0..n).collect();
    let mut best = subset.clone();
    let mut best_value = score(&subset);
    while next_combination(&mut subset, ps.len()) {
        let value = score(&subset);
        if better(value, best_value) {
            best_value = value;
            best = subset.clone();
        }
    }
    Selection::new(ps, best, SelectionMethod::BruteForce, 0)?.with_objectives(ps, metric)
}

/// Advances `subset` to the next lexicographic n-combination of 0..len.
/// Returns false when the last combination has been reached.
fn next_combination(subset: &mut [usize], len: usize) -> bool {
    let n = subset.len();
    let mut i = n;
    while i > 0 {
        i -= 1;
        if subset[i] < len - (n - i) {
            subset[i] += 1;
            for j in i + 1..n {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ps(rows: &[&[f64]]) -> PointSet {
        PointSet::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    pub(crate) fn random_pointset(rng: &mut ChaCha8Rng, n: usize, d: usize) -> PointSet {
        // Offset from the origin so cosine distance is always defined.
        let rows = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(0.1..1.1)).collect())
            .collect();
        PointSet::from_rows(rows).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(
            distance(&[0.0, 0.0], &[3.0, 4.0], Metric::Euclidean).unwrap(),
            5.0
        );
        assert!(
            (distance(&[1.0, 0.0], &[0.0, 1.0], Metric::CosineDistance).unwrap() - 1.0).abs()
                < 1e-15
        );
        for metric in [Metric::Euclidean, Metric::CosineDistance] {
            assert_eq!(distance(&[0.3, 0.7], &[0.3, 0.7], metric).unwrap(), 0.0);
        }
    }

    #[test]
    fn distance_errors() {
        assert!(matches!(
            distance(&[1.0], &[1.0, 2.0], Metric::Euclidean),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            distance(&[0.0, 0.0], &[1.0, 0.0], Metric::CosineDistance),
            Err(Error::ZeroNormVector)
        ));
        assert!(matches!(
            distance(&[f64::NAN, 0.0], &[1.0, 0.0], Metric::Euclidean),
            Err(Error::NonFiniteCoordinate { .. })
        ));
        assert!(matches!(
            distance(&[f64::INFINITY, 0.0], &[1.0, 0.0], Metric::Euclidean),
            Err(Error::NonFiniteCoordinate { .. })
        ));
    }

    #[test]
    fn pointset_validation() {
        assert!(matches!(
            PointSet::new(vec![], vec![]),
            Err(Error::EmptyPointSet)
        ));
        assert!(matches!(
            PointSet::new(vec![vec![1.0]], vec!["a".into(), "b".into()]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            PointSet::new(
                vec![vec![1.0], vec![2.0]],
                vec!["a".into(), "a".into()]
            ),
            Err(Error::DuplicateId { .. })
        ));
        assert!(matches!(
            PointSet::from_rows(vec![vec![1.0, 2.0], vec![3.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            PointSet::from_rows(vec![vec![f64::NAN]]),
            Err(Error::NonFiniteCoordinate { .. })
        ));
        // Zero-norm points are fine under euclidean, rejected under cosine.
        let zero = ps(&[&[0.0, 0.0], &[1.0, 0.0]]);
        assert!(zero.validate_for(Metric::Euclidean).is_ok());
        assert!(matches!(
            zero.validate_for(Metric::CosineDistance),
            Err(Error::ZeroNorm { index: 0 })
        ));
    }

    #[test]
    fn voronoi_examples() {
        let p = ps(&[&[0.0, 0.0], &[10.0, 0.0]]);
        let (assign, dists) = assign_voronoi(&p, &[0, 1], Metric::Euclidean).unwrap();
        assert_eq!(assign, vec![0, 1]);
        assert_eq!(dists, vec![0.0, 0.0]);

        let p = ps(&[&[0.0, 0.0], &[1.0, 0.0], &[9.0, 0.0], &[10.0, 0.0]]);
        let (assign, dists) = assign_voronoi(&p, &[0, 3], Metric::Euclidean).unwrap();
        assert_eq!(assign, vec![0, 0, 1, 1]);
        assert_eq!(dists, vec![0.0, 1.0, 1.0, 0.0]);

        // Equidistant point goes to the earlier center in the list.
        let p = ps(&[&[0.0, 0.0], &[10.0, 0.0], &[5.0, 0.0]]);
        let (assign, _) = assign_voronoi(&p, &[1, 0], Metric::Euclidean).unwrap();
        assert_eq!(assign[2], 0);

        assert!(matches!(
            assign_voronoi(&p, &[], Metric::Euclidean),
            Err(Error::EmptySelection)
        ));
        assert!(matches!(
            assign_voronoi(&p, &[7], Metric::Euclidean),
            Err(Error::IndexOutOfBounds { .. })
        ));
    }

    #[test]
    fn objective_examples() {
        let p = ps(&[&[0.0, 0.0], &[4.0, 0.0], &[10.0, 0.0]]);
        assert_eq!(
            objective_minimax(&p, &[0, 1, 2], Metric::Euclidean).unwrap(),
            0.0
        );
        assert_eq!(objective_minimax(&p, &[0], Metric::Euclidean).unwrap(), 10.0);

        let q = ps(&[&[0.0, 0.0], &[3.0, 4.0]]);
        assert_eq!(objective_maximin(&q, &[0, 1], Metric::Euclidean).unwrap(), 5.0);
        let dup = ps(&[&[1.0, 1.0], &[1.0, 1.0], &[5.0, 5.0]]);
        assert_eq!(
            objective_maximin(&dup, &[0, 1], Metric::Euclidean).unwrap(),
            0.0
        );
        assert!(matches!(
            objective_maximin(&q, &[0], Metric::Euclidean),
            Err(Error::TooFewIndices { .. })
        ));

        let p = ps(&[&[0.0, 0.0], &[1.0, 0.0], &[10.0, 0.0]]);
        assert_eq!(
            objective_kmedoids(&p, &[0, 1, 2], Metric::Euclidean).unwrap(),
            0.0
        );
        assert_eq!(
            objective_kmedoids(&p, &[0, 2], Metric::Euclidean).unwrap(),
            1.0
        );
        assert!(matches!(
            objective_kmedoids(&p, &[], Metric::Euclidean),
            Err(Error::EmptySelection)
        ));
    }

    /// Independent double-loop oracles used to pin the DERIVED example values.
    mod oracle {
        use super::*;

        pub fn minimax(ps: &PointSet, xs: &[usize], metric: Metric) -> f64 {
            let mut worst = 0.0f64;
            for p in 0..ps.len() {
                let mut nearest = f64::INFINITY;
                for &x in xs {
                    nearest = nearest.min(metric.eval(ps.point(p), ps.point(x)));
                }
                worst = worst.max(nearest);
            }
            worst
        }

        pub fn maximin(ps: &PointSet, xs: &[usize], metric: Metric) -> f64 {
            let mut best = f64::INFINITY;
            for &i in xs {
                for &j in xs {
                    if i != j {
                        best = best.min(metric.eval(ps.point(i), ps.point(j)));
                    }
                }
            }
            best
        }

        pub fn kmedoids(ps: &PointSet, xs: &[usize], metric: Metric) -> f64 {
            (0..ps.len())
                .map(|p| {
                    xs.iter()
                        .map(|&x| metric.eval(ps.point(p), ps.point(x)))
                        .fold(f64::INFINITY, f64::min)
                })
                .sum()
        }
    }

    #[test]
    fn objectives_match_brute_force_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..100 {
            let n = rng.gen_range(2..=30);
            let d = rng.gen_range(1..=5);
            let p = random_pointset(&mut rng, n, d);
            let k = rng.gen_range(2..=n);
            let mut xs: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
            xs.sort_unstable();
            for metric in [Metric::Euclidean, Metric::CosineDistance] {
                let rel = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
                assert!(
                    rel(
                        objective_minimax(&p, &xs, metric).unwrap(),
                        oracle::minimax(&p, &xs, metric)
                    ),
                    "minimax mismatch on trial {trial}"
                );
                assert!(
                    rel(
                        objective_maximin(&p, &xs, metric).unwrap(),
                        oracle::maximin(&p, &xs, metric)
                    ),
                    "maximin mismatch on trial {trial}"
                );
                assert!(
                    rel(
                        objective_kmedoids(&p, &xs, metric).unwrap(),
                        oracle::kmedoids(&p, &xs, metric)
                    ),
                    "kmedoids mismatch on trial {trial}"
                );
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        let p = ps(&[&[0.0, 0.0], &[1.0, 0.0], &[10.0, 0.0]]);
        let all = brute_force_optimal(&p, 3, ObjectiveKind::Minimax, Metric::Euclidean).unwrap();
        assert_eq!(all.indices, vec![0, 1, 2]);
        assert_eq!(all.objectives.unwrap().minimax, 0.0);

        let two = brute_force_optimal(&p, 2, ObjectiveKind::Minimax, Metric::Euclidean).unwrap();
        assert_eq!(two.objectives.unwrap().minimax, 1.0);
        // {0,2} and {1,2} tie at 1.0; lexicographic tie-break keeps {0,2}.
        assert_eq!(two.indices, vec![0, 2]);

        let err = brute_force_optimal_with_budget(
            &p,
            2,
            ObjectiveKind::Minimax,
            Metric::Euclidean,
            2,
        );
        assert!(matches!(err, Err(Error::EnumerationBudgetExceeded { .. })));
    }

    #[test]
    fn selection_validation() {
        let p = ps(&[&[0.0], &[1.0]]);
        assert!(matches!(
            Selection::new(&p, vec![], SelectionMethod::Random, 0),
            Err(Error::EmptySelection)
        ));
        assert!(matches!(
            Selection::new(&p, vec![0, 0], SelectionMethod::Random, 0),
            Err(Error::DuplicateIndex { .. })
        ));
        assert!(matches!(
            Selection::new(&p, vec![2], SelectionMethod::Random, 0),
            Err(Error::IndexOutOfBounds { .. })
        ));
    }

    proptest! {
        #[test]
        fn metric_axioms(
            a in proptest::collection::vec(0.05f64..2.0, 1..6),
            b in proptest::collection::vec(0.05f64..2.0, 1..6),
        ) {
            prop_assume!(a.len() == b.len());
            for metric in [Metric::Euclidean, Metric::CosineDistance] {
                let dab = distance(&a, &b, metric).unwrap();
                let dba = distance(&b, &a, metric).unwrap();
                prop_assert_eq!(dab, dba);
                prop_assert!(dab >= 0.0);
                prop_assert_eq!(distance(&a, &a, metric).unwrap(), 0.0);
                if metric == Metric::CosineDistance {
                    prop_assert!(dab <= 2.0);
                }
            }
        }

        #[test]
        fn objectives_monotone_under_growth(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(3..=12);
            let p = random_pointset(&mut rng, n, 2);
            let k = rng.gen_range(2..n);
            let xs: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
            let extra = (0..n).find(|i| !xs.contains(i)).unwrap();
            let mut grown = xs.clone();
            grown.push(extra);
            for metric in [Metric::Euclidean, Metric::CosineDistance] {
                prop_assert!(
                    objective_minimax(&p, &grown, metric).unwrap()
                        <= objective_minimax(&p, &xs, metric).unwrap()
                );
                prop_assert!(
                    objective_maximin(&p, &grown, metric).unwrap()
                        <= objective_maximin(&p, &xs, metric).unwrap()
                );
            }
        }
    }
}
