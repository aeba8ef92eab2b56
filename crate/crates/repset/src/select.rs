//! Selection algorithms: greedy k-center (farthest-first traversal), its
//! mini-max and maxi-min refinements, k-medoids with k-medoids++ seeding,
//! and the two random baselines.
//!
//! All selectors are deterministic functions of (points, n, metric, seed,
//! config). Randomness enters only through the seeded first-center draw and
//! sampling; every argmin/argmax tie breaks toward the lowest index so that
//! reruns reproduce bit-identical selections.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::metric::{
    argmax_lowest, nearest_all, objective_minimax, pairwise_min, update_nearest, Metric, PointSet,
    Selection, SelectionMethod,
};

/// Per-step record of a greedy run: entry i is the max-min distance at which
/// the (i+1)-th center was added. Non-increasing by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub addition_distances: Vec<f64>,
}

/// Tuning knobs for the mini-max refinement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimaxConfig {
    /// Redundancy threshold: a center is deleted when the mean coverage
    /// count of its partition by other centers exceeds this.
    pub thresh: f64,
    /// Cap on full (refine, delete, replenish) cycles.
    pub max_outer_iters: usize,
    /// Rounds of candidate-set growth before the exact 1-center subroutine
    /// falls back to the quadratic scan.
    pub one_center_enumeration_cap: usize,
}

impl Default for MinimaxConfig {
    fn default() -> Self {
        MinimaxConfig {
            thresh: 0.9999,
            max_outer_iters: 100,
            one_center_enumeration_cap: 1000,
        }
    }
}

impl MinimaxConfig {
    fn validate(&self) -> Result<()> {
        if !(self.thresh > 0.0 && self.thresh <= 1.0) {
            return Err(Error::InvalidThreshold { thresh: self.thresh });
        }
        Ok(())
    }
}

/// Result of a mini-max refinement run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimaxRefinement {
    pub selection: Selection,
    /// phi_mM at the start and after each accepted outer cycle;
    /// non-increasing.
    pub phi_trace: Vec<f64>,
    /// True when the run stopped at `max_outer_iters` rather than at a
    /// fixed point.
    pub hit_iteration_cap: bool,
}

/// Result of a maxi-min refinement run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximinRefinement {
    pub selection: Selection,
    /// phi_Mm at the start and after each accepted outer iteration;
    /// non-decreasing.
    pub phi_trace: Vec<f64>,
    pub hit_iteration_cap: bool,
}

/// Result of a k-medoids run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMedoidsRun {
    pub selection: Selection,
    /// phi_kmedoids at each alternate iteration; non-increasing.
    pub objective_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

fn check_subset_size(n: usize, len: usize) -> Result<()> {
    if n < 1 || n > len {
        return Err(Error::SubsetSizeOutOfRange { n, max: len });
    }
    Ok(())
}

/// Greedy k-center (farthest-first traversal). The first center is drawn
/// uniformly at random from the seed; each subsequent center is the point
/// farthest from the chosen set. Runs in O(N n) distance evaluations.
pub fn greedy_k_center(
    ps: &PointSet,
    n: usize,
    metric: Metric,
    seed: u64,
) -> Result<(Selection, GreedyTrace)> {
    check_subset_size(n, ps.len())?;
    ps.validate_for(metric)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = rng.gen_range(0..ps.len());
    let mut centers = Vec::with_capacity(n);
    centers.push(first);
    let mut nearest = vec![f64::INFINITY; ps.len()];
    update_nearest(ps, &mut nearest, first, metric);
    let mut addition_distances = Vec::with_capacity(n.saturating_sub(1));
    for _ in 1..n {
        let next = argmax_lowest(&nearest);
        addition_distances.push(nearest[next]);
        centers.push(next);
        update_nearest(ps, &mut nearest, next, metric);
    }
    let selection =
        Selection::new(ps, centers, SelectionMethod::Greedy, seed)?.with_objectives(ps, metric)?;
    Ok((selection, GreedyTrace { addition_distances }))
}

/// Exact 1-center over `members`: the member minimizing the maximum
/// distance to all members, with its radius. Ties break toward the earliest
/// list position.
///
/// Rather than scanning the full quadratic distance matrix, the search keeps
/// a small witness set (seeded with the members extremal in each coordinate)
/// whose max-distances give a lower bound on the radius; a candidate is
/// accepted once its true radius meets that bound, otherwise its farthest
/// member joins the witnesses and the scan repeats.
pub fn local_one_center(ps: &PointSet, members: &[usize], metric: Metric) -> Result<(usize, f64)> {
    local_one_center_with_cap(ps, members, metric, MinimaxConfig::default().one_center_enumeration_cap)
}

pub(crate) fn local_one_center_with_cap(
    ps: &PointSet,
    members: &[usize],
    metric: Metric,
    cap: usize,
) -> Result<(usize, f64)> {
    if members.is_empty() {
        return Err(Error::EmptySelection);
    }
    for &m in members {
        if m >= ps.len() {
            return Err(Error::IndexOutOfBounds {
                index: m,
                len: ps.len(),
            });
        }
    }
    ps.validate_for(metric)?;
    let m = members.len();
    if m == 1 {
        return Ok((members[0], 0.0));
    }

    // Witness positions: extremal members per coordinate, deduplicated.
    let mut witness: Vec<usize> = Vec::new();
    let mut in_witness = vec![false; m];
    for d in 0..ps.dim() {
        let mut lo = 0;
        let mut hi = 0;
        for (pos, &idx) in members.iter().enumerate().skip(1) {
            let v = ps.point(idx)[d];
            if v < ps.point(members[lo])[d] {
                lo = pos;
            }
            if v > ps.point(members[hi])[d] {
                hi = pos;
            }
        }
        for pos in [lo, hi] {
            if !in_witness[pos] {
                in_witness[pos] = true;
                witness.push(pos);
            }
        }
    }

    // submax[j] = max distance from member j to the witness set.
    let mut submax = vec![0.0f64; m];
    let mut grow = |submax: &mut [f64], new_pos: usize| {
        let new_idx = members[new_pos];
        for (pos, slot) in submax.iter_mut().enumerate() {
            let d = ps.dist(members[pos], new_idx, metric);
            if d > *slot {
                *slot = d;
            }
        }
    };
    let initial: Vec<usize> = witness.clone();
    for pos in initial {
        grow(&mut submax, pos);
    }

    for _round in 0..cap {
        let mut cand = 0;
        for pos in 1..m {
            if submax[pos] < submax[cand] {
                cand = pos;
            }
        }
        let mut radius = 0.0f64;
        let mut farthest = cand;
        for pos in 0..m {
            let d = ps.dist(members[cand], members[pos], metric);
            if d > radius {
                radius = d;
                farthest = pos;
            }
        }
        if radius == submax[cand] {
            return Ok((members[cand], radius));
        }
        if !in_witness[farthest] {
            in_witness[farthest] = true;
            grow(&mut submax, farthest);
        } else {
            // The farthest member is already a witness yet the bound was not
            // met; only possible through float pathology. Fall through to the
            // exact quadratic scan.
            break;
        }
    }

    // Quadratic fallback: exact argmin over members of the max distance.
    let mut best_pos = 0;
    let mut best_radius = f64::INFINITY;
    for a in 0..m {
        let mut r = 0.0f64;
        for b in 0..m {
            r = r.max(ps.dist(members[a], members[b], metric));
        }
        if r < best_radius {
            best_radius = r;
            best_pos = a;
        }
    }
    Ok((members[best_pos], best_radius))
}

/// Groups point indices by assigned center position, preserving ascending
/// point order within each group.
fn partitions_of(assign: &[usize], n_centers: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); n_centers];
    for (p, &pos) in assign.iter().enumerate() {
        parts[pos].push(p);
    }
    parts
}

fn replenish_farthest(ps: &PointSet, centers: &mut Vec<usize>, n: usize, metric: Metric) {
    let (_, mut nearest) = nearest_all(ps, centers, metric);
    while centers.len() < n {
        let next = argmax_lowest(&nearest);
        centers.push(next);
        update_nearest(ps, &mut nearest, next, metric);
    }
}

/// Mini-max refinement of a starting selection. Alternates two passes until
/// a full cycle neither improves phi_mM nor deletes a center:
///
/// 1. replace every center by the exact 1-center of its Voronoi partition,
///    repeating while phi_mM improves;
/// 2. delete centers whose partitions are (on average) already covered by
///    other centers within phi_mM, then replenish to size n with the greedy
///    farthest-point rule.
///
/// A cycle that fails to improve phi_mM is rolled back, so the refinement
/// never returns a worse selection than its input.
pub fn refine_minimax(
    ps: &PointSet,
    start: &Selection,
    metric: Metric,
    cfg: &MinimaxConfig,
    seed: u64,
) -> Result<MinimaxRefinement> {
    cfg.validate()?;
    if start.indices.is_empty() {
        return Err(Error::EmptySelection);
    }
    ps.validate_for(metric)?;
    let n = start.indices.len();
    let mut centers = start.indices.clone();
    let mut phi = objective_minimax(ps, &centers, metric)?;
    let mut trace = vec![phi];
    let mut hit_cap = true;

    for _outer in 0..cfg.max_outer_iters {
        let snapshot = centers.clone();
        let mut improved = false;

        // Pass 1: per-partition exact 1-centers, batch-swapped, while the
        // global objective improves.
        loop {
            let (assign, dists) = nearest_all(ps, &centers, metric);
            let cur = dists.iter().copied().fold(0.0, f64::max);
            let parts = partitions_of(&assign, centers.len());
            let refined: Vec<usize> = parts
                .par_iter()
                .enumerate()
                .map(|(i, part)| {
                    if part.is_empty() {
                        centers[i]
                    } else {
                        local_one_center_with_cap(ps, part, metric, cfg.one_center_enumeration_cap)
                            .expect("non-empty partition of a validated point set")
                            .0
                    }
                })
                .collect();
            let (_, new_dists) = nearest_all(ps, &refined, metric);
            let new_phi = new_dists.iter().copied().fold(0.0, f64::max);
            if new_phi < cur {
                centers = refined;
                improved = true;
            } else {
                break;
            }
        }

        // Pass 2: redundancy deletion against a snapshot of the current
        // centers and phi_mM; deletions within the pass do not cascade.
        let (assign, dists) = nearest_all(ps, &centers, metric);
        let cur_phi = dists.iter().copied().fold(0.0, f64::max);
        let parts = partitions_of(&assign, centers.len());
        // Every point's own center lies within phi by definition, so the
        // per-point count of *other* covering centers is the full count
        // minus one.
        let cover_counts: Vec<u64> = if ps.len() >= crate::metric::PAR_THRESHOLD {
            (0..ps.len())
                .into_par_iter()
                .map(|p| {
                    centers
                        .iter()
                        .filter(|&&c| ps.dist(p, c, metric) <= cur_phi)
                        .count() as u64
                        - 1
                })
                .collect()
        } else {
            (0..ps.len())
                .map(|p| {
                    centers
                        .iter()
                        .filter(|&&c| ps.dist(p, c, metric) <= cur_phi)
                        .count() as u64
                        - 1
                })
                .collect()
        };
        let mut keep = vec![true; centers.len()];
        let mut deleted = false;
        for (i, part) in parts.iter().enumerate() {
            let tau = if part.is_empty() {
                // A center owning no points (possible only with duplicate
                // coordinates) is redundant outright.
                f64::INFINITY
            } else {
                let total: u64 = part.iter().map(|&p| cover_counts[p]).sum();
                total as f64 / part.len() as f64
            };
            if tau > cfg.thresh {
                keep[i] = false;
                deleted = true;
            }
        }
        if deleted {
            let mut kept: Vec<usize> = centers
                .iter()
                .zip(&keep)
                .filter_map(|(&c, &k)| if k { Some(c) } else { None })
                .collect();
            if kept.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                kept.push(rng.gen_range(0..ps.len()));
            }
            replenish_farthest(ps, &mut kept, n, metric);
            centers = kept;
        }

        let cycle_phi = objective_minimax(ps, &centers, metric)?;
        if cycle_phi > phi {
            // Deletion overshot; roll the cycle back and stop.
            centers = snapshot;
            hit_cap = false;
            break;
        }
        phi = cycle_phi;
        trace.push(phi);
        if !improved && !deleted {
            hit_cap = false;
            break;
        }
    }

    let selection = Selection::new(ps, centers, SelectionMethod::GreedyMinimax, start.seed)?
        .with_objectives(ps, metric)?;
    Ok(MinimaxRefinement {
        selection,
        phi_trace: trace,
        hit_iteration_cap: hit_cap,
    })
}

/// Maxi-min refinement: per outer iteration, every center is moved to the
/// point of its Voronoi partition farthest from the other current centers
/// (batch update); the new list is accepted only when phi_Mm improves.
pub fn refine_maximin(
    ps: &PointSet,
    start: &Selection,
    metric: Metric,
    max_outer_iters: usize,
) -> Result<MaximinRefinement> {
    if start.indices.len() < 2 {
        return Err(Error::TooFewIndices {
            needed: 2,
            got: start.indices.len(),
        });
    }
    ps.validate_for(metric)?;
    let mut centers = start.indices.clone();
    let mut phi = pairwise_min(ps, &centers, metric);
    let mut trace = vec![phi];
    let mut hit_cap = true;

    for _outer in 0..max_outer_iters {
        let (assign, _) = nearest_all(ps, &centers, metric);
        let parts = partitions_of(&assign, centers.len());
        let candidate: Vec<usize> = parts
            .par_iter()
            .enumerate()
            .map(|(i, part)| {
                if part.is_empty() {
                    return centers[i];
                }
                let others: Vec<usize> = centers
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &c)| if j != i { Some(c) } else { None })
                    .collect();
                let mut best_pos = 0;
                let mut best = f64::NEG_INFINITY;
                for (pos, &p) in part.iter().enumerate() {
                    let sep = others
                        .iter()
                        .map(|&c| ps.dist(p, c, metric))
                        .fold(f64::INFINITY, f64::min);
                    if sep > best {
                        best = sep;
                        best_pos = pos;
                    }
                }
                part[best_pos]
            })
            .collect();
        let new_phi = pairwise_min(ps, &candidate, metric);
        if new_phi > phi {
            centers = candidate;
            phi = new_phi;
            trace.push(phi);
        } else {
            hit_cap = false;
            break;
        }
    }

    let selection = Selection::new(ps, centers, SelectionMethod::GreedyMaximin, start.seed)?
        .with_objectives(ps, metric)?;
    Ok(MaximinRefinement {
        selection,
        phi_trace: trace,
        hit_iteration_cap: hit_cap,
    })
}

/// k-medoids with k-medoids++ seeding and alternate iterations.
///
/// Seeding draws the first medoid uniformly and each subsequent medoid with
/// probability proportional to the squared distance to the nearest chosen
/// medoid. Alternate iterations reassign points to their nearest medoid and
/// move each medoid to the member of its cluster minimizing the total
/// within-cluster distance, until the medoid list is unchanged or `max_iter`
/// is reached. An empty cluster is repaired by reseating its medoid at the
/// point farthest from all current medoids.
pub fn k_medoids(
    ps: &PointSet,
    n: usize,
    metric: Metric,
    seed: u64,
    max_iter: usize,
) -> Result<KMedoidsRun> {
    check_subset_size(n, ps.len())?;
    ps.validate_for(metric)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // k-medoids++ seeding.
    let mut medoids = Vec::with_capacity(n);
    medoids.push(rng.gen_range(0..ps.len()));
    let mut nearest = vec![f64::INFINITY; ps.len()];
    update_nearest(ps, &mut nearest, medoids[0], metric);
    while medoids.len() < n {
        let total: f64 = nearest.iter().map(|d| d * d).sum();
        let next = if total > 0.0 {
            let mut u = rng.gen::<f64>() * total;
            let mut chosen = None;
            for (p, d) in nearest.iter().enumerate() {
                let w = d * d;
                if w > 0.0 {
                    chosen = Some(p);
                    if u < w {
                        break;
                    }
                    u -= w;
                }
            }
            chosen.expect("positive total weight implies a positive entry")
        } else {
            // Every remaining point duplicates a medoid; take the lowest
            // unchosen index.
            (0..ps.len())
                .find(|p| !medoids.contains(p))
                .expect("n <= N leaves an unchosen point")
        };
        medoids.push(next);
        update_nearest(ps, &mut nearest, next, metric);
    }

    // Alternate iterations.
    let mut objective_trace = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    for _ in 0..max_iter {
        iterations += 1;
        let (mut assign, mut dists) = nearest_all(ps, &medoids, metric);
        objective_trace.push(dists.iter().sum());

        // Empty-cluster repair, sequential so two empties cannot collide.
        let mut occupancy = vec![0usize; medoids.len()];
        for &a in &assign {
            occupancy[a] += 1;
        }
        let mut repaired = false;
        for i in 0..medoids.len() {
            if occupancy[i] == 0 {
                let (_, nd) = nearest_all(ps, &medoids, metric);
                medoids[i] = argmax_lowest(&nd);
                repaired = true;
            }
        }
        if repaired {
            let fresh = nearest_all(ps, &medoids, metric);
            assign = fresh.0;
            dists = fresh.1;
            let _ = dists;
        }

        let parts = partitions_of(&assign, medoids.len());
        let updated: Vec<usize> = parts
            .par_iter()
            .enumerate()
            .map(|(i, part)| {
                if part.is_empty() {
                    return medoids[i];
                }
                let mut best_pos = 0;
                let mut best_cost = f64::INFINITY;
                for (pos, &cand) in part.iter().enumerate() {
                    let cost: f64 = part.iter().map(|&q| ps.dist(cand, q, metric)).sum();
                    if cost < best_cost {
                        best_cost = cost;
                        best_pos = pos;
                    }
                }
                part[best_pos]
            })
            .collect();
        if updated == medoids {
            converged = true;
            break;
        }
        medoids = updated;
    }
    if !converged {
        let (_, dists) = nearest_all(ps, &medoids, metric);
        objective_trace.push(dists.iter().sum());
    }

    let selection = Selection::new(ps, medoids, SelectionMethod::KMedoids, seed)?
        .with_objectives(ps, metric)?;
    Ok(KMedoidsRun {
        selection,
        objective_trace,
        iterations,
        converged,
    })
}

/// n distinct indices drawn uniformly without replacement.
pub fn random_select(ps: &PointSet, n: usize, seed: u64) -> Result<Selection> {
    check_subset_size(n, ps.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let indices = rand::seq::index::sample(&mut rng, ps.len(), n).into_vec();
    Selection::new(ps, indices, SelectionMethod::Random, seed)
}

/// Stratified random selection: one random point per class first, then the
/// remaining budget spread round-robin over classes in a freshly shuffled
/// order each round, skipping exhausted classes.
pub fn random_class_balanced<S: AsRef<str>>(
    ps: &PointSet,
    labels: &[S],
    n: usize,
    seed: u64,
) -> Result<Selection> {
    if labels.len() != ps.len() {
        return Err(Error::LengthMismatch {
            expected: ps.len(),
            got: labels.len(),
        });
    }
    check_subset_size(n, ps.len())?;
    let mut classes: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (p, label) in labels.iter().enumerate() {
        classes.entry(label.as_ref()).or_default().push(p);
    }
    if n < classes.len() {
        return Err(Error::BudgetBelowClassCount {
            budget: n,
            classes: classes.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pools: Vec<Vec<usize>> = classes.into_values().collect();
    let mut selected = Vec::with_capacity(n);
    for pool in pools.iter_mut() {
        let pick = rng.gen_range(0..pool.len());
        selected.push(pool.remove(pick));
    }
    let mut order: Vec<usize> = (0..pools.len()).collect();
    while selected.len() < n {
        order.shuffle(&mut rng);
        for &class in &order {
            if selected.len() == n {
                break;
            }
            let pool = &mut pools[class];
            if pool.is_empty() {
                continue;
            }
            let pick = rng.gen_range(0..pool.len());
            selected.push(pool.remove(pick));
        }
    }
    Selection::new(ps, selected, SelectionMethod::RandomClassBalanced, seed)
}
