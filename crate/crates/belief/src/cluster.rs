//! Distance-based partitioning of a source's mass functions.
//!
//! Objects are grouped into C clusters by iteratively assigning each
//! object to the cluster with the smallest mean Jousselme distance,
//! until a full pass moves nothing. There are no centroids: a cluster
//! is its member set, and the pairwise distances are computed once.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mass::MassFunction;

const MAX_PASSES: usize = 100;

/// Symmetric matrix of pairwise Jousselme distances, zero diagonal.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Pairwise distances between the given masses (computed once).
    pub fn from_masses(masses: &[MassFunction]) -> Result<Self> {
        let first = masses.first().ok_or(Error::EmptyList)?;
        for m in &masses[1..] {
            first.check_same_frame(m)?;
        }
        let n = masses.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = masses[i].jousselme(&masses[j])?;
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    fn row_sum(&self, i: usize) -> f64 {
        self.data[i * self.n..(i + 1) * self.n].iter().sum()
    }
}

/// Distances between two sources' masses for the same objects:
/// `out[i] = d(a[i], b[i])`.
pub fn cross_distances(a: &[MassFunction], b: &[MassFunction]) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    a.iter().zip(b).map(|(x, y)| x.jousselme(y)).collect()
}

/// An assignment of `n` objects to `C` clusters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    clusters: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from an object-to-cluster assignment.
    /// Clusters may be empty here; [`cluster_masses`] never returns
    /// empty ones.
    pub fn new(assignment: Vec<usize>, n_clusters: usize) -> Result<Self> {
        if assignment.is_empty() || n_clusters == 0 {
            return Err(Error::InvalidPartition {
                reason: "no objects or no clusters",
            });
        }
        let mut clusters = vec![Vec::new(); n_clusters];
        for (object, &k) in assignment.iter().enumerate() {
            if k >= n_clusters {
                return Err(Error::InvalidPartition {
                    reason: "cluster index out of range",
                });
            }
            clusters[k].push(object);
        }
        Ok(Partition {
            assignment,
            clusters,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.assignment.len()
    }

    pub fn n_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Members of cluster `k`, in ascending object order.
    pub fn cluster(&self, k: usize) -> &[usize] {
        &self.clusters[k]
    }

    pub fn cluster_of(&self, object: usize) -> usize {
        self.assignment[object]
    }
}

/// Plain-text form: one `object-index cluster-index` pair per line.
impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (object, k) in self.assignment.iter().enumerate() {
            writeln!(f, "{object} {k}")?;
        }
        Ok(())
    }
}

/// Mean distance from an object to every member of a cluster (the
/// object itself included when it is a member).
pub fn dissimilarity(
    object: usize,
    cluster: usize,
    distances: &DistanceMatrix,
    partition: &Partition,
) -> Result<f64> {
    let members = partition.cluster(cluster);
    if members.is_empty() {
        return Err(Error::EmptyCluster { cluster });
    }
    let sum: f64 = members.iter().map(|&j| distances.get(object, j)).sum();
    Ok(sum / members.len() as f64)
}

/// Clusters the masses into `c` groups. Deterministic given the seed;
/// the seeded generator only breaks exact ties during seeding.
pub fn cluster_masses(masses: &[MassFunction], c: usize, seed: u64) -> Result<Partition> {
    let distances = DistanceMatrix::from_masses(masses)?;
    cluster_distance_matrix(&distances, c, seed)
}

/// Same as [`cluster_masses`] but reuses a precomputed matrix.
pub fn cluster_distance_matrix(
    distances: &DistanceMatrix,
    c: usize,
    seed: u64,
) -> Result<Partition> {
    let n = distances.len();
    if c == 0 || n < c {
        return Err(Error::TooFewObjects {
            objects: n,
            clusters: c,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds = farthest_point_seeds(distances, c, &mut rng);

    // Initial layout: each seed opens its cluster, everyone else joins
    // the nearest seed (ties to the lowest cluster index).
    let mut assignment = vec![0usize; n];
    for (k, &s) in seeds.iter().enumerate() {
        assignment[s] = k;
    }
    for (o, slot) in assignment.iter_mut().enumerate() {
        if seeds.contains(&o) {
            continue;
        }
        let mut best = 0usize;
        for (k, &s) in seeds.iter().enumerate() {
            if distances.get(o, s) < distances.get(o, seeds[best]) {
                best = k;
            }
        }
        *slot = best;
    }

    let mut partition = Partition::new(assignment, c)?;
    repair_empty_clusters(&mut partition, distances);

    for _ in 0..MAX_PASSES {
        let next = reassign_pass(&partition, distances);
        if next == *partition.assignment() {
            return Ok(partition);
        }
        partition = Partition::new(next, c)?;
        repair_empty_clusters(&mut partition, distances);
    }
    // The batch updates did not settle; fall back to one-object moves,
    // whose fixpoints coincide with batch fixpoints.
    for _ in 0..MAX_PASSES {
        let mut moved = false;
        for o in 0..partition.n_objects() {
            let best = best_cluster(o, &partition, distances);
            if best != partition.cluster_of(o)
                && partition.cluster(partition.cluster_of(o)).len() > 1
            {
                let mut assignment = partition.assignment().to_vec();
                assignment[o] = best;
                partition = Partition::new(assignment, c)?;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    Ok(partition)
}

/// Deterministic farthest-point seeding: start from the object with
/// the largest summed distance, then repeatedly take the object
/// farthest from the chosen seeds. Exact ties are broken by the rng.
fn farthest_point_seeds(distances: &DistanceMatrix, c: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = distances.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(c);
    let mut candidates: Vec<usize> = (0..n).collect();

    let scores: Vec<f64> = candidates.iter().map(|&o| distances.row_sum(o)).collect();
    let first = pick_max(&candidates, &scores, rng);
    chosen.push(first);
    candidates.retain(|&o| o != first);

    while chosen.len() < c {
        let scores: Vec<f64> = candidates
            .iter()
            .map(|&o| {
                chosen
                    .iter()
                    .map(|&s| distances.get(o, s))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let next = pick_max(&candidates, &scores, rng);
        chosen.push(next);
        candidates.retain(|&o| o != next);
    }
    chosen
}

fn pick_max(candidates: &[usize], scores: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<usize> = candidates
        .iter()
        .zip(scores)
        .filter(|&(_, &s)| s == best)
        .map(|(&o, _)| o)
        .collect();
    if tied.len() == 1 {
        tied[0]
    } else {
        tied[rng.random_range(0..tied.len())]
    }
}

/// One batch pass: every object picks its least-dissimilar cluster
/// against the current partition; ties go to the lowest cluster index.
fn reassign_pass(partition: &Partition, distances: &DistanceMatrix) -> Vec<usize> {
    (0..partition.n_objects())
        .map(|o| best_cluster(o, partition, distances))
        .collect()
}

fn best_cluster(object: usize, partition: &Partition, distances: &DistanceMatrix) -> usize {
    let mut best = 0usize;
    let mut best_value = f64::INFINITY;
    for k in 0..partition.n_clusters() {
        if partition.cluster(k).is_empty() {
            continue;
        }
        let value = dissimilarity(object, k, distances, partition).expect("non-empty cluster");
        if value < best_value {
            best = k;
            best_value = value;
        }
    }
    best
}

/// Moves the object that fits its own cluster worst into each empty
/// cluster (donors come from clusters with at least two members).
fn repair_empty_clusters(partition: &mut Partition, distances: &DistanceMatrix) {
    loop {
        let Some(empty) = (0..partition.n_clusters()).find(|&k| partition.cluster(k).is_empty())
        else {
            return;
        };
        let mut donor: Option<(usize, f64)> = None;
        for o in 0..partition.n_objects() {
            let own = partition.cluster_of(o);
            if partition.cluster(own).len() < 2 {
                continue;
            }
            let value = dissimilarity(o, own, distances, partition).expect("non-empty cluster");
            if donor.is_none_or(|(_, best)| value > best) {
                donor = Some((o, value));
            }
        }
        let (object, _) = donor.expect("n >= c guarantees a donor");
        let mut assignment = partition.assignment().to_vec();
        assignment[object] = empty;
        *partition = Partition::new(assignment, partition.n_clusters()).expect("valid move");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{Frame, Subset};

    fn categorical(f: &Frame, e: usize) -> MassFunction {
        MassFunction::categorical(f.clone(), f.singleton(e).unwrap()).unwrap()
    }

    /// Masses close to a categorical: most mass on `{e}`, the rest on
    /// the full frame.
    fn near_categorical(f: &Frame, e: usize, wobble: f64) -> MassFunction {
        MassFunction::new(
            f.clone(),
            &[
                (f.singleton(e).unwrap(), 1.0 - wobble),
                (f.full_set(), wobble),
            ],
        )
        .unwrap()
    }

    #[test]
    fn distance_matrix_matches_pairwise_calls() {
        let f = Frame::of_size(3).unwrap();
        let masses = vec![
            categorical(&f, 0),
            categorical(&f, 1),
            near_categorical(&f, 0, 0.2),
        ];
        let dm = DistanceMatrix::from_masses(&masses).unwrap();
        for i in 0..3 {
            assert_eq!(dm.get(i, i), 0.0);
            for j in 0..3 {
                assert_eq!(dm.get(i, j), dm.get(j, i));
                assert!((dm.get(i, j) - masses[i].jousselme(&masses[j]).unwrap()).abs() < 1e-15);
            }
        }
        // Distinct categoricals sit at distance one.
        assert!((dm.get(0, 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identical_masses_give_a_zero_matrix() {
        let f = Frame::of_size(3).unwrap();
        let masses = vec![near_categorical(&f, 1, 0.3); 4];
        let dm = DistanceMatrix::from_masses(&masses).unwrap();
        assert!(dm.data.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn dissimilarity_is_the_mean_distance() {
        let f = Frame::of_size(3).unwrap();
        let masses = vec![
            categorical(&f, 0),
            categorical(&f, 1),
            categorical(&f, 2),
            near_categorical(&f, 0, 0.4),
            near_categorical(&f, 1, 0.4),
            near_categorical(&f, 2, 0.4),
        ];
        let dm = DistanceMatrix::from_masses(&masses).unwrap();
        let p = Partition::new(vec![0, 1, 1, 0, 1, 0], 2).unwrap();
        // Brute-force recomputation of every (object, cluster) pair.
        for o in 0..6 {
            for k in 0..2 {
                let members = p.cluster(k);
                let expected: f64 =
                    members.iter().map(|&j| dm.get(o, j)).sum::<f64>() / members.len() as f64;
                assert!((dissimilarity(o, k, &dm, &p).unwrap() - expected).abs() < 1e-15);
            }
        }
        // Singleton cluster containing the query object scores zero.
        let p = Partition::new(vec![0, 1, 1, 1, 1, 1], 2).unwrap();
        assert_eq!(dissimilarity(0, 0, &dm, &p).unwrap(), 0.0);
        // Two-member cluster is the plain average.
        let q = Partition::new(vec![0, 0, 1, 1, 1, 1], 2).unwrap();
        let expected = (dm.get(2, 0) + dm.get(2, 1)) / 2.0;
        assert!((dissimilarity(2, 0, &dm, &q).unwrap() - expected).abs() < 1e-15);
        // Empty cluster is an error.
        let r = Partition::new(vec![0, 0, 0, 0, 0, 0], 2).unwrap();
        assert!(matches!(
            dissimilarity(0, 1, &dm, &r),
            Err(Error::EmptyCluster { cluster: 1 })
        ));
    }

    #[test]
    fn distinct_categoricals_get_their_own_clusters() {
        let f = Frame::of_size(4).unwrap();
        let masses: Vec<MassFunction> = (0..4).map(|e| categorical(&f, e)).collect();
        let p = cluster_masses(&masses, 4, 1).unwrap();
        for k in 0..4 {
            assert_eq!(p.cluster(k).len(), 1);
        }
    }

    #[test]
    fn recovers_two_tight_groups() {
        let f = Frame::of_size(3).unwrap();
        let masses = vec![
            near_categorical(&f, 0, 0.02),
            near_categorical(&f, 0, 0.05),
            near_categorical(&f, 2, 0.03),
            near_categorical(&f, 0, 0.08),
            near_categorical(&f, 2, 0.06),
            near_categorical(&f, 2, 0.01),
        ];
        let p = cluster_masses(&masses, 2, 7).unwrap();
        // Oracle: best 2-partition by total within-cluster dissimilarity.
        let dm = DistanceMatrix::from_masses(&masses).unwrap();
        let mut best: Option<(f64, Vec<usize>)> = None;
        for code in 0u32..(1 << 5) {
            // Object 0 fixed in cluster 0 to quotient out relabeling.
            let assignment: Vec<usize> = std::iter::once(0)
                .chain((0..5).map(|b| ((code >> b) & 1) as usize))
                .collect();
            let Ok(q) = Partition::new(assignment.clone(), 2) else {
                continue;
            };
            if q.cluster(0).is_empty() || q.cluster(1).is_empty() {
                continue;
            }
            let total: f64 = (0..6)
                .map(|o| dissimilarity(o, q.cluster_of(o), &dm, &q).unwrap())
                .sum();
            if best.as_ref().is_none_or(|(t, _)| total < *t) {
                best = Some((total, assignment));
            }
        }
        let (_, oracle) = best.unwrap();
        // Compare up to relabeling by checking co-membership.
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(
                    p.cluster_of(i) == p.cluster_of(j),
                    oracle[i] == oracle[j],
                    "objects {i},{j} grouped differently"
                );
            }
        }
    }

    #[test]
    fn clustering_is_deterministic_and_stable() {
        let f = Frame::of_size(3).unwrap();
        let masses = vec![
            near_categorical(&f, 0, 0.1),
            near_categorical(&f, 1, 0.2),
            near_categorical(&f, 2, 0.3),
            near_categorical(&f, 0, 0.4),
            near_categorical(&f, 1, 0.5),
            categorical(&f, 2),
            near_categorical(&f, 0, 0.25),
        ];
        let a = cluster_masses(&masses, 3, 42).unwrap();
        let b = cluster_masses(&masses, 3, 42).unwrap();
        assert_eq!(a, b);
        // Stability: one more batch pass moves nothing.
        let dm = DistanceMatrix::from_masses(&masses).unwrap();
        assert_eq!(reassign_pass(&a, &dm), a.assignment());
        // No empty clusters.
        for k in 0..3 {
            assert!(!a.cluster(k).is_empty());
        }
    }

    #[test]
    fn same_list_clusters_identically() {
        let f = Frame::of_size(3).unwrap();
        let masses = vec![
            near_categorical(&f, 0, 0.1),
            near_categorical(&f, 1, 0.2),
            near_categorical(&f, 2, 0.3),
            near_categorical(&f, 1, 0.15),
        ];
        let a = cluster_masses(&masses, 3, 9).unwrap();
        let b = cluster_masses(&masses.clone(), 3, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn partition_renders_as_index_pairs() {
        let p = Partition::new(vec![0, 1, 0], 2).unwrap();
        assert_eq!(p.to_string(), "0 0\n1 1\n2 0\n");
    }

    #[test]
    fn too_few_objects_is_rejected() {
        let f = Frame::of_size(2).unwrap();
        let masses = vec![MassFunction::vacuous(f)];
        assert!(matches!(
            cluster_masses(&masses, 2, 0),
            Err(Error::TooFewObjects { .. })
        ));
    }

    #[test]
    fn all_identical_masses_still_fill_every_cluster() {
        let f = Frame::of_size(2).unwrap();
        let masses = vec![MassFunction::vacuous(f); 5];
        let p = cluster_masses(&masses, 2, 3).unwrap();
        assert!(!p.cluster(0).is_empty());
        assert!(!p.cluster(1).is_empty());
    }

    #[test]
    fn cross_distance_vector() {
        let f = Frame::of_size(3).unwrap();
        let a = vec![categorical(&f, 0), categorical(&f, 1)];
        let b = vec![categorical(&f, 0), categorical(&f, 2)];
        let d = cross_distances(&a, &b).unwrap();
        assert_eq!(d[0], 0.0);
        assert!((d[1] - 1.0).abs() < 1e-12);
        assert!(matches!(
            cross_distances(&a, &b[..1]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn subset_helper_used_in_tests_is_sound() {
        // near_categorical keeps the unit sum.
        let f = Frame::of_size(3).unwrap();
        let m = near_categorical(&f, 1, 0.3);
        assert!((m.total() - 1.0).abs() < 1e-12);
        assert_eq!(m.mass(Subset::EMPTY), 0.0);
    }
}
