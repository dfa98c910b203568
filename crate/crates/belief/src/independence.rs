//! Statistical estimation of source independence.
//!
//! Both sources' mass functions are clustered separately; the cluster
//! correspondence matrices are matched greedily; each matched pair
//! yields an independence mass from its similarity and a refined
//! dependence mass from its inter-cluster conflict; the per-pair
//! masses are averaged per source and turned into pignistic degrees.
//!
//! The estimate is directional: S1 against S2 and S2 against S1 are
//! computed independently and frequently differ.

use crate::cluster::{cluster_distance_matrix, cross_distances, DistanceMatrix, Partition};
use crate::dependence::{DependenceMass, IndependenceMass};
use crate::error::{Error, Result};
use crate::mass::MassFunction;

/// C×C matrix of cluster-overlap proportions. Row `k` belongs to the
/// referent source's cluster `k`; entry `(k, l)` is
/// `|Cl_ref_k ∩ Cl_other_l| / |Cl_ref_k|`, so every row sums to one.
#[derive(Clone, Debug)]
pub struct CorrespondenceMatrix {
    size: usize,
    data: Vec<f64>,
}

impl CorrespondenceMatrix {
    /// Overlap matrix with `referent`'s clusters as rows.
    pub fn from_partitions(referent: &Partition, other: &Partition) -> Result<Self> {
        if referent.n_objects() != other.n_objects() || referent.n_clusters() != other.n_clusters()
        {
            return Err(Error::PartitionMismatch);
        }
        let c = referent.n_clusters();
        let mut data = vec![0.0; c * c];
        for k in 0..c {
            let members = referent.cluster(k);
            if members.is_empty() {
                return Err(Error::EmptyCluster { cluster: k });
            }
            for &object in members {
                data[k * c + other.cluster_of(object)] += 1.0;
            }
            for l in 0..c {
                data[k * c + l] /= members.len() as f64;
            }
        }
        Ok(CorrespondenceMatrix { size: c, data })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.size + col]
    }
}

/// Both directional matrices: first with `p1` as referent, then `p2`.
pub fn correspondence_matrices(
    p1: &Partition,
    p2: &Partition,
) -> Result<(CorrespondenceMatrix, CorrespondenceMatrix)> {
    Ok((
        CorrespondenceMatrix::from_partitions(p1, p2)?,
        CorrespondenceMatrix::from_partitions(p2, p1)?,
    ))
}

/// A one-to-one cluster matching with the similarity of each pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Matching {
    pairs: Vec<(usize, usize, f64)>,
}

impl Matching {
    /// `(referent cluster, other cluster, similarity)` triples, in
    /// ascending referent-cluster order.
    pub fn pairs(&self) -> &[(usize, usize, f64)] {
        &self.pairs
    }
}

/// Greedy matching: repeatedly take the largest remaining entry and
/// retire its row and column. Ties prefer the lowest row, then the
/// lowest column.
pub fn greedy_match(matrix: &CorrespondenceMatrix) -> Matching {
    let c = matrix.size();
    let mut row_used = vec![false; c];
    let mut col_used = vec![false; c];
    let mut pairs = Vec::with_capacity(c);
    for _ in 0..c {
        let mut best: Option<(usize, usize, f64)> = None;
        for (r, &r_used) in row_used.iter().enumerate() {
            if r_used {
                continue;
            }
            for (col, &c_used) in col_used.iter().enumerate() {
                if c_used {
                    continue;
                }
                let v = matrix.get(r, col);
                if best.is_none_or(|(_, _, b)| v > b) {
                    best = Some((r, col, v));
                }
            }
        }
        let (r, col, v) = best.expect("c pairs fit in a c x c matrix");
        row_used[r] = true;
        col_used[col] = true;
        pairs.push((r, col, v));
    }
    pairs.sort_by_key(|&(r, _, _)| r);
    Matching { pairs }
}

/// One matched cluster pair with its similarity, attenuation and
/// inter-cluster conflict.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairLink {
    pub referent_cluster: usize,
    pub other_cluster: usize,
    pub beta: f64,
    pub alpha: f64,
    pub conf: f64,
}

/// Independence mass of one matched pair (similarity against
/// attenuation).
pub fn pair_independence_mass(link: &PairLink) -> Result<IndependenceMass> {
    IndependenceMass::from_link(link.alpha, link.beta)
}

/// Refined dependence mass of one matched pair; the conflict plays
/// the negative-dependence rate.
pub fn pair_dependence_mass(link: &PairLink) -> Result<DependenceMass> {
    DependenceMass::from_rates(link.alpha, link.beta, link.conf)
}

/// Mean distance between the two sources' masses over the objects the
/// matched clusters share; 1 when they share none.
pub fn cluster_conflict(referent_members: &[usize], other_members: &[usize], cross: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    let mut i = 0;
    let mut j = 0;
    while i < referent_members.len() && j < other_members.len() {
        match referent_members[i].cmp(&other_members[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                sum += cross[referent_members[i]];
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    if count == 0 {
        1.0
    } else {
        sum / count as f64
    }
}

/// How the per-pair attenuation is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AlphaPolicy {
    /// Constant 1 (no attenuation).
    #[default]
    One,
    /// Referent cluster size over the number of objects.
    ClusterSize,
}

impl AlphaPolicy {
    fn value(self, cluster_size: usize, n_objects: usize) -> f64 {
        match self {
            AlphaPolicy::One => 1.0,
            AlphaPolicy::ClusterSize => cluster_size as f64 / n_objects as f64,
        }
    }
}

/// Configuration for [`analyze`].
#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeConfig {
    /// Cluster count; defaults to the frame cardinality.
    pub clusters: Option<usize>,
    /// Seed for the clustering tie-breaks (shared by both sources).
    pub seed: u64,
    pub alpha_policy: AlphaPolicy,
}

/// One direction of the estimate (referent source against the other).
#[derive(Clone, Debug)]
pub struct DirectionReport {
    pub links: Vec<PairLink>,
    pub independence: IndependenceMass,
    pub dependence: DependenceMass,
    /// Pignistic degree of independence, `BetP(I)` over `{I, ~I}`.
    pub independence_degree: f64,
    /// `BetP(~I) = 1 - independence_degree`.
    pub dependence_degree: f64,
    /// Pignistic degrees over `{I, P, ~P}`.
    pub betp_independent: f64,
    pub betp_positive: f64,
    pub betp_negative: f64,
}

/// The full two-directional estimate.
#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub forward: DirectionReport,
    pub backward: DirectionReport,
    pub n_objects: usize,
    pub n_clusters: usize,
}

/// Runs the whole estimator on two aligned lists of mass functions
/// (entry `i` of each list values the same object).
pub fn analyze(
    masses1: &[MassFunction],
    masses2: &[MassFunction],
    config: &AnalyzeConfig,
) -> Result<IndependenceReport> {
    if masses1.len() != masses2.len() {
        return Err(Error::LengthMismatch {
            left: masses1.len(),
            right: masses2.len(),
        });
    }
    let first = masses1.first().ok_or(Error::EmptyList)?;
    for m in masses2 {
        first.check_same_frame(m)?;
    }
    let c = config.clusters.unwrap_or(first.frame().len());
    let n = masses1.len();

    let dm1 = DistanceMatrix::from_masses(masses1)?;
    let dm2 = DistanceMatrix::from_masses(masses2)?;
    let p1 = cluster_distance_matrix(&dm1, c, config.seed)?;
    let p2 = cluster_distance_matrix(&dm2, c, config.seed)?;
    let cross = cross_distances(masses1, masses2)?;

    let (m1, m2) = correspondence_matrices(&p1, &p2)?;
    let forward = direction_report(&m1, &p1, &p2, &cross, n, config.alpha_policy)?;
    let backward = direction_report(&m2, &p2, &p1, &cross, n, config.alpha_policy)?;

    Ok(IndependenceReport {
        forward,
        backward,
        n_objects: n,
        n_clusters: c,
    })
}

fn direction_report(
    matrix: &CorrespondenceMatrix,
    referent: &Partition,
    other: &Partition,
    cross: &[f64],
    n_objects: usize,
    policy: AlphaPolicy,
) -> Result<DirectionReport> {
    let matching = greedy_match(matrix);
    let mut links = Vec::with_capacity(matching.pairs().len());
    for &(r, col, beta) in matching.pairs() {
        let alpha = policy.value(referent.cluster(r).len(), n_objects);
        let conf = cluster_conflict(referent.cluster(r), other.cluster(col), cross);
        links.push(PairLink {
            referent_cluster: r,
            other_cluster: col,
            beta,
            alpha,
            conf,
        });
    }
    let ind_masses: Vec<IndependenceMass> = links
        .iter()
        .map(pair_independence_mass)
        .collect::<Result<_>>()?;
    let dep_masses: Vec<DependenceMass> = links
        .iter()
        .map(pair_dependence_mass)
        .collect::<Result<_>>()?;
    let independence = IndependenceMass::mean(&ind_masses)?;
    let dependence = DependenceMass::mean(&dep_masses)?;
    let (independence_degree, dependence_degree) = independence.degrees();
    let (betp_independent, betp_positive, betp_negative) = dependence.betp();
    Ok(DirectionReport {
        links,
        independence,
        dependence,
        independence_degree,
        dependence_degree,
        betp_independent,
        betp_positive,
        betp_negative,
    })
}
