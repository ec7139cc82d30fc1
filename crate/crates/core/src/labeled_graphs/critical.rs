use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use super::matching::norm;
use super::{Edge, EdgeLabeling, LabelError, Matching};

/// Exhaustive critical-edge tally for one labeling and matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalReport {
    pub critical_count: u64,
    /// Critical edges with exactly one covered endpoint.
    pub outward_count: u64,
    /// Critical edges with both endpoints covered.
    pub inner_count: u64,
    /// `C(2M, 2)`.
    pub denominator: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Ratio<u64>,
    /// Label `t` of the covering matching edges -> critical edges with both
    /// endpoints in `X_t`.
    pub per_label_class: BTreeMap<u32, u64>,
    /// Critical edges counted with multiplicity: one per covering matching
    /// edge with a strictly larger label.
    pub incidence_count: u64,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl CriticalReport {
    pub fn ratio_f64(&self) -> f64 {
        *self.ratio.numer() as f64 / *self.ratio.denom() as f64
    }
}

fn check_labeling(labeling: &EdgeLabeling, matching: &Matching) -> Result<(), LabelError> {
    if labeling.n_vertices() != matching.n_vertices() {
        return Err(LabelError::InvalidMatching(format!(
            "matching on {} vertices, labeling on {}",
            matching.n_vertices(),
            labeling.n_vertices()
        )));
    }
    Ok(())
}

/// Whether the non-matching edge `uv` is critical: some matching edge covering
/// `u` or `v` has a strictly larger label.
pub fn is_critical(labeling: &EdgeLabeling, matching: &Matching, u: usize, v: usize) -> Result<bool, LabelError> {
    check_labeling(labeling, matching)?;
    let n = labeling.n_vertices();
    for w in [u, v] {
        if w >= n {
            return Err(LabelError::VertexOutOfRange { vertex: w, n });
        }
    }
    if u == v {
        return Err(LabelError::SelfLoop(u));
    }
    if matching.contains(u, v) {
        return Err(LabelError::EdgeInMatching(u, v));
    }
    let mates = matching.mates();
    let own = labeling.label(u, v);
    Ok([u, v]
        .into_iter()
        .filter_map(|w| mates[w].map(|m| labeling.label(w, m)))
        .any(|cover| own < cover))
}

/// The perfect-matching form of the predicate: both endpoints covered, and the
/// label of `uv` strictly below the larger of the two covering labels.
pub fn is_critical_covered(
    labeling: &EdgeLabeling,
    matching: &Matching,
    u: usize,
    v: usize,
) -> Result<bool, LabelError> {
    check_labeling(labeling, matching)?;
    if u == v {
        return Err(LabelError::SelfLoop(u));
    }
    if matching.contains(u, v) {
        return Err(LabelError::EdgeInMatching(u, v));
    }
    let mates = matching.mates();
    let mu = mates[u].ok_or(LabelError::EndpointUncovered(u))?;
    let mv = mates[v].ok_or(LabelError::EndpointUncovered(v))?;
    Ok(labeling.label(u, v) < labeling.label(u, mu).max(labeling.label(v, mv)))
}

pub(crate) fn binom2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Scans every pair of `K_N` and classifies the critical edges.
pub fn count_critical(labeling: &EdgeLabeling, matching: &Matching) -> Result<CriticalReport, LabelError> {
    check_labeling(labeling, matching)?;
    let n = labeling.n_vertices();
    let mates = matching.mates();
    let cover: Vec<Option<u32>> = (0..n).map(|w| mates[w].map(|m| labeling.label(w, m))).collect();

    let mut per_label_class: BTreeMap<u32, u64> = BTreeMap::new();
    for &(u, v) in matching.edges() {
        per_label_class.entry(labeling.label(u, v)).or_insert(0);
    }
    let (mut outward, mut inner, mut incidence) = (0u64, 0u64, 0u64);
    for u in 0..n {
        for v in u + 1..n {
            if mates[u] == Some(v) {
                continue;
            }
            let own = labeling.label(u, v);
            let above = [cover[u], cover[v]].into_iter().flatten().filter(|&c| own < c).count() as u64;
            if above == 0 {
                continue;
            }
            incidence += above;
            match (cover[u], cover[v]) {
                (Some(cu), Some(cv)) => {
                    inner += 1;
                    if cu == cv {
                        *per_label_class.get_mut(&cu).unwrap() += 1;
                    }
                }
                _ => outward += 1,
            }
        }
    }
    let critical = outward + inner;
    let denominator = binom2(2 * matching.size() as u64);
    let ratio = if denominator == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(critical, denominator)
    };
    Ok(CriticalReport {
        critical_count: critical,
        outward_count: outward,
        inner_count: inner,
        denominator,
        ratio,
        per_label_class,
        incidence_count: incidence,
    })
}

/// Pairs `(e, e')` of partner edges that are both critical and join matching
/// edges of different labels. Each pair is listed once with `e < e'`.
pub fn cross_class_critical_pairs(
    labeling: &EdgeLabeling,
    matching: &Matching,
) -> Result<Vec<(Edge, Edge)>, LabelError> {
    check_labeling(labeling, matching)?;
    let n = labeling.n_vertices();
    let mates = matching.mates();
    let critical = |u: usize, v: usize| {
        let own = labeling.label(u, v);
        [u, v]
            .into_iter()
            .filter_map(|w| mates[w].map(|m| labeling.label(w, m)))
            .any(|c| own < c)
    };
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (Some(mu), Some(mv)) = (mates[u], mates[v]) else {
                continue;
            };
            if mu == v {
                continue;
            }
            let partner = norm(mu, mv);
            if partner < (u, v) {
                continue;
            }
            if labeling.label(u, mu) == labeling.label(v, mv) {
                continue;
            }
            if critical(u, v) && critical(partner.0, partner.1) {
                out.push(((u, v), partner));
            }
        }
    }
    Ok(out)
}
