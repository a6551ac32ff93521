//! Label-level bookkeeping for quantum isometry groups: the support
//! `I = {x : A_x ≠ 0}` and its image under a monoidal equivalence.

use super::TripleError;
use crate::repcat::{fusion_indices, restrict_equivalence, EquivalenceDescriptor, FusionRing, LabelSet, Subcategory, DEFAULT_CLOSURE_BOUND};
use crate::report::Report;
use crate::scalar::Rat;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq)]
pub struct QisoLabels {
    pub ring: FusionRing,
    pub q: Rat,
    /// Name of the ambient quantum group, e.g. `SU_q(2)`.
    pub ambient: String,
    pub support: LabelSet,
    /// Name of the quantum group generated by the support, e.g. `SO_q(3)`.
    pub derived: String,
}

impl QisoLabels {
    /// Unit, fusion closure and conjugation closure up to `bound`.
    pub fn check(&self, bound: u32) -> Report {
        let mut report = Report::new();
        report.record(format!("support {} fusion-closed to r_{bound}", self.support), self.support.check_fusion_closed(bound).map_err(|e| e.to_string()));
        let conj = self.support.members(bound).into_iter().all(|k| self.support.contains(self.ring.conjugate(&self.ring.label(k)).index));
        report.push("support conjugation-closed", conj, None);
        report
    }
}

/// Closure of `{r_0} ∪ content` under fusion, up to `bound`. Recognized as
/// all labels or the even labels when it matches them up to `bound`.
pub fn support_from_generators(content: &[Vec<u32>], bound: u32) -> LabelSet {
    let mut set: BTreeSet<u32> = [0].into();
    set.extend(content.iter().flatten().copied().filter(|&k| k <= bound));
    loop {
        let mut grown = set.clone();
        for &a in &set {
            for &b in &set {
                grown.extend(fusion_indices(a, b).filter(|&c| c <= bound));
            }
        }
        if grown == set {
            break;
        }
        set = grown;
    }
    let all: BTreeSet<u32> = (0..=bound).collect();
    let even: BTreeSet<u32> = (0..=bound).filter(|k| k % 2 == 0).collect();
    if set == all {
        LabelSet::all()
    } else if set == even && set.len() > 1 {
        LabelSet::even()
    } else {
        LabelSet::finite(set)
    }
}

fn derived_name(ring: FusionRing, q: &Rat, support: &LabelSet) -> Result<String, TripleError> {
    let id = EquivalenceDescriptor::identity(ring, q.clone());
    Ok(restrict_equivalence(&id, &Subcategory::new(ring, support.clone()))?.source_name)
}

/// `SU_q(2)` acting on the Podleś sphere: `Ã` has content `{r_0, r_2}` and
/// `B̃` has content `{r_2}`, so the support is the even labels.
pub fn podles_qiso(q: &Rat) -> Result<QisoLabels, TripleError> {
    let ring = FusionRing::su_q2();
    let support = support_from_generators(&[vec![0, 2], vec![2]], DEFAULT_CLOSURE_BOUND);
    Ok(QisoLabels { ring, q: q.clone(), ambient: ring.family.to_string(), derived: derived_name(ring, q, &support)?, support })
}

/// Move the support along `φ` and rename: the ambient group becomes the
/// target of `e`, the derived group the target of `e` restricted to the
/// support.
pub fn qiso_deform(labels: &QisoLabels, e: &EquivalenceDescriptor) -> Result<QisoLabels, TripleError> {
    labels.support.check_fusion_closed(DEFAULT_CLOSURE_BOUND)?;
    if labels.ring != e.source {
        return Err(TripleError::Unsupported(format!("support lives on {}, equivalence starts at {}", labels.ring.family, e.source.family)));
    }
    if let Some(k) = labels.support.members(DEFAULT_CLOSURE_BOUND).into_iter().find(|&k| !e.labels.contains(k)) {
        return Err(TripleError::LabelOutsideDomain(format!("r_{k}")));
    }
    let restricted = restrict_equivalence(e, &Subcategory::new(labels.ring, labels.support.clone()))?;
    // φ(r_k) = r_k, so the image has the same indices
    let support = labels.support.clone();
    support.check_fusion_closed(DEFAULT_CLOSURE_BOUND)?;
    Ok(QisoLabels { ring: e.target, q: e.q.clone(), ambient: e.target_name.clone(), support, derived: restricted.target_name })
}

/// `QISO: SO_q(3) -> I(F)`
pub fn qiso_line(before: &QisoLabels, after: &QisoLabels) -> String {
    format!("QISO: {} -> {}", before.derived, after.derived)
}
