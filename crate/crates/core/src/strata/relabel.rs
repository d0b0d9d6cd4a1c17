//! Matching canonical labels against the reference naming of irreducibles.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::{assemble_a3, CohomologyTable, EulerCharacteristic, Stratum};
use crate::chartab::IrrepLabel;
use crate::error::{usage, Result};

/// A bijection between label sets that preserves dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    pairs: BTreeMap<IrrepLabel, IrrepLabel>,
}

impl LabelMap {
    pub fn identity(labels: &[IrrepLabel]) -> Self {
        LabelMap { pairs: labels.iter().map(|&l| (l, l)).collect() }
    }

    pub fn apply(&self, label: &IrrepLabel) -> IrrepLabel {
        self.pairs.get(label).copied().unwrap_or(*label)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&IrrepLabel, &IrrepLabel)> {
        self.pairs.iter()
    }

    /// Labels not sent to themselves.
    pub fn moved(&self) -> Vec<(IrrepLabel, IrrepLabel)> {
        self.pairs.iter().filter(|(a, b)| a != b).map(|(a, b)| (*a, *b)).collect()
    }
}

/// One disagreeing cell after relabeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellDiff {
    Table { stratum: Stratum, degree: usize, label: IrrepLabel, computed: u64, reference: u64 },
    Euler { label: IrrepLabel, computed: String, reference: String },
}

#[derive(Clone, Debug)]
pub struct RelabelOutcome {
    /// Every bijection under which all comparisons succeed.
    pub valid: Vec<LabelMap>,
    /// Candidates examined.
    pub examined: usize,
    /// The candidate with the fewest disagreements and its differences.
    pub best: LabelMap,
    pub best_diffs: Vec<CellDiff>,
    /// The assembled characteristic under `best`.
    pub assembled: EulerCharacteristic,
}

impl RelabelOutcome {
    pub fn is_unique(&self) -> bool {
        self.valid.len() == 1
    }

    pub fn succeeded(&self) -> bool {
        !self.valid.is_empty()
    }
}

fn table_diffs(computed: &CohomologyTable, reference: &CohomologyTable, out: &mut Vec<CellDiff>) {
    for (d, (a, b)) in computed.rows().iter().zip(reference.rows()).enumerate() {
        for (j, (&x, &y)) in a.iter().zip(b).enumerate() {
            if x != y {
                out.push(CellDiff::Table {
                    stratum: reference.stratum(),
                    degree: d,
                    label: reference.labels()[j],
                    computed: x,
                    reference: y,
                });
            }
        }
    }
}

/// Searches all within-dimension bijections from the computed labels to the
/// reference labels under which the computed surface-elliptic and
/// triple-elliptic tables equal the stored ones and the assembled total
/// equals the stored total.
pub fn relabel_protocol(
    computed_a21: &CohomologyTable,
    computed_a111: &CohomologyTable,
    reference: &[CohomologyTable; 4],
    reference_euler: &EulerCharacteristic,
) -> Result<RelabelOutcome> {
    let [quartic, hyper, ref_a21, ref_a111] = reference;
    let order = quartic.labels().to_vec();
    if computed_a21.labels() != computed_a111.labels() {
        return Err(usage("computed tables use different label orders"));
    }
    let mut ours: BTreeMap<u64, Vec<IrrepLabel>> = BTreeMap::new();
    for l in computed_a21.labels() {
        ours.entry(l.dimension).or_default().push(*l);
    }
    let mut theirs: BTreeMap<u64, Vec<IrrepLabel>> = BTreeMap::new();
    for l in &order {
        theirs.entry(l.dimension).or_default().push(*l);
    }
    let shape = |m: &BTreeMap<u64, Vec<IrrepLabel>>| m.iter().map(|(d, v)| (*d, v.len())).collect::<Vec<_>>();
    if shape(&ours) != shape(&theirs) {
        return Err(usage("computed and reference degree multisets differ"));
    }

    // per dimension, every assignment of reference letters to our labels
    let per_dim: Vec<Vec<Vec<(IrrepLabel, IrrepLabel)>>> = ours
        .iter()
        .map(|(d, mine)| {
            theirs[d]
                .iter()
                .permutations(mine.len())
                .map(|perm| mine.iter().copied().zip(perm.into_iter().copied()).collect())
                .collect()
        })
        .collect();

    let mut valid = Vec::new();
    let mut best: Option<(usize, LabelMap, Vec<CellDiff>, EulerCharacteristic)> = None;
    let mut examined = 0;
    for choice in per_dim.iter().map(|v| v.iter()).multi_cartesian_product() {
        examined += 1;
        let map = LabelMap { pairs: choice.into_iter().flatten().copied().collect() };
        let a21 = computed_a21.relabeled(&map, &order)?;
        let a111 = computed_a111.relabeled(&map, &order)?;
        let mut diffs = Vec::new();
        table_diffs(&a21, ref_a21, &mut diffs);
        table_diffs(&a111, ref_a111, &mut diffs);
        let assembled = assemble_a3(&[quartic, hyper, &a21, &a111])?;
        let expected = reference_euler.reordered(&order)?;
        for ((label, got), want) in order.iter().zip(assembled.polys()).zip(expected.polys()) {
            if got != want {
                diffs.push(CellDiff::Euler { label: *label, computed: got.to_string(), reference: want.to_string() });
            }
        }
        if diffs.is_empty() {
            valid.push(map.clone());
        }
        if best.as_ref().is_none_or(|b| diffs.len() < b.0) {
            best = Some((diffs.len(), map, diffs, assembled));
        }
    }
    let (_, best, best_diffs, assembled) = best.expect("at least one candidate");
    Ok(RelabelOutcome { valid, examined, best, best_diffs, assembled })
}
