//! The four strata of the moduli space of principally polarised abelian
//! threefolds with level two structure: their cohomology tables, weighted
//! Euler characteristics, and the assembled total.

mod compute;
mod data;
mod relabel;

use std::fmt;

use crate::chartab::IrrepLabel;
use crate::error::{usage, Result};
use crate::poly::{IntPolynomial, Var};

pub use compute::{
    compute_a111_table, compute_a21_table, compute_a2_euler, induced_table, partition_label,
    reproduce_wreath_rows, symmetric_class_function, A2Euler, WreathCheck,
};
pub use data::{
    load_reference_euler, load_stratum_table, load_twisted_counts, load_wreath_poincare, BaseKind,
    StoredCount, WreathRow,
};
pub use relabel::{relabel_protocol, CellDiff, LabelMap, RelabelOutcome};
pub use crate::symmetric::{murnaghan_nakayama, SymmetricTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    /// Plane quartics.
    Quartic,
    /// Hyperelliptic curves.
    Hyperelliptic,
    /// An indecomposable surface times an elliptic curve.
    SurfaceElliptic,
    /// Products of three elliptic curves.
    TripleElliptic,
}

impl Stratum {
    pub const ALL: [Stratum; 4] =
        [Stratum::Quartic, Stratum::Hyperelliptic, Stratum::SurfaceElliptic, Stratum::TripleElliptic];

    pub fn max_degree(self) -> usize {
        match self {
            Stratum::Quartic => 6,
            Stratum::Hyperelliptic => 5,
            Stratum::SurfaceElliptic => 4,
            Stratum::TripleElliptic => 3,
        }
    }

    /// Codimension in the full space; the Euler characteristic is shifted by `v^{2c}`.
    pub fn codimension(self) -> usize {
        match self {
            Stratum::Quartic => 0,
            Stratum::Hyperelliptic => 1,
            Stratum::SurfaceElliptic => 2,
            Stratum::TripleElliptic => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Stratum::Quartic => "Q",
            Stratum::Hyperelliptic => "H3",
            Stratum::SurfaceElliptic => "A21",
            Stratum::TripleElliptic => "A111",
        }
    }

    pub fn parse(s: &str) -> Result<Stratum> {
        Stratum::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| usage(format!("unknown stratum {s:?}; expected Q, H3, A21 or A111")))
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Multiplicities of irreducibles in each cohomology group of a stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    stratum: Stratum,
    labels: Vec<IrrepLabel>,
    /// `rows[degree][irrep]`.
    rows: Vec<Vec<u64>>,
}

impl CohomologyTable {
    pub fn new(stratum: Stratum, labels: Vec<IrrepLabel>, rows: Vec<Vec<u64>>) -> Result<Self> {
        if rows.len() != stratum.max_degree() + 1 {
            return Err(usage(format!(
                "{stratum} needs degrees 0..={}, got {} rows",
                stratum.max_degree(),
                rows.len()
            )));
        }
        if rows.iter().any(|r| r.len() != labels.len()) {
            return Err(usage("row length differs from the number of labels"));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(usage("duplicate irreducible labels"));
        }
        Ok(CohomologyTable { stratum, labels, rows })
    }

    pub fn stratum(&self) -> Stratum {
        self.stratum
    }

    pub fn labels(&self) -> &[IrrepLabel] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn max_degree(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn multiplicity(&self, degree: usize, label: &IrrepLabel) -> Option<u64> {
        let j = self.labels.iter().position(|l| l == label)?;
        self.rows.get(degree).map(|r| r[j])
    }

    /// Labels with nonzero multiplicity in one degree.
    pub fn row_support(&self, degree: usize) -> Vec<IrrepLabel> {
        self.labels.iter().zip(&self.rows[degree]).filter(|(_, &m)| m > 0).map(|(l, _)| *l).collect()
    }

    /// Total dimension of each cohomology group.
    pub fn dimensions(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(&self.labels).map(|(m, l)| m * l.dimension).sum())
            .collect()
    }

    pub fn max_entry(&self) -> u64 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Same table with columns renamed by `map` and ordered as `order`.
    pub fn relabeled(&self, map: &LabelMap, order: &[IrrepLabel]) -> Result<CohomologyTable> {
        let renamed: Vec<IrrepLabel> = self.labels.iter().map(|l| map.apply(l)).collect();
        let positions = order
            .iter()
            .map(|l| {
                renamed
                    .iter()
                    .position(|r| r == l)
                    .ok_or_else(|| usage(format!("label {l} missing after relabeling")))
            })
            .collect::<Result<Vec<_>>>()?;
        let rows = self.rows.iter().map(|r| positions.iter().map(|&p| r[p]).collect()).collect();
        CohomologyTable::new(self.stratum, order.to_vec(), rows)
    }
}

/// Weighted Euler characteristic, one polynomial in `v` per irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCharacteristic {
    labels: Vec<IrrepLabel>,
    polys: Vec<IntPolynomial>,
}

impl EulerCharacteristic {
    pub fn new(labels: Vec<IrrepLabel>, polys: Vec<IntPolynomial>) -> Result<Self> {
        if labels.len() != polys.len() {
            return Err(usage("one polynomial per label expected"));
        }
        if polys.iter().any(|p| p.var() != Var::V) {
            return Err(usage("Euler characteristics are polynomials in v"));
        }
        Ok(EulerCharacteristic { labels, polys })
    }

    pub fn labels(&self) -> &[IrrepLabel] {
        &self.labels
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    pub fn component(&self, label: &IrrepLabel) -> Option<&IntPolynomial> {
        self.labels.iter().position(|l| l == label).map(|i| &self.polys[i])
    }

    pub fn nonzero_labels(&self) -> Vec<IrrepLabel> {
        self.labels.iter().zip(&self.polys).filter(|(_, p)| !p.is_zero()).map(|(l, _)| *l).collect()
    }

    pub fn max_abs_coefficient(&self) -> i64 {
        self.polys.iter().flat_map(|p| p.coeffs()).map(|c| c.abs()).max().unwrap_or(0)
    }

    /// `Σ_φ dim φ · e_φ(1)`, the ordinary Euler characteristic.
    pub fn dimension_at_one(&self) -> i128 {
        self.labels.iter().zip(&self.polys).map(|(l, p)| l.dimension as i128 * p.eval(1)).sum()
    }

    /// The same characteristic with components listed in `order`.
    pub fn reordered(&self, order: &[IrrepLabel]) -> Result<EulerCharacteristic> {
        let polys = order
            .iter()
            .map(|l| self.component(l).cloned().ok_or_else(|| usage(format!("no component {l}"))))
            .collect::<Result<Vec<_>>>()?;
        EulerCharacteristic::new(order.to_vec(), polys)
    }
}

/// `Σ_i (−1)^i H^i v^{2i}` per irreducible.
pub fn euler_of_table(table: &CohomologyTable) -> EulerCharacteristic {
    let polys = (0..table.labels.len())
        .map(|j| {
            let mut coeffs = vec![0i64; 2 * table.max_degree() + 1];
            for (i, row) in table.rows.iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                coeffs[2 * i] = sign * row[j] as i64;
            }
            IntPolynomial::new(Var::V, coeffs)
        })
        .collect();
    EulerCharacteristic { labels: table.labels.clone(), polys }
}

/// Adds the strata with their codimension shifts `v^{2c}`.
pub fn assemble_a3(tables: &[&CohomologyTable]) -> Result<EulerCharacteristic> {
    let Some(first) = tables.first() else {
        return Err(usage("no strata to assemble"));
    };
    let labels = first.labels.clone();
    let mut polys = vec![IntPolynomial::zero(Var::V); labels.len()];
    let mut seen = Vec::new();
    for t in tables {
        if t.labels != labels {
            return Err(usage(format!("{} uses a different label order", t.stratum)));
        }
        if seen.contains(&t.stratum) {
            return Err(usage(format!("{} given twice", t.stratum)));
        }
        seen.push(t.stratum);
        let shift = IntPolynomial::monomial(Var::V, 1, 2 * t.stratum.codimension());
        for (acc, p) in polys.iter_mut().zip(euler_of_table(t).polys) {
            *acc = &*acc + &(&shift * &p);
        }
    }
    if seen.len() != 4 {
        return Err(usage("all four strata are needed"));
    }
    Ok(EulerCharacteristic { labels, polys })
}

/// How much cancels between the strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationReport {
    pub nonzero: Vec<IrrepLabel>,
    pub max_abs_coefficient: i64,
    pub max_multiplicity: u64,
    /// Cells `(stratum, degree, irrep)` where the maximum is attained.
    pub attaining: Vec<(Stratum, usize, IrrepLabel)>,
    /// Irreducibles occurring in no cohomology group of any stratum.
    pub absent: Vec<IrrepLabel>,
}

impl CancellationReport {
    pub fn coefficients_are_units(&self) -> bool {
        self.max_abs_coefficient <= 1
    }
}

pub fn cancellation_report(e: &EulerCharacteristic, tables: &[&CohomologyTable]) -> CancellationReport {
    let max_multiplicity = tables.iter().map(|t| t.max_entry()).max().unwrap_or(0);
    let mut attaining = Vec::new();
    for t in tables {
        for (d, row) in t.rows.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m == max_multiplicity {
                    attaining.push((t.stratum, d, t.labels[j]));
                }
            }
        }
    }
    let absent = e
        .labels
        .iter()
        .filter(|l| {
            tables.iter().all(|t| (0..=t.max_degree()).all(|d| t.multiplicity(d, l).unwrap_or(0) == 0))
        })
        .copied()
        .collect();
    CancellationReport {
        nonzero: e.nonzero_labels(),
        max_abs_coefficient: e.max_abs_coefficient(),
        max_multiplicity,
        attaining,
        absent,
    }
}
