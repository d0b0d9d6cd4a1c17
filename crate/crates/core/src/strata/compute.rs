use std::sync::Arc;

use itertools::Itertools;

use super::data::{BaseKind, WreathRow};
use super::{CohomologyTable, Stratum};
use crate::chartab::{decompose, induce, inner_product, CharacterTable, ClassData, ClassFunction};
use crate::error::{internal, usage, Result};
use crate::f2sym::{Decoration, SubgroupEmbedding};
use crate::kunneth::{
    product_graded_character, wreath_graded_character, GradedClassFunction, SymmetricFactor,
};
use crate::pointcount::purity_traces;
use crate::poly::{IntPolynomial, Var};
use crate::symmetric::{murnaghan_nakayama, partitions};

/// Induces each graded piece to the ambient group and decomposes it.
pub fn induced_table(
    stratum: Stratum,
    graded: &GradedClassFunction,
    embedding: &SubgroupEmbedding,
    table: &CharacterTable,
) -> Result<CohomologyTable> {
    let rows = graded
        .pieces()
        .iter()
        .map(|piece| decompose(&induce(embedding, piece, table.group())?, table))
        .collect::<Result<Vec<_>>>()?;
    CohomologyTable::new(stratum, table.labels().to_vec(), rows)
}

/// Cohomology of the surface-times-elliptic stratum, in canonical labels.
pub fn compute_a21_table(
    table: &CharacterTable,
    product: &SubgroupEmbedding,
    sp4: &SymmetricFactor,
    sp2: &SymmetricFactor,
) -> Result<CohomologyTable> {
    let graded = product_graded_character(&purity_traces(6)?, &purity_traces(4)?, sp4, sp2, product)?;
    induced_table(Stratum::SurfaceElliptic, &graded, product, table)
}

/// Cohomology of the triple-elliptic stratum, in canonical labels.
pub fn compute_a111_table(
    table: &CharacterTable,
    wreath: &SubgroupEmbedding,
    sp2: &SymmetricFactor,
) -> Result<CohomologyTable> {
    let base = sp2.transport(&purity_traces(4)?)?;
    let graded = wreath_graded_character(&base, sp2, wreath)?;
    induced_table(Stratum::TripleElliptic, &graded, wreath, table)
}

/// A stored Poincaré polynomial next to the recomputed one.
#[derive(Clone, Debug)]
pub struct WreathCheck {
    pub row: WreathRow,
    pub computed: IntPolynomial,
    /// Wreath-subgroup class of the chosen representative.
    pub class: usize,
}

impl WreathCheck {
    pub fn agrees(&self) -> bool {
        self.row.poincare == self.computed
    }
}

/// Evaluates the graded wreath character at a member matching each stored row.
/// `τ` and `σ` are the first elements of order 2 and 3 in key order.
pub fn reproduce_wreath_rows(
    rows: &[WreathRow],
    sp2: &SymmetricFactor,
    wreath: &SubgroupEmbedding,
) -> Result<Vec<WreathCheck>> {
    let base = sp2.transport(&purity_traces(4)?)?;
    let graded = wreath_graded_character(&base, sp2, wreath)?;
    let pick = |kind: BaseKind| {
        (0..sp2.group.order())
            .find(|&i| sp2.group.element(i).element_order() == kind.element_order())
            .expect("Sp(2,2) has elements of orders 1, 2, 3")
    };
    rows.iter()
        .map(|row| {
            let wanted: Vec<usize> = row.base.iter().map(|&k| pick(k)).collect();
            let member = (0..wreath.order())
                .find(|&e| {
                    matches!(wreath.decoration(e), Decoration::Wreath { top, base }
                        if *top == row.top && *base == wanted)
                })
                .ok_or_else(|| internal(format!("no wreath member labelled {}", row.label())))?;
            let class = wreath.classes().class_of(member);
            Ok(WreathCheck { row: row.clone(), computed: graded.poincare(class), class })
        })
        .collect()
}

/// `s_λ` as a class function on `Sp(4,2)` through the isomorphism with `S₆`.
pub fn symmetric_class_function(sp4: &SymmetricFactor, lambda: &[usize]) -> Result<ClassFunction> {
    let r = sp4.classes.class_count();
    let values = (0..r)
        .map(|c| {
            let ct = sp4.cycle_type_of(sp4.classes.representative(c), 6)?;
            Ok(murnaghan_nakayama(lambda, ct.parts()))
        })
        .collect::<Result<Vec<_>>>()?;
    ClassFunction::new(sp4.class_data(), values)
}

pub fn partition_label(lambda: &[usize]) -> String {
    format!("s{}", lambda.iter().join(","))
}

/// Weighted Euler characteristic of the genus-two analogue, by partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A2Euler {
    pub partitions: Vec<Vec<usize>>,
    pub polys: Vec<IntPolynomial>,
}

impl A2Euler {
    pub fn component(&self, lambda: &[usize]) -> Option<&IntPolynomial> {
        self.partitions.iter().position(|p| p == lambda).map(|i| &self.polys[i])
    }
}

fn signed_euler(
    pieces: &[ClassFunction],
    shift: usize,
    target: &ClassFunction,
    coeffs: &mut [i64],
) -> Result<()> {
    for (i, piece) in pieces.iter().enumerate() {
        let m = inner_product(piece, target)?;
        if !m.is_integer() || m < 0.into() {
            return Err(internal(format!("multiplicity {m} is not a non-negative integer")));
        }
        let sign = if i % 2 == 0 { 1 } else { -1 };
        coeffs[2 * i + shift] += sign * m.to_integer() as i64;
    }
    Ok(())
}

/// `e(M₂[2]) + v²·e(locus of products of two elliptic curves)` on `Sp(4,2)`.
pub fn compute_a2_euler(
    sp4: &SymmetricFactor,
    sp2: &SymmetricFactor,
    wreath2: &SubgroupEmbedding,
) -> Result<A2Euler> {
    if wreath2.ambient_fingerprint() != sp4.classes.fingerprint() {
        return Err(usage("wreath embedding is not inside the given Sp(4,2)"));
    }
    let curves = sp4.transport(&purity_traces(6)?)?;
    let base = sp2.transport(&purity_traces(4)?)?;
    let ambient: Arc<ClassData> = sp4.class_data();
    let products = wreath_graded_character(&base, sp2, wreath2)?
        .pieces()
        .iter()
        .map(|p| induce(wreath2, p, &ambient))
        .collect::<Result<Vec<_>>>()?;
    // curves fill v^0..v^{2·max}, products are shifted by v^2
    let top = curves.max_degree().max(products.len());
    let mut out = A2Euler { partitions: Vec::new(), polys: Vec::new() };
    for lambda in partitions(6) {
        let s = symmetric_class_function(sp4, &lambda)?;
        let mut coeffs = vec![0i64; 2 * top + 1];
        signed_euler(curves.pieces(), 0, &s, &mut coeffs)?;
        signed_euler(&products, 2, &s, &mut coeffs)?;
        out.partitions.push(lambda);
        out.polys.push(IntPolynomial::new(Var::V, coeffs));
    }
    Ok(out)
}
