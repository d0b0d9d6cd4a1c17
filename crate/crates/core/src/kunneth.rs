//! Graded characters of products: Künneth for the direct product and the
//! Koszul-signed version for planes permuted by a wreath product.

use std::sync::Arc;

use crate::chartab::{ClassData, ClassFunction};
use crate::error::{internal, usage, Result};
use crate::f2sym::{
    conjugacy_classes, enumerate_group, ConjugacyClassification, Decoration, FiniteMatrixGroup,
    Permutation, SubgroupEmbedding, SymmetricModel,
};
use crate::pointcount::{CycleType, GradedPermCharacter};
use crate::poly::{IntPolynomial, Var};

/// One class function per cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClassFunction {
    pieces: Vec<ClassFunction>,
}

impl GradedClassFunction {
    pub fn new(pieces: Vec<ClassFunction>) -> Result<Self> {
        let Some(first) = pieces.first() else {
            return Err(usage("graded class function needs at least one degree"));
        };
        let fp = first.group().fingerprint;
        if pieces.iter().any(|p| p.group().fingerprint != fp) {
            return Err(usage("graded pieces live on different groups"));
        }
        Ok(GradedClassFunction { pieces })
    }

    pub fn group(&self) -> &Arc<ClassData> {
        self.pieces[0].group()
    }

    pub fn pieces(&self) -> &[ClassFunction] {
        &self.pieces
    }

    pub fn piece(&self, degree: usize) -> Option<&ClassFunction> {
        self.pieces.get(degree)
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    /// `Σ_i χ_i(c) t^i`.
    pub fn poincare(&self, class: usize) -> IntPolynomial {
        IntPolynomial::new(Var::T, self.pieces.iter().map(|p| p.value(class)).collect())
    }

    /// Dimensions of the graded pieces.
    pub fn dimensions(&self) -> Vec<i64> {
        self.pieces.iter().map(ClassFunction::degree).collect()
    }
}

/// An `Sp(2g,2)` for `g ≤ 2` with its classes and its symmetric-group model.
#[derive(Debug)]
pub struct SymmetricFactor {
    pub group: FiniteMatrixGroup,
    pub classes: ConjugacyClassification,
    pub model: SymmetricModel,
}

impl SymmetricFactor {
    pub fn new(genus: usize) -> Result<Self> {
        if !(1..=2).contains(&genus) {
            return Err(usage("symmetric factors exist for genus 1 and 2"));
        }
        let group = enumerate_group(genus)?;
        let classes = conjugacy_classes(&group);
        let model = SymmetricModel::new(genus)?;
        Ok(SymmetricFactor { group, classes, model })
    }

    pub fn class_data(&self) -> Arc<ClassData> {
        ClassData::of(&self.classes)
    }

    /// Cycle type, padded to `n` points, of the permutation behind an element.
    pub fn cycle_type_of(&self, element: usize, n: usize) -> Result<CycleType> {
        let perm = self
            .model
            .permutation_of(self.group.element(element))
            .ok_or_else(|| internal("group element outside the symmetric model"))?;
        CycleType::of(perm).padded(n)
    }

    /// Moves point-count traces onto the symplectic group.
    pub fn transport(&self, traces: &GradedPermCharacter) -> Result<GradedClassFunction> {
        let data = self.class_data();
        let r = self.classes.class_count();
        let n = traces.n();
        let mut values = vec![vec![None::<i64>; r]; traces.top_degree() + 1];
        for element in 0..self.group.order() {
            let ct = self.cycle_type_of(element, n)?;
            let t = traces
                .traces(&ct)
                .ok_or_else(|| internal(format!("no traces for cycle type {ct:?}")))?;
            let class = self.classes.class_of(element);
            for (degree, &v) in t.iter().enumerate() {
                match values[degree][class] {
                    None => values[degree][class] = Some(v),
                    Some(prev) if prev != v => {
                        return Err(internal(format!("traces not constant on class {class}")))
                    }
                    _ => {}
                }
            }
        }
        let pieces = values
            .into_iter()
            .map(|row| ClassFunction::new(data.clone(), row.into_iter().map(|v| v.unwrap_or(0)).collect()))
            .collect::<Result<Vec<_>>>()?;
        GradedClassFunction::new(pieces)
    }
}

/// Collects per-element values into class functions on the embedded
/// subgroup, failing if a value varies within a class.
fn collect_on_classes(
    embedding: &SubgroupEmbedding,
    degrees: usize,
    mut value: impl FnMut(usize) -> Result<Vec<i64>>,
) -> Result<GradedClassFunction> {
    let classes = embedding.classes();
    let r = classes.class_count();
    let mut table = vec![vec![None::<i64>; r]; degrees];
    for element in 0..embedding.order() {
        let class = classes.class_of(element);
        let v = value(element)?;
        for degree in 0..degrees {
            let x = v.get(degree).copied().unwrap_or(0);
            match table[degree][class] {
                None => table[degree][class] = Some(x),
                Some(prev) if prev != x => {
                    return Err(internal(format!(
                        "graded character not constant on subgroup class {class} in degree {degree}"
                    )))
                }
                _ => {}
            }
        }
    }
    let data = ClassData::of(classes);
    let pieces = table
        .into_iter()
        .map(|row| ClassFunction::new(data.clone(), row.into_iter().map(|v| v.unwrap_or(0)).collect()))
        .collect::<Result<Vec<_>>>()?;
    GradedClassFunction::new(pieces)
}

/// `(χ ⊠ ψ)_i(g, h) = Σ_{p+q=i} χ_p(g) ψ_q(h)` on the product embedding.
pub fn external_product(
    left: &GradedClassFunction,
    left_factor: &SymmetricFactor,
    right: &GradedClassFunction,
    right_factor: &SymmetricFactor,
    embedding: &SubgroupEmbedding,
) -> Result<GradedClassFunction> {
    if left.group().fingerprint != left_factor.classes.fingerprint()
        || right.group().fingerprint != right_factor.classes.fingerprint()
    {
        return Err(usage("graded characters do not match the factor groups"));
    }
    let degrees = left.max_degree() + right.max_degree() + 1;
    collect_on_classes(embedding, degrees, |element| {
        let Decoration::Product { left: a, right: b } = embedding.decoration(element) else {
            return Err(usage("external product needs the product embedding"));
        };
        let ca = left_factor.classes.class_of(*a);
        let cb = right_factor.classes.class_of(*b);
        let mut out = vec![0i64; degrees];
        for (p, x) in left.pieces().iter().enumerate() {
            for (q, y) in right.pieces().iter().enumerate() {
                out[p + q] += x.value(ca) * y.value(cb);
            }
        }
        Ok(out)
    })
}

/// Graded character of `H(M₀,₆) ⊗ H(M₀,₄)` on the product embedding.
pub fn product_graded_character(
    m6: &GradedPermCharacter,
    m4: &GradedPermCharacter,
    sp4: &SymmetricFactor,
    sp2: &SymmetricFactor,
    embedding: &SubgroupEmbedding,
) -> Result<GradedClassFunction> {
    if m6.n() != 6 || m4.n() != 4 {
        return Err(usage("expected traces for six and four points"));
    }
    let left = sp4.transport(m6)?;
    let right = sp2.transport(m4)?;
    external_product(&left, sp4, &right, sp2, embedding)
}

/// Trace of a wreath element `(top, base)` on the graded tensor power.
///
/// A cycle `c` of `top` contributes `Σ_p (−1)^{p(|c|−1)} χ_p(h_c) t^{p|c|}`,
/// where `h_c` is the product of the base elements taken along the cycle.
pub fn wreath_trace(
    base: &GradedClassFunction,
    factor: &SymmetricFactor,
    top: &Permutation,
    base_elements: &[usize],
) -> Result<IntPolynomial> {
    if top.degree() != base_elements.len() {
        return Err(usage("wreath element shape mismatch"));
    }
    if base.group().fingerprint != factor.classes.fingerprint() {
        return Err(usage("base character is not on the factor group"));
    }
    let group = &factor.group;
    let mut total = IntPolynomial::constant(Var::T, 1);
    for cycle in top.cycles() {
        let len = cycle.len();
        let h = cycle
            .iter()
            .fold(*group.element(group.identity_index()), |acc, &i| acc * *group.element(base_elements[i]));
        let class = factor
            .classes
            .class_of(group.index_of(&h).ok_or_else(|| internal("cycle product left the group"))?);
        let mut coeffs = vec![0i64; base.max_degree() * len + 1];
        for (p, piece) in base.pieces().iter().enumerate() {
            let sign = if (p * (len - 1)) % 2 == 0 { 1 } else { -1 };
            coeffs[p * len] = sign * piece.value(class);
        }
        total = &total * &IntPolynomial::new(Var::T, coeffs);
    }
    Ok(total)
}

/// The graded character of the permuted tensor power on the wreath embedding.
pub fn wreath_graded_character(
    base: &GradedClassFunction,
    factor: &SymmetricFactor,
    embedding: &SubgroupEmbedding,
) -> Result<GradedClassFunction> {
    let genus = embedding.subgroup().form().genus();
    let degrees = base.max_degree() * genus + 1;
    collect_on_classes(embedding, degrees, |element| {
        let Decoration::Wreath { top, base: elems } = embedding.decoration(element) else {
            return Err(usage("wreath character needs the wreath embedding"));
        };
        let poly = wreath_trace(base, factor, top, elems)?;
        Ok((0..degrees).map(|i| poly.coeff(i)).collect())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::purity_traces;

    fn sp2_base() -> (SymmetricFactor, GradedClassFunction) {
        let f = SymmetricFactor::new(1).unwrap();
        let g = f.transport(&purity_traces(4).unwrap()).unwrap();
        (f, g)
    }

    fn element_of_order(f: &SymmetricFactor, order: u32) -> usize {
        (0..f.group.order()).find(|&i| f.group.element(i).element_order() == order).unwrap()
    }

    #[test]
    fn sp2_base_is_trivial_plus_standard() {
        let (f, g) = sp2_base();
        assert_eq!(g.dimensions(), vec![1, 2]);
        let by_order: Vec<(u32, i64)> =
            (0..3).map(|c| (f.classes.element_order(c), g.piece(1).unwrap().value(c))).collect();
        assert_eq!(by_order, vec![(1, 2), (2, 0), (3, -1)]);
        assert!(g.piece(0).unwrap().values().iter().all(|&v| v == 1));
    }

    #[test]
    fn hand_checked_wreath_traces() {
        let (f, g) = sp2_base();
        let id = f.group.identity_index();
        let sigma = element_of_order(&f, 3);
        let tau = element_of_order(&f, 2);
        let swap23 = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        let cyc = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let p = |s: &str| s.parse::<IntPolynomial>().unwrap();
        let t = |top: &Permutation, b: [usize; 3]| wreath_trace(&g, &f, top, &b).unwrap();
        assert_eq!(t(&swap23, [sigma, sigma, id]), p("1 - t + t^2 - t^3"));
        assert_eq!(t(&Permutation::identity(3), [id, id, id]), p("1 + 6t + 12t^2 + 8t^3"));
        assert_eq!(t(&cyc, [sigma, id, id]), p("1 - t^3"));
        assert_eq!(t(&swap23, [id, sigma, id]), p("1 + 2t + t^2 + 2t^3"));
        assert_eq!(t(&swap23, [tau, tau, id]), IntPolynomial::constant(Var::T, 1));
    }

    #[test]
    fn graded_function_rejects_mixed_groups() {
        let (_, g) = sp2_base();
        let f2 = SymmetricFactor::new(2).unwrap();
        let other = ClassFunction::trivial(f2.class_data());
        let mixed = vec![g.piece(0).unwrap().clone(), other];
        assert!(GradedClassFunction::new(mixed).is_err());
        assert!(GradedClassFunction::new(Vec::new()).is_err());
    }
}
