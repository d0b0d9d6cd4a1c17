use rustc_hash::{FxHashMap, FxHashSet};

use super::bitmatrix::{BitMatrix, SymplecticForm};
use crate::error::{internal, usage, Result};

/// A finite group of symplectic matrices, fully enumerated.
///
/// Elements are stored sorted by canonical key, so element indices are
/// reproducible across runs.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    form: SymplecticForm,
    elements: Vec<BitMatrix>,
    index: FxHashMap<u64, u32>,
    generators: Vec<BitMatrix>,
    conjugators: Vec<BitMatrix>,
    identity_index: usize,
}

/// `|Sp(2g, 2)| = 2^{g²} ∏_{i=1}^{g} (2^{2i} − 1)`.
pub fn symplectic_order(genus: usize) -> u64 {
    let mut order = 1u64 << (genus * genus);
    for i in 1..=genus {
        order *= (1u64 << (2 * i)) - 1;
    }
    order
}

impl FiniteMatrixGroup {
    /// Breadth-first closure of `generators` under right multiplication.
    pub fn generated_by(form: SymplecticForm, generators: Vec<BitMatrix>) -> Result<Self> {
        Self::generated_with_capacity(form, generators, 0)
    }

    fn generated_with_capacity(
        form: SymplecticForm,
        generators: Vec<BitMatrix>,
        capacity: usize,
    ) -> Result<Self> {
        let n = form.dim();
        for g in &generators {
            if !form.is_symplectic(g)? {
                return Err(usage(format!("generator {g:?} does not preserve the form")));
            }
        }
        let id = BitMatrix::identity(n)?;
        let mut seen: FxHashSet<u64> =
            FxHashSet::with_capacity_and_hasher(capacity, Default::default());
        seen.insert(id.key());
        let mut elements = Vec::with_capacity(capacity);
        elements.push(id);
        let tables: Vec<_> = generators.iter().map(BitMatrix::row_table).collect();
        let mut head = 0;
        while head < elements.len() {
            let g = elements[head];
            head += 1;
            for t in &tables {
                let h = g.mul_table(t);
                if seen.insert(h.key()) {
                    elements.push(h);
                }
            }
        }
        Self::from_sorted(form, elements, generators)
    }

    fn from_sorted(
        form: SymplecticForm,
        mut elements: Vec<BitMatrix>,
        generators: Vec<BitMatrix>,
    ) -> Result<Self> {
        elements.sort_unstable_by_key(|m| m.key());
        let mut index = FxHashMap::with_capacity_and_hasher(elements.len(), Default::default());
        for (i, m) in elements.iter().enumerate() {
            index.insert(m.key(), i as u32);
        }
        let id_key = BitMatrix::identity(form.dim()).expect("valid size").key();
        let identity_index = *index
            .get(&id_key)
            .ok_or_else(|| internal("group listing lacks the identity"))? as usize;
        let conjugators = generators.clone();
        Ok(FiniteMatrixGroup { form, elements, index, generators, conjugators, identity_index })
    }

    /// Rebuilds a group from a previously enumerated element list, checking
    /// that every element preserves the form and that the list is closed
    /// under the given generators.
    pub fn from_elements(
        form: SymplecticForm,
        elements: Vec<BitMatrix>,
        generators: Vec<BitMatrix>,
    ) -> Result<Self> {
        let group = Self::from_sorted(form, elements, generators)?;
        if group.index.len() != group.elements.len() {
            return Err(internal("duplicate elements in group listing"));
        }
        for g in &group.elements {
            if !form.is_symplectic(g)? {
                return Err(internal(format!("{g:?} is not symplectic")));
            }
        }
        for g in &group.elements {
            for s in &group.generators {
                if group.index_of(&g.mul_unchecked(s)).is_none() {
                    return Err(internal("element listing is not closed under its generators"));
                }
            }
        }
        Ok(group)
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    pub fn matrix_size(&self) -> usize {
        self.form.dim()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[BitMatrix] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> &BitMatrix {
        &self.elements[i]
    }

    #[inline]
    pub fn index_of(&self, m: &BitMatrix) -> Option<usize> {
        self.index.get(&m.key()).map(|&i| i as usize)
    }

    pub fn generators(&self) -> &[BitMatrix] {
        &self.generators
    }

    /// A generating set used for conjugation orbits; possibly shorter than
    /// [`generators`](Self::generators).
    pub fn conjugators(&self) -> &[BitMatrix] {
        &self.conjugators
    }

    /// Replaces the conjugation generating set after checking that it
    /// generates the whole group.
    pub fn set_conjugators(&mut self, conjugators: Vec<BitMatrix>) -> Result<()> {
        let mut seen = vec![false; self.order()];
        seen[self.identity_index] = true;
        let mut queue = vec![self.identity_index];
        let tables: Vec<_> = conjugators.iter().map(BitMatrix::row_table).collect();
        let mut head = 0;
        while head < queue.len() {
            let g = self.elements[queue[head]];
            head += 1;
            for t in &tables {
                let j = self
                    .index_of(&g.mul_table(t))
                    .ok_or_else(|| usage("conjugator outside the group"))?;
                if !seen[j] {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
        if queue.len() != self.order() {
            return Err(internal(format!(
                "conjugators generate only {} of {} elements",
                queue.len(),
                self.order()
            )));
        }
        self.conjugators = conjugators;
        Ok(())
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    #[inline]
    pub fn inverse(&self, m: &BitMatrix) -> BitMatrix {
        self.form.symplectic_inverse(m)
    }

    pub fn contains(&self, m: &BitMatrix) -> bool {
        self.index.contains_key(&m.key())
    }
}

/// All `2^{2g} − 1` symplectic transvections of the standard form.
pub fn transvections(form: &SymplecticForm) -> Vec<BitMatrix> {
    (1u8..(1u8 << form.dim()))
        .map(|v| form.transvection(v).expect("nonzero vector"))
        .collect()
}

/// Transvections along a Humphries-type chain, a short generating set of
/// `Sp(2g, 2)`: `f₁, e₁, f₁+f₂, e₂, f₂+f₃, e₃` (truncated to the genus) and `f₂`.
pub fn chain_transvections(form: &SymplecticForm) -> Vec<BitMatrix> {
    let g = form.genus();
    let e = |i: usize| 1u8 << i;
    let f = |i: usize| 1u8 << (g + i);
    let mut vectors = vec![f(0), e(0)];
    for i in 1..g {
        vectors.push(f(i - 1) | f(i));
        vectors.push(e(i));
    }
    if g >= 2 {
        vectors.push(f(1));
    }
    vectors.into_iter().map(|v| form.transvection(v).expect("nonzero vector")).collect()
}

/// Enumerates `Sp(2g, 2)` as the closure of its transvections.
pub fn enumerate_group(genus: usize) -> Result<FiniteMatrixGroup> {
    if !(1..=3).contains(&genus) {
        return Err(usage(format!("unsupported genus {genus}; expected 1, 2 or 3")));
    }
    let form = SymplecticForm::standard(genus)?;
    let expected = symplectic_order(genus);
    let mut group =
        FiniteMatrixGroup::generated_with_capacity(form, transvections(&form), expected as usize)?;
    if group.order() as u64 != expected {
        return Err(internal(format!(
            "Sp({}, 2) enumerated {} elements, expected {expected}",
            2 * genus,
            group.order()
        )));
    }
    group.set_conjugators(chain_transvections(&form))?;
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_formula() {
        assert_eq!(symplectic_order(1), 6);
        assert_eq!(symplectic_order(2), 720);
        assert_eq!(symplectic_order(3), 1_451_520);
    }

    #[test]
    fn small_groups_enumerate() {
        assert_eq!(enumerate_group(1).unwrap().order(), 6);
        let g2 = enumerate_group(2).unwrap();
        assert_eq!(g2.order(), 720);
        assert!(enumerate_group(0).is_err());
        assert!(enumerate_group(4).is_err());
    }

    #[test]
    fn genus_two_is_closed_with_inverses() {
        let g = enumerate_group(2).unwrap();
        let id = BitMatrix::identity(4).unwrap();
        assert_eq!(*g.element(g.identity_index()), id);
        for a in g.elements() {
            let inv = g.inverse(a);
            assert!(g.contains(&inv));
            assert_eq!(a * &inv, id);
            for b in g.elements().iter().step_by(37) {
                assert!(g.contains(&(a * b)));
            }
        }
    }

    #[test]
    fn from_elements_rejects_unclosed_listing() {
        let g = enumerate_group(1).unwrap();
        let mut partial = g.elements().to_vec();
        partial.pop();
        let gens = g.generators().to_vec();
        assert!(FiniteMatrixGroup::from_elements(*g.form(), partial, gens.clone()).is_err());
        assert!(FiniteMatrixGroup::from_elements(*g.form(), g.elements().to_vec(), gens).is_ok());
    }
}
