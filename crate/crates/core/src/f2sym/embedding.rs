//! Symmetric-group models of `Sp(2,2)` and `Sp(4,2)`, and the two block
//! subgroups of `Sp(6,2)` (plus the genus-2 wreath analogue inside `Sp(4,2)`).

use rustc_hash::FxHashMap;

use super::bitmatrix::{BitMatrix, SymplecticForm};
use super::classes::{conjugacy_classes, ConjugacyClassification};
use super::group::FiniteMatrixGroup;
use super::perm::Permutation;
use crate::error::{internal, usage, Result};

/// Nonzero vectors of F₂² in the order `e₁, f₁, e₁+f₁`.
const PLANE_POINTS: [u8; 3] = [0b01, 0b10, 0b11];

/// Even subsets of six points standing for `e₁, e₂, f₁, f₂`:
/// `{1,2}`, `{4,5}`, `{2,3}`, `{5,6}`. Pairing is `|A ∩ B| mod 2`; the
/// quotient by the full set is the 4-dimensional symplectic space.
const HEXAD_BASIS: [u8; 4] = [0b000011, 0b011000, 0b000110, 0b110000];

fn dot6(a: u8, b: u8) -> bool {
    (a & b).count_ones() & 1 == 1
}

fn hexad_coords(w: u8) -> Result<u8> {
    if !w.count_ones().is_multiple_of(2) {
        return Err(internal(format!("odd-weight vector {w:#08b} in the hexad model")));
    }
    // coefficient on eᵢ is w·fᵢ, on fᵢ is w·eᵢ
    let mut out = 0u8;
    for i in 0..2 {
        if dot6(w, HEXAD_BASIS[2 + i]) {
            out |= 1 << i;
        }
        if dot6(w, HEXAD_BASIS[i]) {
            out |= 1 << (2 + i);
        }
    }
    Ok(out)
}

fn permute_bits(w: u8, perm: &Permutation) -> u8 {
    (0..perm.degree()).filter(|&i| w >> i & 1 == 1).fold(0u8, |acc, i| acc | 1 << perm.apply(i))
}

/// The isomorphism `S₃ → Sp(2,2)` (genus 1) or `S₆ → Sp(4,2)` (genus 2).
///
/// Genus 1 permutes the three nonzero vectors of the plane. Genus 2 lets
/// `S₆` permute coordinates of the even-weight subspace of F₂⁶ modulo the
/// all-ones vector; a transposition `(ij)` becomes the transvection along
/// `{i,j}`.
pub fn perm_to_symplectic(genus: usize, perm: &Permutation) -> Result<BitMatrix> {
    match (genus, perm.degree()) {
        (1, 3) => BitMatrix::from_rows(&[
            PLANE_POINTS[perm.apply(0)],
            PLANE_POINTS[perm.apply(1)],
        ]),
        (2, 6) => {
            let rows = HEXAD_BASIS
                .iter()
                .map(|&b| hexad_coords(permute_bits(b, perm)))
                .collect::<Result<Vec<u8>>>()?;
            BitMatrix::from_rows(&rows)
        }
        _ => Err(usage(format!(
            "no permutation model for genus {genus} on {} points",
            perm.degree()
        ))),
    }
}

/// The full image table of [`perm_to_symplectic`], with reverse lookup.
#[derive(Clone, Debug)]
pub struct SymmetricModel {
    genus: usize,
    perms: Vec<Permutation>,
    matrices: Vec<BitMatrix>,
    by_key: FxHashMap<u64, usize>,
}

impl SymmetricModel {
    pub fn new(genus: usize) -> Result<Self> {
        let degree = match genus {
            1 => 3,
            2 => 6,
            _ => return Err(usage(format!("no symmetric model for genus {genus}"))),
        };
        let form = SymplecticForm::standard(genus)?;
        let perms = Permutation::all(degree);
        let matrices = perms
            .iter()
            .map(|p| perm_to_symplectic(genus, p))
            .collect::<Result<Vec<_>>>()?;
        let mut by_key = FxHashMap::default();
        for (i, m) in matrices.iter().enumerate() {
            if !form.is_symplectic(m)? {
                return Err(internal(format!("image of {} is not symplectic", perms[i])));
            }
            if by_key.insert(m.key(), i).is_some() {
                return Err(internal("permutation model is not injective"));
            }
        }
        let model = SymmetricModel { genus, perms, matrices, by_key };
        let mut gens = vec![Permutation::from_cycles(degree, &[&[1, 2]])?];
        gens.push(Permutation::from_cycles(degree, &[&(1..=degree).collect::<Vec<_>>()])?);
        for a in &gens {
            for b in &gens {
                model.check_product(a, b)?;
            }
        }
        Ok(model)
    }

    /// Checks `φ(a·b) = φ(a)·φ(b)` for one pair.
    pub fn check_product(&self, a: &Permutation, b: &Permutation) -> Result<()> {
        let lhs = self.matrix_of(&a.then(b))?;
        let rhs = self.matrix_of(a)?.mul_unchecked(&self.matrix_of(b)?);
        if lhs != rhs {
            return Err(internal(format!("model fails to be multiplicative at ({a}, {b})")));
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        if self.genus == 1 {
            3
        } else {
            6
        }
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn matrix_of(&self, perm: &Permutation) -> Result<BitMatrix> {
        perm_to_symplectic(self.genus, perm)
    }

    pub fn permutation_of(&self, m: &BitMatrix) -> Option<&Permutation> {
        self.by_key.get(&m.key()).map(|&i| &self.perms[i])
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

/// Structured label of a subgroup member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoration {
    /// Element indices in the `Sp(4,2)` and `Sp(2,2)` factor groups.
    Product { left: usize, right: usize },
    /// `top` permutes the symplectic planes; `base[i]` (an `Sp(2,2)` index)
    /// acts on plane `i` before the planes are moved.
    Wreath { top: Permutation, base: Vec<usize> },
}

/// A subgroup of an ambient symplectic group together with its own class
/// structure and the fusion of its classes into the ambient classes.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    subgroup: FiniteMatrixGroup,
    classes: ConjugacyClassification,
    members: Vec<usize>,
    decoration: Vec<Decoration>,
    fusion: Vec<usize>,
    ambient_order: u64,
    ambient_fingerprint: u64,
}

impl SubgroupEmbedding {
    pub fn subgroup(&self) -> &FiniteMatrixGroup {
        &self.subgroup
    }

    pub fn classes(&self) -> &ConjugacyClassification {
        &self.classes
    }

    /// Ambient element index of each subgroup element.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn decoration(&self, element: usize) -> &Decoration {
        &self.decoration[element]
    }

    pub fn fusion(&self) -> &[usize] {
        &self.fusion
    }

    pub fn ambient_order(&self) -> u64 {
        self.ambient_order
    }

    pub fn ambient_fingerprint(&self) -> u64 {
        self.ambient_fingerprint
    }

    pub fn index(&self) -> u64 {
        self.ambient_order / self.subgroup.order() as u64
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }
}

type Block<'a> = (&'a [usize], &'a BitMatrix, &'a [usize]);

/// Places each block's matrix so that the basis vector at `src[l]` maps into
/// the span of the basis vectors at `dst`.
fn place(dim: usize, blocks: &[Block<'_>]) -> Result<BitMatrix> {
    let mut rows = vec![0u8; dim];
    for (src, m, dst) in blocks {
        for (l, &s) in src.iter().enumerate() {
            let local = m.row(l);
            rows[s] = dst
                .iter()
                .enumerate()
                .filter(|&(k, _)| local >> k & 1 == 1)
                .fold(0u8, |acc, (_, &d)| acc | 1 << d);
        }
    }
    BitMatrix::from_rows(&rows)
}

/// For each subgroup class, the ambient class containing it.
pub fn class_fusion(
    subgroup: &FiniteMatrixGroup,
    sub_classes: &ConjugacyClassification,
    members: &[usize],
    ambient_classes: &ConjugacyClassification,
) -> Result<Vec<usize>> {
    let mut fusion = vec![usize::MAX; sub_classes.class_count()];
    let mut covered = 0u64;
    for (h, &g) in members.iter().enumerate().take(subgroup.order()) {
        let c = sub_classes.class_of(h);
        let target = ambient_classes.class_of(g);
        if fusion[c] == usize::MAX {
            fusion[c] = target;
        } else if fusion[c] != target {
            return Err(internal(format!(
                "subgroup class {c} straddles ambient classes {} and {target}",
                fusion[c]
            )));
        }
        covered += 1;
    }
    if covered != subgroup.order() as u64 || fusion.contains(&usize::MAX) {
        return Err(internal("fusion map incomplete"));
    }
    Ok(fusion)
}

fn finish_embedding(
    ambient: &FiniteMatrixGroup,
    ambient_classes: &ConjugacyClassification,
    generators: Vec<BitMatrix>,
    decorated: Vec<(BitMatrix, Decoration)>,
) -> Result<SubgroupEmbedding> {
    let subgroup = FiniteMatrixGroup::generated_by(*ambient.form(), generators)?;
    if subgroup.order() != decorated.len() {
        return Err(internal(format!(
            "generated subgroup has {} elements but {} were decorated",
            subgroup.order(),
            decorated.len()
        )));
    }
    let mut decoration: Vec<Option<Decoration>> = vec![None; subgroup.order()];
    let mut members = vec![0usize; subgroup.order()];
    for (m, dec) in decorated {
        let h = subgroup
            .index_of(&m)
            .ok_or_else(|| internal(format!("decorated member {dec:?} outside generated subgroup")))?;
        if decoration[h].is_some() {
            return Err(internal(format!("two decorations for one member: {dec:?}")));
        }
        members[h] = ambient
            .index_of(&m)
            .ok_or_else(|| internal("subgroup member outside the ambient group"))?;
        decoration[h] = Some(dec);
    }
    let decoration: Vec<Decoration> = decoration.into_iter().map(|d| d.expect("all set")).collect();
    let classes = conjugacy_classes(&subgroup);
    let fusion = class_fusion(&subgroup, &classes, &members, ambient_classes)?;
    Ok(SubgroupEmbedding {
        subgroup,
        classes,
        members,
        decoration,
        fusion,
        ambient_order: ambient.order() as u64,
        ambient_fingerprint: ambient_classes.fingerprint(),
    })
}

/// `Sp(4,2) × Sp(2,2)` inside `Sp(6,2)`, block diagonal on
/// `span(e₁,e₂,f₁,f₂) ⊕ span(e₃,f₃)`.
pub fn embed_product(
    ambient: &FiniteMatrixGroup,
    ambient_classes: &ConjugacyClassification,
    sp4: &FiniteMatrixGroup,
    sp2: &FiniteMatrixGroup,
) -> Result<SubgroupEmbedding> {
    if ambient.matrix_size() != 6 || sp4.matrix_size() != 4 || sp2.matrix_size() != 2 {
        return Err(usage("product embedding needs Sp(6,2), Sp(4,2) and Sp(2,2)"));
    }
    const FOUR: [usize; 4] = [0, 1, 3, 4];
    const TWO: [usize; 2] = [2, 5];
    let id4 = BitMatrix::identity(4)?;
    let id2 = BitMatrix::identity(2)?;
    let embed = |a: &BitMatrix, b: &BitMatrix| {
        place(6, &[(&FOUR[..], a, &FOUR[..]), (&TWO[..], b, &TWO[..])])
    };
    let mut generators = Vec::new();
    for s in sp4.generators() {
        generators.push(embed(s, &id2)?);
    }
    for s in sp2.generators() {
        generators.push(embed(&id4, s)?);
    }
    let mut decorated = Vec::with_capacity(sp4.order() * sp2.order());
    for (left, a) in sp4.elements().iter().enumerate() {
        for (right, b) in sp2.elements().iter().enumerate() {
            decorated.push((embed(a, b)?, Decoration::Product { left, right }));
        }
    }
    finish_embedding(ambient, ambient_classes, generators, decorated)
}

/// The matrix of the wreath element `(top, base)` acting on `genus` planes.
pub fn wreath_matrix(
    genus: usize,
    top: &Permutation,
    base: &[&BitMatrix],
) -> Result<BitMatrix> {
    if top.degree() != genus || base.len() != genus {
        return Err(usage("wreath element shape does not match the number of planes"));
    }
    let planes: Vec<[usize; 2]> = (0..genus).map(|i| [i, i + genus]).collect();
    let blocks: Vec<Block<'_>> = (0..genus)
        .map(|i| (&planes[i][..], base[i], &planes[top.apply(i)][..]))
        .collect();
    place(2 * genus, &blocks)
}

/// `S_g ⋉ Sp(2,2)^g` inside `Sp(2g,2)` for `g ∈ {2,3}`: permutations of the
/// planes `span(eᵢ,fᵢ)` composed with a plane-wise `Sp(2,2)` action.
pub fn embed_wreath(
    ambient: &FiniteMatrixGroup,
    ambient_classes: &ConjugacyClassification,
    sp2: &FiniteMatrixGroup,
) -> Result<SubgroupEmbedding> {
    let genus = ambient.form().genus();
    if !(2..=3).contains(&genus) || sp2.matrix_size() != 2 {
        return Err(usage("wreath embedding needs Sp(4,2) or Sp(6,2) and Sp(2,2)"));
    }
    let id2 = BitMatrix::identity(2)?;
    let identity_top = Permutation::identity(genus);
    let mut generators = Vec::new();
    for i in 0..genus {
        for s in sp2.generators() {
            let base: Vec<&BitMatrix> = (0..genus).map(|j| if j == i { s } else { &id2 }).collect();
            generators.push(wreath_matrix(genus, &identity_top, &base)?);
        }
    }
    for i in 0..genus - 1 {
        let swap = Permutation::from_cycles(genus, &[&[i + 1, i + 2]])?;
        generators.push(wreath_matrix(genus, &swap, &vec![&id2; genus])?);
    }

    let sp2_order = sp2.order();
    let base_count = sp2_order.pow(genus as u32);
    let mut decorated = Vec::new();
    for top in Permutation::all(genus) {
        for code in 0..base_count {
            let base: Vec<usize> =
                (0..genus).map(|i| code / sp2_order.pow(i as u32) % sp2_order).collect();
            let mats: Vec<&BitMatrix> = base.iter().map(|&b| sp2.element(b)).collect();
            let m = wreath_matrix(genus, &top, &mats)?;
            decorated.push((m, Decoration::Wreath { top: top.clone(), base }));
        }
    }
    finish_embedding(ambient, ambient_classes, generators, decorated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2sym::group::enumerate_group;
    use rand::{Rng, SeedableRng};

    #[test]
    fn genus_one_model_is_exhaustively_multiplicative() {
        let model = SymmetricModel::new(1).unwrap();
        assert_eq!(model.len(), 6);
        let perms = model.permutations().to_vec();
        for a in &perms {
            for b in &perms {
                model.check_product(a, b).unwrap();
            }
        }
        assert!(model.matrix_of(&Permutation::identity(3)).unwrap().is_identity());
        let three = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let two = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(model.matrix_of(&three).unwrap().element_order(), 3);
        assert_eq!(model.matrix_of(&two).unwrap().element_order(), 2);
    }

    #[test]
    fn genus_two_model_is_multiplicative_on_samples() {
        let model = SymmetricModel::new(2).unwrap();
        assert_eq!(model.len(), 720);
        let perms = model.permutations();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let a = &perms[rng.gen_range(0..720)];
            let b = &perms[rng.gen_range(0..720)];
            model.check_product(a, b).unwrap();
        }
        assert!(model.matrix_of(&Permutation::identity(6)).unwrap().is_identity());
    }

    #[test]
    fn transpositions_form_one_class_of_fifteen() {
        let g = enumerate_group(2).unwrap();
        let c = conjugacy_classes(&g);
        let model = SymmetricModel::new(2).unwrap();
        let form = SymplecticForm::standard(2).unwrap();
        let mut classes = std::collections::BTreeSet::new();
        for p in model.permutations().iter().filter(|p| p.cycle_type() == [2, 1, 1, 1, 1]) {
            let m = model.matrix_of(p).unwrap();
            // transpositions are transvections
            assert_eq!(m.fixed_space_dim(), 3);
            assert!(form.is_symplectic(&m).unwrap());
            classes.insert(c.class_of(g.index_of(&m).unwrap()));
        }
        assert_eq!(classes.len(), 1);
        assert_eq!(c.class_size(*classes.iter().next().unwrap()), 15);
    }

    #[test]
    fn s6_class_sizes_survive_transport() {
        let g = enumerate_group(2).unwrap();
        let c = conjugacy_classes(&g);
        let model = SymmetricModel::new(2).unwrap();
        let mut by_type: std::collections::BTreeMap<Vec<usize>, (usize, std::collections::BTreeSet<usize>)> =
            Default::default();
        for p in model.permutations() {
            let m = model.matrix_of(p).unwrap();
            let e = by_type.entry(p.cycle_type()).or_default();
            e.0 += 1;
            e.1.insert(c.class_of(g.index_of(&m).unwrap()));
        }
        assert_eq!(by_type.len(), 11);
        for (count, classes) in by_type.values() {
            assert_eq!(classes.len(), 1);
            assert_eq!(c.class_size(*classes.iter().next().unwrap()), *count as u64);
        }
    }

    #[test]
    fn odd_weight_vectors_are_rejected() {
        assert!(hexad_coords(0b000001).is_err());
        assert!(perm_to_symplectic(3, &Permutation::identity(6)).is_err());
        assert!(perm_to_symplectic(2, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn genus_two_wreath_has_order_72() {
        let g4 = enumerate_group(2).unwrap();
        let c4 = conjugacy_classes(&g4);
        let g2 = enumerate_group(1).unwrap();
        let w = embed_wreath(&g4, &c4, &g2).unwrap();
        assert_eq!(w.order(), 72);
        assert_eq!(w.index(), 10);
        let total: u64 = w.classes().class_sizes().iter().sum();
        assert_eq!(total, 72);
        let form = SymplecticForm::standard(2).unwrap();
        for m in w.subgroup().elements() {
            assert!(form.is_symplectic(m).unwrap());
        }
    }
}
