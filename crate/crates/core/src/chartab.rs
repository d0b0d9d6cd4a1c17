//! Character tables of small matrix groups, computed by Dixon–Schneider
//! over a prime field and lifted to the integers.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{internal, usage, Error, Result};
use crate::f2sym::{ConjugacyClassification, FiniteMatrixGroup, SubgroupEmbedding};
use crate::modp::{is_prime, PrimeField};

/// The per-class data a class function needs: sizes, inverse classes and
/// element orders, tagged by the classification fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub fingerprint: u64,
    pub order: u64,
    pub sizes: Vec<u64>,
    pub inverse: Vec<usize>,
    pub element_orders: Vec<u32>,
}

impl ClassData {
    pub fn of(classes: &ConjugacyClassification) -> Arc<ClassData> {
        let r = classes.class_count();
        Arc::new(ClassData {
            fingerprint: classes.fingerprint(),
            order: classes.group_order(),
            sizes: classes.class_sizes().to_vec(),
            inverse: (0..r).map(|c| classes.inverse_class(c)).collect(),
            element_orders: (0..r).map(|c| classes.element_order(c)).collect(),
        })
    }

    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }
}

/// Integer-valued function on conjugacy classes.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<ClassData>,
    values: Vec<i64>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.fingerprint == other.group.fingerprint && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassFunction{:?}", self.values)
    }
}

impl ClassFunction {
    pub fn new(group: Arc<ClassData>, values: Vec<i64>) -> Result<Self> {
        if values.len() != group.class_count() {
            return Err(usage(format!(
                "{} values given for {} classes",
                values.len(),
                group.class_count()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn trivial(group: Arc<ClassData>) -> Self {
        let values = vec![1; group.class_count()];
        ClassFunction { group, values }
    }

    /// Character of the regular representation.
    pub fn regular(group: Arc<ClassData>) -> Self {
        let mut values = vec![0; group.class_count()];
        values[0] = group.order as i64;
        ClassFunction { group, values }
    }

    pub fn zero(group: Arc<ClassData>) -> Self {
        let values = vec![0; group.class_count()];
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &Arc<ClassData> {
        &self.group
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, class: usize) -> i64 {
        self.values[class]
    }

    /// Value at the identity class.
    pub fn degree(&self) -> i64 {
        self.values[0]
    }

    fn same_group(&self, other: &ClassFunction) -> Result<()> {
        if self.group.fingerprint != other.group.fingerprint {
            return Err(usage("class functions live on different groups"));
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn scale(&self, k: i64) -> ClassFunction {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// `(1/|G|) Σ_c |C_c| χ(c) ψ(c⁻¹)`.
pub fn inner_product(chi: &ClassFunction, psi: &ClassFunction) -> Result<Ratio<i128>> {
    chi.same_group(psi)?;
    let g = &chi.group;
    let sum: i128 = (0..g.class_count())
        .map(|c| g.sizes[c] as i128 * chi.values[c] as i128 * psi.values[g.inverse[c]] as i128)
        .sum();
    Ok(Ratio::new(sum, g.order as i128))
}

/// Name of an irreducible: its degree and a distinguishing letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel {
    pub dimension: u64,
    pub letter: char,
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.dimension, self.letter)
    }
}

impl std::str::FromStr for IrrepLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches("phi").trim_start_matches('φ').trim_start_matches('_');
        let split = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
        let (digits, rest) = s.split_at(split);
        let mut chars = rest.chars();
        match (digits.parse::<u64>(), chars.next(), chars.next()) {
            (Ok(dimension), Some(letter), None) if letter.is_ascii_lowercase() => {
                Ok(IrrepLabel { dimension, letter })
            }
            _ => Err(usage(format!("cannot parse irreducible label {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<ClassData>,
    irreducibles: Vec<ClassFunction>,
    labels: Vec<IrrepLabel>,
}

impl CharacterTable {
    /// Assembles a table from integer rows, sorting them canonically and
    /// checking orthogonality exactly.
    pub fn from_rows(group: Arc<ClassData>, rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = group.class_count();
        if rows.len() != r {
            return Err(internal(format!("{} irreducibles for {} classes", rows.len(), r)));
        }
        let mut rows = rows;
        // by degree, then value vectors in decreasing lexicographic order
        rows.sort_by(|a, b| a[0].cmp(&b[0]).then_with(|| b.cmp(a)));
        let irreducibles = rows
            .into_iter()
            .map(|v| ClassFunction::new(group.clone(), v))
            .collect::<Result<Vec<_>>>()?;
        let table = CharacterTable {
            labels: canonical_labels_of(&irreducibles),
            group,
            irreducibles,
        };
        table.verify()?;
        Ok(table)
    }

    pub fn group(&self) -> &Arc<ClassData> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn labels(&self) -> &[IrrepLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles.iter().map(|c| c.degree() as u64).collect()
    }

    pub fn position(&self, label: &IrrepLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Row and column orthogonality, exactly.
    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        let r = g.class_count();
        let order = g.order as i128;
        for i in 0..r {
            for j in i..r {
                let s: i128 = (0..r)
                    .map(|c| {
                        g.sizes[c] as i128
                            * self.irreducibles[i].values[c] as i128
                            * self.irreducibles[j].values[g.inverse[c]] as i128
                    })
                    .sum();
                let expected = if i == j { order } else { 0 };
                if s != expected {
                    return Err(internal(format!("row orthogonality fails for rows {i}, {j}")));
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                let s: i128 = self
                    .irreducibles
                    .iter()
                    .map(|x| x.values[a] as i128 * x.values[g.inverse[b]] as i128)
                    .sum();
                let expected = if a == b { order / g.sizes[a] as i128 } else { 0 };
                if s != expected {
                    return Err(internal(format!("column orthogonality fails for classes {a}, {b}")));
                }
            }
        }
        let squares: u128 = self.degrees().iter().map(|&d| (d as u128) * (d as u128)).sum();
        if squares != g.order as u128 {
            return Err(internal("sum of squared degrees differs from the group order"));
        }
        Ok(())
    }
}

/// Labels rows already in canonical order.
fn canonical_labels_of(rows: &[ClassFunction]) -> Vec<IrrepLabel> {
    let mut labels: Vec<IrrepLabel> = Vec::with_capacity(rows.len());
    for row in rows {
        let dimension = row.degree() as u64;
        let letter = match labels.last() {
            Some(prev) if prev.dimension == dimension => (prev.letter as u8 + 1) as char,
            _ => 'a',
        };
        labels.push(IrrepLabel { dimension, letter });
    }
    labels
}

/// Labels for the table's rows.
pub fn canonical_labels(table: &CharacterTable) -> Vec<IrrepLabel> {
    canonical_labels_of(&table.irreducibles)
}

/// Class multiplication coefficients `a[i][j][k]`: the number of pairs
/// `(x, y) ∈ Cᵢ × Cⱼ` with `xy = z` for the representative `z` of `C_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMultiplication {
    r: usize,
    data: Vec<u64>,
}

impl ClassMultiplication {
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.r + j) * self.r + k]
    }

    pub fn class_count(&self) -> usize {
        self.r
    }
}

pub fn class_mult_coefficients(
    group: &FiniteMatrixGroup,
    classes: &ConjugacyClassification,
) -> ClassMultiplication {
    let r = classes.class_count();
    let mut data = vec![0u64; r * r * r];
    for k in 0..r {
        let z = group.element(classes.representative(k));
        // x = z·u, y = u⁻¹ runs over every factorisation of z exactly once
        for (ui, u) in group.elements().iter().enumerate() {
            let x = z.mul_unchecked(u);
            let i = classes.class_of(group.index_of(&x).expect("closed"));
            let j = classes.inverse_class(classes.class_of(ui));
            data[(i * r + j) * r + k] += 1;
        }
    }
    ClassMultiplication { r, data }
}

/// Smallest prime `p ≡ 1 (mod exponent)` exceeding `bound`.
fn next_admissible_prime(exponent: u64, bound: u64) -> u64 {
    let mut p = bound / exponent * exponent + 1;
    while p <= bound || !is_prime(p) {
        p += exponent;
    }
    p
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Attempts allowed before giving up on finding a good prime.
const PRIME_ATTEMPTS: usize = 8;

pub fn dixon_schneider(
    group: &FiniteMatrixGroup,
    classes: &ConjugacyClassification,
) -> Result<CharacterTable> {
    let coeffs = class_mult_coefficients(group, classes);
    dixon_schneider_from(classes, &coeffs)
}

/// Dixon–Schneider on precomputed class multiplication coefficients.
pub fn dixon_schneider_from(
    classes: &ConjugacyClassification,
    coeffs: &ClassMultiplication,
) -> Result<CharacterTable> {
    let data = ClassData::of(classes);
    let exponent = classes.exponent();
    let mut p = next_admissible_prime(exponent, 2 * isqrt(data.order) + 1);
    let mut last_err = None;
    for _ in 0..PRIME_ATTEMPTS {
        match dixon_at_prime(&data, coeffs, PrimeField::new(p)) {
            Ok(rows) => return CharacterTable::from_rows(data, rows),
            Err(e) => {
                log::warn!("character table computation failed mod {p}: {e}; retrying");
                last_err = Some(e);
            }
        }
        p = next_admissible_prime(exponent, p);
    }
    Err(last_err.unwrap_or_else(|| internal("no admissible prime found")))
}

struct Subspace {
    /// Reduced row echelon basis.
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn dixon_at_prime(
    data: &ClassData,
    coeffs: &ClassMultiplication,
    f: PrimeField,
) -> Result<Vec<Vec<i64>>> {
    let r = data.class_count();
    let identity_rows: Vec<Vec<u64>> =
        (0..r).map(|i| (0..r).map(|k| u64::from(i == k)).collect()).collect();
    let mut spaces = vec![Subspace { basis: identity_rows, pivots: (0..r).collect() }];

    for j in 1..r {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.basis.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split(&space, j, coeffs, f)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.basis.len() != 1) {
        return Err(internal("class matrices failed to separate all eigenspaces"));
    }

    let size_inv: Vec<u64> = data.sizes.iter().map(|&s| f.inv(s % f.modulus())).collect();
    let order_mod = data.order % f.modulus();
    let mut rows = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space.basis[0];
        if v[0] == 0 {
            return Err(internal("central character vanishes on the identity"));
        }
        let norm = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, norm)).collect();
        let s = (0..r).fold(0u64, |acc, k| {
            f.add(acc, f.mul(f.mul(w[k], w[data.inverse[k]]), size_inv[k]))
        });
        if s == 0 {
            return Err(internal("degenerate norm in degree recovery"));
        }
        let d_sq = f.mul(order_mod, f.inv(s));
        let limit = isqrt(data.order);
        let d = (1..=limit)
            .find(|&d| data.order.is_multiple_of(d) && f.mul(d % f.modulus(), d % f.modulus()) == d_sq)
            .ok_or_else(|| internal("no admissible degree for a central character"))?;
        let row: Vec<i64> = (0..r).map(|k| f.lift(f.mul(f.mul(w[k], d), size_inv[k]))).collect();
        rows.push(row);
    }
    Ok(rows)
}

/// Splits `space` into eigenspaces of the class matrix `M_j[i][k] = a[i][j][k]`.
fn split(
    space: &Subspace,
    j: usize,
    coeffs: &ClassMultiplication,
    f: PrimeField,
) -> Result<Vec<Subspace>> {
    let r = coeffs.class_count();
    let d = space.basis.len();
    // images of basis vectors, then their coordinates read off at the pivots
    let images: Vec<Vec<u64>> = space
        .basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|i| {
                    (0..r).fold(0u64, |acc, k| {
                        if b[k] == 0 {
                            acc
                        } else {
                            f.add(acc, f.mul(coeffs.get(i, j, k) % f.modulus(), b[k]))
                        }
                    })
                })
                .collect()
        })
        .collect();
    // restricted[m][l]: coordinate m of the image of basis vector l
    let restricted: Vec<Vec<u64>> =
        (0..d).map(|m| (0..d).map(|l| images[l][space.pivots[m]]).collect()).collect();
    let poly = f.char_poly(&restricted);
    let roots = f.roots(&poly);
    let mut out = Vec::with_capacity(roots.len());
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|m| {
                (0..d)
                    .map(|l| if m == l { f.sub(restricted[m][l], lambda) } else { restricted[m][l] })
                    .collect()
            })
            .collect();
        let kernel = f.nullspace(&shifted);
        let mut basis: Vec<Vec<u64>> = kernel
            .iter()
            .map(|u| {
                (0..r)
                    .map(|c| {
                        (0..d).fold(0u64, |acc, l| f.add(acc, f.mul(u[l], space.basis[l][c])))
                    })
                    .collect()
            })
            .collect();
        let pivots = f.rref(&mut basis);
        total += basis.len();
        out.push(Subspace { basis, pivots });
    }
    if total != d {
        return Err(internal(format!("class matrix {j} is not split mod {}", f.modulus())));
    }
    Ok(out)
}

/// Restriction along an embedding.
pub fn restrict(embedding: &SubgroupEmbedding, psi: &ClassFunction) -> Result<ClassFunction> {
    if psi.group.fingerprint != embedding.ambient_fingerprint() {
        return Err(usage("class function is not on the ambient group"));
    }
    let sub = ClassData::of(embedding.classes());
    let values = embedding.fusion().iter().map(|&c| psi.values[c]).collect();
    ClassFunction::new(sub, values)
}

/// Induction along an embedding. `ambient` must describe the embedding's
/// ambient classification.
pub fn induce(
    embedding: &SubgroupEmbedding,
    chi: &ClassFunction,
    ambient: &Arc<ClassData>,
) -> Result<ClassFunction> {
    let sub = embedding.classes();
    if chi.group.fingerprint != sub.fingerprint() {
        return Err(usage("class function is not on the embedded subgroup"));
    }
    if ambient.fingerprint != embedding.ambient_fingerprint() {
        return Err(usage("ambient class data does not match the embedding"));
    }
    let fusion = embedding.fusion();
    if fusion.len() != sub.class_count() || fusion.iter().any(|&c| c >= ambient.class_count()) {
        return Err(internal("fusion map incomplete"));
    }
    let mut sums = vec![0i128; ambient.class_count()];
    for (c, &big) in fusion.iter().enumerate() {
        sums[big] += sub.class_size(c) as i128 * chi.values[c] as i128;
    }
    let h = sub.group_order() as i128;
    let g = ambient.order as i128;
    let values = sums
        .iter()
        .enumerate()
        .map(|(c, &s)| {
            let num = g * s;
            let den = h * ambient.sizes[c] as i128;
            if num % den != 0 {
                return Err(internal(format!("induced value on class {c} is not an integer")));
            }
            Ok((num / den) as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    ClassFunction::new(ambient.clone(), values)
}

/// Integer coordinates of a virtual character in the irreducible basis.
pub fn multiplicities(chi: &ClassFunction, table: &CharacterTable) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(table.len());
    for irr in &table.irreducibles {
        let m = inner_product(chi, irr)?;
        if !m.is_integer() {
            return Err(internal(format!("non-integral multiplicity {m}")));
        }
        out.push(m.to_integer() as i64);
    }
    let mut rebuilt = ClassFunction::zero(table.group.clone());
    for (m, irr) in out.iter().zip(&table.irreducibles) {
        rebuilt = rebuilt.add(&irr.scale(*m))?;
    }
    if rebuilt.values != chi.values {
        return Err(internal("class function is not in the span of the irreducibles"));
    }
    Ok(out)
}

/// Multiplicities of a genuine character; fails on negative coefficients.
pub fn decompose(chi: &ClassFunction, table: &CharacterTable) -> Result<Vec<u64>> {
    let m = multiplicities(chi, table)?;
    if let Some(i) = m.iter().position(|&x| x < 0) {
        return Err(internal(format!(
            "negative multiplicity {} of {}: not a character",
            m[i], table.labels[i]
        )));
    }
    Ok(m.into_iter().map(|x| x as u64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2sym::{conjugacy_classes, enumerate_group};

    #[test]
    fn admissible_primes() {
        assert_eq!(next_admissible_prime(2520, 2 * isqrt(1451520) + 1), 2521);
        assert_eq!(next_admissible_prime(6, 5), 7);
        assert_eq!(isqrt(1451520), 1204);
    }

    #[test]
    fn s3_coefficients_match_brute_force() {
        let g = enumerate_group(1).unwrap();
        let c = conjugacy_classes(&g);
        let a = class_mult_coefficients(&g, &c);
        let n = g.order();
        for k in 0..3 {
            let z = g.element(c.representative(k));
            for i in 0..3 {
                for j in 0..3 {
                    let mut count = 0;
                    for x in 0..n {
                        for y in 0..n {
                            if c.class_of(x) == i
                                && c.class_of(y) == j
                                && &(g.element(x) * g.element(y)) == z
                            {
                                count += 1;
                            }
                        }
                    }
                    assert_eq!(a.get(i, j, k), count, "a[{i}][{j}][{k}]");
                }
            }
        }
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(a.get(0, j, k), u64::from(j == k));
            }
        }
    }

    #[test]
    fn coefficients_do_not_depend_on_representative() {
        let g = enumerate_group(2).unwrap();
        let c = conjugacy_classes(&g);
        let a = class_mult_coefficients(&g, &c);
        let r = c.class_count();
        for k in 0..r {
            let members = c.members(k);
            let z = g.element(*members.last().unwrap());
            let mut counts = vec![0u64; r * r];
            for (ui, u) in g.elements().iter().enumerate() {
                let x = z * u;
                let i = c.class_of(g.index_of(&x).unwrap());
                let j = c.inverse_class(c.class_of(ui));
                counts[i * r + j] += 1;
            }
            for i in 0..r {
                for j in 0..r {
                    assert_eq!(a.get(i, j, k), counts[i * r + j]);
                }
                let row: u64 = (0..r).map(|j| a.get(i, j, k)).sum();
                assert_eq!(row, c.class_size(i));
            }
        }
    }

    #[test]
    fn s3_table() {
        let g = enumerate_group(1).unwrap();
        let c = conjugacy_classes(&g);
        let t = dixon_schneider(&g, &c).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        // classes ordered (id, order 2, order 3)
        assert_eq!(t.irreducibles()[2].values(), &[2, 0, -1]);
        assert_eq!(t.irreducibles()[0].values(), &[1, 1, 1]);
        assert_eq!(t.labels()[0].to_string(), "1a");
        assert_eq!(t.labels()[1].to_string(), "1b");
        assert_eq!(t.labels()[2].to_string(), "2a");
    }

    #[test]
    fn sp4_degrees() {
        let g = enumerate_group(2).unwrap();
        let c = conjugacy_classes(&g);
        let t = dixon_schneider(&g, &c).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16]);
    }

    #[test]
    fn inner_products_and_decomposition() {
        let g = enumerate_group(2).unwrap();
        let c = conjugacy_classes(&g);
        let t = dixon_schneider(&g, &c).unwrap();
        let data = t.group().clone();
        let triv = ClassFunction::trivial(data.clone());
        assert_eq!(inner_product(&triv, &triv).unwrap(), Ratio::from_integer(1));
        let reg = ClassFunction::regular(data);
        let degrees: Vec<u64> = t.degrees();
        assert_eq!(decompose(&reg, &t).unwrap(), degrees);
        for (i, irr) in t.irreducibles().iter().enumerate() {
            let mut unit = vec![0u64; t.len()];
            unit[i] = 1;
            assert_eq!(decompose(irr, &t).unwrap(), unit);
            assert_eq!(
                inner_product(&reg, irr).unwrap(),
                Ratio::from_integer(irr.degree() as i128)
            );
        }
        let virtual_char = t.irreducibles()[1].scale(-1);
        assert!(decompose(&virtual_char, &t).is_err());
        assert_eq!(multiplicities(&virtual_char, &t).unwrap()[1], -1);
    }

    #[test]
    fn group_mismatch_is_usage_error() {
        let g1 = enumerate_group(1).unwrap();
        let g2 = enumerate_group(2).unwrap();
        let a = ClassFunction::trivial(ClassData::of(&conjugacy_classes(&g1)));
        let b = ClassFunction::trivial(ClassData::of(&conjugacy_classes(&g2)));
        assert!(matches!(inner_product(&a, &b), Err(Error::Usage(_))));
    }

    #[test]
    fn label_parsing() {
        let l: IrrepLabel = "phi_105b".parse().unwrap();
        assert_eq!(l, IrrepLabel { dimension: 105, letter: 'b' });
        assert_eq!("512a".parse::<IrrepLabel>().unwrap().to_string(), "512a");
        assert!("abc".parse::<IrrepLabel>().is_err());
        assert!("12".parse::<IrrepLabel>().is_err());
    }
}
