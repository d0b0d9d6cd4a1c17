//! Square matrices over F₂ of size 2, 4 or 6, stored as packed rows.
//!
//! Vectors are `u8` bit masks; bit `i` is the coordinate on the `i`-th basis
//! vector in the order `(e₁,…,e_g,f₁,…,f_g)`. Matrices act on row vectors from
//! the right: row `i` of a matrix is the image of basis vector `i`, and
//! `x·(AB) = (x·A)·B`.

use std::fmt;
use std::ops::Mul;

use crate::error::{usage, Result};

const MAX_SIZE: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    size: u8,
    rows: [u8; MAX_SIZE],
}

fn check_size(size: usize) -> Result<()> {
    match size {
        2 | 4 | 6 => Ok(()),
        _ => Err(usage(format!("matrix size {size} not in {{2,4,6}}"))),
    }
}

#[inline]
fn parity(x: u8) -> bool {
    x.count_ones() & 1 == 1
}

impl BitMatrix {
    pub fn identity(size: usize) -> Result<Self> {
        check_size(size)?;
        let mut rows = [0u8; MAX_SIZE];
        for (i, r) in rows.iter_mut().enumerate().take(size) {
            *r = 1 << i;
        }
        Ok(BitMatrix { size: size as u8, rows })
    }

    pub fn from_rows(rows: &[u8]) -> Result<Self> {
        let size = rows.len();
        check_size(size)?;
        let mask = ((1u16 << size) - 1) as u8;
        let mut packed = [0u8; MAX_SIZE];
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(usage(format!("row {i} has bits beyond column {}", size - 1)));
            }
            packed[i] = r;
        }
        Ok(BitMatrix { size: size as u8, rows: packed })
    }

    /// Builds a matrix from a dense 0/1 array, `entries[i][j]` being row `i`, column `j`.
    pub fn from_entries(entries: &[Vec<u8>]) -> Result<Self> {
        let rows: Vec<u8> = entries
            .iter()
            .map(|row| row.iter().enumerate().fold(0u8, |acc, (j, &b)| acc | ((b & 1) << j)))
            .collect();
        if entries.iter().any(|r| r.len() != entries.len()) {
            return Err(usage("matrix entries are not square"));
        }
        Self::from_rows(&rows)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size as usize
    }

    #[inline]
    pub fn row(&self, i: usize) -> u8 {
        self.rows[i]
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows[..self.size()]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Row-major bit concatenation; row 0 occupies the most significant bits.
    #[inline]
    pub fn key(&self) -> u64 {
        let n = self.size();
        self.rows[..n].iter().fold(0u64, |acc, &r| (acc << n) | r as u64)
    }

    pub fn from_key(size: usize, key: u64) -> Result<Self> {
        check_size(size)?;
        if size * size < 64 && key >> (size * size) != 0 {
            return Err(usage(format!("key {key:#x} too wide for size {size}")));
        }
        let mask = (1u64 << size) - 1;
        let mut rows = [0u8; MAX_SIZE];
        for i in 0..size {
            rows[i] = ((key >> (size * (size - 1 - i))) & mask) as u8;
        }
        Ok(BitMatrix { size: size as u8, rows })
    }

    /// Row vector times matrix.
    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        let mut out = 0u8;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out ^= self.rows[i];
            bits &= bits - 1;
        }
        out
    }

    /// Images of all `2^size` row vectors, for repeated right multiplication
    /// by a fixed matrix.
    pub fn row_table(&self) -> RowTable {
        let mut table = [0u8; 64];
        for (x, t) in table.iter_mut().enumerate().take(1 << self.size()) {
            *t = self.apply(x as u8);
        }
        RowTable { size: self.size, table }
    }

    /// `self · m` where `table = m.row_table()`.
    #[inline]
    pub fn mul_table(&self, table: &RowTable) -> BitMatrix {
        let mut rows = [0u8; MAX_SIZE];
        for i in 0..self.size() {
            rows[i] = table.table[self.rows[i] as usize];
        }
        BitMatrix { size: self.size, rows }
    }

    /// Exact product over F₂; errors on size mismatch.
    pub fn multiply(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.size != other.size {
            return Err(usage(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.size, other.size
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &BitMatrix) -> BitMatrix {
        let mut rows = [0u8; MAX_SIZE];
        for i in 0..self.size() {
            rows[i] = other.apply(self.rows[i]);
        }
        BitMatrix { size: self.size, rows }
    }

    pub fn transpose(&self) -> BitMatrix {
        let n = self.size();
        let mut rows = [0u8; MAX_SIZE];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            for j in 0..n {
                if self.get(j, i) {
                    *r |= 1 << j;
                }
            }
        }
        BitMatrix { size: self.size, rows }
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        let mut rows = self.rows;
        for (r, o) in rows.iter_mut().zip(other.rows.iter()) {
            *r ^= o;
        }
        BitMatrix { size: self.size, rows }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.size()).all(|i| self.rows[i] == 1 << i)
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<u8> = self.rows().to_vec();
        let mut rank = 0;
        for col in 0..self.size() {
            let bit = 1u8 << col;
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) {
                rows.swap(rank, p);
                let pivot = rows[rank];
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && *row & bit != 0 {
                        *row ^= pivot;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    /// Gauss–Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.size();
        let mut left: Vec<u8> = self.rows().to_vec();
        let mut right: Vec<u8> = (0..n).map(|i| 1u8 << i).collect();
        for col in 0..n {
            let bit = 1u8 << col;
            let p = (col..n).find(|&r| left[r] & bit != 0)?;
            left.swap(col, p);
            right.swap(col, p);
            for r in 0..n {
                if r != col && left[r] & bit != 0 {
                    left[r] ^= left[col];
                    right[r] ^= right[col];
                }
            }
        }
        BitMatrix::from_rows(&right).ok()
    }

    pub fn pow(&self, mut e: u64) -> BitMatrix {
        let mut base = *self;
        let mut acc = BitMatrix::identity(self.size()).expect("valid size");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Least `k ≥ 1` with `g^k = I`. Singular matrices return 0.
    pub fn element_order(&self) -> u32 {
        if self.rank() != self.size() {
            return 0;
        }
        let id = BitMatrix::identity(self.size()).expect("valid size");
        let mut acc = *self;
        let mut k = 1;
        while acc != id {
            acc = acc.mul_unchecked(self);
            k += 1;
        }
        k
    }

    /// Characteristic polynomial `det(xI + M)` over F₂, as a bit mask (bit `i` ↔ `xⁱ`).
    pub fn char_poly(&self) -> u16 {
        // In characteristic 2 the determinant equals the permanent, which a
        // subset DP over assigned columns computes without signs.
        let n = self.size();
        let entry = |i: usize, j: usize| -> u16 {
            let m = self.get(i, j) as u16;
            if i == j {
                m | 0b10
            } else {
                m
            }
        };
        let mut dp = vec![0u16; 1 << n];
        dp[0] = 1;
        for mask in 0usize..(1 << n) {
            if dp[mask] == 0 {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for j in 0..n {
                if mask >> j & 1 == 0 {
                    dp[mask | 1 << j] ^= clmul(dp[mask], entry(row, j));
                }
            }
        }
        dp[(1 << n) - 1]
    }

    pub fn fixed_space_dim(&self) -> usize {
        let id = BitMatrix::identity(self.size()).expect("valid size");
        self.size() - self.add(&id).rank()
    }

    /// Ranks of `(g − I)^k` for `k = 1..=size`; a conjugation invariant.
    pub fn unipotent_ranks(&self) -> Vec<usize> {
        let id = BitMatrix::identity(self.size()).expect("valid size");
        let n = self.add(&id);
        let mut acc = n;
        let mut out = Vec::with_capacity(self.size());
        for _ in 0..self.size() {
            out.push(acc.rank());
            acc = acc.mul_unchecked(&n);
        }
        out
    }
}

/// Precomputed right action of one matrix on all row vectors.
#[derive(Clone, Copy)]
pub struct RowTable {
    size: u8,
    table: [u8; 64],
}

impl RowTable {
    pub fn size(&self) -> usize {
        self.size as usize
    }
}

fn clmul(a: u16, b: u16) -> u16 {
    let mut out = 0u16;
    let mut bits = b;
    while bits != 0 {
        let i = bits.trailing_zeros();
        out ^= a << i;
        bits &= bits - 1;
    }
    out
}

impl Mul for BitMatrix {
    type Output = BitMatrix;

    fn mul(self, rhs: BitMatrix) -> BitMatrix {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        self.mul_unchecked(&rhs)
    }
}

impl<'a> Mul<&'a BitMatrix> for &'a BitMatrix {
    type Output = BitMatrix;

    fn mul(self, rhs: &'a BitMatrix) -> BitMatrix {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.size() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.size() {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The standard alternating form with `eᵢ·fⱼ = δᵢⱼ` and `eᵢ·eⱼ = fᵢ·fⱼ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    genus: usize,
    gram: BitMatrix,
}

impl SymplecticForm {
    pub fn standard(genus: usize) -> Result<Self> {
        if !(1..=3).contains(&genus) {
            return Err(usage(format!("genus {genus} not in 1..=3")));
        }
        let n = 2 * genus;
        let rows: Vec<u8> = (0..n).map(|i| 1u8 << ((i + genus) % n)).collect();
        Ok(SymplecticForm { genus, gram: BitMatrix::from_rows(&rows)? })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn gram(&self) -> &BitMatrix {
        &self.gram
    }

    /// The pairing `x·y = xᵀJy`.
    #[inline]
    pub fn pair(&self, x: u8, y: u8) -> bool {
        parity(self.gram.apply(x) & y)
    }

    /// Whether `mᵀ·J·m = J`.
    pub fn is_symplectic(&self, m: &BitMatrix) -> Result<bool> {
        if m.size() != self.dim() {
            return Err(usage(format!(
                "matrix size {} does not match form dimension {}",
                m.size(),
                self.dim()
            )));
        }
        let lhs = m.transpose().mul_unchecked(&self.gram).mul_unchecked(m);
        Ok(lhs == self.gram)
    }

    /// The transvection `x ↦ x + (x·v)v`.
    pub fn transvection(&self, v: u8) -> Result<BitMatrix> {
        let n = self.dim();
        if v == 0 || (v as u16) >> n != 0 {
            return Err(usage(format!("transvection vector {v:#b} must be nonzero with {n} bits")));
        }
        let rows: Vec<u8> = (0..n)
            .map(|i| {
                let b = 1u8 << i;
                if self.pair(b, v) {
                    b ^ v
                } else {
                    b
                }
            })
            .collect();
        BitMatrix::from_rows(&rows)
    }

    /// `J·mᵀ·J`, the inverse of a symplectic matrix.
    pub fn symplectic_inverse(&self, m: &BitMatrix) -> BitMatrix {
        self.gram.mul_unchecked(&m.transpose()).mul_unchecked(&self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(rows: [[u8; 2]; 2]) -> BitMatrix {
        BitMatrix::from_entries(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_products() {
        let i = BitMatrix::identity(6).unwrap();
        assert_eq!(i.multiply(&i).unwrap(), i);
    }

    #[test]
    fn order_three_in_sp2() {
        let a = m2([[0, 1], [1, 1]]);
        assert_eq!(a.pow(3), BitMatrix::identity(2).unwrap());
        assert_eq!(a.element_order(), 3);
        let form = SymplecticForm::standard(1).unwrap();
        assert!(form.is_symplectic(&a).unwrap());
    }

    #[test]
    fn size_mismatch_is_usage_error() {
        let a = BitMatrix::identity(2).unwrap();
        let b = BitMatrix::identity(4).unwrap();
        assert!(a.multiply(&b).is_err());
        assert!(BitMatrix::identity(3).is_err());
        assert!(BitMatrix::from_rows(&[0b100, 0b01]).is_err());
    }

    #[test]
    fn genus_one_transvection_matches_hand_expansion() {
        let form = SymplecticForm::standard(1).unwrap();
        // e₁ is bit 0, f₁ is bit 1.
        let t = form.transvection(0b01).unwrap();
        assert_eq!(t, m2([[1, 0], [1, 1]]));
    }

    #[test]
    fn all_transvections_are_symplectic_involutions() {
        for g in 1..=3 {
            let form = SymplecticForm::standard(g).unwrap();
            let id = BitMatrix::identity(2 * g).unwrap();
            for v in 1u8..(1 << (2 * g)) {
                let t = form.transvection(v).unwrap();
                assert!(form.is_symplectic(&t).unwrap());
                assert_eq!(t * t, id);
                assert_eq!(t.element_order(), 2);
            }
        }
        let form = SymplecticForm::standard(1).unwrap();
        assert!(form.transvection(0).is_err());
    }

    #[test]
    fn elementary_row_addition_is_not_symplectic() {
        let form = SymplecticForm::standard(3).unwrap();
        let mut rows: Vec<u8> = (0..6).map(|i| 1u8 << i).collect();
        // adds row 1 into row 2: e₂ ↦ e₁ + e₂
        rows[1] |= 1;
        let m = BitMatrix::from_rows(&rows).unwrap();
        assert!(!form.is_symplectic(&m).unwrap());
        assert!(form.is_symplectic(&BitMatrix::identity(6).unwrap()).unwrap());
        assert!(form.is_symplectic(&BitMatrix::identity(4).unwrap()).is_err());
    }

    #[test]
    fn gram_is_symmetric_and_invertible() {
        for g in 1..=3 {
            let form = SymplecticForm::standard(g).unwrap();
            assert_eq!(form.gram().transpose(), *form.gram());
            assert_eq!(form.gram().rank(), 2 * g);
            for i in 0..g {
                for j in 0..g {
                    let (ei, fj) = (1u8 << i, 1u8 << (g + j));
                    assert_eq!(form.pair(ei, fj), i == j);
                    assert!(!form.pair(ei, 1 << j));
                    assert!(!form.pair(fj, 1 << (g + i)));
                }
            }
        }
    }

    #[test]
    fn key_round_trip_and_inverse() {
        let form = SymplecticForm::standard(3).unwrap();
        let g = form.transvection(0b100101).unwrap() * form.transvection(0b011010).unwrap();
        assert_eq!(BitMatrix::from_key(6, g.key()).unwrap(), g);
        assert_eq!(g.inverse().unwrap(), form.symplectic_inverse(&g));
        assert!(BitMatrix::from_key(2, 1 << 4).is_err());
    }

    #[test]
    fn char_poly_of_identity_and_order_three() {
        // (x+1)^2 = x^2 + 1
        assert_eq!(BitMatrix::identity(2).unwrap().char_poly(), 0b101);
        // x^2 + x + 1
        assert_eq!(m2([[0, 1], [1, 1]]).char_poly(), 0b111);
    }
}
