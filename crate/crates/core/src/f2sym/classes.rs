use sha2::{Digest, Sha256};

use super::bitmatrix::{BitMatrix, RowTable};
use super::group::FiniteMatrixGroup;
use crate::error::{internal, Result};

/// Partition of a matrix group into conjugacy classes.
///
/// Classes are indexed in the order `(element order, class size,
/// representative key)`, so the identity class is always index 0. The
/// representative of each class is its member with the smallest key.
#[derive(Clone, Debug)]
pub struct ConjugacyClassification {
    group_order: u64,
    class_of: Vec<u16>,
    representative: Vec<usize>,
    representative_key: Vec<u64>,
    class_size: Vec<u64>,
    element_order: Vec<u32>,
    inverse_class: Vec<usize>,
    fingerprint: u64,
}

impl ConjugacyClassification {
    pub fn class_count(&self) -> usize {
        self.representative.len()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    #[inline]
    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    pub fn representative(&self, class: usize) -> usize {
        self.representative[class]
    }

    pub fn representative_key(&self, class: usize) -> u64 {
        self.representative_key[class]
    }

    pub fn class_size(&self, class: usize) -> u64 {
        self.class_size[class]
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_size
    }

    /// Order of the elements in a class.
    pub fn element_order(&self, class: usize) -> u32 {
        self.element_order[class]
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.element_order.iter().fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    /// Identifies the group up to the data a class function depends on.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&i| self.class_of[i] as usize == class).collect()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn fingerprint(order: u64, sizes: &[u64], keys: &[u64]) -> u64 {
    let mut h = Sha256::new();
    h.update(order.to_le_bytes());
    for (s, k) in sizes.iter().zip(keys) {
        h.update(s.to_le_bytes());
        h.update(k.to_le_bytes());
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

/// Conjugation orbits under the group's generators.
pub fn conjugacy_classes(group: &FiniteMatrixGroup) -> ConjugacyClassification {
    const UNSEEN: u32 = u32::MAX;
    let n = group.order();
    let conjugators: Vec<(BitMatrix, RowTable)> =
        group.conjugators().iter().map(|s| (*s, group.inverse(s).row_table())).collect();

    let mut raw = vec![UNSEEN; n];
    let mut seeds = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = Vec::new();
    for seed in 0..n {
        if raw[seed] != UNSEEN {
            continue;
        }
        let id = seeds.len() as u32;
        raw[seed] = id;
        queue.clear();
        queue.push(seed);
        let mut head = 0;
        while head < queue.len() {
            let g = *group.element(queue[head]);
            head += 1;
            for (s, s_inv) in &conjugators {
                let h = s.mul_unchecked(&g).mul_table(s_inv);
                let j = group.index_of(&h).expect("group closed under conjugation");
                if raw[j] == UNSEEN {
                    raw[j] = id;
                    queue.push(j);
                }
            }
        }
        seeds.push(seed);
        sizes.push(queue.len() as u64);
    }

    let orders: Vec<u32> = seeds.iter().map(|&s| group.element(s).element_order()).collect();
    let keys: Vec<u64> = seeds.iter().map(|&s| group.element(s).key()).collect();
    let mut perm: Vec<usize> = (0..seeds.len()).collect();
    perm.sort_by_key(|&c| (orders[c], sizes[c], keys[c]));
    let mut rank = vec![0u16; seeds.len()];
    for (new, &old) in perm.iter().enumerate() {
        rank[old] = new as u16;
    }

    let class_of: Vec<u16> = raw.iter().map(|&r| rank[r as usize]).collect();
    let representative: Vec<usize> = perm.iter().map(|&c| seeds[c]).collect();
    let representative_key: Vec<u64> = perm.iter().map(|&c| keys[c]).collect();
    let class_size: Vec<u64> = perm.iter().map(|&c| sizes[c]).collect();
    let element_order: Vec<u32> = perm.iter().map(|&c| orders[c]).collect();
    let inverse_class = representative
        .iter()
        .map(|&r| {
            let inv = group.inverse(group.element(r));
            class_of[group.index_of(&inv).expect("inverse present")] as usize
        })
        .collect();
    let group_order = n as u64;
    let fingerprint = fingerprint(group_order, &class_size, &representative_key);
    ConjugacyClassification {
        group_order,
        class_of,
        representative,
        representative_key,
        class_size,
        element_order,
        inverse_class,
        fingerprint,
    }
}

impl ConjugacyClassification {
    /// Reassembles a classification from a per-element class listing,
    /// re-deriving sizes, representatives and inverse classes and checking
    /// them against the group.
    pub fn from_assignment(group: &FiniteMatrixGroup, class_of: Vec<u16>) -> Result<Self> {
        let n = group.order();
        if class_of.len() != n {
            return Err(internal("class listing length differs from group order"));
        }
        let count = class_of.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut representative = vec![usize::MAX; count];
        let mut class_size = vec![0u64; count];
        for (i, &c) in class_of.iter().enumerate() {
            let c = c as usize;
            class_size[c] += 1;
            if representative[c] == usize::MAX {
                representative[c] = i;
            }
        }
        if class_size.contains(&0) {
            return Err(internal("empty class in listing"));
        }
        let representative_key: Vec<u64> =
            representative.iter().map(|&r| group.element(r).key()).collect();
        let element_order: Vec<u32> =
            representative.iter().map(|&r| group.element(r).element_order()).collect();
        for c in 1..count {
            let prev = (element_order[c - 1], class_size[c - 1], representative_key[c - 1]);
            if prev >= (element_order[c], class_size[c], representative_key[c]) {
                return Err(internal("class listing is not in canonical order"));
            }
        }
        let inverse_class = representative
            .iter()
            .map(|&r| {
                let inv = group.inverse(group.element(r));
                class_of[group.index_of(&inv).expect("inverse present")] as usize
            })
            .collect();
        let group_order = n as u64;
        let fingerprint = fingerprint(group_order, &class_size, &representative_key);
        Ok(ConjugacyClassification {
            group_order,
            class_of,
            representative,
            representative_key,
            class_size,
            element_order,
            inverse_class,
            fingerprint,
        })
    }

    /// Checks the partition against the group: sizes, divisibility, inverse
    /// involution, and conjugation invariance on `samples` pseudo-random pairs.
    pub fn validate(&self, group: &FiniteMatrixGroup, samples: usize, seed: u64) -> Result<()> {
        use rand::{Rng, SeedableRng};
        let total: u64 = self.class_size.iter().sum();
        if total != self.group_order || self.group_order != group.order() as u64 {
            return Err(internal("class sizes do not sum to the group order"));
        }
        for c in 0..self.class_count() {
            if !self.group_order.is_multiple_of(self.class_size[c]) {
                return Err(internal(format!("class {c} size does not divide |G|")));
            }
            if self.inverse_class(self.inverse_class(c)) != c {
                return Err(internal(format!("inverse class map not an involution at {c}")));
            }
            if self.class_of(self.representative[c]) != c {
                return Err(internal(format!("representative of class {c} misfiled")));
            }
            if group.element(self.representative[c]).element_order() != self.element_order[c] {
                return Err(internal(format!("element order mismatch for class {c}")));
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = group.order();
        for _ in 0..samples {
            let x = *group.element(rng.gen_range(0..n));
            let gi = rng.gen_range(0..n);
            let g = group.element(gi);
            let conj = x.mul_unchecked(g).mul_unchecked(&group.inverse(&x));
            let j = group.index_of(&conj).ok_or_else(|| internal("conjugate left the group"))?;
            if self.class_of(j) != self.class_of(gi) {
                return Err(internal("conjugate elements filed in different classes"));
            }
        }
        Ok(())
    }
}
