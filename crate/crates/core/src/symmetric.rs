//! Characters of symmetric groups by the Murnaghan–Nakayama rule.

use num_rational::Ratio;

/// Partitions of `n` in reverse lexicographic order, starting with `[n]`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Order of the centraliser of an element of cycle type `mu`.
pub fn centralizer_order(mu: &[usize]) -> u64 {
    let mut z = 1u64;
    let mut i = 0;
    while i < mu.len() {
        let part = mu[i];
        let m = mu[i..].iter().take_while(|&&p| p == part).count();
        z *= (part as u64).pow(m as u32) * (1..=m as u64).product::<u64>();
        i += m;
    }
    z
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `χ^λ(μ)` for partitions of the same size.
pub fn murnaghan_nakayama(lambda: &[usize], mu: &[usize]) -> i64 {
    assert_eq!(lambda.iter().sum::<usize>(), mu.iter().sum::<usize>(), "size mismatch");
    let k = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + k - 1 - i).collect();
    mn_beta(&beta, mu)
}

fn mn_beta(beta: &[usize], mu: &[usize]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.to_vec();
        next[idx] = b - r;
        total += sign * mn_beta(&next, rest);
    }
    total
}

/// Character table of `S_n`: rows and columns both indexed by `partitions(n)`.
#[derive(Clone, Debug)]
pub struct SymmetricTable {
    pub n: usize,
    pub partitions: Vec<Vec<usize>>,
    /// `values[λ][μ]`.
    pub values: Vec<Vec<i64>>,
}

impl SymmetricTable {
    pub fn new(n: usize) -> Self {
        let partitions = partitions(n);
        let values = partitions
            .iter()
            .map(|l| partitions.iter().map(|m| murnaghan_nakayama(l, m)).collect())
            .collect();
        SymmetricTable { n, partitions, values }
    }

    pub fn index_of(&self, partition: &[usize]) -> Option<usize> {
        self.partitions.iter().position(|p| p == partition)
    }

    /// `⟨f, g⟩` for class functions given on `partitions` (all real-valued).
    pub fn inner_product(&self, f: &[i64], g: &[i64]) -> Ratio<i128> {
        let order = factorial(self.n) as i128;
        let sum: i128 = self
            .partitions
            .iter()
            .enumerate()
            .map(|(i, mu)| (order / centralizer_order(mu) as i128) * f[i] as i128 * g[i] as i128)
            .sum();
        Ratio::new(sum, order)
    }

    /// Coordinates of a class function in the irreducible basis.
    pub fn decompose(&self, f: &[i64]) -> Vec<Ratio<i128>> {
        self.values.iter().map(|row| self.inner_product(f, row)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn s3_and_s6_tables() {
        let t = SymmetricTable::new(3);
        // columns (3), (2,1), (1,1,1)
        assert_eq!(t.values[1], vec![-1, 0, 2]);
        let t6 = SymmetricTable::new(6);
        let identity = t6.index_of(&[1, 1, 1, 1, 1, 1]).unwrap();
        let mut degrees: Vec<i64> = t6.values.iter().map(|r| r[identity]).collect();
        degrees.sort();
        assert_eq!(degrees, vec![1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16]);
        assert!(t6.values[0].iter().all(|&v| v == 1));
    }

    #[test]
    fn orthogonality() {
        for n in 1..=6 {
            let t = SymmetricTable::new(n);
            for (i, a) in t.values.iter().enumerate() {
                for (j, b) in t.values.iter().enumerate() {
                    let expected = Ratio::from_integer(i128::from(i == j));
                    assert_eq!(t.inner_product(a, b), expected, "n={n} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn centralizers_count_the_group() {
        for n in 1..=6 {
            let total: u64 =
                partitions(n).iter().map(|mu| factorial(n) / centralizer_order(mu)).sum();
            assert_eq!(total, factorial(n));
        }
    }
}
