//! Dense linear algebra over a prime field F_p with `p < 2³²`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p) && p < 1 << 32);
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Symmetric lift into `(−p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        let a = a % self.p;
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let factor = rows[i][c];
                    for k in 0..ncols {
                        let sub = self.mul(factor, rows[r][k]);
                        rows[i][k] = self.sub(rows[i][k], sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{x : M x = 0}` for a square or rectangular matrix given by rows.
    pub fn nullspace(&self, matrix: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let ncols = matrix.first().map_or(0, Vec::len);
        let mut rows = matrix.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; ncols];
                v[f] = 1;
                for (row, &pc) in rows.iter().zip(&pivots) {
                    v[pc] = self.sub(0, row[f]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(λI − M)` by Faddeev–LeVerrier;
    /// coefficients in ascending order. Requires `p > dim`.
    pub fn char_poly(&self, m: &[Vec<u64>]) -> Vec<u64> {
        let n = m.len();
        assert!((n as u64) < self.p, "Faddeev–LeVerrier needs p > n");
        let mut coeffs = vec![0u64; n + 1];
        coeffs[n] = 1;
        let mut mk = vec![vec![0u64; n]; n];
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1}·I
            let mut next = self.matmul(m, &mk);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] = self.add(row[i], coeffs[n - k + 1]);
            }
            let am = self.matmul(m, &next);
            let trace = (0..n).fold(0u64, |acc, i| self.add(acc, am[i][i]));
            let kinv = self.inv(k as u64);
            coeffs[n - k] = self.sub(0, self.mul(trace, kinv));
            mk = next;
        }
        coeffs
    }

    pub fn matmul(&self, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.len();
        let inner = b.len();
        let m = b.first().map_or(0, Vec::len);
        let mut out = vec![vec![0u64; m]; n];
        for i in 0..n {
            for k in 0..inner {
                let aik = a[i][k];
                if aik == 0 {
                    continue;
                }
                for j in 0..m {
                    out[i][j] = (out[i][j] + aik * b[k][j]) % self.p;
                }
            }
        }
        out
    }

    pub fn eval_poly(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs.iter().rev().fold(0u64, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All roots in F_p, ascending.
    pub fn roots(&self, coeffs: &[u64]) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval_poly(coeffs, x) == 0).collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2521));
        assert!(!is_prime(2520));
        assert!(!is_prime(1));
    }

    #[test]
    fn char_poly_and_roots() {
        let f = PrimeField::new(101);
        // [[2,1],[0,3]] has char poly (λ−2)(λ−3) = λ² − 5λ + 6
        let m = vec![vec![2, 1], vec![0, 3]];
        assert_eq!(f.char_poly(&m), vec![6, 96, 1]);
        assert_eq!(f.roots(&f.char_poly(&m)), vec![2, 3]);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let f = PrimeField::new(7);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = f.nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = (0..3).fold(0, |acc, i| f.add(acc, f.mul(m[0][i], v[i])));
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn lift_is_symmetric() {
        let f = PrimeField::new(7);
        assert_eq!(f.lift(6), -1);
        assert_eq!(f.lift(3), 3);
        assert_eq!(f.lift(4), -3);
    }
}
