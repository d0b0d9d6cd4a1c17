//! Small finite fields and a direct enumeration of twisted point counts.

use std::collections::BTreeMap;

use crate::error::{internal, usage, Result};
use crate::f2sym::Permutation;

/// Monic irreducible polynomials over F_p, lowest coefficient first,
/// leading 1 omitted. Smallest in lexicographic order of the reversed
/// coefficient list.
const IRREDUCIBLES: &[(u32, usize, &[u32])] = &[
    (2, 1, &[0]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 0, 0, 0]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0]),
    (2, 12, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (3, 1, &[0]),
    (3, 2, &[1, 0]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 1, 0, 0]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 1, 0, 0, 0, 0]),
    (5, 1, &[0]),
    (5, 2, &[2, 0]),
    (5, 3, &[1, 1, 0]),
    (5, 4, &[2, 0, 0, 0]),
    (5, 5, &[1, 4, 0, 0, 0]),
    (5, 6, &[2, 1, 0, 0, 0, 0]),
];

/// `F_{p^k}` as `F_p[x]/(f)`. Elements are indexed by their coefficient
/// vectors read as base-`p` numbers; multiplication goes through discrete
/// logarithms to a primitive element.
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    k: usize,
    size: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GaloisField {
    pub fn new(p: u32, k: usize) -> Result<Self> {
        let &(_, _, tail) = IRREDUCIBLES
            .iter()
            .find(|&&(pp, kk, _)| pp == p && kk == k)
            .ok_or_else(|| usage(format!("no field of order {p}^{k} available")))?;
        Self::with_modulus(p, tail)
    }

    /// Builds the quotient ring by `x^k + tail`; fails unless it is a field.
    pub fn with_modulus(p: u32, tail: &[u32]) -> Result<Self> {
        let k = tail.len();
        let size = p.pow(k as u32);
        let digits = |mut x: u32| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let undigits = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let mul = |a: u32, b: u32| -> u32 {
            let (a, b) = (digits(a), digits(b));
            let mut prod = vec![0u32; 2 * k];
            for i in 0..k {
                for j in 0..k {
                    prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
                }
            }
            // reduce with x^k = −tail
            for deg in (k..2 * k).rev() {
                let c = prod[deg];
                if c != 0 {
                    for (i, &t) in tail.iter().enumerate() {
                        prod[deg - k + i] = (prod[deg - k + i] + (p - t) * c) % p;
                    }
                    prod[deg] = 0;
                }
            }
            undigits(&prod[..k])
        };
        let units = (size - 1) as usize;
        for g in 2.min(size - 1)..size {
            let mut exp = Vec::with_capacity(units);
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..units {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = mul(x, g);
            }
            if ok && x == 1 {
                let mut log = vec![u32::MAX; size as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                if log[1..].iter().all(|&l| l != u32::MAX) {
                    return Ok(GaloisField { p, k, size, exp, log });
                }
            }
        }
        Err(internal(format!("x^{k} + {tail:?} does not define a field over F_{p}")))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.size - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return u32::from(e == 0);
        }
        let n = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }
}

/// How a Frobenius orbit is laid along a cycle `(c₀ c₁ …)` of σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `p_{c_{k+1}} = F(p_{c_k})`, i.e. `F(p_i) = p_{σ(i)}`.
    Forward,
    /// `p_{c_{k+1}} = F⁻¹(p_{c_k})`, i.e. `F(p_{σ(i)}) = p_i`.
    Backward,
}

fn prime_power(q: u32) -> Result<(u32, usize)> {
    match q {
        2 => Ok((2, 1)),
        3 => Ok((3, 1)),
        4 => Ok((2, 2)),
        5 => Ok((5, 1)),
        _ => Err(usage(format!("brute-force counts support q in {{2, 3, 4, 5}}, not {q}"))),
    }
}

/// The projective line over `F_{q^d}` with the `q`-power Frobenius.
/// Point `size` is infinity.
struct ProjectiveLine {
    points: u32,
    frob: Vec<u32>,
    frob_inv: Vec<u32>,
}

impl ProjectiveLine {
    fn new(field: &GaloisField, q: u32) -> Self {
        let mut frob: Vec<u32> = (0..field.size()).map(|a| field.pow(a, q as u64)).collect();
        frob.push(field.size());
        let mut frob_inv = vec![0u32; frob.len()];
        for (a, &b) in frob.iter().enumerate() {
            frob_inv[b as usize] = a as u32;
        }
        ProjectiveLine { points: field.size() + 1, frob, frob_inv }
    }
}

/// Calls `visit` on every injective tuple fixed by Frobenius twisted by σ.
/// Points are `(cycle length, index on that line)`. Points on lines of
/// different lengths compare unequal, which is exact for the tuples that
/// survive: a point repeated within its own cycle is rejected first, so the
/// survivors on a length-`d` cycle have exact degree `d`.
fn enumerate(
    sigma: &Permutation,
    q: u32,
    orientation: Orientation,
    mut visit: impl FnMut(&[(usize, u32)]),
) -> Result<()> {
    let (p, s) = prime_power(q)?;
    let cycles = sigma.cycles();
    let mut lines = BTreeMap::new();
    for c in &cycles {
        if let std::collections::btree_map::Entry::Vacant(e) = lines.entry(c.len()) {
            let field = GaloisField::new(p, s * c.len())?;
            e.insert(ProjectiveLine::new(&field, q));
        }
    }
    let mut tuple = vec![(0usize, u32::MAX); sigma.degree()];
    fn go(
        ci: usize,
        cycles: &[Vec<usize>],
        lines: &BTreeMap<usize, ProjectiveLine>,
        orientation: Orientation,
        tuple: &mut Vec<(usize, u32)>,
        visit: &mut dyn FnMut(&[(usize, u32)]),
    ) {
        if ci == cycles.len() {
            visit(tuple);
            return;
        }
        let cycle = &cycles[ci];
        let d = cycle.len();
        let line = &lines[&d];
        let step = match orientation {
            Orientation::Forward => &line.frob,
            Orientation::Backward => &line.frob_inv,
        };
        let placed: Vec<(usize, u32)> =
            cycles[..ci].iter().flatten().map(|&i| tuple[i]).collect();
        'start: for start in 0..line.points {
            let mut x = start;
            let mut orbit = Vec::with_capacity(d);
            for _ in 0..d {
                if orbit.contains(&x) || placed.contains(&(d, x)) {
                    continue 'start;
                }
                orbit.push(x);
                x = step[x as usize];
            }
            for (&pos, &pt) in cycle.iter().zip(&orbit) {
                tuple[pos] = (d, pt);
            }
            go(ci + 1, cycles, lines, orientation, tuple, visit);
        }
        for &pos in cycle {
            tuple[pos] = (0, u32::MAX);
        }
    }
    go(0, &cycles, &lines, orientation, &mut tuple, &mut visit);
    Ok(())
}

/// Counts twisted-fixed injective tuples directly and divides by `|PGL₂(F_q)|`.
pub fn brute_force_twisted_count_oriented(
    sigma: &Permutation,
    q: u32,
    orientation: Orientation,
) -> Result<i64> {
    let n = sigma.degree();
    if n != 4 && n != 6 {
        return Err(usage(format!("brute-force counts are for 4 or 6 points, not {n}")));
    }
    let mut total: u64 = 0;
    enumerate(sigma, q, orientation, |_| total += 1)?;
    let pgl = (q as u64).pow(3) - q as u64;
    if !total.is_multiple_of(pgl) {
        return Err(internal(format!("{total} twisted tuples not divisible by {pgl}")));
    }
    Ok((total / pgl) as i64)
}

pub fn brute_force_twisted_count(sigma: &Permutation, q: u32) -> Result<i64> {
    brute_force_twisted_count_oriented(sigma, q, Orientation::Forward)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_modulus_gives_a_field() {
        for &(p, k, _) in IRREDUCIBLES {
            let f = GaloisField::new(p, k).unwrap();
            assert_eq!(f.size(), p.pow(k as u32));
            let units = (1..f.size()).filter(|&a| f.pow(a, (f.size() - 1) as u64) == 1).count();
            assert_eq!(units as u32, f.size() - 1);
        }
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // x² + 1 = (x + 1)² over F₂
        assert!(GaloisField::with_modulus(2, &[1, 0]).is_err());
        // x² − 1 over F₅
        assert!(GaloisField::with_modulus(5, &[4, 0]).is_err());
    }

    #[test]
    fn frobenius_fixes_the_prime_field() {
        let f = GaloisField::new(3, 4).unwrap();
        let fixed = (0..f.size()).filter(|&a| f.pow(a, 3) == a).count();
        assert_eq!(fixed, 3);
        let g = GaloisField::new(2, 4).unwrap();
        let fixed4 = (0..g.size()).filter(|&a| g.pow(a, 4) == a).count();
        assert_eq!(fixed4, 4);
    }

    #[test]
    fn forward_tuples_satisfy_the_twisted_condition() {
        let sigma = Permutation::from_cycles(6, &[&[1, 2, 3], &[4, 5]]).unwrap();
        let field3 = GaloisField::new(2, 3).unwrap();
        let field2 = GaloisField::new(2, 2).unwrap();
        let l3 = ProjectiveLine::new(&field3, 2);
        let l2 = ProjectiveLine::new(&field2, 2);
        let mut seen = 0;
        enumerate(&sigma, 2, Orientation::Forward, |t| {
            seen += 1;
            for i in 0..6 {
                let (d, x) = t[i];
                let line = match d {
                    3 => &l3,
                    2 => &l2,
                    _ => return,
                };
                assert_eq!((d, line.frob[x as usize]), t[sigma.apply(i)]);
            }
        })
        .unwrap();
        assert!(seen > 0);
    }

    #[test]
    fn unsupported_inputs() {
        let id = Permutation::identity(6);
        assert!(brute_force_twisted_count(&id, 7).is_err());
        assert!(brute_force_twisted_count(&Permutation::identity(5), 2).is_err());
    }
}
