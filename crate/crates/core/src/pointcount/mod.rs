//! Twisted point counts of the moduli space of `n` ordered points on the
//! projective line, and the traces they determine through purity.

mod field;

use std::fmt;

use crate::error::{usage, Result};
use crate::f2sym::Permutation;
use crate::poly::{IntPolynomial, Var};

pub use field::{brute_force_twisted_count, brute_force_twisted_count_oriented, GaloisField, Orientation};

pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Points of the projective line whose Frobenius orbit has exactly `d` elements.
pub fn exact_degree_count(d: usize) -> IntPolynomial {
    let mut acc = IntPolynomial::zero(Var::Q);
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let term = &IntPolynomial::monomial(Var::Q, 1, e) + &IntPolynomial::constant(Var::Q, 1);
        acc = &acc + &term.scale(moebius((d / e) as u64));
    }
    acc
}

/// `q³ − q`.
pub fn pgl2_order() -> IntPolynomial {
    IntPolynomial::new(Var::Q, vec![0, -1, 0, 1])
}

/// Partition of `n` recording the cycle lengths of a permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(usage(format!("{parts:?} is not a partition")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn identity(n: usize) -> Self {
        CycleType { parts: vec![1; n] }
    }

    pub fn of(perm: &Permutation) -> Self {
        CycleType { parts: perm.cycle_type() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// The permutation with consecutive cycles `(1…a)(a+1…)…`.
    pub fn representative(&self) -> Permutation {
        let mut images = Vec::with_capacity(self.n());
        let mut start = 0;
        for &len in &self.parts {
            for k in 0..len {
                images.push((start + (k + 1) % len) as u8);
            }
            start += len;
        }
        Permutation::from_images(images).expect("valid cycle layout")
    }

    /// Appends fixed points up to `n`.
    pub fn padded(&self, n: usize) -> Result<CycleType> {
        let have = self.n();
        if have > n {
            return Err(usage(format!("cycle type of {have} points does not fit in {n}")));
        }
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, n - have));
        CycleType::new(parts)
    }

    /// Accepts `3,2,1`, `(123)(45)` or `id`, completed with fixed points to `n`.
    pub fn parse(n: usize, s: &str) -> Result<CycleType> {
        let s = s.trim();
        let parsed = if s == "id" || s.is_empty() {
            CycleType::identity(n)
        } else if s.starts_with('(') {
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            for chunk in s.split(')').filter(|c| !c.trim().is_empty()) {
                let body = chunk.trim().strip_prefix('(').ok_or_else(|| usage(format!("bad cycle syntax {s:?}")))?;
                let pts: Vec<usize> = if body.contains(',') || body.contains(' ') {
                    body.split([',', ' '])
                        .filter(|x| !x.is_empty())
                        .map(|x| x.parse().map_err(|_| usage(format!("bad point {x:?}"))))
                        .collect::<Result<_>>()?
                } else {
                    body.chars()
                        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| usage(format!("bad point {c:?}"))))
                        .collect::<Result<_>>()?
                };
                cycles.push(pts);
            }
            let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
            CycleType::of(&Permutation::from_cycles(n, &refs)?)
        } else {
            let parts = s
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| usage(format!("bad part {x:?}"))))
                .collect::<Result<Vec<usize>>>()?;
            CycleType::new(parts)?
        };
        parsed.padded(n)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 4 || n == 6 {
        Ok(())
    } else {
        Err(usage(format!("twisted counts are provided for n = 4 and n = 6, not {n}")))
    }
}

/// Each `d`-cycle picks a point of exact degree `d`; the `j`-th such cycle
/// has `d(j−1)` fewer choices because earlier orbits are used up.
pub fn twisted_numerator(n: usize, sigma: &CycleType) -> Result<Vec<IntPolynomial>> {
    check_n(n)?;
    if sigma.n() != n {
        return Err(usage(format!("cycle type {sigma:?} is not a partition of {n}")));
    }
    let mut factors = Vec::new();
    let mut i = 0;
    let parts = sigma.parts();
    while i < parts.len() {
        let d = parts[i];
        let m = parts[i..].iter().take_while(|&&p| p == d).count();
        let b = exact_degree_count(d);
        for j in 0..m {
            factors.push(&b - &IntPolynomial::constant(Var::Q, (d * j) as i64));
        }
        i += m;
    }
    Ok(factors)
}

pub fn twisted_count(n: usize, sigma: &CycleType) -> Result<IntPolynomial> {
    let numerator = twisted_numerator(n, sigma)?
        .iter()
        .fold(IntPolynomial::constant(Var::Q, 1), |acc, f| &acc * f);
    numerator.div_exact(&pgl2_order())
}

/// Traces of every cycle type on each cohomology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPermCharacter {
    n: usize,
    /// Cycle types with traces in degrees `0..=n−3`.
    entries: Vec<(CycleType, Vec<i64>)>,
}

impl GradedPermCharacter {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_degree(&self) -> usize {
        self.n - 3
    }

    pub fn entries(&self) -> &[(CycleType, Vec<i64>)] {
        &self.entries
    }

    pub fn traces(&self, sigma: &CycleType) -> Option<&[i64]> {
        self.entries.iter().find(|(c, _)| c == sigma).map(|(_, t)| t.as_slice())
    }

    pub fn trace(&self, sigma: &CycleType, degree: usize) -> Option<i64> {
        self.traces(sigma).and_then(|t| t.get(degree).copied())
    }

    /// Trace of a permutation of the `n` points.
    pub fn trace_of(&self, perm: &Permutation, degree: usize) -> i64 {
        self.trace(&CycleType::of(perm), degree).unwrap_or(0)
    }

    pub fn betti(&self) -> Vec<i64> {
        self.traces(&CycleType::identity(self.n)).expect("identity present").to_vec()
    }
}

/// Reads the trace on `H^i` off the coefficient of `(−1)^i q^{n−3−i}`.
pub fn purity_traces(n: usize) -> Result<GradedPermCharacter> {
    check_n(n)?;
    let top = n - 3;
    let mut entries = Vec::new();
    for parts in crate::symmetric::partitions(n) {
        let sigma = CycleType::new(parts)?;
        let count = twisted_count(n, &sigma)?;
        let traces = (0..=top)
            .map(|i| if i % 2 == 0 { 1 } else { -1 } * count.coeff(top - i))
            .collect();
        entries.push((sigma, traces));
    }
    Ok(GradedPermCharacter { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(n: usize, s: &str) -> CycleType {
        CycleType::parse(n, s).unwrap()
    }

    #[test]
    fn moebius_values() {
        let got: Vec<i64> = (1..=12).map(moebius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn exact_degree_counts() {
        assert_eq!(exact_degree_count(1).to_string(), "q + 1");
        assert_eq!(exact_degree_count(2).to_string(), "q^2 - q");
        assert_eq!(exact_degree_count(3).to_string(), "q^3 - q");
        assert_eq!(exact_degree_count(6).to_string(), "q^6 - q^3 - q^2 + q");
    }

    #[test]
    fn cycle_type_parsing() {
        assert_eq!(ct(6, "(123)(45)").parts(), &[3, 2, 1]);
        assert_eq!(ct(6, "3,2").parts(), &[3, 2, 1]);
        assert_eq!(ct(4, "id").parts(), &[1, 1, 1, 1]);
        assert_eq!(ct(4, "(12)").to_string(), "(12)");
        assert!(CycleType::parse(4, "5").is_err());
        assert!(CycleType::parse(4, "(15)").is_err());
        assert_eq!(ct(6, "(1,2,3)").parts(), &[3, 1, 1, 1]);
    }

    #[test]
    fn numerators_and_counts() {
        let numer = |n, s: &str| {
            twisted_numerator(n, &ct(n, s))
                .unwrap()
                .iter()
                .fold(IntPolynomial::constant(Var::Q, 1), |a, f| &a * f)
        };
        let p = |s: &str| s.parse::<IntPolynomial>().unwrap();
        assert_eq!(numer(6, "(123)(456)"), &p("q^3 - q") * &p("q^3 - q - 3"));
        assert_eq!(numer(6, "(123456)"), p("q^6 - q^3 - q^2 + q"));
        assert_eq!(twisted_count(4, &ct(4, "id")).unwrap(), p("q - 2"));
        assert!(twisted_count(5, &ct(5, "id")).is_err());
    }

    #[test]
    fn euler_characteristic_at_q_one() {
        assert_eq!(twisted_count(4, &CycleType::identity(4)).unwrap().eval(1), -1);
        assert_eq!(twisted_count(6, &CycleType::identity(6)).unwrap().eval(1), -6);
    }

    #[test]
    fn traces_by_purity() {
        let t4 = purity_traces(4).unwrap();
        let h: Vec<Vec<i64>> = ["id", "(12)", "(123)"]
            .iter()
            .map(|s| t4.traces(&ct(4, s)).unwrap().to_vec())
            .collect();
        assert_eq!(h, vec![vec![1, 2], vec![1, 0], vec![1, -1]]);
        let t6 = purity_traces(6).unwrap();
        assert_eq!(t6.betti(), vec![1, 9, 26, 24]);
        assert_eq!(t6.trace(&ct(6, "(12)"), 1), Some(3));
        assert!(t6.entries().iter().all(|(_, t)| t[0] == 1));
    }
}
