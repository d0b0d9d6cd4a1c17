//! Reference tables shipped with the crate, guarded by SHA-256 checksums.

use sha2::{Digest, Sha256};

use super::{CohomologyTable, EulerCharacteristic, Stratum};
use crate::chartab::IrrepLabel;
use crate::error::{Error, Result};
use crate::f2sym::Permutation;
use crate::pointcount::CycleType;
use crate::poly::{IntPolynomial, Var};

struct Embedded {
    name: &'static str,
    text: &'static str,
    sha256: &'static str,
}

const QUARTIC: Embedded = Embedded {
    name: "quartic.txt",
    text: include_str!("../../data/quartic.txt"),
    sha256: "06a331eb7b75db6d873ac812ec01248aca6318b167e2e1463079bcee92daaea2",
};
const HYPERELLIPTIC: Embedded = Embedded {
    name: "hyperelliptic.txt",
    text: include_str!("../../data/hyperelliptic.txt"),
    sha256: "889e15500072de59e9b6ba56996cf9080301d96d362464c0f6a17b70549c3e56",
};
const SURFACE_ELLIPTIC: Embedded = Embedded {
    name: "surface_elliptic.txt",
    text: include_str!("../../data/surface_elliptic.txt"),
    sha256: "b7d153baf6670435294b016b98a9c421245876d1dd8551cc714f00f35366a617",
};
const TRIPLE_ELLIPTIC: Embedded = Embedded {
    name: "triple_elliptic.txt",
    text: include_str!("../../data/triple_elliptic.txt"),
    sha256: "4bf9060eaffbdc1198fc8841919be6eed7a1ca37f59d61b27f26ab7fec8530dd",
};
const EULER_A3: Embedded = Embedded {
    name: "euler_a3.txt",
    text: include_str!("../../data/euler_a3.txt"),
    sha256: "ef78177e826dabb0c36f5f7b2e0f6cad4062a57431f2b6dd19cada14385483a6",
};
const WREATH_POINCARE: Embedded = Embedded {
    name: "wreath_poincare.txt",
    text: include_str!("../../data/wreath_poincare.txt"),
    sha256: "305153f39b9c282de8e4f0b6a913be5bca645d489bd1ea8b5b3e782128864f73",
};

const TWISTED_COUNTS: Embedded = Embedded {
    name: "twisted_counts.txt",
    text: include_str!("../../data/twisted_counts.txt"),
    sha256: "b2bf948835f96b5486d3b558f435ca3c9e3ea8be6a527ff50006ec41522b180e",
};

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn verified(e: &Embedded) -> Result<&'static str> {
    check_checksum(e.name, e.text, e.sha256)?;
    Ok(e.text)
}

fn check_checksum(name: &str, text: &str, expected: &str) -> Result<()> {
    let got = sha256_hex(text.as_bytes());
    if got != expected {
        return Err(Error::Corrupt(format!("{name}: checksum {got} does not match {expected}")));
    }
    Ok(())
}

fn corrupt(name: &str, msg: impl std::fmt::Display) -> Error {
    Error::Corrupt(format!("{name}: {msg}"))
}

fn parse_table(name: &str, text: &str, stratum: Stratum) -> Result<CohomologyTable> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| corrupt(name, "empty"))?;
    let (_, labels) = header.split_once('|').ok_or_else(|| corrupt(name, "bad header"))?;
    let labels = labels
        .split_whitespace()
        .map(str::parse::<IrrepLabel>)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| corrupt(name, e))?;
    let mut rows = Vec::new();
    for (d, line) in lines.enumerate() {
        let (deg, values) = line.split_once('|').ok_or_else(|| corrupt(name, "bad row"))?;
        if deg.trim() != format!("H{d}") {
            return Err(corrupt(name, format!("expected H{d}, found {deg:?}")));
        }
        let row = values
            .split_whitespace()
            .map(|v| v.parse::<u64>().map_err(|_| corrupt(name, format!("bad entry {v:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != labels.len() {
            return Err(corrupt(name, format!("row H{d} has {} entries", row.len())));
        }
        rows.push(row);
    }
    CohomologyTable::new(stratum, labels, rows)
}

/// The stored cohomology table of a stratum.
pub fn load_stratum_table(stratum: Stratum) -> Result<CohomologyTable> {
    let e = match stratum {
        Stratum::Quartic => &QUARTIC,
        Stratum::Hyperelliptic => &HYPERELLIPTIC,
        Stratum::SurfaceElliptic => &SURFACE_ELLIPTIC,
        Stratum::TripleElliptic => &TRIPLE_ELLIPTIC,
    };
    parse_table(e.name, verified(e)?, stratum)
}

/// The stored weighted Euler characteristic of the whole space.
pub fn load_reference_euler() -> Result<EulerCharacteristic> {
    let name = EULER_A3.name;
    let text = verified(&EULER_A3)?;
    let mut labels = Vec::new();
    let mut polys = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (label, poly) = line.split_once('|').ok_or_else(|| corrupt(name, "bad row"))?;
        labels.push(label.trim().parse::<IrrepLabel>().map_err(|e| corrupt(name, e))?);
        let p: IntPolynomial = poly.trim().parse().map_err(|e| corrupt(name, e))?;
        polys.push(p.with_var(Var::V));
    }
    EulerCharacteristic::new(labels, polys)
}

/// Class of a base entry: identity, an involution or an element of order 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Identity,
    Tau,
    Sigma,
}

impl BaseKind {
    pub fn element_order(self) -> u32 {
        match self {
            BaseKind::Identity => 1,
            BaseKind::Tau => 2,
            BaseKind::Sigma => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            BaseKind::Identity => "id",
            BaseKind::Tau => "tau",
            BaseKind::Sigma => "sigma",
        }
    }
}

#[derive(Clone, Debug)]
pub struct WreathRow {
    pub top: Permutation,
    pub base: Vec<BaseKind>,
    pub poincare: IntPolynomial,
}

impl WreathRow {
    pub fn label(&self) -> String {
        let base: Vec<&str> = self.base.iter().map(|b| b.name()).collect();
        format!("({},({}))", self.top, base.join(","))
    }
}

/// Stored equivariant Poincaré polynomials of the triple product, one per
/// class of the wreath group.
pub fn load_wreath_poincare() -> Result<Vec<WreathRow>> {
    let name = WREATH_POINCARE.name;
    let text = verified(&WREATH_POINCARE)?;
    let mut rows = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        let [top, base, poly] = fields[..] else {
            return Err(corrupt(name, format!("bad row {line:?}")));
        };
        let top = if top == "id" {
            Permutation::identity(3)
        } else {
            let pts: Vec<usize> = top
                .trim_matches(|c| c == '(' || c == ')')
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| corrupt(name, "bad cycle")))
                .collect::<Result<_>>()?;
            Permutation::from_cycles(3, &[&pts]).map_err(|e| corrupt(name, e))?
        };
        let base = base
            .split(',')
            .map(|b| match b.trim() {
                "id" => Ok(BaseKind::Identity),
                "tau" => Ok(BaseKind::Tau),
                "sigma" => Ok(BaseKind::Sigma),
                other => Err(corrupt(name, format!("bad base entry {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let poincare = poly.parse::<IntPolynomial>().map_err(|e| corrupt(name, e))?.with_var(Var::T);
        rows.push(WreathRow { top, base, poincare });
    }
    Ok(rows)
}

/// A stored twisted point count of `n` points on the projective line.
#[derive(Clone, Debug)]
pub struct StoredCount {
    pub n: usize,
    pub permutation: String,
    pub cycle_type: CycleType,
    pub count: IntPolynomial,
}

pub fn load_twisted_counts() -> Result<Vec<StoredCount>> {
    let name = TWISTED_COUNTS.name;
    let text = verified(&TWISTED_COUNTS)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let fields: Vec<&str> = line.split('|').map(str::trim).collect();
            let [n, perm, count] = fields[..] else {
                return Err(corrupt(name, format!("bad row {line:?}")));
            };
            let n: usize = n.parse().map_err(|_| corrupt(name, "bad point count"))?;
            Ok(StoredCount {
                n,
                permutation: perm.to_string(),
                cycle_type: CycleType::parse(n, perm).map_err(|e| corrupt(name, e))?,
                count: count.parse().map_err(|e| corrupt(name, e))?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_embedded_files_pass_their_checksums() {
        for e in [&QUARTIC, &HYPERELLIPTIC, &SURFACE_ELLIPTIC, &TRIPLE_ELLIPTIC, &EULER_A3, &WREATH_POINCARE, &TWISTED_COUNTS] {
            verified(e).unwrap();
        }
    }

    #[test]
    fn tampering_is_detected() {
        let tampered = QUARTIC.text.replacen("H6 | 1", "H6 | 2", 1);
        assert!(matches!(
            check_checksum(QUARTIC.name, &tampered, QUARTIC.sha256),
            Err(Error::Corrupt(_))
        ));
    }

    #[test]
    fn spot_values() {
        let q = load_stratum_table(Stratum::Quartic).unwrap();
        let l = |s: &str| s.parse::<IrrepLabel>().unwrap();
        assert_eq!(q.multiplicity(6, &l("216a")), Some(6));
        assert_eq!(q.max_degree(), 6);
        let h = load_stratum_table(Stratum::Hyperelliptic).unwrap();
        let h0: Vec<String> = h.row_support(0).iter().map(|l| l.to_string()).collect();
        assert_eq!(h0, vec!["1a", "35b"]);
        assert_eq!(h.max_degree(), 5);
        assert_eq!(load_stratum_table(Stratum::SurfaceElliptic).unwrap().max_degree(), 4);
        assert_eq!(load_stratum_table(Stratum::TripleElliptic).unwrap().max_degree(), 3);
        let e = load_reference_euler().unwrap();
        assert_eq!(e.component(&l("1a")).unwrap().to_string(), "1 + v^2 + v^4 + v^6 + v^12");
        let w = load_wreath_poincare().unwrap();
        assert_eq!(w.len(), 22);
        assert_eq!(w[0].label(), "(id,(id,id,id))");
        let c = load_twisted_counts().unwrap();
        assert_eq!(c.len(), 14);
        assert_eq!(c[9].count.to_string(), "q^3 - q - 3");
    }
}
