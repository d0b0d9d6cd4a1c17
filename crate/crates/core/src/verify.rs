//! End-to-end verification of the whole computation against the stored
//! reference data, one check per acceptance criterion.

use std::fmt;

use crate::chartab::{dixon_schneider, induce, inner_product, restrict, CharacterTable};
use crate::error::{Error, Result};
use crate::f2sym::{symplectic_order, SubgroupEmbedding};
use crate::kunneth::wreath_graded_character;
use crate::pipeline::Pipeline;
use crate::pointcount::{brute_force_twisted_count, purity_traces, twisted_count, CycleType};
use crate::poly::{IntPolynomial, Var};
use crate::strata::{
    cancellation_report, load_twisted_counts, load_wreath_poincare, reproduce_wreath_rows, CellDiff,
    Stratum, SymmetricTable,
};
use crate::symmetric::partitions;

#[derive(Debug)]
pub enum Outcome {
    Pass,
    Mismatch(Vec<String>),
    Failed(Error),
}

#[derive(Debug)]
pub struct Check {
    pub criterion: u8,
    pub name: &'static str,
    pub outcome: Outcome,
    /// Informational lines printed whatever the outcome.
    pub notes: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Mismatch(_) => "FAIL",
            Outcome::Failed(_) => "ERROR",
        };
        write!(f, "[{status}] {}. {}", self.criterion, self.name)?;
        for n in &self.notes {
            write!(f, "\n       {n}")?;
        }
        match &self.outcome {
            Outcome::Mismatch(diffs) => {
                for d in diffs {
                    write!(f, "\n       - {d}")?;
                }
            }
            Outcome::Failed(e) => write!(f, "\n       - {e}")?,
            Outcome::Pass => {}
        }
        Ok(())
    }
}

/// Collects mismatches and notes for one check.
#[derive(Default)]
struct Log {
    diffs: Vec<String>,
    notes: Vec<String>,
}

impl Log {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.diffs.push(what());
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.diffs.push(format!("{what}: computed {got:?}, expected {want:?}"));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn run(criterion: u8, name: &'static str, body: impl FnOnce(&mut Log) -> Result<()>) -> Check {
    let mut log = Log::default();
    let outcome = match body(&mut log) {
        Err(e) => Outcome::Failed(e),
        Ok(()) if log.diffs.is_empty() => Outcome::Pass,
        Ok(()) => Outcome::Mismatch(log.diffs),
    };
    Check { criterion, name, outcome, notes: log.notes }
}

fn groups(p: &Pipeline, log: &mut Log) -> Result<()> {
    for (genus, classes) in [(1usize, 3usize), (2, 11)] {
        let f = if genus == 1 { p.sp2()? } else { p.sp4()? };
        log.eq(&format!("|Sp({},2)|", 2 * genus), f.group.order() as u64, symplectic_order(genus));
        log.eq(&format!("classes of Sp({},2)", 2 * genus), f.classes.class_count(), classes);
    }
    let sp6 = p.sp6()?;
    log.eq("|Sp(6,2)|", sp6.group.order() as u64, 1_451_520);
    log.eq("classes of Sp(6,2)", sp6.classes.class_count(), 30);
    Ok(())
}

fn character_table(p: &Pipeline, log: &mut Log) -> Result<()> {
    let t = p.table()?;
    t.verify()?;
    let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
    log.eq("sum of squared degrees", sum, 1_451_520);
    let mut got = t.degrees();
    got.sort_unstable();
    let mut want: Vec<u64> = p.reference_euler()?.labels().iter().map(|l| l.dimension).collect();
    want.sort_unstable();
    log.eq("degree multiset", got, want);
    Ok(())
}

fn counts(log: &mut Log) -> Result<()> {
    let stored = load_twisted_counts()?;
    for s in &stored {
        log.eq(&format!("count for {} on {} points", s.permutation, s.n), twisted_count(s.n, &s.cycle_type)?, s.count.clone());
    }
    for n in [4usize, 6] {
        let qs: &[u32] = if n == 4 { &[2, 3, 4, 5] } else { &[2, 3] };
        for parts in partitions(n) {
            let ct = CycleType::new(parts)?;
            let closed = twisted_count(n, &ct)?;
            for &q in qs {
                let brute = brute_force_twisted_count(&ct.representative(), q)?;
                log.expect(brute as i128 == closed.eval(q as i64), || {
                    format!("{ct} at q={q}: enumeration {brute}, closed form {}", closed.eval(q as i64))
                });
            }
        }
    }
    log.note(format!("{} stored counts; enumeration at q in {{2,3}} (and 4, 5 for four points)", stored.len()));
    Ok(())
}

fn purity(log: &mut Log) -> Result<()> {
    let four = purity_traces(4)?;
    let row = |d| -> Result<Vec<i64>> {
        ["id", "(12)", "(123)"].iter().map(|s| Ok(four.trace(&CycleType::parse(4, s)?, d).unwrap_or(0))).collect()
    };
    log.eq("four points, H0 on (id,(12),(123))", row(0)?, vec![1, 1, 1]);
    log.eq("four points, H1 on (id,(12),(123))", row(1)?, vec![2, 0, -1]);
    let six = purity_traces(6)?;
    log.eq("six points, Betti numbers", six.betti(), vec![1, 9, 26, 24]);
    for s in load_twisted_counts()?.iter().filter(|s| s.n == 6) {
        for i in 0..=3 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let want = sign * s.count.coeff(3 - i);
            log.eq(&format!("trace of {} on H{i}", s.permutation), six.trace(&s.cycle_type, i), Some(want));
        }
    }
    for (n, traces) in [(4usize, &four), (6, &six)] {
        let table = SymmetricTable::new(n);
        for d in 0..=traces.top_degree() {
            let f = table
                .partitions
                .iter()
                .map(|mu| Ok(traces.trace(&CycleType::new(mu.clone())?, d).unwrap_or(0)))
                .collect::<Result<Vec<_>>>()?;
            for (lambda, m) in table.partitions.iter().zip(table.decompose(&f)) {
                log.expect(m.is_integer() && m >= 0.into(), || {
                    format!("{n} points, H{d}: multiplicity of {lambda:?} is {m}")
                });
            }
        }
    }
    Ok(())
}

fn wreath_rows(p: &Pipeline, log: &mut Log) -> Result<()> {
    let rows = load_wreath_poincare()?;
    let checks = reproduce_wreath_rows(&rows, p.sp2()?, p.wreath()?)?;
    for c in &checks {
        log.expect(c.agrees(), || format!("{}: computed {}, stored {}", c.row.label(), c.computed, c.row.poincare));
    }
    let mut classes: Vec<usize> = checks.iter().map(|c| c.class).collect();
    classes.sort_unstable();
    classes.dedup();
    log.eq("distinct wreath classes among the rows", classes.len(), p.wreath()?.classes().class_count());
    log.note(format!("{} polynomials", checks.len()));
    Ok(())
}

fn describe(d: &CellDiff) -> String {
    match d {
        CellDiff::Table { stratum, degree, label, computed, reference } => {
            format!("{stratum} H{degree} {label}: computed {computed}, stored {reference}")
        }
        CellDiff::Euler { label, computed, reference } => {
            format!("total {label}: computed {computed}, stored {reference}")
        }
    }
}

fn relabel_notes(p: &Pipeline, log: &mut Log) -> Result<()> {
    let r = p.relabel()?;
    log.note(format!("{} of {} label bijections are consistent", r.valid.len(), r.examined));
    let moved: Vec<String> = r.best.moved().iter().map(|(a, b)| format!("{a}->{b}")).collect();
    if !moved.is_empty() {
        log.note(format!("bijection: {}", moved.join(" ")));
    }
    Ok(())
}

fn induced_tables(p: &Pipeline, log: &mut Log) -> Result<()> {
    relabel_notes(p, log)?;
    let r = p.relabel()?;
    if !r.succeeded() {
        log.diffs.extend(r.best_diffs.iter().filter(|d| matches!(d, CellDiff::Table { .. })).map(describe));
        log.expect(!log.diffs.is_empty(), || "no consistent bijection".into());
    }
    log.eq("H0 dimension, surface times elliptic", p.a21()?.dimensions()[0], 336);
    log.eq("H0 dimension, triple elliptic", p.a111()?.dimensions()[0], 1120);
    Ok(())
}

fn total(p: &Pipeline, log: &mut Log) -> Result<()> {
    let r = p.relabel()?;
    let reference = p.reference_euler()?.reordered(r.assembled.labels())?;
    for ((label, got), want) in r.assembled.labels().iter().zip(r.assembled.polys()).zip(reference.polys()) {
        log.expect(got == want, || format!("{label}: computed {got}, stored {want}"));
    }
    let trivial = r.assembled.component(&"1a".parse()?).cloned();
    log.eq("trivial component", trivial.map(|p| p.to_string()), Some("1 + v^2 + v^4 + v^6 + v^12".into()));
    let refs = p.reference_tables()?;
    let a21 = p.relabeled(Stratum::SurfaceElliptic)?;
    let a111 = p.relabeled(Stratum::TripleElliptic)?;
    let report = cancellation_report(&r.assembled, &[&refs[0], &refs[1], &a21, &a111]);
    log.eq("irreducibles occurring", report.nonzero.len(), 13);
    log.expect(report.coefficients_are_units(), || {
        format!("largest coefficient {} exceeds 1", report.max_abs_coefficient)
    });
    log.note(format!(
        "largest stratum multiplicity {} at {}",
        report.max_multiplicity,
        report.attaining.iter().map(|(s, d, l)| format!("{s} H{d} {l}")).collect::<Vec<_>>().join(", ")
    ));
    Ok(())
}

fn a2(p: &Pipeline, log: &mut Log) -> Result<()> {
    let e = p.a2_euler()?;
    let v = |c: &[i64]| IntPolynomial::new(Var::V, c.to_vec());
    for (lambda, poly) in e.partitions.iter().zip(&e.polys) {
        let want = match lambda.as_slice() {
            [6] => v(&[1, 0, 1]),
            [5, 1] | [4, 2] => v(&[0, 0, 0, 0, -1]),
            [3, 2, 1] => v(&[0, 0, 0, 0, 0, 0, 1]),
            _ => IntPolynomial::zero(Var::V),
        };
        log.eq(&format!("component {lambda:?}"), poly, &want);
    }
    Ok(())
}

fn frobenius(emb: &SubgroupEmbedding, table: &CharacterTable, log: &mut Log, name: &str) -> Result<()> {
    let sub = dixon_schneider(emb.subgroup(), emb.classes())?;
    let mut pairs = 0;
    for psi in sub.irreducibles() {
        let ind = induce(emb, psi, table.group())?;
        for chi in table.irreducibles() {
            let lhs = inner_product(&ind, chi)?;
            let rhs = inner_product(psi, &restrict(emb, chi)?)?;
            log.expect(lhs == rhs, || format!("{name}: reciprocity fails, {lhs} vs {rhs}"));
            pairs += 1;
        }
    }
    log.note(format!("{name}: reciprocity on {pairs} pairs"));
    Ok(())
}

fn cauchy(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn properties(p: &Pipeline, log: &mut Log) -> Result<()> {
    let t = p.table()?;
    t.verify()?;
    for genus in [1usize, 2] {
        let f = if genus == 1 { p.sp2()? } else { p.sp4()? };
        dixon_schneider(&f.group, &f.classes)?.verify()?;
    }
    frobenius(p.product()?, t, log, "product subgroup")?;
    frobenius(p.wreath()?, t, log, "wreath subgroup")?;
    // fails unless traces are constant on every class
    let base = p.sp2()?.transport(&purity_traces(4)?)?;
    wreath_graded_character(&base, p.sp2()?, p.wreath()?)?;
    log.note(format!("wreath traces constant over {} elements", p.wreath()?.order()));

    let b4 = purity_traces(4)?.betti();
    let b6 = purity_traces(6)?.betti();
    let scaled = |v: Vec<i64>, k: i64| v.into_iter().map(|x| (x * k) as u64).collect::<Vec<_>>();
    log.eq("surface times elliptic dimensions", p.a21()?.dimensions(), scaled(cauchy(&b6, &b4), 336));
    log.eq(
        "triple elliptic dimensions",
        p.a111()?.dimensions(),
        scaled(cauchy(&cauchy(&b4, &b4), &b4), 1120),
    );
    let index = |e: &SubgroupEmbedding| e.index();
    log.eq("product subgroup index", index(p.product()?), 336);
    log.eq("wreath subgroup index", index(p.wreath()?), 1120);
    Ok(())
}

/// Runs every check. Errors inside a check are reported as that check's
/// outcome rather than aborting the run.
pub fn verify_all(p: &Pipeline) -> Vec<Check> {
    vec![
        run(1, "group orders and class counts", |l| groups(p, l)),
        run(2, "character table of Sp(6,2)", |l| character_table(p, l)),
        run(3, "twisted point counts", counts),
        run(4, "purity traces", purity),
        run(5, "wreath Poincaré polynomials", |l| wreath_rows(p, l)),
        run(6, "induced stratum tables", |l| induced_tables(p, l)),
        run(7, "weighted Euler characteristic", |l| total(p, l)),
        run(8, "genus two formula", |l| a2(p, l)),
        run(9, "structural properties", |l| properties(p, l)),
    ]
}

/// `0` if all pass, `3` if any check hit an internal error, `1` otherwise.
pub fn exit_code(checks: &[Check]) -> i32 {
    if checks.iter().all(Check::passed) {
        0
    } else if checks.iter().any(|c| matches!(c.outcome, Outcome::Failed(Error::Internal(_)))) {
        3
    } else {
        1
    }
}
