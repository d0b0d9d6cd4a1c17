use serde_json::json;
use sp6euler::chartab::{dixon_schneider, IrrepLabel};
use sp6euler::pipeline::{CacheEvent, Pipeline};
use sp6euler::pointcount::{brute_force_twisted_count, purity_traces, twisted_count, CycleType};
use sp6euler::report::{self, Format, Grid};
use sp6euler::strata::{partition_label, reproduce_wreath_rows, load_wreath_poincare, Stratum};
use sp6euler::symmetric::partitions;
use sp6euler::verify::{exit_code, verify_all, Outcome};
use sp6euler::{Error, Result};

use crate::{status, Cli, Command};

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

/// Runs a command, returning its report and exit status.
pub fn run(cli: &Cli) -> Result<(String, u8)> {
    let p = Pipeline::new(cli.global.cache_dir.clone());
    let f = cli.global.format;
    let text = match &cli.command {
        Command::Group { genus } => group(&p, *genus, f)?,
        Command::Chartable { genus } => chartable(&p, *genus, f)?,
        Command::Count { n, cycles, q } => return count(*n, cycles.as_deref(), *q, f),
        Command::Poincare { n } => poincare(&p, *n, f)?,
        Command::Strata { stratum } => strata(&p, stratum.as_deref(), f)?,
        Command::Euler { irrep } => euler(&p, irrep.as_deref(), f)?,
        Command::A2 => a2(&p, f)?,
        Command::Verify => return verify(&p, f),
    };
    Ok((text, 0))
}

fn classes_of(p: &Pipeline, genus: u8) -> Result<&sp6euler::f2sym::ConjugacyClassification> {
    Ok(match genus {
        1 => &p.sp2()?.classes,
        2 => &p.sp4()?.classes,
        _ => &p.sp6()?.classes,
    })
}

fn group(p: &Pipeline, genus: u8, f: Format) -> Result<String> {
    Ok(report::render_classes(classes_of(p, genus)?, f))
}

fn chartable(p: &Pipeline, genus: u8, f: Format) -> Result<String> {
    let classes = classes_of(p, genus)?;
    let table = match genus {
        1 => dixon_schneider(&p.sp2()?.group, classes)?,
        2 => dixon_schneider(&p.sp4()?.group, classes)?,
        _ => p.table()?.clone(),
    };
    Ok(report::render_character_table(&table, classes, f))
}

fn count(n: usize, cycles: Option<&str>, q: Option<u32>, f: Format) -> Result<(String, u8)> {
    let types = match cycles {
        Some(s) => vec![CycleType::parse(n, s)?],
        // identity first
        None => partitions(n).into_iter().rev().map(CycleType::new).collect::<Result<_>>()?,
    };
    let mut rows = Vec::new();
    let mut mismatch = false;
    for ct in types {
        let poly = twisted_count(n, &ct)?;
        let at_q = match q {
            Some(q) => {
                let value = poly.eval(q as i64);
                let brute = brute_force_twisted_count(&ct.representative(), q)?;
                mismatch |= value != brute as i128;
                Some((q, value, brute))
            }
            None => None,
        };
        rows.push((ct, poly, at_q));
    }
    let text = match (f, q) {
        (Format::Plain, None) if cycles.is_some() => format!("{}\n", rows[0].1),
        (_, None) => report::render_named_polys(rows.iter().map(|r| (r.0.to_string(), r.1.clone())), "cycles", f),
        (_, Some(_)) => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(ct, poly, at)| {
                    let (q, value, brute) = at.expect("q given");
                    vec![ct.to_string(), poly.to_string(), q.to_string(), value.to_string(), brute.to_string()]
                })
                .collect();
            report::render_text_table(&["cycles", "polynomial", "q", "value", "enumerated"], &table, f)
        }
    };
    Ok((text, if mismatch { status::MISMATCH } else { 0 }))
}

fn poincare(p: &Pipeline, n: Option<usize>, f: Format) -> Result<String> {
    if let Some(n) = n {
        let traces = purity_traces(n)?;
        let grid = Grid {
            corner: "cycles".into(),
            columns: (0..=traces.top_degree()).map(|d| format!("H{d}")).collect(),
            rows: traces.entries().iter().rev().map(|(ct, t)| (ct.to_string(), t.clone())).collect(),
        };
        return Ok(grid.render_dense(f));
    }
    let checks = reproduce_wreath_rows(&load_wreath_poincare()?, p.sp2()?, p.wreath()?)?;
    Ok(report::render_named_polys(checks.into_iter().map(|c| (c.row.label(), c.computed)), "element", f))
}

fn warn_if_ambiguous(p: &Pipeline) -> Result<()> {
    let r = p.relabel()?;
    if !r.succeeded() {
        log::warn!("no label bijection reproduces the stored tables; showing the closest candidate");
    } else if !r.is_unique() {
        log::warn!("{} label bijections reproduce the stored tables; showing the first", r.valid.len());
    }
    Ok(())
}

fn strata(p: &Pipeline, which: Option<&str>, f: Format) -> Result<String> {
    let selected = match which {
        Some(s) => vec![Stratum::parse(s)?],
        None => Stratum::ALL.to_vec(),
    };
    if selected.iter().any(|s| matches!(s, Stratum::SurfaceElliptic | Stratum::TripleElliptic)) {
        warn_if_ambiguous(p)?;
    }
    let tables = selected.into_iter().map(|s| p.relabeled(s)).collect::<Result<Vec<_>>>()?;
    Ok(match tables.as_slice() {
        [one] => report::render_cohomology(one, f),
        many => report::render_cohomology_set(many, f),
    })
}

fn euler(p: &Pipeline, irrep: Option<&str>, f: Format) -> Result<String> {
    warn_if_ambiguous(p)?;
    let e = &p.relabel()?.assembled;
    let Some(label) = irrep else {
        return Ok(report::render_euler(e, f));
    };
    let label: IrrepLabel = label.parse()?;
    let poly = e
        .component(&label)
        .ok_or_else(|| usage(format!("no irreducible labelled {label}")))?;
    Ok(match f {
        Format::Plain => format!("{poly}\n"),
        _ => report::render_named_polys([(label.to_string(), poly.clone())], "irrep", f),
    })
}

fn a2(p: &Pipeline, f: Format) -> Result<String> {
    let e = p.a2_euler()?;
    let items = e.partitions.iter().zip(&e.polys).map(|(l, poly)| (partition_label(l), poly.clone()));
    Ok(report::render_named_polys(items, "partition", f))
}

fn verify(p: &Pipeline, f: Format) -> Result<(String, u8)> {
    let checks = verify_all(p);
    let code = exit_code(&checks) as u8;
    let rejected: Vec<String> = p
        .cache_events()
        .into_iter()
        .filter_map(|e| match e {
            CacheEvent::Rejected { reason, .. } => Some(reason),
            _ => None,
        })
        .collect();
    let total_ok = checks.iter().any(|c| c.criterion == 7 && c.passed());
    let text = if f == Format::Json {
        let items: Vec<_> = checks
            .iter()
            .map(|c| {
                let (status, problems) = match &c.outcome {
                    Outcome::Pass => ("pass", Vec::new()),
                    Outcome::Mismatch(d) => ("fail", d.clone()),
                    Outcome::Failed(e) => ("error", vec![e.to_string()]),
                };
                json!({ "criterion": c.criterion, "name": c.name, "status": status,
                        "notes": c.notes, "problems": problems })
            })
            .collect();
        let v = json!({ "checks": items, "rejected_cache_files": rejected, "passed": code == 0 });
        format!("{}\n", serde_json::to_string_pretty(&v).expect("serialisable"))
    } else {
        let mut out = String::new();
        for r in &rejected {
            out += &format!("cache file rejected and recomputed: {r}\n");
        }
        for c in &checks {
            out += &format!("{c}\n");
        }
        if total_ok {
            out += "13 irreducibles occur; all coefficients in {\u{2212}1,0,1}\n";
        }
        out += if code == 0 { "all checks passed\n" } else { "verification FAILED\n" };
        out
    };
    Ok((text, code))
}
