//! Plain, CSV and JSON renderings of computed artifacts. Output is a pure
//! function of the input, so equal inputs give byte-identical reports.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::chartab::CharacterTable;
use crate::error::{usage, Error, Result};
use crate::f2sym::ConjugacyClassification;
use crate::poly::IntPolynomial;
use crate::strata::{CohomologyTable, EulerCharacteristic};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Plain,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Format::Plain),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(usage(format!("unknown format {other:?}"))),
        }
    }
}

/// A labelled rectangle of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub corner: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<i64>)>,
}

impl Grid {
    pub fn transposed(&self) -> Grid {
        let columns = self.rows.iter().map(|r| r.0.clone()).collect();
        let rows = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| (c.clone(), self.rows.iter().map(|r| r.1[j]).collect()))
            .collect();
        Grid { corner: self.corner.clone(), columns, rows }
    }

    /// Plain output prints zeros as dots.
    pub fn render(&self, format: Format) -> String {
        self.render_inner(format, true)
    }

    /// Like [`Grid::render`] but keeps zeros in plain output.
    pub fn render_dense(&self, format: Format) -> String {
        self.render_inner(format, false)
    }

    fn render_inner(&self, format: Format, dots: bool) -> String {
        match format {
            Format::Plain => self.plain(dots),
            Format::Csv => self.csv(None),
            Format::Json => pretty(&self.json_value()),
        }
    }

    fn csv(&self, prefix: Option<(&str, &str)>) -> String {
        let head = prefix.map(|p| p.0);
        let mut out = String::new();
        out += &csv_line(head.into_iter().chain([self.corner.as_str()]).chain(self.columns.iter().map(String::as_str)));
        for (label, values) in &self.rows {
            let cells: Vec<String> = values.iter().map(i64::to_string).collect();
            out += &csv_line(
                prefix.map(|p| p.1).into_iter().chain([label.as_str()]).chain(cells.iter().map(String::as_str)),
            );
        }
        out
    }

    fn json_value(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|(l, v)| json!({ self.corner.as_str(): l, "values": v })).collect::<Vec<_>>(),
        })
    }

    fn plain(&self, dots: bool) -> String {
        let head = std::iter::once(&self.corner).chain(&self.columns);
        let mut cells: Vec<Vec<String>> = vec![head.cloned().collect()];
        for (label, values) in &self.rows {
            let mut row = vec![label.clone()];
            row.extend(values.iter().map(|v| if dots && *v == 0 { ".".into() } else { v.to_string() }));
            cells.push(row);
        }
        aligned(&cells)
    }
}

fn aligned(cells: &[Vec<String>]) -> String {
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..cols)
        .map(|j| cells.iter().filter_map(|r| r.get(j)).map(|c| c.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, c)| if j == 0 { format!("{c:<w$}", w = width[j]) } else { format!("{c:>w$}", w = width[j]) })
            .collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line<'a>(fields: impl Iterator<Item = &'a str>) -> String {
    let mut line = fields.map(csv_field).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serialisable");
    s.push('\n');
    s
}

/// Rows are irreducibles and columns degrees; plain output is transposed
/// so that degrees run down the page.
pub fn cohomology_grid(table: &CohomologyTable) -> Grid {
    let columns = (0..=table.max_degree()).map(|d| format!("H{d}")).collect();
    let rows = table
        .labels()
        .iter()
        .enumerate()
        .map(|(j, l)| (l.to_string(), table.rows().iter().map(|r| r[j] as i64).collect()))
        .collect();
    Grid { corner: "irrep".into(), columns, rows }
}

/// Several tables at once: titled sections in plain output, a leading
/// `stratum` column in CSV, and an array in JSON.
pub fn render_cohomology_set(tables: &[CohomologyTable], format: Format) -> String {
    match format {
        Format::Plain => tables
            .iter()
            .map(|t| format!("{}\n{}", t.stratum(), render_cohomology(t, format)))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv => {
            let top = tables.iter().map(CohomologyTable::max_degree).max().unwrap_or(0);
            let mut out = String::new();
            for (i, t) in tables.iter().enumerate() {
                let mut grid = cohomology_grid(t);
                grid.columns = (0..=top).map(|d| format!("H{d}")).collect();
                for row in &mut grid.rows {
                    row.1.resize(top + 1, 0);
                }
                let name = t.stratum().to_string();
                let body = grid.csv(Some(("stratum", &name)));
                out += if i == 0 { &body } else { body.split_once('\n').map_or("", |b| b.1) };
            }
            out
        }
        Format::Json => pretty(&Value::Array(
            tables
                .iter()
                .map(|t| {
                    let mut v = cohomology_grid(t).json_value();
                    v["stratum"] = json!(t.stratum().to_string());
                    v
                })
                .collect(),
        )),
    }
}

pub fn render_cohomology(table: &CohomologyTable, format: Format) -> String {
    let grid = cohomology_grid(table);
    match format {
        Format::Plain => {
            let mut t = grid.transposed();
            t.corner.clear();
            t.render(format)
        }
        _ => grid.render(format),
    }
}

/// Rows are irreducibles and columns powers of `v`.
pub fn euler_grid(e: &EulerCharacteristic) -> Grid {
    let top = e.polys().iter().filter_map(IntPolynomial::degree).max().unwrap_or(0);
    let columns = (0..=top).map(|k| format!("v^{k}")).collect();
    let rows = e
        .labels()
        .iter()
        .zip(e.polys())
        .map(|(l, p)| (l.to_string(), (0..=top).map(|k| p.coeff(k)).collect()))
        .collect();
    Grid { corner: "irrep".into(), columns, rows }
}

pub fn render_euler(e: &EulerCharacteristic, format: Format) -> String {
    match format {
        Format::Plain => render_named_polys(
            e.labels().iter().zip(e.polys()).map(|(l, p)| (l.to_string(), p.clone())),
            "irrep",
            format,
        ),
        _ => euler_grid(e).render(format),
    }
}

/// `name  poly` lines, or a two-column CSV / JSON list.
pub fn render_named_polys(
    items: impl IntoIterator<Item = (String, IntPolynomial)>,
    key: &str,
    format: Format,
) -> String {
    let items: Vec<(String, String)> = items.into_iter().map(|(n, p)| (n, p.to_string())).collect();
    match format {
        Format::Plain => {
            let w = items.iter().map(|i| i.0.chars().count()).max().unwrap_or(0);
            items.iter().map(|(n, p)| format!("{n:<w$}  {p}\n")).collect()
        }
        Format::Csv => {
            let mut out = csv_line([key, "polynomial"].into_iter());
            for (n, p) in &items {
                out += &csv_line([n.as_str(), p.as_str()].into_iter());
            }
            out
        }
        Format::Json => pretty(&Value::Array(
            items.iter().map(|(n, p)| json!({ key: n, "polynomial": p })).collect(),
        )),
    }
}

/// A table of preformatted cells; plain output is left-aligned.
pub fn render_text_table(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Plain => {
            let width: Vec<usize> = (0..header.len())
                .map(|j| rows.iter().map(|r| r[j].chars().count()).chain([header[j].len()]).max().unwrap_or(0))
                .collect();
            std::iter::once(header.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .chain(rows.iter().cloned())
                .map(|r| {
                    let cells: Vec<String> = r.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
                    format!("{}\n", cells.join("  ").trim_end())
                })
                .collect()
        }
        Format::Csv => std::iter::once(csv_line(header.iter().copied()))
            .chain(rows.iter().map(|r| csv_line(r.iter().map(String::as_str))))
            .collect(),
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|r| Value::Object(header.iter().zip(r).map(|(h, c)| (h.to_string(), json!(c))).collect()))
                .collect(),
        )),
    }
}

/// Class names `<order><letter>`, letters running within each element order.
pub fn class_names(classes: &ConjugacyClassification) -> Vec<String> {
    let mut names = Vec::with_capacity(classes.class_count());
    let mut last = (0, 0u8);
    for c in 0..classes.class_count() {
        let order = classes.element_order(c);
        let letter = if order == last.0 { last.1 + 1 } else { 0 };
        last = (order, letter);
        let mut name = order.to_string();
        name.push((b'A' + letter % 26) as char);
        if letter >= 26 {
            write!(name, "{}", letter / 26).expect("string write");
        }
        names.push(name);
    }
    names
}

pub fn render_classes(classes: &ConjugacyClassification, format: Format) -> String {
    let names = class_names(classes);
    match format {
        Format::Json => pretty(&json!({
            "order": classes.group_order(),
            "classes": (0..classes.class_count()).map(|c| json!({
                "name": names[c],
                "element_order": classes.element_order(c),
                "size": classes.class_size(c),
                "representative": format!("{:x}", classes.representative_key(c)),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut cells = vec![vec!["class".to_string(), "order".into(), "size".into(), "representative".into()]];
            for c in 0..classes.class_count() {
                cells.push(vec![
                    names[c].clone(),
                    classes.element_order(c).to_string(),
                    classes.class_size(c).to_string(),
                    format!("{:x}", classes.representative_key(c)),
                ]);
            }
            if format == Format::Csv {
                cells.iter().map(|r| csv_line(r.iter().map(String::as_str))).collect()
            } else {
                format!(
                    "order {}, {} classes\n{}",
                    classes.group_order(),
                    classes.class_count(),
                    aligned(&cells)
                )
            }
        }
    }
}

pub fn render_character_table(
    table: &CharacterTable,
    classes: &ConjugacyClassification,
    format: Format,
) -> String {
    let grid = Grid {
        corner: "irrep".into(),
        columns: class_names(classes),
        rows: table
            .labels()
            .iter()
            .zip(table.irreducibles())
            .map(|(l, chi)| (l.to_string(), chi.values().to_vec()))
            .collect(),
    };
    grid.render_dense(format)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn grid() -> Grid {
        Grid {
            corner: "irrep".into(),
            columns: vec!["H0".into(), "H1".into()],
            rows: vec![("1a".into(), vec![1, 0]), ("7a".into(), vec![0, 12])],
        }
    }

    #[test]
    fn plain_grid_is_aligned_with_dots_for_zero() {
        assert_eq!(grid().render(Format::Plain), "irrep  H0  H1\n1a      1   .\n7a      .  12\n");
    }

    #[test]
    fn csv_and_json() {
        assert_eq!(grid().render(Format::Csv), "irrep,H0,H1\n1a,1,0\n7a,0,12\n");
        let v: Value = serde_json::from_str(&grid().render(Format::Json)).unwrap();
        assert_eq!(v["rows"][1]["values"][1], 12);
        assert_eq!(v["rows"][1]["irrep"], "7a");
    }

    #[test]
    fn transpose_twice_is_identity() {
        assert_eq!(grid().transposed().transposed(), grid());
        assert_eq!(grid().transposed().rows[1], ("H1".to_string(), vec![0, 12]));
    }

    #[test]
    fn named_polys() {
        let items = vec![
            ("s6".to_string(), IntPolynomial::new(Var::V, vec![1, 0, 1])),
            ("s3,2,1".to_string(), IntPolynomial::new(Var::V, vec![0, 0, 0, 0, 0, 0, 1])),
        ];
        assert_eq!(render_named_polys(items.clone(), "partition", Format::Plain), "s6      1 + v^2\ns3,2,1  v^6\n");
        assert_eq!(
            render_named_polys(items, "partition", Format::Csv),
            "partition,polynomial\ns6,1 + v^2\n\"s3,2,1\",v^6\n"
        );
    }

    #[test]
    fn formats_parse() {
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
