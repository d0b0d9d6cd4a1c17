//! Plain-text cache for class listings and character tables.
//!
//! Class file `classes-g<genus>.txt`:
//!
//! ```text
//! group <order> <class_count>
//! class <representative key, hex> <size>      one per class
//! <element key, hex> <class index>             one per element, key order
//! ```
//!
//! Character table file `chartab-<fingerprint, hex>.txt`:
//!
//! ```text
//! group <order> <class_count>
//! <class sizes, space separated>
//! <character values, space separated>           one per irreducible
//! ```
//!
//! Every load is re-validated against a freshly enumerated group; anything
//! that does not check out is reported as [`Error::Corrupt`].

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::chartab::{CharacterTable, ClassData};
use crate::error::{Error, Result};
use crate::f2sym::{ConjugacyClassification, FiniteMatrixGroup};

/// Conjugation-invariance samples drawn when a class file is loaded.
const VALIDATION_SAMPLES: usize = 4096;

pub fn classes_path(dir: &Path, genus: usize) -> PathBuf {
    dir.join(format!("classes-g{genus}.txt"))
}

pub fn chartab_path(dir: &Path, fingerprint: u64) -> PathBuf {
    dir.join(format!("chartab-{fingerprint:016x}.txt"))
}

fn corrupt(path: &Path, msg: impl std::fmt::Display) -> Error {
    Error::Corrupt(format!("{}: {msg}", path.display()))
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn parse_header(path: &Path, line: Option<&str>) -> Result<(u64, usize)> {
    let line = line.ok_or_else(|| corrupt(path, "empty file"))?;
    match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["group", order, count] => Ok((
            order.parse().map_err(|_| corrupt(path, "bad order"))?,
            count.parse().map_err(|_| corrupt(path, "bad class count"))?,
        )),
        _ => Err(corrupt(path, format!("bad header {line:?}"))),
    }
}

pub fn write_classes(dir: &Path, group: &FiniteMatrixGroup, classes: &ConjugacyClassification) -> Result<()> {
    let mut s = format!("group {} {}\n", group.order(), classes.class_count());
    for c in 0..classes.class_count() {
        s += &format!("class {:x} {}\n", classes.representative_key(c), classes.class_size(c));
    }
    for (i, m) in group.elements().iter().enumerate() {
        s += &format!("{:x} {}\n", m.key(), classes.class_of(i));
    }
    write_atomic(&classes_path(dir, group.form().genus()), &s)
}

/// Reads a class file written for `group`, returning `Ok(None)` if absent.
pub fn read_classes(dir: &Path, group: &FiniteMatrixGroup) -> Result<Option<ConjugacyClassification>> {
    let path = classes_path(dir, group.form().genus());
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = text.lines();
    let (order, count) = parse_header(&path, lines.next())?;
    if order != group.order() as u64 {
        return Err(corrupt(&path, format!("order {order}, expected {}", group.order())));
    }
    let hex = |s: &str| u64::from_str_radix(s, 16).map_err(|_| corrupt(&path, format!("bad key {s:?}")));
    let mut stated = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines.next().ok_or_else(|| corrupt(&path, "truncated class list"))?;
        let ["class", key, size] = line.split_whitespace().collect::<Vec<_>>()[..] else {
            return Err(corrupt(&path, format!("bad class line {line:?}")));
        };
        let size: u64 = size.parse().map_err(|_| corrupt(&path, "bad class size"))?;
        stated.push((hex(key)?, size));
    }
    let mut assignment = Vec::with_capacity(group.order());
    for (i, m) in group.elements().iter().enumerate() {
        let line = lines.next().ok_or_else(|| corrupt(&path, "truncated element list"))?;
        let (key, class) = line.split_once(' ').ok_or_else(|| corrupt(&path, "bad element line"))?;
        if hex(key)? != m.key() {
            return Err(corrupt(&path, format!("element {i} key differs from the group")));
        }
        let class: u16 = class.parse().map_err(|_| corrupt(&path, "bad class index"))?;
        if class as usize >= count {
            return Err(corrupt(&path, format!("class index {class} out of range")));
        }
        assignment.push(class);
    }
    if lines.next().is_some() {
        return Err(corrupt(&path, "trailing data"));
    }
    let classes = ConjugacyClassification::from_assignment(group, assignment)
        .map_err(|e| corrupt(&path, e))?;
    let derived: Vec<(u64, u64)> =
        (0..count).map(|c| (classes.representative_key(c), classes.class_size(c))).collect();
    if derived != stated {
        return Err(corrupt(&path, "class summary lines disagree with the element listing"));
    }
    classes
        .validate(group, VALIDATION_SAMPLES, 0x5eed)
        .map_err(|e| corrupt(&path, e))?;
    Ok(Some(classes))
}

pub fn write_chartab(dir: &Path, table: &CharacterTable) -> Result<()> {
    let g = table.group();
    let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
    let mut s = format!("group {} {}\n", g.order, g.class_count());
    s += &join(&mut g.sizes.iter().map(u64::to_string));
    s.push('\n');
    for chi in table.irreducibles() {
        s += &join(&mut chi.values().iter().map(i64::to_string));
        s.push('\n');
    }
    write_atomic(&chartab_path(dir, g.fingerprint), &s)
}

/// Reads the table cached for these classes; orthogonality is re-checked.
pub fn read_chartab(dir: &Path, group: &Arc<ClassData>) -> Result<Option<CharacterTable>> {
    let path = chartab_path(dir, group.fingerprint);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = text.lines();
    let (order, count) = parse_header(&path, lines.next())?;
    if order != group.order || count != group.class_count() {
        return Err(corrupt(&path, "header does not match the classes"));
    }
    let sizes = lines
        .next()
        .ok_or_else(|| corrupt(&path, "missing class sizes"))?
        .split_whitespace()
        .map(|v| v.parse::<u64>().map_err(|_| corrupt(&path, format!("bad size {v:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if sizes != group.sizes {
        return Err(corrupt(&path, "class sizes do not match"));
    }
    let rows = lines
        .map(|line| {
            line.split_whitespace()
                .map(|v| v.parse::<i64>().map_err(|_| corrupt(&path, format!("bad value {v:?}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != count) {
        return Err(corrupt(&path, "row length differs from the class count"));
    }
    CharacterTable::from_rows(group.clone(), rows)
        .map(Some)
        .map_err(|e| corrupt(&path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::dixon_schneider;
    use crate::f2sym::{conjugacy_classes, enumerate_group};

    fn sp4() -> (FiniteMatrixGroup, ConjugacyClassification) {
        let g = enumerate_group(2).unwrap();
        let c = conjugacy_classes(&g);
        (g, c)
    }

    #[test]
    fn classes_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let (g, c) = sp4();
        assert!(read_classes(dir.path(), &g).unwrap().is_none());
        write_classes(dir.path(), &g, &c).unwrap();
        let back = read_classes(dir.path(), &g).unwrap().unwrap();
        assert_eq!(back.fingerprint(), c.fingerprint());
        assert_eq!(back.class_sizes(), c.class_sizes());
    }

    #[test]
    fn chartab_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let (g, c) = sp4();
        let t = dixon_schneider(&g, &c).unwrap();
        write_chartab(dir.path(), &t).unwrap();
        let back = read_chartab(dir.path(), t.group()).unwrap().unwrap();
        assert_eq!(back.irreducibles(), t.irreducibles());
    }

    #[test]
    fn moving_an_element_between_classes_is_caught() {
        let dir = tempfile::tempdir().unwrap();
        let (g, c) = sp4();
        write_classes(dir.path(), &g, &c).unwrap();
        let path = classes_path(dir.path(), 2);
        let text = fs::read_to_string(&path).unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let last = lines.last_mut().unwrap();
        let (key, class) = last.split_once(' ').unwrap();
        let other = (class.parse::<usize>().unwrap() + 1) % c.class_count();
        *last = format!("{key} {other}");
        fs::write(&path, lines.join("\n") + "\n").unwrap();
        assert!(matches!(read_classes(dir.path(), &g), Err(Error::Corrupt(_))));
    }

    #[test]
    fn altered_character_value_is_caught() {
        let dir = tempfile::tempdir().unwrap();
        let (g, c) = sp4();
        let t = dixon_schneider(&g, &c).unwrap();
        write_chartab(dir.path(), &t).unwrap();
        let path = chartab_path(dir.path(), t.group().fingerprint);
        let text = fs::read_to_string(&path).unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines[3] = lines[3].replacen("1", "2", 1);
        fs::write(&path, lines.join("\n") + "\n").unwrap();
        assert!(matches!(read_chartab(dir.path(), t.group()), Err(Error::Corrupt(_))));
        fs::write(&path, "garbage").unwrap();
        assert!(matches!(read_chartab(dir.path(), t.group()), Err(Error::Corrupt(_))));
    }
}
