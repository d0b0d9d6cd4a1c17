//! Lazily built, shareable state for the full computation.

use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use crate::cache;
use crate::chartab::{dixon_schneider, CharacterTable, ClassData};
use crate::error::{Error, Result};
use crate::f2sym::{
    conjugacy_classes, embed_product, embed_wreath, enumerate_group, ConjugacyClassification,
    FiniteMatrixGroup, SubgroupEmbedding,
};
use crate::kunneth::SymmetricFactor;
use crate::strata::{
    compute_a111_table, compute_a21_table, compute_a2_euler, load_reference_euler,
    load_stratum_table, relabel_protocol, A2Euler, CohomologyTable, EulerCharacteristic,
    RelabelOutcome, Stratum,
};

/// `Sp(6,2)` with its classes.
#[derive(Debug)]
pub struct Ambient {
    pub group: FiniteMatrixGroup,
    pub classes: ConjugacyClassification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheEvent {
    Loaded(PathBuf),
    Written(PathBuf),
    /// A cache file failed validation and was recomputed.
    Rejected { path: PathBuf, reason: String },
}

#[derive(Debug, Default)]
pub struct Pipeline {
    cache_dir: Option<PathBuf>,
    events: Mutex<Vec<CacheEvent>>,
    sp6: OnceLock<Ambient>,
    table: OnceLock<CharacterTable>,
    sp4: OnceLock<SymmetricFactor>,
    sp2: OnceLock<SymmetricFactor>,
    product: OnceLock<SubgroupEmbedding>,
    wreath: OnceLock<SubgroupEmbedding>,
    wreath2: OnceLock<SubgroupEmbedding>,
    a21: OnceLock<CohomologyTable>,
    a111: OnceLock<CohomologyTable>,
    reference: OnceLock<[CohomologyTable; 4]>,
    reference_euler: OnceLock<EulerCharacteristic>,
    relabel: OnceLock<RelabelOutcome>,
    a2: OnceLock<A2Euler>,
}

/// `OnceLock::get_or_try_init` without the nightly feature. A lost race
/// only costs a duplicate computation.
fn get_or_try<T>(cell: &OnceLock<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = init()?;
    let _ = cell.set(v);
    Ok(cell.get().expect("just set"))
}

impl Pipeline {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        Pipeline { cache_dir, ..Default::default() }
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn cache_events(&self) -> Vec<CacheEvent> {
        self.events.lock().expect("event log poisoned").clone()
    }

    fn record(&self, e: CacheEvent) {
        match &e {
            // the reason already names the file
            CacheEvent::Rejected { reason, .. } => log::warn!("ignoring cache: {reason}; recomputing"),
            CacheEvent::Loaded(p) => log::info!("loaded {}", p.display()),
            CacheEvent::Written(p) => log::info!("wrote {}", p.display()),
        }
        self.events.lock().expect("event log poisoned").push(e);
    }

    /// Runs `read` against the cache, falling back to `compute` (and
    /// rewriting the file) when it is missing or corrupt.
    fn cached<T>(
        &self,
        path: impl Fn(&Path) -> PathBuf,
        read: impl FnOnce(&Path) -> Result<Option<T>>,
        compute: impl FnOnce() -> Result<T>,
        write: impl FnOnce(&Path, &T) -> Result<()>,
    ) -> Result<T> {
        let Some(dir) = self.cache_dir.as_deref() else {
            return compute();
        };
        match read(dir) {
            Ok(Some(v)) => {
                self.record(CacheEvent::Loaded(path(dir)));
                return Ok(v);
            }
            Ok(None) => {}
            Err(Error::Corrupt(reason)) => {
                self.record(CacheEvent::Rejected { path: path(dir), reason })
            }
            Err(e) => return Err(e),
        }
        let v = compute()?;
        write(dir, &v)?;
        self.record(CacheEvent::Written(path(dir)));
        Ok(v)
    }

    pub fn sp6(&self) -> Result<&Ambient> {
        get_or_try(&self.sp6, || {
            let group = enumerate_group(3)?;
            let classes = self.cached(
                |d| cache::classes_path(d, 3),
                |d| cache::read_classes(d, &group),
                || Ok(conjugacy_classes(&group)),
                |d, c| cache::write_classes(d, &group, c),
            )?;
            Ok(Ambient { group, classes })
        })
    }

    pub fn table(&self) -> Result<&CharacterTable> {
        get_or_try(&self.table, || {
            let sp6 = self.sp6()?;
            let data = ClassData::of(&sp6.classes);
            self.cached(
                |d| cache::chartab_path(d, data.fingerprint),
                |d| cache::read_chartab(d, &data),
                || dixon_schneider(&sp6.group, &sp6.classes),
                cache::write_chartab,
            )
        })
    }

    pub fn sp4(&self) -> Result<&SymmetricFactor> {
        get_or_try(&self.sp4, || SymmetricFactor::new(2))
    }

    pub fn sp2(&self) -> Result<&SymmetricFactor> {
        get_or_try(&self.sp2, || SymmetricFactor::new(1))
    }

    /// `Sp(4,2) × Sp(2,2)` in `Sp(6,2)`.
    pub fn product(&self) -> Result<&SubgroupEmbedding> {
        get_or_try(&self.product, || {
            let sp6 = self.sp6()?;
            embed_product(&sp6.group, &sp6.classes, &self.sp4()?.group, &self.sp2()?.group)
        })
    }

    /// `S₃ ⋉ Sp(2,2)³` in `Sp(6,2)`.
    pub fn wreath(&self) -> Result<&SubgroupEmbedding> {
        get_or_try(&self.wreath, || {
            let sp6 = self.sp6()?;
            embed_wreath(&sp6.group, &sp6.classes, &self.sp2()?.group)
        })
    }

    /// `S₂ ⋉ Sp(2,2)²` in `Sp(4,2)`.
    pub fn wreath2(&self) -> Result<&SubgroupEmbedding> {
        get_or_try(&self.wreath2, || {
            let sp4 = self.sp4()?;
            embed_wreath(&sp4.group, &sp4.classes, &self.sp2()?.group)
        })
    }

    /// Surface-elliptic table in canonical labels.
    pub fn a21(&self) -> Result<&CohomologyTable> {
        get_or_try(&self.a21, || {
            compute_a21_table(self.table()?, self.product()?, self.sp4()?, self.sp2()?)
        })
    }

    /// Triple-elliptic table in canonical labels.
    pub fn a111(&self) -> Result<&CohomologyTable> {
        get_or_try(&self.a111, || compute_a111_table(self.table()?, self.wreath()?, self.sp2()?))
    }

    /// The four stored stratum tables.
    pub fn reference_tables(&self) -> Result<&[CohomologyTable; 4]> {
        get_or_try(&self.reference, || {
            let [a, b, c, d] = Stratum::ALL.map(load_stratum_table);
            Ok([a?, b?, c?, d?])
        })
    }

    pub fn reference_euler(&self) -> Result<&EulerCharacteristic> {
        get_or_try(&self.reference_euler, load_reference_euler)
    }

    pub fn relabel(&self) -> Result<&RelabelOutcome> {
        get_or_try(&self.relabel, || {
            relabel_protocol(self.a21()?, self.a111()?, self.reference_tables()?, self.reference_euler()?)
        })
    }

    /// A computed table in reference labels and reference column order.
    pub fn relabeled(&self, stratum: Stratum) -> Result<CohomologyTable> {
        let reference = self.reference_tables()?;
        let order = reference[0].labels();
        let map = &self.relabel()?.best;
        match stratum {
            Stratum::SurfaceElliptic => self.a21()?.relabeled(map, order),
            Stratum::TripleElliptic => self.a111()?.relabeled(map, order),
            other => Ok(reference[other as usize].clone()),
        }
    }

    pub fn a2_euler(&self) -> Result<&A2Euler> {
        get_or_try(&self.a2, || compute_a2_euler(self.sp4()?, self.sp2()?, self.wreath2()?))
    }
}
