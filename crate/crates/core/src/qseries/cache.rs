//! JSON-lines coefficient cache. The first line is a header naming the eta
//! spec, field and window; each further line holds one grid coefficient as
//! exact decimal strings. Files are keyed by (spec, field, truncation) and
//! written through a temporary file that is renamed into place.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{c_series, EtaSpec, QExpansion};
use crate::error::{Error, Result};
use crate::scalars::{FieldTag, QuadScalar};

pub const CACHE_ENV: &str = "ETAQ_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub spec: String,
    pub field: Option<i64>,
    pub start24: i64,
    pub step24: i64,
    pub trunc24: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub k24: i64,
    pub a_num: String,
    pub a_den: String,
    pub b_num: String,
    pub b_den: String,
    pub d: Option<i64>,
}

impl Record {
    fn from_scalar(k24: i64, c: &QuadScalar) -> Self {
        Record {
            k24,
            a_num: c.a().numer().to_string(),
            a_den: c.a().denom().to_string(),
            b_num: c.b().numer().to_string(),
            b_den: c.b().denom().to_string(),
            d: c.field(),
        }
    }

    fn to_scalar(&self) -> Result<QuadScalar> {
        let big =
            |s: &str| -> Result<BigInt> { s.parse().map_err(|_| Error::Io(format!("bad integer {s:?} in cache"))) };
        let ratio = |n: &str, d: &str| -> Result<BigRational> {
            let d = big(d)?;
            if d == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(big(n)?, d))
        };
        QuadScalar::new(
            ratio(&self.a_num, &self.a_den)?,
            ratio(&self.b_num, &self.b_den)?,
            self.d,
        )
    }
}

pub fn write_jsonl<W: Write>(mut w: W, spec: &EtaSpec, f: &QExpansion) -> Result<()> {
    let header = Header {
        spec: spec.to_string(),
        field: f.field(),
        start24: f.start24(),
        step24: f.step24(),
        trunc24: f.trunc24(),
    };
    serde_json::to_writer(&mut w, &header)?;
    writeln!(w)?;
    for (k, c) in f.coeffs().iter().enumerate() {
        let e = f.start24() + k as i64 * f.step24();
        serde_json::to_writer(&mut w, &Record::from_scalar(e, c))?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_jsonl<R: Read>(r: R) -> Result<(Header, QExpansion)> {
    let mut lines = BufReader::new(r).lines();
    let header: Header = serde_json::from_str(&lines.next().ok_or_else(|| Error::Io("empty cache file".into()))??)?;
    let mut coeffs = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line)?;
        let expect = header.start24 + coeffs.len() as i64 * header.step24;
        if rec.k24 != expect {
            return Err(Error::Io(format!(
                "cache record k24={} out of order (expected {expect})",
                rec.k24
            )));
        }
        coeffs.push(rec.to_scalar()?);
    }
    let f = QExpansion::new(header.start24, header.step24, header.trunc24, coeffs)?;
    Ok((header, f))
}

#[derive(Clone, Debug)]
pub struct CoeffCache {
    dir: PathBuf,
}

#[derive(Clone, Debug, Serialize)]
pub struct CacheEntry {
    pub path: PathBuf,
    pub spec: String,
    pub field: Option<i64>,
    pub trunc24: i64,
}

fn field_key(field: FieldTag) -> String {
    match field {
        None => "Q".into(),
        Some(d) => format!("d{d}"),
    }
}

fn spec_key(spec: &EtaSpec) -> String {
    spec.to_string().replace(' ', "_").replace('^', "e")
}

impl CoeffCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CoeffCache { dir: dir.into() }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(CoeffCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, spec: &EtaSpec, field: FieldTag, trunc24: i64) -> PathBuf {
        self.dir
            .join(format!("{}__{}__t{}.jsonl", spec_key(spec), field_key(field), trunc24))
    }

    /// Writes atomically: temp file in the same directory, then rename.
    pub fn store(&self, spec: &EtaSpec, f: &QExpansion) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(spec, f.field(), f.trunc24());
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        {
            let file = fs::File::create(&tmp)?;
            let mut w = BufWriter::new(file);
            write_jsonl(&mut w, spec, f)?;
            w.flush()?;
            w.get_ref().sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    pub fn entries(&self) -> Result<Vec<CacheEntry>> {
        let mut out = Vec::new();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e.into()),
        };
        for ent in rd {
            let path = ent?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("jsonl") {
                continue;
            }
            let file = fs::File::open(&path)?;
            let mut first = String::new();
            BufReader::new(file).read_line(&mut first)?;
            if let Ok(h) = serde_json::from_str::<Header>(&first) {
                out.push(CacheEntry {
                    path,
                    spec: h.spec,
                    field: h.field,
                    trunc24: h.trunc24,
                });
            }
        }
        out.sort_by(|a, b| (&a.spec, a.trunc24).cmp(&(&b.spec, b.trunc24)));
        Ok(out)
    }

    /// Any cached expansion of `spec` in `field` covering `trunc24`,
    /// truncated to exactly that window.
    pub fn load(&self, spec: &EtaSpec, field: FieldTag, trunc24: i64) -> Result<Option<QExpansion>> {
        let want = spec.to_string();
        let best = self
            .entries()?
            .into_iter()
            .filter(|e| e.spec == want && e.field == field && e.trunc24 >= trunc24)
            .min_by_key(|e| e.trunc24);
        match best {
            None => Ok(None),
            Some(e) => {
                let (_, f) = read_jsonl(fs::File::open(&e.path)?)?;
                Ok(Some(f.truncate(trunc24)?))
            }
        }
    }

    /// C-series through `q^limit`, from the cache when possible.
    pub fn c_series(&self, spec: &EtaSpec, limit: usize) -> Result<QExpansion> {
        let trunc24 = 24 * (limit as i64 + 1);
        if let Some(f) = self.load(spec, None, trunc24)? {
            return Ok(f);
        }
        let f = c_series(spec, limit)?;
        self.store(spec, &f)?;
        Ok(f)
    }

    pub fn clear(&self) -> Result<usize> {
        let entries = self.entries()?;
        for e in &entries {
            fs::remove_file(&e.path)?;
        }
        Ok(entries.len())
    }
}
