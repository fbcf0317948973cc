//! On-disk operator matrix cache.
//!
//! One file per operator. Layout, all integers and floats little-endian:
//!
//! ```text
//! offset  size        field
//! 0       8           magic  b"LIEBMAT\0"
//! 8       1           format version (1)
//! 9       4           key length L (u32)
//! 13      L           key, UTF-8
//! 13+L    4           rows (u32)
//! 17+L    4           cols (u32)
//! 21+L    16·rows·cols entries row-major, each (re: f64, im: f64)
//! ```
//!
//! Writes go to a temporary file in the cache directory and are renamed into
//! place, so concurrent writers never expose a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

pub const MAGIC: &[u8; 8] = b"LIEBMAT\0";
pub const VERSION: u8 = 1;
pub const ENV_VAR: &str = "LIEBASIS_CACHE_DIR";

pub fn encode(key: &str, m: &CMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(21 + key.len() + 16 * m.len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&(key.len() as u32).to_le_bytes());
    out.extend_from_slice(key.as_bytes());
    out.extend_from_slice(&(m.nrows() as u32).to_le_bytes());
    out.extend_from_slice(&(m.ncols() as u32).to_le_bytes());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> std::result::Result<&'a [u8], String> {
        let end = self.pos.checked_add(n).ok_or("length overflow")?;
        let s = self
            .bytes
            .get(self.pos..end)
            .ok_or_else(|| format!("truncated at byte {}", self.pos))?;
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> std::result::Result<u32, String> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> std::result::Result<f64, String> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub fn decode(bytes: &[u8]) -> std::result::Result<(String, CMatrix), String> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(8)? != MAGIC {
        return Err("bad magic".into());
    }
    let version = r.take(1)?[0];
    if version != VERSION {
        return Err(format!("unsupported version {version}"));
    }
    let key_len = r.u32()? as usize;
    let key = std::str::from_utf8(r.take(key_len)?)
        .map_err(|e| e.to_string())?
        .to_owned();
    let rows = r.u32()? as usize;
    let cols = r.u32()? as usize;
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let re = r.f64()?;
            let im = r.f64()?;
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    if r.pos != bytes.len() {
        return Err(format!("{} trailing bytes", bytes.len() - r.pos));
    }
    Ok((key, m))
}

#[derive(Debug, Clone)]
pub struct MatrixCache {
    dir: PathBuf,
}

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    /// Flag value wins over `LIEBASIS_CACHE_DIR`; neither means no cache.
    pub fn resolve(flag: Option<&Path>) -> Result<Option<Self>> {
        match flag {
            Some(p) => Self::new(p).map(Some),
            None => match std::env::var_os(ENV_VAR) {
                Some(p) if !p.is_empty() => Self::new(PathBuf::from(p)).map(Some),
                _ => Ok(None),
            },
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let safe: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        self.dir.join(format!("{safe}.lbm"))
    }

    pub fn load(&self, key: &str) -> Result<Option<CMatrix>> {
        let path = self.path_for(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let (stored, m) = decode(&bytes).map_err(|reason| Error::CacheFormat {
            path: path.clone(),
            reason,
        })?;
        if stored != key {
            return Err(Error::CacheFormat {
                path,
                reason: format!("holds key '{stored}', expected '{key}'"),
            });
        }
        Ok(Some(m))
    }

    pub fn store(&self, key: &str, m: &CMatrix) -> Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&encode(key, m))?;
        tmp.flush()?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn get_or_compute(&self, key: &str, compute: impl FnOnce() -> Result<CMatrix>) -> Result<CMatrix> {
        if let Some(m) = self.load(key)? {
            return Ok(m);
        }
        let m = compute()?;
        self.store(key, &m)?;
        Ok(m)
    }
}
