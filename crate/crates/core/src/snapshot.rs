//! Snapshot files: a short text header followed by raw little-endian f64
//! values in column-major order.
//!
//! ```text
//! dims 3
//! counts 50 50 50
//! mins -64 -64 -64
//! maxs 64 64 64
//! time 0.25
//! <8 * prod(counts) bytes>
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Grid, ScalarField};

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub counts: Vec<usize>,
    pub mins: Vec<f64>,
    pub maxs: Vec<f64>,
    pub time: f64,
    /// Column-major values.
    pub data: Vec<f64>,
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

impl Snapshot {
    pub fn from_field(field: &ScalarField, time: f64) -> Self {
        let g = field.grid();
        Snapshot {
            counts: g.counts().to_vec(),
            mins: g.mins().to_vec(),
            maxs: g.maxs().to_vec(),
            time,
            data: field.to_column_major(),
        }
    }

    pub fn dims(&self) -> usize {
        self.counts.len()
    }

    /// Attaches the data to `grid`, which must match the header.
    pub fn to_field(&self, grid: &Arc<Grid>) -> Result<ScalarField> {
        if grid.counts() != self.counts.as_slice()
            || grid.mins() != self.mins.as_slice()
            || grid.maxs() != self.maxs.as_slice()
        {
            return Err(Error::Snapshot(
                "header does not describe the given grid".into(),
            ));
        }
        ScalarField::from_column_major(Arc::clone(grid), self.data.clone())
    }

    /// Rebuilds a grid from the header with the given periodic dimensions.
    pub fn grid(&self, periodic_dims: &[usize]) -> Result<Grid> {
        Grid::new(&self.mins, &self.maxs, &self.counts, periodic_dims)
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "dims {}", self.dims())?;
        writeln!(w, "counts {}", join(&self.counts))?;
        writeln!(w, "mins {}", join(&self.mins))?;
        writeln!(w, "maxs {}", join(&self.maxs))?;
        writeln!(w, "time {}", self.time)?;
        for v in &self.data {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from(mut r: impl BufRead) -> Result<Self> {
        let mut header = |key: &str| -> Result<Vec<String>> {
            let mut line = String::new();
            r.read_line(&mut line)
                .map_err(|e| Error::Snapshot(format!("reading {key}: {e}")))?;
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some(k) if k == key => Ok(parts.map(str::to_owned).collect()),
                other => Err(Error::Snapshot(format!(
                    "expected {key:?} line, found {other:?}"
                ))),
            }
        };
        fn parse<T: std::str::FromStr>(key: &str, xs: Vec<String>) -> Result<Vec<T>> {
            xs.iter()
                .map(|s| {
                    s.parse()
                        .map_err(|_| Error::Snapshot(format!("bad {key} value {s:?}")))
                })
                .collect()
        }

        let dims: Vec<usize> = parse("dims", header("dims")?)?;
        let counts: Vec<usize> = parse("counts", header("counts")?)?;
        let mins: Vec<f64> = parse("mins", header("mins")?)?;
        let maxs: Vec<f64> = parse("maxs", header("maxs")?)?;
        let time: Vec<f64> = parse("time", header("time")?)?;
        let dim = match dims.as_slice() {
            [d] => *d,
            _ => return Err(Error::Snapshot("dims must hold one integer".into())),
        };
        if counts.len() != dim || mins.len() != dim || maxs.len() != dim || time.len() != 1 {
            return Err(Error::Snapshot("header lengths disagree with dims".into()));
        }

        let n: usize = counts.iter().product();
        let mut bytes = vec![0u8; n * 8];
        r.read_exact(&mut bytes)
            .map_err(|e| Error::Snapshot(format!("payload shorter than {n} values: {e}")))?;
        let mut extra = [0u8; 1];
        if r.read(&mut extra)
            .map_err(|e| Error::Snapshot(e.to_string()))?
            != 0
        {
            return Err(Error::Snapshot("trailing bytes after payload".into()));
        }
        let data = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect();
        Ok(Snapshot {
            counts,
            mins,
            maxs,
            time: time[0],
            data,
        })
    }
}

pub fn write_snapshot(path: &Path, field: &ScalarField, time: f64) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    Snapshot::from_field(field, time)
        .write_to(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Snapshot::read_from(BufReader::new(file))
}
