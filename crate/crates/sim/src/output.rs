//! CSV and JSON-lines record files.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::config::{OutputFormat, OutputSpec};
use crate::error::{Result, SimError};
use crate::record::FerRecord;

/// Appends one record per SNR point, flushing after each so partial sweeps
/// survive interruption.
pub struct RecordWriter {
    path: PathBuf,
    inner: Inner,
}

enum Inner {
    Csv(csv::Writer<File>),
    Json(BufWriter<File>),
}

impl RecordWriter {
    /// Creates (truncates) the file.
    pub fn create(spec: &OutputSpec) -> Result<Self> {
        let io = |source| SimError::Output {
            path: spec.path.clone(),
            source,
        };
        let file = File::create(&spec.path).map_err(io)?;
        let inner = match spec.format {
            OutputFormat::Csv => Inner::Csv(csv::Writer::from_writer(file)),
            OutputFormat::JsonLines => Inner::Json(BufWriter::new(file)),
        };
        Ok(Self {
            path: spec.path.clone(),
            inner,
        })
    }

    pub fn append(&mut self, record: &FerRecord) -> Result<()> {
        let err = |e: std::io::Error| SimError::Output {
            path: self.path.clone(),
            source: e,
        };
        match &mut self.inner {
            Inner::Csv(w) => {
                w.serialize(record).map_err(|e| err(e.into()))?;
                w.flush().map_err(err)
            }
            Inner::Json(w) => {
                serde_json::to_writer(&mut *w, record).map_err(|e| err(e.into()))?;
                w.write_all(b"\n").map_err(err)?;
                w.flush().map_err(err)
            }
        }
    }
}

/// Reads a file written by [`RecordWriter`]; the format follows the extension.
pub fn read_records(path: &Path) -> Result<Vec<FerRecord>> {
    let fail = |reason: String| SimError::Input {
        path: path.to_path_buf(),
        reason,
    };
    let file = File::open(path).map_err(|e| fail(e.to_string()))?;
    match OutputFormat::from_path(path) {
        OutputFormat::Csv => csv::Reader::from_reader(file)
            .deserialize()
            .map(|r| r.map_err(|e| fail(e.to_string())))
            .collect(),
        OutputFormat::JsonLines => BufReader::new(file)
            .lines()
            .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()))
            .map(|l| {
                let l = l.map_err(|e| fail(e.to_string()))?;
                serde_json::from_str(&l).map_err(|e| fail(e.to_string()))
            })
            .collect(),
    }
}
