use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::sweep::{Protocol, SweepResult, SweepRow};
use crate::{Error, Result};

const HEADER: [&str; 6] = [
    "tau",
    "protocol",
    "fidelity",
    "norm_drift",
    "steps",
    "action",
];

/// `out/lz.csv` → `out/lz.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

impl SweepResult {
    /// One row per `(τ, protocol)`, header `tau,protocol,fidelity,norm_drift,steps,action`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(HEADER)?;
        for r in &self.rows {
            w.write_record([
                format!("{:.11e}", r.tau),
                r.protocol.to_string(),
                format!("{:.11e}", r.fidelity),
                format!("{:.11e}", r.norm_drift),
                r.steps.to_string(),
                format!("{:.11e}", r.action),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }

    pub fn write_metadata<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer_pretty(writer, &self.metadata)?;
        Ok(())
    }

    /// Write `path` and its JSON sidecar, creating parent directories.
    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        let csv = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(csv))?;
        let side = sidecar_path(path);
        let json = fs::File::create(&side).map_err(|e| Error::io(&side, e))?;
        self.write_metadata(std::io::BufWriter::new(json))
    }
}

/// Parse rows written by [`SweepResult::write_csv`]. The `converged` flag is
/// not stored in the CSV and is read back as `true`.
pub fn read_sweep_csv<R: Read>(reader: R) -> Result<Vec<SweepRow>> {
    let mut rd = csv::Reader::from_reader(reader);
    let header = rd.headers()?.clone();
    if header.iter().ne(HEADER) {
        return Err(Error::invalid(format!(
            "unexpected sweep header {:?}",
            header
        )));
    }
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad number {s:?}")))
    };
    rd.records()
        .map(|rec| {
            let rec = rec?;
            Ok(SweepRow {
                tau: num(&rec[0])?,
                protocol: rec[1].parse::<Protocol>()?,
                fidelity: num(&rec[2])?,
                norm_drift: num(&rec[3])?,
                steps: rec[4]
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid("bad step count"))?,
                action: num(&rec[5])?,
                converged: true,
            })
        })
        .collect()
}
