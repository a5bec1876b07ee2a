//! CSV grid files: one row per relay position in row-major order, six
//! decimals, `nan` in every computed column of a failed cell. The `tau`
//! columns hold the DF allocation.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use twrc_core::{GridCell, SweepGrid};

use crate::error::{Error, Result};

pub const HEADER: [&str; 17] = [
    "x", "y", "twc", "df", "ub", "df_over_twc", "df_over_ub", "beta_df", "gamma_df", "beta_ub", "gamma_ub", "tau1",
    "tau2", "tau3", "tau4", "tau5", "tau6",
];

/// A parsed CSV row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub x: f64,
    pub y: f64,
    pub twc: f64,
    pub df: f64,
    pub ub: f64,
    pub df_over_twc: f64,
    pub df_over_ub: f64,
    pub beta_df: f64,
    pub gamma_df: f64,
    pub beta_ub: f64,
    pub gamma_ub: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub tau3: f64,
    pub tau4: f64,
    pub tau5: f64,
    pub tau6: f64,
}

impl GridRow {
    pub fn tau(&self) -> [f64; 6] {
        [self.tau1, self.tau2, self.tau3, self.tau4, self.tau5, self.tau6]
    }

    pub fn is_error(&self) -> bool {
        self.df.is_nan()
    }
}

fn fmt6(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    let s = format!("{v:.6}");
    // keep -0 and tiny negatives from printing a sign
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn cell_values(c: &GridCell) -> [f64; 15] {
    let t = c.tau_df.0;
    [
        c.twc_rate,
        c.df_rate,
        c.ub_rate,
        c.df_over_twc,
        c.df_over_ub,
        c.df_coherence.beta,
        c.df_coherence.gamma,
        c.ub_coherence.beta,
        c.ub_coherence.gamma,
        t[0],
        t[1],
        t[2],
        t[3],
        t[4],
        t[5],
    ]
}

pub fn write_grid_to<W: Write>(grid: &SweepGrid, w: W) -> std::result::Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(HEADER)?;
    for cell in &grid.cells {
        let values = match &cell.outcome {
            Ok(c) => cell_values(c),
            Err(_) => [f64::NAN; 15],
        };
        let mut rec = vec![fmt6(cell.position.x), fmt6(cell.position.y)];
        rec.extend(values.iter().map(|v| fmt6(*v)));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_grid(grid: &SweepGrid, path: &Path) -> Result<()> {
    if grid.cells.is_empty() {
        return Err(Error::Usage("refusing to write an empty grid".into()));
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_grid_to(grid, BufWriter::new(file)).map_err(|source| Error::Csv { path: path.into(), source })
}

pub fn read_grid(path: &Path) -> Result<Vec<GridRow>> {
    let csv_err = |source| Error::Csv { path: path.into(), source };
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rd = csv::Reader::from_reader(file);
    let header = rd.headers().map_err(csv_err)?.clone();
    if header.iter().ne(HEADER) {
        return Err(Error::Parse { line: 1, msg: format!("unexpected header: {}", header.iter().collect::<Vec<_>>().join(",")) });
    }
    rd.deserialize().collect::<std::result::Result<Vec<GridRow>, _>>().map_err(csv_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(fmt6(f64::NAN), "nan");
        assert_eq!(fmt6(-1e-12), "0.000000");
        assert_eq!(fmt6(-0.5), "-0.500000");
        assert_eq!(fmt6(1.0 / 3.0), "0.333333");
    }
}
