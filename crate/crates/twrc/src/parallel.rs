use rayon::prelude::*;
use twrc_core::{assemble_grid, evaluate_position, SweepCell, SweepConfig, SweepGrid};

use crate::error::Result;

/// [`twrc_core::run_sweep`] spread over the rayon pool. Cells are pure, so the
/// result is identical to the sequential sweep whatever the thread count.
pub fn run_sweep_parallel(cfg: &SweepConfig) -> Result<SweepGrid> {
    cfg.validate()?;
    let cells: Vec<(usize, SweepCell)> = cfg
        .positions()?
        .into_par_iter()
        .enumerate()
        .map(|(i, position)| (i, SweepCell { position, outcome: evaluate_position(position, cfg) }))
        .collect();
    Ok(assemble_grid(cfg, cells)?)
}
