use std::fmt;

use effshift_core::streams::ScheduleConfig;
use effshift_core::zoo::{lookup, ZooShift};
use effshift_core::{Group, Result, ShiftError};

use crate::args::{Command, Format};
use crate::report::Report;

mod analysis;
mod engine;
mod reduce;

/// Environment variable overriding the per-probe search-node cap.
pub const EXTENSION_CAP_ENV: &str = "EFFSHIFT_EXTENSION_CAP";
/// Largest accepted extension cap.
pub const EXTENSION_CAP_GUARD: u64 = 1 << 32;

/// The default schedule with the extension cap taken from the environment.
pub fn schedule_config() -> Result<ScheduleConfig> {
    let mut config = ScheduleConfig::default();
    if let Ok(text) = std::env::var(EXTENSION_CAP_ENV) {
        let cap: u64 = text
            .trim()
            .parse()
            .map_err(|_| ShiftError::Config(format!("{EXTENSION_CAP_ENV}=`{text}` is not an integer")))?;
        if cap == 0 || cap > EXTENSION_CAP_GUARD {
            return Err(ShiftError::Config(format!(
                "{EXTENSION_CAP_ENV} must lie in 1..={EXTENSION_CAP_GUARD}"
            )));
        }
        config.extension_cap = cap;
    }
    Ok(config)
}

pub(crate) fn load_shift(name: &str) -> Result<ZooShift> {
    lookup(name, &|path| {
        std::fs::read_to_string(path).map_err(|e| ShiftError::Config(format!("cannot read `{path}`: {e}")))
    })
}

pub(crate) fn on_integers(shift: &ZooShift, what: &str) -> Result<()> {
    if shift.group() != Group::Integers {
        return Err(ShiftError::Unsupported(format!("{what} is implemented on the integers")));
    }
    Ok(())
}

pub(crate) fn check_budget(budget: u64) -> Result<()> {
    if budget == 0 {
        return Err(ShiftError::Config("--budget must be at least 1".into()));
    }
    Ok(())
}

pub(crate) fn config_error(e: impl fmt::Display) -> ShiftError {
    ShiftError::Config(e.to_string())
}

pub(crate) fn run(command: Command) -> Result<(Report, Format)> {
    match command {
        Command::Zoo { shift, out } => Ok((analysis::zoo(shift.as_deref())?, out.format)),
        Command::Decide {
            shift,
            property,
            patterns,
            budget,
            trace,
            out,
        } => Ok((engine::decide(&shift, &property, &patterns, budget, trace)?, out.format)),
        Command::Enumerate {
            shift,
            property,
            budget,
            max_level,
            out,
        } => Ok((engine::enumerate(&shift, &property, budget, max_level)?, out.format)),
        Command::Complexity { shift, min_n, max_n, out } => {
            Ok((analysis::complexity(&shift, min_n, max_n)?, out.format))
        }
        Command::Entropy { shift, n, gluing, out } => Ok((analysis::entropy(&shift, n, gluing)?, out.format)),
        Command::Periods {
            shift,
            i_max,
            method,
            out,
        } => Ok((analysis::periods(&shift, i_max, method)?, out.format)),
        Command::Slope { shift, min_n, max_n, out } => Ok((analysis::slope(&shift, min_n, max_n)?, out.format)),
        Command::Window {
            shift,
            budget,
            rounds,
            out,
        } => Ok((analysis::window(&shift, budget, rounds)?, out.format)),
        Command::Product {
            left,
            right,
            side,
            budget,
            max_len,
            out,
        } => Ok((reduce::product(&left, &right, side, budget, max_len)?, out.format)),
        Command::Union {
            left,
            right,
            n_max,
            budget,
            max_len,
            out,
        } => Ok((reduce::union(&left, &right, n_max, budget, max_len)?, out.format)),
        Command::Invariance { shift, n, out } => Ok((analysis::invariance(&shift, n)?, out.format)),
        Command::Replay { certificate, out } => Ok((engine::replay(&certificate)?, out.format)),
    }
}
