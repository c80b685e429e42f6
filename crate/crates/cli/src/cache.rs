//! On-disk zero caches, one file per (function, range).

use std::path::PathBuf;

use zetax_core::arith::characters_mod;
use zetax_core::refzeta::{find_l_zeros, find_zeros, ZeroCache};

use crate::error::{CliError, CliResult};
use crate::Common;

pub const CACHE_ENV: &str = "ZETAX_CACHE_DIR";

pub fn cache_dir(common: &Common) -> PathBuf {
    common
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".zetax-cache"))
}

#[derive(Debug, Clone, Copy)]
pub enum Target {
    Zeta,
    L { q: u64, index: usize },
}

impl Target {
    fn label(&self) -> String {
        match self {
            Target::Zeta => "zeta".into(),
            Target::L { q, index } => format!("L:q={q}:k={index}"),
        }
    }

    fn file_stem(&self) -> String {
        match self {
            Target::Zeta => "zeta".into(),
            Target::L { q, index } => format!("L-q{q}-k{index}"),
        }
    }
}

fn path_for(common: &Common, target: Target, t0: f64, t1: f64) -> PathBuf {
    cache_dir(common).join(format!("{}_{t0}_{t1}.zeros", target.file_stem()))
}

/// Loads the cache for this range if present and compatible, else builds and
/// saves it.
pub fn zero_cache(common: &Common, target: Target, t0: f64, t1: f64, tol: f64) -> CliResult<ZeroCache> {
    let path = path_for(common, target, t0, t1);
    if path.exists() && !common.rebuild_cache {
        let c = ZeroCache::load(&path).map_err(|e| CliError::CacheMismatch(format!("{}: {e}", path.display())))?;
        if c.label != target.label() {
            return Err(CliError::CacheMismatch(format!(
                "{} holds {:?}, expected {:?}",
                path.display(),
                c.label,
                target.label()
            )));
        }
        if c.tol > tol {
            return Err(CliError::CacheMismatch(format!(
                "{} was built with tol {:e}, coarser than {:e}; use --rebuild-cache",
                path.display(),
                c.tol,
                tol
            )));
        }
        return Ok(c);
    }
    let c = match target {
        Target::Zeta => find_zeros(t0, t1, tol)?,
        Target::L { q, index } => {
            let chars = characters_mod(q)?;
            let chi = chars.get(index).ok_or_else(|| crate::config_error(format!("no character {index} mod {q}")))?;
            find_l_zeros(chi, t0, t1, tol)?
        }
    };
    c.save(&path)?;
    Ok(c)
}
