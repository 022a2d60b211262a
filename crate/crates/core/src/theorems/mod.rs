//! Finite verification suites for the fundamental theorems and the
//! structural identities behind them.
//!
//! Every subspace comparison is done one multigrading block at a time:
//! `θ*` and `γ*` preserve the row counts of `Y` and the column counts of
//! `Z` (and on `O_q(M_{m,n})` the full multidegree), so the blocks are
//! independent and run in parallel.

mod blocks;
mod fft;
mod preimage;
mod report;
mod sft;
pub mod structure;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::cache::{Cache, CacheEntry};
use crate::linalg::{LinalgError, Specialization};
use crate::localization::LocalizationError;
use crate::scalar::ScalarError;

pub use fft::{verify_fft, verify_sl_fft};
pub use preimage::{verify_preimage_dx, verify_preimage_p};
pub use report::{ComponentRecord, Verdict, VerificationReport};
pub use sft::verify_sft;
pub use structure::{verify_structure_suite, StructureConfig};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Coefficient mode, seed and optional cache shared by all suites.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub spec: Specialization,
    pub seed: u64,
    pub cache: Option<Arc<Cache>>,
    /// Marks results advisory regardless of the coefficient mode.
    pub forced_advisory: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { spec: Specialization::Symbolic, seed: 0, cache: None, forced_advisory: false }
    }
}

impl SuiteOptions {
    pub fn q_mode(&self) -> String {
        match &self.spec {
            Specialization::Symbolic => "symbolic".into(),
            Specialization::At(q0) => format!("q={q0}"),
        }
    }

    pub fn advisory(&self) -> bool {
        self.forced_advisory || self.spec != Specialization::Symbolic
    }

    /// Looks the component up in the cache, computing and storing it on a miss.
    pub(crate) fn component(
        &self,
        suite: &str,
        shapes: &str,
        index: &str,
        compute: impl FnOnce(bool) -> Result<(ComponentRecord, Vec<String>), SuiteError>,
    ) -> Result<ComponentRecord, SuiteError> {
        let Some(cache) = &self.cache else {
            return Ok(compute(false)?.0);
        };
        let key = Cache::key(suite, shapes, index, &self.q_mode());
        if let Some(entry) = cache.get(&key) {
            return Ok(entry.record);
        }
        let (record, basis) = compute(true)?;
        cache.put(&CacheEntry { key, record: record.clone(), basis });
        Ok(record)
    }

    pub(crate) fn report(
        &self,
        name: &str,
        params: BTreeMap<String, serde_json::Value>,
        components: Vec<ComponentRecord>,
        start: Instant,
    ) -> VerificationReport {
        let pass = components.iter().all(|c| c.verdict.is_pass());
        VerificationReport {
            name: name.into(),
            params,
            q_mode: self.q_mode(),
            advisory: self.advisory(),
            components,
            pass,
            timing_ms: start.elapsed().as_millis() as u64,
        }
    }
}

pub(crate) fn params(pairs: &[(&str, serde_json::Value)]) -> BTreeMap<String, serde_json::Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
