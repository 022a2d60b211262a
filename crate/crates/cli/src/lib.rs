//! Batch driver: validates a [`RunConfig`], runs the requested suites and
//! assembles one JSON report per run.

use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use qcoinv_core::cache::{engine_version, relation_fingerprint, Cache};
use qcoinv_core::linalg::Specialization;
use qcoinv_core::setting::Setting;
use qcoinv_core::theorems::structure::StructureConfig;
use qcoinv_core::theorems::*;
use qcoinv_core::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Sft,
    Fft,
    Slfft,
    Preimage,
    Structure,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 5] =
        [SuiteKind::Sft, SuiteKind::Fft, SuiteKind::Slfft, SuiteKind::Preimage, SuiteKind::Structure];

    /// Parses one suite name; `all` expands to every suite.
    pub fn parse(s: &str) -> Result<Vec<SuiteKind>, UsageError> {
        Ok(match s {
            "sft" => vec![SuiteKind::Sft],
            "fft" => vec![SuiteKind::Fft],
            "slfft" => vec![SuiteKind::Slfft],
            "preimage" => vec![SuiteKind::Preimage],
            "structure" => vec![SuiteKind::Structure],
            "all" => Self::ALL.to_vec(),
            _ => return Err(UsageError::UnknownSuite(s.into())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QMode {
    Symbolic,
    Rational(Rational),
}

impl QMode {
    pub fn parse(s: &str) -> Result<QMode, UsageError> {
        if s == "symbolic" {
            return Ok(QMode::Symbolic);
        }
        s.parse::<Rational>().map(QMode::Rational).map_err(|_| UsageError::BadQ(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BidegreeRange {
    pub i: (usize, usize),
    pub j: (usize, usize),
}

impl BidegreeRange {
    /// `i0:i1,j0:j1`, bounds inclusive.
    pub fn parse(s: &str) -> Result<Self, UsageError> {
        let bad = || UsageError::BadRange(s.into());
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let pair = |p: &str| -> Result<(usize, usize), UsageError> {
            let (lo, hi) = p.split_once(':').ok_or_else(bad)?;
            let lo: usize = lo.trim().parse().map_err(|_| bad())?;
            let hi: usize = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        };
        Ok(BidegreeRange { i: pair(a)?, j: pair(b)? })
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (self.i.0..=self.i.1).flat_map(|i| (self.j.0..=self.j.1).map(move |j| (i, j))).collect()
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub m: u8,
    pub t: u8,
    pub n: u8,
    pub max_degree: usize,
    /// Defaults to `0:max_degree,0:max_degree`.
    pub bidegrees: Option<BidegreeRange>,
    pub suites: Vec<SuiteKind>,
    pub q: QMode,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub force_classical_q: bool,
}

impl RunConfig {
    pub fn new(m: u8, t: u8, n: u8, max_degree: usize) -> Self {
        RunConfig {
            m,
            t,
            n,
            max_degree,
            bidegrees: None,
            suites: SuiteKind::ALL.to_vec(),
            q: QMode::Symbolic,
            seed: 0,
            out: None,
            cache: None,
            force_classical_q: false,
        }
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if self.m == 0 || self.t == 0 || self.n == 0 {
            return Err(UsageError::NonPositive);
        }
        if let QMode::Rational(q0) = &self.q {
            use qcoinv_core::scalar::Rational as R;
            if *q0 == R::from_integer(0.into()) {
                return Err(UsageError::ZeroQ);
            }
            let one = R::from_integer(1.into());
            if (*q0 == one || *q0 == -one) && !self.force_classical_q {
                return Err(UsageError::ClassicalQ(q0.to_string()));
            }
        }
        let explicit_preimage = self.suites == [SuiteKind::Preimage];
        if explicit_preimage && !self.square() {
            return Err(UsageError::NotSquare(self.m, self.t, self.n));
        }
        Ok(())
    }

    fn square(&self) -> bool {
        self.m == self.n && self.n > self.t
    }

    fn setting(&self) -> Setting {
        Setting::new(self.m, self.t, self.n)
    }

    fn bidegree_pairs(&self) -> Vec<(usize, usize)> {
        self.bidegrees
            .unwrap_or(BidegreeRange { i: (0, self.max_degree), j: (0, self.max_degree) })
            .pairs()
    }

    fn options(&self) -> Result<SuiteOptions, RunError> {
        let cache = match &self.cache {
            Some(dir) => Some(Arc::new(Cache::open(dir).map_err(|e| RunError::Io(dir.clone(), e))?)),
            None => None,
        };
        let spec = match &self.q {
            QMode::Symbolic => Specialization::Symbolic,
            QMode::Rational(q0) => Specialization::At(q0.clone()),
        };
        Ok(SuiteOptions { spec, seed: self.seed, cache, forced_advisory: self.force_classical_q })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UsageError {
    #[error("m, t and n must be positive")]
    NonPositive,
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("q = {0} degenerates the deformation; pass --force-classical-q to run anyway")]
    ClassicalQ(String),
    #[error("cannot parse q value {0:?} (expected `symbolic` or p/r)")]
    BadQ(String),
    #[error("cannot parse bidegree range {0:?} (expected i0:i1,j0:j1)")]
    BadRange(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("the preimage suite needs m = n > t, got ({0},{1},{2})")]
    NotSquare(u8, u8, u8),
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Usage(#[from] UsageError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            _ => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigRecord {
    pub m: u8,
    pub t: u8,
    pub n: u8,
    pub max_degree: usize,
    pub bidegrees: Vec<(usize, usize)>,
    pub suites: Vec<SuiteKind>,
    pub q: String,
    pub seed: u64,
    pub force_classical_q: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: ConfigRecord,
    pub suites: Vec<VerificationReport>,
    /// Requested suites that do not apply to this shape.
    pub skipped: Vec<String>,
    pub fingerprint: String,
    pub engine: String,
    pub pass: bool,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    /// Pretty JSON; without timing every field is a function of the config.
    pub fn to_json(&self, include_timing: bool) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if !include_timing {
            if let Some(suites) = v.get_mut("suites").and_then(|s| s.as_array_mut()) {
                for s in suites {
                    if let Some(o) = s.as_object_mut() {
                        o.remove("timing_ms");
                    }
                }
            }
        }
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&s.table());
        }
        for s in &self.skipped {
            out.push_str(&format!("suite {s}: skipped\n"));
        }
        out.push_str(&format!("overall: {}\n", if self.pass { "PASS" } else { "FAIL" }));
        out
    }
}

/// Records the commutation tables of the setting's distinguished minors.
fn record_tables(cache: &Cache, setting: &Setting) {
    let mut normals = Vec::new();
    if setting.t <= setting.m.min(setting.n) {
        normals.extend(setting.d_x().ok());
    }
    if setting.t <= setting.m {
        normals.extend(setting.d_y().ok());
    }
    if setting.t <= setting.n {
        normals.extend(setting.d_z().ok());
    }
    for d in normals {
        let table = d.table();
        match cache.get_table(d.name()) {
            Some(old) if old == table => {}
            _ => cache.put_table(d.name(), &table),
        }
    }
}

/// Runs every requested suite. Usage errors come back before any work starts.
pub fn run(config: &RunConfig) -> Result<RunReport, RunError> {
    config.validate()?;
    let opts = config.options()?;
    let setting = config.setting();
    if let Some(cache) = &opts.cache {
        record_tables(cache, &setting);
    }
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for kind in &suites {
        match kind {
            SuiteKind::Sft => reports.push(verify_sft(&setting, config.max_degree, &opts)?),
            SuiteKind::Fft => reports.push(verify_fft(&setting, &config.bidegree_pairs(), &opts)?),
            SuiteKind::Slfft => reports.push(verify_sl_fft(&setting, &config.bidegree_pairs(), &opts)?),
            SuiteKind::Preimage if config.square() => {
                reports.push(verify_preimage_dx(config.n, config.t, config.max_degree, &opts)?);
                for s in 1..=2 {
                    reports.push(verify_preimage_p(config.n, config.t, s, config.max_degree, &opts)?);
                }
            }
            SuiteKind::Preimage => skipped.push("preimage (needs m = n > t)".to_string()),
            SuiteKind::Structure => {
                let sc = StructureConfig::for_setting(&setting, config.max_degree);
                reports.push(verify_structure_suite(&sc, &opts)?);
            }
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let record = ConfigRecord {
        m: config.m,
        t: config.t,
        n: config.n,
        max_degree: config.max_degree,
        bidegrees: config.bidegree_pairs(),
        suites,
        q: opts.q_mode(),
        seed: config.seed,
        force_classical_q: config.force_classical_q,
    };
    Ok(RunReport {
        config: record,
        suites: reports,
        skipped,
        fingerprint: relation_fingerprint(),
        engine: engine_version(),
        pass,
    })
}
