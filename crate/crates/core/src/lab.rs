//! Randomized experiments: sampling basepoint-free systems, comparing H1
//! with n_d and R/I_W with χ_+, and probing nongeneric samples.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::first_betti_h1;
use crate::bipoly::{bd, gcd_binary, split_st, BiDegree};
use crate::combinat::{chi, nd, pos_part};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::segre::{basepoint_free, classification_box, detect_conic, square_strand_det};
use crate::strands::{critical, default_box, h1_grid, hf_grid, is_generic, Genericity};
use crate::system::SystemF;
use crate::with_field;

pub const MAX_REJECTIONS: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub d: BiDegree,
    pub trials: usize,
    pub field: FieldSpec,
    pub seed: u64,
    #[serde(rename = "box")]
    pub bx: BiDegree,
    /// Coefficient bound N over Q (uniform in [-N, N]); ignored over GF(p).
    pub bound: u32,
    /// Box for the β1 histogram; None skips it.
    pub betti_box: Option<BiDegree>,
}

impl ExperimentConfig {
    pub fn new(d: BiDegree, trials: usize, field: FieldSpec, seed: u64) -> Self {
        ExperimentConfig {
            d,
            trials,
            field,
            seed,
            bx: default_box(d),
            bound: 100,
            betti_box: Some(classification_box(d)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Parse("trials must be at least 1".into()));
        }
        if self.d.a1 < 1 || self.d.a2 < 1 {
            return Err(Error::Degree(format!("d must be positive, got {}", self.d)));
        }
        // the genericity test reads one step past 3d
        let need = bd(3 * self.d.a1 + 1, 3 * self.d.a2 + 1);
        if !need.le(self.bx) {
            return Err(Error::BoxTooSmall { got: self.bx, need });
        }
        Ok(())
    }

    fn rng(&self, trial: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ trial as u64)
    }
}

/// The system for a trial and how many basepoint draws were rejected.
pub fn sample_system<F: Field>(cfg: &ExperimentConfig, trial: usize) -> Result<(SystemF<F>, usize)> {
    if F::spec() != cfg.field {
        return Err(Error::Field(format!("sampler is over {:?}, config asks {:?}", F::spec(), cfg.field)));
    }
    let mut rng = cfg.rng(trial);
    for rejected in 0..=MAX_REJECTIONS {
        let sys = SystemF::random(cfg.d, &mut rng, cfg.bound)?;
        if basepoint_free(&sys).is_free() {
            return Ok((sys, rejected));
        }
    }
    Err(Error::Sampling(MAX_REJECTIONS))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub trial: usize,
    pub a: BiDegree,
    pub h1: usize,
    pub nd: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Severity {
    /// Inside the critical ranges: a counterexample candidate.
    Candidate,
    /// Outside them: contradicts a proved statement.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RsViolation {
    pub trial: usize,
    pub a: BiDegree,
    pub hf: usize,
    pub chi_pos: i64,
    pub severity: Severity,
}

#[derive(Clone, Debug, Serialize)]
pub struct CsvRow {
    pub trial: usize,
    pub a1: i64,
    pub a2: i64,
    pub h1: usize,
    pub nd: i64,
    pub hf: usize,
    pub chi: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub generic_count: usize,
    pub fraction_generic: f64,
    pub basepoint_rejections: usize,
    /// (trial, first failing bidegree) for nongeneric trials.
    pub nongeneric: Vec<(usize, BiDegree)>,
    pub mismatches: Vec<Mismatch>,
    pub rs_violations: Vec<RsViolation>,
    /// bidegree → (β1 value → number of generic trials).
    pub betti_histogram: BTreeMap<String, BTreeMap<usize, usize>>,
    #[serde(skip)]
    pub rows: Vec<CsvRow>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("trial,a1,a2,dimH1,nd,hf,chi\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{},{},{},{}", r.trial, r.a1, r.a2, r.h1, r.nd, r.hf, r.chi);
        }
        s
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "d = {}, field {:?}, seed {}, box {}", c.d, c.field, c.seed, c.bx);
        let _ = writeln!(
            s,
            "generic: {}/{} ({:.3}), basepoint rejections: {}",
            self.generic_count, c.trials, self.fraction_generic, self.basepoint_rejections
        );
        for (t, a) in &self.nongeneric {
            let _ = writeln!(s, "trial {t}: not generic at {a}");
        }
        let _ = writeln!(s, "H1 vs n_d mismatches: {}", self.mismatches.len());
        let errs = self.rs_violations.iter().filter(|v| v.severity == Severity::Error).count();
        let _ = writeln!(
            s,
            "R/I vs chi_+ violations: {} ({} outside critical ranges)",
            self.rs_violations.len(),
            errs
        );
        if !self.betti_histogram.is_empty() {
            let _ = writeln!(s, "beta1 (non-Koszul) histogram:");
            for (a, h) in &self.betti_histogram {
                let vals: Vec<String> = h.iter().map(|(m, k)| format!("{m}x{k}")).collect();
                let _ = writeln!(s, "  {a}: {}", vals.join(" "));
            }
        }
        s
    }
}

/// hf_quotient against χ_+ on [0, bx].
pub fn rs_check<F: Field>(sys: &SystemF<F>, bx: BiDegree) -> Vec<RsViolation> {
    rs_from_grid(sys.d(), 0, &hf_grid(sys, bx), bx)
}

fn rs_from_grid(d: BiDegree, trial: usize, hf: &crate::combinat::Grid<usize>, bx: BiDegree) -> Vec<RsViolation> {
    bx.box_points()
        .into_iter()
        .filter_map(|a| {
            let h = hf.get(a);
            let cp = pos_part(chi(d, a));
            (h as i64 != cp).then(|| RsViolation {
                trial,
                a,
                hf: h,
                chi_pos: cp,
                severity: if critical(d, a) {
                    Severity::Candidate
                } else {
                    Severity::Error
                },
            })
        })
        .collect()
}

struct TrialOutcome {
    trial: usize,
    rejections: usize,
    genericity: Genericity,
    mismatches: Vec<Mismatch>,
    rs: Vec<RsViolation>,
    betti: Option<BTreeMap<BiDegree, usize>>,
    rows: Vec<CsvRow>,
}

fn run_trial<F: Field>(cfg: &ExperimentConfig, trial: usize, sys: &SystemF<F>, rejections: usize) -> Result<TrialOutcome> {
    let d = cfg.d;
    let genericity = is_generic(sys, cfg.bx)?;
    let h1 = h1_grid(sys, cfg.bx);
    let hf = hf_grid(sys, cfg.bx);
    let mut mismatches = Vec::new();
    let mut rows = Vec::new();
    for a in cfg.bx.box_points() {
        let (h, n) = (h1.get(a), nd(d, a));
        if (h as i64) < n {
            return Err(Error::Internal(format!(
                "trial {trial}: dim H1 at {a} is {h} < n_d = {n}"
            )));
        }
        if h as i64 != n {
            mismatches.push(Mismatch { trial, a, h1: h, nd: n });
        }
        rows.push(CsvRow {
            trial,
            a1: a.a1,
            a2: a.a2,
            h1: h,
            nd: n,
            hf: hf.get(a),
            chi: chi(d, a),
        });
    }
    let betti = match (genericity, cfg.betti_box) {
        (Genericity::GenericOnBox, Some(b)) => Some(first_betti_h1(sys, b)),
        _ => None,
    };
    Ok(TrialOutcome {
        trial,
        rejections,
        genericity,
        mismatches,
        rs: rs_from_grid(d, trial, &hf, cfg.bx),
        betti,
        rows,
    })
}

fn aggregate(cfg: &ExperimentConfig, mut outcomes: Vec<TrialOutcome>) -> ExperimentReport {
    outcomes.sort_by_key(|o| o.trial);
    let mut rep = ExperimentReport {
        config: cfg.clone(),
        generic_count: 0,
        fraction_generic: 0.0,
        basepoint_rejections: 0,
        nongeneric: Vec::new(),
        mismatches: Vec::new(),
        rs_violations: Vec::new(),
        betti_histogram: BTreeMap::new(),
        rows: Vec::new(),
    };
    let mut hist: BTreeMap<BiDegree, BTreeMap<usize, usize>> = BTreeMap::new();
    for o in &outcomes {
        rep.basepoint_rejections += o.rejections;
        match o.genericity {
            Genericity::GenericOnBox => rep.generic_count += 1,
            Genericity::NotGeneric(a) => rep.nongeneric.push((o.trial, a)),
        }
        if let Some(b) = &o.betti {
            for (&a, &m) in b {
                *hist.entry(a).or_default().entry(m).or_insert(0) += 1;
            }
        }
    }
    for o in outcomes {
        rep.mismatches.extend(o.mismatches);
        rep.rs_violations.extend(o.rs);
        rep.rows.extend(o.rows);
    }
    rep.betti_histogram = hist.into_iter().map(|(a, h)| (a.to_string(), h)).collect();
    rep.fraction_generic = rep.generic_count as f64 / cfg.trials as f64;
    rep
}

/// Sampled trials over F, with `planted` systems taking the place of the
/// first trials.
pub fn generic_report_with<F: Field>(cfg: &ExperimentConfig, planted: &[SystemF<F>]) -> Result<ExperimentReport> {
    cfg.validate()?;
    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| match planted.get(trial) {
            Some(sys) => run_trial(cfg, trial, sys, 0),
            None => {
                let (sys, rej) = sample_system::<F>(cfg, trial)?;
                run_trial(cfg, trial, &sys, rej)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate(cfg, outcomes))
}

pub fn generic_report(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    with_field!(cfg.field, F => generic_report_with::<F>(cfg, &[]))
}

#[derive(Clone, Debug, Serialize)]
pub struct Detection {
    pub trial: usize,
    pub witness: Option<BiDegree>,
    pub detectors: Vec<String>,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub config: ExperimentConfig,
    pub samples: usize,
    pub detections: Vec<Detection>,
}

/// Structure detectors that fire on a system.
pub fn detectors<F: Field>(sys: &SystemF<F>) -> Vec<String> {
    let mut out = Vec::new();
    if sys.d().a1 != 1 {
        return out;
    }
    if matches!(detect_conic(sys), Ok(Some(_))) {
        out.push("conic".to_string());
    }
    // f_i = g_i h_i with h_i of positive degree shows up as gcd(p_i, q_i)
    let factored = sys.f().iter().all(|f| {
        split_st(f)
            .and_then(|(p, q)| gcd_binary(&p, &q))
            .is_ok_and(|g| g.degree() > 0)
    });
    if factored {
        out.push("factorized".to_string());
    }
    if sys.d() == bd(1, 5) && square_strand_det(sys).is_ok_and(|(_, det)| det.is_zero()) {
        out.push("square_det".to_string());
    }
    out
}

pub fn nongeneric_probe_with<F: Field>(cfg: &ExperimentConfig, planted: &[SystemF<F>]) -> Result<ProbeReport> {
    cfg.validate()?;
    let found = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<Option<Detection>> {
            let (sys, planted_here) = match planted.get(trial) {
                Some(s) => (s.clone(), true),
                None => (sample_system::<F>(cfg, trial)?.0, false),
            };
            let witness = match is_generic(&sys, cfg.bx)? {
                Genericity::GenericOnBox => None,
                Genericity::NotGeneric(a) => Some(a),
            };
            if witness.is_none() && !planted_here {
                return Ok(None);
            }
            let det = detectors(&sys);
            let label = match (witness, det.is_empty()) {
                (None, _) => "generic".to_string(),
                (Some(_), true) => "unexplained (conjecture candidate)".to_string(),
                (Some(_), false) => "explained".to_string(),
            };
            Ok(Some(Detection {
                trial,
                witness,
                detectors: det,
                label,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport {
        config: cfg.clone(),
        samples: cfg.trials,
        detections: found.into_iter().flatten().collect(),
    })
}

pub fn nongeneric_probe(cfg: &ExperimentConfig) -> Result<ProbeReport> {
    with_field!(cfg.field, F => nongeneric_probe_with::<F>(cfg, &[]))
}
