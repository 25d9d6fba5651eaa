use std::fmt;
use std::io::Write;

use crate::error::Result;

/// Additive slack for deterministic inequality checks.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundId {
    Thm1I,
    Thm1II,
    Thm1III,
    Lem32I,
    Lem32II,
    Eq7Compare,
    CheegerLeIsoperimetric,
    Boshier,
    PoincarePath,
    ProductSpectrum,
    Factorization,
    HeavyTail,
    Thm3I,
    Thm3II,
    Cor1Bracket,
    KappaSandwichUpper,
    KappaSandwichLower,
    KappaBoxAgreement,
    MassTransport,
    LaplaceIds,
    ZeroModes,
    Thm2Window,
    StochasticTrace,
    TailSlope,
    TailLowerEnvelope,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Thm1I => "thm1_i",
            BoundId::Thm1II => "thm1_ii",
            BoundId::Thm1III => "thm1_iii",
            BoundId::Lem32I => "lem32_i",
            BoundId::Lem32II => "lem32_ii",
            BoundId::Eq7Compare => "eq7_compare",
            BoundId::CheegerLeIsoperimetric => "cheeger_le_isoperimetric",
            BoundId::Boshier => "boshier",
            BoundId::PoincarePath => "poincare_path",
            BoundId::ProductSpectrum => "product_spectrum",
            BoundId::Factorization => "cartesian_factorization",
            BoundId::HeavyTail => "heavy_tail",
            BoundId::Thm3I => "thm3_i",
            BoundId::Thm3II => "thm3_ii",
            BoundId::Cor1Bracket => "cor1_bracket",
            BoundId::KappaSandwichUpper => "kappa_sandwich_upper",
            BoundId::KappaSandwichLower => "kappa_sandwich_lower",
            BoundId::KappaBoxAgreement => "kappa_box_agreement",
            BoundId::MassTransport => "mass_transport",
            BoundId::LaplaceIds => "laplace_ids",
            BoundId::ZeroModes => "zero_modes",
            BoundId::Thm2Window => "thm2_window",
            BoundId::StochasticTrace => "stochastic_trace",
            BoundId::TailSlope => "tail_slope",
            BoundId::TailLowerEnvelope => "tail_lower_envelope",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked inequality `lhs <= rhs + slack`.
///
/// Lower bounds are recorded with the bound on the left and the measured
/// quantity on the right, so every report reads the same way and
/// `margin = rhs - lhs` is positive when the inequality holds.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub inputs: Vec<(String, f64)>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub note: Option<String>,
}

impl BoundReport {
    pub fn check(bound_id: BoundId, inputs: &[(&str, f64)], lhs: f64, rhs: f64, slack: f64) -> Self {
        BoundReport {
            bound_id,
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs,
            rhs,
            slack,
            margin: rhs - lhs,
            satisfied: lhs <= rhs + slack,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn input(&self, key: &str) -> Option<f64> {
        self.inputs.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn inputs_string(&self) -> String {
        let mut parts: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if let Some(note) = &self.note {
            parts.push(format!("note={note}"));
        }
        parts.join(";")
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] lhs={:.6e} rhs={:.6e} margin={:.3e} {}",
            self.bound_id,
            self.inputs_string(),
            self.lhs,
            self.rhs,
            self.margin,
            if self.satisfied { "ok" } else { "VIOLATED" }
        )
    }
}

pub fn all_satisfied(reports: &[BoundReport]) -> bool {
    reports.iter().all(|r| r.satisfied)
}

/// CSV with columns `bound_id,inputs,lhs,rhs,margin,satisfied`.
pub fn write_reports_csv<W: Write>(out: W, reports: &[BoundReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["bound_id", "inputs", "lhs", "rhs", "margin", "satisfied"])?;
    for r in reports {
        w.write_record([
            r.bound_id.as_str().to_string(),
            r.inputs_string(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.margin.to_string(),
            r.satisfied.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
