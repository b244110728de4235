//! The analysis report produced by `overrot analyze`.
//!
//! Rationals are serialized as exact `"p/q"` strings (plain integers when
//! the denominator is 1); the JSON field order is fixed, so output is
//! byte-reproducible for a given input.

use overrot::{
    build_markov, has_horseshoe, kneading_of_pattern, min_cycle_mean, CodeClass, Pattern,
};
use serde::Serialize;

#[derive(Serialize)]
pub struct OrpField {
    pub p: usize,
    pub q: usize,
}

#[derive(Serialize)]
pub struct BlockField {
    pub size: usize,
    pub quotient: String,
}

/// Full per-pattern report. For divergent patterns only the permutation
/// data, over-rotation pair and horseshoe flag are meaningful; the fields
/// that need a unique fixed point are null.
#[derive(Serialize)]
pub struct AnalysisReport {
    pub pattern: String,
    pub period: usize,
    pub orp: OrpField,
    pub rho: String,
    pub convergent: bool,
    pub unimodal: bool,
    pub fixed_point: Option<String>,
    pub codes: Option<Vec<String>>,
    pub code_class: Option<String>,
    pub overtwist: bool,
    pub block_decompositions: Vec<BlockField>,
    pub very_badly_ordered: Option<bool>,
    pub r: Option<String>,
    pub r_attained: Option<bool>,
    pub horseshoe: bool,
    pub kneading: Option<String>,
    #[serde(skip)]
    pub max_point: Option<usize>,
}

pub fn code_class_name(c: CodeClass) -> &'static str {
    match c {
        CodeClass::StrictlyMonotone => "strictly_monotone",
        CodeClass::NondecreasingNotMonotone => "nondecreasing_not_monotone",
        CodeClass::NotNondecreasing => "not_nondecreasing",
    }
}

pub fn analyze(pattern: &Pattern) -> overrot::Result<AnalysisReport> {
    let orp = pattern.over_rotation_pair();
    let convergent = pattern.is_convergent();
    let unimodal = pattern.is_unimodal();
    let blocks = pattern
        .block_decompositions()
        .into_iter()
        .map(|b| BlockField {
            size: b.block_size,
            quotient: b.quotient.one_line(),
        })
        .collect();

    let mut report = AnalysisReport {
        pattern: pattern.one_line(),
        period: pattern.period(),
        orp: OrpField { p: orp.p, q: orp.q },
        rho: orp.rho().to_string(),
        convergent,
        unimodal,
        fixed_point: None,
        codes: None,
        code_class: None,
        overtwist: pattern.is_overtwist(),
        block_decompositions: blocks,
        very_badly_ordered: None,
        r: None,
        r_attained: None,
        horseshoe: has_horseshoe(pattern),
        kneading: None,
        max_point: pattern.max_point().ok(),
    };
    if !convergent {
        return Ok(report);
    }

    let code = pattern.code()?;
    report.fixed_point = Some(code.fixed_point().to_string());
    report.codes = Some(code.values().iter().map(|v| v.to_string()).collect());
    report.code_class = Some(code_class_name(code.classify()).to_string());
    let mcm = min_cycle_mean(&build_markov(pattern)?)?;
    report.r = Some(mcm.r.to_string());
    report.r_attained = Some(mcm.attained);
    report.very_badly_ordered = Some(pattern.is_very_badly_ordered()?);
    if unimodal {
        report.kneading = Some(kneading_of_pattern(pattern)?.to_string());
    }
    Ok(report)
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k:<20}{v}\n"));
        line("pattern:", self.pattern.clone());
        line("period:", self.period.to_string());
        line(
            "over-rotation pair:",
            format!("({}, {})   rho = {}", self.orp.p, self.orp.q, self.rho),
        );
        line("convergent:", self.convergent.to_string());
        let unimodal = match self.max_point {
            Some(1) => "true (maximum at the first point)".to_string(),
            Some(m) => format!("true (maximum at point {m})"),
            None => "false".to_string(),
        };
        line("unimodal:", unimodal);
        let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
        line("fixed point:", opt(&self.fixed_point));
        line(
            "codes:",
            self.codes
                .as_ref()
                .map(|c| c.join(" "))
                .unwrap_or_else(|| "-".into()),
        );
        line("code class:", opt(&self.code_class));
        line("over-twist:", self.overtwist.to_string());
        let blocks = if self.block_decompositions.is_empty() {
            "none".to_string()
        } else {
            self.block_decompositions
                .iter()
                .map(|b| format!("size {} over [{}]", b.size, b.quotient))
                .collect::<Vec<_>>()
                .join("; ")
        };
        line("block structure:", blocks);
        line(
            "very badly ordered:",
            self.very_badly_ordered
                .map(|b| b.to_string())
                .unwrap_or_else(|| "-".into()),
        );
        let interval = match (&self.r, self.r_attained) {
            (Some(r), attained) => format!(
                "[{r}, 1/2]{}",
                if attained == Some(false) {
                    " (left endpoint not attained)"
                } else {
                    ""
                }
            ),
            (None, _) => "-".to_string(),
        };
        line("forced interval:", interval);
        line("horseshoe:", self.horseshoe.to_string());
        line("kneading:", opt(&self.kneading));
        out
    }
}
