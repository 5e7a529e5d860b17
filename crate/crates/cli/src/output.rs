//! JSON-lines records. Big integers are emitted as decimal strings so
//! consumers never lose precision; field order is fixed by declaration, so
//! reruns are byte-identical.

use std::io::Write;

use serde::Serialize;

use dioprod_core::solver::{
    CompletenessEvidence, ObstructionCertificate, PowerBoundRecord, SolutionRecord,
};

#[derive(Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Record {
    Solution {
        nvec: Vec<u64>,
        x: String,
        value: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        flag: Option<String>,
    },
    Certificate {
        p: u64,
        residues_checked: u64,
        terms: Vec<CertTerm>,
    },
    BoundRecord {
        degree: u32,
        bstar: u64,
        floor_guard_binding: bool,
    },
    Audit {
        grid: String,
        checked: u64,
        violations: u64,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        violation_examples: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        extremal_ratio: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        extremal_x: Option<String>,
    },
    RatioRow {
        n: u64,
        radical: String,
        ratio: String,
    },
    Quality {
        a: String,
        b: String,
        c: String,
        radical: String,
        quality: String,
        szpiro_ratio: String,
    },
    Bound {
        kind: String,
        n_bound: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        fails_at: Option<u64>,
        verified_through: u64,
    },
    Membership {
        x: String,
        k: u32,
        l: u64,
        in_fk: bool,
        in_pl: bool,
    },
    Summary(Summary),
}

#[derive(Debug, Serialize)]
pub struct CertTerm {
    pub family: String,
    pub multiplier: String,
    pub exponent_mode: String,
    pub multiplier_mod_p: u64,
    pub bound: u64,
    pub zero_window: Vec<u64>,
}

/// Trailing record of every command; fields beyond `command` appear only
/// where meaningful.
#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decreasing_from: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub increasing_from: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay_hypothesis_met: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

impl Summary {
    pub fn new(command: &str) -> Self {
        Summary {
            command: command.to_string(),
            ..Default::default()
        }
    }
}

pub fn solution_record(s: &SolutionRecord) -> Record {
    Record::Solution {
        nvec: s.nvec.clone(),
        x: s.x.to_string(),
        value: s.value.to_string(),
        flag: s.flag.clone(),
    }
}

pub fn certificate_record(c: &ObstructionCertificate, spec: &dioprod_core::sequences::ProductSpec) -> Record {
    Record::Certificate {
        p: c.p,
        residues_checked: c.residues_checked,
        terms: spec
            .terms()
            .iter()
            .zip(&c.term_windows)
            .map(|(t, w)| CertTerm {
                family: t.family().name().to_string(),
                multiplier: t.multiplier().to_string(),
                exponent_mode: t.exponent_mode().name().to_string(),
                multiplier_mod_p: w.multiplier_mod_p,
                bound: w.bound,
                zero_window: w.zero_ns.clone(),
            })
            .collect(),
    }
}

pub fn evidence_record(
    evidence: &CompletenessEvidence,
    spec: &dioprod_core::sequences::ProductSpec,
) -> Record {
    match evidence {
        CompletenessEvidence::Obstruction(c) => certificate_record(c, spec),
        CompletenessEvidence::PowerBound(PowerBoundRecord {
            degree,
            bstar,
            floor_guard_binding,
        }) => Record::BoundRecord {
            degree: *degree,
            bstar: *bstar,
            floor_guard_binding: *floor_guard_binding,
        },
    }
}

/// Render with `sig` significant decimal digits, deterministically.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..9).contains(&exp) {
        let mantissa = v / 10f64.powi(exp);
        format!("{:.*}e{}", sig - 1, mantissa, exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, v)
    }
}

pub fn emit(out: &mut impl Write, record: &Record) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    out.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.670175, 6), "0.670175");
        assert_eq!(format_sig(1.3350949, 6), "1.33509");
        assert_eq!(format_sig(2.0088e-11, 3), "2.01e-11");
        assert_eq!(format_sig(0.0, 3), "0");
        assert_eq!(format_sig(45.0, 6), "45.0000");
        assert_eq!(format_sig(1.5e12, 3), "1.50e12");
    }

    #[test]
    fn records_serialize_with_type_tags() {
        let mut buf = Vec::new();
        emit(
            &mut buf,
            &Record::Membership {
                x: "12".into(),
                k: 3,
                l: 2,
                in_fk: true,
                in_pl: false,
            },
        )
        .unwrap();
        let line = String::from_utf8(buf).unwrap();
        assert_eq!(
            line.trim(),
            r#"{"type":"membership","x":"12","k":3,"l":2,"in_fk":true,"in_pl":false}"#
        );
    }
}
