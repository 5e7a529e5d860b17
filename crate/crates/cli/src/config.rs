//! JSON equation manifests: an alternative to command-line flags for the
//! `solve` command. Explicit flags always override file values.

use serde::Deserialize;

/// One term of the right-hand side product.
#[derive(Debug, Clone, Deserialize)]
pub struct TermConfig {
    pub family: String,
    #[serde(default = "default_multiplier")]
    pub a: u64,
    #[serde(default)]
    pub exponent_mode: Option<String>,
}

fn default_multiplier() -> u64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PolynomialConfig {
    /// Expression string, e.g. `"x^2-1"`.
    Expression(String),
    /// Dense coefficient list `c_0, c_1, ...`.
    Coefficients(Vec<i64>),
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct LimitsConfig {
    pub nmax: Option<u64>,
    pub obstruction_search_limit: Option<u64>,
    pub bit_budget: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct KfreeConfig {
    pub a: i64,
    pub k: u32,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct OutputConfig {
    #[serde(default)]
    pub nonnegative_x: bool,
}

/// A complete solve request.
#[derive(Debug, Clone, Deserialize)]
pub struct EquationConfig {
    pub polynomial: Option<PolynomialConfig>,
    #[serde(default)]
    pub terms: Vec<TermConfig>,
    pub mode: Option<String>,
    #[serde(default)]
    pub limits: LimitsConfig,
    pub filters: Option<KfreeConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl EquationConfig {
    pub fn terms_text(&self) -> Option<String> {
        if self.terms.is_empty() {
            return None;
        }
        Some(
            self.terms
                .iter()
                .map(|t| {
                    let mut s = format!("{}:A={}", t.family, t.a);
                    if let Some(mode) = &t.exponent_mode {
                        s.push_str(&format!(":exp={mode}"));
                    }
                    s
                })
                .collect::<Vec<_>>()
                .join(","),
        )
    }
}
