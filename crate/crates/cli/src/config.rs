//! Optional JSON config file: a flat object whose keys mirror the long
//! option names (`snake_case`). Values act as defaults; explicit flags win.

use std::fs;
use std::path::Path;

use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub omega: Option<String>,
    pub theta0: Option<f64>,
    pub rho: Option<f64>,
    pub mu: Option<f64>,
    pub alpha: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub system: Option<bool>,
    pub s: Option<f64>,
    pub format: Option<String>,
    pub p_max: Option<f64>,
    pub q_max: Option<f64>,
    pub n_p: Option<usize>,
    pub n_q: Option<usize>,
    pub amplitude: Option<f64>,
    pub gamma_f: Option<f64>,
    pub tau: Option<f64>,
    pub sigma: Option<f64>,
    pub phi_power: Option<f64>,
    pub x_radius: Option<f64>,
    pub x_polar: Option<f64>,
    pub resolution: Option<usize>,
    pub r_max: Option<f64>,
    pub eps_excl: Option<f64>,
    pub shells_per_decade: Option<usize>,
    pub n_angular: Option<usize>,
    pub apriori: Option<bool>,
    pub m: Option<f64>,
    pub lambda_c: Option<f64>,
    pub radii: Option<Vec<f64>>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        serde_json::from_str(&text)
            .map_err(|e| format!("bad config file {}: {e}", path.display()))
    }
}
