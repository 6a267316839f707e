//! Scenario files compiled into the binary so the catalogued surfaces can
//! be reproduced without carrying the repository around.

use crate::config::ScenarioConfig;
use crate::error::CliError;

pub const SCENARIO_NAMES: [&str; 5] = ["fig4a", "fig4b", "fig5", "fig6a", "fig6b"];

pub fn scenario_toml(name: &str) -> Option<&'static str> {
    match name {
        "fig4a" => Some(include_str!("../scenarios/fig4a.toml")),
        "fig4b" => Some(include_str!("../scenarios/fig4b.toml")),
        "fig5" => Some(include_str!("../scenarios/fig5.toml")),
        "fig6a" => Some(include_str!("../scenarios/fig6a.toml")),
        "fig6b" => Some(include_str!("../scenarios/fig6b.toml")),
        _ => None,
    }
}

pub fn load_scenario(name: &str) -> Result<ScenarioConfig, CliError> {
    let text = scenario_toml(name).ok_or_else(|| {
        CliError::Config(format!(
            "unknown scenario {name:?}, bundled scenarios are {}",
            SCENARIO_NAMES.join(", ")
        ))
    })?;
    ScenarioConfig::parse(text, name)
}
