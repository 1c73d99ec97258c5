//! JSON document formats.
//!
//! Distribution documents carry either the full vector or the independent
//! set: `{"epsilon": [16 numbers]}` or `{"mu": [8 numbers]}`. Readers accept
//! both and complete the independent form on load. Measurement configs are
//! `{"state": "singlet" | {"schmidt_angle": x}, "angles": [4 numbers]}`,
//! games `{"a": [16 numbers], "b": [16 numbers]}`. Serialization uses
//! shortest round-trip float formatting, so re-reading a document restores
//! the exact values.

use serde::Deserialize;
use serde_json::Value;

use crate::error::Error;
use crate::game::GameMatrix;
use crate::probability::{EprDistribution, IndependentProbs};
use crate::quantum::{born_distribution, EntangledState, MeasurementConfig};

#[derive(Deserialize)]
#[serde(untagged)]
enum StateDoc {
    Named(String),
    Schmidt { schmidt_angle: f64 },
}

#[derive(Deserialize)]
struct ConfigDoc {
    state: StateDoc,
    angles: [f64; 4],
}

fn fixed_len<const N: usize>(values: &[f64], what: &str) -> Result<[f64; N], Error> {
    values.try_into().map_err(|_| {
        Error::Document(format!(
            "\"{what}\" must hold exactly {N} numbers, found {}",
            values.len()
        ))
    })
}

fn numbers(value: &Value, what: &str) -> Result<Vec<f64>, Error> {
    value
        .as_array()
        .and_then(|items| items.iter().map(Value::as_f64).collect::<Option<Vec<_>>>())
        .ok_or_else(|| Error::Document(format!("\"{what}\" must be an array of numbers")))
}

/// Reads a distribution document, completing the independent form.
pub fn parse_distribution(json: &str) -> Result<EprDistribution, Error> {
    let value: Value = serde_json::from_str(json)?;
    distribution_from_value(&value)
}

fn distribution_from_value(value: &Value) -> Result<EprDistribution, Error> {
    let object = value
        .as_object()
        .ok_or_else(|| Error::Document("distribution document must be a JSON object".into()))?;
    match (object.get("epsilon"), object.get("mu")) {
        (Some(_), Some(_)) => Err(Error::Document(
            "distribution document must carry \"epsilon\" or \"mu\", not both".into(),
        )),
        (Some(eps), None) => Ok(EprDistribution::new(fixed_len(
            &numbers(eps, "epsilon")?,
            "epsilon",
        )?)),
        (None, Some(mu)) => {
            let mu = IndependentProbs::new(fixed_len(&numbers(mu, "mu")?, "mu")?)?;
            Ok(EprDistribution::from_independent(&mu))
        }
        (None, None) => Err(Error::Document(
            "distribution document needs an \"epsilon\" or \"mu\" field".into(),
        )),
    }
}

/// Reads a measurement-config document.
pub fn parse_config(json: &str) -> Result<MeasurementConfig, Error> {
    let doc: ConfigDoc = serde_json::from_str(json)?;
    config_from_doc(doc)
}

fn config_from_doc(doc: ConfigDoc) -> Result<MeasurementConfig, Error> {
    let state = match doc.state {
        StateDoc::Named(name) if name == "singlet" => EntangledState::Singlet,
        StateDoc::Named(name) => {
            return Err(Error::Document(format!(
                "unknown state \"{name}\", expected \"singlet\" or {{\"schmidt_angle\": x}}"
            )))
        }
        StateDoc::Schmidt { schmidt_angle } => EntangledState::Schmidt(schmidt_angle),
    };
    let config = MeasurementConfig { state, angles: doc.angles };
    config.validate()?;
    Ok(config)
}

/// Reads either a distribution document or a measurement-config document,
/// producing the Born distribution in the latter case.
pub fn parse_distribution_input(json: &str) -> Result<EprDistribution, Error> {
    let value: Value = serde_json::from_str(json)?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::Document("input document must be a JSON object".into()))?;
    if object.contains_key("epsilon") || object.contains_key("mu") {
        distribution_from_value(&value)
    } else if object.contains_key("state") || object.contains_key("angles") {
        let doc: ConfigDoc = serde_json::from_value(value)?;
        born_distribution(&config_from_doc(doc)?)
    } else {
        Err(Error::Document(
            "input document needs \"epsilon\", \"mu\", or a measurement config with \"state\" and \"angles\"".into(),
        ))
    }
}

pub fn parse_game(json: &str) -> Result<GameMatrix, Error> {
    let game: GameMatrix = serde_json::from_str(json)?;
    GameMatrix::new(game.a, game.b)
}

pub fn distribution_json(dist: &EprDistribution) -> String {
    serde_json::to_string_pretty(dist).expect("distribution serializes")
}

pub fn game_json(game: &GameMatrix) -> String {
    serde_json::to_string_pretty(game).expect("game serializes")
}

pub fn config_json(config: &MeasurementConfig) -> String {
    let state = match config.state {
        EntangledState::Singlet => Value::String("singlet".into()),
        EntangledState::Schmidt(g) => serde_json::json!({ "schmidt_angle": g }),
    };
    serde_json::to_string_pretty(&serde_json::json!({
        "state": state,
        "angles": config.angles,
    }))
    .expect("config serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_both_distribution_forms() {
        let eps_doc = r#"{"epsilon": [0.25,0.25,0.25,0.25, 0.25,0.25,0.25,0.25,
                                      0.25,0.25,0.25,0.25, 0.25,0.25,0.25,0.25]}"#;
        let from_eps = parse_distribution(eps_doc).unwrap();
        let mu_doc = r#"{"mu": [0.25,0.25,0.25,0.25,0.25,0.25,0.25,0.25]}"#;
        let from_mu = parse_distribution(mu_doc).unwrap();
        assert_eq!(from_eps, from_mu);
    }

    #[test]
    fn round_trips_distribution_exactly() {
        let mu = IndependentProbs::new([0.3, 0.1, 0.2, 0.4, 1.0 / 3.0, 0.25, 0.15, 0.05]).unwrap();
        let dist = EprDistribution::from_independent(&mu);
        let reread = parse_distribution(&distribution_json(&dist)).unwrap();
        assert_eq!(dist, reread);
    }

    #[test]
    fn rejects_malformed_distribution_documents() {
        assert!(parse_distribution("{").is_err());
        assert!(parse_distribution(r#"{"epsilon": [0.5, 0.5]}"#).is_err());
        assert!(parse_distribution(r#"{"mu": [2.0,0,0,0,0,0,0,0]}"#).is_err());
        assert!(parse_distribution(r#"{"nothing": 1}"#).is_err());
        let both = r#"{"epsilon": [0.0625], "mu": [0.25]}"#;
        assert!(parse_distribution(both).is_err());
    }

    #[test]
    fn reads_config_forms_and_round_trips() {
        let singlet = parse_config(r#"{"state": "singlet", "angles": [0, 1.5707963267948966, 0.7853981633974483, 2.356194490192345]}"#).unwrap();
        assert_eq!(singlet.state, EntangledState::Singlet);
        let schmidt =
            parse_config(r#"{"state": {"schmidt_angle": 0.9}, "angles": [0, 0, 0, 0]}"#).unwrap();
        assert_eq!(schmidt.state, EntangledState::Schmidt(0.9));
        for config in [singlet, schmidt] {
            let reread = parse_config(&config_json(&config)).unwrap();
            assert_eq!(config, reread);
        }
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(parse_config(r#"{"state": "triplet", "angles": [0,0,0,0]}"#).is_err());
        assert!(parse_config(r#"{"state": {"schmidt_angle": 3.0}, "angles": [0,0,0,0]}"#).is_err());
        assert!(parse_config(r#"{"state": "singlet", "angles": [0,0,0]}"#).is_err());
    }

    #[test]
    fn distribution_input_accepts_configs() {
        let doc = r#"{"state": "singlet", "angles": [0.2, 1.3, 0.2, 1.3]}"#;
        let dist = parse_distribution_input(doc).unwrap();
        assert!((dist.correlations().e11 + 1.0).abs() < 1e-12);
        assert!(parse_distribution_input(r#"{"foo": []}"#).is_err());
    }

    #[test]
    fn game_round_trip_and_validation() {
        let game = GameMatrix::from_symmetric(3.0, 0.0, 5.0, 1.0);
        let reread = parse_game(&game_json(&game)).unwrap();
        assert_eq!(game, reread);
        assert!(parse_game(r#"{"a": [1, 2], "b": [3]}"#).is_err());
    }
}
