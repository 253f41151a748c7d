use std::path::Path;

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::game::{GameDefinition, PayoffTable};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    players: Value,
    #[serde(default)]
    gamma: Option<Value>,
    payoffs: Map<String, Value>,
}

/// Parses a game document such as
/// `{"players":2,"gamma":0.5,"payoffs":{"CC":[3,3],"CD":[0,5],"DC":[5,0],"DD":[1,1]}}`.
/// `gamma` may be omitted and defaults to 0.
pub fn parse_game_json(text: &str) -> Result<GameDefinition<f64>> {
    let file: GameFile = serde_json::from_str(text)?;
    let players = match file.players.as_u64() {
        Some(n @ (2 | 3)) => n as usize,
        _ => return Err(Error::Config(format!("key `players` must be 2 or 3, got {}", file.players))),
    };
    let gamma = match &file.gamma {
        None => 0.0,
        Some(v) => v
            .as_f64()
            .ok_or_else(|| Error::Config(format!("key `gamma` must be a number, got {v}")))?,
    };
    let mut entries = Vec::with_capacity(file.payoffs.len());
    for (key, value) in &file.payoffs {
        let row = value
            .as_array()
            .and_then(|xs| xs.iter().map(Value::as_f64).collect::<Option<Vec<f64>>>())
            .ok_or_else(|| Error::Config(format!("outcome `{key}` must map to an array of numbers, got {value}")))?;
        entries.push((key.as_str(), row));
    }
    let table = PayoffTable::from_entries(players, entries)?;
    GameDefinition::new(players, gamma, table).map_err(|e| match e {
        Error::Domain(msg) => Error::Config(format!("key `gamma`: {msg}")),
        other => other,
    })
}

/// Reads a game file.
pub fn parse_game_config(path: impl AsRef<Path>) -> Result<GameDefinition<f64>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    parse_game_json(&text)
}

/// `pd2` and `pd3` name the built-in prisoner's dilemmas at `γ = 0`; any
/// other value is read as a file path.
pub fn load_game(source: &str) -> Result<GameDefinition<f64>> {
    match source {
        "pd2" => GameDefinition::pd2(0.0),
        "pd3" => GameDefinition::pd3(0.0),
        path => parse_game_config(path),
    }
}
