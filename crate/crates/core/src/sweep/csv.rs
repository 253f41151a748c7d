use std::path::Path;

use super::{GammaSweepRecord, Regime, SweepEquilibrium};
use crate::error::{Error, Result};

/// `printf("%.12g")`: twelve significant digits, trailing zeros dropped.
pub fn format_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-4..12).contains(&exp) {
        trim(&format!("{:.*}", (11 - exp) as usize, x)).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn header(players: usize) -> String {
    let mut cols = vec!["gamma".to_string(), "entropy".into(), "regime".into(), "equilibrium".into()];
    cols.extend((1..=players).map(|k| format!("payoff_{k}")));
    cols.push("a".into());
    cols.push("b".into());
    cols.join(",")
}

/// CSV text of `records`: one row per equilibrium, or a single row with
/// empty fields where none was found. `players` sets the payoff columns.
pub fn format_csv(records: &[GammaSweepRecord], players: usize) -> Result<String> {
    if records.is_empty() {
        return Err(Error::Domain("no sweep records to write".into()));
    }
    let mut out = header(players);
    out.push('\n');
    for r in records {
        let lead = format!("{:.12},{:.12},{}", r.gamma + 0.0, r.entropy + 0.0, r.regime);
        if r.equilibria.is_empty() {
            out.push_str(&lead);
            out.push(',');
            out.push_str(&",".repeat(players + 2));
            out.push('\n');
        }
        for e in &r.equilibria {
            if e.payoffs.len() != players {
                return Err(Error::Dimension(format!("equilibrium {} has {} payoffs, expected {players}", e.id, e.payoffs.len())));
            }
            let mut cells = vec![lead.clone(), e.id.clone()];
            cells.extend(e.payoffs.iter().map(|&p| format_g12(p)));
            match e.family {
                Some((a, b)) => cells.extend([format_g12(a), format_g12(b)]),
                None => cells.extend([String::new(), String::new()]),
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }
    Ok(out)
}

/// Writes [`format_csv`] to `path`. Nothing is created on error.
pub fn emit_csv(records: &[GammaSweepRecord], players: usize, path: impl AsRef<Path>) -> Result<()> {
    let text = format_csv(records, players)?;
    std::fs::write(path, text)?;
    Ok(())
}

fn number(cell: &str, line: usize, column: &str) -> Result<f64> {
    cell.parse::<f64>()
        .map_err(|_| Error::Config(format!("line {line}: column `{column}` is not a number: `{cell}`")))
}

/// Reads CSV produced by [`format_csv`]; consecutive rows with the same
/// `gamma` cell form one record.
pub fn parse_csv(text: &str) -> Result<Vec<GammaSweepRecord>> {
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| Error::Config("empty CSV".into()))?;
    let cols: Vec<&str> = head.split(',').collect();
    if cols.len() < 8 || header(cols.len() - 6) != head {
        return Err(Error::Config(format!("unexpected CSV header `{head}`")));
    }
    let players = cols.len() - 6;
    let mut records: Vec<(String, GammaSweepRecord)> = Vec::new();
    for (k, line) in lines.enumerate() {
        let n = k + 2;
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols.len() {
            return Err(Error::Config(format!("line {n}: {} cells, expected {}", cells.len(), cols.len())));
        }
        let regime: Regime = cells[2].parse()?;
        let equilibrium = if cells[3].is_empty() {
            None
        } else {
            let payoffs = (0..players)
                .map(|p| number(cells[4 + p], n, cols[4 + p]))
                .collect::<Result<Vec<f64>>>()?;
            let family = match (cells[4 + players], cells[5 + players]) {
                ("", "") => None,
                (a, b) => Some((number(a, n, "a")?, number(b, n, "b")?)),
            };
            Some(SweepEquilibrium { id: cells[3].to_string(), payoffs, family })
        };
        match records.last_mut() {
            Some((key, r)) if key == cells[0] => r.equilibria.extend(equilibrium),
            _ => records.push((
                cells[0].to_string(),
                GammaSweepRecord {
                    gamma: number(cells[0], n, "gamma")?,
                    entropy: number(cells[1], n, "entropy")?,
                    regime,
                    equilibria: equilibrium.into_iter().collect(),
                },
            )),
        }
    }
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_matches_printf() {
        let cases = [
            (1.0, "1"),
            (3.0, "3"),
            (2.75, "2.75"),
            (-0.5, "-0.5"),
            (1.0 / 3.0, "0.333333333333"),
            (5.0 * 0.6f64.cos().powi(2), "3.40589438619"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (9.9999999999996, "10"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g12(x), s, "{x}");
        }
    }

    fn record(gamma: f64, regime: Regime, eqs: Vec<SweepEquilibrium>) -> GammaSweepRecord {
        GammaSweepRecord { gamma, entropy: crate::game::entanglement_entropy(gamma).unwrap(), regime, equilibria: eqs }
    }

    #[test]
    fn classical_row_at_zero() {
        let r = record(0.0, Regime::Classical, vec![SweepEquilibrium { id: "DxD".into(), payoffs: vec![1.0, 1.0], family: None }]);
        let text = format_csv(&[r], 2).unwrap();
        assert_eq!(text, "gamma,entropy,regime,equilibrium,payoff_1,payoff_2,a,b\n0.000000000000,0.000000000000,classical,DxD,1,1,,\n");
    }

    #[test]
    fn round_trip_at_printed_precision() {
        let records = vec![
            record(0.1, Regime::None, vec![]),
            record(
                0.61,
                Regime::Coexistence,
                vec![
                    SweepEquilibrium { id: "a".into(), payoffs: vec![1.6563541, 1.6563541, 1.6563541], family: None },
                    SweepEquilibrium { id: "b".into(), payoffs: vec![1.873496, 1.873496, 1.873496], family: Some((0.123456789, 0.98765432123456)) },
                ],
            ),
        ];
        let text = format_csv(&records, 3).unwrap();
        let back = parse_csv(&text).unwrap();
        assert_eq!(back.len(), 2);
        assert!(back[0].equilibria.is_empty());
        assert_eq!(back[1].equilibria.len(), 2);
        assert_eq!(format_csv(&back, 3).unwrap(), text);
        assert!(text.lines().nth(1).unwrap().ends_with("none,,,,,,"));
    }

    #[test]
    fn empty_records_create_no_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        assert!(emit_csv(&[], 2, &path).is_err());
        assert!(!path.exists());
    }

    #[test]
    fn malformed_csv_is_rejected() {
        assert!(parse_csv("").is_err());
        assert!(parse_csv("gamma,entropy\n").is_err());
        let head = "gamma,entropy,regime,equilibrium,payoff_1,payoff_2,a,b\n";
        assert!(parse_csv(&format!("{head}0.1,0,weird,,,,,\n")).is_err());
        assert!(parse_csv(&format!("{head}0.1,0,quantum,QxQ,x,3,,\n")).is_err());
        assert!(parse_csv(&format!("{head}0.1,0,quantum,QxQ,3,3,\n")).is_err());
    }
}
