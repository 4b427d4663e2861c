//! Signal files.
//!
//! CSV rows are `signal_id,index,re,im` (an optional header line is
//! skipped). JSON is an array of signals, each an array of `[re, im]`
//! pairs. Numbers are written with Rust's shortest round-trip formatting,
//! so writing and re-reading reproduces every value bit for bit.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;

use super::config::SignalFormat;
use crate::action::ComplexSignal;
use crate::error::{Error, Result};

pub fn load_signals(path: &Path, format: SignalFormat) -> Result<Vec<ComplexSignal>> {
    let text = std::fs::read_to_string(path)?;
    let signals = match format {
        SignalFormat::Csv => parse_csv(&text)?,
        SignalFormat::Json => parse_json(&text)?,
    };
    if signals.is_empty() {
        log::warn!("{} contains no signals", path.display());
    }
    Ok(signals)
}

pub fn write_signals(path: &Path, format: SignalFormat, signals: &[ComplexSignal]) -> Result<()> {
    let text = match format {
        SignalFormat::Csv => to_csv(signals),
        SignalFormat::Json => to_json(signals)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}

fn check_uniform(signals: &[ComplexSignal]) -> Result<()> {
    if let Some(first) = signals.first() {
        for (i, s) in signals.iter().enumerate() {
            if s.len() != first.len() {
                return Err(Error::Data {
                    record: i,
                    message: format!("signal has {} entries, expected {}", s.len(), first.len()),
                });
            }
        }
    }
    Ok(())
}

pub fn parse_json(text: &str) -> Result<Vec<ComplexSignal>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let raw: Vec<Vec<[f64; 2]>> = serde_json::from_str(text).map_err(|e| Error::Data {
        record: 0,
        message: format!("malformed JSON signal file: {e}"),
    })?;
    let signals: Vec<ComplexSignal> = raw
        .into_iter()
        .map(|s| {
            ComplexSignal::new(
                s.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect(),
            )
        })
        .collect();
    check_uniform(&signals)?;
    Ok(signals)
}

pub fn parse_csv(text: &str) -> Result<Vec<ComplexSignal>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    // signal id -> (first row seen, entries by index)
    let mut groups: BTreeMap<u64, (usize, BTreeMap<usize, Complex64>)> = BTreeMap::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Data {
            record: row,
            message: e.to_string(),
        })?;
        let data_err = |message: String| Error::Data {
            record: row,
            message,
        };
        if record.len() != 4 {
            return Err(data_err(format!(
                "expected 4 fields, found {}",
                record.len()
            )));
        }
        let Ok(id) = record[0].parse::<u64>() else {
            if row == 0 {
                continue;
            }
            return Err(data_err(format!("bad signal_id `{}`", &record[0])));
        };
        let index: usize = record[1]
            .parse()
            .map_err(|_| data_err(format!("bad index `{}`", &record[1])))?;
        let parse = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| data_err(format!("bad number `{s}`")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(data_err(format!("non-finite value `{s}`")))
            }
        };
        let z = Complex64::new(parse(&record[2])?, parse(&record[3])?);
        let (_, entries) = groups.entry(id).or_insert_with(|| (row, BTreeMap::new()));
        if entries.insert(index, z).is_some() {
            return Err(data_err(format!("duplicate index {index} for signal {id}")));
        }
    }
    let mut ordered: Vec<(usize, u64, BTreeMap<usize, Complex64>)> = groups
        .into_iter()
        .map(|(id, (first, e))| (first, id, e))
        .collect();
    ordered.sort_by_key(|g| g.0);
    let mut signals = Vec::with_capacity(ordered.len());
    for (record, (first_row, id, entries)) in ordered.into_iter().enumerate() {
        if entries.keys().enumerate().any(|(pos, &idx)| pos != idx) {
            return Err(Error::Data {
                record: first_row,
                message: format!("signal {id} (number {record}) has missing indices"),
            });
        }
        signals.push(ComplexSignal::new(entries.into_values().collect()));
    }
    check_uniform(&signals)?;
    Ok(signals)
}

pub fn to_csv(signals: &[ComplexSignal]) -> String {
    let mut out = String::from("signal_id,index,re,im\n");
    for (id, s) in signals.iter().enumerate() {
        for (i, z) in s.iter().enumerate() {
            out.push_str(&format!("{id},{i},{:?},{:?}\n", z.re, z.im));
        }
    }
    out
}

pub fn to_json(signals: &[ComplexSignal]) -> Result<String> {
    Ok(serde_json::to_string(signals)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{gaussian_signal, sample_rng};
    use proptest::prelude::*;

    #[test]
    fn json_single_signal() {
        let s = parse_json("[[[1,0],[0,0]]]").unwrap();
        assert_eq!(s, vec![ComplexSignal::from_real(&[1.0, 0.0])]);
    }

    #[test]
    fn empty_inputs() {
        assert!(parse_json("").unwrap().is_empty());
        assert!(parse_csv("").unwrap().is_empty());
        assert!(parse_csv("signal_id,index,re,im\n").unwrap().is_empty());
    }

    #[test]
    fn csv_groups_by_id_and_sorts_indices() {
        let text = "signal_id,index,re,im\n5,1,2.0,0\n5,0,1.0,0\n2,0,0,1\n2,1,0,-1\n";
        let s = parse_csv(text).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(
            s[0].as_slice(),
            &[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]
        );
        assert_eq!(s[1][1], Complex64::new(0.0, -1.0));
    }

    #[test]
    fn data_errors() {
        assert!(matches!(
            parse_csv("0,0,1,0\n0,1,NaN,0\n"),
            Err(Error::Data { record: 1, .. })
        ));
        assert!(matches!(
            parse_csv("0,0,1,0\n0,1,1,0\n1,0,1,0\n"),
            Err(Error::Data { record: 1, .. })
        ));
        assert!(matches!(parse_csv("0,0,1\n"), Err(Error::Data { .. })));
        assert!(matches!(parse_csv("0,1,1,0\n"), Err(Error::Data { .. })));
        assert!(matches!(
            parse_json("[[[1,0]],[[1,0],[2,0]]]"),
            Err(Error::Data { record: 1, .. })
        ));
    }

    #[test]
    fn load_reports_missing_file() {
        let err = load_signals(Path::new("/nonexistent/x.csv"), SignalFormat::Csv).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
    }

    proptest! {
        #[test]
        fn csv_and_json_round_trip_bit_exactly(seed in any::<u64>(), count in 0usize..4, n in 1usize..6) {
            let signals: Vec<ComplexSignal> = (0..count)
                .map(|i| gaussian_signal(&mut sample_rng(seed, i as u64), n).scaled(1e5_f64.powi(i as i32 - 1)))
                .collect();
            let back = parse_csv(&to_csv(&signals)).unwrap();
            prop_assert_eq!(&back, &signals);
            let back = parse_json(&to_json(&signals).unwrap()).unwrap();
            prop_assert_eq!(&back, &signals);
        }
    }
}
