use std::io::Write;

use super::{ExperimentRecord, SimError};

/// Generator identifier written at the top of every CSV.
pub const RNG_ID: &str = "chacha8;seed_from_u64(seed);stream=trial";

#[derive(serde::Serialize, serde::Deserialize)]
struct Row {
    trial: usize,
    i: usize,
    p_ei: usize,
    p_e: usize,
    seed: u64,
}

/// Writes `trial,i,p_ei,p_e,seed`, one row per trial and iteration, after a
/// `# rng=...` comment line.
pub fn emit_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<(), SimError> {
    if records.is_empty() {
        return Err(SimError::Empty);
    }
    let mut out = out;
    writeln!(out, "# rng={RNG_ID}").map_err(|e| SimError::Csv(e.to_string()))?;
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        for (idx, &p_ei) in r.series.iter().enumerate() {
            w.serialize(Row { trial: r.trial, i: idx + 1, p_ei, p_e: r.p_e, seed: r.seed })
                .map_err(|e| SimError::Csv(e.to_string()))?;
        }
    }
    w.flush().map_err(|e| SimError::Csv(e.to_string()))
}

pub fn to_csv_string(records: &[ExperimentRecord]) -> Result<String, SimError> {
    let mut buf = Vec::new();
    emit_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Reads records back from [`emit_csv`] output (wall times are zero).
pub fn parse_csv(text: &str) -> Result<Vec<ExperimentRecord>, SimError> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let mut records: Vec<ExperimentRecord> = Vec::new();
    for row in rdr.deserialize::<Row>() {
        let row = row.map_err(|e| SimError::Csv(e.to_string()))?;
        let fresh = records.last().is_none_or(|r| r.trial != row.trial);
        if fresh {
            records.push(ExperimentRecord { trial: row.trial, series: Vec::new(), p_e: row.p_e, seed: row.seed, wall_ms: 0.0 });
        }
        let rec = records.last_mut().expect("just pushed");
        if row.i != rec.series.len() + 1 {
            return Err(SimError::Csv(format!("trial {}: expected i = {}, found {}", row.trial, rec.series.len() + 1, row.i)));
        }
        rec.series.push(row.p_ei);
    }
    if records.is_empty() {
        return Err(SimError::Empty);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(trial: usize, series: Vec<usize>) -> ExperimentRecord {
        ExperimentRecord { trial, p_e: *series.iter().max().unwrap(), series, seed: 9, wall_ms: 0.0 }
    }

    #[test]
    fn layout() {
        let s = to_csv_string(&[rec(0, vec![1, 2, 2])]).unwrap();
        assert_eq!(s, format!("# rng={RNG_ID}\ntrial,i,p_ei,p_e,seed\n0,1,1,2,9\n0,2,2,2,9\n0,3,2,2,9\n"));
    }

    #[test]
    fn round_trip() {
        let records = vec![rec(0, vec![1, 3]), rec(1, vec![2, 2])];
        assert_eq!(parse_csv(&to_csv_string(&records).unwrap()).unwrap(), records);
    }

    #[test]
    fn errors() {
        assert!(matches!(to_csv_string(&[]), Err(SimError::Empty)));
        assert!(matches!(parse_csv("trial,i,p_ei,p_e,seed\n"), Err(SimError::Empty)));
        assert!(matches!(parse_csv("trial,i,p_ei,p_e,seed\n0,2,1,1,0\n"), Err(SimError::Csv(_))));
        assert!(matches!(parse_csv("trial,i,p_ei,p_e,seed\n0,x,1,1,0\n"), Err(SimError::Csv(_))));
    }
}
