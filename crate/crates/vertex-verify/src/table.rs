//! Value-table emission: framed vertex values over a configured range,
//! as CSV or JSON, in the same deterministic order as sweep reports.

use std::io::Write;

use serde::Serialize;

use framed_vertex::partitions::Partition;
use framed_vertex::qseries::QRat;
use framed_vertex::specialize::schur_at_rho;
use framed_vertex::vertex::{two_leg_coefficient, w_framed, Framing};

use crate::config::{TableConfig, TableFormat};
use crate::sweep::enumerate_tuples;
use crate::HarnessError;

#[derive(Serialize)]
struct TableRow {
    partitions: Vec<Vec<u32>>,
    framing: Vec<i64>,
    value: String,
}

/// Writes the table described by the config; re-runs are byte-identical.
pub fn emit_table(cfg: &TableConfig) -> Result<(), HarnessError> {
    cfg.validate().map_err(HarnessError::Config)?;
    let rows: Vec<TableRow> = enumerate_tuples(cfg.legs, cfg.max_total_size)
        .iter()
        .map(|tuple| TableRow {
            partitions: tuple.iter().map(|p| p.parts().to_vec()).collect(),
            framing: [cfg.framing.a1, cfg.framing.a2, cfg.framing.a3][..cfg.legs as usize].to_vec(),
            value: table_value(cfg.legs, tuple, cfg.framing).to_string(),
        })
        .collect();

    let text = match cfg.format {
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("row serialization");
            s.push('\n');
            s
        }
        TableFormat::Csv => csv_text(cfg.legs, &rows),
    };
    if let Some(dir) = cfg.output_path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut file = std::fs::File::create(&cfg.output_path)?;
    file.write_all(text.as_bytes())?;
    Ok(())
}

/// The framed vertex value of one tuple.
fn table_value(legs: u8, tuple: &[Partition], f: Framing) -> QRat {
    match legs {
        1 => QRat::q_half_pow(f.a1 * tuple[0].kappa()) * schur_at_rho(&tuple[0]),
        2 => two_leg_coefficient(&tuple[0], &tuple[1], f.a1, f.a2),
        _ => w_framed(&tuple[0], &tuple[1], &tuple[2], &f).value,
    }
}

fn csv_text(legs: u8, rows: &[TableRow]) -> String {
    let mut out = String::new();
    let mu_cols = ["mu1", "mu2", "mu3"];
    let a_cols = ["a1", "a2", "a3"];
    let mut header: Vec<&str> = Vec::new();
    if legs == 1 {
        header.push("mu");
        header.push("a");
    } else {
        header.extend(&mu_cols[..legs as usize]);
        header.extend(&a_cols[..legs as usize]);
    }
    header.push("value");
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let mut cells: Vec<String> = row
            .partitions
            .iter()
            .map(|parts| {
                let inner = parts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("\"({inner})\"")
            })
            .collect();
        cells.extend(row.framing.iter().map(|a| a.to_string()));
        cells.push(format!("\"{}\"", row.value));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn cfg(legs: u8, max: u64, format: TableFormat, path: PathBuf) -> TableConfig {
        TableConfig {
            legs,
            max_total_size: max,
            framing: Framing::new(1, 0, 0),
            format,
            output_path: path,
        }
    }

    #[test]
    fn one_leg_size_three_has_seven_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("table.csv");
        emit_table(&cfg(1, 3, TableFormat::Csv, path.clone())).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 8, "header plus 7 rows:\n{text}");
        assert_eq!(lines[0], "mu,a,value");
    }

    #[test]
    fn reruns_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("table.json");
        let c = cfg(2, 3, TableFormat::Json, path.clone());
        emit_table(&c).unwrap();
        let first = std::fs::read(&path).unwrap();
        emit_table(&c).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), first);
        let rows: serde_json::Value = serde_json::from_slice(&first).unwrap();
        // Pairs with total size <= 3: 1 + 2 + 5 + 10.
        assert_eq!(rows.as_array().unwrap().len(), 18);
    }

    #[test]
    fn unwritable_path_errors() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("blocker");
        std::fs::write(&blocker, b"x").unwrap();
        // The parent of the output path is a regular file.
        let bad = blocker.join("table.csv");
        assert!(emit_table(&cfg(1, 1, TableFormat::Csv, bad)).is_err());
    }
}
