//! Trajectory CSV: `iter,x1..xn,consensus_error,residual,dist_to_ref`.
//!
//! Reals are written with 9 significant digits in scientific notation and rows
//! end in `\n`, so identical runs give byte-identical files.

use std::io::Write;

use feedgame_core::Trajectory;

fn real(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn header(n: usize) -> Vec<String> {
    let mut cols = vec!["iter".to_owned()];
    cols.extend((1..=n).map(|i| format!("x{i}")));
    cols.extend(["consensus_error", "residual", "dist_to_ref"].map(String::from));
    cols
}

pub fn write_csv<W: Write>(out: W, n: usize, trajectory: &Trajectory) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header(n))?;
    for r in &trajectory.records {
        let mut row = vec![r.iteration.to_string()];
        row.extend(r.actions.iter().map(|&v| real(v)));
        row.push(real(r.consensus_error));
        row.push(real(r.residual));
        row.push(r.dist_to_reference.map(real).unwrap_or_default());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(n: usize, trajectory: &Trajectory) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, n, trajectory).expect("writing to memory");
    String::from_utf8(buf).expect("csv is ascii")
}

#[cfg(test)]
mod tests {
    use super::*;
    use feedgame_core::Record;

    #[test]
    fn layout_is_fixed() {
        let t = Trajectory {
            records: vec![Record {
                iteration: 0,
                actions: vec![1.0, 0.140625],
                consensus_error: 0.0,
                residual: 1.25,
                dist_to_reference: None,
                estimate_range: (0.0, 1.0),
            }],
        };
        assert_eq!(
            to_csv_string(2, &t),
            "iter,x1,x2,consensus_error,residual,dist_to_ref\n\
             0,1.00000000e0,1.40625000e-1,0.00000000e0,1.25000000e0,\n"
        );
    }
}
