//! CSV emitters and the two-column sampled-function reader.
//!
//! Fields are separated by `,` with `.` as decimal separator, rows end in
//! `\n`, and every file starts with a header row.

use std::io::Read;

use envelope_core::{Conjugate, EnvelopeSpec, SampledFunction};

use crate::error::{CliError, CliResult};
use crate::format::decimal12;
use crate::payload::sample_range;

/// Envelope samples as `p,e_plus[,e_minus]` rows.
pub fn envelope_csv(n: u32, p_range: (f64, f64), samples: usize) -> CliResult<String> {
    let branches = EnvelopeSpec::branches(n)?;
    let ps = sample_range(p_range, samples)?;
    let mut out = String::from(if branches.len() == 2 {
        "p,e_plus,e_minus\n"
    } else {
        "p,e_plus\n"
    });
    for p in ps {
        out.push_str(&decimal12(p));
        for b in &branches {
            out.push(',');
            out.push_str(&decimal12(b.value(p)?));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Reads a header row with any two column names followed by `x,y` rows.
pub fn read_sampled(input: impl Read) -> CliResult<SampledFunction> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader.headers().map_err(|e| CliError::Csv(e.to_string()))?;
    if headers.len() != 2 {
        return Err(CliError::Csv(format!(
            "expected 2 header columns, found {}",
            headers.len()
        )));
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Csv(e.to_string()))?;
        let field = |k: usize| -> CliResult<f64> {
            record[k]
                .parse()
                .map_err(|_| CliError::Csv(format!("row {}: cannot parse {:?}", i + 2, &record[k])))
        };
        xs.push(field(0)?);
        ys.push(field(1)?);
    }
    Ok(SampledFunction::new(xs, ys)?)
}

/// Transform output as `p,fstar` rows.
pub fn conjugate_csv(c: &Conjugate) -> String {
    let mut out = String::from("p,fstar\n");
    for (p, v) in c.slopes.iter().zip(&c.values) {
        out.push_str(&decimal12(*p));
        out.push(',');
        out.push_str(&decimal12(*v));
        out.push('\n');
    }
    out
}
