//! Text formats: assignment and label files, CSV emitters, exact decimals.

use std::io::Write;
use std::path::Path;

use fedpir_core::analysis::{Rational, TableEntry};
use fedpir_core::assignment::TaskAssignment;
use fedpir_core::labels::LabelSet;
use fedpir_core::protocol::CostLedger;

use crate::error::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// First line `n T rho`, then `n` rows of `T` space-separated 0/1 digits.
pub fn parse_assignment(text: &str) -> Result<TaskAssignment, CliError> {
    let invalid = |line: usize, what: &str| CliError::Invalid(format!("assignment line {line}: {what}"));
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| invalid(1, "empty file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|v| v.parse().map_err(|_| invalid(line, "expected n T rho")))
        .collect::<Result<_, _>>()?;
    let [n, t, rho] = dims[..] else {
        return Err(invalid(line, "expected n T rho"));
    };
    let mut incidence = Vec::with_capacity(n);
    for (line, row) in lines {
        let bits: Vec<bool> = row
            .split_whitespace()
            .map(|v| match v {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(invalid(line, "entries must be 0 or 1")),
            })
            .collect::<Result<_, _>>()?;
        if bits.len() != t {
            return Err(invalid(line, &format!("expected {t} entries, got {}", bits.len())));
        }
        incidence.push(bits);
    }
    if incidence.len() != n {
        return Err(CliError::Invalid(format!(
            "assignment has {} rows, header says n = {n}",
            incidence.len()
        )));
    }
    TaskAssignment::from_incidence(rho, incidence).map_err(|e| CliError::Invalid(e.to_string()))
}

pub fn read_assignment(path: &Path) -> Result<TaskAssignment, CliError> {
    parse_assignment(&read(path)?)
}

pub fn write_assignment(a: &TaskAssignment) -> String {
    let mut out = format!("{} {} {}\n", a.clients(), a.objectives(), a.replication());
    for row in a.incidence() {
        let digits: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&digits.join(" "));
        out.push('\n');
    }
    out
}

/// One line per sample: `i t l y_1 ... y_c`, all indices 1-based.
pub fn parse_labels(text: &str, samples: usize, classes: usize, gamma: u64) -> Result<LabelSet, CliError> {
    let invalid = |line: usize, what: String| CliError::Invalid(format!("labels line {line}: {what}"));
    let mut rows: std::collections::BTreeMap<(usize, usize), Vec<Option<Vec<u64>>>> = Default::default();
    for (line, row) in content_lines(text) {
        let values: Vec<u64> = row
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| invalid(line, format!("cannot parse '{v}'"))))
            .collect::<Result<_, _>>()?;
        if values.len() != 3 + classes {
            return Err(invalid(line, format!("expected {} fields, got {}", 3 + classes, values.len())));
        }
        let (i, t, l) = (values[0] as usize, values[1] as usize, values[2] as usize);
        if i == 0 || t == 0 || l == 0 || l > samples {
            return Err(invalid(line, "indices are 1-based and l must be at most s".into()));
        }
        let slot = rows
            .entry((i - 1, t - 1))
            .or_insert_with(|| vec![None; samples]);
        if slot[l - 1].replace(values[3..].to_vec()).is_some() {
            return Err(invalid(line, format!("duplicate entry for i = {i}, t = {t}, l = {l}")));
        }
    }
    let mut labels = LabelSet::new(samples, classes, gamma).map_err(|e| CliError::Invalid(e.to_string()))?;
    for ((i, t), samples_of) in rows {
        let full: Option<Vec<Vec<u64>>> = samples_of.into_iter().collect();
        let full = full.ok_or_else(|| {
            CliError::Invalid(format!("labels for i = {}, t = {} miss some samples", i + 1, t + 1))
        })?;
        labels
            .insert(i, t, full)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
    }
    Ok(labels)
}

pub fn read_labels(path: &Path, samples: usize, classes: usize, gamma: u64) -> Result<LabelSet, CliError> {
    parse_labels(&read(path)?, samples, classes, gamma)
}

pub fn write_labels(labels: &LabelSet) -> String {
    let mut out = String::new();
    for (&(i, t), rows) in labels.entries() {
        for (l, y) in rows.iter().enumerate() {
            let ys: Vec<String> = y.iter().map(u64::to_string).collect();
            out.push_str(&format!("{} {} {} {}\n", i + 1, t + 1, l + 1, ys.join(" ")));
        }
    }
    out
}

fn pow10(k: u32) -> Option<i128> {
    10i128.checked_pow(k)
}

/// `a * 10^k / b` rounded down, `None` on overflow.
fn scaled_floor(a: i128, b: i128, k: i32) -> Option<i128> {
    if k >= 0 {
        Some(a.checked_mul(pow10(k as u32)?)? / b)
    } else {
        Some(a / b.checked_mul(pow10((-k) as u32)?)?)
    }
}

/// Positional decimal with `digits` significant digits, rounded half away
/// from zero, trailing zeros dropped.
pub fn decimal(r: &Rational, digits: u32) -> String {
    let (num, den) = (*r.numer(), *r.denom());
    if num == 0 {
        return "0".into();
    }
    let exact = || -> Option<String> {
        let (a, b) = (num.checked_abs()?, den);
        let low = pow10(digits - 1)?;
        let high = pow10(digits)?;
        let mut k = digits as i32 - 1 - (a.ilog10() as i32 - b.ilog10() as i32);
        let mut q = scaled_floor(a, b, k)?;
        while q < low {
            k += 1;
            q = scaled_floor(a, b, k)?;
        }
        while q >= high {
            k -= 1;
            q = scaled_floor(a, b, k)?;
        }
        // round on the next digit
        let next = scaled_floor(a, b, k + 1)? - q * 10;
        let mut m = q + i128::from(next >= 5);
        if m == high {
            m /= 10;
            k -= 1;
        }
        let s = m.to_string();
        let len = s.len() as i32;
        let mut out = if k <= 0 {
            format!("{s}{}", "0".repeat((-k) as usize))
        } else if k >= len {
            format!("0.{}{s}", "0".repeat((k - len) as usize))
        } else {
            let (int, frac) = s.split_at((len - k) as usize);
            format!("{int}.{frac}")
        };
        if out.contains('.') {
            out = out.trim_end_matches('0').trim_end_matches('.').to_string();
        }
        Some(if num < 0 { format!("-{out}") } else { out })
    };
    exact().unwrap_or_else(|| format!("{:.*e}", digits as usize - 1, num as f64 / den as f64))
}

pub fn exact(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub const SIGNIFICANT_DIGITS: u32 = 12;

pub const FIGURE_HEADER: [&str; 14] = [
    "scheme",
    "n",
    "T",
    "rho",
    "z_s",
    "z_q",
    "k",
    "sharing_rate",
    "pir_rate",
    "total_cost",
    "sharing_rate_exact",
    "pir_rate_exact",
    "total_cost_exact",
    "note",
];

fn csv_error(e: csv::Error) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Rate table as CSV. Infeasible points keep their parameters, leave the
/// numeric fields empty and carry the reason in `note`.
pub fn figure_csv(entries: &[TableEntry]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(FIGURE_HEADER).map_err(csv_error)?;
    let d = |r: &Rational| decimal(r, SIGNIFICANT_DIGITS);
    for e in entries {
        let record: Vec<String> = match e {
            TableEntry::Report(r) => vec![
                r.scheme.to_string(),
                r.n.to_string(),
                r.objectives.to_string(),
                r.rho.to_string(),
                r.z_s.to_string(),
                r.z_q.to_string(),
                r.k.as_ref().map(d).unwrap_or_default(),
                d(&r.sharing_rate),
                d(&r.pir_rate),
                d(&r.total_cost),
                exact(&r.sharing_rate),
                exact(&r.pir_rate),
                exact(&r.total_cost),
                String::new(),
            ],
            TableEntry::Infeasible {
                scheme,
                n,
                objectives,
                rho,
                z_s,
                z_q,
                reason,
            } => {
                let mut v = vec![
                    scheme.to_string(),
                    n.to_string(),
                    objectives.to_string(),
                    rho.to_string(),
                    z_s.to_string(),
                    z_q.to_string(),
                ];
                v.extend(std::iter::repeat_n(String::new(), 7));
                v.push(format!("infeasible: {reason}"));
                v
            }
        };
        w.write_record(&record).map_err(csv_error)?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
}

/// `stage,src,dst,objective,partition,symbols`, objectives and partitions 1-based.
pub fn transcript_csv(ledger: &CostLedger) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["stage", "src", "dst", "objective", "partition", "symbols"])
        .map_err(csv_error)?;
    for m in ledger.messages() {
        w.write_record([
            m.stage.to_string(),
            m.src.to_string(),
            m.dst.to_string(),
            m.objective.map(|t| (t + 1).to_string()).unwrap_or_default(),
            (m.partition + 1).to_string(),
            m.symbols.to_string(),
        ])
        .map_err(csv_error)?;
    }
    finish(w)
}

/// `sample,y_1,...,y_c` with one row per sample.
pub fn result_csv(sums: &[Vec<u64>]) -> Result<String, CliError> {
    let classes = sums.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["sample".to_string()];
    header.extend((1..=classes).map(|c| format!("y_{c}")));
    w.write_record(&header).map_err(csv_error)?;
    for (l, row) in sums.iter().enumerate() {
        let mut record = vec![(l + 1).to_string()];
        record.extend(row.iter().map(u64::to_string));
        w.write_record(&record).map_err(csv_error)?;
    }
    finish(w)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fedpir_core::analysis::{rho_sweep, Figure};
    use fedpir_core::assignment::{build_symmetric_assignment, OffsetRule};
    use fedpir_core::labels::{synth_labels, SynthMode};

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn decimal_examples() {
        assert_eq!(decimal(&q(70, 1), 12), "70");
        assert_eq!(decimal(&q(260, 3), 12), "86.6666666667");
        assert_eq!(decimal(&q(1, 60), 12), "0.0166666666667");
        assert_eq!(decimal(&q(1, 200), 12), "0.005");
        assert_eq!(decimal(&q(1782010, 9), 12), "198001.111111");
        assert_eq!(decimal(&q(-2, 3), 3), "-0.667");
        assert_eq!(decimal(&q(9999, 10000), 2), "1");
        assert_eq!(decimal(&q(123_456_789_000_000, 1), 3), "123000000000000");
        assert_eq!(decimal(&q(0, 1), 12), "0");
    }

    #[test]
    fn assignment_round_trip() {
        let a = build_symmetric_assignment(5, 3, 2, OffsetRule::Cyclic).unwrap();
        let text = write_assignment(&a);
        assert!(text.starts_with("5 3 2\n1 0 0\n"));
        assert_eq!(parse_assignment(&text).unwrap(), a);
        assert!(parse_assignment("2 1 1\n1\n").is_err());
        assert!(parse_assignment("2 1 1\n1\n2\n").is_err());
        assert!(parse_assignment("2 1\n").is_err());
    }

    #[test]
    fn labels_round_trip() {
        let a = build_symmetric_assignment(4, 2, 3, OffsetRule::Cyclic).unwrap();
        let labels = synth_labels(3, &a, 2, 3, 4, SynthMode::Uniform).unwrap();
        let text = write_labels(&labels);
        assert_eq!(parse_labels(&text, 2, 3, 4).unwrap(), labels);
        assert!(parse_labels("1 1 1 0 0\n", 1, 1, 2).is_err());
        assert!(parse_labels("1 1 1 0\n1 1 1 1\n", 1, 1, 2).is_err());
        assert!(parse_labels("1 1 2 0\n", 2, 1, 2).is_err());
        assert!(parse_labels("1 1 1 5\n", 1, 1, 2).is_err());
    }

    #[test]
    fn figure_rows() {
        let csv = figure_csv(&Figure::CostSmall.entries()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 18);
        assert!(lines[1].starts_with("ours,10,10,3,1,1,2,0.0166666666667,0.1,70,1/60,1/10,70,"));
        let infeasible = figure_csv(&rho_sweep(10, 10, 1, 1, 2..=2)).unwrap();
        assert!(infeasible.lines().nth(2).unwrap().contains("infeasible"));
        #[allow(clippy::reversed_empty_ranges)]
        let empty = figure_csv(&rho_sweep(10, 10, 1, 1, 5..=4)).unwrap();
        assert_eq!(empty.lines().count(), 1);
    }
}
