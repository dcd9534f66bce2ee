//! Versioned CSV reports and their summaries.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use subexp_core::{format_rational, parse_rational, Cost, Rational};

use crate::error::{BenchError, Result};
use crate::problem::ProblemKind;

/// First line of every report.
pub const FORMAT_LINE: &str = "# subexp-bench v1";

pub const COLUMNS: [&str; 15] = [
    "instance",
    "problem",
    "n",
    "m_or_k",
    "alpha",
    "s",
    "approx_cost",
    "exact_cost",
    "ratio",
    "bound",
    "rounds",
    "capped",
    "work",
    "wall_ms",
    "status",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Infeasible,
    Refused,
    Invalid,
    /// A solver output failed validation or beat the exact optimum.
    Violation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
            Status::Refused => "refused",
            Status::Invalid => "invalid",
            Status::Violation => "violation",
        })
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "ok" => Status::Ok,
            "infeasible" => Status::Infeasible,
            "refused" => Status::Refused,
            "invalid" => Status::Invalid,
            "violation" => Status::Violation,
            _ => return Err(format!("unknown status {s:?}")),
        })
    }
}

impl Status {
    pub fn exit_code(self) -> i32 {
        use crate::error::exit;
        match self {
            Status::Ok => exit::OK,
            Status::Infeasible => exit::INFEASIBLE,
            Status::Refused => exit::REFUSED,
            Status::Invalid => exit::INVALID_INPUT,
            Status::Violation => exit::INVARIANT,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub instance: String,
    pub problem: ProblemKind,
    pub n: usize,
    pub m_or_k: usize,
    pub alpha: Rational,
    pub subset_size: usize,
    pub approx_cost: Option<Cost>,
    pub exact_cost: Option<Cost>,
    /// Present exactly when `exact_cost` is; at least 1 on ok rows.
    pub ratio: Option<Rational>,
    pub bound: Rational,
    pub rounds: usize,
    pub capped: bool,
    pub work: u64,
    pub wall_ms: Option<f64>,
    pub status: Status,
}

const DECIMALS: i128 = 1_000_000_000;

/// Nine-decimal rendering, rounded half up.
pub fn fixed9(r: &Rational) -> String {
    let num = i128::from(*r.numer());
    let den = i128::from(*r.denom());
    let scaled = (num * DECIMALS * 2 + den) / (den * 2);
    format!("{}.{:09}", scaled / DECIMALS, scaled % DECIMALS)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

impl ReportRow {
    fn record(&self) -> Vec<String> {
        vec![
            self.instance.clone(),
            self.problem.to_string(),
            self.n.to_string(),
            self.m_or_k.to_string(),
            format_rational(&self.alpha),
            self.subset_size.to_string(),
            opt(&self.approx_cost),
            opt(&self.exact_cost),
            self.ratio.as_ref().map(fixed9).unwrap_or_default(),
            fixed9(&self.bound),
            self.rounds.to_string(),
            self.capped.to_string(),
            self.work.to_string(),
            self.wall_ms.map(|w| format!("{w:.3}")).unwrap_or_default(),
            self.status.to_string(),
        ]
    }
}

pub fn write_report(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).expect("writing to memory");
    for r in rows {
        w.write_record(r.record()).expect("writing to memory");
    }
    let body =
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV output is UTF-8");
    format!("{FORMAT_LINE}\n{body}")
}

pub fn read_report(text: &str) -> Result<Vec<ReportRow>> {
    let bad = |row: usize, m: String| BenchError::Report { row, message: m };
    let mut lines = text.splitn(2, '\n');
    if lines.next().map(str::trim_end) != Some(FORMAT_LINE) {
        return Err(bad(0, format!("first line must be {FORMAT_LINE:?}")));
    }
    let body = lines.next().unwrap_or("");
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(body.as_bytes());
    let header = rd.headers().map_err(|e| bad(0, e.to_string()))?;
    if header.iter().ne(COLUMNS) {
        return Err(bad(0, "unexpected header".into()));
    }
    let mut rows = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| bad(row, e.to_string()))?;
        let f = |j: usize| rec.get(j).unwrap_or("");
        let num = |j: usize| {
            f(j).parse::<u64>()
                .map_err(|_| bad(row, format!("{}: bad integer {:?}", COLUMNS[j], f(j))))
        };
        let rat = |j: usize| {
            parse_rational(f(j))
                .map_err(|_| bad(row, format!("{}: bad number {:?}", COLUMNS[j], f(j))))
        };
        let cost = |j: usize| -> Result<Option<Cost>> {
            if f(j).is_empty() {
                return Ok(None);
            }
            f(j).parse()
                .map(Some)
                .map_err(|_| bad(row, format!("{}: bad cost {:?}", COLUMNS[j], f(j))))
        };
        let ratio = if f(8).is_empty() { None } else { Some(rat(8)?) };
        let exact_cost = cost(7)?;
        if ratio.is_some() != exact_cost.is_some() {
            return Err(bad(
                row,
                "ratio must be present exactly when exact_cost is".into(),
            ));
        }
        rows.push(ReportRow {
            instance: f(0).to_string(),
            problem: f(1)
                .parse()
                .map_err(|e: BenchError| bad(row, e.to_string()))?,
            n: num(2)? as usize,
            m_or_k: num(3)? as usize,
            alpha: rat(4)?,
            subset_size: num(5)? as usize,
            approx_cost: cost(6)?,
            exact_cost,
            ratio,
            bound: rat(9)?,
            rounds: num(10)? as usize,
            capped: f(11)
                .parse()
                .map_err(|_| bad(row, format!("capped: bad flag {:?}", f(11))))?,
            work: num(12)?,
            wall_ms: if f(13).is_empty() {
                None
            } else {
                Some(
                    f(13)
                        .parse()
                        .map_err(|_| bad(row, format!("wall_ms: bad number {:?}", f(13))))?,
                )
            },
            status: f(14).parse().map_err(|m| bad(row, m))?,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaSummary {
    pub alpha: Rational,
    pub rows: usize,
    pub not_ok: usize,
    pub with_ratio: usize,
    pub without_ratio: usize,
    pub max_ratio: Option<Rational>,
    pub mean_ratio: Option<f64>,
    pub max_bound: Rational,
    /// Rows whose ratio exceeds `bound + 3`.
    pub over_slack: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingRow {
    pub subset_size: usize,
    pub rows: usize,
    pub median_work: u64,
    pub median_wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub per_alpha: Vec<AlphaSummary>,
    /// Ok rows grouped by subset size, ascending.
    pub scaling: Vec<ScalingRow>,
    pub work_nondecreasing: bool,
    pub wall_nondecreasing: Option<bool>,
}

fn median_u64(mut v: Vec<u64>) -> u64 {
    v.sort_unstable();
    v[(v.len() - 1) / 2]
}

fn median_f64(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[(v.len() - 1) / 2]
}

pub fn summarize(rows: &[ReportRow]) -> Summary {
    let slack = Ratio::from_integer(3);
    let mut by_alpha: BTreeMap<Rational, Vec<&ReportRow>> = BTreeMap::new();
    for r in rows {
        by_alpha.entry(r.alpha).or_default().push(r);
    }
    let per_alpha = by_alpha
        .into_iter()
        .map(|(alpha, rs)| {
            let ratios: Vec<(Rational, Rational)> = rs
                .iter()
                .filter_map(|r| r.ratio.map(|x| (x, r.bound)))
                .collect();
            let mean = (!ratios.is_empty()).then(|| {
                ratios
                    .iter()
                    .map(|(x, _)| *x.numer() as f64 / *x.denom() as f64)
                    .sum::<f64>()
                    / ratios.len() as f64
            });
            AlphaSummary {
                alpha,
                rows: rs.len(),
                not_ok: rs.iter().filter(|r| r.status != Status::Ok).count(),
                with_ratio: ratios.len(),
                without_ratio: rs.len() - ratios.len(),
                max_ratio: ratios.iter().map(|(x, _)| *x).max(),
                mean_ratio: mean,
                max_bound: rs.iter().map(|r| r.bound).max().unwrap_or_default(),
                over_slack: ratios.iter().filter(|(x, b)| *x > *b + slack).count(),
            }
        })
        .collect();

    let mut by_s: BTreeMap<usize, Vec<&ReportRow>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.status == Status::Ok) {
        by_s.entry(r.subset_size).or_default().push(r);
    }
    let scaling: Vec<ScalingRow> = by_s
        .into_iter()
        .map(|(s, rs)| {
            let walls: Vec<f64> = rs.iter().filter_map(|r| r.wall_ms).collect();
            ScalingRow {
                subset_size: s,
                rows: rs.len(),
                median_work: median_u64(rs.iter().map(|r| r.work).collect()),
                median_wall_ms: (walls.len() == rs.len()).then(|| median_f64(walls)),
            }
        })
        .collect();
    let work_nondecreasing = scaling
        .windows(2)
        .all(|w| w[0].median_work <= w[1].median_work);
    let wall_nondecreasing = scaling.iter().all(|r| r.median_wall_ms.is_some()).then(|| {
        scaling
            .windows(2)
            .all(|w| w[0].median_wall_ms.unwrap() <= w[1].median_wall_ms.unwrap())
    });
    Summary {
        per_alpha,
        scaling,
        work_nondecreasing,
        wall_nondecreasing,
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "alpha rows not_ok with_ratio without_ratio max_ratio mean_ratio max_bound over_slack"
        )?;
        for a in &self.per_alpha {
            writeln!(
                f,
                "{} {} {} {} {} {} {} {} {}",
                format_rational(&a.alpha),
                a.rows,
                a.not_ok,
                a.with_ratio,
                a.without_ratio,
                a.max_ratio
                    .as_ref()
                    .map(fixed9)
                    .unwrap_or_else(|| "-".into()),
                a.mean_ratio
                    .map(|m| format!("{m:.6}"))
                    .unwrap_or_else(|| "-".into()),
                fixed9(&a.max_bound),
                a.over_slack,
            )?;
        }
        writeln!(f)?;
        writeln!(f, "s rows median_work median_wall_ms")?;
        for s in &self.scaling {
            writeln!(
                f,
                "{} {} {} {}",
                s.subset_size,
                s.rows,
                s.median_work,
                s.median_wall_ms
                    .map(|w| format!("{w:.3}"))
                    .unwrap_or_else(|| "-".into())
            )?;
        }
        writeln!(f)?;
        writeln!(f, "work_nondecreasing={}", self.work_nondecreasing)?;
        match self.wall_nondecreasing {
            Some(b) => writeln!(f, "wall_nondecreasing={b}"),
            None => writeln!(f, "wall_nondecreasing=-"),
        }
    }
}
