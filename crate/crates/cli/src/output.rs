//! JSON and CSV renderings of command results.
//!
//! Exact values are carried as decimal strings (`num`, `den`) because they
//! routinely exceed the range of JSON numbers; `approx` is a rounded decimal
//! for human eyes and plotting tools.

use std::io::Write;

use anyhow::Result;
use roving_core::plan::{Infeasibility, PlanOutcome, PlanQuery};
use roving_core::probability::to_decimal;
use roving_core::simulate::total_variation;
use roving_core::{CoverageDistribution, ExactProbability, Natural, Params, Rational, SimulationResult};
use serde::{Deserialize, Serialize};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub num: String,
    pub den: String,
    pub approx: String,
}

impl ExactValue {
    pub fn new(value: &Rational, digits: u32) -> Self {
        ExactValue {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
            approx: to_decimal(value, digits),
        }
    }

    pub fn probability(value: &ExactProbability, digits: u32) -> Self {
        Self::new(value.as_ratio(), digits)
    }

    pub fn to_rational(&self) -> Result<Rational> {
        let parse = |s: &str| {
            s.parse::<Natural>()
                .map_err(|e| anyhow::anyhow!("invalid integer {s:?}: {e}"))
        };
        let den = parse(&self.den)?;
        anyhow::ensure!(den != Natural::default(), "zero denominator");
        Ok(Rational::new(parse(&self.num)?, den))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub n: u64,
    pub m: u64,
    pub k: u64,
}

impl From<&Params> for ParamsRecord {
    fn from(p: &Params) -> Self {
        ParamsRecord {
            n: p.n(),
            m: p.m(),
            k: p.k(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

impl Metadata {
    fn new(seed: Option<u64>) -> Self {
        Metadata {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistRow {
    pub t: u64,
    pub probability: ExactValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistRecord {
    pub scheme: String,
    pub params: ParamsRecord,
    pub rows: Vec<DistRow>,
    pub mean: ExactValue,
    pub metadata: Metadata,
}

impl DistRecord {
    pub fn new(dist: &CoverageDistribution, digits: u32) -> Self {
        DistRecord {
            scheme: dist.scheme().to_string(),
            params: dist.params().into(),
            rows: dist
                .iter()
                .map(|(t, p)| DistRow {
                    t,
                    probability: ExactValue::probability(p, digits),
                })
                .collect(),
            mean: ExactValue::new(&dist.mean(), digits),
            metadata: Metadata::new(None),
        }
    }

    /// One row per `t`, then a `mean` row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["scheme", "n", "m", "k", "t", "num", "den", "approx"])?;
        let head = [
            self.scheme.clone(),
            self.params.n.to_string(),
            self.params.m.to_string(),
            self.params.k.to_string(),
        ];
        for row in &self.rows {
            let p = &row.probability;
            w.write_record(head.iter().cloned().chain([
                row.t.to_string(),
                p.num.clone(),
                p.den.clone(),
                p.approx.clone(),
            ]))?;
        }
        let mean = &self.mean;
        w.write_record(head.iter().cloned().chain([
            "mean".to_string(),
            mean.num.clone(),
            mean.den.clone(),
            mean.approx.clone(),
        ]))?;
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimRow {
    pub t: u64,
    pub count: u64,
    pub empirical: ExactValue,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<ExactValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimRecord {
    pub scheme: String,
    pub params: ParamsRecord,
    pub trials: u64,
    pub rows: Vec<SimRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_variation: Option<ExactValue>,
    pub metadata: Metadata,
}

impl SimRecord {
    /// With `exact`, rows span the union of both supports and the record
    /// carries the total variation distance.
    pub fn new(sim: &SimulationResult, exact: Option<&CoverageDistribution>, digits: u32) -> Result<Self> {
        let mut ts: Vec<u64> = sim.counts().keys().copied().collect();
        if let Some(dist) = exact {
            ts.extend(dist.iter().map(|(t, _)| t));
            ts.sort_unstable();
            ts.dedup();
        }
        let rows = ts
            .into_iter()
            .map(|t| SimRow {
                t,
                count: sim.count(t),
                empirical: ExactValue::new(&sim.empirical(t), digits),
                exact: exact.map(|d| ExactValue::probability(&d.mass(t), digits)),
            })
            .collect();
        let tv = match exact {
            Some(dist) => Some(ExactValue::new(&total_variation(dist, sim)?, digits)),
            None => None,
        };
        Ok(SimRecord {
            scheme: sim.scheme().to_string(),
            params: sim.params().into(),
            trials: sim.trials(),
            rows,
            total_variation: tv,
            metadata: Metadata::new(Some(sim.seed())),
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "scheme", "n", "m", "k", "seed", "trials", "t", "count", "num", "den", "approx", "exact_num",
            "exact_den", "exact_approx",
        ])?;
        let head = [
            self.scheme.clone(),
            self.params.n.to_string(),
            self.params.m.to_string(),
            self.params.k.to_string(),
            self.metadata.seed.map(|s| s.to_string()).unwrap_or_default(),
            self.trials.to_string(),
        ];
        for row in &self.rows {
            let e = &row.empirical;
            let (xn, xd, xa) = match &row.exact {
                Some(x) => (x.num.clone(), x.den.clone(), x.approx.clone()),
                None => Default::default(),
            };
            w.write_record(head.iter().cloned().chain([
                row.t.to_string(),
                row.count.to_string(),
                e.num.clone(),
                e.den.clone(),
                e.approx.clone(),
                xn,
                xd,
                xa,
            ]))?;
        }
        if let Some(tv) = &self.total_variation {
            w.write_record(head.iter().cloned().chain([
                "total_variation".to_string(),
                String::new(),
                tv.num.clone(),
                tv.den.clone(),
                tv.approx.clone(),
                String::new(),
                String::new(),
                String::new(),
            ]))?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanRecord {
    pub scheme: String,
    pub n: u64,
    pub m: u64,
    pub t: u64,
    pub confidence: ExactValue,
    pub k_max: u64,
    pub feasible: bool,
    pub infeasible: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub agents: Option<u64>,
    /// `Pr(T ≥ t)` at `agents`, or at `k_max` when the cap was hit.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail: Option<ExactValue>,
    /// `Pr(T ≥ t)` at `agents - 1`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub previous_tail: Option<ExactValue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub markov_bound: Option<ExactValue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    pub metadata: Metadata,
}

impl PlanRecord {
    pub fn new(q: &PlanQuery, n: u64, m: u64, outcome: &PlanOutcome, digits: u32) -> Self {
        let mut record = PlanRecord {
            scheme: q.scheme().to_string(),
            n,
            m,
            t: q.t_min(),
            confidence: ExactValue::probability(q.confidence(), digits),
            k_max: q.k_max(),
            feasible: false,
            infeasible: true,
            agents: None,
            tail: None,
            previous_tail: None,
            markov_bound: None,
            reason: None,
            metadata: Metadata::new(None),
        };
        match outcome {
            PlanOutcome::Feasible {
                agents,
                tail,
                previous_tail,
                ..
            } => {
                record.feasible = true;
                record.infeasible = false;
                record.agents = Some(*agents);
                record.tail = Some(ExactValue::probability(tail, digits));
                record.previous_tail = previous_tail.as_ref().map(|p| ExactValue::probability(p, digits));
                let bound = roving_core::plan::markov_bound(&q.params(*agents), q.scheme(), q.t_min());
                record.markov_bound = Some(ExactValue::probability(&bound, digits));
            }
            PlanOutcome::Infeasible(why) => {
                record.reason = Some(why.to_string());
                if let Infeasibility::AgentCapReached { achieved, .. } = why {
                    record.tail = Some(ExactValue::probability(achieved, digits));
                }
            }
        }
        record
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "scheme",
            "n",
            "m",
            "t",
            "confidence_num",
            "confidence_den",
            "k_max",
            "feasible",
            "agents",
            "tail_num",
            "tail_den",
            "tail_approx",
            "reason",
        ])?;
        let (tn, td, ta) = match &self.tail {
            Some(x) => (x.num.clone(), x.den.clone(), x.approx.clone()),
            None => Default::default(),
        };
        w.write_record([
            self.scheme.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.t.to_string(),
            self.confidence.num.clone(),
            self.confidence.den.clone(),
            self.k_max.to_string(),
            self.feasible.to_string(),
            self.agents.map(|k| k.to_string()).unwrap_or_default(),
            tn,
            td,
            ta,
            self.reason.clone().unwrap_or_default(),
        ])?;
        w.flush()?;
        Ok(())
    }
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use roving_core::{coverage_distribution, Scheme};

    #[test]
    fn json_round_trips_exact_values() {
        let p = Params::abide(30, 4, 6).unwrap();
        let dist = coverage_distribution(&p, Scheme::Abide);
        let record = DistRecord::new(&dist, 15);
        let mut buf = Vec::new();
        write_json(&mut buf, &record).unwrap();
        let back: DistRecord = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, record);
        for row in &back.rows {
            assert_eq!(&row.probability.to_rational().unwrap(), dist.mass(row.t).as_ratio());
        }
        assert_eq!(back.mean.to_rational().unwrap(), dist.mean());
    }

    #[test]
    fn csv_matches_json() {
        let p = Params::eabide(5, 3, 2).unwrap();
        let record = DistRecord::new(&coverage_distribution(&p, Scheme::Eabide), 12);
        let mut buf = Vec::new();
        record.write_csv(&mut buf).unwrap();
        let mut reader = csv::Reader::from_reader(buf.as_slice());
        let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), record.rows.len() + 1);
        for (csv_row, row) in rows.iter().zip(&record.rows) {
            assert_eq!(&csv_row[4], row.t.to_string());
            assert_eq!(&csv_row[5], row.probability.num);
            assert_eq!(&csv_row[6], row.probability.den);
            assert_eq!(&csv_row[7], row.probability.approx);
        }
        let last = rows.last().unwrap();
        assert_eq!(&last[4], "mean");
        assert_eq!(&last[5], record.mean.num);
    }
}
