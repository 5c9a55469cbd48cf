//! `bench`: closed form versus the series oracle on identical batches.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use su3exp::gellmann::{sample_generator_at, Distribution};
use su3exp::oracle::exp_series;
use su3exp::{exp_su3, EvalConfig, Matrix3};

use crate::document::{format_f64, to_json_line};
use crate::error::CliError;

pub const CSV_HEADER: &str = "method,median_ns,max_deviation";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchFormat {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub method: &'static str,
    pub median_ns: f64,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub count: u64,
    pub reps: u64,
    pub rows: Vec<BenchRow>,
    /// Oracle median over closed-form median.
    pub speedup: f64,
}

impl BenchReport {
    pub fn closed_form(&self) -> &BenchRow {
        &self.rows[0]
    }

    pub fn render(&self, format: BenchFormat) -> String {
        match format {
            BenchFormat::Json => to_json_line(self) + "\n",
            BenchFormat::Csv => {
                let mut out = format!("{CSV_HEADER}\n");
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{}",
                        r.method,
                        format_f64(r.median_ns),
                        format_f64(r.max_deviation)
                    );
                }
                out
            }
            BenchFormat::Table => {
                let mut out = format!("bench count={} reps={}\n", self.count, self.reps);
                let _ = writeln!(out, "{:<14} {:>14} {:>14}", "method", "median ns/call", "max deviation");
                for r in &self.rows {
                    let _ = writeln!(out, "{:<14} {:>14.1} {:>14.3e}", r.method, r.median_ns, r.max_deviation);
                }
                let _ = writeln!(out, "speedup: {:.2}x", self.speedup);
                out
            }
        }
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Times `count` evaluations per repetition for each method; reports the median
/// per-call time over `reps` repetitions and the worst closed-form deviation.
pub fn cmd_bench(count: u64, reps: u64, seed: u64) -> Result<BenchReport, CliError> {
    if count == 0 || reps == 0 {
        return Err(CliError::usage("--count and --reps must both be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let batch: Vec<(Matrix3, f64)> = (0..count)
        .map(|i| {
            (
                sample_generator_at(seed, i, Distribution::SphereUniform),
                rng.gen_range(-10.0..=10.0),
            )
        })
        .collect();
    let config = EvalConfig::default();

    let mut closed = Vec::with_capacity(batch.len());
    let mut oracle = Vec::with_capacity(batch.len());
    let mut closed_times = Vec::new();
    let mut oracle_times = Vec::new();
    for _ in 0..reps {
        closed.clear();
        let start = Instant::now();
        for (m, theta) in &batch {
            let (u, _) = exp_su3(black_box(m), black_box(*theta), &config)?;
            closed.push(black_box(u));
        }
        closed_times.push(start.elapsed().as_nanos() as f64 / count as f64);

        oracle.clear();
        let start = Instant::now();
        for (m, theta) in &batch {
            oracle.push(black_box(exp_series(black_box(m), black_box(*theta))));
        }
        oracle_times.push(start.elapsed().as_nanos() as f64 / count as f64);
    }
    let max_deviation = closed
        .iter()
        .zip(&oracle)
        .map(|(u, o)| u.matrix().max_abs_diff(o))
        .fold(0.0, f64::max);

    let closed_ns = median(closed_times);
    let oracle_ns = median(oracle_times);
    Ok(BenchReport {
        count,
        reps,
        rows: vec![
            BenchRow {
                method: "closed_form",
                median_ns: closed_ns,
                max_deviation,
            },
            BenchRow {
                method: "series_oracle",
                median_ns: oracle_ns,
                max_deviation: 0.0,
            },
        ],
        speedup: if closed_ns > 0.0 {
            oracle_ns / closed_ns
        } else {
            f64::INFINITY
        },
    })
}
