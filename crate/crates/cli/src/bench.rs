use std::time::{Duration, Instant};

use lucid_core::algebra::Rational;
use lucid_core::lucas::{lucas_numeric, Method, SequenceParams};
use num_traits::Signed;

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub method: Method,
    pub elapsed: Duration,
    /// Decimal digits of the numerator of `U_k`.
    pub digits: usize,
    pub value: Rational,
}

/// Time each method on `U_k`. All results must agree; a disagreement is a
/// correctness bug and is returned as an error.
pub fn bench(params: &SequenceParams<Rational>, k: u64, methods: &[Method]) -> Result<Vec<BenchRow>, String> {
    let k = i64::try_from(k).map_err(|_| format!("k = {k} is too large"))?;
    let mut rows: Vec<BenchRow> = Vec::new();
    for &m in methods {
        let start = Instant::now();
        let pair = lucas_numeric(params, k, m).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let digits = pair.u_k.numer().abs().to_string().len();
        rows.push(BenchRow { method: m, elapsed, digits, value: pair.u_k });
    }
    if let Some(first) = rows.first() {
        for r in &rows[1..] {
            if r.value != first.value {
                return Err(format!("{} and {} disagree on U[{k}]", first.method.name(), r.method.name()));
            }
        }
    }
    Ok(rows)
}
