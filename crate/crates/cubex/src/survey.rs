//! The classification survey driver: per-class skeleton, eigenvalues,
//! exact expansion, histogram and summary documents. Classes are analyzed
//! by a worker pool with results placed by class index, so the output is
//! byte-identical for any worker count.

use std::sync::atomic::{AtomicUsize, Ordering};

use cubex_core::enumerate::{analyze_polytope, classify, histogram, SurveyRow};
use cubex_core::error::Error;

use crate::report;

pub struct SurveyOutput {
    pub rows: Vec<SurveyRow>,
    /// `(file name, JSON bytes)` per class, in signature order.
    pub class_docs: Vec<(String, String)>,
    pub histogram_csv: String,
    pub summary_json: String,
}

/// Resolves the worker count: explicit flag, then the `CUBEX_WORKERS`
/// environment variable, then machine parallelism.
pub fn resolve_workers(flag: Option<usize>) -> usize {
    if let Some(w) = flag {
        return w.max(1);
    }
    if let Ok(env) = std::env::var("CUBEX_WORKERS") {
        if let Ok(w) = env.parse::<usize>() {
            return w.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Applies `f` to every index with a shared work queue; results land in a
/// vector slot per index, independent of scheduling.
pub fn parallel_map<T, F>(count: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.max(1).min(count.max(1));
    let next = AtomicUsize::new(0);
    let batches: Vec<Vec<(usize, T)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= count {
                            break;
                        }
                        local.push((i, f(i)));
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut slots: Vec<Option<T>> = Vec::with_capacity(count);
    slots.resize_with(count, || None);
    for batch in batches {
        for (i, v) in batch {
            slots[i] = Some(v);
        }
    }
    slots.into_iter().map(|s| s.unwrap()).collect()
}

pub fn run_survey(
    d: usize,
    tol: f64,
    bin_width: f64,
    workers: usize,
) -> Result<SurveyOutput, Error> {
    let classes = classify(d)?;
    let results = parallel_map(classes.len(), workers, |i| {
        let rec = &classes[i];
        analyze_polytope(rec.signature, rec.dim, &rec.representative, tol)
    });
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }

    let bounds: Vec<f64> = rows.iter().map(|r| r.eigen_lower).collect();
    let bins = histogram(&bounds, bin_width);
    let histogram_csv = report::histogram_csv(&bins, bin_width);
    let summary_json =
        serde_json::to_string_pretty(&report::summary_json(d, &rows, bin_width, tol)).unwrap();
    let class_docs = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let name = format!("class_{:04}.json", i);
            let doc = serde_json::to_string_pretty(&report::class_json(row)).unwrap();
            (name, doc)
        })
        .collect();
    Ok(SurveyOutput {
        rows,
        class_docs,
        histogram_csv,
        summary_json,
    })
}
