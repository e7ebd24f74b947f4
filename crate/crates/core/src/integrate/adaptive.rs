//! Deterministic adaptive subdivision driver.
//!
//! A max-heap keyed by (panel error, insertion sequence) makes the refinement
//! order independent of float tie-breaking quirks: equal errors split in
//! insertion order, and the final sum is re-accumulated sorted by interval
//! start so the same inputs always produce bit-identical output.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::gk::{gk15, EVALS_PER_PANEL};
use crate::error::{Error, Result};

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    seq: u64,
    /// Frozen panels are never split again: width at the float floor or a
    /// non-finite sample inside. Their error still counts toward the total.
    frozen: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Frozen panels sink below all live ones regardless of error.
        (!self.frozen, self.err)
            .partial_cmp(&(!other.frozen, other.err))
            .map(|o| o.then(other.seq.cmp(&self.seq)))
            .unwrap_or_else(|| {
                self.err
                    .total_cmp(&other.err)
                    .then(other.seq.cmp(&self.seq))
            })
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct BoundedOutcome {
    pub value: Complex64,
    pub abs_error: f64,
    pub panels: usize,
}

/// Smallest panel width we are willing to split below, relative to location.
fn width_floor(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs()).max(1.0);
    100.0 * f64::EPSILON * scale
}

/// Adaptive K15/G7 over [a, b] with mandatory splits at interior breakpoints.
///
/// `budget` is shared across calls so composite drivers (tails, ladders,
/// iterated boxes) can account for total work; it counts integrand
/// evaluations and is decremented in place.
pub(crate) fn adapt_bounded(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
    budget: &mut usize,
) -> Result<BoundedOutcome> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { a, b });
    }

    let mut seq: u64 = 0;
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let spend = |budget: &mut usize| -> Result<()> {
        if *budget < EVALS_PER_PANEL {
            Err(Error::NonConvergence {
                context: "adaptive panel budget exhausted".into(),
                evals: 0,
                estimate: f64::NAN,
                tol,
            })
        } else {
            *budget -= EVALS_PER_PANEL;
            Ok(())
        }
    };

    // Split at interior breakpoints up front so no panel straddles one.
    let mut edges = vec![a];
    for &p in breakpoints {
        if p > a && p < b {
            edges.push(p);
        }
    }
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let push_panel =
        |heap: &mut BinaryHeap<Panel>, lo: f64, hi: f64, seq: &mut u64, budget: &mut usize| -> Result<()> {
            spend(budget)?;
            let est = gk15(f, lo, hi);
            let bad = !est.value.re.is_finite()
                || !est.value.im.is_finite()
                || !est.abs_error.is_finite();
            heap.push(Panel {
                a: lo,
                b: hi,
                value: if bad { Complex64::new(0.0, 0.0) } else { est.value },
                err: if bad { f64::INFINITY } else { est.abs_error },
                seq: *seq,
                frozen: bad && (hi - lo) <= width_floor(lo, hi),
            });
            *seq += 1;
            Ok(())
        };

    for w in edges.windows(2) {
        push_panel(&mut heap, w[0], w[1], &mut seq, budget)?;
    }

    loop {
        let total_err: f64 = heap.iter().map(|p| if p.err.is_finite() { p.err } else { 0.0 }).sum();
        let any_infinite = heap.iter().any(|p| !p.err.is_finite() && !p.frozen);
        if !any_infinite && total_err <= tol && heap.iter().all(|p| p.err.is_finite() || p.frozen) {
            break;
        }

        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        if worst.frozen || (worst.err.is_finite() && !any_infinite && total_err <= tol) {
            heap.push(worst);
            break;
        }

        let width = worst.b - worst.a;
        if width <= width_floor(worst.a, worst.b) {
            // Cannot split further. A non-finite sample this narrow means the
            // integrand is genuinely singular here; give up cleanly.
            if !worst.err.is_finite() {
                return Err(Error::NonConvergence {
                    context: format!(
                        "non-finite integrand values persist near x = {:.17e}",
                        0.5 * (worst.a + worst.b)
                    ),
                    evals: 0,
                    estimate: f64::NAN,
                    tol,
                });
            }
            heap.push(Panel { frozen: true, ..worst });
            // If everything left is frozen we are done refining.
            if heap.iter().all(|p| p.frozen) {
                break;
            }
            continue;
        }

        let mid = 0.5 * (worst.a + worst.b);
        match (|| -> Result<()> {
            push_panel(&mut heap, worst.a, mid, &mut seq, budget)?;
            push_panel(&mut heap, mid, worst.b, &mut seq, budget)
        })() {
            Ok(()) => {}
            Err(Error::NonConvergence { .. }) => {
                heap.push(worst);
                let partial: f64 = heap
                    .iter()
                    .map(|p| if p.err.is_finite() { p.err } else { 0.0 })
                    .sum();
                let value: Complex64 = heap.iter().map(|p| p.value).sum();
                return Err(Error::NonConvergence {
                    context: format!(
                        "evaluation budget exhausted on [{a}, {b}] with error {partial:.3e}"
                    ),
                    evals: heap.len() * EVALS_PER_PANEL,
                    estimate: value.norm(),
                    tol,
                });
            }
            Err(e) => return Err(e),
        }
    }

    // Deterministic final accumulation: sort panels by left endpoint.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a).then(p.b.total_cmp(&q.b)));
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for p in &panels {
        value += p.value;
        if p.err.is_finite() {
            err += p.err;
        }
    }
    Ok(BoundedOutcome {
        value,
        abs_error: err,
        panels: panels.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_over_wide_interval_matches_sqrt_pi() {
        let mut budget = 1_000_000;
        let out = adapt_bounded(
            &|x| Complex64::new((-x * x).exp(), 0.0),
            -8.0,
            8.0,
            &[],
            1e-12,
            &mut budget,
        )
        .unwrap();
        assert!((out.value.re - 1.772_453_850_905_515_9).abs() < 1e-12);
    }

    #[test]
    fn kink_at_breakpoint_integrates_cleanly() {
        // |x| on [-1, 1] = 1; the kink at 0 is declared.
        let mut budget = 1_000_000;
        let out = adapt_bounded(
            &|x| Complex64::new(x.abs(), 0.0),
            -1.0,
            1.0,
            &[0.0],
            1e-13,
            &mut budget,
        )
        .unwrap();
        assert!((out.value.re - 1.0).abs() < 1e-13);
        assert_eq!(out.panels, 2, "kink split should already be exact");
    }

    #[test]
    fn budget_exhaustion_reports_nonconvergence() {
        let mut budget = 30; // room for two panels only
        let err = adapt_bounded(
            &|x| Complex64::new((50.0 * x).sin(), 0.0),
            0.0,
            10.0,
            &[],
            1e-14,
            &mut budget,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn reversed_interval_is_rejected() {
        let mut budget = 1_000;
        let err =
            adapt_bounded(&|_| Complex64::new(1.0, 0.0), 2.0, 1.0, &[], 1e-8, &mut budget).unwrap_err();
        assert!(matches!(err, Error::InvalidInterval { .. }));
    }

    #[test]
    fn determinism_bit_identical_across_runs() {
        let run = || {
            let mut budget = 1_000_000;
            adapt_bounded(
                &|x| Complex64::new((x * x).sin() / (1.0 + x * x), x.cos()),
                -3.0,
                7.0,
                &[0.5],
                1e-11,
                &mut budget,
            )
            .unwrap()
        };
        let r1 = run();
        let r2 = run();
        assert_eq!(r1.value.re.to_bits(), r2.value.re.to_bits());
        assert_eq!(r1.value.im.to_bits(), r2.value.im.to_bits());
    }
}
