use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use tkw::gbar::abelianize;
use tkw::moves::{trial, MoveKind, Trial};
use tkw::{compare, phi2, phibar, GBarVerdict};

use crate::Scheme;

#[derive(Debug, Clone)]
pub struct Violation {
    pub iteration: u64,
    pub step: usize,
    pub detail: String,
    pub trial: Trial,
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub seed: u64,
    pub iters: u64,
    pub max_moves: usize,
    pub scheme: Scheme,
    pub budget: usize,
    pub steps: usize,
    pub r3_steps: usize,
    pub violation: Option<Violation>,
}

/// Checks every step of a trial; returns the index of the first bad step.
fn check(t: &Trial, scheme: Scheme, budget: usize) -> Option<(usize, String)> {
    match scheme {
        Scheme::Phi2 => {
            let start = phi2(&t.start);
            t.trajectory.iter().enumerate().skip(1).find_map(|(i, d)| {
                let got = phi2(d);
                (got != start).then(|| (i, format!("phi2 changed from {start} to {got}")))
            })
        }
        Scheme::Phibar => t.trajectory.windows(2).enumerate().find_map(|(i, pair)| {
            let (x, y) = (phibar(&pair[0]), phibar(&pair[1]));
            if abelianize(&x) != abelianize(&y) {
                return Some((i + 1, format!("abelian image changed: {x} vs {y}")));
            }
            match compare(&x, &y, budget) {
                GBarVerdict::Equal { path, .. } if path.verify(&x, &y) => None,
                GBarVerdict::Equal { .. } => {
                    Some((i + 1, format!("proof for {x} = {y} does not replay")))
                }
                v => Some((
                    i + 1,
                    format!("compare returned {} for {x} vs {y}", v.name()),
                )),
            }
        }),
    }
}

pub fn run(seed: u64, iters: u64, max_moves: usize, scheme: Scheme, budget: usize) -> FuzzReport {
    let results: Vec<(usize, usize, Option<Violation>)> = (0..iters)
        .into_par_iter()
        .map(|iteration| {
            let t = trial(seed, iteration, max_moves);
            let r3 = t.moves.iter().filter(|m| m.kind == MoveKind::R3a).count();
            let bad = check(&t, scheme, budget).map(|(step, detail)| Violation {
                iteration,
                step,
                detail,
                trial: t.clone(),
            });
            (t.moves.len(), r3, bad)
        })
        .collect();
    FuzzReport {
        seed,
        iters,
        max_moves,
        scheme,
        budget,
        steps: results.iter().map(|r| r.0).sum(),
        r3_steps: results.iter().map(|r| r.1).sum(),
        violation: results.into_iter().find_map(|r| r.2),
    }
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn reproduce(&self) -> Option<String> {
        self.violation.as_ref().map(|v| {
            format!(
                "tkw fuzz --seed {} --iters {} --max-moves {} --scheme {} --budget {}",
                self.seed,
                v.iteration + 1,
                self.max_moves,
                self.scheme.name(),
                self.budget
            )
        })
    }

    pub fn to_json(&self) -> Value {
        let counterexample = self.violation.as_ref().map(|v| {
            json!({
                "iteration": v.iteration,
                "step": v.step,
                "detail": v.detail,
                "start": v.trial.start.to_code(),
                "moves": v.trial.moves.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "trajectory": v.trial.trajectory.iter().map(|d| d.to_code()).collect::<Vec<_>>(),
            })
        });
        json!({
            "seed": self.seed,
            "iters": self.iters,
            "max_moves": self.max_moves,
            "scheme": self.scheme.name(),
            "budget": self.budget,
            "steps": self.steps,
            "r3_steps": self.r3_steps,
            "status": if self.passed() { "pass" } else { "fail" },
            "counterexample": counterexample,
            "reproduce": self.reproduce(),
        })
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} seed={} iters={} max-moves={}: {} steps ({} R3)",
            self.scheme.name(),
            self.seed,
            self.iters,
            self.max_moves,
            self.steps,
            self.r3_steps
        )?;
        let Some(v) = &self.violation else {
            return writeln!(f, "pass");
        };
        writeln!(
            f,
            "FAIL at iteration {} step {}: {}",
            v.iteration, v.step, v.detail
        )?;
        for (i, d) in v.trial.trajectory.iter().enumerate() {
            match i {
                0 => writeln!(f, "  start       {}", d.to_code())?,
                _ => writeln!(
                    f,
                    "  {:<11} {}",
                    v.trial.moves[i - 1].to_string(),
                    d.to_code()
                )?,
            }
        }
        writeln!(f, "reproduce: {}", self.reproduce().unwrap())
    }
}
