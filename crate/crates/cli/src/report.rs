use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Solver selected by `--algo`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    CvcAdditive,
    CvcEps,
    CecExact,
    BmExact,
    TmExact,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::CvcAdditive => "cvc-additive",
            Algorithm::CvcEps => "cvc-eps",
            Algorithm::CecExact => "cec-exact",
            Algorithm::BmExact => "bm-exact",
            Algorithm::TmExact => "tm-exact",
            Algorithm::Oracle => "oracle",
        }
    }
}

/// What a solution consists of. Lines print as `x=c` / `y=c`, points as `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "items", rename_all = "kebab-case")]
pub enum Selection {
    Vertices(Vec<usize>),
    Edges(Vec<usize>),
    Lines(Vec<String>),
    Points(Vec<String>),
}

impl Selection {
    pub fn len(&self) -> usize {
        match self {
            Selection::Vertices(v) | Selection::Edges(v) => v.len(),
            Selection::Lines(v) | Selection::Points(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Outcome of `--verify oracle`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    /// Optimal size, `None` when the oracle finds the instance infeasible.
    pub oracle_optimum: Option<usize>,
    /// The algorithm's guarantee, e.g. `size <= 2*OPT + 3`.
    pub guarantee: String,
    pub guarantee_met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    pub algorithm: Algorithm,
    pub feasible: bool,
    pub size: Option<usize>,
    pub selected: Option<Selection>,
    /// Achieved coverage per color.
    pub coverage: Option<Vec<u64>>,
    pub requirements: Vec<u64>,
    /// Present with `--verify oracle` when the instance is within the oracle's caps.
    pub verification: Option<Verification>,
    pub notes: Vec<String>,
    pub wall_clock_ms: u64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn summary(&self) -> String {
        let mut out = format!("{} via {}: ", self.problem, self.algorithm.name());
        match (&self.size, &self.coverage) {
            (Some(size), Some(coverage)) if self.feasible => {
                write!(
                    out,
                    "size {size}, coverage {coverage:?} of required {:?}",
                    self.requirements
                )
                .unwrap();
            }
            _ => out.push_str("infeasible"),
        }
        if let Some(v) = &self.verification {
            match v.oracle_optimum {
                Some(opt) => write!(out, "; oracle optimum {opt}").unwrap(),
                None => out.push_str("; oracle: infeasible"),
            }
            let verdict = if v.guarantee_met { "holds" } else { "VIOLATED" };
            write!(out, "; {} {verdict}", v.guarantee).unwrap();
        }
        for note in &self.notes {
            write!(out, "; {note}").unwrap();
        }
        write!(out, " ({} ms)", self.wall_clock_ms).unwrap();
        out
    }
}
