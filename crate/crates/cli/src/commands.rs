//! The `plumb` subcommands as pure functions from input text to an
//! [`Outcome`]. The first stdout line is always `RESULT key=value …`.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 fuel
//! exhausted.

use std::fmt::Write as _;

use plumbing_core::analysis::{
    detect_klein_pieces, detect_positive_torsion, gs_check, h1_invariant, intersection_form, is_star_shaped,
    AnalysisError, GsMode,
};
use plumbing_core::chains::{lens_of_chain, maximal_chains};
use plumbing_core::exact::format_rational;
use plumbing_core::graph::isomorphic;
use plumbing_core::reduction::{
    contact_reduce, obstructed, topological_reduce, Fuel, ObstructionError, ReductionError, ReductionMode,
};

use crate::dot::to_dot;
use crate::format::{parse, serialize, GraphDocument, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FUEL: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Outcome {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    /// An input error: a RESULT line naming it, details on stderr.
    pub fn input_error(kind: &str, detail: impl std::fmt::Display) -> Outcome {
        Outcome {
            code: EXIT_INPUT,
            stdout: format!("RESULT error={kind}\n"),
            stderr: format!("error: {detail}\n"),
        }
    }
}

fn parse_or_fail(text: &str) -> Result<GraphDocument, Outcome> {
    parse(text).map_err(|e: ParseError| Outcome::input_error("parse", e))
}

fn analysis_error(e: AnalysisError) -> Outcome {
    match e {
        AnalysisError::MissingArea(v) => Outcome::input_error("missing_area", format!("vertex {v} has no area")),
        AnalysisError::NonOrientable(v) => {
            Outcome::input_error("non_orientable", format!("vertex {v} has a non-orientable base"))
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReduceOptions {
    pub fuel: Option<u64>,
    pub trace: bool,
    pub dot: bool,
}

pub fn reduce(text: &str, mode: ReductionMode, opts: ReduceOptions) -> Outcome {
    let doc = match parse_or_fail(text) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let fuel = match opts.fuel {
        None => Fuel::default_for(&doc.graph),
        Some(n) => match Fuel::new(n) {
            Some(f) => f,
            None => return Outcome::input_error("fuel", "fuel must be positive"),
        },
    };
    let report = match mode {
        ReductionMode::Contact => match contact_reduce(&doc.graph, fuel) {
            Ok(r) => r,
            Err(ReductionError::NonOrientable(v)) => {
                return Outcome::input_error("non_orientable", format!("vertex {v} has a non-orientable base"))
            }
        },
        ReductionMode::Topological => topological_reduce(&doc.graph, fuel),
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "RESULT mode={} normal_form={} fuel_used={} fuel_exhausted={} vertices={} edges={}",
        report.mode,
        report.normal_form_attained,
        report.fuel_used,
        report.fuel_exhausted,
        report.output.vertex_count(),
        report.output.edge_count()
    );
    if opts.trace {
        for r in &report.trace {
            let _ = writeln!(out, "{r}");
        }
    }
    let result = GraphDocument {
        graph: report.output.clone(),
        name: doc.name.clone(),
        notes: Vec::new(),
    };
    out.push_str(&if opts.dot { to_dot(&result) } else { serialize(&result) });
    let code = if report.fuel_exhausted {
        EXIT_FUEL
    } else if report.normal_form_attained {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Outcome::ok(code, out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Gs(GsMode),
    Obstructed,
    Klein,
    Torsion,
    Star,
}

/// Exit 1 marks the unfavourable answer: GS infeasible, obstructed, a
/// Klein-bottle piece or torsion configuration present, not star-shaped.
pub fn check(text: &str, what: Check, fuel: Option<u64>) -> Outcome {
    let doc = match parse_or_fail(text) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let g = &doc.graph;
    let verdict = |good: bool, line: String| Outcome::ok(if good { EXIT_OK } else { EXIT_NEGATIVE }, line);
    match what {
        Check::Gs(mode) => {
            let report = match gs_check(g, mode) {
                Ok(r) => r,
                Err(e) => return analysis_error(e),
            };
            let name = match mode {
                GsMode::Positive => "positive",
                GsMode::Negative => "negative",
            };
            let mut line = format!("RESULT gs={name} feasible={}", report.feasible);
            if let Some(w) = &report.witness {
                let w: Vec<String> = w.iter().map(format_rational).collect();
                let _ = write!(line, " witness={}", w.join(","));
            }
            line.push('\n');
            verdict(report.feasible, line)
        }
        Check::Obstructed => {
            let fuel = match fuel {
                None => Fuel::default_for(g),
                Some(n) => match Fuel::new(n) {
                    Some(f) => f,
                    None => return Outcome::input_error("fuel", "fuel must be positive"),
                },
            };
            match obstructed(g, fuel) {
                Ok(o) => verdict(!o, format!("RESULT obstructed={o}\n")),
                Err(e @ ObstructionError::Indeterminate { .. }) => Outcome {
                    code: EXIT_FUEL,
                    stdout: "RESULT obstructed=indeterminate\n".to_string(),
                    stderr: format!("{e}\n"),
                },
                Err(ObstructionError::NonOrientable(v)) => {
                    Outcome::input_error("non_orientable", format!("vertex {v} has a non-orientable base"))
                }
            }
        }
        Check::Klein => {
            let sites = detect_klein_pieces(g);
            if sites.is_empty() {
                return verdict(true, "RESULT klein=none\n".to_string());
            }
            let list: Vec<String> = sites
                .iter()
                .map(|s| format!("{}[{},{}]->{}", s.center, s.leaves[0], s.leaves[1], s.attached_to))
                .collect();
            verdict(
                false,
                format!("RESULT klein={} sites={}\n", sites.len(), list.join(";")),
            )
        }
        Check::Torsion => {
            let t = detect_positive_torsion(g);
            verdict(!t, format!("RESULT torsion={t}\n"))
        }
        Check::Star => {
            let s = is_star_shaped(g);
            verdict(s, format!("RESULT star={s}\n"))
        }
    }
}

pub fn invariants(text: &str) -> Outcome {
    let doc = match parse_or_fail(text) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let g = &doc.graph;
    let h1 = match h1_invariant(g) {
        Ok(h) => h,
        Err(e) => return analysis_error(e),
    };
    let q = intersection_form(g);
    let det = q
        .determinant()
        .map_or_else(|| "undefined".to_string(), |d| d.to_string());
    let torsion = if h1.torsion.is_empty() {
        "none".to_string()
    } else {
        h1.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
    };
    let standalone: Vec<_> = maximal_chains(g).into_iter().filter(|c| c.is_standalone()).collect();
    let mut out = format!(
        "RESULT h1={h1} free_rank={} torsion={torsion} det={det} standalone_chains={}\n",
        h1.free_rank,
        standalone.len()
    );
    let _ = writeln!(out, "form {q:?}");
    for c in &standalone {
        let ids: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
        // chains ending in 0 or 1 have no lens reading
        let lens = lens_of_chain(c).map_or_else(|_| "undefined".to_string(), |l| l.to_string());
        let _ = writeln!(out, "chain {} {lens}", ids.join(","));
    }
    Outcome::ok(EXIT_OK, out)
}

pub fn iso(a: &str, b: &str) -> Outcome {
    let (da, db) = match (parse_or_fail(a), parse_or_fail(b)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    let same = isomorphic(&da.graph, &db.graph);
    Outcome::ok(
        if same { EXIT_OK } else { EXIT_NEGATIVE },
        format!("RESULT iso={same}\n"),
    )
}
