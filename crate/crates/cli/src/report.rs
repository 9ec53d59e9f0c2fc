use std::fmt::Write as _;

use nbrw::conditions::verdict_with_tol;
use nbrw::{asymptotic_variance, ConditionVerdict, DartId, Graph, RhoLambdaVerdict, Verdict, Witness};
use serde::Serialize;

use crate::Failure;

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub darts: usize,
    /// `[degree, vertex count]` pairs, ascending by degree.
    pub degree_histogram: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize)]
pub struct Irreducible {
    pub ok: bool,
    pub reason: &'static str,
}

#[derive(Debug, Serialize)]
pub struct LambdaReport {
    pub float: f64,
    pub exact: Vec<[i64; 3]>,
    pub display: String,
}

#[derive(Debug, Serialize)]
pub struct RhoReport {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub tol: f64,
    pub iterations: usize,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub graph: GraphSummary,
    pub nb_irreducible: Irreducible,
    pub lambda: Option<LambdaReport>,
    pub rho: Option<RhoReport>,
    pub path_condition: Option<ConditionVerdict>,
    pub cycle_condition: Option<ConditionVerdict>,
    pub verdict: Option<Verdict>,
    /// `rho - Lambda`.
    pub gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asymptotic_variance: Option<f64>,
}

impl AnalysisReport {
    pub fn build(g: &Graph, tol: f64, with_variance: bool) -> Result<Self, Failure> {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Failure::new(
                crate::EX_USAGE,
                format!("--tol must lie in (0, 1), got {tol}"),
            ));
        }
        let irr = g.nb_irreducibility();
        let mut report = AnalysisReport {
            graph: GraphSummary {
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                darts: g.dart_count(),
                degree_histogram: g.degree_histogram(),
            },
            nb_irreducible: Irreducible {
                ok: irr.is_ok(),
                reason: irr.as_str(),
            },
            lambda: None,
            rho: None,
            path_condition: None,
            cycle_condition: None,
            verdict: None,
            gap: None,
            asymptotic_variance: None,
        };
        if !irr.is_ok() {
            return Ok(report);
        }
        let RhoLambdaVerdict {
            verdict,
            lambda,
            lambda_f64,
            rho,
            gap,
            path_condition,
            cycle_condition,
        } = verdict_with_tol(g, tol)?;
        report.lambda = Some(LambdaReport {
            float: lambda_f64,
            exact: lambda.to_triples(),
            display: lambda.to_string(),
        });
        report.rho = Some(RhoReport {
            value: rho.value,
            lower: rho.lower,
            upper: rho.upper,
            tol,
            iterations: rho.iterations,
        });
        report.path_condition = Some(path_condition);
        report.cycle_condition = Some(cycle_condition);
        report.verdict = Some(verdict);
        report.gap = Some(gap);
        if with_variance {
            report.asymptotic_variance = Some(asymptotic_variance(g)?);
        }
        Ok(report)
    }

    pub fn render_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        let s = &self.graph;
        let hist: Vec<String> = s.degree_histogram.iter().map(|(d, c)| format!("{d}:{c}")).collect();
        let _ = writeln!(
            out,
            "graph: {} vertices, {} edges, {} darts; degree:count {}",
            s.vertices,
            s.edges,
            s.darts,
            hist.join(" ")
        );
        if !self.nb_irreducible.ok {
            let _ = writeln!(out, "not NB-irreducible: {}", self.nb_irreducible.reason);
            return out;
        }
        if let Some(l) = &self.lambda {
            let _ = writeln!(out, "Lambda = {:.12} = {}", l.float, l.display);
        }
        if let Some(r) = &self.rho {
            let _ = writeln!(
                out,
                "rho    = {:.12} (tol {:.0e}, {} iterations)",
                r.value, r.tol, r.iterations
            );
        }
        if let Some(c) = &self.path_condition {
            let _ = writeln!(out, "suspended path condition: {}", describe(g, c));
        }
        if let Some(c) = &self.cycle_condition {
            let _ = writeln!(out, "cycle condition: {}", describe(g, c));
        }
        if let (Some(v), Some(gap)) = (self.verdict, self.gap) {
            let word = match v {
                Verdict::Equal => "equal",
                Verdict::Strict => "strict",
            };
            let _ = writeln!(out, "verdict: {word} (rho - Lambda = {gap:.3e})");
        }
        if let Some(v) = self.asymptotic_variance {
            let _ = writeln!(out, "asymptotic Var[R]/length = {v:.12}");
        }
        out
    }
}

fn dart_route(g: &Graph, darts: &[DartId]) -> String {
    let mut parts = Vec::with_capacity(darts.len() + 1);
    if let Some(&d) = darts.first() {
        parts.push(g.dart(d).tail.to_string());
    }
    parts.extend(darts.iter().map(|&d| g.dart(d).head.to_string()));
    parts.join(" -> ")
}

fn describe(g: &Graph, c: &ConditionVerdict) -> String {
    match &c.witness {
        Witness::Potential { .. } => "holds (potential verified)".into(),
        Witness::Path(p) => format!(
            "violated by suspended path {:?} (vertices {}), g(P) = {} != Lambda",
            p.darts,
            dart_route(g, &p.darts),
            p.g_value
        ),
        Witness::Cycle(cyc) => {
            format!(
                "violated by cycle {:?} (vertices {}), out-degree product differs from Lambda^{}",
                cyc,
                dart_route(g, cyc),
                cyc.len()
            )
        }
    }
}
