use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{GraphHandle, VertexSet};
use crate::regions::{self, Budget};
use crate::report::{ExtractionReport, Mode, Procedure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub ok: bool,
    pub problems: Vec<String>,
}

/// Rebuilds `H` from the report's separator (or residual and regions)
/// using the graph oracle, compares it with the stored subgraph and
/// degrees, and re-evaluates the mode's conclusion on the rebuilt `H`.
pub fn check_certificate(g: &GraphHandle, report: &ExtractionReport, budget: &Budget) -> Result<CertificateCheck> {
    let mut problems = Vec::new();
    let expected: VertexSet = match report.procedure {
        Procedure::Separator => {
            let s: VertexSet = report.separator.iter().cloned().collect();
            let mut all = g.neighborhood(&s)?;
            all.extend(s);
            all
        }
        Procedure::Cover => {
            let mut all: VertexSet = report.residual.iter().cloned().collect();
            for a in &report.regions {
                all.extend(regions::vertex_boundary(g, &a.region, budget)?);
            }
            all
        }
    };
    let h = g.induced_window(&expected)?;
    if report.h.vertices != h.vertices() {
        problems.push(format!(
            "H has {} vertices, the rebuilt H has {}",
            report.h.vertices.len(),
            h.len()
        ));
    }
    if report.h.edges != h.edges() {
        problems.push("edge list differs from the rebuilt H".to_string());
    }
    let degrees: Vec<usize> = (0..h.len()).map(|i| h.degree(i)).collect();
    if report.h.degrees != degrees {
        problems.push("stored degrees differ from the rebuilt H".to_string());
    }
    if report.min_degree != h.min_degree() {
        problems.push(format!("stored min degree {:?}, rebuilt {:?}", report.min_degree, h.min_degree()));
    }
    if report.avg_degree != h.avg_degree() {
        problems.push("stored average degree differs from the rebuilt H".to_string());
    }
    if h.is_empty() {
        problems.push("H is empty".to_string());
    } else {
        match &report.mode {
            Mode::MinDegree { k } => {
                let d = h.min_degree().unwrap_or(0);
                if d < *k as usize {
                    problems.push(format!("min degree {d} < {k}"));
                }
            }
            Mode::AvgDegree { q, .. } => {
                let d = h.avg_degree().expect("nonempty");
                if d <= *q {
                    problems.push(format!("average degree {d} <= {q}"));
                }
            }
        }
    }
    Ok(CertificateCheck {
        ok: problems.is_empty(),
        problems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract2::{extract, Budgets};
    use crate::family::{FamilyKind, FamilySpec};
    use crate::generators::canonical_end_oracle;

    #[test]
    fn detects_tampering() {
        let oracle = canonical_end_oracle(&FamilySpec::new(FamilyKind::CliqueRay, 3)).unwrap();
        let g = oracle.graph();
        let b = Budget::unlimited();
        let report = extract(oracle.as_ref(), &Mode::MinDegree { k: 3 }, &Budgets::default()).unwrap();
        assert!(check_certificate(g, &report, &b).unwrap().ok);

        let mut cut = report.clone();
        cut.h.vertices.pop();
        assert!(!check_certificate(g, &cut, &b).unwrap().ok);

        let mut bumped = report.clone();
        bumped.h.degrees[0] += 1;
        assert!(!check_certificate(g, &bumped, &b).unwrap().ok);
    }
}
