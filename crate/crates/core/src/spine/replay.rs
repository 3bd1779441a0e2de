use std::sync::Arc;

use super::collapse::{collapse_free_triangle_mut, collapse_isolated_edge_mut, FREE_TRIANGLE_OP, ISOLATED_EDGE_OP};
use super::{build_initial_spine_arc, check_invariants, MoveTrace, PaintState, PaintToken, Strategy, BUILD_OP};
use crate::error::{Error, Result};
use crate::simplex::SimplexId;
use crate::triangulation::Triangulation;

const OP: &str = "replay";

fn int_arg(args: &[String], k: usize, step: usize) -> Result<usize> {
    args.get(k)
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| Error::anomaly(OP, format!("step {step}: missing integer argument {k}")))
}

/// Records with this op subdivide the input before the spine is built.
pub const SUBDIVIDE_OP: &str = "barycentric_subdivision";

/// Re-executes a trace from its initial-spine record, checking the recorded
/// counts and [`check_invariants`] after every record. Returns the final state.
///
/// A leading subdivision record switches to the barycentric subdivision of `t`;
/// only its all-black counts are checked.
pub fn replay_trace(t: &Triangulation, trace: &MoveTrace, expect_simply_connected: bool) -> Result<PaintState> {
    let mut records = trace.records.iter().peekable();
    let base = match records.next_if(|r| r.op == SUBDIVIDE_OP) {
        Some(r) => {
            let sub = Arc::new(t.barycentric_subdivision());
            let all = PaintState::all_black(sub.clone());
            let got = (all.black_triangle_count(), all.black_edge_count(), all.black_vertex_count(), all.chi());
            if got != (r.black_triangles, r.black_edges, r.black_vertices, r.chi) {
                return Err(Error::anomaly(OP, format!("step {}: subdivision counts {got:?} differ", r.step)));
            }
            sub
        }
        None => Arc::new(t.clone()),
    };
    let first = records
        .next()
        .ok_or_else(|| Error::anomaly(OP, "empty trace"))?;
    if first.op != BUILD_OP {
        return Err(Error::anomaly(OP, format!("trace starts with {}", first.op)));
    }
    let seed = int_arg(&first.args, 0, first.step)?;
    let strategy: Strategy = first
        .args
        .get(1)
        .ok_or_else(|| Error::anomaly(OP, "missing strategy"))?
        .parse()?;
    let mut s = build_initial_spine_arc(base, SimplexId::tet(seed), strategy)?;
    check(&s, first, expect_simply_connected)?;
    for r in records {
        match r.op.as_str() {
            FREE_TRIANGLE_OP => collapse_free_triangle_mut(
                &mut s,
                SimplexId::triangle(int_arg(&r.args, 0, r.step)?),
                SimplexId::edge(int_arg(&r.args, 1, r.step)?),
            )?,
            ISOLATED_EDGE_OP => collapse_isolated_edge_mut(&mut s, SimplexId::edge(int_arg(&r.args, 0, r.step)?))?,
            _ => {
                for a in &r.args {
                    if let Some(tok) = PaintToken::parse(a) {
                        s.apply_token(tok?)?;
                    }
                }
            }
        }
        check(&s, r, expect_simply_connected)?;
    }
    Ok(s)
}

fn check(s: &PaintState, r: &super::TraceRecord, expect: bool) -> Result<()> {
    let got = (s.black_triangle_count(), s.black_edge_count(), s.black_vertex_count(), s.chi());
    let want = (r.black_triangles, r.black_edges, r.black_vertices, r.chi);
    if got != want {
        return Err(Error::anomaly(
            OP,
            format!("step {} ({}): counts {got:?} differ from recorded {want:?}", r.step, r.op),
        ));
    }
    let report = check_invariants(s, expect);
    if !report.passes() {
        return Err(Error::anomaly(
            OP,
            format!("step {} ({}): {}", r.step, r.op, report.summary()),
        ));
    }
    Ok(())
}
