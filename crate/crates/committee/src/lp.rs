//! CPLEX LP text for the winner-determination integer program.

use std::io::Write;

use committee_core::exact::{build_ilp, Comparison, IntegerProgram, Var};
use committee_core::{ElectionRule, PreferenceProfile, ScoringFunction};

const MAX_LINE: usize = 78;

#[derive(Debug, thiserror::Error)]
pub enum LpError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Model(#[from] committee_core::Error),
}

// appends ` + 3 a_0_1`, wrapping before the line gets too long
fn push_terms(out: &mut String, line_start: &mut usize, terms: &[(i64, Var)]) {
    for (i, (c, v)) in terms.iter().enumerate() {
        let sign = if *c < 0 { "-" } else { "+" };
        let piece = if i == 0 && *c >= 0 {
            format!(" {} {}", c, v.name())
        } else {
            format!(" {sign} {} {}", c.abs(), v.name())
        };
        if out.len() - *line_start + piece.len() > MAX_LINE {
            out.push_str("\n   ");
            *line_start = out.len() - 3;
        }
        out.push_str(&piece);
    }
}

pub fn write_lp<W: Write>(program: &IntegerProgram, mut w: W) -> std::io::Result<()> {
    let mut out = String::new();
    out.push_str("\\ committee winner determination\nMaximize\n obj:");
    let mut start = out.rfind('\n').unwrap() + 1;
    push_terms(&mut out, &mut start, &program.objective);
    out.push_str("\nSubject To\n");
    for c in &program.constraints {
        let mut start = out.len();
        out.push(' ');
        out.push_str(&c.name);
        out.push(':');
        push_terms(&mut out, &mut start, &c.terms);
        let op = match c.comparison {
            Comparison::Le => "<=",
            Comparison::Ge => ">=",
            Comparison::Eq => "=",
        };
        out.push_str(&format!(" {op} {}\n", c.rhs));
    }
    out.push_str("Binary\n");
    let mut start = out.len();
    for v in &program.binaries {
        let name = v.name();
        if out.len() - start + name.len() + 1 > MAX_LINE {
            out.push('\n');
            start = out.len();
        }
        out.push(' ');
        out.push_str(&name);
    }
    out.push_str("\nEnd\n");
    w.write_all(out.as_bytes())
}

pub fn emit_ilp<W: Write>(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    rule: &ElectionRule,
    sink: W,
) -> Result<(), LpError> {
    let program = build_ilp(profile, psf, rule)?;
    write_lp(&program, sink)?;
    Ok(())
}
