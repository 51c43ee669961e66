// Plain-text renderings for --pretty.

use std::fmt::Write;

use scover::lemmas::{BoundCheck, LemmaReport, StructureProfile};
use scover::model::{PointId, Rational};
use scover::solver::SearchResult;
use scover::verify::VerificationReport;

fn yes_no(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn points(ps: &[PointId]) -> String {
    let inner: Vec<String> = ps.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn verification(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, s = {}, m = {}, cap mode = {}", r.n, r.s, r.m, r.cap_mode);
    let _ = write!(out, "  linear   {}", yes_no(r.linear.ok));
    if let Some(w) = &r.linear.witness {
        let _ = write!(out, "  lines {} and {} share {}", w.first, w.second, points(&w.shared));
    }
    let _ = write!(out, "\n  covered  {}", yes_no(r.covered.ok));
    if let Some(w) = &r.covered.witness {
        let _ = write!(out, "  uncovered {}-set {}", w.len(), points(w));
    }
    let _ = write!(out, "\n  cap      {}", yes_no(r.cap.ok));
    if let Some(i) = r.cap.witness {
        let _ = write!(out, "  line {i} is too large");
    }
    out.push('\n');
    out
}

pub fn profile(p: &StructureProfile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, s = {}, m = {}", p.n, p.s, p.m);
    let _ = writeln!(out, "  sizes    {:?}", p.sizes);
    let _ = writeln!(out, "  a1       {}", p.a1);
    let _ = writeln!(out, "  v, d     {}, {}", p.v, p.d);
    let _ = writeln!(out, "  |P|      {}", p.p);
    let _ = writeln!(out, "  Q        {}", points(&p.big_q));
    let _ = writeln!(out, "  q, r     {}, {}", p.q_div, p.r_div);
    out
}

fn bound_line(name: &str, b: &BoundCheck) -> String {
    let value = b.value.as_ref().map_or_else(|| "-".to_string(), rational);
    let status = match b.satisfied {
        Some(ok) => yes_no(ok),
        None => "n/a",
    };
    format!("  {name:<8} m >= {value:<12} {status}\n")
}

pub fn lemmas(r: &LemmaReport) -> String {
    let mut out = format!("m = {}\n", r.m);
    out += &bound_line("part 1", &r.part1);
    out += &bound_line("part 2", &r.part2);
    for (i, b) in r.part3.iter().enumerate() {
        out += &bound_line(&format!("part 3.{i}"), b);
    }
    let _ = writeln!(
        out,
        "  part 4   {} >= {}  {}",
        rational(&r.part4.lhs),
        rational(&r.part4.rhs),
        yes_no(r.part4.satisfied)
    );
    let _ = writeln!(
        out,
        "  turan    |E| = {} <= {}  {}  (residual {})",
        r.turan.uncovered_edges,
        rational(&r.turan.max_edges),
        yes_no(r.turan.satisfied),
        r.turan.residual
    );
    out
}

pub fn search(r: &SearchResult, cap: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {}, s = {}, cap = {cap}: m* = {} ({:?}), lower bound {}, {} nodes",
        r.witness.n(),
        r.witness.s(),
        r.m_star,
        r.status,
        r.lower_bound,
        r.nodes_explored
    );
    for l in &r.levels {
        let state = if l.found {
            "found"
        } else if l.exhausted {
            "empty"
        } else {
            "stopped"
        };
        let _ = writeln!(out, "  m = {:<3} {:>12} nodes  {state}", l.m, l.nodes);
    }
    for line in r.witness.lines() {
        let _ = writeln!(out, "  {}", points(line.points()));
    }
    out
}
