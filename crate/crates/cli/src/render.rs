use std::fmt::Write;

use mfd_forge::codes::FerrersCode;
use mfd_forge::ferrers::DiagramProfile;
use mfd_forge::linalg::Matrix;
use mfd_forge::verify::VerificationReport;
use mfd_forge::Gf;

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// One row per line, entries separated by spaces; over `GF(p^e)` with `e > 1`
/// each entry is its coefficient list in brackets.
pub fn matrix(field: &Gf, m: &Matrix<u32>) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m
            .row(r)
            .iter()
            .map(|&x| {
                if field.e() == 1 {
                    x.to_string()
                } else {
                    let c: Vec<String> = field.to_coeffs(x).iter().map(|c| c.to_string()).collect();
                    format!("[{}]", c.join(","))
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn profile(p: &DiagramProfile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "diagram            {}", p.diagram);
    let _ = writeln!(out, "order              {}", p.diagram.order());
    let _ = writeln!(out, "size               {}", p.size);
    let _ = writeln!(out, "adjoint            {}", p.adjoint);
    let _ = writeln!(out, "monotone           {}", yes(p.monotone));
    let _ = writeln!(out, "strictly monotone  {}", yes(p.strictly_monotone));
    let _ = writeln!(out, "convex             {}", yes(p.convex));
    let _ = writeln!(out, "initially convex   {}", yes(p.initially_convex));
    for pp in &p.primes {
        let _ = writeln!(
            out,
            "p = {}: height {}, contraction {}, p-monotone {}, p-convex {}, strictly p-monotone {}, initially p-convex {}",
            pp.p,
            pp.height,
            pp.contraction,
            yes(pp.p_monotone),
            yes(pp.p_convex),
            yes(pp.strictly_p_monotone),
            yes(pp.initially_p_convex)
        );
    }
    if !p.distances.is_empty() {
        let _ = writeln!(out, "{:>3}  {:<20} {:>6} {:>6}  {:<17} singleton j", "d", "nu_0..nu_{d-1}", "nu_min", "nu_mds", "mds-constructible");
        for d in &p.distances {
            let _ = writeln!(
                out,
                "{:>3}  {:<20} {:>6} {:>6}  {:<17} {}",
                d.d,
                join(&d.nu),
                d.nu_min,
                d.nu_mds,
                yes(d.mds_constructible),
                if d.singleton.is_empty() { "-".to_string() } else { join(&d.singleton) }
            );
        }
    }
    out
}

pub fn code(c: &FerrersCode) -> String {
    let mut out = String::new();
    let f = &c.field;
    let _ = writeln!(out, "field      GF({}^{})", f.p(), f.e());
    if f.e() > 1 {
        let _ = writeln!(out, "modulus    {}", join_u32(f.modulus()));
    }
    let _ = writeln!(out, "diagram    {}", c.diagram);
    let _ = writeln!(out, "n          {}", c.n());
    let _ = writeln!(out, "d          {}", c.d);
    let _ = writeln!(out, "path       {}", c.path);
    let _ = writeln!(out, "dimension  {}", c.dimension());
    if let Some(m) = &c.trace.tower_modulus {
        let _ = writeln!(out, "extension  {}", join_u32(m));
    }
    if let Some(e) = &c.trace.embedding {
        let _ = writeln!(out, "embedded   {} (order {}, offset {})", e.diagram, e.order, e.offset);
    }
    if let Some(t) = &c.trace.mds {
        let _ = writeln!(out, "singleton  j = {}, Y = {}", t.j, join(&t.y));
        if let (Some(ell), Some(dp), Some(dpp)) = (t.ell, &t.d_prime, &t.d_double_prime) {
            let _ = writeln!(out, "           l = {ell}, D' = {dp}, D'' = {dpp}");
        }
    }
    for step in &c.trace.steps {
        let _ = writeln!(out, "step       {step}");
    }
    for (i, g) in c.generators.iter().enumerate() {
        let _ = writeln!(out, "\ngenerator {}", i + 1);
        out.push_str(&matrix(f, g));
    }
    out
}

fn join_u32(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn report(r: &VerificationReport, field: &Gf) -> String {
    let mut out = String::new();
    let status = if r.certified {
        "PASS (certified)"
    } else if r.passed {
        "PASS (sampled, not a proof)"
    } else {
        "FAIL"
    };
    let _ = writeln!(out, "result               {status}");
    let _ = writeln!(out, "n, d, q              {}, {}, {}", r.n, r.d, r.q);
    let _ = writeln!(out, "support              {}", if r.support_ok { "ok" } else { "violated" });
    let _ = writeln!(out, "generators           {}", r.generators);
    let _ = writeln!(out, "dimension            {} (expected {})", r.dimension, r.expected_dimension);
    let _ = writeln!(out, "independent          {}", yes(r.independent));
    let _ = writeln!(out, "method               {:?}", r.method);
    let min = r.min_rank.map_or("-".to_string(), |m| m.to_string());
    let _ = writeln!(out, "min rank             {min}");
    let _ = writeln!(out, "codewords checked    {}", r.codewords_checked);
    let _ = writeln!(out, "elapsed ms           {}", r.elapsed_ms);
    if let Some(w) = &r.witness {
        let coeffs: Vec<String> = w.coefficients.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "witness index        {} (coefficients {})", w.index, coeffs.join(","));
        out.push_str(&matrix(field, &w.matrix));
    }
    out
}
