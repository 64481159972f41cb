//! Serializers for polynomials, normal forms, tables and reports.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use weylstir_core::identities::{Counterexample, Oracle, Side};
use weylstir_core::{NormalForm, Poly, Ranges, StirlingTable, VerificationReport};

/// `[{"c":"num/den","l":a,"x":b}, ...]` in graded-lex order.
pub fn poly_json(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!({ "c": c.to_string(), "l": m.lambda, "x": m.x }))
            .collect(),
    )
}

/// `[{"i":i,"j":j,"c":[...]}, ...]` in text-form order.
pub fn normal_form_json(nf: &NormalForm) -> Value {
    Value::Array(
        nf.display_terms()
            .into_iter()
            .map(|(i, j, c)| json!({ "i": i, "j": j, "c": poly_json(c) }))
            .collect(),
    )
}

/// One `ad^i a^j: P` line per term.
pub fn coefficient_map_text(nf: &NormalForm) -> String {
    let mut out = String::new();
    for (i, j, c) in nf.display_terms() {
        let _ = writeln!(out, "ad^{i} a^{j}: {c}");
    }
    out
}

pub fn table_text(t: &StirlingTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", t.family());
    for (n, row) in t.rows().enumerate() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "n={n}: {}", cells.join(" | "));
    }
    out
}

/// Ragged CSV, one record per row `n`, cells `k = 0..=n` in canonical text.
pub fn table_csv(t: &StirlingTable) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for row in t.rows() {
        w.write_record(row.iter().map(Poly::canonical_text))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn table_json(t: &StirlingTable) -> Value {
    Value::Array(
        t.rows()
            .map(|row| Value::Array(row.iter().map(poly_json).collect()))
            .collect(),
    )
}

fn poly_latex(p: &Poly) -> String {
    let text = p.to_string().replace("lambda", "\\lambda");
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == '^' {
            out.push('{');
            while let Some(d) = chars.next_if(char::is_ascii_digit) {
                out.push(d);
            }
            out.push('}');
        }
    }
    out
}

pub fn table_latex(t: &StirlingTable) -> String {
    let width = t.nmax() as usize + 1;
    let mut out = String::new();
    let _ = writeln!(out, "\\begin{{tabular}}{{r|{}}}", "c".repeat(width));
    let header: Vec<String> = (0..width).map(|k| k.to_string()).collect();
    let _ = writeln!(out, "$n \\backslash k$ & {} \\\\", header.join(" & "));
    out.push_str("\\hline\n");
    for (n, row) in t.rows().enumerate() {
        let mut cells: Vec<String> = row.iter().map(|p| format!("${}$", poly_latex(p))).collect();
        cells.resize(width, String::new());
        let _ = writeln!(out, "{n} & {} \\\\", cells.join(" & "));
    }
    out.push_str("\\end{tabular}\n");
    out
}

fn ranges_json(r: &Ranges) -> Value {
    json!({ "nmax": r.nmax, "kmax": r.kmax, "rmax": r.rmax })
}

fn side_json(s: &Side) -> Value {
    match s {
        Side::Normal(nf) => normal_form_json(nf),
        Side::Poly(p) => poly_json(p),
    }
}

fn counterexample_json(c: &Counterexample) -> Value {
    let params: Map<String, Value> = c
        .params
        .0
        .iter()
        .map(|(n, v)| ((*n).to_string(), json!(v)))
        .collect();
    let mut obj = Map::new();
    obj.insert("params".into(), Value::Object(params));
    match c.oracle {
        Oracle::NormalForm => {
            obj.insert("oracle".into(), json!("normal_form"));
        }
        Oracle::Monomial { m } => {
            obj.insert("oracle".into(), json!("monomial"));
            obj.insert("m".into(), json!(m));
        }
        Oracle::Scalar => {
            obj.insert("oracle".into(), json!("scalar"));
        }
    }
    obj.insert("lhs".into(), side_json(&c.lhs));
    obj.insert("rhs".into(), side_json(&c.rhs));
    obj.insert("lhs_text".into(), json!(c.lhs.to_string()));
    obj.insert("rhs_text".into(), json!(c.rhs.to_string()));
    obj.insert("oracles_disagree".into(), json!(c.oracles_disagree));
    Value::Object(obj)
}

pub fn report_json(r: &VerificationReport) -> Value {
    let mut obj = Map::new();
    obj.insert("id".into(), json!(r.id.name()));
    obj.insert("ranges".into(), ranges_json(&r.ranges));
    obj.insert("status".into(), json!(r.status.as_str()));
    obj.insert("asserted".into(), json!(r.asserted));
    obj.insert("tuples".into(), json!(r.tuples));
    if let Some(c) = &r.counterexample {
        obj.insert("counterexample".into(), counterexample_json(c));
    }
    Value::Object(obj)
}

pub fn reports_json(rs: &[VerificationReport]) -> Value {
    Value::Array(rs.iter().map(report_json).collect())
}

/// `PASS REC20 tuples=264`, plus the first counterexample on failure.
pub fn report_line(r: &VerificationReport) -> String {
    let mut line = format!(
        "{} {} tuples={}",
        if r.passed() { "PASS" } else { "FAIL" },
        r.id.name(),
        r.tuples
    );
    if !r.asserted {
        line.push_str(" (not asserted)");
    }
    if let Some(c) = &r.counterexample {
        let via = match c.oracle {
            Oracle::NormalForm => "normal form".to_string(),
            Oracle::Monomial { m } => format!("action on x^{m}"),
            Oracle::Scalar => "scalar".to_string(),
        };
        let _ = write!(
            line,
            " first counterexample at {} by {via}: lhs = {}, rhs = {}",
            c.params, c.lhs, c.rhs
        );
    }
    line
}

#[cfg(test)]
mod tests {
    use super::*;
    use weylstir_core::poly::ratio;
    use weylstir_core::stirling::table;
    use weylstir_core::{Family, Kind, Monomial};

    #[test]
    fn poly_json_form() {
        let p = Poly::from_terms([
            (Monomial::new(0, 0), ratio(1, 2)),
            (Monomial::new(1, 1), ratio(-3, 1)),
        ]);
        assert_eq!(
            poly_json(&p).to_string(),
            r#"[{"c":"1/2","l":0,"x":0},{"c":"-3","l":1,"x":1}]"#
        );
        assert_eq!(poly_json(&Poly::zero()).to_string(), "[]");
    }

    #[test]
    fn table_serializers() {
        let t = table(Family::new(Kind::RS2, 1), 2);
        assert_eq!(
            table_csv(&t).unwrap(),
            "1 * λ^0 * x^0\n\
             1 * λ^0 * x^0,1 * λ^0 * x^0\n\
             1 * λ^0 * x^0 + -1 * λ^1 * x^0,3 * λ^0 * x^0 + -1 * λ^1 * x^0,1 * λ^0 * x^0\n"
        );
        assert_eq!(
            table_text(&t),
            "rS2(r=1)\nn=0: 1\nn=1: 1 | 1\nn=2: 1 - lambda | 3 - lambda | 1\n"
        );
        assert_eq!(
            table_json(&t)[2][1].to_string(),
            r#"[{"c":"3","l":0,"x":0},{"c":"-1","l":1,"x":0}]"#
        );
        let tex = table_latex(&table(Family::plain(Kind::S2), 3));
        assert!(
            tex.contains(
                "3 & $0$ & $1 - 3 \\lambda + 2 \\lambda^{2}$ & $3 - 3 \\lambda$ & $1$ \\\\"
            ),
            "{tex}"
        );
    }
}
