//! LaTeX rendering of reports. Presentation only; nothing here is compared
//! against stored output.

use std::fmt::Write;

use vstar_core::onepar::{Bidegree, RingDocument};
use vstar_core::InternalDegree;

use crate::bundled::StoddDoc;
use crate::report::{CohomologyDoc, EmbedDoc, PsiDoc, ValidateDoc, VrDoc};

/// `X1_12` → `X^{1}_{12}`, `Y_13` → `Y_{13}`, `b10` → `b_{10}`, `xi1` →
/// `\xi_{1}`.
pub fn name(s: &str) -> String {
    let letters: String = s.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    let rest = &s[letters.len()..];
    let base = match letters.as_str() {
        "xi" | "tau" | "lambda" | "zeta" | "eta" | "beta" | "sigma" => format!("\\{letters}"),
        _ => letters.clone(),
    };
    if rest.is_empty() {
        return base;
    }
    match rest.split_once('_') {
        Some((sup, sub)) => {
            let sub = sub.replace('_', ",");
            if sup.is_empty() {
                format!("{base}_{{{sub}}}")
            } else {
                format!("{base}^{{{sup}}}_{{{sub}}}")
            }
        }
        None if rest.chars().all(|c| c.is_ascii_digit()) => format!("{base}_{{{rest}}}"),
        None => s.to_string(),
    }
}

fn factor(f: &str) -> String {
    match f.split_once('^') {
        Some((b, e)) => {
            let b = name(b);
            if b.contains('_') || b.contains('^') {
                format!("({b})^{{{e}}}")
            } else {
                format!("{b}^{{{e}}}")
            }
        }
        None if f.chars().all(|c| c.is_ascii_digit()) => f.to_string(),
        None => name(f),
    }
}

/// Renders a polynomial as printed by the core library.
pub fn poly(s: &str) -> String {
    s.split(' ')
        .map(|tok| match tok {
            "+" | "-" => tok.to_string(),
            _ => {
                let (sign, body) = tok.strip_prefix('-').map_or(("", tok), |b| ("-", b));
                let fs: Vec<String> = body.split('*').map(factor).collect();
                format!("{sign}{}", fs.join(""))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn degree(d: &InternalDegree) -> String {
    d.to_string()
}

pub fn bidegree(b: &Bidegree) -> String {
    format!("({}, {})", b.cohom, degree(&b.internal))
}

pub fn ring(doc: &RingDocument) -> String {
    let gens: Vec<String> = doc.generators.iter().map(|g| name(&g.name)).collect();
    let mut out = format!("\\mathbb{{F}}_{{{}}}[{}]^{{gr}}", doc.prime, gens.join(", "));
    if !doc.relations.is_empty() {
        let rels: Vec<String> = doc.relations.iter().map(|r| poly(r)).collect();
        out = format!("\\frac{{{out}}}{{({})}}", rels.join(",\\ "));
    }
    out
}

fn bidegrees(doc: &RingDocument) -> String {
    let items: Vec<String> = doc
        .generators
        .iter()
        .map(|g| format!("\\|{}\\| = {}", name(&g.name), bidegree(&g.bidegree)))
        .collect();
    items.join(",\\quad ")
}

pub fn vr(d: &VrDoc) -> String {
    let r = d.ring.height;
    let mut out = String::from("\\begin{align*}\n");
    let _ = writeln!(out, "k[V_{r}^*] &= {} \\\\", ring(&d.ring));
    let _ = writeln!(out, "&\\sim_F {} \\\\", ring(&d.reduced));
    let _ = writeln!(out, "& {}", bidegrees(&d.reduced));
    out.push_str("\\end{align*}\n");
    out
}

pub fn validate(d: &ValidateDoc) -> String {
    let gens: Vec<String> = d.generators.iter().map(|g| name(&g.name)).collect();
    let rels: Vec<String> = d.relations.iter().map(|r| poly(r)).collect();
    format!(
        "\\[ \\mathbb{{F}}_{{{}}}[{}]^{{gr}} / ({}) \\]\n",
        d.prime,
        gens.join(", "),
        rels.join(",\\ ")
    )
}

pub fn embed(d: &EmbedDoc) -> String {
    let mut out = String::from("\\[ \\begin{pmatrix}\n");
    let rows: Vec<String> = d
        .comatrix
        .iter()
        .map(|row| row.iter().map(|a| poly(a)).collect::<Vec<_>>().join(" & "))
        .collect();
    out.push_str(&rows.join(" \\\\\n"));
    out.push_str("\n\\end{pmatrix} \\]\n");
    out
}

pub fn cohomology(d: &CohomologyDoc) -> String {
    let mut out = String::from("\\begin{tabular}{r|r|l}\n$n$ & $\\dim H^n$ & internal degrees \\\\ \\hline\n");
    for (n, total) in d.totals.iter().enumerate() {
        let degrees: Vec<String> = d
            .entries
            .iter()
            .filter(|e| e.n as usize == n)
            .map(|e| format!("${}^{{{}}}$", degree(&e.degree), e.dim))
            .collect();
        let _ = writeln!(out, "{n} & {total} & {} \\\\", degrees.join(", "));
    }
    out.push_str("\\end{tabular}\n");
    out
}

pub fn psi(d: &PsiDoc) -> String {
    let mut out = String::from("\\begin{align*}\n");
    if let Some(a) = &d.assignment {
        let lines: Vec<String> = a
            .iter()
            .map(|i| format!("\\psi({}) &= {}", name(&i.generator), poly(&i.image)))
            .collect();
        out.push_str(&lines.join(" \\\\\n"));
        out.push('\n');
    }
    out.push_str("\\end{align*}\n");
    out
}

pub fn stodd(d: &StoddDoc) -> String {
    let mut out = String::from("\\begin{align*}\n");
    let _ = writeln!(out, "k[V_1^*] &= {} \\\\", ring(&d.computed));
    let _ = writeln!(out, "&\\sim_F {} \\\\", ring(&d.computed_reduced));
    let lines: Vec<String> = d
        .readings
        .iter()
        .map(|r| format!("\\text{{{}}} &\\sim_F {}", r.name.replace('_', "\\_"), ring(&r.reduced)))
        .collect();
    out.push_str(&lines.join(" \\\\\n"));
    out.push_str("\n\\end{align*}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(name("X1_12"), "X^{1}_{12}");
        assert_eq!(name("Y_13"), "Y_{13}");
        assert_eq!(name("X0_1_10"), "X^{0}_{1,10}");
        assert_eq!(name("xi2"), "\\xi_{2}");
        assert_eq!(name("w"), "w");
    }

    #[test]
    fn polynomials() {
        assert_eq!(poly("X0_13^2*X1_12"), "(X^{0}_{13})^{2}X^{1}_{12}");
        assert_eq!(poly("X_13*X_14 + X_12*X_15"), "X_{13}X_{14} + X_{12}X_{15}");
        assert_eq!(poly("2*u^3 - v"), "2u^{3} - v");
    }
}
