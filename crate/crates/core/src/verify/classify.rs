//! Classification blocks and range tables.

use std::fmt::Write as _;

use serde::Serialize;

use crate::clifford::{
    build_clifford_system, classify_definiteness_structured, extend_clifford, product_trace_closed_form,
    product_trace_structured, Definiteness,
};
use crate::error::{Error, Result};
use crate::homotopy::{cross_section_exists, homotopy_class, HomotopyClass, Modulus};
use crate::verify::report::{Bound, CheckRecord};

/// What is known about the `(m, k, p)` bundle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub m: usize,
    pub k: usize,
    pub p: usize,
    pub l: usize,
    /// `(m₁, m₂) = (m, l − m − 1)`
    pub multiplicities: (i64, i64),
    /// `Tr(P₀⋯P_m)` from the operators, `m ∈ {4, 8}`.
    pub trace: Option<i64>,
    pub trace_closed_form: Option<i64>,
    pub definiteness: Definiteness,
    pub homotopy_class: Option<HomotopyClass>,
    /// `"classified"`, or why no class is given.
    pub status: String,
    pub cross_section: Option<bool>,
    /// Whether `{P₀, …, P_m}` extends by one operator (`m ∈ {4, 8}`).
    pub extension: Option<bool>,
    pub notes: Vec<String>,
}

fn notes(m: usize, k: usize, p: usize, def: Definiteness) -> Vec<String> {
    let mut out = Vec::new();
    match (m, k, p) {
        (4, 2, 0) => out.push("the bundle S^3 -> M+ -> S^7 is trivial: M+ ≅ S^7×S^3".into()),
        (8, 2, 0) => out.push("g_{2,0} is nullhomotopic".into()),
        (8, 2, 1) => out.push("(m1, m2) = (8, 7) definite: M+^22 ≅ V_2(O^2) ≅ Spin(9)/G_2".into()),
        (4, 2, 1) => out.push("[σ_2] generates π_6 S^3 = Z12".into()),
        _ => {}
    }
    if matches!(m, 4 | 8) && k == 2 * p + 2 {
        out.push(format!("extends to a Clifford system with m = {}", m + 1));
    }
    if matches!(def, Definiteness::DefinitePlus | Definiteness::DefiniteMinus) && m == 4 && k > 2 {
        out.push("definite: [σ_k] ≡ −k (mod 24)".into());
    }
    if matches!(def, Definiteness::DefinitePlus | Definiteness::DefiniteMinus) && m == 8 && k > 2 {
        out.push("definite: [g_k] ≡ −k (mod 240)".into());
    }
    out
}

/// Trace, definiteness, homotopy class, cross-section and extension data.
pub fn classify(m: usize, k: usize, p: usize) -> Result<Classification> {
    let sys = build_clifford_system(m, k, p)?;
    let (trace, trace_closed_form) = if matches!(m, 4 | 8) {
        (Some(product_trace_structured(&sys)?), Some(product_trace_closed_form(m, k, p)?))
    } else {
        (None, None)
    };
    let definiteness = classify_definiteness_structured(&sys)?;
    let (homotopy_class, status) = match homotopy_class(m, k, p) {
        Ok(c) => (Some(c), "classified".to_string()),
        Err(Error::UnstableLevel(s)) => (None, s),
        Err(Error::UnsupportedM(_)) => (None, "no sphere bundle description for this m".into()),
        Err(e) => return Err(e),
    };
    let cross_section = match m {
        3 => None,
        _ => Some(cross_section_exists(m, k, p)?),
    };
    let extension = match m {
        4 | 8 => Some(extend_clifford(m, k, p)?.is_extended()),
        _ => None,
    };
    Ok(Classification {
        m,
        k,
        p,
        l: sys.l(),
        multiplicities: sys.multiplicities(),
        trace,
        trace_closed_form,
        definiteness,
        homotopy_class,
        status,
        cross_section,
        extension,
        notes: notes(m, k, p, definiteness),
    })
}

impl Classification {
    /// Internal consistency: trace matches the closed form; for `m ∈ {4, 8}`
    /// and `k ≥ 3` the class vanishes exactly when a section exists; an
    /// extension implies a section.
    pub fn consistent(&self) -> bool {
        let trace_ok = self.trace == self.trace_closed_form;
        let section_ok = match (self.homotopy_class, self.cross_section) {
            (Some(c), Some(s)) if matches!(self.m, 4 | 8) && self.k >= 3 => c.is_zero() == s,
            _ => true,
        };
        let ext_ok = !(self.extension == Some(true) && self.cross_section != Some(true));
        trace_ok && section_ok && ext_ok
    }

    /// Exact consistency checks attached to a `classify` report.
    pub fn checks(&self) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        if let (Some(t), Some(c)) = (self.trace, self.trace_closed_form) {
            out.push(CheckRecord::new("trace-closed-form", (t - c).abs() as f64, Bound::Exact, 1));
        }
        if matches!(self.m, 4 | 8) && self.k >= 3 {
            let ok = match (self.homotopy_class, self.cross_section) {
                (Some(c), Some(s)) => c.is_zero() == s,
                _ => false,
            };
            out.push(CheckRecord::new("class-section-consistency", if ok { 0.0 } else { 1.0 }, Bound::Exact, 1));
        }
        if self.extension.is_some() {
            let ok = !(self.extension == Some(true) && self.cross_section != Some(true));
            out.push(CheckRecord::new("extension-implies-section", if ok { 0.0 } else { 1.0 }, Bound::Exact, 1));
        }
        out
    }

    fn class_text(&self) -> String {
        match self.homotopy_class {
            Some(c) => c.to_string(),
            None => self.status.clone(),
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<bool>| v.map_or("-".to_string(), |b| b.to_string());
        let _ = writeln!(out, "- l = {}, (m1, m2) = ({}, {})", self.l, self.multiplicities.0, self.multiplicities.1);
        if let Some(t) = self.trace {
            let _ = writeln!(out, "- trace P0…Pm = {t}");
        }
        let _ = writeln!(out, "- definiteness: {}", definiteness_text(self.definiteness));
        let _ = writeln!(out, "- homotopy class: {}", self.class_text());
        let _ = writeln!(out, "- cross-section: {}", opt(self.cross_section));
        let _ = writeln!(out, "- extension: {}", opt(self.extension));
        for n in &self.notes {
            let _ = writeln!(out, "- {n}");
        }
        out
    }
}

fn definiteness_text(d: Definiteness) -> &'static str {
    match d {
        Definiteness::DefinitePlus => "definite (+I)",
        Definiteness::DefiniteMinus => "definite (−I)",
        Definiteness::Indefinite => "indefinite",
        Definiteness::NotApplicable => "n/a",
    }
}

/// One table row per `(k, p)`; `p` runs over `0..k` for `m ∈ {4, 8}` and is
/// `0` otherwise.
pub fn classification_table(m: usize, ks: std::ops::RangeInclusive<usize>) -> Result<Vec<Classification>> {
    let mut rows = Vec::new();
    for k in ks {
        let ps = if matches!(m, 4 | 8) { 0..k } else { 0..1 };
        for p in ps {
            rows.push(classify(m, k, p)?);
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct TableJson<'a> {
    m: usize,
    k_min: usize,
    k_max: usize,
    consistent: bool,
    rows: &'a [Classification],
}

pub fn table_json(m: usize, ks: &std::ops::RangeInclusive<usize>, rows: &[Classification]) -> String {
    let consistent = rows.iter().all(Classification::consistent);
    let doc = TableJson { m, k_min: *ks.start(), k_max: *ks.end(), consistent, rows };
    let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
    s.push('\n');
    s
}

pub fn table_markdown(rows: &[Classification]) -> String {
    let mut out = String::from(
        "| m | k | p | trace | definiteness | class | modulus | section | extension | consistent |\n|---|---|---|---|---|---|---|---|---|---|\n",
    );
    for r in rows {
        let trace = r.trace.map_or("-".into(), |t| t.to_string());
        let (class, modulus) = match r.homotopy_class {
            Some(c) => (
                c.value.to_string(),
                match c.modulus {
                    Modulus::Infinite => "Z".to_string(),
                    Modulus::Finite(n) => n.to_string(),
                },
            ),
            None => (r.status.clone(), "-".into()),
        };
        let opt = |v: Option<bool>| v.map_or("-".to_string(), |b| b.to_string());
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.m,
            r.k,
            r.p,
            trace,
            definiteness_text(r.definiteness),
            class,
            modulus,
            opt(r.cross_section),
            opt(r.extension),
            r.consistent()
        );
    }
    out
}
