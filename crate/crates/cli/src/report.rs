//! JSON and markdown rendering of the engine's outputs. Field order in the
//! serde structs is the emission order, so a fixed input yields
//! byte-identical output.

use serde::Serialize;

use howe_core::branching::{BranchingReport, Check, CorrespondenceEntry, EntryReport, ModuleLabel};
use howe_core::ModuleParams;

#[derive(Debug, Clone, Serialize)]
pub struct ParamsJson {
    pub n: usize,
    pub a1: String,
    pub a2: String,
    pub generic: bool,
}

impl ParamsJson {
    pub fn new(params: &ModuleParams) -> Self {
        ParamsJson {
            n: params.n(),
            a1: params.a1().to_string(),
            a2: params.a2().to_string(),
            generic: params.generic(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleJson {
    pub kind: String,
    pub hw: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_hw: Option<Vec<String>>,
}

impl ModuleJson {
    fn new(label: &ModuleLabel) -> Self {
        ModuleJson {
            kind: label.kind.as_str().to_string(),
            hw: label.hw.iter().map(ToString::to_string).collect(),
            second_hw: label
                .second_hw
                .as_ref()
                .map(|hw| hw.iter().map(ToString::to_string).collect()),
        }
    }

    fn render(&self) -> String {
        let hw = self.hw.join(", ");
        match &self.second_hw {
            Some(second) => format!("{}([{}]; [{}])", self.kind, hw, second.join(", ")),
            None => format!("{}([{}])", self.kind, hw),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckJson {
    pub fn new(check: &Check) -> Self {
        CheckJson {
            name: check.name.clone(),
            pass: check.pass,
            detail: check.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryJson {
    pub b: i64,
    pub regime: String,
    pub critical_value: String,
    #[serde(rename = "slN")]
    pub sln: ModuleJson,
    pub sl2: ModuleJson,
    pub checks: Vec<CheckJson>,
}

impl EntryJson {
    pub fn new(report: &EntryReport) -> Self {
        let entry: &CorrespondenceEntry = &report.entry;
        EntryJson {
            b: entry.b,
            regime: entry.regime.as_str().to_string(),
            critical_value: entry.critical_value.to_string(),
            sln: ModuleJson::new(&entry.sln_side),
            sl2: ModuleJson::new(&entry.sl2_side),
            checks: report.checks.iter().map(CheckJson::new).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableJson {
    pub params: ParamsJson,
    pub variant: String,
    pub one_to_one: bool,
    pub pass: bool,
    pub entries: Vec<EntryJson>,
}

impl TableJson {
    pub fn new(params: &ModuleParams, report: &BranchingReport) -> Self {
        TableJson {
            params: ParamsJson::new(params),
            variant: report.variant.as_str().to_string(),
            one_to_one: report.one_to_one,
            pass: report.pass(),
            entries: report.entries.iter().map(EntryJson::new).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyJson {
    pub params: ParamsJson,
    pub seed: u64,
    pub samples: u32,
    pub pass: bool,
    pub checks: Vec<CheckJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub k: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HwvJson {
    pub params: ParamsJson,
    pub b: i64,
    pub c: u32,
    pub dimension: u64,
    pub terms: Vec<TermJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_match: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StringStepJson {
    pub k: u32,
    pub b: i64,
    pub c: u32,
    pub h: String,
    pub x_coeff: String,
    pub y_coeff: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesJson {
    pub params: ParamsJson,
    pub entry: EntryJson,
    pub string: Vec<StringStepJson>,
}

fn pass_mark(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn params_header(p: &ParamsJson) -> String {
    format!(
        "n = {}, a1 = {}, a2 = {}, {}\n",
        p.n,
        p.a1,
        p.a2,
        if p.generic { "generic" } else { "non-generic" }
    )
}

fn checks_md(out: &mut String, checks: &[CheckJson]) {
    for c in checks {
        out.push_str(&format!("- {} `{}`: {}\n", pass_mark(c.pass), c.name, c.detail));
    }
}

pub fn verify_md(v: &VerifyJson) -> String {
    let mut out = String::from("# Verification report\n\n");
    out.push_str(&params_header(&v.params));
    out.push_str(&format!("seed = {}, samples = {}\n\n", v.seed, v.samples));
    checks_md(&mut out, &v.checks);
    out.push_str(&format!("\nOverall: {}\n", pass_mark(v.pass)));
    out
}

pub fn table_md(t: &TableJson) -> String {
    let mut out = String::from("# Correspondence table\n\n");
    out.push_str(&params_header(&t.params));
    out.push_str(&format!(
        "variant = {}, one-to-one = {}\n\n",
        t.variant, t.one_to_one
    ));
    out.push_str("| b | regime | critical | slN side | sl2 side | checks |\n");
    out.push_str("|---|--------|----------|----------|----------|--------|\n");
    for e in &t.entries {
        let all = e.checks.iter().all(|c| c.pass);
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            e.b,
            e.regime,
            e.critical_value,
            e.sln.render(),
            e.sl2.render(),
            pass_mark(all)
        ));
    }
    out.push_str(&format!("\nOverall: {}\n", pass_mark(t.pass)));
    out
}

pub fn hwv_md(h: &HwvJson) -> String {
    let mut out = String::from("# Singular vector\n\n");
    out.push_str(&params_header(&h.params));
    out.push_str(&format!(
        "x({}, {}) in a weight space of dimension {}\n\n",
        h.b, h.c, h.dimension
    ));
    out.push_str("| k | coefficient |\n|---|-------------|\n");
    for t in &h.terms {
        out.push_str(&format!("| {:?} | {} |\n", t.k, t.coeff));
    }
    if let Some(m) = h.oracle_match {
        out.push_str(&format!("\nkernel oracle: {}\n", pass_mark(m)));
    }
    out
}

pub fn series_md(s: &SeriesJson) -> String {
    let mut out = String::from("# Composition series detail\n\n");
    out.push_str(&params_header(&s.params));
    let e = &s.entry;
    out.push_str(&format!(
        "b = {}, regime = {}, critical = {}\n\nslN side: {}\nsl2 side: {}\n\n",
        e.b,
        e.regime,
        e.critical_value,
        e.sln.render(),
        e.sl2.render()
    ));
    out.push_str("| k | label (b, c) | H | X coeff | Y coeff |\n");
    out.push_str("|---|--------------|---|---------|--------|\n");
    for step in &s.string {
        out.push_str(&format!(
            "| {} | ({}, {}) | {} | {} | {} |\n",
            step.k, step.b, step.c, step.h, step.x_coeff, step.y_coeff
        ));
    }
    out.push('\n');
    checks_md(&mut out, &e.checks);
    out
}
