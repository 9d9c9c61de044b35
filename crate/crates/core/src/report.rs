//! Reports: a header, ordered key/value sections and a conclusion.
//!
//! The body carries no timings, so a rerun with the same spec, seed and caps
//! is byte-identical. Numeric evidence is printed as `0x` hex.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::cipher::ValidationReport;
use crate::perm::{format_cycle_type, GiantOutcome};
use crate::verify::{BlockScanReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub fields: Vec<(String, String)>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Section {
        Section {
            name: name.into(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl ToString) -> Section {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub sections: Vec<Section>,
    pub conclusion: Option<String>,
}

struct Ordered<'a>(&'a [(String, String)]);

impl Serialize for Ordered<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for Section {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Section", 2)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("fields", &Ordered(&self.fields))?;
        st.end()
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Report", 3)?;
        st.serialize_field("header", &Ordered(&self.header))?;
        st.serialize_field("sections", &self.sections)?;
        st.serialize_field("conclusion", &self.conclusion)?;
        st.end()
    }
}

impl Report {
    pub fn new(header: Vec<(String, String)>) -> Report {
        Report {
            header,
            ..Report::default()
        }
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for s in &self.sections {
            out.push_str(&format!("\n[{}]\n", s.name));
            for (k, v) in &s.fields {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        if let Some(c) = &self.conclusion {
            out.push_str(&format!("\nconclusion: {c}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("string maps always serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

pub fn hex(v: impl Into<u128>) -> String {
    format!("{:#x}", v.into())
}

fn yes(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

pub fn validation_section(v: &ValidationReport) -> Section {
    let p = &v.params;
    let mut s = Section::new("validation")
        .field("n", p.n)
        .field("m", p.m)
        .field("delta", p.delta)
        .field("r", p.r)
        .field("conforming", v.conforming)
        .field("delta-at-least-4", v.delta_at_least_4)
        .field("m-at-least-2", v.m_at_least_2)
        .field("real-gost", v.real_gost);
    match &v.bijective {
        Some(b) => {
            let flags: Vec<&str> = b.iter().map(|&x| if x { "1" } else { "0" }).collect();
            s.push("bijective", flags.join(""));
        }
        None => s.push("bijective", "no tables"),
    }
    for (i, w) in v.warnings.iter().enumerate() {
        s.push(format!("warning-{}", i + 1), w);
    }
    s.push("summary", v.summary());
    s
}

pub fn block_scan_section(scan: &BlockScanReport) -> Section {
    let mut s = Section::new("block-scan")
        .field("subgroups-tested", scan.tested)
        .field("candidates", scan.candidates.len())
        .field("certified", scan.certified().count());
    s.push(
        "routes-agree",
        match scan.routes_agree {
            Some(b) => b.to_string(),
            None => "predicate only".into(),
        },
    );
    for (i, c) in scan.candidates.iter().enumerate() {
        s.push(
            format!("candidate-{}", i + 1),
            format!(
                "{} order 2^{} shift ({}, {}) certified {}",
                c.triple,
                c.order_log2,
                hex(c.shift.0),
                hex(c.shift.1),
                c.certified
            ),
        );
    }
    if let Some(b) = scan.block() {
        s.push("block", b.triple);
    }
    s.push("status", yes(!scan.imprimitive()));
    s
}

pub fn giant_section(outcome: Option<&GiantOutcome>) -> Section {
    let mut s = Section::new("giant-witness");
    match outcome {
        None => s.push("status", "skipped"),
        Some(GiantOutcome::Inconclusive { trials }) => {
            s.push("trials", trials);
            s.push("status", "inconclusive");
        }
        Some(GiantOutcome::Found(w)) => {
            s.push("degree", w.degree);
            s.push("seed", w.seed);
            s.push("trial", w.trial);
            s.push("word", &w.word_text);
            s.push("cycle-type", format_cycle_type(&w.cycle_type));
            s.push("prime", hex(w.prime as u64));
            s.push("power", format!("{:#x}", w.power));
            s.push("status", "pass");
        }
    }
    s
}

/// All sections of a full verdict, in pipeline order.
pub fn verdict_sections(v: &Verdict) -> Vec<Section> {
    let mut parity = Section::new("parity");
    for (name, sign) in &v.parity.signs {
        parity.push(format!("sign-{name}"), sign);
    }
    parity.push("status", yes(v.parity.ok));

    let transitivity = Section::new("transitivity").field("status", yes(v.transitive));
    let primitivity = Section::new("primitivity").field("status", yes(v.primitive));

    let d = &v.diagonal;
    let diagonal = Section::new("diagonal")
        .field("zero-s", hex(d.zero_s))
        .field("half-s", hex(d.involution_s))
        .field("status", yes(d.passed));

    let a = &v.affine;
    let affine = Section::new("affine")
        .field("n", a.n)
        .field("ceil-log2-n", a.ceil_log2)
        .field("two-exponent-bound", a.bound)
        .field("status", if a.excluded { "excluded" } else { "inconclusive" });

    let w = &v.wreath;
    let wreath = Section::new("wreath")
        .field("zero-s", hex(w.zero_s))
        .field("half-s", hex(w.involution_s))
        .field("images-distinct", w.fact_distinct)
        .field("top-brick-agrees", w.fact_top_brick)
        .field("last-bit-identity", w.last_bit_identity)
        .field("status", if w.excluded { "excluded" } else { "inconclusive" });

    let p = &v.psl;
    let psl = Section::new("psl")
        .field("alpha", p.alpha)
        .field("beta", hex(p.beta))
        .field("factor-minus", hex(p.factors.0))
        .field("factor-plus", hex(p.factors.1))
        .field("gcd", hex(p.gcd))
        .field("status", if p.excluded { "excluded" } else { "inconclusive" });

    vec![
        validation_section(&v.validation),
        parity,
        transitivity,
        block_scan_section(&v.block_scan),
        primitivity,
        diagonal,
        affine,
        wreath,
        psl,
        giant_section(v.giant.as_ref()),
    ]
}
