//! Command-line front end.
//!
//! Exit codes: 0 clean, 1 usage or I/O error, 2 imprimitive, 3 inconclusive.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;

use crate::cipher::{validate_spec, CipherSpec, RawState};
use crate::error::{Error, Result};
use crate::goursat::{compare_with_brute_force, enumerate_subgroups, subgroup_count, BRUTE_FORCE_WIDTH};
use crate::perm::bsgs::{alternating_order, symmetric_order};
use crate::perm::{round_group_capped, schreier_sims, SchreierSimsOptions, Verification, MATERIALIZE_CAP};
use crate::report::{block_scan_section, hex, validation_section, verdict_sections, Format, Report, Section};
use crate::selftest::selftest;
use crate::specfile::SpecFile;
use crate::types::{
    check_bricklayer_whole, check_corollary_ds, check_not_w_form, image_under_s, show_type, subgroup_type, type_of,
    type_suite,
};
use crate::verify::{block_scan, full_verdict, Conclusion, ScanOptions, VerifyOptions};
use crate::word::{boxminus_raw, Word};

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_IMPRIMITIVE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Largest listing printed by `goursat`.
const GOURSAT_LISTING_CAP: usize = 4096;
/// Widest `n` for the randomized translation suite in `types`.
const TYPE_SUITE_WIDTH: u32 = 12;
const TYPE_SUITE_SAMPLES: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "gost-alt",
    version,
    about = "GOST-like Feistel cipher and its round-function group"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Cipher spec file (TOML).
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Random words tried by the giant-witness search.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub budget: usize,

    #[arg(long, global = true, default_value_t = 32)]
    pub word_len: usize,

    /// Largest permutation degree that may be materialized.
    #[arg(long, global = true, default_value_t = MATERIALIZE_CAP)]
    pub max_degree: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply rounds to states read from stdin, two hex words per line.
    Encrypt {
        /// One hex word `k` for a GOST round, or `k1,k2,h1,h2` for a
        /// generalized round. Repeat for several rounds.
        #[arg(long = "key", required = true)]
        keys: Vec<String>,
        #[arg(long)]
        decrypt: bool,
    },
    /// Check the parameters and S-box tables.
    Validate,
    /// Search the additive subgroups for a block of the round group.
    ScanBlocks,
    /// Box types of the subgroups `<2^q>` and their images.
    Types,
    /// List the subgroups of `Z_{2^n} x Z_{2^n}`.
    Goursat {
        /// Word width; defaults to the spec's `n`.
        #[arg(long)]
        width: Option<u32>,
    },
    /// Order of the round group by Schreier-Sims.
    Order,
    /// Full verification pipeline.
    Verdict,
    /// Internal invariant suite.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Encrypt { .. } => "encrypt",
            Command::Validate => "validate",
            Command::ScanBlocks => "scan-blocks",
            Command::Types => "types",
            Command::Goursat { .. } => "goursat",
            Command::Order => "order",
            Command::Verdict => "verdict",
            Command::Selftest => "selftest",
        }
    }
}

/// Parses `args` (program name first) and runs. Never panics on bad input.
pub fn main_with<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, input, out, err),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                EXIT_CLEAN
            } else {
                let _ = err.write_all(text.as_bytes());
                EXIT_ERROR
            }
        }
    }
}

pub fn run(cfg: &RunConfig, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let result = match &cfg.command {
        Command::Encrypt { keys, decrypt } => encrypt(cfg, keys, *decrypt, input, out).map(|()| EXIT_CLEAN),
        _ => build_report(cfg).and_then(|(report, code)| {
            out.write_all(report.render(cfg.format).as_bytes())?;
            Ok(code)
        }),
    };
    match result {
        Ok(code) => {
            let _ = writeln!(err, "{}: {:.3}s", cfg.command.name(), start.elapsed().as_secs_f64());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn load(cfg: &RunConfig) -> Result<SpecFile> {
    let path = cfg
        .spec
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("`{}` needs --spec PATH", cfg.command.name())))?;
    SpecFile::load(path)
}

fn header(cfg: &RunConfig, digest: Option<&str>) -> Vec<(String, String)> {
    let pairs = [
        ("tool", format!("gost-alt {}", env!("CARGO_PKG_VERSION"))),
        ("command", cfg.command.name().to_string()),
        ("spec-sha256", digest.unwrap_or("none").to_string()),
        ("seed", cfg.seed.to_string()),
        ("budget", cfg.budget.to_string()),
        ("word-len", cfg.word_len.to_string()),
        ("max-degree", cfg.max_degree.to_string()),
    ];
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Builds the report of every command except `encrypt`, with its exit code.
pub fn build_report(cfg: &RunConfig) -> Result<(Report, i32)> {
    match &cfg.command {
        Command::Encrypt { .. } => Err(Error::Unsupported("encrypt writes states, not a report".into())),
        Command::Selftest => {
            let mut report = Report::new(header(cfg, None));
            let items = selftest(cfg.seed)?;
            let mut s = Section::new("selftest");
            for it in &items {
                let status = if it.passed { "pass" } else { "fail" };
                s.push(it.name, format!("{status} ({})", it.detail));
            }
            report.sections.push(s);
            let ok = items.iter().all(|i| i.passed);
            report.conclusion = Some(if ok { "pass" } else { "fail" }.into());
            Ok((report, if ok { EXIT_CLEAN } else { EXIT_INCONCLUSIVE }))
        }
        Command::Goursat { width: Some(w) } if cfg.spec.is_none() => {
            let mut report = Report::new(header(cfg, None));
            report.sections.push(goursat_section(*w)?);
            Ok((report, EXIT_CLEAN))
        }
        command => {
            let file = load(cfg)?;
            let mut report = Report::new(header(cfg, Some(&file.digest)));
            let code = match command {
                Command::Validate => {
                    let v = validate_spec(&file.params, file.sboxes.as_ref())?;
                    report.sections.push(validation_section(&v));
                    EXIT_CLEAN
                }
                Command::Goursat { width } => {
                    report.sections.push(goursat_section(width.unwrap_or(file.params.n))?);
                    EXIT_CLEAN
                }
                Command::ScanBlocks => {
                    let spec = file.cipher()?;
                    let scan = block_scan(
                        &spec,
                        &ScanOptions {
                            max_degree: cfg.max_degree,
                            set_route: true,
                        },
                    )?;
                    report.sections.push(block_scan_section(&scan));
                    if scan.imprimitive() {
                        report.conclusion = Some(Conclusion::Imprimitive.name().into());
                        EXIT_IMPRIMITIVE
                    } else {
                        EXIT_CLEAN
                    }
                }
                Command::Types => {
                    report.sections.extend(type_sections(&file.cipher()?, cfg.seed)?);
                    EXIT_CLEAN
                }
                Command::Order => {
                    report.sections.push(order_section(&file.cipher()?, cfg)?);
                    EXIT_CLEAN
                }
                Command::Verdict => {
                    let spec = file.cipher()?;
                    let v = full_verdict(
                        &spec,
                        &VerifyOptions {
                            seed: cfg.seed,
                            budget: cfg.budget,
                            word_len: cfg.word_len,
                            max_degree: cfg.max_degree,
                        },
                    )?;
                    report.sections.extend(verdict_sections(&v));
                    report.conclusion = Some(v.conclusion.name().into());
                    match v.conclusion {
                        Conclusion::AltCertified | Conclusion::TheoremApplies => EXIT_CLEAN,
                        Conclusion::Imprimitive => EXIT_IMPRIMITIVE,
                        Conclusion::Inconclusive => EXIT_INCONCLUSIVE,
                    }
                }
                Command::Encrypt { .. } | Command::Selftest => unreachable!("handled above"),
            };
            Ok((report, code))
        }
    }
}

fn goursat_section(n: u32) -> Result<Section> {
    let triples = enumerate_subgroups(n)?;
    let mut s = Section::new("goursat")
        .field("n", n)
        .field("subgroups", triples.len())
        .field("closed-form-count", subgroup_count(n));
    if n <= BRUTE_FORCE_WIDTH {
        let c = compare_with_brute_force(n)?;
        s.push("brute-force", if c.equal { "match" } else { "mismatch" });
    }
    if triples.len() <= GOURSAT_LISTING_CAP {
        for (i, t) in triples.iter().enumerate() {
            s.push(format!("u{}", i + 1), format!("{t} order 2^{}", t.order_log2()));
        }
    } else {
        s.push("listing", format!("omitted above {GOURSAT_LISTING_CAP} subgroups"));
    }
    Ok(s)
}

fn type_sections(spec: &CipherSpec, seed: u64) -> Result<Vec<Section>> {
    let params = spec.params();
    let mut table = Section::new("subgroup-types");
    let mut bricklayer = Section::new("bricklayer");
    let mut bricklayer_ok = true;
    for q in 0..=params.n {
        let st = subgroup_type(q, params)?;
        let ds = type_of(&image_under_s(spec, q), params);
        table.push(
            format!("q-{q}"),
            format!("D {} DS {} whole {}", st.types, show_type(&ds), st.whole),
        );
        let b = check_bricklayer_whole(q, spec.sboxes(), params)?;
        bricklayer_ok &= b.passed();
    }
    bricklayer.push("status", if bricklayer_ok { "pass" } else { "fail" });

    let violations = check_not_w_form(spec)?;
    let mut not_w = Section::new("type-change").field("violations", violations.len());
    for v in &violations {
        not_w.push(
            format!("q-{}", v.q),
            format!("D {} DS {}", v.d_type, show_type(&v.ds_type)),
        );
    }
    not_w.push("status", if violations.is_empty() { "pass" } else { "fail" });

    let shifted = check_corollary_ds(spec)?;
    let listed: Vec<String> = shifted.iter().map(u32::to_string).collect();
    let shift = Section::new("shifted-image")
        .field("zero-s", hex(spec.s_raw(0)))
        .field("violations", shifted.len())
        .field(
            "q",
            if listed.is_empty() {
                "none".into()
            } else {
                listed.join(" ")
            },
        )
        .field("status", if shifted.is_empty() { "pass" } else { "fail" });

    let mut suite = Section::new("translations");
    if params.n <= TYPE_SUITE_WIDTH {
        let c = type_suite(params, TYPE_SUITE_SAMPLES, seed)?;
        suite.push("xor-checks", c.xor_checks);
        suite.push("xor-violations", c.xor_violations);
        suite.push("boxplus-checks", c.boxplus_checks);
        suite.push("boxplus-violations", c.boxplus_violations);
        suite.push("bricklayer-checks", c.bricklayer_checks);
        suite.push("bricklayer-violations", c.bricklayer_violations);
        let clean = c.xor_violations + c.boxplus_violations + c.bricklayer_violations == 0;
        suite.push("status", if clean { "pass" } else { "fail" });
    } else {
        suite.push("status", format!("skipped above n = {TYPE_SUITE_WIDTH}"));
    }
    Ok(vec![table, bricklayer, not_w, shift, suite])
}

fn order_section(spec: &CipherSpec, cfg: &RunConfig) -> Result<Section> {
    let group = round_group_capped(spec, cfg.max_degree)?;
    let bsgs = schreier_sims(
        &group,
        &SchreierSimsOptions {
            seed: cfg.seed,
            ..SchreierSimsOptions::default()
        },
    )?;
    let order = bsgs.order();
    let degree = group.degree();
    let lengths: Vec<String> = bsgs.basic_orbit_lengths().iter().map(usize::to_string).collect();
    let verification = match bsgs.verification() {
        Some(Verification::GiantOrderBound) => "giant order bound",
        Some(Verification::SchreierGenerators) => "schreier generators",
        None => "none",
    };
    Ok(Section::new("order")
        .field("degree", degree)
        .field("order", format!("{order:#x}"))
        .field("order-bits", order.bits())
        .field(
            "log2-order",
            format!("{:.3}", order.to_f64().map_or(f64::NAN, f64::log2)),
        )
        .field("equals-alt", order == alternating_order(degree))
        .field("equals-sym", order == symmetric_order(degree))
        .field("base-length", lengths.len())
        .field("basic-orbit-lengths", lengths.join(" "))
        .field("verification", verification))
}

enum RoundKey {
    Gost(u64),
    Generalized(RawState, RawState),
}

fn parse_key(text: &str, n: u32) -> Result<RoundKey> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let word = |s: &str| Word::from_hex(s, n).map(|w| w.value());
    match parts.as_slice() {
        [k] => Ok(RoundKey::Gost(word(k)?)),
        [k1, k2, h1, h2] => Ok(RoundKey::Generalized((word(k1)?, word(k2)?), (word(h1)?, word(h2)?))),
        _ => Err(Error::Unsupported(format!(
            "key {text:?}: expected one hex word or four comma-separated words"
        ))),
    }
}

fn apply_rounds(spec: &CipherSpec, keys: &[RoundKey], decrypt: bool, x: RawState) -> RawState {
    let n = spec.n();
    if decrypt {
        keys.iter().rev().fold(x, |y, key| match *key {
            RoundKey::Gost(k) => spec.generalized_round_inverse_raw((0, k), (boxminus_raw(k, n), 0), y),
            RoundKey::Generalized(k, h) => spec.generalized_round_inverse_raw(k, h, y),
        })
    } else {
        keys.iter().fold(x, |y, key| match *key {
            RoundKey::Gost(k) => spec.gost_round_raw(k, y),
            RoundKey::Generalized(k, h) => spec.generalized_round_raw(k, h, y),
        })
    }
}

fn encrypt(
    cfg: &RunConfig,
    keys: &[String],
    decrypt: bool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<()> {
    let spec = load(cfg)?.cipher()?;
    let n = spec.n();
    let keys = keys.iter().map(|k| parse_key(k, n)).collect::<Result<Vec<_>>>()?;
    let digits = n.div_ceil(4) as usize;
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let [l, r] = fields.as_slice() else {
            return Err(Error::Unsupported(format!(
                "input line {}: expected two hex words, found {}",
                lineno + 1,
                fields.len()
            )));
        };
        let x = (Word::from_hex(l, n)?.value(), Word::from_hex(r, n)?.value());
        let (y1, y2) = apply_rounds(&spec, &keys, decrypt, x);
        writeln!(out, "{y1:0digits$x} {y2:0digits$x}")?;
    }
    Ok(())
}
