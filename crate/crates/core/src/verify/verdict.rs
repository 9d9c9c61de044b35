use serde::Serialize;

use super::cases::{
    affine_check, diagonal_check, psl_check, wreath_check, AffineCheck, DiagonalCheck, PslCheck, WreathCheck,
};
use super::scan::{block_scan, BlockScanReport, ScanOptions};
use crate::cipher::{validate_spec, CipherSpec, ValidationReport};
use crate::error::Result;
use crate::perm::{giant_witness, round_group_capped, GiantOptions, GiantOutcome, MATERIALIZE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub budget: usize,
    pub word_len: usize,
    pub max_degree: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            budget: 10_000,
            word_len: 32,
            max_degree: MATERIALIZE_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    AltCertified,
    TheoremApplies,
    Inconclusive,
    Imprimitive,
}

impl Conclusion {
    pub fn name(self) -> &'static str {
        match self {
            Conclusion::AltCertified => "AltCertified",
            Conclusion::TheoremApplies => "TheoremApplies",
            Conclusion::Inconclusive => "Inconclusive",
            Conclusion::Imprimitive => "Imprimitive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityCheck {
    /// Generator name and sign.
    pub signs: Vec<(String, i8)>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub validation: ValidationReport,
    pub parity: ParityCheck,
    pub transitive: bool,
    pub block_scan: BlockScanReport,
    pub primitive: bool,
    pub diagonal: DiagonalCheck,
    pub affine: AffineCheck,
    pub wreath: WreathCheck,
    pub psl: PslCheck,
    /// `None` when the search was skipped because an earlier check failed.
    pub giant: Option<GiantOutcome>,
    pub conclusion: Conclusion,
}

impl Verdict {
    /// Every check the argument relies on passed.
    pub fn case_checks_pass(&self) -> bool {
        self.parity.ok
            && self.transitive
            && self.primitive
            && self.diagonal.passed
            && self.affine.excluded
            && self.wreath.excluded
            && self.psl.excluded
    }
}

/// Conclusion from the individual results. A certified block wins; then
/// non-bijective S-boxes make the result inconclusive; then a Jordan witness
/// on an even, transitive, primitive group certifies `Alt(V)`.
pub fn conclude(
    validation: &ValidationReport,
    parity_ok: bool,
    transitive: bool,
    scan: &BlockScanReport,
    witness: bool,
    case_checks: bool,
) -> Conclusion {
    if scan.imprimitive() {
        Conclusion::Imprimitive
    } else if validation.all_bijective() != Some(true) {
        Conclusion::Inconclusive
    } else if parity_ok && transitive && witness {
        Conclusion::AltCertified
    } else if validation.hypotheses_hold() && case_checks {
        Conclusion::TheoremApplies
    } else {
        Conclusion::Inconclusive
    }
}

pub fn full_verdict(spec: &CipherSpec, opts: &VerifyOptions) -> Result<Verdict> {
    let validation = validate_spec(spec.params(), Some(spec.sboxes()))?;
    let group = round_group_capped(spec, opts.max_degree)?;
    let signs: Vec<(String, i8)> = group
        .names()
        .iter()
        .cloned()
        .zip(group.generators().iter().map(|g| g.sign()))
        .collect();
    let parity = ParityCheck {
        ok: signs.iter().all(|(_, s)| *s == 1),
        signs,
    };
    let transitive = group.is_transitive();
    let scan = block_scan(
        spec,
        &ScanOptions {
            max_degree: opts.max_degree,
            set_route: true,
        },
    )?;
    let primitive = transitive && !scan.imprimitive();
    let n = spec.n();
    let diagonal = diagonal_check(spec);
    let affine = affine_check(n)?;
    let wreath = wreath_check(spec);
    let psl = psl_check(n)?;
    let giant = (parity.ok && primitive).then(|| {
        giant_witness(
            &group,
            &GiantOptions {
                seed: opts.seed,
                word_len: opts.word_len,
                budget: opts.budget,
            },
        )
    });
    let mut verdict = Verdict {
        validation,
        parity,
        transitive,
        block_scan: scan,
        primitive,
        diagonal,
        affine,
        wreath,
        psl,
        giant,
        conclusion: Conclusion::Inconclusive,
    };
    let witness = verdict.giant.as_ref().and_then(GiantOutcome::witness).is_some();
    verdict.conclusion = conclude(
        &verdict.validation,
        verdict.parity.ok,
        verdict.transitive,
        &verdict.block_scan,
        witness && verdict.primitive,
        verdict.case_checks_pass(),
    );
    Ok(verdict)
}
