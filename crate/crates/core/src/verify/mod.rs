//! The verification pipeline: block scan, case eliminations and the verdict.

pub mod cases;
pub mod scan;
pub mod verdict;

pub use cases::{
    affine_check, diagonal_check, psl_check, wreath_check, AffineCheck, DiagonalCheck, PslCheck, WreathCheck,
};
pub use scan::{block_scan, BlockCandidate, BlockScanReport, ScanOptions};
pub use verdict::{full_verdict, Conclusion, ParityCheck, Verdict, VerifyOptions};
