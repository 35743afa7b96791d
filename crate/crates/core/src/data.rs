//! Weber polynomial files bundled at compile time.

use crate::error::{Error, Result};
use crate::polyring::PolyFile;

/// Degrees with a bundled polynomial and a catalog solution point.
pub const DEGREES: [u32; 5] = [5, 7, 11, 17, 41];

/// Canonical file name for degree `d`.
pub fn file_name(d: u32) -> String {
    format!("phi{d}.txt")
}

/// Raw text of the bundled file for degree `d`.
pub fn bundled_text(d: u32) -> Result<&'static str> {
    Ok(match d {
        5 => include_str!("../../../data/phi5.txt"),
        7 => include_str!("../../../data/phi7.txt"),
        11 => include_str!("../../../data/phi11.txt"),
        17 => include_str!("../../../data/phi17.txt"),
        41 => include_str!("../../../data/phi41.txt"),
        _ => return Err(Error::UnsupportedDegree(d)),
    })
}

pub fn bundled(d: u32) -> Result<PolyFile> {
    PolyFile::parse(bundled_text(d)?)
}
