//! IO, file formats, reports, the survey driver, and the verification
//! pipeline around `cubex-core`.

pub mod formats;
pub mod report;
pub mod stretch;
pub mod survey;
pub mod verify;
