//! File formats, reports, parallel scans, seeded campaigns and the `distspec`
//! command line on top of `distspec-core`.

pub mod campaigns;
pub mod cli;
pub mod formats;
pub mod json;
pub mod parallel;

/// Largest order accepted by the random campaigns.
pub const MAX_CAMPAIGN_ORDER: usize = 62;
