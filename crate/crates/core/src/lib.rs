pub mod alpha;
pub mod analytic;
pub mod classifier;
pub mod cli;
pub mod geometry;
pub mod oracle;
pub mod report;
pub mod solution;
pub mod svg;
