pub mod csvio;
pub mod experiment;
pub mod svg;
