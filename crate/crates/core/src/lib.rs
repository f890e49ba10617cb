//! Review sentiment analytics: lexicon scoring, root refinement, a
//! three-input Mamdani fuzzy system and the comparative corpus analyses.

pub mod analysis;
pub mod corpus;
pub mod exec;
pub mod fuzzy;
pub mod json;
pub mod pipeline;
pub mod preprocess;
pub mod refine;
pub mod scorer;
pub mod sentiment_fis;
