pub mod continuity;
pub mod corpus;
pub mod schemas;
pub mod solve;
