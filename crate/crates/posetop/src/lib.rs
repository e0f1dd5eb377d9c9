pub mod cli;
pub mod corpus;
pub mod docs;
