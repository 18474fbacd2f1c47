pub mod algebra;
pub mod corpus;
pub mod cyclotomic;
pub mod engine;
pub mod groups;
pub mod local_analysis;
pub mod memo;
pub mod number_field;
pub mod par;
pub mod query;
