pub mod codegen;
pub mod dtd;
pub mod expr;
pub mod fixtures;
pub mod frontend;
pub mod ir;
pub mod pim;
pub mod pipeline;
pub mod psm;
pub mod sim;
mod xml;
