pub mod chrom4;
pub mod cli;
pub mod colorodd;
pub mod colorsq;
pub mod ff;
pub mod graph;
pub mod polarity;
