pub mod cli;
pub mod descent;
pub mod dual_graph;
pub mod exact;
pub mod lls;
pub mod multidegree;
pub mod schubert;
