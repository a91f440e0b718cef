pub mod plane_graph;
pub mod split_engine;
pub mod cover_solver;
pub mod generators;
pub mod reductions;
pub mod bounds;
pub mod cli_io;
