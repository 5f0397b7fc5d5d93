//! Classical Lie weight systems on oriented chord diagrams: a combinatorial
//! calculator, a brute-force matrix oracle, and checks for the defining
//! relations.

pub mod diagrams;
pub mod polycount;
pub mod families;
pub mod oracle;
pub mod relations;
