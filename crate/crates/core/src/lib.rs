pub mod algebra;
pub mod chevalley;
pub mod error;
pub mod expr;
pub mod field;
pub mod repalpha;
pub mod roots;
pub mod semisimplify;
pub mod pipeline;
pub mod superalgebra;
pub mod verify;
