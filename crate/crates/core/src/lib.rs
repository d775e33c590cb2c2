//! Bigraded Koszul homology, Hilbert functions and Betti numbers of ideals
//! generated by three forms of bidegree d in K[s,t;u,v].

pub mod betti;
pub mod bipoly;
pub mod combinat;
pub mod error;
pub mod field;
pub mod lab;
pub mod linalg;
pub mod polymat;
pub mod segre;
pub mod strands;
pub mod sweep;
pub mod system;

pub use bipoly::{bd, BiDegree, BiPoly, BinaryForm};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp};
pub use linalg::Matrix;
pub use system::SystemF;

/// Default experiment field.
pub type Gf = Fp<32003>;
pub type Rational = num_rational::BigRational;

pub type SystemGf = SystemF<Gf>;
pub type SystemQ = SystemF<Rational>;
pub type MatrixGf = Matrix<Gf>;
pub type MatrixQ = Matrix<Rational>;
