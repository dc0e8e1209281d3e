//! Free knots as Gauss codes: Gaussian parity and its iterated projection,
//! crossing smoothings, elementary slice certificates, and combinatorial
//! spanning complexes with double-line surgery.
//!
//! ```
//! use freeknot::diagram::parse_gauss_code;
//! use freeknot::parity::is_iteratively_odd;
//!
//! let d = parse_gauss_code("1 2 1 3 2 4 3 4").unwrap();
//! assert_eq!(is_iteratively_odd(&d).unwrap(), Some(2));
//! ```

pub mod complexes;
pub mod diagram;
pub mod parity;
pub mod slice;
pub mod smoothing;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/gauss-codes.md")]
mod book_gauss_codes {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/parity.md")]
mod book_parity {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/smoothing.md")]
mod book_smoothing {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/slice.md")]
mod book_slice {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/complexes.md")]
mod book_complexes {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cylinder.md")]
mod book_cylinder {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/deduction.md")]
mod book_deduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
