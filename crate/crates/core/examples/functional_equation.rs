//! Unitary solutions of f(z^2) = f(z)^2 are exactly the characters.

use q2::torus::{solve_square_equation, LaurentCircleFunction};
use q2::Scalar;

fn main() {
    let candidates = [
        LaurentCircleFunction::character(3),
        LaurentCircleFunction::character(-2),
        LaurentCircleFunction::monomial(Scalar::from_integer(-1), 1),
        LaurentCircleFunction::monomial(Scalar::cyclo(3, 1), 1),
    ];
    for f in &candidates {
        match solve_square_equation(f) {
            Ok(n) => println!("{f}: solution, winding {n}"),
            Err(e) => println!("{f}: rejected ({e})"),
        }
    }
}
