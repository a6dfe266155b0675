//! Which unitary 2x2 matrices extend from O2 to the whole algebra?

use num_complex::Complex64;
use q2::morphisms::{bogoljubov_classify, BogoljubovMatrix};
use q2::Scalar;

fn main() -> q2::Result<()> {
    let (o, i) = (Scalar::zero(), Scalar::cyclo(2, 1));
    let exact = [
        ("i * id", BogoljubovMatrix::exact(i.clone(), o.clone(), o.clone(), i.clone())),
        ("diag(1, i)", BogoljubovMatrix::exact(Scalar::one(), o.clone(), o.clone(), i.clone())),
        ("i * swap", BogoljubovMatrix::exact(o.clone(), i.clone(), i.clone(), o.clone())),
    ];
    for (name, m) in exact {
        println!("{name:<12} {}", bogoljubov_classify(&m)?);
    }

    let r = std::f64::consts::FRAC_1_SQRT_2;
    let h = BogoljubovMatrix::float(r.into(), r.into(), r.into(), Complex64::from(-r));
    println!("{:<12} {}", "Hadamard", bogoljubov_classify(&h)?);
    Ok(())
}
