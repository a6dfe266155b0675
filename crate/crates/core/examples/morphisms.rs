//! Built-in endomorphisms, composition, and extensions from O2 data.

use q2::morphisms::{check_extension, shift_extension_data};
use q2::parse::parse_element;
use q2::Endomorphism;

fn main() -> q2::Result<()> {
    let x = parse_element("S1 S2* + U")?;
    for label in ["flipflop", "shift", "gauge:zeta(4)", "chi:3", "beta:1,1", "adU"] {
        let e = Endomorphism::from_label(label)?;
        println!("{label:<14} {x}  ->  {}", e.apply(&x));
    }

    let ff = Endomorphism::flipflop();
    println!("flipflop^2 = id: {}", ff.compose(&ff).equals_on_generators(&Endomorphism::identity()));

    let theta = check_extension(&shift_extension_data())?;
    println!("extension of theta: U -> {}, S2 -> {}", theta.img_u(), theta.img_s2());
    println!("agrees with shift: {}", theta.equals_on_generators(&Endomorphism::shift()));
    Ok(())
}
