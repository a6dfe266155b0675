//! The three conditional expectations on a sample element.

use q2::expectations::{e_cu, e_d2, e_gauge};
use q2::parse::parse_element;

fn main() -> q2::Result<()> {
    let x = parse_element("S2^3 S2*^3 + 2 S1 S2 S1* + U^2 + zeta(8) S2 S1*")?;
    println!("x         = {x}");
    println!("E_gauge x = {}", e_gauge(&x));
    println!("E_D2 x    = {}", e_d2(&x));
    println!("E_CU x    = {}", e_cu(&x));
    Ok(())
}
