//! Diagonal unitaries k -> z^k and the 2-adic continuity test.

use q2::diagonal::{build_uz, check_uz_relations, membership_uz, two_adic_continuity, RootOfUnity};

fn main() -> q2::Result<()> {
    let uz = build_uz(2)?;
    println!("U_i = {uz}");
    println!("relations hold: {}", check_uz_relations(2)?);

    for order in [2, 3, 8, 12] {
        let z = RootOfUnity::new(order, 1)?;
        let zc = z.to_complex();
        let c = two_adic_continuity(|k| zc.powf(k as f64), 10, 1e-9)?;
        println!("{z}: in algebra {}, 2-adically continuous {}", membership_uz(&z), c.is_continuous());
    }
    Ok(())
}
