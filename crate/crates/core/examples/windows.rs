//! Evaluate operators on the basis of l2(Z) and print finite windows.

use q2::canonical::{apply_basis, window_matrix, WindowOperator};
use q2::parse::parse_element;

fn main() -> q2::Result<()> {
    let s1 = parse_element("S1")?;
    for i in -3..=3 {
        let image: Vec<String> = apply_basis(&s1, i).iter().map(|(k, c)| format!("{c} e_{k}")).collect();
        println!("S1 e_{i} = {}", image.join(" + "));
    }

    let p = parse_element("S2 S2*")?;
    let w = window_matrix(&WindowOperator::Element(p), -4, 4)?;
    print!("diagonal of S2 S2* on [-4, 4]:");
    for i in -4..=4 {
        print!(" {}", w.get(i, i).re);
    }
    println!();
    Ok(())
}
