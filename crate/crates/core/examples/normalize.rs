//! Parse a few expressions, bring them to canonical form and compare them.
//!
//! ```bash
//! cargo run --example normalize
//! ```

use q2::parse::parse_element;

fn main() -> q2::Result<()> {
    let inputs = ["S1", "U S2", "S1 S1* + S2 S2*", "U^3 S2^2 S1* U^-1", "(S1 + S2)* (S1 - S2)"];
    for src in inputs {
        let x = parse_element(src)?;
        println!("{src:<24} -> {x}");
    }

    let x = parse_element("S1 S1* + S2 S2*")?;
    println!("S1 S1* + S2 S2* == 1: {}", x.equals(&q2::Element::one()));

    // refine each tuple to depth 2 without changing the operator
    let y = parse_element("S1 S2*")?.normalize_depth(2)?;
    println!("S1 S2* at depth 2: {y}");
    Ok(())
}
