//! Grid obstructions: a step function is not gauge-equivalent to a gauge
//! automorphism, and a bump breaks commutation with the flip-flop.

use q2::torus::{approach_sequence, flipflop_commute_obstruction, gauge_equiv_obstruction, Preset};

fn main() -> q2::Result<()> {
    let level = 10;
    let step: Preset = "step:pi/4".parse()?;
    let report = gauge_equiv_obstruction(&step.sample(level)?)?;
    println!("step: oscillation at 1 = {:.6}, obstructed = {}", report.oscillation_at_one, report.is_obstructed());
    for (r, name) in [(1, "pi/2^n"), (5, "5pi/2^(n+2)")] {
        let tail: Vec<String> = approach_sequence(&report.solution, 0, r)
            .iter()
            .skip(4)
            .map(|(_, z)| format!("{:+.0}", z.re))
            .collect();
        println!("  h along e^(i {name}): {}", tail.join(" "));
    }

    let bump: Preset = "bump:i@9pi/8".parse()?;
    let report = flipflop_commute_obstruction(&bump.sample(level)?)?;
    println!("bump: oscillation at 1 = {:.6}, worst at index {}", report.oscillation_at_one, report.worst_index);

    let smooth = Preset::Char(3).sample(level)?;
    let report = gauge_equiv_obstruction(&smooth)?;
    println!("z^3: character {}, max oscillation {:.2e}", report.character, report.max_oscillation);
    Ok(())
}
